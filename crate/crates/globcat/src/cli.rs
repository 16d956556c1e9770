use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// One run of the tool: a subcommand with its flags and where to write.
#[derive(Debug, Clone, Parser)]
#[command(name = "globcat", version, about = "Globular sets, free monads, weak towers and collections")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check an input file against its invariants.
    Validate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Globset)]
        kind: Kind,
    },
    /// Drop every cell above a dimension.
    Truncate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = Kind::Globset)]
        kind: Kind,
    },
    /// Cells of the free category on an n-graph, up to a grade bound.
    FreeCat {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// d-cells of the strict free n-category, from the monad tower.
    TnCells(TnArgs),
    /// The same count from labelled planar trees.
    Oracle(TnArgs),
    /// Unit and associativity laws on seeded random objects.
    Laws {
        #[arg(long, value_enum, default_value_t = MonadChoice::Fc)]
        monad: MonadChoice,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[command(flatten)]
        operad: OperadArgs,
    },
    /// Stage sizes of the terminal-sequence approximants.
    Adamek {
        #[command(flatten)]
        functor: FunctorArgs,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Also compare stage d + 1 with F(stage d).
        #[arg(long)]
        probe: bool,
    },
    /// Letters read off a word coalgebra to a depth.
    Unfold {
        #[command(flatten)]
        functor: FunctorArgs,
        /// `swap`, `shift`, `stay`, or successor indices such as `1,0`.
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[arg(long)]
        depth: usize,
    },
    /// The weak tower at level n on an input, compared with the strict one.
    Trimble {
        #[arg(long, value_enum, default_value_t = ModelChoice::Discrete)]
        model: ModelChoice,
        #[arg(long, value_enum, default_value_t = ModeChoice::Incoherent)]
        mode: ModeChoice,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        bound: usize,
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        operad: OperadArgs,
    },
    /// Level n of the tower against the composite of one-level monads.
    CompositeCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        bound: usize,
        /// Defaults to the terminal n-globular set.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        operad: OperadArgs,
    },
    /// A collection's map and, given a lift, its contraction.
    CollectionCheck {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        lift: Option<PathBuf>,
        /// Highest m searched; defaults to n.
        #[arg(long, conflicts_with = "incoherent")]
        m_max: Option<usize>,
        /// Search m < n only.
        #[arg(long)]
        incoherent: bool,
    },
    /// A seeded random instance.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cells per dimension, objects and edges, operad cap, or copies
        /// per diagram, depending on the kind.
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        bound: usize,
        /// The collection a `lift` is computed for.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct TnArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub bound: usize,
    /// Defaults to the terminal n-globular set.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// List the cells as well as counting them.
    #[arg(long)]
    pub cells: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OperadArgs {
    /// `terminal`, `associative`, `cyclic:M`, or a path to an operad file.
    #[arg(long, default_value = "terminal")]
    pub seed_operad: String,
    /// Arity cap for the built-in operads; defaults to max(bound, 1).
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct FunctorArgs {
    #[arg(long, value_enum, default_value_t = FunctorChoice::Word)]
    pub functor: FunctorChoice,
    #[arg(long, value_delimiter = ',', default_value = "a,b")]
    pub alphabet: Vec<String>,
    #[arg(long, default_value_t = 3)]
    pub grade: usize,
    /// A functor descriptor file; overrides the flags above.
    #[arg(long)]
    pub descriptor: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Globset,
    Collection,
    Operad,
    Lift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Globset,
    Graph,
    Operad,
    /// A collection with no promise of lifts.
    Collection,
    /// A collection with a filler for every obligation.
    Saturated,
    /// The tautological lift of the `--input` collection.
    Lift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MonadChoice {
    /// Free category on n-graphs.
    Fc,
    /// Strict free n-category.
    Strict,
    /// Free category weighted by the seed operad.
    Vp,
    /// Level n of the weak tower.
    Trimble,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctorChoice {
    Identity,
    Word,
    FreeMonoid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelChoice {
    Discrete,
    Graph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeChoice {
    Incoherent,
    Coherent,
}
