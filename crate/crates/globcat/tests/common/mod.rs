#![allow(dead_code)]

use std::path::PathBuf;

use globcat::{run_args, Outcome};
use serde_json::Value;

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).to_string_lossy().into_owned()
}

pub fn run(args: &[&str]) -> Outcome {
    run_args(args.iter().map(|s| s.to_string()))
}

pub fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

/// One invocation per command and outcome, with the schema its output
/// follows. Paths ending in `.json` are read from the fixture directory.
pub fn catalogue() -> Vec<(Vec<String>, &'static str)> {
    let raw: Vec<(&str, &str)> = vec![
        ("validate --input terminal2.json", "ok"),
        ("validate --kind collection --input collection-s5.json", "ok"),
        ("validate --kind operad --input operad-s3.json", "ok"),
        ("validate --input operad-s3.json", "error"),
        ("truncate --input globset2-s7.json --dim 1", "globset"),
        ("truncate --kind collection --input collection-s5.json --dim 1", "collection"),
        ("truncate --input terminal2.json --dim 5", "error"),
        ("free-cat --input graph-s5.json --bound 2", "free-cat"),
        ("tn-cells --n 2 --dim 2 --bound 3 --input globset2-s7.json --cells", "count"),
        ("tn-cells --n 1 --dim 1 --bound 3", "count"),
        ("tn-cells --n 4 --dim 1 --bound 3", "error"),
        ("oracle --n 2 --dim 2 --bound 3 --input globset2-s7.json", "count"),
        ("laws --monad fc --samples 4 --seed 7 --bound 3", "laws"),
        ("laws --monad strict --n 2 --samples 2 --seed 7 --bound 1", "laws"),
        ("adamek --functor word --alphabet a,b,c --depth 3 --probe", "adamek"),
        ("adamek --descriptor functor-list.json --depth 2", "adamek"),
        ("unfold --functor word --alphabet a,b --map swap --start 0 --depth 4", "unfold"),
        ("unfold --functor word --alphabet a,b,c --map shift --start 2 --depth 7", "unfold"),
        ("trimble --model graph --seed-operad terminal --n 2 --bound 3 --input graph-s5.json", "trimble"),
        ("trimble --model graph --mode coherent --seed-operad cyclic:2 --n 1 --bound 2 --input graph-s5.json", "trimble"),
        ("trimble --seed-operad operad-s3.json --n 2 --bound 2 --input terminal2.json", "trimble"),
        ("composite-check --n 2 --bound 2", "composite-check"),
        ("composite-check --n 2 --bound 2 --input globset2-s7.json", "composite-check"),
        ("collection-check --input identity-collection.json --lift identity-lift.json", "collection-check"),
        ("collection-check --input collection-s5.json", "collection-check"),
        ("collection-check --input collection-s5.json --lift identity-lift.json", "collection-check"),
        ("gen --kind globset --n 2 --size 3 --seed 7", "globset"),
        ("gen --kind graph --size 4 --seed 5", "globset"),
        ("gen --kind operad --size 3 --seed 3", "operad"),
        ("gen --kind collection --n 2 --bound 2 --size 2 --seed 5", "collection"),
        ("gen --kind saturated --n 2 --bound 1 --size 2 --seed 1", "collection"),
        ("gen --kind lift --input collection-s5.json", "lift"),
    ];
    raw.into_iter()
        .map(|(cmd, schema)| {
            let args = cmd
                .split(' ')
                .map(|a| if a.ends_with(".json") { fixture(a) } else { a.to_string() })
                .collect();
            (args, schema)
        })
        .collect()
}
