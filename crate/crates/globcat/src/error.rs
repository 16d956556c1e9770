use blcoll::BlcollError;
use coalgebra::CoalgebraError;
use gcore::GcoreError;
use monads::MonadError;
use opweak::OpweakError;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable input or bad flag values.
    #[error("parse error: {0}")]
    Parse(String),
    /// The input parsed but breaks a law or an invariant; carries the report.
    #[error("domain violation")]
    Domain(Value),
    #[error("depth {requested} is not supported (at most {max})")]
    UnsupportedDepth { requested: usize, max: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::UnsupportedDepth { .. } => 4,
        }
    }

    /// What goes to standard output.
    pub fn report(&self) -> Value {
        match self {
            CliError::Parse(detail) => json!({"ok": false, "error": "parse", "detail": detail}),
            CliError::Domain(v) => v.clone(),
            CliError::UnsupportedDepth { requested, max } => json!({
                "ok": false, "error": "unsupported_depth", "requested": requested, "max": max
            }),
        }
    }

    pub fn domain(detail: impl ToString) -> Self {
        CliError::Domain(json!({"ok": false, "error": detail.to_string()}))
    }
}

impl From<MonadError> for CliError {
    fn from(e: MonadError) -> Self {
        match e {
            MonadError::UnsupportedDepth { requested, max } => CliError::UnsupportedDepth { requested, max },
            e => CliError::domain(e),
        }
    }
}

impl From<OpweakError> for CliError {
    fn from(e: OpweakError) -> Self {
        match e {
            OpweakError::UnsupportedDepth { requested, max } => CliError::UnsupportedDepth { requested, max },
            OpweakError::Monad(m) => m.into(),
            e => CliError::domain(e),
        }
    }
}

impl From<GcoreError> for CliError {
    fn from(e: GcoreError) -> Self {
        CliError::domain(e)
    }
}

impl From<CoalgebraError> for CliError {
    fn from(e: CoalgebraError) -> Self {
        CliError::domain(e)
    }
}

impl From<BlcollError> for CliError {
    fn from(e: BlcollError) -> Self {
        match e {
            BlcollError::LiftKey(_) | BlcollError::DimensionMismatch { .. } => CliError::Parse(e.to_string()),
            e => CliError::domain(e),
        }
    }
}
