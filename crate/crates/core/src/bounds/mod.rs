//! Screening: degree lower bounds against `alpha(g) * (|g| - 1)`.

use thiserror::Error;

use crate::numth::NumthError;

pub mod alpha;
pub mod dim;
pub mod registry;
pub mod screen;
pub mod tables;

pub use alpha::{alpha_upper, AlphaBound, Family};
pub use dim::{dim_lower, DimFormula, Kappa};
pub use registry::{parse_registry, Grid, Rule};
pub use screen::{describe_survivors, screen, shipped_rules, verify_fixture_suite, verify_rule, Certificate, FixtureResult, ScreenReport, SuiteReport};
pub use tables::{check_leftover_table, no2_inequalities};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("out of domain: {0}")]
    OutOfDomain(String),
    #[error("unknown descriptor {descriptor:?} for {family}")]
    UnknownDescriptor { family: String, descriptor: String },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("unknown dimension formula {0:?}")]
    UnknownFormula(String),
    #[error("unknown order cap {0:?}")]
    UnknownCap(String),
    #[error("registry line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Numth(#[from] NumthError),
}
