//! Realizability checking and controller synthesis for bounded safety
//! specifications `α ∧ □ψ` through a tableau over terse normal forms.

pub mod cli;
pub mod config;
pub mod covering;
pub mod error;
pub mod formula;
pub mod game_oracle;
pub mod gen;
pub mod parser;
pub mod synthesis;
pub mod tableau;
pub mod tnf;

pub use config::{EngineConfig, Heuristic, Simplify};
pub use error::{BudgetError, Error, ParseError, ParseErrorKind, Result};
