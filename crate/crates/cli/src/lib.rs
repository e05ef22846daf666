//! Command-line front end: operator-expression parsing and the `eulerop` subcommands.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error,
//! 3 resonance or degenerate indicial equation.

pub mod commands;
pub mod expr;

pub use commands::{run_args, Outcome};
pub use expr::{parse_operator, Expr, ExprError};
