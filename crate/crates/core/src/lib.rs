//! Exact Euler-operator methods for linear ordinary differential equations.
//!
//! An equation written as `[F(D) + P] y = 0`, with `D = x d/dx`, has the formal
//! solution `sum_m (-1)^m [F(D)^{-1} P]^m x^lambda` whenever `F(lambda) = 0`.
//! The crate implements that construction over exact rationals, together with the
//! exponential forms, ladder operators, Rodriguez formulas and generating
//! functions it yields for the classical hypergeometric-type families.

pub mod error;
pub mod families;
pub mod identities;
pub mod ladder;
pub mod laurent;
pub mod number;
pub mod op;
pub mod solver;
pub mod tseries;
pub mod xseries;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use number::Rational;
pub use op::{DiffOp, EulerPoly, EulerRational, GradedOp, Separation};
pub use tseries::TSeries;
pub use xseries::{Direction, Truncation, XSeries};
