use thiserror::Error;

use crate::number::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An Euler-rational denominator vanished at a reached exponent.
    #[error("resonance at exponent {exponent}: inverse Euler factor is singular there")]
    Resonance { exponent: Rational },

    #[error("graded operator mixes raising and lowering shifts")]
    MixedDegree,

    #[error("seed exponent {exponent} is not a root of the indicial polynomial")]
    NotARoot { exponent: Rational },

    /// Repeated indicial root; the second solution would be logarithmic.
    #[error("degenerate indicial root {root} with multiplicity {multiplicity}")]
    DegenerateIndicial { root: Rational, multiplicity: u32 },

    #[error("indicial polynomial is identically zero")]
    ZeroIndicial,

    #[error("series constant term is not invertible")]
    NotInvertible,

    #[error("exponential argument has a nonzero constant term")]
    NonZeroConstant,

    #[error("expected {expected} parameters, got {found}")]
    Shape { expected: usize, found: usize },

    #[error("no constant makes the conjugate canonical on the lowest monomial")]
    InconsistentConjugate,

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
