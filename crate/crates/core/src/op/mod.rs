//! Operator algebra in one variable.
//!
//! - [`DiffOp`]: normal-ordered differential operators, closed under composition.
//! - [`EulerPoly`] / [`EulerRational`]: functions of `D = x d/dx`, diagonal on monomials.
//! - [`GradedOp`]: sums of `x^d R(D)`, which can carry inverse Euler factors.
//!
//! [`separate`] splits an operator into its Euler part `F(D)` (degree 0) and the
//! remainder `P`, the form `[F(D) + P] y = 0` the solver works with.

pub mod diffop;
pub mod euler;
pub mod graded;

pub use diffop::{DiffOp, OpTerm};
pub use euler::{EulerPoly, EulerRational};
pub use graded::{conjugate_by_exp, conjugate_diffop_by_exp, GradedOp, GradedTerm};

use crate::error::Result;
use crate::xseries::XSeries;

/// `F(D) + P`, with every term of `P` carrying a nonzero shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub f: EulerPoly,
    pub p: GradedOp,
}

impl Separation {
    /// The recombined operator `F(D) + P`.
    pub fn combined(&self) -> GradedOp {
        &GradedOp::from(&self.f) + &self.p
    }
}

pub fn apply_diffop(op: &DiffOp, s: &XSeries, order: u32) -> XSeries {
    op.apply(s, order)
}

pub fn apply_graded(op: &GradedOp, s: &XSeries, order: u32) -> Result<XSeries> {
    op.apply(s, order)
}

pub fn to_graded(op: &DiffOp) -> GradedOp {
    GradedOp::from(op)
}

pub fn compose(a: &DiffOp, b: &DiffOp) -> DiffOp {
    a.compose(b)
}

pub fn commutator(a: &DiffOp, b: &DiffOp) -> DiffOp {
    a.commutator(b)
}

/// Collects the degree-0 part as `F(D)`; everything else goes to `P`.
pub fn separate(op: &DiffOp) -> Separation {
    let graded = GradedOp::from(op);
    let diag = graded.diagonal_part();
    debug_assert!(diag.is_polynomial());
    let f = diag.num().scale(&diag.den().leading().recip());
    Separation { f, p: graded.without_diagonal() }
}
