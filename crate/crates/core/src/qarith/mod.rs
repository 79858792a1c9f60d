//! Exact scalars: Laurent polynomials and rational functions in `q` over `Z`
//! and `GF(ε)`, q-integers, and the scalar bar involution.

mod laurent;
mod qcomb;
mod rational;
mod upoly;

pub use laurent::{laurent_arith, BaseRing, LaurentOp, LaurentPoly};
pub use qcomb::{q_binomial, q_factorial, q_integer};
pub use rational::{common_denominator, RationalFn};

/// The scalar bar involution `q ↦ q⁻¹`.
pub fn bar_scalar(a: &LaurentPoly) -> LaurentPoly {
    a.bar()
}

/// Coefficientwise reduction modulo ε ∈ {2, 3}.
pub fn reduce_mod(a: &LaurentPoly, eps: i64) -> crate::Result<LaurentPoly> {
    a.reduce_mod(eps)
}
