//! Exact integer polynomial arithmetic, cyclotomic polynomials and the
//! small number theory they need.

mod arith;
mod cyclotomic;
mod poly;

use thiserror::Error;

pub use arith::{divisors, euler_phi, factorize, gcd, is_prime, lcm, Factorization};
pub use cyclotomic::{cyclotomic, cyclotomic_divides, cyclotomic_divides_counts, cyclotomic_divides_mask};
pub use poly::IntPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("remainder is nonzero")]
    NotDivisible,
    #[error("divisor must be monic")]
    NonMonicDivisor,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
}

/// `f * g mod (X^m - 1)`.
pub fn mul_mod_cyclic(f: &IntPolynomial, g: &IntPolynomial, m: usize) -> IntPolynomial {
    f.mul_mod_cyclic(g, m)
}

/// `f / g` exactly, for monic `g`.
pub fn exact_divide(f: &IntPolynomial, g: &IntPolynomial) -> Result<IntPolynomial, PolyError> {
    f.exact_divide(g)
}
