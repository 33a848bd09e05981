use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::PolyError;

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `X^i`. The vector never carries trailing
/// zeros, so the zero polynomial is the empty vector and has no degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * X^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// `X^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] -= 1;
        coeffs[n] += 1;
        Self::from_coeffs(coeffs)
    }

    /// Sum of `X^e` over the given exponents, repeated exponents accumulate.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exponents: I) -> Self {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for e in exponents {
            if e >= coeffs.len() {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] += 1;
        }
        Self::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Value at `X = 1`, the coefficient sum.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Exponents carrying a nonzero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
    }

    /// True when every coefficient is 0 or 1, i.e. the polynomial is the
    /// mask of a set.
    pub fn is_zero_one(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero() || c.is_one())
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> Result<(Self, Self), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::ZeroDivisor)?;
        if !divisor.is_monic() {
            return Err(PolyError::NonMonicDivisor);
        }
        let Some(fd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if fd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); fd - dd + 1];
        for k in (0..=fd - dd).rev() {
            let lead = std::mem::take(&mut rem[k + dd]);
            if lead.is_zero() {
                continue;
            }
            for (j, g) in divisor.coeffs[..dd].iter().enumerate() {
                if !g.is_zero() {
                    rem[k + j] -= &lead * g;
                }
            }
            quot[k] = lead;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact quotient `self / divisor` over the integers.
    ///
    /// `NotDivisible` is an ordinary outcome; a zero or non-monic divisor is a
    /// usage error.
    pub fn exact_divide(&self, divisor: &IntPolynomial) -> Result<Self, PolyError> {
        let (q, r) = self.div_rem_monic(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible)
        }
    }

    /// Reduction modulo `X^m - 1`: exponents fold modulo `m`.
    pub fn reduce_cyclic(&self, m: usize) -> Self {
        assert!(m >= 1, "cyclic modulus must be positive");
        if self.coeffs.len() <= m {
            return self.clone();
        }
        let mut out = vec![BigInt::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[i % m] += c;
            }
        }
        Self::from_coeffs(out)
    }

    /// `self * other mod (X^m - 1)`; the result has degree below `m`.
    pub fn mul_mod_cyclic(&self, other: &IntPolynomial, m: usize) -> Self {
        assert!(m >= 1, "cyclic modulus must be positive");
        let lhs: Vec<(usize, &BigInt)> = sparse(&self.coeffs).map(|(i, c)| (i % m, c)).collect();
        let mut out = vec![BigInt::zero(); m];
        for (j, d) in sparse(&other.coeffs) {
            let j = j % m;
            for &(i, c) in &lhs {
                let k = if i + j >= m { i + j - m } else { i + j };
                if c.is_one() && d.is_one() {
                    out[k] += 1u32;
                } else {
                    out[k] += c * d;
                }
            }
        }
        Self::from_coeffs(out)
    }
}

fn sparse(coeffs: &[BigInt]) -> impl Iterator<Item = (usize, &BigInt)> {
    coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("X")?,
                (1, false) => write!(f, "{mag}*X")?,
                (_, true) => write!(f, "X^{i}")?,
                (_, false) => write!(f, "{mag}*X^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, c) in sparse(&self.coeffs) {
            for (j, d) in sparse(&rhs.coeffs) {
                out[i + j] += c * d;
            }
        }
        IntPolynomial::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;

            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Product for IntPolynomial {
    fn product<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::one(), |acc, p| &acc * &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(IntPolynomial::zero().degree(), None);
        assert_eq!(p(&[0, 0, 0]).degree(), None);
        assert_eq!(p(&[3]).degree(), Some(0));
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
    }

    #[test]
    fn exact_divide_examples() {
        let x4m1 = IntPolynomial::x_pow_minus_one(4);
        assert_eq!(x4m1.exact_divide(&p(&[1, 0, 1])).unwrap(), p(&[-1, 0, 1]));
        assert_eq!(p(&[1, 1, 1, 1]).exact_divide(&p(&[1, 0, 1])).unwrap(), p(&[1, 1]));
        assert_eq!(p(&[1, 1, 1]).exact_divide(&p(&[1, 1])), Err(PolyError::NotDivisible));
    }

    #[test]
    fn exact_divide_rejects_bad_divisors() {
        assert_eq!(p(&[1, 1]).exact_divide(&p(&[1, 2])), Err(PolyError::NonMonicDivisor));
        assert_eq!(
            p(&[1, 1]).exact_divide(&IntPolynomial::zero()),
            Err(PolyError::ZeroDivisor)
        );
        assert_eq!(
            IntPolynomial::zero().exact_divide(&p(&[5, 1])).unwrap(),
            IntPolynomial::zero()
        );
    }

    #[test]
    fn mul_mod_cyclic_examples() {
        assert_eq!(p(&[1, 1]).mul_mod_cyclic(&p(&[1, 1]), 2), p(&[2, 2]));
        assert_eq!(p(&[1, 1]).mul_mod_cyclic(&p(&[1, 0, 1]), 4), p(&[1, 1, 1, 1]));
        assert_eq!(p(&[0, 0, 0, 1]).mul_mod_cyclic(&p(&[0, 0, 0, 1]), 4), p(&[0, 0, 1]));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[1, -1, 1]).to_string(), "1 - X + X^2");
        assert_eq!(p(&[-1, 0, 3]).to_string(), "-1 + 3*X^2");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn eval_at_one_counts_set() {
        let mask = IntPolynomial::from_exponents([0, 2, 5]);
        assert_eq!(mask.eval_at_one(), BigInt::from(3));
        assert_eq!(mask.eval(&BigInt::from(2)), BigInt::from(1 + 4 + 32));
    }
}
