//! Exact scalars, combinatorial primitives and small exact linear algebra.

mod bivariate;
mod matrix;

pub use bivariate::BivariatePolynomial;
pub use matrix::{gaussian_solve, kernel_basis, rank, RationalMatrix};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"p/q"` or `"p"`. The result is canonical.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::invalid(format!("not a rational number: {text:?}"));
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(Error::invalid(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Rising factorial `(x)_j = x (x+1) ⋯ (x+j-1)`, with `(x)_0 = 1`.
pub fn pochhammer(x: i64, j: u64) -> BigInt {
    (0..j).fold(BigInt::one(), |acc, i| acc * (BigInt::from(x) + i))
}

/// Terminating Gauss sum `₂F₁(a, b; c; z) = Σ_j (a)_j (b)_j / ((c)_j j!) z^j`.
///
/// `a ≤ 0` makes the series stop after `-a + 1` terms; `c` must be positive so
/// that no Pochhammer factor in the denominator vanishes.
pub fn hypergeom_terminating(a: i64, b: i64, c: i64, z: &Rational) -> Result<Rational> {
    if a > 0 {
        return Err(Error::invalid(format!(
            "upper parameter a = {a} must be non-positive for a terminating series"
        )));
    }
    if c <= 0 {
        return Err(Error::invalid(format!(
            "lower parameter c = {c} must be positive"
        )));
    }
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for j in 0..(-a) {
        let num = BigInt::from(a + j) * BigInt::from(b + j);
        let den = BigInt::from(c + j) * BigInt::from(j + 1);
        term = term * Rational::new(num, den) * z;
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    Ok(sum)
}

/// `true` when the rational has denominator one.
pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Integer part of an integral rational, or `None`.
pub fn to_integer(x: &Rational) -> Option<BigInt> {
    is_integral(x).then(|| x.numer().clone())
}

/// Sign in `{-1, 0, 1}` of a rational.
pub fn signum(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
