use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Pow, Signed, Zero};

use super::Rational;

/// Polynomial in two commuting variables `a` and `b` with rational
/// coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// The variable `a`.
    pub fn a() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    /// The variable `b`.
    pub fn b() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// `c · a^i b^j`.
    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `a^i b^j`, zero when absent.
    pub fn coefficient(&self, i: u32, j: u32) -> Rational {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Stored `((i, j), coefficient)` pairs in exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn evaluate(&self, a: &Rational, b: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * Pow::pow(a, i) * Pow::pow(b, j))
            .sum()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BivariatePolynomial {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        self + &(-rhs)
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for BivariatePolynomial {
            type Output = BivariatePolynomial;
            fn $method(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for BivariatePolynomial {
    /// Highest power of `a` first, e.g. `1/2*a^2 + 2*a*b + 1/2*b^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            for (name, e) in [("a", i), ("b", j)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    type P = BivariatePolynomial;

    #[test]
    fn coefficient_reads() {
        let p = &P::a().pow(2) + &P::monomial(int(2), 1, 1);
        assert_eq!(p.coefficient(1, 1), int(2));
        assert_eq!(p.coefficient(2, 0), int(1));
        assert_eq!(P::zero().coefficient(3, 3), int(0));
    }

    #[test]
    fn products() {
        let a = P::a();
        let b = P::b();
        let diff = &(&a + &b) * &(&a - &b);
        assert_eq!(diff, &a.pow(2) - &b.pow(2));
        assert!(diff.coefficient(1, 1) == int(0));
        let p = &a + &P::monomial(ratio(3, 7), 2, 5);
        assert_eq!(&p * &P::one(), p);
        let sq = (&a + &b).pow(2);
        assert_eq!(sq.to_string(), "a^2 + 2*a*b + b^2");
        assert_eq!(sq.total_degree(), Some(2));
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = &P::a() - &P::a();
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn display_signs_and_fractions() {
        let p = &P::monomial(ratio(-1, 2), 2, 0) + &P::constant(int(-3));
        assert_eq!(p.to_string(), "-1/2*a^2 - 3");
    }

    #[test]
    fn evaluation() {
        let p = (&P::a() + &P::b()).pow(3);
        assert_eq!(p.evaluate(&int(1), &int(2)), int(27));
        assert_eq!(p.scale(&ratio(1, 27)).evaluate(&int(1), &int(2)), int(1));
    }
}
