//! Mixed-volume coefficients by polarization, and the three ways of
//! computing the multidegrees of the standard Cremona transformation.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exact::{binomial, factorial, to_integer, Rational};
use crate::polytope::{volume_closed_form, volume_polynomial, VPolytope};
use crate::{Error, Execution, Result};

/// `n` bodies in `R^n` whose `ν_1⋯ν_n` coefficient is wanted.
#[derive(Debug, Clone)]
pub struct MixedVolumeQuery<'a> {
    dimension: usize,
    bodies: Vec<&'a VPolytope>,
}

impl<'a> MixedVolumeQuery<'a> {
    pub fn new(bodies: Vec<&'a VPolytope>) -> Result<Self> {
        let Some(first) = bodies.first() else {
            return Err(Error::invalid(
                "a mixed-volume query needs at least one body",
            ));
        };
        let n = first.dimension();
        if bodies.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bodies.len(),
            });
        }
        if let Some(b) = bodies.iter().find(|b| b.dimension() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: b.dimension(),
            });
        }
        Ok(MixedVolumeQuery {
            dimension: n,
            bodies,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn bodies(&self) -> &[&'a VPolytope] {
        &self.bodies
    }

    /// `Some(flags)` when every body is `δ_n` (`true`) or `-δ_n` (`false`).
    fn simplex_pattern(&self) -> Option<Vec<bool>> {
        let delta = VPolytope::standard_simplex(self.dimension).ok()?;
        let minus = delta.negate();
        self.bodies
            .iter()
            .map(|b| {
                if **b == delta {
                    Some(true)
                } else if **b == minus {
                    Some(false)
                } else {
                    None
                }
            })
            .collect()
    }
}

/// Coefficient of `ν_1⋯ν_n` in `Vol(ν_1 P_1 + ⋯ + ν_n P_n)`:
///
/// `Σ_{∅≠S⊆[n]} (-1)^{n-|S|} Vol(Σ_{i∈S} P_i)`.
///
/// Bodies drawn from `{δ_n, -δ_n}` use the closed-form volume; anything else
/// goes through the triangulation oracle.
pub fn mixed_coefficient(query: &MixedVolumeQuery<'_>) -> Result<Rational> {
    mixed_coefficient_with(query, Execution::default())
}

pub fn mixed_coefficient_with(query: &MixedVolumeQuery<'_>, exec: Execution) -> Result<Rational> {
    let n = query.dimension;
    if n >= usize::BITS as usize - 1 {
        return Err(Error::invalid("too many bodies for subset enumeration"));
    }
    let pattern = query.simplex_pattern();
    let terms: Vec<Result<Rational>> = exec.map_range(1..1usize << n, |mask| {
        let size = mask.count_ones() as usize;
        let volume = match &pattern {
            Some(flags) => {
                let pos = (0..n).filter(|&i| mask >> i & 1 == 1 && flags[i]).count();
                let neg = size - pos;
                volume_closed_form(
                    &Rational::from_integer(pos.into()),
                    &Rational::from_integer(neg.into()),
                    n,
                )?
            }
            None => subset_sum(query, mask)?.volume()?,
        };
        Ok(if (n - size).is_multiple_of(2) {
            volume
        } else {
            -volume
        })
    });
    terms
        .into_iter()
        .try_fold(Rational::zero(), |acc, t| Ok(acc + t?))
}

fn subset_sum(query: &MixedVolumeQuery<'_>, mask: usize) -> Result<VPolytope> {
    let mut chosen = (0..query.dimension).filter(|i| mask >> i & 1 == 1);
    let first = chosen.next().expect("mask is non-empty");
    chosen.try_fold(query.bodies[first].clone(), |acc, i| {
        acc.minkowski_sum(query.bodies[i])
    })
}

fn check_index(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    if k > n {
        return Err(Error::invalid(format!("k = {k} is outside 0..={n}")));
    }
    Ok(())
}

/// `d_k` as the mixed coefficient of `k` copies of `δ_n` and `n-k` copies of
/// `-δ_n`.
pub fn multidegree_by_mixed_volume(n: usize, k: usize) -> Result<BigInt> {
    multidegree_by_mixed_volume_with(n, k, Execution::default())
}

pub fn multidegree_by_mixed_volume_with(n: usize, k: usize, exec: Execution) -> Result<BigInt> {
    check_index(n, k)?;
    let delta = VPolytope::standard_simplex(n)?;
    let minus = delta.negate();
    let bodies: Vec<&VPolytope> = (0..n)
        .map(|i| if i < k { &delta } else { &minus })
        .collect();
    let coefficient = mixed_coefficient_with(&MixedVolumeQuery::new(bodies)?, exec)?;
    to_integer(&coefficient)
        .ok_or_else(|| Error::invalid(format!("mixed coefficient {coefficient} is not an integer")))
}

/// `d_k = k!(n-k)! · [a^k b^(n-k)] Vol(aδ_n + b(-δ_n))`.
pub fn multidegree_by_coefficient_extraction(n: usize, k: usize) -> Result<BigInt> {
    check_index(n, k)?;
    let c = volume_polynomial(n)?.coefficient(k as u32, (n - k) as u32)
        * Rational::from_integer(factorial(k as u64) * factorial((n - k) as u64));
    to_integer(&c)
        .ok_or_else(|| Error::invalid(format!("extracted coefficient {c} is not an integer")))
}

pub fn multidegree_by_formula(n: usize, k: usize) -> Result<BigInt> {
    check_index(n, k)?;
    Ok(binomial(n as u64, k as i64))
}

/// Which path computes the multidegrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MultidegreeMethod {
    Formula,
    MixedVolume,
    Extraction,
}

impl MultidegreeMethod {
    pub const ALL: [MultidegreeMethod; 3] = [
        MultidegreeMethod::Formula,
        MultidegreeMethod::MixedVolume,
        MultidegreeMethod::Extraction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MultidegreeMethod::Formula => "formula",
            MultidegreeMethod::MixedVolume => "mixed-volume",
            MultidegreeMethod::Extraction => "extraction",
        }
    }
}

/// `(d_0, …, d_n)` by one method.
pub fn multidegree_sequence(
    n: usize,
    method: MultidegreeMethod,
    exec: Execution,
) -> Result<Vec<BigInt>> {
    (0..=n)
        .map(|k| match method {
            MultidegreeMethod::Formula => multidegree_by_formula(n, k),
            MultidegreeMethod::MixedVolume => multidegree_by_mixed_volume_with(n, k, exec),
            MultidegreeMethod::Extraction => multidegree_by_coefficient_extraction(n, k),
        })
        .collect()
}
