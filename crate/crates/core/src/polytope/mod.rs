//! Rational polytopes: the simplex family `δ_n`, dilation, negation,
//! Minkowski sums, and exact volumes.
//!
//! Volumes are Euclidean, so `Vol(δ_n) = 1/n!`. The general oracle is a
//! pulling triangulation; [`volume_closed_form`], [`volume_polynomial`] and
//! [`orthant_decomposition`] give the same numbers for `aδ_n + b(-δ_n)`
//! without any geometry.

mod hull;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use crate::exact::{binomial, factorial, BivariatePolynomial, Rational};
use crate::lp::{self, Constraint};
use crate::{DeskGuards, Error, Result};

pub type Point = Vec<Rational>;

/// Convex hull of finitely many points, stored by its vertices in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VPolytope {
    dimension: usize,
    vertices: Vec<Point>,
}

impl VPolytope {
    /// Hull of `points`: duplicates and non-extreme points are dropped.
    pub fn from_points(dimension: usize, points: Vec<Point>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::invalid("polytope dimension must be positive"));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dimension) {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                found: p.len(),
            });
        }
        if points.is_empty() {
            return Err(Error::invalid("a polytope needs at least one point"));
        }
        let distinct: Vec<Point> = points
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut vertices = Vec::with_capacity(distinct.len());
        for (i, p) in distinct.iter().enumerate() {
            let others: Vec<Point> = distinct
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| q.clone())
                .collect();
            if lp::is_extreme(p, &others)? {
                vertices.push(p.clone());
            }
        }
        Ok(VPolytope {
            dimension,
            vertices,
        })
    }

    /// Caller guarantees the points are pairwise distinct and all extreme.
    fn from_vertices(dimension: usize, mut vertices: Vec<Point>) -> Self {
        vertices.sort();
        VPolytope {
            dimension,
            vertices,
        }
    }

    /// `δ_n = [0, e_1, …, e_n]`.
    pub fn standard_simplex(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("standard simplex needs n >= 1"));
        }
        let mut vertices = vec![vec![Rational::zero(); n]];
        for i in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            vertices.push(e);
        }
        Ok(Self::from_vertices(n, vertices))
    }

    /// The single point at the origin.
    pub fn origin(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("polytope dimension must be positive"));
        }
        Ok(Self::from_vertices(n, vec![vec![Rational::zero(); n]]))
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn negate(&self) -> Self {
        let vertices = self
            .vertices
            .iter()
            .map(|p| p.iter().map(|x| -x.clone()).collect())
            .collect();
        Self::from_vertices(self.dimension, vertices)
    }

    /// `c · P` for `c ≥ 0`; `c = 0` collapses to the origin.
    pub fn dilate(&self, c: &Rational) -> Result<Self> {
        if c.is_negative() {
            return Err(Error::invalid(format!(
                "dilation factor {c} is negative; negate the polytope instead"
            )));
        }
        if c.is_zero() {
            return Self::origin(self.dimension);
        }
        let vertices = self
            .vertices
            .iter()
            .map(|p| p.iter().map(|x| x * c).collect())
            .collect();
        Ok(Self::from_vertices(self.dimension, vertices))
    }

    pub fn translate(&self, t: &[Rational]) -> Result<Self> {
        if t.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: t.len(),
            });
        }
        let vertices = self
            .vertices
            .iter()
            .map(|p| p.iter().zip(t).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Self::from_vertices(self.dimension, vertices))
    }

    /// `P ⊕ Q`: hull of all pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &VPolytope) -> Result<Self> {
        if self.dimension != other.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: other.dimension,
            });
        }
        let sums = self
            .vertices
            .iter()
            .flat_map(|p| {
                other
                    .vertices
                    .iter()
                    .map(move |q| p.iter().zip(q).map(|(x, y)| x + y).collect())
            })
            .collect();
        Self::from_points(self.dimension, sums)
    }

    /// Euclidean volume, guarded by [`DeskGuards::current`].
    pub fn volume(&self) -> Result<Rational> {
        self.volume_with_guards(&DeskGuards::current())
    }

    pub fn volume_with_guards(&self, guards: &DeskGuards) -> Result<Rational> {
        if self.vertices.len() > guards.max_vertices {
            return Err(Error::GuardExceeded {
                guard: "max_vertices",
                message: "general volume oracle out of desk range",
                limit: guards.max_vertices,
                requested: self.vertices.len(),
            });
        }
        if self.vertices.len() <= self.dimension {
            return Ok(Rational::zero());
        }
        Ok(hull::hull_volume(&self.vertices))
    }

    /// Facet inequalities `normal · x ≤ offset` with primitive integer normals,
    /// or `None` if the polytope is not full-dimensional.
    pub fn facet_inequalities(&self) -> Result<Option<HPolyhedron>> {
        let rows: Vec<Point> = self.vertices[1..]
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&self.vertices[0])
                    .map(|(x, y)| x - y)
                    .collect()
            })
            .collect();
        if crate::exact::rank(&rows) < self.dimension {
            return Ok(None);
        }
        let constraints = hull::hull_facets(&self.vertices)
            .into_iter()
            .map(|(normal, offset)| {
                Constraint::new(
                    normal.into_iter().map(Rational::from_integer).collect(),
                    offset,
                )
            })
            .collect();
        HPolyhedron::new(self.dimension, constraints).map(Some)
    }
}

/// Intersection of finitely many half-spaces `normal · x ≤ offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolyhedron {
    dimension: usize,
    constraints: Vec<Constraint>,
}

impl HPolyhedron {
    pub fn new(dimension: usize, constraints: Vec<Constraint>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::invalid("polyhedron dimension must be positive"));
        }
        for c in &constraints {
            if c.normal.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: c.normal.len(),
                });
            }
            if c.normal.iter().all(Zero::is_zero) {
                return Err(Error::invalid("zero normal vector in half-space"));
            }
        }
        Ok(HPolyhedron {
            dimension,
            constraints,
        })
    }

    /// The cube `[-r, r]^n`.
    pub fn cube(dimension: usize, radius: &Rational) -> Result<Self> {
        let mut constraints = Vec::with_capacity(2 * dimension);
        for i in 0..dimension {
            for sign in [1, -1] {
                let mut normal = vec![Rational::zero(); dimension];
                normal[i] = Rational::from_integer(BigInt::from(sign));
                constraints.push(Constraint::new(normal, radius.clone()));
            }
        }
        Self::new(dimension, constraints)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|c| c.is_satisfied(x))
    }

    /// All constraints of both polyhedra.
    pub fn intersect(&self, other: &HPolyhedron) -> Result<Self> {
        if self.dimension != other.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: other.dimension,
            });
        }
        let mut constraints = self.constraints.clone();
        constraints.extend(other.constraints.iter().cloned());
        Ok(HPolyhedron {
            dimension: self.dimension,
            constraints,
        })
    }

    /// The image under `x ↦ -x`.
    pub fn negate(&self) -> Self {
        HPolyhedron {
            dimension: self.dimension,
            constraints: self
                .constraints
                .iter()
                .map(|c| {
                    Constraint::new(
                        c.normal.iter().map(|x| -x.clone()).collect(),
                        c.offset.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        lp::is_full_dimensional(self)
    }

    /// Vertex hull of a bounded polyhedron, or `None` if it is empty.
    pub fn to_vpolytope(&self) -> Result<Option<VPolytope>> {
        let vertices = lp::vertex_enumeration(self)?;
        if vertices.is_empty() {
            return Ok(None);
        }
        Ok(Some(VPolytope::from_vertices(self.dimension, vertices)))
    }
}

fn check_nonnegative(a: &Rational, b: &Rational) -> Result<()> {
    if a.is_negative() || b.is_negative() {
        return Err(Error::invalid(format!(
            "dilation factors must be non-negative, got ({a}, {b})"
        )));
    }
    Ok(())
}

/// Coefficient `C(n, j) / (j! (n-j)!)` of `a^j b^(n-j)` in the volume of
/// `aδ_n + b(-δ_n)`.
pub fn orthant_coefficient(n: usize, j: usize) -> Rational {
    let n64 = n as u64;
    let j64 = j as u64;
    Rational::new(
        binomial(n64, j as i64),
        factorial(j64) * factorial(n64 - j64),
    )
}

/// `Vol(aδ_n + b(-δ_n)) = Σ_j C(n,j) a^j b^(n-j) / (j!(n-j)!)`.
pub fn volume_closed_form(a: &Rational, b: &Rational, n: usize) -> Result<Rational> {
    check_nonnegative(a, b)?;
    if n == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    Ok((0..=n)
        .map(|j| orthant_coefficient(n, j) * Pow::pow(a, j as u32) * Pow::pow(b, (n - j) as u32))
        .sum())
}

/// The volume of `aδ_n + b(-δ_n)` as a polynomial in `a` and `b`.
pub fn volume_polynomial(n: usize) -> Result<BivariatePolynomial> {
    if n == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    Ok((0..=n).fold(BivariatePolynomial::zero(), |acc, j| {
        &acc + &BivariatePolynomial::monomial(orthant_coefficient(n, j), j as u32, (n - j) as u32)
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

/// Intersection of `aδ_n + b(-δ_n)` with one closed orthant.
///
/// The piece is `aδ_j × b δ_{n-j}` where `j` counts the `+` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthantCell {
    pub signs: Vec<Sign>,
    pub split: usize,
    pub volume: Rational,
}

impl OrthantCell {
    /// H-representation of the piece: coordinates with sign `+` lie in
    /// `aδ_j`, the others in `-bδ_{n-j}`.
    pub fn region(&self, a: &Rational, b: &Rational) -> Result<HPolyhedron> {
        let n = self.signs.len();
        let mut constraints = Vec::new();
        let mut plus_sum = vec![Rational::zero(); n];
        let mut minus_sum = vec![Rational::zero(); n];
        for (i, s) in self.signs.iter().enumerate() {
            let mut normal = vec![Rational::zero(); n];
            match s {
                Sign::Plus => {
                    normal[i] = -Rational::one();
                    plus_sum[i] = Rational::one();
                }
                Sign::Minus => {
                    normal[i] = Rational::one();
                    minus_sum[i] = -Rational::one();
                }
            }
            constraints.push(Constraint::new(normal, Rational::zero()));
        }
        if self.split > 0 {
            constraints.push(Constraint::new(plus_sum, a.clone()));
        }
        if self.split < n {
            constraints.push(Constraint::new(minus_sum, b.clone()));
        }
        HPolyhedron::new(n, constraints)
    }
}

/// The `2^n` orthant pieces of `aδ_n + b(-δ_n)`, ordered by the bitmask of
/// `+` coordinates (bit `i` set means coordinate `i` is non-negative).
pub fn orthant_decomposition(a: &Rational, b: &Rational, n: usize) -> Result<Vec<OrthantCell>> {
    check_nonnegative(a, b)?;
    if n == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    if n >= usize::BITS as usize - 1 {
        return Err(Error::invalid("too many orthants"));
    }
    Ok((0..1usize << n)
        .map(|mask| {
            let signs: Vec<Sign> = (0..n)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                })
                .collect();
            let j = mask.count_ones() as usize;
            let volume = Pow::pow(a, j as u32) * Pow::pow(b, (n - j) as u32)
                / Rational::from_integer(factorial(j as u64) * factorial((n - j) as u64));
            OrthantCell {
                signs,
                split: j,
                volume,
            }
        })
        .collect())
}

/// `aδ_n ⊕ b(-δ_n)` as a vertex polytope.
pub fn simplex_pair_sum(a: &Rational, b: &Rational, n: usize) -> Result<VPolytope> {
    check_nonnegative(a, b)?;
    let delta = VPolytope::standard_simplex(n)?;
    delta.dilate(a)?.minkowski_sum(&delta.negate().dilate(b)?)
}
