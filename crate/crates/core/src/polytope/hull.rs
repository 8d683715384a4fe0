//! Facet search and pulling triangulation over integer coordinates.
//!
//! Vertices are scaled to a common denominator first, so every predicate is
//! an integer determinant. The search runs in `i128` with checked arithmetic
//! and is repeated over `BigInt` if anything overflows.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};

use super::Point;
use crate::exact::{factorial, Rational};
use crate::lp::next_combination;

#[derive(Debug)]
pub(super) struct Overflow;

pub(super) trait ExactInt:
    Clone + Ord + Signed + CheckedAdd + CheckedSub + CheckedMul + Integer
{
    fn to_big(&self) -> BigInt;
}

impl ExactInt for i128 {
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

fn add<T: ExactInt>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_add(b).ok_or(Overflow)
}

fn sub<T: ExactInt>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_sub(b).ok_or(Overflow)
}

fn mul<T: ExactInt>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_mul(b).ok_or(Overflow)
}

fn dot<T: ExactInt>(a: &[T], b: &[T]) -> Result<T, Overflow> {
    a.iter()
        .zip(b)
        .try_fold(T::zero(), |acc, (x, y)| add(&acc, &mul(x, y)?))
}

/// Fraction-free (Bareiss) elimination. Returns the rank and, for square
/// input, the determinant.
fn bareiss<T: ExactInt>(mut m: Vec<Vec<T>>) -> Result<(usize, T), Overflow> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut sign = T::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = sub(&mul(&m[r][c], &m[i][j])?, &mul(&m[i][c], &m[r][j])?)?;
                m[i][j] = t.div_floor(&prev);
            }
            m[i][c] = T::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    let det = if rows == cols && r == rows {
        if rows == 0 {
            T::one()
        } else {
            mul(&sign, &m[rows - 1][cols - 1])?
        }
    } else {
        T::zero()
    };
    Ok((r, det))
}

fn differences<T: ExactInt>(points: &[&[T]]) -> Result<Vec<Vec<T>>, Overflow> {
    let base = points[0];
    points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(x, y)| sub(x, y)).collect())
        .collect()
}

fn affine_rank<T: ExactInt>(points: &[&[T]]) -> Result<usize, Overflow> {
    if points.len() <= 1 {
        return Ok(0);
    }
    Ok(bareiss(differences(points)?)?.0)
}

/// Normal of the hyperplane through `n` points in `R^n` via signed cofactors,
/// or `None` if they are affinely dependent.
fn hyperplane_normal<T: ExactInt>(points: &[&[T]]) -> Result<Option<Vec<T>>, Overflow> {
    let n = points[0].len();
    let diffs = differences(points)?;
    let mut normal = Vec::with_capacity(n);
    for j in 0..n {
        let minor: Vec<Vec<T>> = diffs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let (_, det) = bareiss(minor)?;
        normal.push(if j % 2 == 0 { det } else { -det });
    }
    Ok(normal.iter().any(|x| !x.is_zero()).then_some(normal))
}

/// Fixed-width vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(super) struct VertexSet(Vec<u64>);

impl VertexSet {
    fn empty(len: usize) -> Self {
        VertexSet(vec![0; len.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub(super) fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn intersect(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub(super) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, bits)| {
            (0..64)
                .filter(move |b| bits >> b & 1 == 1)
                .map(move |b| w * 64 + b)
        })
    }

    fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

/// A facet as `normal · x ≤ offset` (integer coordinates) plus the vertices
/// lying on it.
#[derive(Debug, Clone)]
pub(super) struct Facet<T> {
    pub normal: Vec<T>,
    pub offset: T,
    pub vertices: VertexSet,
}

/// All facets of a full-dimensional point set, by exhaustive search over
/// affinely independent `n`-subsets whose hyperplane leaves every point on one
/// side. Subsets already inside a known facet are skipped.
pub(super) fn facets<T: ExactInt>(points: &[Vec<T>]) -> Result<Vec<Facet<T>>, Overflow> {
    let n = points[0].len();
    let count = points.len();
    let mut found: Vec<Facet<T>> = Vec::new();
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let mut mask = VertexSet::empty(count);
        subset.iter().for_each(|&i| mask.insert(i));
        if !found.iter().any(|f| mask.is_subset_of(&f.vertices)) {
            let chosen: Vec<&[T]> = subset.iter().map(|&i| points[i].as_slice()).collect();
            if let Some(mut normal) = hyperplane_normal(&chosen)? {
                let mut offset = dot(&normal, chosen[0])?;
                let mut above = false;
                let mut below = false;
                let mut on = VertexSet::empty(count);
                for (i, p) in points.iter().enumerate() {
                    match dot(&normal, p)?.cmp(&offset) {
                        std::cmp::Ordering::Greater => above = true,
                        std::cmp::Ordering::Less => below = true,
                        std::cmp::Ordering::Equal => on.insert(i),
                    }
                    if above && below {
                        break;
                    }
                }
                if !(above && below) {
                    if above {
                        normal = normal.into_iter().map(|x| -x).collect();
                        offset = -offset;
                    }
                    found.push(Facet {
                        normal,
                        offset,
                        vertices: on,
                    });
                }
            }
        }
        if !next_combination(&mut subset, count) {
            break;
        }
    }
    Ok(found)
}

struct Triangulator<'a, T> {
    points: &'a [Vec<T>],
    facets: &'a [Facet<T>],
    memo: HashMap<VertexSet, Vec<Vec<usize>>>,
}

impl<T: ExactInt> Triangulator<'_, T> {
    fn rank_of(&self, set: &VertexSet) -> Result<usize, Overflow> {
        let pts: Vec<&[T]> = set.iter().map(|i| self.points[i].as_slice()).collect();
        affine_rank(&pts)
    }

    /// Pulling triangulation of a face of dimension `dim`: cone from its
    /// lowest-index vertex over the triangulated facets not containing it.
    fn triangulate(&mut self, face: &VertexSet, dim: usize) -> Result<Vec<Vec<usize>>, Overflow> {
        if let Some(done) = self.memo.get(face) {
            return Ok(done.clone());
        }
        let apex = face.first().expect("faces are non-empty");
        let simplices = if dim == 0 {
            vec![vec![apex]]
        } else {
            let mut subfaces: Vec<VertexSet> = Vec::new();
            for f in self.facets {
                let sub = face.intersect(&f.vertices);
                if sub == *face || sub.contains(apex) || subfaces.contains(&sub) {
                    continue;
                }
                if sub.first().is_some() && self.rank_of(&sub)? == dim - 1 {
                    subfaces.push(sub);
                }
            }
            let mut out = Vec::new();
            for sub in subfaces {
                for mut s in self.triangulate(&sub, dim - 1)? {
                    s.push(apex);
                    out.push(s);
                }
            }
            out
        };
        self.memo.insert(face.clone(), simplices.clone());
        Ok(simplices)
    }
}

/// Sum of `|det|` over the simplices of a pulling triangulation, i.e.
/// `n!` times the volume in the scaled coordinates. Zero when the points are
/// not full-dimensional.
fn scaled_volume<T: ExactInt>(points: &[Vec<T>]) -> Result<BigInt, Overflow> {
    let n = points[0].len();
    let refs: Vec<&[T]> = points.iter().map(Vec::as_slice).collect();
    if affine_rank(&refs)? < n {
        return Ok(BigInt::zero());
    }
    let facets = facets(points)?;
    let mut tri = Triangulator {
        points,
        facets: &facets,
        memo: HashMap::new(),
    };
    let mut all = VertexSet::empty(points.len());
    (0..points.len()).for_each(|i| all.insert(i));
    let mut total = BigInt::zero();
    for simplex in tri.triangulate(&all, n)? {
        let verts: Vec<&[T]> = simplex.iter().map(|&i| points[i].as_slice()).collect();
        let (_, det) = bareiss(differences(&verts)?)?;
        total += det.abs().to_big();
    }
    Ok(total)
}

/// Vertices scaled by the least common denominator `D`.
pub(super) fn integer_coordinates(vertices: &[Point]) -> (Vec<Vec<BigInt>>, BigInt) {
    let lcd = vertices
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled = vertices
        .iter()
        .map(|p| p.iter().map(|x| (x * &lcd).to_integer()).collect())
        .collect();
    (scaled, lcd)
}

fn narrow(points: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    points
        .iter()
        .map(|p| p.iter().map(|x| i128::try_from(x).ok()).collect())
        .collect()
}

/// Euclidean volume of the convex hull of `vertices` (all in `R^n`).
pub(super) fn hull_volume(vertices: &[Point]) -> Rational {
    let n = vertices[0].len();
    let (scaled, lcd) = integer_coordinates(vertices);
    let sum = narrow(&scaled)
        .and_then(|small| scaled_volume(&small).ok())
        .unwrap_or_else(|| scaled_volume(&scaled).expect("BigInt arithmetic cannot overflow"));
    Rational::new(sum, factorial(n as u64) * num_traits::pow(lcd, n))
}

/// Facet inequalities of a full-dimensional hull, with primitive integer
/// normals, in discovery order.
pub(super) fn hull_facets(vertices: &[Point]) -> Vec<(Vec<BigInt>, Rational)> {
    let (scaled, lcd) = integer_coordinates(vertices);
    let raw: Vec<(Vec<BigInt>, BigInt)> = match narrow(&scaled).and_then(|s| facets(&s).ok()) {
        Some(fs) => fs
            .into_iter()
            .map(|f| {
                (
                    f.normal.iter().map(|x| x.to_big()).collect(),
                    f.offset.to_big(),
                )
            })
            .collect(),
        None => facets(&scaled)
            .expect("BigInt arithmetic cannot overflow")
            .into_iter()
            .map(|f| (f.normal, f.offset))
            .collect(),
    };
    raw.into_iter()
        .map(|(normal, offset)| {
            let g = normal.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            let normal: Vec<BigInt> = normal.into_iter().map(|x| x / &g).collect();
            // scaled: normal·(D x) ≤ offset  ⇔  normal·x ≤ offset / D
            (normal, Rational::new(offset, g * &lcd))
        })
        .collect()
}
