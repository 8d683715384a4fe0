//! The fan `Δ` of `P^n`, its negative `-Δ`, and the full-dimensional cones of
//! their common refinement `Σ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{kernel_basis, Rational};
use crate::lp::Constraint;
use crate::polytope::HPolyhedron;
use crate::{DeskGuards, Error, Execution, Result};

/// Cone spanned by `n` linearly independent lattice vectors, with its
/// facet description `{x : -a_k · x ≤ 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialCone {
    generators: Vec<Vec<BigInt>>,
    h_rep: HPolyhedron,
}

impl SimplicialCone {
    pub fn new(generators: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = generators.len();
        if n == 0 {
            return Err(Error::invalid(
                "a simplicial cone needs at least one generator",
            ));
        }
        if let Some(g) = generators.iter().find(|g| g.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.len(),
            });
        }
        let rational: Vec<Vec<Rational>> = generators
            .iter()
            .map(|g| g.iter().cloned().map(Rational::from_integer).collect())
            .collect();
        if crate::exact::rank(&rational) != n {
            return Err(Error::invalid("cone generators are linearly dependent"));
        }
        let mut constraints = Vec::with_capacity(n);
        for omitted in 0..n {
            let others: Vec<Vec<Rational>> = (0..n)
                .filter(|&k| k != omitted)
                .map(|k| rational[k].clone())
                .collect();
            let kernel = kernel_basis(&others, n);
            debug_assert_eq!(kernel.len(), 1);
            let mut normal = primitive(&kernel[0]);
            let toward: BigInt = normal
                .iter()
                .zip(&generators[omitted])
                .map(|(a, g)| a * g)
                .sum();
            if toward.is_negative() {
                normal.iter_mut().for_each(|a| *a = -a.clone());
            }
            constraints.push(Constraint::new(
                normal
                    .into_iter()
                    .map(|a| Rational::from_integer(-a))
                    .collect(),
                Rational::zero(),
            ));
        }
        Ok(SimplicialCone {
            h_rep: HPolyhedron::new(n, constraints)?,
            generators,
        })
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn h_rep(&self) -> &HPolyhedron {
        &self.h_rep
    }
}

/// Integer multiple of `v` with coprime entries.
fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &gcd).collect()
}

/// `e_i` for `1 ≤ i ≤ n`, and `e_0 = -Σ e_i`.
pub fn ray(n: usize, i: usize) -> Vec<BigInt> {
    (1..=n)
        .map(|c| match i {
            0 => -BigInt::one(),
            _ if c == i => BigInt::one(),
            _ => BigInt::zero(),
        })
        .collect()
}

/// The maximal cones `σ_0, …, σ_n` of `Δ`, `σ_i` spanned by `{e_j : j ≠ i}`.
pub fn fan_delta(n: usize) -> Result<Vec<SimplicialCone>> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    (0..=n)
        .map(|i| SimplicialCone::new((0..=n).filter(|&j| j != i).map(|j| ray(n, j)).collect()))
        .collect()
}

/// A maximal cone `σ_i ∩ (-σ_j)` of the common refinement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementCell {
    pub pair: (usize, usize),
    pub cell: HPolyhedron,
}

pub fn common_refinement(n: usize) -> Result<Vec<RefinementCell>> {
    common_refinement_with(n, Execution::default(), &DeskGuards::current())
}

/// Full-dimensional intersections `σ_i ∩ (-σ_j)`, in lexicographic `(i, j)`
/// order.
pub fn common_refinement_with(
    n: usize,
    exec: Execution,
    guards: &DeskGuards,
) -> Result<Vec<RefinementCell>> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "common refinement needs n >= 2, got {n}"
        )));
    }
    if n > guards.max_refinement_dimension {
        return Err(Error::GuardExceeded {
            guard: "max_refinement_dimension",
            message: "common refinement out of desk range",
            limit: guards.max_refinement_dimension,
            requested: n,
        });
    }
    let delta = fan_delta(n)?;
    let m = n + 1;
    let candidates = exec.map_range(0..m * m, |idx| -> Result<Option<RefinementCell>> {
        let (i, j) = (idx / m, idx % m);
        let cell = delta[i].h_rep().intersect(&delta[j].h_rep().negate())?;
        Ok(cell
            .is_full_dimensional()
            .then_some(RefinementCell { pair: (i, j), cell }))
    });
    Ok(candidates
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect())
}

pub fn covering_check(n: usize) -> Result<(Rational, Rational)> {
    covering_check_with(n, Execution::default(), &DeskGuards::current())
}

/// Total volume of the refinement cells clipped to `[-1, 1]^n`, next to the
/// volume `2^n` of the box.
pub fn covering_check_with(
    n: usize,
    exec: Execution,
    guards: &DeskGuards,
) -> Result<(Rational, Rational)> {
    if n > guards.max_covering_dimension {
        return Err(Error::GuardExceeded {
            guard: "max_covering_dimension",
            message: "volumetric covering check out of desk range",
            limit: guards.max_covering_dimension,
            requested: n,
        });
    }
    let cells = common_refinement_with(n, exec, guards)?;
    let volumes = clipped_volumes(&cells, exec, guards)?;
    let total = volumes.into_iter().fold(Rational::zero(), |acc, v| acc + v);
    Ok((total, Rational::from_integer(BigInt::one() << n)))
}

/// Volume of each cell intersected with `[-1, 1]^n`.
pub fn clipped_volumes(
    cells: &[RefinementCell],
    exec: Execution,
    guards: &DeskGuards,
) -> Result<Vec<Rational>> {
    exec.map(cells, |c| {
        let n = c.cell.dimension();
        let clipped = c.cell.intersect(&HPolyhedron::cube(n, &Rational::one())?)?;
        match clipped.to_vpolytope()? {
            Some(p) => p.volume_with_guards(guards),
            None => Ok(Rational::zero()),
        }
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};
    use std::collections::BTreeSet;

    fn point(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn as_rational(g: &[BigInt]) -> Vec<Rational> {
        g.iter().cloned().map(Rational::from_integer).collect()
    }

    #[test]
    fn one_dimensional_rays() {
        let fan = fan_delta(1).unwrap();
        assert_eq!(fan.len(), 2);
        assert!(fan[0].h_rep().contains(&point(&[3])));
        assert!(!fan[0].h_rep().contains(&point(&[-3])));
        assert!(fan[1].h_rep().contains(&point(&[-3])));
        assert!(!fan[1].h_rep().contains(&point(&[3])));
        assert!(fan_delta(0).is_err());
    }

    #[test]
    fn positive_quadrant() {
        let fan = fan_delta(2).unwrap();
        let normals: Vec<Vec<Rational>> = fan[0]
            .h_rep()
            .constraints()
            .iter()
            .map(|c| c.normal.clone())
            .collect();
        assert_eq!(normals, vec![point(&[-1, 0]), point(&[0, -1])]);
        assert!(fan[0]
            .h_rep()
            .constraints()
            .iter()
            .all(|c| c.offset.is_zero()));
    }

    #[test]
    fn generators_lie_in_their_cones() {
        for n in 1..=5 {
            for cone in fan_delta(n).unwrap() {
                for g in cone.generators() {
                    let x = as_rational(g);
                    assert!(cone.h_rep().contains(&x));
                    let tight = cone
                        .h_rep()
                        .constraints()
                        .iter()
                        .filter(|c| c.is_tight(&x))
                        .count();
                    assert_eq!(tight, n - 1);
                }
            }
        }
    }

    #[test]
    fn dependent_generators_rejected() {
        let g = vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(2), BigInt::from(4)],
        ];
        assert!(SimplicialCone::new(g).is_err());
    }

    #[test]
    fn hexagonal_fan() {
        let cells = common_refinement(2).unwrap();
        assert_eq!(cells.len(), 6);
        assert!(cells.iter().all(|c| c.pair.0 != c.pair.1));
        let pairs: Vec<_> = cells.iter().map(|c| c.pair).collect();
        let mut sorted = pairs.clone();
        sorted.sort();
        assert_eq!(pairs, sorted);
    }

    /// Labels `(argmin, argmax)` of `(0, x_1, …, x_n)` on a grid of
    /// `[-1, 1]^n`, skipping points on a wall.
    fn sampled_labels(n: usize, steps: i64) -> BTreeSet<(usize, usize)> {
        let mut labels = BTreeSet::new();
        let total = (2 * steps + 1).pow(n as u32);
        for idx in 0..total {
            let mut rest = idx;
            let mut coords = vec![0i64];
            for _ in 0..n {
                coords.push(rest % (2 * steps + 1) - steps);
                rest /= 2 * steps + 1;
            }
            let min = *coords.iter().min().unwrap();
            let max = *coords.iter().max().unwrap();
            let argmin: Vec<usize> = (0..=n).filter(|&k| coords[k] == min).collect();
            let argmax: Vec<usize> = (0..=n).filter(|&k| coords[k] == max).collect();
            if argmin.len() == 1 && argmax.len() == 1 {
                labels.insert((argmin[0], argmax[0]));
            }
        }
        labels
    }

    #[test]
    fn sampled_cell_counts() {
        for n in 2..=3 {
            let oracle = sampled_labels(n, if n == 2 { 40 } else { 10 });
            let cells: BTreeSet<_> = common_refinement(n)
                .unwrap()
                .into_iter()
                .map(|c| c.pair)
                .collect();
            assert_eq!(cells, oracle, "n={n}");
        }
        assert_eq!(sampled_labels(3, 10).len(), 12);
    }

    #[test]
    fn four_dimensional_refinement() {
        assert_eq!(common_refinement(4).unwrap().len(), 20);
    }

    #[test]
    fn refinement_guards() {
        assert!(common_refinement(1).is_err());
        let err =
            common_refinement_with(5, Execution::Sequential, &DeskGuards::default()).unwrap_err();
        assert!(matches!(
            err,
            Error::GuardExceeded {
                guard: "max_refinement_dimension",
                ..
            }
        ));
        let err =
            covering_check_with(4, Execution::Sequential, &DeskGuards::default()).unwrap_err();
        assert!(matches!(
            err,
            Error::GuardExceeded {
                guard: "max_covering_dimension",
                ..
            }
        ));
    }

    #[test]
    fn covering_is_exact() {
        for n in 2..=3 {
            let (sum, box_volume) = covering_check(n).unwrap();
            assert_eq!(sum, box_volume);
            assert_eq!(box_volume, int(1 << n));
        }
    }

    #[test]
    fn cells_have_positive_volume() {
        for n in 2..=3 {
            let cells = common_refinement(n).unwrap();
            let volumes =
                clipped_volumes(&cells, Execution::Sequential, &DeskGuards::default()).unwrap();
            assert!(volumes.iter().all(|v| v.is_positive()));
        }
        let cells = common_refinement(2).unwrap();
        let volumes =
            clipped_volumes(&cells, Execution::Sequential, &DeskGuards::default()).unwrap();
        // the diagonal halves quadrants I and III; II and IV are whole cells
        let mut volumes = volumes;
        volumes.sort();
        let half = ratio(1, 2);
        assert_eq!(
            volumes,
            vec![
                half.clone(),
                half.clone(),
                half.clone(),
                half,
                int(1),
                int(1)
            ]
        );
    }

    #[test]
    fn interiors_are_disjoint() {
        for n in 2..=3 {
            let cells = common_refinement(n).unwrap();
            for (a, ca) in cells.iter().enumerate() {
                for cb in &cells[a + 1..] {
                    assert!(
                        !ca.cell.intersect(&cb.cell).unwrap().is_full_dimensional(),
                        "{:?} {:?}",
                        ca.pair,
                        cb.pair
                    );
                }
            }
        }
    }

    #[test]
    fn cells_refine_both_fans() {
        for n in 2..=3 {
            let delta = fan_delta(n).unwrap();
            for c in common_refinement(n).unwrap() {
                let clipped = c
                    .cell
                    .intersect(&HPolyhedron::cube(n, &Rational::one()).unwrap())
                    .unwrap();
                let p = clipped.to_vpolytope().unwrap().unwrap();
                let (i, j) = c.pair;
                let minus = delta[j].h_rep().negate();
                for v in p.vertices() {
                    assert!(delta[i].h_rep().contains(v));
                    assert!(minus.contains(v));
                }
            }
        }
    }

    #[test]
    fn negation_swaps_pairs() {
        for n in 2..=4 {
            let cells = common_refinement(n).unwrap();
            let pairs: BTreeSet<_> = cells.iter().map(|c| c.pair).collect();
            let swapped: BTreeSet<_> = cells.iter().map(|c| (c.pair.1, c.pair.0)).collect();
            assert_eq!(pairs, swapped);
            for c in &cells {
                let mirror = cells
                    .iter()
                    .find(|d| d.pair == (c.pair.1, c.pair.0))
                    .unwrap();
                let interior = c.cell.negate().intersect(&mirror.cell).unwrap();
                assert!(interior.is_full_dimensional());
            }
        }
    }

    #[test]
    fn sequential_matches_parallel() {
        let guards = DeskGuards::default();
        let seq = common_refinement_with(3, Execution::Sequential, &guards).unwrap();
        let par = common_refinement_with(3, Execution::Parallel, &guards).unwrap();
        assert_eq!(seq, par);
    }
}
