//! Exact rational linear programming (two-phase simplex, Bland's rule) and
//! the polyhedral predicates built on it.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::exact::{gaussian_solve, Rational, RationalMatrix};
use crate::polytope::HPolyhedron;
use crate::{Error, Result};

/// `normal · x ≤ offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Constraint {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Self {
        Constraint { normal, offset }
    }

    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        self.normal.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        self.evaluate(x) <= self.offset
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.evaluate(x) == self.offset
    }
}

/// Maximize `objective · x` subject to every constraint; `x` is free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub dimension: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(
        dimension: usize,
        objective: Vec<Rational>,
        constraints: Vec<Constraint>,
    ) -> Result<Self> {
        if objective.len() != dimension {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                found: objective.len(),
            });
        }
        if let Some(c) = constraints.iter().find(|c| c.normal.len() != dimension) {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                found: c.normal.len(),
            });
        }
        Ok(LinearProgram {
            dimension,
            objective,
            constraints,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        point: Vec<Rational>,
        value: Rational,
    },
    Unbounded,
    Infeasible,
}

impl LpOutcome {
    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

/// Simplex tableau for `max c·y, A y = b, y ≥ 0`.
///
/// `rows[i]` holds the constraint coefficients followed by the right-hand
/// side. `cost[j]` is the reduced cost of column `j` (a column may enter when
/// it is negative) and `cost[width]` is the current objective value.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

enum Pivoting {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, cost: &mut [Rational], r: usize, e: usize) {
        let inv = self.rows[r][e].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut [Rational]| {
            if row[e].is_zero() {
                return;
            }
            let factor = row[e].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(cost);
        self.basis[r] = e;
    }

    /// Bland's rule: lowest-index improving column enters; among tied ratio
    /// rows, the one whose basic variable has the lowest index leaves.
    fn run(&mut self, cost: &mut [Rational], columns: usize) -> Pivoting {
        loop {
            let Some(e) = (0..columns).find(|&j| cost[j].is_negative()) else {
                return Pivoting::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[e].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[e];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(cost, r, e),
                None => return Pivoting::Unbounded,
            }
        }
    }

    fn solution(&self) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.width];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            y[b] = row[self.width].clone();
        }
        y
    }
}

enum StandardOutcome {
    Optimal(Vec<Rational>),
    Unbounded,
    Infeasible,
}

/// Two-phase simplex on `max c·y, A y = b, y ≥ 0`.
///
/// Columns that are already unit vectors on rows with non-negative right-hand
/// side seed the starting basis; the remaining rows get artificial columns.
fn solve_standard(
    a: &[Vec<Rational>],
    b: &[Rational],
    c: &[Rational],
    phase_one_only: bool,
) -> StandardOutcome {
    let width = c.len();
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut row = row.clone();
            row.push(rhs.clone());
            if rhs.is_negative() {
                row.iter_mut().for_each(|x| *x = -x.clone());
            }
            row
        })
        .collect();
    let m = rows.len();

    let mut basis = Vec::with_capacity(m);
    let mut artificial_rows = Vec::new();
    for i in 0..m {
        let unit = (0..width).find(|&j| {
            rows[i][j].is_one()
                && (0..m).all(|k| k == i || rows[k][j].is_zero())
                && !basis.contains(&j)
        });
        match unit {
            Some(j) => basis.push(j),
            None => {
                basis.push(usize::MAX);
                artificial_rows.push(i);
            }
        }
    }

    // Artificial columns occupy indices width..width+k; the right-hand side
    // moves to the end.
    let k = artificial_rows.len();
    let total = width + k;
    for row in rows.iter_mut() {
        let rhs = row.pop().unwrap();
        row.extend(std::iter::repeat_with(Rational::zero).take(k));
        row.push(rhs);
    }
    for (slot, &i) in artificial_rows.iter().enumerate() {
        rows[i][width + slot] = Rational::one();
        basis[i] = width + slot;
    }
    let mut tab = Tableau {
        rows,
        basis,
        width: total,
    };

    if k > 0 {
        // maximize -Σ artificials
        let mut cost = vec![Rational::zero(); total + 1];
        for j in width..total {
            cost[j] = Rational::one();
        }
        for &i in &artificial_rows {
            for (cj, x) in cost.iter_mut().zip(&tab.rows[i]) {
                *cj -= x;
            }
        }
        tab.run(&mut cost, total);
        if cost[total].is_negative() {
            return StandardOutcome::Infeasible;
        }
        // Drive zero-level artificials out of the basis, dropping redundant rows.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= width {
                match (0..width).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => tab.pivot(&mut cost, i, j),
                    None => {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        for row in tab.rows.iter_mut() {
            let rhs = row.pop().unwrap();
            row.truncate(width);
            row.push(rhs);
        }
        tab.width = width;
    }

    if phase_one_only {
        return StandardOutcome::Optimal(tab.solution());
    }

    let mut cost: Vec<Rational> = c.iter().map(|x| -x.clone()).collect();
    cost.push(Rational::zero());
    for (i, &bj) in tab.basis.iter().enumerate() {
        if c[bj].is_zero() {
            continue;
        }
        for (cj, x) in cost.iter_mut().zip(&tab.rows[i]) {
            *cj += &c[bj] * x;
        }
    }
    match tab.run(&mut cost, width) {
        Pivoting::Optimal => StandardOutcome::Optimal(tab.solution()),
        Pivoting::Unbounded => StandardOutcome::Unbounded,
    }
}

/// Solves the program exactly.
///
/// Free variables are split as `x = x⁺ - x⁻` and each inequality receives a
/// slack column.
pub fn solve(lp: &LinearProgram) -> LpOutcome {
    let d = lp.dimension;
    let m = lp.constraints.len();
    let width = 2 * d + m;
    let a: Vec<Vec<Rational>> = lp
        .constraints
        .iter()
        .enumerate()
        .map(|(i, con)| {
            let mut row = Vec::with_capacity(width);
            row.extend(con.normal.iter().cloned());
            row.extend(con.normal.iter().map(|x| -x.clone()));
            row.extend((0..m).map(|k| {
                if k == i {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    let b: Vec<Rational> = lp.constraints.iter().map(|c| c.offset.clone()).collect();
    let mut c = Vec::with_capacity(width);
    c.extend(lp.objective.iter().cloned());
    c.extend(lp.objective.iter().map(|x| -x.clone()));
    c.extend(std::iter::repeat_with(Rational::zero).take(m));

    match solve_standard(&a, &b, &c, false) {
        StandardOutcome::Optimal(y) => {
            let point: Vec<Rational> = (0..d).map(|i| &y[i] - &y[d + i]).collect();
            let value = lp.objective.iter().zip(&point).map(|(a, b)| a * b).sum();
            LpOutcome::Optimal { point, value }
        }
        StandardOutcome::Unbounded => LpOutcome::Unbounded,
        StandardOutcome::Infeasible => LpOutcome::Infeasible,
    }
}

/// `true` iff `p` is not a convex combination of `others`.
pub fn is_extreme(p: &[Rational], others: &[Vec<Rational>]) -> Result<bool> {
    if let Some(q) = others.iter().find(|q| q.len() != p.len()) {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    if others.is_empty() {
        return Ok(true);
    }
    if others.iter().any(|q| q.as_slice() == p) {
        return Ok(false);
    }
    // Σ λ_i q_i = p, Σ λ_i = 1, λ ≥ 0
    let mut a: Vec<Vec<Rational>> = (0..p.len())
        .map(|d| others.iter().map(|q| q[d].clone()).collect())
        .collect();
    a.push(vec![Rational::one(); others.len()]);
    let mut b = p.to_vec();
    b.push(Rational::one());
    let c = vec![Rational::zero(); others.len()];
    Ok(matches!(
        solve_standard(&a, &b, &c, true),
        StandardOutcome::Infeasible
    ))
}

/// `true` iff the polyhedron has an interior point.
///
/// Maximizes `t` subject to `normal·x + t‖normal‖₁ ≤ offset` and `t ≤ 1`; the
/// polyhedron is full-dimensional exactly when the optimum is positive.
pub fn is_full_dimensional(h: &HPolyhedron) -> bool {
    let d = h.dimension();
    let mut constraints: Vec<Constraint> = h
        .constraints()
        .iter()
        .map(|c| {
            let l1: Rational = c.normal.iter().map(|x| x.abs()).sum();
            let mut normal = c.normal.clone();
            normal.push(l1);
            Constraint::new(normal, c.offset.clone())
        })
        .collect();
    let mut cap = vec![Rational::zero(); d + 1];
    cap[d] = Rational::one();
    constraints.push(Constraint::new(cap.clone(), Rational::one()));
    let lp = LinearProgram {
        dimension: d + 1,
        objective: cap,
        constraints,
    };
    match solve(&lp) {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        _ => false,
    }
}

/// Checks boundedness by maximizing `±x_i`. `Ok(false)` means empty.
fn bounded_nonempty(h: &HPolyhedron) -> Result<bool> {
    let d = h.dimension();
    for i in 0..d {
        for sign in [1, -1] {
            let mut objective = vec![Rational::zero(); d];
            objective[i] = Rational::from_integer(sign.into());
            let lp = LinearProgram {
                dimension: d,
                objective,
                constraints: h.constraints().to_vec(),
            };
            match solve(&lp) {
                LpOutcome::Infeasible => return Ok(false),
                LpOutcome::Unbounded => return Err(Error::UnboundedPolyhedron),
                LpOutcome::Optimal { .. } => {}
            }
        }
    }
    Ok(true)
}

/// All vertices of a bounded H-polyhedron, lexicographically sorted.
///
/// Every `d`-subset of constraints with an invertible normal matrix is solved
/// exactly; solutions that satisfy all constraints are kept.
pub fn vertex_enumeration(h: &HPolyhedron) -> Result<Vec<Vec<Rational>>> {
    if !bounded_nonempty(h)? {
        return Ok(Vec::new());
    }
    let d = h.dimension();
    let cons = h.constraints();
    let mut found = BTreeSet::new();
    let mut subset: Vec<usize> = (0..d).collect();
    if cons.len() < d {
        return Ok(Vec::new());
    }
    loop {
        let m = RationalMatrix::from_fn(d, d, |r, c| cons[subset[r]].normal[c].clone());
        let rhs: Vec<Rational> = subset.iter().map(|&i| cons[i].offset.clone()).collect();
        if let Some(x) = gaussian_solve(&m, &rhs)? {
            if cons.iter().all(|c| c.is_satisfied(&x)) {
                found.insert(x);
            }
        }
        if !next_combination(&mut subset, cons.len()) {
            break;
        }
    }
    Ok(found.into_iter().collect())
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic
/// order; returns `false` after the last one.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn con(normal: &[i64], offset: i64) -> Constraint {
        Constraint::new(v(normal), int(offset))
    }

    fn hpoly(d: usize, cons: Vec<Constraint>) -> HPolyhedron {
        HPolyhedron::new(d, cons).unwrap()
    }

    #[test]
    fn bounded_optimum() {
        let lp = LinearProgram::new(1, v(&[1]), vec![con(&[1], 5), con(&[-1], 0)]).unwrap();
        assert_eq!(
            solve(&lp),
            LpOutcome::Optimal {
                point: v(&[5]),
                value: int(5)
            }
        );
    }

    #[test]
    fn infeasible_interval() {
        let lp = LinearProgram::new(1, v(&[1]), vec![con(&[1], -1), con(&[-1], -2)]).unwrap();
        assert_eq!(solve(&lp), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_quadrant() {
        let lp =
            LinearProgram::new(2, v(&[1, 1]), vec![con(&[-1, 0], 0), con(&[0, -1], 0)]).unwrap();
        assert_eq!(solve(&lp), LpOutcome::Unbounded);
    }

    #[test]
    fn negative_offsets_and_fractions() {
        // max y s.t. x + 2y ≤ 3, -x ≤ -1, y ≥ -4  → x = 1, y = 1
        let lp = LinearProgram::new(
            2,
            v(&[0, 1]),
            vec![con(&[1, 2], 3), con(&[-1, 0], -1), con(&[0, -1], 4)],
        )
        .unwrap();
        assert_eq!(solve(&lp).value(), Some(&int(1)));
        // max x + y s.t. 3x + y ≤ 2, x + 3y ≤ 2 → (1/2, 1/2)
        let lp = LinearProgram::new(2, v(&[1, 1]), vec![con(&[3, 1], 2), con(&[1, 3], 2)]).unwrap();
        assert_eq!(solve(&lp).witness(), Some(&[ratio(1, 2), ratio(1, 2)][..]));
    }

    #[test]
    fn degenerate_redundant_equalities() {
        // x = 1 written twice plus x ≤ 1 again: redundant rows after phase one.
        let lp = LinearProgram::new(
            1,
            v(&[-1]),
            vec![con(&[1], 1), con(&[-1], -1), con(&[2], 2), con(&[-2], -2)],
        )
        .unwrap();
        assert_eq!(solve(&lp).value(), Some(&int(-1)));
    }

    #[test]
    fn program_shape_is_checked() {
        assert!(LinearProgram::new(2, v(&[1]), vec![]).is_err());
        assert!(LinearProgram::new(1, v(&[1]), vec![con(&[1, 2], 0)]).is_err());
    }

    #[test]
    fn extremality() {
        let others = vec![v(&[1, 0]), v(&[0, 1])];
        assert!(is_extreme(&v(&[0, 0]), &others).unwrap());
        assert!(!is_extreme(&[ratio(1, 2), ratio(1, 2)], &others).unwrap());
        assert!(is_extreme(&v(&[3, 3]), &[]).unwrap());
        assert!(!is_extreme(&v(&[1, 0]), &[v(&[1, 0]), v(&[1, 0])]).unwrap());
        assert!(is_extreme(&v(&[1]), &[v(&[1, 0])]).is_err());
    }

    #[test]
    fn hexagon_sums_have_six_extreme_points() {
        // 16 pairwise sums of the vertices of δ_2 and -δ_2, with multiplicity,
        // listed as a vertex-set product padded with the two origins.
        let pos = [v(&[0, 0]), v(&[1, 0]), v(&[0, 1]), v(&[0, 0])];
        let neg = [v(&[0, 0]), v(&[-1, 0]), v(&[0, -1]), v(&[0, 0])];
        let sums: Vec<Vec<Rational>> = pos
            .iter()
            .flat_map(|p| neg.iter().map(move |q| vec![&p[0] + &q[0], &p[1] + &q[1]]))
            .collect();
        assert_eq!(sums.len(), 16);
        let distinct: BTreeSet<_> = sums.iter().cloned().collect();
        let extreme = distinct
            .iter()
            .filter(|p| {
                let rest: Vec<_> = distinct.iter().filter(|q| q != p).cloned().collect();
                is_extreme(p, &rest).unwrap()
            })
            .count();
        // brute-force angle-sorted hull in the plane gives the hexagon
        assert_eq!(extreme, 6);
    }

    #[test]
    fn full_dimensionality() {
        let square = hpoly(
            2,
            vec![
                con(&[1, 0], 1),
                con(&[-1, 0], 0),
                con(&[0, 1], 1),
                con(&[0, -1], 0),
            ],
        );
        assert!(is_full_dimensional(&square));
        assert!(!is_full_dimensional(&hpoly(
            1,
            vec![con(&[1], 0), con(&[-1], 0)]
        )));
        // positive quadrant ∩ negative quadrant
        let pinched = hpoly(
            2,
            vec![
                con(&[-1, 0], 0),
                con(&[0, -1], 0),
                con(&[1, 0], 0),
                con(&[0, 1], 0),
            ],
        );
        assert!(!is_full_dimensional(&pinched));
        assert!(!is_full_dimensional(&hpoly(
            1,
            vec![con(&[1], -1), con(&[-1], -1)]
        )));
    }

    #[test]
    fn vertices_of_square_and_simplex() {
        let cube = hpoly(
            2,
            vec![
                con(&[1, 0], 1),
                con(&[-1, 0], 1),
                con(&[0, 1], 1),
                con(&[0, -1], 1),
            ],
        );
        assert_eq!(vertex_enumeration(&cube).unwrap().len(), 4);
        let simplex = hpoly(2, vec![con(&[1, 1], 1), con(&[-1, 0], 0), con(&[0, -1], 0)]);
        assert_eq!(
            vertex_enumeration(&simplex).unwrap(),
            vec![v(&[0, 0]), v(&[0, 1]), v(&[1, 0])]
        );
        let half_plane = hpoly(2, vec![con(&[1, 0], 1)]);
        assert_eq!(
            vertex_enumeration(&half_plane),
            Err(Error::UnboundedPolyhedron)
        );
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut idx = vec![0, 1];
        let mut all = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            all.push(idx.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all.last().unwrap(), &vec![2, 3]);
    }

    fn small_constraints(d: usize) -> impl Strategy<Value = Vec<Constraint>> {
        proptest::collection::vec((proptest::collection::vec(-3i64..4, d), -2i64..6), 1..7)
            .prop_map(|cs| {
                cs.into_iter()
                    .filter(|(n, _)| n.iter().any(|&x| x != 0))
                    .map(|(n, o)| con(&n, o))
                    .collect()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn optimum_is_feasible_and_permutation_stable(
            cons in small_constraints(2),
            obj in proptest::collection::vec(-3i64..4, 2),
        ) {
            // keep it bounded with a box
            let mut cons = cons;
            for c in [con(&[1, 0], 5), con(&[-1, 0], 5), con(&[0, 1], 5), con(&[0, -1], 5)] {
                cons.push(c);
            }
            let lp = LinearProgram::new(2, v(&obj), cons.clone()).unwrap();
            let out = solve(&lp);
            if let LpOutcome::Optimal { point, .. } = &out {
                prop_assert!(cons.iter().all(|c| c.is_satisfied(point)));
            }
            let mut rev = cons.clone();
            rev.reverse();
            let lp_rev = LinearProgram::new(2, v(&obj), rev).unwrap();
            prop_assert_eq!(out.value().cloned(), solve(&lp_rev).value().cloned());
        }

        #[test]
        fn enumerated_vertices_are_distinct_and_extreme(cons in small_constraints(2)) {
            let mut cons = cons;
            for c in [con(&[1, 0], 3), con(&[-1, 0], 3), con(&[0, 1], 3), con(&[0, -1], 3)] {
                cons.push(c);
            }
            let h = hpoly(2, cons);
            let verts = vertex_enumeration(&h).unwrap();
            let distinct: BTreeSet<_> = verts.iter().cloned().collect();
            prop_assert_eq!(distinct.len(), verts.len());
            for p in &verts {
                let rest: Vec<_> = verts.iter().filter(|q| *q != p).cloned().collect();
                prop_assert!(is_extreme(p, &rest).unwrap());
            }
        }
    }
}
