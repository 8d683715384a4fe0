//! The cross-check suite behind `cremona verify`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cremona::{
    base_components, chow_ranks, conversion_matrix, conversion_matrix_inverse, maximal_minors_with,
    multidegrees_from_segre, multidegrees_standard, nonreduced_p3_components,
    segre_from_multidegrees, segre_numbers_hypergeometric, segre_numbers_standard, standard_matrix,
    LinearFormMatrix, MultidegreeSequence,
};
use crate::exact::{binomial, gaussian_solve, Rational, RationalMatrix};
use crate::fan::{clipped_volumes, common_refinement_with, covering_check_with};
use crate::mixed_volume::{multidegree_sequence, MultidegreeMethod};
use crate::polytope::{orthant_decomposition, simplex_pair_sum, volume_closed_form};
use crate::{DeskGuards, Error, Execution, Result};

/// Signature of the closed-form volume of `aδ_n ⊕ b(-δ_n)`.
pub type ClosedForm = fn(&Rational, &Rational, usize) -> Result<Rational>;

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub max_n: usize,
    pub execution: Execution,
    pub guards: DeskGuards,
    /// Closed form checked against the two geometric volume routes.
    pub volume_formula: ClosedForm,
}

impl VerifyOptions {
    pub fn new(max_n: usize) -> Self {
        VerifyOptions {
            max_n,
            execution: Execution::default(),
            guards: DeskGuards::current(),
            volume_formula: volume_closed_form,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub n_range: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_n: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

type Outcome = std::result::Result<(), String>;
type Check = (
    &'static str,
    usize,
    usize,
    fn(&VerifyOptions, usize, usize) -> Outcome,
);

fn range(lo: usize, hi: usize) -> String {
    if lo > hi {
        "empty".to_string()
    } else {
        format!("{lo}..={hi}")
    }
}

fn fail<E: std::fmt::Display>(context: impl std::fmt::Display) -> impl Fn(E) -> String {
    move |e| format!("{context}: {e}")
}

/// Runs every check in a fixed order; failures are entries, not errors.
pub fn verify(options: &VerifyOptions) -> Result<VerifyReport> {
    let max_n = options.max_n;
    if max_n < 2 {
        return Err(Error::invalid(format!(
            "verify needs max_n >= 2, got {max_n}"
        )));
    }
    let exec = options.execution;
    let checks: [Check; 7] = [
        ("volume-oracles", 1, max_n.min(5), volume_check),
        ("multidegree-paths", 2, max_n.min(8), multidegree_check),
        ("segre-conversions", 2, max_n, segre_check),
        (
            "standard-matrix-minors",
            2,
            max_n.min(6),
            standard_minors_check,
        ),
        ("p3-example-minors-and-conversion", 3, 3, p3_example_check),
        ("base-locus-counts", 2, max_n, base_locus_check),
        ("fan-refinement", 2, max_n.min(3), fan_check),
    ];
    let checks = exec.map(&checks, |&(name, lo, hi, run)| {
        let outcome = run(options, lo, hi);
        CheckResult {
            name,
            n_range: range(lo, hi),
            passed: outcome.is_ok(),
            counterexample: outcome.err(),
        }
    });
    Ok(VerifyReport {
        max_n,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn volume_check(options: &VerifyOptions, lo: usize, hi: usize) -> Outcome {
    let triples: Vec<(i64, i64, usize)> = (lo..=hi)
        .flat_map(|n| (0..=3).flat_map(move |a| (0..=3).map(move |b| (a, b, n))))
        .collect();
    let results = options.execution.map(&triples, |&(a, b, n)| -> Outcome {
        let label = format!("(a, b, n) = ({a}, {b}, {n})");
        let (ar, br) = (
            Rational::from_integer(a.into()),
            Rational::from_integer(b.into()),
        );
        let closed = (options.volume_formula)(&ar, &br, n).map_err(fail(&label))?;
        let hull = simplex_pair_sum(&ar, &br, n)
            .and_then(|p| p.volume_with_guards(&options.guards))
            .map_err(fail(&label))?;
        let orthant = orthant_decomposition(&ar, &br, n)
            .map_err(fail(&label))?
            .into_iter()
            .fold(Rational::zero(), |acc, c| acc + c.volume);
        if closed == hull && hull == orthant {
            Ok(())
        } else {
            Err(format!(
                "{label}: triangulation {hull}, closed form {closed}, orthant sum {orthant}"
            ))
        }
    });
    results.into_iter().collect()
}

fn multidegree_check(options: &VerifyOptions, lo: usize, hi: usize) -> Outcome {
    for n in lo..=hi {
        let expected: Vec<BigInt> = (0..=n).map(|k| binomial(n as u64, k as i64)).collect();
        for method in MultidegreeMethod::ALL {
            let got = multidegree_sequence(n, method, options.execution)
                .map_err(fail(format!("n = {n}")))?;
            if got != expected {
                return Err(format!(
                    "n = {n}: {} gives {got:?}, expected {expected:?}",
                    method.name()
                ));
            }
        }
    }
    Ok(())
}

fn segre_check(_: &VerifyOptions, lo: usize, hi: usize) -> Outcome {
    for n in lo..=hi {
        let at = fail(format!("n = {n}"));
        let formula = segre_numbers_standard(n).map_err(&at)?;
        let converted = multidegrees_standard(n)
            .and_then(|d| segre_from_multidegrees(&d))
            .map_err(&at)?;
        let hyper = segre_numbers_hypergeometric(n).map_err(&at)?;
        if formula != converted || formula != hyper {
            return Err(format!(
                "n = {n}: formula {:?}, from multidegrees {:?}, hypergeometric {:?}",
                formula.numbers(),
                converted.numbers(),
                hyper.numbers()
            ));
        }
        let back = multidegrees_from_segre(&formula, n as u64).map_err(&at)?;
        if back != multidegrees_standard(n).map_err(&at)? {
            return Err(format!("n = {n}: round trip gives {:?}", back.degrees()));
        }
        let deg = n as u64;
        let product = conversion_matrix(deg, n)
            .mul(&conversion_matrix_inverse(deg, n))
            .map_err(&at)?;
        if product != RationalMatrix::identity(n + 1) {
            return Err(format!(
                "n = {n}: conversion matrix times closed-form inverse is not the identity"
            ));
        }
    }
    Ok(())
}

fn standard_minors_check(options: &VerifyOptions, lo: usize, hi: usize) -> Outcome {
    for n in lo..=hi {
        let at = fail(format!("n = {n}"));
        let minors = standard_matrix(n)
            .and_then(|m| maximal_minors_with(&m, options.execution, &options.guards))
            .map_err(&at)?;
        let mut omitted = BTreeSet::new();
        for p in &minors {
            let terms: Vec<_> = p.terms().collect();
            let [(e, c)] = terms.as_slice() else {
                return Err(format!("n = {n}: minor {p} is not a monomial"));
            };
            let zeros: Vec<usize> = (0..=n).filter(|&i| e[i] == 0).collect();
            if !(c.is_one() || (-*c).is_one()) || e.iter().any(|&x| x > 1) || zeros.len() != 1 {
                return Err(format!(
                    "n = {n}: minor {p} is not a signed squarefree monomial of degree {n}"
                ));
            }
            omitted.insert(zeros[0]);
        }
        if omitted.len() != n + 1 {
            return Err(format!(
                "n = {n}: minors omit only the variables {omitted:?}"
            ));
        }
    }
    Ok(())
}

fn p3_example_check(options: &VerifyOptions, _: usize, _: usize) -> Outcome {
    let minors = maximal_minors_with(
        &LinearFormMatrix::nonreduced_p3_example(),
        options.execution,
        &options.guards,
    )
    .map_err(fail("example matrix"))?;
    for (i, (m, f)) in minors.iter().zip(nonreduced_p3_components()).enumerate() {
        if !m.equals_up_to_sign(&f) {
            return Err(format!("component {i}: minor {m}, printed {f}"));
        }
    }
    let degrees: Vec<BigInt> = [1, 3, 2, 1].into_iter().map(BigInt::from).collect();
    let d =
        MultidegreeSequence::new(degrees.clone(), 3).map_err(fail("multidegrees (1, 3, 2, 1)"))?;
    let closed = segre_from_multidegrees(&d).map_err(fail("multidegrees (1, 3, 2, 1)"))?;

    // independent route: solve M v = d by elimination, v = (-1, 0, s_1, s_0)
    let rhs: Vec<Rational> = degrees.into_iter().map(Rational::from_integer).collect();
    let v = gaussian_solve(&conversion_matrix(3, 3), &rhs)
        .map_err(fail("elimination"))?
        .ok_or("conversion matrix reported singular")?;
    let solved: Vec<Rational> = vec![v[3].clone(), v[2].clone()];
    let closed_r: Vec<Rational> = closed
        .numbers()
        .iter()
        .cloned()
        .map(Rational::from_integer)
        .collect();
    if v[0] != -Rational::one() || !v[1].is_zero() || solved != closed_r {
        return Err(format!(
            "closed sum gives {:?}, elimination gives {v:?}",
            closed.numbers()
        ));
    }
    Ok(())
}

fn base_locus_check(_: &VerifyOptions, lo: usize, hi: usize) -> Outcome {
    for n in lo..=hi {
        let at = fail(format!("n = {n}"));
        let count = base_components(n).map_err(&at)?.len();
        let s = segre_numbers_standard(n).map_err(&at)?;
        if count != n * (n + 1) / 2 || BigInt::from(count) != s.extended(n - 2) {
            return Err(format!(
                "n = {n}: {count} components, s_(n-2) = {}",
                s.extended(n - 2)
            ));
        }
        if n >= 3 {
            let ranks = chow_ranks(n).map_err(&at)?;
            let good = ranks.len() == n - 1
                && ranks
                    .iter()
                    .all(|r| r.rank == if r.k == n - 2 { count as u64 } else { 1 });
            if !good {
                return Err(format!("n = {n}: Chow ranks {ranks:?}"));
            }
        }
    }
    Ok(())
}

fn fan_check(options: &VerifyOptions, lo: usize, hi: usize) -> Outcome {
    for n in lo..=hi {
        let at = fail(format!("n = {n}"));
        let cells = common_refinement_with(n, options.execution, &options.guards).map_err(&at)?;
        if cells.len() != n * (n + 1) || cells.iter().any(|c| c.pair.0 == c.pair.1) {
            return Err(format!("n = {n}: {} cells", cells.len()));
        }
        for (a, ca) in cells.iter().enumerate() {
            for cb in &cells[a + 1..] {
                let both = ca.cell.intersect(&cb.cell).map_err(&at)?;
                if both.is_full_dimensional() {
                    return Err(format!(
                        "n = {n}: cells {:?} and {:?} overlap",
                        ca.pair, cb.pair
                    ));
                }
            }
        }
        let volumes = clipped_volumes(&cells, options.execution, &options.guards).map_err(&at)?;
        if let Some((c, _)) = cells
            .iter()
            .zip(&volumes)
            .find(|(_, v)| !num_traits::Signed::is_positive(*v))
        {
            return Err(format!(
                "n = {n}: cell {:?} has empty interior in the box",
                c.pair
            ));
        }
        let (sum, box_volume) =
            covering_check_with(n, options.execution, &options.guards).map_err(&at)?;
        if sum != box_volume {
            return Err(format!(
                "n = {n}: clipped cells cover {sum} of {box_volume}"
            ));
        }
    }
    Ok(())
}
