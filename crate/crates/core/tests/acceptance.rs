//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::process::Command;

use cremona::cremona::{
    base_components, chow_ranks, conversion_matrix, conversion_matrix_inverse, maximal_minors,
    multidegrees_from_segre, multidegrees_standard, segre_from_multidegrees,
    segre_numbers_standard, standard_matrix, LinearForm, LinearFormMatrix, SegreVector,
    SparsePolynomial,
};
use cremona::exact::{hypergeom_terminating, Rational, RationalMatrix};
use cremona::fan::{common_refinement, covering_check};
use cremona::mixed_volume::{multidegree_by_coefficient_extraction, multidegree_by_mixed_volume};
use cremona::polytope::{orthant_decomposition, simplex_pair_sum, volume_closed_form};
use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<(), String>;

fn big(x: i128) -> BigInt {
    BigInt::from(x)
}

fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    for r in 1..=n {
        let prev = &rows[r - 1];
        let row = (0..=r)
            .map(|k| {
                let left = if k > 0 {
                    prev[k - 1].clone()
                } else {
                    BigInt::zero()
                };
                let right = prev.get(k).cloned().unwrap_or_default();
                left + right
            })
            .collect();
        rows.push(row);
    }
    rows
}

fn multidegree_paths() -> Outcome {
    let c = pascal(8);
    for n in 2..=8 {
        for k in 0..=n {
            let mv = multidegree_by_mixed_volume(n, k).map_err(|e| e.to_string())?;
            let ex = multidegree_by_coefficient_extraction(n, k).map_err(|e| e.to_string())?;
            if mv != c[n][k] || ex != c[n][k] {
                return Err(format!(
                    "n={n} k={k}: mixed volume {mv}, extraction {ex}, C(n,k) {}",
                    c[n][k]
                ));
            }
        }
    }
    Ok(())
}

fn volume_oracles() -> Outcome {
    for n in 1..=5 {
        for a in 0..=3i64 {
            for b in 0..=3i64 {
                let (ar, br) = (
                    Rational::from_integer(a.into()),
                    Rational::from_integer(b.into()),
                );
                let hull = simplex_pair_sum(&ar, &br, n)
                    .and_then(|p| p.volume())
                    .map_err(|e| e.to_string())?;
                let closed = volume_closed_form(&ar, &br, n).map_err(|e| e.to_string())?;
                let orthant: Rational = orthant_decomposition(&ar, &br, n)
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .map(|c| c.volume)
                    .fold(Rational::zero(), |x, y| x + y);
                if hull != closed || closed != orthant {
                    return Err(format!(
                        "(a,b,n)=({a},{b},{n}): hull {hull}, closed {closed}, orthant {orthant}"
                    ));
                }
            }
        }
    }
    Ok(())
}

fn segre_values(sub: &mut Vec<String>) -> Outcome {
    let mut failures = Vec::new();
    let mut record = |label: &str, result: Outcome| {
        sub.push(format!(
            "{} {label}",
            if result.is_ok() { "ok  " } else { "FAIL" }
        ));
        if let Err(e) = result {
            failures.push(format!("{label}: {e}"));
        }
    };

    let s0 = [(2, 3), (3, -28), (4, 255), (5, -2376)];
    let mut low = Ok(());
    for (n, expected) in s0 {
        let got = segre_numbers_standard(n).unwrap().numbers()[0].clone();
        if got != big(expected) {
            low = Err(format!("n={n}: s_0 = {got}, expected {expected}"));
        }
    }
    record("s_0 for n = 2..5 is 3, -28, 255, -2376", low);

    type Form = fn(i128) -> i128;
    let forms: [(&str, usize, Form); 4] = [
        ("s_(n-2) = n(n+1)/2", 2, |n| n * (n + 1) / 2),
        ("s_(n-3) = -n(n+1)(2n+1)/3", 3, |n| {
            -n * (n + 1) * (2 * n + 1) / 3
        }),
        ("s_(n-4) = n(n+1)(5n^2+5n+2)/8", 4, |n| {
            n * (n + 1) * (5 * n * n + 5 * n + 2) / 8
        }),
        ("s_(n-5) = -n(n+1)(2n+1)(2n^2+7n+6)/30", 5, |n| {
            -n * (n + 1) * (2 * n + 1) * (2 * n * n + 7 * n + 6) / 30
        }),
    ];
    for (label, offset, form) in forms {
        let mut result = Ok(());
        for n in 7..=12usize {
            let s = segre_numbers_standard(n).unwrap();
            let got = s.extended(n - offset);
            let printed = big(form(n as i128));
            if got != printed {
                result = Err(format!(
                    "n={n}: computed {got}, printed form gives {printed}"
                ));
                break;
            }
        }
        record(&format!("{label} for n = 7..12"), result);
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures.join("; "))
    }
}

fn conversion_round_trip() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5e9e);
    for n in 2..=10usize {
        for deg in 2..=6u64 {
            for _ in 0..100 {
                let numbers: Vec<BigInt> = (0..n - 1)
                    .map(|_| BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000)))
                    .collect();
                let s = SegreVector::new(n, numbers).unwrap();
                let d = multidegrees_from_segre(&s, deg).map_err(|e| e.to_string())?;
                let back =
                    segre_from_multidegrees(&d).map_err(|e| format!("n={n} deg={deg}: {e}"))?;
                if back != s {
                    return Err(format!(
                        "n={n} deg={deg}: {:?} -> {:?}",
                        s.numbers(),
                        back.numbers()
                    ));
                }
            }
            let product = conversion_matrix(deg, n)
                .mul(&conversion_matrix_inverse(deg, n))
                .unwrap();
            if product != RationalMatrix::identity(n + 1) {
                return Err(format!(
                    "n={n} deg={deg}: M times closed-form inverse is not I"
                ));
            }
        }
    }
    Ok(())
}

fn segre_from_standard_multidegrees() -> Outcome {
    for n in 2..=12 {
        let via = segre_from_multidegrees(&multidegrees_standard(n).unwrap())
            .map_err(|e| e.to_string())?;
        let direct = segre_numbers_standard(n).unwrap();
        if via != direct {
            return Err(format!(
                "n={n}: {:?} vs {:?}",
                via.numbers(),
                direct.numbers()
            ));
        }
    }
    Ok(())
}

fn hypergeometric() -> Outcome {
    for n in 2..=10usize {
        let s = segre_numbers_standard(n).unwrap();
        let z = Rational::new((-1).into(), BigInt::from(n));
        for k in 0..=n - 2 {
            let f = hypergeom_terminating(-(n as i64), k as i64 - n as i64, 1, &z)
                .map_err(|e| e.to_string())?;
            let value =
                -f * Rational::from_integer(Pow::pow(BigInt::from(-(n as i64)), (n - k) as u32));
            if value != Rational::from_integer(s.numbers()[k].clone()) {
                return Err(format!("n={n} k={k}: {value} vs {}", s.numbers()[k]));
            }
        }
    }
    Ok(())
}

fn var(i: usize) -> SparsePolynomial {
    SparsePolynomial::variable(4, i)
}

fn determinantal() -> Outcome {
    for n in 1..=6usize {
        let minors = maximal_minors(&standard_matrix(n).unwrap()).map_err(|e| e.to_string())?;
        if minors.len() != n + 1 {
            return Err(format!("n={n}: {} minors", minors.len()));
        }
        for (i, p) in minors.iter().enumerate() {
            let exponents = (0..=n).map(|j| u32::from(j != i)).collect();
            let monomial = SparsePolynomial::monomial(n + 1, exponents, BigInt::one());
            if !p.equals_up_to_sign(&monomial) {
                return Err(format!("n={n}, row {i} deleted: {p}"));
            }
        }
    }

    let f = |c: [i64; 4]| LinearForm::from_ints(&c);
    let zero = || f([0; 4]);
    let m_f = LinearFormMatrix::new(
        3,
        vec![
            vec![zero(), f([0, 1, 0, 0]), zero()],
            vec![f([1, 0, 0, 0]), zero(), zero()],
            vec![f([0, -1, 0, 0]), f([0, -1, 0, 0]), f([-1, 1, 0, 0])],
            vec![f([0, 0, 0, 1]), f([0, 0, 0, 1]), f([0, 0, 1, -1])],
        ],
    )
    .unwrap();
    let q = var(1).mul(&var(2)).sub(&var(0).mul(&var(3)));
    let x01 = var(0).mul(&var(1));
    let printed = [
        var(0).mul(&q),
        var(1).mul(&q),
        x01.mul(&var(2).sub(&var(3))),
        x01.mul(&var(0).sub(&var(1))),
    ];
    let minors = maximal_minors(&m_f).map_err(|e| e.to_string())?;
    for (i, (m, p)) in minors.iter().zip(&printed).enumerate() {
        if !m.equals_up_to_sign(p) {
            return Err(format!("component {i}: minor {m}, printed {p}"));
        }
    }
    Ok(())
}

fn base_locus() -> Outcome {
    for n in 2..=10usize {
        let count = base_components(n).unwrap().len();
        let s = segre_numbers_standard(n).unwrap().extended(n - 2);
        if count != n * (n + 1) / 2 || BigInt::from(count) != s {
            return Err(format!("n={n}: {count} components, s_(n-2) = {s}"));
        }
    }
    for n in 3..=10usize {
        let ranks: Vec<(usize, u64)> = chow_ranks(n)
            .unwrap()
            .into_iter()
            .map(|r| (r.k, r.rank))
            .collect();
        let expected: Vec<(usize, u64)> = (0..=n - 2)
            .map(|k| {
                (
                    k,
                    if k == n - 2 {
                        (n * (n + 1) / 2) as u64
                    } else {
                        1
                    },
                )
            })
            .collect();
        if ranks != expected {
            return Err(format!("n={n}: {ranks:?}"));
        }
    }
    Ok(())
}

fn fan_refinement() -> Outcome {
    let cells = common_refinement(2).map_err(|e| e.to_string())?;
    if cells.len() != 6 {
        return Err(format!("common_refinement(2) has {} cells", cells.len()));
    }
    for (n, side) in [(2usize, 4i64), (3, 8)] {
        let (sum, total) = covering_check(n).map_err(|e| e.to_string())?;
        let want = Rational::from_integer(side.into());
        if sum != want || total != want {
            return Err(format!("covering_check({n}) = ({sum}, {total})"));
        }
        let cells = common_refinement(n).map_err(|e| e.to_string())?;
        for (i, a) in cells.iter().enumerate() {
            for b in &cells[i + 1..] {
                if a.cell.intersect(&b.cell).unwrap().is_full_dimensional() {
                    return Err(format!("n={n}: {:?} and {:?} overlap", a.pair, b.pair));
                }
            }
        }
    }
    Ok(())
}

/// Forward substitution on the unit-lower-triangular system `M v = d` with
/// `m_kl = -C(k,l) 3^(k-l)`, `v = (-1, 0, s_1, s_0)`.
fn p3_example_oracle() -> Vec<i64> {
    let d = [1i64, 3, 2, 1];
    let c = [[1, 0, 0, 0], [1, 1, 0, 0], [1, 2, 1, 0], [1, 3, 3, 1]];
    let mut v = [0i64; 4];
    for k in 0..4 {
        let known: i64 = (0..k)
            .map(|l| -c[k][l] * 3i64.pow((k - l) as u32) * v[l])
            .sum();
        v[k] = -(d[k] - known);
    }
    assert_eq!((v[0], v[1]), (-1, 0));
    vec![v[3], v[2]]
}

fn p3_example_conversion() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_cremona"))
        .args(["convert", "--degrees", "1,3,2,1", "--deg", "3"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    let text = String::from_utf8(out.stdout).unwrap();
    let oracle = p3_example_oracle();
    let expected = format!("{{\"segre\":[{},{}]}}", oracle[0], oracle[1]);
    if text.trim() != expected {
        return Err(format!("cli printed {}, oracle {expected}", text.trim()));
    }
    let golden = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/golden/convert_p3_example.json"
    ))
    .map_err(|e| e.to_string())?;
    if golden.trim() != expected {
        return Err(format!(
            "golden file holds {}, oracle {expected}",
            golden.trim()
        ));
    }
    Ok(())
}

fn main() {
    let mut sub = Vec::new();
    let criteria: Vec<(&str, Outcome)> = vec![
        (
            "multidegrees by mixed volume and extraction equal C(n,k), n <= 8",
            multidegree_paths(),
        ),
        (
            "triangulation, closed-form and orthant volumes agree, n <= 5",
            volume_oracles(),
        ),
        (
            "Segre values s_0 and low-order closed forms",
            segre_values(&mut sub),
        ),
        (
            "conversion round trip and closed-form inverse",
            conversion_round_trip(),
        ),
        (
            "Segre numbers from multidegrees match the closed sum, n <= 12",
            segre_from_standard_multidegrees(),
        ),
        (
            "hypergeometric form of the Segre numbers, n <= 10",
            hypergeometric(),
        ),
        (
            "maximal minors of the standard and the P^3 example matrices",
            determinantal(),
        ),
        ("base-locus component count and Chow ranks", base_locus()),
        (
            "common refinement cells, covering and disjointness",
            fan_refinement(),
        ),
        (
            "convert --degrees 1,3,2,1 --deg 3 against the elimination oracle",
            p3_example_conversion(),
        ),
    ];
    let mut failed = 0;
    for (name, outcome) in &criteria {
        match outcome {
            Ok(()) => println!("PASS {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
        if name.starts_with("Segre values") {
            for line in &sub {
                println!("     {line}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
