//! Invariants of the standard Cremona transformation `S_n` and of rational
//! maps in general: multidegrees, Segre numbers, the triangular conversion
//! between them, determinantal matrices and their maximal minors, and the
//! combinatorics of the base locus of `S_n`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::exact::{binomial, hypergeom_terminating, to_integer, Rational, RationalMatrix};
use crate::mixed_volume::{multidegree_sequence, MultidegreeMethod};
use crate::{DeskGuards, Error, Execution, Result};

/// Multidegrees `(d_0, …, d_n)` of a rational map of `P^n` whose components
/// have degree `∂`.
///
/// Construction only checks shape. [`MultidegreeSequence::check_invariants`]
/// tests `d_0 = 1`, `d_1 = ∂` and non-negativity, which sequences produced
/// from arbitrary Segre data need not satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultidegreeSequence {
    degrees: Vec<BigInt>,
    algebraic_degree: u64,
}

impl MultidegreeSequence {
    pub fn new(degrees: Vec<BigInt>, algebraic_degree: u64) -> Result<Self> {
        if degrees.len() < 2 {
            return Err(Error::invalid(
                "a multidegree sequence needs n >= 1 (at least d_0, d_1)",
            ));
        }
        if algebraic_degree == 0 {
            return Err(Error::invalid("the algebraic degree must be positive"));
        }
        Ok(MultidegreeSequence {
            degrees,
            algebraic_degree,
        })
    }

    pub fn n(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degrees(&self) -> &[BigInt] {
        &self.degrees
    }

    pub fn algebraic_degree(&self) -> u64 {
        self.algebraic_degree
    }

    pub fn check_invariants(&self) -> Result<()> {
        if !self.degrees[0].is_one() {
            return Err(Error::InconsistentMultidegrees(format!(
                "d_0 = {} != 1",
                self.degrees[0]
            )));
        }
        if self.degrees[1] != BigInt::from(self.algebraic_degree) {
            return Err(Error::InconsistentMultidegrees(format!(
                "d_1 = {} != ∂ = {}",
                self.degrees[1], self.algebraic_degree
            )));
        }
        if let Some((k, d)) = self
            .degrees
            .iter()
            .enumerate()
            .find(|(_, d)| d.is_negative())
        {
            return Err(Error::InconsistentMultidegrees(format!(
                "d_{k} = {d} is negative"
            )));
        }
        Ok(())
    }
}

/// Segre numbers `(s_0, …, s_{n-2})`, extended by `s_{n-1} = 0`, `s_n = -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegreVector {
    n: usize,
    numbers: Vec<BigInt>,
}

impl SegreVector {
    pub fn new(n: usize, numbers: Vec<BigInt>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        if numbers.len() != n - 1 {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                found: numbers.len(),
            });
        }
        Ok(SegreVector { n, numbers })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `s_0, …, s_{n-2}`.
    pub fn numbers(&self) -> &[BigInt] {
        &self.numbers
    }

    /// `s_k` for `0 ≤ k ≤ n` under the extension convention.
    pub fn extended(&self, k: usize) -> BigInt {
        match self.n.checked_sub(k) {
            Some(0) => -BigInt::one(),
            Some(1) => BigInt::zero(),
            Some(_) => self.numbers[k].clone(),
            None => panic!("Segre index {k} exceeds n = {}", self.n),
        }
    }
}

fn signed(negative: bool, x: BigInt) -> BigInt {
    if negative {
        -x
    } else {
        x
    }
}

fn require(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::invalid(format!(
            "n = {n} is below the minimum {min}"
        )));
    }
    Ok(())
}

/// `d_k = C(n, k)`, `∂ = n`.
pub fn multidegrees_standard(n: usize) -> Result<MultidegreeSequence> {
    require(n, 2)?;
    let degrees = (0..=n).map(|k| binomial(n as u64, k as i64)).collect();
    MultidegreeSequence::new(degrees, n as u64)
}

/// `s_k = (-1)^{n-k-1} Σ_{j=0}^{n-k} (-1)^j C(n-k, j) C(n, j) n^{n-k-j}`.
pub fn segre_numbers_standard(n: usize) -> Result<SegreVector> {
    require(n, 2)?;
    let big_n = BigInt::from(n);
    let numbers = (0..=n - 2)
        .map(|k| {
            let m = n - k;
            let sum: BigInt = (0..=m)
                .map(|j| {
                    let t = binomial(m as u64, j as i64)
                        * binomial(n as u64, j as i64)
                        * Pow::pow(&big_n, (m - j) as u32);
                    signed(j % 2 == 1, t)
                })
                .sum();
            signed((m - 1) % 2 == 1, sum)
        })
        .collect();
    SegreVector::new(n, numbers)
}

/// `s_k = -₂F₁(-n, k-n; 1; -1/n) · (-n)^{n-k}`.
pub fn segre_numbers_hypergeometric(n: usize) -> Result<SegreVector> {
    require(n, 2)?;
    let ni = n as i64;
    let z = Rational::new(BigInt::from(-1), BigInt::from(n));
    let numbers = (0..=n - 2)
        .map(|k| {
            let ki = k as i64;
            let f = hypergeom_terminating(-ni, ki - ni, 1, &z)?;
            let s = -f * Rational::from_integer(Pow::pow(BigInt::from(-ni), (n - k) as u32));
            to_integer(&s).ok_or_else(|| {
                Error::invalid(format!("hypergeometric Segre number {s} is not integral"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SegreVector::new(n, numbers)
}

/// Lower-triangular `(n+1)×(n+1)` matrix with `a_{kℓ} = -C(k,ℓ) ∂^{k-ℓ}`.
pub fn conversion_matrix(algebraic_degree: u64, n: usize) -> RationalMatrix {
    let deg = BigInt::from(algebraic_degree);
    RationalMatrix::from_fn(n + 1, n + 1, |k, l| {
        if l > k {
            return Rational::zero();
        }
        Rational::from_integer(-binomial(k as u64, l as i64) * Pow::pow(&deg, (k - l) as u32))
    })
}

/// Closed-form inverse of [`conversion_matrix`]:
/// `b_{kℓ} = (-1)^{1+k+ℓ} C(k,ℓ) ∂^{k-ℓ}`.
pub fn conversion_matrix_inverse(algebraic_degree: u64, n: usize) -> RationalMatrix {
    let deg = BigInt::from(algebraic_degree);
    RationalMatrix::from_fn(n + 1, n + 1, |k, l| {
        if l > k {
            return Rational::zero();
        }
        let t = binomial(k as u64, l as i64) * Pow::pow(&deg, (k - l) as u32);
        Rational::from_integer(signed((1 + k + l) % 2 == 1, t))
    })
}

/// `d = M · (-1, 0, s_{n-2}, …, s_0)^t`.
pub fn multidegrees_from_segre(
    s: &SegreVector,
    algebraic_degree: u64,
) -> Result<MultidegreeSequence> {
    if algebraic_degree == 0 {
        return Err(Error::invalid("the algebraic degree must be positive"));
    }
    let n = s.n();
    let v: Vec<Rational> = (0..=n)
        .map(|l| Rational::from_integer(s.extended(n - l)))
        .collect();
    let d = conversion_matrix(algebraic_degree, n).mul_vec(&v)?;
    let degrees = d
        .iter()
        .map(|x| to_integer(x).expect("integer matrix times integer vector"))
        .collect();
    MultidegreeSequence::new(degrees, algebraic_degree)
}

/// `s_k = (-1)^{n-k-1} Σ_{ℓ=0}^{n-k} (-1)^ℓ C(n-k, ℓ) ∂^{n-k-ℓ} d_ℓ`.
///
/// The same sum at `k = n-1` and `k = n` must give `0` and `-1`; otherwise
/// the data is not the multidegree sequence of a map of degree `∂`.
pub fn segre_from_multidegrees(d: &MultidegreeSequence) -> Result<SegreVector> {
    let n = d.n();
    let deg = BigInt::from(d.algebraic_degree());
    let segre_at = |k: usize| -> BigInt {
        let m = n - k;
        let sum: BigInt = (0..=m)
            .map(|l| {
                let t =
                    binomial(m as u64, l as i64) * Pow::pow(&deg, (m - l) as u32) * &d.degrees()[l];
                signed(l % 2 == 1, t)
            })
            .sum();
        signed(m.is_multiple_of(2), sum)
    };
    let tail_minus_one = segre_at(n - 1);
    let tail = segre_at(n);
    if !tail_minus_one.is_zero() || tail != -BigInt::one() {
        return Err(Error::InconsistentMultidegrees(format!(
            "extended Segre entries are s_(n-1) = {tail_minus_one}, s_n = {tail}; expected 0 and -1"
        )));
    }
    SegreVector::new(n, (0..n - 1).map(segre_at).collect())
}

/// A linear form `Σ c_i X_i` in `X_0, …, X_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub coefficients: Vec<BigInt>,
}

impl LinearForm {
    pub fn zero(variables: usize) -> Self {
        LinearForm {
            coefficients: vec![BigInt::zero(); variables],
        }
    }

    /// `c · X_i`.
    pub fn variable(variables: usize, i: usize, c: i64) -> Self {
        let mut f = Self::zero(variables);
        f.coefficients[i] = BigInt::from(c);
        f
    }

    pub fn from_ints(coefficients: &[i64]) -> Self {
        LinearForm {
            coefficients: coefficients.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }
}

/// `(n+1) × n` matrix of linear forms in `X_0, …, X_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFormMatrix {
    n: usize,
    rows: Vec<Vec<LinearForm>>,
}

impl LinearFormMatrix {
    pub fn new(n: usize, rows: Vec<Vec<LinearForm>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        if rows.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: rows.len(),
            });
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            if let Some(f) = row.iter().find(|f| f.coefficients.len() != n + 1) {
                return Err(Error::DimensionMismatch {
                    expected: n + 1,
                    found: f.coefficients.len(),
                });
            }
        }
        Ok(LinearFormMatrix { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<LinearForm>] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> &LinearForm {
        &self.rows[row][col]
    }

    /// The `4×3` matrix of a cubo-cubic map of `P^3` whose base scheme is not
    /// reduced along `X_0 = X_1 = 0`:
    ///
    /// ```text
    ///   0     X1    0
    ///   X0    0     0
    ///  -X1   -X1    X1 - X0
    ///   X3    X3    X2 - X3
    /// ```
    pub fn nonreduced_p3_example() -> Self {
        let f = LinearForm::from_ints;
        let z = || f(&[0, 0, 0, 0]);
        let rows = vec![
            vec![z(), f(&[0, 1, 0, 0]), z()],
            vec![f(&[1, 0, 0, 0]), z(), z()],
            vec![f(&[0, -1, 0, 0]), f(&[0, -1, 0, 0]), f(&[-1, 1, 0, 0])],
            vec![f(&[0, 0, 0, 1]), f(&[0, 0, 0, 1]), f(&[0, 0, 1, -1])],
        ];
        LinearFormMatrix::new(3, rows).expect("well-formed example")
    }
}

/// The components of the map defined by
/// [`LinearFormMatrix::nonreduced_p3_example`], as printed alongside it:
/// `X0(X1X2 - X0X3)`, `X1(X1X2 - X0X3)`, `X0X1(X2 - X3)`, `X0X1(X0 - X1)`.
pub fn nonreduced_p3_components() -> Vec<SparsePolynomial> {
    let x = |i| SparsePolynomial::variable(4, i);
    let q = x(1).mul(&x(2)).sub(&x(0).mul(&x(3)));
    let x01 = x(0).mul(&x(1));
    vec![
        x(0).mul(&q),
        x(1).mul(&q),
        x01.mul(&x(2).sub(&x(3))),
        x01.mul(&x(0).sub(&x(1))),
    ]
}

/// `m_{ij} = δ_{ij} X_{j-1}` for `i ≤ n`, and `-X_n` across the last row
/// (1-based indices).
pub fn standard_matrix(n: usize) -> Result<LinearFormMatrix> {
    require(n, 1)?;
    let vars = n + 1;
    let mut rows: Vec<Vec<LinearForm>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        LinearForm::variable(vars, j, 1)
                    } else {
                        LinearForm::zero(vars)
                    }
                })
                .collect()
        })
        .collect();
    rows.push((0..n).map(|_| LinearForm::variable(vars, n, -1)).collect());
    LinearFormMatrix::new(n, rows)
}

/// Polynomial in `X_0, …, X_{v-1}` with big-integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    variables: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl SparsePolynomial {
    pub fn zero(variables: usize) -> Self {
        SparsePolynomial {
            variables,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(variables: usize) -> Self {
        Self::monomial(variables, vec![0; variables], BigInt::one())
    }

    pub fn monomial(variables: usize, exponents: Vec<u32>, c: BigInt) -> Self {
        assert_eq!(exponents.len(), variables);
        let mut p = Self::zero(variables);
        p.add_term(exponents, c);
        p
    }

    /// `X_i`.
    pub fn variable(variables: usize, i: usize) -> Self {
        let mut e = vec![0; variables];
        e[i] = 1;
        Self::monomial(variables, e, BigInt::one())
    }

    pub fn from_linear(form: &LinearForm) -> Self {
        let v = form.coefficients.len();
        let mut p = Self::zero(v);
        for (i, c) in form.coefficients.iter().enumerate() {
            let mut e = vec![0; v];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    fn add_term(&mut self, exponents: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(exponents.clone())
            .or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        SparsePolynomial {
            variables: self.variables,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.variables);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Equality up to an overall sign.
    pub fn equals_up_to_sign(&self, other: &Self) -> bool {
        self == other || *self == other.neg()
    }
}

impl fmt::Display for SparsePolynomial {
    /// Terms in decreasing lexicographic exponent order, e.g. `X1*X2 - X0*X3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            let mag = c.abs();
            let constant = e.iter().all(|&x| x == 0);
            if !mag.is_one() || constant {
                factors.push(mag.to_string());
            }
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(format!("X{i}")),
                    _ => factors.push(format!("X{i}^{p}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Determinant of the square submatrix on `rows` by Laplace expansion along
/// rows, memoized on the set of remaining columns.
fn laplace_determinant(
    entries: &[Vec<SparsePolynomial>],
    rows: &[usize],
    variables: usize,
) -> SparsePolynomial {
    fn expand(
        entries: &[Vec<SparsePolynomial>],
        rows: &[usize],
        cols: u64,
        memo: &mut HashMap<u64, SparsePolynomial>,
        variables: usize,
    ) -> SparsePolynomial {
        if cols == 0 {
            return SparsePolynomial::one(variables);
        }
        if let Some(hit) = memo.get(&cols) {
            return hit.clone();
        }
        let row = rows[rows.len() - cols.count_ones() as usize];
        let mut acc = SparsePolynomial::zero(variables);
        let mut position = 0;
        for c in 0..64 {
            if cols >> c & 1 == 0 {
                continue;
            }
            let entry = &entries[row][c];
            if !entry.is_zero() {
                let rest = expand(entries, rows, cols & !(1 << c), memo, variables);
                let term = entry.mul(&rest);
                acc = if position % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            position += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    let mut memo = HashMap::new();
    expand(
        entries,
        rows,
        (1u64 << rows.len()) - 1,
        &mut memo,
        variables,
    )
}

/// The `n+1` maximal minors; minor `i` is the plain determinant with row `i`
/// deleted (no alternating sign).
pub fn maximal_minors(m: &LinearFormMatrix) -> Result<Vec<SparsePolynomial>> {
    maximal_minors_with(m, Execution::default(), &DeskGuards::current())
}

pub fn maximal_minors_with(
    m: &LinearFormMatrix,
    exec: Execution,
    guards: &DeskGuards,
) -> Result<Vec<SparsePolynomial>> {
    let n = m.n();
    if n > guards.max_minor_dimension || n >= 64 {
        return Err(Error::GuardExceeded {
            guard: "max_minor_dimension",
            message: "maximal minors by Laplace expansion out of desk range",
            limit: guards.max_minor_dimension,
            requested: n,
        });
    }
    let entries: Vec<Vec<SparsePolynomial>> = m
        .rows()
        .iter()
        .map(|row| row.iter().map(SparsePolynomial::from_linear).collect())
        .collect();
    Ok(exec.map_range(0..n + 1, |deleted| {
        let rows: Vec<usize> = (0..=n).filter(|&r| r != deleted).collect();
        laplace_determinant(&entries, &rows, n + 1)
    }))
}

/// The `C(n+1, 2)` codimension-two coordinate subspaces `X_i = X_j = 0`.
pub fn base_components(n: usize) -> Result<Vec<(usize, usize)>> {
    require(n, 2)?;
    Ok((0..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChowRank {
    pub k: usize,
    pub rank: u64,
}

/// Ranks of the Chow groups `A_k` of the base scheme of `S_n`, `0 ≤ k ≤ n-2`.
pub fn chow_ranks(n: usize) -> Result<Vec<ChowRank>> {
    require(n, 3)?;
    let top = (n as u64) * (n as u64 + 1) / 2;
    Ok((0..=n - 2)
        .map(|k| ChowRank {
            k,
            rank: if k + 2 == n { top } else { 1 },
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultidegreePaths {
    #[serde(serialize_with = "crate::json::ints")]
    pub formula: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::ints")]
    pub mixed_volume: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::ints")]
    pub extraction: Vec<BigInt>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegrePaths {
    #[serde(serialize_with = "crate::json::ints")]
    pub formula: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::ints")]
    pub from_multidegrees: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::ints")]
    pub hypergeometric: Vec<BigInt>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ChowSection {
    Ranks(Vec<ChowRank>),
    NotApplicable(&'static str),
}

/// Everything known about `S_n`, with per-section agreement flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegreReport {
    pub n: usize,
    pub algebraic_degree: usize,
    pub multidegrees: MultidegreePaths,
    pub segre: SegrePaths,
    pub base_components: usize,
    pub base_components_match_segre: bool,
    pub chow_ranks: ChowSection,
}

impl SegreReport {
    pub fn all_agree(&self) -> bool {
        self.multidegrees.agree && self.segre.agree && self.base_components_match_segre
    }
}

pub fn segre_report(n: usize) -> Result<SegreReport> {
    segre_report_with(n, Execution::default())
}

pub fn segre_report_with(n: usize, exec: Execution) -> Result<SegreReport> {
    require(n, 2)?;
    let formula = multidegree_sequence(n, MultidegreeMethod::Formula, exec)?;
    let mixed_volume = multidegree_sequence(n, MultidegreeMethod::MixedVolume, exec)?;
    let extraction = multidegree_sequence(n, MultidegreeMethod::Extraction, exec)?;
    let multidegrees = MultidegreePaths {
        agree: formula == mixed_volume && formula == extraction,
        formula,
        mixed_volume,
        extraction,
    };

    let s_formula = segre_numbers_standard(n)?;
    let s_converted = segre_from_multidegrees(&multidegrees_standard(n)?)?;
    let s_hyper = segre_numbers_hypergeometric(n)?;
    let segre = SegrePaths {
        agree: s_formula == s_converted && s_formula == s_hyper,
        formula: s_formula.numbers().to_vec(),
        from_multidegrees: s_converted.numbers().to_vec(),
        hypergeometric: s_hyper.numbers().to_vec(),
    };

    let components = base_components(n)?.len();
    let chow = if n >= 3 {
        ChowSection::Ranks(chow_ranks(n)?)
    } else {
        ChowSection::NotApplicable("not applicable")
    };
    Ok(SegreReport {
        n,
        algebraic_degree: n,
        base_components_match_segre: BigInt::from(components) == s_formula.extended(n - 2),
        multidegrees,
        segre,
        base_components: components,
        chow_ranks: chow,
    })
}
