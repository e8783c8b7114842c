//! The coefficient-reconstruction map `Psi`, its graded matrices over the
//! canonical word basis, the zero-class statements, and exact inversion.

use std::collections::HashMap;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Exact;
use crate::functionals::{row_tensor, FunctionalFamily};
use crate::index::{enumerate_words, zero_count, Word};
use crate::tensor::{TensorSeries, TruncationCtx};
use crate::Rational;

fn check_alphabet(a: &TensorSeries, n: usize) -> Result<()> {
    match a.max_letter() {
        Some(letter) if letter > n => Err(Error::OutsideAlphabet { letter, bound: n }),
        _ => Ok(()),
    }
}

/// `Psi(a) = a^(0) + sum_r sum_{l in {0..n}^r} row_tensor(l, a^(r)) X^l`.
///
/// The support of `a` must lie in `{0..n}`; the result lives in the context
/// `(n, a.max_degree)`.
pub fn apply_psi(a: &TensorSeries, i: usize, n: usize) -> Result<TensorSeries> {
    apply_family(a, FunctionalFamily::psi_at(i)?, n)
}

pub fn apply_family(a: &TensorSeries, family: FunctionalFamily, n: usize) -> Result<TensorSeries> {
    check_alphabet(a, n)?;
    let ctx = TruncationCtx::new(n, a.ctx().max_degree);
    let a = a.restrict(ctx);
    let mut terms = vec![(Word::empty(), a.coeff(&Word::empty()))];
    for r in 1..=ctx.max_degree {
        let part = a.graded_component(r);
        if part.is_zero() {
            continue;
        }
        for l in enumerate_words(n, r) {
            let c = row_tensor(family, &l, &part)?;
            terms.push((l, c));
        }
    }
    Ok(TensorSeries::from_terms(ctx, terms))
}

/// Matrix of `Psi^(r)` on words of length `r` over `{0..n}`; column `c`
/// holds the coordinates of `Psi(basis[c])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiMatrix {
    pub r: usize,
    pub n: usize,
    pub family: FunctionalFamily,
    pub basis: Vec<Word>,
    pub entries: Vec<Vec<Rational>>,
}

pub fn psi_matrix(r: usize, n: usize, i: usize) -> Result<PsiMatrix> {
    if !(1..=n).contains(&i) {
        return Err(Error::InvalidArgument(format!(
            "psi position {i} must satisfy 1 <= i <= n = {n}"
        )));
    }
    psi_matrix_for(FunctionalFamily::PsiAt(i), r, n)
}

pub fn psi_matrix_for(family: FunctionalFamily, r: usize, n: usize) -> Result<PsiMatrix> {
    if r == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "matrix bounds need r >= 1 and n >= 1 (got r = {r}, n = {n})"
        )));
    }
    let ctx = TruncationCtx::new(n, r);
    let basis = enumerate_words(n, r);
    let dim = basis.len();
    let mut entries = vec![vec![Rational::zero(); dim]; dim];
    for (col, w) in basis.iter().enumerate() {
        let a = TensorSeries::monomial(ctx, w.clone(), Rational::one());
        for (row, l) in basis.iter().enumerate() {
            entries[row][col] = row_tensor(family, l, &a)?;
        }
    }
    Ok(PsiMatrix {
        r,
        n,
        family,
        basis,
        entries,
    })
}

impl PsiMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn psi_position(&self) -> Option<usize> {
        self.family.psi_position()
    }

    fn class(&self, idx: usize) -> usize {
        zero_count(&self.basis[idx])
    }

    /// Letters equal to the psi position; orders rows inside a diagonal block.
    fn psi_count(&self, idx: usize) -> usize {
        self.psi_position().map_or(0, |i| self.basis[idx].count(i))
    }

    /// Nonzero entries sending a column of zero class `k` to a row of class
    /// `m < k`.
    pub fn upper_block_violations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (row, line) in self.entries.iter().enumerate() {
            for (col, v) in line.iter().enumerate() {
                if self.class(row) < self.class(col) && !v.is_zero() {
                    out.push((row, col));
                }
            }
        }
        out
    }

    pub fn is_block_lower_triangular(&self) -> bool {
        self.upper_block_violations().is_empty()
    }

    /// Entries of diagonal blocks that differ from the identity.
    pub fn diagonal_block_deviations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (row, line) in self.entries.iter().enumerate() {
            for (col, v) in line.iter().enumerate() {
                if self.class(row) != self.class(col) {
                    continue;
                }
                let expected = if row == col { Rational::one() } else { Rational::zero() };
                if *v != expected {
                    out.push((row, col));
                }
            }
        }
        out
    }

    pub fn diagonal_blocks_identity(&self) -> bool {
        self.diagonal_block_deviations().is_empty()
    }

    /// Each diagonal block is unit lower triangular once its rows and columns
    /// are ordered by psi count.
    pub fn diagonal_blocks_unipotent(&self) -> bool {
        self.entries.iter().enumerate().all(|(row, line)| {
            line.iter().enumerate().all(|(col, v)| {
                if self.class(row) != self.class(col) {
                    true
                } else if row == col {
                    v.is_one()
                } else {
                    v.is_zero() || self.psi_count(row) > self.psi_count(col)
                }
            })
        })
    }

    /// Exact determinant by fraction-based Gaussian elimination; ignores the
    /// block structure.
    pub fn determinant(&self) -> Rational {
        determinant(&self.entries)
    }

    /// Matrix action on a degree-`r` element expressed in the basis.
    pub fn apply(&self, a: &TensorSeries) -> Result<TensorSeries> {
        let coords = self.coordinates(a)?;
        let ctx = TruncationCtx::new(self.n, self.r);
        let terms = self.basis.iter().enumerate().map(|(row, w)| {
            let v = self.entries[row]
                .iter()
                .zip(&coords)
                .fold(Rational::zero(), |acc, (m, x)| acc + m * x);
            (w.clone(), v)
        });
        Ok(TensorSeries::from_terms(ctx, terms))
    }

    fn coordinates(&self, a: &TensorSeries) -> Result<Vec<Rational>> {
        if !a.is_homogeneous(self.r) {
            return Err(Error::Dimension(format!(
                "element of degree {:?} against a degree-{} matrix",
                a.degree(),
                self.r
            )));
        }
        if let Some(letter) = a.max_letter().filter(|&l| l > self.n) {
            return Err(Error::Dimension(format!(
                "letter {letter} outside the matrix alphabet 0..={}",
                self.n
            )));
        }
        Ok(self.basis.iter().map(|w| a.coeff(w)).collect())
    }

    pub fn to_dump(&self) -> PsiMatrixDump {
        PsiMatrixDump {
            r: self.r,
            n: self.n,
            i: self.psi_position(),
            family: self.family.to_string(),
            basis: self.basis.iter().map(Word::to_string).collect(),
            entries: self
                .entries
                .iter()
                .map(|line| line.iter().cloned().map(Exact).collect())
                .collect(),
            block_lower_triangular: self.is_block_lower_triangular(),
            diagonal_blocks_identity: self.diagonal_blocks_identity(),
            diagonal_blocks_unipotent: self.diagonal_blocks_unipotent(),
            determinant: Exact(self.determinant()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_dump()).expect("dump serializes") + "\n"
    }

    pub fn verdict_line(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        format!(
            "block lower-triangular: {}, diagonal blocks identity: {}, diagonal blocks unipotent: {}, determinant: {}",
            yn(self.is_block_lower_triangular()),
            yn(self.diagonal_blocks_identity()),
            yn(self.diagonal_blocks_unipotent()),
            self.determinant()
        )
    }

    /// Dense grid with basis labels, followed by the verdict line.
    pub fn to_text(&self) -> String {
        let labels: Vec<String> = self.basis.iter().map(Word::to_string).collect();
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|line| line.iter().map(|v| v.to_string()).collect())
            .collect();
        let label_w = labels.iter().map(String::len).max().unwrap_or(0);
        let cell_w = cells
            .iter()
            .flatten()
            .map(String::len)
            .chain(labels.iter().map(String::len))
            .max()
            .unwrap_or(1);
        let mut out = format!("Psi^({}) on {{0..{}}}, family {}\n", self.r, self.n, self.family);
        out.push_str(&format!("{:label_w$}", ""));
        for l in &labels {
            out.push_str(&format!(" {l:>cell_w$}"));
        }
        out.push('\n');
        for (label, line) in labels.iter().zip(&cells) {
            out.push_str(&format!("{label:label_w$}"));
            for c in line {
                out.push_str(&format!(" {c:>cell_w$}"));
            }
            out.push('\n');
        }
        out.push_str(&self.verdict_line());
        out.push('\n');
        out
    }
}

/// JSON form of a [`PsiMatrix`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiMatrixDump {
    pub r: usize,
    pub n: usize,
    pub i: Option<usize>,
    pub family: String,
    pub basis: Vec<String>,
    pub entries: Vec<Vec<Exact>>,
    pub block_lower_triangular: bool,
    pub diagonal_blocks_identity: bool,
    pub diagonal_blocks_unipotent: bool,
    pub determinant: Exact,
}

pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let dim = a.len();
    let mut det = Rational::one();
    for col in 0..dim {
        let Some(pivot) = (col..dim).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for row in (col + 1)..dim {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = &a[row][col] / &p;
            let (top, bottom) = a.split_at_mut(row);
            for (target, pivot_entry) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *target -= &factor * pivot_entry;
            }
        }
    }
    det
}

/// Solves `Psi^(r)(a) = b` by forward substitution over the zero-class
/// blocks in ascending order, and inside each block over ascending psi
/// count. Fails with [`Error::Structure`] if the matrix does not have that
/// shape.
pub fn invert_psi(b: &TensorSeries, matrix: &PsiMatrix) -> Result<TensorSeries> {
    let rhs = matrix.coordinates(b)?;
    let dim = matrix.dim();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by_key(|&p| (matrix.class(p), matrix.psi_count(p), p));
    let position: HashMap<usize, usize> = order.iter().enumerate().map(|(s, &p)| (p, s)).collect();

    let mut x = vec![Rational::zero(); dim];
    for (step, &row) in order.iter().enumerate() {
        let mut acc = rhs[row].clone();
        for (col, v) in matrix.entries[row].iter().enumerate() {
            if v.is_zero() || col == row {
                continue;
            }
            if position[&col] > step {
                return Err(Error::Structure(format!(
                    "entry ({}, {}) couples to an unsolved unknown",
                    matrix.basis[row], matrix.basis[col]
                )));
            }
            acc -= v * &x[col];
        }
        if !matrix.entries[row][row].is_one() {
            return Err(Error::Structure(format!(
                "diagonal entry at {} is {}",
                matrix.basis[row], matrix.entries[row][row]
            )));
        }
        x[row] = acc;
    }
    let ctx = TruncationCtx::new(matrix.n, matrix.r);
    Ok(TensorSeries::from_terms(ctx, matrix.basis.iter().cloned().zip(x)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub family: String,
    pub r: usize,
    pub n: usize,
    pub l: String,
    pub a: String,
    pub expected: Exact,
    pub actual: Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StatementTally {
    pub checked: usize,
    pub failed: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl StatementTally {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn record(&mut self, ok: bool, make: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(make());
            }
        }
    }
}

pub const MAX_COUNTEREXAMPLES: usize = 16;

/// Outcome of the exhaustive zero-class check. `same_class` covers pairs
/// with equal zero counts (row tensor must reproduce the coefficient);
/// `lower_class` covers rows with fewer zeros than the basis word (row
/// tensor must vanish).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StatementsReport {
    pub same_class: StatementTally,
    pub lower_class: StatementTally,
}

/// Brute force over `r <= r_max`, alphabets `{0..n}` with `1 <= n <= n_max`,
/// every family in `families`, every basis word `a` and every index word `l`
/// with no more zeros than `a`.
pub fn check_statements(r_max: usize, n_max: usize, families: &[FunctionalFamily]) -> Result<StatementsReport> {
    let mut report = StatementsReport::default();
    for &family in families {
        for n in 1..=n_max {
            for r in 1..=r_max {
                let ctx = TruncationCtx::new(n, r);
                let words = enumerate_words(n, r);
                for w in &words {
                    let k = zero_count(w);
                    let a = TensorSeries::monomial(ctx, w.clone(), Rational::one());
                    for l in &words {
                        let m = zero_count(l);
                        if m > k {
                            continue;
                        }
                        let actual = row_tensor(family, l, &a)?;
                        let expected = if m == k { a.coeff(l) } else { Rational::zero() };
                        let tally = if m == k {
                            &mut report.same_class
                        } else {
                            &mut report.lower_class
                        };
                        let ok = actual == expected;
                        tally.record(ok, || Counterexample {
                            family: family.to_string(),
                            r,
                            n,
                            l: l.to_string(),
                            a: a.to_string(),
                            expected: Exact(expected.clone()),
                            actual: Exact(actual.clone()),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}
