//! Seminorm families on the tensor algebra and on commutative series, and
//! tabulation of seminorm values along sequences.

use std::fmt;
use std::ops::RangeInclusive;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::comm::CommSeries;
use crate::exact::Exact;
use crate::functionals::{row_tensor, FunctionalFamily};
use crate::index::enumerate_words;
use crate::tensor::TensorSeries;
use crate::Rational;

/// A seminorm `||.||_n^(m)` of the given family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeminormParams {
    pub family: FunctionalFamily,
    pub n: usize,
    pub m: usize,
}

impl SeminormParams {
    pub fn eval(&self, a: &TensorSeries) -> Rational {
        family_seminorm(a, self.family, self.n, self.m)
    }
}

/// `|a^(0)| + sum_{r=1..m} sum_{l in {0..n}^r} |row_tensor(l, a^(r))|`.
pub fn family_seminorm(a: &TensorSeries, family: FunctionalFamily, n: usize, m: usize) -> Rational {
    let mut total = a.graded_component(0).coeff(&Default::default()).abs();
    for r in 1..=m {
        let part = a.graded_component(r);
        if part.is_zero() {
            continue;
        }
        for l in enumerate_words(n, r) {
            let v = row_tensor(family, &l, &part).expect("graded component is homogeneous");
            total += v.abs();
        }
    }
    total
}

/// `|a|_n^(m)`: absolute coefficient sum over words of length <= m on
/// `{0..n}`.
pub fn tau_c_seminorm(a: &TensorSeries, n: usize, m: usize) -> Rational {
    a.terms()
        .filter(|(w, _)| w.len() <= m && w.letters().iter().all(|&l| l <= n))
        .fold(Rational::zero(), |acc, (_, c)| acc + c.abs())
}

/// `||a||_n^(m)` for the family with `psi` at position `i >= 1`.
pub fn tau_i_seminorm(a: &TensorSeries, n: usize, m: usize, i: usize) -> Rational {
    assert!(i >= 1, "psi sits at a position i >= 1");
    family_seminorm(a, FunctionalFamily::PsiAt(i), n, m)
}

/// Diagonal generating sequence for the coordinate topology on commutative
/// series.
pub fn p_k(c: &CommSeries, k: usize) -> Rational {
    tau_c_seminorm(&c.embed_symmetric(), k, k)
}

/// Diagonal generating sequence for the topology with `psi` at `i`.
pub fn p_prime_k(c: &CommSeries, k: usize, i: usize) -> Rational {
    tau_i_seminorm(&c.embed_symmetric(), k, k, i)
}

/// A single seminorm that can be tabulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Seminorm {
    TauC { n: usize, m: usize },
    TauI { n: usize, m: usize, i: usize },
    P { k: usize },
    PPrime { k: usize, i: usize },
}

impl Seminorm {
    pub fn eval_tensor(&self, a: &TensorSeries) -> Rational {
        match *self {
            Seminorm::TauC { n, m } => tau_c_seminorm(a, n, m),
            Seminorm::TauI { n, m, i } => tau_i_seminorm(a, n, m, i),
            Seminorm::P { k } => tau_c_seminorm(a, k, k),
            Seminorm::PPrime { k, i } => tau_i_seminorm(a, k, k, i),
        }
    }
}

impl fmt::Display for Seminorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Seminorm::TauC { n, m } => write!(f, "|.|_{n}^({m})"),
            Seminorm::TauI { n, m, i } => write!(f, "||.||_{n}^({m})[psi@{i}]"),
            Seminorm::P { k } => write!(f, "p_{k}"),
            Seminorm::PPrime { k, i } => write!(f, "p'_{k},{i}"),
        }
    }
}

/// Anything a [`Seminorm`] can be evaluated on.
pub trait Measurable {
    fn measure(&self, s: &Seminorm) -> Rational;
}

impl Measurable for TensorSeries {
    fn measure(&self, s: &Seminorm) -> Rational {
        s.eval_tensor(self)
    }
}

impl Measurable for CommSeries {
    fn measure(&self, s: &Seminorm) -> Rational {
        s.eval_tensor(&self.embed_symmetric())
    }
}

/// Behaviour of a tabulated value sequence. Claims only cover the tabulated
/// range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// Every value from index `from` on is zero.
    EventuallyZero { from: usize },
    /// Every value from index `from` on equals the nonzero `value`.
    EventuallyConstant { from: usize, value: Exact },
    /// Nondecreasing and strictly larger at the end than at the start.
    Growing,
    Bounded { max: Exact },
}

impl Verdict {
    pub fn classify(indices: &[usize], values: &[Rational]) -> Verdict {
        assert_eq!(indices.len(), values.len());
        let Some(last) = values.last() else {
            return Verdict::Bounded { max: Exact(Rational::zero()) };
        };
        let tail_start = values.iter().rposition(|v| v != last).map_or(0, |p| p + 1);
        if last.is_zero() {
            return Verdict::EventuallyZero { from: indices[tail_start] };
        }
        if tail_start + 1 < values.len() {
            return Verdict::EventuallyConstant {
                from: indices[tail_start],
                value: Exact(last.clone()),
            };
        }
        if values.windows(2).all(|w| w[0] <= w[1]) && values[0] < *last {
            return Verdict::Growing;
        }
        let max = values.iter().max().cloned().unwrap_or_else(Rational::zero);
        Verdict::Bounded { max: Exact(max) }
    }

    pub fn is_eventually_zero(&self) -> bool {
        matches!(self, Verdict::EventuallyZero { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::EventuallyZero { from } => write!(f, "eventually 0 (N >= {from})"),
            Verdict::EventuallyConstant { from, value } => {
                write!(f, "eventually {value} (N >= {from})")
            }
            Verdict::Growing => write!(f, "growing"),
            Verdict::Bounded { max } => write!(f, "bounded by {max}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub seminorm: String,
    pub values: Vec<Exact>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub family: String,
    pub sequence: String,
    pub indices: Vec<usize>,
    pub rows: Vec<TableRow>,
    pub scope: String,
}

pub const SCOPE_NOTE: &str = "verdicts describe the tabulated range only";

/// Evaluates every seminorm on `seq(N)` for each `N` in `range`.
pub fn convergence_table<T: Measurable>(
    family: &str,
    sequence: &str,
    seq: impl Fn(usize) -> T,
    range: RangeInclusive<usize>,
    seminorms: &[Seminorm],
) -> ConvergenceTable {
    let indices: Vec<usize> = range.collect();
    let elements: Vec<T> = indices.iter().map(|&n| seq(n)).collect();
    let rows = seminorms
        .iter()
        .map(|s| {
            let values: Vec<Rational> = elements.iter().map(|e| e.measure(s)).collect();
            TableRow {
                seminorm: s.to_string(),
                verdict: Verdict::classify(&indices, &values),
                values: values.into_iter().map(Exact).collect(),
            }
        })
        .collect();
    ConvergenceTable {
        family: family.to_string(),
        sequence: sequence.to_string(),
        indices,
        rows,
        scope: SCOPE_NOTE.to_string(),
    }
}

impl ConvergenceTable {
    pub fn row(&self, seminorm: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.seminorm == seminorm)
    }

    /// Aligned-column text rendering.
    pub fn to_text(&self) -> String {
        render_table(&self.family, &self.sequence, &self.indices, &self.rows, &self.scope)
    }
}

pub(crate) fn render_table(
    family: &str,
    sequence: &str,
    indices: &[usize],
    rows: &[TableRow],
    scope: &str,
) -> String {
    let mut header = vec!["seminorm".to_string()];
    header.extend(indices.iter().map(|n| format!("N={n}")));
    header.push("verdict".to_string());
    let mut grid = vec![header];
    for row in rows {
        let mut line = vec![row.seminorm.clone()];
        line.extend(row.values.iter().map(|v| v.to_string()));
        line.push(row.verdict.to_string());
        grid.push(line);
    }
    let cols = grid[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| grid.iter().map(|l| l[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = format!("family: {family}\nsequence: {sequence}\n");
    for line in &grid {
        let cells: Vec<String> = line
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell:<w$}", w = widths[c]))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out.push_str(&format!("({scope})\n"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::Word;
    use crate::rat;
    use crate::tensor::TruncationCtx;

    fn ctx() -> TruncationCtx {
        TruncationCtx::new(7, 4)
    }

    fn x(j: usize) -> TensorSeries {
        TensorSeries::var(ctx(), j)
    }

    #[test]
    fn tau_c_examples() {
        assert_eq!(tau_c_seminorm(&(&x(0) + &x(1)), 1, 1), rat(2, 1));
        for n in 0..5 {
            assert_eq!(tau_c_seminorm(&x(5), n, 1), rat(0, 1));
        }
        for n in 0..4 {
            for m in 0..4 {
                assert_eq!(tau_c_seminorm(&TensorSeries::one(ctx()), n, m), rat(1, 1));
            }
        }
    }

    #[test]
    fn tau_i_on_the_convergent_sequence() {
        for i in 1..=3 {
            for big_n in 1..=6 {
                if big_n == i {
                    continue;
                }
                let a = &x(big_n) - &x(i);
                for m in 1..=3 {
                    for n in 0..=6 {
                        let expected = if n < big_n { rat(0, 1) } else { rat(1, 1) };
                        assert_eq!(tau_i_seminorm(&a, n, m, i), expected, "N={big_n} i={i} n={n}");
                    }
                }
            }
        }
        assert_eq!(tau_i_seminorm(&TensorSeries::one(ctx()), 3, 3, 1), rat(1, 1));
    }

    #[test]
    fn diagonal_sequences() {
        let cctx = ctx();
        for k in 0..5 {
            assert_eq!(p_k(&CommSeries::one(cctx), k), rat(1, 1));
        }
        for i in 0..5 {
            for k in 0..5 {
                let expected = if k >= i.max(1) { rat(1, 1) } else { rat(0, 1) };
                assert_eq!(p_k(&CommSeries::var(cctx, i), k), expected);
            }
        }
        // X_i - X_N is invisible to p'_{k,i} while k < N.
        for i in 1..=3 {
            for big_n in (i + 1)..=6 {
                let c = &CommSeries::var(cctx, i) - &CommSeries::var(cctx, big_n);
                for k in 0..big_n {
                    assert_eq!(p_prime_k(&c, k, i), rat(0, 1));
                }
            }
        }
    }

    #[test]
    fn seminorm_of_symmetric_embedding_is_coefficient_sum() {
        let cctx = ctx();
        let c = CommSeries::from_terms(
            cctx,
            [
                (crate::index::ExponentIndex::from_pairs([(0, 1), (1, 2)]), rat(-3, 2)),
                (crate::index::ExponentIndex::var(2), rat(1, 3)),
            ],
        );
        assert_eq!(p_k(&c, 3), rat(3, 2) + rat(1, 3));
        assert_eq!(p_k(&c, 1), rat(0, 1));
    }

    #[test]
    fn verdicts() {
        let idx = [1, 2, 3, 4];
        let r = |v: [i64; 4]| v.map(|x| rat(x, 1)).to_vec();
        assert_eq!(
            Verdict::classify(&idx, &r([1, 1, 0, 0])),
            Verdict::EventuallyZero { from: 3 }
        );
        assert_eq!(
            Verdict::classify(&idx, &r([2, 1, 1, 1])),
            Verdict::EventuallyConstant { from: 2, value: Exact(rat(1, 1)) }
        );
        assert_eq!(Verdict::classify(&idx, &r([1, 2, 3, 4])), Verdict::Growing);
        assert_eq!(
            Verdict::classify(&idx, &r([1, 2, 0, 1])),
            Verdict::Bounded { max: Exact(rat(2, 1)) }
        );
    }

    #[test]
    fn tables_for_the_witness_sequences() {
        let cctx = TruncationCtx::new(8, 4);
        let i = 1;
        let seq = |big_n: usize| &CommSeries::var(cctx, big_n) - &CommSeries::var(cctx, i);
        let grid: Vec<Seminorm> = (0..=4).map(|k| Seminorm::PPrime { k, i }).collect();
        let table = convergence_table("tau_1", "X_N - X_1", seq, 2..=6, &grid);
        for (k, row) in table.rows.iter().enumerate() {
            for (pos, big_n) in table.indices.iter().enumerate() {
                let expected = if k < *big_n { 0 } else { 1 };
                assert_eq!(row.values[pos].0, rat(expected, 1));
            }
            assert!(row.verdict.is_eventually_zero());
        }

        // under tau_2 the same sequence keeps the coordinate at X_1
        let grid2: Vec<Seminorm> = (1..=4).map(|k| Seminorm::PPrime { k, i: 2 }).collect();
        let t2 = convergence_table("tau_2", "X_N - X_1", seq, 5..=8, &grid2);
        for row in &t2.rows {
            assert!(row.values.iter().all(|v| v.0 == rat(1, 1)), "{row:?}");
            assert!(!row.verdict.is_eventually_zero());
        }

        // coordinate topology: 1 for i <= k < N, 2 for k >= N
        let grid_c: Vec<Seminorm> = (0..=4).map(|k| Seminorm::P { k }).collect();
        let tc = convergence_table("tau_c", "X_N - X_1", seq, 2..=6, &grid_c);
        for (k, row) in tc.rows.iter().enumerate() {
            for (pos, big_n) in tc.indices.iter().enumerate() {
                let expected = if k < i { 0 } else if k < *big_n { 1 } else { 2 };
                assert_eq!(row.values[pos].0, rat(expected, 1), "k={k} N={big_n}");
            }
        }
        assert!(tc.to_text().contains("p_4"));
    }

    #[test]
    fn params_accept_words_outside_window() {
        let a = TensorSeries::monomial(ctx(), Word::from([6, 6]), rat(5, 1));
        assert_eq!(tau_c_seminorm(&a, 5, 2), rat(0, 1));
        assert_eq!(tau_c_seminorm(&a, 6, 2), rat(5, 1));
        let params = SeminormParams { family: FunctionalFamily::Coordinate, n: 6, m: 2 };
        assert_eq!(params.eval(&a), rat(5, 1));
    }
}
