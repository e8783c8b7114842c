//! The square-zero extension of commutative series by itself: product,
//! the four seminorm families, the graph twist, the induced derivations and
//! witness tables comparing seminorm families along sequences.

use std::fmt;
use std::ops::RangeInclusive;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::comm::CommSeries;
use crate::exact::Exact;
use crate::seminorms::{p_k, p_prime_k, render_table, TableRow, Verdict, SCOPE_NOTE};
use crate::tensor::TruncationCtx;
use crate::Rational;

/// `(x, m)`: algebra part and module part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElement {
    pub x: CommSeries,
    pub m: CommSeries,
}

impl ExtElement {
    /// Pairs the two parts, re-truncating both into their meet context.
    pub fn new(x: CommSeries, m: CommSeries) -> Self {
        let ctx = x.ctx().meet(m.ctx());
        ExtElement {
            x: x.restrict(ctx),
            m: m.restrict(ctx),
        }
    }

    pub fn zero(ctx: TruncationCtx) -> Self {
        ExtElement::new(CommSeries::zero(ctx), CommSeries::zero(ctx))
    }

    pub fn one(ctx: TruncationCtx) -> Self {
        iota(&CommSeries::one(ctx))
    }

    pub fn ctx(&self) -> TruncationCtx {
        self.x.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.m.is_zero()
    }

    pub fn add(&self, other: &ExtElement) -> ExtElement {
        ExtElement::new(&self.x + &other.x, &self.m + &other.m)
    }

    /// `(x, m)(y, n) = (xy, x n + y m)`.
    pub fn ext_mul(&self, other: &ExtElement) -> ExtElement {
        let xy = &self.x * &other.x;
        let module = &(&self.x * &other.m) + &(&other.x * &self.m);
        ExtElement::new(xy, module)
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.m)
    }
}

/// `iota(x) = (x, 0)`.
pub fn iota(x: &CommSeries) -> ExtElement {
    ExtElement::new(x.clone(), CommSeries::zero(x.ctx()))
}

/// `theta_i(x, m) = (x, d_i x - m)`.
pub fn theta(i: usize, a: &ExtElement) -> ExtElement {
    ExtElement::new(a.x.clone(), &a.x.partial_derivative(i) - &a.m)
}

/// `D_i(x, m) = (0, d_i x)`.
pub fn derivation_d(i: usize, a: &ExtElement) -> ExtElement {
    ExtElement::new(CommSeries::zero(a.ctx()), a.x.partial_derivative(i))
}

/// Membership in (zero-constant-term series) ⊕ (all series).
pub fn radical_predicate(a: &ExtElement) -> bool {
    a.x.constant_term().is_zero()
}

/// One seminorm on the extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtSeminormKind {
    /// `p_k(x) + p_k(m)`
    Q { k: usize },
    /// `p'_{k,i}(x) + p'_{k,i}(m)`
    QPrime { k: usize, i: usize },
    /// `p_k(x) + p_k(d_i x - m)`
    QDel { k: usize, i: usize },
    /// `p'_{k,i}(x) + p'_{k,i}(d_i x - m)`
    QDelPrime { k: usize, i: usize },
}

impl fmt::Display for ExtSeminormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtSeminormKind::Q { k } => write!(f, "q_{k}"),
            ExtSeminormKind::QPrime { k, i } => write!(f, "q'_{k},{i}"),
            ExtSeminormKind::QDel { k, i } => write!(f, "q_{k},d{i}"),
            ExtSeminormKind::QDelPrime { k, i } => write!(f, "q'_{k},d{i}"),
        }
    }
}

pub fn ext_seminorm(kind: ExtSeminormKind, a: &ExtElement) -> Rational {
    match kind {
        ExtSeminormKind::Q { k } => p_k(&a.x, k) + p_k(&a.m, k),
        ExtSeminormKind::QPrime { k, i } => p_prime_k(&a.x, k, i) + p_prime_k(&a.m, k, i),
        ExtSeminormKind::QDel { k, i } => {
            p_k(&a.x, k) + p_k(&(&a.x.partial_derivative(i) - &a.m), k)
        }
        ExtSeminormKind::QDelPrime { k, i } => {
            p_prime_k(&a.x, k, i) + p_prime_k(&(&a.x.partial_derivative(i) - &a.m), k, i)
        }
    }
}

/// A sequence of seminorms indexed by `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ExtFamily {
    Q,
    QPrime { i: usize },
    QDel { i: usize },
    QDelPrime { i: usize },
}

impl ExtFamily {
    pub fn at(&self, k: usize) -> ExtSeminormKind {
        match *self {
            ExtFamily::Q => ExtSeminormKind::Q { k },
            ExtFamily::QPrime { i } => ExtSeminormKind::QPrime { k, i },
            ExtFamily::QDel { i } => ExtSeminormKind::QDel { k, i },
            ExtFamily::QDelPrime { i } => ExtSeminormKind::QDelPrime { k, i },
        }
    }
}

impl fmt::Display for ExtFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtFamily::Q => write!(f, "q"),
            ExtFamily::QPrime { i } => write!(f, "qprime[i={i}]"),
            ExtFamily::QDel { i } => write!(f, "qdel[i={i}]"),
            ExtFamily::QDelPrime { i } => write!(f, "qdelprime[i={i}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub family: String,
    pub sequence: String,
    pub indices: Vec<usize>,
    pub first: Vec<TableRow>,
    pub second: Vec<TableRow>,
    pub scope: String,
}

impl PairWitness {
    pub fn to_text(&self) -> String {
        let rows: Vec<TableRow> = self.first.iter().chain(&self.second).cloned().collect();
        render_table(&self.family, &self.sequence, &self.indices, &rows, &self.scope)
    }
}

/// Tabulates two seminorm families, each at every `k` in `ks`, along
/// `seq(N)` for `N` in `range`.
pub fn topology_pair_witness(
    pair: (ExtFamily, ExtFamily),
    sequence: &str,
    seq: impl Fn(usize) -> ExtElement,
    ks: RangeInclusive<usize>,
    range: RangeInclusive<usize>,
) -> PairWitness {
    let indices: Vec<usize> = range.collect();
    let elements: Vec<ExtElement> = indices.iter().map(|&n| seq(n)).collect();
    let tabulate = |family: ExtFamily| -> Vec<TableRow> {
        ks.clone()
            .map(|k| {
                let kind = family.at(k);
                let values: Vec<Rational> = elements.iter().map(|e| ext_seminorm(kind, e)).collect();
                TableRow {
                    seminorm: kind.to_string(),
                    verdict: Verdict::classify(&indices, &values),
                    values: values.into_iter().map(Exact).collect(),
                }
            })
            .collect()
    };
    PairWitness {
        family: format!("{}:{}", pair.0, pair.1),
        sequence: sequence.to_string(),
        first: tabulate(pair.0),
        second: tabulate(pair.1),
        indices,
        scope: SCOPE_NOTE.to_string(),
    }
}

/// Built-in witness sequences.
pub mod sequences {
    use super::*;

    /// `(X_j - X_N, 0)`.
    pub fn coefficient_drift(ctx: TruncationCtx, j: usize, big_n: usize) -> ExtElement {
        iota(&(&CommSeries::var(ctx, j) - &CommSeries::var(ctx, big_n)))
    }

    /// `(X_j - X_N, d_j(X_j - X_N))`: a point of the graph of `d_j`.
    pub fn graph_point(ctx: TruncationCtx, j: usize, big_n: usize) -> ExtElement {
        let x = &CommSeries::var(ctx, j) - &CommSeries::var(ctx, big_n);
        let dx = x.partial_derivative(j);
        ExtElement::new(x, dx)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SingerWermerReport {
    pub i: usize,
    pub samples: usize,
    pub in_radical: usize,
    pub square_zero: usize,
    pub in_module_ideal: usize,
    pub failures: Vec<String>,
}

impl SingerWermerReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For each sample: `D_i(a)` lies in `0 ⊕ F` (hence in the radical) and
/// squares to zero.
pub fn singer_wermer_report(i: usize, samples: &[ExtElement]) -> SingerWermerReport {
    let mut rep = SingerWermerReport {
        i,
        samples: samples.len(),
        ..Default::default()
    };
    for a in samples {
        let d = derivation_d(i, a);
        let radical = radical_predicate(&d);
        let module = d.x.is_zero();
        let square = d.ext_mul(&d).is_zero();
        rep.in_radical += radical as usize;
        rep.in_module_ideal += module as usize;
        rep.square_zero += square as usize;
        if !(radical && module && square) && rep.failures.len() < 8 {
            rep.failures.push(a.to_string());
        }
    }
    rep
}
