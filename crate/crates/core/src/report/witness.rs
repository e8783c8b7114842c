use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::comm::CommSeries;
use crate::error::{Error, Result};
use crate::exact::Exact;
use crate::extension::{ext_seminorm, iota, sequences, topology_pair_witness, ExtElement, ExtFamily, PairWitness};
use crate::literal::{parse_comm, parse_ext, parse_tensor, substitute_index};
use crate::seminorms::{p_k, p_prime_k, tau_c_seminorm, tau_i_seminorm, Seminorm, TableRow, Verdict, SCOPE_NOTE};
use crate::tensor::TruncationCtx;
use crate::Rational;

pub type WitnessOutput = PairWitness;

/// Parameters of a `witness` run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRequest {
    /// `A:B`, e.g. `tau_c:tau_i` or `q:qdel`.
    pub pair: String,
    pub i: usize,
    pub j: usize,
    /// A built-in sequence name or a literal containing `{N}`.
    pub sequence: String,
    pub k_max: usize,
    pub n_from: Option<usize>,
    pub n_to: usize,
    pub max_degree: usize,
    pub strict: bool,
}

impl Default for WitnessRequest {
    fn default() -> Self {
        WitnessRequest {
            pair: "tau_c:tau_i".into(),
            i: 1,
            j: 2,
            sequence: "Xn_to_Xi".into(),
            k_max: 4,
            n_from: None,
            n_to: 6,
            max_degree: 3,
            strict: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CommFamily {
    TauC,
    TauAt(usize),
}

impl CommFamily {
    fn at(self, k: usize) -> Seminorm {
        match self {
            CommFamily::TauC => Seminorm::P { k },
            CommFamily::TauAt(i) => Seminorm::PPrime { k, i },
        }
    }

    fn label(self) -> String {
        match self {
            CommFamily::TauC => "tau_c".into(),
            CommFamily::TauAt(i) => format!("tau[i={i}]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Comm(CommFamily),
    Ext(ExtFamily),
}

/// Resolves the position suffix: `_i`, `_j` or a number.
fn position(suffix: &str, i: usize, j: usize) -> Result<usize> {
    let p = match suffix {
        "" | "i" => i,
        "j" => j,
        digits => digits
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad family position {digits:?}")))?,
    };
    if p == 0 {
        return Err(Error::InvalidArgument("family position must be >= 1".into()));
    }
    Ok(p)
}

fn parse_family(name: &str, i: usize, j: usize) -> Result<Family> {
    let name = name.trim();
    let (base, suffix) = match name.split_once('_') {
        Some((b, s)) if b != "tau" => (b, s),
        _ => (name, ""),
    };
    Ok(match base {
        "tau_c" => Family::Comm(CommFamily::TauC),
        "q" => Family::Ext(ExtFamily::Q),
        "qprime" => Family::Ext(ExtFamily::QPrime { i: position(suffix, i, j)? }),
        "qdel" => Family::Ext(ExtFamily::QDel { i: position(suffix, i, j)? }),
        "qdelprime" => Family::Ext(ExtFamily::QDelPrime { i: position(suffix, i, j)? }),
        tau if tau.starts_with("tau_") => Family::Comm(CommFamily::TauAt(position(&tau[4..], i, j)?)),
        other => return Err(Error::InvalidArgument(format!("unknown seminorm family {other:?}"))),
    })
}

enum Sequence {
    TowardI,
    TowardIExt,
    GraphFlat,
    Literal(String),
}

fn parse_sequence(s: &str) -> Result<Sequence> {
    match s.trim() {
        "Xn_to_Xi" => Ok(Sequence::TowardI),
        "Xn_to_Xi_ext" => Ok(Sequence::TowardIExt),
        "graph_flat" => Ok(Sequence::GraphFlat),
        lit if lit.contains("{N}") => Ok(Sequence::Literal(lit.to_string())),
        other => Err(Error::InvalidArgument(format!(
            "unknown sequence {other:?}; literals must contain {{N}}"
        ))),
    }
}

fn comm_rows(family: CommFamily, elements: &[CommSeries], indices: &[usize], k_max: usize) -> Vec<TableRow> {
    (0..=k_max)
        .map(|k| {
            let s = family.at(k);
            let values: Vec<Rational> = elements
                .iter()
                .map(|e| match s {
                    Seminorm::PPrime { k, i } => p_prime_k(e, k, i),
                    _ => p_k(e, k),
                })
                .collect();
            TableRow {
                seminorm: s.to_string(),
                verdict: Verdict::classify(indices, &values),
                values: values.into_iter().map(Exact).collect(),
            }
        })
        .collect()
}

/// Tabulates both families of `req.pair` along the requested sequence.
pub fn run_witness(req: &WitnessRequest) -> Result<PairWitness> {
    let (a, b) = req
        .pair
        .split_once(':')
        .ok_or_else(|| Error::InvalidArgument(format!("pair {:?} must look like A:B", req.pair)))?;
    let (fa, fb) = (parse_family(a, req.i, req.j)?, parse_family(b, req.i, req.j)?);
    if req.i == 0 {
        return Err(Error::InvalidArgument("i must be >= 1".into()));
    }
    let seq = parse_sequence(&req.sequence)?;
    let n_from = req.n_from.unwrap_or(match seq {
        Sequence::Literal(_) => 1,
        _ => req.i + 1,
    });
    if n_from > req.n_to {
        return Err(Error::InvalidArgument(format!("empty range {n_from}..={}", req.n_to)));
    }
    let top = req.n_to.max(req.k_max).max(req.i).max(req.j);
    let ctx = TruncationCtx::new(top, req.max_degree.max(req.k_max).max(1));
    let indices: Vec<usize> = (n_from..=req.n_to).collect();
    let i = req.i;
    let diff = |p: usize, q: usize| &CommSeries::var(ctx, p) - &CommSeries::var(ctx, q);

    match (fa, fb) {
        (Family::Comm(ca), Family::Comm(cb)) => {
            let elements = indices
                .iter()
                .map(|&n| match &seq {
                    Sequence::TowardI => Ok(diff(n, i)),
                    Sequence::TowardIExt => Ok(diff(i, n)),
                    Sequence::GraphFlat => Err(Error::InvalidArgument(
                        "graph_flat lives in the extension; pick extension families".into(),
                    )),
                    Sequence::Literal(t) => parse_comm(ctx, &substitute_index(t, n), req.strict),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(PairWitness {
                family: format!("{}:{}", ca.label(), cb.label()),
                sequence: req.sequence.clone(),
                first: comm_rows(ca, &elements, &indices, req.k_max),
                second: comm_rows(cb, &elements, &indices, req.k_max),
                indices,
                scope: SCOPE_NOTE.to_string(),
            })
        }
        (Family::Ext(ea), Family::Ext(eb)) => {
            let elements: BTreeMap<usize, ExtElement> = indices
                .iter()
                .map(|&n| {
                    let e = match &seq {
                        Sequence::TowardI => Ok(iota(&diff(n, i))),
                        Sequence::TowardIExt => Ok(sequences::coefficient_drift(ctx, i, n)),
                        Sequence::GraphFlat => Ok(sequences::graph_point(ctx, i, n)),
                        Sequence::Literal(t) => {
                            let lit = substitute_index(t, n);
                            if lit.trim_start().starts_with('(') {
                                parse_ext(ctx, &lit, req.strict)
                            } else {
                                parse_comm(ctx, &lit, req.strict).map(|c| iota(&c))
                            }
                        }
                    }?;
                    Ok((n, e))
                })
                .collect::<Result<_>>()?;
            Ok(topology_pair_witness(
                (ea, eb),
                &req.sequence,
                |n| elements[&n].clone(),
                0..=req.k_max,
                n_from..=req.n_to,
            ))
        }
        _ => Err(Error::InvalidArgument(format!(
            "pair {:?} mixes commutative and extension families",
            req.pair
        ))),
    }
}

/// Evaluates one seminorm on a literal.
///
/// `family` is one of `tau_c`, `tau_i` (tensor literal, uses `n`, `m`),
/// `p`, `pprime` (commutative literal, uses `k`) or `q`, `qprime`, `qdel`,
/// `qdelprime` (extension literal `(x, m)`, uses `k`).
#[allow(clippy::too_many_arguments)]
pub fn seminorm_eval(
    literal: &str,
    family: &str,
    ctx: TruncationCtx,
    i: usize,
    n: usize,
    m: usize,
    k: usize,
    strict: bool,
) -> Result<Rational> {
    let need_i = || {
        if i == 0 {
            Err(Error::InvalidArgument("psi position i must be >= 1".into()))
        } else {
            Ok(i)
        }
    };
    Ok(match family {
        "tau_c" => tau_c_seminorm(&parse_tensor(ctx, literal, strict)?, n, m),
        "tau_i" => tau_i_seminorm(&parse_tensor(ctx, literal, strict)?, n, m, need_i()?),
        "p" => p_k(&parse_comm(ctx, literal, strict)?, k),
        "pprime" => p_prime_k(&parse_comm(ctx, literal, strict)?, k, need_i()?),
        "q" => ext_seminorm(ExtFamily::Q.at(k), &parse_ext(ctx, literal, strict)?),
        "qprime" => ext_seminorm(ExtFamily::QPrime { i: need_i()? }.at(k), &parse_ext(ctx, literal, strict)?),
        "qdel" => ext_seminorm(ExtFamily::QDel { i: need_i()? }.at(k), &parse_ext(ctx, literal, strict)?),
        "qdelprime" => {
            ext_seminorm(ExtFamily::QDelPrime { i: need_i()? }.at(k), &parse_ext(ctx, literal, strict)?)
        }
        other => return Err(Error::InvalidArgument(format!("unknown seminorm {other:?}"))),
    })
}
