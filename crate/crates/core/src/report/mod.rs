//! Verification runs, witness tables and matrix dumps as used by the CLI.

mod config;
mod verify;
mod witness;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub use config::{parse_index_list, Format, RunConfig, Suite};
pub use verify::run_verification;
pub use witness::{run_witness, seminorm_eval, WitnessOutput, WitnessRequest};

use crate::error::Result;
use crate::psi::psi_matrix_for;
use crate::FunctionalFamily;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable naming the default directory for written reports.
pub const OUT_DIR_ENV: &str = "INFPOW_OUT_DIR";

/// Every check id with the identity it verifies.
pub const CHECKS: &[(&str, &str)] = &[
    ("statements.same_class", "row_tensor(l, a) = a_l for l, a in one zero class"),
    ("statements.lower_class", "row_tensor(l, a) = 0 when l has fewer zeros than a"),
    ("statements.coordinate_control", "row_tensor(l, a) = a_l for coordinate functionals"),
    ("psi.block_lower_triangular", "Psi^(r) maps zero class k into classes >= k"),
    ("psi.diagonal_identity", "diagonal blocks of Psi^(r) are identities"),
    ("psi.diagonal_unipotent", "diagonal blocks of Psi^(r) are unit triangular in psi-count order"),
    ("psi.determinant", "det Psi^(r) = 1"),
    ("psi.inverse_round_trip", "Psi^-1(Psi(a)) = a and Psi(Psi^-1(a)) = a"),
    ("psi.matrix_agrees", "matrix action of Psi^(r) equals Psi applied term by term"),
    ("algebra.tensor_associative", "(ab)c = a(bc)"),
    ("algebra.tensor_leibniz", "d_i(ab) = d_i(a) b + a d_i(b) on tensors"),
    ("algebra.comm_leibniz", "d_i(ab) = d_i(a) b + a d_i(b) on commutative series"),
    ("algebra.alpha_idempotent", "alpha(alpha(a)) = alpha(a)"),
    ("algebra.collapse_alpha", "collapse(alpha(a)) = collapse(a)"),
    ("algebra.embed_collapse", "collapse(embed(c)) = c"),
    ("algebra.embed_multiplicative", "alpha(embed(a) embed(b)) = embed(ab)"),
    ("algebra.coefficient_kernel", "d_i(c) = 0 and d_i(c X_i) = c when c omits X_i"),
    ("seminorms.tau_c_submultiplicative", "|ab|_n^(m) <= |a|_n^(m) |b|_n^(m)"),
    ("seminorms.tau_i_submultiplicative", "||ab||_n^(m) <= ||a||_n^(m) ||b||_n^(m)"),
    ("seminorms.alpha_contraction", "|alpha a| <= |a| and ||alpha a|| <= ||a||"),
    ("seminorms.derivation_bound", "|d_i a|_n^(m) <= (m+1) |a|_max(n,i)^(m+1)"),
    ("seminorms.monotone", "seminorm values are nondecreasing in n and m"),
    ("witness.convergence", "||X_N - X_i||_n^(m) = 0 for n < N and d_i(X_i - X_N) = 1"),
    ("witness.tau_c_divergence", "|X_N - X_i|_n^(m) stays positive for n >= i"),
    ("witness.incomparability", "p'_k,j(X_N - X_i) = 1 for i <= k < N while p'_k,j(X_N - X_j) = 0"),
    ("extension.q_submultiplicative", "q_k(ab) <= q_k(a) q_k(b)"),
    ("extension.qprime_submultiplicative", "q'_k,i(ab) <= q'_k,i(a) q'_k,i(b)"),
    ("extension.qdel_submultiplicative", "q_k,di(ab) <= q_k,di(a) q_k,di(b)"),
    ("extension.qdelprime_submultiplicative", "q'_k,di(ab) <= q'_k,di(a) q'_k,di(b)"),
    ("extension.theta", "theta_i is a multiplicative involution with q_k(theta a) = q_k,di(a)"),
    ("extension.iota_multiplicative", "iota(xy) = iota(x) iota(y)"),
    ("extension.square_zero", "(0, m)(y, n) = (0, y m) and (0, m)(0, n) = 0"),
    ("extension.derivation", "D_i(iota x) = (0, d_i x) and D_i(ab) = a D_i(b) + D_i(a) b"),
    ("extension.singer_wermer", "D_i(a) lies in 0 + F and D_i(a)^2 = 0"),
    ("extension.singer_wermer_control", "d_i(X_i) = 1 is not in the radical of F"),
    ("extension.equivalence_bound", "q_m,di(a) <= (m+2) q_max(m,i)+1(a)"),
    ("extension.qprime_discontinuity", "q'_k,i(X_i - X_N, 0) = 0 while q'_k,di(X_i - X_N, 0) = 1"),
];

pub fn anchor(id: &str) -> Option<&'static str> {
    CHECKS.iter().find(|(c, _)| *c == id).map(|(_, a)| *a)
}

fn stream_of(id: &str) -> u64 {
    CHECKS.iter().position(|(c, _)| *c == id).expect("registered check") as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub parameters: BTreeMap<String, String>,
    pub passed: bool,
    pub counterexample: Option<String>,
    pub values: BTreeMap<String, String>,
}

/// Accumulates one check; the first recorded failure becomes the
/// counterexample.
pub(crate) struct CheckBuilder {
    rec: CheckRecord,
    failures: usize,
    cases: usize,
}

impl CheckBuilder {
    pub(crate) fn new(id: &str) -> Self {
        let anchor = anchor(id).unwrap_or_else(|| panic!("unregistered check id {id}"));
        CheckBuilder {
            rec: CheckRecord {
                id: id.to_string(),
                anchor: anchor.to_string(),
                parameters: BTreeMap::new(),
                passed: true,
                counterexample: None,
                values: BTreeMap::new(),
            },
            failures: 0,
            cases: 0,
        }
    }

    pub(crate) fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.rec.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub(crate) fn value(&mut self, key: &str, value: impl ToString) {
        self.rec.values.insert(key.to_string(), value.to_string());
    }

    pub(crate) fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.rec.counterexample.is_none() {
                self.rec.counterexample = Some(describe());
            }
        }
    }

    pub(crate) fn finish(mut self) -> CheckRecord {
        self.rec.passed = self.failures == 0;
        self.rec.values.insert("cases".into(), self.cases.to_string());
        self.rec.values.insert("failures".into(), self.failures.to_string());
        self.rec
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tool: String,
    pub tool_version: String,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(config: RunConfig, checks: Vec<CheckRecord>) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count();
        VerificationReport {
            tool: "infpow".into(),
            tool_version: TOOL_VERSION.into(),
            config,
            summary: Summary {
                total: checks.len(),
                passed,
                failed: checks.len() - passed,
            },
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn check(&self, id: &str) -> impl Iterator<Item = &CheckRecord> {
        let id = id.to_string();
        self.checks.iter().filter(move |c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let params: Vec<String> = c.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(
                out,
                "{} {} [{}] {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.id,
                params.join(" "),
                c.anchor
            );
            if let Some(ce) = &c.counterexample {
                let _ = writeln!(out, "     counterexample: {ce}");
            }
        }
        let _ = writeln!(
            out,
            "{} checks, {} passed, {} failed",
            self.summary.total, self.summary.passed, self.summary.failed
        );
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

/// Dumps the matrix of `Psi^(r)` on the words of length `r` over `{0..n}`.
pub fn psi_matrix_report(r: usize, n: usize, i: usize, corrupt: bool, format: Format) -> Result<String> {
    let family = if corrupt {
        FunctionalFamily::CorruptedPsiAt(i)
    } else {
        FunctionalFamily::psi_at(i)?
    };
    if i > n {
        return Err(crate::Error::InvalidArgument(format!(
            "psi position {i} lies outside the alphabet 0..={n}"
        )));
    }
    let matrix = psi_matrix_for(family, r, n)?;
    Ok(match format {
        Format::Json => matrix.to_json(),
        Format::Text => matrix.to_text(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn check_ids_are_unique() {
        let ids: BTreeSet<_> = CHECKS.iter().map(|(id, _)| id).collect();
        assert_eq!(ids.len(), CHECKS.len());
        let anchors: BTreeSet<_> = CHECKS.iter().map(|(_, a)| a).collect();
        assert_eq!(anchors.len(), CHECKS.len());
    }

    #[test]
    fn builder_keeps_first_counterexample() {
        let mut b = CheckBuilder::new("algebra.tensor_associative").param("seed", 1);
        b.case(true, || "never".into());
        b.case(false, || "first".into());
        b.case(false, || "second".into());
        let rec = b.finish();
        assert!(!rec.passed);
        assert_eq!(rec.counterexample.as_deref(), Some("first"));
        assert_eq!(rec.values["failures"], "2");
        assert_eq!(rec.values["cases"], "3");
    }

    #[test]
    #[should_panic]
    fn unknown_id_panics() {
        let _ = CheckBuilder::new("nope");
    }

    #[test]
    fn psi_matrix_report_formats() {
        let json = psi_matrix_report(1, 2, 1, false, Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["entries"][0], serde_json::json!(["1", "1", "0"]));
        let text = psi_matrix_report(1, 2, 1, false, Format::Text).unwrap();
        assert!(text.contains("determinant: 1"));
        assert!(psi_matrix_report(1, 1, 2, false, Format::Text).is_err());
    }
}
