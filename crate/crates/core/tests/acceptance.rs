//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! before asserting, so `cargo test --test acceptance -- --nocapture`
//! gives a readable scorecard.

use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

use num::{One, Zero};

use infpow::index::zero_count;
use infpow::psi::{apply_psi, check_statements, invert_psi, psi_matrix};
use infpow::random::SampleGen;
use infpow::report::{run_verification, run_witness, RunConfig, VerificationReport, WitnessRequest};
use infpow::seminorms::{p_k, p_prime_k, tau_c_seminorm, tau_i_seminorm};
use infpow::{rat, CommSeries, FunctionalFamily, TensorSeries, TruncationCtx};

fn verdict(criterion: u32, title: &str, started: Instant, failures: &[String]) {
    let secs = started.elapsed().as_secs_f64();
    if failures.is_empty() {
        println!("PASS criterion {criterion}: {title} ({secs:.1}s)");
    } else {
        println!(
            "FAIL criterion {criterion}: {title} ({secs:.1}s); {} violation(s), first: {}",
            failures.len(),
            failures[0]
        );
    }
    assert!(failures.is_empty(), "criterion {criterion} failed: {}", failures[0]);
}

/// The default run, shared by the criteria that read suite results.
fn default_report() -> &'static VerificationReport {
    static REPORT: OnceLock<VerificationReport> = OnceLock::new();
    REPORT.get_or_init(|| run_verification(&RunConfig::default()).expect("default config is valid"))
}

fn suite_failures(ids: &[&str], min_samples: usize) -> Vec<String> {
    let report = default_report();
    let mut out = Vec::new();
    for id in ids {
        let records: Vec<_> = report.check(id).collect();
        if records.is_empty() {
            out.push(format!("{id}: not run"));
        }
        for rec in records {
            if let Some(s) = rec.parameters.get("samples") {
                if s.parse::<usize>().unwrap() < min_samples {
                    out.push(format!("{id}: only {s} samples"));
                }
            }
            if !rec.passed {
                out.push(format!("{id} {:?}: {}", rec.parameters, rec.counterexample.clone().unwrap_or_default()));
            }
        }
    }
    out
}

#[test]
fn criterion_1_zero_class_statements() {
    let t = Instant::now();
    let mut failures = Vec::new();
    for i in 1..=3 {
        let rep = check_statements(3, 3, &[FunctionalFamily::PsiAt(i)]).unwrap();
        for (name, tally) in [("same class", &rep.same_class), ("lower class", &rep.lower_class)] {
            if let Some(ce) = tally.counterexamples.first() {
                failures.push(format!(
                    "i={i} {name}: {} of {} cases fail, e.g. r={} n={} l={} a={}: expected {}, got {}",
                    tally.failed, tally.checked, ce.r, ce.n, ce.l, ce.a, ce.expected, ce.actual
                ));
            }
        }
    }
    verdict(1, "row tensors reproduce coefficients within a zero class and vanish below it", t, &failures);
}

#[test]
fn criterion_2_psi_structure() {
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut g = SampleGen::new(2);
    for i in 1..=3 {
        for n in i..=3 {
            for r in 1..=3 {
                let m = psi_matrix(r, n, i).unwrap();
                let classes: Vec<usize> = m.basis.iter().map(zero_count).collect();
                for (row, line) in m.entries.iter().enumerate() {
                    for (col, v) in line.iter().enumerate() {
                        let (kr, kc) = (classes[row], classes[col]);
                        let label = format!("r={r} n={n} i={i}: entry ({}, {}) = {v}", m.basis[row], m.basis[col]);
                        if kr < kc && !v.is_zero() {
                            failures.push(format!("{label} above the block diagonal"));
                        }
                        let want = if row == col { rat(1, 1) } else { rat(0, 1) };
                        if kr == kc && *v != want {
                            failures.push(format!("{label} in a diagonal block"));
                        }
                    }
                }
                if !m.determinant().is_one() {
                    failures.push(format!("r={r} n={n} i={i}: determinant {}", m.determinant()));
                }
                let ctx = TruncationCtx::new(n, r);
                for _ in 0..200 {
                    let a = g.homogeneous(ctx, r, n, 4);
                    let image = apply_psi(&a, i, n).unwrap();
                    match invert_psi(&image, &m) {
                        Ok(back) if back == a => {}
                        other => failures.push(format!("r={r} n={n} i={i}: round trip of {a} gave {other:?}")),
                    }
                }
            }
        }
    }
    verdict(2, "Psi is block lower-triangular with identity diagonal blocks, det 1, exact inverse", t, &failures);
}

#[test]
fn criterion_3_convergence_witness() {
    let t = Instant::now();
    let mut failures = Vec::new();
    let ctx = TruncationCtx::new(6, 4);
    let one_t = TensorSeries::one(ctx);
    let one_c = CommSeries::one(ctx);
    for i in 1..=3 {
        for big_n in (1..=6).filter(|&n| n != i) {
            let x = &TensorSeries::var(ctx, big_n) - &TensorSeries::var(ctx, i);
            for n in 0..=6 {
                for m in 0..=4 {
                    let v = tau_i_seminorm(&x, n, m, i);
                    // closed form: only the row l = N survives, and only once N <= n
                    let want = if n >= big_n && m >= 1 { 1 } else { 0 };
                    if v != rat(want, 1) {
                        failures.push(format!("i={i} N={big_n} n={n} m={m}: {v}, expected {want}"));
                    }
                }
            }
            let d = (&CommSeries::var(ctx, i) - &CommSeries::var(ctx, big_n)).partial_derivative(i);
            if d != one_c {
                failures.push(format!("d_{i}(X_{i} - X_{big_n}) = {d}"));
            }
        }
        for n in 0..=6 {
            for m in 0..=4 {
                let (c, s) = (tau_c_seminorm(&one_t, n, m), tau_i_seminorm(&one_t, n, m, i));
                if !c.is_one() || !s.is_one() {
                    failures.push(format!("seminorms of 1 at n={n} m={m}: {c}, {s}"));
                }
            }
        }
        for k in 0..=4 {
            if !p_k(&one_c, k).is_one() || !p_prime_k(&one_c, k, i).is_one() {
                failures.push(format!("p_{k} or p'_{k},{i} of 1 is not 1"));
            }
        }
    }
    verdict(3, "X_N - X_i tends to 0 under tau_i while its derivative stays 1", t, &failures);
}

#[test]
fn criterion_4_incomparability() {
    let t = Instant::now();
    let mut failures = Vec::new();
    let ctx = TruncationCtx::new(6, 4);
    let diff = |p: usize, q: usize| &CommSeries::var(ctx, p) - &CommSeries::var(ctx, q);
    for i in 1..=3 {
        for j in (1..=3).filter(|&j| j != i) {
            for big_n in 1..=6 {
                for k in 0..big_n.min(5) {
                    if k >= i && big_n != i {
                        let v = p_prime_k(&diff(big_n, i), k, j);
                        if !v.is_one() {
                            failures.push(format!("p'_{k},{j}(X_{big_n} - X_{i}) = {v}"));
                        }
                    }
                    if big_n != j {
                        let v = p_prime_k(&diff(big_n, j), k, j);
                        if !v.is_zero() {
                            failures.push(format!("p'_{k},{j}(X_{big_n} - X_{j}) = {v}"));
                        }
                    }
                }
                if big_n != i && big_n != j {
                    let d = diff(j, big_n).partial_derivative(i);
                    if !d.is_zero() {
                        failures.push(format!("d_{i}(X_{j} - X_{big_n}) = {d}"));
                    }
                }
            }
            let table = run_witness(&WitnessRequest {
                pair: "tau_i:tau_j".into(),
                i,
                j,
                sequence: "Xn_to_Xi".into(),
                ..Default::default()
            })
            .unwrap();
            for row in &table.second[i..] {
                if row.verdict.is_eventually_zero() {
                    failures.push(format!("i={i} j={j}: {} tends to 0 on the table", row.seminorm));
                }
            }
            for row in &table.first {
                if !row.verdict.is_eventually_zero() {
                    failures.push(format!("i={i}: {} does not tend to 0", row.seminorm));
                }
            }
        }
    }
    verdict(4, "tau_i and tau_j disagree on X_N - X_i", t, &failures);
}

#[test]
fn criterion_5_extension_suite() {
    let t = Instant::now();
    let failures = suite_failures(
        &[
            "extension.q_submultiplicative",
            "extension.qprime_submultiplicative",
            "extension.qdel_submultiplicative",
            "extension.qdelprime_submultiplicative",
            "extension.theta",
            "extension.iota_multiplicative",
            "extension.square_zero",
        ],
        1000,
    );
    verdict(5, "extension seminorms submultiplicative, theta isometric involution, square-zero ideal", t, &failures);
}

#[test]
fn criterion_6_singer_wermer() {
    let t = Instant::now();
    let mut failures = suite_failures(&["extension.singer_wermer", "extension.singer_wermer_control"], 1000);
    if default_report().check("extension.singer_wermer").count() != 3 {
        failures.push("expected one Singer-Wermer record per i in 1..=3".into());
    }
    verdict(6, "D_i lands in the radical and squares to zero; d_i(X_i) = 1 does not", t, &failures);
}

#[test]
fn criterion_7_graph_seminorm_bounds() {
    let t = Instant::now();
    let failures = suite_failures(
        &[
            "extension.equivalence_bound",
            "seminorms.derivation_bound",
            "extension.qprime_discontinuity",
        ],
        1000,
    );
    verdict(7, "graph seminorms bounded by (m+2) q_max(m,i)+1; q' versus q'_d discontinuity", t, &failures);
}

#[test]
fn criterion_8_leibniz_alpha_round_trips() {
    let t = Instant::now();
    let failures = suite_failures(
        &[
            "algebra.tensor_leibniz",
            "algebra.comm_leibniz",
            "algebra.alpha_idempotent",
            "seminorms.alpha_contraction",
            "algebra.embed_collapse",
        ],
        1000,
    );
    verdict(8, "Leibniz rules, alpha idempotent and contractive, collapse inverts embed", t, &failures);
}

#[test]
fn criterion_9_determinism() {
    let t = Instant::now();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_infpow"))
            .args(["verify", "--seed", "11", "--format", "json"])
            .env_remove("INFPOW_OUT_DIR")
            .output()
            .expect("binary runs")
            .stdout
    };
    let (first, second) = (run(), run());
    let mut failures = Vec::new();
    if first.is_empty() {
        failures.push("empty report".into());
    }
    if first != second {
        failures.push(format!("reports differ ({} vs {} bytes)", first.len(), second.len()));
    }
    verdict(9, "same seed gives byte-identical JSON reports", t, &failures);
}
