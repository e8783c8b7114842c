use num::{One, Zero};

use super::{stream_of, CheckBuilder, CheckRecord, RunConfig, Suite, VerificationReport};
use crate::comm::CommSeries;
use crate::error::Result;
use crate::extension::{derivation_d, ext_seminorm, iota, radical_predicate, singer_wermer_report, theta};
use crate::extension::{ExtElement, ExtSeminormKind};
use crate::functionals::FunctionalFamily;
use crate::psi::{apply_family, check_statements, invert_psi, psi_matrix_for, StatementTally};
use crate::random::SampleGen;
use crate::seminorms::{p_prime_k, tau_c_seminorm, tau_i_seminorm};
use crate::tensor::{TensorSeries, TruncationCtx};
use crate::Rational;

const TERMS: usize = 4;

/// Runs every selected suite in a fixed order.
pub fn run_verification(config: &RunConfig) -> Result<VerificationReport> {
    config.validate()?;
    let mut checks = Vec::new();
    for suite in Suite::ALL {
        if !config.suites.contains(&suite) {
            continue;
        }
        let run = Runner { cfg: config };
        match suite {
            Suite::Statements => run.statements(&mut checks)?,
            Suite::Psi => run.psi(&mut checks)?,
            Suite::Algebra => run.algebra(&mut checks),
            Suite::Seminorms => run.seminorms(&mut checks),
            Suite::Witness => run.witness(&mut checks),
            Suite::Extension => run.extension(&mut checks),
        }
    }
    Ok(VerificationReport::new(config.clone(), checks))
}

struct Runner<'a> {
    cfg: &'a RunConfig,
}

impl Runner<'_> {
    fn ctx(&self) -> TruncationCtx {
        TruncationCtx::new(self.cfg.max_index, self.cfg.max_degree)
    }

    fn rng(&self, id: &str) -> SampleGen {
        SampleGen::fork(self.cfg.seed, stream_of(id))
    }

    fn family(&self, i: usize) -> FunctionalFamily {
        if self.cfg.corrupt_psi {
            FunctionalFamily::CorruptedPsiAt(i)
        } else {
            FunctionalFamily::PsiAt(i)
        }
    }

    /// Degrees `(da, db)` with `da + db <= max_degree`, so products are exact.
    fn split_degrees(&self, g: &mut SampleGen) -> (usize, usize) {
        let da = g.index(0, self.cfg.max_degree);
        (da, self.cfg.max_degree - da)
    }

    fn builder(&self, id: &str) -> CheckBuilder {
        CheckBuilder::new(id)
            .param("max_index", self.cfg.max_index)
            .param("max_degree", self.cfg.max_degree)
    }

    fn statements(&self, out: &mut Vec<CheckRecord>) -> Result<()> {
        let (m, n) = (self.cfg.max_degree, self.cfg.max_index);
        let tally_into = |id: &str, family: FunctionalFamily, tally: &StatementTally| {
            let mut b = self.builder(id).param("family", family);
            b.value("checked", tally.checked);
            b.value("failed", tally.failed);
            if let Some(ce) = tally.counterexamples.first() {
                b.case(false, || {
                    format!(
                        "r={} n={} l={} a={}: expected {}, got {}",
                        ce.r, ce.n, ce.l, ce.a, ce.expected, ce.actual
                    )
                });
            } else {
                b.case(true, String::new);
            }
            b.finish()
        };
        for &i in &self.cfg.i_values {
            let family = self.family(i);
            let rep = check_statements(m, n, &[family])?;
            out.push(tally_into("statements.same_class", family, &rep.same_class));
            out.push(tally_into("statements.lower_class", family, &rep.lower_class));
        }
        let rep = check_statements(m, n, &[FunctionalFamily::Coordinate])?;
        let mut b = self.builder("statements.coordinate_control");
        for tally in [&rep.same_class, &rep.lower_class] {
            b.case(tally.passed(), || {
                let ce = &tally.counterexamples[0];
                format!("l={} a={}: expected {}, got {}", ce.l, ce.a, ce.expected, ce.actual)
            });
        }
        b.value("checked", rep.same_class.checked + rep.lower_class.checked);
        out.push(b.finish());
        Ok(())
    }

    fn psi(&self, out: &mut Vec<CheckRecord>) -> Result<()> {
        for &i in &self.cfg.i_values {
            let family = self.family(i);
            let mut block = self.builder("psi.block_lower_triangular").param("i", i);
            let mut ident = self.builder("psi.diagonal_identity").param("i", i);
            let mut unip = self.builder("psi.diagonal_unipotent").param("i", i);
            let mut det = self.builder("psi.determinant").param("i", i);
            let mut round = self
                .builder("psi.inverse_round_trip")
                .param("i", i)
                .param("samples_per_cell", self.cfg.psi_samples);
            let mut agree = self
                .builder("psi.matrix_agrees")
                .param("i", i)
                .param("samples_per_cell", self.cfg.psi_samples);
            let mut g = self.rng("psi.inverse_round_trip").fork_for(i);
            let mut cells = Vec::new();
            for n in i..=self.cfg.max_index {
                for r in 1..=self.cfg.max_degree {
                    cells.push(format!("({r},{n})"));
                    let matrix = psi_matrix_for(family, r, n)?;
                    let cell = |what: &str| format!("r={r} n={n}: {what}");
                    block.case(matrix.is_block_lower_triangular(), || {
                        let (row, col) = matrix.upper_block_violations()[0];
                        cell(&format!(
                            "entry at row {} column {} is {}",
                            matrix.basis[row], matrix.basis[col], matrix.entries[row][col]
                        ))
                    });
                    ident.case(matrix.diagonal_blocks_identity(), || {
                        let (row, col) = matrix.diagonal_block_deviations()[0];
                        cell(&format!(
                            "entry at row {} column {} is {}",
                            matrix.basis[row], matrix.basis[col], matrix.entries[row][col]
                        ))
                    });
                    unip.case(matrix.diagonal_blocks_unipotent(), || cell("diagonal block not unit triangular"));
                    let d = matrix.determinant();
                    det.case(d.is_one(), || cell(&format!("determinant {d}")));
                    let ctx = TruncationCtx::new(n, r);
                    for _ in 0..self.cfg.psi_samples {
                        let a = g.homogeneous(ctx, r, n, TERMS);
                        let image = matrix.apply(&a)?;
                        let direct = apply_family(&a, family, n)?;
                        agree.case(image == direct, || cell(&format!("a = {a}")));
                        let back = invert_psi(&image, &matrix);
                        let pre = invert_psi(&a, &matrix).and_then(|b| matrix.apply(&b));
                        let ok = matches!((&back, &pre), (Ok(x), Ok(y)) if *x == a && *y == a);
                        round.case(ok, || cell(&format!("a = {a}")));
                    }
                }
            }
            for b in [&mut block, &mut ident, &mut unip, &mut det, &mut round, &mut agree] {
                b.value("cells", cells.join(" "));
            }
            out.extend([block, ident, unip, det, round, agree].map(CheckBuilder::finish));
        }
        Ok(())
    }

    fn algebra(&self, out: &mut Vec<CheckRecord>) {
        let ctx = self.ctx();
        let samples = self.cfg.samples;
        let m = self.cfg.max_degree;
        let pick_i = |g: &mut SampleGen| self.cfg.i_values[g.index(0, self.cfg.i_values.len() - 1)];

        let id = "algebra.tensor_associative";
        let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
        for _ in 0..samples {
            let (x, y, z) = (g.tensor(ctx, m, TERMS), g.tensor(ctx, m, TERMS), g.tensor(ctx, m, TERMS));
            b.case(&(&x * &y) * &z == &x * &(&y * &z), || format!("a={x} b={y} c={z}"));
        }
        out.push(b.finish());

        let id = "algebra.tensor_leibniz";
        let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
        for _ in 0..samples {
            let (da, db) = self.split_degrees(&mut g);
            let i = pick_i(&mut g);
            let (x, y) = (g.tensor(ctx, da, TERMS), g.tensor(ctx, db, TERMS));
            let lhs = (&x * &y).tensor_derivation(i);
            let rhs = &(&x.tensor_derivation(i) * &y) + &(&x * &y.tensor_derivation(i));
            b.case(lhs == rhs, || format!("i={i} a={x} b={y}"));
        }
        out.push(b.finish());

        let id = "algebra.comm_leibniz";
        let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
        for _ in 0..samples {
            let (da, db) = self.split_degrees(&mut g);
            let i = pick_i(&mut g);
            let (x, y) = (g.comm(ctx, da, TERMS), g.comm(ctx, db, TERMS));
            let lhs = (&x * &y).partial_derivative(i);
            let rhs = &(&x.partial_derivative(i) * &y) + &(&x * &y.partial_derivative(i));
            b.case(lhs == rhs, || format!("i={i} a={x} b={y}"));
        }
        out.push(b.finish());

        let id = "algebra.alpha_idempotent";
        let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
        for _ in 0..samples {
            let x = g.tensor(ctx, m, TERMS);
            let once = x.averaging_alpha();
            b.case(once.averaging_alpha() == once, || format!("a={x}"));
        }
        out.push(b.finish());

        let id = "algebra.collapse_alpha";
        let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
        for _ in 0..samples {
            let x = g.tensor(ctx, m, TERMS);
            b.case(
                CommSeries::collapse(&x.averaging_alpha()) == CommSeries::collapse(&x),
                || format!("a={x}"),
            );
        }
        out.push(b.finish());

        let id = "algebra.embed_collapse";
        let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
        for _ in 0..samples {
            let c = g.comm(ctx, m, TERMS);
            let e = c.embed_symmetric();
            b.case(CommSeries::collapse(&e) == c && e.averaging_alpha() == e, || format!("c={c}"));
        }
        out.push(b.finish());

        let id = "algebra.embed_multiplicative";
        let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
        for _ in 0..samples {
            let (da, db) = self.split_degrees(&mut g);
            let (x, y) = (g.comm(ctx, da, TERMS), g.comm(ctx, db, TERMS));
            let lhs = (&x.embed_symmetric() * &y.embed_symmetric()).averaging_alpha();
            b.case(lhs == (&x * &y).embed_symmetric(), || format!("a={x} b={y}"));
        }
        out.push(b.finish());

        let id = "algebra.coefficient_kernel";
        let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
        for _ in 0..samples {
            let i = pick_i(&mut g);
            let raw = g.comm(ctx, m.saturating_sub(1), TERMS);
            let c = CommSeries::from_terms(
                ctx,
                raw.terms()
                    .filter(|(e, _)| e.exponent(i) == 0)
                    .map(|(e, v)| (e.clone(), v.clone())),
            );
            let cx = &c * &CommSeries::var(ctx, i);
            let ok = c.in_coefficient_algebra(i)
                && c.partial_derivative(i).is_zero()
                && cx.partial_derivative(i) == c.restrict(ctx);
            b.case(ok, || format!("i={i} c={c}"));
        }
        out.push(b.finish());
    }

    fn seminorms(&self, out: &mut Vec<CheckRecord>) {
        let ctx = self.ctx();
        let samples = self.cfg.samples;
        let (big_n, m) = (self.cfg.max_index, self.cfg.max_degree);
        let pick_i = |g: &mut SampleGen| self.cfg.i_values[g.index(0, self.cfg.i_values.len() - 1)];

        let id = "seminorms.tau_c_submultiplicative";
        let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
        for _ in 0..samples {
            let (x, y) = (g.tensor(ctx, m, TERMS), g.tensor(ctx, m, TERMS));
            let (n, mm) = (g.index(0, big_n), g.index(0, m));
            let lhs = tau_c_seminorm(&(&x * &y), n, mm);
            let rhs = tau_c_seminorm(&x, n, mm) * tau_c_seminorm(&y, n, mm);
            b.case(lhs <= rhs, || format!("n={n} m={mm} a={x} b={y}: {lhs} > {rhs}"));
        }
        out.push(b.finish());

        let id = "seminorms.tau_i_submultiplicative";
        let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
        for _ in 0..samples {
            let i = pick_i(&mut g);
            let (x, y) = (g.tensor(ctx, m, TERMS), g.tensor(ctx, m, TERMS));
            let (n, mm) = (g.index(0, big_n), g.index(0, m));
            let lhs = tau_i_seminorm(&(&x * &y), n, mm, i);
            let rhs = tau_i_seminorm(&x, n, mm, i) * tau_i_seminorm(&y, n, mm, i);
            b.case(lhs <= rhs, || format!("i={i} n={n} m={mm} a={x} b={y}: {lhs} > {rhs}"));
        }
        out.push(b.finish());

        let id = "seminorms.alpha_contraction";
        let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
        let mut worst_c = Rational::zero();
        let mut worst_i = Rational::zero();
        for _ in 0..samples {
            let i = pick_i(&mut g);
            let x = g.tensor(ctx, m, TERMS);
            let ax = x.averaging_alpha();
            let (n, mm) = (g.index(0, big_n), g.index(0, m));
            let (c_before, c_after) = (tau_c_seminorm(&x, n, mm), tau_c_seminorm(&ax, n, mm));
            let (i_before, i_after) = (tau_i_seminorm(&x, n, mm, i), tau_i_seminorm(&ax, n, mm, i));
            if !c_before.is_zero() {
                worst_c = worst_c.max(&c_after / &c_before);
            }
            if !i_before.is_zero() {
                worst_i = worst_i.max(&i_after / &i_before);
            }
            b.case(c_after <= c_before && i_after <= i_before, || {
                format!("i={i} n={n} m={mm} a={x}: ({c_after}, {i_after}) vs ({c_before}, {i_before})")
            });
        }
        b.value("max_ratio_tau_c", worst_c);
        b.value("max_ratio_tau_i", worst_i);
        out.push(b.finish());

        let id = "seminorms.derivation_bound";
        let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
        for _ in 0..samples {
            let i = pick_i(&mut g);
            let x = g.tensor(ctx, m, TERMS);
            let (n, mm) = (g.index(0, big_n), g.index(0, m));
            let lhs = tau_c_seminorm(&x.tensor_derivation(i), n, mm);
            let rhs = Rational::from_integer((mm as i64 + 1).into()) * tau_c_seminorm(&x, n.max(i), mm + 1);
            b.case(lhs <= rhs, || format!("i={i} n={n} m={mm} a={x}: {lhs} > {rhs}"));
        }
        out.push(b.finish());

        let id = "seminorms.monotone";
        let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
        for _ in 0..samples {
            let i = pick_i(&mut g);
            let x = g.tensor(ctx, m, TERMS);
            let (n, mm) = (g.index(0, big_n.saturating_sub(1)), g.index(0, m.saturating_sub(1)));
            let c = |n, mm| tau_c_seminorm(&x, n, mm);
            let t = |n, mm| tau_i_seminorm(&x, n, mm, i);
            let ok = c(n, mm) <= c(n + 1, mm)
                && c(n, mm) <= c(n, mm + 1)
                && t(n, mm) <= t(n + 1, mm)
                && t(n, mm) <= t(n, mm + 1);
            b.case(ok, || format!("i={i} n={n} m={mm} a={x}"));
        }
        out.push(b.finish());
    }

    fn witness_ctx(&self) -> TruncationCtx {
        let top = self.cfg.i_values.iter().copied().max().unwrap_or(1);
        TruncationCtx::new(self.cfg.seq_max.max(self.cfg.k_max).max(top), self.cfg.k_max.max(1))
    }

    fn witness(&self, out: &mut Vec<CheckRecord>) {
        let ctx = self.witness_ctx();
        let (seq_max, k_max) = (self.cfg.seq_max, self.cfg.k_max);
        let grid = |b: CheckBuilder| b.param("seq_max", seq_max).param("k_max", k_max);
        let diff = |p: usize, q: usize| &TensorSeries::var(ctx, p) - &TensorSeries::var(ctx, q);
        let cdiff = |p: usize, q: usize| &CommSeries::var(ctx, p) - &CommSeries::var(ctx, q);
        let one = CommSeries::one(ctx);

        for &i in &self.cfg.i_values {
            let mut conv = grid(CheckBuilder::new("witness.convergence")).param("i", i);
            let mut tau_c = grid(CheckBuilder::new("witness.tau_c_divergence")).param("i", i);
            for big_n in (1..=seq_max).filter(|&n| n != i) {
                let x = diff(big_n, i);
                conv.case(cdiff(i, big_n).partial_derivative(i) == one, || {
                    format!("d_{i}(X_{i} - X_{big_n}) is not 1")
                });
                for n in 0..=seq_max {
                    for m in 0..=k_max {
                        let v = tau_i_seminorm(&x, n, m, i);
                        let want = if n < big_n || m == 0 { 0 } else { 1 };
                        conv.case(v == Rational::from_integer(want.into()), || {
                            format!("N={big_n} n={n} m={m}: value {v}, expected {want}")
                        });
                        let vc = tau_c_seminorm(&x, n, m);
                        let ok = if m == 0 || n < i.min(big_n) { vc.is_zero() } else { !vc.is_zero() };
                        tau_c.case(ok, || format!("N={big_n} n={n} m={m}: value {vc}"));
                    }
                }
            }
            out.push(conv.finish());
            out.push(tau_c.finish());
        }

        for &i in &self.cfg.i_values {
            for &j in self.cfg.i_values.iter().filter(|&&j| j != i) {
                let mut b = grid(CheckBuilder::new("witness.incomparability")).param("i", i).param("j", j);
                for big_n in 1..=seq_max {
                    let toward_i = cdiff(big_n, i);
                    let toward_j = cdiff(big_n, j);
                    for k in 0..=k_max.min(big_n.saturating_sub(1)) {
                        if k >= i && big_n != i {
                            let v = p_prime_k(&toward_i, k, j);
                            b.case(v.is_one(), || format!("p'_{k},{j}(X_{big_n} - X_{i}) = {v}"));
                        }
                        if big_n != j {
                            let v = p_prime_k(&toward_j, k, j);
                            b.case(v.is_zero(), || format!("p'_{k},{j}(X_{big_n} - X_{j}) = {v}"));
                        }
                    }
                    if big_n != j && big_n != i {
                        let d = cdiff(j, big_n).partial_derivative(i);
                        b.case(d.is_zero(), || format!("d_{i}(X_{j} - X_{big_n}) = {d}"));
                    }
                }
                out.push(b.finish());
            }
        }
    }

    fn extension(&self, out: &mut Vec<CheckRecord>) {
        let ctx = self.ctx();
        let samples = self.cfg.samples;
        let m = self.cfg.max_degree;
        let k_top = self.cfg.max_index.max(m) + 1;
        let pick_i = |g: &mut SampleGen| self.cfg.i_values[g.index(0, self.cfg.i_values.len() - 1)];

        type Kind = fn(usize, usize) -> ExtSeminormKind;
        let kinds: [(&str, Kind); 4] = [
            ("extension.q_submultiplicative", |k, _| ExtSeminormKind::Q { k }),
            ("extension.qprime_submultiplicative", |k, i| ExtSeminormKind::QPrime { k, i }),
            ("extension.qdel_submultiplicative", |k, i| ExtSeminormKind::QDel { k, i }),
            ("extension.qdelprime_submultiplicative", |k, i| ExtSeminormKind::QDelPrime { k, i }),
        ];
        for (id, kind) in kinds {
            let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
            for _ in 0..samples {
                let i = pick_i(&mut g);
                let k = g.index(0, k_top);
                let (da, db) = self.split_degrees(&mut g);
                let (x, y) = (g.ext(ctx, da, TERMS), g.ext(ctx, db, TERMS));
                let s = kind(k, i);
                let lhs = ext_seminorm(s, &x.ext_mul(&y));
                let rhs = ext_seminorm(s, &x) * ext_seminorm(s, &y);
                b.case(lhs <= rhs, || format!("{s}: a={x} b={y}: {lhs} > {rhs}"));
            }
            out.push(b.finish());
        }

        let id = "extension.theta";
        let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
        for _ in 0..samples {
            let i = pick_i(&mut g);
            let k = g.index(0, k_top);
            let (da, db) = self.split_degrees(&mut g);
            let (x, y) = (g.ext(ctx, da, TERMS), g.ext(ctx, db, TERMS));
            let involution = theta(i, &theta(i, &x)) == x;
            let multiplicative = theta(i, &x.ext_mul(&y)) == theta(i, &x).ext_mul(&theta(i, &y));
            let isometry = ext_seminorm(ExtSeminormKind::Q { k }, &theta(i, &x))
                == ext_seminorm(ExtSeminormKind::QDel { k, i }, &x);
            b.case(involution && multiplicative && isometry, || {
                format!("i={i} k={k} a={x} b={y}: involution {involution}, multiplicative {multiplicative}, isometry {isometry}")
            });
        }
        out.push(b.finish());

        let id = "extension.iota_multiplicative";
        let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
        for _ in 0..samples {
            let (x, y) = (g.comm(ctx, m, TERMS), g.comm(ctx, m, TERMS));
            b.case(iota(&(&x * &y)) == iota(&x).ext_mul(&iota(&y)), || format!("x={x} y={y}"));
        }
        out.push(b.finish());

        let id = "extension.square_zero";
        let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
        for _ in 0..samples {
            let zero = CommSeries::zero(ctx);
            let (mm, nn, y) = (g.comm(ctx, m, TERMS), g.comm(ctx, m, TERMS), g.comm(ctx, m, TERMS));
            let left = ExtElement::new(zero.clone(), mm.clone());
            let ok = left.ext_mul(&ExtElement::new(y.clone(), nn.clone())) == ExtElement::new(zero.clone(), &y * &mm)
                && left.ext_mul(&ExtElement::new(zero.clone(), nn.clone())).is_zero();
            b.case(ok, || format!("m={mm} y={y} n={nn}"));
        }
        out.push(b.finish());

        let id = "extension.derivation";
        let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
        for _ in 0..samples {
            let i = pick_i(&mut g);
            let (da, db) = self.split_degrees(&mut g);
            let c = g.comm(ctx, m, TERMS);
            let restricts = derivation_d(i, &iota(&c)) == ExtElement::new(CommSeries::zero(ctx), c.partial_derivative(i));
            let (x, y) = (g.ext(ctx, da, TERMS), g.ext(ctx, db, TERMS));
            let leibniz = derivation_d(i, &x.ext_mul(&y))
                == x.ext_mul(&derivation_d(i, &y)).add(&derivation_d(i, &x).ext_mul(&y));
            b.case(restricts && leibniz, || format!("i={i} c={c} a={x} b={y}"));
        }
        out.push(b.finish());

        for &i in &self.cfg.i_values {
            let id = "extension.singer_wermer";
            let mut g = self.rng(id).fork_for(i);
            let elems: Vec<ExtElement> = (0..samples).map(|_| g.ext(ctx, m, TERMS)).collect();
            let rep = singer_wermer_report(i, &elems);
            let mut b = self.builder(id).param("i", i).param("samples", samples);
            b.value("in_radical", rep.in_radical);
            b.value("square_zero", rep.square_zero);
            b.value("in_module_ideal", rep.in_module_ideal);
            b.case(rep.passed(), || rep.failures[0].clone());
            out.push(b.finish());

            let mut b = self.builder("extension.singer_wermer_control").param("i", i);
            let xi = CommSeries::var(ctx, i);
            let d = xi.partial_derivative(i);
            b.value("d_i(X_i)", &d);
            b.case(!d.constant_term().is_zero(), || format!("d_{i}(X_{i}) = {d}"));
            b.case(radical_predicate(&derivation_d(i, &iota(&xi))), || "D_i(iota X_i) outside the radical".into());
            b.case(!radical_predicate(&iota(&d)), || "iota(1) inside the radical".into());
            out.push(b.finish());
        }

        let id = "extension.equivalence_bound";
        let (mut b, mut g) = (self.builder(id).param("samples", samples), self.rng(id));
        for _ in 0..samples {
            let i = pick_i(&mut g);
            let a = g.ext(ctx, m, TERMS);
            let k = g.index(0, m);
            let lhs = ext_seminorm(ExtSeminormKind::QDel { k, i }, &a);
            let big = ext_seminorm(ExtSeminormKind::Q { k: k.max(i) + 1 }, &a);
            let rhs = Rational::from_integer((k as i64 + 2).into()) * big;
            b.case(lhs <= rhs, || format!("i={i} m={k} a={a}: {lhs} > {rhs}"));
        }
        out.push(b.finish());

        let wctx = self.witness_ctx();
        for &i in &self.cfg.i_values {
            let mut b = CheckBuilder::new("extension.qprime_discontinuity")
                .param("i", i)
                .param("seq_max", self.cfg.seq_max)
                .param("k_max", self.cfg.k_max);
            for k in 1..=self.cfg.k_max {
                for big_n in (k + 1..=self.cfg.seq_max).filter(|&n| n != i) {
                    let x = &CommSeries::var(wctx, i) - &CommSeries::var(wctx, big_n);
                    let a = iota(&x);
                    let plain = ext_seminorm(ExtSeminormKind::QPrime { k, i }, &a);
                    let graph = ext_seminorm(ExtSeminormKind::QDelPrime { k, i }, &a);
                    b.case(plain.is_zero() && graph.is_one(), || {
                        format!("k={k} N={big_n}: q'={plain}, q'_d={graph}")
                    });
                }
            }
            out.push(b.finish());
        }
    }
}

trait ForkFor {
    fn fork_for(self, i: usize) -> SampleGen;
}

impl ForkFor for SampleGen {
    /// Separate stream per psi position, derived from the parent stream.
    fn fork_for(mut self, i: usize) -> SampleGen {
        let base = self.index(0, usize::MAX >> 1) as u64;
        SampleGen::fork(base, i as u64)
    }
}
