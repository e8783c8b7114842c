//! Checks against formulas computed independently of the library code
//! paths they cover.

use num::{One, Zero};
use proptest::prelude::*;

use infpow::functionals::row_tensor;
use infpow::index::{enumerate_words, zero_count};
use infpow::psi::{apply_psi, psi_matrix};
use infpow::random::SampleGen;
use infpow::seminorms::{tau_c_seminorm, tau_i_seminorm};
use infpow::{rat, FunctionalFamily, Rational, TensorSeries, TruncationCtx, Word};

/// `phi_l(X_w)` from the definition: psi at position `i`, coordinates
/// elsewhere, with `psi(X_0) = 0` and `psi(X_n) = 1` otherwise.
fn phi(i: usize, l: usize, w: usize) -> i64 {
    if l == i {
        (w != 0) as i64
    } else {
        (l == w) as i64
    }
}

fn product_oracle(i: usize, l: &Word, w: &Word) -> Rational {
    let v: i64 = l.letters().iter().zip(w.letters()).map(|(&a, &b)| phi(i, a, b)).product();
    rat(v, 1)
}

#[test]
fn row_tensor_on_basis_words_is_a_product_of_letter_values() {
    for i in 1..=3 {
        for n in 1..=3 {
            for r in 1..=3 {
                let ctx = TruncationCtx::new(n, r);
                let words = enumerate_words(n, r);
                for w in &words {
                    let a = TensorSeries::monomial(ctx, w.clone(), Rational::one());
                    for l in &words {
                        let got = row_tensor(FunctionalFamily::PsiAt(i), l, &a).unwrap();
                        assert_eq!(got, product_oracle(i, l, w), "i={i} l={l} w={w}");
                    }
                }
            }
        }
    }
}

#[test]
fn same_class_mismatches_come_from_psi_reading_nonzero_letters() {
    // The oracle alone reproduces the statement failures: any pair with
    // l_t = i, w_t outside {0, i} and all other letters equal is a mismatch.
    let (i, n, r) = (1, 2, 1);
    let words = enumerate_words(n, r);
    let mismatches: Vec<(String, String)> = words
        .iter()
        .flat_map(|w| words.iter().map(move |l| (l.clone(), w.clone())))
        .filter(|(l, w)| zero_count(l) == zero_count(w))
        .filter(|(l, w)| product_oracle(i, l, w) != rat((l == w) as i64, 1))
        .map(|(l, w)| (l.to_string(), w.to_string()))
        .collect();
    assert_eq!(mismatches, vec![("X1".to_string(), "X2".to_string())]);
}

#[test]
fn lower_class_rows_always_vanish() {
    for i in 1..=3 {
        for n in 1..=3 {
            for r in 1..=3 {
                let words = enumerate_words(n, r);
                for w in &words {
                    for l in words.iter().filter(|l| zero_count(l) < zero_count(w)) {
                        assert!(product_oracle(i, l, w).is_zero(), "i={i} l={l} w={w}");
                    }
                }
            }
        }
    }
}

/// Psi acts on words by substituting `X_w -> X_w + X_i` for every letter
/// `w` outside `{0, i}` with `i <= n`.
fn substitution_oracle(a: &TensorSeries, i: usize) -> TensorSeries {
    let ctx = a.ctx();
    let mut out = TensorSeries::zero(ctx);
    for (w, c) in a.terms() {
        let mut acc = TensorSeries::one(ctx);
        for &letter in w.letters() {
            let mut image = TensorSeries::var(ctx, letter);
            if letter != 0 && letter != i {
                image = &image + &TensorSeries::var(ctx, i);
            }
            acc = &acc * &image;
        }
        out = &out + &acc.scale(c);
    }
    out
}

#[test]
fn psi_matrices_have_unit_diagonal_and_vanish_above_the_blocks() {
    for i in 1..=3 {
        for n in i..=3 {
            for r in 1..=3 {
                let m = psi_matrix(r, n, i).unwrap();
                for (row, line) in m.entries.iter().enumerate() {
                    assert!(line[row].is_one());
                    for (col, v) in line.iter().enumerate() {
                        if zero_count(&m.basis[row]) != zero_count(&m.basis[col]) {
                            assert!(v.is_zero(), "Psi mixes zero classes at ({row}, {col})");
                        }
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_is_letter_substitution(seed in any::<u64>(), i in 1usize..=3) {
        let ctx = TruncationCtx::new(3, 3);
        let a = SampleGen::new(seed).tensor(ctx, 3, 5);
        prop_assert_eq!(apply_psi(&a, i, 3).unwrap(), substitution_oracle(&a, i));
    }

    #[test]
    fn psi_is_multiplicative(seed in any::<u64>(), i in 1usize..=3) {
        let ctx = TruncationCtx::new(3, 3);
        let mut g = SampleGen::new(seed);
        let a = g.tensor(ctx, 1, 3);
        let b = g.tensor(ctx, 2, 3);
        let lhs = apply_psi(&(&a * &b), i, 3).unwrap();
        let rhs = &apply_psi(&a, i, 3).unwrap() * &apply_psi(&b, i, 3).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tau_i_is_tau_c_after_psi(seed in any::<u64>(), i in 1usize..=3, n in 0usize..=3, m in 0usize..=3) {
        let ctx = TruncationCtx::new(3, 3);
        let a = SampleGen::new(seed).tensor(ctx, 3, 5);
        let image = substitution_oracle(&a, i);
        prop_assert_eq!(tau_i_seminorm(&a, n, m, i), tau_c_seminorm(&image, n, m));
    }

    #[test]
    fn alpha_contracts_tau_i_with_constant_one(seed in any::<u64>(), i in 1usize..=3, n in 0usize..=3, m in 0usize..=3) {
        let ctx = TruncationCtx::new(3, 3);
        let a = SampleGen::new(seed).tensor(ctx, 3, 5);
        prop_assert!(tau_i_seminorm(&a.averaging_alpha(), n, m, i) <= tau_i_seminorm(&a, n, m, i));
    }
}
