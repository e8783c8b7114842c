//! The truncated noncommutative algebra of series over words, with its
//! grading, left division, averaging map, zero-class projections and the
//! letter-deletion derivation.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{distinct_arrangements, word_to_exponent, zero_count, Word};
use crate::Rational;

/// Largest stored indeterminate index and largest stored degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncationCtx {
    pub max_index: usize,
    pub max_degree: usize,
}

impl TruncationCtx {
    pub fn new(max_index: usize, max_degree: usize) -> Self {
        TruncationCtx {
            max_index,
            max_degree,
        }
    }

    /// Componentwise minimum.
    pub fn meet(self, other: TruncationCtx) -> TruncationCtx {
        TruncationCtx {
            max_index: self.max_index.min(other.max_index),
            max_degree: self.max_degree.min(other.max_degree),
        }
    }

    pub fn admits(&self, w: &Word) -> bool {
        w.len() <= self.max_degree && w.letters().iter().all(|&l| l <= self.max_index)
    }
}

impl fmt::Display for TruncationCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(N={}, M={})", self.max_index, self.max_degree)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSeries {
    ctx: TruncationCtx,
    coeffs: BTreeMap<Word, Rational>,
}

impl TensorSeries {
    pub fn zero(ctx: TruncationCtx) -> Self {
        TensorSeries {
            ctx,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: TruncationCtx, c: Rational) -> Self {
        Self::monomial(ctx, Word::empty(), c)
    }

    pub fn one(ctx: TruncationCtx) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn monomial(ctx: TruncationCtx, w: Word, c: Rational) -> Self {
        Self::from_terms(ctx, [(w, c)])
    }

    /// The degree-one series `X_j`.
    pub fn var(ctx: TruncationCtx, j: usize) -> Self {
        Self::monomial(ctx, Word::letter(j), Rational::one())
    }

    /// Sums the given terms; words outside `ctx` are truncated away.
    pub fn from_terms(ctx: TruncationCtx, terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut s = Self::zero(ctx);
        for (w, c) in terms {
            s.add_term(w, c);
        }
        s
    }

    /// Like [`TensorSeries::from_terms`] but rejects words outside `ctx`.
    pub fn try_from_terms(
        ctx: TruncationCtx,
        terms: impl IntoIterator<Item = (Word, Rational)>,
    ) -> Result<Self> {
        let mut s = Self::zero(ctx);
        for (w, c) in terms {
            if !ctx.admits(&w) {
                return Err(Error::InvalidArgument(format!("word {w} lies outside {ctx}")));
            }
            s.add_term(w, c);
        }
        Ok(s)
    }

    pub(crate) fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() || !self.ctx.admits(&w) {
            return;
        }
        match self.coeffs.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ctx(&self) -> TruncationCtx {
        self.ctx
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.coeffs.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest word length present, `None` for the zero series.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().map(Word::len).max()
    }

    /// True when every stored word has length `r` (the zero series counts).
    pub fn is_homogeneous(&self, r: usize) -> bool {
        self.coeffs.keys().all(|w| w.len() == r)
    }

    pub(crate) fn check_homogeneous(&self, r: usize) -> Result<()> {
        match self.coeffs.keys().find(|w| w.len() != r) {
            Some(w) => Err(Error::NotHomogeneous {
                expected: r,
                found: w.len(),
            }),
            None => Ok(()),
        }
    }

    /// Largest letter occurring in the support.
    pub fn max_letter(&self) -> Option<usize> {
        self.coeffs.keys().filter_map(Word::max_letter).max()
    }

    /// Re-truncates into `ctx`, dropping words it does not admit.
    pub fn restrict(&self, ctx: TruncationCtx) -> TensorSeries {
        TensorSeries {
            ctx,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(w, _)| ctx.admits(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn with_ctx(&self, ctx: TruncationCtx) -> TensorSeries {
        self.restrict(ctx)
    }

    pub fn scale(&self, c: &Rational) -> TensorSeries {
        if c.is_zero() {
            return Self::zero(self.ctx);
        }
        TensorSeries {
            ctx: self.ctx,
            coeffs: self.coeffs.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    /// Sum in the meet context.
    pub fn add(&self, other: &TensorSeries) -> TensorSeries {
        let ctx = self.ctx.meet(other.ctx);
        let mut s = self.restrict(ctx);
        for (w, c) in &other.coeffs {
            s.add_term(w.clone(), c.clone());
        }
        s
    }

    pub fn sub(&self, other: &TensorSeries) -> TensorSeries {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Concatenation product, truncated to the meet context.
    pub fn mul(&self, other: &TensorSeries) -> TensorSeries {
        let ctx = self.ctx.meet(other.ctx);
        let mut s = Self::zero(ctx);
        for (u, a) in &self.coeffs {
            if !ctx.admits(u) {
                continue;
            }
            for (v, b) in &other.coeffs {
                if u.len() + v.len() > ctx.max_degree || !ctx.admits(v) {
                    continue;
                }
                s.add_term(u.concat(v), a * b);
            }
        }
        s
    }

    fn same_ctx(&self, other: &TensorSeries) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch {
                left: self.ctx,
                right: other.ctx,
            });
        }
        Ok(())
    }

    /// Strict-mode sum: contexts must agree.
    pub fn checked_add(&self, other: &TensorSeries) -> Result<TensorSeries> {
        self.same_ctx(other)?;
        Ok(self.add(other))
    }

    /// Strict-mode product: contexts must agree.
    pub fn checked_mul(&self, other: &TensorSeries) -> Result<TensorSeries> {
        self.same_ctx(other)?;
        Ok(self.mul(other))
    }

    pub fn graded_component(&self, r: usize) -> TensorSeries {
        self.filter(|w| w.len() == r)
    }

    /// The projection `beta_{r,k}` onto words of length `r` with `k` zeros.
    pub fn zero_class_projection(&self, r: usize, k: usize) -> TensorSeries {
        self.filter(|w| w.len() == r && zero_count(w) == k)
    }

    fn filter(&self, keep: impl Fn(&Word) -> bool) -> TensorSeries {
        TensorSeries {
            ctx: self.ctx,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Left division `P_j`: keeps the words starting with `j` and strips that
    /// leading letter. Undefined when a constant term is present.
    pub fn left_division(&self, j: usize) -> Result<TensorSeries> {
        if self.coeffs.contains_key(&Word::empty()) {
            return Err(Error::DegreeZeroDivision);
        }
        let mut s = Self::zero(self.ctx);
        for (w, c) in &self.coeffs {
            if w.first() == Some(j) {
                s.add_term(w.tail(), c.clone());
            }
        }
        Ok(s)
    }

    /// The averaging map: each word becomes the mean of its letter
    /// permutations.
    pub fn averaging_alpha(&self) -> TensorSeries {
        let mut s = Self::zero(self.ctx);
        for (w, c) in &self.coeffs {
            let orbit = distinct_arrangements(&word_to_exponent(w));
            let share = c / Rational::from_integer(orbit.len().into());
            for u in orbit {
                s.add_term(u, share.clone());
            }
        }
        s
    }

    /// The derivation determined by `X_j -> delta_{ij}`: every occurrence of
    /// letter `i` is deleted in turn.
    pub fn tensor_derivation(&self, i: usize) -> TensorSeries {
        let mut s = Self::zero(self.ctx);
        for (w, c) in &self.coeffs {
            for (pos, &l) in w.letters().iter().enumerate() {
                if l == i {
                    s.add_term(w.delete_at(pos), c.clone());
                }
            }
        }
        s
    }
}

impl Add for &TensorSeries {
    type Output = TensorSeries;
    fn add(self, rhs: &TensorSeries) -> TensorSeries {
        TensorSeries::add(self, rhs)
    }
}

impl Sub for &TensorSeries {
    type Output = TensorSeries;
    fn sub(self, rhs: &TensorSeries) -> TensorSeries {
        TensorSeries::sub(self, rhs)
    }
}

impl Mul for &TensorSeries {
    type Output = TensorSeries;
    fn mul(self, rhs: &TensorSeries) -> TensorSeries {
        TensorSeries::mul(self, rhs)
    }
}

impl Neg for &TensorSeries {
    type Output = TensorSeries;
    fn neg(self) -> TensorSeries {
        self.scale(&-Rational::one())
    }
}

/// Canonical literal: `1*X0 + -1/2*X1.X0 + 3`, terms in word order, `0` when
/// empty.
impl fmt::Display for TensorSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (pos, (w, c)) in self.coeffs.iter().enumerate() {
            if pos > 0 {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{w}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn ctx() -> TruncationCtx {
        TruncationCtx::new(3, 3)
    }

    fn x(j: usize) -> TensorSeries {
        TensorSeries::var(ctx(), j)
    }

    fn w(letters: &[usize]) -> TensorSeries {
        TensorSeries::monomial(ctx(), Word::new(letters.to_vec()), rat(1, 1))
    }

    #[test]
    fn addition() {
        assert!(x(0).add(&x(0).scale(&rat(-1, 1))).is_zero());
        let s = &x(0) + &x(1);
        assert_eq!(s.num_terms(), 2);
        assert_eq!(s.coeff(&Word::letter(0)), rat(1, 1));
        assert_eq!(s.coeff(&Word::letter(1)), rat(1, 1));
        assert_eq!(&s + &TensorSeries::zero(ctx()), s);
    }

    #[test]
    fn addition_meets_contexts() {
        let big = TensorSeries::var(TruncationCtx::new(5, 5), 5);
        let s = &big + &x(1);
        assert_eq!(s.ctx(), ctx());
        assert_eq!(s, x(1));
        assert!(big.checked_add(&x(1)).is_err());
    }

    #[test]
    fn multiplication() {
        assert_eq!(&x(0) * &x(1), w(&[0, 1]));
        assert_eq!(&(&x(0) + &x(1)) * &x(0), &w(&[0, 0]) + &w(&[1, 0]));
        assert_ne!(&x(0) * &x(1), &x(1) * &x(0));
    }

    #[test]
    fn multiplication_truncates_degree() {
        let a = w(&[0, 1]);
        assert!((&a * &a).is_zero());
        assert_eq!(&a * &x(2), w(&[0, 1, 2]));
    }

    #[test]
    fn graded_components() {
        let a = &(&TensorSeries::one(ctx()) + &x(0)) + &w(&[0, 1]);
        assert_eq!(a.graded_component(1), x(0));
        assert!(a.graded_component(7).is_zero());
        assert_eq!(a.graded_component(0), TensorSeries::one(ctx()));
    }

    #[test]
    fn left_division_examples() {
        assert_eq!(w(&[1, 0]).left_division(1).unwrap(), x(0));
        assert!(w(&[1, 0]).left_division(0).unwrap().is_zero());
        assert_eq!(
            (&w(&[0, 0]) + &w(&[0, 1])).left_division(0).unwrap(),
            &x(0) + &x(1)
        );
        assert_eq!(
            TensorSeries::one(ctx()).left_division(0),
            Err(Error::DegreeZeroDivision)
        );
    }

    #[test]
    fn averaging_examples() {
        let half = rat(1, 2);
        let expected = &w(&[0, 1]).scale(&half) + &w(&[1, 0]).scale(&half);
        assert_eq!(w(&[0, 1]).averaging_alpha(), expected);
        assert_eq!(w(&[0, 0]).averaging_alpha(), w(&[0, 0]));
    }

    #[test]
    fn zero_class_projections() {
        let a = &w(&[0, 1]) + &w(&[1, 1]);
        assert_eq!(a.zero_class_projection(2, 1), w(&[0, 1]));
        assert_eq!(x(0).zero_class_projection(1, 1), x(0));
        let b = &(&a + &w(&[0, 0])) + &x(2);
        let total = (0..=2).fold(TensorSeries::zero(ctx()), |acc, k| {
            &acc + &b.zero_class_projection(2, k)
        });
        assert_eq!(total, b.graded_component(2));
    }

    #[test]
    fn derivation_examples() {
        assert_eq!(w(&[0, 1]).tensor_derivation(0), x(1));
        assert_eq!(w(&[1, 1]).tensor_derivation(1), x(1).scale(&rat(2, 1)));
        assert!(w(&[0, 1]).tensor_derivation(2).is_zero());
        assert_eq!(w(&[1, 0, 1]).tensor_derivation(1), &w(&[0, 1]) + &w(&[1, 0]));
    }

    #[test]
    fn display_is_canonical() {
        let a = &(&TensorSeries::constant(ctx(), rat(3, 1)) + &x(0)) + &w(&[1, 0]).scale(&rat(-1, 2));
        assert_eq!(a.to_string(), "3 + 1*X0 + -1/2*X1.X0");
        assert_eq!(TensorSeries::zero(ctx()).to_string(), "0");
    }
}
