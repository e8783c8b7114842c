//! Truncated commutative power series: the algebra on which the extension is
//! built, its identification with symmetric tensors, and partial derivatives.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::index::{distinct_arrangements, word_to_exponent, ExponentIndex};
use crate::tensor::{TensorSeries, TruncationCtx};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommSeries {
    ctx: TruncationCtx,
    coeffs: BTreeMap<ExponentIndex, Rational>,
}

fn admits(ctx: &TruncationCtx, e: &ExponentIndex) -> bool {
    e.degree() <= ctx.max_degree && e.max_index().is_none_or(|j| j <= ctx.max_index)
}

impl CommSeries {
    pub fn zero(ctx: TruncationCtx) -> Self {
        CommSeries {
            ctx,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: TruncationCtx, c: Rational) -> Self {
        Self::from_terms(ctx, [(ExponentIndex::one(), c)])
    }

    pub fn one(ctx: TruncationCtx) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn var(ctx: TruncationCtx, j: usize) -> Self {
        Self::from_terms(ctx, [(ExponentIndex::var(j), Rational::one())])
    }

    pub fn from_terms(
        ctx: TruncationCtx,
        terms: impl IntoIterator<Item = (ExponentIndex, Rational)>,
    ) -> Self {
        let mut s = Self::zero(ctx);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub fn try_from_terms(
        ctx: TruncationCtx,
        terms: impl IntoIterator<Item = (ExponentIndex, Rational)>,
    ) -> Result<Self> {
        let mut s = Self::zero(ctx);
        for (e, c) in terms {
            if !admits(&ctx, &e) {
                return Err(Error::InvalidArgument(format!("monomial {e} lies outside {ctx}")));
            }
            s.add_term(e, c);
        }
        Ok(s)
    }

    fn add_term(&mut self, e: ExponentIndex, c: Rational) {
        if c.is_zero() || !admits(&self.ctx, &e) {
            return;
        }
        match self.coeffs.entry(e) {
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

    pub fn coeff(&self, e: &ExponentIndex) -> Rational {
        self.coeffs.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&ExponentIndex::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentIndex, &Rational)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().map(ExponentIndex::degree).max()
    }

    pub fn restrict(&self, ctx: TruncationCtx) -> CommSeries {
        CommSeries {
            ctx,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| admits(&ctx, e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> CommSeries {
        if c.is_zero() {
            return Self::zero(self.ctx);
        }
        CommSeries {
            ctx: self.ctx,
            coeffs: self.coeffs.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &CommSeries) -> CommSeries {
        let ctx = self.ctx.meet(other.ctx);
        let mut s = self.restrict(ctx);
        for (e, c) in &other.coeffs {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    pub fn sub(&self, other: &CommSeries) -> CommSeries {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Exponent-additive convolution in the meet context.
    pub fn comm_mul(&self, other: &CommSeries) -> CommSeries {
        let ctx = self.ctx.meet(other.ctx);
        let mut s = Self::zero(ctx);
        for (u, a) in &self.coeffs {
            for (v, b) in &other.coeffs {
                if u.degree() + v.degree() <= ctx.max_degree {
                    s.add_term(u.mul(v), a * b);
                }
            }
        }
        s
    }

    pub fn checked_mul(&self, other: &CommSeries) -> Result<CommSeries> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch {
                left: self.ctx,
                right: other.ctx,
            });
        }
        Ok(self.comm_mul(other))
    }

    /// The unique symmetric tensor abelianizing to `self`: each monomial is
    /// spread evenly over its distinct letter arrangements.
    pub fn embed_symmetric(&self) -> TensorSeries {
        let mut terms = Vec::new();
        for (e, c) in &self.coeffs {
            let orbit = distinct_arrangements(e);
            let share = c / Rational::from_integer(orbit.len().into());
            terms.extend(orbit.into_iter().map(|w| (w, share.clone())));
        }
        TensorSeries::from_terms(self.ctx, terms)
    }

    /// Abelianization: sums coefficients over permutation orbits.
    pub fn collapse(a: &TensorSeries) -> CommSeries {
        Self::from_terms(
            a.ctx(),
            a.terms().map(|(w, c)| (word_to_exponent(w), c.clone())),
        )
    }

    pub fn partial_derivative(&self, i: usize) -> CommSeries {
        let mut s = Self::zero(self.ctx);
        for (e, c) in &self.coeffs {
            if let Some(lowered) = e.lower(i) {
                let factor = Rational::from_integer(e.exponent(i).into());
                s.add_term(lowered, c * factor);
            }
        }
        s
    }

    /// Membership in the coefficient algebra for `X_i`: no monomial involves
    /// `X_i`.
    pub fn in_coefficient_algebra(&self, i: usize) -> bool {
        self.coeffs.keys().all(|e| e.exponent(i) == 0)
    }
}

impl Add for &CommSeries {
    type Output = CommSeries;
    fn add(self, rhs: &CommSeries) -> CommSeries {
        CommSeries::add(self, rhs)
    }
}

impl Sub for &CommSeries {
    type Output = CommSeries;
    fn sub(self, rhs: &CommSeries) -> CommSeries {
        CommSeries::sub(self, rhs)
    }
}

impl Mul for &CommSeries {
    type Output = CommSeries;
    fn mul(self, rhs: &CommSeries) -> CommSeries {
        self.comm_mul(rhs)
    }
}

impl Neg for &CommSeries {
    type Output = CommSeries;
    fn neg(self) -> CommSeries {
        self.scale(&-Rational::one())
    }
}

/// Canonical literal: `1 + 1*X0 + 3/2*X0^2*X1`, `0` when empty.
impl fmt::Display for CommSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (pos, (e, c)) in self.coeffs.iter().enumerate() {
            if pos > 0 {
                write!(f, " + ")?;
            }
            if e.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::Word;
    use crate::rat;

    fn ctx() -> TruncationCtx {
        TruncationCtx::new(4, 4)
    }

    fn x(j: usize) -> CommSeries {
        CommSeries::var(ctx(), j)
    }

    fn mono(pairs: &[(usize, u32)], c: Rational) -> CommSeries {
        CommSeries::from_terms(ctx(), [(ExponentIndex::from_pairs(pairs.iter().copied()), c)])
    }

    #[test]
    fn products() {
        assert_eq!(&x(0) * &x(1), mono(&[(0, 1), (1, 1)], rat(1, 1)));
        let one = CommSeries::one(ctx());
        let lhs = &(&one + &x(0)) * &(&one - &x(0));
        assert_eq!(lhs, &one - &mono(&[(0, 2)], rat(1, 1)));
    }

    #[test]
    fn symmetric_embedding() {
        let e = mono(&[(0, 1), (1, 1)], rat(1, 1)).embed_symmetric();
        let tctx = ctx();
        let half = rat(1, 2);
        let expected = TensorSeries::from_terms(
            tctx,
            [(Word::from([0, 1]), half.clone()), (Word::from([1, 0]), half)],
        );
        assert_eq!(e, expected);
        assert_eq!(
            mono(&[(0, 2)], rat(1, 1)).embed_symmetric(),
            TensorSeries::monomial(tctx, Word::from([0, 0]), rat(1, 1))
        );
    }

    #[test]
    fn collapse_examples() {
        let tctx = ctx();
        let half = rat(1, 2);
        let sym = TensorSeries::from_terms(
            tctx,
            [(Word::from([0, 1]), half.clone()), (Word::from([1, 0]), half)],
        );
        assert_eq!(CommSeries::collapse(&sym), mono(&[(0, 1), (1, 1)], rat(1, 1)));
        let anti = TensorSeries::from_terms(
            tctx,
            [(Word::from([0, 1]), rat(1, 1)), (Word::from([1, 0]), rat(-1, 1))],
        );
        assert!(CommSeries::collapse(&anti).is_zero());
    }

    #[test]
    fn partial_derivatives() {
        let one = CommSeries::one(ctx());
        for i in 1..4 {
            for n in 0..5 {
                if n != i {
                    assert_eq!((&x(i) - &x(n)).partial_derivative(i), one);
                }
            }
        }
        // i outside {j, n}
        assert!((&x(2) - &x(3)).partial_derivative(1).is_zero());
        assert_eq!(
            mono(&[(0, 2), (1, 1)], rat(1, 1)).partial_derivative(0),
            mono(&[(0, 1), (1, 1)], rat(2, 1))
        );
    }

    #[test]
    fn coefficient_algebra_membership() {
        assert!((&x(1) + &mono(&[(2, 2)], rat(1, 1))).in_coefficient_algebra(0));
        assert!(!mono(&[(0, 1), (1, 1)], rat(1, 1)).in_coefficient_algebra(0));
        for i in 0..5 {
            assert!(CommSeries::one(ctx()).in_coefficient_algebra(i));
        }
    }

    #[test]
    fn truncation_drops_high_degree() {
        let a = mono(&[(0, 3)], rat(1, 1));
        assert!((&a * &a).is_zero());
        assert!(CommSeries::var(ctx(), 9).is_zero());
    }

    #[test]
    fn display() {
        let a = &CommSeries::one(ctx()) + &mono(&[(0, 2), (1, 1)], rat(3, 2));
        assert_eq!(a.to_string(), "1 + 3/2*X0^2*X1");
    }
}
