//! Deterministic seeded generators of random algebra elements for the
//! verification suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::comm::CommSeries;
use crate::extension::ExtElement;
use crate::index::{ExponentIndex, Word};
use crate::tensor::{TensorSeries, TruncationCtx};
use crate::Rational;

pub struct SampleGen {
    rng: ChaCha8Rng,
}

impl SampleGen {
    pub fn new(seed: u64) -> Self {
        SampleGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Derives an independent stream, so suites do not perturb each other.
    pub fn fork(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        SampleGen { rng }
    }

    /// Nonzero `p/q` with `|p| <= 5`, `1 <= q <= 4`.
    pub fn rational(&mut self) -> Rational {
        let mut p: i64 = self.rng.gen_range(1..=5);
        if self.rng.gen_bool(0.5) {
            p = -p;
        }
        let q: i64 = self.rng.gen_range(1..=4);
        Rational::new(p.into(), q.into())
    }

    pub fn word(&mut self, max_index: usize, len: usize) -> Word {
        Word::new((0..len).map(|_| self.rng.gen_range(0..=max_index)).collect())
    }

    /// Up to `terms` terms of degree at most `max_degree` with letters up to
    /// `ctx.max_index`.
    pub fn tensor(&mut self, ctx: TruncationCtx, max_degree: usize, terms: usize) -> TensorSeries {
        let max_degree = max_degree.min(ctx.max_degree);
        let count = self.rng.gen_range(1..=terms.max(1));
        let list: Vec<(Word, Rational)> = (0..count)
            .map(|_| {
                let len = self.rng.gen_range(0..=max_degree);
                (self.word(ctx.max_index, len), self.rational())
            })
            .collect();
        TensorSeries::from_terms(ctx, list)
    }

    /// Homogeneous of degree `r` over the alphabet `{0..n}`.
    pub fn homogeneous(&mut self, ctx: TruncationCtx, r: usize, n: usize, terms: usize) -> TensorSeries {
        let n = n.min(ctx.max_index);
        let count = self.rng.gen_range(1..=terms.max(1));
        let list: Vec<(Word, Rational)> = (0..count)
            .map(|_| (self.word(n, r), self.rational()))
            .collect();
        TensorSeries::from_terms(ctx, list)
    }

    pub fn exponent(&mut self, max_index: usize, degree: usize) -> ExponentIndex {
        ExponentIndex::from_pairs((0..degree).map(|_| (self.rng.gen_range(0..=max_index), 1)))
    }

    pub fn comm(&mut self, ctx: TruncationCtx, max_degree: usize, terms: usize) -> CommSeries {
        let max_degree = max_degree.min(ctx.max_degree);
        let count = self.rng.gen_range(1..=terms.max(1));
        let list: Vec<(ExponentIndex, Rational)> = (0..count)
            .map(|_| {
                let deg = self.rng.gen_range(0..=max_degree);
                (self.exponent(ctx.max_index, deg), self.rational())
            })
            .collect();
        CommSeries::from_terms(ctx, list)
    }

    pub fn ext(&mut self, ctx: TruncationCtx, max_degree: usize, terms: usize) -> ExtElement {
        let x = self.comm(ctx, max_degree, terms);
        let m = self.comm(ctx, max_degree, terms);
        ExtElement::new(x, m)
    }

    pub fn index(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }
}
