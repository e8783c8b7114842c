//! Words (noncommutative monomials) and exponent multi-indices (commutative
//! monomials), plus the zero-count classification of words.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite sequence of indeterminate indices `X_{i1} ⊗ ... ⊗ X_{ir}`.
///
/// Ordered by length first, then lexicographically, so that maps keyed by
/// words iterate degree by degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(j: usize) -> Self {
        Word(vec![j])
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn max_letter(&self) -> Option<usize> {
        self.0.iter().copied().max()
    }

    /// The word with its first letter removed.
    pub fn tail(&self) -> Word {
        Word(self.0.get(1..).unwrap_or_default().to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The word with the letter at `pos` deleted.
    pub fn delete_at(&self, pos: usize) -> Word {
        let mut v = self.0.clone();
        v.remove(pos);
        Word(v)
    }

    /// Number of letters equal to `j`.
    pub fn count(&self, j: usize) -> usize {
        self.0.iter().filter(|&&l| l == j).count()
    }

    pub fn zero_class(&self) -> ZeroClass {
        ZeroClass {
            r: self.len(),
            k: zero_count(self),
        }
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl<const N: usize> From<[usize; N]> for Word {
    fn from(v: [usize; N]) -> Self {
        Word(v.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Textual form `X2.X0.X1`; the empty word prints as `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (pos, l) in self.0.iter().enumerate() {
            if pos > 0 {
                write!(f, ".")?;
            }
            write!(f, "X{l}")?;
        }
        Ok(())
    }
}

/// Finitely supported exponent map of a commutative monomial. Zero exponents
/// are never stored, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ExponentIndex(BTreeMap<usize, u32>);

impl ExponentIndex {
    pub fn one() -> Self {
        ExponentIndex(BTreeMap::new())
    }

    pub fn var(j: usize) -> Self {
        Self::from_pairs([(j, 1)])
    }

    /// Builds from `(index, exponent)` pairs; repeated indices accumulate and
    /// zero exponents are dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (j, e) in pairs {
            if e > 0 {
                *map.entry(j).or_insert(0) += e;
            }
        }
        ExponentIndex(map)
    }

    pub fn exponent(&self, j: usize) -> u32 {
        self.0.get(&j).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.0.values().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|(&j, &e)| (j, e))
    }

    pub fn mul(&self, other: &ExponentIndex) -> ExponentIndex {
        let mut map = self.0.clone();
        for (&j, &e) in &other.0 {
            *map.entry(j).or_insert(0) += e;
        }
        ExponentIndex(map)
    }

    /// Lowers the exponent of `X_j` by one; `None` if `X_j` does not occur.
    pub fn lower(&self, j: usize) -> Option<ExponentIndex> {
        let e = self.exponent(j);
        if e == 0 {
            return None;
        }
        let mut map = self.0.clone();
        if e == 1 {
            map.remove(&j);
        } else {
            map.insert(j, e - 1);
        }
        Some(ExponentIndex(map))
    }

    /// Letters in nondecreasing order: the sorted representative word.
    pub fn sorted_word(&self) -> Word {
        let mut v = Vec::with_capacity(self.degree());
        for (&j, &e) in &self.0 {
            v.extend(std::iter::repeat_n(j, e as usize));
        }
        Word(v)
    }
}

impl Ord for ExponentIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.sorted_word().letters().cmp(other.sorted_word().letters()))
    }
}

impl PartialOrd for ExponentIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Textual form `X0^2*X1`; the empty monomial prints as `1`.
impl fmt::Display for ExponentIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (pos, (j, e)) in self.0.iter().enumerate() {
            if pos > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "X{j}")?;
            } else {
                write!(f, "X{j}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Degree `r` and zero count `k` of a word; identifies the block `B^(r,k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZeroClass {
    pub r: usize,
    pub k: usize,
}

pub fn zero_count(w: &Word) -> usize {
    w.count(0)
}

/// All `(n+1)^r` words of length `r` over `{0..=n}`, in canonical order.
pub fn enumerate_words(n: usize, r: usize) -> Vec<Word> {
    let mut out = vec![Vec::with_capacity(r)];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=n).map(move |j| {
                    let mut w = prefix.clone();
                    w.push(j);
                    w
                })
            })
            .collect();
    }
    let words = out.into_iter().map(Word).collect();
    canonical_order(words).expect("equal lengths by construction")
}

pub fn word_to_exponent(w: &Word) -> ExponentIndex {
    ExponentIndex::from_pairs(w.letters().iter().map(|&j| (j, 1)))
}

/// Every distinct rearrangement of a multiset of letters, in lexicographic
/// order. There are `r! / prod(e_j!)` of them.
pub fn distinct_arrangements(e: &ExponentIndex) -> Vec<Word> {
    let mut letters = e.sorted_word().0;
    let mut out = vec![Word(letters.clone())];
    while next_permutation(&mut letters) {
        out.push(Word(letters.clone()));
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Stable sort by zero count ascending, then lexicographically.
pub fn canonical_order(mut words: Vec<Word>) -> Result<Vec<Word>> {
    if let Some(first) = words.first() {
        let expected = first.len();
        if let Some(bad) = words.iter().find(|w| w.len() != expected) {
            return Err(Error::MixedLengths {
                expected,
                found: bad.len(),
            });
        }
    }
    words.sort_by(|a, b| {
        zero_count(a)
            .cmp(&zero_count(b))
            .then_with(|| a.letters().cmp(b.letters()))
    });
    Ok(words)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
    }

    #[test]
    fn zero_count_examples() {
        assert_eq!(zero_count(&Word::from([0, 3, 0])), 2);
        assert_eq!(zero_count(&Word::empty()), 0);
        assert_eq!(zero_count(&Word::from([1, 2, 3])), 0);
    }

    #[test]
    fn enumerate_small_cases() {
        let w = enumerate_words(1, 2);
        assert_eq!(w.len(), 4);
        for expected in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            assert!(w.contains(&Word::from(expected)));
        }
        assert_eq!(enumerate_words(0, 3), vec![Word::from([0, 0, 0])]);
        assert_eq!(enumerate_words(3, 0), vec![Word::empty()]);
    }

    #[test]
    fn census_matches_binomials() {
        for n in 0..4 {
            for r in 0..4 {
                let words = enumerate_words(n, r);
                assert_eq!(words.len(), (n + 1).pow(r as u32));
                for k in 0..=r {
                    let c = words.iter().filter(|w| zero_count(w) == k).count();
                    assert_eq!(c, binomial(r, k) * n.pow((r - k) as u32), "n={n} r={r} k={k}");
                }
            }
        }
    }

    #[test]
    fn exponent_of_words() {
        assert_eq!(
            word_to_exponent(&Word::from([0, 1, 0])),
            ExponentIndex::from_pairs([(0, 2), (1, 1)])
        );
        assert_eq!(word_to_exponent(&Word::empty()), ExponentIndex::one());
        assert_eq!(word_to_exponent(&Word::from([2, 2, 2])), ExponentIndex::from_pairs([(2, 3)]));
        assert_eq!(word_to_exponent(&Word::from([2, 2, 2])).degree(), 3);
    }

    #[test]
    fn canonical_order_examples() {
        let input = vec![
            Word::from([0, 1]),
            Word::from([1, 0]),
            Word::from([1, 1]),
            Word::from([0, 0]),
        ];
        assert_eq!(
            canonical_order(input).unwrap(),
            vec![
                Word::from([1, 1]),
                Word::from([0, 1]),
                Word::from([1, 0]),
                Word::from([0, 0])
            ]
        );
        assert_eq!(
            canonical_order(vec![Word::from([4, 2])]).unwrap(),
            vec![Word::from([4, 2])]
        );
        assert_eq!(
            canonical_order(vec![Word::from([1, 2]), Word::from([1, 1])]).unwrap(),
            vec![Word::from([1, 1]), Word::from([1, 2])]
        );
    }

    #[test]
    fn canonical_order_rejects_mixed_lengths() {
        let err = canonical_order(vec![Word::from([1]), Word::from([1, 2])]).unwrap_err();
        assert_eq!(err, Error::MixedLengths { expected: 1, found: 2 });
    }

    #[test]
    fn textual_forms() {
        assert_eq!(Word::from([2, 0, 1]).to_string(), "X2.X0.X1");
        assert_eq!(ExponentIndex::from_pairs([(1, 1), (0, 2)]).to_string(), "X0^2*X1");
        assert_eq!(ExponentIndex::one().to_string(), "1");
    }

    #[test]
    fn arrangements_count_is_multinomial() {
        let e = ExponentIndex::from_pairs([(0, 2), (1, 1), (3, 1)]);
        let all = distinct_arrangements(&e);
        assert_eq!(all.len(), 12);
        assert!(all.iter().all(|w| word_to_exponent(w) == e));
        assert_eq!(distinct_arrangements(&ExponentIndex::one()), vec![Word::empty()]);
    }

    #[test]
    fn exponent_lowering() {
        let e = ExponentIndex::from_pairs([(0, 2), (1, 1)]);
        assert_eq!(e.lower(1), Some(ExponentIndex::from_pairs([(0, 2)])));
        assert_eq!(e.lower(0), Some(ExponentIndex::from_pairs([(0, 1), (1, 1)])));
        assert_eq!(e.lower(5), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn abelianization_is_permutation_invariant(
                letters in proptest::collection::vec(0usize..5, 0..6),
                seed in any::<u64>(),
            ) {
                let mut shuffled = letters.clone();
                // deterministic Fisher-Yates from the seed
                let mut s = seed;
                for i in (1..shuffled.len()).rev() {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let j = (s >> 33) as usize % (i + 1);
                    shuffled.swap(i, j);
                }
                prop_assert_eq!(
                    word_to_exponent(&Word::new(letters)),
                    word_to_exponent(&Word::new(shuffled))
                );
            }

            #[test]
            fn canonical_order_is_idempotent(
                words in proptest::collection::vec(proptest::collection::vec(0usize..4, 3), 0..12)
            ) {
                let words: Vec<Word> = words.into_iter().map(Word::new).collect();
                let once = canonical_order(words).unwrap();
                let twice = canonical_order(once.clone()).unwrap();
                prop_assert_eq!(once, twice);
            }
        }
    }
}
