//! Degree-one functional sequences `(phi_n)` and their row-tensor extension
//! to homogeneous tensors of any degree.

use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::Word;
use crate::tensor::TensorSeries;
use crate::Rational;

/// Which functional sits at each position of the sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FunctionalFamily {
    /// Every `phi_n` is the coordinate functional `X_n^*`.
    Coordinate,
    /// `phi_i = psi`, every other `phi_n = X_n^*`. Requires `i >= 1`.
    PsiAt(usize),
    /// Negative control: as `PsiAt(i)` but with `psi(X_0) = 1`.
    CorruptedPsiAt(usize),
}

impl FunctionalFamily {
    pub fn psi_at(i: usize) -> Result<Self> {
        if i == 0 {
            return Err(Error::InvalidArgument("psi may only sit at a position i >= 1".into()));
        }
        Ok(FunctionalFamily::PsiAt(i))
    }

    /// Position of `psi` in the sequence, if any.
    pub fn psi_position(&self) -> Option<usize> {
        match *self {
            FunctionalFamily::Coordinate => None,
            FunctionalFamily::PsiAt(i) | FunctionalFamily::CorruptedPsiAt(i) => Some(i),
        }
    }

    /// `phi_n(X_j)`: the matrix of the family on the degree-one basis.
    pub fn on_letter(&self, n: usize, j: usize) -> Rational {
        let hit = match *self {
            FunctionalFamily::PsiAt(i) if n == i => j >= 1,
            FunctionalFamily::CorruptedPsiAt(i) if n == i => true,
            _ => n == j,
        };
        if hit {
            Rational::one()
        } else {
            Rational::zero()
        }
    }
}

impl fmt::Display for FunctionalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionalFamily::Coordinate => write!(f, "coordinate"),
            FunctionalFamily::PsiAt(i) => write!(f, "psi@{i}"),
            FunctionalFamily::CorruptedPsiAt(i) => write!(f, "corrupted-psi@{i}"),
        }
    }
}

/// `X_n^*`: the coefficient of `X_n` in a degree-one element.
pub fn coordinate(n: usize, a: &TensorSeries) -> Result<Rational> {
    a.check_homogeneous(1)?;
    Ok(a.coeff(&Word::letter(n)))
}

/// `psi(X_0) = 0`, `psi(X_n) = 1` for `n >= 1`, extended linearly over finite
/// support.
pub fn psi(a: &TensorSeries) -> Result<Rational> {
    a.check_homogeneous(1)?;
    Ok(a
        .terms()
        .filter(|(w, _)| w.letters()[0] >= 1)
        .fold(Rational::zero(), |acc, (_, c)| acc + c))
}

pub fn phi(family: FunctionalFamily, n: usize, a: &TensorSeries) -> Result<Rational> {
    match family {
        FunctionalFamily::PsiAt(i) if n == i => psi(a),
        FunctionalFamily::CorruptedPsiAt(i) if n == i => {
            Ok(psi(a)? + coordinate(0, a)?)
        }
        _ => coordinate(n, a),
    }
}

/// Row tensor `phi_{l1} ⊗ ... ⊗ phi_{lr}` applied to a degree-`r` element,
/// peeling the leftmost functional:
/// `phi_{l1}( sum_j X_j * row_tensor(l2.., P_j a) )`, with `j` running up to
/// the context's largest index.
pub fn row_tensor(family: FunctionalFamily, l: &Word, a: &TensorSeries) -> Result<Rational> {
    let r = l.len();
    if r == 0 {
        return Err(Error::LengthMismatch { word: 0, degree: a.degree().unwrap_or(0) });
    }
    if let Some(w) = a.terms().map(|(w, _)| w).find(|w| w.len() != r) {
        return Err(Error::LengthMismatch { word: r, degree: w.len() });
    }
    let head = l.letters()[0];
    if r == 1 {
        return phi(family, head, a);
    }
    let rest = l.tail();
    let ctx = a.ctx();
    let mut inner = TensorSeries::zero(ctx);
    for j in 0..=ctx.max_index {
        let pj = a.left_division(j)?;
        if pj.is_zero() {
            continue;
        }
        let c = row_tensor(family, &rest, &pj)?;
        inner = &inner + &TensorSeries::var(ctx, j).scale(&c);
    }
    phi(family, head, &inner)
}
