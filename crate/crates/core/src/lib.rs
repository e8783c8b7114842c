//! Exact computations with truncated power series in countably many
//! indeterminates, their noncommutative analogue, the seminorm families that
//! distinguish topologies on them, and the square-zero extension.
//!
//! Every coefficient is an arbitrary-precision rational and every check is
//! an exact identity or inequality.

pub mod comm;
pub mod error;
pub mod exact;
pub mod extension;
pub mod functionals;
pub mod index;
pub mod literal;
pub mod psi;
pub mod random;
pub mod report;
pub mod seminorms;
pub mod tensor;

pub use comm::CommSeries;
pub use error::{Error, Result};
pub use exact::Exact;
pub use extension::{ExtElement, ExtFamily, ExtSeminormKind};
pub use functionals::FunctionalFamily;
pub use index::{ExponentIndex, Word, ZeroClass};
pub use psi::PsiMatrix;
pub use seminorms::{Seminorm, SeminormParams, Verdict};
pub use tensor::{TensorSeries, TruncationCtx};

pub type Rational = num::BigRational;

/// `p/q` as an exact rational.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}
