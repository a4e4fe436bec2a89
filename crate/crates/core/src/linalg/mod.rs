//! Exact rational linear algebra.
//!
//! Everything here works over `malachite_q::Rational`. The only place floats
//! appear is [`spectral`], which splits a self-adjoint operator into
//! eigenvalue clusters and is always followed by exact re-validation in the
//! callers.

mod echelon;
mod matrix;
pub mod spectral;
mod subspace;

use thiserror::Error;

pub use echelon::{kernel, rank, Echelon, SparseRow};
pub use matrix::RationalMatrix;
pub use spectral::{symmetric_eigensplit, EigenCluster};
pub use subspace::{orthogonal_projection, Coordinatizer, SubspaceBasis};

pub use malachite_q::Rational;

use malachite_base::num::arithmetic::traits::Abs;
use malachite_base::num::basic::traits::{One, Zero};
use malachite_base::num::conversion::traits::RoundingFrom;
use malachite_base::rounding_modes::RoundingMode;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("inner product is not positive definite on the target subspace")]
    NotPositiveDefinite,
    #[error("operator is not self-adjoint (residual {residual:e} >= tol {tol:e})")]
    NotSelfAdjoint { residual: f64, tol: f64 },
    #[error("indistinguishable spectrum: eigenvalue gap {gap:e} too close to tol {tol:e}")]
    IndistinguishableSpectrum { gap: f64, tol: f64 },
    #[error("vector does not lie in the subspace")]
    NotInSubspace,
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from(n)
}

/// `p/q` as a reduced rational. Panics if `q == 0`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::from_signeds(p, q)
}

pub fn zero() -> Rational {
    Rational::ZERO
}

pub fn one() -> Rational {
    Rational::ONE
}

pub fn to_f64(x: &Rational) -> f64 {
    f64::rounding_from(x, RoundingMode::Nearest).0
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

/// Simplest rational within `tol` of `x`.
pub fn simplest_near(x: f64, tol: f64) -> Option<Rational> {
    use malachite_q::rational::arithmetic::traits::SimplestRationalInInterval;
    let lo = Rational::try_from(x - tol).ok()?;
    let hi = Rational::try_from(x + tol).ok()?;
    Some(Rational::simplest_rational_in_closed_interval(&lo, &hi))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::ZERO;
    for (x, y) in a.iter().zip(b) {
        if *x != 0u32 && *y != 0u32 {
            acc += x * y;
        }
    }
    acc
}

/// `a += c * b`
pub fn axpy(a: &mut [Rational], c: &Rational, b: &[Rational]) {
    if *c == 0u32 {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if *y != 0u32 {
            *x += c * y;
        }
    }
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| *x == 0u32)
}

pub fn max_abs_f64(v: &[Rational]) -> f64 {
    v.iter().map(|x| to_f64(x).abs()).fold(0.0, f64::max)
}
