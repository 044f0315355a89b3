//! Exact rational and integer linear algebra.
//!
//! [`RatMatrix`] covers determinants (Bareiss), solves, inverses and ranks over
//! `Q`. [`IntMatrix`] carries the integer-only operations: determinants and
//! Smith normal form. [`Jet2`] together with [`det_berkowitz`] evaluates
//! determinants over a ring with zero divisors, where Bareiss' exact division
//! is unavailable.

mod berkowitz;
mod int;
mod jet;
mod matrix;

use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use berkowitz::{char_poly_berkowitz, det_berkowitz, det_berkowitz_jet};
pub use int::{IntMatrix, SmithForm};
pub use jet::Jet2;
pub use matrix::{schur_minor_oracle, RatMatrix, SchurCheck};

/// Exact rational number, always reduced with a positive denominator.
pub type Rat = num_rational::BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Natural logarithm of a positive rational, for reporting only.
///
/// Numerator and denominator are scaled down by powers of two before
/// conversion so that huge values do not overflow `f64`.
pub fn ln_rat(x: &Rat) -> f64 {
    fn ln_big(n: &BigInt) -> f64 {
        let bits = n.bits();
        if bits <= 1000 {
            return libm::log(n.to_f64().unwrap_or(f64::INFINITY));
        }
        let shift = bits - 64;
        let top: BigInt = n >> shift;
        libm::log(top.to_f64().unwrap_or(f64::INFINITY)) + shift as f64 * core::f64::consts::LN_2
    }
    if !x.is_positive() {
        return f64::NAN;
    }
    ln_big(x.numer()) - ln_big(x.denom())
}

/// Errors from exact linear algebra.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error("matrix is singular")]
    SingularMatrix,
}

/// Minimal commutative-ring interface used by the division-free determinant.
pub trait RingElement:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// Additive identity of the same shape as `self`.
    fn zero_like(&self) -> Self;
    /// Multiplicative identity of the same shape as `self`.
    fn one_like(&self) -> Self;
}

impl RingElement for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
}

impl RingElement for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
}

/// Fraction-free Gaussian elimination determinant of a row-major `n x n`
/// buffer. Every division is exact, so this works over `Z` as well as `Q`.
pub(crate) fn bareiss_det<T>(mut a: alloc::vec::Vec<T>, n: usize) -> T
where
    T: Clone
        + Zero
        + One
        + PartialEq
        + Neg<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + core::ops::Div<Output = T>,
{
    if n == 0 {
        return T::one();
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                return T::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let v = (a[i * n + j].clone() * pivot.clone() - lead.clone() * a[k * n + j].clone()) / prev.clone();
                a[i * n + j] = v;
            }
            a[i * n + k] = T::zero();
        }
        prev = pivot;
    }
    let d = a[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}
