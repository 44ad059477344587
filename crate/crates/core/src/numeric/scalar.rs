use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::real::Real;
use super::surd::QuadraticSurd;

/// Ordered field operations shared by the exact tier ([`QuadraticSurd`]) and
/// the float tier ([`Real`]).
///
/// Geometry routines are written once against this trait. For surds every
/// value involved in one computation must live in the same quadratic field;
/// mixing fields panics inside the operators.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// An integer in the same tier (and precision) as `self`.
    fn int_like(&self, n: &BigInt) -> Self;

    fn ratio_like(&self, r: &BigRational) -> Self;

    fn cmp_to(&self, other: &Self) -> Ordering;

    fn floor(&self) -> BigInt;

    fn to_real(&self, precision: usize) -> Real;

    fn is_exact() -> bool;

    fn small_int(&self, n: i64) -> Self {
        self.int_like(&BigInt::from(n))
    }

    fn signum(&self) -> Ordering {
        self.cmp_to(&self.small_int(0))
    }

    fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    /// Nearest integer, ties rounded up.
    fn round(&self) -> BigInt {
        let half = self.ratio_like(&BigRational::new(1.into(), 2.into()));
        (self.clone() + half).floor()
    }
}

impl Scalar for QuadraticSurd {
    fn int_like(&self, n: &BigInt) -> Self {
        QuadraticSurd::from_int(n.clone())
    }

    fn ratio_like(&self, r: &BigRational) -> Self {
        QuadraticSurd::from_ratio(r)
    }

    fn cmp_to(&self, other: &Self) -> Ordering {
        self.checked_cmp(other).unwrap_or_else(|e| panic!("{}", e))
    }

    fn floor(&self) -> BigInt {
        QuadraticSurd::floor(self)
    }

    fn to_real(&self, precision: usize) -> Real {
        QuadraticSurd::to_real(self, precision)
    }

    fn is_exact() -> bool {
        true
    }

    fn signum(&self) -> Ordering {
        QuadraticSurd::signum(self)
    }
}

impl Scalar for Real {
    fn int_like(&self, n: &BigInt) -> Self {
        self.big_int_like(n)
    }

    fn ratio_like(&self, r: &BigRational) -> Self {
        Real::ratio_like(self, r)
    }

    fn cmp_to(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn floor(&self) -> BigInt {
        Real::floor(self)
    }

    fn to_real(&self, precision: usize) -> Real {
        self.with_precision(precision)
    }

    fn is_exact() -> bool {
        false
    }

    fn signum(&self) -> Ordering {
        Real::signum(self)
    }
}
