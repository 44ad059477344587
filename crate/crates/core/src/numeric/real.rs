//! Binary floating point numbers with a configurable number of significant bits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, Sign, UBig};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

type Float = FBig<HalfEven, 2>;

/// Default working precision of the float tier, in bits.
pub const DEFAULT_PRECISION: usize = 128;

/// Smallest precision accepted anywhere in the crate.
pub const MIN_PRECISION: usize = 64;

/// A real number carried with a fixed number of significand bits.
///
/// Binary operations run at the larger precision of the two operands;
/// integer and rational constants brought in through [`Real::int_like`] and
/// friends adopt the precision of the value they are combined with.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Real(Float);

pub(crate) fn to_ibig(n: &BigInt) -> IBig {
    let (sign, bytes) = n.to_bytes_le();
    let magnitude = UBig::from_le_bytes(&bytes);
    let sign = if sign == num_bigint::Sign::Minus { Sign::Negative } else { Sign::Positive };
    IBig::from_parts(sign, magnitude)
}

pub(crate) fn from_ibig(n: IBig) -> BigInt {
    let (sign, magnitude) = n.into_parts();
    let sign = match sign {
        Sign::Negative => num_bigint::Sign::Minus,
        Sign::Positive => num_bigint::Sign::Plus,
    };
    BigInt::from_bytes_le(sign, &magnitude.to_le_bytes())
}

impl Real {
    fn wrap(value: Float, precision: usize) -> Self {
        Real(value.with_precision(precision).value())
    }

    pub fn from_int(n: &BigInt, precision: usize) -> Self {
        Self::wrap(Float::from(to_ibig(n)), precision)
    }

    pub fn from_i64(n: i64, precision: usize) -> Self {
        Self::wrap(Float::from(n), precision)
    }

    pub fn from_ratio(r: &BigRational, precision: usize) -> Self {
        Self::from_int(r.numer(), precision) / Self::from_int(r.denom(), precision)
    }

    /// Exact conversion of a finite `f64`; non-finite inputs are rejected.
    pub fn from_f64(value: f64, precision: usize) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NonFinite);
        }
        let float = Float::try_from(value).map_err(|_| Error::NonFinite)?;
        Ok(Self::wrap(float, precision))
    }

    /// `n / 2^shift`, exact when `precision` covers the bits of `n`.
    pub fn from_scaled(n: &BigInt, shift: isize, precision: usize) -> Self {
        Self::wrap(Float::from_parts(to_ibig(n), -shift), precision)
    }

    pub fn pi(precision: usize) -> Self {
        Real(Float::pi(precision))
    }

    pub fn precision(&self) -> usize {
        self.0.precision()
    }

    /// Same value rounded to a different precision.
    pub fn with_precision(&self, precision: usize) -> Self {
        Self::wrap(self.0.clone(), precision)
    }

    pub fn int_like(&self, n: i64) -> Self {
        Self::from_i64(n, self.precision())
    }

    pub fn big_int_like(&self, n: &BigInt) -> Self {
        Self::from_int(n, self.precision())
    }

    pub fn ratio_like(&self, r: &BigRational) -> Self {
        Self::from_ratio(r, self.precision())
    }

    pub fn zero(precision: usize) -> Self {
        Self::from_i64(0, precision)
    }

    pub fn one(precision: usize) -> Self {
        Self::from_i64(1, precision)
    }

    pub fn sqrt(&self) -> Self {
        Real(self.0.sqrt())
    }

    pub fn ln(&self) -> Self {
        Real(self.0.ln())
    }

    pub fn exp(&self) -> Self {
        Real(self.0.exp())
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn floor(&self) -> BigInt {
        from_ibig(self.0.floor().to_int().value())
    }

    pub fn is_zero(&self) -> bool {
        self.0 == Float::ZERO
    }

    pub fn is_negative(&self) -> bool {
        self.0 < Float::ZERO
    }

    pub fn is_positive(&self) -> bool {
        self.0 > Float::ZERO
    }

    pub fn signum(&self) -> Ordering {
        self.0.cmp(&Float::ZERO)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Decimal rendering with `digits` digits after the point (truncated toward zero).
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10).pow(digits as u32);
        let scaled = (self.abs() * self.big_int_like(&scale)).floor();
        let (int_part, frac_part) = num_integer::Integer::div_rem(&scaled, &scale);
        let sign = if self.is_negative() && !scaled.is_zero() { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{:0>width$}", frac_part.abs(), width = digits)
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_decimal(30))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // bits * log10(2), less a guard digit
        let digits = (self.precision() as f64 * std::f64::consts::LOG10_2) as usize;
        f.write_str(&self.to_decimal(digits.saturating_sub(2).max(1)))
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident) => {
        impl $Trait for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                Real($Trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $Trait<&'a Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                Real($Trait::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $Trait<&'a Real> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                Real($Trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bigint_round_trip() {
        for s in ["0", "-1", "123456789012345678901234567890", "-98765432109876543210"] {
            let n: BigInt = s.parse().unwrap();
            assert_eq!(from_ibig(to_ibig(&n)), n);
        }
    }

    #[test]
    fn floor_and_decimal() {
        let x = Real::from_f64(-2.5, 128).unwrap();
        assert_eq!(x.floor(), BigInt::from(-3));
        assert_eq!(x.to_decimal(3), "-2.500");
        let third = Real::one(128) / Real::from_i64(3, 128);
        assert_eq!(third.to_decimal(10), "0.3333333333");
    }

    #[test]
    fn sqrt_two_is_accurate_to_precision() {
        let s = Real::from_i64(2, 200).sqrt();
        let err = (&s * &s - s.int_like(2)).abs();
        assert!(err < Real::from_scaled(&BigInt::from(1), 190, 200));
    }

    #[test]
    fn non_finite_is_rejected() {
        assert_eq!(Real::from_f64(f64::NAN, 128), Err(Error::NonFinite));
        assert_eq!(Real::from_f64(f64::INFINITY, 128), Err(Error::NonFinite));
    }

    #[test]
    fn constants_adopt_precision() {
        let x = Real::from_i64(7, 256);
        assert_eq!(x.int_like(3).precision(), 256);
        assert_eq!((x.clone() + x.int_like(1)).precision(), 256);
    }
}
