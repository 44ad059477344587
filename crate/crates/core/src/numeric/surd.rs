//! Exact real quadratic irrationals `(a + b·√d)/c`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::real::Real;
use crate::error::{Error, Result};

/// Splits `n ≥ 0` as `square² · core` with `core` squarefree.
///
/// Trial division stops once the cube of the candidate divisor exceeds the
/// unfactored cofactor; what is left then has at most two prime factors,
/// so it is either a prime square or already squarefree.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_negative(), "squarefree_decompose of a negative number");
    if n.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut core = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p * &p <= rest {
        let p2 = &p * &p;
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            square *= &p;
        }
        if (&rest % &p).is_zero() {
            rest /= &p;
            core *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    let r = rest.sqrt();
    if &r * &r == rest && !rest.is_one() {
        square *= r;
    } else {
        core *= rest;
    }
    (square, core)
}

/// An exact real number `(a + b·√d)/c` in canonical form.
///
/// Canonical form: `c > 0`, `d` squarefree, `d > 1` exactly when `b ≠ 0`
/// (rationals carry `b = d = 0`), and `gcd(a, b, c) = 1`. Two surds are
/// equal iff their fields are equal.
///
/// Arithmetic operators panic when both operands are irrational with
/// different radicands; the `checked_*` methods report that as
/// [`Error::Incomparable`] instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl QuadraticSurd {
    /// Builds `(a + b·√d)/c` and brings it to canonical form.
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let (mut a, mut b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if c.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if d.is_negative() {
            return Err(Error::NegativeRadicand(d));
        }
        let (square, core) = squarefree_decompose(&d);
        b *= square;
        let core = if core.is_one() {
            a += &b;
            b = BigInt::zero();
            BigInt::zero()
        } else {
            core
        };
        Ok(Self::reduced(a, b, c, core))
    }

    /// Canonicalizes assuming `d` is already squarefree (or zero).
    pub(crate) fn reduced(mut a: BigInt, mut b: BigInt, mut c: BigInt, mut d: BigInt) -> Self {
        assert!(!c.is_zero(), "zero denominator");
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        if b.is_zero() || d.is_zero() {
            b = BigInt::zero();
            d = BigInt::zero();
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        QuadraticSurd { a, b, c, d }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        QuadraticSurd { a: n.into(), b: BigInt::zero(), c: BigInt::one(), d: BigInt::zero() }
    }

    pub fn from_ratio(r: &BigRational) -> Self {
        Self::reduced(r.numer().clone(), BigInt::zero(), r.denom().clone(), BigInt::zero())
    }

    pub fn from_fraction(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        Self::new(p, 0, q, 0)
    }

    /// `√n` for a non-negative integer `n`.
    pub fn sqrt_of(n: impl Into<BigInt>) -> Result<Self> {
        Self::new(0, 1, 1, n)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn phi() -> Self {
        Self::reduced(1.into(), 1.into(), 2.into(), 5.into())
    }

    /// The silver ratio `1 + √2`.
    pub fn psi() -> Self {
        Self::reduced(1.into(), 1.into(), 1.into(), 2.into())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// Squarefree radicand; zero for rationals.
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.c.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| BigRational::new(self.a.clone(), self.c.clone()))
    }

    pub fn conjugate(&self) -> Self {
        QuadraticSurd { a: self.a.clone(), b: -&self.b, c: self.c.clone(), d: self.d.clone() }
    }

    /// Radicand shared by `self` and `other`, if any.
    pub fn common_radicand(&self, other: &Self) -> Result<BigInt> {
        match (self.d.is_zero(), other.d.is_zero()) {
            (true, _) => Ok(other.d.clone()),
            (_, true) => Ok(self.d.clone()),
            _ if self.d == other.d => Ok(self.d.clone()),
            _ => Err(Error::Incomparable(self.d.clone(), other.d.clone())),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::reduced(
            &self.a * &other.c + &other.a * &self.c,
            &self.b * &other.c + &other.b * &self.c,
            &self.c * &other.c,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::reduced(
            &self.a * &other.a + &self.b * &other.b * &d,
            &self.a * &other.b + &self.b * &other.a,
            &self.c * &other.c,
            d,
        ))
    }

    /// `1/self`, computed through the conjugate.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        Ok(Self::reduced(&self.c * &self.a, -&self.c * &self.b, norm, self.d.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.common_radicand(other)?;
        self.checked_mul(&other.recip()?)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Multiplies by an integer.
    pub fn scale(&self, k: &BigInt) -> Self {
        Self::reduced(&self.a * k, &self.b * k, self.c.clone(), self.d.clone())
    }

    /// Sign of the value, decided with integer arithmetic only.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.sign();
        let sb = self.b.sign();
        use num_bigint::Sign::*;
        match (sa, sb) {
            (_, NoSign) => sign_to_ordering(sa),
            (NoSign, _) => sign_to_ordering(sb),
            (x, y) if x == y => sign_to_ordering(sa),
            _ => {
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * &self.d;
                if a2 > b2d {
                    sign_to_ordering(sa)
                } else {
                    sign_to_ordering(sb)
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact comparison; fails when both sides are irrational in different fields.
    pub fn checked_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.signum())
    }

    /// `⌊b·√d⌋`; `b√d` is irrational whenever `b ≠ 0`.
    fn floor_irrational_part(&self) -> BigInt {
        if self.b.is_zero() {
            return BigInt::zero();
        }
        let r = (&self.b * &self.b * &self.d).sqrt();
        if self.b.is_positive() {
            r
        } else {
            -r - 1
        }
    }

    pub fn floor(&self) -> BigInt {
        let m = &self.a + self.floor_irrational_part();
        m.div_floor(&self.c)
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Nearest integer, ties rounded up.
    pub fn round(&self) -> BigInt {
        (self + &Self::reduced(1.into(), 0.into(), 2.into(), 0.into())).floor()
    }

    /// Conversion to the float tier, free of cancellation between `a` and `b√d`.
    pub fn to_real(&self, precision: usize) -> Real {
        let work = precision + 32;
        let c = Real::from_int(&self.c, work);
        let value = if self.b.is_zero() {
            Real::from_int(&self.a, work) / c
        } else {
            let b2d = &self.b * &self.b * &self.d;
            let mut root = Real::from_int(&b2d, work).sqrt();
            if self.b.is_negative() {
                root = -root;
            }
            let a = Real::from_int(&self.a, work);
            if self.a.is_zero() || self.a.sign() == self.b.sign() {
                (a + root) / c
            } else {
                let norm = &self.a * &self.a - b2d;
                Real::from_int(&norm, work) / ((a - root) * c)
            }
        };
        value.with_precision(precision)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_real(64).to_f64()
    }
}

fn sign_to_ordering(s: num_bigint::Sign) -> Ordering {
    match s {
        num_bigint::Sign::Minus => Ordering::Less,
        num_bigint::Sign::NoSign => Ordering::Equal,
        num_bigint::Sign::Plus => Ordering::Greater,
    }
}

impl PartialOrd for QuadraticSurd {
    /// `None` when the operands live in different quadratic fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.checked_cmp(other).ok()
    }
}

impl From<i64> for QuadraticSurd {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigInt> for QuadraticSurd {
    fn from(n: BigInt) -> Self {
        Self::from_int(n)
    }
}

impl From<&BigRational> for QuadraticSurd {
    fn from(r: &BigRational) -> Self {
        Self::from_ratio(r)
    }
}

macro_rules! surd_binop {
    ($Trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $Trait<&'a QuadraticSurd> for &'a QuadraticSurd {
            type Output = QuadraticSurd;
            fn $method(self, rhs: &'a QuadraticSurd) -> QuadraticSurd {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $Trait for QuadraticSurd {
            type Output = QuadraticSurd;
            fn $method(self, rhs: QuadraticSurd) -> QuadraticSurd {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $Trait<&'a QuadraticSurd> for QuadraticSurd {
            type Output = QuadraticSurd;
            fn $method(self, rhs: &'a QuadraticSurd) -> QuadraticSurd {
                (&self).$method(rhs)
            }
        }
    };
}

surd_binop!(Add, add, checked_add);
surd_binop!(Sub, sub, checked_sub);
surd_binop!(Mul, mul, checked_mul);
surd_binop!(Div, div, checked_div);

impl Neg for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn neg(self) -> QuadraticSurd {
        QuadraticSurd { a: -&self.a, b: -&self.b, c: self.c.clone(), d: self.d.clone() }
    }
}

impl Neg for QuadraticSurd {
    type Output = QuadraticSurd;
    fn neg(self) -> QuadraticSurd {
        -&self
    }
}

impl fmt::Display for QuadraticSurd {
    /// Prints the literal syntax accepted by [`crate::parse_surd`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return if self.c.is_one() { write!(f, "{}", self.a) } else { write!(f, "{}/{}", self.a, self.c) };
        }
        let magnitude = self.b.abs();
        let root =
            if magnitude.is_one() { format!("sqrt({})", self.d) } else { format!("{}*sqrt({})", magnitude, self.d) };
        let sign = if self.b.is_negative() { "-" } else { "+" };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            if self.c.is_one() {
                write!(f, "{lead}{root}")
            } else {
                write!(f, "{lead}{root}/{}", self.c)
            }
        } else if self.c.is_one() {
            write!(f, "{}{sign}{root}", self.a)
        } else {
            write!(f, "({}{sign}{root})/{}", self.a, self.c)
        }
    }
}

impl fmt::Debug for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadraticSurd({self})")
    }
}
