//! The upper half-plane, the action of `PSL₂(ℤ)`, reduction to the standard
//! fundamental domain, shortest vectors of the lattice `ℤ + ℤω` and the growth
//! capacity `f(ω) = d(ω)²/Im(ω)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{Real, Scalar};

/// Guard against endless reduction loops caused by rounding in the float tier.
const REDUCTION_CAP: usize = 100_000;

/// A point `ω = x + iy` with `y > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct UpperHalfPoint<S> {
    x: S,
    y: S,
}

impl<S: Scalar> UpperHalfPoint<S> {
    pub fn new(x: S, y: S) -> Result<Self> {
        if !y.is_positive() {
            return Err(Error::NotInUpperHalfPlane);
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> &S {
        &self.x
    }

    pub fn y(&self) -> &S {
        &self.y
    }

    /// `|ω|²`.
    pub fn norm_sq(&self) -> S {
        self.x.square() + self.y.square()
    }

    pub fn to_real(&self, precision: usize) -> UpperHalfPoint<Real> {
        UpperHalfPoint { x: self.x.to_real(precision), y: self.y.to_real(precision) }
    }
}

impl UpperHalfPoint<Real> {
    /// Float point from `f64` coordinates; non-finite input is rejected.
    pub fn from_f64(x: f64, y: f64, precision: usize) -> Result<Self> {
        Self::new(Real::from_f64(x, precision)?, Real::from_f64(y, precision)?)
    }
}

impl<S: fmt::Display> fmt::Display for UpperHalfPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.x, self.y)
    }
}

/// A point of `ℝ ∪ {∞}`, the boundary of the upper half-plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    Infinity,
    Rational(BigRational),
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Infinity => f.write_str("inf"),
            Boundary::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

/// An element `±[[a, b], [c, d]]` of `PSL₂(ℤ)`.
///
/// The sign is normalised so that the first nonzero entry of `(c, d)` is
/// positive; `g` and `−g` therefore compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModularMatrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl ModularMatrix {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(Error::BadDeterminant(det));
        }
        Ok(Self::normalized(a, b, c, d))
    }

    fn normalized(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        debug_assert!((&a * &d - &b * &c).is_one());
        if c.is_negative() || (c.is_zero() && d.is_negative()) {
            Self { a: -a, b: -b, c: -c, d: -d }
        } else {
            Self { a, b, c, d }
        }
    }

    pub fn identity() -> Self {
        Self::normalized(1.into(), 0.into(), 0.into(), 1.into())
    }

    /// `T: ω ↦ ω + 1`.
    pub fn t() -> Self {
        Self::t_pow(&BigInt::one())
    }

    /// `Tⁿ: ω ↦ ω + n`.
    pub fn t_pow(n: &BigInt) -> Self {
        Self::normalized(1.into(), n.clone(), 0.into(), 1.into())
    }

    /// `S: ω ↦ −1/ω`.
    pub fn s() -> Self {
        Self::normalized(0.into(), (-1).into(), 1.into(), 0.into())
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn determinant(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn inverse(&self) -> Self {
        Self::normalized(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    /// The cusp `g·∞`.
    pub fn cusp(&self) -> Boundary {
        self.apply_boundary(&Boundary::Infinity)
    }

    /// Möbius action on the upper half-plane.
    pub fn apply<S: Scalar>(&self, w: &UpperHalfPoint<S>) -> UpperHalfPoint<S> {
        let k = |n: &BigInt| w.x.int_like(n);
        let (a, b, c, d) = (k(&self.a), k(&self.b), k(&self.c), k(&self.d));
        let cx_d = c.clone() * w.x.clone() + d;
        let cy = c.clone() * w.y.clone();
        let denom = cx_d.square() + cy.square();
        let re = (a.clone() * w.x.clone() + b) * cx_d + a * c * w.y.square();
        UpperHalfPoint { x: re / denom.clone(), y: w.y.clone() / denom }
    }

    /// Möbius action on `ℝ ∪ {∞}`.
    pub fn apply_boundary(&self, z: &Boundary) -> Boundary {
        match z {
            Boundary::Infinity if self.c.is_zero() => Boundary::Infinity,
            Boundary::Infinity => Boundary::Rational(BigRational::new(self.a.clone(), self.c.clone())),
            Boundary::Rational(r) => {
                let num = &self.a * r.numer() + &self.b * r.denom();
                let den = &self.c * r.numer() + &self.d * r.denom();
                if den.is_zero() {
                    Boundary::Infinity
                } else {
                    Boundary::Rational(BigRational::new(num, den))
                }
            }
        }
    }
}

impl Mul for &ModularMatrix {
    type Output = ModularMatrix;
    fn mul(self, rhs: &ModularMatrix) -> ModularMatrix {
        ModularMatrix::normalized(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }
}

impl Mul for ModularMatrix {
    type Output = ModularMatrix;
    fn mul(self, rhs: ModularMatrix) -> ModularMatrix {
        &self * &rhs
    }
}

impl fmt::Display for ModularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// `g·ω` for an interior point.
pub fn mobius_apply<S: Scalar>(g: &ModularMatrix, w: &UpperHalfPoint<S>) -> UpperHalfPoint<S> {
    g.apply(w)
}

/// Reduced form of a point: `w = g·w0` with `w0` in the fundamental domain.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction<S> {
    pub g: ModularMatrix,
    pub w0: UpperHalfPoint<S>,
}

/// Moves `w` into `D₀ = {|Re ω| ≤ 1/2, |ω| ≥ 1}` by alternating integer
/// translations and the inversion `S`.
///
/// Boundary points are resolved so that the result is unique:
/// `Re(w0) ∈ [−1/2, 1/2)`, and on the unit circle `Re(w0) ≥ 0` except at the
/// corner `−1/2 + i√3/2`, which has no partner inside the half-open strip.
pub fn reduce_to_fundamental<S: Scalar>(w: &UpperHalfPoint<S>) -> Result<Reduction<S>> {
    let one = w.x.small_int(1);
    let mut g = ModularMatrix::identity();
    let mut z = w.clone();
    for _ in 0..REDUCTION_CAP {
        let n = z.x.round();
        if !n.is_zero() {
            z.x = z.x.clone() - z.x.int_like(&n);
            g = &g * &ModularMatrix::t_pow(&n);
        }
        let r = z.norm_sq();
        match r.cmp_to(&one) {
            Ordering::Less => {
                z = UpperHalfPoint { x: -z.x / r.clone(), y: z.y / r };
                g = &g * &ModularMatrix::s();
            }
            Ordering::Equal => {
                let half = z.x.ratio_like(&BigRational::new((-1).into(), 2.into()));
                if z.x.signum() == Ordering::Less && z.x.cmp_to(&half) == Ordering::Greater {
                    z = UpperHalfPoint { x: -z.x, y: z.y };
                    g = &g * &ModularMatrix::s();
                }
                return Ok(Reduction { g, w0: z });
            }
            Ordering::Greater => return Ok(Reduction { g, w0: z }),
        }
    }
    Err(Error::IterationCap(REDUCTION_CAP))
}

/// Coefficients of the lattice vector `α + βω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    pub alpha: BigInt,
    pub beta: BigInt,
}

/// Shortest nonzero vector of `ℤ + ℤω`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShortestVector<S> {
    /// `d(ω)²`, exact in the surd tier.
    pub norm_sq: S,
    pub witness: LatticeVector,
}

impl<S: Scalar> ShortestVector<S> {
    /// `d(ω)` itself, which in general leaves the quadratic field.
    pub fn length(&self, precision: usize) -> Real {
        self.norm_sq.to_real(precision).sqrt()
    }
}

/// `|α + βω|² = α² + 2xαβ + (x² + y²)β²`.
pub fn lattice_norm_sq<S: Scalar>(w: &UpperHalfPoint<S>, alpha: &BigInt, beta: &BigInt) -> S {
    let a = w.x.int_like(alpha);
    let b = w.x.int_like(beta);
    a.square() + w.x.small_int(2) * w.x.clone() * a * b.clone() + w.norm_sq() * b.square()
}

/// Lagrange–Gauss reduced basis of `ℤ + ℤω` with squared norms, shortest first.
pub fn reduced_basis<S: Scalar>(w: &UpperHalfPoint<S>) -> [(LatticeVector, S); 2] {
    // Gram form on coefficient pairs: <(a1,b1),(a2,b2)> = a1a2 + x(a1b2+a2b1) + |ω|²b1b2
    let gram = |u: &(BigInt, BigInt), v: &(BigInt, BigInt)| -> S {
        let k = |n: BigInt| w.x.int_like(&n);
        k(&u.0 * &v.0) + w.x.clone() * k(&u.0 * &v.1 + &v.0 * &u.1) + w.norm_sq() * k(&u.1 * &v.1)
    };
    let mut u = (BigInt::one(), BigInt::zero());
    let mut v = (BigInt::zero(), BigInt::one());
    let mut nu = gram(&u, &u);
    let mut nv = gram(&v, &v);
    if nv.cmp_to(&nu) == Ordering::Less {
        std::mem::swap(&mut u, &mut v);
        std::mem::swap(&mut nu, &mut nv);
    }
    for _ in 0..REDUCTION_CAP {
        let m = (gram(&u, &v) / nu.clone()).round();
        if !m.is_zero() {
            v = (&v.0 - &m * &u.0, &v.1 - &m * &u.1);
            nv = gram(&v, &v);
        }
        if nv.cmp_to(&nu) == Ordering::Less {
            std::mem::swap(&mut u, &mut v);
            std::mem::swap(&mut nu, &mut nv);
        } else {
            break;
        }
    }
    [(LatticeVector { alpha: u.0, beta: u.1 }, nu), (LatticeVector { alpha: v.0, beta: v.1 }, nv)]
}

/// Shortest nonzero vector of `ℤ + ℤω` by Lagrange–Gauss reduction.
pub fn shortest_vector<S: Scalar>(w: &UpperHalfPoint<S>) -> ShortestVector<S> {
    let [(witness, norm_sq), _] = reduced_basis(w);
    ShortestVector { norm_sq, witness }
}

/// Growth capacity `f(ω) = d(ω)²/Im(ω)`, computed as `1/Im(w0)` after reduction.
pub fn growth_capacity<S: Scalar>(w: &UpperHalfPoint<S>) -> Result<S> {
    let red = reduce_to_fundamental(w)?;
    Ok(red.w0.y.small_int(1) / red.w0.y)
}

/// Growth capacity through the shortest vector, independent of the reduction.
pub fn growth_capacity_direct<S: Scalar>(w: &UpperHalfPoint<S>) -> S {
    shortest_vector(w).norm_sq / w.y.clone()
}

/// A horocycle: circle tangent to the real axis at `cusp`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentCircle<S> {
    pub cusp: BigRational,
    pub diameter: S,
}

impl<S: Scalar> TangentCircle<S> {
    /// Signed distance of `w` to the circle, zero when `w` lies on it.
    pub fn offset(&self, w: &UpperHalfPoint<S>) -> S {
        // |w − (c + ir)|² − r² = (x − c)² + y² − y·D
        let dx = w.x.clone() - w.x.ratio_like(&self.cusp);
        dx.square() + w.y.square() - w.y.clone() * self.diameter.clone()
    }
}

/// The circle through `w` tangent to `ℝ` at the cusp of the triangle of the
/// tiling containing `w`; its diameter times `q²` is `f(w)`.
pub fn tangent_circle<S: Scalar>(w: &UpperHalfPoint<S>) -> Result<TangentCircle<S>> {
    let red = reduce_to_fundamental(w)?;
    let cusp = match red.g.cusp() {
        Boundary::Infinity => return Err(Error::CuspAtInfinity),
        Boundary::Rational(r) => r,
    };
    let q = w.y.int_like(cusp.denom());
    let f = red.w0.y.small_int(1) / red.w0.y;
    Ok(TangentCircle { cusp, diameter: f / q.square() })
}

/// Brute-force minimum of `|α + βω|²` over `|α|, |β| ≤ bound`, `(α, β) ≠ 0`.
///
/// Used to cross-check [`shortest_vector`]; exact when the true minimiser lies
/// inside the box.
pub fn shortest_vector_naive<S: Scalar>(w: &UpperHalfPoint<S>, bound: i64) -> S {
    let mut best: Option<S> = None;
    for beta in 0..=bound {
        let lo = if beta == 0 { 1 } else { -bound };
        for alpha in lo..=bound {
            let n = lattice_norm_sq(w, &BigInt::from(alpha), &BigInt::from(beta));
            if best.as_ref().is_none_or(|b| n.cmp_to(b) == Ordering::Less) {
                best = Some(n);
            }
        }
    }
    best.expect("box is nonempty")
}
