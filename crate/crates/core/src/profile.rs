//! The capacity profile `t ↦ f(x + i/t)` of an irrational surd `x`: Hermite
//! convergents, the convex pieces `A t + B/t` they index, the breakpoints
//! between pieces and the local minima.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::modular::{reduce_to_fundamental, Boundary, UpperHalfPoint};
use crate::numeric::{cf_expand, ContinuedFraction, Convergent, QuadraticSurd, Real};

/// A classical convergent that passes the Humbert test.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HermiteConvergent {
    pub convergent: Convergent,
    /// Position within the Hermite subsequence, starting at 0.
    pub rank: usize,
}

fn require_irrational(x: &QuadraticSurd) -> Result<()> {
    if x.is_rational() {
        Err(Error::RationalInput)
    } else {
        Ok(())
    }
}

/// Humbert's criterion: `p/q` is a Hermite convergent of `x` iff
/// `u < q(q + 2q') / (2(q² + qq' + q'²))`, where `u = q|p − qx|` and
/// `0 ≤ q' < q` solves `p q' ≡ ε (mod q)` with `ε` the sign of `p − qx`.
pub fn humbert_is_hermite(x: &QuadraticSurd, p: &BigInt, q: &BigInt) -> Result<bool> {
    require_irrational(x)?;
    if !q.is_positive() {
        return Err(Error::invalid("denominator must be positive"));
    }
    if !p.gcd(q).is_one() {
        return Err(Error::NotIrreducible(p.clone(), q.clone()));
    }
    let diff = QuadraticSurd::from_int(p.clone()) - x.scale(q);
    let eps = if diff.is_positive() { BigInt::one() } else { -BigInt::one() };
    let u = diff.abs().scale(q);
    let q_prime = if q.is_one() { BigInt::zero() } else { (p.extended_gcd(q).x * eps).mod_floor(q) };
    let num = q * (q + BigInt::from(2) * &q_prime);
    let den = BigInt::from(2) * (q * q + q * &q_prime + &q_prime * &q_prime);
    let threshold = QuadraticSurd::from_fraction(num, den)?;
    Ok(u.checked_cmp(&threshold)? == Ordering::Less)
}

fn hermite_iter<'a>(x: &'a QuadraticSurd, cf: &'a ContinuedFraction) -> impl Iterator<Item = HermiteConvergent> + 'a {
    cf.convergent_iter()
        .filter(move |c| humbert_is_hermite(x, &c.p, &c.q).expect("convergents are irreducible"))
        .enumerate()
        .map(|(rank, convergent)| HermiteConvergent { convergent, rank })
}

/// The Hermite convergents among the first `count` classical convergents.
pub fn hermite_convergents(x: &QuadraticSurd, count: usize) -> Result<Vec<HermiteConvergent>> {
    let cf = cf_expand(x)?;
    Ok(cf
        .convergents(count)
        .into_iter()
        .filter(|c| humbert_is_hermite(x, &c.p, &c.q).expect("convergents are irreducible"))
        .enumerate()
        .map(|(rank, convergent)| HermiteConvergent { convergent, rank })
        .collect())
}

/// Cusps of the tiles crossed by the vertical geodesic `x + i/t`, `1 ≤ t ≤ t_max`,
/// in order of first appearance.
///
/// Samples `t` on a geometric grid with exact arithmetic and bisects between
/// consecutive samples until their cusps coincide or are Farey neighbours.
pub fn hermite_oracle_geodesic(x: &QuadraticSurd, t_max: f64) -> Result<Vec<BigRational>> {
    require_irrational(x)?;
    if !t_max.is_finite() {
        return Err(Error::NonFinite);
    }
    if t_max <= 1.0 {
        return Ok(Vec::new());
    }
    const SHIFT: u32 = 20;
    let scale = BigInt::one() << SHIFT;
    let end = BigInt::from((t_max * f64::from(1u32 << SHIFT)).ceil() as u128);

    let cusp_at = |n: &BigInt| -> Result<(BigInt, BigInt)> {
        let y = QuadraticSurd::from_fraction(scale.clone(), n.clone())?;
        let red = reduce_to_fundamental(&UpperHalfPoint::new(x.clone(), y)?)?;
        Ok(match red.g.cusp() {
            Boundary::Infinity => (BigInt::one(), BigInt::zero()),
            Boundary::Rational(r) => (r.numer().clone(), r.denom().clone()),
        })
    };
    let neighbours = |a: &(BigInt, BigInt), b: &(BigInt, BigInt)| (&a.0 * &b.1 - &b.0 * &a.1).abs().is_one();

    let mut found: Vec<(BigInt, BigInt)> = Vec::new();
    let mut seen = HashSet::new();
    let mut record = |c: &(BigInt, BigInt)| {
        if !c.1.is_zero() && seen.insert(c.clone()) {
            found.push(c.clone());
        }
    };

    let mut n = scale.clone();
    let mut cusp = cusp_at(&n)?;
    record(&cusp);
    while n < end {
        let step = (&n >> 6u32).max(BigInt::one());
        let next = (&n + step).min(end.clone());
        let next_cusp = cusp_at(&next)?;
        // depth-first, left half first, so cusps are recorded in geodesic order
        let mut stack = vec![(n.clone(), cusp.clone(), next.clone(), next_cusp.clone())];
        while let Some((lo, lc, hi, hc)) = stack.pop() {
            if lc == hc || neighbours(&lc, &hc) || &hi - &lo <= BigInt::one() {
                record(&lc);
                record(&hc);
                continue;
            }
            let mid: BigInt = (&lo + &hi) >> 1u32;
            let mc = cusp_at(&mid)?;
            stack.push((mid.clone(), mc.clone(), hi, hc));
            stack.push((lo, lc, mid, mc));
        }
        n = next;
        cusp = next_cusp;
    }
    Ok(found.into_iter().map(|(p, q)| BigRational::new(p, q)).collect())
}

/// One convex piece `f⁽ⁿ⁾(t) = A t + B/t` of the profile, active for
/// `start ≤ t ≤ end`; the endpoints are stored through their exact squares.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfilePiece {
    /// `None` for the piece at infinity `(p, q) = (1, 0)`, where `f = t`.
    pub hermite: Option<HermiteConvergent>,
    pub p: BigInt,
    pub q: BigInt,
    /// `qx − p`.
    pub gap: QuadraticSurd,
    /// `A = (qx − p)²`.
    pub a: QuadraticSurd,
    /// `B = q²`.
    pub b: QuadraticSurd,
    pub start_sq: QuadraticSurd,
    pub end_sq: QuadraticSurd,
}

/// A local minimum `2|q(qx − p)|` of a piece, reached at `t0 = |q/(qx − p)|`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalMinimum {
    /// Index of the classical convergent.
    pub n: usize,
    pub p: BigInt,
    pub q: BigInt,
    pub t0: QuadraticSurd,
    pub value: QuadraticSurd,
    /// Whether `t0` lies inside the interval where the piece is active.
    pub interior: bool,
}

impl ProfilePiece {
    fn new(x: &QuadraticSurd, hermite: Option<HermiteConvergent>, p: BigInt, q: BigInt) -> Self {
        let gap = x.scale(&q) - QuadraticSurd::from_int(p.clone());
        let a = gap.square();
        let b = QuadraticSurd::from_int(&q * &q);
        Self { hermite, p, q, gap, a, b, start_sq: QuadraticSurd::zero(), end_sq: QuadraticSurd::zero() }
    }

    pub fn value(&self, t: &Real) -> Real {
        let prec = t.precision();
        self.a.to_real(prec) * t + self.b.to_real(prec) / t
    }

    pub fn value_exact(&self, t: &QuadraticSurd) -> Result<QuadraticSurd> {
        self.a.checked_mul(t)?.checked_add(&self.b.checked_div(t)?)
    }

    /// Value at `t` given only `t²`: `(A t² + B)/t`, returned as its square.
    pub fn value_sq_at(&self, t_sq: &QuadraticSurd) -> Result<QuadraticSurd> {
        let num = self.a.checked_mul(t_sq)?.checked_add(&self.b)?;
        num.square().checked_div(t_sq)
    }

    pub fn t_start(&self, precision: usize) -> Real {
        self.start_sq.to_real(precision).sqrt()
    }

    pub fn t_end(&self, precision: usize) -> Real {
        self.end_sq.to_real(precision).sqrt()
    }

    /// Index of the classical convergent, `None` for the piece at infinity.
    pub fn index(&self) -> Option<usize> {
        self.hermite.as_ref().map(|h| h.convergent.n)
    }

    /// The minimum of `A t + B/t` over `t > 0`; `None` for the piece at infinity.
    pub fn minimum(&self) -> Option<LocalMinimum> {
        let n = self.index()?;
        let gap = self.gap.abs();
        let qs = QuadraticSurd::from_int(self.q.clone());
        let t0 = &qs / &gap;
        let value = (&qs * &gap).scale(&BigInt::from(2));
        let t0_sq = t0.square();
        let interior = t0_sq >= self.start_sq && t0_sq <= self.end_sq;
        Some(LocalMinimum { n, p: self.p.clone(), q: self.q.clone(), t0, value, interior })
    }
}

/// `t²` where pieces `lo` and `hi` cross: `(B_hi − B_lo) / (A_lo − A_hi)`.
fn crossing_sq(lo: &ProfilePiece, hi: &ProfilePiece) -> QuadraticSurd {
    (&hi.b - &lo.b) / (&lo.a - &hi.a)
}

/// The lower envelope `f_x(t) = f(x + i/t)` on `0 < t < t_end`.
#[derive(Clone, Debug, PartialEq)]
pub struct CapacityProfile {
    x: QuadraticSurd,
    cf: ContinuedFraction,
    pieces: Vec<ProfilePiece>,
}

impl CapacityProfile {
    /// Profile made of the piece at infinity followed by the first `count`
    /// Hermite pieces.
    pub fn new(x: &QuadraticSurd, count: usize) -> Result<Self> {
        Self::build(x, |pieces| pieces.len() > count)
    }

    /// Shortest profile whose domain reaches past `t_max`.
    pub fn until(x: &QuadraticSurd, t_max: f64) -> Result<Self> {
        if !t_max.is_finite() {
            return Err(Error::NonFinite);
        }
        Self::build(x, |pieces| pieces.len() > 2 && pieces.last().is_some_and(|p| p.end_sq.to_f64() > t_max * t_max))
    }

    /// Profile covering every Hermite convergent with classical index below `depth`.
    pub fn through_index(x: &QuadraticSurd, depth: usize) -> Result<Self> {
        Self::build(x, |pieces| pieces.last().and_then(ProfilePiece::index).is_some_and(|n| n + 1 >= depth))
    }

    fn build(x: &QuadraticSurd, done: impl Fn(&[ProfilePiece]) -> bool) -> Result<Self> {
        require_irrational(x)?;
        let cf = cf_expand(x)?;
        let mut pieces = vec![ProfilePiece::new(x, None, BigInt::one(), BigInt::zero())];
        for h in hermite_iter(x, &cf) {
            let (p, q) = (h.convergent.p.clone(), h.convergent.q.clone());
            let mut next = ProfilePiece::new(x, Some(h), p, q);
            let prev = pieces.last_mut().expect("piece at infinity");
            let t_sq = crossing_sq(prev, &next);
            if t_sq <= prev.start_sq {
                return Err(Error::invalid("breakpoints are not increasing"));
            }
            prev.end_sq = t_sq.clone();
            if done(&pieces) {
                break;
            }
            next.start_sq = t_sq;
            pieces.push(next);
        }
        Ok(Self { x: x.clone(), cf, pieces })
    }

    pub fn x(&self) -> &QuadraticSurd {
        &self.x
    }

    pub fn continued_fraction(&self) -> &ContinuedFraction {
        &self.cf
    }

    pub fn pieces(&self) -> &[ProfilePiece] {
        &self.pieces
    }

    /// Squares of the interior breakpoints `t_1 < t_2 < …`.
    pub fn breakpoints_sq(&self) -> Vec<QuadraticSurd> {
        self.pieces.iter().skip(1).map(|p| p.start_sq.clone()).collect()
    }

    pub fn breakpoints(&self, precision: usize) -> Vec<Real> {
        self.pieces.iter().skip(1).map(|p| p.t_start(precision)).collect()
    }

    /// Right end of the domain.
    pub fn t_end(&self, precision: usize) -> Real {
        self.pieces.last().expect("nonempty").t_end(precision)
    }

    /// Local maxima `(t_n, f(t_n))` at the breakpoints.
    pub fn maxima(&self, precision: usize) -> Vec<(Real, Real)> {
        self.pieces
            .iter()
            .skip(1)
            .map(|p| {
                let t = p.t_start(precision);
                let f = p.value(&t);
                (t, f)
            })
            .collect()
    }

    fn piece_for(&self, mut t_sq_cmp: impl FnMut(&QuadraticSurd) -> Ordering) -> Result<(usize, &ProfilePiece)> {
        self.pieces
            .iter()
            .enumerate()
            .find(|(_, p)| t_sq_cmp(&p.end_sq) == Ordering::Less)
            .ok_or_else(|| Error::OutOfRange("t beyond the computed profile".into()))
    }

    /// Position in [`pieces`](Self::pieces) of the piece active at `t`, with `f_x(t)`.
    pub fn locate(&self, t: &Real) -> Result<(usize, Real)> {
        if !t.is_positive() {
            return Err(Error::OutOfRange("t must be positive".into()));
        }
        let prec = t.precision();
        let t_sq = t * t;
        let (k, piece) = self.piece_for(|end| t_sq.clone().cmp(&end.to_real(prec)))?;
        Ok((k, piece.value(t)))
    }

    /// `count ≥ 2` samples on a geometric grid from `t_min` to `t_max`.
    pub fn sample(&self, t_min: f64, t_max: f64, count: usize, precision: usize) -> Result<Vec<ProfileSample>> {
        if !(t_min > 0.0 && t_max > t_min && t_max.is_finite()) || count < 2 {
            return Err(Error::invalid("need 0 < t_min < t_max and at least two samples"));
        }
        let lo = Real::from_f64(t_min, precision)?;
        let ratio = Real::from_f64(t_max / t_min, precision)?.ln() / Real::from_i64(count as i64 - 1, precision);
        (0..count)
            .map(|k| {
                let t = if k + 1 == count {
                    Real::from_f64(t_max, precision)?
                } else {
                    // t_min · (t_max/t_min)^(k/(count−1)) through exp(ln)
                    &lo * &(&ratio * &Real::from_i64(k as i64, precision)).exp()
                };
                let (piece, f) = self.locate(&t)?;
                Ok(ProfileSample { t, f, piece })
            })
            .collect()
    }
    /// `f_x(t)` in the float tier.
    pub fn evaluate(&self, t: &Real) -> Result<Real> {
        self.locate(t).map(|(_, f)| f)
    }

    /// `f_x(t)` exactly, for `t` rational or in the field of `x`.
    pub fn evaluate_exact(&self, t: &QuadraticSurd) -> Result<QuadraticSurd> {
        if !t.is_positive() {
            return Err(Error::OutOfRange("t must be positive".into()));
        }
        let t_sq = t.square();
        let mut failure = None;
        let piece = self.piece_for(|end| {
            t_sq.checked_cmp(end).unwrap_or_else(|e| {
                failure = Some(e);
                Ordering::Less
            })
        });
        if let Some(e) = failure {
            return Err(e);
        }
        piece?.1.value_exact(t)
    }

    pub fn local_minima(&self) -> Vec<LocalMinimum> {
        self.pieces.iter().filter_map(ProfilePiece::minimum).collect()
    }
}

/// One point of a sampled profile.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileSample {
    pub t: Real,
    pub f: Real,
    /// Position of the active piece in [`CapacityProfile::pieces`].
    pub piece: usize,
}

/// Profile with `count ≥ 2` Hermite pieces after the piece at infinity.
pub fn build_profile(x: &QuadraticSurd, count: usize) -> Result<CapacityProfile> {
    if count < 2 {
        return Err(Error::invalid("a profile needs at least two Hermite pieces"));
    }
    CapacityProfile::new(x, count)
}

pub fn local_minima(profile: &CapacityProfile) -> Vec<LocalMinimum> {
    profile.local_minima()
}

/// Tail behaviour of the minima `2/λ_n(x)`, `n ∈ H(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimaLimit {
    /// Smallest minimum over one period at the end of the window; equals
    /// `2/L(x)` once the window is past the preperiod.
    pub value: QuadraticSurd,
    /// Largest minimum over the same window.
    pub largest: QuadraticSurd,
    /// Classical indices `[from, to)` inspected.
    pub window: (usize, usize),
}

/// `2/L(x)` as the limit of the capacity minima along the Hermite convergents
/// with classical index below `depth`.
pub fn sup_of_minima(x: &QuadraticSurd, depth: usize) -> Result<MinimaLimit> {
    require_irrational(x)?;
    let cf = cf_expand(x)?;
    let width = cf.period().len().max(2);
    if depth < width {
        return Err(Error::invalid("depth shorter than one period"));
    }
    let from = depth - width;
    let minima: Vec<QuadraticSurd> = cf
        .convergents(depth)
        .into_iter()
        .skip(from)
        .filter(|c| humbert_is_hermite(x, &c.p, &c.q).expect("convergents are irreducible"))
        .map(|c| {
            let gap = (x.scale(&c.q) - QuadraticSurd::from_int(c.p.clone())).abs();
            gap.scale(&(c.q * 2))
        })
        .collect();
    let value = minima.iter().min_by(|a, b| a.partial_cmp(b).expect("same field")).cloned();
    let largest = minima.iter().max_by(|a, b| a.partial_cmp(b).expect("same field")).cloned();
    match (value, largest) {
        (Some(value), Some(largest)) => Ok(MinimaLimit { value, largest, window: (from, depth) }),
        _ => Err(Error::invalid("no Hermite convergent in the window")),
    }
}
