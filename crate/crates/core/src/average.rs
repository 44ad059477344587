//! Averaged capacity: the mean of each profile piece over its own interval and
//! the lim sup `g_x` of those means.

use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{cf_expand, QuadraticSurd, Real};
use crate::profile::CapacityProfile;

/// Mean of `A t + B/t` over `[t_lo, t_hi]`:
/// `A (t_lo + t_hi)/2 + B ln(t_hi/t_lo)/(t_hi − t_lo)`.
pub fn piece_average(a: &Real, b: &Real, t_lo: &Real, t_hi: &Real) -> Result<Real> {
    if !t_lo.is_positive() || t_lo >= t_hi {
        return Err(Error::invalid("need 0 < t_lo < t_hi"));
    }
    if !a.is_positive() {
        return Err(Error::invalid("slope A must be positive"));
    }
    let width = t_hi - t_lo;
    let mid = (t_lo + t_hi) / &t_lo.int_like(2);
    let log = (t_hi / t_lo).ln();
    Ok(a * &mid + b * &log / &width)
}

/// Mean capacity over one Hermite piece.
#[derive(Clone, Debug, PartialEq)]
pub struct PieceAverage {
    /// Index of the classical convergent.
    pub n: usize,
    pub t_start: Real,
    pub t_end: Real,
    pub value: Real,
}

/// Which closed form applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GoldenOrSilver {
    /// Expansions ending in all ones: `1/2 + (2/√5) ln φ`.
    Phi,
    /// Expansions ending in all twos: `1/2 + ln(1+√2)/√8`.
    Psi,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm {
    pub which: GoldenOrSilver,
    pub expression: &'static str,
    pub value: Real,
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.expression, self.value)
    }
}

pub fn closed_form_g(which: GoldenOrSilver, precision: usize) -> ClosedForm {
    let half = Real::one(precision) / Real::from_i64(2, precision);
    match which {
        GoldenOrSilver::Phi => {
            let phi = QuadraticSurd::phi().to_real(precision);
            let coef = Real::from_i64(2, precision) / Real::from_i64(5, precision).sqrt();
            ClosedForm { which, expression: "1/2 + (2/sqrt(5))*ln(phi)", value: half + coef * phi.ln() }
        }
        GoldenOrSilver::Psi => {
            let psi = QuadraticSurd::psi().to_real(precision);
            let root8 = Real::from_i64(8, precision).sqrt();
            ClosedForm { which, expression: "1/2 + ln(1+sqrt(2))/sqrt(8)", value: half + psi.ln() / root8 }
        }
    }
}

/// Per-piece means up to a depth and the resulting estimate of `g_x`.
#[derive(Clone, Debug, PartialEq)]
pub struct AverageReport {
    pub x: QuadraticSurd,
    pub depth: usize,
    pub averages: Vec<PieceAverage>,
    /// Largest mean among pieces with index in `tail`.
    pub estimate: Real,
    /// Classical indices `[from, to)` of the tail window.
    pub tail: (usize, usize),
    /// Largest minus smallest mean in the tail window.
    pub spread: Real,
    pub closed_form: Option<ClosedForm>,
}

impl AverageReport {
    /// `estimate − closed form`, when a closed form is known.
    pub fn delta(&self) -> Option<Real> {
        self.closed_form.as_ref().map(|c| &self.estimate - &c.value)
    }
}

/// Means of the Hermite pieces with classical index below `depth`; `g_x` is
/// estimated as the largest mean with index in `[depth/2, depth)`.
pub fn average_capacity_estimate(x: &QuadraticSurd, depth: usize, precision: usize) -> Result<AverageReport> {
    if depth < 4 {
        return Err(Error::invalid("depth must be at least 4"));
    }
    let cf = cf_expand(x)?;
    let profile = CapacityProfile::through_index(x, depth)?;
    let mut averages = Vec::new();
    for piece in profile.pieces() {
        let Some(n) = piece.index() else { continue };
        if n >= depth {
            break;
        }
        let t_start = piece.t_start(precision);
        let t_end = piece.t_end(precision);
        let value = piece_average(&piece.a.to_real(precision), &piece.b.to_real(precision), &t_start, &t_end)?;
        averages.push(PieceAverage { n, t_start, t_end, value });
    }
    let tail = (depth / 2, depth);
    let window: Vec<&Real> = averages.iter().filter(|a| a.n >= tail.0).map(|a| &a.value).collect();
    let estimate =
        window.iter().copied().cloned().reduce(Real::max).ok_or_else(|| Error::invalid("empty tail window"))?;
    let lowest = window.iter().copied().cloned().reduce(Real::min).expect("nonempty");
    let spread = &estimate - &lowest;
    let which = if cf.is_golden_class() {
        Some(GoldenOrSilver::Phi)
    } else if cf.is_silver_class() {
        Some(GoldenOrSilver::Psi)
    } else {
        None
    };
    Ok(AverageReport {
        x: x.clone(),
        depth,
        averages,
        estimate,
        tail,
        spread,
        closed_form: which.map(|w| closed_form_g(w, precision)),
    })
}
