//! Disk packing of a growth scheme: disks of diameter `d(ω)` centred on the
//! lattice `ℤ + ℤω` cover the fraction `(π/4) f(ω)` of the plane.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::modular::{growth_capacity, reduced_basis, UpperHalfPoint};
use crate::numeric::{Real, Scalar};

/// Fewest samples accepted by [`packing_density`].
pub const MIN_SAMPLES: usize = 100;

/// `(π/4) f(ω)`, the covered area fraction.
pub fn analytic_density<S: Scalar>(w: &UpperHalfPoint<S>, precision: usize) -> Result<Real> {
    let f = growth_capacity(w)?.to_real(precision);
    Ok(Real::pi(precision) / Real::from_i64(4, precision) * f)
}

/// Analytic and Monte-Carlo covered fractions for one growth scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct PackingReport {
    pub x: Real,
    pub y: Real,
    pub analytic: Real,
    pub empirical: f64,
    pub hits: usize,
    pub samples: usize,
    pub seed: u64,
}

impl PackingReport {
    /// Binomial standard deviation of the empirical fraction.
    pub fn sigma(&self) -> f64 {
        let p = self.analytic.to_f64();
        (p * (1.0 - p) / self.samples as f64).sqrt()
    }

    pub fn deviation(&self) -> f64 {
        (self.empirical - self.analytic.to_f64()).abs()
    }

    pub fn within_sigmas(&self, k: f64) -> bool {
        self.deviation() <= k * self.sigma()
    }
}

/// Draws `samples` uniform points in the cell `{u + vω : 0 ≤ u, v < 1}` with a
/// seeded generator and counts those within `d(ω)/2` of a lattice point.
pub fn packing_density(w: &UpperHalfPoint<Real>, samples: usize, seed: u64) -> Result<PackingReport> {
    if samples < MIN_SAMPLES {
        return Err(Error::invalid(format!("at least {MIN_SAMPLES} samples are needed")));
    }
    let precision = w.x().precision();
    let analytic = analytic_density(w, precision)?;
    let (x, y) = (w.x().to_f64(), w.y().to_f64());
    let [(b1, n1), (b2, _)] = reduced_basis(w);
    let vec = |v: &crate::modular::LatticeVector| {
        let (a, b) = (v.alpha.to_f64().unwrap_or(f64::NAN), v.beta.to_f64().unwrap_or(f64::NAN));
        (a + b * x, b * y)
    };
    let (e1, e2) = (vec(&b1), vec(&b2));
    let det = e1.0 * e2.1 - e1.1 * e2.0;
    let radius_sq = n1.to_f64() / 4.0;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0;
    for _ in 0..samples {
        let (u, v): (f64, f64) = (rng.gen(), rng.gen());
        let (px, py) = (u + v * x, v * y);
        // coordinates in the reduced basis; the nearest lattice point is among the 3×3 around them
        let s = (px * e2.1 - py * e2.0) / det;
        let t = (e1.0 * py - e1.1 * px) / det;
        let (s0, t0) = (s.round(), t.round());
        let covered = (-1..=1).any(|i| {
            (-1..=1).any(|j| {
                let (cs, ct) = (s0 + f64::from(i), t0 + f64::from(j));
                let dx = px - cs * e1.0 - ct * e2.0;
                let dy = py - cs * e1.1 - ct * e2.1;
                dx * dx + dy * dy < radius_sq
            })
        });
        hits += usize::from(covered);
    }
    Ok(PackingReport {
        x: w.x().clone(),
        y: w.y().clone(),
        analytic,
        empirical: hits as f64 / samples as f64,
        hits,
        samples,
        seed,
    })
}
