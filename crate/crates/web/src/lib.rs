//! Browser bindings: capacity of a point, profile plots and lattice drawings.
//!
//! Each export has a plain Rust twin returning `Result<String, String>` so the
//! logic is testable off the browser.

use std::fmt::Write;

use growth_capacity::render::{lattice_svg, profile_svg, Curve, Guide};
use growth_capacity::*;
use wasm_bindgen::prelude::*;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn precision(bits: u32) -> Result<usize, String> {
    if bits < 64 {
        return Err("precision must be at least 64 bits".into());
    }
    Ok(bits as usize)
}

fn describe<S: Scalar + std::fmt::Display>(w: &UpperHalfPoint<S>, prec: usize) -> Result<String, String> {
    let show = |s: &S| {
        let dec = s.to_real(prec).to_decimal(20);
        if S::is_exact() {
            format!("{s} = {dec}")
        } else {
            dec
        }
    };
    let red = reduce_to_fundamental(w).map_err(err)?;
    let f = growth_capacity(w).map_err(err)?;
    let mut s = String::new();
    let _ = writeln!(s, "f = {}", show(&f));
    let _ = writeln!(s, "g = {}", red.g);
    let _ = writeln!(s, "w0 = {} + i*({})", show(red.w0.x()), show(red.w0.y()));
    let _ = writeln!(s, "d^2 = {}", show(&shortest_vector(w).norm_sq));
    match tangent_circle(w) {
        Ok(tc) => {
            let _ = writeln!(s, "tangent circle at {} with diameter {}", tc.cusp, show(&tc.diameter));
        }
        Err(Error::CuspAtInfinity) => {
            let _ = writeln!(s, "tangent circle: cusp at infinity");
        }
        Err(e) => return Err(err(e)),
    }
    let density = analytic_density(w, prec).map_err(err)?;
    let _ = writeln!(s, "packing density (pi/4) f = {}", density.to_decimal(20));
    Ok(s)
}

/// Text summary of `f(ω)` for a complex literal such as `phi + i/10`.
pub fn capacity_text(omega: &str, bits: u32) -> Result<String, String> {
    let prec = precision(bits)?;
    let (x, y) = parse_complex(omega).map_err(err)?;
    if x.common_radicand(&y).is_ok() {
        describe(&UpperHalfPoint::new(x, y).map_err(err)?, prec)
    } else {
        describe(&UpperHalfPoint::new(x.to_real(prec), y.to_real(prec)).map_err(err)?, prec)
    }
}

/// SVG of `t ↦ f(x + i/t)` for each `x` in a `;`-separated list.
pub fn profile_plot(xs: &str, t_min: f64, t_max: f64, samples: usize) -> Result<String, String> {
    const PREC: usize = 96;
    if !(t_min > 0.0 && t_max > t_min && t_max <= 1e8) {
        return Err("need 0 < t_min < t_max <= 1e8".into());
    }
    let mut curves = Vec::new();
    let mut guides = Vec::new();
    for src in xs.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let x = parse_surd(src).map_err(err)?;
        let profile = CapacityProfile::until(&x, t_max).map_err(err)?;
        if profile.continued_fraction().is_golden_class() && guides.is_empty() {
            guides.push(Guide { value: 2.0 / 5f64.sqrt(), label: "2/sqrt(5)".into() });
        }
        let in_range = |t: f64| t >= t_min && t <= t_max;
        let samples = profile
            .sample(t_min, t_max, samples.clamp(2, 5000), PREC)
            .map_err(err)?
            .into_iter()
            .map(|s| (s.t.to_f64(), s.f.to_f64()))
            .collect();
        let minima = profile
            .local_minima()
            .into_iter()
            .filter(|m| m.interior)
            .map(|m| (m.t0.to_f64(), m.value.to_f64()))
            .filter(|m| in_range(m.0))
            .collect();
        let maxima =
            profile.maxima(PREC).into_iter().map(|(t, f)| (t.to_f64(), f.to_f64())).filter(|m| in_range(m.0)).collect();
        curves.push(Curve { label: src.to_string(), samples, minima, maxima });
    }
    if curves.is_empty() {
        return Err("enter at least one x".into());
    }
    Ok(profile_svg(&curves, &guides))
}

/// SVG of the unrolled cylinder for the lattice of `x + iy`.
pub fn lattice_plot(x: &str, y: &str, rows: usize) -> Result<String, String> {
    const PREC: usize = 96;
    let x = parse_surd(x).map_err(err)?.to_real(PREC);
    let y = parse_surd(y).map_err(err)?.to_real(PREC);
    if rows == 0 || rows > 2000 {
        return Err("rows must be between 1 and 2000".into());
    }
    let w = UpperHalfPoint::new(x, y).map_err(err)?;
    lattice_svg(&w, rows).map_err(err)
}

#[wasm_bindgen]
pub fn capacity(omega: &str, bits: u32) -> Result<String, JsError> {
    capacity_text(omega, bits).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn profile(xs: &str, t_min: f64, t_max: f64, samples: usize) -> Result<String, JsError> {
    profile_plot(xs, t_min, t_max, samples).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn lattice(x: &str, y: &str, rows: usize) -> Result<String, JsError> {
    lattice_plot(x, y, rows).map_err(|e| JsError::new(&e))
}
