//! Deterministic SVG drawings: capacity profiles on a logarithmic `t` axis and
//! the unrolled cylinder of a growth scheme.

use std::fmt::Write;

use crate::error::Result;
use crate::modular::{shortest_vector, UpperHalfPoint};
use crate::numeric::Real;

const PALETTE: [&str; 6] = ["#c0392b", "#2471a3", "#1e8449", "#7d3c98", "#b9770e", "#515a5a"];

/// One curve of a profile plot, in plain `f64` coordinates `(t, f)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Curve {
    pub label: String,
    pub samples: Vec<(f64, f64)>,
    pub minima: Vec<(f64, f64)>,
    pub maxima: Vec<(f64, f64)>,
}

/// A labelled horizontal line.
#[derive(Clone, Debug, PartialEq)]
pub struct Guide {
    pub value: f64,
    pub label: String,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Profiles `f_x(t)` against `log₁₀ t`, with minima as dots, breakpoint maxima
/// as squares and optional horizontal guides.
pub fn profile_svg(curves: &[Curve], guides: &[Guide]) -> String {
    const W: f64 = 760.0;
    const H: f64 = 440.0;
    const LEFT: f64 = 60.0;
    const RIGHT: f64 = 20.0;
    const TOP: f64 = 20.0;
    const BOTTOM: f64 = 50.0;
    const F_MAX: f64 = 1.2;

    let ts = curves.iter().flat_map(|c| c.samples.iter().map(|s| s.0)).filter(|t| *t > 0.0);
    let (lo, hi) = ts.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), t| (lo.min(t), hi.max(t)));
    let (lo, hi) = if lo < hi { (lo.log10().floor(), hi.log10().ceil()) } else { (0.0, 1.0) };
    let px = |t: f64| LEFT + (t.log10() - lo) / (hi - lo) * (W - LEFT - RIGHT);
    let py = |f: f64| H - BOTTOM - f.clamp(0.0, F_MAX) / F_MAX * (H - TOP - BOTTOM);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let (x0, x1, y0, y1) = (LEFT, W - RIGHT, py(0.0), py(F_MAX));
    let _ = writeln!(s, r#"<path d="M{x0:.2},{y1:.2}V{y0:.2}H{x1:.2}" fill="none" stroke="black"/>"#);
    for e in (lo as i64)..=(hi as i64) {
        let x = px(10f64.powi(e as i32));
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#, y0 + 5.0);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">1e{e}</text>"#, y0 + 18.0);
    }
    for k in 0..=6 {
        let f = k as f64 * 0.2;
        let y = py(f);
        let _ = writeln!(s, r#"<line x1="{:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}" stroke="black"/>"#, x0 - 5.0);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{f:.1}</text>"#, x0 - 8.0, y + 4.0);
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">t (log scale)</text>"#,
        (x0 + x1) / 2.0,
        H - 10.0
    );
    let _ = writeln!(
        s,
        r#"<text x="14" y="{:.2}" transform="rotate(-90 14 {:.2})" text-anchor="middle">f(x + i/t)</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    for g in guides {
        let y = py(g.value);
        let _ = writeln!(
            s,
            r#"<line x1="{x0:.2}" y1="{y:.2}" x2="{x1:.2}" y2="{y:.2}" stroke="gray" stroke-dasharray="6 4"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" fill="gray">{}</text>"#,
            x1 - 4.0,
            y - 4.0,
            escape(&g.label)
        );
    }
    for (k, c) in curves.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let points: Vec<String> =
            c.samples.iter().filter(|p| p.0 > 0.0).map(|&(t, f)| format!("{:.2},{:.2}", px(t), py(f))).collect();
        let _ =
            writeln!(s, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#, points.join(" "));
        for &(t, f) in c.minima.iter().filter(|p| p.0 > 0.0) {
            let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#, px(t), py(f));
        }
        for &(t, f) in c.maxima.iter().filter(|p| p.0 > 0.0) {
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="5" height="5" fill="none" stroke="{color}"/>"#,
                px(t) - 2.5,
                py(f) - 2.5
            );
        }
        let ly = TOP + 16.0 * (k as f64 + 1.0);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#,
            x0 + 12.0,
            x0 + 32.0
        );
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, x0 + 38.0, ly + 4.0, escape(&c.label));
    }
    s.push_str("</svg>\n");
    s
}

/// The unrolled cylinder: a strip of width 1 holding the buds `β(x, y)` taken
/// modulo 1 for `β = 0, …, rows`, each inside a disk of diameter `d(x, y)`.
pub fn lattice_svg(w: &UpperHalfPoint<Real>, rows: usize) -> Result<String> {
    const SCALE: f64 = 400.0;
    const PAD: f64 = 10.0;
    let (x, y) = (w.x().to_f64(), w.y().to_f64());
    let d = shortest_vector(w).length(w.x().precision()).to_f64();
    let height = rows as f64 * y + d;
    let (sw, sh) = (SCALE + 2.0 * PAD, height * SCALE + 2.0 * PAD);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{sw:.2}" height="{sh:.2}" viewBox="0 0 {sw:.2} {sh:.2}">"#
    );
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="strip"><rect x="{PAD}" y="{PAD}" width="{SCALE}" height="{:.2}"/></clipPath></defs>"#,
        height * SCALE
    );
    let _ = writeln!(s, r#"<rect width="{sw:.2}" height="{sh:.2}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<rect x="{PAD}" y="{PAD}" width="{SCALE}" height="{:.2}" fill="#f4f1e8" stroke="black"/>"##,
        height * SCALE
    );
    let _ = writeln!(s, r#"<g clip-path="url(#strip)">"#);
    let r = d / 2.0 * SCALE;
    for beta in 0..=rows {
        let u = (beta as f64 * x).rem_euclid(1.0);
        let cy = PAD + (height - d / 2.0 - beta as f64 * y) * SCALE;
        for shift in [-1.0, 0.0, 1.0] {
            let cx = PAD + (u + shift) * SCALE;
            let _ = writeln!(s, r##"<circle cx="{cx:.3}" cy="{cy:.3}" r="{r:.3}" fill="#a9cce3" stroke="#1f618d"/>"##);
            let _ = writeln!(s, r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="1.5" fill="black"/>"#);
        }
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}
