//! Report types and command implementations behind the `growth-capacity`
//! binary. Every report serializes to JSON and back without loss.

use std::fmt::{self, Display, Write as _};
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, ensure, Context, Result};
use growth_capacity::render::{lattice_svg, profile_svg, Curve, Guide};
use growth_capacity::*;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Version tag written in the first line of every CSV table.
pub const CSV_SCHEMA: &str = "# schema=v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Svg,
}

/// Settings shared by every command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Bits of working precision for the float tier, at least 64.
    pub precision: usize,
    pub depth: usize,
    pub t_max: f64,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub samples: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { precision: 128, depth: 40, t_max: 1e4, format: None, out: None, seed: 0, samples: None }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        ensure!(self.precision >= 64, "precision must be at least 64 bits");
        ensure!(self.depth >= 2, "depth must be at least 2");
        ensure!(self.t_max.is_finite() && self.t_max > 0.0, "t-max must be positive and finite");
        Ok(())
    }

    fn format(&self, default: Format, allowed: &[Format]) -> Result<Format> {
        let f = self.format.unwrap_or(default);
        if !allowed.contains(&f) {
            let names: Vec<String> = allowed.iter().map(|a| format!("{a:?}").to_lowercase()).collect();
            bail!(
                "format {} is not available here (use one of: {})",
                format!("{f:?}").to_lowercase(),
                names.join(", ")
            );
        }
        Ok(f)
    }
}

/// A value with its exact literal, when one exists, and a decimal expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Number {
    pub exact: Option<String>,
    pub decimal: String,
}

impl Number {
    pub fn of<S: Scalar + Display>(s: &S, precision: usize) -> Self {
        Self { exact: S::is_exact().then(|| s.to_string()), decimal: s.to_real(precision).to_string() }
    }

    pub fn real(r: &Real) -> Self {
        Self { exact: None, decimal: r.to_string() }
    }

    pub fn to_f64(&self) -> f64 {
        self.decimal.parse().unwrap_or(f64::NAN)
    }
}

impl Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(e) => write!(f, "{e} = {}", self.decimal),
            None => f.write_str(&self.decimal),
        }
    }
}

/// A parsed point of the upper half-plane, exact when both coordinates share a
/// quadratic field.
pub enum Point {
    Exact(UpperHalfPoint<QuadraticSurd>),
    Float(UpperHalfPoint<Real>),
}

impl Point {
    pub fn parse(omega: &str, precision: usize) -> Result<Self> {
        let (x, y) = parse_complex(omega).with_context(|| format!("cannot parse omega {omega:?}"))?;
        Self::from_parts(x, y, precision)
    }

    pub fn from_parts(x: QuadraticSurd, y: QuadraticSurd, precision: usize) -> Result<Self> {
        if x.common_radicand(&y).is_ok() {
            Ok(Point::Exact(UpperHalfPoint::new(x, y)?))
        } else {
            Ok(Point::Float(UpperHalfPoint::new(x.to_real(precision), y.to_real(precision))?))
        }
    }

    pub fn to_real(&self, precision: usize) -> UpperHalfPoint<Real> {
        match self {
            Point::Exact(w) => w.to_real(precision),
            Point::Float(w) => w.clone(),
        }
    }
}

/// `--omega`, or `--x` together with `--y`.
pub fn point_from_args(omega: Option<&str>, x: Option<&str>, y: Option<&str>, precision: usize) -> Result<Point> {
    match (omega, x, y) {
        (Some(w), None, None) => Point::parse(w, precision),
        (None, Some(x), Some(y)) => {
            let x = parse_surd(x).with_context(|| format!("cannot parse x {x:?}"))?;
            let y = parse_surd(y).with_context(|| format!("cannot parse y {y:?}"))?;
            Point::from_parts(x, y, precision)
        }
        _ => bail!("give either --omega or both --x and --y"),
    }
}

fn parse_real_x(src: &str) -> Result<QuadraticSurd> {
    parse_surd(src).with_context(|| format!("cannot parse x {src:?}"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentReport {
    pub cusp: String,
    pub diameter: Number,
    /// `f` divided by the diameter: the squared cusp denominator.
    pub denominator_sq: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapacityReport {
    pub omega: String,
    pub f: Number,
    /// Reducing matrix `g` with `ω = g·w0`, rows first.
    pub g: [[String; 2]; 2],
    pub w0_x: Number,
    pub w0_y: Number,
    pub d_squared: Number,
    pub tangent_circle: Option<TangentReport>,
}

fn capacity_of<S: Scalar + Display>(omega: &str, w: &UpperHalfPoint<S>, precision: usize) -> Result<CapacityReport> {
    let red = reduce_to_fundamental(w)?;
    let f = growth_capacity(w)?;
    let [a, b, c, d] = red.g.entries().map(|e| e.to_string());
    let tangent_circle = match tangent_circle(w) {
        Ok(tc) => Some(TangentReport {
            denominator_sq: (tc.cusp.denom() * tc.cusp.denom()).to_string(),
            cusp: tc.cusp.to_string(),
            diameter: Number::of(&tc.diameter, precision),
        }),
        Err(Error::CuspAtInfinity) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(CapacityReport {
        omega: omega.to_string(),
        f: Number::of(&f, precision),
        g: [[a, b], [c, d]],
        w0_x: Number::of(red.w0.x(), precision),
        w0_y: Number::of(red.w0.y(), precision),
        d_squared: Number::of(&shortest_vector(w).norm_sq, precision),
        tangent_circle,
    })
}

pub fn capacity(omega: &str, cfg: &RunConfig) -> Result<CapacityReport> {
    match Point::parse(omega, cfg.precision)? {
        Point::Exact(w) => capacity_of(omega, &w, cfg.precision),
        Point::Float(w) => capacity_of(omega, &w, cfg.precision),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceRow {
    /// Position in the profile; 0 is the piece `f = t`.
    pub index: usize,
    /// Classical convergent index, absent for piece 0.
    pub n: Option<usize>,
    pub p: String,
    pub q: String,
    pub a: Number,
    pub b: Number,
    pub t_start: String,
    pub t_end: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRow {
    pub t: String,
    pub f: String,
    pub piece: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimumRow {
    pub n: usize,
    pub piece: usize,
    pub p: String,
    pub q: String,
    pub t0: Number,
    /// `2|q(qx − p)| = 2/λ_n`.
    pub value: Number,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileCurve {
    pub x: String,
    pub pieces: Vec<PieceRow>,
    pub samples: Vec<PointRow>,
    pub breakpoints: Vec<PointRow>,
    pub minima: Vec<MinimumRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub t_min: f64,
    pub t_max: f64,
    pub curves: Vec<ProfileCurve>,
}

pub fn profile(xs: &[String], t_min: f64, cfg: &RunConfig) -> Result<ProfileReport> {
    ensure!(!xs.is_empty(), "give at least one --x");
    ensure!(t_min > 0.0 && t_min < cfg.t_max, "need 0 < t-min < t-max");
    let prec = cfg.precision;
    let count = cfg.samples.unwrap_or(400);
    let (lo, hi) = (Real::from_f64(t_min, prec)?, Real::from_f64(cfg.t_max, prec)?);
    let mut curves = Vec::new();
    for src in xs {
        let x = parse_real_x(src)?;
        let prof = CapacityProfile::until(&x, cfg.t_max).with_context(|| format!("profile of {src}"))?;
        let pieces = prof
            .pieces()
            .iter()
            .enumerate()
            .map(|(index, p)| PieceRow {
                index,
                n: p.index(),
                p: p.p.to_string(),
                q: p.q.to_string(),
                a: Number::of(&p.a, prec),
                b: Number::of(&p.b, prec),
                t_start: p.t_start(prec).to_string(),
                t_end: p.t_end(prec).to_string(),
            })
            .collect();
        let samples = prof
            .sample(t_min, cfg.t_max, count, prec)?
            .into_iter()
            .map(|s| PointRow { t: s.t.to_string(), f: s.f.to_string(), piece: s.piece })
            .collect();
        let breakpoints = prof
            .maxima(prec)
            .into_iter()
            .enumerate()
            .filter(|(_, (t, _))| *t >= lo && *t <= hi)
            .map(|(k, (t, f))| PointRow { t: t.to_string(), f: f.to_string(), piece: k + 1 })
            .collect();
        let minima = prof
            .pieces()
            .iter()
            .enumerate()
            .filter_map(|(piece, p)| p.minimum().map(|m| (piece, m)))
            .filter(|(_, m)| m.interior && m.t0.to_real(prec) >= lo && m.t0.to_real(prec) <= hi)
            .map(|(piece, m)| MinimumRow {
                n: m.n,
                piece,
                p: m.p.to_string(),
                q: m.q.to_string(),
                t0: Number::of(&m.t0, prec),
                value: Number::of(&m.value, prec),
            })
            .collect();
        curves.push(ProfileCurve { x: src.clone(), pieces, samples, breakpoints, minima });
    }
    Ok(ProfileReport { t_min, t_max: cfg.t_max, curves })
}

/// Draws the profile curves; adds the `2/√5` guide when some `x` is golden.
pub fn profile_plot(report: &ProfileReport) -> Result<String> {
    let mut guides = Vec::new();
    let mut curves = Vec::new();
    for c in &report.curves {
        let x = parse_real_x(&c.x)?;
        if cf_expand(&x)?.is_golden_class() && guides.is_empty() {
            guides.push(Guide { value: 2.0 / 5f64.sqrt(), label: "2/sqrt(5)".into() });
        }
        let pt = |r: &PointRow| (r.t.parse().unwrap_or(f64::NAN), r.f.parse().unwrap_or(f64::NAN));
        curves.push(Curve {
            label: c.x.clone(),
            samples: c.samples.iter().map(pt).collect(),
            minima: c.minima.iter().map(|m| (m.t0.to_f64(), m.value.to_f64())).collect(),
            maxima: c.breakpoints.iter().map(pt).collect(),
        });
    }
    Ok(profile_svg(&curves, &guides))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PackingOutput {
    pub x: String,
    pub y: String,
    pub analytic: String,
    pub empirical: f64,
    pub hits: usize,
    pub samples: usize,
    pub seed: u64,
    pub sigma: f64,
    pub deviation_in_sigmas: f64,
    pub within_three_sigma: bool,
    /// `π/(2√3)`, the largest possible density.
    pub hexagonal_bound: String,
}

pub fn packing(point: &Point, cfg: &RunConfig) -> Result<PackingOutput> {
    let prec = cfg.precision;
    let w = point.to_real(prec);
    let samples = cfg.samples.unwrap_or(100_000);
    let r = packing_density(&w, samples, cfg.seed)?;
    let sigma = r.sigma();
    let bound = Real::pi(prec) / (Real::from_i64(2, prec) * Real::from_i64(3, prec).sqrt());
    Ok(PackingOutput {
        x: r.x.to_string(),
        y: r.y.to_string(),
        analytic: r.analytic.to_string(),
        empirical: r.empirical,
        hits: r.hits,
        samples: r.samples,
        seed: r.seed,
        sigma,
        deviation_in_sigmas: if sigma > 0.0 { r.deviation() / sigma } else { 0.0 },
        within_three_sigma: r.within_sigmas(3.0),
        hexagonal_bound: bound.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermiteRow {
    pub n: usize,
    pub p: String,
    pub q: String,
    pub hermite: bool,
    pub rank: Option<usize>,
    /// `λ_n`, undefined for `n = 0`.
    pub lambda: Option<Number>,
    /// `2|q(qx − p)|`, the profile minimum of this convergent.
    pub minimum: Number,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermiteReport {
    pub x: String,
    pub count: usize,
    pub rows: Vec<HermiteRow>,
}

pub fn hermite(src: &str, count: usize, all: bool, cfg: &RunConfig) -> Result<HermiteReport> {
    let x = parse_real_x(src)?;
    let cf = cf_expand(&x)?;
    let hermite: Vec<HermiteConvergent> = hermite_convergents(&x, count)?;
    let mut rows = Vec::new();
    for c in cf.convergents(count) {
        let rank = hermite.iter().find(|h| h.convergent.n == c.n).map(|h| h.rank);
        if rank.is_none() && !all {
            continue;
        }
        let gap = (x.scale(&c.q) - QuadraticSurd::from_int(c.p.clone())).abs();
        let minimum = gap.scale(&(&c.q * BigInt::from(2)));
        let lambda = if c.n == 0 { None } else { Some(Number::of(&cf.lambda(c.n)?, cfg.precision)) };
        rows.push(HermiteRow {
            n: c.n,
            p: c.p.to_string(),
            q: c.q.to_string(),
            hermite: rank.is_some(),
            rank,
            lambda,
            minimum: Number::of(&minimum, cfg.precision),
        });
    }
    Ok(HermiteReport { x: src.to_string(), count, rows })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AverageRow {
    pub n: usize,
    pub t_start: String,
    pub t_end: String,
    pub average: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormOutput {
    pub expression: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AverageOutput {
    pub x: String,
    pub depth: usize,
    pub tail: (usize, usize),
    pub estimate: String,
    pub spread: String,
    pub closed_form: Option<ClosedFormOutput>,
    pub delta: Option<String>,
    pub pieces: Vec<AverageRow>,
}

pub fn average(src: &str, cfg: &RunConfig) -> Result<AverageOutput> {
    let x = parse_real_x(src)?;
    let r = average_capacity_estimate(&x, cfg.depth, cfg.precision)?;
    Ok(AverageOutput {
        x: src.to_string(),
        depth: r.depth,
        tail: r.tail,
        estimate: r.estimate.to_string(),
        spread: r.spread.to_string(),
        closed_form: r
            .closed_form
            .as_ref()
            .map(|c| ClosedFormOutput { expression: c.expression.to_string(), value: c.value.to_string() }),
        delta: r.delta().map(|d| d.to_string()),
        pieces: r
            .averages
            .iter()
            .map(|a| AverageRow {
                n: a.n,
                t_start: a.t_start.to_string(),
                t_end: a.t_end.to_string(),
                average: a.value.to_string(),
            })
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub k: usize,
    pub m: String,
    pub lagrange: Number,
    /// `2/L`, the limit of the profile minima of a matching `x`.
    pub two_over_l: Number,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumOutput {
    pub count: usize,
    pub rows: Vec<SpectrumRow>,
}

pub fn spectrum(count: usize, cfg: &RunConfig) -> Result<SpectrumOutput> {
    ensure!(count >= 1, "count must be at least 1");
    let rows = lagrange_spectrum(count)
        .into_iter()
        .enumerate()
        .map(|(k, e)| {
            let inv = e.value.recip()?.scale(&BigInt::from(2));
            Ok(SpectrumRow {
                k: k + 1,
                m: e.m.to_string(),
                lagrange: Number::of(&e.value, cfg.precision),
                two_over_l: Number::of(&inv, cfg.precision),
            })
        })
        .collect::<Result<_>>()?;
    Ok(SpectrumOutput { count, rows })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleRow {
    pub a: String,
    pub b: String,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkoffOutput {
    pub limit: String,
    pub numbers: Vec<String>,
    pub triples: Vec<TripleRow>,
}

pub fn markoff(limit: &str) -> Result<MarkoffOutput> {
    let limit: BigInt = limit.trim().parse().with_context(|| format!("limit {limit:?} is not an integer"))?;
    Ok(MarkoffOutput {
        limit: limit.to_string(),
        numbers: markoff_numbers(&limit).iter().map(ToString::to_string).collect(),
        triples: markoff_triples(&limit)
            .into_iter()
            .map(|t| TripleRow { a: t.a.to_string(), b: t.b.to_string(), c: t.c.to_string() })
            .collect(),
    })
}

pub fn render_lattice(point: &Point, rows: usize, cfg: &RunConfig) -> Result<String> {
    ensure!(rows >= 1, "rows must be at least 1");
    Ok(lattice_svg(&point.to_real(cfg.precision), rows)?)
}

fn csv_table<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?)?;
    Ok(format!("{CSV_SCHEMA}\n{body}"))
}

/// CSV needs a header even for an empty table.
fn csv_with_header<R: Serialize>(header: &[&str], rows: Vec<R>) -> Result<String> {
    if rows.is_empty() {
        return Ok(format!("{CSV_SCHEMA}\n{}\n", header.join(",")));
    }
    csv_table(rows)
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// One row of the profile table.
#[derive(Serialize)]
struct ProfileCsvRow<'a> {
    x: &'a str,
    kind: &'static str,
    t: &'a str,
    f: &'a str,
    piece_index: usize,
    p: &'a str,
    q: &'a str,
}

/// A command's output in the requested format.
pub enum Rendered {
    Capacity(Box<CapacityReport>),
    Profile(ProfileReport),
    Packing(PackingOutput),
    Lattice(String),
    Hermite(HermiteReport),
    Average(AverageOutput),
    Spectrum(SpectrumOutput),
    Markoff(MarkoffOutput),
}

impl Rendered {
    pub fn emit(&self, cfg: &RunConfig) -> Result<String> {
        use Format::*;
        match self {
            Rendered::Capacity(r) => match cfg.format(Text, &[Text, Csv, Json])? {
                Json => json(r),
                Csv => {
                    #[derive(Serialize)]
                    struct Row<'a> {
                        omega: &'a str,
                        f: &'a str,
                        f_exact: Option<&'a str>,
                        g: String,
                        w0_x: &'a str,
                        w0_y: &'a str,
                        cusp: Option<&'a str>,
                        diameter: Option<&'a str>,
                    }
                    let tc = r.tangent_circle.as_ref();
                    csv_table([Row {
                        omega: &r.omega,
                        f: &r.f.decimal,
                        f_exact: r.f.exact.as_deref(),
                        g: matrix_text(&r.g),
                        w0_x: &r.w0_x.decimal,
                        w0_y: &r.w0_y.decimal,
                        cusp: tc.map(|t| t.cusp.as_str()),
                        diameter: tc.map(|t| t.diameter.decimal.as_str()),
                    }])
                }
                _ => {
                    let mut s = String::new();
                    writeln!(s, "omega: {}", r.omega)?;
                    writeln!(s, "f: {}", r.f)?;
                    writeln!(s, "g: {}", matrix_text(&r.g))?;
                    writeln!(s, "w0: {} + i*({})", r.w0_x, r.w0_y)?;
                    writeln!(s, "d^2: {}", r.d_squared)?;
                    match &r.tangent_circle {
                        Some(t) => writeln!(
                            s,
                            "tangent circle: cusp {}, diameter {} (= f/{})",
                            t.cusp, t.diameter, t.denominator_sq
                        )?,
                        None => writeln!(s, "tangent circle: cusp at infinity")?,
                    }
                    Ok(s)
                }
            },
            Rendered::Profile(r) => match cfg.format(Csv, &[Csv, Json, Svg])? {
                Json => json(r),
                Svg => profile_plot(r),
                _ => {
                    let mut rows = Vec::new();
                    for c in &r.curves {
                        let pq = |piece: usize| (c.pieces[piece].p.as_str(), c.pieces[piece].q.as_str());
                        let point = |kind, row: &'_ PointRow| {
                            let (p, q) = pq(row.piece);
                            (row.t.clone(), row.f.clone(), kind, row.piece, p, q)
                        };
                        let mut all: Vec<_> = c.samples.iter().map(|s| point("sample", s)).collect();
                        all.extend(c.breakpoints.iter().map(|b| point("breakpoint", b)));
                        all.extend(c.minima.iter().map(|m| {
                            (
                                m.t0.decimal.clone(),
                                m.value.decimal.clone(),
                                "minimum",
                                m.piece,
                                m.p.as_str(),
                                m.q.as_str(),
                            )
                        }));
                        rows.push((c.x.as_str(), all));
                    }
                    let flat = rows.iter().flat_map(|(x, all)| {
                        all.iter().map(move |(t, f, kind, piece, p, q)| ProfileCsvRow {
                            x,
                            kind,
                            t,
                            f,
                            piece_index: *piece,
                            p,
                            q,
                        })
                    });
                    csv_table(flat)
                }
            },
            Rendered::Packing(r) => match cfg.format(Text, &[Text, Csv, Json])? {
                Json => json(r),
                Csv => csv_table([r]),
                _ => {
                    let mut s = String::new();
                    writeln!(s, "omega: {} + i*{}", r.x, r.y)?;
                    writeln!(s, "analytic density (pi/4) f: {}", r.analytic)?;
                    writeln!(
                        s,
                        "empirical density: {} ({} of {} samples, seed {})",
                        r.empirical, r.hits, r.samples, r.seed
                    )?;
                    writeln!(
                        s,
                        "sigma: {:.3e}; deviation {:.2} sigma; within 3 sigma: {}",
                        r.sigma, r.deviation_in_sigmas, r.within_three_sigma
                    )?;
                    writeln!(s, "hexagonal bound pi/(2 sqrt 3): {}", r.hexagonal_bound)?;
                    Ok(s)
                }
            },
            Rendered::Lattice(svg) => {
                cfg.format(Svg, &[Svg])?;
                Ok(svg.clone())
            }
            Rendered::Hermite(r) => match cfg.format(Csv, &[Text, Csv, Json])? {
                Json => json(r),
                Text => {
                    let list: Vec<String> =
                        r.rows.iter().filter(|h| h.hermite).map(|h| format!("{}/{}", h.p, h.q)).collect();
                    Ok(format!("Hermite convergents of {} among the first {}: {{{}}}\n", r.x, r.count, list.join(", ")))
                }
                _ => {
                    #[derive(Serialize)]
                    struct Row<'a> {
                        n: usize,
                        p: &'a str,
                        q: &'a str,
                        hermite: bool,
                        rank: Option<usize>,
                        lambda: Option<&'a str>,
                        lambda_decimal: Option<&'a str>,
                        minimum: Option<&'a str>,
                        minimum_decimal: &'a str,
                    }
                    let rows: Vec<Row> = r
                        .rows
                        .iter()
                        .map(|h| Row {
                            n: h.n,
                            p: &h.p,
                            q: &h.q,
                            hermite: h.hermite,
                            rank: h.rank,
                            lambda: h.lambda.as_ref().and_then(|l| l.exact.as_deref()),
                            lambda_decimal: h.lambda.as_ref().map(|l| l.decimal.as_str()),
                            minimum: h.minimum.exact.as_deref(),
                            minimum_decimal: &h.minimum.decimal,
                        })
                        .collect();
                    csv_with_header(
                        &["n", "p", "q", "hermite", "rank", "lambda", "lambda_decimal", "minimum", "minimum_decimal"],
                        rows,
                    )
                }
            },
            Rendered::Average(r) => match cfg.format(Text, &[Text, Csv, Json])? {
                Json => json(r),
                Csv => csv_table(&r.pieces),
                _ => {
                    let mut s = String::new();
                    writeln!(s, "x: {}", r.x)?;
                    writeln!(s, "depth: {} (tail window n in [{}, {}))", r.depth, r.tail.0, r.tail.1)?;
                    writeln!(s, "estimate: {}", r.estimate)?;
                    writeln!(s, "tail spread: {}", r.spread)?;
                    match (&r.closed_form, &r.delta) {
                        (Some(c), Some(d)) => {
                            writeln!(s, "closed form: {} = {}", c.expression, c.value)?;
                            writeln!(s, "delta: {d}")?;
                        }
                        _ => writeln!(s, "closed form: none known")?,
                    }
                    Ok(s)
                }
            },
            Rendered::Spectrum(r) => match cfg.format(Csv, &[Text, Csv, Json])? {
                Json => json(r),
                Text => Ok(r.rows.iter().map(|e| format!("L_{} = {} (m = {})\n", e.k, e.lagrange, e.m)).collect()),
                _ => {
                    #[derive(Serialize)]
                    struct Row<'a> {
                        k: usize,
                        m: &'a str,
                        lagrange: Option<&'a str>,
                        lagrange_decimal: &'a str,
                        two_over_l_decimal: &'a str,
                    }
                    csv_table(r.rows.iter().map(|e| Row {
                        k: e.k,
                        m: &e.m,
                        lagrange: e.lagrange.exact.as_deref(),
                        lagrange_decimal: &e.lagrange.decimal,
                        two_over_l_decimal: &e.two_over_l.decimal,
                    }))
                }
            },
            Rendered::Markoff(r) => match cfg.format(Csv, &[Text, Csv, Json])? {
                Json => json(r),
                Text => Ok(format!("Markoff numbers up to {}: {}\n", r.limit, r.numbers.join(" "))),
                _ => csv_with_header(&["a", "b", "c"], r.triples.clone()),
            },
        }
    }
}

fn matrix_text(g: &[[String; 2]; 2]) -> String {
    format!("[[{}, {}], [{}, {}]]", g[0][0], g[0][1], g[1][0], g[1][1])
}

/// Writes to `--out` when given, otherwise to standard output.
pub fn write_output(text: &str, cfg: &RunConfig) -> Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}
