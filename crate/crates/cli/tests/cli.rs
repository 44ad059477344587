use std::process::{Command, Output};

use growth_capacity::*;
use growth_capacity_cli::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_growth-capacity"));
    cmd.args(args).env_remove("GROWTH_CAPACITY_PRECISION");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stderr.is_empty());
    String::from_utf8(out.stdout).unwrap()
}

/// Parses JSON output into its report type and checks that it serializes back unchanged.
fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(args: &[&str]) -> T {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let text = stdout(&full);
    let report: T = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again, text);
    assert_eq!(serde_json::from_str::<T>(&again).unwrap(), report);
    report
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_SCHEMA));
    lines.map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn capacity_matches_library() {
    let report: CapacityReport = round_trip(&["capacity", "--omega", "phi + i/10"]);
    let w = UpperHalfPoint::new(QuadraticSurd::phi(), QuadraticSurd::from_fraction(1, 10).unwrap()).unwrap();
    assert_eq!(report.f.exact.as_deref(), Some(growth_capacity(&w).unwrap().to_string().as_str()));
    let tc = report.tangent_circle.unwrap();
    assert_eq!(tc.cusp, tangent_circle(&w).unwrap().cusp.to_string());

    let two_i: CapacityReport = round_trip(&["capacity", "--omega", "2i"]);
    assert_eq!(two_i.f.exact.as_deref(), Some("1/2"));
    assert!(two_i.tangent_circle.is_none());
    let half_i: CapacityReport = round_trip(&["capacity", "--omega", "i/2"]);
    assert_eq!(half_i.f.exact.as_deref(), Some("1/2"));
    assert_eq!(half_i.tangent_circle.unwrap().cusp, "0");
    assert!(stdout(&["capacity", "--omega", "2i"]).contains("f: 1/2 = 0.5"));
}

#[test]
fn mixed_fields_fall_back_to_floats() {
    let r: CapacityReport = round_trip(&["capacity", "--omega", "sqrt(2) + i*sqrt(3)"]);
    assert!(r.f.exact.is_none());
    assert!((r.f.to_f64() - 1.0 / 3f64.sqrt()).abs() < 1e-15);
}

#[test]
fn profile_of_three_curves() {
    let text = stdout(&["profile", "--x", "phi", "--x", "sqrt(2)-1", "--x", "sqrt(3)-1", "--samples", "50"]);
    let rows = csv_rows(&text);
    assert_eq!(rows[0], ["x", "kind", "t", "f", "piece_index", "p", "q"]);
    let lowest_minimum = |x: &str| {
        rows.iter()
            .filter(|r| r[0] == x && r[1] == "minimum")
            .map(|r| r[3].parse::<f64>().unwrap())
            .fold(f64::INFINITY, f64::min)
    };
    let (phi, two, three) = (lowest_minimum("phi"), lowest_minimum("sqrt(2)-1"), lowest_minimum("sqrt(3)-1"));
    assert!(phi > two && two > three, "{phi} {two} {three}");
    assert_eq!(rows.iter().filter(|r| r[1] == "sample").count(), 150);

    let svg = stdout(&["profile", "--x", "phi", "--x", "sqrt(2)-1", "--x", "sqrt(3)-1", "--format", "svg"]);
    assert_eq!(svg.matches("<polyline").count(), 3);
    assert!(svg.contains("2/sqrt(5)"));
    assert_eq!(svg, stdout(&["profile", "--x", "phi", "--x", "sqrt(2)-1", "--x", "sqrt(3)-1", "--format", "svg"]));
}

#[test]
fn profile_minima_and_breakpoints_recompute() {
    let report: ProfileReport = round_trip(&["profile", "--x", "sqrt(7)-1", "--t-max", "1e5", "--samples", "20"]);
    let x = parse_surd("sqrt(7)-1").unwrap();
    let cf = cf_expand(&x).unwrap();
    let curve = &report.curves[0];
    assert!(!curve.minima.is_empty());
    for m in &curve.minima {
        let two_over_lambda = cf.lambda(m.n).unwrap().recip().unwrap().scale(&2.into());
        assert_eq!(m.value.exact.as_deref(), Some(two_over_lambda.to_string().as_str()));
    }
    for b in &curve.breakpoints {
        let (lo, hi) = (&curve.pieces[b.piece - 1], &curve.pieces[b.piece]);
        let gap = |p: &PieceRow| {
            let (p, q): (i64, i64) = (p.p.parse().unwrap(), p.q.parse().unwrap());
            (q as f64 * x.to_f64() - p as f64, q as f64)
        };
        let ((g_lo, q_lo), (g_hi, q_hi)) = (gap(lo), gap(hi));
        let t = ((q_hi * q_hi - q_lo * q_lo) / (g_lo * g_lo - g_hi * g_hi)).sqrt();
        let listed: f64 = b.t.parse().unwrap();
        assert!((t - listed).abs() <= 1e-9 * listed, "{t} vs {listed}");
        let f: f64 = b.f.parse().unwrap();
        assert!((f - (g_hi * g_hi * t + q_hi * q_hi / t)).abs() < 1e-6);
    }
}

#[test]
fn hermite_list() {
    let text = stdout(&["hermite", "--x", "sqrt(7)-1", "--n", "10", "--format", "text"]);
    assert_eq!(text.trim(), "Hermite convergents of sqrt(7)-1 among the first 10: {2/1, 5/3, 28/17, 79/48, 446/271}");
    let report: HermiteReport = round_trip(&["hermite", "--x", "sqrt(7)-1", "--n", "10", "--all"]);
    assert_eq!(report.rows.len(), 10);
    assert_eq!(report.rows.iter().filter(|r| r.hermite).count(), 5);
    let rows = csv_rows(&stdout(&["hermite", "--x", "sqrt(7)-1"]));
    assert_eq!(rows.len(), 6);
}

#[test]
fn average_reports_closed_form() {
    let text = stdout(&["average", "--x", "phi", "--depth", "40"]);
    assert!(text.contains("estimate: 0.93040"), "{text}");
    assert!(text.contains("closed form: 1/2 + (2/sqrt(5))*ln(phi) = 0.930408940"));
    assert!(text.contains("delta: 0.000000000"));
    let report: AverageOutput = round_trip(&["average", "--x", "psi", "--depth", "30"]);
    assert_eq!(report.tail, (15, 30));
    let delta: f64 = report.delta.unwrap().parse().unwrap();
    assert!(delta.abs() < 1e-6);
    let none: AverageOutput = round_trip(&["average", "--x", "sqrt(7)-1"]);
    assert!(none.closed_form.is_none());
}

#[test]
fn spectrum_and_markoff() {
    let rows = csv_rows(&stdout(&["spectrum", "--count", "3"]));
    let values: Vec<&str> = rows[1..].iter().map(|r| r[2].as_str()).collect();
    assert_eq!(values, ["sqrt(5)", "2*sqrt(2)", "sqrt(221)/5"]);
    let _: SpectrumOutput = round_trip(&["spectrum", "--count", "5"]);
    let m: MarkoffOutput = round_trip(&["markoff", "--limit", "1500"]);
    assert_eq!(m.numbers.join(" "), "1 2 5 13 29 34 89 169 194 233 433 610 985 1325");
    let rows = csv_rows(&stdout(&["markoff", "--limit", "100"]));
    assert_eq!(rows[0], ["a", "b", "c"]);
    assert!(rows.contains(&vec!["2".into(), "5".into(), "29".into()]));
}

#[test]
fn packing_is_seeded() {
    let args = ["packing", "--x", "phi", "--y", "1/20", "--samples", "20000", "--seed", "9"];
    let a: PackingOutput = round_trip(&args);
    let b: PackingOutput = round_trip(&args);
    assert_eq!(a, b);
    assert!(a.within_three_sigma);
    let hex: PackingOutput = round_trip(&["packing", "--omega", "(1+i*sqrt(3))/2", "--samples", "1000"]);
    assert_eq!(hex.analytic, hex.hexagonal_bound);
}

#[test]
fn lattice_rendering_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lattice.svg");
    let path_str = path.to_str().unwrap();
    let out = stdout(&["render-lattice", "--x", "phi-1", "--y", "0.05", "--out", path_str]);
    assert!(out.is_empty());
    let first = std::fs::read_to_string(&path).unwrap();
    assert_eq!(first, stdout(&["render-lattice", "--x", "phi-1", "--y", "0.05"]));
    let square = stdout(&["render-lattice", "--omega", "i", "--rows", "3"]);
    assert!(square.contains(r#"r="200.000""#));
}

#[test]
fn errors_go_to_stderr_with_nonzero_exit() {
    for args in [
        &["capacity", "--omega", "1 + foo"][..],
        &["capacity", "--omega", "1 - i"],
        &["profile", "--x", "3/4"],
        &["packing", "--omega", "i", "--samples", "99"],
        &["capacity", "--omega", "i", "--format", "svg"],
        &["average", "--x", "phi", "--depth", "3"],
    ] {
        let out = run(args);
        assert!(!out.status.success(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error"), "{args:?}");
    }
    let parse = run(&["capacity", "--omega", "1 + foo"]);
    assert!(String::from_utf8_lossy(&parse.stderr).contains("position 5"));
}

#[test]
fn precision_comes_from_the_environment() {
    let digits = |out: Output| {
        let r: CapacityReport = serde_json::from_slice(&out.stdout).unwrap();
        r.f.decimal.len()
    };
    let default = digits(run(&["capacity", "--omega", "phi + i/10", "--format", "json"]));
    let env = digits(run_env(
        &["capacity", "--omega", "phi + i/10", "--format", "json"],
        &[("GROWTH_CAPACITY_PRECISION", "256")],
    ));
    let flag = digits(run_env(
        &["capacity", "--omega", "phi + i/10", "--format", "json", "--precision", "64"],
        &[("GROWTH_CAPACITY_PRECISION", "256")],
    ));
    assert!(env > default && flag < default, "{flag} {default} {env}");
    assert!(!run_env(&["spectrum"], &[("GROWTH_CAPACITY_PRECISION", "32")]).status.success());
}
