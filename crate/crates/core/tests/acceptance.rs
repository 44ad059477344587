//! End-to-end checks of the library against its headline claims. Prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use growth_capacity::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PREC: usize = 128;

fn s(src: &str) -> QuadraticSurd {
    parse_surd(src).expect("valid literal")
}

fn r(v: f64) -> Real {
    Real::from_f64(v, PREC).expect("finite")
}

fn named() -> Vec<(&'static str, QuadraticSurd)> {
    vec![
        ("phi", QuadraticSurd::phi()),
        ("sqrt(2)-1", s("sqrt(2)-1")),
        ("sqrt(3)-1", s("sqrt(3)-1")),
        ("sqrt(7)-1", s("sqrt(7)-1")),
        ("1+sqrt(2)", QuadraticSurd::psi()),
        ("(11+sqrt(221))/10", markoff_quadratic_5()),
    ]
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

fn golden_optimum() -> Outcome {
    let bound_phi = 2.0 / 5f64.sqrt();
    let bound = Real::from_i64(2, PREC) / Real::from_i64(8, PREC).sqrt();
    let tol = r(1e-12);
    let mut ok = true;
    let mut notes = Vec::new();
    let start = Instant::now();
    let phi = sup_of_minima(&QuadraticSurd::phi(), 30).expect("phi");
    let took = start.elapsed();
    let target = Real::from_i64(2, PREC) / Real::from_i64(5, PREC).sqrt();
    let err = (phi.value.to_real(PREC) - &target).abs();
    ok &= err < tol && within(took, 1.0);
    notes.push(format!(
        "phi {} (2/sqrt5 {:.10}, err {:.1e})",
        phi.value.to_real(PREC).to_decimal(12),
        bound_phi,
        err.to_f64()
    ));
    for name in ["sqrt(2)-1", "sqrt(3)-1", "sqrt(7)-1", "1+sqrt(2)"] {
        let start = Instant::now();
        let m = sup_of_minima(&s(name), 30).expect("irrational");
        let took = start.elapsed();
        let v = m.value.to_real(PREC);
        ok &= v <= &bound + &tol && within(took, 1.0);
        notes.push(format!(
            "{name} {} (largest tail minimum {})",
            v.to_decimal(10),
            m.largest.to_real(PREC).to_decimal(10)
        ));
    }
    check(ok, format!("2/L(x) limit of minima: {}", notes.join("; ")))
}

fn hermite_lists() -> Outcome {
    let start = Instant::now();
    let x = s("sqrt(7)-1");
    let humbert: Vec<BigRational> = hermite_convergents(&x, 10)
        .expect("irrational")
        .into_iter()
        .map(|h| BigRational::new(h.convergent.p, h.convergent.q))
        .collect();
    let expected: Vec<BigRational> = [(2, 1), (5, 3), (28, 17), (79, 48), (446, 271)]
        .iter()
        .map(|&(p, q)| BigRational::new(p.into(), q.into()))
        .collect();
    let oracle = hermite_oracle_geodesic(&x, 1e5).expect("irrational");
    let took = start.elapsed();
    let list: Vec<String> = humbert.iter().map(|q| q.to_string()).collect();
    check(
        humbert == expected && oracle == humbert && within(took, 5.0),
        format!(
            "H(sqrt(7)-1) = {{{}}}, geodesic oracle agrees: {} ({:.2}s)",
            list.join(", "),
            oracle == humbert,
            took.as_secs_f64()
        ),
    )
}

fn averaged_capacity() -> Outcome {
    let start = Instant::now();
    let phi = average_capacity_estimate(&QuadraticSurd::phi(), 40, PREC).expect("phi");
    let psi = average_capacity_estimate(&QuadraticSurd::psi(), 40, PREC).expect("psi");
    let g_phi = closed_form_g(GoldenOrSilver::Phi, PREC).value;
    let g_psi = closed_form_g(GoldenOrSilver::Psi, PREC).value;
    let d_phi = (&phi.estimate - &g_phi).abs();
    let d_psi = (&psi.estimate - &g_psi).abs();
    let tol = r(1e-4);
    let above = phi.estimate > Real::from_i64(2, PREC) / Real::from_i64(5, PREC).sqrt();
    let mut ok = d_phi < tol && d_psi < tol && above;
    let mut others = Vec::new();
    for name in ["sqrt(2)-1", "sqrt(3)-1", "1+sqrt(2)", "sqrt(7)-1"] {
        let est = average_capacity_estimate(&s(name), 40, PREC).expect("irrational").estimate;
        ok &= est < g_phi;
        others.push(format!("{name} {}", est.to_decimal(6)));
    }
    let took = start.elapsed();
    ok &= within(took, 10.0);
    check(
        ok,
        format!(
            "g_phi est {} vs {} (|d| {:.1e}), g_psi est {} vs {} (|d| {:.1e}); below g_phi: {} ({:.2}s)",
            phi.estimate.to_decimal(8),
            g_phi.to_decimal(8),
            d_phi.to_f64(),
            psi.estimate.to_decimal(8),
            g_psi.to_decimal(8),
            d_psi.to_f64(),
            others.join(", "),
            took.as_secs_f64()
        ),
    )
}

fn random_word(rng: &mut ChaCha8Rng) -> ModularMatrix {
    let len = rng.gen_range(0..=12);
    let t_inv = ModularMatrix::t_pow(&BigInt::from(-1));
    (0..len).fold(ModularMatrix::identity(), |g, _| match rng.gen_range(0..3) {
        0 => &g * &ModularMatrix::s(),
        1 => &g * &ModularMatrix::t(),
        _ => &g * &t_inv,
    })
}

fn modular_invariance() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let tol = r(1e-12);
    let mut worst = Real::zero(PREC);
    let mut ok = true;
    for _ in 0..500 {
        let w =
            UpperHalfPoint::new(r(rng.gen_range(-2.0..2.0)), r(10f64.powf(rng.gen_range(-1.3..0.7)))).expect("y > 0");
        let g = random_word(&mut rng);
        ok &= g.determinant().is_one();
        let image = mobius_apply(&g, &w);
        let diff = (growth_capacity(&image).expect("reduces") - growth_capacity(&w).expect("reduces")).abs();
        worst = worst.max(diff);
    }
    ok &= worst < tol;
    let mut exact = 0;
    for k in 0..50 {
        let x = if k % 2 == 0 {
            QuadraticSurd::new(rng.gen_range(-9..10), rng.gen_range(1..4), rng.gen_range(1..6), 5).expect("valid")
        } else {
            QuadraticSurd::from_fraction(rng.gen_range(-30..30), rng.gen_range(1..12)).expect("valid")
        };
        let y = QuadraticSurd::from_fraction(rng.gen_range(1..40), rng.gen_range(1..60)).expect("valid");
        let w = UpperHalfPoint::new(x, y).expect("y > 0");
        let image = mobius_apply(&random_word(&mut rng), &w);
        if growth_capacity(&image).expect("reduces") == growth_capacity(&w).expect("reduces") {
            exact += 1;
        }
    }
    ok &= exact == 50;
    let took = start.elapsed();
    ok &= within(took, 10.0);
    check(
        ok,
        format!(
            "max |f(g.w) - f(w)| = {:.1e} over 500 float cases, {exact}/50 exact cases equal ({:.2}s)",
            worst.to_f64(),
            took.as_secs_f64()
        ),
    )
}

fn envelope() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let t_max = 1e6;
    let tol = r(1e-12);
    let mut worst = Real::zero(PREC);
    for (_, x) in named() {
        let profile = CapacityProfile::until(&x, t_max).expect("irrational");
        let xr = x.to_real(PREC);
        for _ in 0..200 {
            let t = r(10f64.powf(rng.gen_range(-2.0..6.0)));
            let via_profile = profile.evaluate(&t).expect("in range");
            let w = UpperHalfPoint::new(xr.clone(), Real::one(PREC) / &t).expect("y > 0");
            let via_reduction = growth_capacity(&w).expect("reduces");
            worst = worst.max((via_profile - via_reduction).abs());
        }
    }
    check(worst < tol, format!("max |profile - reduction| = {:.1e} over 6 x and 200 t each", worst.to_f64()))
}

fn markoff_data() -> Outcome {
    let expected: Vec<BigInt> =
        [1, 2, 5, 13, 29, 34, 89, 169, 194, 233, 433, 610, 985, 1325].iter().map(|&m| BigInt::from(m)).collect();
    let numbers = markoff_numbers(&BigInt::from(1500));
    let spectrum = lagrange_spectrum(2);
    let ok = numbers == expected
        && spectrum[0].value == QuadraticSurd::sqrt_of(5).expect("5")
        && spectrum[1].value == QuadraticSurd::sqrt_of(8).expect("8");
    let list: Vec<String> = numbers.iter().map(|m| m.to_string()).collect();
    check(
        ok,
        format!("Markoff numbers <= 1500: {}; L1 = {}, L2 = {}", list.join(" "), spectrum[0].value, spectrum[1].value),
    )
}

fn shortest_vector_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut agree = 0;
    for _ in 0..1000 {
        let x = QuadraticSurd::from_fraction(rng.gen_range(-1000..=1000), rng.gen_range(1..=997)).expect("valid");
        let x = QuadraticSurd::from_ratio(&(x.as_rational().expect("rational") % BigRational::from_integer(3.into())));
        let y = QuadraticSurd::from_fraction(rng.gen_range(50..=3000), 1000).expect("valid");
        let w = UpperHalfPoint::new(x, y).expect("y > 0");
        if shortest_vector(&w).norm_sq == shortest_vector_naive(&w, 8) {
            agree += 1;
        }
    }
    check(
        agree == 1000,
        format!("Lagrange-Gauss equals enumeration |a|,|b| <= 8 on {agree}/1000 exact points with Im >= 0.05"),
    )
}

fn packing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut inside = 0;
    let mut worst_z: f64 = 0.0;
    for seed in 0..20u64 {
        let w = UpperHalfPoint::new(r(rng.gen_range(0.0..1.0)), r(rng.gen_range(0.05..1.5))).expect("y > 0");
        let report = packing_density(&w, 20_000, seed).expect("enough samples");
        worst_z = worst_z.max(report.deviation() / report.sigma());
        inside += usize::from(report.within_sigmas(3.0));
    }
    let half = Real::one(PREC) / Real::from_i64(2, PREC);
    let root3 = Real::from_i64(3, PREC).sqrt();
    let rho = UpperHalfPoint::new(half.clone(), &root3 * &half).expect("y > 0");
    let peak = analytic_density(&rho, PREC).expect("reduces");
    let expected = Real::pi(PREC) / (Real::from_i64(2, PREC) * &root3);
    let peak_err = (&peak - &expected).abs();
    // nothing in D0 beats the corner
    let mut grid_max = Real::zero(PREC);
    for i in 0..=20 {
        for j in 0..=20 {
            let x = -0.5 + f64::from(i) / 20.0;
            let y = (1.0 - x * x).sqrt() + f64::from(j) / 10.0;
            let w = UpperHalfPoint::new(r(x), r(y)).expect("y > 0");
            grid_max = grid_max.max(analytic_density(&w, PREC).expect("reduces"));
        }
    }
    let tol = r(1e-12);
    let ok = inside == 20 && peak_err < tol && grid_max <= &expected + &tol;
    check(
        ok,
        format!(
            "{inside}/20 Monte-Carlo cases within 3 sigma (worst {worst_z:.2} sigma); density at e^(i pi/3) = {} (err {:.1e}), max over D0 grid {}",
            peak.to_decimal(12),
            peak_err.to_f64(),
            grid_max.to_decimal(12)
        ),
    )
}

fn non_hermite_gap() -> Outcome {
    let half = QuadraticSurd::from_fraction(1, 2).expect("1/2");
    let mut checked = 0;
    let mut ok = true;
    for (_, x) in named() {
        let cf = cf_expand(&x).expect("irrational");
        for c in cf.convergents(20) {
            if !humbert_is_hermite(&x, &c.p, &c.q).expect("irreducible") {
                let u = (x.scale(&c.q) - QuadraticSurd::from_int(c.p.clone())).scale(&c.q).abs();
                ok &= u > half;
                checked += 1;
            }
        }
    }
    check(ok && checked > 0, format!("{checked} non-Hermite convergents (depth 20, 6 x) all have |q(qx-p)| > 1/2"))
}

type Check = fn() -> Outcome;

fn main() -> ExitCode {
    let criteria: [(&str, Check); 9] = [
        ("golden-ratio optimum", golden_optimum),
        ("Hermite lists", hermite_lists),
        ("averaged capacity", averaged_capacity),
        ("modular invariance", modular_invariance),
        ("envelope cross-check", envelope),
        ("Markoff data", markoff_data),
        ("shortest-vector oracle", shortest_vector_oracle),
        ("packing density", packing),
        ("non-Hermite gap", non_hermite_gap),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!outcome.pass);
        println!("[{verdict}] {}. {name}: {} [{:.2}s]", k + 1, outcome.detail, start.elapsed().as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
