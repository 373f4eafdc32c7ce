//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 8 is evaluated literally and is expected to fail: the linear part of
//! Φ_k(0, ·) is a multiple of e_k for every k, not only for k = 1, 5, 9. Any other
//! failure makes the run exit nonzero.

mod support;

use std::process::ExitCode;
use std::time::{Duration, Instant};
use tricurve::curve::lies_on;
use tricurve::exactnum::{QOmega, Ring};
use tricurve::gallery;
use tricurve::hesse::{
    a_hat, build_config, default_l0, instantiate, phi_at, phi_stage, recursion_init, run_recursion, solve_linear_stage, triple_point_clusters,
    verify_state_order, PerturbParams,
};
use tricurve::singular::{census_self, full_census, CensusOptions};
use tricurve::verify;

const KNOWN_FAILURES: [usize; 1] = [8];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn within(t: Duration, secs: u64) -> bool {
    t < Duration::from_secs(secs)
}

fn suite_outcome(s: &verify::Suite, names: &[&str]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in names {
        match s.get(n) {
            Some(c) => {
                ok &= c.passed;
                parts.push(format!("{n}: {} ({})", if c.passed { "ok" } else { "FAILED" }, c.detail));
            }
            None => {
                ok = false;
                parts.push(format!("{n}: missing"));
            }
        }
    }
    outcome(ok, parts.join("; "))
}

fn c1() -> Outcome {
    let t = Instant::now();
    let ok = lies_on(&gallery::prop1a_equation(), &gallery::prop1a_param());
    let dt = t.elapsed();
    outcome(ok && within(dt, 1), format!("F(x(t), y(t), z(t)) = 0: {ok}, {dt:.2?}"))
}

fn c2() -> Outcome {
    let t = Instant::now();
    let opts = CensusOptions::with_precision(192);
    match full_census(&[gallery::prop1a_param()], &opts) {
        Ok(c) => {
            let dt = t.elapsed();
            let ok = c.len() == 12 && c.entries.iter().all(|e| e.multiplicity == 3 && e.ordinary) && c.delta_sum == 36 && c.pair_count == 72 && within(dt, 60);
            outcome(
                ok,
                format!(
                    "{} points {:?}, ordinary {}, delta {}, pairs {}, 192 bits, {dt:.2?}",
                    c.len(),
                    c.histogram(),
                    c.all_ordinary(),
                    c.delta_sum,
                    c.pair_count
                ),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn c3() -> Outcome {
    let t = Instant::now();
    match gallery::implicit_agreement(&gallery::prop1a_param(), &gallery::prop1a_equation()) {
        Ok(r) => {
            let dt = t.elapsed();
            let ok = r.as_ref().is_some_and(|r| r.is_rational() && !r.is_zero()) && within(dt, 120);
            outcome(ok, format!("implicit equation = {} * F, {dt:.2?}", r.map_or("?".into(), |r| r.to_string())))
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn c4() -> Outcome {
    let tangency = match gallery::pipeline_tangencies() {
        Ok(v) => v,
        Err(e) => return outcome(false, e.to_string()),
    };
    let p = gallery::prop1a_pipeline();
    let scalar = p.implicit[0].ratio_to(&gallery::prop1a_equation());
    let same_param = p.params[0].coords() == gallery::prop1a_param().coords();
    outcome(
        tangency == [3, 3, 3] && scalar.is_some() && same_param,
        format!(
            "(C2.L2) at the diagonal points {tangency:?}; rebuilt equation = {} * F; parametrization identical after rescaling: {same_param}",
            scalar.map_or("?".into(), |r| r.to_string())
        ),
    )
}

fn c5() -> Outcome {
    let t = Instant::now();
    match verify::prop1b(&CensusOptions::default(), None) {
        Ok(s) => {
            let dt = t.elapsed();
            let mut names: Vec<&str> = s.checks.iter().map(|c| c.name.as_str()).filter(|n| n.starts_with("identity")).collect();
            names.extend(["cubes", "census", "breakdown"]);
            let mut o = suite_outcome(&s, &names);
            o.passed &= within(dt, 60);
            o.detail.push_str(&format!("; {dt:.2?}"));
            o
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn c6(linear: &verify::Suite) -> Outcome {
    suite_outcome(linear, &["t-vector", "admissible"])
}

fn c7(linear: &verify::Suite) -> Outcome {
    suite_outcome(linear, &["tau12", "e1", "p12", "e-at-hat"])
}

fn c8() -> Outcome {
    let run = || -> Result<Outcome, tricurve::hesse::HesseError> {
        let cfg = build_config(&default_l0())?;
        let lin = solve_linear_stage(&cfg)?;
        let phi = phi_stage(&cfg, &lin)?;
        let init = recursion_init(&cfg, &a_hat())?;
        let x = PerturbParams::from_vec(&(0..18).map(|i| QOmega::ints(i - 3, 1)).collect::<Vec<_>>());
        let y = PerturbParams::from_vec(&(0..18).map(|i| QOmega::frac(2 * i + 1, 5)).collect::<Vec<_>>());
        let xy = PerturbParams::from_vec(&x.to_vec().iter().zip(y.to_vec()).map(|(a, b)| a.add(&b)).collect::<Vec<_>>());
        let (fx, fy, fxy, f0) = (phi_at(&init, &x)?, phi_at(&init, &y)?, phi_at(&init, &xy)?, phi_at(&init, &PerturbParams::zero())?);
        let affine = (0..9).all(|k| fxy[k].sub(&fx[k]).sub(&fy[k]).add(&f0[k]).is_zero());
        let det = phi.det == tricurve::hesse::expected_phi_det();
        let special = [0, 4, 8].iter().all(|&k| phi.proportional[k].is_some());
        let others: Vec<usize> = (0..9).filter(|k| ![0, 4, 8].contains(k)).collect();
        let some_other_fails = others.iter().any(|&k| phi.proportional[k].is_none());
        let ratios =
            (0..9).map(|k| format!("c{} = {}", k + 1, phi.proportional[k].as_ref().map_or("none".into(), |c| c.to_string()))).collect::<Vec<_>>().join(", ");
        Ok(outcome(
            affine && det && special && some_other_fails,
            format!("affine {affine}; det = {} ({det}); proportional for 1, 5, 9: {special}; fails for some other k: {some_other_fails} [{ratios}]", phi.det),
        ))
    };
    run().unwrap_or_else(|e| outcome(false, e.to_string()))
}

fn c9() -> Outcome {
    let t = Instant::now();
    let cfg = match build_config(&default_l0()) {
        Ok(c) => c,
        Err(e) => return outcome(false, e.to_string()),
    };
    // every step compares its homogeneous matrix with the previous one
    let state = match run_recursion(&cfg, 7) {
        Ok(s) => s,
        Err(e) => return outcome(false, e.to_string()),
    };
    let dt = t.elapsed();
    let mut failed = Vec::new();
    for n in 0..=7 {
        match verify_state_order(&state.truncated(n)) {
            Ok(c) if c.passed() => {}
            Ok(c) => failed.push(format!("n = {n}: {:?}", c.failure)),
            Err(e) => failed.push(format!("n = {n}: {e}")),
        }
    }
    outcome(
        failed.is_empty() && state.system_matrix.is_some() && within(dt, 600),
        format!("order 7 in {dt:.2?}, matrix unchanged over 7 steps; order check failures: {failed:?}"),
    )
}

fn c10() -> Outcome {
    let cfg = match build_config(&default_l0()) {
        Ok(c) => c,
        Err(e) => return outcome(false, e.to_string()),
    };
    let state = match run_recursion(&cfg, 3) {
        Ok(s) => s,
        Err(e) => return outcome(false, e.to_string()),
    };
    let opts = CensusOptions::default();
    let us = [QOmega::frac(1, 50), QOmega::frac(1, 100), QOmega::frac(1, 200)];
    let mut ok = true;
    let mut notes = Vec::new();
    let mut diameters = vec![[0.0f64; 9]; us.len()];
    for (row, u) in us.iter().enumerate() {
        let t = Instant::now();
        let census = match instantiate(&state, u).map_err(|e| e.to_string()).and_then(|c| census_self(&c, &opts).map_err(|e| e.to_string())) {
            Ok(c) => c,
            Err(e) => return outcome(false, format!("u = {u}: {e}")),
        };
        let dt = t.elapsed();
        let clusters = triple_point_clusters(&cfg, &census, opts.precision_bits);
        let vertices = clusters.iter().filter(|c| c.label.starts_with('(') && c.is_exact_triple(&census)).count();
        let split = clusters.iter().filter(|c| c.label.starts_with('p') && c.is_split_triple(&census)).count();
        for c in clusters.iter().filter(|c| c.label.starts_with('p')) {
            let k: usize = c.label[1..].parse().expect("label p1..p9");
            diameters[row][k - 1] = c.diameter_log2;
        }
        let good = clusters.len() == 12 && vertices == 3 && split == 9 && census.len() == 30 && within(dt, 600);
        ok &= good;
        notes.push(format!("u = {u}: {} clusters, {vertices} exact vertex triples, {split} node triples, {dt:.1?}", clusters.len()));
    }
    let xs: Vec<f64> = us.iter().map(|u| u.to_c64().0.log2()).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let slopes: Vec<f64> = (0..9)
        .map(|k| {
            let ys: Vec<f64> = diameters.iter().map(|r| r[k]).collect();
            let my = ys.iter().sum::<f64>() / ys.len() as f64;
            let sxy: f64 = xs.iter().zip(&ys).map(|(a, b)| (a - mx) * (b - my)).sum();
            let sxx: f64 = xs.iter().map(|a| (a - mx) * (a - mx)).sum();
            sxy / sxx
        })
        .collect();
    ok &= slopes.iter().all(|s| (4.5..=5.5).contains(s));
    notes.push(format!("slopes {}", slopes.iter().map(|s| format!("{s:.3}")).collect::<Vec<_>>().join(" ")));
    outcome(ok, notes.join("; "))
}

fn c11() -> Outcome {
    let t = Instant::now();
    let results = support::props::run_all(200);
    let ok = results.iter().all(|(_, r)| r.is_ok());
    let parts: Vec<String> = results
        .into_iter()
        .map(|(name, r)| match r {
            Ok(n) => format!("{name}: {n} cases"),
            Err(e) => format!("{name}: FAILED {e}"),
        })
        .collect();
    outcome(ok, format!("{}; {:.1?}", parts.join(", "), t.elapsed()))
}

fn main() -> ExitCode {
    let linear = verify::hesse_linear();
    let lin = |f: fn(&verify::Suite) -> Outcome| match &linear {
        Ok(s) => f(s),
        Err(e) => outcome(false, e.to_string()),
    };
    let criteria: Vec<(usize, &str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, "degree 10 identity", Box::new(c1)),
        (2, "degree 10 census", Box::new(c2)),
        (3, "implicitization", Box::new(c3)),
        (4, "tangency pipeline", Box::new(c4)),
        (5, "three quartics", Box::new(c5)),
        (6, "Hesse configuration", Box::new(move || lin(c6))),
        (7, "linear stage", Box::new(move || lin(c7))),
        (8, "Phi stage", Box::new(c8)),
        (9, "recursion to order 7", Box::new(c9)),
        (10, "instantiation probe", Box::new(c10)),
        (11, "property suites", Box::new(c11)),
    ];
    let mut unexpected = 0;
    for (n, name, f) in &criteria {
        let t = Instant::now();
        let o = f();
        let tag = match (o.passed, KNOWN_FAILURES.contains(n)) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!("[{tag}] {n:>2} {name} ({:.1?}): {}", t.elapsed(), o.detail);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed");
        ExitCode::FAILURE
    }
}
