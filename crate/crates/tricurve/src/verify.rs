//! Verification suites: named exact checks over the gallery curves and the perturbation
//! stages, shared by the command line and the acceptance harness.

use crate::curve::{lies_on, ParamCurve};
use crate::exactnum::{QOmega, Ring};
use crate::gallery::{self, is_polynomial_in_cubes, GalleryEntry};
use crate::hesse::{
    a_hat, build_config, check_line_admissible, compute_p_prime, compute_tau, default_l0, expected_phi_det, param_values, phi_at, phi_stage, recursion_init,
    solve_linear_stage, HesseError, PerturbParams,
};
use crate::series::LinExpr;
use crate::singular::{full_census, CensusOptions, SingularError};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Suite {
    pub target: String,
    pub checks: Vec<Check>,
}

impl Suite {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Singular(#[from] SingularError),
    #[error(transparent)]
    Hesse(#[from] HesseError),
    #[error("{0}")]
    Shape(String),
}

pub const TARGETS: [&str; 4] = ["prop1a", "prop1b", "hesse-linear", "hesse-phi"];

/// Runs a suite; `components` replaces the parametrizations of the gallery entry.
pub fn run(target: &str, opts: &CensusOptions, components: Option<Vec<ParamCurve>>) -> Result<Suite, VerifyError> {
    match target {
        "prop1a" => prop1a(opts, components),
        "prop1b" => prop1b(opts, components),
        "hesse-linear" => hesse_linear(),
        "hesse-phi" => hesse_phi(),
        _ => Err(VerifyError::Shape(format!("unknown target {target}"))),
    }
}

fn replace(mut e: GalleryEntry, components: Option<Vec<ParamCurve>>) -> Result<GalleryEntry, VerifyError> {
    if let Some(c) = components {
        if c.len() != e.params.len() {
            return Err(VerifyError::Shape(format!("{} needs {} components, got {}", e.id, e.params.len(), c.len())));
        }
        e.params = c;
    }
    Ok(e)
}

pub fn prop1a(opts: &CensusOptions, components: Option<Vec<ParamCurve>>) -> Result<Suite, VerifyError> {
    let e = replace(gallery::prop1a(), components)?;
    let (c, f) = (&e.params[0], &e.implicit[0]);
    let mut checks = vec![Check::new("identity", lies_on(f, c), "F(x(t), y(t), z(t)) = 0")];
    let census = full_census(std::slice::from_ref(c), opts)?;
    let want = &e.expected[0];
    checks.push(Check::new(
        "census",
        census.len() == 12 && census.histogram() == want.multiplicities && census.all_ordinary(),
        format!("{} points, multiplicities {:?}, ordinary {}", census.len(), census.histogram(), census.all_ordinary()),
    ));
    checks.push(Check::new("delta", census.delta_sum == 36, format!("delta sum {}", census.delta_sum)));
    checks.push(Check::new("pairs", census.pair_count == 72, format!("ordered pairs {}", census.pair_count)));
    let ratio = gallery::implicit_agreement(c, f).map_err(SingularError::from)?;
    checks.push(Check::new(
        "implicitization",
        ratio.as_ref().is_some_and(|r| r.is_rational()),
        match &ratio {
            Some(r) => format!("implicit equation = {r} * F"),
            None => "implicit equation differs from F".into(),
        },
    ));
    let tangency = gallery::pipeline_tangencies().map_err(SingularError::from)?;
    checks.push(Check::new("tangency", tangency == [3, 3, 3], format!("(C2.L2) at (0,0), (1,1), (-1,-1): {tangency:?}")));
    let p = gallery::prop1a_pipeline();
    let scalar = p.implicit[0].ratio_to(f);
    checks.push(Check::new(
        "pipeline",
        scalar.is_some() && p.params[0].coords() == gallery::prop1a_param().coords(),
        match scalar {
            Some(r) => format!("rebuilt equation = {r} * F after (x, y, z) -> (x, 3^(1/3) y, -z)"),
            None => "rebuilt equation differs from F".into(),
        },
    ));
    Ok(Suite { target: "prop1a".into(), checks })
}

pub fn prop1b(opts: &CensusOptions, components: Option<Vec<ParamCurve>>) -> Result<Suite, VerifyError> {
    let e = replace(gallery::prop1b(), components)?;
    let mut checks = Vec::new();
    for &(p, f) in &e.on {
        checks.push(Check::new(format!("identity {}/{}", p + 1, f + 1), lies_on(&e.implicit[f], &e.params[p]), e.params[p].label.clone()));
    }
    checks.push(Check::new("cubes", is_polynomial_in_cubes(e.implicit[3].poly()), "degree 12 product is a polynomial in x^3, y^3, z^3"));
    for k in 0..3 {
        let c = full_census(std::slice::from_ref(&e.params[k]), opts)?;
        checks.push(Check::new(
            format!("quartic {} census", k + 1),
            e.expected[k].matches(&c),
            format!("{} points, multiplicities {:?}, delta {}", c.len(), c.histogram(), c.delta_sum),
        ));
    }
    let census = full_census(&e.params, opts)?;
    checks.push(Check::new(
        "census",
        e.expected[3].matches(&census),
        format!("{} points, multiplicities {:?}, ordinary {}", census.len(), census.histogram(), census.all_ordinary()),
    ));
    let own = census.entries.iter().filter(|x| x.branches.iter().all(|b| b.component == x.branches[0].component)).count();
    let shared = census.entries.iter().filter(|x| (0..3).all(|k| x.branches.iter().any(|b| b.component == k))).count();
    checks.push(Check::new("breakdown", own == 3 && shared == 16, format!("{own} on a single quartic, {shared} on all three")));
    Ok(Suite { target: "prop1b".into(), checks })
}

fn q(re: (i64, i64), w: (i64, i64)) -> QOmega {
    QOmega::frac(re.0, re.1).add(&QOmega::omega().mul(&QOmega::frac(w.0, w.1)))
}

fn linear(terms: &[(&str, QOmega)]) -> LinExpr {
    terms.iter().fold(LinExpr::default(), |s, (n, c)| s.add(&LinExpr::var(n).scale(c)))
}

/// Printed e_1.
pub fn printed_e1() -> LinExpr {
    let h = QOmega::frac(1, 2);
    linear(&[
        ("a1", h.clone()),
        ("a4", h.clone()),
        ("a7", QOmega::int(-4)),
        ("b1", h.clone()),
        ("b2", q((-1, 7), (2, 7))),
        ("b3", q((-3, 7), (-2, 7))),
        ("b4", h),
        ("b5", q((-3, 7), (-2, 7))),
        ("b6", q((-1, 7), (2, 7))),
        ("b7", QOmega::int(-4)),
        ("b8", QOmega::int(1)),
        ("b9", QOmega::int(1)),
    ])
}

/// Printed X component of 6p'_{1,2}(0).
pub fn printed_6p12_x() -> LinExpr {
    linear(&[
        ("a4", QOmega::int(3)),
        ("b1", QOmega::int(-2)),
        ("b2", QOmega::ints(2, 4)),
        ("b3", QOmega::ints(-2, -4)),
        ("b4", QOmega::int(1)),
        ("b7", QOmega::int(4)),
        ("b8", QOmega::ints(4, 2)),
        ("b9", QOmega::ints(2, -2)),
    ])
}

/// Printed intersection parameters t_1..t_9 of L0 with the nine lines.
pub fn printed_t() -> [QOmega; 9] {
    let (w, wb, two) = (QOmega::omega(), QOmega::omega_bar(), QOmega::int(2));
    [
        QOmega::int(-1),
        QOmega::int(1).sub(&w.mul(&two)),
        QOmega::int(1).sub(&wb.mul(&two)),
        two.clone(),
        wb.mul(&two),
        w.mul(&two),
        QOmega::frac(1, 2),
        wb.neg(),
        w.neg(),
    ]
}

pub fn hesse_linear() -> Result<Suite, VerifyError> {
    let cfg = build_config(&default_l0())?;
    let mut checks = vec![Check::new("t-vector", cfg.t == printed_t(), cfg.t.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", "))];
    let adm = check_line_admissible(&default_l0())?;
    checks.push(Check::new(
        "admissible",
        adm.nonzero_b_solution && adm.full_rank(),
        format!("solution dimension {}, rank of Phi {:?}", adm.solution_dimension, adm.phi_rank),
    ));
    let (tau, _) = compute_tau(&cfg, 0, 1)?;
    let want = LinExpr::var("a4").add(&LinExpr::var("b4").scale(&QOmega::frac(1, 3)));
    checks.push(Check::new("tau12", tau == want, format!("{tau:?}")));
    let report = solve_linear_stage(&cfg)?;
    let ratio = report.e[0].linear_ratio(&printed_e1()).filter(|_| report.e[0].constant.is_zero());
    checks.push(Check::new("e1", ratio.is_some(), ratio.map_or("differs from the printed form".into(), |r| format!("e1 = {r} * printed"))));
    let (x, _) = compute_p_prime(&cfg, 0, 1)?;
    let x6 = x.scale(&QOmega::int(6));
    checks.push(Check::new("p12", x6 == printed_6p12_x(), format!("{x6:?}")));
    let hat = a_hat();
    let values = param_values(&hat);
    let at_hat: Vec<QOmega> = report.e.iter().map(|e| e.eval(&values).unwrap_or_else(|| QOmega::int(1))).collect();
    checks.push(Check::new("e-at-hat", at_hat.iter().all(|v| v.is_zero()), at_hat.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")));
    Ok(Suite { target: "hesse-linear".into(), checks })
}

pub fn hesse_phi() -> Result<Suite, VerifyError> {
    let cfg = build_config(&default_l0())?;
    let lin = solve_linear_stage(&cfg)?;
    let phi = phi_stage(&cfg, &lin)?;
    let init = recursion_init(&cfg, &a_hat())?;
    let point = |f: &dyn Fn(i64) -> QOmega| PerturbParams::from_vec(&(0..18).map(f).collect::<Vec<_>>());
    let x = point(&|i| QOmega::ints(i - 3, 1));
    let y = point(&|i| QOmega::frac(2 * i + 1, 5));
    let xy = PerturbParams::from_vec(&x.to_vec().iter().zip(y.to_vec()).map(|(a, b)| a.add(&b)).collect::<Vec<_>>());
    let (fx, fy, fxy, f0) = (phi_at(&init, &x)?, phi_at(&init, &y)?, phi_at(&init, &xy)?, phi_at(&init, &PerturbParams::zero())?);
    let affine = (0..9).all(|k| fxy[k].sub(&fx[k]).sub(&fy[k]).add(&f0[k]).is_zero() && f0[k] == phi.constants[k]);
    let mut checks = vec![Check::new("affine", affine, "second differences of Phi(0, .) vanish")];
    checks.push(Check::new("det", phi.det == expected_phi_det(), format!("det = {} (64/(3^12*49))", phi.det)));
    checks.push(Check::new("rank", phi.rank == 9, format!("rank {}", phi.rank)));
    let special = [0, 4, 8];
    checks.push(Check::new(
        "proportional-1-5-9",
        special.iter().all(|&k| phi.proportional[k].is_some()),
        special.iter().map(|&k| format!("c{} = {}", k + 1, opt(&phi.proportional[k]))).collect::<Vec<_>>().join(", "),
    ));
    checks.push(Check::new(
        "constants-1-5-9",
        special.iter().all(|&k| phi.constants[k].is_zero()),
        (0..9).map(|k| format!("d{} = {}", k + 1, phi.constants[k])).collect::<Vec<_>>().join(", "),
    ));
    Ok(Suite { target: "hesse-phi".into(), checks })
}

fn opt(c: &Option<QOmega>) -> String {
    c.as_ref().map_or("none".into(), |c| c.to_string())
}
