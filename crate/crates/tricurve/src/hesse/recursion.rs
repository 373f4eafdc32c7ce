use super::branch::{branch_series, constant_exprs, lambda_table, param_series, LambdaTable};
use super::linear::{solve_linear_stage, LinearReport};
use super::{a_hat, default_l0, family_curve, param_unknowns, HesseConfig, HesseError, PerturbParams};
use crate::curve::ParamCurve;
use crate::exactnum::{Field, QOmega, Ring};
use crate::poly::bareiss_det;
use crate::series::{linear_rank, solve_affine_system, LinExpr, SolveError, Subspace, TruncSeries, Unknown};
use rayon::prelude::*;

/// Order-n truncation of a(u) and of the branch parameters S_{k,j}(u).
#[derive(Clone, Debug)]
pub struct PerturbState {
    pub cfg: HesseConfig,
    pub lambda: LambdaTable,
    /// a_0, …, a_n; each holds a_1..a_9, b_1..b_9.
    pub a: Vec<Vec<QOmega>>,
    /// s[k][j] = (S_{k,j,0}, …, S_{k,j,n}).
    pub s: Vec<[Vec<QOmega>; 3]>,
    /// Homogeneous part of the system for a_n on E, once a step has run.
    pub system_matrix: Option<Vec<Vec<QOmega>>>,
}

impl PerturbState {
    pub fn order(&self) -> usize {
        self.a.len() - 1
    }

    /// Same data up to order m.
    pub fn truncated(&self, m: usize) -> PerturbState {
        assert!(m <= self.order());
        let mut t = self.clone();
        t.a.truncate(m + 1);
        for row in t.s.iter_mut() {
            for v in row.iter_mut() {
                v.truncate(m + 1);
            }
        }
        t
    }

    /// a(u) = Σ a_m u^m at u = u0.
    pub fn params_at(&self, u0: &QOmega) -> PerturbParams {
        let mut acc = vec![QOmega::int(0); 18];
        let mut w = QOmega::int(1);
        for am in &self.a {
            for (s, c) in acc.iter_mut().zip(am) {
                *s = s.add(&c.mul(&w));
            }
            w = w.mul(u0);
        }
        PerturbParams::from_vec(&acc)
    }

    /// Same coefficients; the cached matrix is not compared.
    pub fn same_data(&self, o: &PerturbState) -> bool {
        self.a == o.a && self.s == o.s && self.cfg.l0 == o.cfg.l0
    }
}

/// Basis of E: ã_1 = ã_4, ã_7 = b̃_1 = b̃_4 = … = b̃_9 = 0.
pub const E_BASIS: [&[&str]; 9] = [&["a1", "a4"], &["a2"], &["a3"], &["a5"], &["a6"], &["a8"], &["a9"], &["b2"], &["b3"]];

pub fn e_subspace() -> Subspace {
    let zero = ["a7", "b1", "b4", "b5", "b6", "b7", "b8", "b9"];
    Subspace { fixed: zero.iter().map(|n| (Unknown::new(*n), QOmega::int(0))).collect(), equal: vec![(Unknown::new("a1"), Unknown::new("a4"))] }
}

/// Coefficients of the linear parts of `rows` on the basis of E.
pub fn matrix_on_e(rows: &[LinExpr]) -> Vec<Vec<QOmega>> {
    rows.iter().map(|r| E_BASIS.iter().map(|names| names.iter().fold(QOmega::int(0), |s, n| s.add(&r.coeff(&Unknown::new(*n))))).collect()).collect()
}

fn sym(name: &str) -> LinExpr {
    LinExpr::var(name)
}

/// S_{k,j}^{[m]}(u) plus an optional unknown times u^{m+1}, as a series of order `n`.
fn s_series(values: &[QOmega], extra: Option<&str>, n: usize) -> TruncSeries {
    let mut c = constant_exprs(values);
    if let Some(x) = extra {
        c.push(sym(x));
    }
    TruncSeries::from_coeffs(c, n)
}

fn difference(p: &(TruncSeries, TruncSeries), q: &(TruncSeries, TruncSeries)) -> Result<[TruncSeries; 2], HesseError> {
    Ok([p.0.sub(&q.0)?, p.1.sub(&q.1)?])
}

fn lower_orders_vanish(d: &[TruncSeries; 2], upto: usize) -> Option<usize> {
    (0..=upto).find(|&m| d.iter().any(|s| *s.coeff(m) != LinExpr::default()))
}

/// Initialization: S_{k,j,0} from the four order-one equations in (s_1, s_2, s_3).
pub fn recursion_init(cfg: &HesseConfig, hat: &PerturbParams) -> Result<PerturbState, HesseError> {
    let lambda = lambda_table(cfg)?;
    let a = param_series(&[constant_exprs(&hat.to_vec())], 1);
    let names = ["s1", "s2", "s3"];
    let per_k: Vec<[Vec<QOmega>; 3]> = (0..9)
        .into_par_iter()
        .map(|k| -> Result<[Vec<QOmega>; 3], HesseError> {
            let br: Vec<_> =
                (0..3).map(|j| branch_series(cfg, &lambda[k][j], k, j, &a, &TruncSeries::constant(sym(names[j]), 1), 1)).collect::<Result<_, _>>()?;
            let mut eqs = Vec::new();
            for j in 0..2 {
                let d = difference(&br[j], &br[2])?;
                if lower_orders_vanish(&d, 0).is_some() {
                    return Err(HesseError::Inconsistent(format!("branches of p{} do not meet", k + 1)));
                }
                eqs.extend(d.iter().map(|s| s.coeff(1).clone()));
            }
            let sol = solve_affine_system(&eqs, &Subspace::default(), true).map_err(|e| match e {
                SolveError::Inconsistent => HesseError::Inconsistent(format!("no first order solution at p{}", k + 1)),
                other => HesseError::Solve(other),
            })?;
            Ok(names.map(|n| vec![sol.values[&Unknown::new(n)].clone()]))
        })
        .collect::<Result<_, _>>()?;
    Ok(PerturbState { cfg: cfg.clone(), lambda, a: vec![hat.to_vec()], s: per_k, system_matrix: None })
}

/// For each k and j = 1, 2: (s_{k,j}, s*_{k,j}) as affine forms in a_n, from the order n + 1
/// coefficients of the branch expansions. `top` is a_n, symbolic or not.
pub fn order_solutions(state: &PerturbState, top: &[LinExpr]) -> Result<Vec<[(LinExpr, LinExpr); 2]>, HesseError> {
    let n = state.order() + 1;
    let cfg = &state.cfg;
    let mut orders: Vec<Vec<LinExpr>> = state.a.iter().map(|v| constant_exprs(v)).collect();
    orders.push(top.to_vec());
    let big = n + 1;
    let a = param_series(&orders, big);
    (0..9)
        .into_par_iter()
        .map(|k| -> Result<[(LinExpr, LinExpr); 2], HesseError> {
            let lam = &state.lambda[k];
            let third = branch_series(cfg, &lam[2], k, 2, &a, &s_series(&state.s[k][2], Some("y"), big), big)?;
            let mut out: Vec<(LinExpr, LinExpr)> = Vec::with_capacity(2);
            for j in 0..2 {
                let own = branch_series(cfg, &lam[j], k, j, &a, &s_series(&state.s[k][j], Some("x"), big), big)?;
                let d = difference(&own, &third)?;
                if let Some(m) = lower_orders_vanish(&d, n) {
                    return Err(HesseError::Inconsistent(format!("branches at p{} differ at order {m}", k + 1)));
                }
                let (x, y) = (Unknown::new("x"), Unknown::new("y"));
                let c = [d[0].coeff(big).clone(), d[1].coeff(big).clone()];
                let alpha = [c[0].coeff(&x), c[1].coeff(&x)];
                let beta = [c[0].coeff(&y), c[1].coeff(&y)];
                let gamma: Vec<LinExpr> = (0..2).map(|r| c[r].sub(&LinExpr::term(&x, alpha[r].clone())).sub(&LinExpr::term(&y, beta[r].clone()))).collect();
                let det = alpha[0].mul(&beta[1]).sub(&alpha[1].mul(&beta[0]));
                if det.is_zero() {
                    return Err(HesseError::Inconsistent(format!("branch shifts at p{} are not determined", k + 1)));
                }
                let di = det.inv();
                let star = gamma[1].scale(&beta[0]).sub(&gamma[0].scale(&beta[1])).scale(&di);
                let s = gamma[0].scale(&alpha[1]).sub(&gamma[1].scale(&alpha[0])).scale(&di);
                out.push((s, star));
            }
            Ok([out[0].clone(), out[1].clone()])
        })
        .collect()
}

fn symbolic_top() -> Vec<LinExpr> {
    param_unknowns().iter().map(LinExpr::unknown).collect()
}

/// Φ_k(0, ã) for a concrete ã, from the order two expansion with a = â + ã u.
pub fn phi_at(init: &PerturbState, tilde: &PerturbParams) -> Result<Vec<QOmega>, HesseError> {
    assert_eq!(init.order(), 0);
    let sol = order_solutions(init, &constant_exprs(&tilde.to_vec()))?;
    sol.iter()
        .map(|p| {
            let d = p[1].0.sub(&p[0].0);
            d.is_constant().then_some(d.constant).ok_or_else(|| HesseError::Inconsistent("unknowns left in Φ".into()))
        })
        .collect()
}

/// One step: a_n ∈ E with s_{k,1} = s_{k,2} for all k, then S_{k,j,n}.
pub fn recursion_step(state: &PerturbState) -> Result<PerturbState, HesseError> {
    let n = state.order() + 1;
    let sol = order_solutions(state, &symbolic_top())?;
    let eqs: Vec<LinExpr> = sol.iter().map(|p| p[0].0.sub(&p[1].0)).collect();
    let matrix = matrix_on_e(&eqs);
    if let Some(m) = &state.system_matrix {
        if *m != matrix {
            return Err(HesseError::MatrixChanged(n));
        }
    }
    let solved = solve_affine_system(&eqs, &e_subspace(), true).map_err(|e| match e {
        SolveError::Inconsistent => HesseError::Inconsistent(format!("no a_{n} in E")),
        other => HesseError::Solve(other),
    })?;
    let an: Vec<QOmega> = param_unknowns().iter().map(|x| solved.values.get(x).cloned().unwrap_or_default()).collect();
    let mut next = state.clone();
    next.a.push(an);
    for (k, p) in sol.iter().enumerate() {
        let ev = |e: &LinExpr| e.eval(&solved.values).ok_or_else(|| HesseError::Inconsistent(format!("unresolved unknown at p{}", k + 1)));
        next.s[k][0].push(ev(&p[0].1)?);
        next.s[k][1].push(ev(&p[1].1)?);
        next.s[k][2].push(ev(&p[0].0)?);
    }
    next.system_matrix = Some(matrix);
    Ok(next)
}

/// â for the default line, otherwise the solution picked by the linear stage.
pub fn starting_point(cfg: &HesseConfig) -> Result<PerturbParams, HesseError> {
    if cfg.l0 == default_l0() {
        return Ok(a_hat());
    }
    solve_linear_stage(cfg)?.chosen.ok_or_else(|| HesseError::LineNotAdmissible("every solution has some b_i = 0".into()))
}

pub fn run_recursion(cfg: &HesseConfig, n: usize) -> Result<PerturbState, HesseError> {
    let mut st = recursion_init(cfg, &starting_point(cfg)?)?;
    for _ in 0..n {
        st = recursion_step(&st)?;
    }
    Ok(st)
}

/// Outcome of the formal order check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderCheck {
    pub order: usize,
    /// Lowest power of u at which two branches through some p_k separate, as (k, power)
    /// with 1-based k; the smallest k wins ties.
    pub failure: Option<(usize, usize)>,
}

impl OrderCheck {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that the three branches through each p_k agree through u^{n+1} for a = a^{[n]}(u).
pub fn verify_state_order(state: &PerturbState) -> Result<OrderCheck, HesseError> {
    let n = state.order();
    let big = n + 1;
    let orders: Vec<Vec<LinExpr>> = state.a.iter().map(|v| constant_exprs(v)).collect();
    let a = param_series(&orders, big);
    let fails: Vec<Option<usize>> = (0..9)
        .into_par_iter()
        .map(|k| -> Result<Option<usize>, HesseError> {
            let br: Vec<_> = (0..3)
                .map(|j| branch_series(&state.cfg, &state.lambda[k][j], k, j, &a, &s_series(&state.s[k][j], None, big), big))
                .collect::<Result<_, _>>()?;
            let mut first = None;
            for j in 0..2 {
                if let Some(m) = lower_orders_vanish(&difference(&br[j], &br[2])?, big) {
                    first = Some(first.map_or(m, |f: usize| f.min(m)));
                }
            }
            Ok(first)
        })
        .collect::<Result<_, _>>()?;
    let failure = fails.iter().enumerate().filter_map(|(k, f)| f.map(|m| (k + 1, m))).min_by_key(|&(k, m)| (m, k));
    Ok(OrderCheck { order: n, failure })
}

/// The degree 10 curve for a = a^{[n]}(u0).
pub fn instantiate(state: &PerturbState, u0: &QOmega) -> Result<ParamCurve, HesseError> {
    if u0.is_zero() {
        return Err(HesseError::ZeroU);
    }
    let p = state.params_at(u0);
    if let Some(i) = p.b.iter().position(|b| b.is_zero()) {
        return Err(HesseError::ZeroB(i + 1));
    }
    let label = format!("hesse family, order {}, u = {u0}", state.order());
    Ok(family_curve(&state.cfg, u0, &p)?.with_label(label))
}

/// Φ_k(0, ã) for the 18 symbolic ã, restricted to E and compared with e_k.
#[derive(Clone, Debug)]
pub struct PhiReport {
    pub rows: Vec<LinExpr>,
    /// Linear part on the basis of E.
    pub matrix: Vec<Vec<QOmega>>,
    pub det: QOmega,
    pub constants: Vec<QOmega>,
    /// Rank of the linear parts over all 18 unknowns.
    pub rank: usize,
    /// c_k with linear part of Φ_k = c_k e_k, when it exists.
    pub proportional: Vec<Option<QOmega>>,
}

pub fn phi_stage(cfg: &HesseConfig, report: &LinearReport) -> Result<PhiReport, HesseError> {
    let hat = report.chosen.clone().ok_or_else(|| HesseError::LineNotAdmissible("no solution with all b_i ≠ 0".into()))?;
    let init = recursion_init(cfg, &hat)?;
    let sol = order_solutions(&init, &symbolic_top())?;
    let rows: Vec<LinExpr> = sol.iter().map(|p| p[1].0.sub(&p[0].0)).collect();
    let matrix = matrix_on_e(&rows);
    let det = bareiss_det(matrix.clone());
    Ok(PhiReport {
        constants: rows.iter().map(|r| r.constant.clone()).collect(),
        rank: linear_rank(&rows),
        proportional: rows.iter().zip(&report.e).map(|(r, e)| r.linear_ratio(e)).collect(),
        rows,
        matrix,
        det,
    })
}

/// Expected det(Φ|_{0×E}) for the default line: 64/(3^12·49).
pub fn expected_phi_det() -> QOmega {
    QOmega::frac(64, 3i64.pow(12) * 49)
}

#[cfg(test)]
mod tests {
    use super::super::{build_config, default_l0};
    use super::*;

    fn cfg() -> HesseConfig {
        build_config(&default_l0()).unwrap()
    }

    #[test]
    fn init_passes_the_first_order() {
        let st = recursion_init(&cfg(), &a_hat()).unwrap();
        assert!(verify_state_order(&st).unwrap().passed());
        let mut off = a_hat();
        off.a[0] = QOmega::int(1);
        assert!(matches!(recursion_init(&cfg(), &off), Err(HesseError::Inconsistent(_))));
    }

    #[test]
    fn phi_matrix() {
        let c = cfg();
        let r = solve_linear_stage(&c).unwrap();
        let phi = phi_stage(&c, &r).unwrap();
        assert_eq!(phi.det, expected_phi_det());
        assert_eq!(phi.rank, 9);
        assert_eq!(phi.proportional[0], Some(QOmega::frac(2, 9)));
        assert!(phi.proportional[4].is_some() && phi.proportional[8].is_some());
        // the linear part is proportional for every k; only the constants tell 1, 5, 9 apart
        assert!(phi.proportional.iter().all(|c| c.is_some()));
        assert!(phi.constants[4].is_zero() && phi.constants[8].is_zero());
        assert!(phi.constants[0].is_zero());
        let d1 = QOmega::omega().mul(&QOmega::frac(-88, 1323)).sub(&QOmega::frac(44, 1323));
        assert_eq!(phi.constants[1], d1);
        // Φ(0, ·) evaluated at concrete points is affine
        let init = recursion_init(&c, &a_hat()).unwrap();
        let x = PerturbParams::from_vec(&(0..18).map(|i| QOmega::ints(i - 3, 1)).collect::<Vec<_>>());
        let y = PerturbParams::from_vec(&(0..18).map(|i| QOmega::frac(2 * i + 1, 5)).collect::<Vec<_>>());
        let xy = PerturbParams::from_vec(&x.to_vec().iter().zip(y.to_vec()).map(|(a, b)| a.add(&b)).collect::<Vec<_>>());
        let f = |p: &PerturbParams| phi_at(&init, p).unwrap();
        let (fx, fy, fxy, f0) = (f(&x), f(&y), f(&xy), f(&PerturbParams::zero()));
        for k in 0..9 {
            assert!(fxy[k].sub(&fx[k]).sub(&fy[k]).add(&f0[k]).is_zero());
            assert_eq!(f0[k], phi.constants[k]);
        }
    }

    #[test]
    fn steps_keep_the_matrix() {
        let st = run_recursion(&cfg(), 2).unwrap();
        assert_eq!(st.order(), 2);
        assert!(verify_state_order(&st).unwrap().passed());
        assert!(verify_state_order(&st.truncated(1)).unwrap().passed());
        for am in &st.a[1..] {
            assert!(am[6].is_zero() && am[9].is_zero() && am[12..].iter().all(|b| b.is_zero()));
            assert_eq!(am[0], am[3]);
        }
        let mut broken = st.clone();
        broken.a[1] = vec![QOmega::int(0); 18];
        assert_eq!(verify_state_order(&broken).unwrap().failure.map(|f| f.1), Some(2));
    }
}
