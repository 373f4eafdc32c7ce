use super::branch::{branch_series, compute_lambda, lambda_table, LambdaTable};
use super::{a_hat, param_unknowns, HesseConfig, HesseError, PerturbParams};
use crate::exactnum::{QOmega, Ring};
use crate::series::{solve_affine_system, LinExpr, Subspace, TruncSeries, Unknown};
use std::collections::BTreeMap;

/// τ_{k,j} = a_i + λ_{k,j} b_i as an affine form in the symbolic parameters.
pub fn compute_tau(cfg: &HesseConfig, k: usize, j: usize) -> Result<(LinExpr, QOmega), HesseError> {
    let lambda = compute_lambda(cfg, k, j)?;
    let names = param_unknowns();
    let i = cfg.incidence[k][j];
    Ok((LinExpr::unknown(&names[i]).add(&LinExpr::term(&names[9 + i], lambda.clone())), lambda))
}

fn symbolic_params(n: usize) -> Vec<TruncSeries> {
    param_unknowns().iter().map(|x| TruncSeries::constant(LinExpr::unknown(x), n)).collect()
}

/// p'_{k,j}(0): the u-coefficient of f(t_i + τ_{k,j} u) with symbolic a, b.
pub fn compute_p_prime(cfg: &HesseConfig, k: usize, j: usize) -> Result<(LinExpr, LinExpr), HesseError> {
    let lambda = compute_lambda(cfg, k, j)?;
    let (x, y) = branch_series(cfg, &lambda, k, j, &symbolic_params(1), &TruncSeries::zero(1), 1)?;
    Ok((x.coeff(1).clone(), y.coeff(1).clone()))
}

fn det3(m: [[QOmega; 3]; 3]) -> QOmega {
    let t = |a: usize, b: usize, c: usize| m[0][a].mul(&m[1][b]).mul(&m[2][c]);
    t(0, 1, 2).add(&t(1, 2, 0)).add(&t(2, 0, 1)).sub(&t(2, 1, 0)).sub(&t(0, 2, 1)).sub(&t(1, 0, 2))
}

/// e_k: determinant whose vanishing makes the three lines through p_k + u p'_{k,j}(0),
/// parallel to the lines through p_k, concurrent.
pub fn compute_e(cfg: &HesseConfig, k: usize) -> Result<LinExpr, HesseError> {
    let v: Vec<(LinExpr, LinExpr)> = (0..3).map(|j| compute_p_prime(cfg, k, j)).collect::<Result<_, _>>()?;
    Ok(e_from_p_prime(cfg, k, &v))
}

pub(crate) fn e_from_p_prime(cfg: &HesseConfig, k: usize, v: &[(LinExpr, LinExpr)]) -> LinExpr {
    let (o, one) = (QOmega::int(0), QOmega::int(1));
    let (px, py) = (cfg.points[k][0].clone(), cfg.points[k][1].clone());
    // columns w_1, −w_2, −w_3 (constant), then v_2 − v_1 over v_3 − v_1
    let constant: [[QOmega; 3]; 4] =
        [[one.clone(), o.clone(), o.clone()], [o.clone(), one.neg(), o.clone()], [one, o.clone(), px.neg()], [o.clone(), o, py.neg()]];
    let last = [v[1].0.sub(&v[0].0), v[1].1.sub(&v[0].1), v[2].0.sub(&v[0].0), v[2].1.sub(&v[0].1)];
    let mut e = LinExpr::default();
    for r in 0..4 {
        let minor: Vec<[QOmega; 3]> = (0..4).filter(|&q| q != r).map(|q| constant[q].clone()).collect();
        let c = det3([minor[0].clone(), minor[1].clone(), minor[2].clone()]);
        let c = if (r + 3) % 2 == 0 { c } else { c.neg() };
        e = e.add(&last[r].scale(&c));
    }
    e
}

#[derive(Clone, Debug)]
pub struct LinearReport {
    pub lambda: LambdaTable,
    /// τ_{k,j} as affine forms.
    pub tau: Vec<[LinExpr; 3]>,
    /// p'_{k,j}(0) as (X, Y) components.
    pub p_prime: Vec<[(LinExpr, LinExpr); 3]>,
    pub e: Vec<LinExpr>,
    pub rank: usize,
    /// Basis of the solutions of e_1 = … = e_9 = 0.
    pub nullspace: Vec<PerturbParams>,
    /// A solution with every b_i ≠ 0, if the solution space has one.
    pub chosen: Option<PerturbParams>,
}

impl LinearReport {
    pub fn dimension(&self) -> usize {
        self.nullspace.len()
    }

    pub fn satisfies(&self, p: &PerturbParams) -> bool {
        let vals = param_values(p);
        self.e.iter().all(|e| e.eval(&vals).map(|v| v.is_zero()).unwrap_or(false))
    }
}

pub fn param_values(p: &PerturbParams) -> BTreeMap<Unknown, QOmega> {
    param_unknowns().into_iter().zip(p.to_vec()).collect()
}

/// The linear stage: τ, p', e_k and the solution space of the e_k.
pub fn solve_linear_stage(cfg: &HesseConfig) -> Result<LinearReport, HesseError> {
    let lambda = lambda_table(cfg)?;
    let mut tau = Vec::with_capacity(9);
    let mut p_prime = Vec::with_capacity(9);
    let mut e = Vec::with_capacity(9);
    for k in 0..9 {
        let t: [LinExpr; 3] = std::array::from_fn(|j| compute_tau(cfg, k, j).expect("λ table computed").0);
        let v = [compute_p_prime(cfg, k, 0)?, compute_p_prime(cfg, k, 1)?, compute_p_prime(cfg, k, 2)?];
        e.push(e_from_p_prime(cfg, k, &v));
        tau.push(t);
        p_prime.push(v);
    }
    let names = param_unknowns();
    let sol = solve_affine_system(&e, &Subspace::default(), false).map_err(|err| HesseError::Inconsistent(err.to_string()))?;
    let mut nullspace: Vec<PerturbParams> =
        sol.nullspace.iter().map(|v| PerturbParams::from_vec(&names.iter().map(|x| v.get(x).cloned().unwrap_or_default()).collect::<Vec<_>>())).collect();
    // unknowns absent from every equation are free as well
    for (m, x) in names.iter().enumerate() {
        if !sol.values.contains_key(x) {
            let mut v = vec![QOmega::int(0); 18];
            v[m] = QOmega::int(1);
            nullspace.push(PerturbParams::from_vec(&v));
        }
    }
    let mut report = LinearReport { lambda, tau, p_prime, e, rank: sol.rank, nullspace, chosen: None };
    let hat = a_hat();
    report.chosen = if cfg.l0 == super::default_l0() && report.satisfies(&hat) { Some(hat) } else { pick_nonzero_b(&report.nullspace) };
    Ok(report)
}

/// Σ x^m v_m for x = 2, 3, …: each b_i is a nonzero polynomial in x as soon as some basis
/// vector has b_i ≠ 0, so a few values of x suffice.
fn pick_nonzero_b(basis: &[PerturbParams]) -> Option<PerturbParams> {
    if basis.is_empty() || (0..9).any(|i| basis.iter().all(|v| v.b[i].is_zero())) {
        return None;
    }
    for x in 2..(2 + 9 * basis.len() as i64 + 1) {
        let mut acc = vec![QOmega::int(0); 18];
        let mut w = QOmega::int(1);
        for v in basis {
            for (s, c) in acc.iter_mut().zip(v.to_vec()) {
                *s = s.add(&c.mul(&w));
            }
            w = w.mul(&QOmega::int(x));
        }
        let p = PerturbParams::from_vec(&acc);
        if p.b.iter().all(|b| !b.is_zero()) {
            return Some(p);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::{build_config, default_l0};
    use super::*;

    fn q(re: (i64, i64), wc: (i64, i64)) -> QOmega {
        QOmega::frac(re.0, re.1).add(&QOmega::omega().mul(&QOmega::frac(wc.0, wc.1)))
    }

    fn coeff(e: &LinExpr, name: &str) -> QOmega {
        e.coeff(&Unknown::new(name))
    }

    #[test]
    fn tau_on_the_second_pencil() {
        let cfg = build_config(&default_l0()).unwrap();
        let (t, l) = compute_tau(&cfg, 0, 1).unwrap();
        assert_eq!(l, QOmega::frac(1, 3));
        assert_eq!(t, LinExpr::var("a4").add(&LinExpr::term(&Unknown::new("b4"), QOmega::frac(1, 3))));
    }

    #[test]
    fn derivative_of_the_second_branch() {
        let cfg = build_config(&default_l0()).unwrap();
        let (x, _) = compute_p_prime(&cfg, 0, 1).unwrap();
        let x6 = x.scale(&QOmega::int(6));
        let expect = [
            ("a4", QOmega::int(3)),
            ("b1", QOmega::int(-2)),
            ("b2", QOmega::ints(2, 4)),
            ("b3", QOmega::ints(-2, -4)),
            ("b4", QOmega::int(1)),
            ("b7", QOmega::int(4)),
            ("b8", QOmega::ints(4, 2)),
            ("b9", QOmega::ints(2, -2)),
        ];
        assert_eq!(x6.lin().len(), expect.len());
        for (n, v) in expect {
            assert_eq!(coeff(&x6, n), v, "{n}");
        }
        assert!(x6.constant.is_zero());
    }

    #[test]
    fn first_concurrency_condition() {
        let cfg = build_config(&default_l0()).unwrap();
        let e1 = compute_e(&cfg, 0).unwrap();
        let h = QOmega::frac(1, 2);
        let expect = [
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
        ];
        assert_eq!(e1.lin().len(), expect.len());
        for (n, v) in expect {
            assert_eq!(coeff(&e1, n), v, "{n}");
        }
    }

    #[test]
    fn linear_stage_solution() {
        let cfg = build_config(&default_l0()).unwrap();
        let r = solve_linear_stage(&cfg).unwrap();
        assert!(r.satisfies(&a_hat()));
        assert!(r.satisfies(&PerturbParams::zero()));
        assert!(r.dimension() >= 9);
        assert_eq!(r.chosen, Some(a_hat()));
        // shifting every A_i and B_i by the same c u is not a reparametrization, since the
        // prefactors t and 1 − t stay put
        let mut shift = PerturbParams::zero();
        shift.a = std::array::from_fn(|_| QOmega::int(1));
        assert_eq!(r.e[0].eval(&param_values(&shift)).unwrap(), QOmega::int(-3));
        for k in 0..9 {
            for j in 0..3 {
                let zero = r.tau[k][j].eval(&param_values(&PerturbParams::zero())).unwrap();
                assert!(zero.is_zero());
            }
        }
    }
}
