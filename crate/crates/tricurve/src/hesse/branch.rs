use super::{pencil, HesseConfig, HesseError};
use crate::exactnum::{Field, QOmega, Ring};
use crate::series::{series_substitute, LinExpr, TruncSeries};

/// λ_{k,j} for all nine points and three pencils.
pub type LambdaTable = [[QOmega; 3]; 9];

/// λ with lim_{u→0} f(t_i + (a_i + λ b_i) u) = p_k, i = i_j(k).
///
/// At u = 0 only the factor of L_i survives, as B_i/A_i → (λ − 1)/λ; every other factor
/// tends to 1. The ratio r = (λ − 1)/λ is read off one coordinate and checked on the other.
pub fn compute_lambda(cfg: &HesseConfig, k: usize, j: usize) -> Result<QOmega, HesseError> {
    let i = cfg.incidence[k][j];
    let fail = || HesseError::NoSolution { k: k + 1, j: j + 1, line: i + 1 };
    let base = [cfg.lx.eval(&cfg.t[i]), cfg.ly.eval(&cfg.t[i])].map(|v| v.div(&QOmega::int(2)));
    let target = [cfg.points[k][0].clone(), cfg.points[k][1].clone()];
    let e = [cfg.form.exponent(0, pencil(i)), cfg.form.exponent(1, pencil(i))];
    let c = (0..2).find(|&c| e[c] != 0).ok_or_else(fail)?;
    if base[c].is_zero() || target[c].is_zero() {
        return Err(fail());
    }
    let r = if e[c] > 0 { target[c].div(&base[c]) } else { base[c].div(&target[c]) };
    if r == QOmega::int(1) {
        return Err(fail());
    }
    for c in 0..2 {
        let v = match e[c] {
            0 => base[c].clone(),
            1 => base[c].mul(&r),
            _ => base[c].div(&r),
        };
        if v != target[c] {
            return Err(fail());
        }
    }
    Ok(QOmega::int(1).sub(&r).inv())
}

pub fn lambda_table(cfg: &HesseConfig) -> Result<LambdaTable, HesseError> {
    let mut out: LambdaTable = Default::default();
    for (k, row) in out.iter_mut().enumerate() {
        for (j, l) in row.iter_mut().enumerate() {
            *l = compute_lambda(cfg, k, j)?;
        }
    }
    Ok(out)
}

/// Affine coordinates (X, Y) of f(T) along the branch of p_k on L_i, i = i_j(k), where
/// T = t_i + u τ(u) + u² S(u) and τ(u) = a_i(u) + λ b_i(u).
///
/// `a` holds a_1..a_9, b_1..b_9 as series of order `n`; the result has order `n`.
pub fn branch_series(
    cfg: &HesseConfig,
    lambda: &QOmega,
    k: usize,
    j: usize,
    a: &[TruncSeries],
    s: &TruncSeries,
    n: usize,
) -> Result<(TruncSeries, TruncSeries), HesseError> {
    assert_eq!(a.len(), 18);
    let i = cfg.incidence[k][j];
    let ai = a[i].retruncate(n);
    let bi = a[9 + i].retruncate(n);
    let tau = ai.add(&bi.scale(lambda))?;
    let delta = tau.mul_upow(1).add(&s.retruncate(n).mul_upow(2))?;

    // own factor: B_i/A_i = (λ − 1 + u q)/(λ + u q) = 1 − 1/(λ + u q) with q = S/b_i
    let q = if n == 0 || s.is_zero() { TruncSeries::zero(n) } else { s.retruncate(n - 1).div(&bi.retruncate(n - 1))?.retruncate(n).mul_upow(1) };
    let one = TruncSeries::scalar(QOmega::int(1), n);
    let own = one.sub(&q.add(&TruncSeries::scalar(lambda.clone(), n))?.inv()?)?;

    let mut coords =
        [series_substitute(&cfg.lx, &cfg.t[i], &delta)?.scale(&QOmega::frac(1, 2)), series_substitute(&cfg.ly, &cfg.t[i], &delta)?.scale(&QOmega::frac(1, 2))];
    for m in 0..9 {
        let e = [cfg.form.exponent(0, pencil(m)), cfg.form.exponent(1, pencil(m))];
        if e == [0, 0] {
            continue;
        }
        let ratio = if m == i {
            own.clone()
        } else {
            let am = TruncSeries::scalar(cfg.t[i].sub(&cfg.t[m]), n).add(&delta)?.sub(&a[m].retruncate(n).mul_upow(1))?;
            let bm = am.sub(&a[9 + m].retruncate(n).mul_upow(1))?;
            bm.div(&am)?
        };
        let inverse = if e.contains(&-1) { Some(ratio.inv()?) } else { None };
        for c in 0..2 {
            match e[c] {
                1 => coords[c] = coords[c].mul(&ratio)?,
                -1 => coords[c] = coords[c].mul(inverse.as_ref().expect("computed above"))?,
                _ => {}
            }
        }
    }
    let [x, y] = coords;
    Ok((x, y))
}

/// a(u) as 18 series of order `n` from coefficient vectors a_0, a_1, …
pub fn param_series(orders: &[Vec<LinExpr>], n: usize) -> Vec<TruncSeries> {
    (0..18).map(|m| TruncSeries::from_coeffs(orders.iter().map(|v| v[m].clone()).collect(), n)).collect()
}

pub fn constant_exprs(v: &[QOmega]) -> Vec<LinExpr> {
    v.iter().cloned().map(LinExpr::constant).collect()
}

#[cfg(test)]
mod tests {
    use super::super::{build_config, build_config_with, default_l0, FormulaForm};
    use super::*;

    #[test]
    fn lambda_values() {
        let cfg = build_config(&default_l0()).unwrap();
        let l = lambda_table(&cfg).unwrap();
        assert_eq!(l[0], [QOmega::frac(1, 3), QOmega::frac(1, 3), QOmega::frac(4, 3)]);
        let q = |re: (i64, i64), wc: (i64, i64)| QOmega::frac(re.0, re.1).add(&QOmega::omega().mul(&QOmega::frac(wc.0, wc.1)));
        assert_eq!(l[4], [q((13, 21), (2, 21)), q((13, 21), (2, 21)), q((16, 21), (-4, 21))]);
        assert_eq!(l[6], [q((5, 3), (4, 3)), q((-1, 3), (-2, 3)), q((2, 3), (-2, 3))]);
        assert_eq!(l[8][2], q((20, 21), (4, 21)));
    }

    #[test]
    fn display_form_misses_the_first_pencil() {
        let cfg = build_config_with(&default_l0(), FormulaForm::Display).unwrap();
        assert!(matches!(compute_lambda(&cfg, 0, 0), Err(HesseError::NoSolution { k: 1, j: 1, line: 1 })));
    }

    #[test]
    fn branches_start_at_the_triple_point() {
        let cfg = build_config(&default_l0()).unwrap();
        let l = lambda_table(&cfg).unwrap();
        let a: Vec<TruncSeries> = super::super::param_unknowns().iter().map(|x| TruncSeries::constant(LinExpr::unknown(x), 1)).collect();
        for k in 0..9 {
            for j in 0..3 {
                let (x, y) = branch_series(&cfg, &l[k][j], k, j, &a, &TruncSeries::zero(1), 1).unwrap();
                assert_eq!(*x.coeff(0), LinExpr::constant(cfg.points[k][0].clone()));
                assert_eq!(*y.coeff(0), LinExpr::constant(cfg.points[k][1].clone()));
            }
        }
    }
}
