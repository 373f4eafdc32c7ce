//! Certified isolation of the roots of a squarefree polynomial over Z[ω].

use crate::exactnum::{CFloat, ComplexBall, Float, Mag};
use crate::poly::zw::ZwPoly;

/// Coefficient enclosures at the given precision.
pub fn coefficient_balls(p: &ZwPoly, prec: u32) -> Vec<ComplexBall> {
    p.c.iter().map(|c| ComplexBall::from_qomega(&c.to_qomega(), prec)).collect()
}

fn horner(c: &[CFloat], z: &CFloat, prec: u32) -> (CFloat, CFloat) {
    let n = c.len() - 1;
    let mut p = c[n].clone();
    let mut dp = CFloat::zero();
    for k in (0..n).rev() {
        dp = dp.mul(z).add(&p).rounded(prec);
        p = p.mul(z).add(&c[k]).rounded(prec);
    }
    (p, dp)
}

pub fn eval_ball(c: &[ComplexBall], z: &ComplexBall, prec: u32) -> ComplexBall {
    let mut acc = c[c.len() - 1].clone();
    for k in (0..c.len() - 1).rev() {
        acc = acc.mul(z, prec).add(&c[k], prec);
    }
    acc
}

fn polar(log2r: f64, theta: f64, prec: u32) -> CFloat {
    let e = log2r.floor();
    let m = (log2r - e).exp2();
    let re = Float::from_f64(m * theta.cos()).mul_2k(e as i64).rounded(prec);
    let im = Float::from_f64(m * theta.sin()).mul_2k(e as i64).rounded(prec);
    CFloat::new(re, im)
}

/// Starting points on circles read off the upper convex hull of (i, log2|c_i|).
fn initial_points(c: &[CFloat], prec: u32) -> Vec<CFloat> {
    let n = c.len() - 1;
    let pts: Vec<(usize, f64)> = c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.abs_up().log2())).collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b when it lies on or below the segment a–p
            if (b.1 - a.1) * (p.0 - a.0) as f64 <= (p.1 - a.1) * (b.0 - a.0) as f64 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    let tau = std::f64::consts::TAU;
    // t^k divides p: start those roots well inside the smallest circle
    let low = hull[0].0;
    if low > 0 {
        let inner = hull.windows(2).next().map(|w| (w[0].1 - w[1].1) / (w[1].0 - w[0].0) as f64).unwrap_or(0.0);
        for j in 0..low {
            out.push(polar(inner - 4.0, tau * j as f64 / low as f64 + 0.7, prec));
        }
    }
    for w in hull.windows(2) {
        let (k1, l1) = w[0];
        let (k2, l2) = w[1];
        let m = k2 - k1;
        let lr = (l1 - l2) / m as f64;
        for j in 0..m {
            let theta = tau * j as f64 / m as f64 + tau * k1 as f64 / n as f64 + 0.4;
            out.push(polar(lr, theta, prec));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootError {
    #[error("root isolation did not certify at {0} bits")]
    NotCertified(u32),
}

/// Disjoint disks each holding exactly one root of the squarefree polynomial `p` (deg ≥ 1).
/// Aberth iteration at `prec` bits, then inclusion disks of radius n·|W_i| where W_i is
/// the Weierstrass correction, evaluated in ball arithmetic.
pub fn isolate_roots(p: &ZwPoly, prec: u32) -> Result<Vec<ComplexBall>, RootError> {
    let n = p.degree();
    assert!(n >= 1);
    let balls = coefficient_balls(p, prec);
    let c: Vec<CFloat> = balls.iter().map(|b| b.center.clone()).collect();
    if n == 1 {
        let (q, _) = c[0].neg().div(&c[1], prec);
        return certify(&balls, &[q], prec);
    }
    let mut z = initial_points(&c, prec);
    let tol = prec as i64 - 12;
    let max_iter = 60 + 4 * n;
    let mut converged = vec![false; n];
    let mut extra = 0;
    for _ in 0..max_iter {
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let (pv, dv) = horner(&c, &z[i], prec);
            if pv.is_zero() {
                converged[i] = true;
                continue;
            }
            let Some(newton) = safe_div(&pv, &dv, prec) else { continue };
            let mut s = CFloat::zero();
            for j in 0..n {
                if j != i {
                    let d = z[i].sub(&z[j]).rounded(prec);
                    if let Some(r) = safe_div(&CFloat::new(Float::from_i64(1), Float::zero()), &d, prec) {
                        s = s.add(&r).rounded(prec);
                    }
                }
            }
            let one = CFloat::new(Float::from_i64(1), Float::zero());
            let den = one.sub(&newton.mul(&s)).rounded(prec);
            let step = safe_div(&newton, &den, prec).unwrap_or(newton);
            z[i] = z[i].sub(&step).rounded(prec);
            let scale = z[i].abs_up().log2().max(-(prec as f64));
            if step.is_zero() || step.abs_up().log2() < scale - tol as f64 {
                converged[i] = true;
            }
        }
        if converged.iter().all(|&b| b) {
            extra += 1;
            if extra > 2 {
                break;
            }
            converged = vec![false; n];
        }
    }
    certify(&balls, &z, prec)
}

fn safe_div(a: &CFloat, b: &CFloat, prec: u32) -> Option<CFloat> {
    if b.is_zero() {
        None
    } else {
        Some(a.div(b, prec).0)
    }
}

/// Inclusion disks D(z_i, n|W_i|); they must be pairwise disjoint.
fn certify(c: &[ComplexBall], z: &[CFloat], prec: u32) -> Result<Vec<ComplexBall>, RootError> {
    let n = z.len();
    let lc = &c[n];
    let zb: Vec<ComplexBall> = z.iter().map(|v| ComplexBall::exact(v.clone())).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let pv = eval_ball(c, &zb[i], prec);
        let mut den = lc.clone();
        for j in 0..n {
            if j != i {
                den = den.mul(&zb[i].sub(&zb[j], prec), prec);
            }
        }
        let w = pv.div(&den, prec).ok_or(RootError::NotCertified(prec))?;
        let r = w.abs_up().mul_up(Mag::from_f64_up(n as f64));
        out.push(ComplexBall::new(z[i].clone(), r));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !out[i].disjoint(&out[j]) {
                return Err(RootError::NotCertified(prec));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{QOmega, Ring};
    use crate::poly::{qpoly, zw::ZwPoly};

    #[test]
    fn roots_of_unity() {
        // t^6 − 1
        let (p, _) = ZwPoly::from_qpoly(&qpoly(&[-1, 0, 0, 0, 0, 0, 1]));
        let r = isolate_roots(&p, 128).unwrap();
        assert_eq!(r.len(), 6);
        for v in [QOmega::int(1), QOmega::int(-1), QOmega::omega(), QOmega::omega_bar()] {
            let b = ComplexBall::from_qomega(&v, 128);
            assert_eq!(r.iter().filter(|x| x.overlaps(&b)).count(), 1);
        }
        assert!(r.iter().all(|x| x.radius.log2() < -100.0));
    }

    #[test]
    fn clustered_and_large_coefficients() {
        // (t − 1)(t − 1 − 10^-12)(t + 10^17)
        let e = QOmega::frac(1, 1_000_000_000_000);
        let a = crate::poly::UPoly::linear_root(&QOmega::int(1));
        let b = crate::poly::UPoly::linear_root(&QOmega::int(1).add(&e));
        let c = crate::poly::UPoly::linear_root(&QOmega::int(-100_000_000_000_000_000_i64));
        let (p, _) = ZwPoly::from_qpoly(&a.mul(&b).mul(&c));
        let r = isolate_roots(&p, 128).unwrap();
        assert_eq!(r.len(), 3);
        assert!(isolate_roots(&p, 24).is_err());
    }
}
