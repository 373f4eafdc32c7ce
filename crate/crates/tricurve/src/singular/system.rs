use crate::curve::ParamCurve;
use crate::exactnum::{QOmega, Ring};
use crate::poly::zw::{lcm_denominators, to_zw, zw_coprime, zw_gcd, zw_resultant, ZwInt, ZwPoly, ZwTerms};
use crate::poly::MPoly;

/// The three minors of the rows f(s), f(t), each divided by s − t.
#[derive(Clone, Debug, PartialEq)]
pub struct DoublePointSystem {
    /// Polynomials in (s, t), ordered (yz, zx, xy).
    pub g: [MPoly<QOmega>; 3],
}

/// Coordinates over Z[ω] with a common denominator cleared, padded to degree d.
pub(crate) fn zw_coords(c: &ParamCurve) -> [Vec<ZwInt>; 3] {
    let d = c.degree();
    let l = lcm_denominators(c.coords().iter().flat_map(|p| p.coeffs().iter()));
    c.coords().map(|p| (0..=d).map(|i| to_zw(&p.coeff(i), &l)).collect())
}

/// Dense (s^i t^j) coefficients of (a(s)b(t) − b(s)a(t))/(s − t), size d × d.
fn divided_minor(a: &[ZwInt], b: &[ZwInt]) -> Vec<Vec<ZwInt>> {
    let d = a.len() - 1;
    let mut g = vec![vec![ZwInt::zero(); d]; d];
    for p in 1..=d {
        for q in 0..p {
            let c = a[p].mul(&b[q]).sub(&a[q].mul(&b[p]));
            if c.is_zero() {
                continue;
            }
            // (s^p t^q − s^q t^p)/(s − t) = s^q t^q Σ_k s^k t^{p−q−1−k}
            for k in 0..p - q {
                let (i, j) = (q + k, p - 1 - k);
                g[i][j] = g[i][j].add(&c);
            }
        }
    }
    g
}

/// Dense coefficients of a1(s)b2(t) − b1(s)a2(t).
fn cross_minor(a1: &[ZwInt], b1: &[ZwInt], a2: &[ZwInt], b2: &[ZwInt]) -> Vec<Vec<ZwInt>> {
    let mut h = vec![vec![ZwInt::zero(); a2.len()]; a1.len()];
    for i in 0..a1.len() {
        for j in 0..a2.len() {
            h[i][j] = a1[i].mul(&b2[j]).sub(&b1[i].mul(&a2[j]));
        }
    }
    h
}

pub fn double_point_system(c: &ParamCurve) -> DoublePointSystem {
    let f = c.coords().map(|p| p.coeffs().to_vec());
    let d = c.degree();
    let pad = |v: &Vec<QOmega>| -> Vec<QOmega> { (0..=d).map(|i| v.get(i).cloned().unwrap_or_default()).collect() };
    let f = f.map(|v| pad(&v));
    let minor = |a: &[QOmega], b: &[QOmega]| -> MPoly<QOmega> {
        let mut terms = Vec::new();
        for p in 1..=d {
            for q in 0..p {
                let cc = a[p].mul(&b[q]).sub(&a[q].mul(&b[p]));
                for k in 0..p - q {
                    terms.push((cc.clone(), vec![(q + k) as u32, (p - 1 - k) as u32]));
                }
            }
        }
        MPoly::from_terms(&["s", "t"], terms)
    };
    DoublePointSystem { g: [minor(&f[1], &f[2]), minor(&f[2], &f[0]), minor(&f[0], &f[1])] }
}

/// Inner variable t (columns), outer variable s (rows).
fn as_inner_t(g: &[Vec<ZwInt>]) -> Vec<ZwTerms> {
    let cols = g[0].len();
    (0..cols).map(|j| g.iter().enumerate().filter(|(_, row)| !row[j].is_zero()).map(|(i, row)| (row[j].clone(), vec![i as u32])).collect()).collect()
}

fn res_t(a: &[Vec<ZwInt>], b: &[Vec<ZwInt>]) -> ZwPoly {
    let m = a.len() - 1;
    let n = a[0].len() - 1;
    if n == 0 {
        // no t left: the resultant of two constants in t is 1 by convention
        return ZwPoly::new(vec![ZwInt::from_int(1.into())]);
    }
    let bound = 2 * n * m;
    ZwPoly::new(zw_resultant(&as_inner_t(a), &as_inner_t(b), 1, &[bound]))
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum EliminantError {
    /// Both resultants vanish identically.
    Degenerate,
    /// The eliminant shares a root with x·y of the chosen coordinates.
    Spurious,
}

/// gcd(Res_t(g_xy, g_xz), Res_t(g_xy, g_yz)); its roots are the parameters s belonging to a
/// pair (s, t) with f(s) = f(t) (the second pair member comes from `other` when given).
pub(crate) fn eliminant(f: &[Vec<ZwInt>; 3], other: Option<&[Vec<ZwInt>; 3]>) -> Result<ZwPoly, EliminantError> {
    let (gxy, gxz, gyz) = match other {
        None => (divided_minor(&f[0], &f[1]), divided_minor(&f[0], &f[2]), divided_minor(&f[1], &f[2])),
        Some(h) => (cross_minor(&f[0], &f[1], &h[0], &h[1]), cross_minor(&f[0], &f[2], &h[0], &h[2]), cross_minor(&f[1], &f[2], &h[1], &h[2])),
    };
    if gxy.is_empty() {
        return Ok(ZwPoly::new(vec![ZwInt::from_int(1.into())]));
    }
    let r1 = res_t(&gxy, &gxz);
    let r2 = res_t(&gxy, &gyz);
    if r1.is_zero() || r2.is_zero() {
        return Err(EliminantError::Degenerate);
    }
    let t = zw_gcd(&r1, &r2).g.primitive_int();
    let xy = ZwPoly::new(f[0].clone()).mul(&ZwPoly::new(f[1].clone()));
    if t.degree() > 0 && !zw_coprime(&t, &xy) {
        return Err(EliminantError::Spurious);
    }
    Ok(t)
}

/// Squarefree layers (S_1, S_2, …): S_k holds the roots of multiplicity exactly k.
pub(crate) fn multiplicity_layers(t: &ZwPoly) -> Vec<ZwPoly> {
    if t.degree() == 0 {
        return Vec::new();
    }
    // P_k: roots of multiplicity ≥ k
    let mut p = Vec::new();
    let mut g = t.clone();
    while g.degree() > 0 {
        let r = zw_gcd(&g, &g.derivative());
        p.push(r.qa.primitive_int());
        g = r.g.primitive_int();
    }
    let mut out = Vec::with_capacity(p.len());
    for k in 0..p.len() {
        if k + 1 < p.len() {
            out.push(zw_gcd(&p[k], &p[k + 1]).qa.primitive_int());
        } else {
            out.push(p[k].clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qpoly;

    #[test]
    fn nodal_cubic_system() {
        let c = ParamCurve::from_ints(&[-1, 0, 1], &[0, -1, 0, 1], &[1], "").unwrap();
        let sys = double_point_system(&c);
        let vals = |s: i64, t: i64| sys.g.clone().map(|g| g.eval(&[QOmega::int(s), QOmega::int(t)]));
        assert!(vals(1, -1).iter().all(|v| v.is_zero()));
        assert!(vals(-1, 1).iter().all(|v| v.is_zero()));
        assert!(!vals(2, 3).iter().all(|v| v.is_zero()));
        // in the given coordinates the node sits at x = y = 0, so the eliminant is refused
        assert_eq!(eliminant(&zw_coords(&c), None), Err(EliminantError::Spurious));
        let m = [[1, 2, 3], [2, -1, 5], [1, 4, -3]].map(|r| r.map(QOmega::int));
        let t = eliminant(&zw_coords(&c.transform(&m).unwrap()), None).unwrap();
        assert_eq!(t.degree(), 2);
        assert_eq!(t.to_qpoly().monic(), qpoly(&[-1, 0, 1]));
    }

    #[test]
    fn line_has_no_pairs() {
        let c = ParamCurve::from_ints(&[0, 1], &[1, -1], &[2], "").unwrap();
        assert_eq!(eliminant(&zw_coords(&c), None).unwrap().degree(), 0);
    }

    #[test]
    fn layers() {
        // (t − 1)^3 (t + 2) t^2
        let p = qpoly(&[-1, 1]).pow(3).mul(&qpoly(&[2, 1])).mul(&qpoly(&[0, 0, 1]));
        let (z, _) = ZwPoly::from_qpoly(&p);
        let l = multiplicity_layers(&z);
        assert_eq!(l.len(), 3);
        assert_eq!(l[0].to_qpoly().monic(), qpoly(&[2, 1]));
        assert_eq!(l[1].to_qpoly().monic(), qpoly(&[0, 1]));
        assert_eq!(l[2].to_qpoly().monic(), qpoly(&[-1, 1]));
    }
}
