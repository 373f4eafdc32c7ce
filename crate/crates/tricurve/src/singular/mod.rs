//! Singular points of rational plane curves and of unions of them.
//!
//! The census pairs parameters with equal image through eliminants of the divided
//! minor system, isolates their roots with certified disks, and groups branches by
//! image point. Every reported multiplicity is either exact or backed by disjoint balls.

mod census;
mod cluster;
mod json;
mod roots;
mod system;

pub use census::*;
pub use cluster::*;
pub use json::*;
pub use roots::{isolate_roots, RootError};
pub use system::{double_point_system, DoublePointSystem};

use crate::curve::{cross, minors, CurveError, ParamCurve, ProjPoint};
use crate::exactnum::{QOmega, Ring};
use crate::poly::{gcd_multimodular, resultant_multimodular, MPoly, QPoly, UPoly};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SingularError {
    #[error("precision {0} is below the minimum of 64 bits")]
    PrecisionTooLow(u32),
    #[error("could not separate points or tangents at {0} bits")]
    PrecisionExhausted(u32),
    #[error("parametrization of {0} is not birational onto its image")]
    ImproperParametrization(String),
    #[error("components {0} and {1} share a component")]
    SharedComponent(usize, usize),
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("no generic coordinate system found")]
    NoGenericCoordinates,
    #[error("intersection count {found} differs from the Bezout number {expected}")]
    BezoutMismatch { found: usize, expected: usize },
    #[error("inconsistent census: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

fn point_minors(c: &ParamCurve, p: &ProjPoint) -> [QPoly; 3] {
    let v: [QPoly; 3] = p.coords().clone().map(UPoly::constant);
    minors(&c.coords(), &v.each_ref())
}

/// Multiplicity of `p` on the image of `c` (0 when off the curve), together with the
/// polynomial whose roots are the finite parameters over `p`.
pub fn multiplicity_at_point_exact(c: &ParamCurve, p: &ProjPoint) -> Result<(usize, QPoly), SingularError> {
    let m = point_minors(c, p);
    let g = m.iter().fold(QPoly::zero(), |g, q| gcd_multimodular(&g, q));
    if g.is_zero() {
        // the image is a line through p counted once per parameter; cannot happen for d ≥ 1
        return Err(SingularError::Curve(CurveError::DegenerateImage));
    }
    let top = m.iter().map(|q| q.deg0()).max().unwrap_or(0);
    let at_infinity = c.degree() - top;
    Ok((g.deg0() + at_infinity, g))
}

/// Moves infinity away from the parameters over `p` when needed.
fn finite_chart(c: &ParamCurve, p: &ProjPoint) -> ParamCurve {
    if c.eval_infinity() != *p {
        return c.clone();
    }
    (1..100)
        .map(|k| c.reparametrize(&QOmega::int(k), &QOmega::int(1), &QOmega::int(1), &QOmega::int(0)).expect("invertible"))
        .find(|w| w.eval_infinity() != *p)
        .expect("finitely many parameters lie over p")
}

/// Exact test that `p` is an ordinary singular point of the union of `comps`: every branch
/// through it is smooth and the tangents are pairwise distinct. Returns the multiplicity.
pub fn exact_point_ordinary(comps: &[ParamCurve], p: &ProjPoint) -> Result<(usize, bool), SingularError> {
    // two lines through p; in these coordinates p is the origin of an affine chart
    let e = |i: usize| -> [QOmega; 3] { std::array::from_fn(|k| QOmega::int((k == i) as i64)) };
    let keep = (0..3).find(|&k| !p.coords()[k].is_zero()).expect("nonzero point");
    let others: Vec<usize> = (0..3).filter(|&k| k != keep).collect();
    let l1 = cross(p.coords(), &e(others[0]));
    let l2 = cross(p.coords(), &e(others[1]));

    let mut total = 0;
    let mut product = QPoly::one();
    let mut expected = 0;
    let mut ordinary = true;
    for comp in comps {
        let w = finite_chart(comp, p);
        let (m, q) = multiplicity_at_point_exact(&w, p)?;
        if m == 0 {
            continue;
        }
        total += m;
        if gcd_multimodular(&q, &q.derivative()).deg0() > 0 {
            ordinary = false;
            continue;
        }
        let lin = |l: &[QOmega; 3]| w.coords().iter().zip(l).fold(QPoly::zero(), |s, (f, a)| s.add(&f.scale(a)));
        let (xd, yd) = (lin(&l1).derivative(), lin(&l2).derivative());
        // R(σ) = Res_t(q, σ·x' − y'): its roots are the tangent slopes at the branches
        let sv = ["sig"];
        let qc: Vec<MPoly<QOmega>> = q.coeffs().iter().map(|c| MPoly::constant_in(&sv, c.clone())).collect();
        let n = xd.deg0().max(yd.deg0());
        let sig = MPoly::var("sig").with_vars(&sv).expect("single variable");
        let gc: Vec<MPoly<QOmega>> = (0..=n).map(|i| sig.scale(&xd.coeff(i)).sub(&MPoly::constant_in(&sv, yd.coeff(i)))).collect();
        let r = resultant_multimodular(&qc, &gc, &sv).to_upoly("sig").map_err(|e| SingularError::Inconsistent(e.to_string()))?;
        if r.is_zero() {
            ordinary = false;
            continue;
        }
        product = product.mul(&r);
        expected += m;
    }
    if total == 0 {
        return Err(SingularError::PointNotOnCurve);
    }
    if ordinary {
        // one vertical tangent lowers the degree by one, two of them by two
        let sf = gcd_multimodular(&product, &product.derivative()).deg0() == 0;
        ordinary = sf && product.deg0() + 1 >= expected;
    }
    Ok((total, ordinary))
}

/// Given exact branches, checks smoothness and distinct tangent lines.
pub fn ordinary_check(branches: &[(&ParamCurve, QOmega)]) -> Result<bool, SingularError> {
    let mut lines = Vec::with_capacity(branches.len());
    for (c, t) in branches {
        if !c.is_immersed_at(t) {
            return Ok(false);
        }
        lines.push(c.tangent_line(t)?);
    }
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if cross(&lines[i], &lines[j]).iter().all(|x| x.is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The genus relation for a union of rational curves of the given degrees whose
/// singularities are all ordinary: Σ m(m−1)/2 = Σ (d−1)(d−2)/2 + Σ_{i<j} d_i d_j.
pub fn expected_delta(degrees: &[usize]) -> usize {
    let own: usize = degrees.iter().map(|&d| d.saturating_sub(1) * d.saturating_sub(2) / 2).sum();
    let mut mixed = 0;
    for i in 0..degrees.len() {
        for j in i + 1..degrees.len() {
            mixed += degrees[i] * degrees[j];
        }
    }
    own + mixed
}

pub fn delta_check(census: &SingularCensus, degrees: &[usize]) -> bool {
    census.delta_sum == expected_delta(degrees)
}

/// The exact point when the census entry has one.
pub fn exact_point(e: &CensusEntry) -> Option<&ProjPoint> {
    match &e.point {
        CensusPoint::Exact(p) => Some(p),
        CensusPoint::Ball(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nodal_cubic() -> ParamCurve {
        // (t² − 1 : t(t² − 1) : 1), node at (0:0:1) from t = ±1
        ParamCurve::from_ints(&[-1, 0, 1], &[0, -1, 0, 1], &[1], "nodal").unwrap()
    }

    #[test]
    fn exact_multiplicity() {
        let c = nodal_cubic();
        let (m, g) = multiplicity_at_point_exact(&c, &ProjPoint::ints(0, 0, 1)).unwrap();
        assert_eq!(m, 2);
        assert_eq!(g.monic(), crate::poly::qpoly(&[-1, 0, 1]));
        assert_eq!(multiplicity_at_point_exact(&c, &ProjPoint::ints(3, 6, 1)).unwrap().0, 1);
        assert_eq!(multiplicity_at_point_exact(&c, &ProjPoint::ints(1, 1, 1)).unwrap().0, 0);
        // the point at infinity (0:1:0) is t = ∞
        assert_eq!(multiplicity_at_point_exact(&c, &ProjPoint::ints(0, 1, 0)).unwrap().0, 1);
    }

    #[test]
    fn node_and_cusp() {
        let c = nodal_cubic();
        assert_eq!(exact_point_ordinary(std::slice::from_ref(&c), &ProjPoint::ints(0, 0, 1)).unwrap(), (2, true));
        let cusp = ParamCurve::from_ints(&[0, 0, 1], &[0, 0, 0, 1], &[1], "cusp").unwrap();
        assert_eq!(exact_point_ordinary(&[cusp], &ProjPoint::ints(0, 0, 1)).unwrap(), (2, false));
        assert_eq!(exact_point_ordinary(&[c], &ProjPoint::ints(1, 1, 1)), Err(SingularError::PointNotOnCurve));
        assert!(ordinary_check(&[(&nodal_cubic(), QOmega::int(1)), (&nodal_cubic(), QOmega::int(-1))]).unwrap());
    }

    #[test]
    fn tangent_lines_through_a_point() {
        // two lines through the origin with the same tangent are not ordinary
        let a = ParamCurve::from_ints(&[0, 1], &[0, 2], &[1], "a").unwrap();
        let b = ParamCurve::from_ints(&[0, 1], &[0, -1], &[1], "b").unwrap();
        let o = ProjPoint::ints(0, 0, 1);
        assert_eq!(exact_point_ordinary(&[a.clone(), b], &o).unwrap(), (2, true));
        assert_eq!(exact_point_ordinary(&[a.clone(), a], &o).unwrap(), (2, false));
    }

    #[test]
    fn delta_formula() {
        assert_eq!(expected_delta(&[3]), 1);
        assert_eq!(expected_delta(&[1, 1, 1]), 3);
        assert_eq!(expected_delta(&[2, 2]), 4);
    }
}
