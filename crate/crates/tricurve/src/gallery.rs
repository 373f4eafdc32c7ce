//! Explicit curves: the degree 10 curve with 12 triple points and its construction,
//! the three quartics with 19 triple points, the Cremona picture behind them, and the
//! dual Hesse arrangement.

use crate::curve::{cross, implicitize, intersection_multiplicity_param, lies_on, omega_power, CurveError, ParamCurve, PlaneCurve, ProjPoint, XYZ};
use crate::exactnum::{QOmega, Ring};
use crate::hesse::{build_config, default_l0};
use crate::poly::{qpoly, MPoly, QPoly, UPoly};
use crate::singular::{full_census, CensusOptions, SingularCensus, SingularError};
use crate::verify::Check;
use serde::Serialize;
use std::collections::BTreeMap;

/// What the census of some components must look like.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpectedCensus {
    /// Indices into `GalleryEntry::params`.
    pub components: Vec<usize>,
    pub points: usize,
    /// Number of points per multiplicity.
    pub multiplicities: BTreeMap<usize, usize>,
    pub all_ordinary: bool,
    pub delta_sum: usize,
    pub pair_count: Option<usize>,
}

impl ExpectedCensus {
    fn uniform(components: Vec<usize>, points: usize, m: usize) -> Self {
        let multiplicities = if points == 0 { BTreeMap::new() } else { BTreeMap::from([(m, points)]) };
        ExpectedCensus { components, points, multiplicities, all_ordinary: true, delta_sum: points * m * (m - 1) / 2, pair_count: None }
    }

    pub fn matches(&self, c: &SingularCensus) -> bool {
        c.len() == self.points
            && c.histogram() == self.multiplicities
            && c.all_ordinary() == self.all_ordinary
            && c.delta_sum == self.delta_sum
            && self.pair_count.is_none_or(|p| p == c.pair_count)
    }
}

#[derive(Clone, Debug)]
pub struct GalleryEntry {
    pub id: &'static str,
    pub params: Vec<ParamCurve>,
    pub implicit: Vec<PlaneCurve>,
    /// (param, implicit) pairs with F(x(t), y(t), z(t)) ≡ 0.
    pub on: Vec<(usize, usize)>,
    /// Marked points.
    pub points: Vec<ProjPoint>,
    pub expected: Vec<ExpectedCensus>,
    pub note: String,
}

pub const IDS: [&str; 5] = ["prop1a", "prop1a-pipeline", "prop1b", "cremona", "dual-hesse"];

pub fn entry(id: &str) -> Option<GalleryEntry> {
    Some(match id {
        "prop1a" => prop1a(),
        "prop1a-pipeline" => prop1a_pipeline(),
        "prop1b" => prop1b(),
        "cremona" => cremona_fixtures(),
        "dual-hesse" => dual_hesse(),
        _ => return None,
    })
}

pub fn all() -> Vec<GalleryEntry> {
    IDS.iter().map(|id| entry(id).expect("known id")).collect()
}

fn xp(c: &[i64]) -> MPoly<QOmega> {
    MPoly::from_upoly(&qpoly(c), "x")
}

fn yp(k: u32) -> MPoly<QOmega> {
    MPoly::var("y").pow(k)
}

fn homogeneous(f: MPoly<QOmega>, degree: u32) -> PlaneCurve {
    let f = f.homogenize("z", Some(degree)).expect("degree bound").with_vars(&XYZ).expect("x, y, z");
    PlaneCurve::new(f).expect("nonzero homogeneous")
}

/// The printed degree 10 equation F(x, y, z).
pub fn prop1a_equation() -> PlaneCurve {
    let c9 = xp(&[-9, 9]);
    let c6 = xp(&[1, -6, -3, 8, 6]).scale(&QOmega::int(-3));
    let c3 = xp(&[-1, 2, -1, -11, -8, 13, 24, 9]);
    let c0 = xp(&[2, 1]).mul(&xp(&[0, 0, 0, 1])).mul(&xp(&[-1, 0, 1]).pow(3)).neg();
    let f = c9.mul(&yp(9)).add(&c6.mul(&yp(6))).add(&c3.mul(&yp(3))).add(&c0);
    homogeneous(f, 10)
}

/// (t³+2)(t⁶+3t³+3), t(t³+1)(t³+2)(t³+3), t⁹+3t⁶−3.
pub fn prop1a_param() -> ParamCurve {
    let x = qpoly(&[2, 0, 0, 1]).mul(&qpoly(&[3, 0, 0, 3, 0, 0, 1]));
    let y = qpoly(&[0, 1]).mul(&qpoly(&[1, 0, 0, 1])).mul(&qpoly(&[2, 0, 0, 1])).mul(&qpoly(&[3, 0, 0, 1]));
    let z = qpoly(&[-3, 0, 0, 0, 0, 0, 3, 0, 0, 1]);
    ParamCurve::new(x, y, z, "degree 10, 12 triple points").expect("valid parametrization")
}

pub fn prop1a() -> GalleryEntry {
    GalleryEntry {
        id: "prop1a",
        params: vec![prop1a_param()],
        implicit: vec![prop1a_equation()],
        on: vec![(0, 0)],
        points: Vec::new(),
        expected: vec![ExpectedCensus { pair_count: Some(72), ..ExpectedCensus::uniform(vec![0], 12, 3) }],
        note: "rational curve of degree 10 with 12 ordinary triple points: printed parametrization and equation".into(),
    }
}

fn p_poly() -> QPoly {
    qpoly(&[1, 0, -3, 1])
}

fn q_poly() -> QPoly {
    qpoly(&[0, 1, -1, 1])
}

/// r(s) = 3(s−2)(s²−1)³s³.
fn r_poly() -> QPoly {
    qpoly(&[-6, 3]).mul(&qpoly(&[-1, 0, 1]).pow(3)).mul(&qpoly(&[0, 0, 0, 1]))
}

/// f₂(x, y) = p(y)x + q(y).
pub fn f2() -> MPoly<QOmega> {
    let p = MPoly::from_upoly(&p_poly(), "y");
    let q = MPoly::from_upoly(&q_poly(), "y");
    p.mul(&MPoly::var("x")).add(&q)
}

fn swap_xy(f: &MPoly<QOmega>) -> MPoly<QOmega> {
    f.subst(&[("x", MPoly::var("y")), ("y", MPoly::var("x"))])
}

/// f(x, y, 1) = f₂(x, Y)·p(x)³ with Y = (y³ − q(x))/p(x), before rescaling.
pub fn pipeline_affine() -> MPoly<QOmega> {
    let px = MPoly::from_upoly(&p_poly(), "x");
    let qx = MPoly::from_upoly(&q_poly(), "x");
    let num = yp(3).sub(&qx);
    f2().compose_rational("y", &num, &px, 3).expect("degree 3 in y")
}

/// Applies (x, y, z) → (x, 3^{1/3}y, −z) to a polynomial in x, y³, z.
fn absorb_rescaling(f: &MPoly<QOmega>) -> Option<MPoly<QOmega>> {
    let f = f.with_vars(&XYZ).ok()?;
    let mut terms = Vec::new();
    for (e, c) in f.terms() {
        if e[1] % 3 != 0 {
            return None;
        }
        let mut c = c.mul(&QOmega::int(3).pow(e[1] / 3));
        if e[2] % 2 == 1 {
            c = c.neg();
        }
        terms.push((c, e.clone()));
    }
    Some(MPoly::from_terms(&XYZ, terms))
}

/// C₂ in the affine chart: y = s, x = −q(s)/p(s).
pub fn c2_param() -> ParamCurve {
    ParamCurve::new(q_poly().neg(), p_poly().mul(&UPoly::x()), p_poly(), "C2").expect("valid")
}

/// L₂ = {f₂(y, x) = 0}.
pub fn l2_curve() -> PlaneCurve {
    homogeneous(swap_xy(&f2()), 4)
}

/// The curve rebuilt from f₂: equation through the substitution, parametrization through
/// s = t³ + 2 and the cube root of r(s)/3.
pub fn prop1a_pipeline() -> GalleryEntry {
    let f = absorb_rescaling(&pipeline_affine().homogenize("z", Some(10)).expect("degree 10")).expect("y only through y³");
    let s = qpoly(&[2, 0, 0, 1]);
    let rho = crate::curve::nth_root(&r_poly().compose(&s).scale(&QOmega::frac(1, 3)), 3).expect("r(s)/3 is a cube");
    let c = ParamCurve::new(q_poly().compose(&s), rho, p_poly().compose(&s), "rebuilt from f2").expect("valid");
    GalleryEntry {
        id: "prop1a-pipeline",
        params: vec![c, c2_param()],
        implicit: vec![PlaneCurve::new(f).expect("nonzero").normalized(), l2_curve()],
        on: vec![(0, 0)],
        points: vec![ProjPoint::ints(0, 0, 1), ProjPoint::ints(1, 1, 1), ProjPoint::ints(-1, -1, 1)],
        expected: vec![ExpectedCensus { pair_count: Some(72), ..ExpectedCensus::uniform(vec![0], 12, 3) }],
        note: "f2(x,y) = p(y)x + q(y), p = y^3-3y^2+1, q = y^3-y^2+y; substitution y -> (y^3-q(x))/p(x); s = t^3+2; rescaling (x, 3^(1/3) y, -z)".into(),
    }
}

/// Intersection multiplicities of C₂ and L₂ at (0,0), (1,1), (−1,−1).
pub fn pipeline_tangencies() -> Result<Vec<usize>, CurveError> {
    let (c2, l2) = (c2_param(), l2_curve());
    [0, 1, -1].iter().map(|&s| intersection_multiplicity_param(&l2, &c2, &QOmega::int(s))).collect()
}

/// f(x, y, z) = (x−y)(x+y)³ + (2x+3y)z³.
pub fn prop1b_quartic() -> MPoly<QOmega> {
    let v = |n: &str| MPoly::<QOmega>::var(n).with_vars(&XYZ).expect("xyz");
    let (x, y, z) = (v("x"), v("y"), v("z"));
    let two = QOmega::int(2);
    let three = QOmega::int(3);
    x.sub(&y).mul(&x.add(&y).pow(3)).add(&x.scale(&two).add(&y.scale(&three)).mul(&z.pow(3)))
}

fn scale_x(f: &MPoly<QOmega>, c: &QOmega) -> MPoly<QOmega> {
    MPoly::from_terms(&XYZ, f.terms().map(|(e, v)| (v.mul(&c.pow(e[0])), e.clone())))
}

pub fn prop1b() -> GalleryEntry {
    let f = prop1b_quartic();
    let base = ParamCurve::from_ints(&[0, -3, 0, 0, 1], &[0, 2, 0, 0, 1], &[-1, 0, 0, 2], "quartic").expect("valid");
    let mut params = Vec::new();
    let mut implicit = Vec::new();
    let mut product = MPoly::constant(QOmega::int(1));
    for k in 0..3 {
        // f(ω^k x, y, z) = 0 is the image of f = 0 under x ↦ ω^{−k} x
        let w = omega_power(k);
        let fk = scale_x(&f, &w);
        product = product.mul(&fk);
        implicit.push(PlaneCurve::new(fk).expect("quartic"));
        params.push(base.twist(&[omega_power(-k), QOmega::int(1), QOmega::int(1)]).expect("twist").with_label(format!("quartic {}", k + 1)));
    }
    implicit.push(PlaneCurve::new(product).expect("degree 12"));
    let mut expected: Vec<ExpectedCensus> = (0..3).map(|k| ExpectedCensus::uniform(vec![k], 1, 3)).collect();
    expected.push(ExpectedCensus::uniform(vec![0, 1, 2], 19, 3));
    GalleryEntry {
        id: "prop1b",
        params,
        implicit,
        on: vec![(0, 0), (1, 1), (2, 2), (0, 3), (1, 3), (2, 3)],
        points: Vec::new(),
        expected,
        note: "f(x,y,z) f(wx,y,z) f(w^2x,y,z) with f = (x-y)(x+y)^3 + (2x+3y)z^3 and (t^4-3t : t^4+2t : 2t^3-1)".into(),
    }
}

/// Whether every exponent of the polynomial is a multiple of 3.
pub fn is_polynomial_in_cubes(f: &MPoly<QOmega>) -> bool {
    f.terms().all(|(e, _)| e.iter().all(|k| k % 3 == 0))
}

/// Second intersection of the conic pᵀMp = 0 with the lines through q, swept along the
/// points (1 : t : 0).
fn conic_through(m: &[[QOmega; 3]; 3], q: &[QOmega; 3], label: &str) -> Result<ParamCurve, CurveError> {
    let d = [qpoly(&[1]), qpoly(&[0, 1]), QPoly::zero()];
    let form = |u: &[QPoly; 3], v: &[QPoly; 3]| {
        let mut s = QPoly::zero();
        for i in 0..3 {
            for j in 0..3 {
                s = s.add(&u[i].mul(&v[j]).scale(&m[i][j]));
            }
        }
        s
    };
    let qc: [QPoly; 3] = q.clone().map(UPoly::constant);
    let (qd, qm) = (form(&d, &d), form(&qc, &d).scale(&QOmega::int(2)));
    let c: [QPoly; 3] = std::array::from_fn(|i| qc[i].mul(&qd).sub(&d[i].mul(&qm)));
    let [x, y, z] = c;
    ParamCurve::primitive(x, y, z, label)
}

/// Cuspidal cubic x³ = y²z, conic 2xy + xz = y² + 2yz, and q = (3:2:8).
pub fn cremona_fixtures() -> GalleryEntry {
    let c3 = PlaneCurve::new(MPoly::from_terms(&XYZ, [(QOmega::int(1), vec![3, 0, 0]), (QOmega::int(-1), vec![0, 2, 1])])).expect("cubic");
    let conic = MPoly::from_terms(
        &XYZ,
        [(QOmega::int(2), vec![1, 1, 0]), (QOmega::int(1), vec![1, 0, 1]), (QOmega::int(-1), vec![0, 2, 0]), (QOmega::int(-2), vec![0, 1, 1])],
    );
    let c2 = PlaneCurve::new(conic).expect("conic");
    let (o, h) = (QOmega::int(0), QOmega::frac(1, 2));
    let m = [[o.clone(), QOmega::int(1), h.clone()], [QOmega::int(1), QOmega::int(-1), QOmega::int(-1)], [h, QOmega::int(-1), o]];
    let q = ProjPoint::ints(3, 2, 8);
    let cubic = ParamCurve::from_ints(&[0, 0, 1], &[0, 0, 0, 1], &[1], "C3").expect("valid");
    let conic_param = conic_through(&m, q.coords(), "C2").expect("q is a smooth point of the conic");
    let cusp = ExpectedCensus { components: vec![0], points: 1, multiplicities: BTreeMap::from([(2, 1)]), all_ordinary: false, delta_sum: 1, pair_count: None };
    GalleryEntry {
        id: "cremona",
        params: vec![cubic, conic_param],
        implicit: vec![c3, c2],
        on: vec![(0, 0), (1, 1)],
        points: vec![q],
        expected: vec![cusp, ExpectedCensus::uniform(vec![1], 0, 2)],
        note: "cuspidal cubic x^3 = y^2 z, conic 2xy + xz = y^2 + 2yz, q = (3:2:8); the four lines are not recorded".into(),
    }
}

/// Parametrization s ↦ a + s·b through two points of the line.
pub fn line_param(l: &[QOmega; 3], label: &str) -> Result<ParamCurve, CurveError> {
    let unit = |i: usize| -> [QOmega; 3] { std::array::from_fn(|j| QOmega::int((i == j) as i64)) };
    let pts: Vec<[QOmega; 3]> = (0..3).map(|i| cross(l, &unit(i))).filter(|p| p.iter().any(|c| !c.is_zero())).collect();
    let b = pts.iter().skip(1).find(|p| cross(&pts[0], p).iter().any(|c| !c.is_zero())).ok_or(CurveError::ZeroPoint)?;
    let a = &pts[0];
    let c: [QPoly; 3] = std::array::from_fn(|i| UPoly::new(vec![a[i].clone(), b[i].clone()]));
    let [x, y, z] = c;
    ParamCurve::new(x, y, z, label)
}

/// The nine lines (x³−y³)(y³−z³)(z³−x³) = 0 with their twelve triple points p_1..p_9 and
/// the coordinate vertices.
pub fn dual_hesse() -> GalleryEntry {
    let cfg = build_config(&default_l0()).expect("default configuration");
    let params = cfg.lines.iter().enumerate().map(|(i, l)| line_param(l, &format!("L{}", i + 1)).expect("line")).collect();
    let implicit = cfg.lines.iter().map(|l| PlaneCurve::line(l).expect("line")).collect();
    let points = cfg.points.iter().chain(cfg.vertices.iter()).map(|p| ProjPoint::new(p[0].clone(), p[1].clone(), p[2].clone()).expect("point")).collect();
    GalleryEntry {
        id: "dual-hesse",
        params,
        implicit,
        on: (0..9).map(|i| (i, i)).collect(),
        points,
        expected: vec![ExpectedCensus::uniform((0..9).collect(), 12, 3)],
        note: "(x^3-y^3)(y^3-z^3)(z^3-x^3) = 0: nine lines, twelve triple points".into(),
    }
}

/// For each implicit curve, the indices of the marked points on it.
pub fn incidence(e: &GalleryEntry) -> Vec<Vec<usize>> {
    e.implicit.iter().map(|f| (0..e.points.len()).filter(|&i| f.contains(&e.points[i])).collect()).collect()
}

/// Runs the identity checks and every expected census of an entry.
pub fn check_entry(e: &GalleryEntry, opts: &CensusOptions) -> Result<Vec<Check>, SingularError> {
    let mut out = Vec::new();
    for &(p, f) in &e.on {
        let ok = lies_on(&e.implicit[f], &e.params[p]);
        out.push(Check::new(format!("{} lies on equation {}", e.params[p].label, f + 1), ok, ""));
    }
    for x in &e.expected {
        let comps: Vec<ParamCurve> = x.components.iter().map(|&i| e.params[i].clone()).collect();
        let census = full_census(&comps, opts)?;
        let detail = format!(
            "{} points, multiplicities {:?}, ordinary {}, delta {}, pairs {}",
            census.len(),
            census.histogram(),
            census.all_ordinary(),
            census.delta_sum,
            census.pair_count
        );
        out.push(Check::new(format!("census of components {:?}", x.components), x.matches(&census), detail));
    }
    Ok(out)
}

/// Implicitization of the parametrization agrees with the printed equation up to a scalar.
pub fn implicit_agreement(param: &ParamCurve, f: &PlaneCurve) -> Result<Option<QOmega>, CurveError> {
    Ok(implicitize(param)?.ratio_to(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_identity() {
        let e = prop1a();
        assert!(lies_on(&e.implicit[0], &e.params[0]));
        assert_eq!(e.implicit[0].degree(), 10);
        assert_eq!(e.params[0].degree(), 10);
    }

    #[test]
    fn pipeline_matches_printed_curve() {
        let e = prop1a_pipeline();
        assert!(e.implicit[0].ratio_to(&prop1a_equation()).is_some());
        assert_eq!(e.params[0], prop1a_param().with_label("rebuilt from f2"));
        assert_eq!(pipeline_tangencies().unwrap(), vec![3, 3, 3]);
        assert!(e.points.iter().all(|p| e.implicit[1].contains(p)));
    }

    #[test]
    fn c2_is_parametrized_by_y() {
        let f = homogeneous(f2(), 4);
        assert!(lies_on(&f, &c2_param()));
    }

    #[test]
    fn quartic_product_is_in_cubes() {
        let e = prop1b();
        let prod = e.implicit[3].poly();
        assert_eq!(prod.total_degree(), Some(12));
        assert!(is_polynomial_in_cubes(prod));
        assert!(prod.terms().all(|(_, c)| c.is_rational()));
        for (p, f) in &e.on {
            assert!(lies_on(&e.implicit[*f], &e.params[*p]));
        }
    }

    #[test]
    fn cremona_data() {
        let e = cremona_fixtures();
        assert!(e.implicit[1].contains(&e.points[0]));
        assert!(!e.implicit[0].contains(&e.points[0]));
        for (p, f) in &e.on {
            assert!(lies_on(&e.implicit[*f], &e.params[*p]));
        }
        assert_eq!(e.params[1].degree(), 2);
    }

    #[test]
    fn hesse_incidences() {
        let e = dual_hesse();
        let inc = incidence(&e);
        assert!(inc.iter().all(|v| v.len() == 4));
        assert_eq!(e.points[0], ProjPoint::ints(1, 1, 1));
        let through_p1: Vec<usize> = (0..9).filter(|&i| inc[i].contains(&0)).collect();
        assert_eq!(through_p1, vec![0, 3, 6]);
    }

    #[test]
    fn small_censuses() {
        let opts = CensusOptions::with_precision(128);
        for e in [cremona_fixtures(), dual_hesse()] {
            for c in check_entry(&e, &opts).unwrap() {
                assert!(c.passed, "{}: {} {}", e.id, c.name, c.detail);
            }
        }
    }
}
