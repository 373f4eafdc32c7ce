use super::param::{mat_inverse, minors, Matrix3, ParamCurve, ProjPoint};
use super::CurveError;
use crate::exactnum::{Field, QOmega, Rational, Ring};
use crate::poly::{gcd_multimodular, resultant_multimodular, MPoly, QPoly, UPoly};
use crate::series::{solve_affine_system, LinExpr, Subspace, Unknown};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub const XYZ: [&str; 3] = ["x", "y", "z"];

/// Homogeneous curve F(x, y, z) = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCurve {
    f: MPoly<QOmega>,
    degree: u32,
}

impl PlaneCurve {
    pub fn new(f: MPoly<QOmega>) -> Result<Self, CurveError> {
        let f = f.with_vars(&XYZ).map_err(|e| CurveError::Poly(e.to_string()))?;
        if f.is_zero() {
            return Err(CurveError::ZeroPolynomial);
        }
        if !f.is_homogeneous() {
            return Err(CurveError::NotHomogeneous);
        }
        let degree = f.total_degree().unwrap_or(0);
        Ok(PlaneCurve { f, degree })
    }

    /// Homogenize an equation in x, y with z.
    pub fn from_affine(f: &MPoly<QOmega>) -> Result<Self, CurveError> {
        Self::new(f.homogenize("z", None).map_err(|e| CurveError::Poly(e.to_string()))?)
    }

    /// Line a·x + b·y + c·z.
    pub fn line(l: &[QOmega; 3]) -> Result<Self, CurveError> {
        let f = MPoly::from_terms(&XYZ, (0..3).map(|i| (l[i].clone(), (0..3).map(|j| (i == j) as u32).collect())));
        Self::new(f)
    }

    pub fn poly(&self) -> &MPoly<QOmega> {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn eval(&self, p: &[QOmega; 3]) -> QOmega {
        self.f.eval(p)
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.eval(p.coords()).is_zero()
    }

    /// Some(c) with self = c·o.
    pub fn ratio_to(&self, o: &PlaneCurve) -> Option<QOmega> {
        self.f.scalar_ratio(&o.f)
    }

    /// F ∘ C as a polynomial in t.
    pub fn pullback(&self, c: &ParamCurve) -> QPoly {
        self.f.subst_univariate(&[("x", &c.x), ("y", &c.y), ("z", &c.z)]).expect("variables are x, y, z")
    }

    /// Primitive integer coefficients with positive leading term when rational, monic otherwise.
    pub fn normalized(&self) -> Self {
        PlaneCurve { f: normalize_poly(&self.f), degree: self.degree }
    }

    /// Image curve under p ↦ M·p, i.e. F(M⁻¹·p).
    pub fn transform(&self, m: &Matrix3) -> Result<Self, CurveError> {
        let inv = mat_inverse(m)?;
        let lin = |i: usize| -> MPoly<QOmega> { MPoly::from_terms(&XYZ, (0..3).map(|j| (inv[i][j].clone(), (0..3).map(|k| (k == j) as u32).collect()))) };
        let g = self.f.subst(&[("x", lin(0)), ("y", lin(1)), ("z", lin(2))]);
        Self::new(g)
    }

    /// Restriction to the line through p and q: F(p + s·q).
    pub fn restrict_to_line(&self, p: &[QOmega; 3], q: &[QOmega; 3]) -> QPoly {
        let l: [QPoly; 3] = std::array::from_fn(|i| UPoly::new(vec![p[i].clone(), q[i].clone()]));
        self.f.subst_univariate(&[("x", &l[0]), ("y", &l[1]), ("z", &l[2])]).expect("variables are x, y, z")
    }

    /// Certify that F has no repeated factor: a line meeting F in deg F distinct points.
    pub fn is_squarefree(&self) -> bool {
        for k in 0..8i64 {
            let p = [QOmega::int(1), QOmega::int(k + 2), QOmega::int(k * k - 3)];
            let q = [QOmega::int(2 * k - 5), QOmega::int(1), QOmega::int(k + 7)];
            let h = self.restrict_to_line(&p, &q);
            if h.degree() != Some(self.degree as usize) {
                continue;
            }
            if gcd_multimodular(&h, &h.derivative()).deg0() == 0 {
                return true;
            }
        }
        false
    }
}

pub fn lies_on(f: &PlaneCurve, c: &ParamCurve) -> bool {
    f.pullback(c).is_zero()
}

/// Vanishing order of F(x(t), y(t), z(t)) at t0.
pub fn intersection_multiplicity_param(f: &PlaneCurve, c: &ParamCurve, t0: &QOmega) -> Result<usize, CurveError> {
    f.pullback(c).root_multiplicity(t0).ok_or(CurveError::IdenticallyZero)
}

pub fn normalize_poly(f: &MPoly<QOmega>) -> MPoly<QOmega> {
    let Some((_, lead)) = f.terms().last() else {
        return f.clone();
    };
    if !f.terms().all(|(_, c)| c.is_rational()) {
        return f.scale(&lead.inv());
    }
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for (_, c) in f.terms() {
        den = den.lcm(c.re.denom());
        num = num.gcd(c.re.numer());
    }
    let mut s = Rational::new(den, num);
    if lead.re.is_negative() {
        s = -s;
    }
    f.scale(&QOmega::from_rational(s))
}

/// Number of parameter values over a generic image point.
pub fn map_degree(c: &ParamCurve) -> usize {
    let inf = c.eval_infinity();
    let mut best = usize::MAX;
    let mut tried = 0;
    for k in 0..40i64 {
        let t0 = QOmega::frac(2 * k + 3, k % 3 + 2);
        let Ok(p) = c.eval(&t0) else { continue };
        if p == inf {
            continue;
        }
        let v: [QPoly; 3] = std::array::from_fn(|i| UPoly::constant(p.coords()[i].clone()));
        let m = minors(&c.coords(), &v.each_ref());
        let g = gcd_multimodular(&gcd_multimodular(&m[0], &m[1]), &m[2]);
        best = best.min(g.deg0());
        tried += 1;
        if tried == 4 || best == 1 {
            break;
        }
    }
    best
}

/// Implicit equation of the image, normalized; certified by the pullback identity,
/// the degree relation, and squarefreeness.
pub fn implicitize(c: &ParamCurve) -> Result<PlaneCurve, CurveError> {
    let d = c.degree();
    if d == 0 {
        return Err(CurveError::DegenerateImage);
    }
    for (i, p) in c.coords().iter().enumerate() {
        if p.is_zero() {
            let mut e = vec![0u32; 3];
            e[i] = 1;
            return PlaneCurve::new(MPoly::monomial(&XYZ, e, QOmega::int(1)));
        }
    }
    let k = map_degree(c);
    if k == 0 || !d.is_multiple_of(k) {
        return Err(CurveError::ImplicitizationFailed(format!("map degree {k} does not divide {d}")));
    }
    let f = if k == 1 { implicit_by_resultant(c)? } else { implicit_by_nullspace(c, d / k)? };
    let f = f.normalized();
    if f.degree() as usize * k != d || !lies_on(&f, c) || !f.is_squarefree() {
        return Err(CurveError::ImplicitizationFailed("certification failed".into()));
    }
    Ok(f)
}

/// Res_t(z(t)·X − x(t), z(t)·Y − y(t)) = c·F(X, Y, 1) for a proper parametrization.
fn implicit_by_resultant(c: &ParamCurve) -> Result<PlaneCurve, CurveError> {
    let d = c.degree();
    let outer = ["x", "y"];
    let coeffs = |num: &QPoly, var: &str| -> Vec<MPoly<QOmega>> {
        (0..=d)
            .map(|i| {
                let v = MPoly::var(var).with_vars(&outer).unwrap();
                v.scale(&c.z.coeff(i)).sub(&MPoly::constant_in(&outer, num.coeff(i)))
            })
            .collect()
    };
    let r = resultant_multimodular(&coeffs(&c.x, "x"), &coeffs(&c.y, "y"), &outer);
    if r.is_zero() {
        return Err(CurveError::DegenerateImage);
    }
    PlaneCurve::from_affine(&r)
}

/// The unique degree-e form vanishing on the image, by linear algebra.
fn implicit_by_nullspace(c: &ParamCurve, e: usize) -> Result<PlaneCurve, CurveError> {
    let mut monos: Vec<Vec<u32>> = Vec::new();
    for i in (0..=e).rev() {
        for j in (0..=e - i).rev() {
            monos.push(vec![i as u32, j as u32, (e - i - j) as u32]);
        }
    }
    let pw = |p: &QPoly| -> Vec<QPoly> {
        let mut v = vec![QPoly::one()];
        for k in 1..=e {
            v.push(v[k - 1].mul(p));
        }
        v
    };
    let (px, py, pz) = (pw(&c.x), pw(&c.y), pw(&c.z));
    let unknowns: Vec<Unknown> = (0..monos.len()).map(|i| Unknown::new(format!("c{i:04}"))).collect();
    let images: Vec<QPoly> = monos.iter().map(|m| px[m[0] as usize].mul(&py[m[1] as usize]).mul(&pz[m[2] as usize])).collect();
    let top = images.iter().map(|p| p.deg0()).max().unwrap_or(0);
    let eqs: Vec<LinExpr> =
        (0..=top).map(|k| images.iter().zip(&unknowns).fold(LinExpr::default(), |s, (p, u)| s.add(&LinExpr::term(u, p.coeff(k))))).collect();
    let sol = solve_affine_system(&eqs, &Subspace::default(), false).map_err(|err| CurveError::ImplicitizationFailed(err.to_string()))?;
    if sol.nullspace.len() != 1 {
        return Err(CurveError::ImplicitizationFailed(format!("{} independent forms of degree {e}", sol.nullspace.len())));
    }
    let v = &sol.nullspace[0];
    let f = MPoly::from_terms(&XYZ, monos.iter().zip(&unknowns).map(|(m, u)| (v[u].clone(), m.clone())));
    PlaneCurve::new(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qpoly;

    fn xyz() -> [MPoly<QOmega>; 3] {
        XYZ.map(|v| MPoly::var(v).with_vars(&XYZ).unwrap())
    }

    #[test]
    fn line_and_conic() {
        let l0 = ParamCurve::from_ints(&[0, 1], &[1, -1], &[2], "").unwrap();
        let f = implicitize(&l0).unwrap();
        assert_eq!(f, PlaneCurve::line(&[QOmega::int(2), QOmega::int(2), QOmega::int(-1)]).unwrap());
        let conic = ParamCurve::from_ints(&[0, 0, 1], &[0, 1], &[1], "").unwrap();
        let [x, y, z] = xyz();
        let expect = PlaneCurve::new(x.mul(&z).sub(&y.mul(&y))).unwrap();
        assert!(implicitize(&conic).unwrap().ratio_to(&expect).is_some());
    }

    #[test]
    fn improper_parametrization() {
        // (t^2 : t^4 : 1) covers y = x^2 twice
        let c = ParamCurve::from_ints(&[0, 0, 1], &[0, 0, 0, 0, 1], &[1], "").unwrap();
        assert_eq!(map_degree(&c), 2);
        let f = implicitize(&c).unwrap();
        assert_eq!(f.degree(), 2);
        assert!(lies_on(&f, &c));
    }

    #[test]
    fn coordinate_line() {
        let c = ParamCurve::new(qpoly(&[0, 1]), qpoly(&[1]), QPoly::zero(), "").unwrap();
        assert_eq!(implicitize(&c).unwrap().degree(), 1);
    }

    #[test]
    fn multiplicities() {
        let conic = ParamCurve::from_ints(&[0, 0, 1], &[0, 1], &[1], "").unwrap();
        let xline = PlaneCurve::line(&[QOmega::int(1), QOmega::int(0), QOmega::int(0)]).unwrap();
        assert_eq!(intersection_multiplicity_param(&xline, &conic, &QOmega::int(0)).unwrap(), 2);
        let other = PlaneCurve::line(&[QOmega::int(1), QOmega::int(-1), QOmega::int(0)]).unwrap();
        assert_eq!(intersection_multiplicity_param(&other, &conic, &QOmega::int(0)).unwrap(), 1);
        let f = implicitize(&conic).unwrap();
        assert!(matches!(intersection_multiplicity_param(&f, &conic, &QOmega::int(0)), Err(CurveError::IdenticallyZero)));
        let [x, y, _] = xyz();
        assert!(!lies_on(&PlaneCurve::new(x.sub(&y)).unwrap(), &ParamCurve::from_ints(&[0, 1], &[1, 1], &[1], "").unwrap()));
    }

    #[test]
    fn transforms_preserve_incidence() {
        let [x, y, z] = xyz();
        let cusp = PlaneCurve::new(x.pow(3).sub(&y.pow(2).mul(&z))).unwrap();
        let swap: Matrix3 = [
            [QOmega::int(0), QOmega::int(1), QOmega::int(0)],
            [QOmega::int(1), QOmega::int(0), QOmega::int(0)],
            [QOmega::int(0), QOmega::int(0), QOmega::int(1)],
        ];
        let img = cusp.transform(&swap).unwrap();
        assert_eq!(img, PlaneCurve::new(y.pow(3).sub(&x.pow(2).mul(&z))).unwrap());
        let param = ParamCurve::from_ints(&[0, 0, 1], &[0, 0, 0, 1], &[1], "").unwrap();
        let m: Matrix3 = [
            [QOmega::int(1), QOmega::omega(), QOmega::int(0)],
            [QOmega::int(2), QOmega::int(0), QOmega::int(1)],
            [QOmega::int(0), QOmega::int(3), QOmega::frac(1, 2)],
        ];
        assert!(lies_on(&cusp.transform(&m).unwrap(), &param.transform(&m).unwrap()));
        assert!(!cusp.is_squarefree() || cusp.degree() == 3);
        let double = PlaneCurve::new(x.sub(&y).pow(2).mul(&z)).unwrap();
        assert!(!double.is_squarefree());
    }
}
