use super::CurveError;
use crate::exactnum::{ComplexBall, Field, QOmega, Ring};
use crate::poly::{gcd_multimodular, QPoly, UPoly};
use std::fmt;

/// Exact projective point, normalized so the last nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint([QOmega; 3]);

impl ProjPoint {
    pub fn new(x: QOmega, y: QOmega, z: QOmega) -> Result<Self, CurveError> {
        let mut c = [x, y, z];
        let Some(k) = c.iter().rposition(|v| !v.is_zero()) else {
            return Err(CurveError::ZeroPoint);
        };
        let inv = c[k].inv();
        for v in c.iter_mut() {
            *v = v.mul(&inv);
        }
        Ok(ProjPoint(c))
    }

    pub fn ints(x: i64, y: i64, z: i64) -> Self {
        Self::new(QOmega::int(x), QOmega::int(y), QOmega::int(z)).expect("nonzero point")
    }

    pub fn coords(&self) -> &[QOmega; 3] {
        &self.0
    }

    pub fn to_balls(&self, prec: u32) -> [ComplexBall; 3] {
        self.0.clone().map(|c| ComplexBall::from_qomega(&c, prec))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn cross(a: &[QOmega; 3], b: &[QOmega; 3]) -> [QOmega; 3] {
    [a[1].mul(&b[2]).sub(&a[2].mul(&b[1])), a[2].mul(&b[0]).sub(&a[0].mul(&b[2])), a[0].mul(&b[1]).sub(&a[1].mul(&b[0]))]
}

pub fn dot(a: &[QOmega; 3], b: &[QOmega; 3]) -> QOmega {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

/// Projective line a·x + b·y + c·z = 0, scaled so the last nonzero coefficient is 1.
pub fn normalize_line(l: [QOmega; 3]) -> Option<[QOmega; 3]> {
    ProjPoint::new(l[0].clone(), l[1].clone(), l[2].clone()).ok().map(|p| p.0)
}

pub type Matrix3 = [[QOmega; 3]; 3];

pub fn mat_identity() -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| QOmega::int((i == j) as i64)))
}

pub fn mat_det(m: &Matrix3) -> QOmega {
    dot(&m[0], &cross(&m[1], &m[2]))
}

pub fn mat_inverse(m: &Matrix3) -> Result<Matrix3, CurveError> {
    let d = mat_det(m);
    if d.is_zero() {
        return Err(CurveError::SingularMatrix);
    }
    // columns of the inverse are the cross products of the rows
    let c = [cross(&m[1], &m[2]), cross(&m[2], &m[0]), cross(&m[0], &m[1])];
    let di = d.inv();
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| c[j][i].mul(&di))))
}

pub fn mat_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).fold(QOmega::int(0), |s, k| s.add(&a[i][k].mul(&b[k][j])))))
}

/// Rational plane curve t ↦ (x(t) : y(t) : z(t)).
#[derive(Clone, Debug, PartialEq)]
pub struct ParamCurve {
    pub x: QPoly,
    pub y: QPoly,
    pub z: QPoly,
    pub label: String,
}

impl ParamCurve {
    /// Checks primitivity and that the map is not constant.
    pub fn new(x: QPoly, y: QPoly, z: QPoly, label: impl Into<String>) -> Result<Self, CurveError> {
        let c = ParamCurve { x, y, z, label: label.into() };
        if c.degree() == 0 {
            return Err(CurveError::DegenerateImage);
        }
        let g = gcd_multimodular(&gcd_multimodular(&c.x, &c.y), &c.z);
        if g.deg0() > 0 {
            return Err(CurveError::NotPrimitive);
        }
        if c.coords().iter().all(|p| p.degree() == Some(0)) || c.is_constant_map() {
            return Err(CurveError::DegenerateImage);
        }
        Ok(c)
    }

    pub fn from_ints(x: &[i64], y: &[i64], z: &[i64], label: &str) -> Result<Self, CurveError> {
        Self::new(crate::poly::qpoly(x), crate::poly::qpoly(y), crate::poly::qpoly(z), label)
    }

    /// Divide out the common factor of the coordinates.
    pub fn primitive(x: QPoly, y: QPoly, z: QPoly, label: impl Into<String>) -> Result<Self, CurveError> {
        let g = gcd_multimodular(&gcd_multimodular(&x, &y), &z);
        if g.is_zero() {
            return Err(CurveError::ZeroPoint);
        }
        let d = |p: &QPoly| p.div_exact(&g).expect("gcd divides");
        Self::new(d(&x), d(&y), d(&z), label)
    }

    pub fn coords(&self) -> [&QPoly; 3] {
        [&self.x, &self.y, &self.z]
    }

    fn is_constant_map(&self) -> bool {
        // all 2×2 minors of (f, f') vanish identically
        let d = self.derivative();
        let m = minors(&self.coords(), &d.each_ref());
        m.iter().all(|p| p.is_zero())
    }

    /// Degree of the parametrization: max coordinate degree.
    pub fn degree(&self) -> usize {
        self.coords().iter().map(|p| p.deg0()).max().unwrap_or(0)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn eval_vec(&self, t: &QOmega) -> [QOmega; 3] {
        [self.x.eval(t), self.y.eval(t), self.z.eval(t)]
    }

    pub fn eval(&self, t: &QOmega) -> Result<ProjPoint, CurveError> {
        let [a, b, c] = self.eval_vec(t);
        ProjPoint::new(a, b, c).map_err(|_| CurveError::BasePoint(Box::new(t.clone())))
    }

    /// Image of t = ∞: the coefficients of t^deg.
    pub fn eval_infinity(&self) -> ProjPoint {
        let d = self.degree();
        ProjPoint::new(self.x.coeff(d), self.y.coeff(d), self.z.coeff(d)).expect("degree is attained")
    }

    pub fn eval_ball(&self, t: &ComplexBall, prec: u32) -> [ComplexBall; 3] {
        self.coords().map(|p| eval_upoly_ball(p, t, prec))
    }

    pub fn derivative(&self) -> [QPoly; 3] {
        self.coords().map(|p| p.derivative())
    }

    /// True when f(t0) × f'(t0) ≠ 0, i.e. the branch at t0 is smooth.
    pub fn is_immersed_at(&self, t0: &QOmega) -> bool {
        let p = self.eval_vec(t0);
        let d = self.derivative().map(|q| q.eval(t0));
        cross(&p, &d).iter().any(|c| !c.is_zero())
    }

    /// Tangent line at t0 spanned by f(t0) and the first derivative not proportional to it.
    pub fn tangent_line(&self, t0: &QOmega) -> Result<[QOmega; 3], CurveError> {
        let p = self.eval_vec(t0);
        if p.iter().all(|c| c.is_zero()) {
            return Err(CurveError::BasePoint(Box::new(t0.clone())));
        }
        let mut der = self.coords().map(|q| q.clone());
        for _ in 0..self.degree() {
            der = der.map(|q| q.derivative());
            let v = der.clone().map(|q| q.eval(t0));
            if let Some(l) = normalize_line(cross(&p, &v)) {
                return Ok(l);
            }
        }
        Err(CurveError::NotImmersed(Box::new(t0.clone())))
    }

    /// Coordinate-wise scaling (s_x·x : s_y·y : s_z·z).
    pub fn twist(&self, scale: &[QOmega; 3]) -> Result<Self, CurveError> {
        if scale.iter().any(|s| s.is_zero()) {
            return Err(CurveError::SingularMatrix);
        }
        Ok(ParamCurve { x: self.x.scale(&scale[0]), y: self.y.scale(&scale[1]), z: self.z.scale(&scale[2]), label: self.label.clone() })
    }

    /// Image under p ↦ M·p.
    pub fn transform(&self, m: &Matrix3) -> Result<Self, CurveError> {
        if mat_det(m).is_zero() {
            return Err(CurveError::SingularMatrix);
        }
        let c = self.coords();
        let row = |i: usize| (0..3).fold(QPoly::zero(), |s, k| s.add(&c[k].scale(&m[i][k])));
        Ok(ParamCurve { x: row(0), y: row(1), z: row(2), label: self.label.clone() })
    }

    /// Reparametrize by t ↦ (a·t + b)/(c·t + d), clearing denominators.
    pub fn reparametrize(&self, a: &QOmega, b: &QOmega, c: &QOmega, d: &QOmega) -> Result<Self, CurveError> {
        if a.mul(d).sub(&b.mul(c)).is_zero() {
            return Err(CurveError::SingularMatrix);
        }
        let n = self.degree();
        let num = UPoly::new(vec![b.clone(), a.clone()]);
        let den = UPoly::new(vec![d.clone(), c.clone()]);
        let mut num_pows = vec![QPoly::one()];
        let mut den_pows = vec![QPoly::one()];
        for k in 1..=n {
            num_pows.push(num_pows[k - 1].mul(&num));
            den_pows.push(den_pows[k - 1].mul(&den));
        }
        let sub = |p: &QPoly| p.coeffs().iter().enumerate().fold(QPoly::zero(), |s, (k, ck)| s.add(&num_pows[k].mul(&den_pows[n - k]).scale(ck)));
        Ok(ParamCurve { x: sub(&self.x), y: sub(&self.y), z: sub(&self.z), label: self.label.clone() })
    }
}

/// The 2×2 minors (u_y v_z − u_z v_y, u_z v_x − u_x v_z, u_x v_y − u_y v_x).
pub fn minors(u: &[&QPoly; 3], v: &[&QPoly; 3]) -> [QPoly; 3] {
    [u[1].mul(v[2]).sub(&u[2].mul(v[1])), u[2].mul(v[0]).sub(&u[0].mul(v[2])), u[0].mul(v[1]).sub(&u[1].mul(v[0]))]
}

pub fn eval_upoly_ball(p: &QPoly, t: &ComplexBall, prec: u32) -> ComplexBall {
    let mut acc = ComplexBall::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(t, prec).add(&ComplexBall::from_qomega(c, prec), prec);
    }
    acc
}

/// ω^k for any integer k.
pub fn omega_power(k: i64) -> QOmega {
    match k.rem_euclid(3) {
        0 => QOmega::int(1),
        1 => QOmega::omega(),
        _ => QOmega::omega_bar(),
    }
}

/// Components (ζ^k t X(t^n) : t Y(t^n) : Z(t^n)) of h(x^n, y^n, z^n) = 0, given the
/// parametrization (s X(s)^n : s Y(s)^n : Z(s)^n) of h = 0. Needs ζ = e^{2πi/n} ∈ Q(ω).
pub fn root_of_unity_components(x: &QPoly, y: &QPoly, z: &QPoly, n: u32) -> Result<Vec<ParamCurve>, CurveError> {
    let zeta = match n {
        1 => QOmega::int(1),
        2 => QOmega::int(-1),
        3 => QOmega::omega(),
        6 => QOmega::omega().add(&QOmega::int(1)),
        _ => return Err(CurveError::UnsupportedRoot(n)),
    };
    let strip_t = |p: &QPoly| -> Result<QPoly, CurveError> {
        if !p.coeff(0).is_zero() {
            return Err(CurveError::ShapeMismatch("coordinate not divisible by the parameter".into()));
        }
        Ok(UPoly::new(p.coeffs()[1..].to_vec()))
    };
    let xr = nth_root(&strip_t(x)?, n)?;
    let yr = nth_root(&strip_t(y)?, n)?;
    let zr = nth_root(z, n)?;
    // X(t^n) etc.
    let spread = |p: &QPoly| -> QPoly {
        let mut c = vec![QOmega::int(0); p.deg0() * n as usize + 1];
        for (i, v) in p.coeffs().iter().enumerate() {
            c[i * n as usize] = v.clone();
        }
        UPoly::new(c)
    };
    let tx = spread(&xr).shift_up(1);
    let ty = spread(&yr).shift_up(1);
    let tz = spread(&zr);
    let mut out = Vec::with_capacity(n as usize);
    let mut zk = QOmega::int(1);
    for k in 1..=n {
        zk = zk.mul(&zeta);
        out.push(ParamCurve::primitive(tx.scale(&zk), ty.clone(), tz.clone(), format!("component {k}"))?);
    }
    Ok(out)
}

/// Exact n-th root of a polynomial whose leading coefficient is the n-th power of a rational.
pub fn nth_root(p: &QPoly, n: u32) -> Result<QPoly, CurveError> {
    if n == 1 {
        return Ok(p.clone());
    }
    let mismatch = || CurveError::ShapeMismatch(format!("polynomial is not an exact {n}-th power"));
    let d = p.degree().ok_or_else(mismatch)?;
    if d % n as usize != 0 {
        return Err(mismatch());
    }
    let m = d / n as usize;
    let lc = p.lc();
    let root_lc = rational_nth_root(&lc, n).ok_or_else(mismatch)?;
    // reversed monic series A(u) = 1 + …, B = A^{1/n}: b_k = (1/k) Σ_j ((α+1)j − k) a_j b_{k−j}
    let a: Vec<QOmega> = (0..=m).map(|k| p.coeff(d - k).div(&lc)).collect();
    let alpha = QOmega::frac(1, n as i64);
    let mut b = vec![QOmega::int(1)];
    for k in 1..=m {
        let mut s = QOmega::int(0);
        for j in 1..=k {
            let w = alpha.add(&QOmega::int(1)).mul(&QOmega::int(j as i64)).sub(&QOmega::int(k as i64));
            s = s.add(&w.mul(&a[j]).mul(&b[k - j]));
        }
        b.push(s.div(&QOmega::int(k as i64)));
    }
    let mut c = b;
    c.reverse();
    let q = UPoly::new(c).scale(&root_lc);
    if q.pow(n) == *p {
        Ok(q)
    } else {
        Err(mismatch())
    }
}

fn rational_nth_root(x: &QOmega, n: u32) -> Option<QOmega> {
    use num_bigint::BigInt;
    use num_traits::Signed;
    if !x.is_rational() {
        return None;
    }
    let r = &x.re;
    let root = |v: &BigInt| -> Option<BigInt> {
        if v.is_negative() && n.is_multiple_of(2) {
            return None;
        }
        let c = v.abs().nth_root(n);
        let c = if v.is_negative() { -c } else { c };
        (num_traits::Pow::pow(&c, n) == *v).then_some(c)
    };
    Some(QOmega::from_rational(crate::exactnum::Rational::new(root(r.numer())?, root(r.denom())?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qpoly;

    #[test]
    fn evaluation() {
        let l0 = ParamCurve::from_ints(&[0, 1], &[1, -1], &[2], "L0").unwrap();
        let p = l0.eval(&QOmega::int(-1)).unwrap();
        assert_eq!(p, ProjPoint::ints(-1, 2, 2));
        let quartic = ParamCurve::from_ints(&[0, -3, 0, 0, 1], &[0, 2, 0, 0, 1], &[-1, 0, 0, 2], "q").unwrap();
        assert_eq!(quartic.eval(&QOmega::int(0)).unwrap(), ProjPoint::ints(0, 0, 1));
        assert_eq!(quartic.eval_infinity(), ProjPoint::ints(1, 1, 0));
    }

    #[test]
    fn base_points_rejected() {
        let c = ParamCurve { x: qpoly(&[0, 1]), y: qpoly(&[0, 0, 1]), z: qpoly(&[0, 1]), label: String::new() };
        assert!(matches!(c.eval(&QOmega::int(0)), Err(CurveError::BasePoint(_))));
        assert!(matches!(ParamCurve::new(c.x.clone(), c.y.clone(), c.z.clone(), ""), Err(CurveError::NotPrimitive)));
        let p = ParamCurve::primitive(c.x, c.y, c.z, "").unwrap();
        assert_eq!(p.degree(), 1);
        assert!(matches!(ParamCurve::from_ints(&[1], &[2], &[3], ""), Err(CurveError::DegenerateImage)));
    }

    #[test]
    fn tangents() {
        let conic = ParamCurve::from_ints(&[0, 0, 1], &[0, 1], &[1], "").unwrap();
        assert_eq!(conic.tangent_line(&QOmega::int(0)).unwrap(), [QOmega::int(1), QOmega::int(0), QOmega::int(0)]);
        let l0 = ParamCurve::from_ints(&[0, 1], &[1, -1], &[2], "").unwrap();
        let l = l0.tangent_line(&QOmega::frac(3, 7)).unwrap();
        assert_eq!(l, [QOmega::int(-2), QOmega::int(-2), QOmega::int(1)]);
        // cusp: first derivative vanishes, second gives the tangent y = 0
        let cusp = ParamCurve::from_ints(&[0, 0, 1], &[0, 0, 0, 1], &[1], "").unwrap();
        assert!(!cusp.is_immersed_at(&QOmega::int(0)));
        assert_eq!(cusp.tangent_line(&QOmega::int(0)).unwrap(), [QOmega::int(0), QOmega::int(1), QOmega::int(0)]);
    }

    #[test]
    fn matrices() {
        let m: Matrix3 = [
            [QOmega::int(1), QOmega::omega(), QOmega::int(0)],
            [QOmega::int(2), QOmega::int(0), QOmega::int(1)],
            [QOmega::int(0), QOmega::int(3), QOmega::frac(1, 2)],
        ];
        let inv = mat_inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), mat_identity());
        let mut s = m.clone();
        s[2] = s[0].clone();
        assert!(matches!(mat_inverse(&s), Err(CurveError::SingularMatrix)));
    }

    #[test]
    fn roots() {
        let p = qpoly(&[1, 2, 1]).pow(3).scale(&QOmega::int(8));
        assert_eq!(nth_root(&p, 3).unwrap(), qpoly(&[2, 4, 2]));
        assert!(nth_root(&qpoly(&[1, 0, 1]), 2).is_err());
    }

    #[test]
    fn components_of_x2_minus_y2() {
        let one = qpoly(&[1]);
        let t = qpoly(&[0, 1]);
        let comps = root_of_unity_components(&t, &t, &one, 2).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].x, qpoly(&[0, -1]));
        assert_eq!(comps[1].x, qpoly(&[0, 1]));
        let id = root_of_unity_components(&t, &qpoly(&[0, 2]), &one, 1).unwrap();
        assert_eq!(id[0].y, qpoly(&[0, 2]));
        assert!(matches!(root_of_unity_components(&qpoly(&[0, 0, 1]), &t, &one, 2), Err(CurveError::ShapeMismatch(_))));
    }
}
