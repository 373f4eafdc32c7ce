//! Perturbation of the dual Hesse arrangement plus a line into an irreducible rational
//! curve of degree 10 with 12 triple points.
//!
//! The nine lines come in three pencils through the coordinate vertices. The line L0 is
//! parametrized, each point where it meets L_i is blown into a small bubble, and the
//! bubbles are moved so that near every triple point of the arrangement the three branches
//! keep meeting in one point to higher and higher order in the deformation parameter u.

mod branch;
mod json;
mod linear;
mod probe;
mod recursion;

pub use branch::*;
pub use json::*;
pub use linear::*;
pub use probe::*;
pub use recursion::*;

use crate::curve::{cross, dot, omega_power, CurveError, ParamCurve};
use crate::exactnum::{Field, QOmega, Ring};
use crate::poly::{QPoly, UPoly};
use crate::series::{SeriesError, SolveError, Unknown};
use crate::singular::SingularError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HesseError {
    #[error("line is not admissible: {0}")]
    LineNotAdmissible(String),
    #[error("no parameter shift sends the bubble of line {line} to p{k}")]
    NoSolution { k: usize, j: usize, line: usize },
    #[error("inconsistent system: {0}")]
    Inconsistent(String),
    #[error("b{0} vanishes after substitution")]
    ZeroB(usize),
    #[error("u must be nonzero")]
    ZeroU,
    #[error("homogeneous part of the order {0} system differs from the first order one")]
    MatrixChanged(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Singular(#[from] SingularError),
}

/// Which product of A/B factors builds the affine coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FormulaForm {
    /// From x = t·f1, y = (1 − t)·f2, z = 2·f3: X carries B/A over the first pencil and
    /// A/B over the third, Y carries B/A over the second and A/B over the third.
    #[default]
    Derived,
    /// The factor placement of the displayed fractions: A/B over the first pencil in both
    /// coordinates, B/A over the third in X and over the second in Y.
    Display,
}

impl FormulaForm {
    /// Exponent of B_i/A_i for a line of the given pencil (0-based) in coordinate c.
    pub fn exponent(self, c: usize, pencil: usize) -> i32 {
        const DERIVED: [[i32; 3]; 2] = [[1, 0, -1], [0, 1, -1]];
        const DISPLAY: [[i32; 3]; 2] = [[-1, 0, 1], [-1, 1, 0]];
        match self {
            FormulaForm::Derived => DERIVED[c][pencil],
            FormulaForm::Display => DISPLAY[c][pencil],
        }
    }
}

/// The arrangement, the line L0 and where it meets the nine lines.
#[derive(Clone, Debug)]
pub struct HesseConfig {
    /// L_1..L_9 as coefficient vectors (index 0 is L_1).
    pub lines: [[QOmega; 3]; 9],
    /// p_1..p_9 normalized to z = 1.
    pub points: [[QOmega; 3]; 9],
    /// The coordinate vertices, where the three pencils meet.
    pub vertices: [[QOmega; 3]; 3],
    /// incidence[k][j]: the line (0-based) of pencil j through p_k.
    pub incidence: [[usize; 3]; 9],
    pub l0: [QOmega; 3],
    /// Parameters of L0 ∩ L_i.
    pub t: [QOmega; 9],
    /// x and y of the parametrization (x(t), y(t), 2) of L0, as polynomials in t.
    pub lx: QPoly,
    pub ly: QPoly,
    pub form: FormulaForm,
}

pub fn default_l0() -> [QOmega; 3] {
    [QOmega::int(2), QOmega::int(2), QOmega::int(-1)]
}

/// Pencil (0-based) of line i (0-based).
pub fn pencil(i: usize) -> usize {
    i / 3
}

fn arrangement() -> ([[QOmega; 3]; 9], [[QOmega; 3]; 9]) {
    let w = QOmega::omega();
    let wb = QOmega::omega_bar();
    let (o, one) = (QOmega::int(0), QOmega::int(1));
    let m = |q: &QOmega| q.neg();
    let lines = [
        [o.clone(), one.clone(), m(&one)],
        [o.clone(), one.clone(), m(&w)],
        [o.clone(), one.clone(), m(&wb)],
        [m(&one), o.clone(), one.clone()],
        [m(&w), o.clone(), one.clone()],
        [m(&wb), o.clone(), one.clone()],
        [one.clone(), m(&one), o.clone()],
        [one.clone(), m(&w), o.clone()],
        [one.clone(), m(&wb), o.clone()],
    ];
    let raw = [
        [one.clone(), one.clone(), one.clone()],
        [one.clone(), wb.clone(), w.clone()],
        [one.clone(), w.clone(), wb.clone()],
        [wb.clone(), one.clone(), one.clone()],
        [one.clone(), one.clone(), wb.clone()],
        [one.clone(), wb.clone(), one.clone()],
        [one.clone(), w.clone(), one.clone()],
        [w.clone(), one.clone(), one.clone()],
        [one.clone(), one.clone(), w],
    ];
    let points = raw.map(|p| {
        let zi = p[2].inv();
        [p[0].mul(&zi), p[1].mul(&zi), QOmega::int(1)]
    });
    (lines, points)
}

fn vertices() -> [[QOmega; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|k| QOmega::int((i == k) as i64)))
}

/// Sets up the arrangement for the line L0 = {c_x x + c_y y + c_z z = 0}, parametrized as
/// (t, −(c_x t + 2 c_z)/c_y, 2).
pub fn build_config(l0: &[QOmega; 3]) -> Result<HesseConfig, HesseError> {
    build_config_with(l0, FormulaForm::Derived)
}

pub fn build_config_with(l0: &[QOmega; 3], form: FormulaForm) -> Result<HesseConfig, HesseError> {
    if l0.iter().all(|c| c.is_zero()) {
        return Err(HesseError::LineNotAdmissible("zero line".into()));
    }
    let (lines, points) = arrangement();
    let verts = vertices();
    for (n, v) in verts.iter().enumerate() {
        if dot(l0, v).is_zero() {
            return Err(HesseError::LineNotAdmissible(format!("passes through the vertex {}", ["(1:0:0)", "(0:1:0)", "(0:0:1)"][n])));
        }
    }
    for (k, p) in points.iter().enumerate() {
        if dot(l0, p).is_zero() {
            return Err(HesseError::LineNotAdmissible(format!("passes through p{}", k + 1)));
        }
    }
    for (i, l) in lines.iter().enumerate() {
        for (n, v) in verts.iter().enumerate() {
            // L_i meets the coordinate line {v·p = 0}
            let q = cross(l, v);
            if dot(l0, &q).is_zero() {
                return Err(HesseError::LineNotAdmissible(format!("meets L{} on the coordinate line {}", i + 1, ["x = 0", "y = 0", "z = 0"][n])));
            }
        }
    }
    let mut incidence = [[0usize; 3]; 9];
    for (k, p) in points.iter().enumerate() {
        for j in 0..3 {
            let on: Vec<usize> = (3 * j..3 * j + 3).filter(|&i| dot(&lines[i], p).is_zero()).collect();
            assert_eq!(on.len(), 1, "each triple point lies on one line of each pencil");
            incidence[k][j] = on[0];
        }
    }
    let cy_inv = l0[1].inv();
    let lx = UPoly::x();
    let ly = UPoly::new(vec![l0[2].mul(&QOmega::int(-2)).mul(&cy_inv), l0[0].neg().mul(&cy_inv)]);
    let mut t: [QOmega; 9] = Default::default();
    for (i, l) in lines.iter().enumerate() {
        // l·(lx(t), ly(t), 2) = α t + β
        let alpha = l[0].mul(&lx.coeff(1)).add(&l[1].mul(&ly.coeff(1)));
        let beta = l[1].mul(&ly.coeff(0)).add(&l[2].mul(&QOmega::int(2)));
        t[i] = beta.neg().div(&alpha);
    }
    Ok(HesseConfig { lines, points, vertices: verts, incidence, l0: l0.clone(), t, lx, ly, form })
}

impl HesseConfig {
    /// Point (x, y, 2) of L0 at parameter t.
    pub fn l0_point(&self, t: &QOmega) -> [QOmega; 3] {
        [self.lx.eval(t), self.ly.eval(t), QOmega::int(2)]
    }
}

/// Names of the 18 perturbation parameters a1..a9, b1..b9.
pub fn param_unknowns() -> [Unknown; 18] {
    std::array::from_fn(|m| if m < 9 { Unknown::new(format!("a{}", m + 1)) } else { Unknown::new(format!("b{}", m - 8)) })
}

/// The perturbation parameters (a_1..a_9; b_1..b_9).
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbParams {
    pub a: [QOmega; 9],
    pub b: [QOmega; 9],
}

impl PerturbParams {
    pub fn from_vec(v: &[QOmega]) -> Self {
        PerturbParams { a: std::array::from_fn(|i| v[i].clone()), b: std::array::from_fn(|i| v[9 + i].clone()) }
    }

    pub fn to_vec(&self) -> Vec<QOmega> {
        self.a.iter().chain(self.b.iter()).cloned().collect()
    }

    pub fn zero() -> Self {
        Self::from_vec(&vec![QOmega::int(0); 18])
    }
}

/// The solution â of the linear stage chosen for the default line:
/// (−1/3, α, ᾱ, −1/3, ᾱ, α, 37/42, 0, 0; 1, 1, 1, 1, 1, 1, −1/2, 1, 1), α = (38ω − 5)/21.
pub fn a_hat() -> PerturbParams {
    let alpha = QOmega::omega().mul(&QOmega::int(38)).sub(&QOmega::int(5)).div(&QOmega::int(21));
    let alpha_bar = alpha.conj();
    let third = QOmega::frac(-1, 3);
    let o = QOmega::int(0);
    let one = QOmega::int(1);
    PerturbParams {
        a: [third.clone(), alpha.clone(), alpha_bar.clone(), third, alpha_bar, alpha, QOmega::frac(37, 42), o.clone(), o],
        b: [one.clone(), one.clone(), one.clone(), one.clone(), one.clone(), one.clone(), QOmega::frac(-1, 2), one.clone(), one],
    }
}

/// The curve t ↦ (x(t) f1(t) : y(t) f2(t) : 2 f3(t)), where f_ν = ∏ (t − t_i − (a_i + b_{i,ν}) u)
/// and b_{i,ν} = b_i for lines of pencil ν, 0 otherwise.
pub fn family_curve(cfg: &HesseConfig, u: &QOmega, p: &PerturbParams) -> Result<ParamCurve, HesseError> {
    let f: [QPoly; 3] = std::array::from_fn(|nu| {
        (0..9).fold(QPoly::one(), |acc, i| {
            let mut shift = p.a[i].clone();
            if pencil(i) == nu {
                shift = shift.add(&p.b[i]);
            }
            acc.mul(&UPoly::linear_root(&cfg.t[i].add(&shift.mul(u))))
        })
    });
    let [f1, f2, f3] = f;
    let c = ParamCurve::new(cfg.lx.mul(&f1), cfg.ly.mul(&f2), f3.scale(&QOmega::int(2)), "hesse family")?;
    Ok(c)
}

/// ω-power labels used in reports: ω^k for k = 0, 1, 2.
pub fn omega_label(q: &QOmega) -> Option<usize> {
    (0..3).find(|&k| omega_power(k as i64) == *q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_parameters() {
        let cfg = build_config(&default_l0()).unwrap();
        let w = QOmega::omega();
        let wb = QOmega::omega_bar();
        let two = QOmega::int(2);
        let expected = [
            QOmega::int(-1),
            QOmega::int(1).sub(&w.mul(&two)),
            QOmega::int(1).sub(&wb.mul(&two)),
            two.clone(),
            wb.mul(&two),
            w.mul(&two),
            QOmega::frac(1, 2),
            wb.neg(),
            w.neg(),
        ];
        assert_eq!(cfg.t, expected);
        for i in 0..9 {
            assert!(dot(&cfg.lines[i], &cfg.l0_point(&cfg.t[i])).is_zero());
        }
        assert_eq!(cfg.ly, crate::poly::qpoly(&[1, -1]));
    }

    #[test]
    fn arrangement_incidences() {
        let cfg = build_config(&default_l0()).unwrap();
        // every pair of lines meets at one of the 12 triple points
        let mut all: Vec<[QOmega; 3]> = cfg.points.to_vec();
        all.extend(cfg.vertices.iter().cloned());
        for i in 0..9 {
            let on = all.iter().filter(|p| dot(&cfg.lines[i], p).is_zero()).count();
            assert_eq!(on, 4);
        }
        assert_eq!(cfg.incidence[0], [0, 3, 6]);
    }

    #[test]
    fn inadmissible_lines() {
        let one = QOmega::int(1);
        let through_p1 = [one.clone(), one.clone(), QOmega::int(-2)];
        assert!(matches!(build_config(&through_p1), Err(HesseError::LineNotAdmissible(_))));
        let x_axis = [QOmega::int(0), one, QOmega::int(0)];
        assert!(matches!(build_config(&x_axis), Err(HesseError::LineNotAdmissible(_))));
    }

    #[test]
    fn family_at_zero_is_a_line() {
        let cfg = build_config(&default_l0()).unwrap();
        let c = family_curve(&cfg, &QOmega::int(0), &a_hat());
        // u = 0 makes all three coordinates share f_0, so the map is not primitive
        assert!(matches!(c, Err(HesseError::Curve(CurveError::NotPrimitive))));
        let c = family_curve(&cfg, &QOmega::frac(1, 10), &a_hat()).unwrap();
        assert_eq!(c.degree(), 10);
        for v in &cfg.vertices {
            let p = crate::curve::ProjPoint::new(v[0].clone(), v[1].clone(), v[2].clone()).unwrap();
            assert_eq!(crate::singular::multiplicity_at_point_exact(&c, &p).unwrap().0, 3);
        }
    }
}
