use crate::exactnum::{Field, QOmega, Ring};
use std::fmt;

/// Dense univariate polynomial, coefficients from degree 0 upward.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq)]
pub struct UPoly<R: Ring> {
    c: Vec<R>,
}

impl<R: Ring> fmt::Debug for UPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c:?})")?,
                1 => write!(f, "({c:?})t")?,
                _ => write!(f, "({c:?})t^{i}")?,
            }
        }
        Ok(())
    }
}

impl<R: Ring> UPoly<R> {
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly { c: vec![R::one()] }
    }

    pub fn constant(a: R) -> Self {
        UPoly::new(vec![a])
    }

    /// The polynomial `t`.
    pub fn x() -> Self {
        UPoly { c: vec![R::zero(), R::one()] }
    }

    /// a·t^k
    pub fn monomial(a: R, k: usize) -> Self {
        let mut c = vec![R::zero(); k + 1];
        c[k] = a;
        UPoly::new(c)
    }

    /// t − a
    pub fn linear_root(a: &R) -> Self {
        UPoly::new(vec![a.neg(), R::one()])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> R {
        self.c.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> R {
        self.c.last().cloned().unwrap_or_else(R::zero)
    }

    /// Order of vanishing at 0; None for zero.
    pub fn low_degree(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                _ => unreachable!(),
            });
        }
        UPoly::new(c)
    }

    pub fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|x| x.neg()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![R::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        UPoly::new(c)
    }

    pub fn scale(&self, a: &R) -> Self {
        UPoly::new(self.c.iter().map(|x| x.mul(a)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by t^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![R::zero(); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(self.c.iter().enumerate().skip(1).map(|(i, a)| a.mul(&R::from_i64(i as i64))).collect())
    }

    /// k-th derivative divided by k! is not taken here; plain k-fold derivative.
    pub fn derivative_n(&self, k: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p
    }

    /// f(g(t)).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = UPoly::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(g).add(&UPoly::constant(a.clone()));
        }
        acc
    }

    /// t^n f(1/t) for n ≥ deg f.
    pub fn reversed(&self, n: usize) -> Self {
        assert!(self.c.len() <= n + 1, "reverse degree below polynomial degree");
        let mut c = vec![R::zero(); n + 1];
        for (i, a) in self.c.iter().enumerate() {
            c[n - i] = a.clone();
        }
        UPoly::new(c)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UPoly<S> {
        UPoly::new(self.c.iter().map(f).collect())
    }

    /// Sylvester matrix with f-rows first, for formal degrees m = len(f)−1, n = len(g)−1.
    pub fn sylvester(f: &[R], g: &[R]) -> Vec<Vec<R>> {
        let m = f.len() - 1;
        let n = g.len() - 1;
        let size = m + n;
        let mut rows = Vec::with_capacity(size);
        for i in 0..n {
            let mut row = vec![R::zero(); size];
            for (j, a) in f.iter().rev().enumerate() {
                row[i + j] = a.clone();
            }
            rows.push(row);
        }
        for i in 0..m {
            let mut row = vec![R::zero(); size];
            for (j, a) in g.iter().rev().enumerate() {
                row[i + j] = a.clone();
            }
            rows.push(row);
        }
        rows
    }

    /// Resultant over an integral domain via fraction-free Bareiss elimination of the
    /// Sylvester matrix (formal degrees given by coefficient list lengths).
    pub fn resultant_bareiss(f: &[R], g: &[R]) -> R
    where
        R: ExactDiv,
    {
        assert!(!f.is_empty() && !g.is_empty(), "resultant needs formal degrees");
        if f.len() == 1 && g.len() == 1 {
            return R::one();
        }
        bareiss_det(UPoly::sylvester(f, g))
    }
}

/// Determinant by fraction-free elimination; entries from an integral domain whose
/// exact divisions are performed by `exact_div`.
pub fn bareiss_det<R: Ring + ExactDiv>(mut a: Vec<Vec<R>>) -> R {
    let n = a.len();
    if n == 0 {
        return R::one();
    }
    let mut sign = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.exact_div(&prev);
            }
            a[i][k] = R::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Exact division in an integral domain (the divisor is known to divide).
pub trait ExactDiv: Ring {
    fn exact_div(&self, d: &Self) -> Self;
}

impl ExactDiv for QOmega {
    fn exact_div(&self, d: &Self) -> Self {
        self.div(d)
    }
}

impl<K: Field> UPoly<K> {
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return UPoly::zero();
        }
        let l = self.lc().inv();
        self.scale(&l)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        if self.c.len() < d.c.len() {
            return (UPoly::zero(), self.clone());
        }
        let inv = d.lc().inv();
        let mut r = self.c.clone();
        let mut q = vec![K::zero(); self.c.len() - dd];
        for k in (0..q.len()).rev() {
            let top = r[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let f = top.mul(&inv);
            for (j, b) in d.c.iter().enumerate() {
                if !b.is_zero() {
                    r[k + j] = r[k + j].sub(&f.mul(b));
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Some(q) when d divides self exactly.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd by the Euclidean algorithm; gcd(0,0) = 0.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn squarefree_part(&self) -> Self {
        assert!(!self.is_zero(), "squarefree part of zero");
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Yun decomposition: pairs (factor, multiplicity) with squarefree, pairwise coprime monic factors.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let mut out = Vec::new();
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).unwrap();
        let mut c = df.div_exact(&a0).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            b = b.div_exact(&a).unwrap();
            c = d.div_exact(&a).unwrap();
            d = c.sub(&b.derivative());
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Resultant with formal degrees m = len(f)−1, n = len(g)−1 (leading zeros allowed);
    /// equals the Sylvester determinant with f-rows first.
    pub fn resultant_formal(f: &[K], g: &[K]) -> K {
        assert!(!f.is_empty() && !g.is_empty(), "resultant needs formal degrees");
        let m = f.len() - 1;
        let n = g.len() - 1;
        let fa = UPoly::new(f.to_vec());
        let ga = UPoly::new(g.to_vec());
        if fa.is_zero() {
            return if n == 0 { g[0].pow(m as u32) } else { K::zero() };
        }
        if ga.is_zero() {
            return if m == 0 { f[0].pow(n as u32) } else { K::zero() };
        }
        let (dm, dn) = (fa.deg0(), ga.deg0());
        if dm < m && dn < n {
            return K::zero();
        }
        if dm < m {
            // expand along the leading columns: (−1)^{n(m−dm)} g_n^{m−dm}
            let r = fa.resultant(&ga);
            let mut v = ga.lc().pow((m - dm) as u32).mul(&r);
            if (n * (m - dm)) % 2 == 1 {
                v = v.neg();
            }
            return v;
        }
        if dn < n {
            let mut v = UPoly::resultant_formal(g, f);
            if (m * n) % 2 == 1 {
                v = v.neg();
            }
            return v;
        }
        fa.resultant(&ga)
    }

    /// Resultant for actual degrees; `Res(f,g) = lc(f)^{deg g} ∏ g(α)`.
    pub fn resultant(&self, g: &Self) -> K {
        assert!(!(self.is_zero() && g.is_zero()), "resultant of two zero polynomials");
        if self.is_zero() || g.is_zero() {
            let other = if self.is_zero() { g } else { self };
            return if other.deg0() == 0 { K::one() } else { K::zero() };
        }
        let mut a = self.clone();
        let mut b = g.clone();
        let mut acc = K::one();
        loop {
            let m = a.deg0();
            let n = b.deg0();
            if n == 0 {
                return acc.mul(&b.lc().pow(m as u32));
            }
            if m == 0 {
                return acc.mul(&a.lc().pow(n as u32));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return K::zero();
            }
            let k = r.deg0();
            // Res(a,b) = (−1)^{mn} lc(b)^{m−k} Res(b, r)
            let mut f = b.lc().pow((m - k) as u32);
            if (m * n) % 2 == 1 {
                f = f.neg();
            }
            acc = acc.mul(&f);
            a = b;
            b = r;
        }
    }

    /// Taylor shift: coefficients of f(t0 + h) in h.
    pub fn taylor_shift(&self, t0: &K) -> Self {
        self.compose(&UPoly::new(vec![t0.clone(), K::one()]))
    }

    /// Multiplicity of t0 as a root.
    pub fn root_multiplicity(&self, t0: &K) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let lin = UPoly::linear_root(t0);
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.div_exact(&lin) {
            p = q;
            k += 1;
        }
        Some(k)
    }

    /// Lagrange interpolation through distinct points.
    pub fn interpolate(xs: &[K], ys: &[K]) -> Self {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        // Newton divided differences
        let mut dd: Vec<K> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = dd[i].sub(&dd[i - 1]);
                let den = xs[i].sub(&xs[i - j]);
                dd[i] = num.div(&den);
            }
        }
        let mut acc = UPoly::zero();
        for i in (0..n).rev() {
            acc = acc.mul(&UPoly::linear_root(&xs[i])).add(&UPoly::constant(dd[i].clone()));
        }
        acc
    }
}

impl<R: Ring> Ring for UPoly<R> {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn one() -> Self {
        UPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        UPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        UPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        UPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        UPoly::neg(self)
    }
    fn from_i64(n: i64) -> Self {
        UPoly::constant(R::from_i64(n))
    }
}

impl<K: Field> ExactDiv for UPoly<K> {
    fn exact_div(&self, d: &Self) -> Self {
        self.div_exact(d).expect("inexact polynomial division")
    }
}

pub type QPoly = UPoly<QOmega>;

/// Convenience constructor from small integer coefficients (low degree first).
pub fn qpoly(c: &[i64]) -> QPoly {
    UPoly::new(c.iter().map(|&x| QOmega::int(x)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_examples() {
        let a = qpoly(&[-1, 0, 1]);
        let b = qpoly(&[1, -2, 1]);
        assert_eq!(a.gcd(&b), qpoly(&[-1, 1]));
        let f = qpoly(&[1, 1, 0, 1]);
        assert_eq!(f.gcd(&f.derivative()), QPoly::one());
    }

    #[test]
    fn resultant_examples() {
        let c = QOmega::int(5);
        let g = qpoly(&[3, 1, 2]);
        assert_eq!(UPoly::linear_root(&c).resultant(&g), g.eval(&c));
        assert_eq!(qpoly(&[-1, 0, 1]).resultant(&qpoly(&[-2, 1])), QOmega::int(3));
    }

    #[test]
    fn resultant_matches_sylvester() {
        let f = qpoly(&[2, -1, 0, 3]);
        let g = qpoly(&[1, 4, -2]);
        let r = f.resultant(&g);
        let s = UPoly::resultant_bareiss(f.coeffs(), g.coeffs());
        assert_eq!(r, s);
        // formal degree with leading zeros
        let mut fz = f.coeffs().to_vec();
        fz.push(QOmega::int(0));
        fz.push(QOmega::int(0));
        let s2 = UPoly::resultant_bareiss(&fz, g.coeffs());
        assert_eq!(UPoly::resultant_formal(&fz, g.coeffs()), s2);
        let mut gz = g.coeffs().to_vec();
        gz.push(QOmega::int(0));
        assert_eq!(UPoly::resultant_formal(f.coeffs(), &gz), UPoly::resultant_bareiss(f.coeffs(), &gz));
        assert_eq!(UPoly::resultant_formal(&fz, &gz), QOmega::int(0));
    }

    #[test]
    fn squarefree() {
        let f = qpoly(&[-1, 1]).pow(2).mul(&qpoly(&[2, 1]));
        assert_eq!(f.squarefree_part(), qpoly(&[-1, 1]).mul(&qpoly(&[2, 1])));
        let h = qpoly(&[1, 1, 1]).pow(3);
        assert_eq!(h.squarefree_part(), qpoly(&[1, 1, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(qpoly(&[2, 1]), 1), (qpoly(&[-1, 1]), 2)]);
    }

    #[test]
    fn interpolation_round_trip() {
        let f = qpoly(&[3, 0, -2, 5]);
        let xs: Vec<QOmega> = (0..4).map(QOmega::int).collect();
        let ys: Vec<QOmega> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(UPoly::interpolate(&xs, &ys), f);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(qpoly(&[2, 0, 0, 1]).derivative(), qpoly(&[0, 0, 3]));
        assert_eq!(qpoly(&[1, 0, -3, 1]).derivative(), qpoly(&[0, -6, 3]));
        assert!(qpoly(&[7]).derivative().is_zero());
    }
}
