use super::upoly::UPoly;
use crate::exactnum::{Field, Ring};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse multivariate polynomial over named variables.
///
/// Binary operations align variable lists by name, so polynomials built over
/// different variable sets combine freely.
#[derive(Clone)]
pub struct MPoly<R: Ring> {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, R>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("target degree {target} below polynomial degree {degree}")]
    DegreeTooLow { target: u32, degree: u32 },
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("exponent {n} below degree {degree} in the substituted variable")]
    ExponentTooLow { n: u32, degree: u32 },
    #[error("malformed polynomial data: {0}")]
    Malformed(String),
}

impl<R: Ring> MPoly<R> {
    pub fn zero_in(vars: &[&str]) -> Self {
        MPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant_in(vars: &[&str], c: R) -> Self {
        let mut p = Self::zero_in(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn constant(c: R) -> Self {
        Self::constant_in(&[], c)
    }

    pub fn var(name: &str) -> Self {
        let mut p = Self::zero_in(&[name]);
        p.terms.insert(vec![1], R::one());
        p
    }

    pub fn monomial(vars: &[&str], exp: Vec<u32>, c: R) -> Self {
        assert_eq!(vars.len(), exp.len());
        let mut p = Self::zero_in(vars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// Build from (coefficient, exponent) pairs; repeated exponents are summed.
    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (R, Vec<u32>)>) -> Self {
        let mut p = Self::zero_in(vars);
        for (c, e) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> R {
        self.terms.get(exp).cloned().unwrap_or_else(R::zero)
    }

    /// Coefficient of the monomial given as (variable, exponent) pairs; absent variables have exponent 0.
    pub fn coeff_of(&self, mono: &[(&str, u32)]) -> R {
        let mut e = vec![0; self.vars.len()];
        for (v, k) in mono {
            match self.var_index(v) {
                Some(i) => e[i] = *k,
                None if *k == 0 => {}
                None => return R::zero(),
            }
        }
        self.coeff(&e)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, name: &str) -> Option<u32> {
        let i = self.var_index(name);
        if self.is_zero() {
            return None;
        }
        Some(match i {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    /// Re-express over the given variable order; fails if a used variable is missing.
    pub fn with_vars(&self, vars: &[&str]) -> Result<Self, PolyError> {
        let map: Vec<Option<usize>> = self.vars.iter().map(|v| vars.iter().position(|w| w == v)).collect();
        let mut out = Self::zero_in(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => ne[j] = k,
                    None => return Err(PolyError::UnknownVariable(self.vars[i].clone())),
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    fn union_vars(&self, o: &Self) -> Vec<String> {
        let mut v = self.vars.clone();
        for w in &o.vars {
            if !v.contains(w) {
                v.push(w.clone());
            }
        }
        v
    }

    fn aligned(&self, vars: &[String]) -> Self {
        if self.vars == vars {
            return self.clone();
        }
        let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        self.with_vars(&names).expect("union contains every variable")
    }

    /// Drop variables that occur in no term.
    pub fn compact(&self) -> Self {
        let used: Vec<&str> = self.vars.iter().enumerate().filter(|(i, _)| self.terms.keys().any(|e| e[*i] > 0)).map(|(_, v)| v.as_str()).collect();
        self.with_vars(&used).unwrap()
    }

    pub fn add(&self, o: &Self) -> Self {
        let vars = self.union_vars(o);
        let mut a = self.aligned(&vars);
        let b = o.aligned(&vars);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }

    pub fn neg(&self) -> Self {
        MPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let vars = self.union_vars(o);
        let a = self.aligned(&vars);
        let b = o.aligned(&vars);
        let mut out = MPoly { vars, terms: BTreeMap::new() };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x.mul(c));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = MPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        acc.terms.insert(vec![0; self.vars.len()], R::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> MPoly<S> {
        let mut out = MPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn derivative(&self, name: &str) -> Self {
        let mut out = Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        let Some(i) = self.var_index(name) else {
            return out;
        };
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c.mul(&R::from_i64(e[i] as i64)));
        }
        out
    }

    /// Evaluate at a point given in the order of `vars()`.
    pub fn eval(&self, point: &[R]) -> R {
        assert_eq!(point.len(), self.vars.len(), "point dimension");
        let maxdeg: Vec<u32> = (0..self.vars.len()).map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0)).collect();
        let powers: Vec<Vec<R>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut v = vec![R::one()];
                for k in 1..=d as usize {
                    let next = v[k - 1].mul(x);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&powers[i][k as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute polynomials for variables. Unbound variables stay symbolic.
    pub fn subst(&self, bindings: &[(&str, MPoly<R>)]) -> Self {
        let mut out = MPoly::zero_in(&[]);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let name = &self.vars[i];
                let factor = match bindings.iter().find(|(v, _)| v == name) {
                    Some((_, p)) => p.pow(k),
                    None => MPoly::var(name).pow(k),
                };
                t = t.mul(&factor);
            }
            out = out.add(&t);
        }
        out
    }

    /// Substitute univariate polynomials for every variable, producing a univariate result.
    pub fn subst_univariate(&self, values: &[(&str, &UPoly<R>)]) -> Result<UPoly<R>, PolyError> {
        let mut maxdeg = vec![0u32; self.vars.len()];
        for e in self.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                maxdeg[i] = maxdeg[i].max(k);
            }
        }
        let mut powers: Vec<Vec<UPoly<R>>> = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.iter().enumerate() {
            let mut v = vec![UPoly::one()];
            if maxdeg[i] > 0 {
                let p = values.iter().find(|(n, _)| n == name).map(|(_, p)| *p).ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
                for k in 1..=maxdeg[i] as usize {
                    let next = v[k - 1].mul(p);
                    v.push(next);
                }
            }
            powers.push(v);
        }
        let mut acc = UPoly::zero();
        for (e, c) in &self.terms {
            let mut t = UPoly::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&powers[i][k as usize]);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Homogenize with a new (or existing, absent-degree) variable to the given degree.
    pub fn homogenize(&self, name: &str, degree: Option<u32>) -> Result<Self, PolyError> {
        let d = self.total_degree().unwrap_or(0);
        let target = degree.unwrap_or(d);
        if target < d {
            return Err(PolyError::DegreeTooLow { target, degree: d });
        }
        let mut vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let idx = match vars.iter().position(|v| *v == name) {
            Some(i) => i,
            None => {
                vars.push(name);
                vars.len() - 1
            }
        };
        let base = self.with_vars(&vars)?;
        let mut out = Self::zero_in(&vars);
        for (e, c) in &base.terms {
            let s: u32 = e.iter().sum();
            let mut ne = e.clone();
            ne[idx] += target - s;
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Set a variable to 1 and drop it from the variable list.
    pub fn dehomogenize(&self, name: &str) -> Self {
        let Some(idx) = self.var_index(name) else {
            return self.clone();
        };
        let vars: Vec<&str> = self.vars.iter().enumerate().filter(|(i, _)| *i != idx).map(|(_, s)| s.as_str()).collect();
        let mut out = Self::zero_in(&vars);
        for (e, c) in &self.terms {
            let ne: Vec<u32> = e.iter().enumerate().filter(|(i, _)| *i != idx).map(|(_, &k)| k).collect();
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Coefficients with respect to one variable, lowest power first; the variable is removed.
    pub fn coeffs_in(&self, name: &str) -> Vec<MPoly<R>> {
        let idx = self.var_index(name);
        let rest: Vec<&str> = self.vars.iter().filter(|v| v.as_str() != name).map(|s| s.as_str()).collect();
        let deg = self.degree_in(name).unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero_in(&rest); deg + 1];
        for (e, c) in &self.terms {
            let k = idx.map(|i| e[i]).unwrap_or(0) as usize;
            let ne: Vec<u32> = e.iter().enumerate().filter(|(i, _)| Some(*i) != idx).map(|(_, &x)| x).collect();
            out[k].add_term(ne, c.clone());
        }
        out
    }

    /// Single-variable view; every other variable must be absent.
    pub fn to_upoly(&self, name: &str) -> Result<UPoly<R>, PolyError> {
        let mut c = vec![R::zero(); self.degree_in(name).unwrap_or(0) as usize + 1];
        let idx = self.var_index(name);
        for (e, x) in &self.terms {
            for (i, &k) in e.iter().enumerate() {
                if k > 0 && Some(i) != idx {
                    return Err(PolyError::UnknownVariable(self.vars[i].clone()));
                }
            }
            let k = idx.map(|i| e[i]).unwrap_or(0) as usize;
            c[k] = x.clone();
        }
        Ok(UPoly::new(c))
    }

    pub fn from_upoly(p: &UPoly<R>, name: &str) -> Self {
        Self::from_terms(&[name], p.coeffs().iter().enumerate().map(|(i, c)| (c.clone(), vec![i as u32])))
    }

    /// den^n · g(…, y ← num/den, …), computed without fractions.
    pub fn compose_rational(&self, name: &str, num: &Self, den: &Self, n: u32) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        let degree = self.degree_in(name).unwrap_or(0);
        if n < degree {
            return Err(PolyError::ExponentTooLow { n, degree });
        }
        let coeffs = self.coeffs_in(name);
        let mut out = MPoly::zero_in(&[]);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = c.mul(&num.pow(k as u32)).mul(&den.pow(n - k as u32));
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Exact equality irrespective of variable order.
    pub fn equals(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }
}

impl<K: Field> MPoly<K> {
    /// Some(c) with self = c·o for a nonzero scalar c.
    pub fn scalar_ratio(&self, o: &Self) -> Option<K> {
        if self.is_zero() || o.is_zero() {
            return None;
        }
        let vars = self.union_vars(o);
        let a = self.aligned(&vars);
        let b = o.aligned(&vars);
        if a.terms.len() != b.terms.len() {
            return None;
        }
        let (e0, c0) = b.terms.iter().next().unwrap();
        let ratio = a.terms.get(e0)?.div(c0);
        if b.scale(&ratio).equals(&a) {
            Some(ratio)
        } else {
            None
        }
    }

    /// Divide by the coefficient of the largest monomial.
    pub fn monic(&self) -> Self {
        match self.terms.iter().next_back() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }
}

impl<R: Ring> PartialEq for MPoly<R> {
    fn eq(&self, o: &Self) -> bool {
        self.equals(o)
    }
}

impl<R: Ring> fmt::Debug for MPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?})")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*{}", self.vars[i])?,
                    _ => write!(f, "*{}^{}", self.vars[i], k)?,
                }
            }
        }
        Ok(())
    }
}

impl<R: Ring> Ring for MPoly<R> {
    fn zero() -> Self {
        MPoly::zero_in(&[])
    }
    fn one() -> Self {
        MPoly::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        MPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        MPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        MPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        MPoly::neg(self)
    }
    fn from_i64(n: i64) -> Self {
        MPoly::constant(R::from_i64(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::QOmega;

    type P = MPoly<QOmega>;

    fn v(n: &str) -> P {
        P::var(n)
    }
    fn c(n: i64) -> P {
        P::constant(QOmega::int(n))
    }

    #[test]
    fn arithmetic() {
        let x = v("x");
        let y = v("y");
        assert_eq!(x.add(&y).mul(&x.sub(&y)), x.pow(2).sub(&y.pow(2)));
        let cube = x.add(&y).pow(3);
        assert_eq!(cube.coeff_of(&[("x", 2), ("y", 1)]), QOmega::int(3));
        assert_eq!(cube.num_terms(), 4);
    }

    #[test]
    fn substitution() {
        let f = v("x").pow(2).add(&v("y").pow(2));
        let t = v("t");
        let g = f.subst(&[("x", t.clone()), ("y", c(1).sub(&t))]);
        assert_eq!(g, c(2).mul(&t.pow(2)).sub(&c(2).mul(&t)).add(&c(1)));
    }

    #[test]
    fn homogenize_round_trip() {
        let f = c(2).mul(&v("x")).add(&c(2).mul(&v("y"))).sub(&v("z"));
        let d = f.dehomogenize("z");
        assert_eq!(d, c(2).mul(&v("x")).add(&c(2).mul(&v("y"))).sub(&c(1)));
        let h = d.homogenize("z", None).unwrap();
        assert_eq!(h, f);
        assert!(d.homogenize("z", Some(0)).is_err());
    }

    #[test]
    fn derivatives() {
        let p = v("y").pow(3).sub(&c(3).mul(&v("y").pow(2))).add(&c(1));
        assert_eq!(p.derivative("y"), c(3).mul(&v("y").pow(2)).sub(&c(6).mul(&v("y"))));
        assert!(c(5).derivative("t").is_zero());
    }

    #[test]
    fn compose_rational_examples() {
        let g = v("y");
        let q = v("x").pow(3).sub(&v("x").pow(2)).add(&v("x"));
        let p = v("x").pow(3).sub(&c(3).mul(&v("x").pow(2))).add(&c(1));
        let r = g.compose_rational("y", &v("y").sub(&q), &p, 1).unwrap();
        assert_eq!(r, v("y").sub(&q));
        let r2 = v("y").pow(2).compose_rational("y", &v("t"), &c(2), 2).unwrap();
        assert_eq!(r2, v("t").pow(2));
    }

    #[test]
    fn coefficient_views() {
        let f = v("x").mul(&v("t").pow(2)).add(&v("y"));
        let cs = f.coeffs_in("t");
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], v("y"));
        assert_eq!(cs[2], v("x"));
        assert!(cs[1].is_zero());
    }
}
