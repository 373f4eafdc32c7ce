use super::linexpr::{LinExpr, Unknown};
use crate::exactnum::{Field, QOmega, Ring};
use crate::poly::UPoly;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("product of two unknown-bearing coefficients survives at order {order}")]
    NonlinearTermSurvives { order: usize },
    #[error("coefficient of u^{order} is nonzero, cannot divide by u^{m}")]
    NotDivisible { order: usize, m: usize },
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series is not invertible: constant term is zero or not a constant")]
    NotInvertible,
    #[error("substitution shift must vanish at u = 0")]
    ShiftNotSmall,
}

/// Σ_{k=0}^{N} c_k u^k with affine-form coefficients, modulo u^{N+1}.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries {
    coeffs: Vec<LinExpr>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries { coeffs: vec![LinExpr::default(); order + 1] }
    }

    pub fn constant(c: LinExpr, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn scalar(c: QOmega, order: usize) -> Self {
        Self::constant(LinExpr::constant(c), order)
    }

    /// c·u^k.
    pub fn monomial(c: LinExpr, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Truncate a longer coefficient list, or pad a shorter one with zeros.
    pub fn from_coeffs(mut coeffs: Vec<LinExpr>, order: usize) -> Self {
        coeffs.resize(order + 1, LinExpr::default());
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[LinExpr] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &LinExpr {
        &self.coeffs[k]
    }

    /// Explicit change of truncation order.
    pub fn retruncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order)
    }

    fn check(&self, o: &Self) -> Result<(), SeriesError> {
        if self.order() != o.order() {
            Err(SeriesError::OrderMismatch(self.order(), o.order()))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        Ok(TruncSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        Ok(TruncSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn neg(&self) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| a.neg()).collect() }
    }

    pub fn scale(&self, k: &QOmega) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| a.scale(k)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        let n = self.order();
        let mut out = vec![LinExpr::default(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_constant() && a.constant.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                let p = a.mul(b).ok_or(SeriesError::NonlinearTermSurvives { order: i + j })?;
                out[i + j] = out[i + j].add(&p);
            }
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// Multiplicative inverse; the constant term must be a nonzero constant.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        if !c0.is_constant() || c0.constant.is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let i0 = c0.constant.inv();
        let n = self.order();
        let mut out: Vec<LinExpr> = vec![LinExpr::constant(i0.clone())];
        for k in 1..=n {
            let mut acc = LinExpr::default();
            for j in 1..=k {
                let p = self.coeffs[j].mul(&out[k - j]).ok_or(SeriesError::NonlinearTermSurvives { order: k })?;
                acc = acc.add(&p);
            }
            out.push(acc.scale(&i0).neg());
        }
        Ok(TruncSeries { coeffs: out })
    }

    pub fn div(&self, o: &Self) -> Result<Self, SeriesError> {
        self.mul(&o.inv()?)
    }

    /// Exact division by u^m; the result has order N − m.
    pub fn div_upow(&self, m: usize) -> Result<Self, SeriesError> {
        for k in 0..m.min(self.coeffs.len()) {
            if self.coeffs[k] != LinExpr::default() {
                return Err(SeriesError::NotDivisible { order: k, m });
            }
        }
        assert!(m <= self.order(), "division by u^{m} exceeds truncation order {}", self.order());
        Ok(TruncSeries { coeffs: self.coeffs[m..].to_vec() })
    }

    /// Multiply by u^m keeping the truncation order.
    pub fn mul_upow(&self, m: usize) -> Self {
        let n = self.order();
        let mut c = vec![LinExpr::default(); m.min(n + 1)];
        c.extend(self.coeffs.iter().take((n + 1).saturating_sub(m)).cloned());
        TruncSeries { coeffs: c }
    }

    pub fn substitute(&self, values: &BTreeMap<Unknown, QOmega>) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| c.substitute(values)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == LinExpr::default())
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| *c != LinExpr::default())
    }
}

/// f(t0 + shift(u)) by Taylor expansion of f at t0; shift must vanish at u = 0.
pub fn series_substitute(f: &UPoly<QOmega>, t0: &QOmega, shift: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    if shift.coeffs[0] != LinExpr::default() {
        return Err(SeriesError::ShiftNotSmall);
    }
    let n = shift.order();
    let taylor = f.taylor_shift(t0);
    let mut acc = TruncSeries::zero(n);
    let mut power = TruncSeries::scalar(QOmega::int(1), n);
    for (k, c) in taylor.coeffs().iter().enumerate() {
        if k > n {
            break;
        }
        if k > 0 {
            power = power.mul(shift)?;
        }
        acc = acc.add(&power.scale(c))?;
    }
    Ok(acc)
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct LinExprJson {
    #[serde(rename = "const")]
    pub constant: QOmega,
    pub lin: BTreeMap<String, QOmega>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<LinExprJson>,
}

impl From<&LinExpr> for LinExprJson {
    fn from(e: &LinExpr) -> Self {
        LinExprJson { constant: e.constant.clone(), lin: e.lin().iter().map(|(x, c)| (x.0.clone(), c.clone())).collect() }
    }
}

impl From<&LinExprJson> for LinExpr {
    fn from(j: &LinExprJson) -> Self {
        let mut e = LinExpr::constant(j.constant.clone());
        for (x, c) in &j.lin {
            e = e.add(&LinExpr::term(&Unknown::new(x.clone()), c.clone()));
        }
        e
    }
}

impl From<&TruncSeries> for SeriesJson {
    fn from(s: &TruncSeries) -> Self {
        SeriesJson { order: s.order(), coeffs: s.coeffs.iter().map(LinExprJson::from).collect() }
    }
}

impl TryFrom<&SeriesJson> for TruncSeries {
    type Error = String;
    fn try_from(j: &SeriesJson) -> Result<Self, String> {
        if j.coeffs.len() != j.order + 1 {
            return Err(format!("series of order {} needs {} coefficients, got {}", j.order, j.order + 1, j.coeffs.len()));
        }
        Ok(TruncSeries { coeffs: j.coeffs.iter().map(LinExpr::from).collect() })
    }
}
