use crate::exactnum::{Field, QOmega, Ring};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Named unknown, e.g. `a_4_2` for a_{4,2}.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Unknown(pub String);

impl Unknown {
    pub fn new(s: impl Into<String>) -> Self {
        Unknown(s.into())
    }
}

impl fmt::Debug for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Affine form c + Σ l_x·x over Q(ω).
#[derive(Clone, PartialEq, Default)]
pub struct LinExpr {
    pub constant: QOmega,
    lin: BTreeMap<Unknown, QOmega>,
}

impl LinExpr {
    pub fn constant(c: QOmega) -> Self {
        LinExpr { constant: c, lin: BTreeMap::new() }
    }

    pub fn unknown(x: &Unknown) -> Self {
        Self::term(x, QOmega::int(1))
    }

    pub fn term(x: &Unknown, c: QOmega) -> Self {
        let mut lin = BTreeMap::new();
        if !c.is_zero() {
            lin.insert(x.clone(), c);
        }
        LinExpr { constant: QOmega::int(0), lin }
    }

    pub fn var(name: &str) -> Self {
        Self::unknown(&Unknown::new(name))
    }

    pub fn lin(&self) -> &BTreeMap<Unknown, QOmega> {
        &self.lin
    }

    pub fn coeff(&self, x: &Unknown) -> QOmega {
        self.lin.get(x).cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.lin.is_empty()
    }

    pub fn unknowns(&self) -> impl Iterator<Item = &Unknown> {
        self.lin.keys()
    }

    fn add_lin(&mut self, x: &Unknown, c: &QOmega) {
        if c.is_zero() {
            return;
        }
        let v = self.lin.get(x).map(|v| v.add(c)).unwrap_or_else(|| c.clone());
        if v.is_zero() {
            self.lin.remove(x);
        } else {
            self.lin.insert(x.clone(), v);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.constant = r.constant.add(&o.constant);
        for (x, c) in &o.lin {
            r.add_lin(x, c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        LinExpr { constant: self.constant.neg(), lin: self.lin.iter().map(|(x, c)| (x.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &QOmega) -> Self {
        if k.is_zero() {
            return LinExpr::default();
        }
        LinExpr { constant: self.constant.mul(k), lin: self.lin.iter().map(|(x, c)| (x.clone(), c.mul(k))).collect() }
    }

    /// Product, defined when at least one factor is constant.
    pub fn mul(&self, o: &Self) -> Option<Self> {
        if self.is_constant() {
            Some(o.scale(&self.constant))
        } else if o.is_constant() {
            Some(self.scale(&o.constant))
        } else {
            None
        }
    }

    /// Substitute values for some unknowns.
    pub fn substitute(&self, values: &BTreeMap<Unknown, QOmega>) -> Self {
        let mut r = LinExpr::constant(self.constant.clone());
        for (x, c) in &self.lin {
            match values.get(x) {
                Some(v) => r.constant = r.constant.add(&c.mul(v)),
                None => r.add_lin(x, c),
            }
        }
        r
    }

    /// Substitute affine forms for some unknowns.
    pub fn substitute_lin(&self, values: &BTreeMap<Unknown, LinExpr>) -> Self {
        let mut r = LinExpr::constant(self.constant.clone());
        for (x, c) in &self.lin {
            match values.get(x) {
                Some(v) => r = r.add(&v.scale(c)),
                None => r.add_lin(x, c),
            }
        }
        r
    }

    /// Value at a full assignment; None if an unknown is missing.
    pub fn eval(&self, values: &BTreeMap<Unknown, QOmega>) -> Option<QOmega> {
        let r = self.substitute(values);
        if r.is_constant() {
            Some(r.constant)
        } else {
            None
        }
    }

    pub fn linear_part(&self) -> Self {
        LinExpr { constant: QOmega::int(0), lin: self.lin.clone() }
    }

    /// Some(c) with linear_part(self) = c·linear_part(o), c ≠ 0.
    pub fn linear_ratio(&self, o: &Self) -> Option<QOmega> {
        if self.lin.is_empty() || self.lin.len() != o.lin.len() {
            return None;
        }
        let (x0, c0) = o.lin.iter().next()?;
        let r = self.lin.get(x0)?.div(c0);
        if self.linear_part() == o.linear_part().scale(&r) {
            Some(r)
        } else {
            None
        }
    }
}

impl fmt::Debug for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (x, c) in &self.lin {
            write!(f, " + ({c})·{x}")?;
        }
        Ok(())
    }
}

impl fmt::Display for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_ops() {
        let a = LinExpr::var("a");
        let b = LinExpr::var("b");
        let e = a.add(&b.scale(&QOmega::int(2))).add(&LinExpr::constant(QOmega::int(1)));
        assert_eq!(e.sub(&e), LinExpr::default());
        assert!(a.mul(&b).is_none());
        let two = LinExpr::constant(QOmega::int(2));
        assert_eq!(a.mul(&two).unwrap(), a.scale(&QOmega::int(2)));
        let mut vals = BTreeMap::new();
        vals.insert(Unknown::new("a"), QOmega::int(3));
        vals.insert(Unknown::new("b"), QOmega::omega());
        assert_eq!(e.eval(&vals).unwrap(), QOmega::ints(4, 2));
    }

    #[test]
    fn ratio() {
        let a = LinExpr::var("a");
        let b = LinExpr::var("b");
        let e = a.add(&b.scale(&QOmega::omega()));
        let w = QOmega::omega();
        assert_eq!(e.scale(&w).add(&LinExpr::constant(QOmega::int(5))).linear_ratio(&e), Some(w));
        assert_eq!(a.linear_ratio(&e), None);
    }
}
