use super::ring::{parse_rational, rational_to_string, Field, Rational, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// `re + wc·ω` with ω² + ω + 1 = 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QOmega {
    pub re: Rational,
    pub wc: Rational,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum QOmegaError {
    #[error("division by zero in Q(w)")]
    DivisionByZero,
    #[error("cannot parse Q(w) element from {0:?}")]
    Parse(String),
}

impl QOmega {
    pub fn new(re: Rational, wc: Rational) -> Self {
        QOmega { re, wc }
    }

    pub fn from_rational(r: Rational) -> Self {
        QOmega { re: r, wc: Zero::zero() }
    }

    pub fn int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// (n/d) as an element of Q ⊂ Q(ω).
    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(n.into(), d.into()))
    }

    /// a + b·ω with small integer parts.
    pub fn ints(a: i64, b: i64) -> Self {
        QOmega::new(Rational::from_integer(a.into()), Rational::from_integer(b.into()))
    }

    pub fn omega() -> Self {
        Self::ints(0, 1)
    }

    /// ω̄ = ω² = −1 − ω.
    pub fn omega_bar() -> Self {
        Self::ints(-1, -1)
    }

    pub fn is_rational(&self) -> bool {
        self.wc.is_zero()
    }

    pub fn conj(&self) -> Self {
        QOmega::new(&self.re - &self.wc, -&self.wc)
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re - &self.re * &self.wc + &self.wc * &self.wc
    }

    pub fn checked_inv(&self) -> Result<Self, QOmegaError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(QOmegaError::DivisionByZero);
        }
        let c = self.conj();
        Ok(QOmega::new(c.re / &n, c.wc / n))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, QOmegaError> {
        Ok(self * &other.checked_inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QOmega::new(&self.re * r, &self.wc * r)
    }

    /// Least common denominator of both parts.
    pub fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.wc.denom())
    }

    /// Coarse upper bound on log2 of the complex absolute value.
    pub fn log2_abs_upper(&self) -> i64 {
        let a = super::ring::rational_log2_upper(&self.re);
        let b = super::ring::rational_log2_upper(&self.wc);
        a.max(b) + 1
    }

    /// Floating approximation of the complex embedding with ω = e^{2πi/3}.
    pub fn to_c64(&self) -> (f64, f64) {
        let a = rational_to_f64(&self.re);
        let b = rational_to_f64(&self.wc);
        (a - 0.5 * b, b * 3f64.sqrt() / 2.0)
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    match r.to_f64() {
        Some(v) if v.is_finite() => v,
        _ => {
            // Huge numerators or denominators: shift into range first.
            let nb = r.numer().bits() as i64;
            let db = r.denom().bits() as i64;
            let shift = nb - db;
            let n = if shift > 0 { r.numer() >> (shift as usize) } else { r.numer() << ((-shift) as usize) };
            let q = Rational::new(n, r.denom().clone()).to_f64().unwrap_or(0.0);
            q * 2f64.powi(shift.clamp(-2000, 2000) as i32)
        }
    }
}

impl Ring for QOmega {
    fn zero() -> Self {
        QOmega::new(Zero::zero(), Zero::zero())
    }
    fn one() -> Self {
        QOmega::new(One::one(), Zero::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.wc.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        QOmega::int(n)
    }
    fn is_one(&self) -> bool {
        self.wc.is_zero() && self.re.is_one()
    }
}

impl Default for QOmega {
    fn default() -> Self {
        QOmega::int(0)
    }
}

impl Field for QOmega {
    fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero in Q(w)")
    }
    fn size_hint(&self) -> u64 {
        self.re.numer().bits() + self.re.denom().bits() + self.wc.numer().bits() + self.wc.denom().bits()
    }
}

impl<'a> Add<&'a QOmega> for &'a QOmega {
    type Output = QOmega;
    fn add(self, o: &QOmega) -> QOmega {
        QOmega::new(&self.re + &o.re, &self.wc + &o.wc)
    }
}

impl<'a> Sub<&'a QOmega> for &'a QOmega {
    type Output = QOmega;
    fn sub(self, o: &QOmega) -> QOmega {
        QOmega::new(&self.re - &o.re, &self.wc - &o.wc)
    }
}

impl<'a> Mul<&'a QOmega> for &'a QOmega {
    type Output = QOmega;
    fn mul(self, o: &QOmega) -> QOmega {
        // (a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω
        if self.wc.is_zero() {
            return QOmega::new(&self.re * &o.re, &self.re * &o.wc);
        }
        if o.wc.is_zero() {
            return QOmega::new(&self.re * &o.re, &self.wc * &o.re);
        }
        let ac = &self.re * &o.re;
        let bd = &self.wc * &o.wc;
        let ad = &self.re * &o.wc;
        let bc = &self.wc * &o.re;
        QOmega::new(&ac - &bd, ad + bc - bd)
    }
}

impl<'a> Div<&'a QOmega> for &'a QOmega {
    type Output = QOmega;
    fn div(self, o: &QOmega) -> QOmega {
        self.checked_div(o).expect("division by zero in Q(w)")
    }
}

impl Neg for &QOmega {
    type Output = QOmega;
    fn neg(self) -> QOmega {
        QOmega::new(-&self.re, -&self.wc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QOmega> for QOmega {
            type Output = QOmega;
            fn $m(self, o: QOmega) -> QOmega {
                <&QOmega as $tr<&QOmega>>::$m(&self, &o)
            }
        }
        impl<'a> $tr<&'a QOmega> for QOmega {
            type Output = QOmega;
            fn $m(self, o: &QOmega) -> QOmega {
                <&QOmega as $tr<&QOmega>>::$m(&self, o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QOmega {
    type Output = QOmega;
    fn neg(self) -> QOmega {
        -&self
    }
}

impl From<Rational> for QOmega {
    fn from(r: Rational) -> Self {
        QOmega::from_rational(r)
    }
}

impl From<i64> for QOmega {
    fn from(n: i64) -> Self {
        QOmega::int(n)
    }
}

impl fmt::Display for QOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.wc.is_zero() {
            return write!(f, "{}", rational_to_string(&self.re));
        }
        let w = if self.wc.is_one() {
            "w".to_string()
        } else if (-&self.wc).is_one() {
            "-w".to_string()
        } else {
            format!("{}*w", rational_to_string(&self.wc))
        };
        if self.re.is_zero() {
            return write!(f, "{w}");
        }
        let re = rational_to_string(&self.re);
        if self.wc.is_negative() {
            write!(f, "{re}{w}")
        } else {
            write!(f, "{re}+{w}")
        }
    }
}

impl fmt::Debug for QOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for QOmega {
    type Err = QOmegaError;

    /// Accepts sums of terms `r`, `r*w`, `w`, `w*r` with optional signs, e.g. "1-2*w".
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || QOmegaError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (i, c) in compact.chars().enumerate() {
            if (c == '+' || c == '-') && i > 0 {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(c);
        }
        terms.push(cur);
        let mut acc = QOmega::zero();
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(&t)),
            };
            if body.is_empty() {
                return Err(err());
            }
            let mut v = if body == "w" {
                QOmega::omega()
            } else if let Some(r) = body.strip_suffix("*w") {
                QOmega::new(Zero::zero(), parse_rational(r).ok_or_else(err)?)
            } else if let Some(r) = body.strip_prefix("w*") {
                QOmega::new(Zero::zero(), parse_rational(r).ok_or_else(err)?)
            } else {
                QOmega::from_rational(parse_rational(body).ok_or_else(err)?)
            };
            if neg {
                v = -v;
            }
            acc = acc + v;
        }
        Ok(acc)
    }
}

impl Serialize for QOmega {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QOmega {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
