use super::qomega::QOmega;
use super::ring::Rational;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Binary floating value `m · 2^e` with an arbitrary-precision mantissa.
#[derive(Clone, PartialEq, Eq)]
pub struct Float {
    m: BigInt,
    e: i64,
}

/// Nonnegative magnitude `m · 2^e` (m in [0.5, 1) or zero) used for radii and bounds.
/// Every operation names its rounding direction.
#[derive(Clone, Copy, PartialEq)]
pub struct Mag {
    m: f64,
    e: i64,
}

const UP: f64 = 1.0 + 4.0 * f64::EPSILON;
const DOWN: f64 = 1.0 - 4.0 * f64::EPSILON;

impl Mag {
    pub const ZERO: Mag = Mag { m: 0.0, e: 0 };

    fn norm(m: f64, e: i64) -> Mag {
        if m == 0.0 || !m.is_finite() {
            assert!(m.is_finite(), "non-finite magnitude");
            return Mag::ZERO;
        }
        let (fm, fe) = frexp(m.abs());
        Mag { m: fm, e: e + fe as i64 }
    }

    pub fn from_f64_up(x: f64) -> Mag {
        Mag::norm(x.abs() * UP, 0)
    }

    pub fn pow2(k: i64) -> Mag {
        Mag { m: 0.5, e: k + 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.m == 0.0
    }

    pub fn mul_up(self, o: Mag) -> Mag {
        Mag::norm(self.m * o.m * UP, self.e + o.e)
    }

    pub fn mul_down(self, o: Mag) -> Mag {
        Mag::norm(self.m * o.m * DOWN, self.e + o.e)
    }

    fn add_dir(self, o: Mag, f: f64) -> Mag {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (hi, lo) = if self.e >= o.e { (self, o) } else { (o, self) };
        let d = hi.e - lo.e;
        let lo_m = if d > 1100 { 0.0 } else { lo.m * 2f64.powi(-(d as i32)) };
        let mut s = (hi.m + lo_m) * f;
        if f > 1.0 && lo_m == 0.0 && !lo.is_zero() {
            // the smaller term vanished in the shift; keep a nonzero upper bound
            s = hi.m * UP * UP;
        }
        Mag::norm(s, hi.e)
    }

    pub fn add_up(self, o: Mag) -> Mag {
        self.add_dir(o, UP)
    }

    pub fn add_down(self, o: Mag) -> Mag {
        self.add_dir(o, DOWN)
    }

    /// max(self − o, 0), rounded down.
    pub fn sub_down(self, o: Mag) -> Mag {
        if o.is_zero() {
            return self;
        }
        if self.cmp_mag(&o) != Ordering::Greater {
            return Mag::ZERO;
        }
        let d = self.e - o.e;
        let o_m = if d > 1100 { 0.0 } else { o.m * 2f64.powi(-(d as i32)) };
        let mut s = (self.m - o_m) * DOWN;
        if o_m == 0.0 {
            s = self.m * DOWN * DOWN;
        }
        if s <= 0.0 {
            return Mag::ZERO;
        }
        Mag::norm(s, self.e)
    }

    pub fn div_up(self, o: Mag) -> Mag {
        assert!(!o.is_zero(), "division by zero magnitude");
        Mag::norm(self.m / o.m * UP, self.e - o.e)
    }

    pub fn div_down(self, o: Mag) -> Mag {
        assert!(!o.is_zero(), "division by zero magnitude");
        Mag::norm(self.m / o.m * DOWN, self.e - o.e)
    }

    pub fn sqrt_up(self) -> Mag {
        if self.is_zero() {
            return self;
        }
        let (m, e) = if self.e % 2 == 0 { (self.m, self.e) } else { (self.m * 2.0, self.e - 1) };
        Mag::norm(m.sqrt() * UP, e / 2)
    }

    pub fn sqrt_down(self) -> Mag {
        if self.is_zero() {
            return self;
        }
        let (m, e) = if self.e % 2 == 0 { (self.m, self.e) } else { (self.m * 2.0, self.e - 1) };
        Mag::norm(m.sqrt() * DOWN, e / 2)
    }

    pub fn scale_up(self, k: f64) -> Mag {
        Mag::norm(self.m * k.abs() * UP, self.e)
    }

    pub fn cmp_mag(&self, o: &Mag) -> Ordering {
        match (self.is_zero(), o.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.e.cmp(&o.e).then(self.m.partial_cmp(&o.m).unwrap()),
        }
    }

    pub fn max(self, o: Mag) -> Mag {
        if self.cmp_mag(&o) == Ordering::Less {
            o
        } else {
            self
        }
    }

    pub fn lt(&self, o: &Mag) -> bool {
        self.cmp_mag(o) == Ordering::Less
    }

    /// log2 of the value; −inf for zero.
    pub fn log2(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.m.log2() + self.e as f64
    }

    /// Saturating conversion.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        if self.e > 1023 {
            return f64::INFINITY;
        }
        if self.e < -1070 {
            return 0.0;
        }
        self.m * 2f64.powi(self.e as i32)
    }
}

impl fmt::Debug for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^{:.2}", self.log2())
    }
}

fn ldexp(mut v: f64, mut e: i64) -> f64 {
    while e > 1000 && v.is_finite() && v != 0.0 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 && v != 0.0 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

fn frexp(x: f64) -> (f64, i32) {
    if x == 0.0 {
        return (0.0, 0);
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    if exp == 0 {
        let (m, e) = frexp(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, exp - 1022)
}

impl Float {
    pub fn zero() -> Float {
        Float { m: BigInt::zero(), e: 0 }
    }

    pub fn from_bigint(m: BigInt) -> Float {
        Float { m, e: 0 }.trimmed()
    }

    pub fn from_i64(v: i64) -> Float {
        Float::from_bigint(BigInt::from(v))
    }

    pub fn from_parts(m: BigInt, e: i64) -> Float {
        Float { m, e }.trimmed()
    }

    /// Exact conversion of a finite f64.
    pub fn from_f64(x: f64) -> Float {
        assert!(x.is_finite());
        if x == 0.0 {
            return Float::zero();
        }
        let (m, e) = frexp(x.abs());
        let mi = (m * 2f64.powi(53)) as i64;
        let v = Float::from_parts(BigInt::from(mi), e as i64 - 53);
        if x < 0.0 {
            v.neg()
        } else {
            v
        }
    }

    fn trimmed(mut self) -> Float {
        if self.m.is_zero() {
            self.e = 0;
            return self;
        }
        let tz = self.m.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.m >>= tz as usize;
            self.e += tz as i64;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn mantissa_bits(&self) -> u64 {
        self.m.bits()
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    /// Nearest integer, ties rounded up.
    pub fn round_to_int(&self) -> BigInt {
        if self.e >= 0 {
            &self.m << self.e as usize
        } else {
            let k = (-self.e) as usize;
            (&self.m + (BigInt::from(1) << (k - 1))) >> k
        }
    }

    /// log2 of |self| rounded up (exponent of the top bit + 1).
    pub fn top(&self) -> i64 {
        self.m.bits() as i64 + self.e
    }

    pub fn neg(&self) -> Float {
        Float { m: -&self.m, e: self.e }
    }

    pub fn abs(&self) -> Float {
        Float { m: self.m.abs(), e: self.e }
    }

    pub fn signum(&self) -> i32 {
        match self.m.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn add(&self, o: &Float) -> Float {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.e.min(o.e);
        let a = &self.m << ((self.e - e) as usize);
        let b = &o.m << ((o.e - e) as usize);
        Float { m: a + b, e }.trimmed()
    }

    pub fn sub(&self, o: &Float) -> Float {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Float) -> Float {
        Float { m: &self.m * &o.m, e: self.e + o.e }
    }

    pub fn mul_2k(&self, k: i64) -> Float {
        Float { m: self.m.clone(), e: self.e + k }
    }

    /// Round to nearest with at most `prec` mantissa bits; returns the rounded value and
    /// a bound on the absolute error.
    pub fn round(&self, prec: u32) -> (Float, Mag) {
        let bits = self.m.bits();
        if bits <= prec as u64 {
            return (self.clone(), Mag::ZERO);
        }
        let k = bits - prec as u64;
        let neg = self.m.is_negative();
        let a = self.m.abs();
        let half = BigInt::from(1) << ((k - 1) as usize);
        let q = (&a + half) >> (k as usize);
        let m = if neg { -q } else { q };
        let err = Mag::pow2(self.e + k as i64 - 1);
        (Float { m, e: self.e + k as i64 }.trimmed(), err)
    }

    pub fn rounded(&self, prec: u32) -> Float {
        self.round(prec).0
    }

    /// Quotient to `prec` bits; error bound returned.
    pub fn div(&self, o: &Float, prec: u32) -> (Float, Mag) {
        assert!(!o.is_zero(), "float division by zero");
        if self.is_zero() {
            return (Float::zero(), Mag::ZERO);
        }
        // shift so that the integer quotient carries prec + 2 bits
        let shift = prec as i64 + 2 + o.m.bits() as i64 - self.m.bits() as i64;
        let shift = shift.max(0);
        let num = &self.m << (shift as usize);
        let q = &num / &o.m;
        let e = self.e - o.e - shift;
        let trunc_err = Mag::pow2(e);
        let (r, rerr) = Float { m: q, e }.trimmed().round(prec);
        (r, trunc_err.add_up(rerr))
    }

    /// Upper bound on |self|.
    pub fn mag_up(&self) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        let b = self.m.bits();
        let top = if b > 60 { (self.m.abs() >> ((b - 60) as usize)).to_u64().unwrap() + 1 } else { self.m.abs().to_u64().unwrap() };
        let sh = b.saturating_sub(60) as i64;
        Mag::norm(top as f64 * UP, self.e + sh)
    }

    /// Lower bound on |self|.
    pub fn mag_down(&self) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        let b = self.m.bits();
        let top = if b > 60 { (self.m.abs() >> ((b - 60) as usize)).to_u64().unwrap() } else { self.m.abs().to_u64().unwrap() };
        let sh = b.saturating_sub(60) as i64;
        Mag::norm(top as f64 * DOWN, self.e + sh)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = self.m.bits() as i64;
        let (m, e) = if b > 60 { (&self.m >> ((b - 60) as usize), self.e + b - 60) } else { (self.m.clone(), self.e) };
        ldexp(m.to_f64().unwrap(), e)
    }

    /// Nearest-ish conversion of a rational, with error bound.
    pub fn from_rational(r: &Rational, prec: u32) -> (Float, Mag) {
        if r.numer().is_zero() {
            return (Float::zero(), Mag::ZERO);
        }
        let nb = r.numer().bits() as i64;
        let db = r.denom().bits() as i64;
        let k = prec as i64 + 2 - (nb - db);
        let num = if k >= 0 { r.numer() << (k as usize) } else { r.numer() >> ((-k) as usize) };
        if k >= 0 {
            let (q, rem) = num.div_rem(r.denom());
            let (f, e) = Float::from_parts(q, -k).round(prec);
            (f, if rem.is_zero() { e } else { e.add_up(Mag::pow2(-k)) })
        } else {
            // numerator shifted right: error of the shift scaled by 1/den plus truncation
            let q = &num / r.denom();
            let (f, e) = Float::from_parts(q, -k).round(prec);
            let shift_err = Mag::pow2(-k).div_up(Float::from_bigint(r.denom().clone()).mag_down());
            (f, e.add_up(Mag::pow2(-k)).add_up(shift_err))
        }
    }

    pub fn cmp_value(&self, o: &Float) -> Ordering {
        self.sub(o).signum().cmp(&0)
    }
}

impl fmt::Debug for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

/// Complex floating value without error tracking.
#[derive(Clone, PartialEq, Eq)]
pub struct CFloat {
    pub re: Float,
    pub im: Float,
}

impl fmt::Debug for CFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}{:+e}i)", self.re, self.im.to_f64())
    }
}

impl CFloat {
    pub fn zero() -> CFloat {
        CFloat { re: Float::zero(), im: Float::zero() }
    }

    pub fn new(re: Float, im: Float) -> CFloat {
        CFloat { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> CFloat {
        CFloat { re: Float::from_f64(re), im: Float::from_f64(im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &CFloat) -> CFloat {
        CFloat { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &CFloat) -> CFloat {
        CFloat { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> CFloat {
        CFloat { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &CFloat) -> CFloat {
        CFloat { re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)), im: self.re.mul(&o.im).add(&self.im.mul(&o.re)) }
    }

    pub fn mul_2k(&self, k: i64) -> CFloat {
        CFloat { re: self.re.mul_2k(k), im: self.im.mul_2k(k) }
    }

    /// Round both parts; the error bound is for the complex modulus.
    pub fn round(&self, prec: u32) -> (CFloat, Mag) {
        let (re, a) = self.re.round(prec);
        let (im, b) = self.im.round(prec);
        (CFloat { re, im }, a.add_up(b))
    }

    pub fn rounded(&self, prec: u32) -> CFloat {
        CFloat { re: self.re.rounded(prec), im: self.im.rounded(prec) }
    }

    pub fn norm2(&self) -> Float {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs_up(&self) -> Mag {
        self.norm2().mag_up().sqrt_up()
    }

    pub fn abs_down(&self) -> Mag {
        self.norm2().mag_down().sqrt_down()
    }

    /// Approximate quotient at `prec` bits with error bound.
    pub fn div(&self, o: &CFloat, prec: u32) -> (CFloat, Mag) {
        let n2 = o.norm2();
        let num_re = self.re.mul(&o.re).add(&self.im.mul(&o.im));
        let num_im = self.im.mul(&o.re).sub(&self.re.mul(&o.im));
        let (re, e1) = num_re.div(&n2, prec);
        let (im, e2) = num_im.div(&n2, prec);
        (CFloat { re, im }, e1.add_up(e2))
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// Disk `{ z : |z − center| ≤ radius }`.
#[derive(Clone)]
pub struct ComplexBall {
    pub center: CFloat,
    pub radius: Mag,
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}±{:?}", self.center, self.radius)
    }
}

/// √3/2 to `prec` bits with its error.
fn half_sqrt3(prec: u32) -> (Float, Mag) {
    let p = prec as usize + 4;
    let s = (BigInt::from(3) << (2 * p)).sqrt();
    (Float::from_parts(s, -(p as i64) - 1), Mag::pow2(-(p as i64) - 1))
}

impl ComplexBall {
    pub fn exact(center: CFloat) -> ComplexBall {
        ComplexBall { center, radius: Mag::ZERO }
    }

    pub fn zero() -> ComplexBall {
        ComplexBall::exact(CFloat::zero())
    }

    pub fn new(center: CFloat, radius: Mag) -> ComplexBall {
        ComplexBall { center, radius }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> ComplexBall {
        let (f, e) = Float::from_rational(r, prec);
        ComplexBall { center: CFloat::new(f, Float::zero()), radius: e }
    }

    /// Enclosure of the complex embedding of `a` with ω = −1/2 + i√3/2.
    pub fn from_qomega(a: &QOmega, prec: u32) -> ComplexBall {
        let re_exact = &a.re - &a.wc / Rational::from_integer(2.into());
        let (re, e1) = Float::from_rational(&re_exact, prec);
        if a.wc.numer().is_zero() {
            return ComplexBall { center: CFloat::new(re, Float::zero()), radius: e1 };
        }
        let (b, e2) = Float::from_rational(&a.wc, prec + 8);
        let (h, e3) = half_sqrt3(prec + 8);
        let prod = b.mul(&h);
        let (im, e4) = prod.round(prec);
        // |b·h − wc·√3/2| ≤ |b|·e3 + e2·√3/2
        let err = b.mag_up().mul_up(e3).add_up(e2).add_up(e4).add_up(e1);
        ComplexBall { center: CFloat::new(re, im), radius: err }
    }

    pub fn contains_zero(&self) -> bool {
        !self.radius.lt(&self.center.abs_down()) || self.center.is_zero()
    }

    /// True when every point of the ball is nonzero.
    pub fn certainly_nonzero(&self) -> bool {
        self.radius.lt(&self.center.abs_down())
    }

    pub fn abs_up(&self) -> Mag {
        self.center.abs_up().add_up(self.radius)
    }

    pub fn abs_down(&self) -> Mag {
        self.center.abs_down().sub_down(self.radius)
    }

    pub fn contains_point(&self, z: &CFloat) -> bool {
        let d = self.center.sub(z).abs_down();
        !self.radius.lt(&d)
    }

    /// Certainly disjoint disks.
    pub fn disjoint(&self, o: &ComplexBall) -> bool {
        let d = self.center.sub(&o.center).abs_down();
        self.radius.add_up(o.radius).lt(&d)
    }

    pub fn overlaps(&self, o: &ComplexBall) -> bool {
        !self.disjoint(o)
    }

    pub fn add(&self, o: &ComplexBall, prec: u32) -> ComplexBall {
        let (c, e) = self.center.add(&o.center).round(prec);
        ComplexBall { center: c, radius: self.radius.add_up(o.radius).add_up(e) }
    }

    pub fn sub(&self, o: &ComplexBall, prec: u32) -> ComplexBall {
        let (c, e) = self.center.sub(&o.center).round(prec);
        ComplexBall { center: c, radius: self.radius.add_up(o.radius).add_up(e) }
    }

    pub fn neg(&self) -> ComplexBall {
        ComplexBall { center: self.center.neg(), radius: self.radius }
    }

    pub fn mul(&self, o: &ComplexBall, prec: u32) -> ComplexBall {
        let (c, e) = self.center.mul(&o.center).round(prec);
        let r = self.center.abs_up().mul_up(o.radius).add_up(o.center.abs_up().mul_up(self.radius)).add_up(self.radius.mul_up(o.radius)).add_up(e);
        ComplexBall { center: c, radius: r }
    }

    pub fn mul_2k(&self, k: i64) -> ComplexBall {
        ComplexBall { center: self.center.mul_2k(k), radius: self.radius.mul_up(Mag::pow2(k)) }
    }

    /// None when the ball may contain zero.
    pub fn inv(&self, prec: u32) -> Option<ComplexBall> {
        let lo = self.center.abs_down();
        if !self.radius.lt(&lo) {
            return None;
        }
        let one = CFloat::new(Float::from_i64(1), Float::zero());
        let (c, e) = one.div(&self.center, prec);
        // |1/z − 1/c| ≤ r / (|c|(|c| − r))
        let gap = lo.sub_down(self.radius);
        let r = self.radius.div_up(lo.mul_down(gap)).add_up(e);
        Some(ComplexBall { center: c, radius: r })
    }

    pub fn div(&self, o: &ComplexBall, prec: u32) -> Option<ComplexBall> {
        Some(self.mul(&o.inv(prec)?, prec))
    }

    pub fn square(&self, prec: u32) -> ComplexBall {
        self.mul(self, prec)
    }

    pub fn to_c64(&self) -> (f64, f64) {
        self.center.to_c64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Ring;

    fn q(s: &str) -> QOmega {
        s.parse().unwrap()
    }

    #[test]
    fn embedding_contains_values() {
        let one = ComplexBall::from_qomega(&QOmega::int(1), 64);
        assert!(one.contains_point(&CFloat::from_f64(1.0, 0.0)));
        assert!(!one.radius.lt(&Mag::ZERO) && one.radius.cmp_mag(&Mag::pow2(-62)) != Ordering::Greater);
        let w = ComplexBall::from_qomega(&QOmega::omega(), 64);
        let w2 = ComplexBall::from_qomega(&QOmega::omega_bar(), 64);
        let s = w.add(&w2, 64).add(&one, 64);
        assert!(s.contains_zero());
        let b = ComplexBall::from_qomega(&q("1-2*w"), 64);
        let (re, im) = b.to_c64();
        assert!((re - 2.0).abs() < 1e-15 && (im + 3f64.sqrt()).abs() < 1e-15);
        // radius bound 2^{1−p}(|re|+|wc|+1)
        assert!(b.radius.lt(&Mag::pow2(-63).scale_up(4.0)));
    }

    #[test]
    fn omega_cubed_is_one() {
        let prec = 200;
        let w = ComplexBall::from_qomega(&QOmega::omega(), prec);
        let c = w.mul(&w, prec).mul(&w, prec);
        let one = ComplexBall::from_qomega(&QOmega::one(), prec);
        let d = c.sub(&one, prec);
        assert!(d.contains_zero());
        assert!(d.radius.log2() < -190.0);
    }

    #[test]
    fn rational_rounding() {
        let third = Rational::new(1.into(), 3.into());
        let (f, e) = Float::from_rational(&third, 100);
        let back = Float::from_i64(3).mul(&f).sub(&Float::from_i64(1));
        assert!(back.mag_up().lt(&e.scale_up(3.0).add_up(Mag::pow2(-90))));
        assert!(e.log2() < -99.0);
        let big = Rational::new(BigInt::from(1) << 5000usize, 7.into());
        let (f, _) = Float::from_rational(&big, 80);
        assert_eq!(f.top(), 4998);
    }

    #[test]
    fn inverse_ball() {
        let prec = 128;
        let z = ComplexBall::from_qomega(&q("2+3*w"), prec);
        let zi = z.inv(prec).unwrap();
        let p = z.mul(&zi, prec).sub(&ComplexBall::from_qomega(&QOmega::one(), prec), prec);
        assert!(p.contains_zero());
        assert!(ComplexBall::new(CFloat::zero(), Mag::pow2(-3)).inv(prec).is_none());
    }

    #[test]
    fn mag_ops() {
        let a = Mag::from_f64_up(3.0);
        let b = Mag::from_f64_up(4.0);
        assert!((a.mul_up(b).to_f64() - 12.0).abs() < 1e-12);
        assert!((a.add_up(b).to_f64() - 7.0).abs() < 1e-12);
        assert!(b.sub_down(a).to_f64() <= 1.0);
        assert!(a.sub_down(b).is_zero());
        let tiny = Mag::pow2(-4000);
        assert!(a.add_up(tiny).cmp_mag(&a) == Ordering::Greater);
        assert!((Mag::from_f64_up(16.0).sqrt_up().to_f64() - 4.0).abs() < 1e-12);
    }
}
