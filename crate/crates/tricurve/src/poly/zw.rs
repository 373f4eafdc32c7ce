//! Integral polynomials over Z[ω] and multimodular algorithms.
//!
//! Large resultants and gcds are computed from images modulo split primes
//! and recombined by CRT under explicit coefficient bounds. Gcds are further
//! certified by exact cofactor identities, so no result depends on a lucky
//! choice of primes.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::modp::{split_prime, Fp, SplitPrime};
use super::mpoly::MPoly;
use super::upoly::UPoly;
use crate::exactnum::{QOmega, Rational};

/// a + b·ω with integer parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZwInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl ZwInt {
    pub fn zero() -> Self {
        ZwInt { a: BigInt::zero(), b: BigInt::zero() }
    }

    pub fn from_int(a: BigInt) -> Self {
        ZwInt { a, b: BigInt::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        ZwInt { a: &self.a + &o.a, b: &self.b + &o.b }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ZwInt { a: &self.a - &o.a, b: &self.b - &o.b }
    }

    pub fn neg(&self) -> Self {
        ZwInt { a: -&self.a, b: -&self.b }
    }

    /// (a+bω)(c+dω) = (ac − bd) + (ad + bc − bd)ω
    pub fn mul(&self, o: &Self) -> Self {
        if self.b.is_zero() && o.b.is_zero() {
            return ZwInt::from_int(&self.a * &o.a);
        }
        let ac = &self.a * &o.a;
        let bd = &self.b * &o.b;
        let cross = (&self.a + &self.b) * (&o.a + &o.b) - &ac - &bd;
        ZwInt { a: ac - &bd, b: cross - bd }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        ZwInt { a: &self.a * k, b: &self.b * k }
    }

    /// Upper bound on log2 of |a| + |b| (≥ the complex absolute value).
    pub fn bits(&self) -> u64 {
        self.a.bits().max(self.b.bits()) + 1
    }

    pub fn to_qomega(&self) -> QOmega {
        QOmega::new(Rational::from_integer(self.a.clone()), Rational::from_integer(self.b.clone()))
    }

    /// Image modulo the ideal (p, ω − r).
    pub fn reduce(&self, fp: &Fp, r: u64) -> u64 {
        let a = fp.from_bigint(&self.a);
        if self.b.is_zero() {
            a
        } else {
            fp.add(a, fp.mul(fp.from_bigint(&self.b), r))
        }
    }
}

/// Dense polynomial over Z[ω], lowest degree first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZwPoly {
    pub c: Vec<ZwInt>,
}

impl ZwPoly {
    pub fn new(mut c: Vec<ZwInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZwPoly { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> ZwInt {
        self.c.last().cloned().unwrap_or_else(ZwInt::zero)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return ZwPoly { c: Vec::new() };
        }
        let mut c = vec![ZwInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] = c[i + j].add(&x.mul(y));
                }
            }
        }
        ZwPoly::new(c)
    }

    pub fn scale(&self, k: &ZwInt) -> Self {
        ZwPoly::new(self.c.iter().map(|x| x.mul(k)).collect())
    }

    pub fn derivative(&self) -> Self {
        ZwPoly::new(self.c.iter().enumerate().skip(1).map(|(i, x)| x.scale_int(&BigInt::from(i))).collect())
    }

    /// Image modulo (p, ω − r), trimmed.
    pub fn reduce(&self, fp: &Fp, r: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self.c.iter().map(|x| x.reduce(fp, r)).collect();
        Fp::trim(&mut v);
        v
    }

    /// log2 of the Euclidean norm, rounded up, with each coefficient bounded by |a| + |b|.
    pub fn log2_norm2(&self) -> u64 {
        let mut s = BigInt::zero();
        for x in &self.c {
            let m = x.a.abs() + x.b.abs();
            s += &m * &m;
        }
        s.bits() / 2 + 1
    }

    pub fn max_bits(&self) -> u64 {
        self.c.iter().map(|x| x.bits()).max().unwrap_or(0)
    }

    /// Divide every coefficient by a common positive integer content, keeping ω-parts aligned.
    pub fn primitive_int(&self) -> Self {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(&x.a).gcd(&x.b);
            if g.is_one() {
                return self.clone();
            }
        }
        if g.is_zero() {
            return self.clone();
        }
        ZwPoly::new(self.c.iter().map(|x| ZwInt { a: &x.a / &g, b: &x.b / &g }).collect())
    }

    pub fn to_qpoly(&self) -> UPoly<QOmega> {
        UPoly::new(self.c.iter().map(|x| x.to_qomega()).collect())
    }

    /// Clear denominators: returns (integral polynomial, positive multiplier L) with L·p integral.
    pub fn from_qpoly(p: &UPoly<QOmega>) -> (Self, BigInt) {
        let l = lcm_denominators(p.coeffs().iter());
        (ZwPoly::new(p.coeffs().iter().map(|x| to_zw(x, &l)).collect()), l)
    }
}

pub fn lcm_denominators<'a>(it: impl Iterator<Item = &'a QOmega>) -> BigInt {
    let mut l = BigInt::one();
    for x in it {
        l = l.lcm(x.re.denom()).lcm(x.wc.denom());
    }
    l
}

/// l·x as an element of Z[ω]; l must clear the denominators of x.
pub fn to_zw(x: &QOmega, l: &BigInt) -> ZwInt {
    let a = x.re.numer() * (l / x.re.denom());
    let b = x.wc.numer() * (l / x.wc.denom());
    ZwInt { a, b }
}

/// Incremental Chinese remaindering of vectors of Z[ω] integers, componentwise.
struct Crt {
    modulus: BigUint,
    vals: Vec<BigUint>,
}

fn rem_u64(x: &BigUint, p: u64) -> u64 {
    (x % p).iter_u64_digits().next().unwrap_or(0)
}

impl Crt {
    fn new(len: usize) -> Self {
        Crt { modulus: BigUint::one(), vals: vec![BigUint::zero(); 2 * len] }
    }

    fn bits(&self) -> u64 {
        self.modulus.bits()
    }

    /// `res` holds plain residues (a₀, b₀, a₁, b₁, …) modulo p.
    fn push(&mut self, p: u64, res: &[u64]) {
        assert_eq!(res.len(), self.vals.len());
        let inv = modinv(rem_u64(&self.modulus, p), p);
        for (x, &v) in self.vals.iter_mut().zip(res) {
            let xm = rem_u64(x, p);
            let diff = (v + p - xm) % p;
            let t = ((diff as u128 * inv as u128) % p as u128) as u64;
            if t != 0 {
                *x += &self.modulus * t;
            }
        }
        self.modulus *= p;
    }

    /// Symmetric lift.
    fn lift(&self) -> Vec<ZwInt> {
        let half = &self.modulus >> 1;
        let m = BigInt::from(self.modulus.clone());
        let sym = |x: &BigUint| {
            if *x > half {
                BigInt::from(x.clone()) - &m
            } else {
                BigInt::from(x.clone())
            }
        };
        self.vals.chunks(2).map(|c| ZwInt { a: sym(&c[0]), b: sym(&c[1]) }).collect()
    }
}

fn modinv(a: u64, p: u64) -> u64 {
    let (mut t, mut newt) = (0i128, 1i128);
    let (mut r, mut newr) = (p as i128, a as i128);
    while newr != 0 {
        let q = r / newr;
        (t, newt) = (newt, t - q * newt);
        (r, newr) = (newr, r - q * newr);
    }
    assert_eq!(r, 1, "modulus not invertible");
    if t < 0 {
        t += p as i128;
    }
    t as u64
}

/// Recover (a mod p, b mod p) from the images v1 = a + b r and v2 = a + b r̄ (Montgomery form).
fn split_images(sp: &SplitPrime, v1: &[u64], v2: &[u64], out: &mut Vec<u64>) {
    let fp = &sp.fp;
    let d = fp.inv(fp.sub(sp.r, sp.r_conj));
    for (&x, &y) in v1.iter().zip(v2) {
        let b = fp.mul(fp.sub(x, y), d);
        let a = fp.sub(x, fp.mul(b, sp.r));
        out.push(fp.from_mont(a));
        out.push(fp.from_mont(b));
    }
}

/// Bound in bits (|a|, |b| < 2^bits) turned into the modulus size needed for a symmetric lift.
fn needed_bits(bits: u64) -> u64 {
    bits + 3
}

/// Number of primes handled per parallel batch.
const BATCH: usize = 8;

/// Sparse multivariate integral polynomial: (coefficient, exponents over outer variables).
pub type ZwTerms = Vec<(ZwInt, Vec<u32>)>;

/// Resultant with respect to an inner variable of f = Σ f_i·t^i and g = Σ g_i·t^i
/// (formal degrees len−1), with coefficients in Z[ω][outer variables].
/// Returns the dense coefficient tensor over the grid (D_1+1)×…×(D_k+1), row-major.
pub fn zw_resultant(f: &[ZwTerms], g: &[ZwTerms], nouter: usize, dbound: &[usize]) -> Vec<ZwInt> {
    assert!(!f.is_empty() && !g.is_empty());
    assert_eq!(dbound.len(), nouter);
    let m = f.len() - 1;
    let n = g.len() - 1;
    // Hadamard bound on the torus |outer| = 1
    let row_bits = |h: &[ZwTerms]| -> u64 {
        let mut s = BigInt::zero();
        for terms in h {
            let mut l1 = BigInt::zero();
            for (c, _) in terms {
                l1 += c.a.abs() + c.b.abs();
            }
            s += &l1 * &l1;
        }
        s.bits() / 2 + 1
    };
    let bound = n as u64 * row_bits(f) + m as u64 * row_bits(g) + 1;
    let need = needed_bits(bound);
    let shape: Vec<usize> = dbound.iter().map(|d| d + 1).collect();
    let total: usize = shape.iter().product();
    let maxdeg = dbound.iter().copied().max().unwrap_or(0);

    let image = |sp: &SplitPrime| -> Vec<u64> {
        let fp = &sp.fp;
        let inv_small = fp.small_inverses(maxdeg + 1);
        let per_ideal = |r: u64| -> Vec<u64> {
            let red = |h: &[ZwTerms]| -> Vec<Vec<(u64, Vec<u32>)>> {
                h.iter().map(|ts| ts.iter().map(|(c, e)| (c.reduce(fp, r), e.clone())).filter(|(c, _)| *c != 0).collect()).collect()
            };
            let fr = red(f);
            let gr = red(g);
            // power tables per axis: pw[axis][point][exp]
            let maxexp = |axis: usize| -> usize { f.iter().chain(g.iter()).flat_map(|ts| ts.iter().map(move |(_, e)| e[axis] as usize)).max().unwrap_or(0) };
            let pw: Vec<Vec<Vec<u64>>> = (0..nouter)
                .map(|ax| {
                    let me = maxexp(ax);
                    (0..shape[ax])
                        .map(|pt| {
                            let x = fp.from_i64(pt as i64);
                            let mut v = vec![fp.one()];
                            for k in 1..=me {
                                let nx = fp.mul(v[k - 1], x);
                                v.push(nx);
                            }
                            v
                        })
                        .collect()
                })
                .collect();
            let mut vals = vec![0u64; total];
            let mut idx = vec![0usize; nouter];
            for slot in vals.iter_mut() {
                let ev = |h: &Vec<Vec<(u64, Vec<u32>)>>| -> Vec<u64> {
                    h.iter()
                        .map(|ts| {
                            let mut acc = 0u64;
                            for (c, e) in ts {
                                let mut t = *c;
                                for ax in 0..nouter {
                                    if e[ax] > 0 {
                                        t = fp.mul(t, pw[ax][idx[ax]][e[ax] as usize]);
                                    }
                                }
                                acc = fp.add(acc, t);
                            }
                            acc
                        })
                        .collect()
                };
                *slot = fp.resultant_formal(&ev(&fr), &ev(&gr));
                // advance row-major index
                for ax in (0..nouter).rev() {
                    idx[ax] += 1;
                    if idx[ax] < shape[ax] {
                        break;
                    }
                    idx[ax] = 0;
                }
            }
            // interpolate axis by axis
            let mut stride = 1usize;
            for ax in (0..nouter).rev() {
                let len = shape[ax];
                let outer_count = total / (len * stride);
                for o in 0..outer_count {
                    for s in 0..stride {
                        let base = o * len * stride + s;
                        let ys: Vec<u64> = (0..len).map(|i| vals[base + i * stride]).collect();
                        let cs = fp.interpolate_range(&ys, &inv_small);
                        for i in 0..len {
                            vals[base + i * stride] = cs[i];
                        }
                    }
                }
                stride *= len;
            }
            vals
        };
        let v1 = per_ideal(sp.r);
        let v2 = per_ideal(sp.r_conj);
        let mut out = Vec::with_capacity(2 * total);
        split_images(sp, &v1, &v2, &mut out);
        out
    };

    let mut crt = Crt::new(total);
    let mut next = 0usize;
    while crt.bits() <= need {
        let primes: Vec<SplitPrime> = (next..next + BATCH).map(split_prime).collect();
        next += BATCH;
        let images: Vec<Vec<u64>> = primes.par_iter().map(image).collect();
        for (sp, im) in primes.iter().zip(images) {
            crt.push(sp.fp.p, &im);
            if crt.bits() > need {
                break;
            }
        }
    }
    crt.lift()
}

/// Result of a certified gcd over Z[ω]: with ĝ = lc(A)·gcd_monic(A, B),
/// ĝ·qa = lc(A)·A and ĝ·qb = lc(A)·B hold exactly.
#[derive(Clone, Debug)]
pub struct ZwGcd {
    pub g: ZwPoly,
    pub qa: ZwPoly,
    pub qb: ZwPoly,
}

fn mignotte_bits(p: &ZwPoly) -> u64 {
    p.degree() as u64 + p.log2_norm2() + 1
}

/// Certified gcd of two nonzero polynomials; see [`ZwGcd`].
pub fn zw_gcd(a: &ZwPoly, b: &ZwPoly) -> ZwGcd {
    assert!(!a.is_zero() && !b.is_zero(), "gcd of zero polynomial");
    let lca = a.lc();
    let need = needed_bits(mignotte_bits(a).max(mignotte_bits(b)) + lca.bits());
    let image = |sp: &SplitPrime| -> Option<(usize, Vec<u64>)> {
        let fp = &sp.fp;
        let per = |r: u64| -> Option<(Vec<u64>, Vec<u64>, Vec<u64>)> {
            let ap = a.reduce(fp, r);
            if ap.len() != a.c.len() {
                return None;
            }
            let bp = b.reduce(fp, r);
            if bp.is_empty() {
                return None;
            }
            let gm = fp.gcd(&ap, &bp);
            let l = *ap.last().unwrap();
            let (qa, ra) = fp.divrem(&ap, &gm);
            let (qb, rb) = fp.divrem(&bp, &gm);
            debug_assert!(ra.is_empty() && rb.is_empty());
            Some((fp.poly_scale(&gm, l), qa, qb))
        };
        let (g1, qa1, qb1) = per(sp.r)?;
        let (g2, qa2, qb2) = per(sp.r_conj)?;
        if g1.len() != g2.len() {
            return None;
        }
        let dg = g1.len() - 1;
        let la = a.c.len() - dg;
        let lb = b.c.len() - dg;
        let pad = |v: Vec<u64>, n: usize| -> Vec<u64> {
            let mut v = v;
            v.resize(n, 0);
            v
        };
        let v1: Vec<u64> = [pad(g1, dg + 1), pad(qa1, la), pad(qb1, lb)].concat();
        let v2: Vec<u64> = [pad(g2, dg + 1), pad(qa2, la), pad(qb2, lb)].concat();
        let mut out = Vec::with_capacity(2 * v1.len());
        split_images(sp, &v1, &v2, &mut out);
        Some((dg, out))
    };

    let mut deg = usize::MAX;
    let mut crt: Option<Crt> = None;
    let mut next = 0usize;
    let mut attempts_since_reset = 0usize;
    loop {
        let primes: Vec<SplitPrime> = (next..next + BATCH).map(split_prime).collect();
        next += BATCH;
        assert!(next < 100_000, "multimodular gcd failed to stabilize");
        let images: Vec<Option<(usize, Vec<u64>)>> = primes.par_iter().map(image).collect();
        for (sp, im) in primes.iter().zip(images) {
            let Some((d, res)) = im else { continue };
            if d > deg {
                continue;
            }
            if d < deg || crt.is_none() {
                deg = d;
                crt = Some(Crt::new(res.len() / 2));
                attempts_since_reset = 0;
            }
            let acc = crt.as_mut().unwrap();
            acc.push(sp.fp.p, &res);
            attempts_since_reset += 1;
            if acc.bits() > need && (attempts_since_reset.is_multiple_of(4) || acc.bits() > need + 62) {
                let vals = acc.lift();
                let la = a.c.len() - deg;
                let g = ZwPoly::new(vals[..deg + 1].to_vec());
                let qa = ZwPoly::new(vals[deg + 1..deg + 1 + la].to_vec());
                let qb = ZwPoly::new(vals[deg + 1 + la..].to_vec());
                if g.mul(&qa) == a.scale(&lca) && g.mul(&qb) == b.scale(&lca) {
                    return ZwGcd { g, qa, qb };
                }
            }
        }
    }
}

/// Certified coprimality test; a single prime with a trivial gcd suffices.
pub fn zw_coprime(a: &ZwPoly, b: &ZwPoly) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.degree() == 0 || b.is_zero() && a.degree() == 0;
    }
    for i in 0..24 {
        let sp = split_prime(i);
        let ap = a.reduce(&sp.fp, sp.r);
        if ap.len() != a.c.len() {
            continue;
        }
        let bp = b.reduce(&sp.fp, sp.r);
        if sp.fp.gcd(&ap, &bp).len() == 1 {
            return true;
        }
    }
    zw_gcd(a, b).g.degree() == 0
}

/// Monic gcd over Q(ω) computed multimodularly.
pub fn gcd_multimodular(a: &UPoly<QOmega>, b: &UPoly<QOmega>) -> UPoly<QOmega> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (za, _) = ZwPoly::from_qpoly(a);
    let (zb, _) = ZwPoly::from_qpoly(b);
    zw_gcd(&za, &zb).g.to_qpoly().monic()
}

/// Resultant over Q(ω) of polynomials in an inner variable whose coefficients are
/// polynomials in the outer variables (formal degrees len−1). Degree bounds are
/// derived from the inputs.
pub fn resultant_multimodular(f: &[MPoly<QOmega>], g: &[MPoly<QOmega>], outer: &[&str]) -> MPoly<QOmega> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let integral = |h: &[MPoly<QOmega>]| -> (Vec<ZwTerms>, BigInt) {
        let l = lcm_denominators(h.iter().flat_map(|p| p.terms().map(|(_, c)| c)));
        let hs = h
            .iter()
            .map(|p| {
                let q = p.with_vars(outer).expect("coefficients use only outer variables");
                q.terms().map(|(e, c)| (to_zw(c, &l), e.clone())).collect()
            })
            .collect();
        (hs, l)
    };
    let (fi, lf) = integral(f);
    let (gi, lg) = integral(g);
    let degs = |h: &[MPoly<QOmega>], ax: &str| h.iter().filter_map(|p| p.degree_in(ax)).max().unwrap_or(0) as usize;
    let dbound: Vec<usize> = outer.iter().map(|ax| n * degs(f, ax) + m * degs(g, ax)).collect();
    let tensor = zw_resultant(&fi, &gi, outer.len(), &dbound);
    let scale = Rational::new(BigInt::one(), lf.pow(n as u32) * lg.pow(m as u32));
    let shape: Vec<usize> = dbound.iter().map(|d| d + 1).collect();
    let mut out = MPoly::zero_in(outer);
    let mut terms = Vec::new();
    for (flat, c) in tensor.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut e = vec![0u32; outer.len()];
        let mut rem = flat;
        for ax in (0..outer.len()).rev() {
            e[ax] = (rem % shape[ax]) as u32;
            rem /= shape[ax];
        }
        terms.push((c.to_qomega().scale(&scale), e));
    }
    if !terms.is_empty() {
        out = MPoly::from_terms(outer, terms);
    }
    out
}

/// Sign of the leading rational part, used to normalize integer polynomials.
pub fn sign_of(x: &ZwInt) -> Sign {
    if !x.a.is_zero() {
        x.a.sign()
    } else {
        x.b.sign()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::upoly::qpoly;

    #[test]
    fn zw_mul_matches_qomega() {
        let x = ZwInt { a: BigInt::from(3), b: BigInt::from(-5) };
        let y = ZwInt { a: BigInt::from(-7), b: BigInt::from(2) };
        let q = &x.to_qomega() * &y.to_qomega();
        assert_eq!(x.mul(&y).to_qomega(), q);
    }

    #[test]
    fn multimodular_resultant_matches_euclid() {
        let w = QOmega::omega();
        let f = qpoly(&[3, -1, 4, 1]).scale(&QOmega::frac(1, 3)).add(&UPoly::monomial(w.clone(), 2));
        let g = qpoly(&[-2, 5, 0, 0, 7]).add(&UPoly::constant(w));
        let lift = |p: &UPoly<QOmega>| p.coeffs().iter().map(|c| MPoly::constant(c.clone())).collect::<Vec<_>>();
        let r = resultant_multimodular(&lift(&f), &lift(&g), &[]);
        assert_eq!(r.coeff(&[]), f.resultant(&g));
    }

    #[test]
    fn multimodular_resultant_bivariate() {
        // Res_t(t − x, t² − y) = x² − y
        let x = MPoly::<QOmega>::var("x");
        let y = MPoly::<QOmega>::var("y");
        let one = MPoly::constant(QOmega::int(1));
        let zero = MPoly::zero_in(&[]);
        let r = resultant_multimodular(&[x.neg(), one.clone()], &[y.neg(), zero, one], &["x", "y"]);
        assert_eq!(r, x.pow(2).sub(&y));
    }

    #[test]
    fn multimodular_gcd() {
        let w = QOmega::omega();
        let common = qpoly(&[1, 0, 1]).add(&UPoly::monomial(w, 1));
        let a = common.mul(&qpoly(&[5, 1, 3])).mul(&common);
        let b = common.mul(&qpoly(&[-7, 0, 0, 2]));
        assert_eq!(gcd_multimodular(&a, &b), a.gcd(&b));
        assert_eq!(gcd_multimodular(&a, &b), common.monic());
        let (za, _) = ZwPoly::from_qpoly(&a);
        let (zb, _) = ZwPoly::from_qpoly(&b);
        let r = zw_gcd(&za, &zb);
        assert_eq!(r.g.mul(&r.qa), za.scale(&za.lc()));
        assert!(!zw_coprime(&za, &zb));
        let (zc, _) = ZwPoly::from_qpoly(&qpoly(&[1, 1]));
        assert!(zw_coprime(&za, &zc) == (a.gcd(&qpoly(&[1, 1])) == UPoly::one()));
    }
}
