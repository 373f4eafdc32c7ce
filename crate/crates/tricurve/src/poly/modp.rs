//! Arithmetic in F_p for word-size primes p ≡ 1 (mod 3), in Montgomery form.
//! Such primes split in Z[ω]: ω maps to either primitive cube root of unity.

use num_bigint::{BigInt, Sign};
use num_traits::Zero;
use std::sync::{Mutex, OnceLock};

use crate::exactnum::{QOmega, Rational};

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
    np: u64,
    r1: u64,
    r2: u64,
}

impl Fp {
    pub fn new(p: u64) -> Fp {
        assert!(p % 2 == 1 && p < (1 << 62));
        let mut inv: u64 = p;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r1 = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r1 as u128 * r1 as u128) % p as u128) as u64;
        Fp { p, np: inv.wrapping_neg(), r1, r2 }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.np);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn one(&self) -> u64 {
        self.r1
    }

    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        let v = if a >= 0 { a as u64 % self.p } else { self.p - ((-(a as i128)) as u64 % self.p) };
        self.to_mont(v % self.p)
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = self.r1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }

    pub fn from_bigint(&self, x: &BigInt) -> u64 {
        let (sign, mag) = (x.sign(), x.magnitude());
        let r = (mag % self.p).iter_u64_digits().next().unwrap_or(0);
        let v = if sign == Sign::Minus && r != 0 { self.p - r } else { r };
        self.to_mont(v)
    }

    /// None if the denominator vanishes mod p.
    pub fn from_rational(&self, x: &Rational) -> Option<u64> {
        let d = self.from_bigint(x.denom());
        if d == 0 {
            return None;
        }
        Some(self.mul(self.from_bigint(x.numer()), self.inv(d)))
    }

    /// Image under ω ↦ r (r in Montgomery form).
    pub fn from_qomega(&self, x: &QOmega, r: u64) -> Option<u64> {
        let a = self.from_rational(&x.re)?;
        if x.wc.is_zero() {
            return Some(a);
        }
        let b = self.from_rational(&x.wc)?;
        Some(self.add(a, self.mul(b, r)))
    }

    // ---- dense polynomials, lowest degree first, trimmed ----

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn eval(&self, f: &[u64], x: u64) -> u64 {
        let mut acc = 0;
        for &c in f.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut c = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                c[i + j] = self.add(c[i + j], self.mul(x, y));
            }
        }
        Self::trim(&mut c);
        c
    }

    pub fn poly_scale(&self, a: &[u64], s: u64) -> Vec<u64> {
        let mut v: Vec<u64> = a.iter().map(|&x| self.mul(x, s)).collect();
        Self::trim(&mut v);
        v
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut v: Vec<u64> = (0..n).map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect();
        Self::trim(&mut v);
        v
    }

    pub fn derivative(&self, a: &[u64]) -> Vec<u64> {
        let mut v: Vec<u64> = a.iter().enumerate().skip(1).map(|(i, &c)| self.mul(c, self.from_i64(i as i64))).collect();
        Self::trim(&mut v);
        v
    }

    /// Quotient and remainder; b must be nonzero (trimmed).
    pub fn divrem(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        if a.len() < b.len() {
            let mut r = a.to_vec();
            Self::trim(&mut r);
            return (Vec::new(), r);
        }
        let db = b.len() - 1;
        let il = self.inv(b[db]);
        let mut r = a.to_vec();
        let mut q = vec![0u64; a.len() - db];
        for k in (0..q.len()).rev() {
            let top = r[k + db];
            if top == 0 {
                continue;
            }
            let f = self.mul(top, il);
            q[k] = f;
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = self.sub(r[k + j], self.mul(f, bj));
            }
        }
        r.truncate(db);
        Self::trim(&mut r);
        Self::trim(&mut q);
        (q, r)
    }

    pub fn monic(&self, a: &[u64]) -> Vec<u64> {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.poly_scale(a, self.inv(l)),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        Self::trim(&mut x);
        Self::trim(&mut y);
        while !y.is_empty() {
            let (_, r) = self.divrem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Resultant of trimmed nonzero polynomials at their actual degrees.
    fn resultant_actual(&self, a: &[u64], b: &[u64]) -> u64 {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        let mut acc = self.r1;
        loop {
            let m = a.len() - 1;
            let n = b.len() - 1;
            if n == 0 {
                return self.mul(acc, self.pow(b[0], m as u64));
            }
            if m == 0 {
                return self.mul(acc, self.pow(a[0], n as u64));
            }
            let (_, r) = self.divrem(&a, &b);
            if r.is_empty() {
                return 0;
            }
            let k = r.len() - 1;
            let mut f = self.pow(b[n], (m - k) as u64);
            if (m * n) % 2 == 1 {
                f = self.neg(f);
            }
            acc = self.mul(acc, f);
            a = b;
            b = r;
        }
    }

    /// Sylvester resultant with formal degrees len(f)−1 and len(g)−1 (f-rows first).
    pub fn resultant_formal(&self, f: &[u64], g: &[u64]) -> u64 {
        let m = f.len() - 1;
        let n = g.len() - 1;
        let mut fa = f.to_vec();
        let mut ga = g.to_vec();
        Self::trim(&mut fa);
        Self::trim(&mut ga);
        if fa.is_empty() {
            return if n == 0 { self.pow(g[0], m as u64) } else { 0 };
        }
        if ga.is_empty() {
            return if m == 0 { self.pow(f[0], n as u64) } else { 0 };
        }
        let dm = fa.len() - 1;
        let dn = ga.len() - 1;
        if dm < m && dn < n {
            return 0;
        }
        if dm < m {
            let r = self.resultant_actual(&fa, &ga);
            let mut v = self.mul(self.pow(ga[dn], (m - dm) as u64), r);
            if (n * (m - dm)) % 2 == 1 {
                v = self.neg(v);
            }
            return v;
        }
        if dn < n {
            let mut v = self.resultant_formal(g, f);
            if (m * n) % 2 == 1 {
                v = self.neg(v);
            }
            return v;
        }
        self.resultant_actual(&fa, &ga)
    }

    /// Interpolate values at the points 0, 1, …, n−1; returns n coefficients (untrimmed).
    pub fn interpolate_range(&self, ys: &[u64], inv_small: &[u64]) -> Vec<u64> {
        let n = ys.len();
        let mut dd = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = self.mul(self.sub(dd[i], dd[i - 1]), inv_small[j]);
            }
        }
        let mut acc = vec![0u64; n];
        // acc = acc·(t − (i)) + dd[i], descending i; acc has degree n−1−i
        let mut len = 0usize;
        for i in (0..n).rev() {
            let xi = self.from_i64(i as i64);
            // multiply by (t − xi)
            if len > 0 {
                for k in (0..len).rev() {
                    let c = acc[k];
                    acc[k + 1] = self.add(acc[k + 1], c);
                    acc[k] = self.neg(self.mul(c, xi));
                }
                len += 1;
            }
            acc[0] = self.add(acc[0], dd[i]);
            if len == 0 {
                len = 1;
            }
        }
        acc
    }

    /// Montgomery images of 1/j for j = 0..n (entry 0 unused).
    pub fn small_inverses(&self, n: usize) -> Vec<u64> {
        let mut v = vec![0u64; n + 1];
        for (j, slot) in v.iter_mut().enumerate().skip(1) {
            *slot = self.inv(self.from_i64(j as i64));
        }
        v
    }
}

/// A split prime p ≡ 1 (mod 3) together with a primitive cube root of unity.
#[derive(Clone, Copy, Debug)]
pub struct SplitPrime {
    pub fp: Fp,
    /// Montgomery form of the cube root used for the first ideal.
    pub r: u64,
    /// Montgomery form of the second root r² = −1 − r.
    pub r_conj: u64,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn primes_cache() -> &'static Mutex<Vec<SplitPrime>> {
    static CACHE: OnceLock<Mutex<Vec<SplitPrime>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// The i-th split prime, counting down from 2^62.
pub fn split_prime(i: usize) -> SplitPrime {
    let mut cache = primes_cache().lock().unwrap();
    while cache.len() <= i {
        let mut cand = match cache.last() {
            Some(sp) => sp.fp.p - 6,
            None => {
                let top = (1u64 << 62) - 1;
                top - (top % 6) + 1 - 6
            }
        };
        while !is_prime_u64(cand) {
            cand -= 6;
        }
        let p = cand;
        let fp = Fp::new(p);
        let mut g = 2u64;
        let root = loop {
            let r = powmod(g, (p - 1) / 3, p);
            if r != 1 {
                break r;
            }
            g += 1;
        };
        let r = fp.to_mont(root);
        let r_conj = fp.to_mont(mulmod(root, root, p));
        cache.push(SplitPrime { fp, r, r_conj });
    }
    cache[i]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn montgomery_basics() {
        let sp = split_prime(0);
        let f = sp.fp;
        assert_eq!(f.p % 3, 1);
        let a = f.from_i64(123456789);
        let b = f.from_i64(-987654321);
        let c = f.mul(a, b);
        assert_eq!(f.from_mont(c), ((123456789i128 * -987654321i128).rem_euclid(f.p as i128)) as u64);
        assert_eq!(f.mul(a, f.inv(a)), f.one());
        // r is a primitive cube root of unity
        let r = sp.r;
        assert_eq!(f.add(f.add(f.mul(r, r), r), f.one()), 0);
        assert_eq!(f.mul(r, r), sp.r_conj);
    }

    #[test]
    fn primes_are_distinct() {
        let a = split_prime(0).fp.p;
        let b = split_prime(1).fp.p;
        assert!(a > b);
        assert!(is_prime_u64(b));
    }

    #[test]
    fn interpolation_mod_p() {
        let f = split_prime(2).fp;
        let poly: Vec<u64> = [5i64, -3, 0, 7].iter().map(|&x| f.from_i64(x)).collect();
        let ys: Vec<u64> = (0..4).map(|i| f.eval(&poly, f.from_i64(i))).collect();
        let inv = f.small_inverses(4);
        assert_eq!(f.interpolate_range(&ys, &inv), poly);
    }

    #[test]
    fn resultant_formal_mod_p() {
        let f = split_prime(3).fp;
        let m = |v: &[i64]| v.iter().map(|&x| f.from_i64(x)).collect::<Vec<u64>>();
        // Res(t^2 − 1, t − 2) = 3
        assert_eq!(f.from_mont(f.resultant_formal(&m(&[-1, 0, 1]), &m(&[-2, 1]))), 3);
        // formal degree 3 for a quadratic: (−1)^{1·1} · 1^1 · 3
        assert_eq!(f.resultant_formal(&m(&[-1, 0, 1, 0]), &m(&[-2, 1])), f.neg(f.from_i64(3)));
    }
}
