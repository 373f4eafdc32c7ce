use super::roots::{isolate_roots, RootError};
use super::system::{eliminant, multiplicity_layers, zw_coords, EliminantError};
use super::{multiplicity_at_point_exact, SingularError};
use crate::curve::{cross, eval_upoly_ball, map_degree, mat_det, minors, Matrix3, ParamCurve, ProjPoint};
use crate::exactnum::{CFloat, ComplexBall, Field, Float, Mag, QOmega, Ring};
use crate::poly::zw::{zw_coprime, zw_gcd, ZwInt, ZwPoly};
use crate::poly::QPoly;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub precision_bits: u32,
    /// Clusters must be separated by 2^k times the ball radii.
    pub separation_log2: u32,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { precision_bits: 192, separation_log2: 16 }
    }
}

impl CensusOptions {
    pub fn with_precision(bits: u32) -> Self {
        CensusOptions { precision_bits: bits, ..Default::default() }
    }
}

/// A parameter value on a component.
#[derive(Clone, Debug)]
pub enum Param {
    Exact(QOmega),
    Ball(ComplexBall),
    Infinity,
}

#[derive(Clone, Debug)]
pub enum CensusPoint {
    Exact(ProjPoint),
    /// Normalized so the coordinate of largest modulus is 1.
    Ball([ComplexBall; 3]),
}

impl CensusPoint {
    pub fn approx(&self) -> [(f64, f64); 3] {
        match self {
            CensusPoint::Exact(p) => p.coords().clone().map(|c| c.to_c64()),
            CensusPoint::Ball(b) => b.clone().map(|c| c.to_c64()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    Exact,
    CertifiedNumeric,
}

#[derive(Clone, Debug)]
pub struct Branch {
    pub component: usize,
    pub param: Param,
    /// Multiplicity of the branch: 1 when immersed, the order of the first
    /// non-proportional derivative otherwise.
    pub order: usize,
}

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub point: CensusPoint,
    /// Point multiplicity; for a pair census, the local intersection multiplicity.
    pub multiplicity: usize,
    pub ordinary: bool,
    pub branches: Vec<Branch>,
    pub certification: Certification,
}

#[derive(Clone, Debug)]
pub struct SingularCensus {
    pub entries: Vec<CensusEntry>,
    /// Ordered parameter pairs with equal image, counted with multiplicity.
    pub pair_count: usize,
    pub delta_sum: usize,
}

impl SingularCensus {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of entries per multiplicity.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for e in &self.entries {
            *h.entry(e.multiplicity).or_insert(0) += 1;
        }
        h
    }

    pub fn all_ordinary(&self) -> bool {
        self.entries.iter().all(|e| e.ordinary)
    }
}

/// Möbius change t = r + 1/s moving the parameter at infinity to t = r.
#[derive(Clone, Debug)]
struct Chart {
    work: ParamCurve,
    shift: Option<QOmega>,
}

impl Chart {
    fn original_param(&self, p: Param) -> Param {
        let Some(r) = &self.shift else { return p };
        match p {
            Param::Exact(s) if s.is_zero() => Param::Infinity,
            Param::Exact(s) => Param::Exact(r.add(&s.inv())),
            Param::Infinity => Param::Exact(r.clone()),
            Param::Ball(b) => {
                let prec = b.center.re.mantissa_bits().max(b.center.im.mantissa_bits()).max(64) as u32;
                match b.inv(prec) {
                    Some(i) => Param::Ball(i.add(&ComplexBall::from_qomega(r, prec), prec)),
                    None => Param::Ball(b),
                }
            }
        }
    }
}

/// Which components fail the genericity test at the point at infinity of `work`:
/// `None` when it is generic, otherwise the other components through that point.
fn infinity_blockers(i: usize, comps: &[ParamCurve], work: &ParamCurve) -> Option<Vec<usize>> {
    let d = work.degree();
    let lead = work.coords().map(|p| p.coeff(d));
    let next = work.coords().map(|p| p.coeff(d - 1));
    let mut blocked = Vec::new();
    let mut generic = !cross(&lead, &next).iter().all(|c| c.is_zero());
    let p = work.eval_infinity();
    for (j, c) in comps.iter().enumerate() {
        let m = multiplicity_at_point_exact(c, &p).map(|(m, _)| m).unwrap_or(0);
        if m != (i == j) as usize {
            generic = false;
            if i != j && m > 0 {
                blocked.push(j);
            }
        }
    }
    (!generic).then_some(blocked)
}

fn choose_chart(i: usize, comps: &[ParamCurve]) -> Result<Chart, SingularError> {
    let c = &comps[i];
    let Some(first) = infinity_blockers(i, comps, c) else {
        return Ok(Chart { work: c.clone(), shift: None });
    };
    // hits[j] counts distinct parameters of component i whose image lies on component j;
    // more than the Bezout number of them means a shared component
    let mut hits = vec![0usize; comps.len()];
    for j in first {
        hits[j] += 1;
    }
    for k in 1..200i64 {
        let r = QOmega::frac(if k % 2 == 0 { k } else { -k } * 3 + 1, k + 1);
        let w = c.reparametrize(&r, &QOmega::int(1), &QOmega::int(1), &QOmega::int(0)).expect("invertible");
        match infinity_blockers(i, comps, &w) {
            None => return Ok(Chart { work: w, shift: Some(r) }),
            Some(b) => {
                for j in b {
                    hits[j] += 1;
                    if hits[j] > c.degree() * comps[j].degree() {
                        return Err(SingularError::SharedComponent(i.min(j), i.max(j)));
                    }
                }
            }
        }
    }
    Err(SingularError::NoGenericCoordinates)
}

/// Coordinate changes tried in turn. The first twelve share the row (2, −1, ·), so a
/// later stretch varies every entry; singular ones are skipped by the caller.
fn plane_matrix(k: i64) -> Matrix3 {
    if k < 12 {
        return [[1, 2 + k, 3], [2, -1, 5 + 2 * k], [1 + k, 4, -3 - k]].map(|r| r.map(QOmega::int));
    }
    let v = |i: i64| ((k * 37 + i * 11) * (i + 3) + k * k) % 17 - 8;
    std::array::from_fn(|r| std::array::from_fn(|c| QOmega::int(v(3 * r as i64 + c as i64))))
}

/// Combined multiplicity data of one coprime piece.
#[derive(Clone, Debug, Default, PartialEq)]
struct Signature {
    self_mult: usize,
    pair_mult: BTreeMap<usize, usize>,
    /// Number of nested non-immersion polynomials containing the roots.
    extra_order: usize,
}

impl Signature {
    fn is_empty(&self) -> bool {
        *self == Signature::default()
    }

    fn merged(&self, o: &Signature) -> Signature {
        let mut s = self.clone();
        s.self_mult += o.self_mult;
        for (k, v) in &o.pair_mult {
            *s.pair_mult.entry(*k).or_insert(0) += v;
        }
        s.extra_order += o.extra_order;
        s
    }
}

/// Refine a pairwise coprime family by a new squarefree polynomial.
fn refine(base: &mut Vec<(ZwPoly, Signature)>, b: &ZwPoly, sig: &Signature) {
    let mut b = b.clone();
    let mut out = Vec::with_capacity(base.len() + 2);
    for (a, asig) in base.drain(..) {
        if b.degree() == 0 {
            out.push((a, asig));
            continue;
        }
        let g = zw_gcd(&a, &b);
        if g.g.degree() == 0 {
            out.push((a, asig));
            continue;
        }
        let rest = g.qa.primitive_int();
        if rest.degree() > 0 {
            out.push((rest, asig.clone()));
        }
        out.push((g.g.primitive_int(), asig.merged(sig)));
        b = g.qb.primitive_int();
    }
    if b.degree() > 0 {
        out.push((b, sig.clone()));
    }
    *base = out;
}

fn to_zw_poly(p: &QPoly) -> ZwPoly {
    ZwPoly::from_qpoly(p).0.primitive_int()
}

/// gcd of the three minors of (f, f^(k)) for k = 1, 2, …: roots of the k-th are the
/// parameters whose branch has order > k.
fn non_immersion_chain(c: &ParamCurve) -> Vec<QPoly> {
    let mut out = Vec::new();
    let mut acc: Option<QPoly> = None;
    let mut der = c.coords().map(|p| p.clone());
    for _ in 0..c.degree() {
        der = der.map(|p| p.derivative());
        let m = minors(&c.coords(), &der.each_ref());
        let mut g = acc.clone().unwrap_or_else(QPoly::zero);
        for p in &m {
            g = crate::poly::gcd_multimodular(&g, p);
        }
        if g.is_zero() || g.deg0() == 0 {
            break;
        }
        out.push(g.clone());
        acc = Some(g);
    }
    out
}

/// Recognizes a root in Q(ω) inside the isolating ball `z`. For a primitive polynomial
/// over Z[ω] such a root times the leading coefficient is an Eisenstein integer, so
/// rounding lc·z and checking exactly suffices.
fn exact_root(p: &ZwPoly, z: &ComplexBall, prec: u32) -> Option<QOmega> {
    let lc = p.lc().to_qomega();
    let w = ComplexBall::from_qomega(&lc, prec).mul(z, prec);
    if w.radius.log2() > -4.0 {
        return None;
    }
    // b = im·2/√3, a = re + b/2
    let k = prec as usize;
    let two_over_sqrt3 = Float::from_parts((num_bigint::BigInt::from(4) << (2 * k)) / 3, 0);
    let s = Float::from_parts(two_over_sqrt3.round_to_int().sqrt(), -(k as i64));
    let b = w.center.im.mul(&s).round_to_int();
    let a = w.center.re.mul_2k(1).add(&Float::from_bigint(b.clone())).mul_2k(-1).round_to_int();
    let r = QOmega::new(a.into(), b.into()).div(&lc);
    let value = p.c.iter().rev().fold(QOmega::zero(), |acc, c| acc.mul(&r).add(&c.to_qomega()));
    (value.is_zero() && z.overlaps(&ComplexBall::from_qomega(&r, prec))).then_some(r)
}

/// Best rational approximation with denominator at most `max_den`.
fn rationalize(x: f64, max_den: i64) -> Option<(i64, i64)> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        let (h2, k2) = (a as i64 * h1 + h0, a as i64 * k1 + k0);
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-12 || ((h1 as f64 / k1 as f64) - x).abs() < 1e-14 * x.abs().max(1.0) {
            break;
        }
        v = 1.0 / frac;
    }
    (k1 > 0).then_some((h1, k1))
}

/// A point of small height over Q(ω) inside the image balls, if any.
fn recognize_point(image: &[ComplexBall; 3], prec: u32) -> Option<ProjPoint> {
    let s3 = 3f64.sqrt();
    let mut coords = Vec::with_capacity(3);
    for b in image {
        let (re, im) = b.to_c64();
        let wb = 2.0 * im / s3;
        let (bn, bd) = rationalize(wb, 1_000_000)?;
        let (an, ad) = rationalize(re + wb / 2.0, 1_000_000)?;
        let q = QOmega::frac(an, ad).add(&QOmega::frac(bn, bd).mul(&QOmega::omega()));
        if !b.overlaps(&ComplexBall::from_qomega(&q, prec)) {
            return None;
        }
        coords.push(q);
    }
    let [x, y, z]: [QOmega; 3] = coords.try_into().ok()?;
    ProjPoint::new(x, y, z).ok()
}

struct Root {
    component: usize,
    param: Param,
    /// Parameter in the working chart.
    local: LocalParam,
    sig: Signature,
    image: [ComplexBall; 3],
    tangent: Option<[ComplexBall; 3]>,
}

#[derive(Clone)]
enum LocalParam {
    Exact(QOmega),
    Ball(ComplexBall),
}

fn ball_cross(a: &[ComplexBall; 3], b: &[ComplexBall; 3], prec: u32) -> [ComplexBall; 3] {
    let m = |i: usize, j: usize| a[i].mul(&b[j], prec).sub(&a[j].mul(&b[i], prec), prec);
    [m(1, 2), m(2, 0), m(0, 1)]
}

/// Scale so the entry with the largest center modulus becomes 1.
fn ball_normalize(v: &[ComplexBall; 3], prec: u32) -> Option<[ComplexBall; 3]> {
    let k = (0..3).max_by(|&i, &j| v[i].center.abs_up().cmp_mag(&v[j].center.abs_up()))?;
    let inv = v[k].inv(prec)?;
    Some(std::array::from_fn(|i| if i == k { ComplexBall::exact(one()) } else { v[i].mul(&inv, prec) }))
}

fn one() -> CFloat {
    CFloat::new(Float::from_i64(1), Float::zero())
}

enum Relation {
    Same,
    Separated,
    Ambiguous,
}

fn relate(p: &[ComplexBall; 3], q: &[ComplexBall; 3], prec: u32, sep_log2: u32) -> Relation {
    let c = ball_cross(p, q, prec);
    if c.iter().all(|x| x.contains_zero()) {
        return Relation::Same;
    }
    let err = c.iter().fold(Mag::ZERO, |m, x| m.max(x.radius));
    let gap = c.iter().fold(Mag::ZERO, |m, x| m.max(x.abs_down()));
    if err.mul_up(Mag::pow2(sep_log2 as i64)).lt(&gap) {
        Relation::Separated
    } else {
        Relation::Ambiguous
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Mode {
    Full,
    PairOnly,
}

struct Engine<'a> {
    comps: &'a [ParamCurve],
    charts: Vec<Chart>,
    opts: &'a CensusOptions,
    wprec: u32,
}

impl<'a> Engine<'a> {
    fn new(comps: &'a [ParamCurve], opts: &'a CensusOptions) -> Result<Self, SingularError> {
        if opts.precision_bits < 64 {
            return Err(SingularError::PrecisionTooLow(opts.precision_bits));
        }
        for c in comps {
            if map_degree(c) > 1 {
                return Err(SingularError::ImproperParametrization(c.label.clone()));
            }
        }
        let charts = (0..comps.len()).map(|i| choose_chart(i, comps)).collect::<Result<_, _>>()?;
        Ok(Engine { comps, charts, opts, wprec: opts.precision_bits + 32 })
    }

    /// Eliminants in a generic coordinate system: self ones, and for each ordered pair (i, j).
    fn eliminants(&self, mode: Mode) -> Result<(Vec<ZwPoly>, BTreeMap<(usize, usize), ZwPoly>), SingularError> {
        let n = self.comps.len();
        'attempt: for k in 0..40 {
            let m = plane_matrix(k);
            if mat_det(&m).is_zero() {
                continue;
            }
            let coords: Vec<_> = self.charts.iter().map(|c| zw_coords(&c.work.transform(&m).expect("invertible"))).collect();
            for f in &coords {
                let d = f[0].len() - 1;
                if f.iter().any(|c| c[d].is_zero()) || !zw_coprime(&ZwPoly::new(f[0].clone()), &ZwPoly::new(f[1].clone())) {
                    continue 'attempt;
                }
            }
            let mut selfs = Vec::new();
            if mode == Mode::Full {
                for (i, f) in coords.iter().enumerate() {
                    match eliminant(f, None) {
                        Ok(t) => selfs.push(t),
                        Err(EliminantError::Spurious) => continue 'attempt,
                        Err(EliminantError::Degenerate) => {
                            return Err(SingularError::ImproperParametrization(self.comps[i].label.clone()));
                        }
                    }
                }
            }
            let mut pairs = BTreeMap::new();
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    match eliminant(&coords[i], Some(&coords[j])) {
                        Ok(t) => {
                            let expect = self.comps[i].degree() * self.comps[j].degree();
                            if t.degree() != expect {
                                return Err(SingularError::BezoutMismatch { found: t.degree(), expected: expect });
                            }
                            pairs.insert((i, j), t);
                        }
                        Err(EliminantError::Spurious) => continue 'attempt,
                        Err(EliminantError::Degenerate) => return Err(SingularError::SharedComponent(i, j)),
                    }
                }
            }
            return Ok((selfs, pairs));
        }
        Err(SingularError::NoGenericCoordinates)
    }

    fn run(&self, mode: Mode) -> Result<SingularCensus, SingularError> {
        let n = self.comps.len();
        let (selfs, pairs) = self.eliminants(mode)?;
        let mut pair_count: usize = selfs.iter().map(|t| t.degree()).sum();
        pair_count += pairs.values().map(|t| t.degree()).sum::<usize>();

        // coprime pieces per component
        let mut pieces: Vec<(usize, ZwPoly, Signature)> = Vec::new();
        for i in 0..n {
            let mut base: Vec<(ZwPoly, Signature)> = Vec::new();
            if mode == Mode::Full {
                for (k, layer) in multiplicity_layers(&selfs[i]).iter().enumerate() {
                    if layer.degree() > 0 {
                        refine(&mut base, layer, &Signature { self_mult: k + 1, ..Default::default() });
                    }
                }
            }
            for ((a, b), t) in &pairs {
                if *a != i {
                    continue;
                }
                for (k, layer) in multiplicity_layers(t).iter().enumerate() {
                    if layer.degree() > 0 {
                        let mut sig = Signature::default();
                        sig.pair_mult.insert(*b, k + 1);
                        refine(&mut base, layer, &sig);
                    }
                }
            }
            if mode == Mode::Full {
                for c in non_immersion_chain(&self.charts[i].work) {
                    refine(&mut base, &to_zw_poly(&c).primitive_int(), &Signature { extra_order: 1, ..Default::default() });
                }
            }
            if self.charts[i].shift.is_some() {
                // isolate s = 0 exactly (the original parameter at infinity)
                let s = ZwPoly::new(vec![ZwInt::zero(), ZwInt::from_int(1.into())]);
                refine(&mut base, &s, &Signature::default());
            }
            pieces.extend(base.into_iter().filter(|(_, s)| !s.is_empty()).map(|(p, s)| (i, p, s)));
        }

        let wprec = self.wprec;
        let isolated: Vec<Result<Vec<LocalParam>, RootError>> = pieces
            .par_iter()
            .map(|(_, p, _)| {
                if p.degree() == 1 {
                    let r = p.c[0].to_qomega().neg().div(&p.c[1].to_qomega());
                    Ok(vec![LocalParam::Exact(r)])
                } else {
                    isolate_roots(p, wprec).map(|v| {
                        v.into_iter()
                            .map(|b| match exact_root(p, &b, wprec) {
                                Some(r) => LocalParam::Exact(r),
                                None => LocalParam::Ball(b),
                            })
                            .collect()
                    })
                }
            })
            .collect();
        let mut roots: Vec<Root> = Vec::new();
        for ((comp, _, sig), res) in pieces.iter().zip(isolated) {
            let locals = res.map_err(|_| SingularError::PrecisionExhausted(self.opts.precision_bits))?;
            for local in locals {
                roots.push(self.make_root(*comp, local, sig.clone())?);
            }
        }

        // cluster by image point
        let m = roots.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut rel = vec![vec![false; m]; m];
        for a in 0..m {
            for b in a + 1..m {
                match relate(&roots[a].image, &roots[b].image, wprec, self.opts.separation_log2) {
                    Relation::Same => {
                        rel[a][b] = true;
                        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                        parent[ra] = rb;
                    }
                    Relation::Separated => {}
                    Relation::Ambiguous => return Err(SingularError::PrecisionExhausted(self.opts.precision_bits)),
                }
            }
        }
        let mut clusters: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for a in 0..m {
            let r = find(&mut parent, a);
            clusters.entry(r).or_default().push(a);
        }

        let mut entries = Vec::new();
        for members in clusters.values() {
            let mut count = vec![0usize; n];
            let mut orders = vec![0usize; n];
            for &a in members {
                count[roots[a].component] += 1;
                orders[roots[a].component] += 1 + roots[a].sig.extra_order;
            }
            let consistent = members.iter().all(|&a| {
                let r = &roots[a];
                let self_ok = mode == Mode::PairOnly || r.sig.self_mult + 1 == count[r.component];
                let pairs_ok = (0..n).filter(|&j| j != r.component).all(|j| r.sig.pair_mult.get(&j).copied().unwrap_or(0) == count[j]);
                self_ok && pairs_ok
            });
            let immersed = members.iter().all(|&a| roots[a].sig.extra_order == 0);
            let mut distinct = true;
            if immersed {
                for (x, &a) in members.iter().enumerate() {
                    for &b in &members[x + 1..] {
                        let (ta, tb) = (roots[a].tangent.as_ref().unwrap(), roots[b].tangent.as_ref().unwrap());
                        let c = ball_cross(ta, tb, wprec);
                        if c.iter().all(|v| v.contains_zero()) {
                            if consistent {
                                return Err(SingularError::PrecisionExhausted(self.opts.precision_bits));
                            }
                            distinct = false;
                        }
                    }
                }
            }
            let ordinary = immersed && distinct && consistent;
            let multiplicity = match mode {
                Mode::Full => members.iter().map(|&a| 1 + roots[a].sig.extra_order).sum(),
                Mode::PairOnly => {
                    if count[0] == 0 || count[1] == 0 {
                        continue;
                    }
                    members.iter().filter(|&&a| roots[a].component == 0).map(|&a| roots[a].sig.pair_mult[&1]).sum()
                }
            };
            if mode == Mode::Full && multiplicity < 2 {
                return Err(SingularError::Inconsistent("unpaired root of the eliminant".into()));
            }
            let exact = members.iter().find_map(|&a| match &roots[a].local {
                LocalParam::Exact(t) => Some((roots[a].component, t.clone())),
                LocalParam::Ball(_) => None,
            });
            let point = match exact {
                Some((c, t)) => CensusPoint::Exact(self.charts[c].work.eval(&t).expect("primitive")),
                None => match recognize_point(&roots[members[0]].image, wprec) {
                    Some(p) if self.point_on_all(&p, &orders) => CensusPoint::Exact(p),
                    _ => CensusPoint::Ball(roots[members[0]].image.clone()),
                },
            };
            let mut certification =
                if members.iter().all(|&a| matches!(roots[a].local, LocalParam::Exact(_))) { Certification::Exact } else { Certification::CertifiedNumeric };
            let mut ordinary = ordinary;
            if let (Mode::Full, CensusPoint::Exact(p)) = (mode, &point) {
                let (m, ord) = super::exact_point_ordinary(self.comps, p)?;
                if m != multiplicity || (ord != ordinary && immersed && distinct) {
                    return Err(SingularError::Inconsistent(format!("exact check at {p} disagrees")));
                }
                ordinary = ord;
                certification = Certification::Exact;
            }
            let mut branches: Vec<Branch> =
                members.iter().map(|&a| Branch { component: roots[a].component, param: roots[a].param.clone(), order: 1 + roots[a].sig.extra_order }).collect();
            branches.sort_by(|a, b| a.component.cmp(&b.component).then(param_key(&a.param).total_cmp_tuple(&param_key(&b.param))));
            entries.push(CensusEntry { point, multiplicity, ordinary, branches, certification });
        }
        entries.sort_by(|a, b| point_key(&a.point).total_cmp_tuple(&point_key(&b.point)));
        let delta_sum = match mode {
            Mode::Full => entries.iter().map(|e| e.multiplicity * (e.multiplicity - 1) / 2).sum(),
            Mode::PairOnly => 0,
        };
        Ok(SingularCensus { entries, pair_count, delta_sum })
    }

    /// True when `p` has multiplicity exactly `orders[j]` on every component j.
    fn point_on_all(&self, p: &ProjPoint, orders: &[usize]) -> bool {
        self.comps.iter().zip(orders).all(|(c, &k)| multiplicity_at_point_exact(c, p).map(|(m, _)| m == k).unwrap_or(false))
    }

    fn make_root(&self, comp: usize, local: LocalParam, sig: Signature) -> Result<Root, SingularError> {
        let wprec = self.wprec;
        let chart = &self.charts[comp];
        let w = &chart.work;
        let lost = || SingularError::PrecisionExhausted(self.opts.precision_bits);
        let (ball, param) = match &local {
            LocalParam::Exact(t) => (ComplexBall::from_qomega(t, wprec), Param::Exact(t.clone())),
            LocalParam::Ball(b) => (b.clone(), Param::Ball(b.clone())),
        };
        let raw = w.eval_ball(&ball, wprec);
        let image = ball_normalize(&raw, wprec).ok_or_else(lost)?;
        let tangent = if sig.extra_order == 0 {
            let d = w.derivative().map(|p| eval_upoly_ball(&p, &ball, wprec));
            Some(ball_normalize(&ball_cross(&raw, &d, wprec), wprec).ok_or_else(lost)?)
        } else {
            None
        };
        Ok(Root { component: comp, param: chart.original_param(param), local, sig, image, tangent })
    }
}

trait TupleCmp {
    fn total_cmp_tuple(&self, o: &Self) -> std::cmp::Ordering;
}

impl TupleCmp for Vec<f64> {
    fn total_cmp_tuple(&self, o: &Self) -> std::cmp::Ordering {
        for (a, b) in self.iter().zip(o) {
            let c = a.total_cmp(b);
            if c.is_ne() {
                return c;
            }
        }
        self.len().cmp(&o.len())
    }
}

fn point_key(p: &CensusPoint) -> Vec<f64> {
    p.approx().iter().flat_map(|&(a, b)| [a, b]).collect()
}

fn param_key(p: &Param) -> Vec<f64> {
    match p {
        Param::Exact(t) => {
            let (a, b) = t.to_c64();
            vec![a, b]
        }
        Param::Ball(b) => {
            let (a, c) = b.to_c64();
            vec![a, c]
        }
        Param::Infinity => vec![f64::INFINITY, 0.0],
    }
}

/// All singular points of one parametrized curve.
pub fn census_self(c: &ParamCurve, opts: &CensusOptions) -> Result<SingularCensus, SingularError> {
    full_census(std::slice::from_ref(c), opts)
}

/// Common points of two curves with local intersection multiplicities; the total equals
/// deg C1 · deg C2.
pub fn census_pair(c1: &ParamCurve, c2: &ParamCurve, opts: &CensusOptions) -> Result<SingularCensus, SingularError> {
    let comps = [c1.clone(), c2.clone()];
    let engine = Engine::new(&comps, opts)?;
    let census = engine.run(Mode::PairOnly)?;
    let total: usize = census.entries.iter().map(|e| e.multiplicity).sum();
    if total != c1.degree() * c2.degree() {
        return Err(SingularError::BezoutMismatch { found: total, expected: c1.degree() * c2.degree() });
    }
    Ok(census)
}

/// Singular points of the union of the components.
pub fn full_census(comps: &[ParamCurve], opts: &CensusOptions) -> Result<SingularCensus, SingularError> {
    Engine::new(comps, opts)?.run(Mode::Full)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> CensusOptions {
        CensusOptions::with_precision(128)
    }

    #[test]
    fn nodal_cubic() {
        let c = ParamCurve::from_ints(&[-1, 0, 1], &[0, -1, 0, 1], &[1], "nodal").unwrap();
        let s = census_self(&c, &opts()).unwrap();
        assert_eq!(s.len(), 1);
        let e = &s.entries[0];
        assert_eq!((e.multiplicity, e.ordinary, e.certification), (2, true, Certification::Exact));
        assert_eq!(e.point.approx()[0], (0.0, 0.0));
        assert_eq!(s.pair_count, 2);
        assert!(super::super::delta_check(&s, &[3]));
    }

    #[test]
    fn conic_through_a_special_direction() {
        // the point at infinity (1:2:0) is killed by a row of the first coordinate changes
        let c = ParamCurve::from_ints(&[0, 0, 3], &[2, 0, 6], &[0, 1], "conic").unwrap();
        assert!(census_self(&c, &opts()).unwrap().is_empty());
        let c = ParamCurve::from_ints(&[-1, 0, 6], &[0, 0, 3], &[0, 1, 6], "conic").unwrap();
        assert!(census_self(&c, &opts()).unwrap().is_empty());
    }

    #[test]
    fn cuspidal_cubic() {
        let c = ParamCurve::from_ints(&[0, 0, 1], &[0, 0, 0, 1], &[1], "cusp").unwrap();
        let s = census_self(&c, &opts()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.entries[0].multiplicity, 2);
        assert!(!s.entries[0].ordinary);
        assert_eq!(s.entries[0].branches[0].order, 2);
    }

    #[test]
    fn three_concurrent_lines() {
        let l = |a: i64, b: i64| ParamCurve::from_ints(&[0, 1], &[0, a], &[1, b], "").unwrap();
        let s = full_census(&[l(1, 0), l(2, 1), l(-1, 3)], &opts()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!((s.entries[0].multiplicity, s.entries[0].ordinary), (3, true));
        assert_eq!(s.delta_sum, 3);
    }

    #[test]
    fn irrational_nodes() {
        // the node of (t² − 2 : t(t² − 2) : t + 1) sits over t = ±√2 but is the rational point (0:0:1)
        let c = ParamCurve::from_ints(&[-2, 0, 1], &[0, -2, 0, 1], &[1, 1], "").unwrap();
        let s = census_self(&c, &opts()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.entries[0].certification, Certification::Exact);
        assert!(s.entries[0].ordinary);
        // three conjugate nodes
        let c = ParamCurve::from_ints(&[2, -1, 3, 0, 1], &[1, 1, 0, 1], &[-1, 0, 2], "").unwrap();
        let s = census_self(&c, &opts()).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.entries.iter().all(|e| e.multiplicity == 2 && e.ordinary && e.certification == Certification::CertifiedNumeric));
    }

    #[test]
    fn conic_and_tangent_line() {
        let conic = ParamCurve::from_ints(&[0, 1], &[0, 0, 1], &[1], "").unwrap();
        let line = ParamCurve::from_ints(&[0, 1], &[0], &[1], "").unwrap();
        let s = census_pair(&conic, &line, &opts()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.entries[0].multiplicity, 2);
        let secant = ParamCurve::from_ints(&[0, 1], &[1], &[1], "").unwrap();
        let s = census_pair(&conic, &secant, &opts()).unwrap();
        assert_eq!(s.histogram(), BTreeMap::from([(1, 2)]));
        assert_eq!(census_pair(&conic, &conic, &opts()).unwrap_err(), SingularError::SharedComponent(0, 1));
    }

    #[test]
    fn improper_and_low_precision() {
        let c = ParamCurve::from_ints(&[0, 0, 1], &[0, 0, 0, 0, 1], &[1], "sq").unwrap();
        assert!(matches!(census_self(&c, &opts()), Err(SingularError::ImproperParametrization(_))));
        let l = ParamCurve::from_ints(&[0, 1], &[1], &[1], "").unwrap();
        assert_eq!(census_self(&l, &CensusOptions::with_precision(32)).unwrap_err(), SingularError::PrecisionTooLow(32));
    }
}
