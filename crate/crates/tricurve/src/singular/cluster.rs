use super::{CensusPoint, SingularCensus};
use crate::exactnum::{ComplexBall, Mag};

fn balls(p: &CensusPoint, prec: u32) -> [ComplexBall; 3] {
    match p {
        CensusPoint::Exact(q) => q.to_balls(prec),
        CensusPoint::Ball(b) => b.clone(),
    }
}

fn max_abs(v: &[ComplexBall; 3]) -> Mag {
    v.iter().fold(Mag::ZERO, |m, c| m.max(c.abs_up()))
}

/// log2 of |p × q| / (|p|·|q|) with max norms, from ball centers and radii; −∞ when the
/// cross product is exactly zero.
pub fn chordal_log2(p: &CensusPoint, q: &CensusPoint, prec: u32) -> f64 {
    let (a, b) = (balls(p, prec), balls(q, prec));
    let c = [
        a[1].mul(&b[2], prec).sub(&a[2].mul(&b[1], prec), prec),
        a[2].mul(&b[0], prec).sub(&a[0].mul(&b[2], prec), prec),
        a[0].mul(&b[1], prec).sub(&a[1].mul(&b[0], prec), prec),
    ];
    max_abs(&c).log2() - max_abs(&a).log2() - max_abs(&b).log2()
}

/// Groups census entries whose points lie within 2^threshold of each other (single linkage).
pub fn group_entries(census: &SingularCensus, threshold_log2: f64, prec: u32) -> Vec<Vec<usize>> {
    let n = census.len();
    let mut group: Vec<usize> = (0..n).collect();
    fn root(g: &mut [usize], mut i: usize) -> usize {
        while g[i] != i {
            g[i] = g[g[i]];
            i = g[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if chordal_log2(&census.entries[i].point, &census.entries[j].point, prec) < threshold_log2 {
                let (ri, rj) = (root(&mut group, i), root(&mut group, j));
                group[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for i in 0..n {
        let r = root(&mut group, i);
        if index[r] == usize::MAX {
            index[r] = out.len();
            out.push(Vec::new());
        }
        out[index[r]].push(i);
    }
    out
}

/// log2 of the largest pairwise distance inside a group.
pub fn group_diameter_log2(census: &SingularCensus, members: &[usize], prec: u32) -> f64 {
    let mut d = f64::NEG_INFINITY;
    for (x, &i) in members.iter().enumerate() {
        for &j in &members[x + 1..] {
            d = d.max(chordal_log2(&census.entries[i].point, &census.entries[j].point, prec));
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::ProjPoint;
    use crate::exactnum::QOmega;

    #[test]
    fn distances() {
        let p = CensusPoint::Exact(ProjPoint::ints(1, 0, 1));
        let q = CensusPoint::Exact(ProjPoint::new(QOmega::frac(1025, 1024), QOmega::int(0), QOmega::int(1)).unwrap());
        let d = chordal_log2(&p, &q, 128);
        assert!((d + 10.0).abs() < 0.1, "{d}");
        assert_eq!(chordal_log2(&p, &p, 128), f64::NEG_INFINITY);
    }
}
