use super::linexpr::{LinExpr, Unknown};
use crate::exactnum::{Field, QOmega, Ring};
use std::collections::{BTreeMap, BTreeSet};

/// Affine restriction of the unknowns: fixed values and pairwise equalities.
#[derive(Clone, Debug, Default)]
pub struct Subspace {
    pub fixed: Vec<(Unknown, QOmega)>,
    pub equal: Vec<(Unknown, Unknown)>,
}

#[derive(Clone, Debug)]
pub struct AffineSolution {
    /// One solution; free unknowns are set to zero.
    pub values: BTreeMap<Unknown, QOmega>,
    pub rank: usize,
    pub unique: bool,
    pub free: Vec<Unknown>,
    /// Basis of the homogeneous solutions inside the subspace.
    pub nullspace: Vec<BTreeMap<Unknown, QOmega>>,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("affine system is inconsistent")]
    Inconsistent,
    #[error("affine system is underdetermined: rank {rank} for {unknowns} unknowns")]
    Underdetermined { rank: usize, unknowns: usize },
}

/// Reduced row echelon data of a linear system over Q(ω).
struct Echelon {
    cols: Vec<Unknown>,
    rows: Vec<Vec<QOmega>>,
    rhs: Vec<QOmega>,
    pivots: Vec<usize>,
}

fn eliminate(eqs: &[LinExpr], cols: Vec<Unknown>) -> Result<Echelon, SolveError> {
    let index: BTreeMap<&Unknown, usize> = cols.iter().enumerate().map(|(i, u)| (u, i)).collect();
    let mut rows: Vec<Vec<QOmega>> = Vec::with_capacity(eqs.len());
    let mut rhs = Vec::with_capacity(eqs.len());
    for e in eqs {
        let mut row = vec![QOmega::int(0); cols.len()];
        for (x, c) in e.lin() {
            row[index[x]] = c.clone();
        }
        rows.push(row);
        rhs.push(e.constant.neg());
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols.len() {
        if r == rows.len() {
            break;
        }
        // smallest nonzero entry by size, first index on ties
        let best = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| (rows[i][c].size_hint(), i));
        let Some(p) = best else { continue };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = rows[r][c].inv();
        for x in rows[r].iter_mut() {
            *x = x.mul(&inv);
        }
        rhs[r] = rhs[r].mul(&inv);
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..cols.len() {
                if !rows[r][j].is_zero() {
                    let v = rows[i][j].sub(&f.mul(&rows[r][j]));
                    rows[i][j] = v;
                }
            }
            rhs[i] = rhs[i].sub(&f.mul(&rhs[r]));
        }
        pivots.push(c);
        r += 1;
    }
    if rhs[r..].iter().any(|x| !x.is_zero()) {
        return Err(SolveError::Inconsistent);
    }
    Ok(Echelon { cols, rows, rhs, pivots })
}

/// Rank of the linear parts of the given forms.
pub fn linear_rank(eqs: &[LinExpr]) -> usize {
    let cols: BTreeSet<Unknown> = eqs.iter().flat_map(|e| e.unknowns().cloned()).collect();
    let homog: Vec<LinExpr> = eqs.iter().map(|e| e.linear_part()).collect();
    eliminate(&homog, cols.into_iter().collect()).map(|e| e.pivots.len()).unwrap_or(0)
}

/// Solve affine equations (each form = 0) inside an affine subspace.
pub fn solve_affine_system(eqs: &[LinExpr], restrict: &Subspace, require_unique: bool) -> Result<AffineSolution, SolveError> {
    // each restricted unknown is replaced by an affine form in the remaining ones
    let mut rep: BTreeMap<Unknown, LinExpr> = BTreeMap::new();
    let mut extra: Vec<LinExpr> = Vec::new();
    let mut add_rule = |y: &Unknown, e: LinExpr, rep: &mut BTreeMap<Unknown, LinExpr>| {
        let e = e.substitute_lin(rep);
        if let Some(prev) = rep.get(y) {
            extra.push(prev.sub(&e));
            return;
        }
        if e == LinExpr::unknown(y) {
            return;
        }
        let single: BTreeMap<Unknown, LinExpr> = [(y.clone(), e.clone())].into_iter().collect();
        for v in rep.values_mut() {
            *v = v.substitute_lin(&single);
        }
        rep.insert(y.clone(), e);
    };
    for (x, v) in &restrict.fixed {
        add_rule(x, LinExpr::constant(v.clone()), &mut rep);
    }
    for (x, y) in &restrict.equal {
        add_rule(y, LinExpr::unknown(x), &mut rep);
    }
    let eqs_all: Vec<LinExpr> = eqs.iter().cloned().chain(extra).collect();
    let eqs = &eqs_all[..];
    let reduced: Vec<LinExpr> = eqs.iter().map(|e| e.substitute_lin(&rep)).collect();
    let mut all: BTreeSet<Unknown> = eqs.iter().flat_map(|e| e.unknowns().cloned()).collect();
    for (x, _) in &restrict.fixed {
        all.insert(x.clone());
    }
    for (x, y) in &restrict.equal {
        all.insert(x.clone());
        all.insert(y.clone());
    }
    let cols: Vec<Unknown> = all.iter().filter(|u| !rep.contains_key(*u)).cloned().collect();
    let ech = eliminate(&reduced, cols)?;
    let rank = ech.pivots.len();
    let nfree = ech.cols.len() - rank;
    if require_unique && nfree > 0 {
        return Err(SolveError::Underdetermined { rank, unknowns: ech.cols.len() });
    }
    let mut base: BTreeMap<Unknown, QOmega> = ech.cols.iter().map(|u| (u.clone(), QOmega::int(0))).collect();
    for (r, &c) in ech.pivots.iter().enumerate() {
        base.insert(ech.cols[c].clone(), ech.rhs[r].clone());
    }
    let free: Vec<Unknown> = (0..ech.cols.len()).filter(|c| !ech.pivots.contains(c)).map(|c| ech.cols[c].clone()).collect();
    let expand = |vals: &BTreeMap<Unknown, QOmega>, homogeneous: bool| -> BTreeMap<Unknown, QOmega> {
        let mut out = vals.clone();
        for (x, e) in &rep {
            let e = if homogeneous { e.linear_part() } else { e.clone() };
            out.insert(x.clone(), e.eval(vals).expect("representatives use free columns only"));
        }
        out
    };
    let mut nullspace = Vec::new();
    for f in &free {
        let fc = ech.cols.iter().position(|u| u == f).unwrap();
        let mut v: BTreeMap<Unknown, QOmega> = ech.cols.iter().map(|u| (u.clone(), QOmega::int(0))).collect();
        v.insert(f.clone(), QOmega::int(1));
        for (r, &c) in ech.pivots.iter().enumerate() {
            v.insert(ech.cols[c].clone(), ech.rows[r][fc].neg());
        }
        nullspace.push(expand(&v, true));
    }
    let values = expand(&base, false);
    debug_assert!(eqs.iter().all(|e| e.eval(&values).map(|v| v.is_zero()).unwrap_or(false)));
    Ok(AffineSolution { values, rank, unique: nfree == 0, free, nullspace })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> LinExpr {
        LinExpr::var(n)
    }
    fn k(n: i64) -> LinExpr {
        LinExpr::constant(QOmega::int(n))
    }

    #[test]
    fn unique_solution() {
        let eqs = [v("x").add(&v("y")).sub(&k(1)), v("x").sub(&v("y"))];
        let s = solve_affine_system(&eqs, &Subspace::default(), true).unwrap();
        assert!(s.unique);
        assert_eq!(s.values[&Unknown::new("x")], QOmega::frac(1, 2));
        assert_eq!(s.values[&Unknown::new("y")], QOmega::frac(1, 2));
    }

    #[test]
    fn inconsistent() {
        let eqs = [v("x").sub(&k(1)), v("x").sub(&k(2))];
        assert_eq!(solve_affine_system(&eqs, &Subspace::default(), false).unwrap_err(), SolveError::Inconsistent);
    }

    #[test]
    fn restricted() {
        // x + y + z = 3 with z = 0 and x = y
        let eqs = [v("x").add(&v("y")).add(&v("z")).sub(&k(3))];
        let sub = Subspace { fixed: vec![(Unknown::new("z"), QOmega::int(0))], equal: vec![(Unknown::new("x"), Unknown::new("y"))] };
        let s = solve_affine_system(&eqs, &sub, true).unwrap();
        assert_eq!(s.values[&Unknown::new("y")], QOmega::frac(3, 2));
        assert_eq!(s.values[&Unknown::new("z")], QOmega::int(0));
    }

    #[test]
    fn underdetermined_nullspace() {
        let eqs = [v("x").add(&v("y"))];
        assert!(matches!(solve_affine_system(&eqs, &Subspace::default(), true), Err(SolveError::Underdetermined { .. })));
        let s = solve_affine_system(&eqs, &Subspace::default(), false).unwrap();
        assert_eq!(s.rank, 1);
        assert_eq!(s.nullspace.len(), 1);
        let n = &s.nullspace[0];
        assert!(eqs[0].eval(n).unwrap().is_zero());
    }
}
