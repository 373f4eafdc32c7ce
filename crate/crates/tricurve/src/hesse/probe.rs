use super::linear::solve_linear_stage;
use super::recursion::{instantiate, phi_stage, PerturbState};
use super::{build_config, HesseConfig, HesseError};
use crate::curve::ProjPoint;
use crate::exactnum::QOmega;
use crate::singular::{census_self, chordal_log2, CensusOptions, CensusPoint, Certification, SingularCensus};

/// Singular points of the perturbed curve gathered around one of the 12 triple points
/// of the arrangement (p_1..p_9, then the three vertices).
#[derive(Clone, Debug)]
pub struct TripleCluster {
    pub label: String,
    pub members: Vec<usize>,
    /// Largest pairwise distance, log2; −∞ for a single point.
    pub diameter_log2: f64,
}

impl TripleCluster {
    /// A single ordinary triple point with exact coordinates.
    pub fn is_exact_triple(&self, census: &SingularCensus) -> bool {
        self.members.len() == 1 && {
            let e = &census.entries[self.members[0]];
            e.multiplicity == 3 && e.ordinary && e.certification == Certification::Exact
        }
    }

    /// Three nodes.
    pub fn is_split_triple(&self, census: &SingularCensus) -> bool {
        self.members.len() == 3 && self.members.iter().all(|&i| census.entries[i].multiplicity == 2)
    }
}

fn references(cfg: &HesseConfig) -> Vec<(String, CensusPoint)> {
    let mut out: Vec<(String, CensusPoint)> = cfg
        .points
        .iter()
        .enumerate()
        .map(|(k, p)| (format!("p{}", k + 1), CensusPoint::Exact(ProjPoint::new(p[0].clone(), p[1].clone(), p[2].clone()).expect("z = 1"))))
        .collect();
    for (n, v) in cfg.vertices.iter().enumerate() {
        let label = ["(1:0:0)", "(0:1:0)", "(0:0:1)"][n].to_string();
        out.push((label, CensusPoint::Exact(ProjPoint::new(v[0].clone(), v[1].clone(), v[2].clone()).expect("vertex"))));
    }
    out
}

/// Assigns each census entry to the nearest triple point of the arrangement.
pub fn triple_point_clusters(cfg: &HesseConfig, census: &SingularCensus, prec: u32) -> Vec<TripleCluster> {
    let refs = references(cfg);
    let mut members = vec![Vec::new(); refs.len()];
    for (i, e) in census.entries.iter().enumerate() {
        let nearest = (0..refs.len())
            .min_by(|&a, &b| chordal_log2(&e.point, &refs[a].1, prec).total_cmp(&chordal_log2(&e.point, &refs[b].1, prec)))
            .expect("12 references");
        members[nearest].push(i);
    }
    refs.into_iter()
        .zip(members)
        .filter(|(_, m)| !m.is_empty())
        .map(|((label, _), m)| TripleCluster { diameter_log2: crate::singular::group_diameter_log2(census, &m, prec), label, members: m })
        .collect()
}

#[derive(Clone, Debug)]
pub struct ScalingProbe {
    pub order: usize,
    pub u: Vec<QOmega>,
    /// Per u, the cluster diameters around p_1..p_9 (log2).
    pub diameters_log2: Vec<[f64; 9]>,
    /// Fitted exponent of u in the diameter around each p_k.
    pub slopes: [f64; 9],
}

/// Least squares slope of y against x.
fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Measures how fast the three nodes near each p_k merge as u → 0.
pub fn split_scaling_probe(state: &PerturbState, u_list: &[QOmega], opts: &CensusOptions) -> Result<ScalingProbe, HesseError> {
    if u_list.len() < 3 {
        return Err(HesseError::Inconsistent("the probe needs at least three values of u".into()));
    }
    let mut diameters = Vec::with_capacity(u_list.len());
    for u in u_list {
        let curve = instantiate(state, u)?;
        let census = census_self(&curve, opts)?;
        let clusters = triple_point_clusters(&state.cfg, &census, opts.precision_bits);
        let mut row = [f64::NEG_INFINITY; 9];
        for (k, slot) in row.iter_mut().enumerate() {
            let label = format!("p{}", k + 1);
            let c = clusters.iter().find(|c| c.label == label).ok_or_else(|| HesseError::Inconsistent(format!("no singular point near {label} at u = {u}")))?;
            if !c.is_split_triple(&census) && !c.is_exact_triple(&census) {
                return Err(HesseError::Inconsistent(format!("unexpected singularities near {label} at u = {u}")));
            }
            *slot = c.diameter_log2;
        }
        diameters.push(row);
    }
    let xs: Vec<f64> = u_list.iter().map(|u| u.to_c64().0.abs().log2()).collect();
    let slopes = std::array::from_fn(|k| {
        let ys: Vec<f64> = diameters.iter().map(|r| r[k]).collect();
        if ys.iter().any(|y| !y.is_finite()) {
            f64::INFINITY
        } else {
            fit_slope(&xs, &ys)
        }
    });
    Ok(ScalingProbe { order: state.order(), u: u_list.to_vec(), diameters_log2: diameters, slopes })
}

#[derive(Clone, Debug)]
pub struct AdmissibilityReport {
    pub l0: [QOmega; 3],
    /// Dimension of the solution space of e_1 = … = e_9 = 0.
    pub solution_dimension: usize,
    pub nonzero_b_solution: bool,
    /// rank of Φ|_{u=0} over all 18 directions, when a starting point exists.
    pub phi_rank: Option<usize>,
}

impl AdmissibilityReport {
    pub fn full_rank(&self) -> bool {
        self.phi_rank == Some(9)
    }
}

pub fn check_line_admissible(l0: &[QOmega; 3]) -> Result<AdmissibilityReport, HesseError> {
    let cfg = build_config(l0)?;
    let lin = solve_linear_stage(&cfg)?;
    let phi_rank = match lin.chosen {
        Some(_) => Some(phi_stage(&cfg, &lin)?.rank),
        None => None,
    };
    Ok(AdmissibilityReport { l0: l0.clone(), solution_dimension: lin.dimension(), nonzero_b_solution: lin.chosen.is_some(), phi_rank })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_fit() {
        let x = [0.0, 1.0, 2.0];
        let y = [1.0, 3.0, 5.0];
        assert!((fit_slope(&x, &y) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn coordinate_line_is_rejected() {
        let x_axis = [QOmega::int(0), QOmega::int(1), QOmega::int(0)];
        assert!(matches!(check_line_admissible(&x_axis), Err(HesseError::LineNotAdmissible(_))));
    }
}
