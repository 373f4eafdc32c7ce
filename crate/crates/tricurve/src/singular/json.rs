use super::{CensusEntry, CensusPoint, Certification, Param, SingularCensus};
use crate::exactnum::ComplexBall;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct BranchJson {
    pub component: usize,
    /// Exact value, "inf", or a decimal approximation of the ball center.
    pub param: String,
    pub order: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct EntryJson {
    /// Exact coordinates when known.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<[String; 3]>,
    /// (re, im) of each coordinate.
    pub approx: [[f64; 2]; 3],
    /// Largest radius among the coordinate balls; 0 for exact points.
    pub radius: f64,
    pub multiplicity: usize,
    pub ordinary: bool,
    pub certification: Certification,
    pub branches: Vec<BranchJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CensusJson {
    pub points: usize,
    pub pair_count: usize,
    pub delta_sum: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub all_ordinary: bool,
    pub entries: Vec<EntryJson>,
}

fn ball_string(b: &ComplexBall) -> String {
    let (re, im) = b.to_c64();
    format!("{re:.15e}{im:+.15e}i")
}

impl From<&CensusEntry> for EntryJson {
    fn from(e: &CensusEntry) -> Self {
        let (exact, radius) = match &e.point {
            CensusPoint::Exact(p) => (Some(p.coords().clone().map(|c| c.to_string())), 0.0),
            CensusPoint::Ball(b) => (None, b.iter().map(|c| c.radius.to_f64()).fold(0.0, f64::max)),
        };
        let approx = e.point.approx().map(|(a, b)| [a, b]);
        let branches = e
            .branches
            .iter()
            .map(|b| BranchJson {
                component: b.component,
                param: match &b.param {
                    Param::Exact(t) => t.to_string(),
                    Param::Infinity => "inf".into(),
                    Param::Ball(z) => ball_string(z),
                },
                order: b.order,
            })
            .collect();
        EntryJson { exact, approx, radius, multiplicity: e.multiplicity, ordinary: e.ordinary, certification: e.certification, branches }
    }
}

impl From<&SingularCensus> for CensusJson {
    fn from(c: &SingularCensus) -> Self {
        CensusJson {
            points: c.len(),
            pair_count: c.pair_count,
            delta_sum: c.delta_sum,
            histogram: c.histogram(),
            all_ordinary: c.all_ordinary(),
            entries: c.entries.iter().map(EntryJson::from).collect(),
        }
    }
}
