use super::branch::lambda_table;
use super::recursion::PerturbState;
use super::{build_config, HesseError};
use crate::exactnum::QOmega;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Serialized recursion state; S keys are "k,j" with 1-based indices.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct PerturbStateJson {
    pub order: usize,
    #[serde(rename = "L0")]
    pub l0: [String; 3],
    pub a: Vec<Vec<String>>,
    #[serde(rename = "S")]
    pub s: BTreeMap<String, Vec<String>>,
}

impl From<&PerturbState> for PerturbStateJson {
    fn from(st: &PerturbState) -> Self {
        let strings = |v: &[QOmega]| v.iter().map(|q| q.to_string()).collect::<Vec<_>>();
        let mut s = BTreeMap::new();
        for (k, row) in st.s.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                s.insert(format!("{},{}", k + 1, j + 1), strings(v));
            }
        }
        PerturbStateJson { order: st.order(), l0: st.cfg.l0.clone().map(|c| c.to_string()), a: st.a.iter().map(|v| strings(v)).collect(), s }
    }
}

fn parse(s: &str) -> Result<QOmega, HesseError> {
    s.parse().map_err(|e| HesseError::Inconsistent(format!("bad number {s:?}: {e}")))
}

impl TryFrom<&PerturbStateJson> for PerturbState {
    type Error = HesseError;

    fn try_from(j: &PerturbStateJson) -> Result<Self, HesseError> {
        let bad = |m: String| HesseError::Inconsistent(m);
        if j.a.len() != j.order + 1 {
            return Err(bad(format!("order {} needs {} coefficient vectors, got {}", j.order, j.order + 1, j.a.len())));
        }
        let l0 = [parse(&j.l0[0])?, parse(&j.l0[1])?, parse(&j.l0[2])?];
        let cfg = build_config(&l0)?;
        let lambda = lambda_table(&cfg)?;
        let mut a = Vec::with_capacity(j.a.len());
        for v in &j.a {
            if v.len() != 18 {
                return Err(bad(format!("coefficient vector of length {}", v.len())));
            }
            a.push(v.iter().map(|x| parse(x)).collect::<Result<Vec<_>, _>>()?);
        }
        let mut s: Vec<[Vec<QOmega>; 3]> = vec![Default::default(); 9];
        for k in 0..9 {
            for jj in 0..3 {
                let key = format!("{},{}", k + 1, jj + 1);
                let v = j.s.get(&key).ok_or_else(|| bad(format!("missing S[{key}]")))?;
                if v.len() != j.order + 1 {
                    return Err(bad(format!("S[{key}] has {} coefficients", v.len())));
                }
                s[k][jj] = v.iter().map(|x| parse(x)).collect::<Result<Vec<_>, _>>()?;
            }
        }
        Ok(PerturbState { cfg, lambda, a, s, system_matrix: None })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_config, default_l0, run_recursion};
    use super::*;

    #[test]
    fn round_trip() {
        let st = run_recursion(&build_config(&default_l0()).unwrap(), 1).unwrap();
        let j = PerturbStateJson::from(&st);
        let txt = serde_json::to_string(&j).unwrap();
        assert!(txt.contains("\"L0\":[\"2\",\"2\",\"-1\"]"));
        let back: PerturbStateJson = serde_json::from_str(&txt).unwrap();
        assert!(PerturbState::try_from(&back).unwrap().same_data(&st));
    }
}
