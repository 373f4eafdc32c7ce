use super::mpoly::{MPoly, PolyError};
use super::upoly::UPoly;
use crate::exactnum::QOmega;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub coef: QOmega,
    pub exp: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl From<&MPoly<QOmega>> for PolyJson {
    fn from(p: &MPoly<QOmega>) -> Self {
        PolyJson { vars: p.vars().to_vec(), terms: p.terms().map(|(e, c)| TermJson { coef: c.clone(), exp: e.clone() }).collect() }
    }
}

impl TryFrom<&PolyJson> for MPoly<QOmega> {
    type Error = PolyError;

    fn try_from(j: &PolyJson) -> Result<Self, PolyError> {
        let vars: Vec<&str> = j.vars.iter().map(|s| s.as_str()).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(PolyError::Malformed(format!("duplicate variable {v}")));
            }
        }
        for t in &j.terms {
            if t.exp.len() != vars.len() {
                return Err(PolyError::Malformed(format!("exponent {:?} does not match {} variables", t.exp, vars.len())));
            }
        }
        Ok(MPoly::from_terms(&vars, j.terms.iter().map(|t| (t.coef.clone(), t.exp.clone()))))
    }
}

pub fn upoly_to_json(p: &UPoly<QOmega>, var: &str) -> PolyJson {
    PolyJson::from(&MPoly::from_upoly(p, var))
}

pub fn upoly_from_json(j: &PolyJson, var: &str) -> Result<UPoly<QOmega>, PolyError> {
    MPoly::try_from(j)?.to_upoly(var)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let x = MPoly::<QOmega>::var("x");
        let z = MPoly::<QOmega>::var("z");
        let p = x.pow(3).mul(&z).add(&z.scale(&"1-2*w".parse().unwrap()));
        let j = PolyJson::from(&p.with_vars(&["x", "y", "z"]).unwrap());
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.contains("\"exp\":[3,0,1]"));
        assert!(s.contains("\"1-2*w\""));
        let back: PolyJson = serde_json::from_str(&s).unwrap();
        assert_eq!(MPoly::try_from(&back).unwrap(), p);
    }

    #[test]
    fn rejects_bad_exponent() {
        let j: PolyJson = serde_json::from_str(r#"{"vars":["x"],"terms":[{"coef":"1","exp":[1,2]}]}"#).unwrap();
        assert!(MPoly::try_from(&j).is_err());
    }
}
