use super::{CurveError, ParamCurve, PlaneCurve};
use crate::exactnum::QOmega;
use crate::poly::{upoly_from_json, upoly_to_json, MPoly, PolyJson};
use serde::{Deserialize, Serialize};

/// Curve file format: `{"kind": "param", "label", "polys": [x, y, z]}` in the variable t,
/// or `{"kind": "implicit", "label", "poly": F}` in x, y, z.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CurveJson {
    Param { label: String, polys: [PolyJson; 3] },
    Implicit { label: String, poly: PolyJson },
}

/// Either kind of curve.
#[derive(Clone, Debug, PartialEq)]
pub enum Curve {
    Param(ParamCurve),
    Implicit { label: String, curve: PlaneCurve },
}

impl From<&ParamCurve> for CurveJson {
    fn from(c: &ParamCurve) -> Self {
        CurveJson::Param { label: c.label.clone(), polys: c.coords().map(|p| upoly_to_json(p, "t")) }
    }
}

impl CurveJson {
    pub fn implicit(label: &str, f: &PlaneCurve) -> Self {
        CurveJson::Implicit { label: label.to_string(), poly: PolyJson::from(f.poly()) }
    }

    pub fn to_curve(&self) -> Result<Curve, CurveError> {
        let perr = |e: crate::poly::PolyError| CurveError::Poly(e.to_string());
        match self {
            CurveJson::Param { label, polys } => {
                let [x, y, z] = polys;
                let c = ParamCurve::new(
                    upoly_from_json(x, "t").map_err(perr)?,
                    upoly_from_json(y, "t").map_err(perr)?,
                    upoly_from_json(z, "t").map_err(perr)?,
                    label.clone(),
                )?;
                Ok(Curve::Param(c))
            }
            CurveJson::Implicit { label, poly } => {
                let f: MPoly<QOmega> = MPoly::try_from(poly).map_err(perr)?;
                Ok(Curve::Implicit { label: label.clone(), curve: PlaneCurve::new(f)? })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let c = ParamCurve::from_ints(&[0, -3, 0, 0, 1], &[0, 2, 0, 0, 1], &[-1, 0, 0, 2], "quartic").unwrap();
        let txt = serde_json::to_string(&CurveJson::from(&c)).unwrap();
        assert!(txt.starts_with("{\"kind\":\"param\""));
        let back: CurveJson = serde_json::from_str(&txt).unwrap();
        assert_eq!(back.to_curve().unwrap(), Curve::Param(c.clone()));
        let f = crate::curve::implicitize(&c).unwrap();
        let j = CurveJson::implicit("F", &f);
        let back: CurveJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(back.to_curve().unwrap(), Curve::Implicit { label: "F".into(), curve: f });
    }
}
