//! The `curve.json` format: four coefficient lists, lowest degree first,
//! each coefficient a `[re, im]` pair of `"p/q"` strings, plus provenance.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, rational_to_string, GaussianRational, Poly};
use crate::curves::{Provenance, ProjectiveCurve};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveFile {
    pub components: Vec<Vec<[String; 2]>>,
    pub provenance: Provenance,
}

impl From<&ProjectiveCurve> for CurveFile {
    fn from(c: &ProjectiveCurve) -> Self {
        CurveFile {
            components: c
                .components()
                .iter()
                .map(|p| p.coeffs().iter().map(|a| [rational_to_string(&a.re), rational_to_string(&a.im)]).collect())
                .collect(),
            provenance: c.provenance.clone(),
        }
    }
}

impl CurveFile {
    pub fn to_curve(&self) -> Result<ProjectiveCurve> {
        let polys: Vec<Poly> = self
            .components
            .iter()
            .map(|cs| {
                cs.iter()
                    .map(|[re, im]| Ok(GaussianRational::new(parse_rational(re)?, parse_rational(im)?)))
                    .collect::<Result<Vec<_>>>()
                    .map(Poly::new)
            })
            .collect::<Result<_>>()?;
        let polys: [Poly; 4] = polys
            .try_into()
            .map_err(|v: Vec<Poly>| Error::InvalidInput(format!("a curve needs 4 components, found {}", v.len())))?;
        ProjectiveCurve::from_polys(polys, self.provenance.clone())
    }
}

pub fn curve_to_json(c: &ProjectiveCurve) -> Result<String> {
    Ok(serde_json::to_string_pretty(&CurveFile::from(c))?)
}

pub fn curve_from_json(text: &str) -> Result<ProjectiveCurve> {
    serde_json::from_str::<CurveFile>(text)?.to_curve()
}

pub fn read_curve(path: &Path) -> Result<ProjectiveCurve> {
    curve_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_curve(path: &Path, c: &ProjectiveCurve) -> Result<()> {
    Ok(std::fs::write(path, curve_to_json(c)? + "\n")?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{bryant_curve, exceptional_line};
    use crate::parse::{parse_constant, parse_expression as p};

    #[test]
    fn round_trip() {
        let c = bryant_curve(&p("(z+i)/(3*z-1)").unwrap(), &p("z^2/2").unwrap()).unwrap();
        let text = curve_to_json(&c).unwrap();
        let back = curve_from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.provenance, c.provenance);
        let e = exceptional_line(&parse_constant("1/2").unwrap(), &parse_constant("-i").unwrap());
        assert_eq!(curve_from_json(&curve_to_json(&e).unwrap()).unwrap(), e);
    }

    #[test]
    fn schema() {
        let text = r#"{"components": [[["1/1","0/1"]], [], [["0","0"],["1","0"]], [["0","0"],["1","0"]]], "provenance": {"kind": "raw"}}"#;
        let c = curve_from_json(text).unwrap();
        assert_eq!(c.to_string(), "[1 : 0 : z : z]");
        assert!(curve_from_json(r#"{"components": [[]], "provenance": {"kind": "raw"}}"#).is_err());
        assert!(matches!(curve_from_json(r#"{"components": [[["1","x"]],[],[],[]], "provenance": {"kind": "raw"}}"#), Err(Error::InvalidInput(_))));
    }
}
