//! Curve files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::curve::{CurveSamples, ParamKind};
use crate::error::{Error, Result};
use crate::quat::{Ambient, BasisSignature, SemiQuaternion};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveFile {
    space: Ambient,
    signature: BasisSignature,
    param_kind: ParamKind,
    samples: Vec<SampleRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SampleRecord {
    u: f64,
    q: SemiQuaternion,
}

pub fn curve_to_json(curve: &CurveSamples) -> String {
    let file = CurveFile {
        space: curve.ambient(),
        signature: curve.sig,
        param_kind: curve.param_kind,
        samples: curve
            .params()
            .iter()
            .zip(curve.points())
            .map(|(&u, &q)| SampleRecord { u, q })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("curve serialization cannot fail")
}

pub fn curve_from_json(text: &str) -> Result<CurveSamples> {
    let file: CurveFile = serde_json::from_str(text)?;
    if file.space != file.signature.ambient {
        return Err(Error::InvalidCurve(format!(
            "space {} disagrees with signature ambient {}",
            file.space, file.signature.ambient
        )));
    }
    let (params, points) = file.samples.into_iter().map(|r| (r.u, r.q)).unzip();
    CurveSamples::new(params, points, file.signature, file.param_kind)
}

pub fn read_curve(path: &Path) -> Result<CurveSamples> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    curve_from_json(&text)
}

pub fn write_curve(path: &Path, curve: &CurveSamples) -> Result<()> {
    std::fs::write(path, curve_to_json(curve)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
