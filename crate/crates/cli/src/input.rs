//! Loading cloners and states from inline JSON or files.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use qclone::cloner::AmplitudeMatrix;
use qclone::families::FamilyParams;
use qclone::hilbert::StateVector;

use crate::CliError;

/// Largest norm deviation a state may have before it is rejected.
const STATE_NORM_SLACK: f64 = 1e-6;

/// A cloner given directly or through family parameters.
#[derive(Debug, Clone)]
pub struct LoadedMatrix {
    pub matrix: AmplitudeMatrix,
    pub family: Option<FamilyParams>,
}

/// Text that starts with `{` or `[` is JSON; anything else is a path.
fn read_source(source: &str) -> Result<String, CliError> {
    let trimmed = source.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(source.to_string());
    }
    fs::read_to_string(Path::new(source)).map_err(|e| CliError::Io {
        path: source.into(),
        source: e,
    })
}

pub fn load_matrix(source: &str) -> Result<LoadedMatrix, CliError> {
    let text = read_source(source)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(qclone::Error::from)?;
    if value.get("family").is_some() {
        let family = FamilyParams::from_json(&text)?;
        Ok(LoadedMatrix {
            matrix: family.build()?,
            family: Some(family),
        })
    } else {
        Ok(LoadedMatrix {
            matrix: AmplitudeMatrix::from_json(&text)?,
            family: None,
        })
    }
}

/// A state is a JSON list of `[re, im]` pairs. States off unit norm by at
/// most `1e-6` are renormalized with a warning.
pub fn load_state(source: &str, warnings: &mut Vec<String>) -> Result<StateVector, CliError> {
    let text = read_source(source)?;
    let pairs: Vec<[f64; 2]> = serde_json::from_str(&text).map_err(qclone::Error::from)?;
    let amps: Vec<Complex64> = pairs.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
    let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    let deviation = (norm_sqr.sqrt() - 1.0).abs();
    if deviation > STATE_NORM_SLACK {
        return Err(qclone::Error::NotNormalized(norm_sqr).into());
    }
    if deviation > 1e-12 {
        warnings.push(format!("state norm off by {deviation:.3e}; renormalized"));
    }
    Ok(StateVector::renormalize(amps)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_matrix_and_family() {
        let m = load_matrix(r#"{"dim":2,"a":[[[1,0],[0,0]],[[0,0],[0,0]]]}"#).unwrap();
        assert!(m.family.is_none());
        assert_eq!(m.matrix, AmplitudeMatrix::identity(2));
        let f = load_matrix(r#"{"family":"universal","params":{"alpha":1,"beta":0,"dim":3}}"#).unwrap();
        assert!(f.family.is_some());
        assert_eq!(f.matrix, AmplitudeMatrix::identity(3));
    }

    #[test]
    fn state_normalization() {
        let mut warnings = Vec::new();
        let s = load_state("[[1,0],[0,0]]", &mut warnings).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(warnings.is_empty());
        load_state("[[1.0000001,0],[0,0]]", &mut warnings).unwrap();
        assert_eq!(warnings.len(), 1);
        assert!(load_state("[[2,0]]", &mut warnings).is_err());
    }

    #[test]
    fn missing_file() {
        assert!(matches!(load_matrix("/nonexistent/cloner.json"), Err(CliError::Io { .. })));
    }
}
