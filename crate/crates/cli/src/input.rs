use std::path::{Path, PathBuf};

use semidomain::rees::{ReesSpec, ReesSpecFile};
use semidomain::semigroup::{CayleyFile, Elem, FiniteSemigroup, SemigroupError};
use semidomain::terms::{PointSet, Space};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Cayley,
    ReesSpec,
}

pub struct Input {
    pub path: PathBuf,
    pub sha256: String,
    pub format: Format,
    pub semigroup: FiniteSemigroup,
    pub rees: Option<ReesSpec>,
}

#[derive(Serialize)]
pub struct InputInfo {
    pub path: String,
    pub sha256: String,
    pub format: Format,
    pub order: usize,
    pub elements: Vec<String>,
}

impl Input {
    pub fn info(&self) -> InputInfo {
        InputInfo {
            path: self.path.display().to_string(),
            sha256: self.sha256.clone(),
            format: self.format,
            order: self.semigroup.order(),
            elements: self.semigroup.names().to_vec(),
        }
    }
}

pub fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Other(format!("cannot read {}: {e}", path.display())))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn semigroup_error(e: SemigroupError) -> CliError {
    let details = e.associativity_witness().map(|(a, b, c)| serde_json::json!({ "triple": [a, b, c] }));
    CliError::Validation { message: e.to_string(), details }
}

/// Loads a Cayley-table document, or a Rees spec document (recognized by
/// its `P` key), materializing the latter up to `size_cap` elements.
pub fn load(path: &Path, size_cap: usize) -> Result<Input, CliError> {
    let bytes = read(path)?;
    let sha256 = sha256_hex(&bytes);
    let value: serde_json::Value =
        serde_json::from_slice(&bytes).map_err(|e| CliError::validation(format!("invalid JSON: {e}")))?;
    let is_rees = value.get("P").is_some();
    let (format, semigroup, rees) = if is_rees {
        let file: ReesSpecFile =
            serde_json::from_value(value).map_err(|e| CliError::validation(format!("invalid Rees spec: {e}")))?;
        let spec = file.into_spec().map_err(rees_error)?;
        let s = spec.build_cayley(size_cap).map_err(rees_error)?;
        (Format::ReesSpec, s, Some(spec))
    } else {
        let file: CayleyFile =
            serde_json::from_value(value).map_err(|e| CliError::validation(format!("invalid Cayley file: {e}")))?;
        (Format::Cayley, file.into_semigroup().map_err(semigroup_error)?, None)
    };
    Ok(Input { path: path.to_path_buf(), sha256, format, semigroup, rees })
}

pub fn rees_error(e: semidomain::ReesError) -> CliError {
    match e {
        semidomain::ReesError::SizeCapExceeded { .. } => CliError::Budget(e.to_string()),
        semidomain::ReesError::Semigroup(e) => semigroup_error(e),
        other => CliError::validation(other.to_string()),
    }
}

/// Point list document: `{"arity": n, "points": [["a", "b"], ...]}`.
#[derive(Debug, Deserialize, Serialize)]
pub struct PointsFile {
    pub arity: usize,
    pub points: Vec<Vec<String>>,
}

pub fn load_points(path: &Path, s: &FiniteSemigroup, sweep_budget: u64) -> Result<PointSet, CliError> {
    let bytes = read(path)?;
    let file: PointsFile =
        serde_json::from_slice(&bytes).map_err(|e| CliError::validation(format!("invalid points file: {e}")))?;
    let space = Space::new(s.order(), file.arity, sweep_budget).map_err(CliError::from_term)?;
    let mut set = PointSet::empty(space);
    for (k, point) in file.points.iter().enumerate() {
        if point.len() != file.arity {
            return Err(CliError::validation(format!(
                "point {} has {} coordinates, expected {}",
                k + 1,
                point.len(),
                file.arity
            )));
        }
        let coords = point
            .iter()
            .map(|name| {
                s.index_of(name)
                    .ok_or_else(|| CliError::validation(format!("unknown element `{name}` in point {}", k + 1)))
            })
            .collect::<Result<Vec<Elem>, _>>()?;
        set.insert(&coords);
    }
    Ok(set)
}
