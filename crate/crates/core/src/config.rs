//! JSON job configuration.
//!
//! ```json
//! {
//!   "group": {"type": "cyclic", "order": 3},
//!   "tuple": [0, 1, 2],
//!   "units": {"blocks": [1, 1, 1]},
//!   "coefficients": "rational",
//!   "degree_universe": [0, 1, 2],
//!   "tensor": {"H": {"type": "cyclic", "order": 2}, "bicharacter": "grassmann", "truncation": 4}
//! }
//! ```
//!
//! `units` is either `{"blocks": [...]}` or `{"pairs": [[i, j], ...]}`.
//! `coefficients` is `"rational"` (the default) or `{"mod_p": p}`.
//! `bicharacter` is `"grassmann"`, `"trivial"`, an inline
//! `{"m": .., "beta": [[..]]}` table of exponents, or a path to a JSON file
//! holding such a table (relative paths resolve against the config file).

use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::basis::default_universe;
use crate::grading::{induce_grading, GradedSubalgebra, GradingError, UnitSpec};
use crate::group::{make_group, DegreeLiteral, Group, GroupElement, GroupError, GroupSpec};
use crate::omega::{CoeffMode, CoefficientError};
use crate::tensor::{BetaTable, Bicharacter, TensorError};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid configuration: {0}")]
    Json(#[from] serde_json::Error),
    #[error("`{0}` is not a degree literal")]
    BadLiteral(String),
    #[error("unknown coefficient mode `{0}`")]
    UnknownCoefficients(String),
    #[error("modular coefficients cannot be combined with a tensor section")]
    ModPWithTensor,
    #[error("bicharacter is defined on a different group than H")]
    BicharacterGroupMismatch,
    #[error("truncation must be positive")]
    ZeroTruncation,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Coefficient(#[from] CoefficientError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub group: GroupSpec,
    pub tuple: Vec<serde_json::Value>,
    pub units: UnitSpec,
    #[serde(default)]
    pub coefficients: Option<CoefficientSpec>,
    #[serde(default)]
    pub degree_universe: Option<Vec<serde_json::Value>>,
    #[serde(default)]
    pub tensor: Option<TensorSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum CoefficientSpec {
    /// Only `"rational"` is accepted.
    Named(String),
    ModP {
        mod_p: u64,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorSection {
    #[serde(rename = "H")]
    pub h: GroupSpec,
    pub bicharacter: BicharacterSource,
    #[serde(default = "default_truncation")]
    pub truncation: usize,
}

fn default_truncation() -> usize {
    4
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum BicharacterSource {
    /// `"grassmann"`, `"trivial"`, or a file path.
    Named(String),
    Inline {
        m: u32,
        beta: Vec<Vec<i64>>,
    },
}

/// A validated job.
#[derive(Debug, Clone)]
pub struct Job {
    pub algebra: GradedSubalgebra,
    pub mode: CoeffMode,
    pub universe: Vec<GroupElement>,
    pub tensor: Option<TensorJob>,
}

#[derive(Debug, Clone)]
pub struct TensorJob {
    pub beta: Bicharacter,
    pub truncation: usize,
}

/// Overrides from the command line, applied before validation.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub mod_p: Option<u64>,
    pub degree_universe: Option<Vec<DegreeLiteral>>,
    pub truncation: Option<usize>,
}

fn literal(value: &serde_json::Value) -> Result<DegreeLiteral, ConfigError> {
    DegreeLiteral::from_json(value).ok_or_else(|| ConfigError::BadLiteral(value.to_string()))
}

fn resolve(group: &Group, lits: &[DegreeLiteral]) -> Result<Vec<GroupElement>, ConfigError> {
    lits.iter()
        .map(|l| {
            group
                .element_from_literal(l, false)
                .map_err(ConfigError::from)
        })
        .collect()
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<JobConfig, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<JobConfig, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        JobConfig::from_json(&text)
    }

    /// Validates the configuration. `base` is the directory against which
    /// relative bicharacter paths are resolved.
    pub fn build(&self, overrides: &Overrides, base: Option<&Path>) -> Result<Job, ConfigError> {
        let group = make_group(&self.group)?;
        let tuple_lits = self
            .tuple
            .iter()
            .map(literal)
            .collect::<Result<Vec<_>, _>>()?;
        let tuple = resolve(&group, &tuple_lits)?;
        let units = self.units.build(tuple.len())?;
        let algebra = induce_grading(&group, &tuple, &units)?;

        let mode = match overrides.mod_p {
            Some(p) => CoeffMode::mod_prime(p)?,
            None => match &self.coefficients {
                None => CoeffMode::Rational,
                Some(CoefficientSpec::Named(s)) if s == "rational" => CoeffMode::Rational,
                Some(CoefficientSpec::Named(s)) => {
                    return Err(ConfigError::UnknownCoefficients(s.clone()))
                }
                Some(CoefficientSpec::ModP { mod_p }) => CoeffMode::mod_prime(*mod_p)?,
            },
        };

        let universe = match (&overrides.degree_universe, &self.degree_universe) {
            (Some(lits), _) => resolve(&group, lits)?,
            (None, Some(values)) => {
                let lits = values.iter().map(literal).collect::<Result<Vec<_>, _>>()?;
                resolve(&group, &lits)?
            }
            (None, None) if group.is_finite() => group.elements().expect("finite group"),
            (None, None) => default_universe(&algebra),
        };

        let tensor = match &self.tensor {
            None => None,
            Some(_) if mode != CoeffMode::Rational => return Err(ConfigError::ModPWithTensor),
            Some(section) => Some(section.build(overrides.truncation, base)?),
        };

        Ok(Job {
            algebra,
            mode,
            universe,
            tensor,
        })
    }
}

#[derive(Deserialize)]
struct TableFile {
    m: u32,
    beta: Vec<Vec<i64>>,
}

impl TensorSection {
    fn build(
        &self,
        truncation: Option<usize>,
        base: Option<&Path>,
    ) -> Result<TensorJob, ConfigError> {
        let h = make_group(&self.h)?;
        let table = match &self.bicharacter {
            BicharacterSource::Named(name) if name == "grassmann" => {
                if h != Group::Cyclic(2) {
                    return Err(ConfigError::BicharacterGroupMismatch);
                }
                BetaTable::grassmann()
            }
            BicharacterSource::Named(name) if name == "trivial" => BetaTable::trivial(h)?,
            BicharacterSource::Named(path) => {
                let path = match base {
                    Some(dir) => dir.join(path),
                    None => PathBuf::from(path),
                };
                let text = std::fs::read_to_string(&path).map_err(|source| ConfigError::Io {
                    path: path.clone(),
                    source,
                })?;
                let file: TableFile = serde_json::from_str(&text)?;
                BetaTable::new(h, file.m, file.beta)?
            }
            BicharacterSource::Inline { m, beta } => BetaTable::new(h, *m, beta.clone())?,
        };
        let truncation = truncation.unwrap_or(self.truncation);
        if truncation == 0 {
            return Err(ConfigError::ZeroTruncation);
        }
        Ok(TensorJob {
            beta: Bicharacter::new(table)?,
            truncation,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const M3_CONFIG: &str = r#"{
        "group": {"type": "cyclic", "order": 3},
        "tuple": [0, 1, 2],
        "units": {"blocks": [3]}
    }"#;

    #[test]
    fn minimal_config() {
        let job = JobConfig::from_json(M3_CONFIG)
            .unwrap()
            .build(&Overrides::default(), None)
            .unwrap();
        assert_eq!(job.algebra.n(), 3);
        assert_eq!(job.mode, CoeffMode::Rational);
        assert_eq!(job.universe.len(), 3);
        assert!(job.tensor.is_none());
    }

    #[test]
    fn coefficient_modes() {
        let text = M3_CONFIG.replace("\"units\"", "\"coefficients\": {\"mod_p\": 7}, \"units\"");
        let job = JobConfig::from_json(&text)
            .unwrap()
            .build(&Overrides::default(), None)
            .unwrap();
        assert_eq!(job.mode, CoeffMode::mod_prime(7).unwrap());
        let bad = M3_CONFIG.replace("\"units\"", "\"coefficients\": {\"mod_p\": 8}, \"units\"");
        assert!(matches!(
            JobConfig::from_json(&bad)
                .unwrap()
                .build(&Overrides::default(), None),
            Err(ConfigError::Coefficient(_))
        ));
    }

    #[test]
    fn mod_p_with_tensor_is_rejected() {
        let text = r#"{
            "group": {"type": "cyclic", "order": 2},
            "tuple": [0, 1],
            "units": {"pairs": [[1, 2]]},
            "tensor": {"H": {"type": "cyclic", "order": 2}, "bicharacter": "grassmann"}
        }"#;
        let cfg = JobConfig::from_json(text).unwrap();
        let job = cfg.build(&Overrides::default(), None).unwrap();
        assert_eq!(job.tensor.unwrap().truncation, 4);
        let overrides = Overrides {
            mod_p: Some(5),
            ..Overrides::default()
        };
        assert!(matches!(
            cfg.build(&overrides, None),
            Err(ConfigError::ModPWithTensor)
        ));
    }

    #[test]
    fn inline_table_is_validated() {
        let text = r#"{
            "group": {"type": "cyclic", "order": 2},
            "tuple": [0, 1],
            "units": {"blocks": [1, 1]},
            "tensor": {"H": {"type": "cyclic", "order": 2}, "bicharacter": {"m": 2, "beta": [[0, 1], [0, 1]]}}
        }"#;
        assert!(matches!(
            JobConfig::from_json(text)
                .unwrap()
                .build(&Overrides::default(), None),
            Err(ConfigError::Tensor(TensorError::NotABicharacter(_)))
        ));
    }

    #[test]
    fn repeated_tuple_entry() {
        let text = M3_CONFIG.replace("[0, 1, 2]", "[0, 1, 1]");
        assert!(matches!(
            JobConfig::from_json(&text)
                .unwrap()
                .build(&Overrides::default(), None),
            Err(ConfigError::Grading(GradingError::NonDistinctTuple { .. }))
        ));
    }
}
