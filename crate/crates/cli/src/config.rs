use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use ntopo::{Frame64, NNorm64, Space64, Vector64};
use serde::de::{self, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::report::Format;
use crate::CliError;

/// A run configuration file.
///
/// ```json
/// {
///   "space": { "dim": 5, "arity": 5, "tolerance": { "zero": 1e-9, "rel": 1e-9, "sym": 1e-12 } },
///   "frame": "standard-basis",
///   "seed": 7,
///   "trials": 1000,
///   "output": { "path": "report.json", "format": "json" }
/// }
/// ```
///
/// `frame` may also be a list of rows, one frame vector per row.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub space: Space64,
    #[serde(default)]
    pub frame: FrameLiteral,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputConfig>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub enum FrameLiteral {
    #[default]
    StandardBasis,
    Rows(Vec<Vec<f64>>),
}

const STANDARD_BASIS: &str = "standard-basis";

impl Serialize for FrameLiteral {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            FrameLiteral::StandardBasis => s.serialize_str(STANDARD_BASIS),
            FrameLiteral::Rows(rows) => rows.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for FrameLiteral {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;

        impl<'de> Visitor<'de> for V {
            type Value = FrameLiteral;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "\"{STANDARD_BASIS}\" or a list of frame vectors")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<FrameLiteral, E> {
                if v == STANDARD_BASIS {
                    Ok(FrameLiteral::StandardBasis)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }

            fn visit_seq<A: SeqAccess<'de>>(self, seq: A) -> Result<FrameLiteral, A::Error> {
                Vec::deserialize(de::value::SeqAccessDeserializer::new(seq)).map(FrameLiteral::Rows)
            }
        }

        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

/// A loaded configuration together with the objects built from it.
pub struct Setup {
    pub config: RunConfig,
    pub frame: Frame64,
    pub norm: NNorm64,
}

impl RunConfig {
    pub fn euclidean(dim: usize, arity: usize) -> Result<Self, CliError> {
        Ok(RunConfig {
            space: Space64::euclidean(dim, arity)?,
            frame: FrameLiteral::StandardBasis,
            seed: None,
            trials: None,
            output: None,
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    /// Builds the frame and norm, rejecting dependent or misshapen frames.
    pub fn into_setup(self) -> Result<Setup, CliError> {
        let space = self.space.clone();
        let frame = match &self.frame {
            FrameLiteral::StandardBasis => Frame64::standard_basis(space.clone()),
            FrameLiteral::Rows(rows) => {
                let vectors = rows
                    .iter()
                    .map(|r| Vector64::from_f64(r))
                    .collect::<Result<Vec<_>, _>>()?;
                Frame64::new(space.clone(), vectors)?
            }
        };
        Ok(Setup {
            config: self,
            frame,
            norm: NNorm64::standard(space),
        })
    }
}
