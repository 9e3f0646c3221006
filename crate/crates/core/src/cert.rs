//! Run parameters and the certificates each command emits.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
  #[default]
  Text,
  Json,
}

impl FromStr for Format {
  type Err = Error;

  fn from_str(s: &str) -> Result<Self> {
    match s {
      "text" => Ok(Format::Text),
      "json" => Ok(Format::Json),
      _ => Err(Error::Invalid(format!("unknown format {s:?}; expected json or text"))),
    }
  }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
  pub trunc: usize,
  /// Largest covering family tried when refining covers.
  pub depth: usize,
  /// Bound on enumerated torsor carriers and candidates.
  pub bound: usize,
  /// Bound on enumerated maps.
  pub limit: usize,
  pub inputs: Vec<PathBuf>,
  pub format: Format,
}

impl Default for RunConfig {
  fn default() -> Self {
    Self { trunc: 4, depth: 4, bound: 8, limit: 10_000, inputs: vec![], format: Format::Text }
  }
}

/// Optional overrides read from a config file; command-line flags take precedence.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
  pub trunc: Option<usize>,
  pub depth: Option<usize>,
  pub bound: Option<usize>,
  pub limit: Option<usize>,
  pub format: Option<Format>,
}

impl RunConfig {
  pub fn validate(&self) -> Result<()> {
    if self.trunc < 2 {
      return Err(Error::Invalid(format!("truncation must be at least 2, got {}", self.trunc)));
    }
    for (what, v) in [("depth", self.depth), ("bound", self.bound), ("limit", self.limit)] {
      if v == 0 {
        return Err(Error::Invalid(format!("{what} must be positive")));
      }
    }
    Ok(())
  }

  pub fn apply(&mut self, file: &ConfigFile) {
    self.trunc = file.trunc.unwrap_or(self.trunc);
    self.depth = file.depth.unwrap_or(self.depth);
    self.bound = file.bound.unwrap_or(self.bound);
    self.limit = file.limit.unwrap_or(self.limit);
    self.format = file.format.unwrap_or(self.format);
  }

  pub fn parameters(&self) -> Parameters {
    Parameters {
      trunc: self.trunc,
      depth: self.depth,
      bound: self.bound,
      limit: self.limit,
      family: None,
      inputs: self.inputs.iter().map(|p| p.display().to_string()).collect(),
    }
  }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
  Pass,
  Fail,
}

impl Verdict {
  pub fn of(pass: bool) -> Self {
    if pass {
      Verdict::Pass
    } else {
      Verdict::Fail
    }
  }
}

impl fmt::Display for Verdict {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str(match self {
      Verdict::Pass => "PASS",
      Verdict::Fail => "FAIL",
    })
  }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
  pub trunc: usize,
  pub depth: usize,
  pub bound: usize,
  pub limit: usize,
  /// The covering family used, by object name.
  pub family: Option<Vec<String>>,
  pub inputs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
  pub claim: String,
  pub verdict: Verdict,
  pub witnesses: serde_json::Value,
  pub parameters: Parameters,
}

impl Certificate {
  pub fn new(claim: impl Into<String>, pass: bool, witnesses: impl Serialize, parameters: Parameters) -> Self {
    Self {
      claim: claim.into(),
      verdict: Verdict::of(pass),
      witnesses: serde_json::to_value(witnesses).expect("witnesses serialize"),
      parameters,
    }
  }

  pub fn is_pass(&self) -> bool {
    self.verdict == Verdict::Pass
  }

  pub fn with_family(mut self, family: Vec<String>) -> Self {
    self.parameters.family = Some(family);
    self
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn config_bounds() {
    assert!(RunConfig::default().validate().is_ok());
    assert!(RunConfig { trunc: 1, ..Default::default() }.validate().is_err());
    assert!(RunConfig { bound: 0, ..Default::default() }.validate().is_err());
    let mut c = RunConfig::default();
    c.apply(&serde_json::from_str(r#"{"trunc": 3, "format": "json"}"#).unwrap());
    assert_eq!((c.trunc, c.format), (3, Format::Json));
    assert!(serde_json::from_str::<ConfigFile>(r#"{"truncation": 3}"#).is_err());
  }

  #[test]
  fn certificate_round_trips() {
    let c = Certificate::new(
      "wbar.counts",
      true,
      serde_json::json!({"counts": [1, 2, 4]}),
      RunConfig::default().parameters(),
    );
    let s = serde_json::to_string(&c).unwrap();
    assert!(s.contains("\"PASS\""));
    assert_eq!(serde_json::from_str::<Certificate>(&s).unwrap(), c);
  }
}
