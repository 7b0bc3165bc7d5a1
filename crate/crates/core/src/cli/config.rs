//! JSON run configuration.
//!
//! ```json
//! {
//!   "model": { "a0": 0.25, "a": [0, 0, 0], "b": ["1/2", 0, 0] },
//!   "source": [0, 0, 0],
//!   "takeoff": [[1.5707963267948966, 0.0]],
//!   "integrator": { "method": "rk4", "step": 0.001, "sigma_max": 4.0 }
//! }
//! ```
//!
//! Model coefficients are JSON numbers (taken as their exact binary value) or
//! exact rational strings `"n/d"`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hamiltonics::QuadraticSeismicModel;
use crate::raytrace::{IntegratorConfig, Method};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config parse error at line {line}, column {column} (field `{field}`): {message}")]
    Parse {
        line: usize,
        column: usize,
        field: String,
        message: String,
    },
    #[error("invalid config field `{field}`: {message}")]
    Invalid { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field: field.into(),
        message: message.into(),
    }
}

/// A coefficient as written in the config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Number(f64),
    Exact(String),
}

impl Scalar {
    pub fn to_rational(&self) -> Result<BigRational, String> {
        match self {
            Scalar::Number(x) => BigRational::from_float(*x).ok_or_else(|| format!("{x} is not finite")),
            Scalar::Exact(s) => {
                let t = s.trim();
                let (num, den) = match t.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (t, "1"),
                };
                let parse = |v: &str| {
                    num_bigint::BigInt::from_str(v).map_err(|_| format!("`{s}` is not a rational of the form n/d"))
                };
                let (n, d) = (parse(num)?, parse(den)?);
                if d.is_zero() {
                    return Err(format!("`{s}` has a zero denominator"));
                }
                Ok(BigRational::new(n, d))
            }
        }
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Number(x)
    }
}

impl From<&str> for Scalar {
    fn from(s: &str) -> Self {
        Scalar::Exact(s.into())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub a0: Scalar,
    pub a: [Scalar; 3],
    pub b: [Scalar; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodName {
    Rk4,
    Leapfrog,
}

impl From<MethodName> for Method {
    fn from(m: MethodName) -> Self {
        match m {
            MethodName::Rk4 => Method::Rk4,
            MethodName::Leapfrog => Method::Leapfrog,
        }
    }
}

impl fmt::Display for MethodName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodName::Rk4 => "rk4",
            MethodName::Leapfrog => "leapfrog",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorSection {
    pub method: MethodName,
    pub step: f64,
    pub sigma_max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub source: [f64; 3],
    pub takeoff: Vec<[f64; 2]>,
    pub integrator: IntegratorSection,
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct RunPlan {
    pub model: QuadraticSeismicModel,
    pub source: [f64; 3],
    pub takeoffs: Vec<(f64, f64)>,
    pub integrator: IntegratorConfig,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let field = e.path().to_string();
            let inner = e.into_inner();
            ConfigError::Parse {
                line: inner.line(),
                column: inner.column(),
                field,
                message: inner.to_string(),
            }
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn model(&self) -> Result<QuadraticSeismicModel, ConfigError> {
        let m = &self.model;
        let a0 = m.a0.to_rational().map_err(|e| invalid("model.a0", e))?;
        let coeffs = |name: &str, xs: &[Scalar; 3]| -> Result<[BigRational; 3], ConfigError> {
            let mut out: [BigRational; 3] = Default::default();
            for (i, x) in xs.iter().enumerate() {
                out[i] = x.to_rational().map_err(|e| invalid(format!("model.{name}[{i}]"), e))?;
            }
            Ok(out)
        };
        Ok(QuadraticSeismicModel::new(a0, coeffs("a", &m.a)?, coeffs("b", &m.b)?))
    }

    pub fn validate(&self) -> Result<RunPlan, ConfigError> {
        let model = self.model()?;
        let integ = &self.integrator;
        if !(integ.step > 0.0) {
            return Err(invalid("integrator.step", format!("must be > 0, got {}", integ.step)));
        }
        if !(integ.sigma_max >= integ.step) {
            return Err(invalid(
                "integrator.sigma_max",
                format!("must be >= step ({}), got {}", integ.step, integ.sigma_max),
            ));
        }
        let integrator = IntegratorConfig::new(integ.method.into(), integ.step, integ.sigma_max)
            .map_err(|e| invalid("integrator", e.to_string()))?;
        if self.takeoff.is_empty() {
            return Err(invalid("takeoff", "needs at least one (theta, phi) pair"));
        }
        let u = model.slowness_squared_at(&self.source);
        if !(u > 0.0) {
            return Err(invalid(
                "source",
                format!("squared slowness at the source is {u}, must be > 0"),
            ));
        }
        Ok(RunPlan {
            model,
            source: self.source,
            takeoffs: self.takeoff.iter().map(|t| (t[0], t[1])).collect(),
            integrator,
        })
    }
}
