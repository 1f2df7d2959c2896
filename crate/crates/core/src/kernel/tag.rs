use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const DEFAULT_MODULE_SCALAR: i64 = 2;
pub const DEFAULT_STREAM_LENGTH: usize = 16;

/// Which concrete difference category a morphism lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModelTag {
    /// Abelian groups with the finite-difference operator.
    FinDiff,
    /// Smooth maps between real vector spaces.
    Smooth,
    /// Additive maps of abelian groups, with infinitesimal extension `r * f`.
    ModuleMaps { r: i64 },
    /// Causal maps between stream prefixes of length `k`.
    Streams { k: usize },
}

impl fmt::Display for ModelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelTag::FinDiff => write!(f, "findiff"),
            ModelTag::Smooth => write!(f, "smooth"),
            ModelTag::ModuleMaps { r } => write!(f, "module:r={r}"),
            ModelTag::Streams { k } => write!(f, "streams:k={k}"),
        }
    }
}

fn parameter<T: FromStr>(text: &str, key: &str) -> Result<T> {
    let value = text
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| Error::InvalidValue(format!("expected `{key}=<int>`, found `{text}`")))?;
    value
        .parse()
        .map_err(|_| Error::InvalidValue(format!("`{value}` is not a valid {key}")))
}

impl FromStr for ModelTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<ModelTag> {
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n, Some(r)),
            None => (s, None),
        };
        match (name, rest) {
            ("findiff", None) => Ok(ModelTag::FinDiff),
            ("smooth", None) => Ok(ModelTag::Smooth),
            ("module", None) => Ok(ModelTag::ModuleMaps {
                r: DEFAULT_MODULE_SCALAR,
            }),
            ("module", Some(p)) => Ok(ModelTag::ModuleMaps {
                r: parameter(p, "r")?,
            }),
            ("streams", None) => Ok(ModelTag::Streams {
                k: DEFAULT_STREAM_LENGTH,
            }),
            ("streams", Some(p)) => {
                let k: usize = parameter(p, "k")?;
                if k == 0 {
                    return Err(Error::InvalidValue("stream length must be positive".into()));
                }
                Ok(ModelTag::Streams { k })
            }
            _ => Err(Error::InvalidValue(format!("unknown model `{s}`"))),
        }
    }
}

impl Serialize for ModelTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ModelTag {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_model_strings() {
        assert_eq!("findiff".parse::<ModelTag>().unwrap(), ModelTag::FinDiff);
        assert_eq!("module:r=3".parse::<ModelTag>().unwrap(), ModelTag::ModuleMaps { r: 3 });
        assert_eq!("streams:k=8".parse::<ModelTag>().unwrap(), ModelTag::Streams { k: 8 });
        assert_eq!("module".parse::<ModelTag>().unwrap().to_string(), "module:r=2");
        assert!("streams:k=0".parse::<ModelTag>().is_err());
        assert!("tangent".parse::<ModelTag>().is_err());
    }
}
