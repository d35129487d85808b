use std::fmt;
use std::str::FromStr;

use crate::error::CpintError;

/// A point of the extended real line `[-inf, inf]`.
///
/// Infinite endpoints are tags, never floating-point infinities, so they only
/// ever select a tail value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            _ => None,
        }
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        ExtReal::Finite(x)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => write!(f, "-inf"),
            ExtReal::Finite(x) => write!(f, "{x}"),
            ExtReal::PosInf => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtReal {
    type Err = CpintError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-inf" => Ok(ExtReal::NegInf),
            "inf" | "+inf" => Ok(ExtReal::PosInf),
            other => {
                let x: f64 = other
                    .parse()
                    .map_err(|_| CpintError::InvalidParameter(format!("not an extended real: `{s}`")))?;
                if x.is_finite() {
                    Ok(ExtReal::Finite(x))
                } else {
                    Err(CpintError::InvalidParameter(format!("use -inf/inf literals, got `{s}`")))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cli_literals() {
        assert_eq!("-inf".parse::<ExtReal>().unwrap(), ExtReal::NegInf);
        assert_eq!("inf".parse::<ExtReal>().unwrap(), ExtReal::PosInf);
        assert_eq!("2.5".parse::<ExtReal>().unwrap(), ExtReal::Finite(2.5));
        assert!("NaN".parse::<ExtReal>().is_err());
        assert!("abc".parse::<ExtReal>().is_err());
    }
}
