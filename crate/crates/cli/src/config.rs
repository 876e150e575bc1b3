use std::fs;
use std::path::{Path, PathBuf};

use bnpair_core::walls::Interval;
use bnpair_core::{CurveData, PairType, Rational};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::args::{BudgetArgs, Format, TypeArgs};
use crate::error::CliError;

pub const BUDGET_ENV: &str = "BNPAIR_BUDGET";

/// Fully resolved inputs of one run; embedded in every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decimal: Option<usize>,
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    pub ty: Option<PairType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<Interval>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Rational>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subs: Vec<PairType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_parts: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_order: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl RunConfig {
    pub fn new(command: &str, format: Format, decimal: Option<usize>) -> Self {
        RunConfig {
            command: command.to_string(),
            format,
            decimal,
            ty: None,
            curve: None,
            interval: None,
            alpha: None,
            subs: Vec::new(),
            max_parts: None,
            input: None,
            p: None,
            q: None,
            method: None,
            samples: None,
            seed: None,
            field_order: None,
            families: Vec::new(),
            budget: None,
        }
    }
}

pub fn parse_rational(token: &str) -> Result<Rational, CliError> {
    Ok(token.trim().parse::<Rational>()?)
}

/// `lo,hi` with exact rational endpoints.
pub fn parse_interval(token: &str) -> Result<Interval, CliError> {
    let parts: Vec<&str> = token.split(',').collect();
    let [lo, hi] = parts.as_slice() else {
        return Err(CliError::Usage(format!("interval '{token}' must have the form lo,hi")));
    };
    Ok(Interval::new(parse_rational(lo)?, parse_rational(hi)?)?)
}

pub fn parse_type(token: &str) -> Result<PairType, CliError> {
    Ok(token.parse::<PairType>()?)
}

/// A preset name, or else a JSON file with the curve invariants.
pub fn parse_curve(token: &str) -> Result<CurveData, CliError> {
    let path = Path::new(token);
    if path.is_file() {
        return read_json(path);
    }
    Ok(CurveData::from_preset(token)?)
}

pub fn resolve_type(args: &TypeArgs) -> Result<(PairType, CurveData), CliError> {
    let ty = parse_type(&args.ty)?;
    let curve = parse_curve(&args.curve)?;
    ty.check_on(&curve)?;
    Ok((ty, curve))
}

/// Command-line flag, then the environment, then `default`.
pub fn resolve_budget(args: &BudgetArgs, default: u64) -> Result<u64, CliError> {
    let budget = match args.budget {
        Some(b) => b,
        None => match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{BUDGET_ENV}='{v}' is not a non-negative integer")))?,
            Err(_) => default,
        },
    };
    if budget == 0 {
        return Err(CliError::Usage("budget must be positive".into()));
    }
    Ok(budget)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Json {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intervals_parse_exactly() {
        let iv = parse_interval("1/2,7/3").unwrap();
        assert_eq!(iv.lo, bnpair_core::rational::q(1, 2));
        assert_eq!(iv.hi, bnpair_core::rational::q(7, 3));
        assert!(matches!(parse_interval("0"), Err(CliError::Usage(_))));
        assert!(matches!(parse_interval("3,1"), Err(CliError::Core(_))));
    }

    #[test]
    fn malformed_rational_keeps_token() {
        let e = parse_rational("3/x").unwrap_err();
        assert!(e.to_string().contains("3/x"));
    }

    #[test]
    fn curve_presets() {
        assert_eq!(parse_curve("P1").unwrap(), CurveData::p1());
        assert_eq!(parse_curve("smooth:2:3").unwrap(), CurveData::smooth(2, 3).unwrap());
        assert!(parse_curve("nowhere").is_err());
    }
}
