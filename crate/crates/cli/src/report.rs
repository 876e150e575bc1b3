use bnpair_core::git::{AnyGrassPoint, HmVerdict, Linearization};
use bnpair_core::p1model::{PairP1, Probe, RangeReport, SearchVerdict};
use bnpair_core::stability::Feasibility;
use bnpair_core::walls::ChamberReport;
use bnpair_core::{PairType, Rational, Verdict};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

pub const TOOL: &str = "bnpair";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Envelope of every report: tool, version and resolved config, followed
/// by the command's own fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report<T> {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    #[serde(flatten)]
    pub result: T,
}

impl<T> Report<T> {
    pub fn new(config: RunConfig, result: T) -> Self {
        Report {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            config,
            result,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallsResult {
    #[serde(rename = "type")]
    pub ty: PairType,
    #[serde(flatten)]
    pub report: ChamberReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    #[serde(rename = "type")]
    pub ty: PairType,
    pub alpha: Rational,
    #[serde(flatten)]
    pub feasibility: Feasibility,
    /// Present when subtypes were given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JhResult {
    #[serde(rename = "type")]
    pub ty: PairType,
    pub alpha: Rational,
    pub decompositions: Vec<Vec<PairType>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GitResult {
    pub point: AnyGrassPoint,
    pub linearization: Linearization,
    pub verdict: HmVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct P1CheckResult {
    pub pair: PairP1,
    #[serde(rename = "type")]
    pub ty: PairType,
    pub alpha: Rational,
    pub verdict: SearchVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct P1SweepResult {
    pub pair: PairP1,
    #[serde(flatten)]
    pub report: RangeReport,
}

/// Flat rows for spreadsheet import.
pub trait CsvTable {
    fn header(&self) -> Vec<&'static str>;
    fn rows(&self) -> Vec<Vec<String>>;
}

fn opt<T: ToString>(v: Option<&T>) -> String {
    v.map(ToString::to_string).unwrap_or_default()
}

fn joined<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
}

impl CsvTable for WallsResult {
    fn header(&self) -> Vec<&'static str> {
        vec!["kind", "lo", "hi", "hi_closed", "witnesses"]
    }

    /// Walls and chambers interleaved in increasing order; a wall has
    /// `lo = hi = alpha`.
    fn rows(&self) -> Vec<Vec<String>> {
        let mut out = Vec::new();
        let mut walls = self.report.walls.iter().peekable();
        for c in &self.report.chambers {
            while let Some(w) = walls.next_if(|w| w.alpha <= c.lo) {
                let a = w.alpha.to_string();
                out.push(vec!["wall".into(), a.clone(), a, "true".into(), joined(&w.witnesses)]);
            }
            out.push(vec![
                "chamber".into(),
                c.lo.to_string(),
                c.hi.to_string(),
                c.hi_closed.to_string(),
                String::new(),
            ]);
        }
        for w in walls {
            let a = w.alpha.to_string();
            out.push(vec!["wall".into(), a.clone(), a, "true".into(), joined(&w.witnesses)]);
        }
        out
    }
}

impl CsvTable for CheckResult {
    fn header(&self) -> Vec<&'static str> {
        vec!["type", "alpha", "feasible_semistable", "feasible_stable", "violated", "verdict", "witnesses"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let f = &self.feasibility;
        vec![vec![
            self.ty.to_string(),
            self.alpha.to_string(),
            f.feasible_semistable.to_string(),
            f.feasible_stable.to_string(),
            joined(&f.violated),
            opt(self.verdict.as_ref().map(|v| &v.kind)),
            self.verdict
                .as_ref()
                .map(|v| joined(v.witnesses.iter().map(|w| format!("{}:{}", w.ty, w.delta))))
                .unwrap_or_default(),
        ]]
    }
}

impl CsvTable for JhResult {
    fn header(&self) -> Vec<&'static str> {
        vec!["index", "parts", "factors"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.decompositions
            .iter()
            .enumerate()
            .map(|(i, d)| vec![i.to_string(), d.len().to_string(), joined(d)])
            .collect()
    }
}

impl CsvTable for GitResult {
    fn header(&self) -> Vec<&'static str> {
        vec!["method", "kind", "exhaustive", "checked", "min_value", "witnesses"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let v = &self.verdict;
        vec![vec![
            v.method.clone(),
            v.kind.to_string(),
            v.exhaustive.to_string(),
            v.checked.to_string(),
            opt(v.min_value.as_ref()),
            v.witnesses.len().to_string(),
        ]]
    }
}

fn search_columns(v: &SearchVerdict) -> Vec<String> {
    vec![
        v.kind.to_string(),
        v.family_relative.to_string(),
        v.family_size.to_string(),
        opt(v.min_delta.as_ref()),
        opt(v.certificate.as_ref().map(|c| &c.ty)),
        opt(v.certificate.as_ref().map(|c| &c.family)),
    ]
}

const SEARCH_HEADER: [&str; 6] = ["kind", "family_relative", "family_size", "min_delta", "certificate", "family"];

impl CsvTable for P1CheckResult {
    fn header(&self) -> Vec<&'static str> {
        let mut h = vec!["type", "alpha"];
        h.extend(SEARCH_HEADER);
        h
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let mut row = vec![self.ty.to_string(), self.alpha.to_string()];
        row.extend(search_columns(&self.verdict));
        vec![row]
    }
}

impl CsvTable for P1SweepResult {
    fn header(&self) -> Vec<&'static str> {
        let mut h = vec!["at", "lo", "hi", "sample"];
        h.extend(SEARCH_HEADER);
        h
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.report
            .entries
            .iter()
            .map(|e| {
                let mut row = match &e.probe {
                    Probe::Chamber { chamber } => vec!["chamber".into(), chamber.lo.to_string(), chamber.hi.to_string()],
                    Probe::Wall { alpha } => vec!["wall".into(), alpha.to_string(), alpha.to_string()],
                };
                row.push(e.sample.to_string());
                row.extend(search_columns(&e.verdict));
                row
            })
            .collect()
    }
}

/// Replaces every `p/q` string with its decimal expansion (`~` marks a
/// truncated value). The result is for reading, not for re-parsing.
pub fn decimalize(value: &mut serde_json::Value, digits: usize) {
    match value {
        serde_json::Value::String(s) if s.contains('/') => {
            if let Ok(r) = s.parse::<Rational>() {
                *s = r.to_decimal_string(digits);
            }
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(|v| decimalize(v, digits)),
        serde_json::Value::Object(map) => map.values_mut().for_each(|v| decimalize(v, digits)),
        _ => {}
    }
}
