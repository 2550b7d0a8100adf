//! The aggregated monogenicity report and its JSON schema check.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::localmono::LocalVerdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GlobalStatus {
    Monogenic,
    NotMonogenic,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalVerdict {
    pub status: GlobalStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSummary {
    pub dim: usize,
    pub f: usize,
    pub t: usize,
    pub nilpotency_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtinCrossCheck {
    pub p: u64,
    pub factors: Vec<FactorSummary>,
    pub fiber_monogenic: bool,
    /// Brute-force verdict; absent when the enumeration exceeded the cap.
    pub brute_force: Option<bool>,
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub height: u64,
    pub witnesses: usize,
    pub classes: Vec<Vec<i64>>,
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonogenicityReport {
    pub label: String,
    pub rank: usize,
    pub index_form: String,
    pub global: GlobalVerdict,
    pub zariski_local: bool,
    pub common_index_divisors: Vec<u64>,
    pub geometric: bool,
    pub vanishing_fibers: Vec<u64>,
    pub primes: Vec<LocalVerdict>,
    pub artin_crosscheck: Vec<ArtinCrossCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSummary>,
    pub notes: Vec<String>,
}

impl MonogenicityReport {
    /// Monogenic implies Zariski-locally monogenic implies monogenic over
    /// geometric points, plus internal consistency of the lists.
    pub fn check_implications(&self) -> Result<(), String> {
        if self.global.status == GlobalStatus::Monogenic && !self.zariski_local {
            return Err("monogenic but not Zariski-locally monogenic".into());
        }
        if self.zariski_local && !self.geometric {
            return Err("Zariski-locally monogenic but not monogenic over geometric points".into());
        }
        if self.zariski_local != self.common_index_divisors.is_empty() {
            return Err("Zariski-local verdict disagrees with the common index divisors".into());
        }
        if self.geometric != self.vanishing_fibers.is_empty() {
            return Err("geometric verdict disagrees with the vanishing fibers".into());
        }
        if self.vanishing_fibers.iter().any(|p| !self.common_index_divisors.contains(p)) {
            return Err("a vanishing fiber is not a common index divisor".into());
        }
        if self.artin_crosscheck.iter().any(|c| c.agree == Some(false)) {
            return Err("Artinian cross-check disagrees with brute force".into());
        }
        match (&self.global.status, &self.global.witness) {
            (GlobalStatus::Monogenic, None) => Err("monogenic without a witness".into()),
            (GlobalStatus::Monogenic, Some(w)) if w.len() != self.rank => Err("witness has the wrong length".into()),
            (GlobalStatus::NotMonogenic, _) if self.zariski_local => {
                Err("not monogenic without a local obstruction".into())
            }
            _ => Ok(()),
        }
    }
}

fn expect<'a>(obj: &'a serde_json::Map<String, Value>, key: &str, pred: fn(&Value) -> bool, what: &str) -> Result<&'a Value, String> {
    match obj.get(key) {
        Some(v) if pred(v) => Ok(v),
        Some(_) => Err(format!("field `{key}` must be {what}")),
        None => Err(format!("missing field `{key}`")),
    }
}

fn is_prime_list(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().all(|x| x.as_u64().is_some_and(|p| p >= 2)))
}

/// Validates a JSON report: required fields and their types, then the
/// implication diagram on the decoded report.
pub fn validate_report_json(v: &Value) -> Result<MonogenicityReport, String> {
    let obj = v.as_object().ok_or("report must be an object")?;
    let global = expect(obj, "global", Value::is_object, "an object")?;
    let g = global.as_object().unwrap();
    expect(g, "status", |s| matches!(s.as_str(), Some("monogenic" | "not_monogenic" | "unknown")), "monogenic, not_monogenic or unknown")?;
    if let Some(w) = g.get("witness") {
        if !w.as_array().is_some_and(|a| a.iter().all(Value::is_i64)) {
            return Err("field `witness` must be an integer array".into());
        }
    }
    expect(obj, "zariski_local", Value::is_boolean, "a boolean")?;
    expect(obj, "geometric", Value::is_boolean, "a boolean")?;
    expect(obj, "common_index_divisors", is_prime_list, "a list of primes")?;
    expect(obj, "vanishing_fibers", is_prime_list, "a list of primes")?;
    expect(obj, "primes", Value::is_array, "an array")?;
    expect(obj, "artin_crosscheck", Value::is_array, "an array")?;
    expect(obj, "notes", |n| n.as_array().is_some_and(|a| a.iter().all(Value::is_string)), "a list of strings")?;
    let report: MonogenicityReport = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
    report.check_implications()?;
    Ok(report)
}
