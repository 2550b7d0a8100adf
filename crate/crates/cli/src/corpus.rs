//! Fixture corpus: each `NAME.expected.json` names an algebra file and lists
//! checks with expected values and a provenance field.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::path::Path;

use monogen_core::artin::{decompose, fiber_monogenic, FpAlgebra};
use monogen_core::indexform::{check_monogenerator, index_form};
use monogen_core::localmono::{
    common_index_divisors, geometric_point_verdict, is_monogenic_at_prime, value_set_mod_p,
};
use monogen_core::report::GlobalStatus;
use monogen_core::search::search_monogenerators;
use monogen_core::twisted::base_z_twisted_note;
use monogen_core::{BaseRing, Config, Error, Scalar, SparsePoly, StructureAlgebra};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error_kind;
use crate::input::parse_input;

#[derive(Debug, Clone, Deserialize)]
pub struct ExpectedFile {
    pub fixture: String,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Check {
    pub check: String,
    #[serde(default)]
    pub provenance: String,
    #[serde(flatten)]
    pub fields: serde_json::Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub fixture: String,
    pub check: String,
    pub provenance: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

type Outcome = std::result::Result<(), String>;

fn field<'a>(c: &'a Check, key: &str) -> std::result::Result<&'a Value, String> {
    c.fields.get(key).ok_or_else(|| format!("check is missing `{key}`"))
}

fn u64_field(c: &Check, key: &str) -> std::result::Result<u64, String> {
    field(c, key)?.as_u64().ok_or_else(|| format!("`{key}` must be a non-negative integer"))
}

fn bool_field(c: &Check, key: &str) -> std::result::Result<bool, String> {
    field(c, key)?.as_bool().ok_or_else(|| format!("`{key}` must be a boolean"))
}

fn str_field<'a>(c: &'a Check, key: &str) -> std::result::Result<&'a str, String> {
    field(c, key)?.as_str().ok_or_else(|| format!("`{key}` must be a string"))
}

fn u64_list(v: &Value) -> std::result::Result<Vec<u64>, String> {
    v.as_array()
        .and_then(|a| a.iter().map(Value::as_u64).collect())
        .ok_or_else(|| "expected a list of non-negative integers".to_string())
}

fn i64_list(v: &Value) -> std::result::Result<Vec<i64>, String> {
    v.as_array()
        .and_then(|a| a.iter().map(Value::as_i64).collect())
        .ok_or_else(|| "expected a list of integers".to_string())
}

fn scalar(base: BaseRing, v: &Value) -> std::result::Result<Scalar, String> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err("scalars are given as integers or strings".into()),
    };
    SparsePoly::parse(base, 0, &text).map(|p| p.constant_term()).map_err(|e| e.to_string())
}

fn compare<T: PartialEq + std::fmt::Debug>(expected: T, got: T) -> Outcome {
    if expected == got {
        Ok(())
    } else {
        Err(format!("expected {expected:?}, got {got:?}"))
    }
}

fn err(e: Error) -> String {
    format!("{}: {e}", error_kind(&e))
}

fn fp_algebra(alg: &StructureAlgebra, p: u64) -> std::result::Result<FpAlgebra, String> {
    FpAlgebra::reduce(alg, p).map_err(err)
}

fn describe(c: &Check) -> String {
    let mut s = c.check.clone();
    for key in ["p", "height"] {
        if let Some(v) = c.fields.get(key) {
            let _ = write!(s, " {key}={v}");
        }
    }
    s
}

fn run_check(alg: &StructureAlgebra, c: &Check, cfg: &Config) -> Outcome {
    let base = alg.base();
    match c.check.as_str() {
        "rank" => compare(u64_field(c, "expected")?, alg.rank() as u64),
        "index_form" => {
            let form = index_form(alg).map_err(err)?;
            let expected = SparsePoly::parse(base, alg.rank(), str_field(c, "expected")?).map_err(err)?;
            let up_to_sign = c.fields.get("up_to_sign").and_then(Value::as_bool).unwrap_or(false);
            if form.form() == &expected || (up_to_sign && form.form() == &-&expected) {
                Ok(())
            } else {
                Err(format!("expected {expected}, got {}", form.form()))
            }
        }
        "index_form_mod" => {
            let p = u64_field(c, "p")?;
            let form = index_form(alg).map_err(err)?.reduce_mod(p).map_err(err)?;
            compare(str_field(c, "expected")?.to_string(), form.form().to_string())
        }
        "discriminant" => {
            let d = alg.discriminant().map_err(err)?;
            let expected = match field(c, "expected")? {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            compare(expected, d.to_string())
        }
        "common_index_divisors" => {
            compare(u64_list(field(c, "expected")?)?, common_index_divisors(alg, cfg).map_err(err)?)
        }
        "geometric" => {
            let g = geometric_point_verdict(alg).map_err(err)?;
            compare(bool_field(c, "expected")?, g.monogenic_over_geometric_points)?;
            match c.fields.get("vanishing_fibers") {
                Some(v) => compare(u64_list(v)?, g.vanishing_fiber_primes),
                None => Ok(()),
            }
        }
        "local" => {
            let v = is_monogenic_at_prime(alg, u64_field(c, "p")?, cfg).map_err(err)?;
            compare(bool_field(c, "expected")?, v.monogenic_at_p)?;
            match c.fields.get("witness") {
                Some(w) => compare(Some(u64_list(w)?), v.witness),
                None => Ok(()),
            }
        }
        "value_set" => {
            let p = u64_field(c, "p")?;
            let form = index_form(alg).map_err(err)?;
            let got = value_set_mod_p(&form, p, cfg.max_enum).map_err(err)?;
            compare(u64_list(field(c, "expected")?)?.into_iter().collect::<BTreeSet<_>>(), got)
        }
        "artin" => {
            let a = fp_algebra(alg, u64_field(c, "p")?)?;
            let d = decompose(&a).map_err(err)?;
            d.check(&a)?;
            if let Some(v) = c.fields.get("factors") {
                let expected: Vec<Vec<u64>> = v
                    .as_array()
                    .and_then(|a| a.iter().map(|x| u64_list(x).ok()).collect())
                    .ok_or("`factors` must list [dim, f, t] triples")?;
                let got: Vec<Vec<u64>> =
                    d.factors.iter().map(|f| vec![f.dim as u64, f.f as u64, f.t as u64]).collect();
                compare(expected, got)?;
            }
            match c.fields.get("fiber_monogenic") {
                Some(v) => compare(v.as_bool(), Some(fiber_monogenic(&d))),
                None => Ok(()),
            }
        }
        "search" => {
            let r = search_monogenerators(alg, u64_field(c, "height")?, cfg).map_err(err)?;
            compare(u64_field(c, "witnesses")?, r.witnesses.len() as u64)?;
            compare(bool_field(c, "exhausted")?, r.exhausted)?;
            match c.fields.get("classes") {
                Some(v) => {
                    let expected: Vec<Vec<i64>> = v
                        .as_array()
                        .and_then(|a| a.iter().map(|x| i64_list(x).ok()).collect())
                        .ok_or("`classes` must list integer vectors")?;
                    compare(expected, r.classes)
                }
                None => Ok(()),
            }
        }
        "classify" => {
            let cfg = cfg.clone().with_height(u64_field(c, "height")?);
            let mut r = monogen_core::localmono::classify(alg, &cfg).map_err(err)?;
            let cited = c.fields.get("cited_not_monogenic").and_then(Value::as_bool).unwrap_or(false);
            base_z_twisted_note(&mut r, cited);
            r.check_implications()?;
            let status = serde_json::to_value(r.global.status).expect("serializable");
            compare(field(c, "status")?, &status)?;
            if let Some(v) = c.fields.get("zariski_local") {
                compare(v.as_bool(), Some(r.zariski_local))?;
            }
            if let Some(v) = c.fields.get("geometric") {
                compare(v.as_bool(), Some(r.geometric))?;
            }
            if let Some(v) = c.fields.get("reason") {
                compare(v.as_str(), r.global.reason.as_deref())?;
            }
            if let Some(v) = c.fields.get("witness") {
                compare(Some(i64_list(v)?), r.global.witness.clone())?;
            }
            if let Some(v) = c.fields.get("notes") {
                let wanted = v.as_array().ok_or("`notes` must be a list")?;
                for n in wanted {
                    let n = n.as_str().ok_or("notes are strings")?;
                    if !r.notes.iter().any(|x| x == n) {
                        return Err(format!("missing note {n:?}; notes: {:?}", r.notes));
                    }
                }
            }
            if r.global.status == GlobalStatus::Monogenic {
                let w = r.global.witness.as_ref().ok_or("monogenic without witness")?;
                let point: Vec<Scalar> = w.iter().map(|&x| base.from_int(x)).collect();
                if !check_monogenerator(alg, &point).map_err(err)?.is_monogenerator {
                    return Err("reported witness does not re-certify".into());
                }
            }
            Ok(())
        }
        "monogenerator" => {
            let point = field(c, "point")?
                .as_array()
                .ok_or("`point` must be a list")?
                .iter()
                .map(|v| scalar(base, v))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let chk = check_monogenerator(alg, &point).map_err(err)?;
            compare(bool_field(c, "expected")?, chk.is_monogenerator)?;
            match c.fields.get("value") {
                Some(v) => compare(scalar(base, v)?, chk.value),
                None => Ok(()),
            }
        }
        other => Err(format!("unknown check {other:?}")),
    }
}

fn fixture_results(dir: &Path, manifest: &ExpectedFile, name: &str, cfg: &Config) -> Vec<CheckResult> {
    let parsed = parse_input(&dir.join(&manifest.fixture));
    manifest.checks
        .iter()
        .map(|c| {
            let outcome = match (&parsed, c.check.as_str()) {
                (Err(e), "parse_error") => compare(str_field(c, "expected").map(str::to_string), Ok(error_kind(e))),
                (Ok(_), "parse_error") => Err("fixture parsed successfully".into()),
                (Err(e), _) => Err(format!("fixture failed to load: {}", err(e.clone()))),
                (Ok(alg), _) => run_check(alg, c, cfg),
            };
            CheckResult {
                fixture: name.to_string(),
                check: describe(c),
                provenance: c.provenance.clone(),
                passed: outcome.is_ok(),
                detail: outcome.err().unwrap_or_default(),
            }
        })
        .collect()
}

/// Runs every `*.expected.json` file in `dir`, in file-name order.
pub fn run_corpus(dir: &Path, cfg: &Config) -> Result<Vec<CheckResult>, Error> {
    let io = |e: std::io::Error| Error::Parse { path: dir.display().to_string(), message: e.to_string() };
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok())
        .filter_map(|e| e.file_name().into_string().ok())
        .filter(|n| n.ends_with(".expected.json"))
        .collect();
    names.sort();
    let mut out = Vec::new();
    for file in names {
        let path = dir.join(&file);
        let name = file.trim_end_matches(".expected.json").to_string();
        let text = std::fs::read_to_string(&path).map_err(io)?;
        let manifest: ExpectedFile = serde_json::from_str(&text)
            .map_err(|e| Error::Parse { path: path.display().to_string(), message: e.to_string() })?;
        out.extend(fixture_results(dir, &manifest, &name, cfg));
    }
    Ok(out)
}

pub fn table(results: &[CheckResult]) -> String {
    let fw = results.iter().map(|r| r.fixture.len()).max().unwrap_or(0);
    let cw = results.iter().map(|r| r.check.len()).max().unwrap_or(0);
    let mut s = String::new();
    for r in results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        let line = format!("{status}  {:<fw$}  {:<cw$}  {}", r.fixture, r.check, r.provenance);
        let _ = writeln!(s, "{}", line.trim_end());
        if !r.passed {
            let _ = writeln!(s, "      {}", r.detail);
        }
    }
    let passed = results.iter().filter(|r| r.passed).count();
    let _ = writeln!(s, "{passed}/{} checks passed", results.len());
    s
}
