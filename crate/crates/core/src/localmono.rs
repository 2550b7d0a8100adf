//! Monogenicity at primes, common index divisors, monogenicity over
//! geometric points, and the aggregated classification over `Z`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::algebra::StructureAlgebra;
use crate::artin::{decompose_mod, fiber_monogenic};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactring::fpmat::mul_mod;
use crate::exactring::{check_prime, content_primes, primes_below};
use crate::indexform::{index_form, IndexForm};
use crate::report::{
    ArtinCrossCheck, FactorSummary, GlobalStatus, GlobalVerdict, MonogenicityReport, SearchSummary,
};
use crate::search::search_with_form;
use crate::twisted::base_z_twisted_note;

/// Largest prime scanned when looking for a congruence obstruction to unit
/// values, and the per-prime enumeration limit for that scan.
const OBSTRUCTION_PRIME_BOUND: u64 = 50;
const OBSTRUCTION_ENUM_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalVerdict {
    pub p: u64,
    pub monogenic_at_p: bool,
    /// Full coordinate vector over `F_p`; coordinates absent from the form
    /// are 0.
    pub witness: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometricVerdict {
    pub monogenic_over_geometric_points: bool,
    pub vanishing_fiber_primes: Vec<u64>,
}

/// An index form reduced mod `p`, restricted to the variables that occur.
struct FpForm {
    p: u64,
    n: usize,
    vars: Vec<usize>,
    max_exp: Vec<u32>,
    terms: Vec<(u64, Vec<u32>)>,
}

impl FpForm {
    fn new(form: &IndexForm, p: u64) -> Result<Self> {
        let poly = form.form();
        if !poly.base().is_integer() {
            return Err(Error::NotIntegerBase(poly.base().to_string()));
        }
        check_prime(p)?;
        let reduced = poly.reduce_mod(p)?;
        let vars = reduced.occurring_vars();
        let ring = reduced.base();
        let terms: Vec<(u64, Vec<u32>)> = reduced
            .terms()
            .map(|(m, c)| (ring.residue(c).unwrap_or(0), vars.iter().map(|&i| m.exps()[i]).collect()))
            .collect();
        let max_exp = (0..vars.len()).map(|s| terms.iter().map(|t| t.1[s]).max().unwrap_or(0)).collect();
        Ok(FpForm { p, n: poly.nvars(), vars, max_exp, terms })
    }

    fn points(&self) -> BigUint {
        BigUint::from(self.p).pow(self.vars.len() as u32)
    }

    fn check_budget(&self, cap: u64) -> Result<()> {
        let needed = self.points();
        if needed > BigUint::from(cap) {
            return Err(Error::BudgetExceeded { needed: needed.to_string(), cap });
        }
        Ok(())
    }

    fn eval(&self, x: &[u64], powers: &mut [Vec<u64>]) -> u64 {
        let p = self.p;
        for (s, &xs) in x.iter().enumerate() {
            let pw = &mut powers[s];
            pw[0] = 1;
            for e in 1..pw.len() {
                pw[e] = mul_mod(pw[e - 1], xs, p);
            }
        }
        let mut acc = 0u64;
        for (c, exps) in &self.terms {
            let mut t = *c;
            for (s, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t = mul_mod(t, powers[s][e as usize], p);
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }

    /// Visits every point of `F_p^m`, first coordinate fastest, until `visit`
    /// returns `false`.
    fn scan(&self, mut visit: impl FnMut(&[u64], u64) -> bool) {
        let m = self.vars.len();
        let mut powers: Vec<Vec<u64>> = self.max_exp.iter().map(|&e| vec![0; e as usize + 1]).collect();
        let mut x = vec![0u64; m];
        loop {
            let v = self.eval(&x, &mut powers);
            if !visit(&x, v) {
                return;
            }
            let mut s = 0;
            loop {
                if s == m {
                    return;
                }
                x[s] += 1;
                if x[s] < self.p {
                    break;
                }
                x[s] = 0;
                s += 1;
            }
        }
    }

    fn full_vector(&self, x: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.n];
        for (&i, &xi) in self.vars.iter().zip(x) {
            out[i] = xi;
        }
        out
    }
}

fn require_integer(alg: &StructureAlgebra) -> Result<()> {
    if alg.base().is_integer() {
        Ok(())
    } else {
        Err(Error::NotIntegerBase(alg.base().to_string()))
    }
}

/// Brute-force test for a point of `F_p^m` where the reduced form is
/// nonzero, `m` the number of variables occurring in it.
pub fn verdict_from_form(form: &IndexForm, p: u64, cap: u64) -> Result<LocalVerdict> {
    let f = FpForm::new(form, p)?;
    if f.terms.is_empty() {
        return Ok(LocalVerdict { p, monogenic_at_p: false, witness: None });
    }
    f.check_budget(cap)?;
    let mut witness = None;
    f.scan(|x, v| {
        if v != 0 {
            witness = Some(f.full_vector(x));
            false
        } else {
            true
        }
    });
    Ok(LocalVerdict { p, monogenic_at_p: witness.is_some(), witness })
}

pub fn is_monogenic_at_prime(alg: &StructureAlgebra, p: u64, cfg: &Config) -> Result<LocalVerdict> {
    require_integer(alg)?;
    verdict_from_form(&index_form(alg)?, p, cfg.max_enum)
}

/// Values of the index form on `F_p^n`, as residues in `0..p`.
pub fn value_set_mod_p(form: &IndexForm, p: u64, cap: u64) -> Result<BTreeSet<u64>> {
    let f = FpForm::new(form, p)?;
    let mut out = BTreeSet::new();
    if f.terms.is_empty() {
        out.insert(0);
        return Ok(out);
    }
    f.check_budget(cap)?;
    f.scan(|_, v| {
        out.insert(v);
        out.len() < p as usize
    });
    Ok(out)
}

fn prime_list(primes: BTreeSet<num_bigint::BigInt>) -> Result<Vec<u64>> {
    primes.into_iter().map(|p| p.to_u64().ok_or_else(|| Error::PrimeOutOfRange(p.to_string()))).collect()
}

fn common_index_divisors_of(form: &IndexForm, cap: u64) -> Result<(Vec<u64>, Vec<LocalVerdict>)> {
    let n = form.rank() as u64;
    let mut verdicts = Vec::new();
    for p in primes_below(n) {
        verdicts.push(verdict_from_form(form, p, cap)?);
    }
    let mut cids: BTreeSet<u64> = verdicts.iter().filter(|v| !v.monogenic_at_p).map(|v| v.p).collect();
    // A prime p >= n can only fail through a vanishing fiber.
    if !form.is_zero() {
        for p in prime_list(content_primes(form.form())?)? {
            if p >= n {
                verdicts.push(LocalVerdict { p, monogenic_at_p: false, witness: None });
            }
            cids.insert(p);
        }
    }
    Ok((cids.into_iter().collect(), verdicts))
}

/// Primes at which the algebra is not monogenic. Candidates are the primes
/// below the rank, checked by enumeration, and the primes dividing every
/// coefficient of the index form.
pub fn common_index_divisors(alg: &StructureAlgebra, cfg: &Config) -> Result<Vec<u64>> {
    require_integer(alg)?;
    Ok(common_index_divisors_of(&index_form(alg)?, cfg.max_enum)?.0)
}

fn geometric_of(form: &IndexForm) -> Result<GeometricVerdict> {
    if form.is_zero() {
        return Err(Error::ZeroIndexForm);
    }
    let primes = prime_list(content_primes(form.form())?)?;
    Ok(GeometricVerdict { monogenic_over_geometric_points: primes.is_empty(), vanishing_fiber_primes: primes })
}

/// Fibers over which the index form vanishes identically.
pub fn geometric_point_verdict(alg: &StructureAlgebra) -> Result<GeometricVerdict> {
    require_integer(alg)?;
    geometric_of(&index_form(alg)?)
}

/// Smallest prime `p` (below a small bound) such that the form never takes
/// a value congruent to `±1` mod `p`.
fn unit_value_obstruction(form: &IndexForm) -> Option<u64> {
    for p in primes_below(OBSTRUCTION_PRIME_BOUND).into_iter().filter(|&p| p >= 5) {
        match value_set_mod_p(form, p, OBSTRUCTION_ENUM_LIMIT) {
            Ok(values) if !values.contains(&1) && !values.contains(&(p - 1)) => return Some(p),
            _ => {}
        }
    }
    None
}

fn artin_crosscheck(alg: &StructureAlgebra, form: &IndexForm, cfg: &Config) -> Result<Vec<ArtinCrossCheck>> {
    let mut out = Vec::new();
    for p in primes_below(cfg.artin_bound.saturating_add(1)) {
        let dec = decompose_mod(alg, p)?;
        let fiber = fiber_monogenic(&dec);
        let brute = match verdict_from_form(form, p, cfg.max_enum) {
            Ok(v) => Some(v.monogenic_at_p),
            Err(Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        out.push(ArtinCrossCheck {
            p,
            factors: dec
                .factors
                .iter()
                .map(|f| FactorSummary { dim: f.dim, f: f.f, t: f.t, nilpotency_index: f.nilpotency_index })
                .collect(),
            fiber_monogenic: fiber,
            brute_force: brute,
            agree: brute.map(|b| b == fiber),
        });
    }
    Ok(out)
}

/// Full classification of an integer algebra: global search up to
/// `cfg.height`, Zariski-local and geometric verdicts, per-prime details,
/// the Artinian cross-check for primes up to `cfg.artin_bound`, and notes.
pub fn classify(alg: &StructureAlgebra, cfg: &Config) -> Result<MonogenicityReport> {
    require_integer(alg)?;
    let form = index_form(alg)?;
    let geometric = geometric_of(&form)?;
    let (cids, primes) = common_index_divisors_of(&form, cfg.max_enum)?;
    let crosscheck = artin_crosscheck(alg, &form, cfg)?;
    let mut notes = Vec::new();

    let search = match search_with_form(alg, &form, cfg.height, cfg) {
        Ok(r) => Some(r),
        Err(Error::BudgetExceeded { needed, cap }) => {
            notes.push(format!("search skipped: {needed} points exceed the cap of {cap}"));
            None
        }
        Err(e) => return Err(e),
    };

    let global = if let Some(w) = search.as_ref().and_then(|s| s.classes.first()) {
        GlobalVerdict { status: GlobalStatus::Monogenic, witness: Some(w.clone()), reason: None }
    } else if let Some(&p) = geometric.vanishing_fiber_primes.first() {
        GlobalVerdict {
            status: GlobalStatus::NotMonogenic,
            witness: None,
            reason: Some(format!("not monogenic over geometric points (fiber over {p})")),
        }
    } else if let Some(&p) = cids.first() {
        GlobalVerdict { status: GlobalStatus::NotMonogenic, witness: None, reason: Some(format!("common index divisor {p}")) }
    } else {
        let reason = match &search {
            Some(_) => format!("no monogenerator of height <= {}", cfg.height),
            None => "search not run".to_string(),
        };
        if let Some(p) = unit_value_obstruction(&form) {
            notes.push(format!("local obstruction: values mod {p} never ±1"));
        }
        GlobalVerdict { status: GlobalStatus::Unknown, witness: None, reason: Some(reason) }
    };
    for c in crosscheck.iter().filter(|c| c.agree == Some(false)) {
        notes.push(format!("Artinian criterion disagrees with brute force at p = {}", c.p));
    }

    let mut report = MonogenicityReport {
        label: alg.label().to_string(),
        rank: alg.rank(),
        index_form: form.form().to_string(),
        global,
        zariski_local: cids.is_empty(),
        common_index_divisors: cids,
        geometric: geometric.monogenic_over_geometric_points,
        vanishing_fibers: geometric.vanishing_fiber_primes,
        primes,
        artin_crosscheck: crosscheck,
        search: search.map(|s| SearchSummary {
            height: s.height,
            witnesses: s.witnesses.len(),
            classes: s.classes,
            exhausted: s.exhausted,
        }),
        notes,
    };
    base_z_twisted_note(&mut report, false);
    Ok(report)
}
