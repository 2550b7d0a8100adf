use std::fmt::Write;

use monogen_core::artin::{fiber_monogenic, ArtinDecomposition};
use monogen_core::report::{GlobalStatus, MonogenicityReport};
use monogen_core::search::SearchResult;
use monogen_core::twisted::TwistedCurveVerdict;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn tuple<T: ToString>(v: &[T]) -> String {
    format!("({})", v.iter().map(T::to_string).collect::<Vec<_>>().join(", "))
}

fn list<T: ToString>(v: &[T]) -> String {
    if v.is_empty() {
        "none".into()
    } else {
        v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
    }
}

pub fn report(r: &MonogenicityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "algebra: {} (rank {})", r.label, r.rank);
    let _ = writeln!(s, "index form: {}", r.index_form);
    let global = match r.global.status {
        GlobalStatus::Monogenic => format!(
            "monogenic, witness {}",
            r.global.witness.as_deref().map(tuple).unwrap_or_default()
        ),
        GlobalStatus::NotMonogenic => {
            format!("not monogenic ({})", r.global.reason.as_deref().unwrap_or(""))
        }
        GlobalStatus::Unknown => format!("unknown ({})", r.global.reason.as_deref().unwrap_or("")),
    };
    let _ = writeln!(s, "global: {global}");
    let _ = writeln!(
        s,
        "zariski-local: {} (common index divisors: {})",
        yes_no(r.zariski_local),
        list(&r.common_index_divisors)
    );
    let _ = writeln!(
        s,
        "geometric points: {} (vanishing fibers: {})",
        yes_no(r.geometric),
        list(&r.vanishing_fibers)
    );
    if !r.primes.is_empty() {
        let _ = writeln!(s, "primes:");
        for v in &r.primes {
            match &v.witness {
                Some(w) => {
                    let _ = writeln!(s, "  p = {}: monogenic, witness {}", v.p, tuple(w));
                }
                None => {
                    let _ = writeln!(s, "  p = {}: not monogenic", v.p);
                }
            }
        }
    }
    if !r.artin_crosscheck.is_empty() {
        let _ = writeln!(s, "artinian cross-check:");
        for c in &r.artin_crosscheck {
            let factors: Vec<String> = c.factors.iter().map(|f| format!("(dim {}, f {}, t {})", f.dim, f.f, f.t)).collect();
            let brute = match c.brute_force {
                Some(b) => yes_no(b),
                None => "skipped",
            };
            let _ = writeln!(
                s,
                "  p = {}: {}; criterion {}, brute force {}",
                c.p,
                factors.join(" "),
                yes_no(c.fiber_monogenic),
                brute
            );
        }
    }
    if let Some(sr) = &r.search {
        let _ = writeln!(
            s,
            "search: height {}, {} witnesses, {} classes{}",
            sr.height,
            sr.witnesses,
            sr.classes.len(),
            if sr.exhausted { ", exhausted" } else { "" }
        );
    }
    if !r.notes.is_empty() {
        let _ = writeln!(s, "notes:");
        for n in &r.notes {
            let _ = writeln!(s, "  - {n}");
        }
    }
    s
}

pub fn artin(label: &str, d: &ArtinDecomposition) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "algebra: {label}, p = {}", d.p);
    for (i, f) in d.factors.iter().enumerate() {
        let _ = writeln!(
            s,
            "  factor {}: dim {}, f {}, t {}, nilpotency index {}",
            i + 1,
            f.dim,
            f.f,
            f.t,
            f.nilpotency_index
        );
    }
    let _ = writeln!(s, "fiber monogenic: {}", yes_no(fiber_monogenic(d)));
    s
}

pub fn search(label: &str, r: &SearchResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "algebra: {label}, height {}", r.height);
    let _ = writeln!(s, "witnesses: {}", r.witnesses.len());
    for w in &r.witnesses {
        let _ = writeln!(s, "  {}", tuple(w));
    }
    let _ = writeln!(s, "classes: {}", r.classes.len());
    for c in &r.classes {
        let _ = writeln!(s, "  {}", tuple(c));
    }
    let _ = writeln!(s, "exhausted: {}", yes_no(r.exhausted));
    s
}

pub fn twisted(v: &TwistedCurveVerdict) -> String {
    format!(
        "degree {}, genus {} over genus {}: triangular {}, {}\n",
        v.degree,
        v.genus_source,
        v.genus_target,
        v.triangular,
        v.summary()
    )
}
