//! Numerical constraints on twisted monogenicity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{GlobalStatus, MonogenicityReport};

/// Prefix shared by all notes added by [`base_z_twisted_note`].
pub const TWISTED_NOTE_PREFIX: &str = "twisted: ";

/// Constraint on a degree `n` cover `C -> D` of smooth projective curves
/// embedding into a line bundle `E` over `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedCurveVerdict {
    pub degree: u32,
    pub genus_source: u32,
    pub genus_target: u32,
    pub triangular: i64,
    pub steinitz_degree: i64,
    pub divisible: bool,
    pub line_bundle_degree: Option<i64>,
}

/// `steinitz_degree = 1 - g(C) - n (1 - g(D))` must be divisible by
/// `n(n-1)/2`, and then `deg E = -steinitz_degree / (n(n-1)/2)`.
pub fn curve_twisted_constraint(n: u32, genus_source: u32, genus_target: u32) -> Result<TwistedCurveVerdict> {
    if n <= 1 {
        return Err(Error::DegenerateDegree(n as i64));
    }
    let (nn, gc, gd) = (n as i64, genus_source as i64, genus_target as i64);
    let triangular = nn * (nn - 1) / 2;
    let steinitz_degree = 1 - gc - nn * (1 - gd);
    let divisible = steinitz_degree % triangular == 0;
    Ok(TwistedCurveVerdict {
        degree: n,
        genus_source,
        genus_target,
        triangular,
        steinitz_degree,
        divisible,
        line_bundle_degree: divisible.then(|| -steinitz_degree / triangular),
    })
}

impl TwistedCurveVerdict {
    pub fn summary(&self) -> String {
        match self.line_bundle_degree {
            Some(d) => format!(
                "divisible: steinitz degree {} is a multiple of {}; line bundle degree {d}",
                self.steinitz_degree, self.triangular
            ),
            None => format!(
                "not divisible: steinitz degree {} is not a multiple of {}; not Gm-twisted monogenic",
                self.steinitz_degree, self.triangular
            ),
        }
    }
}

/// The Steinitz class of a twisted monogenic extension of rank `n` is an
/// `n(n-1)/2`-th power.
pub fn steinitz_exponent(n: usize) -> u64 {
    (n as u64) * (n as u64).saturating_sub(1) / 2
}

/// Over `Z` (class number one) twisted monogenicity coincides with
/// monogenicity. Replaces any earlier twisted note. `cited_not_monogenic`
/// records an externally established non-monogenicity result for algebras
/// whose search is inconclusive.
pub fn base_z_twisted_note(report: &mut MonogenicityReport, cited_not_monogenic: bool) {
    report.notes.retain(|n| !n.starts_with(TWISTED_NOTE_PREFIX));
    let body = match report.global.status {
        GlobalStatus::Monogenic => "twisted = global over Z; monogenic".to_string(),
        GlobalStatus::NotMonogenic => "not twisted monogenic (h(Z)=1)".to_string(),
        GlobalStatus::Unknown if cited_not_monogenic => {
            "not twisted monogenic (h(Z)=1; cited non-monogenicity)".to_string()
        }
        GlobalStatus::Unknown => "unknown (over Z twisted monogenic = monogenic)".to_string(),
    };
    report.notes.push(format!("{TWISTED_NOTE_PREFIX}{body}"));
    let e = steinitz_exponent(report.rank);
    report.notes.push(format!(
        "{TWISTED_NOTE_PREFIX}Steinitz class must be a power with exponent {e} (trivial over Z)"
    ));
}
