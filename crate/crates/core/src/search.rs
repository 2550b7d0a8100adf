//! Height-bounded search for monogenerators over `Z` and normalization up
//! to affine equivalence `θ ~ ±θ + c`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::StructureAlgebra;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::indexform::{index_form, IndexForm};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub height: u64,
    pub witnesses: Vec<Vec<i64>>,
    pub classes: Vec<Vec<i64>>,
    pub exhausted: bool,
}

/// Integer evaluation of an index form: `i128` arithmetic with a `BigInt`
/// fallback when an intermediate value overflows.
struct IntForm {
    terms: Vec<(BigInt, Option<i128>, Vec<u32>)>,
}

impl IntForm {
    fn new(form: &IndexForm) -> Result<Self> {
        let poly = form.form();
        if !poly.base().is_integer() {
            return Err(Error::NotIntegerBase(poly.base().to_string()));
        }
        let terms = poly
            .terms()
            .map(|(m, c)| {
                let c = c.as_integer().unwrap_or_default();
                let small = c.to_i128();
                (c, small, m.exps().to_vec())
            })
            .collect();
        Ok(IntForm { terms })
    }

    fn eval_small(&self, v: &[i64]) -> Option<i128> {
        let mut acc: i128 = 0;
        for (_, c, exps) in &self.terms {
            let mut t = (*c)?;
            for (&x, &e) in v.iter().zip(exps) {
                for _ in 0..e {
                    t = t.checked_mul(x as i128)?;
                }
            }
            acc = acc.checked_add(t)?;
        }
        Some(acc)
    }

    fn eval(&self, v: &[i64]) -> BigInt {
        if let Some(x) = self.eval_small(v) {
            return BigInt::from(x);
        }
        let mut acc = BigInt::zero();
        for (c, _, exps) in &self.terms {
            let mut t = c.clone();
            for (&x, &e) in v.iter().zip(exps) {
                t *= BigInt::from(x).pow(e);
            }
            acc += t;
        }
        acc
    }

    fn is_unit_at(&self, v: &[i64]) -> bool {
        self.eval(v).abs().is_one()
    }
}

/// First coordinate in which the identity is `±1`, with that sign.
fn unit_identity_coordinate(alg: &StructureAlgebra) -> Option<(usize, i64)> {
    alg.identity().iter().enumerate().find_map(|(k, c)| {
        let c = c.as_integer()?;
        if c.abs().is_one() {
            Some((k, if c.is_positive() { 1 } else { -1 }))
        } else {
            None
        }
    })
}

/// Canonical representative of the orbit `{u v + c 1 : u = ±1, c in Z}`:
/// coordinate `k` is cleared, where `k` is the first coordinate in which the
/// identity is `±1`, and the sign makes the first other nonzero coordinate
/// positive.
pub fn affine_normalize(alg: &StructureAlgebra, v: &[i64]) -> Result<Vec<i64>> {
    if v.len() != alg.rank() {
        return Err(Error::LengthMismatch { expected: alg.rank(), got: v.len() });
    }
    if !alg.base().is_integer() {
        return Err(Error::NotIntegerBase(alg.base().to_string()));
    }
    let (k, s) = unit_identity_coordinate(alg).ok_or(Error::IdentityNotInBasis)?;
    let one: Vec<i64> = alg.identity().iter().map(|c| c.as_integer().and_then(|c| c.to_i64()).unwrap_or(0)).collect();
    // v - (v_k / 1_k) * 1, and 1_k = s = ±1.
    let c = v[k] * s;
    let mut w: Vec<i64> = v.iter().zip(&one).map(|(&x, &u)| x - c * u).collect();
    if let Some(&first) = w.iter().enumerate().find(|&(i, &x)| i != k && x != 0).map(|(_, x)| x) {
        if first < 0 {
            for x in &mut w {
                *x = -*x;
            }
        }
    }
    Ok(w)
}

/// Every `v` with `|v_i| <= height` and index form `±1`. When the identity
/// is `±e_k`, `v_k` is fixed to 0 (translation invariance).
pub fn search_monogenerators(alg: &StructureAlgebra, height: u64, cfg: &Config) -> Result<SearchResult> {
    if !alg.base().is_integer() {
        return Err(Error::NotIntegerBase(alg.base().to_string()));
    }
    let form = index_form(alg)?;
    search_with_form(alg, &form, height, cfg)
}

pub fn search_with_form(alg: &StructureAlgebra, form: &IndexForm, height: u64, cfg: &Config) -> Result<SearchResult> {
    let n = alg.rank();
    let eval = IntForm::new(form)?;
    let fixed = alg.identity_basis_index();
    let free: Vec<usize> = (0..n).filter(|&i| Some(i) != fixed).collect();
    let h = i64::try_from(height).map_err(|_| Error::BudgetExceeded { needed: "2^64".into(), cap: cfg.max_enum })?;
    let side = BigInt::from(2 * height as u128 + 1);
    let needed = side.pow(free.len() as u32);
    if needed > BigInt::from(cfg.max_enum) {
        return Err(Error::BudgetExceeded { needed: needed.to_string(), cap: cfg.max_enum });
    }
    let mut v = vec![0i64; n];
    for &i in &free {
        v[i] = -h;
    }
    let mut witnesses = Vec::new();
    loop {
        if eval.is_unit_at(&v) {
            witnesses.push(v.clone());
        }
        // Odometer, last free coordinate fastest, so the scan is lexicographic.
        let mut done = true;
        for &i in free.iter().rev() {
            if v[i] < h {
                v[i] += 1;
                done = false;
                break;
            }
            v[i] = -h;
        }
        if done {
            break;
        }
    }
    let mut classes: Vec<Vec<i64>> = match unit_identity_coordinate(alg) {
        Some(_) => witnesses.iter().map(|w| affine_normalize(alg, w)).collect::<Result<_>>()?,
        None => witnesses.clone(),
    };
    classes.sort();
    classes.dedup();
    Ok(SearchResult { height, witnesses, classes, exhausted: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactring::BaseRing;

    #[test]
    fn gaussian() {
        let r = search_monogenerators(&catalog::gaussian(), 1, &Config::default()).unwrap();
        assert_eq!(r.witnesses, vec![vec![0, -1], vec![0, 1]]);
        assert_eq!(r.classes, vec![vec![0, 1]]);
        assert!(r.exhausted);
    }

    #[test]
    fn split_two() {
        let s = StructureAlgebra::split(BaseRing::Z, 2).unwrap();
        let r = search_monogenerators(&s, 1, &Config::default()).unwrap();
        assert_eq!(r.witnesses.len(), 4);
        assert!(r.witnesses.iter().all(|w| (w[0] - w[1]).abs() == 1));
        assert_eq!(r.classes, vec![vec![0, 1]]);
    }

    #[test]
    fn normalization() {
        let g = catalog::gaussian();
        assert_eq!(affine_normalize(&g, &[3, -1]).unwrap(), vec![0, 1]);
        assert_eq!(affine_normalize(&g, &[0, 1]).unwrap(), vec![0, 1]);
        assert_eq!(affine_normalize(&catalog::sqrt2(), &[5, 1]).unwrap(), vec![0, 1]);
        assert!(affine_normalize(&g, &[1]).is_err());
    }

    #[test]
    fn no_unit_identity_coordinate() {
        // Basis {(-1, 2), (1, -1)} of Z x Z: the identity is 2 b1 + 3 b2.
        let z = BaseRing::Z;
        let s = StructureAlgebra::split(z, 2).unwrap();
        let u = vec![vec![z.from_int(-1), z.from_int(2)], vec![z.from_int(1), z.from_int(-1)]];
        let t = s.change_basis(&u).unwrap();
        assert!(t.identity().iter().all(|c| !z.is_unit(c)));
        assert_eq!(affine_normalize(&t, &[1, 0]), Err(Error::IdentityNotInBasis));
        let r = search_monogenerators(&t, 1, &Config::default()).unwrap();
        assert!(!r.witnesses.is_empty());
    }

    #[test]
    fn budget() {
        let cfg = Config::default().with_max_enum(100);
        let e = search_monogenerators(&catalog::dedekind(), 10, &cfg).unwrap_err();
        assert_eq!(e, Error::BudgetExceeded { needed: "441".into(), cap: 100 });
    }

    #[test]
    fn big_values_fall_back() {
        let r = search_monogenerators(&catalog::quartic_cid3(), 2, &Config::default()).unwrap();
        assert!(r.witnesses.is_empty());
        let form = index_form(&catalog::dedekind()).unwrap();
        let e = IntForm::new(&form).unwrap();
        let big = i64::MAX / 2;
        let v = [0, big, big];
        let expect = form.evaluate(&v.iter().map(|&x| BaseRing::Z.from_int(x)).collect::<Vec<_>>()).unwrap();
        assert_eq!(BaseRing::Z.from_bigint(e.eval(&v)), expect);
    }
}
