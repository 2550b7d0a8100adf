//! Matrix of coefficients and the local index form.

use serde::{Deserialize, Serialize};

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exactring::{determinant, PolyJson, Scalar, SparsePoly};

/// Sign-normalized index form of an algebra with respect to its basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexForm {
    label: String,
    rank: usize,
    form: SparsePoly,
    /// Whether the stored form is the negative of the raw determinant.
    negated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonogeneratorCheck {
    pub is_monogenerator: bool,
    pub value: Scalar,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexFormJson {
    pub label: String,
    pub rank: usize,
    pub degree: u32,
    pub text: String,
    pub negated: bool,
    pub form: PolyJson,
}

fn generic_mul(alg: &StructureAlgebra, a: &[SparsePoly], b: &[SparsePoly]) -> Vec<SparsePoly> {
    let n = alg.rank();
    let ring = alg.base();
    let mut out = vec![SparsePoly::zero(ring, n); n];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let prod = ai * bj;
            for (k, o) in out.iter_mut().enumerate() {
                let c = alg.constant(i, j, k);
                if !c.is_zero() {
                    *o = &*o + &prod.scale(c);
                }
            }
        }
    }
    out
}

/// Row `i` holds the coordinates of `θ^i` for the generic element
/// `θ = x1 e1 + ... + xn en`, over `A[x1..xn]`. Row 0 is the identity.
pub fn matrix_of_coefficients(alg: &StructureAlgebra) -> Result<Vec<Vec<SparsePoly>>> {
    alg.ensure_valid()?;
    let n = alg.rank();
    let ring = alg.base();
    let theta: Vec<SparsePoly> = (0..n).map(|i| SparsePoly::var(ring, n, i)).collect();
    let mut rows = Vec::with_capacity(n);
    let mut cur: Vec<SparsePoly> = alg.identity().iter().map(|u| SparsePoly::constant(ring, n, u.clone())).collect();
    for _ in 0..n {
        let next = generic_mul(alg, &cur, &theta);
        rows.push(cur);
        cur = next;
    }
    Ok(rows)
}

/// The index form `det` of the matrix of coefficients, with its sign fixed
/// so that the graded-lex leading coefficient is canonical. Rank-1 algebras
/// have index form 1.
pub fn index_form(alg: &StructureAlgebra) -> Result<IndexForm> {
    let n = alg.rank();
    let ring = alg.base();
    if n == 1 {
        alg.ensure_valid()?;
        return Ok(IndexForm { label: alg.label().to_string(), rank: 1, form: SparsePoly::one(ring, 1), negated: false });
    }
    let m = matrix_of_coefficients(alg)?;
    let det = determinant(&m)?;
    let (form, negated) = det.sign_normalized();
    let expected = (n * (n - 1) / 2) as u32;
    assert!(
        form.is_zero() || form.homogeneous_degree() == Some(expected),
        "index form of {} is not homogeneous of degree {expected}",
        alg.label()
    );
    Ok(IndexForm { label: alg.label().to_string(), rank: n, form, negated })
}

impl IndexForm {
    pub fn form(&self) -> &SparsePoly {
        &self.form
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn negated(&self) -> bool {
        self.negated
    }

    /// `n(n-1)/2`
    pub fn degree(&self) -> u32 {
        (self.rank * (self.rank - 1) / 2) as u32
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    pub fn evaluate(&self, v: &[Scalar]) -> Result<Scalar> {
        self.form.evaluate(v)
    }

    pub fn check(&self, v: &[Scalar]) -> Result<MonogeneratorCheck> {
        let value = self.evaluate(v)?;
        Ok(MonogeneratorCheck { is_monogenerator: self.form.base().is_unit(&value), value })
    }

    /// Coefficients reduced mod `p`, sign renormalized.
    pub fn reduce_mod(&self, p: u64) -> Result<IndexForm> {
        let (form, flip) = self.form.reduce_mod(p)?.sign_normalized();
        Ok(IndexForm {
            label: format!("{} mod {p}", self.label),
            rank: self.rank,
            form,
            negated: self.negated ^ flip,
        })
    }

    pub fn to_json(&self) -> IndexFormJson {
        IndexFormJson {
            label: self.label.clone(),
            rank: self.rank,
            degree: self.degree(),
            text: self.form.to_string(),
            negated: self.negated,
            form: self.form.to_json(),
        }
    }
}

/// Evaluates the index form at `v` and applies the base ring's unit test.
pub fn check_monogenerator(alg: &StructureAlgebra, v: &[Scalar]) -> Result<MonogeneratorCheck> {
    if v.len() != alg.rank() {
        return Err(Error::LengthMismatch { expected: alg.rank(), got: v.len() });
    }
    index_form(alg)?.check(v)
}

/// Determinant of the coordinates of `1, θ, ..., θ^{n-1}` for a concrete
/// `θ`, computed in the base ring without building the index form. Equals
/// the index form at `θ` up to sign.
pub fn power_basis_determinant(alg: &StructureAlgebra, v: &[Scalar]) -> Result<Scalar> {
    let n = alg.rank();
    let ring = alg.base();
    let mut cur = alg.identity().to_vec();
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let next = alg.mul(&cur, v)?;
        rows.push(cur.into_iter().map(|c| SparsePoly::constant(ring, 0, c)).collect::<Vec<_>>());
        cur = next;
    }
    if n == 1 {
        return Ok(ring.one());
    }
    Ok(determinant(&rows)?.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactring::BaseRing;

    fn zv(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| BaseRing::Z.from_int(x)).collect()
    }

    fn parse(n: usize, s: &str) -> SparsePoly {
        SparsePoly::parse(BaseRing::Z, n, s).unwrap()
    }

    #[test]
    fn gaussian_matrix_and_form() {
        let g = catalog::gaussian();
        let m = matrix_of_coefficients(&g).unwrap();
        assert_eq!(m[0], vec![parse(2, "1"), parse(2, "0")]);
        assert_eq!(m[1], vec![parse(2, "x1"), parse(2, "x2")]);
        assert_eq!(index_form(&g).unwrap().form(), &parse(2, "x2"));
    }

    #[test]
    fn split_matrix_is_vandermonde() {
        let s = StructureAlgebra::split(BaseRing::Z, 3).unwrap();
        let m = matrix_of_coefficients(&s).unwrap();
        for (r, row) in m.iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                assert_eq!(entry, &SparsePoly::var(BaseRing::Z, 3, c).pow(r as u32));
            }
        }
    }

    #[test]
    fn rank_one() {
        let z = StructureAlgebra::split(BaseRing::Z, 1).unwrap();
        assert_eq!(matrix_of_coefficients(&z).unwrap(), vec![vec![parse(1, "1")]]);
        assert_eq!(index_form(&z).unwrap().form(), &parse(1, "1"));
        assert!(check_monogenerator(&z, &zv(&[0])).unwrap().is_monogenerator);
    }

    #[test]
    fn dedekind_form() {
        let f = index_form(&catalog::dedekind()).unwrap();
        let known = parse(3, "-2*x2^3 - 15*x2^2*x3 - 31*x2*x3^2 - 20*x3^3");
        assert!(f.form() == &known || f.form() == &-&known);
        assert_eq!(f.form().to_string(), "2*x2^3 + 15*x2^2*x3 + 31*x2*x3^2 + 20*x3^3");
        assert_eq!(f.evaluate(&zv(&[0, 1, 0])).unwrap(), BaseRing::Z.from_int(2));
        assert_eq!(f.evaluate(&zv(&[0, 0, 0])).unwrap(), BaseRing::Z.zero());
        assert!(f.evaluate(&zv(&[0, 1])).is_err());
    }

    #[test]
    fn biquadratic_form() {
        let f = index_form(&catalog::biquadratic()).unwrap();
        let known = parse(4, "-4*(2*x2^2 - 3*x3^2)*(x2^2 - 3*x4^2)*(x3^2 - 2*x4^2)");
        assert!(f.form() == &known || f.form() == &-&known);
    }

    #[test]
    fn pure_cubic_form() {
        let f = index_form(&catalog::pure_cubic_175()).unwrap();
        assert_eq!(f.form(), &parse(3, "5*x2^3 - 7*x3^3"));
        assert_eq!(f.evaluate(&zv(&[0, 1, 1])).unwrap(), BaseRing::Z.from_int(-2));
        for a in -2..=2 {
            for b in -2..=2 {
                for c in -2..=2 {
                    assert!(!check_monogenerator(&catalog::pure_cubic_175(), &zv(&[a, b, c])).unwrap().is_monogenerator);
                }
            }
        }
    }

    #[test]
    fn curve_charts() {
        let zx = BaseRing::PolyOverZ;
        let sq = index_form(&catalog::squaring_chart()).unwrap();
        assert_eq!(sq.form(), &SparsePoly::parse(zx, 2, "x2").unwrap());
        let fermat = catalog::fermat_chart();
        let f = index_form(&fermat).unwrap();
        let known = SparsePoly::parse(zx, 3, "x2^3 - x3^3*(t^3 + 1)").unwrap();
        assert!(f.form() == &known || f.form() == &-&known);
        let z = [zx.zero(), zx.one(), zx.zero()];
        let chk = check_monogenerator(&fermat, &z).unwrap();
        assert!(chk.is_monogenerator);
        assert_eq!(chk.value, zx.one());
        let not = [zx.zero(), zx.parameter(), zx.zero()];
        assert!(!check_monogenerator(&fermat, &not).unwrap().is_monogenerator);
    }

    #[test]
    fn gaussian_generator() {
        let chk = check_monogenerator(&catalog::gaussian(), &zv(&[0, 1])).unwrap();
        assert!(chk.is_monogenerator);
        assert_eq!(chk.value, BaseRing::Z.one());
        assert!(check_monogenerator(&catalog::gaussian(), &zv(&[1])).is_err());
    }

    #[test]
    fn reduction_renormalizes_sign() {
        let f = index_form(&catalog::dedekind()).unwrap();
        let f3 = f.reduce_mod(3).unwrap();
        let p3 = BaseRing::fp(3).unwrap();
        assert_eq!(f3.form(), &SparsePoly::parse(p3, 3, "x2^3 + 2*x2*x3^2 + x3^3").unwrap());
        let f2 = f.reduce_mod(2).unwrap();
        let p2 = BaseRing::fp(2).unwrap();
        assert_eq!(f2.form(), &SparsePoly::parse(p2, 3, "x2^2*x3 + x2*x3^2").unwrap());
    }

    #[test]
    fn invalid_algebra_rejected() {
        let c = vec![vec![vec![1i64, 0], vec![0, 1]], vec![vec![0, 2], vec![-1, 0]]];
        let bad = StructureAlgebra::from_ints(BaseRing::Z, &c, &[1, 0], "bad").unwrap();
        assert!(matches!(index_form(&bad), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn power_basis_route_matches_form() {
        let d = catalog::dedekind();
        let f = index_form(&d).unwrap();
        for v in [[0, 1, 0], [3, -1, 2], [1, 2, -3]] {
            let v = zv(&v);
            let a = f.evaluate(&v).unwrap();
            let b = power_basis_determinant(&d, &v).unwrap();
            assert!(a == b || a == BaseRing::Z.neg(&b));
        }
    }
}
