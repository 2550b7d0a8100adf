//! Finite free algebras `B/A` given by structure constants.
//!
//! A [`StructureAlgebra`] of rank `n` stores `c[i][j][k]` with
//! `e_i e_j = sum_k c[i][j][k] e_k` and the coordinates `u` of the identity.
//! The identity need not be a basis element (split algebras use the
//! idempotent basis, whose identity is `(1, ..., 1)`).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactring::{determinant, BaseRing, Scalar, SparsePoly};

pub const MAX_RANK: usize = 12;

/// Coefficient size above which callers are warned that work may be slow.
pub const COEFFICIENT_WARN_BITS: u64 = 512;

/// A failed ring axiom, with zero-based basis indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    Commutativity { i: usize, j: usize },
    Associativity { i: usize, j: usize, k: usize },
    Identity { i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Commutativity { i, j } => {
                write!(f, "commutativity: e{}*e{} != e{}*e{}", i + 1, j + 1, j + 1, i + 1)
            }
            Violation::Associativity { i, j, k } => write!(
                f,
                "associativity: (e{a}*e{b})*e{c} != e{a}*(e{b}*e{c})",
                a = i + 1,
                b = j + 1,
                c = k + 1
            ),
            Violation::Identity { i } => write!(f, "identity: 1*e{} != e{}", i + 1, i + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureAlgebra {
    base: BaseRing,
    rank: usize,
    constants: Vec<Scalar>,
    identity: Vec<Scalar>,
    label: String,
}

impl StructureAlgebra {
    /// `constants` is indexed `[i][j][k]`. Only shapes are checked here; see
    /// [`StructureAlgebra::validate`] for the ring axioms.
    pub fn new(
        base: BaseRing,
        constants: Vec<Vec<Vec<Scalar>>>,
        identity: Vec<Scalar>,
        label: impl Into<String>,
    ) -> Result<Self> {
        base.check()?;
        let n = identity.len();
        if n == 0 || n > MAX_RANK {
            return Err(Error::UnsupportedRank(n));
        }
        if constants.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: constants.len() });
        }
        let mut flat = Vec::with_capacity(n * n * n);
        for row in constants {
            if row.len() != n {
                return Err(Error::LengthMismatch { expected: n, got: row.len() });
            }
            for v in row {
                if v.len() != n {
                    return Err(Error::LengthMismatch { expected: n, got: v.len() });
                }
                flat.extend(v.into_iter().map(|s| base.element(s.coeffs().to_vec())).collect::<Result<Vec<_>>>()?);
            }
        }
        let identity = identity
            .into_iter()
            .map(|s| base.element(s.coeffs().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Ok(StructureAlgebra { base, rank: n, constants: flat, identity, label: label.into() })
    }

    /// Convenience constructor from small integer data.
    pub fn from_ints(
        base: BaseRing,
        constants: &[Vec<Vec<i64>>],
        identity: &[i64],
        label: impl Into<String>,
    ) -> Result<Self> {
        let c = constants
            .iter()
            .map(|r| r.iter().map(|v| v.iter().map(|&x| base.from_int(x)).collect()).collect())
            .collect();
        Self::new(base, c, identity.iter().map(|&x| base.from_int(x)).collect(), label)
    }

    /// `Z^n` (or `A^n`) with its basis of orthogonal idempotents.
    pub fn split(base: BaseRing, n: usize) -> Result<Self> {
        let c = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| base.from_int((i == j && j == k) as i64)).collect())
                    .collect()
            })
            .collect();
        Self::new(base, c, vec![base.one(); n], format!("split rank {n}"))
    }

    /// `A[x]/(f)` with the power basis `1, x, ..., x^{n-1}`; `f` is monic,
    /// lowest degree first.
    pub fn power_basis(base: BaseRing, f: &[Scalar], label: impl Into<String>) -> Result<Self> {
        let n = f.len().checked_sub(1).filter(|&n| n >= 1).ok_or(Error::ConstantPolynomial)?;
        if !base.is_one(&f[n]) {
            return Err(Error::NonMonic);
        }
        // x^m reduced mod f, as coordinate vectors, for m < 2n - 1.
        let mut powers: Vec<Vec<Scalar>> = Vec::with_capacity(2 * n);
        for m in 0..n {
            let mut v = vec![base.zero(); n];
            v[m] = base.one();
            powers.push(v);
        }
        for _ in n..2 * n - 1 {
            let prev = powers.last().unwrap();
            // x * prev: shift up, then replace x^n by -(f_0 + ... + f_{n-1} x^{n-1}).
            let top = prev[n - 1].clone();
            let mut v = vec![base.zero(); n];
            for k in 1..n {
                v[k] = prev[k - 1].clone();
            }
            for (k, vk) in v.iter_mut().enumerate() {
                *vk = base.sub(vk, &base.mul(&top, &f[k]));
            }
            powers.push(v);
        }
        let c = (0..n)
            .map(|i| (0..n).map(|j| powers[i + j].clone()).collect())
            .collect();
        let mut u = vec![base.zero(); n];
        u[0] = base.one();
        Self::new(base, c, u, label)
    }

    /// Direct product `self x other`, basis = basis of `self` followed by
    /// basis of `other`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::BaseRingMismatch { left: self.base.to_string(), right: other.base.to_string() });
        }
        let (a, b) = (self.rank, other.rank);
        let n = a + b;
        let base = self.base;
        let mut c = vec![vec![vec![base.zero(); n]; n]; n];
        for i in 0..a {
            for j in 0..a {
                for k in 0..a {
                    c[i][j][k] = self.constant(i, j, k).clone();
                }
            }
        }
        for i in 0..b {
            for j in 0..b {
                for k in 0..b {
                    c[a + i][a + j][a + k] = other.constant(i, j, k).clone();
                }
            }
        }
        let mut u = self.identity.clone();
        u.extend(other.identity.iter().cloned());
        Self::new(base, c, u, format!("{} x {}", self.label, other.label))
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[(i * self.rank + j) * self.rank + k]
    }

    fn product_of_basis(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.rank;
        &self.constants[(i * n + j) * n..(i * n + j + 1) * n]
    }

    /// Largest bit length among all structure constant and identity coefficients.
    pub fn max_coefficient_bits(&self) -> u64 {
        self.constants
            .iter()
            .chain(&self.identity)
            .flat_map(|s| s.coeffs())
            .map(|c| c.bits())
            .max()
            .unwrap_or(0)
    }

    pub fn identity(&self) -> &[Scalar] {
        &self.identity
    }

    /// Index `k` such that the identity is a unit multiple of `e_k`.
    pub fn identity_basis_index(&self) -> Option<usize> {
        let nonzero: Vec<usize> = (0..self.rank).filter(|&k| !self.identity[k].is_zero()).collect();
        match nonzero[..] {
            [k] if self.base.is_unit(&self.identity[k]) => Some(k),
            _ => None,
        }
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::LengthMismatch { expected: self.rank, got: v.len() });
        }
        Ok(())
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.base.zero(); self.rank];
        v[i] = self.base.one();
        v
    }

    /// Product of two elements given by coordinates.
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    fn mul_unchecked(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let ring = self.base;
        let mut out = vec![ring.zero(); self.rank];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let coeff = ring.mul(ai, bj);
                for (k, c) in self.product_of_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = ring.add(&out[k], &ring.mul(&coeff, c));
                    }
                }
            }
        }
        out
    }

    /// Violated ring axioms; empty iff the constants define a commutative,
    /// associative ring with the stored identity.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.rank;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.product_of_basis(i, j) != self.product_of_basis(j, i) {
                    out.push(Violation::Commutativity { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.product_of_basis(i, j).to_vec();
                for k in 0..n {
                    let left = self.mul_unchecked(&ij, &self.basis_vector(k));
                    let jk = self.product_of_basis(j, k).to_vec();
                    let right = self.mul_unchecked(&self.basis_vector(i), &jk);
                    if left != right {
                        out.push(Violation::Associativity { i, j, k });
                    }
                }
            }
        }
        for i in 0..n {
            let e = self.basis_vector(i);
            if self.mul_unchecked(&self.identity, &e) != e {
                out.push(Violation::Identity { i });
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidAlgebra(v))
        }
    }

    /// Reduce constants and identity modulo `p` (`Z -> F_p`, `Z[t] -> F_p[t]`).
    pub fn reduce_mod_p(&self, p: u64) -> Result<Self> {
        if !matches!(self.base, BaseRing::Z | BaseRing::PolyOverZ) {
            return Err(Error::NotIntegerBase(self.base.to_string()));
        }
        let base = self.base.reduction(p)?;
        Ok(StructureAlgebra {
            base,
            rank: self.rank,
            constants: self.constants.iter().map(|c| self.base.reduce(c, p)).collect(),
            identity: self.identity.iter().map(|c| self.base.reduce(c, p)).collect(),
            label: format!("{} mod {p}", self.label),
        })
    }

    /// Matrix of multiplication by `v`; column `j` holds the coordinates of
    /// `v * e_j`.
    pub fn mult_matrix(&self, v: &[Scalar]) -> Result<Vec<Vec<Scalar>>> {
        self.check_len(v)?;
        let n = self.rank;
        let mut m = vec![vec![self.base.zero(); n]; n];
        for j in 0..n {
            let col = self.mul_unchecked(v, &self.basis_vector(j));
            for (k, c) in col.into_iter().enumerate() {
                m[k][j] = c;
            }
        }
        Ok(m)
    }

    pub fn trace(&self, v: &[Scalar]) -> Result<Scalar> {
        let m = self.mult_matrix(v)?;
        Ok((0..self.rank).fold(self.base.zero(), |acc, k| self.base.add(&acc, &m[k][k])))
    }

    /// New algebra with basis `e'_a = sum_b U[a][b] e_b`; `det U` must be a
    /// unit of the base ring.
    pub fn change_basis(&self, u: &[Vec<Scalar>]) -> Result<Self> {
        let n = self.rank;
        if u.len() != n || u.iter().any(|r| r.len() != n) {
            return Err(Error::LengthMismatch { expected: n, got: u.len() });
        }
        let inv = invert_unimodular(self.base, u)?;
        let to_new = |w: &[Scalar]| -> Vec<Scalar> {
            (0..n)
                .map(|k| {
                    (0..n).fold(self.base.zero(), |acc, m| self.base.add(&acc, &self.base.mul(&w[m], &inv[m][k])))
                })
                .collect()
        };
        let mut c = Vec::with_capacity(n);
        for a in 0..n {
            let mut row = Vec::with_capacity(n);
            for b in 0..n {
                row.push(to_new(&self.mul_unchecked(&u[a], &u[b])));
            }
            c.push(row);
        }
        Self::new(self.base, c, to_new(&self.identity), self.label.clone())
    }

    /// Discriminant `det[Tr(e_i e_j)]` of the trace pairing.
    pub fn discriminant(&self) -> Result<BigInt> {
        if self.base != BaseRing::Z {
            return Err(Error::NotIntegerBase(self.base.to_string()));
        }
        let n = self.rank;
        let traces: Vec<Scalar> = (0..n).map(|k| self.trace(&self.basis_vector(k))).collect::<Result<_>>()?;
        let gram: Vec<Vec<SparsePoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let t = self
                            .product_of_basis(i, j)
                            .iter()
                            .zip(&traces)
                            .fold(self.base.zero(), |acc, (c, t)| self.base.add(&acc, &self.base.mul(c, t)));
                        SparsePoly::constant(self.base, 0, t)
                    })
                    .collect()
            })
            .collect();
        Ok(determinant(&gram)?.constant_term().as_integer().expect("integer"))
    }

    /// Characteristic polynomial of multiplication by `v`, monic, lowest
    /// degree first.
    pub fn char_poly(&self, v: &[Scalar]) -> Result<Vec<BigInt>> {
        if self.base != BaseRing::Z {
            return Err(Error::NotIntegerBase(self.base.to_string()));
        }
        let m = self.mult_matrix(v)?;
        let z = self.base;
        let t = SparsePoly::var(z, 1, 0);
        let rows: Vec<Vec<SparsePoly>> = (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| {
                        let entry = -SparsePoly::constant(z, 1, m[i][j].clone());
                        if i == j { &t + &entry } else { entry }
                    })
                    .collect()
            })
            .collect();
        let d = determinant(&rows)?;
        Ok((0..=self.rank as u32)
            .map(|e| d.coefficient(&[e]).as_integer().expect("integer"))
            .collect())
    }
}

fn invert_unimodular(base: BaseRing, u: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let n = u.len();
    let as_poly = |s: &Scalar| SparsePoly::constant(base, 0, s.clone());
    let full: Vec<Vec<SparsePoly>> = u.iter().map(|r| r.iter().map(as_poly).collect()).collect();
    let det = determinant(&full)?.constant_term();
    if !base.is_unit(&det) {
        return Err(Error::NonUnimodular);
    }
    if n == 1 {
        return Ok(vec![vec![base.div_exact(&base.one(), &det).ok_or(Error::NonUnimodular)?]]);
    }
    let mut inv = vec![vec![base.zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<SparsePoly>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| full[r][c].clone()).collect())
                .collect();
            let mut cof = determinant(&minor)?.constant_term();
            if (i + j) % 2 == 1 {
                cof = base.neg(&cof);
            }
            inv[j][i] = base.div_exact(&cof, &det).ok_or(Error::NonUnimodular)?;
        }
    }
    Ok(inv)
}

/// A candidate order inside `Q[x]/(f)`: the minimal polynomial and the
/// rational coordinates of each basis element in the power basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderPresentation {
    pub minpoly: Vec<BigInt>,
    pub basis: Vec<Vec<BigRational>>,
    pub label: String,
}

fn rational_inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, piv);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot_row = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl OrderPresentation {
    pub fn new(minpoly: Vec<BigInt>, basis: Vec<Vec<BigRational>>, label: impl Into<String>) -> Self {
        OrderPresentation { minpoly, basis, label: label.into() }
    }

    /// Structure constants of the `Z`-span of the basis, provided it is
    /// closed under multiplication and contains 1.
    pub fn to_algebra(&self) -> Result<StructureAlgebra> {
        let f = &self.minpoly;
        let n = f.len().checked_sub(1).filter(|&n| n >= 1).ok_or(Error::ConstantPolynomial)?;
        if !f[n].is_one() {
            return Err(Error::NonMonic);
        }
        if self.basis.len() != n || self.basis.iter().any(|r| r.len() != n) {
            return Err(Error::LengthMismatch { expected: n, got: self.basis.len() });
        }
        let inv = rational_inverse(&self.basis).ok_or(Error::SingularBasisMatrix)?;
        let fq: Vec<BigRational> = f.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let mul_power = |a: &[BigRational], b: &[BigRational]| -> Vec<BigRational> {
            let mut prod = vec![BigRational::zero(); 2 * n - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    prod[i + j] += x * y;
                }
            }
            for d in (n..2 * n - 1).rev() {
                let top = std::mem::take(&mut prod[d]);
                if top.is_zero() {
                    continue;
                }
                for k in 0..n {
                    prod[d - n + k] -= &top * &fq[k];
                }
            }
            prod.truncate(n);
            prod
        };
        let to_coords = |w: &[BigRational], what: &str| -> Result<Vec<Scalar>> {
            (0..n)
                .map(|k| {
                    let v = (0..n).fold(BigRational::zero(), |acc, m| acc + &w[m] * &inv[m][k]);
                    if v.is_integer() {
                        Ok(BaseRing::Z.from_bigint(v.to_integer()))
                    } else {
                        Err(Error::NotClosedUnderMultiplication {
                            product: what.to_string(),
                            coordinate: k + 1,
                            value: v.to_string(),
                        })
                    }
                })
                .collect()
        };
        let mut one = vec![BigRational::zero(); n];
        one[0] = BigRational::one();
        let identity = to_coords(&one, "1")?;
        let mut c = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let w = mul_power(&self.basis[i], &self.basis[j]);
                let coords = to_coords(&w, &format!("b{}*b{}", i + 1, j + 1))?;
                c[j][i] = coords.clone();
                c[i][j] = coords;
            }
        }
        StructureAlgebra::new(BaseRing::Z, c, identity, self.label.clone())
    }
}

// ---- JSON schemas -------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub base: BaseRing,
    pub rank: usize,
    pub constants: Vec<Vec<Vec<Value>>>,
    pub identity: Vec<Value>,
    #[serde(default)]
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderPresentationJson {
    pub minpoly: Vec<Value>,
    pub basis: Vec<Vec<Value>>,
    #[serde(default)]
    pub label: String,
}

fn json_integer(v: &Value, path: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().unwrap()),
        Value::String(s) => s.trim().parse().map_err(|_| Error::parse(path, format!("not an integer: {s:?}"))),
        other => Err(Error::parse(path, format!("expected an integer, got {other}"))),
    }
}

fn json_rational(v: &Value, path: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => {
            let s = s.trim();
            match s.split_once('/') {
                Some((a, b)) => {
                    let num: BigInt = a.trim().parse().map_err(|_| Error::parse(path, format!("bad numerator in {s:?}")))?;
                    let den: BigInt = b.trim().parse().map_err(|_| Error::parse(path, format!("bad denominator in {s:?}")))?;
                    if den.is_zero() {
                        return Err(Error::parse(path, "zero denominator"));
                    }
                    Ok(BigRational::new(num, den))
                }
                None => Ok(BigRational::from_integer(json_integer(v, path)?)),
            }
        }
        _ => Ok(BigRational::from_integer(json_integer(v, path)?)),
    }
}

fn json_scalar(base: BaseRing, v: &Value, path: &str) -> Result<Scalar> {
    let coeffs = match v {
        Value::Array(items) if base.has_parameter() => items
            .iter()
            .enumerate()
            .map(|(i, x)| json_integer(x, &format!("{path}[{i}]")))
            .collect::<Result<Vec<_>>>()?,
        Value::Array(_) => return Err(Error::parse(path, format!("{base} elements are plain integers"))),
        other => vec![json_integer(other, path)?],
    };
    base.element(coeffs).map_err(|_| Error::parse(path, "invalid base-ring element"))
}

fn integer_value(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(x) => Value::from(x),
        None => Value::from(c.to_string()),
    }
}

fn scalar_value(base: BaseRing, s: &Scalar) -> Value {
    if base.has_parameter() {
        Value::Array(s.coeffs().iter().map(integer_value).collect())
    } else {
        integer_value(&s.as_integer().unwrap())
    }
}

impl StructureAlgebra {
    pub fn from_json(j: &AlgebraJson) -> Result<Self> {
        let base = j.base;
        base.check()?;
        let n = j.rank;
        if n == 0 || n > MAX_RANK {
            return Err(Error::UnsupportedRank(n));
        }
        let shape = |path: String, len: usize| -> Result<()> {
            if len != n {
                Err(Error::parse(path, format!("expected {n} entries, found {len}")))
            } else {
                Ok(())
            }
        };
        shape("constants".into(), j.constants.len())?;
        let mut c = Vec::with_capacity(n);
        for (i, row) in j.constants.iter().enumerate() {
            shape(format!("constants[{i}]"), row.len())?;
            let mut r = Vec::with_capacity(n);
            for (jj, v) in row.iter().enumerate() {
                shape(format!("constants[{i}][{jj}]"), v.len())?;
                r.push(
                    v.iter()
                        .enumerate()
                        .map(|(k, x)| json_scalar(base, x, &format!("constants[{i}][{jj}][{k}]")))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            c.push(r);
        }
        shape("identity".into(), j.identity.len())?;
        let u = j
            .identity
            .iter()
            .enumerate()
            .map(|(k, x)| json_scalar(base, x, &format!("identity[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, c, u, j.label.clone())
    }

    pub fn to_json(&self) -> AlgebraJson {
        let n = self.rank;
        AlgebraJson {
            base: self.base,
            rank: n,
            constants: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).map(|k| scalar_value(self.base, self.constant(i, j, k))).collect())
                        .collect()
                })
                .collect(),
            identity: self.identity.iter().map(|s| scalar_value(self.base, s)).collect(),
            label: self.label.clone(),
        }
    }
}

impl OrderPresentation {
    pub fn from_json(j: &OrderPresentationJson) -> Result<Self> {
        let minpoly = j
            .minpoly
            .iter()
            .enumerate()
            .map(|(i, v)| json_integer(v, &format!("minpoly[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let basis = j
            .basis
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .map(|(k, v)| json_rational(v, &format!("basis[{i}][{k}]")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OrderPresentation { minpoly, basis, label: j.label.clone() })
    }

    pub fn to_json(&self) -> OrderPresentationJson {
        OrderPresentationJson {
            minpoly: self.minpoly.iter().map(integer_value).collect(),
            basis: self.basis.iter().map(|r| r.iter().map(|q| Value::from(q.to_string())).collect()).collect(),
            label: self.label.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn z(v: i64) -> Scalar {
        BaseRing::Z.from_int(v)
    }

    fn zvec(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| z(x)).collect()
    }

    fn zmat(m: &[&[i64]]) -> Vec<Vec<Scalar>> {
        m.iter().map(|r| zvec(r)).collect()
    }

    fn rat(s: &str) -> BigRational {
        json_rational(&Value::from(s), "test").unwrap()
    }

    #[test]
    fn gaussian_integers_validate() {
        let g = catalog::gaussian();
        assert!(g.validate().is_empty());
        assert_eq!(g.identity_basis_index(), Some(0));
    }

    #[test]
    fn commutativity_violation_is_reported() {
        let mut c = vec![vec![vec![0i64; 2]; 2]; 2];
        c[0][0] = vec![1, 0];
        c[0][1] = vec![0, 1];
        c[1][0] = vec![0, 1];
        c[1][1] = vec![-1, 0];
        c[0][1] = vec![0, 2];
        let alg = StructureAlgebra::from_ints(BaseRing::Z, &c, &[1, 0], "broken").unwrap();
        let v = alg.validate();
        assert!(v.contains(&Violation::Commutativity { i: 0, j: 1 }));
        assert!(matches!(alg.ensure_valid(), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn split_algebra_is_valid() {
        let s = StructureAlgebra::split(BaseRing::Z, 3).unwrap();
        assert!(s.validate().is_empty());
        assert_eq!(s.identity(), zvec(&[1, 1, 1]).as_slice());
        assert_eq!(s.identity_basis_index(), None);
    }

    #[test]
    fn presentation_examples() {
        let d = catalog::dedekind();
        assert!(d.validate().is_empty());
        assert_eq!(d.identity(), zvec(&[1, 0, 0]).as_slice());

        let g = OrderPresentation::new(
            vec![1.into(), 0.into(), 1.into()],
            vec![vec![rat("1"), rat("0")], vec![rat("0"), rat("1")]],
            "Z[i]",
        )
        .to_algebra()
        .unwrap();
        assert_eq!(g, catalog::gaussian().with_label("Z[i]"));

        let golden = catalog::golden();
        assert!(golden.validate().is_empty());
        assert_eq!(golden.discriminant().unwrap(), BigInt::from(5));

        let bad = OrderPresentation::new(
            vec![(-5).into(), 0.into(), 1.into()],
            vec![vec![rat("1"), rat("0")], vec![rat("0"), rat("1/2")]],
            "not an order",
        );
        match bad.to_algebra() {
            Err(Error::NotClosedUnderMultiplication { product, value, .. }) => {
                assert_eq!(product, "b2*b2");
                assert_eq!(value, "5/4");
            }
            other => panic!("expected closure failure, got {other:?}"),
        }
    }

    #[test]
    fn presentation_errors() {
        let singular = OrderPresentation::new(
            vec![1.into(), 0.into(), 1.into()],
            vec![vec![rat("1"), rat("1")], vec![rat("2"), rat("2")]],
            "",
        );
        assert_eq!(singular.to_algebra(), Err(Error::SingularBasisMatrix));
        let nonmonic = OrderPresentation::new(
            vec![1.into(), 0.into(), 2.into()],
            vec![vec![rat("1"), rat("0")], vec![rat("0"), rat("1")]],
            "",
        );
        assert_eq!(nonmonic.to_algebra(), Err(Error::NonMonic));
    }

    #[test]
    fn reduction_mod_p() {
        let g2 = catalog::gaussian().reduce_mod_p(2).unwrap();
        assert_eq!(g2.base(), BaseRing::Fp { p: 2 });
        assert!(g2.validate().is_empty());
        let d2 = catalog::dedekind().reduce_mod_p(2).unwrap();
        assert_eq!(d2.rank(), 3);
        assert!(d2.validate().is_empty());
        let s = StructureAlgebra::split(BaseRing::Z, 2).unwrap().reduce_mod_p(7).unwrap();
        assert_eq!(s, StructureAlgebra::split(BaseRing::fp(7).unwrap(), 2).unwrap().with_label("split rank 2 mod 7"));
        assert!(g2.reduce_mod_p(2).is_err());
    }

    #[test]
    fn change_basis_examples() {
        let s = StructureAlgebra::split(BaseRing::Z, 2).unwrap();
        let id = zmat(&[&[1, 0], &[0, 1]]);
        assert_eq!(s.change_basis(&id).unwrap(), s);
        let u = zmat(&[&[1, 1], &[0, 1]]);
        let t = s.change_basis(&u).unwrap();
        assert!(t.validate().is_empty());
        assert_eq!(t.identity(), zvec(&[1, 0]).as_slice());
        let back = t.change_basis(&zmat(&[&[1, -1], &[0, 1]])).unwrap();
        assert_eq!(back, s);
        assert_eq!(s.change_basis(&zmat(&[&[2, 0], &[0, 1]])), Err(Error::NonUnimodular));
    }

    #[test]
    fn multiplication_matrices() {
        let g = catalog::gaussian();
        assert_eq!(g.mult_matrix(&zvec(&[0, 1])).unwrap(), zmat(&[&[0, -1], &[1, 0]]));
        assert_eq!(g.mult_matrix(g.identity()).unwrap(), zmat(&[&[1, 0], &[0, 1]]));
        assert!(g.mult_matrix(&zvec(&[1])).is_err());
    }

    #[test]
    fn discriminants() {
        assert_eq!(catalog::gaussian().discriminant().unwrap(), BigInt::from(-4));
        let s = StructureAlgebra::split(BaseRing::Z, 2).unwrap();
        let t = s.change_basis(&zmat(&[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(t.discriminant().unwrap(), BigInt::from(1));
        assert_eq!(catalog::dedekind().discriminant().unwrap(), BigInt::from(-503));
    }

    #[test]
    fn char_poly_of_generator() {
        let g = catalog::gaussian();
        let cp = g.char_poly(&zvec(&[0, 1])).unwrap();
        assert_eq!(cp, vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]);
    }

    #[test]
    fn json_round_trip_and_errors() {
        let d = catalog::dedekind();
        let j = serde_json::to_string(&d.to_json()).unwrap();
        let back: AlgebraJson = serde_json::from_str(&j).unwrap();
        assert_eq!(StructureAlgebra::from_json(&back).unwrap(), d);

        let mut broken = d.to_json();
        broken.constants[1][2].pop();
        match StructureAlgebra::from_json(&broken) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "constants[1][2]"),
            other => panic!("{other:?}"),
        }
        let chart = catalog::fermat_chart();
        let j = chart.to_json();
        assert_eq!(StructureAlgebra::from_json(&j).unwrap(), chart);
    }
}
