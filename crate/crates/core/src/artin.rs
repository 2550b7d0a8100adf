//! Finite algebras over `F_p`: nilradical, decomposition into local Artinian
//! factors, and the fiberwise monogenicity criterion.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::StructureAlgebra;
use crate::config::DEFAULT_SEED;
use crate::error::{Error, Result};
use crate::exactring::fpmat::{inv_mod, mul_mod, span_basis};
use crate::exactring::{berlekamp_factor, check_prime, necklace_count, FpMatrix, UniPolyFp};

const LIFT_CAP: usize = 64;
const RANDOM_TRIES: usize = 256;

/// A structure algebra over `F_p` with residues as `u64`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpAlgebra {
    p: u64,
    n: usize,
    constants: Vec<u64>,
    one: Vec<u64>,
}

impl FpAlgebra {
    /// Accepts algebras over `F_p`; integer algebras are reduced with
    /// [`StructureAlgebra::reduce_mod_p`] first.
    pub fn new(alg: &StructureAlgebra) -> Result<Self> {
        let ring = alg.base();
        let p = match ring {
            crate::BaseRing::Fp { p } => p,
            _ => return Err(Error::NotPrimeFieldBase(ring.to_string())),
        };
        alg.ensure_valid()?;
        let n = alg.rank();
        let mut constants = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    constants.push(ring.residue(alg.constant(i, j, k)).unwrap_or(0));
                }
            }
        }
        let one = alg.identity().iter().map(|c| ring.residue(c).unwrap_or(0)).collect();
        Ok(FpAlgebra { p, n, constants, one })
    }

    pub fn reduce(alg: &StructureAlgebra, p: u64) -> Result<Self> {
        check_prime(p)?;
        Self::new(&alg.reduce_mod_p(p)?)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn one(&self) -> &[u64] {
        &self.one
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (n, p) = (self.n, self.p);
        let mut out = vec![0u64; n];
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] == 0 {
                    continue;
                }
                let ab = mul_mod(a[i], b[j], p);
                let row = &self.constants[(i * n + j) * n..(i * n + j + 1) * n];
                for k in 0..n {
                    if row[k] != 0 {
                        out[k] = (out[k] + mul_mod(ab, row[k], p)) % p;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn scale(&self, c: u64, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| mul_mod(c % self.p, x, self.p)).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + self.p - y) % self.p).collect()
    }

    pub fn pow(&self, a: &[u64], mut e: u128) -> Vec<u64> {
        let mut acc = self.one.clone();
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn frobenius(&self, a: &[u64]) -> Vec<u64> {
        self.pow(a, self.p as u128)
    }

    fn basis_vector(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.n];
        v[i] = 1;
        v
    }

    fn span(&self, vectors: &[Vec<u64>]) -> Vec<Vec<u64>> {
        span_basis(self.p, self.n, vectors)
    }

    /// Span of all products `a b`, `a` in `x`, `b` in `y`.
    fn product_space(&self, x: &[Vec<u64>], y: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let prods: Vec<Vec<u64>> = x.iter().flat_map(|a| y.iter().map(move |b| self.mul(a, b))).collect();
        self.span(&prods)
    }
}

/// Nilradical as a row-reduced basis: the kernel of `x -> x^(p^m)` with
/// `p^m >= n`, which is `F_p`-linear.
pub fn nilradical(alg: &FpAlgebra) -> Vec<Vec<u64>> {
    let (n, p) = (alg.n, alg.p);
    let mut m = 0u32;
    while (p as u128).pow(m) < n as u128 {
        m += 1;
    }
    let images: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut v = alg.basis_vector(i);
            for _ in 0..m {
                v = alg.frobenius(&v);
            }
            v
        })
        .collect();
    // Column i holds the image of e_i.
    let mut mat = FpMatrix::zeros(p, n, n);
    for (i, img) in images.iter().enumerate() {
        for (k, &c) in img.iter().enumerate() {
            mat.set(k, i, c);
        }
    }
    alg.span(&mat.kernel())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFactor {
    pub dim: usize,
    /// Residue degree `f`.
    pub f: usize,
    /// Tangent dimension over the residue field.
    pub t: usize,
    pub nilpotency_index: usize,
    /// `dim m^j / m^(j+1)` over `F_p`, from `j = 0`.
    pub graded_dims: Vec<usize>,
    /// Row-reduced basis of the factor inside the ambient algebra.
    pub basis: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtinDecomposition {
    pub p: u64,
    pub factors: Vec<LocalFactor>,
    pub idempotents: Vec<Vec<u64>>,
}

/// Quotient by the nilradical, represented by reducing coordinates against
/// its row-reduced basis.
struct Reduced<'a> {
    alg: &'a FpAlgebra,
    nil: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl<'a> Reduced<'a> {
    fn new(alg: &'a FpAlgebra, nil: Vec<Vec<u64>>) -> Self {
        let pivots = nil.iter().map(|r| r.iter().position(|&c| c != 0).unwrap()).collect();
        Reduced { alg, nil, pivots }
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.alg.p;
        let mut v = v.to_vec();
        for (row, &pc) in self.nil.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + p - mul_mod(c, *r, p)) % p;
                }
            }
        }
        v
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.reduce(&self.alg.mul(a, b))
    }

    /// Minimal polynomial of `a` inside the unital component `eps * A/N`.
    fn minpoly(&self, a: &[u64], eps: &[u64]) -> UniPolyFp {
        let p = self.alg.p;
        let mut powers = vec![self.reduce(eps)];
        loop {
            let next = self.mul(powers.last().unwrap(), a);
            powers.push(next);
            // Solve sum c_i powers[i] = 0 with the last coefficient 1.
            let k = powers.len();
            let mut mat = FpMatrix::zeros(p, self.alg.n, k);
            for (i, pw) in powers.iter().enumerate() {
                for (r, &c) in pw.iter().enumerate() {
                    mat.set(r, i, c);
                }
            }
            let ker = mat.kernel();
            if let Some(v) = ker.iter().find(|v| v[k - 1] != 0) {
                let inv = inv_mod(v[k - 1], p);
                return UniPolyFp::new(p, v.iter().map(|&c| mul_mod(c, inv, p)).collect());
            }
        }
    }

    fn eval(&self, g: &UniPolyFp, a: &[u64], eps: &[u64]) -> Vec<u64> {
        let mut acc = vec![0u64; self.alg.n];
        for &c in g.coeffs().iter().rev() {
            acc = self.mul(&acc, a);
            acc = self.alg.add(&acc, &self.alg.scale(c, eps));
        }
        self.reduce(&acc)
    }

    /// Number of field factors of `A/N`: the dimension of the fixed space of
    /// Frobenius on the quotient.
    fn field_count(&self) -> usize {
        let (n, p) = (self.alg.n, self.alg.p);
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        let mut mat = FpMatrix::zeros(p, n, free.len());
        for (col, &i) in free.iter().enumerate() {
            let e = self.alg.basis_vector(i);
            let d = self.reduce(&self.alg.sub(&self.alg.frobenius(&e), &e));
            for (r, &c) in d.iter().enumerate() {
                mat.set(r, col, c);
            }
        }
        mat.kernel().len()
    }

    /// Splits `eps` using the minimal polynomial of `eps * a`; returns the
    /// CRT idempotents, or `None` when the minimal polynomial is irreducible.
    fn split(&self, eps: &[u64], a: &[u64]) -> Result<Option<Vec<Vec<u64>>>> {
        let a = self.mul(eps, a);
        let mu = self.minpoly(&a, eps);
        let factors = berlekamp_factor(&mu)?;
        if factors.len() < 2 {
            return Ok(None);
        }
        let mut out = Vec::with_capacity(factors.len());
        for (g, _) in &factors {
            let (cof, _) = mu.div_rem(g);
            // cof * (cof^-1 mod g) is 1 mod g and 0 mod the other factors.
            let (_, s, _) = cof.ext_gcd(g);
            let e = cof.mul(&s).rem(&mu);
            out.push(self.eval(&e, &a, eps));
        }
        Ok(Some(out))
    }
}

fn lift_idempotent(alg: &FpAlgebra, e: &[u64]) -> Result<Vec<u64>> {
    let mut e = e.to_vec();
    for _ in 0..LIFT_CAP {
        let e2 = alg.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = alg.mul(&e2, &e);
        e = alg.sub(&alg.scale(3, &e2), &alg.scale(2, &e3));
    }
    Err(Error::SplitFailure)
}

fn local_factor(alg: &FpAlgebra, e: &[u64], nil: &[Vec<u64>]) -> LocalFactor {
    let basis: Vec<Vec<u64>> = alg.span(&(0..alg.n).map(|i| alg.mul(e, &alg.basis_vector(i))).collect::<Vec<_>>());
    let dim = basis.len();
    let m: Vec<Vec<u64>> = alg.span(&nil.iter().map(|v| alg.mul(e, v)).collect::<Vec<_>>());
    let f = dim - m.len();
    let mut graded_dims = vec![f];
    let mut cur = m.clone();
    let mut nilpotency_index = 1;
    while !cur.is_empty() {
        let next = alg.product_space(&cur, &m);
        graded_dims.push(cur.len() - next.len());
        cur = next;
        nilpotency_index += 1;
    }
    let t = graded_dims.get(1).copied().unwrap_or(0) / f;
    LocalFactor { dim, f, t, nilpotency_index, graded_dims, basis }
}

/// Decomposes an algebra over `F_p` into local Artinian factors.
pub fn decompose(alg: &FpAlgebra) -> Result<ArtinDecomposition> {
    let nil = nilradical(alg);
    let red = Reduced::new(alg, nil.clone());
    let target = red.field_count();
    let mut comps: Vec<Vec<u64>> = vec![red.reduce(&alg.one)];
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut tries = 0usize;
    let mut next_basis = 0usize;
    while comps.len() < target {
        let a = if next_basis < alg.n {
            next_basis += 1;
            alg.basis_vector(next_basis - 1)
        } else {
            tries += 1;
            if tries > RANDOM_TRIES {
                return Err(Error::SplitFailure);
            }
            (0..alg.n).map(|_| rng.gen_range(0..alg.p)).collect()
        };
        let mut next = Vec::with_capacity(target);
        for eps in &comps {
            match red.split(eps, &a)? {
                Some(parts) => next.extend(parts),
                None => next.push(eps.clone()),
            }
        }
        comps = next;
    }
    let mut pairs = Vec::with_capacity(comps.len());
    for c in &comps {
        let e = lift_idempotent(alg, c)?;
        let factor = local_factor(alg, &e, &nil);
        pairs.push((e, factor));
    }
    pairs.sort_by(|a, b| {
        (a.1.f, a.1.dim, a.1.t, &a.0).cmp(&(b.1.f, b.1.dim, b.1.t, &b.0))
    });
    let (idempotents, factors) = pairs.into_iter().unzip();
    Ok(ArtinDecomposition { p: alg.p, factors, idempotents })
}

/// Reduces an integer algebra mod `p` and decomposes it.
pub fn decompose_mod(alg: &StructureAlgebra, p: u64) -> Result<ArtinDecomposition> {
    decompose(&FpAlgebra::reduce(alg, p)?)
}

/// A local factor over a perfect field is monogenic iff its tangent space
/// has dimension at most one.
pub fn local_factor_monogenic(factor: &LocalFactor) -> bool {
    factor.t <= 1
}

/// Every factor is locally monogenic and, for each residue degree `f`, there
/// are at most as many factors as closed points of degree `f` on the line.
pub fn fiber_monogenic(dec: &ArtinDecomposition) -> bool {
    if !dec.factors.iter().all(local_factor_monogenic) {
        return false;
    }
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for fac in &dec.factors {
        *counts.entry(fac.f).or_default() += 1;
    }
    counts
        .iter()
        .all(|(&f, &c)| BigUint::from(c) <= necklace_count(dec.p, f as u32))
}

impl ArtinDecomposition {
    /// Idempotent axioms and dimension bookkeeping; returns a description of
    /// the first violation.
    pub fn check(&self, alg: &FpAlgebra) -> std::result::Result<(), String> {
        let n = alg.rank();
        let mut sum = vec![0u64; n];
        for (i, e) in self.idempotents.iter().enumerate() {
            if alg.mul(e, e) != *e {
                return Err(format!("idempotent {i} does not square to itself"));
            }
            for (j, g) in self.idempotents.iter().enumerate().skip(i + 1) {
                if alg.mul(e, g).iter().any(|&c| c != 0) {
                    return Err(format!("idempotents {i} and {j} are not orthogonal"));
                }
            }
            sum = alg.add(&sum, e);
        }
        if sum != alg.one() {
            return Err("idempotents do not sum to 1".into());
        }
        let total: usize = self.factors.iter().map(|f| f.dim).sum();
        if total != n {
            return Err(format!("factor dimensions sum to {total}, expected {n}"));
        }
        for (i, fac) in self.factors.iter().enumerate() {
            if fac.f == 0 || fac.dim % fac.f != 0 || fac.f * (1 + fac.t) > fac.dim {
                return Err(format!("factor {i} has inconsistent degrees"));
            }
            if fac.graded_dims.iter().any(|d| d % fac.f != 0) || fac.graded_dims.iter().sum::<usize>() != fac.dim {
                return Err(format!("factor {i} has an inconsistent filtration"));
            }
        }
        Ok(())
    }
}
