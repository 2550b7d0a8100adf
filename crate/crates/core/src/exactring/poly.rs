use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::collections::btree_map::Entry;
use std::ops::{Add, Mul, Neg, Sub};

use super::{BaseRing, Scalar};
use crate::error::{Error, Result};

/// Exponent vector ordered graded-lexicographically: total degree first,
/// then lexicographic with `x1 > x2 > ... > xn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial in `x1..xn` over a [`BaseRing`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    base: BaseRing,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl SparsePoly {
    pub fn zero(base: BaseRing, nvars: usize) -> Self {
        SparsePoly { base, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(base: BaseRing, nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(base, nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(base: BaseRing, nvars: usize) -> Self {
        Self::constant(base, nvars, base.one())
    }

    pub fn from_int(base: BaseRing, nvars: usize, c: i64) -> Self {
        Self::constant(base, nvars, base.from_int(c))
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(base: BaseRing, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut p = Self::zero(base, nvars);
        p.terms.insert(Monomial::var(nvars, i), base.one());
        p
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, summing
    /// repeated monomials and dropping zeros.
    pub fn from_terms(
        base: BaseRing,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>,
    ) -> Result<Self> {
        let mut p = Self::zero(base, nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::ArityMismatch { left: nvars, right: exps.len() });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.base.add(o.get(), &c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Scalar {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&vec![0; self.nvars])
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` when every term has total degree `d`; zero is homogeneous
    /// of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Indices of variables that appear with positive exponent.
    pub fn occurring_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch { left: self.nvars, right: other.nvars });
        }
        if self.base != other.base {
            return Err(Error::BaseRingMismatch {
                left: self.base.to_string(),
                right: other.base.to_string(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = Self::zero(self.base, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), self.base.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.base, self.nvars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), self.base.mul(a, c));
        }
        out
    }

    fn mul_term(&self, m: &Monomial, c: &Scalar) -> Self {
        let mut out = Self::zero(self.base, self.nvars);
        for (ma, a) in &self.terms {
            out.add_term(ma.mul(m), self.base.mul(a, c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.base, self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor`. Repeatedly cancels the graded-lex
    /// leading term, which is exact over an integral domain whenever the
    /// divisor really divides.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.compatible(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::ZeroPolynomial)?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.base, self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm).ok_or(Error::InexactDivision)?;
            let qc = self.base.div_exact(c, lc).ok_or(Error::InexactDivision)?;
            rem = &rem - &divisor.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Reduce every coefficient modulo `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<Self> {
        let base = self.base.reduction(p)?;
        let mut out = Self::zero(base, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), self.base.reduce(c, p));
        }
        Ok(out)
    }

    /// Substitute base-ring values for all variables.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, got: point.len() });
        }
        let ring = self.base;
        let mut powers: Vec<Vec<Scalar>> = point.iter().map(|x| vec![ring.one(), x.clone()]).collect();
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = ring.mul(powers[i].last().unwrap(), &point[i]);
                    powers[i].push(next);
                }
                t = ring.mul(&t, &powers[i][e]);
            }
            acc = ring.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Sign normalization: returns the polynomial or its negative, whichever
    /// has a canonical leading coefficient, plus whether a flip happened.
    pub fn sign_normalized(&self) -> (Self, bool) {
        match self.leading_term() {
            Some((_, c)) if self.base.needs_sign_flip(c) => (-self, true),
            _ => (self.clone(), false),
        }
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        let mut out = SparsePoly::zero(self.base, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), self.base.neg(c));
        }
        out
    }
}

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&SparsePoly> for &SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: &SparsePoly) -> SparsePoly {
                self.$checked(rhs).expect("incompatible polynomial operands")
            }
        }

        impl $trait<SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
