//! Exact arithmetic substrate.
//!
//! Every base ring is one of `Z`, `F_p`, `Z[t]` or `F_p[t]`. Elements of all
//! four are stored uniformly as a dense list of integer coefficients in the
//! parameter `t` (a [`Scalar`]); the owning [`BaseRing`] decides how the list
//! is normalized (reduction mod `p`, whether `t` may appear at all). All
//! arithmetic goes through the ring so that no scalar ever carries its own
//! modulus.

mod det;
pub(crate) mod fpmat;
mod numtheory;
mod poly;
mod text;
mod unipoly;

pub use det::{determinant, determinant_bareiss, determinant_cofactor};
pub use fpmat::FpMatrix;
pub use numtheory::{
    check_prime, content_primes, discriminant_unipoly, is_prime, mobius, necklace_count,
    prime_factors, primes_below, MAX_PRIME,
};
pub use poly::{Monomial, SparsePoly};
pub use text::PolyJson;
pub use unipoly::{berlekamp_factor, UniPolyFp};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient ring `A` of an extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum BaseRing {
    Z,
    Fp { p: u64 },
    #[serde(rename = "ZX")]
    PolyOverZ,
    #[serde(rename = "FpX")]
    PolyOverFp { p: u64 },
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Z => write!(f, "Z"),
            BaseRing::Fp { p } => write!(f, "F_{p}"),
            BaseRing::PolyOverZ => write!(f, "Z[t]"),
            BaseRing::PolyOverFp { p } => write!(f, "F_{p}[t]"),
        }
    }
}

/// An element of a [`BaseRing`]: dense coefficients in `t`, lowest degree
/// first, no trailing zeros. The zero element is the empty list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar(Vec<BigInt>);

impl Scalar {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree in the parameter `t`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// The value as an integer when the scalar is constant in `t`.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.0.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.0.last()
    }

    fn trimmed(mut v: Vec<BigInt>) -> Scalar {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        Scalar(v)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::scalar_to_string(self))
    }
}

impl BaseRing {
    pub fn fp(p: u64) -> Result<Self> {
        Ok(BaseRing::Fp { p: check_prime(p)? })
    }

    pub fn fpx(p: u64) -> Result<Self> {
        Ok(BaseRing::PolyOverFp { p: check_prime(p)? })
    }

    pub fn modulus(&self) -> Option<u64> {
        match *self {
            BaseRing::Fp { p } | BaseRing::PolyOverFp { p } => Some(p),
            _ => None,
        }
    }

    pub fn has_parameter(&self) -> bool {
        matches!(self, BaseRing::PolyOverZ | BaseRing::PolyOverFp { .. })
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, BaseRing::Z)
    }

    /// The ring obtained by reducing coefficients modulo `p`.
    pub fn reduction(&self, p: u64) -> Result<BaseRing> {
        match self {
            BaseRing::Z => BaseRing::fp(p),
            BaseRing::PolyOverZ => BaseRing::fpx(p),
            other => Err(Error::NotIntegerBase(other.to_string())),
        }
    }

    /// Checks that the modulus (if any) is prime.
    pub fn check(&self) -> Result<()> {
        if let Some(p) = self.modulus() {
            check_prime(p)?;
        }
        Ok(())
    }

    /// Brings an arbitrary coefficient list into canonical form. Fails if a
    /// parameter-free ring is handed a non-constant list.
    pub fn element(&self, coeffs: Vec<BigInt>) -> Result<Scalar> {
        let coeffs = match self.modulus() {
            Some(p) => coeffs.into_iter().map(|c| c.mod_floor(&BigInt::from(p))).collect(),
            None => coeffs,
        };
        let s = Scalar::trimmed(coeffs);
        if !self.has_parameter() && s.0.len() > 1 {
            return Err(Error::parse("scalar", format!("{self} has no parameter t")));
        }
        Ok(s)
    }

    fn norm(&self, coeffs: Vec<BigInt>) -> Scalar {
        match self.modulus() {
            Some(p) => {
                let p = BigInt::from(p);
                Scalar::trimmed(coeffs.into_iter().map(|c| c.mod_floor(&p)).collect())
            }
            None => Scalar::trimmed(coeffs),
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::default()
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, c: i64) -> Scalar {
        self.norm(vec![BigInt::from(c)])
    }

    pub fn from_bigint(&self, c: BigInt) -> Scalar {
        self.norm(vec![c])
    }

    /// The parameter `t`; panics on parameter-free rings.
    pub fn parameter(&self) -> Scalar {
        assert!(self.has_parameter(), "{self} has no parameter");
        self.norm(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let n = a.0.len().max(b.0.len());
        let z = BigInt::zero();
        let v = (0..n)
            .map(|i| a.0.get(i).unwrap_or(&z) + b.0.get(i).unwrap_or(&z))
            .collect();
        self.norm(v)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.norm(a.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return Scalar::default();
        }
        let mut v = vec![BigInt::zero(); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        self.norm(v)
    }

    pub fn pow(&self, a: &Scalar, e: u32) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        a.0.len() == 1 && a.0[0].is_one()
    }

    /// Units: `±1` over `Z` and `Z[t]`, nonzero constants over `F_p` and `F_p[t]`.
    pub fn is_unit(&self, a: &Scalar) -> bool {
        match a.as_integer() {
            None => false,
            Some(c) => match self.modulus() {
                Some(_) => !c.is_zero(),
                None => c.abs().is_one(),
            },
        }
    }

    fn inverse_mod(c: &BigInt, p: u64) -> BigInt {
        let p = BigInt::from(p);
        c.modpow(&(&p - 2u32), &p)
    }

    /// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
    pub fn div_exact(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        if b.is_zero() {
            return None;
        }
        if a.is_zero() {
            return Some(Scalar::default());
        }
        if a.0.len() < b.0.len() {
            return None;
        }
        let lead = b.0.last().unwrap();
        let inv = self.modulus().map(|p| Self::inverse_mod(lead, p));
        let mut rem = a.0.clone();
        let mut q = vec![BigInt::zero(); a.0.len() - b.0.len() + 1];
        for k in (0..q.len()).rev() {
            let top = &rem[k + b.0.len() - 1];
            let c = match (&inv, self.modulus()) {
                (Some(inv), Some(p)) => (top * inv).mod_floor(&BigInt::from(p)),
                _ => {
                    let (c, r) = top.div_rem(lead);
                    if !r.is_zero() {
                        return None;
                    }
                    c
                }
            };
            if !c.is_zero() {
                for (j, bj) in b.0.iter().enumerate() {
                    rem[k + j] -= &c * bj;
                }
            }
            q[k] = c;
        }
        let rem = self.norm(rem);
        rem.is_zero().then(|| self.norm(q))
    }

    /// Whether `a` should be negated to become the canonical representative
    /// of `{a, -a}`: integer leading coefficients must be positive; modulo
    /// `p` the leading coefficient must be at most `(p-1)/2`.
    pub fn needs_sign_flip(&self, a: &Scalar) -> bool {
        match (a.leading(), self.modulus()) {
            (None, _) => false,
            (Some(c), None) => c.is_negative(),
            (Some(c), Some(p)) => c > &BigInt::from((p - 1) / 2),
        }
    }

    /// Reduce an element of this ring modulo `p` into `self.reduction(p)`.
    pub fn reduce(&self, a: &Scalar, p: u64) -> Scalar {
        let pb = BigInt::from(p);
        Scalar::trimmed(a.0.iter().map(|c| c.mod_floor(&pb)).collect())
    }

    /// Evaluate at an integer value of the parameter (identity on
    /// parameter-free rings).
    pub fn specialize(&self, a: &Scalar, t: &BigInt) -> Scalar {
        let mut acc = BigInt::zero();
        for c in a.0.iter().rev() {
            acc = acc * t + c;
        }
        self.norm(vec![acc])
    }

    /// Scalar value as `u64` residue when the ring is `F_p`.
    pub fn residue(&self, a: &Scalar) -> Option<u64> {
        self.modulus()?;
        a.as_integer()?.to_u64()
    }
}
