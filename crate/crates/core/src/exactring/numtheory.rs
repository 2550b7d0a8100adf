use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{determinant, BaseRing, SparsePoly};
use crate::error::{Error, Result};

/// Moduli are restricted to primes below this bound.
pub const MAX_PRIME: u64 = 1 << 31;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin; the witness set is exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn check_prime(p: u64) -> Result<u64> {
    if p >= MAX_PRIME {
        return Err(Error::PrimeTooLarge(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(p)
}

/// Primes `p` with `p < bound`, ascending.
pub fn primes_below(bound: u64) -> Vec<u64> {
    (2..bound).filter(|&p| is_prime(p)).collect()
}

/// Distinct prime factors of a nonzero integer, by trial division.
pub fn prime_factors(n: &BigInt) -> BTreeSet<BigInt> {
    let mut n = n.abs();
    let mut out = BTreeSet::new();
    let two = BigInt::from(2);
    while !n.is_zero() && n.is_even() {
        out.insert(two.clone());
        n /= 2;
    }
    let mut d = BigInt::from(3);
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.insert(d.clone());
            while n.is_multiple_of(&d) {
                n /= &d;
            }
        }
        d += 2;
    }
    if n > BigInt::one() {
        out.insert(n);
    }
    out
}

/// Primes dividing every integer coefficient of `f` (the primes over which
/// `f` reduces to the zero polynomial).
pub fn content_primes(f: &SparsePoly) -> Result<BTreeSet<BigInt>> {
    if f.base().modulus().is_some() {
        return Err(Error::NotIntegerBase(f.base().to_string()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = f
        .terms()
        .flat_map(|(_, c)| c.coeffs().iter())
        .fold(BigInt::zero(), |g, c| g.gcd(c));
    Ok(prime_factors(&g))
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducible polynomials of degree `f` over `F_p`, which
/// is also the number of closed points of the affine line over `F_p` with
/// residue field `F_{p^f}`.
pub fn necklace_count(p: u64, f: u32) -> BigUint {
    assert!(f >= 1, "degree must be positive");
    let mut total = BigInt::zero();
    for d in (1..=f).filter(|d| f.is_multiple_of(*d)) {
        let mu = mobius(d as u64);
        if mu != 0 {
            total += BigInt::from(mu) * BigInt::from(p).pow(f / d);
        }
    }
    (total / BigInt::from(f)).to_biguint().expect("necklace count is non-negative")
}

/// Discriminant of a monic integer polynomial (coefficients lowest degree
/// first), computed as `(-1)^(n(n-1)/2) Res(f, f')` with the resultant taken
/// as a Sylvester determinant.
pub fn discriminant_unipoly(f: &[BigInt]) -> Result<BigInt> {
    let mut f: Vec<BigInt> = f.to_vec();
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    if f.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.len() - 1;
    if !f[n].is_one() {
        return Err(Error::NonMonic);
    }
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    let df: Vec<BigInt> = (1..=n).map(|i| &f[i] * BigInt::from(i)).collect();
    let size = 2 * n - 1;
    let ring = BaseRing::Z;
    let mut rows = Vec::with_capacity(size);
    // n-1 shifted copies of f, then n shifted copies of f'; highest degree left.
    for shift in 0..n - 1 {
        rows.push(sylvester_row(&f, shift, size, ring));
    }
    for shift in 0..n {
        rows.push(sylvester_row(&df, shift, size, ring));
    }
    let res = determinant(&rows)?
        .constant_term()
        .as_integer()
        .expect("integer determinant");
    let sign = if (n * (n - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    Ok(res * sign)
}

fn sylvester_row(coeffs: &[BigInt], shift: usize, size: usize, ring: BaseRing) -> Vec<SparsePoly> {
    let deg = coeffs.len() - 1;
    (0..size)
        .map(|col| {
            let c = col
                .checked_sub(shift)
                .filter(|k| *k <= deg)
                .map(|k| coeffs[deg - k].clone())
                .unwrap_or_default();
            SparsePoly::constant(ring, 0, ring.from_bigint(c))
        })
        .collect()
}
