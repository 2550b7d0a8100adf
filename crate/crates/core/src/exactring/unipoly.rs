use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fpmat::{inv_mod, mul_mod, FpMatrix};
use crate::error::{Error, Result};

/// Above this characteristic Berlekamp's splitting step draws random
/// elements of the Berlekamp subalgebra instead of trying every constant.
const EXHAUSTIVE_SPLIT_MAX_P: u64 = 1 << 10;

/// Dense univariate polynomial over `F_p`, lowest degree first, no trailing
/// zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPolyFp {
    p: u64,
    coeffs: Vec<u64>,
}

impl UniPolyFp {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        UniPolyFp { p, coeffs: c }
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect())
    }

    pub fn zero(p: u64) -> Self {
        UniPolyFp { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    /// `x - a`
    pub fn linear(p: u64, a: u64) -> Self {
        Self::new(p, vec![(p - a % p) % p, 1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            self.p,
            (0..n)
                .map(|i| (self.coeffs.get(i).unwrap_or(&0) + o.coeffs.get(i).unwrap_or(&0)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(self.p - 1))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let mut v = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                v[i + j] = (v[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, v)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dn = d.coeffs.len() - 1;
        if self.coeffs.len() <= dn {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(d.leading(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dn];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + dn], inv, p);
            q[k] = c;
            if c != 0 {
                for (j, &dj) in d.coeffs.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - mul_mod(c, dj, p)) % p;
                }
            }
        }
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.leading(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    /// `self^e mod m`
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(m);
            }
            b = b.mul(&b).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    /// Irreducibility via Rabin's test: `x^{p^n} = x mod f` and
    /// `gcd(x^{p^{n/q}} - x, f) = 1` for each prime `q | n`.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        let f = self.monic();
        let x = Self::x(self.p);
        let frob = |k: usize| {
            let mut y = x.rem(&f);
            for _ in 0..k {
                y = y.pow_mod(self.p as u128, &f);
            }
            y
        };
        if frob(n).sub(&x).rem(&f) != Self::zero(self.p) {
            return false;
        }
        let mut m = n;
        let mut q = 2;
        while m > 1 {
            if m % q == 0 {
                while m % q == 0 {
                    m /= q;
                }
                if f.gcd(&frob(n / q).sub(&x)).degree() != Some(0) {
                    return false;
                }
            }
            q += 1;
        }
        true
    }

    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }

    fn canonical_key(&self) -> (usize, Vec<u64>) {
        (self.coeffs.len(), self.coeffs.iter().rev().copied().collect())
    }
}

impl fmt::Display for UniPolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| match (e, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".into(),
                (1, c) => format!("{c}*x"),
                (e, 1) => format!("x^{e}"),
                (e, c) => format!("{c}*x^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Square-free decomposition: pairs `(g, m)` with `g` square-free and
/// `f = prod g^m` (up to the leading coefficient).
fn squarefree(f: &UniPolyFp) -> Vec<(UniPolyFp, u32)> {
    let p = f.p;
    let one = UniPolyFp::one(p);
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while w.degree() > Some(0) {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.degree() > Some(0) {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if c.monic() != one && c.degree() > Some(0) {
        for (g, m) in squarefree(&c.pth_root()) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Berlekamp splitting of a monic square-free polynomial.
fn berlekamp_split(g: &UniPolyFp, rng: &mut ChaCha8Rng) -> Vec<UniPolyFp> {
    let p = g.p;
    let d = g.degree().unwrap();
    if d <= 1 {
        return vec![g.clone()];
    }
    // Row i holds x^{ip} mod g; the kernel of (Q - I)^T is the Berlekamp subalgebra.
    let xp = UniPolyFp::x(p).pow_mod(p as u128, g);
    let mut q = FpMatrix::zeros(p, d, d);
    let mut cur = UniPolyFp::one(p);
    for i in 0..d {
        for (j, &c) in cur.coeffs().iter().enumerate() {
            q.set(i, j, c);
        }
        q.set(i, i, (q.get(i, i) + p - 1) % p);
        cur = cur.mul(&xp).rem(g);
    }
    let basis: Vec<UniPolyFp> = q.transpose().kernel().into_iter().map(|v| UniPolyFp::new(p, v)).collect();
    let r = basis.len();
    let mut factors = vec![g.clone()];
    if r == 1 {
        return factors;
    }
    let nontrivial: Vec<&UniPolyFp> = basis.iter().filter(|v| v.degree() > Some(0)).collect();
    if p <= EXHAUSTIVE_SPLIT_MAX_P {
        for v in &nontrivial {
            if factors.len() == r {
                break;
            }
            for s in 0..p {
                let shifted = v.sub(&UniPolyFp::new(p, vec![s]));
                let mut next = Vec::with_capacity(factors.len() + 1);
                for h in factors.drain(..) {
                    if h.degree() == Some(1) {
                        next.push(h);
                        continue;
                    }
                    let gd = h.gcd(&shifted);
                    if gd.degree() > Some(0) && gd.degree() < h.degree() {
                        next.push(h.div_rem(&gd).0.monic());
                        next.push(gd);
                    } else {
                        next.push(h);
                    }
                }
                factors = next;
                if factors.len() == r {
                    break;
                }
            }
        }
    } else {
        let one = UniPolyFp::one(p);
        while factors.len() < r {
            let w = basis.iter().fold(UniPolyFp::zero(p), |acc, b| acc.add(&b.scale(rng.gen_range(0..p))));
            let mut next = Vec::with_capacity(factors.len() + 1);
            for h in factors.drain(..) {
                if h.degree() == Some(1) {
                    next.push(h);
                    continue;
                }
                let a = w.pow_mod(((p - 1) / 2) as u128, &h).sub(&one);
                let gd = h.gcd(&a);
                if gd.degree() > Some(0) && gd.degree() < h.degree() {
                    next.push(h.div_rem(&gd).0.monic());
                    next.push(gd);
                } else {
                    next.push(h);
                }
            }
            factors = next;
        }
    }
    factors
}

/// Complete factorization of a monic polynomial over `F_p` into irreducible
/// factors with multiplicities, sorted by degree and then by coefficients
/// (highest degree first).
pub fn berlekamp_factor(f: &UniPolyFp) -> Result<Vec<(UniPolyFp, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NonMonic);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d6f6e6f);
    let mut out = Vec::new();
    for (g, m) in squarefree(f) {
        for h in berlekamp_split(&g, &mut rng) {
            out.push((h, m));
        }
    }
    out.sort_by_key(|a| a.0.canonical_key());
    Ok(out)
}
