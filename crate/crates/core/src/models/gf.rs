use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, RngCore};

use super::modk::is_prime;
use super::{Assignment, ExponentPair, Meadow};
use crate::error::Error;

/// Largest field order accepted by [`gf`].
pub const MAX_ORDER: u64 = 1 << 16;

/// Name of the generator in element syntax.
pub const GENERATOR: &str = "a";

/// Zero-totalized GF(pⁿ), built as F_p[a] modulo the lexicographically first
/// monic irreducible polynomial of degree `n`.
///
/// Elements are indices `Σ cᵢ pⁱ` of their coefficient vectors `(c₀, …)`, so
/// the carrier order is 0, 1, …, p−1, a, a+1, ….
#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u64,
    n: u32,
    q: u64,
    modulus: Vec<u64>,
    inv: Vec<u32>,
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    // Fermat; a is nonzero mod p
    let (mut acc, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    trim(
        (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    let mut quot = vec![0; r.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r[r.len() - 1] * lead_inv % p;
        quot[shift] = c;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
        }
        r = trim(r);
    }
    (trim(quot), r)
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g: Vec<u64> = digits(idx, p, d);
            g.push(1);
            if poly_divrem(f, &g, p).1.is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut idx: u64, p: u64, n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(idx % p);
        idx /= p;
    }
    out
}

/// The first monic irreducible polynomial of degree `n` over F_p, ordering
/// candidates lexicographically by their coefficient vectors `(c₀, c₁, …)`.
/// Returned low-to-high, including the leading 1.
pub fn first_irreducible(p: u64, n: u32) -> Vec<u64> {
    let n = n as usize;
    let count = p.pow(n as u32);
    (0..count)
        .map(|idx| {
            // c₀ is the most significant position in the ordering
            let mut coeffs = digits(idx, p, n);
            coeffs.reverse();
            coeffs.push(1);
            coeffs
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// GF(pⁿ) with zero-totalized division.
pub fn gf(p: u64, n: u32) -> Result<GaloisField, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidModulus(0));
    }
    let q = p
        .checked_pow(n)
        .filter(|q| *q <= MAX_ORDER)
        .ok_or(Error::FieldTooLarge { p, n })?;
    let modulus = first_irreducible(p, n);
    let mut field = GaloisField {
        p,
        n,
        q,
        modulus,
        inv: Vec::new(),
    };
    field.inv = (0..q as u32).map(|i| field.invert(i)).collect();
    Ok(field)
}

impl GaloisField {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// The defining polynomial, low-to-high.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The class of the indeterminate, i.e. a root of the modulus.
    pub fn generator(&self) -> u32 {
        let (_, r) = poly_divrem(&[0, 1], &self.modulus, self.p);
        self.encode(&r)
    }

    fn decode(&self, e: u32) -> Vec<u64> {
        digits(e as u64, self.p, self.n as usize)
    }

    fn encode(&self, coeffs: &[u64]) -> u32 {
        coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, c| acc * self.p + c % self.p) as u32
    }

    fn invert(&self, e: u32) -> u32 {
        if e == 0 {
            return 0;
        }
        // extended Euclid on (modulus, e) tracking the coefficient of e
        let p = self.p;
        let (mut r0, mut r1) = (self.modulus.clone(), trim(self.decode(e)));
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (vec![], vec![1]);
        while !r1.is_empty() {
            let (quot, rem) = poly_divrem(&r0, &r1, p);
            let s2 = poly_sub(&s0, &poly_mul(&quot, &s1, p), p);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since the modulus is irreducible
        let c = inv_mod_p(r0[0], p);
        let s: Vec<u64> = s0.iter().map(|x| x * c % p).collect();
        let (_, s) = poly_divrem(&s, &self.modulus, p);
        self.encode(&s)
    }
}

impl Meadow for GaloisField {
    type Elem = u32;

    fn name(&self) -> String {
        format!("gf:{}^{}", self.p, self.n)
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        let (x, y) = (self.decode(*a), self.decode(*b));
        let s: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.encode(&s)
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        let prod = poly_mul(&trim(self.decode(*a)), &trim(self.decode(*b)), self.p);
        let (_, r) = poly_divrem(&prod, &self.modulus, self.p);
        self.encode(&r)
    }

    fn neg(&self, a: &u32) -> u32 {
        let s: Vec<u64> = self
            .decode(*a)
            .iter()
            .map(|c| (self.p - c) % self.p)
            .collect();
        self.encode(&s)
    }

    fn div(&self, a: &u32, b: &u32) -> u32 {
        self.mul(a, &self.inv[*b as usize])
    }

    fn from_integer(&self, n: &BigInt) -> u32 {
        n.mod_floor(&BigInt::from(self.p))
            .to_u32()
            .expect("residue fits")
    }

    fn carrier(&self) -> Option<Vec<u32>> {
        Some((0..self.q as u32).collect())
    }

    fn sample(&self, rng: &mut dyn RngCore) -> u32 {
        rng.gen_range(0..self.q as u32)
    }

    /// Polynomial in the generator `a`, highest power first, e.g. `a + 1`
    /// or `2*a^2 + a`.
    fn format(&self, e: &u32) -> String {
        let coeffs = self.decode(*e);
        let parts: Vec<String> = coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c != 0)
            .map(|(i, &c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => GENERATOR.to_string(),
                    _ => format!("{GENERATOR}^{i}"),
                };
                match (c, i) {
                    (_, 0) => c.to_string(),
                    (1, _) => mono,
                    _ => format!("{c}*{mono}"),
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    fn element_constants(&self) -> Assignment<u32> {
        let mut a = Assignment::new();
        a.insert(GENERATOR.to_string(), self.generator());
        a
    }

    fn known_characteristic(&self) -> Option<u64> {
        Some(self.p)
    }

    /// `x^q = x` holds in a field of order `q`.
    fn exponent_pair_hint(&self) -> Option<ExponentPair> {
        Some(ExponentPair {
            n: self.q as u32,
            m: 1,
        })
    }
}
