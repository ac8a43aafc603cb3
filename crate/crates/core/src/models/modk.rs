use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, RngCore};

use super::Meadow;
use crate::error::Error;

/// Largest modulus accepted by [`mk`]. Construction runs a quadratic
/// weak-inverse search as a cross-check.
pub const MAX_MODULUS: u64 = 10_000;

/// The minimal divisive meadow of characteristic `k` on ℤ/kℤ, for
/// square-free `k`. Division is `a · w(b)` where `w(b)` is the weak inverse
/// of `b`.
#[derive(Clone, Debug)]
pub struct ModK {
    k: u64,
    weak_inv: Vec<u64>,
}

/// Unique `w` with `b·w·b ≡ b` and `w·b·w ≡ w (mod k)`, by exhaustive search.
pub fn weak_inverse_search(k: u64, b: u64) -> Option<u64> {
    let b = b % k;
    (0..k).find(|&w| b * w % k * b % k == b && w * b % k * w % k == w)
}

fn prime_factors(mut k: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            let mut e = 0;
            while k.is_multiple_of(p) {
                k /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if k > 1 {
        out.push((k, 1));
    }
    out
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [(n, 1)]
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// The decomposition ℤ/kℤ ≅ F_p₁ × … × F_pᵣ for square-free `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crt {
    modulus: u64,
    primes: Vec<u64>,
}

/// Splits square-free `k` into its prime fields.
pub fn crt_decompose(k: u64) -> Result<Crt, Error> {
    if !(2..=MAX_MODULUS).contains(&k) {
        return Err(Error::InvalidModulus(k));
    }
    let factors = prime_factors(k);
    if factors.iter().any(|&(_, e)| e > 1) {
        return Err(Error::NonSquareFree(k));
    }
    Ok(Crt {
        modulus: k,
        primes: factors.into_iter().map(|(p, _)| p).collect(),
    })
}

impl Crt {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The primes dividing the modulus, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// The prime fields as models, in the order of [`Crt::primes`].
    pub fn factors(&self) -> Vec<ModK> {
        self.primes
            .iter()
            .map(|&p| ModK::build(p).expect("prime modulus"))
            .collect()
    }

    /// `a ↦ (a mod p₁, …, a mod pᵣ)`.
    pub fn split(&self, a: u64) -> Vec<u64> {
        self.primes.iter().map(|p| a % p).collect()
    }

    /// Inverse of [`Crt::split`].
    pub fn join(&self, parts: &[u64]) -> u64 {
        assert_eq!(parts.len(), self.primes.len());
        let k = self.modulus;
        parts.iter().zip(&self.primes).fold(0, |acc, (&r, &p)| {
            let cofactor = k / p;
            // cofactor⁻¹ mod p exists since k is square-free
            let inv = pow_mod(cofactor % p, p - 2, p);
            (acc + r % p * inv % p * cofactor) % k
        })
    }

    /// Division carried out componentwise in the zero-totalized prime fields.
    pub fn div(&self, a: u64, b: u64) -> u64 {
        let parts: Vec<u64> = self
            .primes
            .iter()
            .map(|&p| {
                let (a, b) = (a % p, b % p);
                if b == 0 {
                    0
                } else {
                    a * pow_mod(b, p - 2, p) % p
                }
            })
            .collect();
        self.join(&parts)
    }
}

/// `M_k` for square-free `k ≥ 2`.
///
/// The weak-inverse table comes from exhaustive search and is checked
/// against componentwise field inversion through [`crt_decompose`].
pub fn mk(k: u64) -> Result<ModK, Error> {
    let crt = crt_decompose(k)?;
    let m = ModK::build(k)?;
    for b in 0..k {
        assert_eq!(
            m.weak_inv[b as usize],
            crt.div(1, b),
            "weak inverse of {b} in M_{k} disagrees with its CRT decomposition"
        );
    }
    Ok(m)
}

impl ModK {
    fn build(k: u64) -> Result<ModK, Error> {
        let weak_inv = (0..k)
            .map(|b| weak_inverse_search(k, b).ok_or(Error::NonSquareFree(k)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ModK { k, weak_inv })
    }

    pub fn modulus(&self) -> u64 {
        self.k
    }
}

impl Meadow for ModK {
    type Elem = u64;

    fn name(&self) -> String {
        format!("mk:{}", self.k)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.k
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.k
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.k
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.k - a) % self.k
    }

    fn div(&self, a: &u64, b: &u64) -> u64 {
        a * self.weak_inv[*b as usize] % self.k
    }

    fn from_integer(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.k))
            .to_u64()
            .expect("residue fits")
    }

    fn carrier(&self) -> Option<Vec<u64>> {
        Some((0..self.k).collect())
    }

    fn sample(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.k)
    }

    fn format(&self, e: &u64) -> String {
        e.to_string()
    }

    fn known_characteristic(&self) -> Option<u64> {
        Some(self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weak_inverse_examples() {
        let m6 = mk(6).unwrap();
        assert_eq!(m6.div(&1, &2), 2);
        assert_eq!(m6.div(&1, &3), 3);
        assert_eq!(m6.div(&1, &5), 5);
        assert_eq!(m6.div(&4, &0), 0);
        let m2 = mk(2).unwrap();
        assert_eq!(m2.div(&1, &0), 0);
        assert_eq!(m2.div(&1, &1), 1);
    }

    #[test]
    fn non_square_free_moduli_are_rejected() {
        assert_eq!(weak_inverse_search(4, 2), None);
        assert!(matches!(mk(4), Err(Error::NonSquareFree(4))));
        assert!(matches!(mk(12), Err(Error::NonSquareFree(12))));
        assert!(matches!(mk(1), Err(Error::InvalidModulus(1))));
        assert!(matches!(mk(0), Err(Error::InvalidModulus(0))));
        assert!(matches!(mk(MAX_MODULUS + 1), Err(Error::InvalidModulus(_))));
    }

    #[test]
    fn crt_examples() {
        let c6 = crt_decompose(6).unwrap();
        assert_eq!(c6.primes(), [2, 3]);
        assert_eq!(c6.split(5), vec![1, 2]);
        assert_eq!(c6.join(&[1, 2]), 5);
        assert_eq!(crt_decompose(30).unwrap().primes(), [2, 3, 5]);
        assert_eq!(crt_decompose(2).unwrap().primes(), [2]);
        assert!(matches!(crt_decompose(18), Err(Error::NonSquareFree(18))));
        for k in [6u64, 10, 15, 30, 210] {
            let c = crt_decompose(k).unwrap();
            for a in 0..k {
                assert_eq!(c.join(&c.split(a)), a);
            }
        }
    }

    #[test]
    fn crt_factors_are_prime_fields() {
        let fs = crt_decompose(30).unwrap().factors();
        assert_eq!(fs.iter().map(ModK::modulus).collect::<Vec<_>>(), [2, 3, 5]);
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
