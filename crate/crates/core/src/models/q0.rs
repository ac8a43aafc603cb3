use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, RngCore};

use super::Meadow;

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Sampling range for numerators in sampled checks.
pub const SAMPLE_NUMERATORS: (i64, i64) = (-99, 99);
/// Sampling range for denominators in sampled checks.
pub const SAMPLE_DENOMINATORS: (i64, i64) = (1, 99);

/// The zero-totalized field of rational numbers with division.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Q0;

pub fn q0() -> Q0 {
    Q0
}

impl Meadow for Q0 {
    type Elem = Rational;

    fn name(&self) -> String {
        "q0".into()
    }

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn div(&self, a: &Rational, b: &Rational) -> Rational {
        if b.is_zero() {
            Rational::zero()
        } else {
            a / b
        }
    }

    fn from_integer(&self, n: &BigInt) -> Rational {
        Rational::from_integer(n.clone())
    }

    fn carrier(&self) -> Option<Vec<Rational>> {
        None
    }

    /// Numerator uniform in `[-99, 99]`, denominator uniform in `[1, 99]`.
    /// A zero numerator yields the zero element, which exercises division
    /// by zero in the checked terms.
    fn sample(&self, rng: &mut dyn RngCore) -> Rational {
        let n = rng.gen_range(SAMPLE_NUMERATORS.0..=SAMPLE_NUMERATORS.1);
        let d = rng.gen_range(SAMPLE_DENOMINATORS.0..=SAMPLE_DENOMINATORS.1);
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn format(&self, e: &Rational) -> String {
        e.to_string()
    }

    fn known_characteristic(&self) -> Option<u64> {
        Some(0)
    }
}
