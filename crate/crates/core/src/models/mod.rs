//! Divisive meadows as evaluators.
//!
//! Three families ship: [`Q0`] (zero-totalized rationals), [`ModK`] (the
//! minimal finite meadows on ℤ/kℤ for square-free `k`) and [`GaloisField`]
//! (zero-totalized GF(pⁿ)). All of them implement [`Meadow`], and terms are
//! evaluated through a compiled, shared-subterm form so that unfolded powers
//! cost no more than their distinct subterms.

mod check;
mod compile;
mod gf;
mod modk;
mod q0;
mod select;

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use rand::RngCore;

use crate::error::Error;
use crate::syntax::parse_divisive;
use crate::term::Term;

pub use check::{
    characteristic, check_eq, Characteristic, CheckReport, CheckSummary, Strategy, Verdict,
};
pub use compile::{Compiled, Folded};
pub use gf::{first_irreducible, gf, GaloisField};
pub(crate) use modk::is_prime;
pub use modk::{crt_decompose, mk, weak_inverse_search, Crt, ModK, MAX_MODULUS};
pub use q0::{q0, Rational, Q0};
pub use select::AnyModel;

/// Variable name to model element.
pub type Assignment<E> = BTreeMap<String, E>;

/// Exponents `n > m ≥ 1` with `xⁿ = xᵐ` valid in a model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct ExponentPair {
    pub n: u32,
    pub m: u32,
}

impl ExponentPair {
    /// Exponent `e = 2(n − m) − 1` with `1 ÷ x = xᵉ` in the model.
    pub fn inverse_exponent(&self) -> u32 {
        2 * (self.n - self.m) - 1
    }
}

/// A divisive meadow: a commutative ring with total division where
/// division by zero yields zero.
pub trait Meadow: Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Value of the numeral `n̄`.
    #[allow(clippy::wrong_self_convention)]
    fn from_integer(&self, n: &BigInt) -> Self::Elem;

    /// The carrier in its canonical order, when finite.
    fn carrier(&self) -> Option<Vec<Self::Elem>>;

    /// Draws an element for sampled checking.
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn format(&self, e: &Self::Elem) -> String;

    /// Free variables allowed in element syntax, with their values.
    fn element_constants(&self) -> Assignment<Self::Elem> {
        Assignment::new()
    }

    /// Parses an element written as a closed term (plus any
    /// [`Meadow::element_constants`]), e.g. `3/4`, `-2` or `a + 1`.
    fn parse_element(&self, text: &str) -> Result<Self::Elem, Error> {
        let invalid = |reason: String| Error::InvalidElement {
            model: self.name(),
            text: text.to_string(),
            reason,
        };
        let t = parse_divisive(text).map_err(|e| invalid(e.to_string()))?;
        eval(self, &t, &self.element_constants()).map_err(|e| invalid(e.to_string()))
    }

    /// Characteristic, when it is known without searching.
    fn known_characteristic(&self) -> Option<u64> {
        None
    }

    /// A closed-form exponent pair, when the model knows one.
    fn exponent_pair_hint(&self) -> Option<ExponentPair> {
        None
    }

    fn is_finite(&self) -> bool {
        self.carrier().is_some()
    }
}

/// Evaluates `t` under `a`. Inverse nodes are read as `1 ÷ p`, so inversive
/// terms evaluate like their divisive translation; mixed terms are rejected.
pub fn eval<M: Meadow + ?Sized>(
    model: &M,
    t: &Term,
    a: &Assignment<M::Elem>,
) -> Result<M::Elem, Error> {
    let c = Compiled::new(t)?;
    let inputs = c
        .vars()
        .iter()
        .map(|v| {
            a.get(v)
                .cloned()
                .ok_or_else(|| Error::UnboundVariable(v.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(c.eval(model, &inputs))
}

/// Evaluates a closed term.
pub fn eval_closed<M: Meadow + ?Sized>(model: &M, t: &Term) -> Result<M::Elem, Error> {
    eval(model, t, &Assignment::new())
}

/// `xᵏ` computed by repeated multiplication in the model.
pub fn pow_elem<M: Meadow + ?Sized>(model: &M, x: &M::Elem, k: u32) -> M::Elem {
    let mut acc = model.one();
    for _ in 0..k {
        acc = model.mul(&acc, x);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_divisive;
    use crate::term::numeral;

    fn closed<M: Meadow>(m: &M, src: &str) -> M::Elem {
        eval_closed(m, &parse_divisive(src).unwrap()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let q = q0();
        assert_eq!(q.format(&closed(&q, "1/0")), "0");
        assert_eq!(q.format(&closed(&q, "1 + 1/2")), "3/2");
        let m2 = mk(2).unwrap();
        assert_eq!(closed(&m2, "1 + 1/2"), 1);
        assert_eq!(closed(&m2, "1/0"), 0);
        let g = gf(2, 2).unwrap();
        assert_eq!(closed(&g, "1/0"), 0);
    }

    #[test]
    fn unbound_and_mixed_terms_are_rejected() {
        let q = q0();
        let t = parse_divisive("x + y").unwrap();
        let mut a = Assignment::new();
        a.insert("x".to_string(), q.one());
        assert_eq!(eval(&q, &t, &a), Err(Error::UnboundVariable("y".into())));
        let mixed = Term::div(Term::inv(Term::One), Term::One);
        assert!(matches!(
            eval_closed(&q, &mixed),
            Err(Error::MixedSignature { .. })
        ));
        let inv = Term::inv(numeral(2));
        assert_eq!(q.format(&eval_closed(&q, &inv).unwrap()), "1/2");
    }

    #[test]
    fn numerals_evaluate_homomorphically() {
        let m6 = mk(6).unwrap();
        let g9 = gf(3, 2).unwrap();
        let q = q0();
        for n in -15i64..=15 {
            for m in -6i64..=6 {
                let sum = Term::add(numeral(n), numeral(m));
                let prod = Term::mul(numeral(n), numeral(m));
                assert_eq!(
                    eval_closed(&q, &numeral(n + m)).unwrap(),
                    eval_closed(&q, &sum).unwrap()
                );
                assert_eq!(
                    eval_closed(&m6, &numeral(n * m)).unwrap(),
                    eval_closed(&m6, &prod).unwrap()
                );
                assert_eq!(
                    eval_closed(&g9, &numeral(n + m)).unwrap(),
                    eval_closed(&g9, &sum).unwrap()
                );
                assert_eq!(
                    eval_closed(&g9, &numeral(n * m)).unwrap(),
                    eval_closed(&g9, &prod).unwrap()
                );
            }
            let b = BigInt::from(n);
            assert_eq!(eval_closed(&q, &numeral(n)).unwrap(), q.from_integer(&b));
            assert_eq!(eval_closed(&m6, &numeral(n)).unwrap(), m6.from_integer(&b));
            assert_eq!(eval_closed(&g9, &numeral(n)).unwrap(), g9.from_integer(&b));
        }
    }

    #[test]
    fn element_syntax() {
        let q = q0();
        assert_eq!(q.format(&q.parse_element("3/4").unwrap()), "3/4");
        assert_eq!(q.format(&q.parse_element("-2").unwrap()), "-2");
        let m6 = mk(6).unwrap();
        assert_eq!(m6.parse_element("5").unwrap(), 5);
        assert_eq!(m6.parse_element("-1").unwrap(), 5);
        let g4 = gf(2, 2).unwrap();
        let a1 = g4.parse_element("a+1").unwrap();
        assert_eq!(g4.format(&a1), "a + 1");
        assert!(q.parse_element("x").is_err());
        assert!(q.parse_element("(").is_err());
    }
}
