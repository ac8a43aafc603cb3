//! Terms over the ring, inversive and divisive meadow signatures.
//!
//! One AST covers all three signatures. A term is *divisive* when it has no
//! `Inv` node and *inversive* when it has no `Div` node; operations that only
//! make sense for one signature reject the other with
//! [`Error::MixedSignature`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A term over the meadow signatures.
///
/// Subtraction and exponentiation are not nodes: `p - q` is stored as
/// `Add(p, Neg(q))` and `p^n` as the unfolded product built by [`power`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "op", content = "args", rename_all = "lowercase")]
pub enum Term {
    Zero,
    One,
    Var(String),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Div(Box<Term>, Box<Term>),
    Inv(Box<Term>),
}

/// Which operator set a signature-specific operation expects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Signature {
    /// Ring operators plus binary division.
    Divisive,
    /// Ring operators plus unary inverse.
    Inversive,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Signature::Divisive => f.write_str("divisive"),
            Signature::Inversive => f.write_str("inversive"),
        }
    }
}

#[allow(clippy::should_implement_trait)]
impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Term) -> Term {
        Term::Neg(Box::new(a))
    }

    pub fn div(a: Term, b: Term) -> Term {
        Term::Div(Box::new(a), Box::new(b))
    }

    pub fn inv(a: Term) -> Term {
        Term::Inv(Box::new(a))
    }

    /// `a - b`, i.e. `a + (-b)`.
    pub fn sub(a: Term, b: Term) -> Term {
        Term::add(a, Term::neg(b))
    }

    /// Immediate subterms, left to right.
    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Zero | Term::One | Term::Var(_) => vec![],
            Term::Neg(a) | Term::Inv(a) => vec![a],
            Term::Add(a, b) | Term::Mul(a, b) | Term::Div(a, b) => vec![a, b],
        }
    }

    /// Pre-order iterator over all subterms, including `self`.
    pub fn subterms(&self) -> Subterms<'_> {
        Subterms { stack: vec![self] }
    }

    pub fn contains_div(&self) -> bool {
        self.subterms().any(|t| matches!(t, Term::Div(..)))
    }

    pub fn contains_inv(&self) -> bool {
        self.subterms().any(|t| matches!(t, Term::Inv(..)))
    }

    pub fn is_divisive(&self) -> bool {
        !self.contains_inv()
    }

    pub fn is_inversive(&self) -> bool {
        !self.contains_div()
    }

    /// No `Div` and no `Inv`: a term over the commutative ring signature.
    pub fn is_ring_term(&self) -> bool {
        !self
            .subterms()
            .any(|t| matches!(t, Term::Div(..) | Term::Inv(..)))
    }

    /// Errors unless the term belongs to `sig`.
    pub fn require(&self, sig: Signature) -> Result<(), Error> {
        let ok = match sig {
            Signature::Divisive => self.is_divisive(),
            Signature::Inversive => self.is_inversive(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::MixedSignature { expected: sig })
        }
    }

    /// Variables occurring in the term, in lexicographic order.
    pub fn vars(&self) -> BTreeSet<String> {
        self.subterms()
            .filter_map(|t| match t {
                Term::Var(v) => Some(v.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn size(&self) -> usize {
        self.subterms().count()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Recognizes the inductive numeral shape: `0`, `n̄ + 1` and `-n̄`.
    ///
    /// `One` on its own is the constant, not the numeral of 1 (`0 + 1`), so
    /// it is not recognized here.
    pub fn as_numeral(&self) -> Option<BigInt> {
        match self {
            Term::Neg(inner) => match inner.as_nat_numeral()? {
                n if n.is_zero() => None,
                n => Some(-n),
            },
            _ => self.as_nat_numeral(),
        }
    }

    fn as_nat_numeral(&self) -> Option<BigInt> {
        let mut count = BigInt::zero();
        let mut cur = self;
        loop {
            match cur {
                Term::Zero => return Some(count),
                Term::Add(a, b) if **b == Term::One => {
                    count += 1;
                    cur = a;
                }
                _ => return None,
            }
        }
    }
}

/// Pre-order subterm iterator.
pub struct Subterms<'a> {
    stack: Vec<&'a Term>,
}

impl<'a> Iterator for Subterms<'a> {
    type Item = &'a Term;

    fn next(&mut self) -> Option<&'a Term> {
        let t = self.stack.pop()?;
        match t {
            Term::Zero | Term::One | Term::Var(_) => {}
            Term::Neg(a) | Term::Inv(a) => self.stack.push(a),
            Term::Add(a, b) | Term::Mul(a, b) | Term::Div(a, b) => {
                self.stack.push(b);
                self.stack.push(a);
            }
        }
        Some(t)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print(self))
    }
}

/// The numeral of `n`: `0̄ = 0`, `(n+1)‾ = n̄ + 1`, and `(-n)‾ = -n̄`.
///
/// The result has `|n|` addition nodes, so this is only meant for numerals
/// of moderate size.
pub fn mk_numeral(n: &BigInt) -> Term {
    let mut t = Term::Zero;
    let mut k = BigInt::zero();
    let target = n.abs();
    while k < target {
        t = Term::add(t, Term::One);
        k += 1;
    }
    if n.is_negative() {
        Term::neg(t)
    } else {
        t
    }
}

/// Convenience wrapper over [`mk_numeral`] for machine integers.
pub fn numeral(n: i64) -> Term {
    mk_numeral(&BigInt::from(n))
}

/// `t^0 = 1`, `t^(n+1) = t^n · t`.
pub fn power(t: &Term, n: u32) -> Term {
    let mut acc = Term::One;
    for _ in 0..n {
        acc = Term::mul(acc, t.clone());
    }
    acc
}

/// Recognizes the unfolded shape produced by [`power`] with exponent ≥ 1.
pub fn as_power(t: &Term) -> Option<(&Term, u32)> {
    let Term::Mul(_, base) = t else { return None };
    let mut k = 0u32;
    let mut cur = t;
    loop {
        match cur {
            Term::One => return if k >= 1 { Some((base, k)) } else { None },
            Term::Mul(a, b) if **b == **base => {
                k += 1;
                cur = a;
            }
            _ => return None,
        }
    }
}

/// Root is a division node.
pub fn is_fraction(t: &Term) -> Result<bool, Error> {
    t.require(Signature::Divisive)?;
    Ok(matches!(t, Term::Div(..)))
}

/// A fraction none of whose proper subterms is a fraction, i.e. both
/// children of the root are division-free.
pub fn is_simple_fraction(t: &Term) -> Result<bool, Error> {
    t.require(Signature::Divisive)?;
    Ok(match t {
        Term::Div(a, b) => !a.contains_div() && !b.contains_div(),
        _ => false,
    })
}

/// No variable occurs in `t`.
pub fn is_closed(t: &Term) -> bool {
    !t.subterms().any(|s| matches!(s, Term::Var(_)))
}

/// Simultaneous replacement of variables. Unbound variables are kept.
pub fn substitute(t: &Term, binding: &BTreeMap<String, Term>) -> Term {
    match t {
        Term::Zero | Term::One => t.clone(),
        Term::Var(v) => binding.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::Add(a, b) => Term::add(substitute(a, binding), substitute(b, binding)),
        Term::Mul(a, b) => Term::mul(substitute(a, binding), substitute(b, binding)),
        Term::Div(a, b) => Term::div(substitute(a, binding), substitute(b, binding)),
        Term::Neg(a) => Term::neg(substitute(a, binding)),
        Term::Inv(a) => Term::inv(substitute(a, binding)),
    }
}

/// Rewrites every `p ÷ q` into `p · q⁻¹`.
pub fn to_inversive(t: &Term) -> Result<Term, Error> {
    t.require(Signature::Divisive)?;
    Ok(div_to_inv(t))
}

fn div_to_inv(t: &Term) -> Term {
    match t {
        Term::Zero | Term::One | Term::Var(_) => t.clone(),
        Term::Add(a, b) => Term::add(div_to_inv(a), div_to_inv(b)),
        Term::Mul(a, b) => Term::mul(div_to_inv(a), div_to_inv(b)),
        Term::Neg(a) => Term::neg(div_to_inv(a)),
        Term::Div(a, b) => Term::mul(div_to_inv(a), Term::inv(div_to_inv(b))),
        Term::Inv(_) => unreachable!("checked divisive"),
    }
}

/// Rewrites every `p⁻¹` into `1 ÷ p`.
pub fn to_divisive(t: &Term) -> Result<Term, Error> {
    t.require(Signature::Inversive)?;
    Ok(inv_to_div(t))
}

fn inv_to_div(t: &Term) -> Term {
    match t {
        Term::Zero | Term::One | Term::Var(_) => t.clone(),
        Term::Add(a, b) => Term::add(inv_to_div(a), inv_to_div(b)),
        Term::Mul(a, b) => Term::mul(inv_to_div(a), inv_to_div(b)),
        Term::Neg(a) => Term::neg(inv_to_div(a)),
        Term::Inv(a) => Term::div(Term::One, inv_to_div(a)),
        Term::Div(..) => unreachable!("checked inversive"),
    }
}

/// `p ↦ p ÷ 1`.
pub fn wrap_as_fraction(t: &Term) -> Term {
    Term::div(t.clone(), Term::One)
}
