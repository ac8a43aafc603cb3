//! Closed divisive terms as sums of signed numeral fractions, and closed
//! ring terms as signed numerals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::models::{mk, q0, Meadow};
use crate::term::{is_closed, mk_numeral, Signature, Term};

/// `±num/den` with `num, den ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedFraction {
    pub negative: bool,
    pub num: BigInt,
    pub den: BigInt,
}

impl SignedFraction {
    pub fn new(negative: bool, num: BigInt, den: BigInt) -> SignedFraction {
        assert!(num >= BigInt::one() && den >= BigInt::one());
        SignedFraction { negative, num, den }
    }

    /// Signed numerator.
    pub fn signed_num(&self) -> BigInt {
        if self.negative {
            -self.num.clone()
        } else {
            self.num.clone()
        }
    }

    /// `n̄ ÷ m̄`, or `-(n̄ ÷ m̄)`.
    pub fn render(&self) -> Term {
        let f = Term::div(mk_numeral(&self.num), mk_numeral(&self.den));
        if self.negative {
            Term::neg(f)
        } else {
            f
        }
    }

    pub fn eval<M: Meadow + ?Sized>(&self, model: &M) -> M::Elem {
        let v = model.div(
            &model.from_integer(&self.num),
            &model.from_integer(&self.den),
        );
        if self.negative {
            model.neg(&v)
        } else {
            v
        }
    }
}

impl fmt::Display for SignedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { '-' } else { '+' };
        write!(f, "{sign}{}/{}", self.num, self.den)
    }
}

/// A basic term: a sum of signed numeral fractions; empty means `0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BasicTerm {
    pub summands: Vec<SignedFraction>,
}

impl BasicTerm {
    pub fn zero() -> BasicTerm {
        BasicTerm::default()
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// Left-nested sum of the rendered summands; `0` when empty.
    pub fn render(&self) -> Term {
        let mut it = self.summands.iter().map(SignedFraction::render);
        match it.next() {
            None => Term::Zero,
            Some(first) => it.fold(first, Term::add),
        }
    }

    /// Value computed from the integers directly, without building the
    /// numerals as terms.
    pub fn eval<M: Meadow + ?Sized>(&self, model: &M) -> M::Elem {
        self.summands
            .iter()
            .fold(model.zero(), |acc, s| model.add(&acc, &s.eval(model)))
    }

    /// Largest numerator or denominator.
    pub fn max_numeral(&self) -> BigInt {
        self.summands
            .iter()
            .flat_map(|s| [&s.num, &s.den])
            .max()
            .cloned()
            .unwrap_or_default()
    }

    fn neg(mut self) -> BasicTerm {
        for s in &mut self.summands {
            s.negative = !s.negative;
        }
        self
    }

    fn concat(mut self, other: BasicTerm) -> BasicTerm {
        self.summands.extend(other.summands);
        self.merge()
    }

    fn mul(&self, other: &BasicTerm) -> BasicTerm {
        let summands = self
            .summands
            .iter()
            .flat_map(|a| {
                other.summands.iter().map(move |b| SignedFraction {
                    negative: a.negative != b.negative,
                    num: &a.num * &b.num,
                    den: &a.den * &b.den,
                })
            })
            .collect();
        BasicTerm { summands }.merge()
    }

    /// Combines summands over the same denominator, keeping first-occurrence
    /// order, and drops those whose numerators cancel.
    fn merge(self) -> BasicTerm {
        let mut out: Vec<(BigInt, BigInt)> = Vec::new();
        for s in self.summands {
            match out.iter_mut().find(|(d, _)| *d == s.den) {
                Some((_, n)) => *n += s.signed_num(),
                None => out.push((s.den.clone(), s.signed_num())),
            }
        }
        BasicTerm {
            summands: out
                .into_iter()
                .filter(|(_, n)| !n.is_zero())
                .map(|(d, n)| SignedFraction::new(n.is_negative(), n.abs(), d))
                .collect(),
        }
    }

    /// `1 ÷ self`.
    ///
    /// Take a pairwise coprime base `c₁, …, c_r` for the denominators. In a
    /// zero-totalized field at most one `cⱼ` is zero, so
    ///
    /// ```text
    /// 1 ÷ s = (P÷P)·(D÷N) + Σⱼ (1 − cⱼ÷cⱼ)·(Dⱼ ÷ Nⱼ)
    /// ```
    ///
    /// where `P = ∏ cⱼ`, `D ÷ N` is `1 ÷ s` computed with every summand
    /// present and `Dⱼ ÷ Nⱼ` with the summands whose denominator shares a
    /// factor with `cⱼ` removed.
    fn invert(&self) -> BasicTerm {
        let dens: Vec<BigInt> = self.summands.iter().map(|s| s.den.clone()).collect();
        let base = coprime_base(&dens);
        let quotient = |keep: &dyn Fn(&SignedFraction) -> bool| -> Option<(BigInt, BigInt)> {
            let kept: Vec<&SignedFraction> = self.summands.iter().filter(|s| keep(s)).collect();
            let d: BigInt = kept.iter().map(|s| &s.den).product();
            let n: BigInt = kept.iter().map(|s| &d / &s.den * s.signed_num()).sum();
            (!n.is_zero()).then_some((d, n))
        };
        let push = |out: &mut Vec<SignedFraction>,
                    negative: bool,
                    scale: &BigInt,
                    (d, n): &(BigInt, BigInt)| {
            out.push(SignedFraction::new(
                negative != n.is_negative(),
                scale * d,
                scale * n.abs(),
            ));
        };
        let mut out = Vec::new();
        if let Some(full) = quotient(&|_| true) {
            let product: BigInt = base.iter().product();
            push(&mut out, false, &product, &full);
        }
        for c in &base {
            if let Some(part) = quotient(&|s| s.den.gcd(c).is_one()) {
                push(&mut out, false, &BigInt::one(), &part);
                push(&mut out, true, c, &part);
            }
        }
        BasicTerm { summands: out }.merge()
    }
}

impl fmt::Display for BasicTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Pairwise coprime integers `> 1` such that every input is a product of
/// powers of them, by repeated gcd splitting. Sorted ascending.
pub fn coprime_base(nums: &[BigInt]) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = nums
        .iter()
        .map(|n| n.abs())
        .filter(|n| n > &BigInt::one())
        .collect();
    'refine: loop {
        for i in 0..base.len() {
            for j in i + 1..base.len() {
                let g = base[i].gcd(&base[j]);
                if !g.is_one() {
                    let b = base.swap_remove(j);
                    let a = base.swap_remove(i);
                    base.extend([&a / &g, &b / &g, g].into_iter().filter(|n| !n.is_one()));
                    continue 'refine;
                }
            }
        }
        break;
    }
    base.sort();
    base
}

fn require_closed_divisive(p: &Term) -> Result<(), Error> {
    p.require(Signature::Divisive)?;
    if !is_closed(p) {
        return Err(Error::OpenTerm);
    }
    Ok(())
}

/// A basic term that every meadow equates with the closed divisive term `p`.
///
/// Structural induction: sums concatenate, negation flips signs, products
/// multiply summand-wise, and a quotient multiplies by the inverse of the
/// denominator's basic term. Summands over a common denominator are
/// combined; fractions are not reduced.
pub fn to_basic(p: &Term) -> Result<BasicTerm, Error> {
    require_closed_divisive(p)?;
    Ok(basic(p))
}

fn basic(p: &Term) -> BasicTerm {
    match p {
        Term::Zero => BasicTerm::zero(),
        Term::One => BasicTerm {
            summands: vec![SignedFraction::new(false, BigInt::one(), BigInt::one())],
        },
        Term::Add(a, b) => basic(a).concat(basic(b)),
        Term::Neg(a) => basic(a).neg(),
        Term::Mul(a, b) => basic(a).mul(&basic(b)),
        Term::Div(a, b) => basic(a).mul(&basic(b).invert()),
        Term::Var(_) | Term::Inv(_) => unreachable!("checked closed and divisive"),
    }
}

/// Whether `t` has the shape of a basic term: built from `0`, `n̄ ÷ m̄`,
/// `-(n̄ ÷ m̄)` (with `n, m ≥ 1`) and `+`.
pub fn is_basic_term(t: &Term) -> bool {
    fn positive_fraction(t: &Term) -> bool {
        let Term::Div(a, b) = t else { return false };
        let pos = |u: &Term| u.as_numeral().is_some_and(|n| n.is_positive());
        pos(a) && pos(b)
    }
    match t {
        Term::Zero => true,
        Term::Add(a, b) => is_basic_term(a) && is_basic_term(b),
        Term::Neg(a) => positive_fraction(a),
        _ => positive_fraction(t),
    }
}

/// The integer `v` with `p = v̄` in every meadow, for a closed ring term `p`.
pub fn cr_normal(p: &Term) -> Result<BigInt, Error> {
    if !p.is_ring_term() {
        return Err(Error::NotRingTerm);
    }
    if !is_closed(p) {
        return Err(Error::OpenTerm);
    }
    fn go(p: &Term) -> BigInt {
        match p {
            Term::Zero => BigInt::zero(),
            Term::One => BigInt::one(),
            Term::Add(a, b) => go(a) + go(b),
            Term::Mul(a, b) => go(a) * go(b),
            Term::Neg(a) => -go(a),
            _ => unreachable!("checked closed ring term"),
        }
    }
    Ok(go(p))
}

/// The guard `r ÷ r`.
pub fn guard(r: &Term) -> Term {
    Term::div(r.clone(), r.clone())
}

/// Primes tried when cancelling common factors in [`tidy`].
const TIDY_PRIME_LIMIT: u64 = 1000;

/// Optional cleanup of a basic term.
///
/// Cancels a prime `p` from `±n/m` only while `p | n` and `p² | m`, so the
/// denominator keeps every prime factor and the value is unchanged in every
/// characteristic. Then combines equal denominators and sorts. The result is
/// re-checked against the input in Q₀ and M₃₀.
pub fn tidy(b: &BasicTerm) -> BasicTerm {
    let primes: Vec<BigInt> = (2..TIDY_PRIME_LIMIT)
        .filter(|&p| crate::models::is_prime(p))
        .map(BigInt::from)
        .collect();
    let reduced = b.summands.iter().map(|s| {
        let (mut n, mut m) = (s.num.clone(), s.den.clone());
        for p in &primes {
            if p > &n {
                break;
            }
            let p2 = p * p;
            while n.is_multiple_of(p) && m.is_multiple_of(&p2) {
                n /= p;
                m /= p;
            }
        }
        SignedFraction::new(s.negative, n, m)
    });
    let mut out = BasicTerm {
        summands: reduced.collect(),
    }
    .merge();
    out.summands
        .sort_by(|a, b| (&a.den, &a.num, a.negative).cmp(&(&b.den, &b.num, b.negative)));
    let m30 = mk(30).expect("30 is square-free");
    assert_eq!(out.eval(&q0()), b.eval(&q0()), "tidy changed the Q0 value");
    assert_eq!(out.eval(&m30), b.eval(&m30), "tidy changed the M30 value");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{eval_closed, gf};
    use crate::syntax::parse_divisive;
    use crate::term::numeral;

    fn basic_of(src: &str) -> BasicTerm {
        to_basic(&parse_divisive(src).unwrap()).unwrap()
    }

    fn sf(neg: bool, n: i64, d: i64) -> SignedFraction {
        SignedFraction::new(neg, n.into(), d.into())
    }

    #[test]
    fn examples() {
        assert_eq!(basic_of("1").summands, vec![sf(false, 1, 1)]);
        assert!(basic_of("1/0").is_zero());
        let two_thirds = Term::div(numeral(2), numeral(3));
        assert_eq!(
            to_basic(&two_thirds).unwrap().summands,
            vec![sf(false, 2, 3)]
        );
        assert_eq!(basic_of("(1+1)/((1+1)+1)").summands, vec![sf(false, 2, 3)]);
    }

    #[test]
    fn errors() {
        assert_eq!(to_basic(&Term::var("x")), Err(Error::OpenTerm));
        assert!(matches!(
            to_basic(&Term::inv(Term::One)),
            Err(Error::MixedSignature { .. })
        ));
        assert_eq!(cr_normal(&Term::var("x")), Err(Error::OpenTerm));
        assert_eq!(cr_normal(&guard(&Term::One)), Err(Error::NotRingTerm));
    }

    #[test]
    fn quotient_by_a_sum_splits_on_the_characteristic() {
        // 1 / (1/2 + 1/3): in characteristic 2 the value is 3, in 3 it is 2,
        // and 6/5 elsewhere
        let b = basic_of("1/(1/2 + 1/3)");
        assert_eq!(
            b.eval(&q0()),
            eval_closed(&q0(), &parse_divisive("6/5").unwrap()).unwrap()
        );
        assert_eq!(b.eval(&mk(2).unwrap()), 1);
        assert_eq!(b.eval(&mk(3).unwrap()), 2);
        assert_eq!(b.eval(&mk(5).unwrap()), 0);
        assert_eq!(b.eval(&mk(7).unwrap()), 6 * 3 % 7);
        assert!(is_basic_term(&b.render()));
    }

    #[test]
    fn rendering_preserves_values() {
        let models_ok = |src: &str| {
            let t = parse_divisive(src).unwrap();
            let b = to_basic(&t).unwrap();
            let r = b.render();
            assert!(is_basic_term(&r), "{src}: {r}");
            assert_eq!(
                eval_closed(&q0(), &t).unwrap(),
                eval_closed(&q0(), &r).unwrap(),
                "{src}"
            );
            let m6 = mk(6).unwrap();
            assert_eq!(
                eval_closed(&m6, &t).unwrap(),
                eval_closed(&m6, &r).unwrap(),
                "{src}"
            );
            let g4 = gf(2, 2).unwrap();
            assert_eq!(
                eval_closed(&g4, &t).unwrap(),
                eval_closed(&g4, &r).unwrap(),
                "{src}"
            );
            assert_eq!(b.eval(&m6), eval_closed(&m6, &r).unwrap());
        };
        for src in [
            "0",
            "-(1/2)",
            "(1 - 2/2) * 3",
            "1/(1/2 - 1/3)",
            "(2/3)/(4/6)",
            "1/(1/(1/2))",
            "(1 + 1/2)/(3 - 1/5)",
            "-(3/(4 - 2*2))",
        ] {
            models_ok(src);
        }
    }

    #[test]
    fn basic_term_shape() {
        let one = numeral(1);
        assert!(is_basic_term(&Term::Zero));
        assert!(is_basic_term(&Term::div(one.clone(), numeral(3))));
        assert!(is_basic_term(&Term::add(
            Term::Zero,
            Term::neg(Term::div(numeral(2), one.clone()))
        )));
        assert!(!is_basic_term(&Term::div(Term::One, numeral(3))));
        assert!(!is_basic_term(&Term::div(numeral(0), one.clone())));
        assert!(!is_basic_term(&Term::div(numeral(-2), one)));
    }

    #[test]
    fn coprime_bases() {
        let b = |v: &[i64]| {
            let v: Vec<BigInt> = v.iter().map(|&n| n.into()).collect();
            coprime_base(&v)
                .into_iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        assert_eq!(b(&[2, 3]), "2,3");
        assert_eq!(b(&[6, 4]), "2,3");
        assert_eq!(b(&[12, 18, 1]), "2,3");
        assert_eq!(b(&[35, 77, 1001]), "5,7,11,13");
        assert_eq!(b(&[1, 1]), "");
    }

    #[test]
    fn cr_normal_examples() {
        let v = |s: &str| cr_normal(&parse_divisive(s).unwrap()).unwrap();
        assert_eq!(v("1 + -1"), BigInt::zero());
        assert_eq!(v("(1+1)*(1+1)"), BigInt::from(4));
        assert_eq!(v("-(1+1)"), BigInt::from(-2));
    }

    #[test]
    fn guards() {
        let q = q0();
        assert_eq!(eval_closed(&q, &guard(&numeral(2))).unwrap(), q.one());
        assert_eq!(eval_closed(&q, &guard(&Term::Zero)).unwrap(), q.zero());
        let m2 = mk(2).unwrap();
        let g = guard(&Term::var("x"));
        let mut a = crate::models::Assignment::new();
        a.insert("x".to_string(), 1u64);
        assert_eq!(crate::models::eval(&m2, &g, &a).unwrap(), 1);
    }

    #[test]
    fn tidy_cancels_only_safe_factors() {
        let b = BasicTerm {
            summands: vec![
                sf(false, 2, 4),
                sf(false, 3, 6),
                sf(true, 5, 25),
                sf(false, 1, 5),
            ],
        };
        let t = tidy(&b);
        // 2/4 -> 1/2; 3/6 keeps its 3 since 9 does not divide 6;
        // -5/25 -> -1/5 then merges with 1/5 to nothing
        assert_eq!(t.summands, vec![sf(false, 1, 2), sf(false, 3, 6)]);
    }
}
