//! Fraction transforms: closed simple fractions over Q₀, division
//! elimination in finite meadows, decomposition into sums of simple
//! fractions, and a falsifier for simple-fraction forms of `1 + 1÷x`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::models::{eval_closed, q0, ExponentPair, Meadow, Rational};
use crate::normal::to_basic;
use crate::poly::{MultiPoly, UniPoly};
use crate::term::{is_closed, mk_numeral, power, wrap_as_fraction, Signature, Term};

/// `±num/den` in lowest terms with `den ≥ 1`; zero is `+0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleClosedFraction {
    pub negative: bool,
    pub num: BigInt,
    pub den: BigInt,
}

impl SimpleClosedFraction {
    pub fn from_rational(r: &Rational) -> SimpleClosedFraction {
        // BigRational keeps lowest terms with a positive denominator
        SimpleClosedFraction {
            negative: r.is_negative(),
            num: r.numer().abs(),
            den: r.denom().clone(),
        }
    }

    pub fn to_rational(&self) -> Rational {
        let n = if self.negative {
            -&self.num
        } else {
            self.num.clone()
        };
        Rational::new(n, self.den.clone())
    }

    /// `n̄ ÷ m̄`, with negatives as `(-n̄) ÷ m̄` so the root stays a division.
    pub fn render(&self) -> Term {
        let n = if self.negative {
            -&self.num
        } else {
            self.num.clone()
        };
        Term::div(mk_numeral(&n), mk_numeral(&self.den))
    }
}

impl fmt::Display for SimpleClosedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { '-' } else { '+' };
        write!(f, "{sign}{}/{}", self.num, self.den)
    }
}

fn require_closed_divisive(p: &Term) -> Result<(), Error> {
    p.require(Signature::Divisive)?;
    if !is_closed(p) {
        return Err(Error::OpenTerm);
    }
    Ok(())
}

/// The simple closed fraction equal to `p` in Q₀, by exact evaluation.
pub fn closed_to_simple_fraction_q0(p: &Term) -> Result<SimpleClosedFraction, Error> {
    require_closed_divisive(p)?;
    Ok(SimpleClosedFraction::from_rational(&eval_closed(&q0(), p)?))
}

/// Same result by way of the basic term of `p`: summands are combined with
/// `n/m + n'/m' = (n·m' + n'·m)/(m·m')`, which holds in Q₀ since every
/// nonzero numeral is invertible there, and the result is reduced.
pub fn closed_to_simple_fraction_q0_inductive(p: &Term) -> Result<SimpleClosedFraction, Error> {
    let b = to_basic(p)?;
    let (n, m) = b
        .summands
        .iter()
        .fold((BigInt::zero(), BigInt::one()), |(n, m), s| {
            (&n * &s.den + s.signed_num() * &m, m * &s.den)
        });
    let g = n.gcd(&m);
    let (n, m) = (n / &g, m / &g);
    Ok(SimpleClosedFraction {
        negative: n.is_negative(),
        num: n.abs(),
        den: m,
    })
}

/// The least `(n, m)`, ordered by `n` then `m`, with `n > m ≥ 1` and
/// `xⁿ = xᵐ` valid in the finite model.
///
/// Each element's powers `v¹, v², …` are eventually periodic with some
/// preperiod `μᵥ ≥ 1` and period `λᵥ`. The pair is `(μ + L, μ)` with `μ` the
/// largest preperiod and `L` the lcm of the periods.
pub fn find_annihilating_exponents<M: Meadow + ?Sized>(model: &M) -> Result<ExponentPair, Error> {
    let carrier = model
        .carrier()
        .ok_or_else(|| Error::InfiniteCarrier(model.name()))?;
    let (mut mu, mut lambda) = (1u64, 1u64);
    for v in &carrier {
        let mut seen: HashMap<M::Elem, u64> = HashMap::new();
        let mut cur = v.clone();
        let mut k = 1u64;
        loop {
            if let Some(&first) = seen.get(&cur) {
                mu = mu.max(first);
                lambda = lambda.lcm(&(k - first));
                break;
            }
            seen.insert(cur.clone(), k);
            cur = model.mul(&cur, v);
            k += 1;
        }
    }
    let n = u32::try_from(mu + lambda).expect("exponent fits in u32");
    Ok(ExponentPair { n, m: mu as u32 })
}

/// The model's own exponent pair when it has one (GF(q) uses `(q, 1)`),
/// otherwise the search result.
pub fn exponent_pair<M: Meadow + ?Sized>(model: &M) -> Result<ExponentPair, Error> {
    match model.exponent_pair_hint() {
        Some(p) => Ok(p),
        None => find_annihilating_exponents(model),
    }
}

/// Rewrites innermost-first `p ÷ q` to `p · qᵉ` (and `1 ÷ q` to `qᵉ`) where
/// `e = 2(n − m) − 1` for the model's exponent pair. The output is
/// division-free and equal to `t` in the model.
pub fn eliminate_division<M: Meadow + ?Sized>(model: &M, t: &Term) -> Result<Term, Error> {
    t.require(Signature::Divisive)?;
    if !model.is_finite() {
        return Err(Error::InfiniteCarrier(model.name()));
    }
    let e = exponent_pair(model)?.inverse_exponent();
    fn go(t: &Term, e: u32) -> Term {
        match t {
            Term::Zero | Term::One | Term::Var(_) => t.clone(),
            Term::Add(a, b) => Term::add(go(a, e), go(b, e)),
            Term::Mul(a, b) => Term::mul(go(a, e), go(b, e)),
            Term::Neg(a) => Term::neg(go(a, e)),
            Term::Div(a, b) => {
                let inv = power(&go(b, e), e);
                match go(a, e) {
                    Term::One => inv,
                    p => Term::mul(p, inv),
                }
            }
            Term::Inv(_) => unreachable!("checked divisive"),
        }
    }
    Ok(go(t, e))
}

/// `eliminate_division(model, t) ÷ 1`.
pub fn to_simple_fraction_finite<M: Meadow + ?Sized>(model: &M, t: &Term) -> Result<Term, Error> {
    Ok(wrap_as_fraction(&eliminate_division(model, t)?))
}

/// `f₁÷g₁ + … + fₙ÷gₙ` with polynomial numerators and denominators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SumOfSimpleFractions {
    pub summands: Vec<(MultiPoly, MultiPoly)>,
}

impl SumOfSimpleFractions {
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Left-nested sum of simple fractions; `0` when empty.
    pub fn render(&self) -> Term {
        let mut it = self
            .summands
            .iter()
            .map(|(f, g)| Term::div(f.render(), g.render()));
        match it.next() {
            None => Term::Zero,
            Some(first) => it.fold(first, Term::add),
        }
    }
}

impl fmt::Display for SumOfSimpleFractions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|(n, d)| format!("({n}, {d})"))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

type Sum = Vec<(MultiPoly, MultiPoly)>;

/// Decomposes a divisive term into a sum of simple fractions equal to it in
/// every meadow.
///
/// Sums concatenate, negation negates numerators and products multiply
/// pairwise. A quotient multiplies by the inverse of the denominator's sum
/// `s = Σ fᵢ÷gᵢ`, expanded over the guards `eᵢ = gᵢ÷gᵢ`:
///
/// ```text
/// 1 ÷ s = Σ_{S ≠ ∅} ∏_{i∈S} eᵢ · ∏_{j∉S} (1 − eⱼ) · (D_S ÷ N_S)
/// D_S = ∏_{i∈S} gᵢ,   N_S = Σ_{i∈S} fᵢ · ∏_{j∈S, j≠i} gⱼ
/// ```
///
/// with the `1 − eⱼ` factors multiplied out. Guards of constant
/// denominators `±1` are `1` and are not split. Output size is exponential
/// in the number of summands being inverted.
pub fn to_sum_of_simple_fractions(t: &Term) -> Result<SumOfSimpleFractions, Error> {
    t.require(Signature::Divisive)?;
    Ok(SumOfSimpleFractions { summands: sos(t) })
}

fn sos(t: &Term) -> Sum {
    match t {
        Term::Zero => Vec::new(),
        Term::One => vec![(MultiPoly::one(), MultiPoly::one())],
        Term::Var(v) => vec![(MultiPoly::var(v.clone()), MultiPoly::one())],
        Term::Add(a, b) => {
            let mut s = sos(a);
            s.extend(sos(b));
            merge(s)
        }
        Term::Neg(a) => sos(a).into_iter().map(|(f, g)| (f.neg(), g)).collect(),
        Term::Mul(a, b) => product(&sos(a), &sos(b)),
        Term::Div(a, b) => product(&sos(a), &invert(&sos(b))),
        Term::Inv(_) => unreachable!("checked divisive"),
    }
}

/// Makes the leading coefficient of the denominator positive.
fn normalize((f, g): (MultiPoly, MultiPoly)) -> (MultiPoly, MultiPoly) {
    if g.leading_coeff().is_some_and(Signed::is_negative) {
        (f.neg(), g.neg())
    } else {
        (f, g)
    }
}

/// Adds numerators over equal denominators, in first-occurrence order, and
/// drops zero numerators.
fn merge(s: Sum) -> Sum {
    let mut out: Sum = Vec::new();
    for (f, g) in s.into_iter().map(normalize) {
        match out.iter_mut().find(|(_, h)| *h == g) {
            Some((acc, _)) => *acc = acc.add(&f),
            None => out.push((f, g)),
        }
    }
    out.retain(|(f, _)| !f.is_zero());
    out
}

fn product(a: &Sum, b: &Sum) -> Sum {
    merge(
        a.iter()
            .flat_map(|(f1, g1)| b.iter().map(move |(f2, g2)| (f1.mul(f2), g1.mul(g2))))
            .collect(),
    )
}

fn invert(s: &Sum) -> Sum {
    let certain: Vec<usize> = (0..s.len())
        .filter(|&i| s[i].1.as_constant().is_some_and(|c| c.abs().is_one()))
        .collect();
    let open: Vec<usize> = (0..s.len()).filter(|i| !certain.contains(i)).collect();
    let pick = |mask: u64| {
        open.iter()
            .enumerate()
            .filter(move |(b, _)| mask >> b & 1 == 1)
            .map(|(_, &i)| i)
    };
    let full = (1u64 << open.len()) - 1;
    let mut out = Vec::new();
    for chosen in 0..=full {
        let members: Vec<usize> = certain.iter().copied().chain(pick(chosen)).collect();
        if members.is_empty() {
            continue;
        }
        let d = members
            .iter()
            .fold(MultiPoly::one(), |acc, &i| acc.mul(&s[i].1));
        let n = members.iter().fold(MultiPoly::zero(), |acc, &i| {
            let others = members
                .iter()
                .filter(|&&j| j != i)
                .fold(MultiPoly::one(), |p, &j| p.mul(&s[j].1));
            acc.add(&others.mul(&s[i].0))
        });
        if n.is_zero() {
            continue;
        }
        let guards_in = pick(chosen).fold(MultiPoly::one(), |acc, i| acc.mul(&s[i].1));
        // expand ∏_{j∉S}(1 − eⱼ) as Σ_T (−1)^|T| ∏_{j∈T} eⱼ
        let rest = full & !chosen;
        let mut sub = rest;
        loop {
            let g = pick(sub).fold(guards_in.clone(), |acc, i| acc.mul(&s[i].1));
            let num = g.mul(&d);
            let num = if sub.count_ones() % 2 == 1 {
                num.neg()
            } else {
                num
            };
            out.push((num, g.mul(&n)));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    merge(out)
}

/// Exact evidence that `1 + 1÷x = f÷g` fails in Q₀.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Falsification {
    pub witness: Rational,
    /// `1 + 1÷q`.
    pub lhs: Rational,
    /// `f(q) ÷ g(q)`.
    pub rhs: Rational,
}

/// A rational `q` at which Q₀ separates `1 + 1÷x` from `f(x) ÷ g(x)`.
///
/// If the sides differ at `0`, that is the witness. Otherwise `g(0) ≠ 0`;
/// on `[0, ε]` with `ε = min(1, |g(0)| / (2·Σ i·|bᵢ|))` we have
/// `|g| ≥ |g(0)|/2` and `|f| ≤ a = Σ |aᵢ|·εⁱ`, so any
/// `q ≤ min(ε/2, 1/(⌈2a/|g(0)|⌉ + 1))` makes `1 + 1/q` exceed `|f(q)/g(q)|`.
pub fn falsify_simple_fraction_claim(f: &UniPoly, g: &UniPoly) -> Result<Falsification, Error> {
    let q = q0();
    let sides = |x: &Rational| {
        let lhs = q.add(&q.one(), &q.div(&q.one(), x));
        let rhs = q.div(&f.eval(&q, x), &g.eval(&q, x));
        (lhs, rhs)
    };
    let zero = Rational::zero();
    let (l0, r0) = sides(&zero);
    if l0 != r0 {
        return Ok(Falsification {
            witness: zero,
            lhs: l0,
            rhs: r0,
        });
    }
    let g0 = Rational::from_integer(g.coeff(0).abs());
    let slope: BigInt = g
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, b)| BigInt::from(i) * b.abs())
        .sum();
    let one = Rational::one();
    let eps = if slope.is_zero() {
        one.clone()
    } else {
        (&g0 / (Rational::from_integer(slope) * BigInt::from(2))).min(one.clone())
    };
    let a: Rational = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| Rational::from_integer(c.abs()) * pow_q(&eps, i))
        .sum();
    let b = &g0 / BigInt::from(2);
    let steps = (a.clone() * BigInt::from(2) / &g0).ceil() + &one;
    let x = (&eps / BigInt::from(2)).min(one.clone() / steps);
    let (lhs, rhs) = sides(&x);
    let bound_holds = x.is_positive() && !b.is_zero() && lhs > (a / b);
    if !bound_holds || lhs == rhs {
        return Err(Error::NoWitnessConstructed(format!(
            "candidate ({f})/({g}) at x = {x}"
        )));
    }
    Ok(Falsification {
        witness: x,
        lhs,
        rhs,
    })
}

fn pow_q(x: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{check_eq, gf, mk, Strategy, Verdict};
    use crate::syntax::parse_divisive;
    use crate::term::{is_simple_fraction, numeral};

    fn p(src: &str) -> Term {
        parse_divisive(src).unwrap()
    }

    #[test]
    fn closed_fractions() {
        let show = |src: &str| closed_to_simple_fraction_q0(&p(src)).unwrap().to_string();
        assert_eq!(show("1 + 1/2"), "+3/2");
        assert_eq!(show("1/0"), "+0/1");
        assert_eq!(show("2/4"), "+1/2");
        assert_eq!(show("1 - 5/2"), "-3/2");
        for src in ["1 + 1/2", "1/0", "2/4", "1 - 5/2", "1/(1/2 + 1/3)"] {
            assert_eq!(
                closed_to_simple_fraction_q0(&p(src)).unwrap(),
                closed_to_simple_fraction_q0_inductive(&p(src)).unwrap()
            );
            let r = closed_to_simple_fraction_q0(&p(src)).unwrap().render();
            assert!(is_simple_fraction(&r).unwrap() && is_closed(&r));
        }
        let neg = closed_to_simple_fraction_q0(&p("-1/2")).unwrap().render();
        assert_eq!(neg, Term::div(numeral(-1), numeral(2)));
        assert_eq!(closed_to_simple_fraction_q0(&p("x")), Err(Error::OpenTerm));
    }

    #[test]
    fn exponent_pairs() {
        let pair = |m: &dyn Fn() -> Result<ExponentPair, Error>| {
            let ExponentPair { n, m } = m().unwrap();
            (n, m)
        };
        assert_eq!(
            pair(&|| find_annihilating_exponents(&mk(2).unwrap())),
            (2, 1)
        );
        assert_eq!(
            pair(&|| find_annihilating_exponents(&mk(3).unwrap())),
            (3, 1)
        );
        assert_eq!(
            pair(&|| find_annihilating_exponents(&mk(6).unwrap())),
            (3, 1)
        );
        assert_eq!(
            pair(&|| find_annihilating_exponents(&mk(30).unwrap())),
            (5, 1)
        );
        assert_eq!(
            pair(&|| find_annihilating_exponents(&gf(2, 2).unwrap())),
            (4, 1)
        );
        assert_eq!(pair(&|| exponent_pair(&gf(3, 2).unwrap())), (9, 1));
        assert!(matches!(
            find_annihilating_exponents(&q0()),
            Err(Error::InfiniteCarrier(_))
        ));
    }

    #[test]
    fn division_elimination_examples() {
        let x = Term::var("x");
        let m2 = mk(2).unwrap();
        assert_eq!(eliminate_division(&m2, &p("1/x")).unwrap(), power(&x, 1));
        let m3 = mk(3).unwrap();
        let x1 = p("x + 1");
        assert_eq!(
            eliminate_division(&m3, &p("1/(x+1)")).unwrap(),
            power(&x1, 3)
        );
        let m6 = mk(6).unwrap();
        assert_eq!(eliminate_division(&m6, &p("1/x")).unwrap(), power(&x, 3));
        assert_eq!(
            to_simple_fraction_finite(&m2, &p("1 + 1/x")).unwrap(),
            Term::div(Term::add(Term::One, power(&x, 1)), Term::One)
        );
        assert_eq!(to_simple_fraction_finite(&m6, &x).unwrap(), p("x/1"));
        let t = p("1/(1/x)");
        let r = to_simple_fraction_finite(&m3, &t).unwrap();
        assert!(is_simple_fraction(&r).unwrap());
        let rep = check_eq(&m3, &r, &x, Strategy::Exhaustive).unwrap();
        assert_eq!(rep.verdict, Verdict::Valid);
        assert!(matches!(
            eliminate_division(&q0(), &x),
            Err(Error::InfiniteCarrier(_))
        ));
    }

    #[test]
    fn sum_of_simple_fractions_examples() {
        let x = MultiPoly::var("x");
        let y = MultiPoly::var("y");
        let s = to_sum_of_simple_fractions(&p("x/y")).unwrap();
        assert_eq!(s.summands, vec![(x.clone(), y.clone())]);
        let s = to_sum_of_simple_fractions(&p("1/(1/x)")).unwrap();
        assert_eq!(s.summands, vec![(x.mul(&x), x.clone())]);
        assert_eq!(s.to_string(), "[(x^2, x)]");
        assert!(to_sum_of_simple_fractions(&p("x - x")).unwrap().is_empty());

        let t = p("1/(1/x + 1/y)");
        let s = to_sum_of_simple_fractions(&t).unwrap();
        // five guarded terms over the subsets {x}, {y}, {x, y}; the two
        // cross terms share the denominator x*y and merge
        assert_eq!(s.len(), 4);
        let r = s.render();
        let m6 = mk(6).unwrap();
        assert_eq!(
            check_eq(&m6, &t, &r, Strategy::Exhaustive).unwrap().verdict,
            Verdict::Valid
        );
        let sampled = Strategy::Sampled {
            count: 2000,
            seed: 3,
        };
        assert_eq!(
            check_eq(&q0(), &t, &r, sampled).unwrap().verdict,
            Verdict::SampledOk
        );
    }

    #[test]
    fn falsifier_examples() {
        let up = |c: &[i64]| UniPoly::from_i64("x", c);
        let w = falsify_simple_fraction_claim(&up(&[1]), &up(&[1])).unwrap();
        assert_eq!(w.witness, Rational::new(1.into(), 3.into()));
        assert_eq!(w.lhs, Rational::from_integer(4.into()));
        assert_eq!(w.rhs, Rational::one());
        let w = falsify_simple_fraction_claim(&up(&[2]), &up(&[1])).unwrap();
        assert_eq!(w.witness, Rational::zero());
        assert_eq!(
            (w.lhs, w.rhs),
            (Rational::one(), Rational::from_integer(2.into()))
        );
        let w = falsify_simple_fraction_claim(&up(&[1, 1]), &up(&[0, 1])).unwrap();
        assert_eq!(w.witness, Rational::zero());
        assert_eq!((w.lhs, w.rhs), (Rational::one(), Rational::zero()));
    }

    #[test]
    fn falsifier_handles_steep_candidates() {
        let up = |c: &[i64]| UniPoly::from_i64("x", c);
        // agree at 0 with large coefficients elsewhere
        for (f, g) in [
            (&[3i64, 50, -7][..], &[3i64, -40, 9][..]),
            (&[-2, 0, 0, 100], &[-2, 1]),
        ] {
            let w = falsify_simple_fraction_claim(&up(f), &up(g)).unwrap();
            assert!(w.witness.is_positive());
            assert_ne!(w.lhs, w.rhs);
        }
    }
}
