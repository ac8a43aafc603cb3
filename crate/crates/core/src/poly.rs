//! Integer polynomials: univariate canonical forms with model-relative
//! degree and roots, and sparse multivariate polynomials for fraction
//! numerators and denominators.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::models::{Assignment, Meadow};
use crate::term::{mk_numeral, power, Term};

/// `a₀ + a₁x + … + aₙxⁿ` with integer coefficients stored low-to-high and no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
    var: String,
}

impl UniPoly {
    pub fn new(var: impl Into<String>, coeffs: Vec<BigInt>) -> UniPoly {
        let mut p = UniPoly {
            coeffs,
            var: var.into(),
        };
        p.trim();
        p
    }

    pub fn from_i64(var: impl Into<String>, coeffs: &[i64]) -> UniPoly {
        UniPoly::new(var, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(var: impl Into<String>) -> UniPoly {
        UniPoly::new(var, Vec::new())
    }

    pub fn constant(var: impl Into<String>, c: BigInt) -> UniPoly {
        UniPoly::new(var, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(var: impl Into<String>) -> UniPoly {
        UniPoly::new(var, vec![BigInt::zero(), BigInt::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `aᵢ`, zero beyond the stored range.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Integer degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            self.var.clone(),
            (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect(),
        )
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.var.clone(), self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.var.clone());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(self.var.clone(), out)
    }

    /// Value at an integer.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Value at a model element, by Horner's rule.
    pub fn eval<M: Meadow + ?Sized>(&self, model: &M, x: &M::Elem) -> M::Elem {
        self.coeffs.iter().rev().fold(model.zero(), |acc, c| {
            model.add(&model.mul(&acc, x), &model.from_integer(c))
        })
    }

    /// The canonical-form term `aₙ·xⁿ + … + a₁·x + a₀`, highest power first
    /// and zero coefficients omitted; `0` for the zero polynomial.
    pub fn render(&self) -> Term {
        let x = Term::var(self.var.clone());
        let mut terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => mk_numeral(c),
                _ => Term::mul(mk_numeral(c), power(&x, i as u32)),
            });
        match terms.next() {
            None => Term::Zero,
            Some(first) => terms.fold(first, Term::add),
        }
    }
}

impl fmt::Display for UniPoly {
    /// High-to-low, e.g. `-x^3 + x` or `2*x^2 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let monos = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => self.var.clone(),
                    _ => format!("{}^{i}", self.var),
                };
                (c.clone(), mono)
            });
        write_signed_sum(f, monos)
    }
}

/// Writes `c₁·m₁ + c₂·m₂ …` with signs folded into `+`/`-` and unit
/// coefficients dropped. An empty monomial string stands for `1`.
fn write_signed_sum(
    f: &mut fmt::Formatter<'_>,
    monos: impl Iterator<Item = (BigInt, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, mono) in monos {
        let sign = match (first, c.is_negative()) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        let a = c.abs();
        let body = match (mono.is_empty(), a.is_one()) {
            (true, _) => a.to_string(),
            (false, true) => mono,
            (false, false) => format!("{a}*{mono}"),
        };
        write!(f, "{sign}{body}")?;
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Expands a division-free term in `var` into canonical form using the ring
/// laws only.
pub fn to_canonical(t: &Term, var: &str) -> Result<UniPoly, Error> {
    let not_poly = |reason: String| Error::NotPolynomial {
        var: var.to_string(),
        reason,
    };
    Ok(match t {
        Term::Zero => UniPoly::zero(var),
        Term::One => UniPoly::constant(var, BigInt::one()),
        Term::Var(v) if v == var => UniPoly::x(var),
        Term::Var(v) => return Err(not_poly(format!("contains variable `{v}`"))),
        Term::Add(a, b) => to_canonical(a, var)?.add(&to_canonical(b, var)?),
        Term::Mul(a, b) => to_canonical(a, var)?.mul(&to_canonical(b, var)?),
        Term::Neg(a) => to_canonical(a, var)?.neg(),
        Term::Div(..) => return Err(not_poly("contains division".into())),
        Term::Inv(..) => return Err(not_poly("contains an inverse".into())),
    })
}

/// Some coefficient is nonzero in the model.
pub fn non_trivial_over<M: Meadow + ?Sized>(model: &M, f: &UniPoly) -> bool {
    f.coeffs
        .iter()
        .any(|c| model.from_integer(c) != model.zero())
}

/// Non-trivial and equal to a numeral on the whole model.
///
/// On a finite carrier this compares every value with `f(0) = a₀`. The only
/// infinite model shipped is Q₀, an infinite integral domain, where a
/// polynomial is constant exactly when its non-constant coefficients vanish.
pub fn constant_over<M: Meadow + ?Sized>(model: &M, f: &UniPoly) -> bool {
    if !non_trivial_over(model, f) {
        return false;
    }
    match model.carrier() {
        Some(carrier) => {
            let at_zero = f.eval(model, &model.zero());
            carrier.iter().all(|v| f.eval(model, v) == at_zero)
        }
        None => f
            .coeffs
            .iter()
            .skip(1)
            .all(|c| model.from_integer(c) == model.zero()),
    }
}

/// Degree over the model: `None` when not non-trivial, `Some(0)` when
/// constant, otherwise the largest `i` whose coefficient is nonzero there.
pub fn degree_over<M: Meadow + ?Sized>(model: &M, f: &UniPoly) -> Option<usize> {
    if !non_trivial_over(model, f) {
        return None;
    }
    if constant_over(model, f) {
        return Some(0);
    }
    f.coeffs
        .iter()
        .rposition(|c| model.from_integer(c) != model.zero())
}

/// Carrier elements, in carrier order, at which `f` vanishes.
pub fn roots_over<M: Meadow + ?Sized>(model: &M, f: &UniPoly) -> Result<Vec<M::Elem>, Error> {
    let carrier = model
        .carrier()
        .ok_or_else(|| Error::InfiniteCarrier(model.name()))?;
    Ok(carrier
        .into_iter()
        .filter(|v| f.eval(model, v) == model.zero())
        .collect())
}

/// `h = x²g² + xg² − f·x²·g`.
///
/// If a model satisfies `1 + 1÷x = f÷g` and `g(0) ≠ 0` there, every element
/// is a root of `h` and its linear coefficient `g(0)²` is nonzero.
pub fn annihilator(f: &UniPoly, g: &UniPoly) -> UniPoly {
    let x = UniPoly::x(f.var.clone());
    let x2 = x.mul(&x);
    let g2 = g.mul(g);
    x2.mul(&g2).add(&x.mul(&g2)).sub(&f.mul(&x2).mul(g))
}

/// [`annihilator`] after checking its premises on a finite model.
pub fn verified_annihilator<M: Meadow + ?Sized>(
    model: &M,
    f: &UniPoly,
    g: &UniPoly,
) -> Result<UniPoly, Error> {
    let carrier = model
        .carrier()
        .ok_or_else(|| Error::InfiniteCarrier(model.name()))?;
    let one = model.one();
    for v in &carrier {
        let lhs = model.add(&one, &model.div(&one, v));
        let rhs = model.div(&f.eval(model, v), &g.eval(model, v));
        if lhs != rhs {
            return Err(Error::PremiseFailed(format!(
                "1 + 1/x = ({f})/({g}) fails in {} at x = {}",
                model.name(),
                model.format(v)
            )));
        }
    }
    if g.eval(model, &model.zero()) == model.zero() {
        return Err(Error::PremiseFailed(format!(
            "g(0) = 0 in {} for g = {g}",
            model.name()
        )));
    }
    Ok(annihilator(f, g))
}

/// A monomial `∏ vᵢ^eᵢ` with positive exponents, variables ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: impl Into<String>) -> Monomial {
        Monomial(vec![(v.into(), 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &str) -> u32 {
        self.0.iter().find(|(w, _)| w == v).map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: BTreeMap<String, u32> = self.0.iter().cloned().collect();
        for (v, e) in &other.0 {
            *out.entry(v.clone()).or_default() += e;
        }
        Monomial(out.into_iter().collect())
    }

    fn render(&self) -> Option<Term> {
        self.0
            .iter()
            .map(|(v, e)| {
                let x = Term::var(v.clone());
                if *e == 1 {
                    x
                } else {
                    power(&x, *e)
                }
            })
            .reduce(Term::mul)
    }
}

/// Graded lexicographic: total degree first, then the exponent of the
/// earliest variable where the two differ.
impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
            loop {
                match (a.peek(), b.peek()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal if ea != eb => return ea.cmp(eb),
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| {
                if *e == 1 {
                    v.clone()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Sparse integer polynomial in any number of variables; zero coefficients
/// are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn constant(c: BigInt) -> MultiPoly {
        MultiPoly::from_terms([(Monomial::one(), c)])
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(BigInt::one())
    }

    pub fn var(v: impl Into<String>) -> MultiPoly {
        MultiPoly::from_terms([(Monomial::var(v), BigInt::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> MultiPoly {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        let slot = self.terms.entry(m).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Coefficient of the greatest monomial.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn vars(&self) -> Vec<String> {
        let mut vs: Vec<String> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn eval<M: Meadow + ?Sized>(
        &self,
        model: &M,
        a: &Assignment<M::Elem>,
    ) -> Result<M::Elem, Error> {
        let mut acc = model.zero();
        for (m, c) in &self.terms {
            let mut t = model.from_integer(c);
            for (v, e) in &m.0 {
                let x = a.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?;
                t = model.mul(&t, &crate::models::pow_elem(model, x, *e));
            }
            acc = model.add(&acc, &t);
        }
        Ok(acc)
    }

    /// A division-free term, greatest monomial first. Negative coefficients
    /// become negations and unit coefficients are dropped.
    pub fn render(&self) -> Term {
        let mut terms = self.terms.iter().rev().map(|(m, c)| {
            let a = c.abs();
            let body = match m.render() {
                None if a.is_one() => Term::One,
                None => mk_numeral(&a),
                Some(mono) if a.is_one() => mono,
                Some(mono) => Term::mul(mk_numeral(&a), mono),
            };
            if c.is_negative() {
                Term::neg(body)
            } else {
                body
            }
        });
        match terms.next() {
            None => Term::Zero,
            Some(first) => terms.fold(first, Term::add),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_sum(
            f,
            self.terms
                .iter()
                .rev()
                .map(|(m, c)| (c.clone(), m.to_string())),
        )
    }
}
