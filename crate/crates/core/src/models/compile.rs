use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::term::{Signature, Term};

use super::Meadow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    Zero,
    One,
    Var(usize),
    Add(usize, usize),
    Mul(usize, usize),
    Neg(usize),
    Div(usize, usize),
    Inv(usize),
    Const(usize),
}

/// A term flattened into straight-line code with shared subterms merged.
///
/// Structurally equal subterms compile to the same slot, which keeps the
/// cost of evaluating unfolded powers linear in the exponent's base.
#[derive(Clone, Debug)]
pub struct Compiled {
    ops: Vec<Op>,
    vars: Vec<String>,
}

impl Compiled {
    /// Compiles a divisive or inversive term; mixed terms are rejected.
    pub fn new(t: &Term) -> Result<Compiled, Error> {
        if !t.is_divisive() && !t.is_inversive() {
            return Err(Error::MixedSignature {
                expected: Signature::Divisive,
            });
        }
        let vars: Vec<String> = t.vars().into_iter().collect();
        let mut b = Builder {
            ops: Vec::new(),
            seen: HashMap::new(),
            vars: &vars,
        };
        b.visit(t);
        Ok(Compiled { ops: b.ops, vars })
    }

    /// Variables in lexicographic order; inputs to [`Compiled::eval`] follow
    /// this order.
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn eval<M: Meadow + ?Sized>(&self, model: &M, inputs: &[M::Elem]) -> M::Elem {
        let mut buf = Vec::with_capacity(self.ops.len());
        self.eval_with(model, inputs, &mut buf)
    }

    /// Like [`Compiled::eval`] but reuses `buf` as scratch space.
    pub fn eval_with<M: Meadow + ?Sized>(
        &self,
        model: &M,
        inputs: &[M::Elem],
        buf: &mut Vec<M::Elem>,
    ) -> M::Elem {
        buf.clear();
        for op in &self.ops {
            let v = step(model, op, buf, inputs);
            buf.push(v);
        }
        buf.pop().expect("compiled term is never empty")
    }

    /// Evaluates every variable-free slot once in `model`.
    pub fn fold<M: Meadow + ?Sized>(&self, model: &M) -> Folded<M::Elem> {
        let mut closed = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            closed.push(match *op {
                Op::Var(_) => false,
                Op::Zero | Op::One | Op::Const(_) => true,
                Op::Neg(a) | Op::Inv(a) => closed[a],
                Op::Add(a, b) | Op::Mul(a, b) | Op::Div(a, b) => closed[a] && closed[b],
            });
        }
        let root = self.ops.len() - 1;
        let mut used = vec![false; self.ops.len()];
        used[root] = true;
        for (i, op) in self.ops.iter().enumerate() {
            if closed[i] {
                continue;
            }
            match *op {
                Op::Neg(a) | Op::Inv(a) => used[a] = true,
                Op::Add(a, b) | Op::Mul(a, b) | Op::Div(a, b) => {
                    used[a] = true;
                    used[b] = true;
                }
                _ => {}
            }
        }
        // Ring operations on integer slots are tracked exactly, so long
        // numeral chains cost one `from_integer` instead of one model
        // operation per link.
        let mut ints: Vec<Option<BigInt>> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let n = match *op {
                Op::Zero => Some(BigInt::zero()),
                Op::One => Some(BigInt::one()),
                Op::Neg(a) => ints[a].as_ref().map(|x| -x),
                Op::Add(a, b) => ints[a].as_ref().zip(ints[b].as_ref()).map(|(x, y)| x + y),
                Op::Mul(a, b) => ints[a].as_ref().zip(ints[b].as_ref()).map(|(x, y)| x * y),
                _ => None,
            };
            ints.push(n);
        }
        let mut needed = used.clone();
        for i in (0..self.ops.len()).rev() {
            if !(closed[i] && needed[i] && ints[i].is_none()) {
                continue;
            }
            match self.ops[i] {
                Op::Neg(a) | Op::Inv(a) => needed[a] = true,
                Op::Add(a, b) | Op::Mul(a, b) | Op::Div(a, b) => {
                    needed[a] = true;
                    needed[b] = true;
                }
                _ => {}
            }
        }
        let mut values = Vec::with_capacity(self.ops.len());
        for (i, op) in self.ops.iter().enumerate() {
            let v = match &ints[i] {
                _ if !(closed[i] && needed[i]) => model.zero(),
                Some(n) => model.from_integer(n),
                None => step(model, op, &values, &[]),
            };
            values.push(v);
        }
        let mut remap = vec![usize::MAX; self.ops.len()];
        let mut ops = Vec::new();
        let mut consts = Vec::new();
        for (i, op) in self.ops.iter().enumerate() {
            let new = if closed[i] {
                if !used[i] {
                    continue;
                }
                consts.push(values[i].clone());
                Op::Const(consts.len() - 1)
            } else {
                match *op {
                    Op::Var(v) => Op::Var(v),
                    Op::Neg(a) => Op::Neg(remap[a]),
                    Op::Inv(a) => Op::Inv(remap[a]),
                    Op::Add(a, b) => Op::Add(remap[a], remap[b]),
                    Op::Mul(a, b) => Op::Mul(remap[a], remap[b]),
                    Op::Div(a, b) => Op::Div(remap[a], remap[b]),
                    _ => unreachable!("leaf constants are closed"),
                }
            };
            ops.push(new);
            remap[i] = ops.len() - 1;
        }
        Folded { ops, consts }
    }
}

fn step<M: Meadow + ?Sized>(model: &M, op: &Op, buf: &[M::Elem], inputs: &[M::Elem]) -> M::Elem {
    match *op {
        Op::Zero => model.zero(),
        Op::One => model.one(),
        Op::Var(i) => inputs[i].clone(),
        Op::Add(a, b) => model.add(&buf[a], &buf[b]),
        Op::Mul(a, b) => model.mul(&buf[a], &buf[b]),
        Op::Neg(a) => model.neg(&buf[a]),
        Op::Div(a, b) => model.div(&buf[a], &buf[b]),
        Op::Inv(a) => model.div(&model.one(), &buf[a]),
        Op::Const(_) => unreachable!("only folded code holds constants"),
    }
}

/// Compiled code specialised to one model: variable-free subterms are
/// replaced by their values.
#[derive(Clone, Debug)]
pub struct Folded<E> {
    ops: Vec<Op>,
    consts: Vec<E>,
}

impl<E: Clone> Folded<E> {
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Inputs follow the variable order of the [`Compiled`] this came from.
    pub fn eval_with<M: Meadow<Elem = E> + ?Sized>(
        &self,
        model: &M,
        inputs: &[E],
        buf: &mut Vec<E>,
    ) -> E {
        buf.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Const(k) => self.consts[k].clone(),
                ref other => step(model, other, buf, inputs),
            };
            buf.push(v);
        }
        buf.pop().expect("compiled term is never empty")
    }
}

struct Builder<'a> {
    ops: Vec<Op>,
    seen: HashMap<Op, usize>,
    vars: &'a [String],
}

impl Builder<'_> {
    fn visit(&mut self, t: &Term) -> usize {
        let op = match t {
            Term::Zero => Op::Zero,
            Term::One => Op::One,
            Term::Var(v) => Op::Var(self.vars.binary_search(v).expect("collected")),
            Term::Add(a, b) => Op::Add(self.visit(a), self.visit(b)),
            Term::Mul(a, b) => Op::Mul(self.visit(a), self.visit(b)),
            Term::Div(a, b) => Op::Div(self.visit(a), self.visit(b)),
            Term::Neg(a) => Op::Neg(self.visit(a)),
            Term::Inv(a) => Op::Inv(self.visit(a)),
        };
        if let Some(&slot) = self.seen.get(&op) {
            return slot;
        }
        self.ops.push(op);
        self.seen.insert(op, self.ops.len() - 1);
        self.ops.len() - 1
    }
}
