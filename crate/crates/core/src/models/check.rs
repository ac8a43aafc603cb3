use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{Assignment, Compiled, Folded, Meadow};
use crate::error::Error;
use crate::term::Term;

/// Upper limit on the size of an exhaustive assignment space.
pub const MAX_EXHAUSTIVE: u64 = 50_000_000;

/// How assignments are enumerated when checking an equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Strategy {
    /// Every assignment over a finite carrier.
    Exhaustive,
    /// `count` seeded random assignments.
    Sampled { count: u64, seed: u64 },
}

impl Strategy {
    pub const DEFAULT_SAMPLES: u64 = 10_000;

    /// Exhaustive for finite models, 10 000 samples with seed 0 otherwise.
    pub fn default_for<M: Meadow + ?Sized>(model: &M) -> Strategy {
        if model.is_finite() {
            Strategy::Exhaustive
        } else {
            Strategy::Sampled {
                count: Self::DEFAULT_SAMPLES,
                seed: 0,
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Valid,
    Refuted,
    SampledOk,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Valid => "Valid",
            Verdict::Refuted => "Refuted",
            Verdict::SampledOk => "SampledOk",
        })
    }
}

/// Outcome of [`check_eq`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport<E> {
    pub verdict: Verdict,
    pub counterexample: Option<Assignment<E>>,
    /// Assignments evaluated, including the refuting one.
    pub evaluations: u64,
    pub seed: Option<u64>,
}

/// Model-independent rendering of a [`CheckReport`], with elements printed
/// by the model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub model: String,
    pub lhs: String,
    pub rhs: String,
    pub strategy: Strategy,
    pub verdict: Verdict,
    pub counterexample: Option<BTreeMap<String, String>>,
    pub evaluations: u64,
    pub seed: Option<u64>,
}

impl<E> CheckReport<E> {
    pub fn holds(&self) -> bool {
        self.verdict != Verdict::Refuted
    }

    pub fn summarize<M: Meadow<Elem = E> + ?Sized>(
        &self,
        model: &M,
        lhs: &Term,
        rhs: &Term,
        strategy: Strategy,
    ) -> CheckSummary {
        CheckSummary {
            model: model.name(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            strategy,
            verdict: self.verdict,
            counterexample: self.counterexample.as_ref().map(|a| {
                a.iter()
                    .map(|(k, v)| (k.clone(), model.format(v)))
                    .collect()
            }),
            evaluations: self.evaluations,
            seed: self.seed,
        }
    }
}

/// Both sides compiled against the union of their variables.
struct Equation<E> {
    vars: Vec<String>,
    lhs: (Folded<E>, Vec<usize>),
    rhs: (Folded<E>, Vec<usize>),
}

impl<E: Clone + PartialEq> Equation<E> {
    fn new<M: Meadow<Elem = E> + ?Sized>(
        model: &M,
        lhs: &Term,
        rhs: &Term,
    ) -> Result<Equation<E>, Error> {
        let mut vars = lhs.vars();
        vars.extend(rhs.vars());
        let vars: Vec<String> = vars.into_iter().collect();
        let side = |t: &Term| -> Result<(Folded<E>, Vec<usize>), Error> {
            let c = Compiled::new(t)?;
            let idx = c
                .vars()
                .iter()
                .map(|v| vars.binary_search(v).expect("union contains side"))
                .collect();
            Ok((c.fold(model), idx))
        };
        Ok(Equation {
            lhs: side(lhs)?,
            rhs: side(rhs)?,
            vars,
        })
    }

    fn agrees<M: Meadow<Elem = E> + ?Sized>(
        &self,
        model: &M,
        values: &[E],
        s: &mut Scratch<E>,
    ) -> bool {
        let mut side = |(c, idx): &(Folded<E>, Vec<usize>)| {
            s.inputs.clear();
            s.inputs.extend(idx.iter().map(|&i| values[i].clone()));
            c.eval_with(model, &s.inputs, &mut s.buf)
        };
        let l = side(&self.lhs);
        let r = side(&self.rhs);
        l == r
    }

    fn assignment(&self, values: &[E]) -> Assignment<E> {
        self.vars
            .iter()
            .cloned()
            .zip(values.iter().cloned())
            .collect()
    }
}

struct Scratch<E> {
    inputs: Vec<E>,
    buf: Vec<E>,
    values: Vec<E>,
}

impl<E> Scratch<E> {
    fn new() -> Self {
        Scratch {
            inputs: Vec::new(),
            buf: Vec::new(),
            values: Vec::new(),
        }
    }
}

/// Decodes assignment `index`: variables in lexicographic order, the first
/// one most significant, each ranging over the carrier in its own order.
fn decode<E: Clone>(carrier: &[E], nvars: usize, mut index: u64, out: &mut Vec<E>) {
    let base = carrier.len() as u64;
    out.clear();
    out.resize(nvars, carrier[0].clone());
    for slot in out.iter_mut().rev() {
        *slot = carrier[(index % base) as usize].clone();
        index /= base;
    }
}

/// Checks `lhs = rhs` in `model`.
///
/// Exhaustive checks scan assignments in parallel and report the
/// lexicographically least counterexample, so the report does not depend on
/// the number of workers. Sampled checks draw each variable in lexicographic
/// order from a ChaCha8 stream seeded with `seed`.
pub fn check_eq<M: Meadow + ?Sized>(
    model: &M,
    lhs: &Term,
    rhs: &Term,
    strategy: Strategy,
) -> Result<CheckReport<M::Elem>, Error> {
    let eq = Equation::new(model, lhs, rhs)?;
    match strategy {
        Strategy::Exhaustive => {
            let carrier = model
                .carrier()
                .ok_or_else(|| Error::InfiniteExhaustive(model.name()))?;
            let nvars = eq.vars.len();
            let total = (carrier.len() as u64)
                .checked_pow(nvars as u32)
                .filter(|t| *t <= MAX_EXHAUSTIVE)
                .ok_or_else(|| Error::SpaceTooLarge(model.name(), MAX_EXHAUSTIVE))?;
            let first_bad = (0..total as usize)
                .into_par_iter()
                .map_init(Scratch::new, |s, i| {
                    let mut values = std::mem::take(&mut s.values);
                    decode(&carrier, nvars, i as u64, &mut values);
                    let ok = eq.agrees(model, &values, s);
                    s.values = values;
                    ok
                })
                .position_first(|ok| !ok);
            Ok(match first_bad {
                Some(i) => {
                    let mut values = Vec::new();
                    decode(&carrier, nvars, i as u64, &mut values);
                    CheckReport {
                        verdict: Verdict::Refuted,
                        counterexample: Some(eq.assignment(&values)),
                        evaluations: i as u64 + 1,
                        seed: None,
                    }
                }
                None => CheckReport {
                    verdict: Verdict::Valid,
                    counterexample: None,
                    evaluations: total,
                    seed: None,
                },
            })
        }
        Strategy::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut s = Scratch::new();
            let mut values = Vec::with_capacity(eq.vars.len());
            for n in 0..count {
                values.clear();
                for _ in &eq.vars {
                    values.push(model.sample(&mut rng));
                }
                if !eq.agrees(model, &values, &mut s) {
                    return Ok(CheckReport {
                        verdict: Verdict::Refuted,
                        counterexample: Some(eq.assignment(&values)),
                        evaluations: n + 1,
                        seed: Some(seed),
                    });
                }
            }
            Ok(CheckReport {
                verdict: Verdict::SampledOk,
                counterexample: None,
                evaluations: count,
                seed: Some(seed),
            })
        }
    }
}

/// Result of [`characteristic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Characteristic {
    Known(u64),
    /// No `k ≤ bound` satisfies `k̄ = 0`.
    Unknown {
        bound: u64,
    },
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Characteristic::Known(k) => write!(f, "{k}"),
            Characteristic::Unknown { bound } => write!(f, "unknown (no k <= {bound})"),
        }
    }
}

/// The least `k ≥ 1` with `k̄ = 0`, or 0 when the model says so.
///
/// Finite models are searched up to their carrier size, which always
/// suffices; other models up to `search_bound`.
pub fn characteristic<M: Meadow + ?Sized>(model: &M, search_bound: u64) -> Characteristic {
    if let Some(k) = model.known_characteristic() {
        return Characteristic::Known(k);
    }
    let bound = model.carrier().map_or(search_bound, |c| c.len() as u64);
    let one = model.one();
    let mut acc = model.zero();
    for k in 1..=bound {
        acc = model.add(&acc, &one);
        if acc == model.zero() {
            return Characteristic::Known(k);
        }
    }
    Characteristic::Unknown { bound }
}
