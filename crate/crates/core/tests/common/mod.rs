//! Shared generators and model sweeps for the property suites.
#![allow(dead_code)]

use meadow::models::{check_eq, AnyModel, Strategy as Check, Verdict};
use meadow::term::{numeral, Term};
use meadow::with_model;
use proptest::prelude::*;

/// Finite models swept exhaustively by the property suites.
pub const FINITE: [&str; 6] = ["mk:2", "mk:3", "mk:6", "mk:30", "gf:2^2", "gf:3^2"];

pub fn model(spec: &str) -> AnyModel {
    spec.parse().unwrap()
}

/// Leaves: small numerals and the given variables.
fn leaf(vars: &'static [&'static str]) -> BoxedStrategy<Term> {
    let nums = (-3i64..=3).prop_map(|k| if k == 1 { Term::One } else { numeral(k) });
    if vars.is_empty() {
        nums.boxed()
    } else {
        prop_oneof![nums, prop::sample::select(vars).prop_map(Term::var)].boxed()
    }
}

/// Random terms of bounded depth; `division` picks the divisive signature.
pub fn term(depth: u32, vars: &'static [&'static str], division: bool) -> BoxedStrategy<Term> {
    leaf(vars)
        .prop_recursive(depth, 64, 2, move |inner| {
            let bin = (inner.clone(), inner.clone());
            let mut ops = vec![
                bin.clone().prop_map(|(a, b)| Term::add(a, b)).boxed(),
                bin.clone().prop_map(|(a, b)| Term::mul(a, b)).boxed(),
                bin.clone().prop_map(|(a, b)| Term::sub(a, b)).boxed(),
                inner.clone().prop_map(Term::neg).boxed(),
            ];
            if division {
                ops.push(bin.prop_map(|(a, b)| Term::div(a, b)).boxed());
            }
            prop::strategy::Union::new(ops)
        })
        .boxed()
}

/// Random inversive terms.
pub fn inv_term(depth: u32, vars: &'static [&'static str]) -> BoxedStrategy<Term> {
    leaf(vars)
        .prop_recursive(depth, 64, 2, |inner| {
            let bin = (inner.clone(), inner.clone());
            prop_oneof![
                bin.clone().prop_map(|(a, b)| Term::add(a, b)),
                bin.prop_map(|(a, b)| Term::mul(a, b)),
                inner.clone().prop_map(Term::neg),
                inner.prop_map(Term::inv),
            ]
        })
        .boxed()
}

/// Checks `lhs = rhs` exhaustively on every finite model and by sampling
/// on the rationals.
pub fn holds_everywhere(lhs: &Term, rhs: &Term, samples: u64) -> Result<(), String> {
    for spec in FINITE {
        let m = model(spec);
        let v = with_model!(&m, m => check_eq(m, lhs, rhs, Check::Exhaustive).map(|r| r.verdict))
            .map_err(|e| e.to_string())?;
        if v != Verdict::Valid {
            return Err(format!("{lhs} = {rhs} fails in {spec}"));
        }
    }
    let q = model("q0");
    let v = with_model!(&q, m => check_eq(m, lhs, rhs, Check::Sampled { count: samples, seed: 0 }).map(|r| r.verdict))
        .map_err(|e| e.to_string())?;
    if v != Verdict::SampledOk {
        return Err(format!("{lhs} = {rhs} fails in q0"));
    }
    Ok(())
}
