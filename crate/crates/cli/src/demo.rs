//! Scripted scenarios that print every intermediate artifact.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use meadow::fractions::{
    exponent_pair, falsify_simple_fraction_claim, to_simple_fraction_finite,
    to_sum_of_simple_fractions,
};
use meadow::models::{eval, eval_closed, q0, AnyModel, Assignment, Meadow, Rational, Strategy};
use meadow::poly::UniPoly;
use meadow::syntax::{parse_divisive, print};
use meadow::term::{numeral, power, substitute, Term};
use meadow::{with_model, Error};
use serde_json::{json, Value};

use crate::{check, Report, Settings, EXIT_OK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(crate) enum Demo {
    Omega,
    Separation,
    FiniteSimple,
    SumOfFractions,
    FalsifyQ0,
}

pub(crate) fn run(s: &Settings, demo: Demo) -> Result<Report, Error> {
    match demo {
        Demo::Omega => omega(),
        Demo::Separation => separation(),
        Demo::FiniteSimple => finite_simple(s),
        Demo::SumOfFractions => sum_of_fractions(),
        Demo::FalsifyQ0 => falsify_q0(),
    }
}

fn model(spec: &str) -> AnyModel {
    spec.parse().expect("built-in model specifier")
}

fn term(src: &str) -> Term {
    parse_divisive(src).expect("built-in term")
}

/// Appends a check report to `text` and returns its JSON.
fn checked<M: Meadow + ?Sized>(
    text: &mut String,
    m: &M,
    l: &Term,
    r: &Term,
    strategy: Strategy,
) -> Result<Value, Error> {
    let rep = check(m, l, r, strategy)?;
    for line in rep.text.lines() {
        writeln!(text, "  {line}").unwrap();
    }
    Ok(rep.json)
}

fn done(text: String, json: Value) -> Result<Report, Error> {
    Ok(Report {
        text,
        json,
        code: EXIT_OK,
    })
}

fn omega() -> Result<Report, Error> {
    let t = term("(1 - 2/2)*(x^2 - x)");
    let mut text = format!("equation: {} = 0\n", print(&t));
    let mut instances = BTreeMap::new();
    for spec in ["q0", "mk:2", "mk:6"] {
        let m = model(spec);
        let zeros = with_model!(&m, m => (-20i64..=20)
            .filter(|&k| {
                let inst = substitute(&t, &BTreeMap::from([("x".to_string(), numeral(k))]));
                eval_closed(m, &inst).map(|v| v == m.zero()).unwrap_or(false)
            })
            .count());
        writeln!(
            text,
            "{spec}: {zeros} of 41 closed instances x := k, |k| <= 20, evaluate to 0"
        )
        .unwrap();
        instances.insert(spec, zeros);
    }
    let g4 = model("gf:2^2");
    writeln!(text, "open equation in {g4}:").unwrap();
    let report =
        with_model!(&g4, m => checked(&mut text, m, &t, &Term::Zero, Strategy::Exhaustive))?;
    done(
        text,
        json!({ "demo": "omega", "equation": print(&t), "closed_instances_zero": instances, "open_check": report }),
    )
}

fn separation() -> Result<Report, Error> {
    let t = term("1 + 1/2");
    let mut text = format!("term: {}\n", print(&t));
    let mut values = BTreeMap::new();
    for spec in ["q0", "mk:2"] {
        let m = model(spec);
        let v = with_model!(&m, m => m.format(&eval_closed(m, &t)?));
        writeln!(text, "{spec}: {v}").unwrap();
        values.insert(spec, v);
    }
    done(
        text,
        json!({ "demo": "separation", "term": print(&t), "values": values }),
    )
}

fn finite_simple(s: &Settings) -> Result<Report, Error> {
    let m = s.model_or("mk:6")?;
    with_model!(&m, m => {
        let pair = exponent_pair(m)?;
        let e = pair.inverse_exponent();
        let x = Term::var("x");
        let (l, r) = (Term::div(Term::One, x.clone()), power(&x, e));
        let mut text = format!(
            "model: {}\n(n, m) = ({}, {})\nx^{} = x^{} for all x, so 1/x = x^{e}\n",
            m.name(), pair.n, pair.m, pair.n, pair.m
        );
        writeln!(text, "check 1/x = x^{e}:").unwrap();
        let identity = checked(&mut text, m, &l, &r, Strategy::Exhaustive)?;
        let sample = term("x/y + 1/(x - y)");
        let simple = to_simple_fraction_finite(m, &sample)?;
        writeln!(text, "example: {}\nsimple fraction: {}", print(&sample), print(&simple)).unwrap();
        let example = checked(&mut text, m, &sample, &simple, Strategy::Exhaustive)?;
        done(text, json!({
            "demo": "finite-simple",
            "model": m.name(),
            "exponents": pair,
            "inverse_exponent": e,
            "identity_check": identity,
            "example": { "term": print(&sample), "simple_fraction": print(&simple), "check": example },
        }))
    })
}

fn sum_of_fractions() -> Result<Report, Error> {
    let t = term("1/(1/x)");
    let s = to_sum_of_simple_fractions(&t)?;
    let r = s.render();
    let x = Term::var("x");
    let mut text = format!("{} -> {s}\nrendered: {}\n", print(&t), print(&r));
    let mut checks = BTreeMap::new();
    for spec in ["mk:6", "gf:2^2", "q0"] {
        let m = model(spec);
        writeln!(text, "{} = x in {spec}:", print(&r)).unwrap();
        let rep = with_model!(&m, m => checked(&mut text, m, &r, &x, Strategy::default_for(m)))?;
        checks.insert(spec, rep);
    }
    let two = term("1/x + 1/y");
    let parts = to_sum_of_simple_fractions(&two)?;
    writeln!(
        text,
        "{} -> {parts} ({} summands)",
        print(&two),
        parts.len()
    )
    .unwrap();
    let single = term("(y + x)/(x*y)");
    let q = q0();
    let a: Assignment<Rational> = [("x".to_string(), q.zero()), ("y".to_string(), q.one())].into();
    let (lv, rv) = (eval(&q, &two, &a)?, eval(&q, &single, &a)?);
    writeln!(
        text,
        "single fraction {} at x = 0, y = 1 in q0: {lv} vs {rv}",
        print(&single)
    )
    .unwrap();
    done(
        text,
        json!({
            "demo": "sum-of-fractions",
            "term": print(&t),
            "summands": s.to_string(),
            "checks": checks,
            "two_reciprocals": { "term": print(&two), "summands": parts.to_string(), "count": parts.len() },
            "single_fraction": { "term": print(&single), "at": { "x": "0", "y": "1" }, "lhs": lv.to_string(), "rhs": rv.to_string() },
        }),
    )
}

fn falsify_q0() -> Result<Report, Error> {
    let up = |c: &[i64]| UniPoly::from_i64("x", c);
    let mut text = String::new();
    let mut out = Vec::new();
    for (f, g) in [
        (up(&[1]), up(&[1])),
        (up(&[2]), up(&[1])),
        (up(&[1, 1]), up(&[0, 1])),
    ] {
        let w = falsify_simple_fraction_claim(&f, &g)?;
        writeln!(
            text,
            "candidate ({f})/({g}): x = {}, 1 + 1/x = {}, f(x)/g(x) = {}",
            w.witness, w.lhs, w.rhs
        )
        .unwrap();
        out.push(json!({
            "f": f.to_string(),
            "g": g.to_string(),
            "witness": w.witness.to_string(),
            "lhs": w.lhs.to_string(),
            "rhs": w.rhs.to_string(),
        }));
    }
    done(text, json!({ "demo": "falsify-q0", "candidates": out }))
}
