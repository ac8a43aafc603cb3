mod common;

use std::collections::BTreeMap;

use common::{holds_everywhere, inv_term, model, term, FINITE};
use meadow::models::eval_closed;
use meadow::syntax::{parse, print};
use meadow::term::{
    is_fraction, is_simple_fraction, numeral, substitute, to_divisive, to_inversive,
    wrap_as_fraction, Signature, Term,
};
use meadow::with_model;
use proptest::prelude::*;

const XYZ: &[&str] = &["x", "y", "z"];

/// Spans of balanced parentheses that are not the argument list of `inv`.
fn paren_pairs(s: &str) -> Vec<(usize, usize)> {
    let b = s.as_bytes();
    let (mut stack, mut out) = (Vec::new(), Vec::new());
    for (i, &c) in b.iter().enumerate() {
        match c {
            b'(' => stack.push((i, i >= 3 && &b[i - 3..i] == b"inv")),
            b')' => {
                let (open, call) = stack.pop().unwrap();
                if !call {
                    out.push((open, i));
                }
            }
            _ => {}
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_parse_round_trip(t in term(6, XYZ, true)) {
        prop_assert_eq!(parse(&print(&t), Signature::Divisive).unwrap(), t);
    }

    #[test]
    fn inversive_round_trip(t in inv_term(6, XYZ)) {
        prop_assert_eq!(parse(&print(&t), Signature::Inversive).unwrap(), t);
    }

    #[test]
    fn printed_parentheses_are_needed(t in term(5, XYZ, true)) {
        let s = print(&t);
        for (open, close) in paren_pairs(&s) {
            let stripped = format!("{}{}{}", &s[..open], &s[open + 1..close], &s[close + 1..]);
            if let Ok(u) = parse(&stripped, Signature::Divisive) {
                prop_assert_ne!(&u, &t, "redundant parentheses in {}", s);
            }
        }
    }

    #[test]
    fn translations_agree_semantically(t in term(4, &["x", "y"], true)) {
        let back = to_divisive(&to_inversive(&t).unwrap()).unwrap();
        prop_assert!(back.is_divisive());
        holds_everywhere(&t, &back, 50).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn inversive_translation_round_trip(t in inv_term(4, &["x", "y"])) {
        let back = to_inversive(&to_divisive(&t).unwrap()).unwrap();
        prop_assert!(back.is_inversive());
        holds_everywhere(&t, &back, 50).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn simple_fractions_are_fractions(t in term(4, XYZ, true)) {
        if is_simple_fraction(&t).unwrap() {
            prop_assert!(is_fraction(&t).unwrap());
        }
        let w = wrap_as_fraction(&t);
        prop_assert_eq!(is_simple_fraction(&w).unwrap(), !t.contains_div());
        prop_assert!(is_fraction(&w).unwrap());
    }

    #[test]
    fn identity_substitution(t in term(5, XYZ, true)) {
        let id: BTreeMap<String, Term> = XYZ.iter().map(|v| (v.to_string(), Term::var(*v))).collect();
        prop_assert_eq!(&substitute(&t, &id), &t);
        prop_assert_eq!(substitute(&t, &BTreeMap::new()), t);
    }

    #[test]
    fn numerals_are_homomorphic(n in 0i64..60, m in 0i64..60) {
        for spec in FINITE.iter().chain(&["q0"]) {
            let md = model(spec);
            let ok = with_model!(&md, md => {
                let sum = eval_closed(md, &numeral(n + m)).unwrap() == eval_closed(md, &Term::add(numeral(n), numeral(m))).unwrap();
                let prod = eval_closed(md, &numeral(n * m)).unwrap() == eval_closed(md, &Term::mul(numeral(n), numeral(m))).unwrap();
                sum && prod
            });
            prop_assert!(ok, "{} at n = {}, m = {}", spec, n, m);
        }
    }
}
