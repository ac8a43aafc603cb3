mod common;

use common::{holds_everywhere, model, term};
use meadow::fractions::{
    closed_to_simple_fraction_q0, eliminate_division, falsify_simple_fraction_claim,
    to_sum_of_simple_fractions,
};
use meadow::models::{check_eq, eval, eval_closed, q0, Assignment, Strategy as Check, Verdict};
use meadow::poly::UniPoly;
use meadow::syntax::parse_divisive;
use meadow::term::{is_closed, is_simple_fraction, Term};
use meadow::with_model;
use num_traits::Zero;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn division_elimination_in_finite_models(t in term(4, &["x", "y"], true)) {
        for spec in ["mk:2", "mk:3", "mk:6", "gf:2^2"] {
            let m = model(spec);
            let (free, v) = with_model!(&m, m => {
                let s = eliminate_division(m, &t).unwrap();
                (!s.contains_div(), check_eq(m, &t, &s, Check::Exhaustive).unwrap().verdict)
            });
            prop_assert!(free && v == Verdict::Valid, "{} in {}", t, spec);
        }
    }

    #[test]
    fn closed_simple_fractions(t in term(5, &[], true)) {
        let f = closed_to_simple_fraction_q0(&t).unwrap();
        let r = f.render();
        prop_assert!(is_simple_fraction(&r).unwrap() && is_closed(&r));
        prop_assert_eq!(eval_closed(&q0(), &r).unwrap(), eval_closed(&q0(), &t).unwrap());
    }

    #[test]
    fn sums_of_simple_fractions(t in term(4, &["x", "y"], true)) {
        let s = to_sum_of_simple_fractions(&t).unwrap();
        for (f, g) in &s.summands {
            prop_assert!(is_simple_fraction(&Term::div(f.render(), g.render())).unwrap());
        }
        holds_everywhere(&t, &s.render(), 300).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn falsifier_witnesses_verify(
        f in prop::collection::vec(-5i64..=5, 1..=4),
        g in prop::collection::vec(-5i64..=5, 1..=4),
    ) {
        let (f, g) = (UniPoly::from_i64("x", &f), UniPoly::from_i64("x", &g));
        let w = falsify_simple_fraction_claim(&f, &g).unwrap();
        let a: Assignment<_> = [("x".to_string(), w.witness.clone())].into();
        let lhs = eval(&q0(), &parse_divisive("1 + 1/x").unwrap(), &a).unwrap();
        let rhs = eval(&q0(), &Term::div(f.render(), g.render()), &a).unwrap();
        prop_assert_eq!(&lhs, &w.lhs);
        prop_assert_eq!(&rhs, &w.rhs);
        prop_assert_ne!(lhs, rhs);
    }
}

#[test]
fn only_the_shifted_candidate_is_caught_at_zero() {
    let w = falsify_simple_fraction_claim(
        &UniPoly::from_i64("x", &[1, 1]),
        &UniPoly::from_i64("x", &[0, 1]),
    )
    .unwrap();
    assert!(w.witness.is_zero());
}
