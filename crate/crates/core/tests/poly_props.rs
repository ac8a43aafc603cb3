mod common;

use common::{holds_everywhere, model, term};
use meadow::models::{check_eq, AnyModel, Meadow, Strategy as Check, Verdict};
use meadow::poly::{to_canonical, UniPoly};
use meadow::term::Term;
use meadow::with_model;
use num_bigint::BigInt;
use proptest::prelude::*;

/// Fields whose carrier outgrows every degree tested, plus the two small
/// fields where low-degree nonzero polynomials can vanish.
const FIELDS: [&str; 6] = ["mk:2", "mk:3", "mk:5", "mk:7", "gf:2^2", "gf:3^2"];

fn coeffs_vanish(m: &AnyModel, f: &UniPoly) -> bool {
    with_model!(m, m => f.coeffs().iter().all(|c| m.from_integer(c) == m.zero()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_a_homomorphism(p in term(4, &["x"], false), q in term(4, &["x"], false)) {
        let (cp, cq) = (to_canonical(&p, "x").unwrap(), to_canonical(&q, "x").unwrap());
        prop_assert_eq!(to_canonical(&Term::add(p.clone(), q.clone()), "x").unwrap(), cp.add(&cq));
        prop_assert_eq!(to_canonical(&Term::mul(p.clone(), q.clone()), "x").unwrap(), cp.mul(&cq));
        prop_assert_eq!(to_canonical(&Term::sub(p.clone(), q.clone()), "x").unwrap(), cp.sub(&cq));
        prop_assert_eq!(to_canonical(&Term::neg(p), "x").unwrap(), cp.neg());
    }

    #[test]
    fn canonical_form_evaluates_alike(t in term(5, &["x"], false)) {
        let r = to_canonical(&t, "x").unwrap().render();
        holds_everywhere(&t, &r, 200).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn vanishing_means_zero_coefficients(cs in prop::collection::vec(-6i64..=6, 1..=5)) {
        let f = UniPoly::from_i64("x", &cs);
        let deg = f.degree().unwrap_or(0) as u64;
        for spec in FIELDS {
            let m = model(spec);
            let size = with_model!(&m, m => m.carrier().unwrap().len() as u64);
            let valid = with_model!(&m, m => check_eq(m, &f.render(), &Term::Zero, Check::Exhaustive).unwrap().verdict) == Verdict::Valid;
            let zero = coeffs_vanish(&m, &f);
            if deg < size {
                prop_assert_eq!(valid, zero, "{} over {}", f, spec);
            } else if zero {
                // only this direction survives once the degree reaches the carrier size
                prop_assert!(valid, "{} over {}", f, spec);
            }
        }
    }
}

#[test]
fn small_fields_admit_vanishing_nonzero_polynomials() {
    let f = UniPoly::from_i64("x", &[0, -1, 1]);
    let m2 = model("mk:2");
    assert!(!coeffs_vanish(&m2, &f));
    let v = with_model!(&m2, m => check_eq(m, &f.render(), &Term::Zero, Check::Exhaustive).unwrap().verdict);
    assert_eq!(v, Verdict::Valid);
    // M6 is no field: 3(x^2 - x) + 2(x^3 - x) vanishes with nonzero coefficients
    let g = UniPoly::new("x", [0, -5, 3, 2].map(BigInt::from).to_vec());
    let m6 = model("mk:6");
    let v = with_model!(&m6, m => check_eq(m, &g.render(), &Term::Zero, Check::Exhaustive).unwrap().verdict);
    assert_eq!(v, Verdict::Valid);
    assert!(!coeffs_vanish(&m6, &g));
}
