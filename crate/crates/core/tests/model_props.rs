mod common;

use common::{model, term, FINITE};
use meadow::identities::{COMMUTATIVE_RING, DIVISIVE, INVERSIVE};
use meadow::models::{
    check_eq, crt_decompose, eval, mk, pow_elem, q0, Assignment, Meadow, Strategy as Check, Verdict,
};
use meadow::term::to_divisive;
use meadow::with_model;
use proptest::prelude::*;

#[test]
fn crt_coherence() {
    for k in [6u64, 10, 15, 30] {
        let m = mk(k).unwrap();
        let crt = crt_decompose(k).unwrap();
        for a in 0..k {
            for b in 0..k {
                assert_eq!(m.div(&a, &b), crt.div(a, b), "M{k}: {a}/{b}");
                assert_eq!(crt.join(&crt.split(a)), a);
            }
        }
    }
}

#[test]
fn prime_fields_satisfy_the_exponent_law() {
    for p in [2u64, 3, 5, 7] {
        let m = mk(p).unwrap();
        for x in m.carrier().unwrap() {
            assert_eq!(pow_elem(&m, &x, p as u32), x, "M{p}");
        }
    }
}

#[test]
fn inverse_axioms_hold_in_every_model() {
    for spec in FINITE.iter().chain(&["mk:5", "mk:7"]) {
        let m = model(spec);
        for id in &INVERSIVE {
            let (l, r) = id.terms();
            let (dl, dr) = (to_divisive(&l).unwrap(), to_divisive(&r).unwrap());
            let (v, dv) = with_model!(&m, m => (
                check_eq(m, &l, &r, Check::Exhaustive).unwrap().verdict,
                check_eq(m, &dl, &dr, Check::Exhaustive).unwrap().verdict,
            ));
            assert_eq!(
                (v, dv),
                (Verdict::Valid, Verdict::Valid),
                "{} in {spec}",
                id.name
            );
        }
    }
    for id in INVERSIVE.iter().chain(&COMMUTATIVE_RING).chain(&DIVISIVE) {
        let (l, r) = id.terms();
        let rep = check_eq(
            &q0(),
            &l,
            &r,
            Check::Sampled {
                count: 2000,
                seed: 3,
            },
        )
        .unwrap();
        assert_eq!(rep.verdict, Verdict::SampledOk, "{}", id.name);
    }
}

fn report_in(threads: usize, spec: &str, l: &meadow::Term, r: &meadow::Term, s: Check) -> String {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap();
    let m = model(spec);
    pool.install(|| {
        with_model!(&m, m => {
            let rep = check_eq(m, l, r, s).unwrap();
            serde_json::to_string(&rep.summarize(m, l, r, s)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn checks_are_deterministic(
        l in term(4, &["x", "y", "z"], true),
        r in term(4, &["x", "y", "z"], true),
        seed in any::<u64>(),
    ) {
        for spec in ["mk:6", "gf:3^2"] {
            let a = report_in(1, spec, &l, &r, Check::Exhaustive);
            prop_assert_eq!(&a, &report_in(3, spec, &l, &r, Check::Exhaustive));
        }
        let s = Check::Sampled { count: 100, seed };
        prop_assert_eq!(report_in(1, "q0", &l, &r, s), report_in(2, "q0", &l, &r, s));
    }

    #[test]
    fn counterexamples_separate_and_are_least(
        l in term(4, &["x", "y"], true),
        r in term(4, &["x", "y"], true),
    ) {
        let m = mk(6).unwrap();
        let rep = check_eq(&m, &l, &r, Check::Exhaustive).unwrap();
        let mut vars = l.vars();
        vars.extend(r.vars());
        let vars: Vec<String> = vars.into_iter().collect();
        // brute force in the documented order
        let total = 6u64.pow(vars.len() as u32);
        let first_bad = (0..total).find(|&i| {
            let a: Assignment<u64> = vars
                .iter()
                .enumerate()
                .map(|(j, v)| (v.clone(), i / 6u64.pow((vars.len() - 1 - j) as u32) % 6))
                .collect();
            eval(&m, &l, &a).unwrap() != eval(&m, &r, &a).unwrap()
        });
        match first_bad {
            None => prop_assert_eq!(rep.verdict, Verdict::Valid),
            Some(i) => {
                prop_assert_eq!(rep.verdict, Verdict::Refuted);
                prop_assert_eq!(rep.evaluations, i + 1);
                let ce = rep.counterexample.unwrap();
                prop_assert_ne!(eval(&m, &l, &ce).unwrap(), eval(&m, &r, &ce).unwrap());
            }
        }
    }
}
