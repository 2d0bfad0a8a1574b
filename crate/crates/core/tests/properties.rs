use proptest::prelude::*;

use truthlab::closure::{eval_inner, extract_inner, ClassicalModel};
use truthlab::exec::Exec;
use truthlab::schemas::check_with;
use truthlab::syntax::{substitute, Formula, PoolConfig, SentenceSystem, Term};
use truthlab::translations::Dual;
use truthlab::valuation::{
    enumerate_fixed_points, eval_fde, is_fixed_point, jump_step, least_fixed_point, NameAssignment, V4,
};

fn v4() -> impl Strategy<Value = V4> {
    prop::sample::select(V4::ALL.to_vec())
}

/// Bodies over a few names: truth atoms, arithmetic atoms, connectives.
fn body(names: usize) -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (0..names).prop_map(|i| format!("T(N{i})")),
        Just("0 = 1".to_string()),
        Just("T(quote(0 = 0))".to_string()),
        (0..names).prop_map(|i| format!("T(quote(not T(N{i})))")),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| format!("not ({a})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) and ({b})")),
            (inner.clone(), inner).prop_map(|(a, b)| format!("({a}) or ({b})")),
        ]
    })
}

fn system_text() -> impl Strategy<Value = String> {
    (1usize..=3).prop_flat_map(|k| {
        prop::collection::vec(body(k), k).prop_map(|bodies| {
            let mut s = String::from("base 0 1;\n");
            for (i, b) in bodies.iter().enumerate() {
                s.push_str(&format!("name N{i} := {b};\n"));
            }
            s
        })
    })
}

fn system(depth: usize) -> impl Strategy<Value = SentenceSystem> {
    system_text().prop_map(move |t| SentenceSystem::parse_with(&t, Some(depth), PoolConfig::default()).unwrap())
}

fn assignment(sys: &SentenceSystem, vals: &[V4]) -> NameAssignment {
    sys.primary_names()
        .iter()
        .zip(vals.iter().cycle())
        .map(|(n, v)| (n.to_string(), *v))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_laws(a in v4(), b in v4(), c in v4()) {
        prop_assert_eq!(a.neg().neg(), a);
        prop_assert_eq!(a.and(b).neg(), a.neg().or(b.neg()));
        prop_assert_eq!(a.and(b), b.and(a));
        prop_assert_eq!(a.and(b.and(c)), a.and(b).and(c));
        prop_assert_eq!(a.dual().dual(), a);
        prop_assert_eq!(a.dual().neg(), a.neg().dual());
        if a.leq_k(b) {
            prop_assert!(a.and(c).leq_k(b.and(c)));
            prop_assert!(a.neg().leq_k(b.neg()));
        }
    }

    #[test]
    fn print_parse_round_trip(sys in system(1)) {
        let again = SentenceSystem::parse(&sys.print()).unwrap();
        prop_assert_eq!(again, sys);
    }

    #[test]
    fn pool_generation_is_idempotent(sys in system(1)) {
        let again = sys.generate_pools(1, PoolConfig::default()).unwrap();
        prop_assert_eq!(again, sys);
    }

    #[test]
    fn jump_is_monotone(sys in system(0), lo in prop::collection::vec(v4(), 3), hi in prop::collection::vec(v4(), 3)) {
        let a = assignment(&sys, &lo);
        let b: NameAssignment = a
            .iter()
            .zip(hi.iter().cycle())
            .map(|((n, x), y)| (n.to_string(), if x.leq_k(*y) { *y } else { V4::B }))
            .collect();
        prop_assert!(a.leq_k(&b));
        prop_assert!(jump_step(&sys, &a).unwrap().leq_k(&jump_step(&sys, &b).unwrap()));
    }

    #[test]
    fn least_fixed_point_is_below_all(sys in system(0)) {
        let lfp = least_fixed_point(&sys).unwrap();
        let all = enumerate_fixed_points(&sys, 8, Exec::Sequential).unwrap();
        prop_assert!(all.contains(&lfp));
        for fp in &all {
            prop_assert!(lfp.assignment.leq_k(&fp.assignment));
            prop_assert!(is_fixed_point(&sys, &fp.dual().assignment).unwrap());
            prop_assert_eq!(fp.dual().class.consistent, fp.class.complete);
        }
    }

    #[test]
    fn negation_swaps_bits(sys in system(1), vals in prop::collection::vec(v4(), 3)) {
        let w = assignment(&sys, &vals);
        for f in sys.sentence_pool.iter().take(40) {
            let v = eval_fde(&sys, &w, f).unwrap();
            prop_assert_eq!(eval_fde(&sys, &w, &Formula::not(f.clone())).unwrap(), v.neg());
            prop_assert_eq!(eval_fde(&sys, &w, &Formula::true_of(f.clone())).unwrap(), v);
        }
    }

    #[test]
    fn closure_layers_collapse(sys in system(1)) {
        for fp in enumerate_fixed_points(&sys, 8, Exec::Sequential).unwrap() {
            let m = ClassicalModel::closure(&sys, &fp);
            prop_assert_eq!(extract_inner(&m).unwrap(), fp.assignment.clone());
            for a in sys.sentence_pool.iter().take(30) {
                let once = m.eval(&Formula::true_of(a.clone())).unwrap();
                prop_assert_eq!(once, eval_inner(&sys, &fp.assignment, a).unwrap());
                let twice = m.eval(&Formula::true_of(Formula::true_of(a.clone()))).unwrap();
                prop_assert_eq!(twice, eval_fde(&sys, &fp.assignment, a).unwrap().t());
            }
        }
    }

    #[test]
    fn c_duality(sys in system(1)) {
        let dual = Dual::new(&sys).unwrap();
        for fp in enumerate_fixed_points(&sys, 8, Exec::Sequential).unwrap() {
            let m = ClassicalModel::closure(&sys, &fp);
            let md = ClassicalModel::closure(dual.system(), &fp.dual());
            for a in sys.sentence_pool.iter().take(30) {
                prop_assert_eq!(m.eval(a).unwrap(), md.eval(&dual.apply(a).unwrap()).unwrap(), "{}", a);
            }
        }
    }

    #[test]
    fn consistent_closures_pass_ckf(sys in system(0)) {
        for fp in enumerate_fixed_points(&sys, 8, Exec::Sequential).unwrap() {
            let m = ClassicalModel::closure(&sys, &fp);
            let r = check_with(&m, "ckf", Exec::Sequential).unwrap();
            if fp.class.consistent {
                prop_assert!(r.passed(), "{}", r.to_text());
            }
            let p = check_with(&m, "ckf", Exec::Parallel).unwrap();
            prop_assert_eq!(r, p);
        }
    }

    #[test]
    fn substitution_skips_quotes(b in 0usize..2) {
        let t = Term::base(b.to_string());
        let f = SentenceSystem::parse("base 0 1;").unwrap()
            .parse_open_formula("v", "T(v) and quote(forall v . v = v) = v").unwrap();
        let g = substitute(&f.body, "v", &t);
        prop_assert_eq!(g.to_string(), format!("T({b}) and quote(forall v . v = v) = {b}"));
    }
}
