use lexmv::dsl::{parse_input, realize_algebra, Realized};
use lexmv::finite::table::{parse_table, print_table};
use lexmv::finite::{
    check_axioms as finite_axioms, enumerate_ideals, extremal_states, is_state, make_chain, make_product, quotient,
    radical_suite, FiniteMv,
};
use lexmv::group::{GroupElem, GroupSpec, UnitalGroup};
use lexmv::perfect::{canonical_witness, state_on_lex, LexAlgebra, WitnessKind};
use lexmv::pmv::PmvAlgebra;
use lexmv::sample::Sampler;
use lexmv::Rational;
use proptest::prelude::*;

fn lex_algebras() -> Vec<LexAlgebra> {
    let z = |n| UnitalGroup::integers(n).unwrap();
    vec![
        LexAlgebra::strong(z(1), GroupSpec::Integers).unwrap(),
        LexAlgebra::new(z(2), GroupSpec::Integers, GroupElem::int(1)).unwrap(),
        LexAlgebra::strong(z(1), GroupSpec::AffinePos).unwrap(),
        LexAlgebra::new(z(3), GroupSpec::AffinePos, GroupElem::aff_int(3, -2)).unwrap(),
        LexAlgebra::strong(z(2), GroupSpec::Rationals).unwrap(),
    ]
}

fn triple(which: usize, seed: u64) -> (PmvAlgebra, [lexmv::pmv::PmvElem; 3]) {
    let lex = &lex_algebras()[which];
    let mut s = Sampler::new(seed, 5, 12);
    let x = [lex.sample(&mut s).unwrap(), lex.sample(&mut s).unwrap(), lex.sample(&mut s).unwrap()];
    (lex.algebra().clone(), x)
}

fn small_product(a: usize, b: usize) -> FiniteMv {
    let x = make_chain(a).unwrap();
    if b == 0 {
        x
    } else {
        make_product(&x, &make_chain(b).unwrap()).unwrap()
    }
}

fn group_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![Just("Z".to_string()), Just("Q".to_string()), Just("O".to_string()), Just("Aff".to_string())];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop::collection::vec(inner, 2..=3).prop_map(|v| format!("lex({})", v.join(",")))
    })
}

fn elem_text() -> impl Strategy<Value = String> {
    let rat = (-20i64..20, 1i64..7).prop_map(|(p, q)| if q == 1 { p.to_string() } else { format!("{p}/{q}") });
    let leaf = prop_oneof![
        rat.clone(),
        (rat.clone(), rat).prop_map(|(a, b)| format!("aff({a},{b})")),
    ];
    leaf.prop_recursive(3, 12, 3, |inner| prop::collection::vec(inner, 2..=3).prop_map(|v| format!("( {} )", v.join(" , "))))
}

fn algebra_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (group_text(), elem_text()).prop_map(|(g, e)| format!("gamma({g},{e})")),
        (0u32..12).prop_map(|n| format!("chain({n})")),
        Just("table".to_string()),
    ];
    leaf.prop_recursive(2, 6, 3, |inner| prop::collection::vec(inner, 2..=3).prop_map(|v| format!("prod({})", v.join(","))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn negations_are_mutually_inverse(which in 0usize..5, seed in any::<u64>()) {
        let (_, [x, _, _]) = triple(which, seed);
        prop_assert_eq!(x.minus().tilde(), x.clone());
        prop_assert_eq!(x.tilde().minus(), x);
    }

    #[test]
    fn oplus_is_associative_and_bounded(which in 0usize..5, seed in any::<u64>()) {
        let (alg, [x, y, z]) = triple(which, seed);
        let l = x.oplus(&y).unwrap().oplus(&z).unwrap();
        let r = x.oplus(&y.oplus(&z).unwrap()).unwrap();
        prop_assert_eq!(&l, &r);
        prop_assert!(x.le(&x.oplus(&y).unwrap()).unwrap());
        prop_assert_eq!(x.oplus(&alg.zero()).unwrap(), x.clone());
        prop_assert!(x.oplus(&alg.one()).unwrap().is_one());
    }

    #[test]
    fn partial_sum_agrees_with_oplus_when_defined(which in 0usize..5, seed in any::<u64>()) {
        let (_, [x, y, _]) = triple(which, seed);
        let full = x.oplus(&y).unwrap();
        match x.partial_add(&y).unwrap() {
            Some(s) => prop_assert_eq!(s, full),
            None => prop_assert!(!y.le(&x.minus()).unwrap() || !x.le(&y.tilde()).unwrap()),
        }
        prop_assert_eq!(x.oplus_via_pea(&y).unwrap(), x.oplus(&y).unwrap());
    }

    #[test]
    fn lattice_is_consistent_with_order(which in 0usize..5, seed in any::<u64>()) {
        let (_, [x, y, _]) = triple(which, seed);
        let (j, m) = (x.join(&y).unwrap(), x.meet(&y).unwrap());
        prop_assert!(x.le(&j).unwrap() && y.le(&j).unwrap());
        prop_assert!(m.le(&x).unwrap() && m.le(&y).unwrap());
        prop_assert_eq!(x.join_a6(&y).unwrap(), j);
        prop_assert_eq!(x.meet_a7(&y).unwrap(), m);
    }

    #[test]
    fn canonical_index_is_the_head(which in 0usize..5, seed in any::<u64>()) {
        let lex = &lex_algebras()[which];
        let kind = if lex.is_strong() { WitnessKind::Strong } else { WitnessKind::Weak };
        let w = canonical_witness(lex, kind).unwrap();
        let (_, [x, _, _]) = triple(which, seed);
        prop_assert_eq!(&w.classify(&x).unwrap(), lex.head(&x));
    }

    #[test]
    fn state_is_additive(seed in any::<u64>()) {
        let lex = &lex_algebras()[0];
        let s = state_on_lex(lex).unwrap();
        let (_, [x, y, _]) = triple(0, seed);
        if let Some(sum) = x.partial_add(&y).unwrap() {
            prop_assert_eq!(s.eval(&sum).unwrap(), s.eval(&x).unwrap() + s.eval(&y).unwrap());
        }
        let v = s.eval(&x).unwrap();
        prop_assert!(v >= Rational::from(0) && v <= Rational::from(1));
    }

    #[test]
    fn dsl_print_parse_is_stable(text in algebra_text(), second in proptest::option::of(algebra_text())) {
        let text = match second {
            Some(b) => format!("{text} ;\n{b}"),
            None => text,
        };
        let first = parse_input(&text).unwrap();
        let printed = first.to_string();
        let again = parse_input(&printed).unwrap();
        prop_assert_eq!(&again, &first);
        prop_assert_eq!(again.to_string(), printed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn finite_products_satisfy_the_axioms(a in 1usize..5, b in 0usize..4) {
        let m = small_product(a, b);
        prop_assert!(finite_axioms(m.table()).unwrap().passed());
        let t = parse_table(&print_table(m.table())).unwrap();
        prop_assert_eq!(&t.oplus, &m.table().oplus);
        prop_assert_eq!(&t.neg, &m.table().neg);
    }

    #[test]
    fn finite_radicals_nest_and_states_are_states(a in 1usize..5, b in 0usize..4) {
        let m = small_product(a, b);
        let r = radical_suite(&m);
        prop_assert!(r.rad.is_subset(r.infinit) && r.infinit.is_subset(r.rad_n));
        let states = extremal_states(&m).unwrap();
        prop_assert_eq!(states.len(), if b == 0 { 1 } else { 2 });
        for s in &states {
            prop_assert!(is_state(&m, s));
        }
    }

    #[test]
    fn quotients_by_proper_ideals_are_mv_algebras(a in 1usize..5, b in 0usize..4) {
        let m = small_product(a, b);
        let ideals = enumerate_ideals(&m);
        prop_assert_eq!(ideals.len(), if b == 0 { 2 } else { 4 });
        for i in ideals.iter().filter(|i| i.proper) {
            let (q, proj) = quotient(&m, i.mask).unwrap();
            prop_assert!(finite_axioms(q.table()).unwrap().passed());
            for x in m.elements() {
                for y in m.elements() {
                    prop_assert_eq!(proj[m.oplus(x, y)], q.oplus(proj[x], proj[y]));
                }
            }
        }
    }
}

#[test]
fn gamma_z_is_a_chain() {
    let a = parse_input("gamma(Z,4)").unwrap();
    let r = realize_algebra(&a.algebras[0], None).unwrap();
    assert!(matches!(r, Realized::Interval(_)));
    assert!(r.as_finite().unwrap().is_chain());
}
