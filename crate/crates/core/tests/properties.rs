use lyu_core::lyubeznik::{check_lambda_consecutiveness, check_lambda_invariants, lyubeznik_table};
use lyu_core::resolution::{betti_table, Engine};
use lyu_core::strands::NuOptions;
use lyu_core::{Budget, FieldSpec, MonomialIdeal};
use proptest::prelude::*;

/// A proper monomial ideal with up to 5 generators in `n` variables.
fn ideal(max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
    (1usize..=5).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(0..=max_exp, n), 1..=5).prop_filter_map("proper", move |gens| {
            let i = MonomialIdeal::from_exponents(n, &gens).ok()?;
            (!i.is_unit() && !i.is_zero()).then_some(i)
        })
    })
}

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::Rationals), Just(FieldSpec::Prime(2)), Just(FieldSpec::Prime(3))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn duality_is_an_involution(i in ideal(1)) {
        prop_assert_eq!(i.dual_ideal().unwrap().dual_ideal().unwrap(), i.clone());
        let c = i.to_complex().unwrap();
        prop_assert_eq!(MonomialIdeal::from_complex(&c).unwrap(), i);
    }

    #[test]
    fn engines_agree(i in ideal(2), k in field()) {
        let b = Budget::default();
        let taylor = betti_table(&i, k, Engine::Taylor, &b).unwrap();
        let lattice = betti_table(&i, k, Engine::Lattice, &b).unwrap();
        prop_assert_eq!(taylor, lattice);
    }

    #[test]
    fn lyubeznik_tables_are_well_formed(i in ideal(1), k in field()) {
        let t = lyubeznik_table(&i, k, &NuOptions::default()).unwrap();
        prop_assert!(check_lambda_invariants(&t).is_empty());
        prop_assert!(check_lambda_consecutiveness(&t).is_empty());
    }
}
