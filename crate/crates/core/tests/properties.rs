mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use bianchi_core::{
    are_isomorphic, enumerate_semigroups, find_resonances, is_resonant, CayleyTable, CensusRequest, Convention, Perm,
    ResonantDecomposition,
};
use common::{fixture, perm};
use proptest::prelude::*;

fn census4() -> &'static [CayleyTable] {
    static CENSUS: OnceLock<Vec<CayleyTable>> = OnceLock::new();
    CENSUS.get_or_init(|| enumerate_semigroups(&CensusRequest::new(4)).unwrap())
}

fn abelian4() -> &'static [CayleyTable] {
    static CENSUS: OnceLock<Vec<CayleyTable>> = OnceLock::new();
    CENSUS.get_or_init(|| enumerate_semigroups(&CensusRequest::new(4).abelian(true)).unwrap())
}

fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::new(v).unwrap())
}

/// Census semigroups most of the time, arbitrary magmas otherwise.
fn arb_table() -> impl Strategy<Value = CayleyTable> {
    prop_oneof![
        3 => (0..census4().len()).prop_map(|i| census4()[i].clone()),
        1 => prop::collection::vec(0u8..4, 16).prop_map(|c| CayleyTable::new(4, c).unwrap()),
        1 => (1usize..=3).prop_flat_map(|n| {
            prop::collection::vec(0..n as u8, n * n).prop_map(move |c| CayleyTable::new(n, c).unwrap())
        }),
    ]
}

fn table_and_perm() -> impl Strategy<Value = (CayleyTable, Perm)> {
    arb_table().prop_flat_map(|t| {
        let n = t.order();
        (Just(t), arb_perm(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn relabeling_preserves_predicates((t, p) in table_and_perm()) {
        let img = t.apply_perm(&p).unwrap();
        prop_assert_eq!(img.is_associative(), t.is_associative());
        prop_assert_eq!(img.is_commutative(), t.is_commutative());
        prop_assert_eq!(img.find_zero().is_some(), t.find_zero().is_some());
        if let Some(z) = t.find_zero() {
            prop_assert_eq!(img.find_zero(), Some(p.apply(z)));
        }
    }

    #[test]
    fn relabeling_composes((t, p) in table_and_perm(), seed in any::<u64>()) {
        let n = t.order();
        let all: Vec<Perm> = Perm::all(n).collect();
        let q = &all[(seed as usize) % all.len()];
        let stepwise = t.apply_perm(&p).unwrap().apply_perm(q).unwrap();
        prop_assert_eq!(stepwise, t.apply_perm(&p.then(q)).unwrap());
        prop_assert_eq!(t.apply_perm(&p).unwrap().apply_perm(&p.inverse()).unwrap(), t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn canonical_form_is_orbit_invariant((t, p) in table_and_perm()) {
        let img = t.apply_perm(&p).unwrap();
        for conv in [Convention::Iso, Convention::IsoAndAnti] {
            prop_assert_eq!(img.canonical_form(conv), t.canonical_form(conv));
        }
        prop_assert_eq!(
            t.transpose().canonical_form(Convention::IsoAndAnti),
            t.canonical_form(Convention::IsoAndAnti)
        );
        let naive = common::naive_canonical(&t, false);
        prop_assert_eq!(t.canonical_form(Convention::Iso).cells().to_vec(), naive);
    }

    #[test]
    fn witnesses_are_sound((t, p) in table_and_perm()) {
        let img = t.apply_perm(&p).unwrap();
        let w = are_isomorphic(&img, &t).expect("orbit members are isomorphic");
        prop_assert_eq!(&t.apply_perm(&w).unwrap(), &img);
        let back = are_isomorphic(&t, &img).unwrap();
        prop_assert_eq!(img.apply_perm(&back).unwrap(), t);
    }

    #[test]
    fn witness_search_matches_exhaustive_search((t, p) in table_and_perm(), other in arb_table(), relabel in any::<bool>()) {
        let a = t.apply_perm(&p).unwrap();
        let b = if relabel || other.order() != t.order() { t.clone() } else { other };
        let first = Perm::all(b.order()).find(|q| b.apply_perm(q).unwrap() == a);
        prop_assert_eq!(are_isomorphic(&a, &b), first);
    }

    #[test]
    fn isomorphism_iff_equal_canonical_forms(i in 0usize..188, j in 0usize..188, p in arb_perm(4)) {
        let a = census4()[i].apply_perm(&p).unwrap();
        let b = &census4()[j];
        let same = a.canonical_form(Convention::Iso) == b.canonical_form(Convention::Iso);
        let w = are_isomorphic(&a, b);
        prop_assert_eq!(w.is_some(), same);
        prop_assert_eq!(same, i == j);
        if let Some(w) = w {
            prop_assert_eq!(b.apply_perm(&w).unwrap(), a);
        }
    }

    #[test]
    fn commutative_tables_agree_across_conventions(i in 0usize..58, p in arb_perm(4)) {
        let t = abelian4()[i].apply_perm(&p).unwrap();
        prop_assert_eq!(t.canonical_form(Convention::Iso), t.canonical_form(Convention::IsoAndAnti));
    }

    #[test]
    fn resonances_follow_relabeling((t, p) in table_and_perm()) {
        let img = t.apply_perm(&p).unwrap();
        let moved: BTreeSet<ResonantDecomposition> = find_resonances(&t).iter().map(|d| d.relabel(&p)).collect();
        let found: BTreeSet<ResonantDecomposition> = find_resonances(&img).into_iter().collect();
        prop_assert_eq!(moved, found);
    }

    #[test]
    fn resonances_match_definition(i in 0usize..188) {
        let t = &census4()[i];
        let full = t.full_mask();
        let listed: BTreeSet<ResonantDecomposition> = find_resonances(t).into_iter().collect();
        for s0 in 0..=full {
            for s1 in 0..=full {
                let d = ResonantDecomposition::from_masks(s0, s1);
                let direct = s0 != 0
                    && s1 != 0
                    && s0 | s1 == full
                    && (0..4).all(|a| (0..4).all(|b| {
                        let c = 1u32 << t.product(a, b);
                        // Only the three left-ordered conditions.
                        let (a0, a1) = (s0 >> a & 1 == 1, s1 >> a & 1 == 1);
                        let (b0, b1) = (s0 >> b & 1 == 1, s1 >> b & 1 == 1);
                        (!(a0 && b0) || c & s0 != 0)
                            && (!(a0 && b1) || c & s1 != 0)
                            && (!(a1 && b1) || c & s0 != 0)
                    }));
                prop_assert_eq!(is_resonant(t, &d).unwrap(), direct, "{}", d);
                prop_assert_eq!(listed.contains(&d), direct);
            }
        }
    }
}

#[test]
fn zero_elements_of_listed_tables() {
    assert_eq!(fixture("S4_42").find_zero(), Some(0));
    assert_eq!(fixture("SK3").find_zero(), Some(3));
    assert_eq!(fixture("S3_18").find_zero(), None);
    assert!(fixture("S3_18").is_commutative());
    assert!(fixture("SN2").is_associative());
}

#[test]
fn listed_order_four_pair_is_not_isomorphic() {
    let a = fixture("S4_10");
    let b = fixture("S4_12");
    assert!(are_isomorphic(&a, &b).is_none());
    assert!(Perm::all(4).all(|p| b.apply_perm(&p).unwrap() != a));
}

#[test]
fn relabeled_appendix_table_gives_third_template_class() {
    let img = fixture("S4_42").apply_perm(&perm(&[4, 1, 3, 2])).unwrap();
    assert_eq!(img, fixture("SN3"));
}

#[test]
fn listed_abelian_order_three_canonical_forms_are_distinct() {
    let forms: BTreeSet<CayleyTable> = [1, 2, 3, 6, 7, 9, 10, 12, 15, 16, 17, 18]
        .iter()
        .map(|a| fixture(&format!("S3_{a}")).canonical_form(Convention::Iso))
        .collect();
    assert_eq!(forms.len(), 12);
}
