mod common;

use std::collections::BTreeSet;

use bianchi_core::{
    are_isomorphic, count_semigroups, enumerate_semigroups, BranchOrder, CayleyTable, CensusRequest, Convention,
};
use common::{cells_from_code, fixture, naive_canonical};

/// Every table of order `n`, filtered and reduced to naive orbit minima.
fn naive_classes(n: usize, abelian: bool, with_transpose: bool) -> BTreeSet<Vec<u8>> {
    let cells = n * n;
    let mut out = BTreeSet::new();
    for code in 0..n.pow(cells as u32) {
        let t = CayleyTable::new(n, cells_from_code(n, cells, code)).unwrap();
        if t.is_associative() && (!abelian || t.is_commutative()) {
            out.insert(naive_canonical(&t, with_transpose));
        }
    }
    out
}

fn orderly_classes(req: &CensusRequest) -> BTreeSet<Vec<u8>> {
    enumerate_semigroups(req)
        .unwrap()
        .iter()
        .map(|t| t.cells().to_vec())
        .collect()
}

#[test]
fn orderly_generation_matches_naive_oracle_up_to_order_three() {
    for n in 1..=3 {
        for (conv, transpose) in [(Convention::Iso, false), (Convention::IsoAndAnti, true)] {
            for abelian in [false, true] {
                let req = CensusRequest::new(n).abelian(abelian).convention(conv);
                assert_eq!(
                    orderly_classes(&req),
                    naive_classes(n, abelian, transpose),
                    "order {n} {conv} abelian={abelian}"
                );
            }
        }
    }
}

#[test]
fn order_four_abelian_matches_naive_symmetric_oracle() {
    // All 4^10 symmetric tables, filtered for associativity.
    let n = 4;
    let upper: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let mut classes = BTreeSet::new();
    for code in 0..n.pow(upper.len() as u32) {
        let digits = cells_from_code(n, upper.len(), code);
        let mut cells = vec![0u8; n * n];
        for (&(a, b), &v) in upper.iter().zip(&digits) {
            cells[a * n + b] = v;
            cells[b * n + a] = v;
        }
        let t = CayleyTable::new(n, cells).unwrap();
        if t.is_associative() {
            classes.insert(naive_canonical(&t, false));
        }
    }
    assert_eq!(classes.len(), 58);
    let req = CensusRequest::new(4).abelian(true);
    assert_eq!(orderly_classes(&req), classes);
    assert_eq!(count_semigroups(&req).unwrap(), 58);
}

#[test]
fn census_totals() {
    let totals = |conv: Convention, abelian: bool| -> Vec<u64> {
        (1..=4)
            .map(|n| count_semigroups(&CensusRequest::new(n).convention(conv).abelian(abelian)).unwrap())
            .collect()
    };
    assert_eq!(totals(Convention::IsoAndAnti, false), [1, 4, 18, 126]);
    assert_eq!(totals(Convention::Iso, false), [1, 5, 24, 188]);
    assert_eq!(totals(Convention::Iso, true), [1, 3, 12, 58]);
    // Commutative tables are fixed by transposition.
    assert_eq!(totals(Convention::IsoAndAnti, true), [1, 3, 12, 58]);
}

#[test]
fn count_equals_enumeration_length() {
    for n in 1..=4 {
        for conv in [Convention::Iso, Convention::IsoAndAnti] {
            let req = CensusRequest::new(n).convention(conv);
            assert_eq!(
                count_semigroups(&req).unwrap() as usize,
                enumerate_semigroups(&req).unwrap().len()
            );
        }
    }
}

#[test]
fn listed_order_three_tables_each_match_one_representative() {
    let reps = enumerate_semigroups(&CensusRequest::new(3).abelian(true)).unwrap();
    assert_eq!(reps.len(), 12);
    let mut hit = BTreeSet::new();
    for a in [1, 2, 3, 6, 7, 9, 10, 12, 15, 16, 17, 18] {
        let t = fixture(&format!("S3_{a}"));
        assert!(t.is_associative() && t.is_commutative(), "S3_{a}");
        let matches: Vec<usize> = (0..reps.len())
            .filter(|&i| are_isomorphic(&reps[i], &t).is_some())
            .collect();
        assert_eq!(matches.len(), 1, "S3_{a}");
        assert!(hit.insert(matches[0]), "S3_{a} shares a class");
    }
    assert_eq!(hit.len(), 12);
}

#[test]
fn emitted_classes_are_pairwise_non_isomorphic() {
    let reps = enumerate_semigroups(&CensusRequest::new(4)).unwrap();
    for (i, a) in reps.iter().enumerate() {
        assert!(a.is_associative());
        for b in &reps[i + 1..] {
            assert!(are_isomorphic(a, b).is_none());
        }
    }
}

#[test]
fn output_is_independent_of_branch_order_and_workers() {
    for conv in [Convention::Iso, Convention::IsoAndAnti] {
        let base = CensusRequest::new(4).convention(conv);
        let reference = enumerate_semigroups(&base).unwrap();
        let reversed = enumerate_semigroups(&base.clone().branch_order(BranchOrder::Descending)).unwrap();
        let serial = enumerate_semigroups(&base.clone().workers(1)).unwrap();
        let wide = enumerate_semigroups(&base.clone().workers(7)).unwrap();
        assert_eq!(reference, reversed);
        assert_eq!(reference, serial);
        assert_eq!(reference, wide);
        let mut sorted = reference.clone();
        sorted.sort();
        assert_eq!(reference, sorted);
    }
}

#[test]
fn abelian_emissions_are_commutative_and_canonical() {
    for t in enumerate_semigroups(&CensusRequest::new(4).abelian(true)).unwrap() {
        assert!(t.is_associative() && t.is_commutative());
        assert_eq!(t.canonical_form(Convention::Iso), t);
    }
}
