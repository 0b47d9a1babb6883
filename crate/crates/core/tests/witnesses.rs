use proptest::prelude::*;

use diagspread::catalog::LoadedGroup;
use diagspread::model::{DiagonalGroup, DEFAULT_DIAGONAL_CAP, DEFAULT_SEARCH_LIMIT};
use diagspread::spreading::{
    diagonal_witness, verify_witness, Multiset, Violation, Witness, WitnessCheck,
};
use diagspread::{Permutation, PermutationGroup};

/// The common value of `sum_{x in X^g} mu(x)` over all `g`, if there is one.
fn oracle(g: &PermutationGroup, set: &[u32], mult: &[u64]) -> Option<u64> {
    let sums: Vec<u64> = g
        .elements(1_000_000)
        .unwrap()
        .iter()
        .map(|p| set.iter().map(|&x| mult[p.apply(x as usize)]).sum())
        .collect();
    sums.iter().all(|&s| s == sums[0]).then_some(sums[0])
}

fn trivial(set: &[u32], mult: &[u64]) -> bool {
    let n = mult.len();
    let card: u64 = mult.iter().sum();
    set.len() <= 1
        || set.len() == n
        || mult.iter().all(|&m| m == mult[0])
        || mult.iter().filter(|&&m| m > 0).count() == 1
        || card == 0
        || n as u64 % card != 0
}

fn natural(name: &str) -> PermutationGroup {
    LoadedGroup::load(name).unwrap().entry.group().unwrap()
}

fn a5_witness() -> (PermutationGroup, Witness) {
    let lg = LoadedGroup::load("A5").unwrap();
    let aut = lg.automorphisms(10_000, DEFAULT_SEARCH_LIMIT).unwrap();
    let a = lg.subgroup("A4").unwrap();
    let b = lg.subgroup("V4").unwrap();
    let dw = diagonal_witness(&lg.table, &aut, &a, &b, DEFAULT_DIAGONAL_CAP, 1_000_000).unwrap();
    let w = DiagonalGroup::build(&lg.table, &aut, DEFAULT_DIAGONAL_CAP).unwrap();
    let wit = dw.outcome.witness().unwrap().witness.clone();
    (w.group().clone(), wit)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The verifier agrees with summing over every group element.
    #[test]
    fn verifier_matches_oracle(
        which in 0usize..3,
        set in prop::collection::btree_set(0u32..8, 2..6),
        weights in prop::collection::vec(0u64..3, 8),
    ) {
        let name = ["PSL(2,7)", "PSL(3,2)", "A5"][which];
        let g = natural(name);
        let n = g.degree();
        let set: Vec<u32> = set.into_iter().filter(|&x| (x as usize) < n).collect();
        let mult: Vec<u64> = weights[..n].to_vec();
        prop_assume!(!set.is_empty());
        let ms = Multiset::from_multiplicities(mult.clone());
        let check = verify_witness(&g, name, &set, &ms, 1_000_000).unwrap();
        match &check {
            WitnessCheck::Verified(w) => {
                prop_assert!(!trivial(&set, &mult));
                prop_assert_eq!(oracle(&g, &set, &mult), Some(w.constant));
            }
            WitnessCheck::Refuted(r) => {
                prop_assert!(r.recheck(&g));
                if r.violation == Violation::NotConstant {
                    prop_assert!(!trivial(&set, &mult));
                    prop_assert_eq!(oracle(&g, &set, &mult), None);
                } else {
                    prop_assert!(trivial(&set, &mult));
                }
            }
        }
    }

    /// Moving a witness by a group element gives a witness with the same constant.
    #[test]
    fn witnesses_are_invariant(k in 0usize..14400, move_set in any::<bool>()) {
        let (g, wit) = a5_witness();
        let p: Permutation = g.elements(20_000).unwrap().swap_remove(k);
        let (set, mult) = if move_set {
            (p.image_of_set(&wit.set), wit.multiset.clone())
        } else {
            let mut m = vec![0u64; g.degree()];
            for x in 0..g.degree() {
                m[p.apply(x)] = wit.multiset.multiplicity(x);
            }
            (wit.set.clone(), Multiset::from_multiplicities(m))
        };
        let again = verify_witness(&g, "W(A5)", &set, &mult, 1_000_000).unwrap();
        let w = again.witness().expect("moved witness verifies");
        prop_assert_eq!(w.constant, wit.constant);
    }
}

#[test]
fn diagonal_witness_passes_the_oracle() {
    let (g, wit) = a5_witness();
    assert_eq!(g.order(), 14400);
    assert_eq!(wit.multiset.cardinality(), 60);
    assert_eq!(
        oracle(&g, &wit.set, wit.multiset.multiplicities()),
        Some(12)
    );
}

#[test]
fn witness_json_shape() {
    let (_, wit) = a5_witness();
    let v = serde_json::to_value(&wit).unwrap();
    assert_eq!(v["constant"], 12);
    assert_eq!(v["verified"], true);
    assert_eq!(v["group"], "W(A5)");
    let total: u64 = v["multiset"]
        .as_object()
        .unwrap()
        .values()
        .map(|x| x.as_u64().unwrap())
        .sum();
    assert_eq!(total, 60);
}
