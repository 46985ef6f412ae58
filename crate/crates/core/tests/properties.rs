use std::collections::{BTreeMap, BTreeSet};

use balanced_labellings::affine::{cyclically_decreasing, demazure_product, reduced_words, NilHeckeWord, ReducedWord};
use balanced_labellings::content::{content_by_columns, content_of_permutation_diagram};
use balanced_labellings::diagram::{border_cell, border_cells, remove_border_cell, rothe_diagram};
use balanced_labellings::factorization::{factorizations, Flag, FactorizationKind};
use balanced_labellings::labelling::{hook_is_balanced, is_balanced_hooks, is_balanced_local};
use balanced_labellings::set_valued::{enumerate_column_strict_sv, is_sv_balanced};
use balanced_labellings::symfunc::{grothendieck_stable_via_labellings, stanley_via_labellings};
use balanced_labellings::universe;
use balanced_labellings::wiring::recognize;
use balanced_labellings::{AffinePermutation, Labelling, SetValuedLabelling};
use proptest::prelude::*;

/// A period in `2..=4` and a word in its generators.
fn word(max_len: usize) -> impl Strategy<Value = (usize, Vec<usize>)> {
    (2usize..=4).prop_flat_map(move |n| (Just(n), prop::collection::vec(0..n, 0..=max_len)))
}

fn element(max_len: usize) -> impl Strategy<Value = AffinePermutation> {
    word(max_len).prop_map(|(n, letters)| NilHeckeWord::new(n, letters).unwrap().product())
}

/// Rewrites at `pos` by a commutation or braid move when one applies.
/// Period 2 has no such relations.
fn rewrite(n: usize, letters: &[usize], pos: usize) -> Vec<usize> {
    let mut v = letters.to_vec();
    if n == 2 || pos + 1 >= v.len() {
        return v;
    }
    let (a, b) = (v[pos], v[pos + 1]);
    let adjacent = (a + 1) % n == b || (b + 1) % n == a;
    if a != b && !adjacent {
        v.swap(pos, pos + 1);
    } else if adjacent && v.get(pos + 2) == Some(&a) {
        v[pos..pos + 3].copy_from_slice(&[b, a, b]);
    }
    v
}

fn hook_by_sorting(corner: u32, right: &[u32], bottom: &[u32]) -> bool {
    let mut all: Vec<u32> = right.iter().chain(bottom).copied().chain([corner]).collect();
    all.sort();
    all[right.len()] == corner
}

fn random_labelling(w: &AffinePermutation, seeds: &[u32], m: u32) -> Labelling {
    let cells = rothe_diagram(w).cells().clone();
    let values: BTreeMap<_, _> = cells.into_iter().zip(seeds.iter().cycle()).map(|(c, &s)| (c, s % m + 1)).collect();
    Labelling::new(w.clone(), values).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduced_words_multiply_back(w in element(6)) {
        for a in reduced_words(&w) {
            prop_assert_eq!(a.len(), w.length());
            prop_assert_eq!(a.product(), w.clone());
        }
    }

    #[test]
    fn right_multiplication_is_an_involution(w in element(8), s in 0usize..4) {
        let s = s % w.period();
        let v = w.multiply_right(s);
        prop_assert_eq!(v.multiply_right(s), w.clone());
        prop_assert_eq!(v.length() + 1 == w.length(), w.descents().contains(&s));
    }

    #[test]
    fn demazure_matches_product_on_reduced_words((n, letters) in word(8)) {
        let a = NilHeckeWord::new(n, letters.clone()).unwrap();
        if ReducedWord::new(n, letters.clone()).is_ok() {
            prop_assert_eq!(demazure_product(&a), a.product());
        }
        let left = letters.iter().rev().fold(AffinePermutation::identity(n), |w, &s| w.demazure_left(s));
        prop_assert_eq!(left, demazure_product(&a));
    }

    #[test]
    fn demazure_is_invariant_under_braid_moves((n, letters) in word(9), moves in prop::collection::vec(0usize..9, 1..6)) {
        let before = demazure_product(&NilHeckeWord::new(n, letters.clone()).unwrap());
        let after = moves.iter().fold(letters, |v, &p| rewrite(n, &v, p));
        prop_assert_eq!(demazure_product(&NilHeckeWord::new(n, after).unwrap()), before);
    }

    #[test]
    fn diagram_size_and_border_removal(w in element(8)) {
        let d = rothe_diagram(&w);
        prop_assert_eq!(d.len(), w.length());
        prop_assert!(d.is_northwest());
        for alpha in border_cells(&w) {
            let i = w.descents().into_iter().find(|&i| border_cell(&w, i) == Some(alpha)).unwrap();
            prop_assert_eq!(remove_border_cell(&w, &d, alpha).unwrap(), rothe_diagram(&w.multiply_right(i)));
        }
    }

    #[test]
    fn hook_rule_matches_sorting(corner in 1u32..6, right in prop::collection::vec(1u32..6, 0..4), bottom in prop::collection::vec(1u32..6, 0..4)) {
        prop_assert_eq!(hook_is_balanced(corner, &right, &bottom), hook_by_sorting(corner, &right, &bottom));
    }

    #[test]
    fn hooks_and_triples_agree_when_column_strict(w in element(6), seeds in prop::collection::vec(0u32..100, 1..8), m in 1u32..4) {
        let t = random_labelling(&w, &seeds, m);
        if t.is_column_strict() {
            prop_assert_eq!(is_balanced_hooks(&t), is_balanced_local(&t));
        }
    }

    #[test]
    fn singletons_reduce_to_single_valued(w in element(6), seeds in prop::collection::vec(0u32..100, 1..8), m in 1u32..4) {
        let t = random_labelling(&w, &seeds, m);
        if t.is_column_strict() {
            prop_assert_eq!(is_sv_balanced(&SetValuedLabelling::from_single(&t)), is_balanced_local(&t));
        }
    }

    #[test]
    fn truncation_drops_the_last_variable(w in element(5), m in 2usize..4) {
        prop_assert_eq!(stanley_via_labellings(&w, m).restrict_last_to_zero(), stanley_via_labellings(&w, m - 1));
        if m <= 2 {
            prop_assert_eq!(
                grothendieck_stable_via_labellings(&w, m).restrict_last_to_zero(),
                grothendieck_stable_via_labellings(&w, m - 1)
            );
        }
    }

    #[test]
    fn recognize_inverts_the_diagram(w in element(10)) {
        prop_assert_eq!(recognize(&rothe_diagram(&w)).unwrap(), w.clone());
        prop_assert_eq!(content_of_permutation_diagram(&w), content_by_columns(&w));
    }
}

#[test]
fn cyclically_decreasing_elements_are_distinct() {
    for n in 2..=5 {
        let mut seen = BTreeSet::new();
        for mask in 0u32..(1 << n) - 1 {
            let letters: BTreeSet<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let v = cyclically_decreasing(&letters, n).unwrap();
            assert_eq!(v.length(), letters.len());
            assert!(seen.insert(v));
        }
        let everything: BTreeSet<usize> = (0..n).collect();
        assert!(cyclically_decreasing(&everything, n).is_err());
    }
}

#[test]
fn sv_types_match_nil_hecke_factorizations() {
    for w in universe::up_to_length(3, 4).into_iter().chain(universe::finite(4)) {
        for m in 1..=2u32 {
            let mut labellings: Vec<Vec<usize>> =
                enumerate_column_strict_sv(&w, m).iter().map(|t| t.type_vector(m as usize)).collect();
            let mut factors: Vec<Vec<usize>> = factorizations(&w, m as usize, FactorizationKind::NilHecke, Flag::None)
                .unwrap()
                .iter()
                .map(|f| f.type_vector())
                .collect();
            labellings.sort();
            factors.sort();
            assert_eq!(labellings, factors, "{w} m={m}");
        }
    }
}
