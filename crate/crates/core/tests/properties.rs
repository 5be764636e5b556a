use std::collections::BTreeSet;
use std::sync::OnceLock;

use ensembles_core::*;
use proptest::prelude::*;

fn marked_all(n: usize) -> Vec<MarkedPermutation> {
    Permutation::all(n).flat_map(|w| (1..=n as u8).map(move |j| MarkedPermutation::new(w, j).unwrap())).collect()
}

fn s4_tables() -> &'static [EnsembleTable] {
    static TABLES: OnceLock<Vec<EnsembleTable>> = OnceLock::new();
    TABLES.get_or_init(|| enumerate_ensembles(4, Delivery::All).unwrap().0.into_iter().map(|(t, _)| t).collect())
}

fn catalog() -> &'static CyclicPatternCatalog {
    static CATALOG: OnceLock<CyclicPatternCatalog> = OnceLock::new();
    CATALOG.get_or_init(CyclicPatternCatalog::new)
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n as u8).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(&v).unwrap())
}

fn action_strategy(n: usize) -> impl Strategy<Value = RowColAction> {
    (perm_strategy(n), perm_strategy(n)).prop_map(|(r, c)| RowColAction::new(r, c).unwrap())
}

/// A forced-entry table with an arbitrary word in every cell.
fn forced_entry_strategy(n: usize) -> impl Strategy<Value = EnsembleTable> {
    proptest::collection::vec(perm_strategy(n - 1), n * n).prop_map(move |rests| {
        let cells: Vec<MarkedPermutation> = rests
            .iter()
            .enumerate()
            .map(|(k, rest)| {
                let (i, j) = ((k / n) as u8 + 1, (k % n) as u8 + 1);
                let mut word: Vec<u8> = rest.as_slice().iter().map(|&v| if v >= i { v + 1 } else { v }).collect();
                word.insert(j as usize - 1, i);
                MarkedPermutation::new(Permutation::new(&word).unwrap(), j).unwrap()
            })
            .collect();
        EnsembleTable::new(cells.chunks(n).map(<[_]>::to_vec).collect()).unwrap()
    })
}

/// Conflict records depend on scan order, so only the number of distinct
/// conflicting indices is compared.
fn flags(r: &ValidationReport) -> (bool, bool, bool, usize, usize) {
    let indices: BTreeSet<_> = r.compatibility_conflicts.iter().map(|c| (c.positions, c.values)).collect();
    (r.forced_entry_ok, r.linkage_ok, r.compatibility_ok, r.linkage_failures.len(), indices.len())
}

fn multiplicity_profile(t: &EnsembleTable) -> Vec<usize> {
    let mut counts: Vec<usize> = t.multiplicities().into_values().collect();
    counts.sort_unstable();
    counts
}

fn structure_counts(t: &EnsembleTable) -> (usize, usize, usize) {
    let s = detect_structures(t);
    (s.squares.len(), s.rectangles.len(), s.halfsquares.len())
}

#[test]
fn linked_iff_hamming_two() {
    for n in [3, 4, 5] {
        let all: Vec<Permutation> = Permutation::all(n).collect();
        for u in &all {
            for w in &all {
                assert_eq!(linked(u, w).unwrap(), u.hamming(w).unwrap() == 2, "{u} {w}");
            }
        }
    }
}

#[test]
fn marked_matching_round_trip() {
    for n in [2, 3, 4, 5] {
        let mut seen = BTreeSet::new();
        for mp in marked_all(n) {
            let m = marked_to_matching(&mp);
            assert_eq!(m.len(), n - 1);
            assert_eq!(matching_to_marked(&m, n).unwrap(), mp);
            assert!(seen.insert(m.to_string()));
        }
    }
}

#[test]
fn compatibility_is_reflexive_and_symmetric() {
    for n in [3, 4] {
        let all = marked_all(n);
        for a in &all {
            assert!(compatible(a, a).unwrap());
            for b in &all {
                assert_eq!(compatible(a, b).unwrap(), compatible(b, a).unwrap());
            }
        }
    }
}

/// Two different words for the same cell always clash on all free
/// positions; other pairs only ever clash on two positions.
#[test]
fn two_compatibility_decides_compatibility_for_four() {
    let all = marked_all(4);
    let mut incompatible = 0;
    for a in &all {
        for b in &all {
            if a.cell() == b.cell() {
                assert_eq!(compatible(a, b).unwrap(), a == b);
                continue;
            }
            let full = compatible(a, b).unwrap();
            assert_eq!(full, compatible_at_size(a, b, 2).unwrap(), "{a} {b}");
            assert!(compatible_at_size(a, b, 1).unwrap());
            incompatible += usize::from(!full);
        }
    }
    assert!(incompatible > 0);
}

#[test]
fn three_word_cells_are_always_compatible_across_cells() {
    let all = marked_all(3);
    for a in &all {
        for b in &all {
            assert_eq!(compatible(a, b).unwrap(), a.cell() != b.cell() || a == b, "{a} {b}");
        }
    }
}

#[test]
fn catalog_has_192_triples_of_three_indices() {
    let triples = catalog().triples();
    assert_eq!(triples.len(), 192);
    assert_eq!(triples.iter().map(|t| t.indices.len()).sum::<usize>(), 576);
    for t in triples {
        assert_eq!(t.indices.len(), 3);
        for idx in &t.indices {
            assert_eq!(generate_33(idx).unwrap().members, t.members);
        }
        let rows: BTreeSet<u8> = t.members.iter().map(|m| m.cell().0).collect();
        let cols: BTreeSet<u8> = t.members.iter().map(|m| m.cell().1).collect();
        assert_eq!((rows.len(), cols.len()), (3, 3), "{:?}", t.members);
        for a in &t.members {
            for b in &t.members {
                assert!(compatible_at_size(a, b, 2).unwrap(), "{a} {b}");
            }
        }
    }
}

#[test]
fn pattern_members_have_the_documented_shape() {
    let idx = CyclicPatternIndex { word: "1234".parse().unwrap(), order: "1234".parse().unwrap() };
    let m = pattern_members(&idx).unwrap();
    // w^(i) swaps the entries at v_i and v_4 and underlines v_{i+1}.
    assert_eq!(m[0].to_string(), "4[2]31");
    assert_eq!(m[1].to_string(), "14[3]2");
    assert_eq!(m[2].to_string(), "[1]243");
    assert!(pattern_members(&CyclicPatternIndex { word: "123".parse().unwrap(), order: "1234".parse().unwrap() }).is_err());
}

#[test]
fn acyclicity_classification_of_the_universe() {
    let tables = s4_tables();
    let acyclic = tables.iter().filter(|t| catalog().is_acyclic(t).unwrap()).count();
    assert_eq!(acyclic, 77_760);
    for t in tables {
        assert_eq!(catalog().is_acyclic(t).unwrap(), catalog().detect(t).unwrap().is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn validation_is_invariant_under_the_action(t in forced_entry_strategy(4), g in action_strategy(4)) {
        let image = t.act(&g).unwrap();
        prop_assert_eq!(flags(&validate_table(&t)), flags(&validate_table(&image)));
        prop_assert_eq!(multiplicity_profile(&t), multiplicity_profile(&image));
        prop_assert_eq!(repeated_full(&t).len(), repeated_full(&image).len());
        prop_assert_eq!(structure_counts(&t), structure_counts(&image));
        prop_assert_eq!(catalog().detect(&t).unwrap().len(), catalog().detect(&image).unwrap().len());
    }

    #[test]
    fn ensembles_map_to_ensembles(k in 0usize..77_952, g in action_strategy(4)) {
        let t = &s4_tables()[k];
        let image = t.act(&g).unwrap();
        prop_assert!(validate_table(&image).is_ensemble());
        prop_assert_eq!(structure_counts(t), structure_counts(&image));
        prop_assert_eq!(catalog().detect(t).unwrap().len(), catalog().detect(&image).unwrap().len());
        prop_assert_eq!(canonicalize(t), canonicalize(&image));
    }

    #[test]
    fn action_composes(t in forced_entry_strategy(3), g in action_strategy(3), h in action_strategy(3)) {
        let stepwise = t.act(&g).unwrap().act(&h).unwrap();
        prop_assert_eq!(stepwise, t.act(&g.then(&h).unwrap()).unwrap());
        prop_assert_eq!(t.act(&RowColAction::identity(3)).unwrap(), t);
    }

    #[test]
    fn compatibility_matches_validator_on_pairs(t in forced_entry_strategy(4)) {
        let cells = t.cells();
        let pairwise = cells.iter().all(|a| cells.iter().all(|b| compatible(a, b).unwrap()));
        prop_assert_eq!(pairwise, validate_table(&t).compatibility_ok);
    }

    #[test]
    fn round_trip_for_larger_words(w in perm_strategy(7), j in 1u8..=7) {
        let mp = MarkedPermutation::new(w, j).unwrap();
        prop_assert_eq!(matching_to_marked(&marked_to_matching(&mp), 7).unwrap(), mp);
        prop_assert_eq!(mp.to_string().parse::<MarkedPermutation>().unwrap(), mp);
    }

    #[test]
    fn linked_is_symmetric_and_irreflexive(u in perm_strategy(6), w in perm_strategy(6)) {
        prop_assert_eq!(linked(&u, &w).unwrap(), linked(&w, &u).unwrap());
        prop_assert!(!linked(&u, &u).unwrap());
    }
}
