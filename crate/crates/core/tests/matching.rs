use std::collections::BTreeSet;

use ensembles_core::*;

fn mt(pairs: &[(u8, u8)]) -> Matching {
    Matching::new(pairs.iter().copied()).unwrap()
}

fn identity_table() -> EnsembleTable {
    EnsembleTable::from_words(
        [["132", "312", "321"], ["231", "321", "312"], ["321", "231", "213"]]
            .iter()
            .map(|r| r.iter().map(|w| w.parse().unwrap()).collect())
            .collect(),
    )
    .unwrap()
}

fn perfect(w: &Permutation) -> Matching {
    Matching::new((1..=w.len() as u8).map(|p| (p, w.get(p)))).unwrap()
}

/// Every single edge, the entries of `t` as matchings with their
/// submatchings, and the perfect matching of each word used in every row and
/// column.
fn collection_of(t: &EnsembleTable) -> MatchingCollection {
    let n = t.n();
    let mut c = MatchingCollection::new(n, n);
    for v in 1..=n as u8 {
        for l in 1..=n as u8 {
            c.insert(mt(&[(v, l)])).unwrap();
        }
    }
    let mut add = |m: Matching| {
        let subs: Vec<Matching> = m.proper_submatchings().collect();
        c.insert(m).unwrap();
        for s in subs {
            c.insert(s).unwrap();
        }
    };
    for mp in t.cells() {
        add(marked_to_matching(mp));
    }
    for w in repeated_full(t) {
        add(perfect(&w));
    }
    c
}

/// Every spanning tree of `K_{n,d}` by brute force over edge subsets.
fn all_spanning_trees(n: usize, d: usize) -> Vec<SpanningTree> {
    let edges: Vec<(u8, u8)> = (1..=n as u8).flat_map(|l| (1..=d as u8).map(move |v| (l, v))).collect();
    let k = n + d - 1;
    (0u32..1 << edges.len())
        .filter(|mask| mask.count_ones() as usize == k)
        .filter_map(|mask| {
            let chosen = edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e);
            SpanningTree::new(n, d, chosen).ok()
        })
        .collect()
}

#[test]
fn complete_bipartite_tree_counts() {
    // Scoville's formula n^(d-1) d^(n-1).
    assert_eq!(all_spanning_trees(2, 2).len(), 4);
    assert_eq!(all_spanning_trees(3, 2).len(), 12);
    assert_eq!(all_spanning_trees(3, 3).len(), 81);
}

#[test]
fn table_one_collection_is_a_matching_ensemble() {
    let c = collection_of(&identity_table());
    // 9 single edges, 9 pairs, one perfect matching.
    assert_eq!(c.len(), 19);
    let r = validate_matching_collection(&c);
    assert!(r.is_matching_ensemble(), "{:?}", r.violations);
}

/// The tiles of the subdivision behind the three-by-three table are the trees
/// all of whose matchings belong to its matching ensemble.
#[test]
fn trees_of_the_three_by_three_subdivision() {
    let c = collection_of(&identity_table());
    let tiles: Vec<SpanningTree> = all_spanning_trees(3, 3).into_iter().filter(|t| t.matchings().iter().all(|m| c.contains(m))).collect();
    assert_eq!(tiles.len(), 6);
    let from_trees = matchings_from_trees(&tiles).unwrap();
    let a: BTreeSet<&Matching> = from_trees.iter().collect();
    let b: BTreeSet<&Matching> = c.iter().collect();
    assert_eq!(a, b);
    let r = validate_matching_collection(&from_trees);
    assert!(r.is_matching_ensemble(), "{:?}", r.violations);

    // Label 1 meets vertex 2 while label 2 meets vertex 1; the crossing-free
    // alternative never occurs in a tile.
    assert!(from_trees.contains(&mt(&[(2, 1), (1, 2)])));
    assert!(!from_trees.contains(&mt(&[(1, 1), (2, 2)])));

    // Dropping that pair leaves its index empty.
    let mut missing = from_trees.clone();
    assert!(missing.remove(&mt(&[(1, 2), (2, 1)])));
    let r = validate_matching_collection(&missing);
    assert!(!r.uniqueness_ok);
    assert!(r.violations.contains(&MeViolation::Missing { vertices: IndexSet::from_bits(0b11), labels: IndexSet::from_bits(0b11) }));

    // Dropping a pair inside the perfect matching breaks closure too.
    let mut broken = from_trees.clone();
    assert!(broken.remove(&mt(&[(1, 3), (2, 2)])));
    let r = validate_matching_collection(&broken);
    assert!(!r.closure_ok);
    assert!(!r.is_matching_ensemble());
}

#[test]
fn matching_text_forms() {
    let m: Matching = "{(1,2),(3,4),(4,1)}".parse().unwrap();
    assert_eq!(m.to_string(), "{(1,2),(3,4),(4,1)}");
    assert_eq!(matching_to_marked(&m, 4).unwrap().to_string(), "2[3]41");
    let t: SpanningTree = "1-1' 1-2' 2-2'".parse().unwrap();
    assert_eq!(t.to_string(), "1-1' 1-2' 2-2'");
    assert_eq!(t.matchings().len(), 4);
    assert!("1-1' 2-2'".parse::<SpanningTree>().is_err());
}
