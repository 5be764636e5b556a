use std::collections::BTreeSet;

use ensembles_core::*;
use rand::prelude::*;
use rand::rngs::StdRng;

const S3_ENSEMBLES: u64 = 102;
const S3_CLASSES: u64 = 5;
const S4_ENSEMBLES: u64 = 77_952;
const S4_CLASSES: u64 = 152;
const S4_ACYCLIC: u64 = 77_760;

fn cell_words(n: usize, i: u8, j: u8) -> Vec<MarkedPermutation> {
    Permutation::all(n).filter(|w| w.get(j) == i).map(|w| MarkedPermutation::new(w, j).unwrap()).collect()
}

/// All `2^9` forced-entry 3 x 3 tables.
fn all_forced_entry_3x3() -> Vec<EnsembleTable> {
    let domains: Vec<Vec<MarkedPermutation>> =
        (1..=3).flat_map(|i| (1..=3).map(move |j| cell_words(3, i, j))).collect();
    (0..1u32 << 9)
        .map(|mask| {
            let cells: Vec<MarkedPermutation> = (0..9).map(|k| domains[k][(mask >> k) as usize & 1]).collect();
            EnsembleTable::new(cells.chunks(3).map(<[_]>::to_vec).collect()).unwrap()
        })
        .collect()
}

fn full_set(n: usize) -> BTreeSet<EnsembleTable> {
    let (tables, stats) = enumerate_ensembles(n, Delivery::All).unwrap();
    assert_eq!(tables.len() as u64, stats.valid_tables);
    tables.into_iter().map(|(t, _)| t).collect()
}

#[test]
fn s3_search_matches_brute_force_filter() {
    let brute: BTreeSet<EnsembleTable> = all_forced_entry_3x3().into_iter().filter(|t| validate_table(t).is_ensemble()).collect();
    assert_eq!(brute.len() as u64, S3_ENSEMBLES);
    assert_eq!(full_set(3), brute);
}

#[test]
fn s3_compatibility_is_vacuous() {
    for t in all_forced_entry_3x3() {
        let r = validate_table(&t);
        assert!(r.compatibility_ok, "{t}");
        assert_eq!(r.is_ensemble(), r.forced_entry_ok && r.linkage_ok);
    }
}

#[test]
fn s3_table_one_is_visited_and_every_table_repeats() {
    let t1 = EnsembleTable::from_words(
        [["132", "312", "321"], ["231", "321", "312"], ["321", "231", "213"]]
            .iter()
            .map(|r| r.iter().map(|w| w.parse().unwrap()).collect())
            .collect(),
    )
    .unwrap();
    let all = full_set(3);
    assert!(all.contains(&t1));
    assert!(all.iter().all(|t| !repeated_full(t).is_empty()));
    // The tables in the orbit of the identity table are exactly those sharing its canonical form.
    let (canon, orbit) = canonicalize(&t1);
    let in_orbit = all.iter().filter(|t| canonicalize(t).0 == canon).count();
    assert_eq!(in_orbit, orbit);
}

#[test]
fn s3_orbits_of_representatives_cover_the_universe() {
    let (reps, stats) = enumerate_ensembles(3, Delivery::Canonical).unwrap();
    assert_eq!(reps.len() as u64, S3_CLASSES);
    assert_eq!(stats.canonical_classes, S3_CLASSES);
    let mut union = BTreeSet::new();
    for (t, orbit) in &reps {
        assert_eq!(canonicalize(t), (t.clone(), *orbit));
        let images: BTreeSet<EnsembleTable> = RowColAction::all(3).map(|g| t.act(&g).unwrap()).collect();
        assert_eq!(images.len(), *orbit);
        union.extend(images);
    }
    assert_eq!(union, full_set(3));
}

#[test]
fn s4_counts_and_orbit_sum() {
    let e = Enumerator::new(4).unwrap();
    let mut reps = Vec::new();
    let canonical = e.run(Delivery::Canonical, &mut |t, orbit| reps.push((t.clone(), orbit)));
    let mut all = BTreeSet::new();
    let unreduced = e.run(Delivery::All, &mut |t, _| {
        all.insert(t.clone());
    });
    assert_eq!(unreduced.valid_tables, S4_ENSEMBLES);
    assert_eq!(all.len() as u64, S4_ENSEMBLES);
    assert_eq!(canonical.valid_tables, S4_ENSEMBLES);
    assert_eq!(reps.len() as u64, S4_CLASSES);
    assert_eq!(reps.iter().map(|(_, o)| *o as u64).sum::<u64>(), S4_ENSEMBLES);
    assert!(canonical.valid_tables >= canonical.canonical_classes);
    // Every representative belongs to the unreduced set, along with sampled orbit members.
    let mut rng = StdRng::seed_from_u64(7);
    let group: Vec<RowColAction> = RowColAction::all(4).collect();
    for (t, _) in &reps {
        assert!(all.contains(t));
        for _ in 0..8 {
            let g = group.choose(&mut rng).unwrap();
            assert!(all.contains(&t.act(g).unwrap()));
        }
    }
    // Spot-check orbit sizes against the slow canonical form.
    for (t, orbit) in reps.iter().step_by(10) {
        assert_eq!(canonicalize(t), (t.clone(), *orbit));
    }
}

#[test]
fn s4_theorem_report() {
    let r = verify_main_theorem(4).unwrap();
    assert!(r.holds(), "{} violations", r.violations.len());
    assert_eq!(r.total, S4_ENSEMBLES);
    assert_eq!(r.classes, S4_CLASSES);
    assert_eq!(r.acyclic_count, Some(S4_ACYCLIC));
    assert_eq!(r.with_repeat_count, S4_ACYCLIC);
}

#[test]
fn s3_theorem_report() {
    let r = verify_main_theorem(3).unwrap();
    assert!(r.holds());
    assert_eq!(r.total, S3_ENSEMBLES);
    assert_eq!(r.acyclic_count, None);
    assert_eq!(r.with_repeat_count, S3_ENSEMBLES);
}

#[test]
fn enumeration_is_deterministic() {
    let (a, sa) = enumerate_ensembles(4, Delivery::Canonical).unwrap();
    let (b, sb) = enumerate_ensembles(4, Delivery::Canonical).unwrap();
    assert_eq!(a, b);
    assert_eq!(sa, sb);
}

#[test]
fn branches_partition_the_search() {
    let e = Enumerator::new(4).unwrap();
    assert_eq!(e.branch_count(), 6);
    let mut total = EnumerationStats::default();
    for b in 0..e.branch_count() {
        total.merge(&e.run_branch(b, Delivery::All, &mut |_, _| {}));
    }
    assert_eq!(total, e.run(Delivery::All, &mut |_, _| {}));
}

/// Changing one cell of an ensemble gives a table the search accepts exactly
/// when the full validator does.
#[test]
fn registry_agrees_with_validator_on_mutations() {
    let all = full_set(4);
    let tables: Vec<&EnsembleTable> = all.iter().collect();
    let mut rng = StdRng::seed_from_u64(11);
    let (mut accepted, mut rejected) = (0, 0);
    for _ in 0..10_000 {
        let t = tables.choose(&mut rng).unwrap();
        let (i, j) = (rng.gen_range(1..=4u8), rng.gen_range(1..=4u8));
        let replacement = *cell_words(4, i, j).choose(&mut rng).unwrap();
        let mut rows: Vec<Vec<MarkedPermutation>> = t.rows().map(<[_]>::to_vec).collect();
        rows[i as usize - 1][j as usize - 1] = replacement;
        let m = EnsembleTable::new(rows).unwrap();
        let valid = validate_table(&m).is_ensemble();
        assert_eq!(valid, all.contains(&m), "{m}");
        if valid {
            accepted += 1;
        } else {
            rejected += 1;
        }
    }
    assert!(accepted > 0 && rejected > 0);
}

#[test]
fn every_enumerated_table_validates_and_word_repeats_at_most_once_per_line() {
    for t in full_set(4) {
        assert!(validate_table(&t).is_ensemble());
        for k in 1..=4u8 {
            let row: BTreeSet<_> = (1..=4).map(|c| *t.word(k, c)).collect();
            let col: BTreeSet<_> = (1..=4).map(|r| *t.word(r, k)).collect();
            assert_eq!((row.len(), col.len()), (4, 4));
        }
    }
}

#[test]
fn completions_extend_their_partial_table() {
    let e = Enumerator::new(4).unwrap();
    let mut p = PartialTable::empty(4);
    p.set("[1]234".parse().unwrap()).unwrap();
    p.set("123[4]".parse().unwrap()).unwrap();
    let mut found = Vec::new();
    e.run_completions(&p, &mut |t, _| found.push(t.clone())).unwrap();
    let expected: Vec<EnsembleTable> = full_set(4).into_iter().filter(|t| p.is_extended_by(t)).collect();
    assert_eq!(found.len(), expected.len());
    assert_eq!(found.into_iter().collect::<BTreeSet<_>>(), expected.into_iter().collect());
    assert!(e.run_completions(&PartialTable::empty(3), &mut |_, _| {}).is_err());
}

#[test]
fn structure_lemmas_hold() {
    let r = verify_structure_lemmas();
    assert!(r.holds());
    assert_eq!(r.acyclic_total, S4_ACYCLIC);
    assert_eq!((r.square.acyclic_count, r.square.acyclic_classes), (75_384, 146));
    assert_eq!((r.rectangle.acyclic_count, r.rectangle.acyclic_classes), (77_760, 151));
    assert_eq!((r.halfsquare.acyclic_count, r.halfsquare.acyclic_classes), (77_760, 151));
    assert_eq!((r.triple_repeat.acyclic_count, r.triple_repeat.acyclic_classes), (77_760, 151));
}
