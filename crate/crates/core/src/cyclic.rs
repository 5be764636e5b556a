//! 33-cyclic patterns and acyclicity of `S_4`-ensembles.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::ensemble::EnsembleTable;
use crate::error::{Error, Result};
use crate::perm::{MarkedPermutation, Permutation};

/// `(w, v) ∈ S_4 × S_4` naming one 33-cyclic pattern.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CyclicPatternIndex {
    pub word: Permutation,
    pub order: Permutation,
}

/// Three marked permutations forming a 33-cyclic pattern, with every index
/// that generates them.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PatternTriple {
    /// Sorted.
    pub members: [MarkedPermutation; 3],
    /// Sorted.
    pub indices: Vec<CyclicPatternIndex>,
}

/// `w^(i)` for `i = 1, 2, 3`: `w` with the entries at positions `v_i` and
/// `v_4` exchanged, underlined at `v_{i+1}` (cyclically within 1..=3).
pub fn pattern_members(idx: &CyclicPatternIndex) -> Result<[MarkedPermutation; 3]> {
    let (w, v) = (idx.word, idx.order);
    if w.len() != 4 || v.len() != 4 {
        return Err(Error::UnsupportedSize(if w.len() != 4 { w.len() } else { v.len() }));
    }
    let member = |i: u8| {
        let next = if i == 3 { 1 } else { i + 1 };
        MarkedPermutation::new(w.swap(v.get(i), v.get(4)), v.get(next)).expect("mark in range")
    };
    Ok([member(1), member(2), member(3)])
}

/// The triple generated by a single index.
pub fn generate_33(idx: &CyclicPatternIndex) -> Result<PatternTriple> {
    let mut members = pattern_members(idx)?;
    members.sort();
    Ok(PatternTriple { members, indices: alloc::vec![*idx] })
}

/// Every distinct 33-cyclic pattern over `S_4`, generated once.
#[derive(Clone, Debug)]
pub struct CyclicPatternCatalog {
    triples: Vec<PatternTriple>,
}

impl CyclicPatternCatalog {
    /// Runs all 576 indices and merges triples with equal member sets.
    pub fn new() -> Self {
        let mut by_members: BTreeMap<[MarkedPermutation; 3], Vec<CyclicPatternIndex>> = BTreeMap::new();
        for word in Permutation::all(4) {
            for order in Permutation::all(4) {
                let idx = CyclicPatternIndex { word, order };
                let t = generate_33(&idx).expect("size 4");
                by_members.entry(t.members).or_default().push(idx);
            }
        }
        let triples = by_members
            .into_iter()
            .map(|(members, mut indices)| {
                indices.sort();
                PatternTriple { members, indices }
            })
            .collect();
        CyclicPatternCatalog { triples }
    }

    pub fn triples(&self) -> &[PatternTriple] {
        &self.triples
    }

    /// Triples all of whose members are entries of `t`.
    pub fn detect(&self, t: &EnsembleTable) -> Result<Vec<PatternTriple>> {
        if t.n() != 4 {
            return Err(Error::UnsupportedSize(t.n()));
        }
        Ok(self.triples.iter().filter(|p| p.members.iter().all(|m| t.contains(m))).cloned().collect())
    }

    pub fn is_acyclic(&self, t: &EnsembleTable) -> Result<bool> {
        if t.n() != 4 {
            return Err(Error::UnsupportedSize(t.n()));
        }
        Ok(!self.triples.iter().any(|p| p.members.iter().all(|m| t.contains(m))))
    }
}

impl Default for CyclicPatternCatalog {
    fn default() -> Self {
        Self::new()
    }
}

/// Every 33-cyclic pattern contained in the `S_4` table `t`.
pub fn detect_33(t: &EnsembleTable) -> Result<Vec<PatternTriple>> {
    CyclicPatternCatalog::new().detect(t)
}
