//! Systems of permutations on the edges of `Δ_{d-1}`: edge orientations,
//! acyclicity, candidate tables and the boundary completion solver.
//!
//! Edge words are stored as read from the lower vertex toward the higher
//! one; reading an edge backwards reverses its word. A 2-matching
//! `{x ↦ a, y ↦ b}` is admitted by the boundary exactly when `b` is read
//! before `a` going from `x` to `y`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::cyclic::{CyclicPatternCatalog, PatternTriple};
use crate::ensemble::{repeated_full, validate_table, EnsembleTable, LinkageFailure};
use crate::error::{Error, Result};
use crate::matching::{validate_matching_collection, Matching, MatchingCollection};
use crate::perm::{MarkedPermutation, Permutation, MAX_N};

fn reversed(w: &Permutation) -> Permutation {
    let mut word: Vec<u8> = w.as_slice().to_vec();
    word.reverse();
    Permutation::new(&word).expect("reversal of a permutation")
}

/// One permutation of `[n]` per edge of `Δ_{d-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PermutationSystem {
    n: usize,
    d: usize,
    words: BTreeMap<(u8, u8), Permutation>,
}

impl PermutationSystem {
    /// Takes `(x, y, word)` triples with `word` read from `x` toward `y`.
    /// Every edge of `Δ_{d-1}` must appear exactly once, in either direction.
    pub fn new(d: usize, edges: impl IntoIterator<Item = (u8, u8, Permutation)>) -> Result<Self> {
        if !(2..=MAX_N).contains(&d) {
            return Err(Error::UnsupportedSize(d));
        }
        let mut words = BTreeMap::new();
        let mut n = None;
        for (x, y, w) in edges {
            if x == y || x == 0 || y == 0 || x as usize > d || y as usize > d {
                return Err(Error::InvalidSystem(format!("edge {x} {y} is not an edge of a simplex on {d} vertices")));
            }
            if *n.get_or_insert(w.len()) != w.len() {
                return Err(Error::InvalidSystem(format!("edge {x} {y} carries a word of size {}", w.len())));
            }
            let (key, w) = if x < y { ((x, y), w) } else { ((y, x), reversed(&w)) };
            if words.insert(key, w).is_some() {
                return Err(Error::InvalidSystem(format!("edge {} {} given twice", key.0, key.1)));
            }
        }
        let expected = d * (d - 1) / 2;
        if words.len() != expected {
            return Err(Error::InvalidSystem(format!("{} of {expected} edges given", words.len())));
        }
        Ok(PermutationSystem { n: n.unwrap_or(0), d, words })
    }

    /// Words listed in lexicographic edge order `12, 13, ..., 1d, 23, ...`.
    pub fn from_edge_words(d: usize, words: &[Permutation]) -> Result<Self> {
        let edges: Vec<(u8, u8)> = (1..=d as u8).flat_map(|x| (x + 1..=d as u8).map(move |y| (x, y))).collect();
        if words.len() != edges.len() {
            return Err(Error::InvalidSystem(format!("expected {} words, got {}", edges.len(), words.len())));
        }
        PermutationSystem::new(d, edges.into_iter().zip(words).map(|((x, y), w)| (x, y, *w)))
    }

    /// Label count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Vertex count.
    pub fn d(&self) -> usize {
        self.d
    }

    /// The word read from `x` toward `y`.
    pub fn word(&self, x: u8, y: u8) -> Permutation {
        if x < y {
            self.words[&(x, y)]
        } else {
            reversed(&self.words[&(y, x)])
        }
    }

    /// Stored `(x, y, word)` with `x < y`, in lexicographic edge order.
    pub fn edges(&self) -> impl Iterator<Item = (u8, u8, Permutation)> + '_ {
        self.words.iter().map(|(&(x, y), &w)| (x, y, w))
    }
}

/// An edge `(x, y)` with `x < y` together with a label pair `(a, b)` with `a < b`.
type EdgeLabels = ((u8, u8), (u8, u8));

/// For each edge `{x < y}` and labels `a < b`, which label is read first
/// going from `x` to `y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrientationRegistry {
    n: usize,
    d: usize,
    first: BTreeMap<EdgeLabels, u8>,
}

impl OrientationRegistry {
    /// `a` or `b`, whichever comes first on the edge read from `x` to `y`.
    pub fn first(&self, x: u8, y: u8, a: u8, b: u8) -> u8 {
        let key = ((x.min(y), x.max(y)), (a.min(b), a.max(b)));
        let first = self.first[&key];
        if x < y {
            first
        } else if first == a {
            b
        } else {
            a
        }
    }

    /// Whether the mapping `{x ↦ a, y ↦ b}` (`x ≠ y`, `a ≠ b`) is admitted.
    pub fn admits(&self, x: u8, a: u8, y: u8, b: u8) -> bool {
        self.first(x, y, a, b) == b
    }

    /// The admitted 2-matchings, one per pair of vertex and label pairs.
    pub fn two_matchings(&self) -> impl Iterator<Item = Matching> + '_ {
        self.first.iter().map(|(&((x, y), (a, b)), _)| {
            let m = if self.admits(x, a, y, b) { [(x, a), (y, b)] } else { [(x, b), (y, a)] };
            Matching::new(m).expect("distinct endpoints")
        })
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.n, self.d)
    }
}

pub fn derive_orientations(s: &PermutationSystem) -> OrientationRegistry {
    let mut first = BTreeMap::new();
    for (x, y, w) in s.edges() {
        for a in 1..=s.n() as u8 {
            for b in a + 1..=s.n() as u8 {
                let f = if w.position_of(a) < w.position_of(b) { a } else { b };
                first.insert(((x, y), (a, b)), f);
            }
        }
    }
    OrientationRegistry { n: s.n(), d: s.d(), first }
}

/// How [`system_acyclic`] decides.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum AcyclicityMethod {
    /// Scan every triangle for a label pair read in the same order on all
    /// three edges around it.
    Direct,
    /// Right linkage of the 2-matchings the system admits.
    Linkage,
}

/// A label pair read as `first … second` on all three edges of the
/// triangle `x → y → z → x`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CyclicWitness {
    pub vertices: (u8, u8, u8),
    pub first: u8,
    pub second: u8,
}

/// Every cyclic label pair, scanning each triangle `x < y < z` in the
/// orientation `x → y → z → x`. A pair cyclic in one orientation is cyclic
/// (with its order flipped) in the other, so one orientation suffices.
pub fn cyclic_witnesses(s: &PermutationSystem) -> Vec<CyclicWitness> {
    let d = s.d() as u8;
    let mut out = Vec::new();
    for x in 1..=d {
        for y in x + 1..=d {
            for z in y + 1..=d {
                let words = [s.word(x, y), s.word(y, z), s.word(z, x)];
                for a in 1..=s.n() as u8 {
                    for b in a + 1..=s.n() as u8 {
                        let orders = words.map(|w| w.position_of(a) < w.position_of(b));
                        if orders[0] == orders[1] && orders[1] == orders[2] {
                            let (first, second) = if orders[0] { (a, b) } else { (b, a) };
                            out.push(CyclicWitness { vertices: (x, y, z), first, second });
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn system_acyclic(s: &PermutationSystem, method: AcyclicityMethod) -> Result<bool> {
    if s.d() < 3 {
        return Err(Error::UnsupportedSize(s.d()));
    }
    Ok(match method {
        AcyclicityMethod::Direct => cyclic_witnesses(s).is_empty(),
        AcyclicityMethod::Linkage => {
            let registry = derive_orientations(s);
            let mut c = MatchingCollection::new(s.n(), s.d());
            for v in 1..=s.d() as u8 {
                for l in 1..=s.n() as u8 {
                    c.insert(Matching::new([(v, l)])?)?;
                }
            }
            for m in registry.two_matchings() {
                c.insert(m)?;
            }
            validate_matching_collection(&c).right_linkage_ok
        }
    })
}

/// Per-cell sets of marked permutations compatible with a boundary.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CandidateTable {
    n: usize,
    // Row-major; each cell sorted.
    cells: Vec<Vec<MarkedPermutation>>,
}

impl CandidateTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cell(&self, row: u8, col: u8) -> &[MarkedPermutation] {
        &self.cells[(row as usize - 1) * self.n + col as usize - 1]
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[Vec<MarkedPermutation>] {
        &self.cells
    }

    pub fn empty_cells(&self) -> Vec<(u8, u8)> {
        self.positions().filter(|&(i, j)| self.cell(i, j).is_empty()).collect()
    }

    /// Cells with more than one candidate.
    pub fn open_cells(&self) -> Vec<(u8, u8)> {
        self.positions().filter(|&(i, j)| self.cell(i, j).len() > 1).collect()
    }

    fn positions(&self) -> impl Iterator<Item = (u8, u8)> {
        let n = self.n as u8;
        (1..=n).flat_map(move |i| (1..=n).map(move |j| (i, j)))
    }

    /// Number of full selections, saturating.
    pub fn selection_count(&self) -> u64 {
        self.cells.iter().fold(1u64, |acc, c| acc.saturating_mul(c.len() as u64))
    }
}

/// Cell `(i, j)` receives every word with value `i` at position `j` whose
/// 2-submatchings away from `j` are all admitted by the boundary. Here a
/// word matches each position, read as a label, to its value, read as a
/// vertex of the simplex.
pub fn candidate_table(s: &PermutationSystem) -> Result<CandidateTable> {
    if s.n() != s.d() {
        return Err(Error::InvalidSystem(format!("candidate tables need n = d, got n = {} and d = {}", s.n(), s.d())));
    }
    let n = s.n();
    let registry = derive_orientations(s);
    let words: Vec<Permutation> = Permutation::all(n).collect();
    let mut cells = Vec::with_capacity(n * n);
    for i in 1..=n as u8 {
        for j in 1..=n as u8 {
            let cell = words
                .iter()
                .filter(|w| w.get(j) == i)
                .filter(|w| {
                    (1..=n as u8).filter(|&p| p != j).all(|p| {
                        (p + 1..=n as u8).filter(|&q| q != j).all(|q| registry.admits(w.get(p), p, w.get(q), q))
                    })
                })
                .map(|w| MarkedPermutation::new(*w, j).expect("mark in range"))
                .collect();
            cells.push(cell);
        }
    }
    Ok(CandidateTable { n, cells })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CompletionStatus {
    Completable,
    InfeasibleLinkage,
    InfeasibleEmptyCell,
}

/// A selection passing every `S_n`-ensemble axiom.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Completion {
    pub table: EnsembleTable,
    /// Words appearing in every row and column.
    pub repeated: Vec<Permutation>,
    /// 33-cyclic patterns (only computed for `n = 4`).
    pub cyclic_patterns: Vec<PatternTriple>,
}

impl Completion {
    pub fn is_acyclic(&self) -> bool {
        self.cyclic_patterns.is_empty()
    }
}

/// A selection rejected by validation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RejectedSelection {
    pub table: EnsembleTable,
    pub linkage_failures: Vec<LinkageFailure>,
}

/// At most this many rejected selections are kept verbatim.
pub const MAX_REPORTED_REJECTIONS: usize = 64;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompletionResult {
    pub candidates: CandidateTable,
    pub status: CompletionStatus,
    pub solutions: Vec<Completion>,
    pub rejected: Vec<RejectedSelection>,
    /// Total number of rejected selections, including unreported ones.
    pub rejected_count: u64,
}

/// Tries every selection of one candidate per cell.
///
/// For `n = 4` each solution also carries its 33-cyclic patterns; an acyclic
/// solution always has a word repeated in every row and column.
pub fn complete_boundary(s: &PermutationSystem) -> Result<CompletionResult> {
    let candidates = candidate_table(s)?;
    let n = candidates.n();
    if !candidates.empty_cells().is_empty() {
        return Ok(CompletionResult {
            candidates,
            status: CompletionStatus::InfeasibleEmptyCell,
            solutions: Vec::new(),
            rejected: Vec::new(),
            rejected_count: 0,
        });
    }
    let catalog = (n == 4).then(CyclicPatternCatalog::new);
    let mut solutions = Vec::new();
    let mut rejected = Vec::new();
    let mut rejected_count = 0u64;
    let mut choice = alloc::vec![0usize; n * n];
    loop {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| candidates.cells[i * n + j][choice[i * n + j]]).collect())
            .collect();
        let table = EnsembleTable::new(rows)?;
        let report = validate_table(&table);
        if report.is_ensemble() {
            let cyclic_patterns = match &catalog {
                Some(c) => c.detect(&table)?,
                None => Vec::new(),
            };
            let repeated = repeated_full(&table);
            debug_assert!(!cyclic_patterns.is_empty() || !repeated.is_empty() || n > 4);
            solutions.push(Completion { table, repeated, cyclic_patterns });
        } else {
            rejected_count += 1;
            if rejected.len() < MAX_REPORTED_REJECTIONS {
                rejected.push(RejectedSelection { table, linkage_failures: report.linkage_failures });
            }
        }
        // Odometer over the candidate lists, last cell fastest.
        let mut k = n * n;
        loop {
            if k == 0 {
                let status = if solutions.is_empty() { CompletionStatus::InfeasibleLinkage } else { CompletionStatus::Completable };
                return Ok(CompletionResult { candidates, status, solutions, rejected, rejected_count });
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < candidates.cells[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}
