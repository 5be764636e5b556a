//! Exhaustive enumeration of `S_3`- and `S_4`-ensembles.
//!
//! Cells are filled row-major. Each cell ranges over the `(n-1)!` words
//! satisfying forced entry. A shared registry of 2-submatchings rejects
//! compatibility conflicts on placement; for `n ≤ 4` no other submatching
//! size can conflict. Row linkage is checked as each row completes and
//! column linkage as each column completes in the last row.
//!
//! The search splits into independent branches, one per candidate of the
//! first open cell, so callers can run branches in parallel and merge the
//! results in branch order.

use alloc::vec;
use alloc::vec::Vec;

use crate::ensemble::{EnsembleTable, PartialTable};
use crate::error::{Error, Result};
use crate::perm::{MarkedPermutation, Permutation, RowColAction};

const MAX_CELLS: usize = 16;
const MAX_SLOTS: usize = 36;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct EnumerationStats {
    /// Successful placements, i.e. search-tree nodes below the root.
    pub nodes_visited: u64,
    pub pruned_by_compatibility: u64,
    pub pruned_by_linkage: u64,
    /// Every valid table reached, whether or not it was delivered.
    pub valid_tables: u64,
    /// Valid tables equal to their own canonical form.
    pub canonical_classes: u64,
}

impl EnumerationStats {
    pub fn merge(&mut self, other: &EnumerationStats) {
        self.nodes_visited += other.nodes_visited;
        self.pruned_by_compatibility += other.pruned_by_compatibility;
        self.pruned_by_linkage += other.pruned_by_linkage;
        self.valid_tables += other.valid_tables;
        self.canonical_classes += other.canonical_classes;
    }
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    word: u8,
    slot_count: u8,
    // (registry slot, orientation bit)
    slots: [(u8, u8); 3],
}

/// Precomputed search data for one `n`.
#[derive(Clone, Debug)]
pub struct Enumerator {
    n: usize,
    words: Vec<Permutation>,
    linked: Vec<bool>,
    domains: Vec<Vec<Candidate>>,
    // Per action: inverse row and column permutations (0-based) and the word map.
    actions: Vec<([u8; 4], [u8; 4], Vec<u8>)>,
}

fn pair_index(n: usize, p: usize, q: usize) -> usize {
    let (p, q) = if p < q { (p, q) } else { (q, p) };
    // Pairs of 0..n in lexicographic order.
    p * n - p * (p + 1) / 2 + (q - p - 1)
}

/// What the search does with each valid table it reaches.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Delivery {
    /// Every valid table.
    All,
    /// Only tables equal to their canonical form under the row/column action.
    Canonical,
}

impl Enumerator {
    /// Search data for `n ∈ {3, 4}`.
    pub fn new(n: usize) -> Result<Self> {
        if !(3..=4).contains(&n) {
            return Err(Error::UnsupportedSize(n));
        }
        let words: Vec<Permutation> = Permutation::all(n).collect();
        let k = words.len();
        let mut linked = vec![false; k * k];
        for (a, u) in words.iter().enumerate() {
            for (b, w) in words.iter().enumerate() {
                linked[a * k + b] = u.hamming(w).expect("same size") == 2;
            }
        }
        let pairs = n * (n - 1) / 2;
        let mut domains = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut dom = Vec::new();
                for (idx, w) in words.iter().enumerate() {
                    let w = w.as_slice();
                    if w[j] as usize != i + 1 {
                        continue;
                    }
                    let mut c = Candidate { word: idx as u8, slot_count: 0, slots: [(0, 0); 3] };
                    for p in (0..n).filter(|&p| p != j) {
                        for q in (p + 1..n).filter(|&q| q != j) {
                            let (a, b) = (w[p] as usize - 1, w[q] as usize - 1);
                            let slot = pair_index(n, p, q) * pairs + pair_index(n, a, b);
                            c.slots[c.slot_count as usize] = (slot as u8, u8::from(a < b));
                            c.slot_count += 1;
                        }
                    }
                    dom.push(c);
                }
                domains.push(dom);
            }
        }
        let mut actions = Vec::new();
        for g in RowColAction::all(n) {
            let mut rinv = [0u8; 4];
            let mut cinv = [0u8; 4];
            for x in 0..n {
                rinv[g.rows.get(x as u8 + 1) as usize - 1] = x as u8;
                cinv[g.cols.get(x as u8 + 1) as usize - 1] = x as u8;
            }
            let map = words.iter().map(|w| g.apply_perm(w).expect("same size").rank() as u8).collect();
            actions.push((rinv, cinv, map));
        }
        Ok(Enumerator { n, words, linked, domains, actions })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of independent branches of the unconstrained search.
    pub fn branch_count(&self) -> usize {
        self.domains[0].len()
    }

    /// Runs the whole search sequentially.
    pub fn run(&self, delivery: Delivery, visit: &mut dyn FnMut(&EnsembleTable, usize)) -> EnumerationStats {
        let mut stats = EnumerationStats::default();
        for b in 0..self.branch_count() {
            stats.merge(&self.run_branch(b, delivery, visit));
        }
        stats
    }

    /// Runs the subtree where cell `(1,1)` takes its `branch`-th candidate.
    /// `visit` receives each delivered table with its orbit size.
    pub fn run_branch(&self, branch: usize, delivery: Delivery, visit: &mut dyn FnMut(&EnsembleTable, usize)) -> EnumerationStats {
        let mut domains: Vec<&[Candidate]> = self.domains.iter().map(Vec::as_slice).collect();
        domains[0] = core::slice::from_ref(&self.domains[0][branch]);
        self.search(&domains, delivery, visit)
    }

    /// Every ensemble extending `partial`, each delivered with its orbit size.
    pub fn run_completions(&self, partial: &PartialTable, visit: &mut dyn FnMut(&EnsembleTable, usize)) -> Result<EnumerationStats> {
        if partial.n() != self.n {
            return Err(Error::SizeMismatch { left: self.n, right: partial.n() });
        }
        let mut domains: Vec<&[Candidate]> = Vec::with_capacity(self.n * self.n);
        for (k, fixed) in partial.cells().iter().enumerate() {
            let dom = &self.domains[k];
            match fixed {
                None => domains.push(dom),
                Some(mp) => {
                    let rank = mp.perm().rank() as u8;
                    let pos = dom.iter().position(|c| c.word == rank).expect("forced entry holds");
                    domains.push(core::slice::from_ref(&dom[pos]));
                }
            }
        }
        Ok(self.search(&domains, Delivery::All, visit))
    }

    fn search(&self, domains: &[&[Candidate]], delivery: Delivery, visit: &mut dyn FnMut(&EnsembleTable, usize)) -> EnumerationStats {
        let mut state = Search {
            e: self,
            domains,
            delivery,
            table: [0; MAX_CELLS],
            orient: [0; MAX_SLOTS],
            refs: [0; MAX_SLOTS],
            stats: EnumerationStats::default(),
            visit,
        };
        state.dfs(0);
        state.stats
    }

    fn is_linked(&self, a: u8, b: u8) -> bool {
        self.linked[a as usize * self.words.len() + b as usize]
    }

    /// Whether every cell in the given cells has a linked partner among them.
    fn line_linked(&self, table: &[u8], cells: impl Iterator<Item = usize> + Clone) -> bool {
        cells.clone().all(|a| cells.clone().any(|b| a != b && self.is_linked(table[a], table[b])))
    }

    /// `Some(orbit size)` if `table` is the least image in its orbit.
    fn canonical_orbit(&self, table: &[u8]) -> Option<usize> {
        let n = self.n;
        let cells = n * n;
        let mut stabilizer = 0;
        for (rinv, cinv, map) in &self.actions {
            let mut ord = core::cmp::Ordering::Equal;
            for k in 0..cells {
                let (r, c) = (k / n, k % n);
                let src = rinv[r] as usize * n + cinv[c] as usize;
                ord = map[table[src] as usize].cmp(&table[k]);
                if ord != core::cmp::Ordering::Equal {
                    break;
                }
            }
            match ord {
                core::cmp::Ordering::Less => return None,
                core::cmp::Ordering::Equal => stabilizer += 1,
                core::cmp::Ordering::Greater => {}
            }
        }
        Some(self.actions.len() / stabilizer)
    }

    fn materialize(&self, table: &[u8]) -> EnsembleTable {
        let n = self.n;
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| MarkedPermutation::new(self.words[table[i * n + j] as usize], j as u8 + 1).expect("mark in range"))
                    .collect()
            })
            .collect();
        EnsembleTable::new(rows).expect("forced entry holds by construction")
    }
}

struct Search<'a, 'v> {
    e: &'a Enumerator,
    domains: &'a [&'a [Candidate]],
    delivery: Delivery,
    table: [u8; MAX_CELLS],
    orient: [u8; MAX_SLOTS],
    refs: [u8; MAX_SLOTS],
    stats: EnumerationStats,
    visit: &'v mut dyn FnMut(&EnsembleTable, usize),
}

impl Search<'_, '_> {
    fn dfs(&mut self, cell: usize) {
        let n = self.e.n;
        if cell == n * n {
            self.leaf();
            return;
        }
        let (row, col) = (cell / n, cell % n);
        for cand in self.domains[cell] {
            let slots = &cand.slots[..cand.slot_count as usize];
            if slots.iter().any(|&(s, o)| self.refs[s as usize] > 0 && self.orient[s as usize] != o) {
                self.stats.pruned_by_compatibility += 1;
                continue;
            }
            self.table[cell] = cand.word;
            let row_ok = col != n - 1 || self.e.line_linked(&self.table, (row * n)..(row * n + n));
            let col_ok = row != n - 1 || self.e.line_linked(&self.table, (0..n).map(|r| r * n + col));
            if !(row_ok && col_ok) {
                self.stats.pruned_by_linkage += 1;
                continue;
            }
            self.stats.nodes_visited += 1;
            for &(s, o) in slots {
                self.orient[s as usize] = o;
                self.refs[s as usize] += 1;
            }
            self.dfs(cell + 1);
            for &(s, _) in slots {
                self.refs[s as usize] -= 1;
            }
        }
    }

    fn leaf(&mut self) {
        self.stats.valid_tables += 1;
        let cells = &self.table[..self.e.n * self.e.n];
        let canonical = self.e.canonical_orbit(cells);
        if canonical.is_some() {
            self.stats.canonical_classes += 1;
        }
        let deliver = match self.delivery {
            Delivery::All => true,
            Delivery::Canonical => canonical.is_some(),
        };
        if deliver {
            let orbit = match canonical {
                Some(orbit) => orbit,
                None => orbit_size(self.e, cells),
            };
            let t = self.e.materialize(cells);
            (self.visit)(&t, orbit);
        }
    }
}

fn orbit_size(e: &Enumerator, table: &[u8]) -> usize {
    let n = e.n;
    let stabilizer = e
        .actions
        .iter()
        .filter(|(rinv, cinv, map)| (0..n * n).all(|k| map[table[rinv[k / n] as usize * n + cinv[k % n] as usize] as usize] == table[k]))
        .count();
    e.actions.len() / stabilizer
}

/// Collects every valid table, sequentially.
pub fn enumerate_ensembles(n: usize, delivery: Delivery) -> Result<(Vec<(EnsembleTable, usize)>, EnumerationStats)> {
    let e = Enumerator::new(n)?;
    let mut out = Vec::new();
    let stats = e.run(delivery, &mut |t, orbit| out.push((t.clone(), orbit)));
    Ok((out, stats))
}
