//! `n × n` tables of marked permutations: `S_n`-ensemble validation,
//! repeated words, the 22-structures and canonical forms under the
//! row/column action.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::perm::{linked, IndexSet, MarkedPermutation, Permutation, RowColAction, MAX_N};

/// 1-based `(row, column)` coordinates.
pub type Cell = (u8, u8);

fn check_forced_entry(n: usize, row: usize, col: usize, mp: &MarkedPermutation) -> Result<()> {
    if mp.len() != n {
        return Err(Error::SizeMismatch { left: n, right: mp.len() });
    }
    if mp.cell() != (row as u8, col as u8) {
        return Err(Error::ForcedEntry { row, col, token: mp.to_string() });
    }
    Ok(())
}

/// An `n × n` grid whose cell `(i, j)` holds a word with value `i` at
/// position `j`, underlined there.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnsembleTable {
    n: usize,
    // Row-major.
    cells: Vec<MarkedPermutation>,
}

impl EnsembleTable {
    /// Builds a table from rows of marked permutations, enforcing forced entry.
    pub fn new(rows: Vec<Vec<MarkedPermutation>>) -> Result<Self> {
        let n = rows.len();
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::UnsupportedSize(n));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch { left: n, right: row.len() });
            }
            for (j, mp) in row.into_iter().enumerate() {
                check_forced_entry(n, i + 1, j + 1, &mp)?;
                cells.push(mp);
            }
        }
        Ok(EnsembleTable { n, cells })
    }

    /// Builds a table from bare words; cell `(i, j)` is marked at `j`.
    pub fn from_words(rows: Vec<Vec<Permutation>>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .map(|row| row.into_iter().enumerate().map(|(j, w)| MarkedPermutation::new(w, j as u8 + 1)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        EnsembleTable::new(rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The entry at 1-based `(row, col)`.
    pub fn cell(&self, row: u8, col: u8) -> &MarkedPermutation {
        &self.cells[(row as usize - 1) * self.n + col as usize - 1]
    }

    pub fn word(&self, row: u8, col: u8) -> &Permutation {
        self.cell(row, col).perm()
    }

    /// Row-major entries.
    pub fn cells(&self) -> &[MarkedPermutation] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[MarkedPermutation]> {
        self.cells.chunks(self.n)
    }

    /// Whether `mp` sits in this table (at its forced cell).
    pub fn contains(&self, mp: &MarkedPermutation) -> bool {
        let (i, j) = mp.cell();
        mp.len() == self.n && self.cell(i, j) == mp
    }

    /// The image under `g`: entry `(i, j)` moves to `(ρ(i), σ(j))`.
    pub fn act(&self, g: &RowColAction) -> Result<EnsembleTable> {
        if g.len() != self.n {
            return Err(Error::SizeMismatch { left: self.n, right: g.len() });
        }
        let mut cells = self.cells.clone();
        for mp in &self.cells {
            let image = g.apply(mp)?;
            let (i, j) = image.cell();
            cells[(i as usize - 1) * self.n + j as usize - 1] = image;
        }
        Ok(EnsembleTable { n: self.n, cells })
    }

    /// Number of cells holding each word.
    pub fn multiplicities(&self) -> BTreeMap<Permutation, usize> {
        let mut counts = BTreeMap::new();
        for mp in &self.cells {
            *counts.entry(*mp.perm()).or_insert(0) += 1;
        }
        counts
    }
}

impl fmt::Display for EnsembleTable {
    /// One line per row, entries separated by a space.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            for (k, mp) in row.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{mp}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

impl fmt::Debug for EnsembleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EnsembleTable(")?;
        for (k, row) in self.rows().enumerate() {
            if k > 0 {
                f.write_str(" / ")?;
            }
            for (c, mp) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{mp}")?;
            }
        }
        write!(f, ")")
    }
}

/// A table with some cells left open.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PartialTable {
    n: usize,
    cells: Vec<Option<MarkedPermutation>>,
}

impl PartialTable {
    pub fn new(rows: Vec<Vec<Option<MarkedPermutation>>>) -> Result<Self> {
        let n = rows.len();
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::UnsupportedSize(n));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch { left: n, right: row.len() });
            }
            for (j, mp) in row.into_iter().enumerate() {
                if let Some(mp) = &mp {
                    check_forced_entry(n, i + 1, j + 1, mp)?;
                }
                cells.push(mp);
            }
        }
        Ok(PartialTable { n, cells })
    }

    pub fn empty(n: usize) -> Self {
        PartialTable { n, cells: alloc::vec![None; n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cell(&self, row: u8, col: u8) -> Option<&MarkedPermutation> {
        self.cells[(row as usize - 1) * self.n + col as usize - 1].as_ref()
    }

    /// Places `mp` at its forced cell.
    pub fn set(&mut self, mp: MarkedPermutation) -> Result<()> {
        if mp.len() != self.n {
            return Err(Error::SizeMismatch { left: self.n, right: mp.len() });
        }
        let (i, j) = mp.cell();
        self.cells[(i as usize - 1) * self.n + j as usize - 1] = Some(mp);
        Ok(())
    }

    /// Row-major entries.
    pub fn cells(&self) -> &[Option<MarkedPermutation>] {
        &self.cells
    }

    pub fn fixed(&self) -> impl Iterator<Item = &MarkedPermutation> {
        self.cells.iter().flatten()
    }

    /// Whether every fixed entry of `self` appears in `t`.
    pub fn is_extended_by(&self, t: &EnsembleTable) -> bool {
        t.n() == self.n && self.fixed().all(|mp| t.contains(mp))
    }

    pub fn complete(&self) -> Option<EnsembleTable> {
        let cells: Option<Vec<_>> = self.cells.iter().copied().collect();
        Some(EnsembleTable { n: self.n, cells: cells? })
    }
}

impl From<&EnsembleTable> for PartialTable {
    fn from(t: &EnsembleTable) -> Self {
        PartialTable { n: t.n, cells: t.cells.iter().copied().map(Some).collect() }
    }
}

/// Which neighbours a linkage failure concerns.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Axis {
    Row,
    Column,
}

/// Cell with no linked entry along `axis`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct LinkageFailure {
    pub cell: Cell,
    pub axis: Axis,
}

/// Two cells inducing different matchings between the same position set
/// and value set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CompatibilityConflict {
    pub positions: IndexSet,
    pub values: IndexSet,
    pub first: Cell,
    pub second: Cell,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ValidationReport {
    pub forced_entry_ok: bool,
    pub linkage_ok: bool,
    pub compatibility_ok: bool,
    pub linkage_failures: Vec<LinkageFailure>,
    pub compatibility_conflicts: Vec<CompatibilityConflict>,
}

impl ValidationReport {
    /// All three axioms hold.
    pub fn is_ensemble(&self) -> bool {
        self.forced_entry_ok && self.linkage_ok && self.compatibility_ok
    }
}

/// Cells of `t` along `axis` of `cell` whose words are linked to it.
fn has_link(t: &EnsembleTable, (i, j): Cell, axis: Axis) -> bool {
    let w = t.word(i, j);
    (1..=t.n() as u8).any(|k| {
        let other = match axis {
            Axis::Row if k != j => t.word(i, k),
            Axis::Column if k != i => t.word(k, j),
            _ => return false,
        };
        linked(w, other).expect("same size")
    })
}

/// Checks forced entry, linkage along rows and columns, and compatibility of
/// every induced submatching.
pub fn validate_table(t: &EnsembleTable) -> ValidationReport {
    let n = t.n() as u8;
    let mut report = ValidationReport { forced_entry_ok: true, ..Default::default() };

    for i in 1..=n {
        for j in 1..=n {
            if t.cell(i, j).cell() != (i, j) {
                report.forced_entry_ok = false;
            }
            for axis in [Axis::Row, Axis::Column] {
                if !has_link(t, (i, j), axis) {
                    report.linkage_failures.push(LinkageFailure { cell: (i, j), axis });
                }
            }
        }
    }

    // (positions, values) -> (first cell, its restricted word as a mask-indexed map)
    let mut registry: BTreeMap<(IndexSet, IndexSet), (Cell, [u8; MAX_N])> = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            let mp = t.cell(i, j);
            let w = mp.perm();
            for positions in mp.free_positions().subsets().filter(|s| !s.is_empty()) {
                let values: IndexSet = positions.iter().map(|p| w.get(p)).collect();
                let mut image = [0u8; MAX_N];
                for p in positions.iter() {
                    image[p as usize - 1] = w.get(p);
                }
                match registry.get(&(positions, values)) {
                    None => {
                        registry.insert((positions, values), ((i, j), image));
                    }
                    Some(&(first, ref existing)) if *existing != image => {
                        report.compatibility_conflicts.push(CompatibilityConflict { positions, values, first, second: (i, j) });
                    }
                    Some(_) => {}
                }
            }
        }
    }

    report.linkage_ok = report.linkage_failures.is_empty();
    report.compatibility_ok = report.compatibility_conflicts.is_empty();
    report
}

/// Words occurring in exactly `n` cells, in increasing order.
///
/// Forced entry puts a word at most once in each row and each column, so
/// such a word occupies one cell of every row and every column.
pub fn repeated_full(t: &EnsembleTable) -> Vec<Permutation> {
    t.multiplicities().into_iter().filter(|&(_, c)| c == t.n()).map(|(w, _)| w).collect()
}

/// Rows `i < i'` and columns `j < j'` of a 2×2 sub-grid.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Quad {
    pub rows: (u8, u8),
    pub cols: (u8, u8),
}

/// Two diagonal cells with equal words and a corner cell linked to both.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct HalfSquare {
    pub diagonal: (Cell, Cell),
    pub corner: Cell,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct StructureFindings {
    /// 22-rectangles whose opposite corners carry equal words.
    pub squares: Vec<Quad>,
    /// Four cells linked around the 2×2 cycle.
    pub rectangles: Vec<Quad>,
    pub halfsquares: Vec<HalfSquare>,
}

impl StructureFindings {
    pub fn is_empty(&self) -> bool {
        self.squares.is_empty() && self.rectangles.is_empty() && self.halfsquares.is_empty()
    }
}

/// Finds every 22-rectangle, 22-square and 22-halfsquare.
pub fn detect_structures(t: &EnsembleTable) -> StructureFindings {
    let n = t.n() as u8;
    let lk = |a: Cell, b: Cell| linked(t.word(a.0, a.1), t.word(b.0, b.1)).expect("same size");
    let eq = |a: Cell, b: Cell| t.word(a.0, a.1) == t.word(b.0, b.1);
    let mut out = StructureFindings::default();
    for i in 1..=n {
        for i2 in i + 1..=n {
            for j in 1..=n {
                for j2 in j + 1..=n {
                    let (a, b, c, d) = ((i, j), (i, j2), (i2, j2), (i2, j));
                    if lk(a, b) && lk(b, c) && lk(c, d) && lk(d, a) {
                        let quad = Quad { rows: (i, i2), cols: (j, j2) };
                        out.rectangles.push(quad);
                        if eq(a, c) && eq(b, d) {
                            out.squares.push(quad);
                        }
                    }
                    for (diag, corners) in [((a, c), [b, d]), ((b, d), [a, c])] {
                        if !eq(diag.0, diag.1) {
                            continue;
                        }
                        for corner in corners {
                            if lk(diag.0, corner) && lk(corner, diag.1) {
                                out.halfsquares.push(HalfSquare { diagonal: diag, corner });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// The lexicographically least image of `t` over all `(ρ, σ) ∈ S_n × S_n`,
/// comparing row-major entry by entry, together with the orbit size.
pub fn canonicalize(t: &EnsembleTable) -> (EnsembleTable, usize) {
    let mut images = BTreeSet::new();
    for g in RowColAction::all(t.n()) {
        images.insert(t.act(&g).expect("sizes agree"));
    }
    let orbit = images.len();
    (images.pop_first().expect("identity image"), orbit)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn table(text: &str) -> EnsembleTable {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect())
            .collect();
        EnsembleTable::new(rows).unwrap()
    }

    const IDENTITY: &str = "[1]32 3[1]2 32[1]\n[2]31 3[2]1 31[2]\n[3]21 2[3]1 21[3]";

    #[test]
    fn identity_table_is_an_ensemble() {
        let t = table(IDENTITY);
        let r = validate_table(&t);
        assert!(r.is_ensemble(), "{r:?}");
        assert_eq!(repeated_full(&t), alloc::vec!["321".parse::<Permutation>().unwrap()]);
    }

    #[test]
    fn forced_entry_is_enforced() {
        let bad = "[1]32 3[1]2 32[1]\n[2]31 3[2]1 31[2]\n[3]21 21[3] 2[3]1";
        let rows = bad.lines().map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect()).collect();
        assert!(matches!(EnsembleTable::new(rows), Err(Error::ForcedEntry { row: 3, col: 2, .. })));
    }

    #[test]
    fn linkage_failure_is_located() {
        // Row 1 holds 123, 312, 231: no two differ by one transposition.
        let t = table("[1]23 3[1]2 23[1]\n[2]31 3[2]1 31[2]\n[3]21 2[3]1 21[3]");
        let r = validate_table(&t);
        assert!(!r.linkage_ok);
        assert!(r.linkage_failures.contains(&LinkageFailure { cell: (1, 1), axis: Axis::Row }));
        assert!(!r.linkage_failures.iter().any(|f| f.axis == Axis::Column && f.cell == (1, 1)));
    }

    #[test]
    fn compatibility_conflict_is_reported() {
        let mut rows: Vec<Vec<MarkedPermutation>> = Vec::new();
        for i in 1..=4u8 {
            let mut row = Vec::new();
            for j in 1..=4u8 {
                // Identity with i moved to position j.
                let mut w: Vec<u8> = (1..=4).filter(|&v| v != i).collect();
                w.insert(j as usize - 1, i);
                row.push(MarkedPermutation::new(Permutation::new(&w).unwrap(), j).unwrap());
            }
            rows.push(row);
        }
        rows[0][0] = "[1]432".parse().unwrap();
        rows[0][3] = "234[1]".parse().unwrap();
        rows[3][0] = "[4]123".parse().unwrap();
        rows[0][1] = "4[1]23".parse().unwrap();
        let t = EnsembleTable::new(rows).unwrap();
        let r = validate_table(&t);
        assert!(!r.compatibility_ok);
        assert!(r.compatibility_conflicts.iter().any(|c| c.first == (1, 1) || c.second == (1, 1)));
    }

    #[test]
    fn act_moves_cells_equivariantly() {
        let t = table(IDENTITY);
        let g = RowColAction::new("213".parse().unwrap(), "321".parse().unwrap()).unwrap();
        let image = t.act(&g).unwrap();
        for mp in t.cells() {
            let moved = g.apply(mp).unwrap();
            let (i, j) = mp.cell();
            assert_eq!(moved.cell(), (g.rows.get(i), g.cols.get(j)));
            assert!(image.contains(&moved));
        }
        assert!(validate_table(&image).is_ensemble());
        assert_eq!(canonicalize(&image), canonicalize(&t));
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let t = table(IDENTITY);
        let (c, orbit) = canonicalize(&t);
        assert_eq!(canonicalize(&c), (c.clone(), orbit));
        assert_eq!(36 % orbit, 0);
        assert!(c <= t);
    }

    #[test]
    fn structures_on_a_square() {
        // Rows 1,2 / columns 1,2 hold 1234 and 2134 crosswise.
        let t = table(
            "[1]234 2[1]34 23[1]4 234[1]\n\
             [2]134 1[2]34 13[2]4 134[2]\n\
             [3]124 1[3]24 12[3]4 124[3]\n\
             [4]123 1[4]23 12[4]3 123[4]",
        );
        let f = detect_structures(&t);
        let q = Quad { rows: (1, 2), cols: (1, 2) };
        assert!(f.squares.contains(&q));
        assert!(f.rectangles.contains(&q));
        assert!(f.squares.iter().all(|s| f.rectangles.contains(s)));
    }
}
