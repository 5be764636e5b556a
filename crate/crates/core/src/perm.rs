//! Permutations in one-line notation, marked permutations, the linked
//! relation and the row/column action on marked permutations.
//!
//! Positions are simplex vertices (table columns) and values are labels
//! (table rows). Both are 1-based throughout the public API.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported permutation size.
pub const MAX_N: usize = 16;

/// A subset of `1..=MAX_N`, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(u16);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn from_bits(bits: u16) -> Self {
        IndexSet(bits)
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_N);
        IndexSet(((1u32 << n) - 1) as u16)
    }

    pub fn singleton(i: u8) -> Self {
        IndexSet(1 << (i - 1))
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn contains(self, i: u8) -> bool {
        i >= 1 && (i as usize) <= MAX_N && self.0 & (1 << (i - 1)) != 0
    }

    pub fn insert(&mut self, i: u8) {
        self.0 |= 1 << (i - 1);
    }

    pub fn remove(&mut self, i: u8) {
        self.0 &= !(1 << (i - 1));
    }

    pub fn with(mut self, i: u8) -> Self {
        self.insert(i);
        self
    }

    pub fn without(mut self, i: u8) -> Self {
        self.remove(i);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = u8> {
        (1..=MAX_N as u8).filter(move |&i| self.contains(i))
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = IndexSet> {
        // Walk submasks upward from 0; `next` wraps back to 0 after `self`.
        let mask = self.0;
        let mut cur = Some(0u16);
        core::iter::from_fn(move || {
            let out = cur?;
            let next = out.wrapping_sub(mask) & mask;
            cur = if next == 0 { None } else { Some(next) };
            Some(IndexSet(out))
        })
    }
}

impl FromIterator<u8> for IndexSet {
    fn from_iter<T: IntoIterator<Item = u8>>(iter: T) -> Self {
        let mut s = IndexSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A permutation of `[n]` in one-line notation `w_1 ... w_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    len: u8,
    word: [u8; MAX_N],
}

impl Permutation {
    /// Builds a permutation from its one-line word.
    pub fn new(word: &[u8]) -> Result<Self> {
        let n = word.len();
        if n == 0 || n > MAX_N {
            return Err(Error::UnsupportedSize(n));
        }
        let mut seen = IndexSet::EMPTY;
        let mut buf = [0u8; MAX_N];
        for (slot, &v) in buf.iter_mut().zip(word) {
            if v == 0 || v as usize > n {
                return Err(Error::ValueOutOfRange { value: v, n });
            }
            if seen.contains(v) {
                return Err(Error::RepeatedValue(v));
            }
            seen.insert(v);
            *slot = v;
        }
        Ok(Permutation { len: n as u8, word: buf })
    }

    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n), "unsupported size {n}");
        let mut word = [0u8; MAX_N];
        for (p, slot) in word.iter_mut().enumerate().take(n) {
            *slot = p as u8 + 1;
        }
        Permutation { len: n as u8, word }
    }

    /// The transposition of `a` and `b` in `S_n`.
    pub fn transposition(n: usize, a: u8, b: u8) -> Self {
        Permutation::identity(n).swap(a, b)
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut cur = Some(Permutation::identity(n));
        core::iter::from_fn(move || {
            let out = cur?;
            cur = out.next_lexicographic();
            Some(out)
        })
    }

    fn next_lexicographic(&self) -> Option<Permutation> {
        let n = self.len();
        let mut next = *self;
        let w = &mut next.word[..n];
        let i = (0..n.saturating_sub(1)).rev().find(|&i| w[i] < w[i + 1])?;
        let j = (i + 1..n).rev().find(|&j| w[j] > w[i]).expect("successor exists");
        w.swap(i, j);
        w[i + 1..].reverse();
        Some(next)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.word[..self.len()]
    }

    /// Value at 1-based `position`.
    pub fn get(&self, position: u8) -> u8 {
        self.as_slice()[position as usize - 1]
    }

    /// 1-based position holding `value`.
    pub fn position_of(&self, value: u8) -> u8 {
        self.as_slice()
            .iter()
            .position(|&v| v == value)
            .expect("value in range") as u8
            + 1
    }

    /// The word with the entries at positions `p` and `q` exchanged.
    pub fn swap(mut self, p: u8, q: u8) -> Self {
        self.word.swap(p as usize - 1, q as usize - 1);
        self
    }

    pub fn inverse(&self) -> Self {
        let mut inv = *self;
        for (p, &v) in self.as_slice().iter().enumerate() {
            inv.word[v as usize - 1] = p as u8 + 1;
        }
        inv
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        check_sizes(self.len(), other.len())?;
        let mut out = *self;
        for (slot, &v) in out.word.iter_mut().zip(other.as_slice()) {
            *slot = self.get(v);
        }
        Ok(out)
    }

    /// Number of positions where the two words differ.
    pub fn hamming(&self, other: &Permutation) -> Result<usize> {
        check_sizes(self.len(), other.len())?;
        Ok(self
            .as_slice()
            .iter()
            .zip(other.as_slice())
            .filter(|(a, b)| a != b)
            .count())
    }

    /// Rank in lexicographic order among all permutations of the same size.
    pub fn rank(&self) -> usize {
        let w = self.as_slice();
        let n = w.len();
        let mut rank = 0;
        for i in 0..n {
            let smaller = w[i + 1..].iter().filter(|&&v| v < w[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }
}

pub(crate) fn check_sizes(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::SizeMismatch { left, right })
    }
}

/// `u` and `w` differ by a single transposition of positions.
pub fn linked(u: &Permutation, w: &Permutation) -> Result<bool> {
    Ok(u.hamming(w)? == 2)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, self.as_slice(), None)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, word: &[u8], mark: Option<u8>) -> fmt::Result {
    let wide = word.len() > 9;
    for (p, v) in word.iter().enumerate() {
        if wide && p > 0 {
            f.write_str(",")?;
        }
        if mark == Some(p as u8 + 1) {
            write!(f, "[{v}]")?;
        } else {
            write!(f, "{v}")?;
        }
    }
    Ok(())
}

/// Splits a token into values and marked positions. Digit tokens hold one
/// value per character; tokens containing a comma hold comma-separated values.
fn parse_word(token: &str) -> Result<(Vec<u8>, Vec<u8>)> {
    let malformed = |reason| Error::Malformed { token: token.to_string(), reason };
    let mut values = Vec::new();
    let mut marks = Vec::new();
    if token.contains(',') {
        for item in token.split(',') {
            let (inner, marked) = match item.strip_prefix('[') {
                Some(rest) => (rest.strip_suffix(']').ok_or_else(|| malformed("unclosed bracket"))?, true),
                None => (item, false),
            };
            let v: u8 = inner.parse().map_err(|_| malformed("expected a number"))?;
            if marked {
                marks.push(values.len() as u8 + 1);
            }
            values.push(v);
        }
    } else {
        let mut chars = token.chars();
        while let Some(c) = chars.next() {
            let (digit, marked) = if c == '[' {
                let d = chars.next().ok_or_else(|| malformed("unclosed bracket"))?;
                if chars.next() != Some(']') {
                    return Err(malformed("a bracket must enclose exactly one digit"));
                }
                (d, true)
            } else {
                (c, false)
            };
            let v = digit.to_digit(10).ok_or_else(|| malformed("expected a digit"))? as u8;
            if marked {
                marks.push(values.len() as u8 + 1);
            }
            values.push(v);
        }
    }
    if values.is_empty() {
        return Err(malformed("empty word"));
    }
    Ok((values, marks))
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (values, marks) = parse_word(s.trim())?;
        if !marks.is_empty() {
            return Err(Error::MarkCount(marks.len()));
        }
        Permutation::new(&values)
    }
}

/// A permutation with one distinguished (underlined) position.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedPermutation {
    perm: Permutation,
    mark: u8,
}

impl MarkedPermutation {
    pub fn new(perm: Permutation, mark: u8) -> Result<Self> {
        if mark == 0 || mark as usize > perm.len() {
            return Err(Error::ValueOutOfRange { value: mark, n: perm.len() });
        }
        Ok(MarkedPermutation { perm, mark })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mark(&self) -> u8 {
        self.mark
    }

    /// The underlined value.
    pub fn marked_value(&self) -> u8 {
        self.perm.get(self.mark)
    }

    /// The unique cell `(row, col) = (w_mark, mark)` this entry may occupy.
    pub fn cell(&self) -> (u8, u8) {
        (self.marked_value(), self.mark)
    }

    /// Unmarked positions.
    pub fn free_positions(&self) -> IndexSet {
        IndexSet::full(self.len()).without(self.mark)
    }
}

impl fmt::Display for MarkedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, self.perm.as_slice(), Some(self.mark))
    }
}

impl fmt::Debug for MarkedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Marked({self})")
    }
}

impl FromStr for MarkedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (values, marks) = parse_word(s.trim())?;
        if marks.len() != 1 {
            return Err(Error::MarkCount(marks.len()));
        }
        MarkedPermutation::new(Permutation::new(&values)?, marks[0])
    }
}

/// Parses a token such as `4[2]31`.
pub fn parse_marked(token: &str) -> Result<MarkedPermutation> {
    token.parse()
}

pub fn format_marked(mp: &MarkedPermutation) -> String {
    mp.to_string()
}

/// Simultaneous relabelling of values (rows) and permutation of positions
/// (columns).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RowColAction {
    pub rows: Permutation,
    pub cols: Permutation,
}

impl RowColAction {
    pub fn new(rows: Permutation, cols: Permutation) -> Result<Self> {
        check_sizes(rows.len(), cols.len())?;
        Ok(RowColAction { rows, cols })
    }

    pub fn identity(n: usize) -> Self {
        RowColAction { rows: Permutation::identity(n), cols: Permutation::identity(n) }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All `(n!)^2` actions, rows-major in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = RowColAction> {
        Permutation::all(n)
            .flat_map(move |rows| Permutation::all(n).map(move |cols| RowColAction { rows, cols }))
    }

    /// The action of `self` followed by `after`.
    pub fn then(&self, after: &RowColAction) -> Result<RowColAction> {
        Ok(RowColAction { rows: after.rows.compose(&self.rows)?, cols: after.cols.compose(&self.cols)? })
    }

    /// New word `u` with `u_{σ(p)} = ρ(w_p)`.
    pub fn apply_perm(&self, w: &Permutation) -> Result<Permutation> {
        check_sizes(w.len(), self.len())?;
        let mut out = *w;
        for (p, &v) in w.as_slice().iter().enumerate() {
            let target = self.cols.get(p as u8 + 1);
            out.word[target as usize - 1] = self.rows.get(v);
        }
        Ok(out)
    }

    pub fn apply(&self, mp: &MarkedPermutation) -> Result<MarkedPermutation> {
        let perm = self.apply_perm(&mp.perm)?;
        Ok(MarkedPermutation { perm, mark: self.cols.get(mp.mark) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn m(s: &str) -> MarkedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let a = m("[1]32");
        assert_eq!(a.perm().as_slice(), &[1, 3, 2]);
        assert_eq!(a.mark(), 1);
        let b = m("[1]234");
        assert_eq!(b.perm().as_slice(), &[1, 2, 3, 4]);
        assert_eq!(b.mark(), 1);
        let c = m("4[2]31");
        assert_eq!(c.perm().as_slice(), &[4, 2, 3, 1]);
        assert_eq!(c.mark(), 2);
        assert_eq!(c.cell(), (2, 2));
        for t in ["[1]32", "[1]234", "4[2]31", "231[4]"] {
            assert_eq!(format_marked(&parse_marked(t).unwrap()), t);
        }
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_marked("1234"), Err(Error::MarkCount(0)));
        assert_eq!(parse_marked("[1][2]34"), Err(Error::MarkCount(2)));
        assert_eq!(parse_marked("[1]224"), Err(Error::RepeatedValue(2)));
        assert!(matches!(parse_marked("[1]2x4"), Err(Error::Malformed { .. })));
        assert!(matches!(parse_marked("[12]34"), Err(Error::Malformed { .. })));
        assert!(matches!(parse_marked("[1"), Err(Error::Malformed { .. })));
        assert!(matches!(parse_marked(""), Err(Error::Malformed { .. })));
        assert_eq!(parse_marked("[1]235"), Err(Error::ValueOutOfRange { value: 5, n: 4 }));
    }

    #[test]
    fn wide_tokens_use_commas() {
        let w: Vec<u8> = (1..=10).rev().collect();
        let mp = MarkedPermutation::new(Permutation::new(&w).unwrap(), 3).unwrap();
        let text = mp.to_string();
        assert_eq!(text, "10,9,[8],7,6,5,4,3,2,1");
        assert_eq!(parse_marked(&text).unwrap(), mp);
        assert_eq!(parse_marked("2,[1]").unwrap(), m("2[1]"));
    }

    #[test]
    fn linked_examples() {
        assert!(linked(&p("132"), &p("312")).unwrap());
        assert!(!linked(&p("132"), &p("321")).unwrap());
        assert!(!linked(&p("1234"), &p("1234")).unwrap());
        assert_eq!(linked(&p("123"), &p("1234")), Err(Error::SizeMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn act_examples() {
        let id = RowColAction::identity(4);
        assert_eq!(id.apply(&m("[1]234")).unwrap(), m("[1]234"));
        let swap_cols = RowColAction::new(Permutation::identity(4), p("2134")).unwrap();
        assert_eq!(swap_cols.apply(&m("4[2]31")).unwrap(), m("[2]431"));
        let swap_vals = RowColAction::new(p("4231"), Permutation::identity(4)).unwrap();
        assert_eq!(swap_vals.apply(&m("4[2]31")).unwrap(), m("1[2]34"));
        assert!(matches!(swap_vals.apply(&m("[1]32")), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn lexicographic_enumeration_and_rank() {
        let all: Vec<_> = Permutation::all(4).collect();
        assert_eq!(all.len(), 24);
        for (r, w) in all.iter().enumerate() {
            assert_eq!(w.rank(), r);
        }
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[23], p("4321"));
    }

    #[test]
    fn subsets_cover_power_set() {
        let s = IndexSet::from_iter([1, 3, 4]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(IndexSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn compose_and_inverse() {
        let a = p("2314");
        assert_eq!(a.compose(&a.inverse()).unwrap(), Permutation::identity(4));
        assert_eq!(p("213").compose(&p("132")).unwrap(), p("231"));
    }
}
