//! Matchings in `K_{n,d}`, the compatibility predicate between marked
//! permutations, and validation of matching-ensemble axioms.
//!
//! A matching is stored as `(vertex, label)` pairs: vertices are elements of
//! `[d]` (table positions), labels are elements of `[n]` (table values). The
//! square-case conversion to marked permutations sends position `p` to the
//! vertex `p` and the value `w_p` to the label.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::{check_sizes, IndexSet, MarkedPermutation, Permutation, MAX_N};

/// A partial bijection between vertices and labels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    // Sorted by vertex.
    pairs: Vec<(u8, u8)>,
}

impl Matching {
    /// Builds a matching from `(vertex, label)` pairs in any order.
    pub fn new(pairs: impl IntoIterator<Item = (u8, u8)>) -> Result<Self> {
        let mut pairs: Vec<(u8, u8)> = pairs.into_iter().collect();
        if pairs.is_empty() {
            return Err(Error::InvalidMatching("a matching needs at least one pair"));
        }
        let mut vertices = IndexSet::EMPTY;
        let mut labels = IndexSet::EMPTY;
        for &(v, l) in &pairs {
            if v == 0 || l == 0 || v as usize > MAX_N || l as usize > MAX_N {
                return Err(Error::InvalidMatching("vertices and labels are 1-based and at most 16"));
            }
            if vertices.contains(v) {
                return Err(Error::InvalidMatching("repeated vertex"));
            }
            if labels.contains(l) {
                return Err(Error::InvalidMatching("repeated label"));
            }
            vertices.insert(v);
            labels.insert(l);
        }
        pairs.sort_unstable();
        Ok(Matching { pairs })
    }

    pub fn pairs(&self) -> &[(u8, u8)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn vertices(&self) -> IndexSet {
        self.pairs.iter().map(|&(v, _)| v).collect()
    }

    pub fn labels(&self) -> IndexSet {
        self.pairs.iter().map(|&(_, l)| l).collect()
    }

    /// The `(vertex set, label set)` this matching is indexed by.
    pub fn index(&self) -> (IndexSet, IndexSet) {
        (self.vertices(), self.labels())
    }

    pub fn label_of(&self, vertex: u8) -> Option<u8> {
        self.pairs.iter().find(|&&(v, _)| v == vertex).map(|&(_, l)| l)
    }

    /// Restriction to the given vertices; `None` when nothing is left.
    pub fn restrict(&self, vertices: IndexSet) -> Option<Matching> {
        let pairs: Vec<_> = self.pairs.iter().copied().filter(|&(v, _)| vertices.contains(v)).collect();
        (!pairs.is_empty()).then_some(Matching { pairs })
    }

    /// Every nonempty proper submatching.
    pub fn proper_submatchings(&self) -> impl Iterator<Item = Matching> + '_ {
        let all = self.vertices();
        all.subsets().filter(move |s| !s.is_empty() && *s != all).filter_map(move |s| self.restrict(s))
    }

    /// The matching with the edge at `vertex` replaced by one to `label`.
    fn relabel(&self, vertex: u8, label: u8) -> Matching {
        let pairs = self.pairs.iter().map(|&(v, l)| if v == vertex { (v, label) } else { (v, l) }).collect();
        Matching { pairs }
    }

    /// The matching with the edge carrying `label` moved to `vertex`.
    fn revertex(&self, label: u8, vertex: u8) -> Matching {
        let mut pairs: Vec<_> = self.pairs.iter().map(|&(v, l)| if l == label { (vertex, l) } else { (v, l) }).collect();
        pairs.sort_unstable();
        Matching { pairs }
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (v, l)) in self.pairs.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "({v},{l})")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matching{self}")
    }
}

impl FromStr for Matching {
    type Err = Error;

    /// Parses `{(v,l),(v,l),...}`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let malformed = |reason| Error::Malformed { token: s.to_string(), reason };
        let compact: alloc::string::String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| malformed("expected braces"))?;
        let body = body.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(|| malformed("expected pairs"))?;
        let mut pairs = Vec::new();
        for item in body.split("),(") {
            let (v, l) = item.split_once(',').ok_or_else(|| malformed("expected `(vertex,label)`"))?;
            let v = v.parse().map_err(|_| malformed("bad vertex"))?;
            let l = l.parse().map_err(|_| malformed("bad label"))?;
            pairs.push((v, l));
        }
        Matching::new(pairs)
    }
}

/// Drops the underlined edge: `{(p, w_p) : p ≠ mark}`.
pub fn marked_to_matching(mp: &MarkedPermutation) -> Matching {
    let w = mp.perm();
    let pairs = (1..=w.len() as u8).filter(|&p| p != mp.mark()).map(|p| (p, w.get(p))).collect();
    Matching { pairs }
}

/// Adds the edge between the missing vertex and the missing label and
/// underlines it.
pub fn matching_to_marked(m: &Matching, n: usize) -> Result<MarkedPermutation> {
    if !(2..=MAX_N).contains(&n) {
        return Err(Error::UnsupportedSize(n));
    }
    if m.len() != n - 1 {
        return Err(Error::InvalidMatching("a square-case matching must have n-1 pairs"));
    }
    let (vertices, labels) = m.index();
    let full = IndexSet::full(n);
    if !vertices.is_subset(full) || !labels.is_subset(full) {
        return Err(Error::InvalidMatching("pair outside [n]"));
    }
    let mark = full.bits() & !vertices.bits();
    let value = full.bits() & !labels.bits();
    let mark = mark.trailing_zeros() as u8 + 1;
    let value = value.trailing_zeros() as u8 + 1;
    let mut word = [0u8; MAX_N];
    for &(v, l) in m.pairs() {
        word[v as usize - 1] = l;
    }
    word[mark as usize - 1] = value;
    MarkedPermutation::new(Permutation::new(&word[..n])?, mark)
}

/// `{(p, w_p) : p ∈ positions}` for a position set avoiding the mark.
pub fn induced_submatching(mp: &MarkedPermutation, positions: IndexSet) -> Result<Matching> {
    if positions.is_empty() {
        return Err(Error::InvalidPositionSet("empty"));
    }
    if !positions.is_subset(IndexSet::full(mp.len())) {
        return Err(Error::InvalidPositionSet("position outside [n]"));
    }
    if positions == IndexSet::full(mp.len()) {
        return Err(Error::InvalidPositionSet("full"));
    }
    if positions.contains(mp.mark()) {
        return Err(Error::InvalidPositionSet("contains the mark"));
    }
    let w = mp.perm();
    Ok(Matching { pairs: positions.iter().map(|p| (p, w.get(p))).collect() })
}

fn image(w: &Permutation, positions: IndexSet) -> IndexSet {
    positions.iter().map(|p| w.get(p)).collect()
}

/// Position sets of size `size` on which `a` and `b` induce different
/// matchings between the same label sets.
fn conflicts(a: &MarkedPermutation, b: &MarkedPermutation, size: Option<usize>) -> Result<bool> {
    check_sizes(a.len(), b.len())?;
    let free = a.free_positions().bits() & b.free_positions().bits();
    let (wa, wb) = (a.perm(), b.perm());
    Ok(IndexSet::from_bits(free).subsets().any(|s| {
        !s.is_empty()
            && size.is_none_or(|k| s.len() == k)
            && image(wa, s) == image(wb, s)
            && s.iter().any(|p| wa.get(p) != wb.get(p))
    }))
}

/// Whether `a` and `b` can appear in the same table: every position set
/// avoiding both marks that `a` and `b` send onto the same labels is matched
/// identically by both.
pub fn compatible(a: &MarkedPermutation, b: &MarkedPermutation) -> Result<bool> {
    Ok(!conflicts(a, b, None)?)
}

/// `k`-compatibility: the same check restricted to position sets of size `k`.
pub fn compatible_at_size(a: &MarkedPermutation, b: &MarkedPermutation, k: usize) -> Result<bool> {
    Ok(!conflicts(a, b, Some(k))?)
}

/// A spanning tree of `K_{n,d}` given by `(label, vertex)` edges.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SpanningTree {
    n: usize,
    d: usize,
    edges: Vec<(u8, u8)>,
}

impl SpanningTree {
    pub fn new(n: usize, d: usize, edges: impl IntoIterator<Item = (u8, u8)>) -> Result<Self> {
        if n == 0 || d == 0 || n > MAX_N || d > MAX_N {
            return Err(Error::InvalidTree("sides must have between 1 and 16 vertices"));
        }
        let mut edges: Vec<(u8, u8)> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        if edges.len() != n + d - 1 {
            return Err(Error::InvalidTree("a spanning tree of K_{n,d} has n+d-1 distinct edges"));
        }
        // Union-find over labels 0..n and vertices n..n+d.
        let mut parent: Vec<usize> = (0..n + d).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(l, v) in &edges {
            if l == 0 || v == 0 || l as usize > n || v as usize > d {
                return Err(Error::InvalidTree("edge endpoint out of range"));
            }
            let a = find(&mut parent, l as usize - 1);
            let b = find(&mut parent, n + v as usize - 1);
            if a == b {
                return Err(Error::InvalidTree("cycle"));
            }
            parent[a] = b;
        }
        Ok(SpanningTree { n, d, edges })
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.n, self.d)
    }

    /// `(label, vertex)` edges in sorted order.
    pub fn edges(&self) -> &[(u8, u8)] {
        &self.edges
    }

    /// Every nonempty matching formed by edges of the tree.
    pub fn matchings(&self) -> Vec<Matching> {
        fn go(edges: &[(u8, u8)], start: usize, used_l: IndexSet, used_v: IndexSet, cur: &mut Vec<(u8, u8)>, out: &mut Vec<Matching>) {
            for k in start..edges.len() {
                let (l, v) = edges[k];
                if used_l.contains(l) || used_v.contains(v) {
                    continue;
                }
                cur.push((v, l));
                out.push(Matching::new(cur.iter().copied()).expect("disjoint edges"));
                go(edges, k + 1, used_l.with(l), used_v.with(v), cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(&self.edges, 0, IndexSet::EMPTY, IndexSet::EMPTY, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for SpanningTree {
    /// Space-separated `label-vertex'` edges, e.g. `1-1' 1-2' 2-2'`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (l, v)) in self.edges.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}-{v}'")?;
        }
        Ok(())
    }
}

impl FromStr for SpanningTree {
    type Err = Error;

    /// Parses the `Display` form; `n` and `d` are the largest label and vertex.
    fn from_str(s: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for tok in s.split_whitespace() {
            let malformed = |reason| Error::Malformed { token: tok.to_string(), reason };
            let (l, v) = tok.split_once('-').ok_or_else(|| malformed("expected `label-vertex'`"))?;
            let v = v.strip_suffix('\'').ok_or_else(|| malformed("vertex must carry a prime"))?;
            let l: u8 = l.parse().map_err(|_| malformed("bad label"))?;
            let v: u8 = v.parse().map_err(|_| malformed("bad vertex"))?;
            edges.push((l, v));
        }
        let n = edges.iter().map(|&(l, _)| l as usize).max().unwrap_or(0);
        let d = edges.iter().map(|&(_, v)| v as usize).max().unwrap_or(0);
        SpanningTree::new(n, d, edges)
    }
}

/// Matchings of `K_{n,d}` keyed by `(vertex set, label set)`.
///
/// Distinct matchings sharing an index are all kept so that validation can
/// report them. Size-1 matchings are stored for closure but never constrain
/// anything.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatchingCollection {
    n: usize,
    d: usize,
    by_index: BTreeMap<(IndexSet, IndexSet), Vec<Matching>>,
}

impl MatchingCollection {
    /// An empty collection over `n` labels and `d` vertices.
    pub fn new(n: usize, d: usize) -> Self {
        assert!(n <= MAX_N && d <= MAX_N);
        MatchingCollection { n, d, by_index: BTreeMap::new() }
    }

    /// Label and vertex counts.
    pub fn sizes(&self) -> (usize, usize) {
        (self.n, self.d)
    }

    /// Adds `m`; returns `false` if it was already present.
    pub fn insert(&mut self, m: Matching) -> Result<bool> {
        if !m.vertices().is_subset(IndexSet::full(self.d)) || !m.labels().is_subset(IndexSet::full(self.n)) {
            return Err(Error::InvalidMatching("pair outside the collection's K_{n,d}"));
        }
        let slot = self.by_index.entry(m.index()).or_default();
        if slot.contains(&m) {
            return Ok(false);
        }
        slot.push(m);
        slot.sort();
        Ok(true)
    }

    pub fn remove(&mut self, m: &Matching) -> bool {
        let Some(slot) = self.by_index.get_mut(&m.index()) else { return false };
        let before = slot.len();
        slot.retain(|x| x != m);
        let removed = slot.len() != before;
        if slot.is_empty() {
            self.by_index.remove(&m.index());
        }
        removed
    }

    pub fn contains(&self, m: &Matching) -> bool {
        self.by_index.get(&m.index()).is_some_and(|s| s.contains(m))
    }

    pub fn get(&self, vertices: IndexSet, labels: IndexSet) -> &[Matching] {
        self.by_index.get(&(vertices, labels)).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Matching> {
        self.by_index.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.by_index.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_index.is_empty()
    }

    /// Indices holding more than one distinct matching.
    pub fn conflicting_indices(&self) -> impl Iterator<Item = (IndexSet, IndexSet)> + '_ {
        self.by_index.iter().filter(|(_, s)| s.len() > 1).map(|(k, _)| *k)
    }
}

/// All matchings contained edge-wise in at least one of the trees.
pub fn matchings_from_trees(trees: &[SpanningTree]) -> Result<MatchingCollection> {
    let (n, d) = trees.first().map(SpanningTree::sizes).ok_or(Error::InvalidTree("no trees given"))?;
    let mut out = MatchingCollection::new(n, d);
    for t in trees {
        if t.sizes() != (n, d) {
            return Err(Error::InvalidTree("trees over different K_{n,d}"));
        }
        for m in t.matchings() {
            out.insert(m)?;
        }
    }
    Ok(out)
}

/// One broken matching-ensemble axiom.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MeViolation {
    /// No matching stored between these sets.
    Missing { vertices: IndexSet, labels: IndexSet },
    /// Several distinct matchings stored between these sets.
    Duplicate { vertices: IndexSet, labels: IndexSet, count: usize },
    /// `sub` is a submatching of `matching` but is not stored.
    Closure { matching: Matching, sub: Matching },
    /// No single-edge exchange brings `label` into `matching`.
    LeftLinkage { matching: Matching, label: u8 },
    /// No single-edge exchange brings `vertex` into `matching`.
    RightLinkage { matching: Matching, vertex: u8 },
}

impl fmt::Display for MeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |f: &mut fmt::Formatter<'_>, s: &IndexSet| {
            f.write_str("{")?;
            for (k, i) in s.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{i}")?;
            }
            f.write_str("}")
        };
        match self {
            MeViolation::Missing { vertices, labels } => {
                f.write_str("uniqueness: no matching between vertices ")?;
                set(f, vertices)?;
                f.write_str(" and labels ")?;
                set(f, labels)
            }
            MeViolation::Duplicate { vertices, labels, count } => {
                write!(f, "uniqueness: {count} matchings between vertices ")?;
                set(f, vertices)?;
                f.write_str(" and labels ")?;
                set(f, labels)
            }
            MeViolation::Closure { matching, sub } => write!(f, "closure: {sub} is missing although {matching} is present"),
            MeViolation::LeftLinkage { matching, label } => write!(f, "left linkage: {matching} cannot take label {label}"),
            MeViolation::RightLinkage { matching, vertex } => write!(f, "right linkage: {matching} cannot take vertex {vertex}"),
        }
    }
}

/// Outcome of checking the matching-ensemble axioms.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MeReport {
    pub uniqueness_ok: bool,
    pub closure_ok: bool,
    pub left_linkage_ok: bool,
    pub right_linkage_ok: bool,
    pub violations: Vec<MeViolation>,
}

impl MeReport {
    pub fn is_matching_ensemble(&self) -> bool {
        self.uniqueness_ok && self.closure_ok && self.left_linkage_ok && self.right_linkage_ok
    }
}

/// Checks uniqueness (exactly one matching per pair of equicardinal vertex
/// and label sets), submatching closure, and left and right linkage.
pub fn validate_matching_collection(c: &MatchingCollection) -> MeReport {
    let (n, d) = c.sizes();
    let mut violations = Vec::new();

    for vertices in IndexSet::full(d).subsets().filter(|s| !s.is_empty()) {
        for labels in IndexSet::full(n).subsets().filter(|s| s.len() == vertices.len()) {
            match c.get(vertices, labels).len() {
                0 => violations.push(MeViolation::Missing { vertices, labels }),
                1 => {}
                count => violations.push(MeViolation::Duplicate { vertices, labels, count }),
            }
        }
    }
    let uniqueness_ok = violations.is_empty();

    let before = violations.len();
    for m in c.iter() {
        for sub in m.proper_submatchings() {
            if !c.contains(&sub) {
                violations.push(MeViolation::Closure { matching: m.clone(), sub });
            }
        }
    }
    let closure_ok = violations.len() == before;

    let before = violations.len();
    for m in c.iter() {
        let (vs, ls) = m.index();
        for label in IndexSet::full(n).iter().filter(|&l| !ls.contains(l)) {
            if !vs.iter().any(|v| c.contains(&m.relabel(v, label))) {
                violations.push(MeViolation::LeftLinkage { matching: m.clone(), label });
            }
        }
    }
    let left_linkage_ok = violations.len() == before;

    let before = violations.len();
    for m in c.iter() {
        let (vs, ls) = m.index();
        for vertex in IndexSet::full(d).iter().filter(|&v| !vs.contains(v)) {
            if !ls.iter().any(|l| c.contains(&m.revertex(l, vertex))) {
                violations.push(MeViolation::RightLinkage { matching: m.clone(), vertex });
            }
        }
    }
    let right_linkage_ok = violations.len() == before;

    MeReport { uniqueness_ok, closure_ok, left_linkage_ok, right_linkage_ok, violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> MarkedPermutation {
        s.parse().unwrap()
    }

    fn mt(s: &str) -> Matching {
        s.parse().unwrap()
    }

    #[test]
    fn marked_matching_examples() {
        assert_eq!(marked_to_matching(&m("2[3]41")), mt("{(1,2),(3,4),(4,1)}"));
        assert_eq!(marked_to_matching(&m("[1]234")), mt("{(2,2),(3,3),(4,4)}"));
        assert_eq!(marked_to_matching(&m("4[2]31")), mt("{(1,4),(3,3),(4,1)}"));
        assert_eq!(matching_to_marked(&mt("{(1,2),(3,4),(4,1)}"), 4).unwrap(), m("2[3]41"));
        assert_eq!(matching_to_marked(&mt("{(2,2),(3,3),(4,4)}"), 4).unwrap(), m("[1]234"));
        assert_eq!(matching_to_marked(&mt("{(1,4),(3,3),(4,1)}"), 4).unwrap(), m("4[2]31"));
        assert!(matching_to_marked(&mt("{(1,2),(3,4)}"), 4).is_err());
        assert!(matching_to_marked(&mt("{(1,2),(3,4),(5,1)}"), 4).is_err());
    }

    #[test]
    fn induced_submatching_examples() {
        let at = |t: &str, s: &[u8]| induced_submatching(&m(t), s.iter().copied().collect());
        assert_eq!(at("3[2]1", &[1, 3]).unwrap(), mt("{(1,3),(3,1)}"));
        assert_eq!(at("[1]234", &[2, 3]).unwrap(), mt("{(2,2),(3,3)}"));
        assert_eq!(at("4[2]31", &[3, 4]).unwrap(), mt("{(3,3),(4,1)}"));
        assert_eq!(at("4[2]31", &[2, 4]), Err(Error::InvalidPositionSet("contains the mark")));
        assert_eq!(at("4[2]31", &[]), Err(Error::InvalidPositionSet("empty")));
        assert_eq!(at("4[2]31", &[1, 2, 3, 4]), Err(Error::InvalidPositionSet("full")));
    }

    #[test]
    fn compatibility_examples() {
        assert!(!compatible(&m("[1]432"), &m("1[4]23")).unwrap());
        assert!(!compatible_at_size(&m("[1]432"), &m("1[4]23"), 2).unwrap());
        assert!(compatible(&m("[1]432"), &m("4[1]32")).unwrap());
        assert!(compatible(&m("4[2]31"), &m("4[2]31")).unwrap());
        assert!(compatible(&m("[1]32"), &m("[1]234")).is_err());
    }

    #[test]
    fn matching_text_round_trip() {
        let x = mt("{ (3,4), (1,2),(4,1) }");
        assert_eq!(x.to_string(), "{(1,2),(3,4),(4,1)}");
        assert!("{(1,2),(1,3)}".parse::<Matching>().is_err());
        assert!("{(1,2),(2,2)}".parse::<Matching>().is_err());
        assert!("{}".parse::<Matching>().is_err());
        assert!("(1,2)".parse::<Matching>().is_err());
    }

    #[test]
    fn tree_validation() {
        assert!(SpanningTree::new(2, 2, [(1, 1), (1, 2), (2, 2)]).is_ok());
        assert_eq!(SpanningTree::new(2, 2, [(1, 1), (1, 2)]), Err(Error::InvalidTree("a spanning tree of K_{n,d} has n+d-1 distinct edges")));
        // Four edges of K_{2,2} form a cycle.
        assert!(SpanningTree::new(2, 3, [(1, 1), (1, 2), (2, 1), (2, 2)]).is_err());
        assert!(SpanningTree::new(2, 2, [(1, 1), (1, 2), (3, 2)]).is_err());
        let t: SpanningTree = "1-1' 1-2' 2-2'".parse().unwrap();
        assert_eq!(t.to_string(), "1-1' 1-2' 2-2'");
    }

    #[test]
    fn star_has_only_single_edges() {
        // A star centred at a label only spans K_{1,d}.
        let star = SpanningTree::new(1, 3, [(1, 1), (1, 2), (1, 3)]).unwrap();
        let c = matchings_from_trees(&[star]).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.iter().all(|m| m.len() == 1));
        // Every spanning tree of K_{2,2} is a path whose end edges form a 2-matching.
        let path = SpanningTree::new(2, 2, [(2, 1), (1, 1), (1, 2)]).unwrap();
        assert!(path.matchings().contains(&mt("{(1,2),(2,1)}")));
    }

    #[test]
    fn edge_orientation_cycle_fails_left_linkage() {
        // Labels a=1,b=2,c=3; vertices x=1,y=2.
        let mut c = MatchingCollection::new(3, 2);
        for v in 1..=2 {
            for l in 1..=3 {
                c.insert(Matching::new([(v, l)]).unwrap()).unwrap();
            }
        }
        for s in ["{(2,1),(1,2)}", "{(2,2),(1,3)}", "{(2,3),(1,1)}"] {
            c.insert(mt(s)).unwrap();
        }
        let r = validate_matching_collection(&c);
        assert!(r.uniqueness_ok && r.closure_ok && r.right_linkage_ok);
        assert!(!r.left_linkage_ok);
        assert!(r.violations.iter().all(|v| matches!(v, MeViolation::LeftLinkage { .. })));
    }

    #[test]
    fn duplicates_are_reported() {
        let mut c = MatchingCollection::new(2, 2);
        c.insert(mt("{(1,1),(2,2)}")).unwrap();
        c.insert(mt("{(1,2),(2,1)}")).unwrap();
        assert_eq!(c.conflicting_indices().count(), 1);
        let r = validate_matching_collection(&c);
        assert!(!r.uniqueness_ok);
        assert!(r.violations.iter().any(|v| matches!(v, MeViolation::Duplicate { count: 2, .. })));
        assert!(c.remove(&mt("{(1,2),(2,1)}")));
        assert_eq!(c.conflicting_indices().count(), 0);
    }
}
