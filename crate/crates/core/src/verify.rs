//! Exhaustive checks of the repeated-word characterisations.
//!
//! For `n = 3` every ensemble must contain a word in all three rows. For
//! `n = 4` a word occupies all four rows exactly when the table contains no
//! 33-cyclic pattern. Both properties, and every structure class used here,
//! are invariant under the row/column action, so one representative per
//! orbit weighted by its orbit size covers the whole universe.

use alloc::vec::Vec;

use crate::cyclic::CyclicPatternCatalog;
use crate::ensemble::{detect_structures, repeated_full, EnsembleTable};
use crate::enumerate::{Delivery, EnumerationStats, Enumerator};
use crate::error::Result;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TheoremReport {
    pub n: usize,
    /// Ensembles counted with orbit multiplicity.
    pub total: u64,
    /// Orbit representatives examined.
    pub classes: u64,
    /// `None` for `n = 3`, where acyclicity is not defined.
    pub acyclic_count: Option<u64>,
    pub with_repeat_count: u64,
    /// Representatives contradicting the characterisation.
    pub violations: Vec<EnsembleTable>,
    pub stats: EnumerationStats,
}

impl TheoremReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Folds delivered tables into a [`TheoremReport`]; independent branches
/// each get their own accumulator and are merged in branch order.
#[derive(Clone, Debug)]
pub struct TheoremAccumulator {
    report: TheoremReport,
    catalog: Option<CyclicPatternCatalog>,
}

impl TheoremAccumulator {
    pub fn new(n: usize) -> Self {
        let catalog = (n == 4).then(CyclicPatternCatalog::new);
        let report = TheoremReport {
            n,
            total: 0,
            classes: 0,
            acyclic_count: catalog.as_ref().map(|_| 0),
            with_repeat_count: 0,
            violations: Vec::new(),
            stats: EnumerationStats::default(),
        };
        TheoremAccumulator { report, catalog }
    }

    pub fn observe(&mut self, t: &EnsembleTable, orbit: usize) {
        let r = &mut self.report;
        let weight = orbit as u64;
        r.total += weight;
        r.classes += 1;
        let repeated = !repeated_full(t).is_empty();
        if repeated {
            r.with_repeat_count += weight;
        }
        let expected = match &self.catalog {
            Some(cat) => {
                let acyclic = cat.is_acyclic(t).expect("size 4");
                if acyclic {
                    *r.acyclic_count.as_mut().expect("set for n = 4") += weight;
                }
                acyclic
            }
            None => true,
        };
        if repeated != expected {
            r.violations.push(t.clone());
        }
    }

    pub fn add_stats(&mut self, stats: &EnumerationStats) {
        self.report.stats.merge(stats);
    }

    pub fn merge(&mut self, other: TheoremAccumulator) {
        let (r, o) = (&mut self.report, other.report);
        r.total += o.total;
        r.classes += o.classes;
        if let (Some(a), Some(b)) = (r.acyclic_count.as_mut(), o.acyclic_count) {
            *a += b;
        }
        r.with_repeat_count += o.with_repeat_count;
        r.violations.extend(o.violations);
        r.stats.merge(&o.stats);
    }

    pub fn finish(self) -> TheoremReport {
        self.report
    }
}

/// Sequential symmetry-reduced check over every `S_n`-ensemble, `n ∈ {3, 4}`.
pub fn verify_main_theorem(n: usize) -> Result<TheoremReport> {
    let e = Enumerator::new(n)?;
    let mut acc = TheoremAccumulator::new(n);
    let stats = e.run(Delivery::Canonical, &mut |t, orbit| acc.observe(t, orbit));
    acc.add_stats(&stats);
    Ok(acc.finish())
}

/// Counts for one structure class among acyclic `S_4`-ensembles.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LemmaClass {
    /// Acyclic ensembles in the class, with orbit multiplicity.
    pub acyclic_count: u64,
    /// Acyclic orbit representatives in the class.
    pub acyclic_classes: u64,
    /// Acyclic representatives in the class without a word in every row.
    pub violations: Vec<EnsembleTable>,
}

impl LemmaClass {
    fn observe(&mut self, t: &EnsembleTable, weight: u64, repeated: bool) {
        self.acyclic_count += weight;
        self.acyclic_classes += 1;
        if !repeated {
            self.violations.push(t.clone());
        }
    }

    fn merge(&mut self, other: LemmaClass) {
        self.acyclic_count += other.acyclic_count;
        self.acyclic_classes += other.acyclic_classes;
        self.violations.extend(other.violations);
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LemmaReport {
    pub square: LemmaClass,
    pub rectangle: LemmaClass,
    pub halfsquare: LemmaClass,
    /// Some word in at least three cells.
    pub triple_repeat: LemmaClass,
    pub acyclic_total: u64,
    pub stats: EnumerationStats,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        [&self.square, &self.rectangle, &self.halfsquare, &self.triple_repeat]
            .iter()
            .all(|c| c.violations.is_empty())
    }
}

#[derive(Clone, Debug)]
pub struct LemmaAccumulator {
    report: LemmaReport,
    catalog: CyclicPatternCatalog,
}

impl Default for LemmaAccumulator {
    fn default() -> Self {
        Self::new()
    }
}

impl LemmaAccumulator {
    pub fn new() -> Self {
        LemmaAccumulator { report: LemmaReport::default(), catalog: CyclicPatternCatalog::new() }
    }

    /// `t` must be an `S_4`-ensemble.
    pub fn observe(&mut self, t: &EnsembleTable, orbit: usize) {
        if !self.catalog.is_acyclic(t).expect("size 4") {
            return;
        }
        let weight = orbit as u64;
        let r = &mut self.report;
        r.acyclic_total += weight;
        let repeated = !repeated_full(t).is_empty();
        let s = detect_structures(t);
        if !s.squares.is_empty() {
            r.square.observe(t, weight, repeated);
        }
        if !s.rectangles.is_empty() {
            r.rectangle.observe(t, weight, repeated);
        }
        if !s.halfsquares.is_empty() {
            r.halfsquare.observe(t, weight, repeated);
        }
        if t.multiplicities().values().any(|&c| c >= 3) {
            r.triple_repeat.observe(t, weight, repeated);
        }
    }

    pub fn add_stats(&mut self, stats: &EnumerationStats) {
        self.report.stats.merge(stats);
    }

    pub fn merge(&mut self, other: LemmaAccumulator) {
        let (r, o) = (&mut self.report, other.report);
        r.square.merge(o.square);
        r.rectangle.merge(o.rectangle);
        r.halfsquare.merge(o.halfsquare);
        r.triple_repeat.merge(o.triple_repeat);
        r.acyclic_total += o.acyclic_total;
        r.stats.merge(&o.stats);
    }

    pub fn finish(self) -> LemmaReport {
        self.report
    }
}

/// Sequential check of the structure lemmas over every acyclic `S_4`-ensemble.
pub fn verify_structure_lemmas() -> LemmaReport {
    let e = Enumerator::new(4).expect("size 4 is supported");
    let mut acc = LemmaAccumulator::new();
    let stats = e.run(Delivery::Canonical, &mut |t, orbit| acc.observe(t, orbit));
    acc.add_stats(&stats);
    acc.finish()
}
