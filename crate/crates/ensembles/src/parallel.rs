//! Branch-parallel enumeration with deterministic merging.
//!
//! Each worker takes the next unclaimed branch (candidate for cell `(1,1)`)
//! and folds its tables into a private accumulator. Results are merged in
//! branch order, so the outcome does not depend on the thread count.

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use ensembles_core::{
    Delivery, EnsembleTable, EnumerationStats, Enumerator, LemmaAccumulator, LemmaReport, TheoremAccumulator,
    TheoremReport,
};

use crate::Error;

pub fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, NonZeroUsize::get)
}

/// Per-branch accumulators and statistics, in branch order.
pub fn fold_branches<A, I, F>(e: &Enumerator, delivery: Delivery, threads: usize, init: I, observe: F) -> Vec<(A, EnumerationStats)>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, &EnsembleTable, usize) + Sync,
{
    let branches = e.branch_count();
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<(A, EnumerationStats)>>> = Mutex::new((0..branches).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..threads.clamp(1, branches) {
            scope.spawn(|| loop {
                let b = next.fetch_add(1, Ordering::Relaxed);
                if b >= branches {
                    break;
                }
                let mut acc = init();
                let stats = e.run_branch(b, delivery, &mut |t, orbit| observe(&mut acc, t, orbit));
                slots.lock().expect("no worker panicked")[b] = Some((acc, stats));
            });
        }
    });
    slots.into_inner().expect("no worker panicked").into_iter().map(|s| s.expect("every branch ran")).collect()
}

pub fn theorem(n: usize, threads: usize) -> Result<TheoremReport, Error> {
    let e = Enumerator::new(n)?;
    let parts = fold_branches(&e, Delivery::Canonical, threads, || TheoremAccumulator::new(n), |acc, t, orbit| acc.observe(t, orbit));
    let mut total = TheoremAccumulator::new(n);
    for (mut acc, stats) in parts {
        acc.add_stats(&stats);
        total.merge(acc);
    }
    Ok(total.finish())
}

pub fn lemmas(threads: usize) -> Result<LemmaReport, Error> {
    let e = Enumerator::new(4)?;
    let parts = fold_branches(&e, Delivery::Canonical, threads, LemmaAccumulator::new, |acc, t, orbit| acc.observe(t, orbit));
    let mut total = LemmaAccumulator::new();
    for (mut acc, stats) in parts {
        acc.add_stats(&stats);
        total.merge(acc);
    }
    Ok(total.finish())
}

/// Every delivered table with its orbit size, in sequential search order.
pub fn tables(n: usize, delivery: Delivery, threads: usize) -> Result<(Vec<(EnsembleTable, usize)>, EnumerationStats), Error> {
    let e = Enumerator::new(n)?;
    let parts = fold_branches(&e, delivery, threads, Vec::new, |acc, t, orbit| acc.push((t.clone(), orbit)));
    let mut all = Vec::new();
    let mut stats = EnumerationStats::default();
    for (part, s) in parts {
        all.extend(part);
        stats.merge(&s);
    }
    Ok((all, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thread_count_does_not_change_results() {
        let (one, s1) = tables(3, Delivery::All, 1).unwrap();
        let (many, s4) = tables(3, Delivery::All, 4).unwrap();
        assert_eq!(one, many);
        assert_eq!(s1, s4);
        let (seq, _) = ensembles_core::enumerate_ensembles(3, Delivery::All).unwrap();
        assert_eq!(one, seq);
    }
}
