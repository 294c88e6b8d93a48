//! Belief and plausibility of events under the focal-region mass function.
//!
//! Every nonempty focal region carries mass `1/(n+1)`. For an event `B`
//! (any finite union of intervals) the belief counts the regions contained
//! in `B` and the plausibility counts the regions merely touching `B`:
//!
//! * `bel(B) = #{v : A(v) nonempty, A(v) ⊆ B} / (n+1)`
//! * `pl(B)  = #{v : A(v) nonempty, A(v) ∩ B ≠ ∅} / (n+1)`
//!
//! Empty regions (possible after truncation) contribute to neither count,
//! so with `e` empty regions a total mass of `e/(n+1)` sits on no set and
//! the conjugacy `bel(B) = 1 - pl(B^c)` only holds up to that defect. A
//! warning is logged once per query when this happens.

use crate::error::{Error, Result};
use crate::interval::IntervalSet;
use crate::partition::FocalPartition;

/// Numerical slack allowed when checking conjugacy on exact rational counts.
pub const CONJUGACY_TOL: f64 = 1e-10;

/// The `[belief, plausibility]` interval attached to one event.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ImpreciseValue {
    pub belief: f64,
    pub plausibility: f64,
}

impl ImpreciseValue {
    /// Width of the imprecision interval.
    pub fn width(&self) -> f64 {
        self.plausibility - self.belief
    }

    /// True when the event's probability is pinned to a single value.
    pub fn is_precise(&self) -> bool {
        self.belief == self.plausibility
    }
}

fn warn_on_empty_regions(partition: &FocalPartition) {
    let empty = partition.empty_regions();
    if !empty.is_empty() {
        log::warn!(
            "{} of {} focal regions are empty (ranks {:?}); belief and plausibility \
             omit their mass and conjugacy holds only up to {:.4}",
            empty.len(),
            partition.num_regions(),
            empty,
            empty.len() as f64 * partition.mass()
        );
    }
}

/// Lower probability of the event: mass of the focal regions contained in it.
pub fn belief(partition: &FocalPartition, event: &IntervalSet) -> f64 {
    warn_on_empty_regions(partition);
    let hits = partition
        .regions()
        .iter()
        .filter(|r| !r.is_empty() && r.is_subset_of(event))
        .count();
    hits as f64 * partition.mass()
}

/// Upper probability of the event: mass of the focal regions meeting it.
pub fn plausibility(partition: &FocalPartition, event: &IntervalSet) -> f64 {
    warn_on_empty_regions(partition);
    let hits = partition
        .regions()
        .iter()
        .filter(|r| !r.is_empty() && r.intersects(event))
        .count();
    hits as f64 * partition.mass()
}

/// Both bounds in one pass.
pub fn imprecise_probability(partition: &FocalPartition, event: &IntervalSet) -> ImpreciseValue {
    ImpreciseValue {
        belief: belief(partition, event),
        plausibility: plausibility(partition, event),
    }
}

/// Verifies `bel(B) = 1 - pl(B^c)` with the complement taken inside the
/// truncation support. Exact (up to [`CONJUGACY_TOL`]) whenever no region is
/// empty; with empty regions the identity degrades by their total mass and
/// an `AssumptionViolated` error reports the observed defect.
pub fn check_conjugacy(partition: &FocalPartition, event: &IntervalSet) -> Result<()> {
    let (lo, hi) = partition.support();
    let support = IntervalSet::interval(lo, false, hi, false)?;
    let complement = event.complement_within(&support);
    let bel = belief(partition, event);
    let pl_c = plausibility(partition, &complement);
    let defect = (bel - (1.0 - pl_c)).abs();
    let allowance =
        partition.empty_regions().len() as f64 * partition.mass() + CONJUGACY_TOL;
    if defect > allowance {
        return Err(Error::AssumptionViolated(format!(
            "conjugacy defect {defect:.6e} exceeds allowance {allowance:.6e} \
             for event {event}"
        )));
    }
    Ok(())
}
