//! Focal partitions: the candidate-rank geometry of the real line.
//!
//! Fix a sample and a nonconformity measure. Sweeping a candidate value `y`
//! across the line, its rank takes values in `1..=n+1`; the region
//! `A(v) = {y : rank(y) = v}` is the v-th focal region, and each region
//! carries mass `1/(n+1)` under the rank-based belief structure. The regions
//! are truncated to finite bounds `[kappa_min, kappa_max]` so that densities
//! can be defined on them later.
//!
//! Two constructions are provided:
//!
//! * [`FocalPartition::identity`]: for the identity measure the regions have
//!   a closed form on sorted distinct values `Y_(1) < ... < Y_(n)`:
//!   `A(1) = {Y_(1)}`, `A(v) = (Y_(v-1), Y_(v))` for `v = 2..n`, and
//!   `A(n+1) = {Y_(n)}`. The two boundary singletons are a truncation
//!   convention: untruncated, `A(1)` and `A(n+1)` are the unbounded tails,
//!   and clipping to `[Y_(1), Y_(n)]` leaves exactly the endpoints to carry
//!   their mass.
//! * [`FocalPartition::numeric`]: for any measure, the rank is evaluated on
//!   a uniform grid over the bounds; every change point is localized by
//!   bisection on the integer-valued rank function. Adjacent evaluations that
//!   jump by more than one rank are subdivided first, so regions thinner than
//!   the grid step are still recovered down to the refinement tolerance.
//!   Regions never observed at that resolution are left empty and flagged.
//!
//! Interior boundary points between open regions belong to no region; they
//! are Lebesgue-null and the strict-rank convention at ties makes any
//! assignment arbitrary.

use crate::error::{Error, Result};
use crate::interval::{IntervalSet, Piece};
#[cfg(debug_assertions)]
use crate::scores::transducer;
use crate::scores::{compute_scores, rank_of_candidate, NonconformityMeasure, Sample};

/// Grid points per region used by the default numeric construction.
pub const DEFAULT_GRID_PER_REGION: usize = 64;
/// Refinement tolerance relative to the truncation span.
pub const DEFAULT_REFINE_REL_TOL: f64 = 1e-10;

/// Grid size used by [`FocalPartition::with_defaults`] for the numeric
/// construction: at least [`DEFAULT_GRID_PER_REGION`] points per region, and
/// at least `8 (n+1)^2` overall. The quadratic floor matters for scores that
/// change slowly near the sample (the mean-deviation rank has a lowest-rank
/// region whose width shrinks like `range/n^2`; a grid linear in `n` starts
/// skipping over it around `n = 30`).
pub fn default_grid_points(n: usize) -> usize {
    (DEFAULT_GRID_PER_REGION * (n + 1)).max(8 * (n + 1) * (n + 1))
}

/// The rank regions `A(1)..A(n+1)` of one (sample, measure) pair, truncated
/// to `[kappa_min, kappa_max]`.
#[derive(Debug, Clone)]
pub struct FocalPartition {
    regions: Vec<IntervalSet>,
    kappa_min: f64,
    kappa_max: f64,
    n: usize,
}

impl FocalPartition {
    /// Closed-form partition for the identity measure, truncated to the data
    /// range. Requires strictly distinct values.
    pub fn identity(sample: &Sample) -> Result<Self> {
        if !sample.strictly_distinct() {
            return Err(Error::AssumptionViolated(
                "identity partition needs strictly distinct values".into(),
            ));
        }
        let sorted = sample.sorted_values();
        let n = sample.n();
        let mut regions = Vec::with_capacity(n + 1);
        regions.push(IntervalSet::point(sorted[0])?);
        for v in 2..=n {
            regions.push(IntervalSet::interval(sorted[v - 2], true, sorted[v - 1], true)?);
        }
        regions.push(IntervalSet::point(sorted[n - 1])?);
        Ok(FocalPartition {
            regions,
            kappa_min: sorted[0],
            kappa_max: sorted[n - 1],
            n,
        })
    }

    /// Grid-scan construction for an arbitrary measure.
    ///
    /// The rank is evaluated at `grid_points` equally spaced candidates over
    /// `bounds`; each rank change between neighbouring evaluations is
    /// localized by bisection to a width of at most `refine_tol`, and jumps
    /// of more than one rank are subdivided until every change is a unit
    /// step or narrower than the tolerance. Run intervals are open at both
    /// ends: localized boundaries and the truncation bounds themselves are
    /// null points assigned to no region. Ranks absent at this resolution
    /// yield empty regions (see [`FocalPartition::empty_regions`]).
    pub fn numeric(
        sample: &Sample,
        measure: &NonconformityMeasure,
        bounds: (f64, f64),
        grid_points: usize,
        refine_tol: f64,
    ) -> Result<Self> {
        let (lo, hi) = bounds;
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::InvalidInput(format!(
                "truncation bounds must be finite with lo < hi, got ({lo}, {hi})"
            )));
        }
        if grid_points < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 grid points, got {grid_points}"
            )));
        }
        if !refine_tol.is_finite() || refine_tol <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "refinement tolerance must be positive and finite, got {refine_tol}"
            )));
        }
        let n = sample.n();
        let rank_at = |y: f64| -> Result<usize> {
            Ok(rank_of_candidate(&compute_scores(sample, y, measure)?))
        };

        // Initial scan.
        let span = hi - lo;
        let mut points = Vec::with_capacity(grid_points);
        for i in 0..grid_points {
            let y = lo + span * (i as f64 / (grid_points - 1) as f64);
            points.push((y, rank_at(y)?));
        }

        // Localize every rank change. Processing the stack left-to-right
        // keeps the emitted boundaries sorted.
        let mut boundaries: Vec<f64> = Vec::new();
        for w in points.windows(2) {
            let ((x1, r1), (x2, r2)) = (w[0], w[1]);
            if r1 == r2 {
                continue;
            }
            let mut stack = vec![(x1, r1, x2, r2)];
            while let Some((a, ra, b, rb)) = stack.pop() {
                let m = 0.5 * (a + b);
                if b - a <= refine_tol || m <= a || m >= b {
                    boundaries.push(m);
                    continue;
                }
                let rm = rank_at(m)?;
                if rm == ra {
                    stack.push((m, ra, b, rb));
                } else if rm == rb {
                    stack.push((a, ra, m, rm));
                } else {
                    // A region invisible on the coarse grid: resolve both sides.
                    stack.push((m, rm, b, rb));
                    stack.push((a, ra, m, rm));
                }
            }
        }
        boundaries.dedup();

        // Assemble open runs between consecutive boundaries; the run's rank
        // is read off at its midpoint.
        let mut region_pieces: Vec<Vec<Piece>> = vec![Vec::new(); n + 1];
        let mut cursor = lo;
        for b in boundaries.iter().copied().chain(std::iter::once(hi)) {
            if b <= cursor {
                continue;
            }
            let rank = rank_at(0.5 * (cursor + b))?;
            debug_assert!((1..=n + 1).contains(&rank));
            region_pieces[rank - 1].push(Piece::new(cursor, true, b, true)?);
            cursor = b;
        }
        let regions = region_pieces.into_iter().map(IntervalSet::from_pieces).collect();
        Ok(FocalPartition { regions, kappa_min: lo, kappa_max: hi, n })
    }

    /// Default construction: the closed form for the identity measure; for
    /// everything else, the numeric scan over the data range extended by one
    /// range width on each side with [`default_grid_points`] evaluations and
    /// a relative tolerance of `1e-10` of the span.
    pub fn with_defaults(sample: &Sample, measure: &NonconformityMeasure) -> Result<Self> {
        match measure {
            NonconformityMeasure::Identity => FocalPartition::identity(sample),
            _ => {
                let (min, max) = (sample.min(), sample.max());
                let range = max - min;
                if range == 0.0 {
                    return Err(Error::AssumptionViolated(
                        "all sample values are equal; no default truncation bounds exist".into(),
                    ));
                }
                let bounds = (min - range, max + range);
                let tol = DEFAULT_REFINE_REL_TOL * (bounds.1 - bounds.0);
                FocalPartition::numeric(
                    sample,
                    measure,
                    bounds,
                    default_grid_points(sample.n()),
                    tol,
                )
            }
        }
    }

    /// Builds a partition from explicit regions. They must be pairwise
    /// disjoint and contained in the bounds; `regions.len()` is `n+1`.
    pub fn from_regions(regions: Vec<IntervalSet>, bounds: (f64, f64)) -> Result<Self> {
        let (lo, hi) = bounds;
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::InvalidInput(format!(
                "truncation bounds must be finite with lo < hi, got ({lo}, {hi})"
            )));
        }
        if regions.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "a partition needs at least 3 regions (n >= 2), got {}",
                regions.len()
            )));
        }
        let support = IntervalSet::interval(lo, false, hi, false)?;
        for (i, r) in regions.iter().enumerate() {
            if !r.is_subset_of(&support) {
                return Err(Error::SupportMismatch(format!(
                    "region {} is not contained in the bounds [{lo}, {hi}]",
                    i + 1
                )));
            }
            for (j, q) in regions.iter().enumerate().skip(i + 1) {
                if r.intersects(q) {
                    return Err(Error::InvalidInput(format!(
                        "regions {} and {} overlap",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let n = regions.len() - 1;
        Ok(FocalPartition { regions, kappa_min: lo, kappa_max: hi, n })
    }

    /// Sample size `n`; the partition has `n+1` regions.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_regions(&self) -> usize {
        self.regions.len()
    }

    /// The region `A(v)`, `v` in `1..=n+1`.
    pub fn region(&self, v: usize) -> Result<&IntervalSet> {
        self.regions
            .get(v.wrapping_sub(1))
            .ok_or_else(|| Error::InvalidInput(format!(
                "region index {v} outside 1..={}",
                self.n + 1
            )))
    }

    pub fn regions(&self) -> &[IntervalSet] {
        &self.regions
    }

    /// Mass carried by every region: `1/(n+1)`.
    pub fn mass(&self) -> f64 {
        1.0 / (self.n + 1) as f64
    }

    pub fn support(&self) -> (f64, f64) {
        (self.kappa_min, self.kappa_max)
    }

    /// Indices `v` of regions that came out empty (possible after truncation
    /// or when a rank was never observed on the scan grid).
    pub fn empty_regions(&self) -> Vec<usize> {
        self.regions
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.is_empty().then_some(i + 1))
            .collect()
    }

    /// Union of the first `k` regions: the rank-`k` conformal prediction set
    /// `Omega(k) = A(1) ∪ ... ∪ A(k)`. Nested in `k` by construction.
    pub fn cp_set(&self, k: usize) -> Result<IntervalSet> {
        if !(1..=self.n + 1).contains(&k) {
            return Err(Error::InvalidInput(format!(
                "cp_set index {k} outside 1..={}",
                self.n + 1
            )));
        }
        let mut out = IntervalSet::empty();
        for r in &self.regions[..k] {
            out = out.union(r);
        }
        Ok(out)
    }
}

/// The level-`alpha` prediction set `{y : f_n(y) > alpha}` expressed through
/// the partition: the union of the first `k_alpha` regions, where
/// `k_alpha = max{k : (n+2-k)/(n+1) > alpha}`. The identity with the
/// transducer sublevel set holds when scores are distinct; at ties the
/// transducer can only exceed the rank-based value, so the returned set is
/// conservative there.
pub fn prediction_set(
    sample: &Sample,
    measure: &NonconformityMeasure,
    alpha: f64,
    partition: &FocalPartition,
) -> Result<IntervalSet> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidInput(format!("alpha must lie in (0,1), got {alpha}")));
    }
    if partition.n() != sample.n() {
        return Err(Error::SupportMismatch(format!(
            "partition was built for n={}, sample has n={}",
            partition.n(),
            sample.n()
        )));
    }
    let n = sample.n();
    let k_alpha = (1..=n + 1)
        .rev()
        .find(|&k| (n + 2 - k) as f64 / (n + 1) as f64 > alpha)
        .expect("k=1 always satisfies the strict inequality for alpha < 1");

    // Spot-check in debug builds: at interior points of every included
    // region the transducer must exceed alpha (ties only raise it).
    #[cfg(debug_assertions)]
    for v in 1..=k_alpha {
        let region = partition.region(v)?;
        if let Some(p) = region.pieces().iter().find(|p| !p.is_point()) {
            let mid = 0.5 * (p.lo + p.hi);
            debug_assert!(
                transducer(sample, measure, mid)? > alpha,
                "transducer at {mid} does not exceed alpha={alpha} in region {v}"
            );
        }
    }
    #[cfg(not(debug_assertions))]
    let _ = measure;

    partition.cp_set(k_alpha)
}
