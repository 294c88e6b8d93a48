//! The maximum-entropy precise distribution over a focal partition, with
//! exact evaluation and sampling.
//!
//! Among all probability measures that put mass `1/(n+1)` on each focal
//! region, differential entropy (atoms excluded) is maximized by the one
//! that is flat within every region: singleton regions become atoms of mass
//! `1/(n+1)` and a region of total length `lambda` gets constant density
//! `1/(lambda (n+1))` across its pieces. This module builds that
//! distribution, integrates it over interval events, inverts its CDF, and
//! samples from it by the two-stage scheme (uniform region index, then
//! uniform draw within the region).
//!
//! A companion sampler replaces the region `A(v*)` in the second stage with
//! the nested union `Omega(v*) = A(1) ∪ ... ∪ A(v*)`. The two agree for
//! unimodal data but differ visibly for well-separated mixtures: the nested
//! version pours mass into the valley between modes.

use rand::Rng;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::interval::IntervalSet;
use crate::partition::FocalPartition;

/// How to draw uniformly within one region (or one nested union).
#[derive(Debug, Clone)]
enum RegionLaw {
    /// Zero-length set: uniform over its points.
    Points(Vec<f64>),
    /// Positive-length set: piece proportional to length, then uniform.
    Spread { pieces: Vec<(f64, f64)>, total_len: f64 },
}

impl RegionLaw {
    fn from_set(set: &IntervalSet) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::TiePathology(
                "cannot spread mass over an empty region".into(),
            ));
        }
        let total_len = set.lebesgue();
        if !total_len.is_finite() {
            return Err(Error::TruncationRequired(
                "a region has infinite length; truncate the partition first".into(),
            ));
        }
        if total_len == 0.0 {
            Ok(RegionLaw::Points(set.pieces().iter().map(|p| p.lo).collect()))
        } else {
            let pieces = set
                .pieces()
                .iter()
                .filter(|p| !p.is_point())
                .map(|p| (p.lo, p.hi))
                .collect();
            Ok(RegionLaw::Spread { pieces, total_len })
        }
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            RegionLaw::Points(pts) => {
                if pts.len() == 1 {
                    pts[0]
                } else {
                    pts[rng.gen_range(0..pts.len())]
                }
            }
            RegionLaw::Spread { pieces, total_len } => {
                let mut u = rng.gen::<f64>() * total_len;
                for &(lo, hi) in pieces {
                    let len = hi - lo;
                    if u < len {
                        return (lo + u).min(hi);
                    }
                    u -= len;
                }
                // Rounding pushed u past the total; take the far end.
                pieces.last().map(|&(_, hi)| hi).unwrap_or(*total_len)
            }
        }
    }
}

/// The flat-per-region distribution: atoms plus piecewise-constant density.
#[derive(Debug, Clone)]
pub struct MaxEntropyDistribution {
    /// `(location, mass)`, sorted by location.
    atoms: Vec<(f64, f64)>,
    /// `(lo, hi, density)`, sorted by `lo`; open/closed endpoints are
    /// irrelevant to integrals.
    pieces: Vec<(f64, f64, f64)>,
    support: (f64, f64),
    laws: Vec<RegionLaw>,
    n: usize,
}

impl MaxEntropyDistribution {
    /// Spreads each region's `1/(n+1)` mass uniformly over the region.
    ///
    /// Fails with a tie-pathology error if any region is empty and a
    /// truncation-required error if any region has infinite length. A point
    /// piece inside a positive-length region receives no mass: placing any
    /// on it would only lower the entropy.
    pub fn from_partition(partition: &FocalPartition) -> Result<Self> {
        let empties = partition.empty_regions();
        if !empties.is_empty() {
            return Err(Error::TiePathology(format!(
                "focal regions {empties:?} are empty; the flat-per-region \
                 distribution is undefined (widen the truncation bounds or \
                 check for tied values)"
            )));
        }
        let n = partition.n();
        let mass = partition.mass();
        let mut atoms = Vec::new();
        let mut pieces = Vec::new();
        let mut laws = Vec::with_capacity(n + 1);
        for v in 1..=n + 1 {
            let region = partition.region(v)?;
            let law = RegionLaw::from_set(region)?;
            match &law {
                RegionLaw::Points(pts) => {
                    let each = mass / pts.len() as f64;
                    atoms.extend(pts.iter().map(|&x| (x, each)));
                }
                RegionLaw::Spread { pieces: ps, total_len } => {
                    let density = mass / total_len;
                    pieces.extend(ps.iter().map(|&(lo, hi)| (lo, hi, density)));
                }
            }
            laws.push(law);
        }
        atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        pieces.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        Ok(MaxEntropyDistribution {
            atoms,
            pieces,
            support: partition.support(),
            laws,
            n,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    /// Point masses `(location, mass)`, ordered by location.
    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    /// Constant-density stretches `(lo, hi, density)`, ordered by `lo`.
    pub fn pieces(&self) -> &[(f64, f64, f64)] {
        &self.pieces
    }

    /// Probability of an interval-union event: atom masses for contained
    /// atoms (endpoint openness respected) plus density times overlap
    /// length.
    pub fn probability(&self, event: &IntervalSet) -> f64 {
        let from_atoms: f64 = self
            .atoms
            .iter()
            .filter(|&&(x, _)| event.contains(x))
            .map(|&(_, m)| m)
            .sum();
        let from_pieces: f64 = self
            .pieces
            .iter()
            .map(|&(lo, hi, d)| d * event.overlap_len(lo, hi))
            .sum();
        from_atoms + from_pieces
    }

    /// `P((-inf, y])`.
    pub fn cdf(&self, y: f64) -> f64 {
        debug_assert!(!y.is_nan());
        let from_atoms: f64 = self
            .atoms
            .iter()
            .take_while(|&&(x, _)| x <= y)
            .map(|&(_, m)| m)
            .sum();
        let from_pieces: f64 = self
            .pieces
            .iter()
            .map(|&(lo, hi, d)| d * (y.min(hi) - lo).max(0.0))
            .sum();
        (from_atoms + from_pieces).min(1.0)
    }

    /// Generalized inverse of the CDF: the smallest `y` with `cdf(y) >= q`.
    pub fn quantile(&self, q: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::InvalidInput(format!(
                "quantile level must lie in [0,1], got {q}"
            )));
        }
        // Merge atoms and pieces in location order; an atom at a piece's
        // left end jumps before the piece accumulates.
        let mut ai = self.atoms.iter().peekable();
        let mut pi = self.pieces.iter().peekable();
        let mut cum = 0.0;
        let mut last_end = self.support.0;
        loop {
            let take_atom = match (ai.peek(), pi.peek()) {
                (Some(&&(x, _)), Some(&&(lo, _, _))) => x <= lo,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if take_atom {
                let &(x, m) = ai.next().unwrap();
                if q <= cum + m {
                    return Ok(x);
                }
                cum += m;
                last_end = x;
            } else {
                let &(lo, hi, d) = pi.next().unwrap();
                let m = d * (hi - lo);
                if q <= cum + m {
                    return Ok((lo + (q - cum) / d).min(hi));
                }
                cum += m;
                last_end = hi;
            }
        }
        Ok(last_end)
    }

    /// One draw by the two-stage scheme: region index uniform on
    /// `{1..n+1}`, then uniform within that region.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let v = rng.gen_range(0..self.laws.len());
        self.laws[v].draw(rng)
    }

    /// Differential entropy with atoms excluded: the closed form
    /// `sum_v (1/(n+1)) ln(lambda_v (n+1))` over positive-length regions.
    pub fn differential_entropy(&self) -> f64 {
        let mass = 1.0 / (self.n + 1) as f64;
        self.laws
            .iter()
            .filter_map(|law| match law {
                RegionLaw::Spread { total_len, .. } => Some(mass * (total_len / mass).ln()),
                RegionLaw::Points(_) => None,
            })
            .sum()
    }
}

impl Serialize for MaxEntropyDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("MaxEntropyDistribution", 3)?;
        s.serialize_field("atoms", &self.atoms)?;
        s.serialize_field("pieces", &self.pieces)?;
        s.serialize_field("support", &[self.support.0, self.support.1])?;
        s.end()
    }
}

/// The nested-union variant of the two-stage sampler: stage two draws
/// uniformly over `Omega(v*) = A(1) ∪ ... ∪ A(v*)` instead of `A(v*)`.
/// Atoms inside a positive-length union get length-proportional (zero)
/// weight; a zero-length union falls back to uniform over its points.
#[derive(Debug, Clone)]
pub struct CpAnalogueSampler {
    laws: Vec<RegionLaw>,
}

impl CpAnalogueSampler {
    pub fn new(partition: &FocalPartition) -> Result<Self> {
        let laws = (1..=partition.num_regions())
            .map(|k| RegionLaw::from_set(&partition.cp_set(k)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(CpAnalogueSampler { laws })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let k = rng.gen_range(0..self.laws.len());
        self.laws[k].draw(rng)
    }
}

/// Convenience one-shot form of [`CpAnalogueSampler`].
pub fn cp_analogue_sample<R: Rng + ?Sized>(
    partition: &FocalPartition,
    rng: &mut R,
) -> Result<f64> {
    Ok(CpAnalogueSampler::new(partition)?.sample(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scores::{NonconformityMeasure, Sample};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn identity_partition(values: &[f64]) -> FocalPartition {
        FocalPartition::identity(&Sample::new(values.to_vec()).unwrap()).unwrap()
    }

    fn two_point_meandev_partition() -> FocalPartition {
        let s = Sample::new(vec![4.0, 5.0]).unwrap();
        FocalPartition::numeric(&s, &NonconformityMeasure::MeanAbsDeviation, (0.0, 9.0), 192, 9e-10)
            .unwrap()
    }

    fn set(s: &str) -> IntervalSet {
        s.parse().unwrap()
    }

    #[test]
    fn three_point_identity_shape() {
        let med = MaxEntropyDistribution::from_partition(&identity_partition(&[1.0, 2.0, 3.0]))
            .unwrap();
        assert_eq!(med.atoms(), &[(1.0, 0.25), (3.0, 0.25)]);
        assert_eq!(med.pieces(), &[(1.0, 2.0, 0.25), (2.0, 3.0, 0.25)]);
        assert_eq!(med.support(), (1.0, 3.0));
        // Direct integration up to 2.5.
        assert!((med.probability(&set("(-inf,2.5]")) - 0.625).abs() < 1e-12);
        assert!((med.cdf(2.5) - 0.625).abs() < 1e-12);
    }

    #[test]
    fn two_point_identity_open_event_excludes_atoms() {
        let med =
            MaxEntropyDistribution::from_partition(&identity_partition(&[4.0, 5.0])).unwrap();
        let third = 1.0 / 3.0;
        assert_eq!(med.atoms(), &[(4.0, third), (5.0, third)]);
        assert!((med.probability(&set("(4,5)")) - third).abs() < 1e-12);
        assert!((med.probability(&set("[4,5]")) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mean_deviation_densities_step_down_in_rank() {
        let med = MaxEntropyDistribution::from_partition(&two_point_meandev_partition()).unwrap();
        assert!(med.atoms().is_empty());
        // Density by stretch: 1/18 on (0,3), 1/6 on (3,4), 1/3 on (4,5),
        // 1/6 on (5,6), 1/18 on (6,9).
        let want = [
            (0.0, 3.0, 1.0 / 18.0),
            (3.0, 4.0, 1.0 / 6.0),
            (4.0, 5.0, 1.0 / 3.0),
            (5.0, 6.0, 1.0 / 6.0),
            (6.0, 9.0, 1.0 / 18.0),
        ];
        assert_eq!(med.pieces().len(), want.len());
        for ((lo, hi, d), (wlo, whi, wd)) in med.pieces().iter().zip(want) {
            assert!((lo - wlo).abs() < 1e-8, "piece lo {lo} vs {wlo}");
            assert!((hi - whi).abs() < 1e-8, "piece hi {hi} vs {whi}");
            assert!((d - wd).abs() < 1e-8, "density {d} vs {wd}");
        }
        // Total mass in the worked example.
        assert!((med.probability(&set("(0,9)")) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn every_region_carries_equal_mass() {
        let s = Sample::new(vec![0.3, -1.2, 2.4, 0.9, -0.4]).unwrap();
        for m in [NonconformityMeasure::Identity, NonconformityMeasure::MeanAbsDeviation] {
            let p = FocalPartition::with_defaults(&s, &m).unwrap();
            let med = MaxEntropyDistribution::from_partition(&p).unwrap();
            for v in 1..=p.num_regions() {
                let prob = med.probability(p.region(v).unwrap());
                assert!(
                    (prob - p.mass()).abs() < 1e-12,
                    "region {v} mass {prob} vs {}",
                    p.mass()
                );
            }
        }
    }

    #[test]
    fn empty_region_is_a_tie_pathology() {
        let s = Sample::new(vec![4.0, 5.0]).unwrap();
        let clipped = FocalPartition::numeric(
            &s,
            &NonconformityMeasure::MeanAbsDeviation,
            (4.1, 4.9),
            64,
            1e-10,
        )
        .unwrap();
        assert!(matches!(
            MaxEntropyDistribution::from_partition(&clipped),
            Err(Error::TiePathology(_))
        ));
    }

    #[test]
    fn quantile_inverts_the_cdf() {
        let med = MaxEntropyDistribution::from_partition(&identity_partition(&[1.0, 2.0, 3.0]))
            .unwrap();
        // Inside the atom at 1.
        assert_eq!(med.quantile(0.1).unwrap(), 1.0);
        assert_eq!(med.quantile(0.25).unwrap(), 1.0);
        // Halfway through (1,2): q = 0.25 + 0.125.
        assert!((med.quantile(0.375).unwrap() - 1.5).abs() < 1e-12);
        assert!((med.quantile(0.625).unwrap() - 2.5).abs() < 1e-12);
        // Top of the continuous part and the far atom.
        assert!((med.quantile(0.75).unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(med.quantile(1.0).unwrap(), 3.0);
        assert!(med.quantile(-0.1).is_err());
        assert!(med.quantile(1.5).is_err());
        // Round trip on the continuous stretch.
        for q in [0.3, 0.4, 0.45, 0.55, 0.6, 0.7] {
            let y = med.quantile(q).unwrap();
            assert!((med.cdf(y) - q).abs() < 1e-12, "cdf(quantile({q}))");
        }
    }

    #[test]
    fn sampler_hits_atom_mass_and_cdf() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let med =
            MaxEntropyDistribution::from_partition(&identity_partition(&[4.0, 5.0])).unwrap();
        let reps = 30_000;
        let mut at_four = 0usize;
        for _ in 0..reps {
            if med.sample(&mut rng) == 4.0 {
                at_four += 1;
            }
        }
        let freq = at_four as f64 / reps as f64;
        assert!((freq - 1.0 / 3.0).abs() < 0.01, "atom frequency {freq}");

        let med3 = MaxEntropyDistribution::from_partition(&identity_partition(&[1.0, 2.0, 3.0]))
            .unwrap();
        let below = (0..reps).filter(|_| med3.sample(&mut rng) <= 2.5).count();
        let freq = below as f64 / reps as f64;
        assert!((freq - 0.625).abs() < 0.01, "empirical cdf at 2.5 is {freq}");
    }

    #[test]
    fn samples_stay_inside_the_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let med = MaxEntropyDistribution::from_partition(&two_point_meandev_partition()).unwrap();
        for _ in 0..2_000 {
            let y = med.sample(&mut rng);
            assert!((0.0..=9.0).contains(&y));
        }
    }

    #[test]
    fn entropy_closed_form_and_maximality() {
        let med = MaxEntropyDistribution::from_partition(&two_point_meandev_partition()).unwrap();
        let third = 1.0 / 3.0;
        let want = third * (3.0f64.ln() + 6.0f64.ln() + 18.0f64.ln());
        assert!((med.differential_entropy() - want).abs() < 1e-9);

        // Atoms are excluded from the identity-partition entropy.
        let med3 = MaxEntropyDistribution::from_partition(&identity_partition(&[1.0, 2.0, 3.0]))
            .unwrap();
        assert!((med3.differential_entropy() - 0.5 * 4.0f64.ln()).abs() < 1e-12);

        // No member of the credal set with the same per-region masses but a
        // tilted density within some region beats the flat one: tilt each
        // piece into two halves with densities d(1±delta) and compare.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let flat = med.differential_entropy();
        for _ in 0..200 {
            let mut perturbed = 0.0;
            for &(lo, hi, d) in med.pieces() {
                let delta: f64 = rng.gen_range(0.01..0.99);
                let half = 0.5 * (hi - lo);
                for tilt in [1.0 + delta, 1.0 - delta] {
                    let dd = d * tilt;
                    perturbed -= half * dd * dd.ln();
                }
            }
            assert!(
                perturbed <= flat + 1e-9,
                "tilted member beat the flat one: {perturbed} > {flat}"
            );
        }
    }

    #[test]
    fn json_shape_is_stable() {
        let med = MaxEntropyDistribution::from_partition(&identity_partition(&[1.0, 2.0, 3.0]))
            .unwrap();
        let json = serde_json::to_string(&med).unwrap();
        assert_eq!(
            json,
            r#"{"atoms":[[1.0,0.25],[3.0,0.25]],"pieces":[[1.0,2.0,0.25],[2.0,3.0,0.25]],"support":[1.0,3.0]}"#
        );
    }

    #[test]
    fn nested_union_sampler_fills_low_rank_sets() {
        // Identity partition of {1,2,3}: the rank-1 union is the bare atom
        // {1}, so one quarter of the draws are exactly 1; unions of higher
        // rank spread over the continuous span where the atom is null.
        let p = identity_partition(&[1.0, 2.0, 3.0]);
        let sampler = CpAnalogueSampler::new(&p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let reps = 40_000;
        let ones = (0..reps).filter(|_| sampler.sample(&mut rng) == 1.0).count();
        let freq = ones as f64 / reps as f64;
        assert!((freq - 0.25).abs() < 0.01, "atom-only union frequency {freq}");

        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let y = cp_analogue_sample(&p, &mut rng).unwrap();
        assert!((1.0..=3.0).contains(&y));
    }

    #[test]
    fn nested_union_sampler_rejects_empty_unions() {
        // Clipping empties rank 2 and 3 but keeps rank 1, so the unions are
        // fine; clipping away rank 1 breaks the first union.
        let s = Sample::new(vec![4.0, 5.0]).unwrap();
        let p = FocalPartition::numeric(
            &s,
            &NonconformityMeasure::MeanAbsDeviation,
            (5.5, 5.9),
            64,
            1e-10,
        )
        .unwrap();
        assert!(p.region(1).unwrap().is_empty());
        assert!(matches!(
            CpAnalogueSampler::new(&p),
            Err(Error::TiePathology(_))
        ));
    }
}
