//! Samples, nonconformity scores, candidate ranks, and the plausibility
//! transducer.
//!
//! Everything downstream reduces to one computation: augment the observed
//! sample `y_1..y_n` with a candidate value `y`, score every element of the
//! augmented bag with a nonconformity measure, and compare the candidate's
//! score against the rest. With scores `t_1..t_n, t_{n+1}`,
//!
//! * `rank = 1 + #{i : t_{n+1} > t_i}` (strict; ties do not count), and
//! * `f_n(y) = #{i : t_{n+1} <= t_i} / (n+1)`,
//!
//! where `i` runs over the whole bag including the candidate itself. The
//! transducer `f_n` is the candidate's conformal p-value: cutting it at a
//! level `alpha` yields prediction sets with guaranteed finite-sample
//! coverage for exchangeable data.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An observed sample of at least two finite real values, in the order given.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "a sample needs at least 2 values, got {}",
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite sample value {bad}")));
        }
        Ok(Sample { values })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Values in ascending order (the original order is kept in `values`).
    pub fn sorted_values(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| a.partial_cmp(b).expect("sample values are finite"));
        v
    }

    /// True when all values are pairwise distinct under exact float equality.
    /// Several constructions (closed-form partitions, atom placement) assume
    /// this; it holds with probability one for continuous data.
    pub fn strictly_distinct(&self) -> bool {
        let sorted = self.sorted_values();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// How nonconforming a value is relative to the rest of the augmented bag.
///
/// The built-in measures:
/// * `Identity`: `t_i = y_i`. Scores ignore the bag entirely; ranks become
///   order statistics and the focal regions have a closed form.
/// * `MeanAbsDeviation`: `t_i = |mean(bag \ {y_i}) - y_i|`, the distance from
///   the leave-one-out mean of the augmented bag.
/// * `Custom`: any function of (bag without the scored element, element).
///   It must be deterministic and permutation-invariant in the bag slice and
///   return finite values; violations surface as invalid-input errors.
#[derive(Clone)]
pub enum NonconformityMeasure {
    Identity,
    MeanAbsDeviation,
    Custom(CustomScoreFn),
}

/// Shared score function of (bag without the scored element, element).
pub type CustomScoreFn = Arc<dyn Fn(&[f64], f64) -> f64 + Send + Sync>;

impl NonconformityMeasure {
    pub fn custom(f: impl Fn(&[f64], f64) -> f64 + Send + Sync + 'static) -> Self {
        NonconformityMeasure::Custom(Arc::new(f))
    }
}

impl fmt::Debug for NonconformityMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonconformityMeasure::Identity => write!(f, "Identity"),
            NonconformityMeasure::MeanAbsDeviation => write!(f, "MeanAbsDeviation"),
            NonconformityMeasure::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// Scores of the augmented bag `y_1..y_n, candidate`, in that order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    scores: Vec<f64>,
    candidate: f64,
}

impl ScoreVector {
    /// All `n+1` scores; the last entry belongs to the candidate.
    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn candidate(&self) -> f64 {
        self.candidate
    }

    pub fn candidate_score(&self) -> f64 {
        *self.scores.last().expect("score vector is never empty")
    }
}

/// Scores the augmented bag `(sample, candidate)` under `measure`.
pub fn compute_scores(
    sample: &Sample,
    candidate: f64,
    measure: &NonconformityMeasure,
) -> Result<ScoreVector> {
    if !candidate.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite candidate value {candidate}")));
    }
    let n = sample.n();
    let values = sample.values();
    let mut scores = Vec::with_capacity(n + 1);
    match measure {
        NonconformityMeasure::Identity => {
            scores.extend_from_slice(values);
            scores.push(candidate);
        }
        NonconformityMeasure::MeanAbsDeviation => {
            // mean(bag \ {y_i}) = (total - y_i) / n over the n remaining values.
            let total: f64 = values.iter().sum::<f64>() + candidate;
            for &y in values {
                scores.push(((total - y) / n as f64 - y).abs());
            }
            scores.push(((total - candidate) / n as f64 - candidate).abs());
        }
        NonconformityMeasure::Custom(f) => {
            let mut bag = Vec::with_capacity(n);
            for i in 0..n {
                bag.clear();
                bag.extend(values.iter().take(i));
                bag.extend(values.iter().skip(i + 1));
                bag.push(candidate);
                scores.push(f(&bag, values[i]));
            }
            scores.push(f(values, candidate));
            if let Some(bad) = scores.iter().find(|s| !s.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "custom measure produced non-finite score {bad}"
                )));
            }
        }
    }
    Ok(ScoreVector { scores, candidate })
}

/// Rank of the candidate's score inside the augmented bag:
/// `1 + #{i : t_{n+1} > t_i}`, with `i` over all `n+1` scores. Strict
/// comparison means ties never push the rank up, so the result lies in
/// `1..=n+1` and equals the usual rank only when scores are distinct.
pub fn rank_of_candidate(scores: &ScoreVector) -> usize {
    let t = scores.candidate_score();
    1 + scores.scores().iter().filter(|&&s| t > s).count()
}

/// The plausibility transducer `f_n(y) = #{i : t_{n+1} <= t_i} / (n+1)`.
/// Values lie in `{1/(n+1), ..., 1}`; the self-comparison always counts.
pub fn transducer(sample: &Sample, measure: &NonconformityMeasure, y: f64) -> Result<f64> {
    let sv = compute_scores(sample, y, measure)?;
    let t = sv.candidate_score();
    let count = sv.scores().iter().filter(|&&s| t <= s).count();
    Ok(count as f64 / (sample.n() + 1) as f64)
}

/// Distribution of `#{i : t_i >= t_{n+1}}` conditional on the multiset of
/// scores, with the candidate slot exchangeable over the bag.
///
/// `multiplicities[j]` counts the j-th smallest distinct score value; they
/// must be positive and sum to `n+1`. The count equals
/// `n+1 - (m_1 + ... + m_{j-1})` exactly when the candidate carries the j-th
/// distinct value, which happens with probability `m_j/(n+1)`. Returned as a
/// map from support value to probability.
pub fn pvalue_pmf_given_bag(multiplicities: &[usize]) -> Result<BTreeMap<usize, f64>> {
    if multiplicities.is_empty() {
        return Err(Error::InvalidInput("empty multiplicity list".into()));
    }
    if multiplicities.contains(&0) {
        return Err(Error::InvalidInput("multiplicities must be positive".into()));
    }
    let total: usize = multiplicities.iter().sum();
    let mut pmf = BTreeMap::new();
    let mut below = 0usize;
    for &m in multiplicities {
        pmf.insert(total - below, m as f64 / total as f64);
        below += m;
    }
    Ok(pmf)
}

/// Exact type-1 error rate of the level-`alpha` prediction set under
/// exchangeable continuous data: `P(f_n(Y_{n+1}) <= alpha)`, which the
/// bag-conditional law above makes `floor(alpha*(n+1))/(n+1)`.
pub fn exact_type1_rate(n: usize, alpha: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("need n >= 2, got {n}")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidInput(format!("alpha must lie in (0,1), got {alpha}")));
    }
    // Distinct scores: every multiplicity is one, the count is uniform on
    // 1..=n+1 and f_n = count/(n+1).
    let pmf = pvalue_pmf_given_bag(&vec![1; n + 1])?;
    let cutoff = alpha * (n + 1) as f64;
    Ok(pmf
        .iter()
        .filter(|(&v, _)| v as f64 <= cutoff)
        .map(|(_, &p)| p)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sample(values: &[f64]) -> Sample {
        Sample::new(values.to_vec()).unwrap()
    }

    #[test]
    fn sample_validation() {
        assert!(Sample::new(vec![1.0]).is_err());
        assert!(Sample::new(vec![1.0, f64::NAN]).is_err());
        assert!(Sample::new(vec![1.0, f64::INFINITY]).is_err());
        assert!(sample(&[3.0, 1.0, 2.0]).strictly_distinct());
        assert!(!sample(&[1.0, 2.0, 1.0]).strictly_distinct());
    }

    #[test]
    fn mean_deviation_scores_two_point_bag() {
        let s = sample(&[4.0, 5.0]);
        let sv = compute_scores(&s, 4.5, &NonconformityMeasure::MeanAbsDeviation).unwrap();
        assert_eq!(sv.scores(), &[0.75, 0.75, 0.0]);
        assert_eq!(rank_of_candidate(&sv), 1);

        let sv = compute_scores(&s, 3.5, &NonconformityMeasure::MeanAbsDeviation).unwrap();
        assert_eq!(sv.scores(), &[0.25, 1.25, 1.0]);
        assert_eq!(rank_of_candidate(&sv), 2);
    }

    #[test]
    fn identity_scores_are_the_values() {
        let s = sample(&[1.0, 2.0, 3.0]);
        let sv = compute_scores(&s, 7.0, &NonconformityMeasure::Identity).unwrap();
        assert_eq!(sv.scores(), &[1.0, 2.0, 3.0, 7.0]);
        assert_eq!(rank_of_candidate(&sv), 4);
    }

    #[test]
    fn rank_ties_do_not_count() {
        let s = sample(&[1.0, 2.0, 3.0]);
        // Candidate equal to a data value: the tie contributes nothing.
        let sv = compute_scores(&s, 2.0, &NonconformityMeasure::Identity).unwrap();
        assert_eq!(rank_of_candidate(&sv), 2);
        let sv = compute_scores(&s, 1.0, &NonconformityMeasure::Identity).unwrap();
        assert_eq!(rank_of_candidate(&sv), 1);
    }

    #[test]
    fn transducer_two_point_worked_values() {
        let s = sample(&[4.0, 5.0]);
        let m = NonconformityMeasure::MeanAbsDeviation;
        assert_eq!(transducer(&s, &m, 4.5).unwrap(), 1.0);
        assert_eq!(transducer(&s, &m, 3.5).unwrap(), 2.0 / 3.0);
        assert_eq!(transducer(&s, &m, 7.0).unwrap(), 1.0 / 3.0);
        assert_eq!(transducer(&s, &m, 2.0).unwrap(), 1.0 / 3.0);
    }

    #[test]
    fn transducer_matches_rank_identity_when_scores_distinct() {
        // f_n(y) = (n+2-rank)/(n+1) whenever all n+1 scores are distinct.
        let s = sample(&[0.3, -1.2, 2.4, 0.9, -0.4]);
        let n = s.n();
        for m in [NonconformityMeasure::Identity, NonconformityMeasure::MeanAbsDeviation] {
            for &y in &[-2.0, -0.7, 0.1, 0.5, 1.4, 3.0] {
                let sv = compute_scores(&s, y, &m).unwrap();
                let mut sorted = sv.scores().to_vec();
                sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                let rank = rank_of_candidate(&sv);
                let f = transducer(&s, &m, y).unwrap();
                assert_relative_eq!(f, (n + 2 - rank) as f64 / (n + 1) as f64);
            }
        }
    }

    #[test]
    fn scores_are_permutation_invariant() {
        let a = sample(&[4.0, 5.0, 6.5, -1.0]);
        let b = sample(&[6.5, -1.0, 5.0, 4.0]);
        for m in [NonconformityMeasure::Identity, NonconformityMeasure::MeanAbsDeviation] {
            for &y in &[0.0, 4.2, 9.0] {
                let sa = compute_scores(&a, y, &m).unwrap();
                let sb = compute_scores(&b, y, &m).unwrap();
                let mut ma = sa.scores().to_vec();
                let mut mb = sb.scores().to_vec();
                ma.sort_by(|x, z| x.partial_cmp(z).unwrap());
                mb.sort_by(|x, z| x.partial_cmp(z).unwrap());
                assert_eq!(ma, mb);
                assert_eq!(rank_of_candidate(&sa), rank_of_candidate(&sb));
                assert_eq!(
                    transducer(&a, &m, y).unwrap(),
                    transducer(&b, &m, y).unwrap()
                );
            }
        }
    }

    #[test]
    fn identity_rank_steps_exactly_at_data_values() {
        let s = sample(&[0.5, 2.0, -1.5, 3.25]);
        let sorted = s.sorted_values();
        let eps = 1e-9;
        for (k, &y) in sorted.iter().enumerate() {
            let below = compute_scores(&s, y - eps, &NonconformityMeasure::Identity).unwrap();
            let above = compute_scores(&s, y + eps, &NonconformityMeasure::Identity).unwrap();
            assert_eq!(rank_of_candidate(&below), k + 1);
            assert_eq!(rank_of_candidate(&above), k + 2);
        }
    }

    #[test]
    fn custom_measure_runs_and_rejects_non_finite() {
        let s = sample(&[1.0, 2.0, 3.0]);
        let median_dist = NonconformityMeasure::custom(|bag, y| {
            let mut v = bag.to_vec();
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            (v[v.len() / 2] - y).abs()
        });
        assert!(transducer(&s, &median_dist, 2.1).is_ok());
        let bad = NonconformityMeasure::custom(|_, _| f64::NAN);
        assert!(matches!(
            compute_scores(&s, 0.0, &bad),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn pmf_worked_cases() {
        let pmf = pvalue_pmf_given_bag(&[1, 1, 1]).unwrap();
        assert_eq!(pmf.len(), 3);
        assert_relative_eq!(pmf[&3], 1.0 / 3.0);
        assert_relative_eq!(pmf[&2], 1.0 / 3.0);
        assert_relative_eq!(pmf[&1], 1.0 / 3.0);

        let pmf = pvalue_pmf_given_bag(&[2, 1]).unwrap();
        assert_eq!(pmf.len(), 2);
        assert_relative_eq!(pmf[&3], 2.0 / 3.0);
        assert_relative_eq!(pmf[&1], 1.0 / 3.0);

        let pmf = pvalue_pmf_given_bag(&[3]).unwrap();
        assert_eq!(pmf.len(), 1);
        assert_relative_eq!(pmf[&3], 1.0);
    }

    #[test]
    fn pmf_rejects_bad_multiplicities() {
        assert!(pvalue_pmf_given_bag(&[]).is_err());
        assert!(pvalue_pmf_given_bag(&[2, 0, 1]).is_err());
    }

    #[test]
    fn pmf_probabilities_sum_to_one() {
        for mults in [vec![1usize; 7], vec![3, 2, 2], vec![5, 1], vec![2, 2, 2, 1]] {
            let pmf = pvalue_pmf_given_bag(&mults).unwrap();
            let total: f64 = pmf.values().sum();
            assert_relative_eq!(total, 1.0, epsilon = 1e-12);
        }
    }

    /// Brute-force oracle: place each bag element in the candidate slot over
    /// all (n+1)! orderings and tally `#{t_i >= t_{n+1}}` from the last slot.
    #[test]
    fn pmf_matches_exhaustive_enumeration() {
        use itertools::Itertools;
        let cases: &[(&[f64], &[usize])] = &[
            (&[1.0, 1.0, 2.0], &[2, 1]),
            (&[1.0, 2.0, 3.0], &[1, 1, 1]),
            (&[5.0, 5.0, 5.0], &[3]),
            (&[1.0, 1.0, 2.0, 2.0], &[2, 2]),
            (&[0.0, 1.0, 1.0, 3.0, 3.0], &[1, 2, 2]),
        ];
        for (bag, mults) in cases {
            let k = bag.len();
            let mut tally: BTreeMap<usize, usize> = BTreeMap::new();
            let mut total = 0usize;
            for perm in bag.iter().permutations(k) {
                let t_cand = *perm[k - 1];
                let count = perm.iter().filter(|&&&t| t >= t_cand).count();
                *tally.entry(count).or_insert(0) += 1;
                total += 1;
            }
            let pmf = pvalue_pmf_given_bag(mults).unwrap();
            assert_eq!(tally.len(), pmf.len());
            for (v, c) in tally {
                assert_relative_eq!(c as f64 / total as f64, pmf[&v], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn exact_rate_worked_values() {
        assert_relative_eq!(exact_type1_rate(100, 0.1).unwrap(), 10.0 / 101.0);
        assert_relative_eq!(exact_type1_rate(100, 0.05).unwrap(), 5.0 / 101.0);
        assert_relative_eq!(exact_type1_rate(100, 0.2).unwrap(), 20.0 / 101.0);
        assert!(exact_type1_rate(100, 0.0).is_err());
        assert!(exact_type1_rate(100, 1.0).is_err());
    }
}
