//! Small statistics used by the tests and the Monte-Carlo harness:
//! Kolmogorov-Smirnov distances and standard errors.

/// One-sample KS distance between the empirical CDF of `samples` and a
/// reference CDF. The sup is attained at a sample point, approached from
/// the left or the right, so both one-sided gaps are checked per point.
///
/// Panics on an empty slice or non-finite values (test instrumentation, not
/// a validated public API).
pub fn ks_one_sample<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    assert!(!samples.is_empty(), "KS distance of an empty sample");
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).expect("non-finite sample"));
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    d
}

/// Two-sample KS distance with ties handled by advancing both empirical
/// CDFs over the full tie group before comparing.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    assert!(!a.is_empty() && !b.is_empty(), "KS distance of an empty sample");
    let mut xa = a.to_vec();
    let mut xb = b.to_vec();
    xa.sort_by(|x, y| x.partial_cmp(y).expect("non-finite sample"));
    xb.sort_by(|x, y| x.partial_cmp(y).expect("non-finite sample"));
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < xa.len() || j < xb.len() {
        let x = match (xa.get(i), xb.get(j)) {
            (Some(&u), Some(&v)) => u.min(v),
            (Some(&u), None) => u,
            (None, Some(&v)) => v,
            (None, None) => break,
        };
        while i < xa.len() && xa[i] == x {
            i += 1;
        }
        while j < xb.len() && xb[j] == x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Sample mean and its standard error (unbiased variance, `n-1`).
pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    assert!(xs.len() >= 2, "standard error needs at least two values");
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Standard error of an empirical proportion out of `n` binary trials.
pub fn proportion_se(p_hat: f64, n: usize) -> f64 {
    assert!(n > 0 && (0.0..=1.0).contains(&p_hat));
    (p_hat * (1.0 - p_hat) / n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use statrs::distribution::{ContinuousCDF, Normal};

    #[test]
    fn one_sample_against_exact_uniform_grid() {
        // Points at (i - 0.5)/n make both one-sided gaps 1/(2n).
        let n = 10;
        let xs: Vec<f64> = (1..=n).map(|i| (i as f64 - 0.5) / n as f64).collect();
        let d = ks_one_sample(&xs, |x| x.clamp(0.0, 1.0));
        assert!((d - 0.05).abs() < 1e-12, "distance {d}");
    }

    #[test]
    fn one_sample_detects_location_shift() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let normal = Normal::new(0.0, 1.0).unwrap();
        let xs: Vec<f64> = (0..10_000)
            .map(|_| rand_distr::Distribution::sample(&rand_distr::StandardNormal, &mut rng))
            .collect();
        let good = ks_one_sample(&xs, |x| normal.cdf(x));
        assert!(good < 0.02, "well-specified KS {good}");
        let shifted = ks_one_sample(&xs, |x| normal.cdf(x - 0.5));
        assert!(shifted > 0.15, "misspecified KS {shifted}");
    }

    #[test]
    fn two_sample_basics() {
        assert_eq!(ks_two_sample(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]), 0.0);
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[5.0, 6.0]), 1.0);
        // Unequal sizes, interleaved.
        let d = ks_two_sample(&[1.0, 3.0, 5.0], &[2.0, 4.0]);
        assert!((d - 1.0 / 3.0).abs() < 1e-12, "distance {d}");
    }

    #[test]
    fn two_sample_with_heavy_ties() {
        // Both samples concentrated on {0, 1} with different weights:
        // the gap after the tie group at 0 is |0.75 - 0.25| = 0.5.
        let a = [0.0, 0.0, 0.0, 1.0];
        let b = [0.0, 1.0, 1.0, 1.0];
        assert!((ks_two_sample(&a, &b) - 0.5).abs() < 1e-12);
        // Identical tie patterns cancel exactly.
        assert_eq!(ks_two_sample(&a, &a), 0.0);
    }

    #[test]
    fn two_sample_close_for_same_generator() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let draw = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            (0..8_000).map(|_| rng.gen::<f64>()).collect()
        };
        let d = ks_two_sample(&draw(&mut rng), &draw(&mut rng));
        assert!(d < 0.03, "same-generator KS {d}");
    }

    #[test]
    fn mean_and_se_worked_example() {
        let (m, se) = mean_and_se(&[1.0, 2.0, 3.0, 4.0]);
        assert!((m - 2.5).abs() < 1e-12);
        // Unbiased variance 5/3, se = sqrt(5/12).
        assert!((se - (5.0f64 / 12.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn proportion_se_worked_example() {
        assert!((proportion_se(0.5, 100) - 0.05).abs() < 1e-12);
        assert_eq!(proportion_se(0.0, 10), 0.0);
    }
}
