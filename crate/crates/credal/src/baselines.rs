//! Two reference constructions the studies compare against: the conjugate
//! Bayesian predictive for exponential data, and the exact fiducial interval
//! for a binomial proportion with its precise-representative mappings.

use rand::Rng;
use rand_distr::Distribution;

use crate::error::{Error, Result};
use crate::scores::Sample;

/// Posterior-predictive distribution for nonnegative data modeled as
/// exponential with a gamma prior on the rate: a Lomax law with shape
/// `prior_shape + n` and scale `prior_rate + sum(y)`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct LomaxPredictive {
    pub shape: f64,
    pub scale: f64,
}

impl LomaxPredictive {
    pub fn new(shape: f64, scale: f64) -> Result<Self> {
        if !shape.is_finite() || !scale.is_finite() || shape <= 0.0 || scale <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "Lomax parameters must be positive and finite, got shape={shape}, scale={scale}"
            )));
        }
        Ok(LomaxPredictive { shape, scale })
    }

    /// Conjugate update from nonnegative observations.
    pub fn fit(sample: &Sample, prior_shape: f64, prior_rate: f64) -> Result<Self> {
        if !(prior_shape.is_finite() && prior_shape > 0.0)
            || !(prior_rate.is_finite() && prior_rate > 0.0)
        {
            return Err(Error::InvalidInput(format!(
                "prior must be positive, got shape={prior_shape}, rate={prior_rate}"
            )));
        }
        if let Some(bad) = sample.values().iter().find(|&&y| y < 0.0) {
            return Err(Error::InvalidInput(format!(
                "exponential model needs nonnegative data, found {bad}"
            )));
        }
        let total: f64 = sample.values().iter().sum();
        LomaxPredictive::new(prior_shape + sample.n() as f64, prior_rate + total)
    }

    /// `F(y) = 1 - (1 + y/scale)^(-shape)` for `y >= 0`.
    pub fn cdf(&self, y: f64) -> Result<f64> {
        if y.is_nan() || y < 0.0 {
            return Err(Error::InvalidInput(format!(
                "Lomax CDF is defined on [0, inf), got {y}"
            )));
        }
        Ok(1.0 - (1.0 + y / self.scale).powf(-self.shape))
    }

    /// `P(Y > t) = (1 + t/scale)^(-shape)`.
    pub fn survival(&self, t: f64) -> Result<f64> {
        Ok(1.0 - self.cdf(t)?)
    }

    /// Probability of an interval-union event, with the negative half-line
    /// clipped away (the law lives on `[0, inf)`).
    pub fn probability(&self, event: &crate::interval::IntervalSet) -> Result<f64> {
        let mut total = 0.0;
        for p in event.pieces() {
            let lo = p.lo.max(0.0);
            let hi = p.hi;
            if hi <= lo {
                continue;
            }
            let upper = if hi.is_finite() { self.cdf(hi)? } else { 1.0 };
            total += upper - self.cdf(lo)?;
        }
        Ok(total)
    }
}

/// How to collapse the fiducial interval for a binomial proportion to a
/// single representative point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DMapping {
    /// `D ~ uniform(0,1)`.
    Uniform,
    /// `D` uniform on `{0,1}`: one of the interval endpoints.
    Endpoints,
    /// `D ~ beta(1/2,1/2)`, pushing mass toward the endpoints.
    Arcsine,
    /// Three-way mixture: the lower endpoint with probability `lower`, the
    /// upper with probability `1 - upper`, otherwise uniform inside. The
    /// marginal of the representative is exactly beta(y+1, m-y+1).
    BoundaryMixture,
    /// `D = 1/2`: the midpoint.
    Midpoint,
}

impl DMapping {
    /// The historical numbering 1..=5 used by the demo CLI.
    pub fn from_index(i: u8) -> Result<Self> {
        Ok(match i {
            1 => DMapping::Uniform,
            2 => DMapping::Endpoints,
            3 => DMapping::Arcsine,
            4 => DMapping::BoundaryMixture,
            5 => DMapping::Midpoint,
            _ => {
                return Err(Error::InvalidInput(format!(
                    "mapping index must be 1..=5, got {i}"
                )))
            }
        })
    }
}

/// The fiducial interval `(lower, upper]` for a binomial proportion after
/// observing `y` successes in `m` trials: the gap between the y-th and
/// (y+1)-th order statistics of `m` uniforms, with the conventions that the
/// 0th is 0 and the (m+1)-th is 1.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GfInterval {
    pub lower: f64,
    pub upper: f64,
    pub y: u64,
    pub m: u64,
}

impl GfInterval {
    pub fn new(lower: f64, upper: f64, y: u64, m: u64) -> Result<Self> {
        if !(0.0 <= lower && lower <= upper && upper <= 1.0) {
            return Err(Error::InvalidInput(format!(
                "need 0 <= lower <= upper <= 1, got ({lower}, {upper})"
            )));
        }
        if y > m || m == 0 {
            return Err(Error::InvalidInput(format!(
                "need 0 <= y <= m with m >= 1, got y={y}, m={m}"
            )));
        }
        Ok(GfInterval { lower, upper, y, m })
    }

    /// One representative point `lower + D * (upper - lower)`.
    pub fn representative<R: Rng + ?Sized>(&self, mapping: DMapping, rng: &mut R) -> f64 {
        let gap = self.upper - self.lower;
        let d = match mapping {
            DMapping::Uniform => rng.gen::<f64>(),
            DMapping::Endpoints => {
                if rng.gen::<bool>() {
                    1.0
                } else {
                    0.0
                }
            }
            DMapping::Arcsine => rand_distr::Beta::new(0.5, 0.5).unwrap().sample(rng),
            DMapping::BoundaryMixture => {
                let u = rng.gen::<f64>();
                if u < self.lower {
                    0.0
                } else if u < self.upper {
                    rng.gen::<f64>()
                } else {
                    1.0
                }
            }
            DMapping::Midpoint => 0.5,
        };
        self.lower + d * gap
    }
}

/// Draws the fiducial interval itself: `m` sorted uniforms bracketing the
/// observed count.
pub fn binomial_gf_interval<R: Rng + ?Sized>(y: u64, m: u64, rng: &mut R) -> Result<GfInterval> {
    if y > m || m == 0 {
        return Err(Error::InvalidInput(format!(
            "need 0 <= y <= m with m >= 1, got y={y}, m={m}"
        )));
    }
    let mut us: Vec<f64> = (0..m).map(|_| rng.gen()).collect();
    us.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let lower = if y == 0 { 0.0 } else { us[(y - 1) as usize] };
    let upper = if y == m { 1.0 } else { us[y as usize] };
    GfInterval::new(lower, upper, y, m)
}

/// Interval draw and representative selection in one step.
pub fn binomial_gf_sample<R: Rng + ?Sized>(
    y: u64,
    m: u64,
    mapping: DMapping,
    rng: &mut R,
) -> Result<f64> {
    Ok(binomial_gf_interval(y, m, rng)?.representative(mapping, rng))
}
