//! Synthetic data generators for the Monte-Carlo harness, with exact CDFs
//! for oracle comparisons.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::Distribution;
use statrs::distribution::ContinuousCDF;

use crate::error::{Error, Result};

/// A continuous generator with a closed-form CDF. Parsed from strings like
/// `gaussian(0,1)`, `cauchy`, `lognormal(1,2)`, `exponential(0.5)`, or
/// `gaussian-mixture(0.5:-6:1;0.5:6:1)` (weight:mean:sd per component).
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    Gaussian { mu: f64, sigma: f64 },
    Cauchy,
    Lognormal { mu: f64, sigma: f64 },
    GaussianMixture { components: Vec<(f64, f64, f64)> },
    Exponential { rate: f64 },
}

impl Generator {
    pub fn standard_gaussian() -> Self {
        Generator::Gaussian { mu: 0.0, sigma: 1.0 }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Generator::Gaussian { mu, sigma } => {
                rand_distr::Normal::new(*mu, *sigma).unwrap().sample(rng)
            }
            Generator::Cauchy => rand_distr::Cauchy::new(0.0, 1.0).unwrap().sample(rng),
            Generator::Lognormal { mu, sigma } => {
                rand_distr::LogNormal::new(*mu, *sigma).unwrap().sample(rng)
            }
            Generator::GaussianMixture { components } => {
                let mut u = rng.gen::<f64>();
                for &(w, mu, sd) in components {
                    if u < w {
                        return rand_distr::Normal::new(mu, sd).unwrap().sample(rng);
                    }
                    u -= w;
                }
                let &(_, mu, sd) = components.last().unwrap();
                rand_distr::Normal::new(mu, sd).unwrap().sample(rng)
            }
            Generator::Exponential { rate } => rand_distr::Exp::new(*rate).unwrap().sample(rng),
        }
    }

    /// Draws `n` values into a vector.
    pub fn sample_n<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<f64> {
        (0..n).map(|_| self.sample(rng)).collect()
    }

    pub fn cdf(&self, y: f64) -> f64 {
        match self {
            Generator::Gaussian { mu, sigma } => {
                statrs::distribution::Normal::new(*mu, *sigma).unwrap().cdf(y)
            }
            Generator::Cauchy => 0.5 + y.atan() / std::f64::consts::PI,
            Generator::Lognormal { mu, sigma } => {
                if y <= 0.0 {
                    0.0
                } else {
                    statrs::distribution::Normal::new(0.0, 1.0)
                        .unwrap()
                        .cdf((y.ln() - mu) / sigma)
                }
            }
            Generator::GaussianMixture { components } => components
                .iter()
                .map(|&(w, mu, sd)| {
                    w * statrs::distribution::Normal::new(mu, sd).unwrap().cdf(y)
                })
                .sum(),
            Generator::Exponential { rate } => {
                if y <= 0.0 {
                    0.0
                } else {
                    1.0 - (-rate * y).exp()
                }
            }
        }
    }

    /// Probability of an interval-union event under the generator; endpoint
    /// openness is irrelevant for these continuous laws.
    pub fn probability(&self, event: &crate::interval::IntervalSet) -> f64 {
        event
            .pieces()
            .iter()
            .map(|p| {
                let hi = if p.hi.is_finite() { self.cdf(p.hi) } else { 1.0 };
                let lo = if p.lo.is_finite() { self.cdf(p.lo) } else { 0.0 };
                hi - lo
            })
            .sum()
    }

    pub fn median(&self) -> f64 {
        match self {
            Generator::Gaussian { mu, .. } => *mu,
            Generator::Cauchy => 0.0,
            Generator::Lognormal { mu, .. } => mu.exp(),
            Generator::Exponential { rate } => std::f64::consts::LN_2 / rate,
            Generator::GaussianMixture { components } => {
                // Bisection on the exact CDF over a generous bracket.
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for &(_, mu, sd) in components {
                    lo = lo.min(mu - 20.0 * sd);
                    hi = hi.max(mu + 20.0 * sd);
                }
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if self.cdf(mid) < 0.5 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Gaussian { mu, sigma } => write!(f, "gaussian({mu},{sigma})"),
            Generator::Cauchy => write!(f, "cauchy"),
            Generator::Lognormal { mu, sigma } => write!(f, "lognormal({mu},{sigma})"),
            Generator::GaussianMixture { components } => {
                write!(f, "gaussian-mixture(")?;
                for (i, (w, mu, sd)) in components.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{w}:{mu}:{sd}")?;
                }
                write!(f, ")")
            }
            Generator::Exponential { rate } => write!(f, "exponential({rate})"),
        }
    }
}

impl serde::Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn parse_args(body: &str, name: &str, want: usize) -> Result<Vec<f64>> {
    let parts: Vec<&str> = body.split(',').map(str::trim).collect();
    if parts.len() != want {
        return Err(Error::InvalidInput(format!(
            "{name} takes {want} parameter(s), got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<f64>().map_err(|_| {
                Error::InvalidInput(format!("cannot parse {name} parameter {p:?} as a number"))
            })
        })
        .collect()
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let (name, body) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            Some(_) => {
                return Err(Error::InvalidInput(format!(
                    "unbalanced parentheses in distribution {s:?}"
                )))
            }
            None => (s.as_str(), None),
        };
        match (name, body) {
            ("gaussian" | "normal", None) => Ok(Generator::standard_gaussian()),
            ("gaussian" | "normal", Some(b)) => {
                let p = parse_args(b, "gaussian", 2)?;
                if p[1] <= 0.0 {
                    return Err(Error::InvalidInput("gaussian needs sigma > 0".into()));
                }
                Ok(Generator::Gaussian { mu: p[0], sigma: p[1] })
            }
            ("cauchy", None) => Ok(Generator::Cauchy),
            ("lognormal", None) => Ok(Generator::Lognormal { mu: 0.0, sigma: 1.0 }),
            ("lognormal", Some(b)) => {
                let p = parse_args(b, "lognormal", 2)?;
                if p[1] <= 0.0 {
                    return Err(Error::InvalidInput("lognormal needs sigma > 0".into()));
                }
                Ok(Generator::Lognormal { mu: p[0], sigma: p[1] })
            }
            ("exponential", None) => Ok(Generator::Exponential { rate: 1.0 }),
            ("exponential", Some(b)) => {
                let p = parse_args(b, "exponential", 1)?;
                if p[0] <= 0.0 {
                    return Err(Error::InvalidInput("exponential needs rate > 0".into()));
                }
                Ok(Generator::Exponential { rate: p[0] })
            }
            ("gaussian-mixture", Some(b)) => {
                let mut components = Vec::new();
                for comp in b.split(';') {
                    let fields: Vec<&str> = comp.split(':').map(str::trim).collect();
                    if fields.len() != 3 {
                        return Err(Error::InvalidInput(format!(
                            "mixture component {comp:?} must be weight:mean:sd"
                        )));
                    }
                    let nums: Vec<f64> = fields
                        .iter()
                        .map(|p| {
                            p.parse::<f64>().map_err(|_| {
                                Error::InvalidInput(format!(
                                    "cannot parse mixture field {p:?} as a number"
                                ))
                            })
                        })
                        .collect::<Result<_>>()?;
                    if nums[0] <= 0.0 || nums[2] <= 0.0 {
                        return Err(Error::InvalidInput(
                            "mixture weights and sds must be positive".into(),
                        ));
                    }
                    components.push((nums[0], nums[1], nums[2]));
                }
                if components.is_empty() {
                    return Err(Error::InvalidInput("mixture needs at least one component".into()));
                }
                let total: f64 = components.iter().map(|c| c.0).sum();
                for c in &mut components {
                    c.0 /= total;
                }
                Ok(Generator::GaussianMixture { components })
            }
            _ => Err(Error::InvalidInput(format!("unknown distribution {s:?}"))),
        }
    }
}
