//! Model-free prediction inference for exchangeable real-valued data.
//!
//! Given `n` observations and a notion of how atypical a candidate value
//! looks next to them (a nonconformity measure), this crate builds the full
//! rank-based uncertainty object over the next observation: the plausibility
//! transducer, the focal-region partition with mass `1/(n+1)` per region,
//! belief and plausibility for interval events, nested conformal prediction
//! sets, and the maximum-entropy distribution consistent with the focal
//! structure, with exact sampling.

pub mod baselines;
pub mod belief;
pub mod dist;
pub mod error;
pub mod experiments;
pub mod interval;
pub mod maxent;
pub mod partition;
pub mod scores;
pub mod stats;
pub mod stream;

pub use baselines::{
    binomial_gf_interval, binomial_gf_sample, DMapping, GfInterval, LomaxPredictive,
};
pub use belief::{
    belief, check_conjugacy, imprecise_probability, plausibility, ImpreciseValue,
};
pub use dist::Generator;
pub use error::{Error, Result};
pub use interval::{IntervalSet, Piece};
pub use maxent::{cp_analogue_sample, CpAnalogueSampler, MaxEntropyDistribution};
pub use partition::{prediction_set, FocalPartition};
pub use scores::{
    compute_scores, exact_type1_rate, pvalue_pmf_given_bag, rank_of_candidate, transducer,
    NonconformityMeasure, Sample, ScoreVector,
};
pub use stream::replicate_rng;
