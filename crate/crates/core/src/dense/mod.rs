//! Dense random networks: rate matrices, bottleneck links and the converse
//! machinery for the per-user sum capacity, plus reference capacity formulas.
//!
//! For n transmitter/receiver pairs, `S_ji = ½ log₂(1 + 2 a(‖R_j − T_i‖))` is
//! the rate quantity of transmitter i seen at receiver j; the diagonal holds
//! the direct links. Every user can reach `S_ii` at once by ergodic alignment,
//! so `(1/n) Σ S_ii` lower-bounds the per-user sum capacity. A bottleneck
//! crosslink caps the sum of its two users' rates at `2E + ε`, and a matching
//! of bottlenecks gives an upper estimate.

mod bottleneck;
mod experiments;
mod matching;
mod rates;
mod reference;

pub use bottleneck::{bottleneck_pair_bound, bottleneck_scan, B2Orientation, BottleneckConfig, BottleneckScan};
pub use experiments::{
    bottleneck_count_variance, correlation_of_disjoint_indicators, sandwich_trial, spatial_separation_check,
    tail_experiment, variance_scaling_experiment, DenseModel, SandwichTrial, VarianceScaling,
};
pub use matching::{has_perfect_matching, jafar_matching, walkup_bound, blocking_pair_sum, MatchingInstance, MatchingReport};
pub use rates::{achievable_per_user_lower, estimate_e, rate_matrix, RateMatrix};
pub use reference::{reference_capacity, ReferenceCapacity};
