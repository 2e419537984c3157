//! Ergodic interference alignment over finite fields.
//!
//! A scheme with stage vector `a` splits the n receivers into K consecutive
//! groups. Starting from a state `H[t_0]`, stage k waits for the first slot
//! that lets each receiver of group k cancel its interference using all states
//! chosen so far. The rate is `D(Z)/(K+1)` per user, and the expected wait of
//! the slowest stage grows like `q^T` for the delay exponent `T`.
//!
//! With beamforming (JAP-B) the first receiver of each stage aligns for free,
//! which lowers the exponent from `max a_k (n-k-1)` to `max (a_k-1)(n-k-1)`.
//! The NGJV scheme pairs `H` with its complement `I - H` and has exponent n².

mod asymptotic;
mod delay;
mod pareto;
mod scheme;
mod search;
mod simulate;

pub use asymptotic::{asymptotic_prediction, Family, Prediction, Regime, RegimeQuery};
pub use delay::{
    enumerate_zero_combination, ngjv_expected_delay, recovery_failure_prob,
    sample_zero_combination, NgjvDelay,
};
pub use pareto::{child_scheme, pareto_frontier, ChildScheme, FrontierPoint, SchemeDescriptor};
pub use scheme::SchemeSpec;
pub use search::{
    best_scheme, best_scheme_in, exponent_bounds, scheme_table, BestScheme, SearchSpace, TableCell,
};
pub use simulate::{
    exact_first_stage_success, simulate_ngjv, simulate_scheme, DelayReport, SimulationOptions,
};
