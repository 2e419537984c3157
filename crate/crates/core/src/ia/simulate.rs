use itertools::Itertools;
use num_rational::Ratio;
use rayon::prelude::*;

use super::SchemeSpec;
use crate::error::{invalid, Result};
use crate::ff::{recovery_check, ChannelState, FieldMatrix, PrimeField};
use crate::rng::{substream, LabRng};
use crate::stats;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimulationOptions {
    /// Slots a stage may wait before its trial is abandoned.
    pub max_slots_per_stage: u64,
}

impl Default for SimulationOptions {
    fn default() -> Self {
        Self { max_slots_per_stage: 10_000_000 }
    }
}

/// Waiting times from a batch of simulated trials.
#[derive(Debug, Clone, PartialEq)]
pub struct DelayReport {
    /// Per completed trial, the slots each stage waited (each at least 1).
    pub stage_delays: Vec<Vec<u64>>,
    /// Per completed trial, `Σ` of its stage delays.
    pub total_delays: Vec<u64>,
    /// Trials requested.
    pub trials: usize,
    /// Trials abandoned at the slot cap; excluded from every mean.
    pub truncated: usize,
    pub mean_per_stage: Vec<f64>,
    pub mean_total: f64,
    pub std_error_total: f64,
    /// Per stage, trials whose stage finished on its first slot. For the first
    /// stage this is an unbiased count for the one-slot success probability.
    pub first_slot_successes: Vec<u64>,
    /// Initial states redrawn because they admitted no usable partner.
    pub rejected_starts: u64,
    pub dof: Ratio<u64>,
}

struct Trial {
    stages: Option<Vec<u64>>,
    rejected: u64,
}

fn summarise(trials: Vec<Trial>, stage_count: usize, dof: Ratio<u64>) -> DelayReport {
    let n_trials = trials.len();
    let rejected_starts = trials.iter().map(|t| t.rejected).sum();
    let stage_delays: Vec<Vec<u64>> = trials.into_iter().filter_map(|t| t.stages).collect();
    let truncated = n_trials - stage_delays.len();
    let total_delays: Vec<u64> = stage_delays.iter().map(|s| s.iter().sum()).collect();
    let mean_per_stage = (0..stage_count)
        .map(|k| stats::mean(&stage_delays.iter().map(|s| s[k] as f64).collect::<Vec<_>>()))
        .collect();
    let first_slot_successes = (0..stage_count)
        .map(|k| stage_delays.iter().filter(|s| s[k] == 1).count() as u64)
        .collect();
    let totals: Vec<f64> = total_delays.iter().map(|v| *v as f64).collect();
    DelayReport {
        mean_total: stats::mean(&totals),
        std_error_total: if totals.len() > 1 { stats::std_error(&totals) } else { 0.0 },
        stage_delays,
        total_delays,
        trials: n_trials,
        truncated,
        mean_per_stage,
        first_slot_successes,
        rejected_starts,
        dof,
    }
}

fn stage_done(scheme: &SchemeSpec, k: usize, chosen: &[&ChannelState]) -> bool {
    scheme
        .checked_receivers(k)
        .all(|j| matches!(recovery_check(j, chosen), Ok(Some(_))))
}

fn run_trial(scheme: &SchemeSpec, field: PrimeField, r: &mut LabRng, cap: u64) -> Trial {
    let n = scheme.n();
    let mut chosen = vec![ChannelState::sample(field, n, r).expect("n >= 1")];
    let mut delays = Vec::with_capacity(scheme.stage_count());
    for k in 0..scheme.stage_count() {
        let mut waited = 0u64;
        loop {
            if waited == cap {
                return Trial { stages: None, rejected: 0 };
            }
            waited += 1;
            let candidate = ChannelState::sample(field, n, r).expect("n >= 1");
            let mut view: Vec<&ChannelState> = chosen.iter().collect();
            view.push(&candidate);
            if stage_done(scheme, k, &view) {
                chosen.push(candidate);
                break;
            }
        }
        delays.push(waited);
    }
    Trial { stages: Some(delays), rejected: 0 }
}

/// Simulate `trials` independent runs of `scheme` over F_q.
///
/// Trial `t` draws from stream `t` of `seed`, so the report does not depend on
/// how the work is scheduled.
pub fn simulate_scheme(
    scheme: &SchemeSpec,
    q: u32,
    trials: usize,
    seed: u64,
    opts: SimulationOptions,
) -> Result<DelayReport> {
    let field = PrimeField::new(q)?;
    if trials == 0 {
        return Err(invalid("trials must be at least 1"));
    }
    let outcomes: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(scheme, field, &mut substream(seed, t as u64), opts.max_slots_per_stage))
        .collect();
    Ok(summarise(outcomes, scheme.stage_count(), scheme.dof()))
}

/// Simulate the NGJV scheme: wait for the exact complement `I − H[t_0]`.
///
/// Starting states whose complement has a zero entry can never be matched;
/// these are redrawn and counted in `rejected_starts`. Conditional on a
/// usable start, the wait is geometric with success probability
/// `(q−1)^{−n²}`. Fails for q = 2, where no start is usable.
pub fn simulate_ngjv(n: usize, q: u32, trials: usize, seed: u64, opts: SimulationOptions) -> Result<DelayReport> {
    let field = PrimeField::new(q)?;
    if q == 2 {
        return Err(invalid("NGJV needs q >= 3: over F_2 the complement always has zeros"));
    }
    if trials == 0 || n == 0 {
        return Err(invalid("trials and n must be at least 1"));
    }
    let outcomes: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let r = &mut substream(seed, t as u64);
            let mut rejected = 0;
            let target = loop {
                let h0 = ChannelState::sample(field, n, r).expect("n >= 1");
                match h0.complement() {
                    Some(c) => break c,
                    None => rejected += 1,
                }
            };
            let mut waited = 0;
            loop {
                if waited == opts.max_slots_per_stage {
                    return Trial { stages: None, rejected };
                }
                waited += 1;
                if ChannelState::sample(field, n, r).expect("n >= 1") == target {
                    return Trial { stages: Some(vec![waited]), rejected };
                }
            }
        })
        .collect();
    Ok(summarise(outcomes, 1, Ratio::new(1, 2)))
}

/// Exact probability that one fresh state completes the first stage, averaged
/// over a uniform initial state; by enumeration of all `(q−1)^{2n²}` pairs.
pub fn exact_first_stage_success(scheme: &SchemeSpec, q: u32) -> Result<f64> {
    let field = PrimeField::new(q)?;
    let n = scheme.n();
    let cells = n * n;
    let size = ((q - 1) as f64).powi(2 * cells as i32);
    if size > 2e7 {
        return Err(invalid(format!("{size} state pairs is too many to enumerate")));
    }
    let states: Vec<ChannelState> = (0..cells)
        .map(|_| field.nonzero())
        .multi_cartesian_product()
        .map(|d| ChannelState::new(FieldMatrix::from_elems(field, n, n, d).expect("shape")).expect("nonzero"))
        .collect();
    let hits: u64 = states
        .par_iter()
        .map(|h0| states.iter().filter(|h1| stage_done(scheme, 0, &[h0, *h1])).count() as u64)
        .sum();
    Ok(hits as f64 / (states.len() * states.len()) as f64)
}
