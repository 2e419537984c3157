use rand::Rng;
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::rng::substream;
use crate::special::choose;

/// Random bipartite graph on K + K vertices where each edge is present
/// independently with probability δ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingInstance {
    k: usize,
    /// Bitmask of right neighbours for each left vertex.
    adjacency: Vec<u64>,
}

impl MatchingInstance {
    pub fn new(k: usize, adjacency: Vec<u64>) -> Result<Self> {
        if k > 64 || adjacency.len() != k {
            return Err(invalid("matching instances support K <= 64 with one mask per left vertex"));
        }
        let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        if adjacency.iter().any(|a| a & !mask != 0) {
            return Err(invalid("adjacency mask names a vertex beyond K"));
        }
        Ok(Self { k, adjacency })
    }

    pub fn sample<R: Rng + ?Sized>(k: usize, delta: f64, r: &mut R) -> Result<Self> {
        let adjacency = (0..k)
            .map(|_| (0..k).filter(|_| r.random::<f64>() < delta).fold(0u64, |m, b| m | (1 << b)))
            .collect();
        Self::new(k, adjacency)
    }
}

/// Kuhn's augmenting-path algorithm.
pub fn has_perfect_matching(g: &MatchingInstance) -> bool {
    fn augment(g: &MatchingInstance, u: usize, seen: &mut u64, owner: &mut [Option<usize>]) -> bool {
        let mut free = g.adjacency[u] & !*seen;
        while free != 0 {
            let v = free.trailing_zeros() as usize;
            free &= free - 1;
            *seen |= 1 << v;
            if owner[v].is_none_or(|w| augment(g, w, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; g.k];
    (0..g.k).all(|u| augment(g, u, &mut 0, &mut owner))
}

/// `min{1, 2√K K^{2√K} e^{-δ(K+1)/2} + 2^{2K} e^{-δ K^{3/2}/2}}`.
pub fn walkup_bound(k: usize, delta: f64) -> f64 {
    let kf = k as f64;
    let sk = kf.sqrt();
    let ln_a = (2.0 * sk).ln() + 2.0 * sk * kf.ln() - delta * (kf + 1.0) / 2.0;
    let ln_b = 2.0 * kf * std::f64::consts::LN_2 - delta * kf.powf(1.5) / 2.0;
    (ln_a.exp() + ln_b.exp()).min(1.0)
}

/// Union bound over Hall violators: `Σ_k C(K,k) C(K,K-k+1) (1-δ)^{k(K-k+1)}`.
pub fn blocking_pair_sum(k: usize, delta: f64) -> f64 {
    (1..=k)
        .map(|j| {
            let other = k - j + 1;
            let ln = (choose(k as u64, j as u64) as f64).ln() + (choose(k as u64, other as u64) as f64).ln();
            (ln + (j * other) as f64 * (1.0 - delta).ln()).exp()
        })
        .sum::<f64>()
        .min(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchingReport {
    pub k: usize,
    pub delta: f64,
    pub trials: usize,
    pub empirical_fail: f64,
    pub walkup_bound: f64,
    pub blocking_pair_sum: f64,
}

/// Frequency with which G(K, K, δ) has no perfect matching.
pub fn jafar_matching(k: usize, delta: f64, trials: usize, seed: u64) -> Result<MatchingReport> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(invalid(format!("delta must lie in [0,1], got {delta}")));
    }
    if trials == 0 {
        return Err(invalid("trials must be positive"));
    }
    let fails: usize = (0..trials)
        .into_par_iter()
        .map(|t| MatchingInstance::sample(k, delta, &mut substream(seed, t as u64)).map(|g| usize::from(!has_perfect_matching(&g))))
        .sum::<Result<usize>>()?;
    Ok(MatchingReport {
        k,
        delta,
        trials,
        empirical_fail: fails as f64 / trials as f64,
        walkup_bound: walkup_bound(k, delta),
        blocking_pair_sum: blocking_pair_sum(k, delta),
    })
}
