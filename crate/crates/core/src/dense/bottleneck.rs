use crate::error::{invalid, Result};

use super::rates::RateMatrix;

/// Which crosslink the second bottleneck condition constrains.
///
/// For a bottleneck `i → j` the converse needs transmitter j's power at
/// receiver i to be small (`S_ij ≤ E + ε/2`), the same crosslink that the
/// third condition compares with `S_jj`. `Transposed` checks `S_ji` instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum B2Orientation {
    #[default]
    Crosslink,
    Transposed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BottleneckConfig {
    pub eps: f64,
    /// Exponent of the high-gain cutoff `max S_ii ≤ n^{η/2}`.
    pub eta: f64,
    /// Population mean `E = E S_ii`.
    pub e: f64,
    pub orientation: B2Orientation,
}

impl BottleneckConfig {
    pub fn new(eps: f64, eta: f64, e: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(invalid(format!("eps must be positive, got {eps}")));
        }
        if !(eta > 0.0 && eta < 1.0) {
            return Err(invalid(format!("eta must lie in (0,1), got {eta}")));
        }
        if !(e >= 0.0 && e.is_finite()) {
            return Err(invalid(format!("E must be finite and non-negative, got {e}")));
        }
        Ok(Self { eps, eta, e, orientation: B2Orientation::default() })
    }

    pub fn with_orientation(mut self, orientation: B2Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    /// `max S_ii > n^{η/2}`.
    pub fn exceeds_cutoff(&self, s: &RateMatrix) -> bool {
        s.max_direct() > (s.n() as f64).powf(self.eta / 2.0)
    }

    /// Whether `i → j` is a bottleneck crosslink.
    pub fn is_bottleneck(&self, s: &RateMatrix, i: usize, j: usize) -> bool {
        let limit = self.e + self.eps / 2.0;
        let cross = s.get(i, j);
        let b2 = match self.orientation {
            B2Orientation::Crosslink => cross,
            B2Orientation::Transposed => s.get(j, i),
        };
        i != j && s.direct(i) <= limit && b2 <= limit && s.direct(j) <= cross
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BottleneckScan {
    n: usize,
    indicators: Vec<bool>,
    pub count: u64,
    /// `count / (n(n-1))`.
    pub beta_hat: f64,
}

impl BottleneckScan {
    pub fn is_bottleneck(&self, i: usize, j: usize) -> bool {
        self.indicators[i * self.n + j]
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

pub fn bottleneck_scan(s: &RateMatrix, cfg: &BottleneckConfig) -> BottleneckScan {
    let n = s.n();
    let mut indicators = vec![false; n * n];
    let mut count = 0u64;
    for i in 0..n {
        for j in 0..n {
            if cfg.is_bottleneck(s, i, j) {
                indicators[i * n + j] = true;
                count += 1;
            }
        }
    }
    let pairs = (n * n.saturating_sub(1)) as f64;
    let beta_hat = if pairs > 0.0 { count as f64 / pairs } else { 0.0 };
    BottleneckScan { n, indicators, count, beta_hat }
}

/// Greedy disjoint matching of bottleneck pairs (either direction), scanned
/// in index order. Matched pairs contribute `2E + ε`, every unmatched user
/// `2 max S_ii`; the total is divided by n.
pub fn bottleneck_pair_bound(s: &RateMatrix, scan: &BottleneckScan, cfg: &BottleneckConfig) -> f64 {
    let n = s.n();
    if n == 0 {
        return 0.0;
    }
    let mut matched = vec![false; n];
    let mut pairs = 0usize;
    for i in 0..n {
        if matched[i] {
            continue;
        }
        if let Some(j) = (0..n).find(|&j| !matched[j] && j != i && (scan.is_bottleneck(i, j) || scan.is_bottleneck(j, i))) {
            matched[i] = true;
            matched[j] = true;
            pairs += 1;
        }
    }
    let unmatched = n - 2 * pairs;
    (pairs as f64 * (2.0 * cfg.e + cfg.eps) + unmatched as f64 * 2.0 * s.max_direct()) / n as f64
}
