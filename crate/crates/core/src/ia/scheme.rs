use std::fmt;

use num_rational::Ratio;

use crate::error::{invalid, Result};

/// A JAP or JAP-B scheme: n users split into stages of sizes `a_1..a_K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SchemeSpec {
    n: usize,
    stages: Vec<usize>,
    beamforming: bool,
}

impl SchemeSpec {
    pub fn new(n: usize, stages: Vec<usize>, beamforming: bool) -> Result<Self> {
        if n == 0 {
            return Err(invalid("scheme needs at least one user"));
        }
        if stages.is_empty() || stages.len() > n {
            return Err(invalid(format!("stage count {} not in 1..={n}", stages.len())));
        }
        if stages.contains(&0) {
            return Err(invalid("stage sizes must be positive"));
        }
        let total: usize = stages.iter().sum();
        if total != n {
            return Err(invalid(format!("stage sizes sum to {total}, expected {n}")));
        }
        Ok(Self { n, stages, beamforming })
    }

    /// JAP-B with the given stage sizes; `n` is their sum.
    pub fn japb(stages: Vec<usize>) -> Result<Self> {
        Self::new(stages.iter().sum(), stages, true)
    }

    /// JAP without beamforming.
    pub fn jap(stages: Vec<usize>) -> Result<Self> {
        Self::new(stages.iter().sum(), stages, false)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }

    pub fn stages(&self) -> &[usize] {
        &self.stages
    }

    pub fn beamforming(&self) -> bool {
        self.beamforming
    }

    /// Zero-based receivers served in stage `k` (zero-based).
    pub fn stage_receivers(&self, k: usize) -> std::ops::Range<usize> {
        let start: usize = self.stages[..k].iter().sum();
        start..start + self.stages[k]
    }

    /// Receivers of stage `k` that must satisfy the recovery test; with
    /// beamforming the first one is exempt.
    pub fn checked_receivers(&self, k: usize) -> std::ops::Range<usize> {
        let r = self.stage_receivers(k);
        if self.beamforming {
            r.start + 1..r.end
        } else {
            r
        }
    }

    /// Exponent contributed by stage `k` (zero-based), clamped at zero.
    pub fn stage_exponent(&self, k: usize) -> u64 {
        let size = self.stages[k] as i64 - i64::from(self.beamforming);
        let remaining = self.n as i64 - (k as i64 + 1) - 1;
        (size * remaining).max(0) as u64
    }

    /// Delay exponent: the largest stage exponent.
    pub fn delay_exponent(&self) -> u64 {
        (0..self.stages.len()).map(|k| self.stage_exponent(k)).max().unwrap_or(0)
    }

    /// Degrees of freedom `1/(K+1)`.
    pub fn dof(&self) -> Ratio<u64> {
        Ratio::new(1, self.stages.len() as u64 + 1)
    }
}

impl fmt::Display for SchemeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.beamforming { "JAP-B" } else { "JAP" };
        let parts: Vec<String> = self.stages.iter().map(usize::to_string).collect();
        write!(f, "{name}[{}]", parts.join(","))
    }
}
