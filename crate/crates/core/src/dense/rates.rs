use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{AttenuationModel, Placement, SpatialLaw};
use crate::rng::substream;
use crate::stats::compensated_sum;

/// `S_ji` for every receiver j (row) and transmitter i (column).
#[derive(Debug, Clone, PartialEq)]
pub struct RateMatrix {
    n: usize,
    s: Vec<f64>,
    /// In-sample mean of the diagonal.
    pub e_hat: f64,
}

pub(crate) fn half_log_rate(power: f64) -> f64 {
    0.5 * (1.0 + 2.0 * power).log2()
}

impl RateMatrix {
    /// From explicit rows `s[j][i]`; entries must be finite and non-negative.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("rate matrix must be square".into()));
        }
        let s: Vec<f64> = rows.iter().flatten().copied().collect();
        if s.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidArgument("rate entries must be finite and non-negative".into()));
        }
        let e_hat = compensated_sum((0..n).map(|i| s[i * n + i])) / n.max(1) as f64;
        Ok(Self { n, s, e_hat })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `S_ji`: transmitter `i` at receiver `j`.
    pub fn get(&self, j: usize, i: usize) -> f64 {
        self.s[j * self.n + i]
    }

    pub fn direct(&self, i: usize) -> f64 {
        self.get(i, i)
    }

    pub fn max_direct(&self) -> f64 {
        (0..self.n).map(|i| self.direct(i)).fold(0.0, f64::max)
    }
}

/// Rate matrix of an iid placement paired by index.
pub fn rate_matrix(placement: &Placement, atten: &AttenuationModel) -> Result<RateMatrix> {
    let (tx, rx) = (&placement.transmitters, &placement.receivers);
    if tx.len() != rx.len() {
        return Err(Error::Dimension("rate matrix needs equally many transmitters and receivers".into()));
    }
    let n = tx.len();
    let mut s = Vec::with_capacity(n * n);
    for j in 0..n {
        let r = rx.get(j);
        for i in 0..n {
            let rho = crate::geom::placement_distance(r, tx.get(i));
            s.push(half_log_rate(atten.power(rho)?));
        }
    }
    let e_hat = compensated_sum((0..n).map(|i| s[i * n + i])) / n as f64;
    Ok(RateMatrix { n, s, e_hat })
}

/// `(1/n) Σ S_ii`.
pub fn achievable_per_user_lower(s: &RateMatrix) -> f64 {
    s.e_hat
}

/// Population `E = E S_ii` from `samples` independent transmitter/receiver
/// draws under `law`.
pub fn estimate_e(law: SpatialLaw, d: usize, atten: &AttenuationModel, samples: usize, seed: u64) -> Result<f64> {
    const CHUNK: usize = 4096;
    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<Result<f64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let r = &mut substream(seed, c as u64);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut acc = Vec::with_capacity(count);
            for _ in 0..count {
                let mut pts = crate::geom::PointSet::new(d);
                law.sample(d, r, &mut pts);
                law.sample(d, r, &mut pts);
                let rho = crate::geom::placement_distance(pts.get(0), pts.get(1));
                acc.push(half_log_rate(atten.power(rho)?));
            }
            Ok(compensated_sum(acc))
        })
        .collect();
    let sums = partial.into_iter().collect::<Result<Vec<f64>>>()?;
    Ok(compensated_sum(sums) / samples as f64)
}
