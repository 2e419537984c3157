use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::geom::{sample_placement_with, unit_ball_volume, AttenuationModel, PlacementModel, SpatialLaw};
use crate::rng::{derive_seed, substream, LabRng};
use crate::stats::{correlation, log_log_slope, mean, variance};

use super::bottleneck::{bottleneck_pair_bound, bottleneck_scan, BottleneckConfig};
use super::rates::{rate_matrix, RateMatrix};

/// Iid dense network: positions from `law` in dimension `d` under `atten`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseModel {
    pub law: SpatialLaw,
    pub d: usize,
    pub atten: AttenuationModel,
}

impl DenseModel {
    pub fn standard(atten: AttenuationModel) -> Self {
        Self { law: SpatialLaw::UniformCube { side: 1.0 }, d: 2, atten }
    }

    pub fn sample(&self, n: usize, r: &mut LabRng) -> Result<RateMatrix> {
        let p = sample_placement_with(PlacementModel::Iid { law: self.law }, n, self.d, r)?;
        rate_matrix(&p, &self.atten)
    }
}

/// One realisation of the capacity sandwich.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandwichTrial {
    pub lower: f64,
    pub pair_bound: f64,
    pub beta_hat: f64,
    /// Ordered bottleneck pairs.
    pub count: u64,
    pub max_direct: f64,
    /// Realisation lies above the `n^{η/2}` cutoff.
    pub above_cutoff: bool,
}

pub fn sandwich_trial(model: &DenseModel, n: usize, cfg: &BottleneckConfig, seed: u64) -> Result<SandwichTrial> {
    let s = model.sample(n, &mut substream(seed, 0))?;
    let scan = bottleneck_scan(&s, cfg);
    Ok(SandwichTrial {
        lower: s.e_hat,
        pair_bound: bottleneck_pair_bound(&s, &scan, cfg),
        beta_hat: scan.beta_hat,
        count: scan.count,
        max_direct: s.max_direct(),
        above_cutoff: cfg.exceeds_cutoff(&s),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarianceScaling {
    pub ns: Vec<usize>,
    pub means: Vec<f64>,
    pub variances: Vec<f64>,
    /// Trials kept at each n after the cutoff.
    pub kept: Vec<usize>,
    /// Least-squares slope of log Var against log n.
    pub slope: f64,
}

/// Variance of a per-trial count across `trials` draws at each n. The
/// sampler returns `None` to discard a draw.
pub fn bottleneck_count_variance<F>(ns: &[usize], trials: usize, seed: u64, sampler: F) -> Result<VarianceScaling>
where
    F: Fn(usize, &mut LabRng) -> Result<Option<f64>> + Sync,
{
    if ns.len() < 2 {
        return Err(invalid("variance scaling needs at least two values of n"));
    }
    let mut means = Vec::with_capacity(ns.len());
    let mut variances = Vec::with_capacity(ns.len());
    let mut kept = Vec::with_capacity(ns.len());
    for (a, &n) in ns.iter().enumerate() {
        let sub = derive_seed(seed, a as u64);
        let draws: Vec<Option<f64>> =
            (0..trials).into_par_iter().map(|t| sampler(n, &mut substream(sub, t as u64))).collect::<Result<_>>()?;
        let counts: Vec<f64> = draws.into_iter().flatten().collect();
        if counts.len() < 2 {
            return Err(Error::Statistics(format!("fewer than two usable trials at n = {n}")));
        }
        means.push(mean(&counts));
        variances.push(variance(&counts));
        kept.push(counts.len());
    }
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let slope = match log_log_slope(&xs, &variances) {
        Some(s) if variances.iter().all(|v| *v > 0.0) => s,
        _ => return Err(Error::Statistics("count variance vanishes, log-log slope undefined".into())),
    };
    Ok(VarianceScaling { ns: ns.to_vec(), means, variances, kept, slope })
}

/// Variance of the bottleneck count `Σ_{i≠j} B_ij`, conditioned on the
/// realisation lying below the cutoff.
pub fn variance_scaling_experiment(
    model: &DenseModel,
    ns: &[usize],
    trials: usize,
    cfg: &BottleneckConfig,
    seed: u64,
) -> Result<VarianceScaling> {
    bottleneck_count_variance(ns, trials, seed, |n, r| {
        let s = model.sample(n, r)?;
        if cfg.exceeds_cutoff(&s) {
            return Ok(None);
        }
        Ok(Some(bottleneck_scan(&s, cfg).count as f64))
    })
}

/// Frequency of `max S_ii > n^{η/2}` at each n.
pub fn tail_experiment(model: &DenseModel, ns: &[usize], eta: f64, trials: usize, seed: u64) -> Result<Vec<(usize, f64)>> {
    if trials == 0 {
        return Err(invalid("trials must be positive"));
    }
    ns.iter()
        .enumerate()
        .map(|(a, &n)| {
            let sub = derive_seed(seed, a as u64);
            let hits: Vec<bool> = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let s = model.sample(n, &mut substream(sub, t as u64))?;
                    Ok(s.max_direct() > (n as f64).powf(eta / 2.0))
                })
                .collect::<Result<_>>()?;
            Ok((n, hits.iter().filter(|h| **h).count() as f64 / trials as f64))
        })
        .collect()
}

/// Empirical `P(‖R − T‖ ≤ ρ)` for an independent pair drawn from `law`,
/// next to the bound `v(d) ρ^d` (valid when the law has density at most 1).
pub fn spatial_separation_check(law: SpatialLaw, d: usize, radii: &[f64], samples: usize, seed: u64) -> Vec<(f64, f64, f64)> {
    let r = &mut substream(seed, 0);
    let mut dists = Vec::with_capacity(samples);
    for _ in 0..samples {
        let mut pts = crate::geom::PointSet::new(d);
        law.sample(d, r, &mut pts);
        law.sample(d, r, &mut pts);
        dists.push(crate::geom::placement_distance(pts.get(0), pts.get(1)));
    }
    radii
        .iter()
        .map(|&rho| {
            let hits = dists.iter().filter(|&&x| x <= rho).count();
            (rho, hits as f64 / samples.max(1) as f64, unit_ball_volume(d) * rho.powi(d as i32))
        })
        .collect()
}

/// Sample correlation of `B_01` and `B_23` over independent realisations.
pub fn correlation_of_disjoint_indicators(
    model: &DenseModel,
    n: usize,
    cfg: &BottleneckConfig,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    if n < 4 {
        return Err(invalid("disjoint indicators need n >= 4"));
    }
    let pairs: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let s = model.sample(n, &mut substream(seed, t as u64))?;
            let b = |i, j| if cfg.is_bottleneck(&s, i, j) { 1.0 } else { 0.0 };
            Ok((b(0, 1), b(2, 3)))
        })
        .collect::<Result<_>>()?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    correlation(&xs, &ys).ok_or_else(|| Error::Statistics("indicator has zero variance".into()))
}

/// Independent Bernoulli(β) indicators over the n(n-1) ordered pairs.
#[cfg(test)]
fn independent_count(n: usize, beta: f64, r: &mut LabRng) -> f64 {
    use rand::Rng;
    (0..n * (n - 1)).filter(|_| r.random::<f64>() < beta).count() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> DenseModel {
        DenseModel::standard(AttenuationModel::capped_at(1.0, 4.0, 1000.0).unwrap())
    }

    #[test]
    fn independent_indicators_scale_quadratically() {
        let v = bottleneck_count_variance(&[20, 40, 80, 160], 400, 5, |n, r| Ok(Some(independent_count(n, 0.2, r)))).unwrap();
        assert!((v.slope - 2.0).abs() < 0.2, "slope {}", v.slope);
    }

    #[test]
    fn constant_counts_are_rejected() {
        let err = bottleneck_count_variance(&[10, 20], 10, 1, |n, _| Ok(Some((n * (n - 1)) as f64))).unwrap_err();
        assert!(matches!(err, Error::Statistics(_)));
        let err = bottleneck_count_variance(&[10, 20], 10, 1, |_, _| Ok(None)).unwrap_err();
        assert!(matches!(err, Error::Statistics(_)));
    }

    #[test]
    fn sandwich_holds_and_bottlenecks_exist() {
        let m = model();
        let e = super::super::rates::estimate_e(m.law, m.d, &m.atten, 100_000, 11).unwrap();
        let cfg = BottleneckConfig::new(0.1, 0.9, e).unwrap();
        for seed in 0..5 {
            let t = sandwich_trial(&m, 200, &cfg, seed).unwrap();
            assert!(t.lower <= t.pair_bound);
            assert!(t.beta_hat > 0.0);
        }
    }

    #[test]
    fn separation_bound() {
        for (rho, emp, bound) in spatial_separation_check(SpatialLaw::UniformCube { side: 1.0 }, 2, &[0.01, 0.05, 0.1, 0.3], 100_000, 2) {
            assert!(emp <= bound * 1.05 + 1e-3, "rho {rho}: {emp} > {bound}");
        }
    }

    #[test]
    fn high_gain_frequency_falls_with_n() {
        let m = DenseModel::standard(AttenuationModel::power_law(1.0, 4.0).unwrap());
        let f = tail_experiment(&m, &[100, 400], 0.9, 400, 3).unwrap();
        assert!(f[1].1 < f[0].1, "{f:?}");
    }

    #[test]
    fn disjoint_indicators_are_uncorrelated() {
        let m = model();
        let cfg = BottleneckConfig::new(0.1, 0.9, 2.0).unwrap();
        let c = correlation_of_disjoint_indicators(&m, 8, &cfg, 4000, 7).unwrap();
        assert!(c.abs() < 0.06, "{c}");
    }
}
