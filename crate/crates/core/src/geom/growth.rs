use rand::Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};

use super::placement::{distance, norm};
use super::{unit_ball_volume, PointSet};
use crate::error::{invalid, Error, Result};
use crate::rng::{self, LabRng};

/// One realisation of the many-link experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthOutcome {
    /// Fraction of the n links whose SINR supports `rate`.
    pub success_fraction: f64,
    /// `success_fraction · n · rate`.
    pub sum_rate: f64,
    /// Whether the sum-rate reached `(1 − 2ε) n rate`.
    pub growth_event: bool,
    /// Poisson nodes in the simulation window.
    pub window_nodes: usize,
}

fn uniform_in_ball(r: &mut LabRng, d: usize, radius: f64, out: &mut PointSet) {
    let dir: Vec<f64> = (0..d).map(|_| r.sample::<f64, _>(StandardNormal)).collect();
    let len = norm(&dir);
    let rho = radius * r.random::<f64>().powf(1.0 / d as f64);
    let p: Vec<f64> = dir.iter().map(|x| x * rho / len).collect();
    out.push(&p);
}

/// Unit-density Poisson network, interference-limited, every node receiving
/// from its nearest neighbour at a common target `rate`.
///
/// The n nodes nearest the origin are scored. Nodes are simulated in a ball
/// whose radius exceeds the scored region by a guard band; each scored
/// receiver also gets the mean interference of the region beyond its distance
/// to the window edge, which over-counts the truncated part.
pub fn linear_growth_experiment(n: usize, d: usize, alpha: f64, rate: f64, eps: f64, seed: u64) -> Result<GrowthOutcome> {
    if n < 2 || d == 0 {
        return Err(invalid("need n >= 2 and d >= 1"));
    }
    if !(alpha > d as f64) {
        return Err(Error::Divergent { alpha, d });
    }
    if !(eps > 0.0 && eps < 0.5) || !(rate >= 0.0) {
        return Err(invalid("need 0 < eps < 1/2 and rate >= 0"));
    }
    let v = unit_ball_volume(d);
    let df = d as f64;
    let core = (n as f64 / v).powf(1.0 / df);
    let radius = core + (0.5 * core).max(4.0);
    let law = Poisson::new(v * radius.powf(df)).map_err(|e| invalid(e.to_string()))?;
    let r = &mut rng::seeded(seed);
    let nodes = loop {
        let count = law.sample(r) as usize;
        if count > n {
            let mut pts = PointSet::new(d);
            for _ in 0..count {
                uniform_in_ball(r, d, radius, &mut pts);
            }
            break pts;
        }
    };
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|a, b| norm(nodes.get(*a)).total_cmp(&norm(nodes.get(*b))).then(a.cmp(b)));
    let s = rate.exp2() - 1.0;
    let tail_coef = df * v / (alpha - df);
    let mut successes = 0usize;
    for &j in &order[..n] {
        let pj = nodes.get(j);
        let mut nearest = (f64::INFINITY, usize::MAX);
        let mut total = 0.0;
        for (k, pk) in nodes.iter().enumerate() {
            if k == j {
                continue;
            }
            let dist = distance(pj, pk);
            if dist < nearest.0 {
                nearest = (dist, k);
            }
            total += dist.powf(-alpha);
        }
        let signal = nearest.0.powf(-alpha);
        let edge = (radius - norm(pj)).max(1e-9);
        let interference = (total - signal).max(0.0) + tail_coef * edge.powf(-(alpha - df));
        if signal / interference > s {
            successes += 1;
        }
    }
    let success_fraction = successes as f64 / n as f64;
    Ok(GrowthOutcome {
        success_fraction,
        sum_rate: success_fraction * n as f64 * rate,
        growth_event: success_fraction >= 1.0 - 2.0 * eps,
        window_nodes: nodes.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernoffCheck {
    /// Empirical `P(X >= e λ)` for `X ~ Po(λ)`.
    pub empirical: f64,
    /// `e^{-λ}`.
    pub bound: f64,
}

pub fn chernoff_check(lambda: f64, samples: usize, seed: u64) -> Result<ChernoffCheck> {
    let law = Poisson::new(lambda).map_err(|e| invalid(e.to_string()))?;
    let r = &mut rng::seeded(seed);
    let threshold = std::f64::consts::E * lambda;
    let hits = (0..samples).filter(|_| law.sample(r) >= threshold).count();
    Ok(ChernoffCheck { empirical: hits as f64 / samples as f64, bound: (-lambda).exp() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_rate_always_succeeds() {
        let g = linear_growth_experiment(200, 2, 4.0, 1e-6, 0.1, 3).unwrap();
        assert_eq!(g.success_fraction, 1.0);
        assert!(g.growth_event);
        assert!(g.window_nodes > 200);
    }

    #[test]
    fn success_tracks_single_link_outage() {
        // the mean success fraction sits near 1 - p_out
        let rate = 1.0;
        let fr: Vec<f64> = (0..8).map(|s| linear_growth_experiment(300, 2, 4.0, rate, 0.1, s).unwrap().success_fraction).collect();
        let mean = crate::stats::mean(&fr);
        let b = crate::geom::outage_bounds(&crate::geom::OutageQuery::high_power(rate, 2, 4.0)).unwrap();
        assert!(1.0 - b.upper <= mean + 0.03 && mean <= 1.0 - b.lower + 0.03, "mean {mean}");
    }

    #[test]
    fn chernoff() {
        for lambda in [2.0, 5.0] {
            let c = chernoff_check(lambda, 200_000, 11).unwrap();
            assert!(c.empirical <= c.bound);
        }
    }
}
