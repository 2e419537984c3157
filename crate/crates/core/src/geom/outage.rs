use rand::Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;

use super::unit_ball_volume;
use crate::error::{invalid, Error, Result};
use crate::rng::substream;
use crate::special::gamma;

/// Outage of the nearest-neighbour link in a unit-density Poisson network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageQuery {
    /// Target rate in bits per channel use.
    pub r: f64,
    pub d: usize,
    /// Power-domain attenuation exponent.
    pub alpha: f64,
    /// Fixed fading gain; `None` is the interference-limited `h -> inf` regime.
    pub h: Option<f64>,
}

impl OutageQuery {
    pub fn high_power(r: f64, d: usize, alpha: f64) -> Self {
        Self { r, d, alpha, h: None }
    }

    fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(invalid("dimension must be at least 1"));
        }
        if !(self.alpha > self.d as f64) {
            return Err(Error::Divergent { alpha: self.alpha, d: self.d });
        }
        if !(self.r >= 0.0) {
            return Err(invalid(format!("rate {} must be non-negative", self.r)));
        }
        if let Some(h) = self.h {
            if !(h > 0.0) {
                return Err(invalid(format!("fading gain {h} must be positive")));
            }
        }
        Ok(())
    }

    /// SINR threshold `s = 2^r − 1`.
    pub fn threshold(&self) -> f64 {
        self.r.exp2() - 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageBounds {
    pub lower: f64,
    pub upper: f64,
}

/// Lower and upper bounds on the outage probability, clamped to `[0, 1]`.
///
/// With `s = 2^r − 1`, the lower bound is `1 − s^{−d/α}` (interference from
/// the second-nearest node alone). The high-power upper bound is
/// `(ds/(α−d)) (1 − e^{−(α−d)/(ds)})`; for finite `h` it is
/// `(ds/(α−d)) (1 + 2(s/h) v(d)^{−α/d} Γ(2+α/d)) + exp(−v(d) (2s/h)^{−d/α})`.
pub fn outage_bounds(query: &OutageQuery) -> Result<OutageBounds> {
    query.validate()?;
    let s = query.threshold();
    let (d, alpha) = (query.d as f64, query.alpha);
    let clamp = |x: f64| if x.is_nan() { 1.0 } else { x.clamp(0.0, 1.0) };
    let lower = if s > 0.0 { 1.0 - s.powf(-d / alpha) } else { 0.0 };
    let lead = d * s / (alpha - d);
    let upper = match query.h {
        None => {
            if s == 0.0 {
                0.0
            } else {
                lead * (1.0 - (-(alpha - d) / (d * s)).exp())
            }
        }
        Some(h) => {
            let v = unit_ball_volume(query.d);
            let noise = if s == 0.0 { 0.0 } else { (-v * (2.0 * s / h).powf(-d / alpha)).exp() };
            lead * (1.0 + 2.0 * (s / h) * v.powf(-alpha / d) * gamma(2.0 + alpha / d)) + noise
        }
    };
    Ok(OutageBounds { lower: clamp(lower), upper: clamp(upper) })
}

/// Window radius for the Palm simulation: at least 20 and large enough that
/// the standard deviation of the discarded interference is below 1e-3 of the
/// mean interference from beyond unit distance.
pub fn palm_window_radius(d: usize, alpha: f64) -> f64 {
    let v = unit_ball_volume(d);
    let df = d as f64;
    let tail_sd_coef = (df * v / (2.0 * alpha - df)).sqrt();
    let mean_beyond_one = df * v / (alpha - df);
    let r_star = (tail_sd_coef / (1e-3 * mean_beyond_one)).powf(2.0 / (2.0 * alpha - df));
    r_star.max(20.0)
}

const MAX_WINDOW_POINTS: f64 = 5e6;

/// SINR of the link from the nearest node to a receiver at the origin.
/// Only distances matter, so nodes are drawn as radii `R U^{1/d}`.
fn trial_sinr<R: Rng>(r: &mut R, d: usize, alpha: f64, h: Option<f64>, radius: f64, law: &Poisson<f64>, tail: f64) -> f64 {
    let count = law.sample(r) as usize;
    if count == 0 {
        return 0.0;
    }
    let inv_d = 1.0 / d as f64;
    let mut nearest = f64::INFINITY;
    let mut total = 0.0;
    for _ in 0..count {
        let rho = radius * r.random::<f64>().powf(inv_d);
        nearest = nearest.min(rho);
        total += rho.powf(-alpha);
    }
    let signal = nearest.powf(-alpha);
    let interference = (total - signal).max(0.0) + tail;
    match h {
        None => signal / interference,
        Some(h) => h * signal / (1.0 + h * interference),
    }
}

/// Monte Carlo outage estimates for several rates from shared configurations.
pub fn outage_monte_carlo_grid(d: usize, alpha: f64, h: Option<f64>, rates: &[f64], trials: usize, seed: u64) -> Result<Vec<f64>> {
    for &r in rates {
        OutageQuery { r, d, alpha, h }.validate()?;
    }
    if trials == 0 {
        return Err(invalid("trials must be at least 1"));
    }
    let radius = palm_window_radius(d, alpha);
    let v = unit_ball_volume(d);
    let mean_count = v * radius.powi(d as i32);
    if mean_count > MAX_WINDOW_POINTS {
        return Err(invalid(format!("simulation window would hold {mean_count:.0} nodes; alpha too close to d")));
    }
    let law = Poisson::new(mean_count).map_err(|e| invalid(e.to_string()))?;
    let tail = d as f64 * v / (alpha - d as f64) * radius.powf(-(alpha - d as f64));
    let sinrs: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| trial_sinr(&mut substream(seed, t as u64), d, alpha, h, radius, &law, tail))
        .collect();
    Ok(rates
        .iter()
        .map(|&r| {
            let s = r.exp2() - 1.0;
            sinrs.iter().filter(|x| **x <= s).count() as f64 / trials as f64
        })
        .collect())
}

/// Fraction of fresh Poisson configurations with `log₂(1 + SINR) <= r`.
pub fn outage_monte_carlo(query: &OutageQuery, trials: usize, seed: u64) -> Result<f64> {
    Ok(outage_monte_carlo_grid(query.d, query.alpha, query.h, &[query.r], trials, seed)?[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_values() {
        let b = outage_bounds(&OutageQuery::high_power(2.0, 2, 4.0)).unwrap();
        assert!((b.lower - 0.422_649_7).abs() < 1e-6);
        assert!((b.upper - 0.850_406).abs() < 1e-6);
        assert!((b.upper - 0.850_43).abs() < 1e-4);
    }

    #[test]
    fn limits_and_clamping() {
        let b = outage_bounds(&OutageQuery::high_power(1e-9, 2, 4.0)).unwrap();
        assert!(b.upper < 1e-8 && b.lower == 0.0);
        let b = outage_bounds(&OutageQuery::high_power(0.0, 2, 4.0)).unwrap();
        assert_eq!((b.lower, b.upper), (0.0, 0.0));
        let b = outage_bounds(&OutageQuery { r: 3.0, d: 2, alpha: 3.0, h: Some(0.1) }).unwrap();
        assert!(b.upper <= 1.0);
        assert!(matches!(outage_bounds(&OutageQuery::high_power(1.0, 2, 2.0)), Err(Error::Divergent { .. })));
    }

    #[test]
    fn ratio_invariance_of_high_power_upper() {
        for r in [0.1, 0.5, 1.0, 2.0, 4.0] {
            let a = outage_bounds(&OutageQuery::high_power(r, 1, 2.0)).unwrap().upper;
            let b = outage_bounds(&OutageQuery::high_power(r, 2, 4.0)).unwrap().upper;
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn ordering_and_finite_h() {
        for d in 1..=3 {
            for alpha in [d as f64 + 0.5, d as f64 + 2.0] {
                for r in [0.05, 0.5, 1.0, 2.0, 3.0] {
                    let hp = outage_bounds(&OutageQuery::high_power(r, d, alpha)).unwrap();
                    assert!(0.0 <= hp.lower && hp.lower <= hp.upper && hp.upper <= 1.0);
                    for h in [1.0, 1e2, 1e6] {
                        let f = outage_bounds(&OutageQuery { r, d, alpha, h: Some(h) }).unwrap();
                        assert!(f.upper >= hp.upper - 1e-12);
                    }
                }
            }
        }
        let hp = outage_bounds(&OutageQuery::high_power(0.1, 2, 4.0)).unwrap().upper;
        let f = outage_bounds(&OutageQuery { r: 0.1, d: 2, alpha: 4.0, h: Some(1e6) }).unwrap().upper;
        assert!((f - hp).abs() < 1e-3);
    }

    #[test]
    fn monte_carlo_extremes() {
        let p = outage_monte_carlo(&OutageQuery::high_power(50.0, 2, 3.0), 200, 1).unwrap();
        assert_eq!(p, 1.0);
        let p = outage_monte_carlo(&OutageQuery::high_power(1e-6, 2, 3.0), 500, 1).unwrap();
        assert!(p < 0.01);
    }

    #[test]
    fn monte_carlo_within_bounds() {
        let rates = [0.5, 1.0, 2.0];
        let est = outage_monte_carlo_grid(2, 3.0, None, &rates, 4000, 5).unwrap();
        for (r, p) in rates.iter().zip(est) {
            let b = outage_bounds(&OutageQuery::high_power(*r, 2, 3.0)).unwrap();
            assert!(b.lower <= p && p <= b.upper, "r={r}: {} <= {p} <= {}", b.lower, b.upper);
        }
    }

    #[test]
    fn window_radius() {
        assert_eq!(palm_window_radius(2, 4.0), 20.0);
        assert!(palm_window_radius(2, 2.2) > 20.0);
    }
}
