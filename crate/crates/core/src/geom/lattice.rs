use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::special::gamma;
use crate::stats::compensated_sum;

/// Volume of the unit ball in R^d, `π^{d/2} / Γ(1 + d/2)`.
pub fn unit_ball_volume(d: usize) -> f64 {
    PI.powf(d as f64 / 2.0) / gamma(1.0 + d as f64 / 2.0)
}

/// Interference at a lattice receiver, with the closed-form upper bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularInterference {
    pub value: f64,
    pub closed_form_bound: f64,
    /// Radius of the last direct summation.
    pub radius: u64,
    /// False if the point budget ran out before successive radii agreed.
    pub converged: bool,
}

const POINT_BUDGET: u64 = 40_000_000;

/// Sum of `‖t‖^{-α}` over lattice points with `0 < ‖t‖ <= radius`, minus the
/// transmitter at e₁, plus the number of points in the closed ball.
fn lattice_partial(alpha: f64, d: usize, radius: i64) -> (f64, u64) {
    let r2 = radius * radius;
    let mut terms = Vec::new();
    let mut count = 0u64;
    let mut coords = vec![-radius; d];
    loop {
        let sq: i64 = coords.iter().map(|c| c * c).sum();
        if sq <= r2 {
            count += 1;
            let is_tx = coords[0] == 1 && coords[1..].iter().all(|c| *c == 0);
            if sq > 0 && !is_tx {
                terms.push((sq as f64).powf(-alpha / 2.0));
            }
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == d {
                terms.sort_by(|a, b| a.total_cmp(b));
                return (compensated_sum(terms), count);
            }
            coords[k] += 1;
            if coords[k] <= radius {
                break;
            }
            coords[k] = -radius;
            k += 1;
        }
    }
}

/// Interference at the origin of Z^d from every lattice node except the
/// origin itself and its transmitter at `(1, 0, …, 0)`, each received with
/// power `h ‖t‖^{-α}`.
///
/// Points with `‖t‖ <= R` are summed directly; the rest is replaced by the
/// integral `h d v(d)/(α−d) R_eff^{-(α−d)}`, where `v(d) R_eff^d` equals the
/// number of lattice points summed. R doubles until two successive estimates
/// differ by less than `tol`.
pub fn regular_interference(alpha: f64, d: usize, h: f64, tol: f64) -> Result<RegularInterference> {
    if d == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    if !(alpha > d as f64) {
        return Err(Error::Divergent { alpha, d });
    }
    let v = unit_ball_volume(d);
    let excess = alpha - d as f64;
    let closed_form_bound = h * alpha / excess * 2f64.powi(d as i32 - 1) * (1..=d as u64 + 1).product::<u64>() as f64;
    let estimate = |radius: i64| {
        let (partial, count) = lattice_partial(alpha, d, radius);
        let r_eff = (count as f64 / v).powf(1.0 / d as f64);
        h * (partial + d as f64 * v / excess * r_eff.powf(-excess))
    };
    let mut radius = 8i64;
    let mut prev = estimate(radius);
    loop {
        let next_radius = radius * 2;
        if ((2 * next_radius + 1) as u64).pow(d as u32) > POINT_BUDGET {
            return Ok(RegularInterference { value: prev, closed_form_bound, radius: radius as u64, converged: false });
        }
        let next = estimate(next_radius);
        radius = next_radius;
        if (next - prev).abs() < tol {
            return Ok(RegularInterference { value: next, closed_form_bound, radius: radius as u64, converged: true });
        }
        prev = next;
    }
}
