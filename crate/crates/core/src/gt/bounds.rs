use crate::error::{invalid, Error, Result};
use crate::special::log2_choose;

use super::channel::GtChannel;
use super::mutual_info::mutual_info;

/// Per-i data of a bound computation, i = number of misidentified defects.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundTerm {
    pub i: usize,
    /// `log₂ C(N-K, i) C(K, i)`.
    pub upper_numerator: f64,
    /// `log₂ C(N-K+i, i)`.
    pub lower_numerator: f64,
    /// `I_i` at the minimiser of the upper bound.
    pub mi_at_upper: f64,
    /// `I_i` at the minimiser of the lower bound.
    pub mi_at_lower: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub t_upper: f64,
    pub t_lower: f64,
    pub p_star_upper: f64,
    pub p_star_lower: f64,
    pub terms: Vec<BoundTerm>,
}

/// `{0.01, …, 0.99} ∪ {1/K, 1/(K+1)}`, sorted.
pub fn default_p_grid(k: usize) -> Vec<f64> {
    let mut g: Vec<f64> = (1..100).map(|j| j as f64 / 100.0).collect();
    g.push(1.0 / k.max(1) as f64);
    g.push(1.0 / (k + 1) as f64);
    g.retain(|p| *p > 0.0 && *p < 1.0);
    g.sort_by(f64::total_cmp);
    g.dedup();
    g
}

struct Objective<'a> {
    channel: &'a GtChannel,
    k: usize,
    numerators: Vec<f64>,
}

impl Objective<'_> {
    fn eval(&self, p: f64) -> Result<f64> {
        let mut worst = 0.0f64;
        for (idx, &num) in self.numerators.iter().enumerate() {
            if num <= 0.0 {
                continue;
            }
            let mi = mutual_info(self.channel, self.k, idx + 1, p)?;
            worst = worst.max(if mi > 0.0 { num / mi } else { f64::INFINITY });
        }
        Ok(worst)
    }

    /// Grid minimum, refined by golden-section search between the grid
    /// neighbours of the best point.
    fn minimise(&self, grid: &[f64]) -> Result<(f64, f64)> {
        let values = grid.iter().map(|&p| self.eval(p)).collect::<Result<Vec<f64>>>()?;
        let (best, &fbest) = values.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).expect("grid is non-empty");
        if !fbest.is_finite() {
            return Err(Error::InfiniteBound);
        }
        let mut lo = if best > 0 { grid[best - 1] } else { grid[best] / 2.0 };
        let mut hi = if best + 1 < grid.len() { grid[best + 1] } else { (grid[best] + 1.0) / 2.0 };
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let mut x1 = hi - phi * (hi - lo);
        let mut x2 = lo + phi * (hi - lo);
        let (mut f1, mut f2) = (self.eval(x1)?, self.eval(x2)?);
        for _ in 0..60 {
            if f1 <= f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - phi * (hi - lo);
                f1 = self.eval(x1)?;
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + phi * (hi - lo);
                f2 = self.eval(x2)?;
            }
        }
        let (p, f) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
        Ok(if f < fbest { (p, f) } else { (grid[best], fbest) })
    }
}

fn numerator(log_value: f64) -> f64 {
    // An empty family of confusable sets contributes no constraint.
    if log_value.is_finite() { log_value.max(0.0) } else { 0.0 }
}

/// Achievability and converse test counts for an only-defects-matter
/// channel, both indexed by the number i of misidentified defects.
pub fn bounds(channel: &GtChannel, n: usize, k: usize, p_grid: Option<&[f64]>) -> Result<BoundReport> {
    if k == 0 || k > n {
        return Err(invalid(format!("need 1 <= K <= N, got K = {k}, N = {n}")));
    }
    channel.law(0)?;
    let grid = match p_grid {
        Some(g) if g.is_empty() || g.iter().any(|p| !(*p > 0.0 && *p < 1.0)) => {
            return Err(invalid("p grid must be a non-empty subset of (0,1)"));
        }
        Some(g) => {
            let mut g = g.to_vec();
            g.sort_by(f64::total_cmp);
            g
        }
        None => default_p_grid(k),
    };
    let (nn, kk) = (n as u64, k as u64);
    let upper_num: Vec<f64> =
        (1..=kk).map(|i| numerator(log2_choose(nn - kk, i) + log2_choose(kk, i))).collect();
    let lower_num: Vec<f64> = (1..=kk).map(|i| numerator(log2_choose(nn - kk + i, i))).collect();
    let upper = Objective { channel, k, numerators: upper_num.clone() };
    let lower = Objective { channel, k, numerators: lower_num.clone() };
    let (p_star_upper, t_upper) = upper.minimise(&grid)?;
    let (p_star_lower, t_lower) = lower.minimise(&grid)?;
    let terms = (1..=k)
        .map(|i| {
            Ok(BoundTerm {
                i,
                upper_numerator: upper_num[i - 1],
                lower_numerator: lower_num[i - 1],
                mi_at_upper: mutual_info(channel, k, i, p_star_upper)?,
                mi_at_lower: mutual_info(channel, k, i, p_star_lower)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(BoundReport { t_upper, t_lower, p_star_upper, p_star_lower, terms })
}
