use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::ia::recovery_failure_prob;

/// Output index of a negative test.
pub const NEGATIVE: usize = 0;
/// Output index of a positive test.
pub const POSITIVE: usize = 1;
/// Output index of an erased or mixed test on the ternary channels.
pub const UNCERTAIN: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelKind {
    Deterministic,
    /// A pool without defects still reads positive with probability `q`.
    Addition { q: f64 },
    /// Every defect in the pool is missed independently with probability `u`.
    Dilution { u: f64 },
    AdditionDilution { q: f64, u: f64 },
    /// Deterministic outcome, erased with probability `eps`.
    Erasure { eps: f64 },
    /// Positive iff the defective fraction `k/n` reaches `theta`.
    DilutionThreshold { theta: f64 },
    /// Reads the defect count exactly; the alphabet holds `0..=max_count`.
    Counting { max_count: usize },
    /// Reads `min{k, limit}`.
    Overflow { limit: usize },
    /// Negative if no defects, positive if all items are defective,
    /// uncertain otherwise.
    Symmetric,
    /// Positive iff a sum of k independent uniform nonzero elements of F_q
    /// is nonzero. Models the discovery protocol with cancellation.
    FieldCancellation { q: u32 },
}

/// A group-testing channel `p(y | n, k)` over outputs `0..alphabet_size`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GtChannel {
    kind: ChannelKind,
}

fn prob(name: &str, v: f64, lo_open: bool, hi_open: bool) -> Result<()> {
    let lo_ok = if lo_open { v > 0.0 } else { v >= 0.0 };
    let hi_ok = if hi_open { v < 1.0 } else { v <= 1.0 };
    if lo_ok && hi_ok {
        Ok(())
    } else {
        Err(invalid(format!("{name} = {v} is out of range")))
    }
}

pub fn make_channel(kind: ChannelKind) -> Result<GtChannel> {
    match kind {
        ChannelKind::Deterministic | ChannelKind::Symmetric => {}
        ChannelKind::Addition { q } => prob("q", q, true, true)?,
        ChannelKind::Dilution { u } => prob("u", u, false, true)?,
        ChannelKind::AdditionDilution { q, u } => {
            prob("q", q, true, true)?;
            prob("u", u, false, true)?;
        }
        ChannelKind::Erasure { eps } => prob("eps", eps, true, true)?,
        ChannelKind::DilutionThreshold { theta } => prob("theta", theta, true, true)?,
        ChannelKind::Counting { max_count } => {
            if max_count == 0 {
                return Err(invalid("counting channel needs max_count >= 1"));
            }
        }
        ChannelKind::Overflow { limit } => {
            if limit == 0 {
                return Err(invalid("overflow limit must be at least 1"));
            }
        }
        ChannelKind::FieldCancellation { q } => {
            crate::ff::PrimeField::new(q)?;
        }
    }
    Ok(GtChannel { kind })
}

impl GtChannel {
    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ChannelKind::Deterministic => "deterministic",
            ChannelKind::Addition { .. } => "addition",
            ChannelKind::Dilution { .. } => "dilution",
            ChannelKind::AdditionDilution { .. } => "addition-dilution",
            ChannelKind::Erasure { .. } => "erasure",
            ChannelKind::DilutionThreshold { .. } => "dilution-threshold",
            ChannelKind::Counting { .. } => "counting",
            ChannelKind::Overflow { .. } => "overflow",
            ChannelKind::Symmetric => "symmetric",
            ChannelKind::FieldCancellation { .. } => "field-cancellation",
        }
    }

    pub fn alphabet_size(&self) -> usize {
        match self.kind {
            ChannelKind::Erasure { .. } | ChannelKind::Symmetric => 3,
            ChannelKind::Counting { max_count } => max_count + 1,
            ChannelKind::Overflow { limit } => limit + 1,
            _ => 2,
        }
    }

    /// Whether the law is declared to depend on k alone.
    pub fn only_defects_matter(&self) -> bool {
        !matches!(self.kind, ChannelKind::DilutionThreshold { .. } | ChannelKind::Symmetric)
    }

    /// Output pmf for a pool of `n` items holding `k` defects.
    pub fn transition(&self, n: usize, k: usize) -> Result<Vec<f64>> {
        if k > n {
            return Err(invalid(format!("pool of {n} items cannot hold {k} defects")));
        }
        let mut pmf = vec![0.0; self.alphabet_size()];
        let binary = |pmf: &mut Vec<f64>, positive: f64| {
            pmf[POSITIVE] = positive;
            pmf[NEGATIVE] = 1.0 - positive;
        };
        match self.kind {
            ChannelKind::Deterministic => binary(&mut pmf, if k == 0 { 0.0 } else { 1.0 }),
            ChannelKind::Addition { q } => binary(&mut pmf, if k == 0 { q } else { 1.0 }),
            ChannelKind::Dilution { u } => binary(&mut pmf, if k == 0 { 0.0 } else { 1.0 - u.powi(k as i32) }),
            ChannelKind::AdditionDilution { q, u } => binary(&mut pmf, if k == 0 { q } else { 1.0 - u.powi(k as i32) }),
            ChannelKind::Erasure { eps } => {
                pmf[UNCERTAIN] = eps;
                pmf[if k == 0 { NEGATIVE } else { POSITIVE }] = 1.0 - eps;
            }
            ChannelKind::DilutionThreshold { theta } => {
                let hit = k > 0 && k as f64 >= theta * n as f64;
                binary(&mut pmf, if hit { 1.0 } else { 0.0 })
            }
            ChannelKind::Counting { max_count } => {
                if k > max_count {
                    return Err(invalid(format!("counting channel reads at most {max_count} defects, got {k}")));
                }
                pmf[k] = 1.0;
            }
            ChannelKind::Overflow { limit } => pmf[k.min(limit)] = 1.0,
            ChannelKind::Symmetric => {
                let y = if k == 0 {
                    NEGATIVE
                } else if k == n {
                    POSITIVE
                } else {
                    UNCERTAIN
                };
                pmf[y] = 1.0;
            }
            ChannelKind::FieldCancellation { q } => {
                let zero = if k == 0 { 1.0 } else { recovery_failure_prob(q, k as u32)? };
                binary(&mut pmf, 1.0 - zero)
            }
        }
        Ok(pmf)
    }

    /// `p(· | k)` for a channel where only defects matter.
    pub fn law(&self, k: usize) -> Result<Vec<f64>> {
        if !self.only_defects_matter() {
            return Err(Error::UnsupportedChannel(format!("{} depends on the pool size", self.name())));
        }
        self.transition(k, k)
    }

    pub fn sample<R: Rng + ?Sized>(&self, n: usize, k: usize, r: &mut R) -> Result<usize> {
        let pmf = self.transition(n, k)?;
        let u: f64 = r.random();
        let mut acc = 0.0;
        for (y, p) in pmf.iter().enumerate() {
            acc += p;
            if u < acc {
                return Ok(y);
            }
        }
        Ok(pmf.iter().rposition(|p| *p > 0.0).unwrap_or(0))
    }

    /// Numerical check that `transition(n, k)` does not vary with n over
    /// `k ≤ n ≤ n_max`.
    pub fn verify_odm(&self, n_max: usize) -> Result<bool> {
        for k in 0..=n_max {
            let base = self.transition(k, k)?;
            for n in k + 1..=n_max {
                let other = self.transition(n, k)?;
                if base.iter().zip(&other).any(|(a, b)| (a - b).abs() > 1e-15) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
pub(crate) fn all_test_channels() -> Vec<GtChannel> {
    [
        ChannelKind::Deterministic,
        ChannelKind::Addition { q: 0.1 },
        ChannelKind::Dilution { u: 0.5 },
        ChannelKind::AdditionDilution { q: 0.05, u: 0.2 },
        ChannelKind::Erasure { eps: 0.2 },
        ChannelKind::DilutionThreshold { theta: 0.4 },
        ChannelKind::Counting { max_count: 12 },
        ChannelKind::Overflow { limit: 2 },
        ChannelKind::Symmetric,
        ChannelKind::FieldCancellation { q: 5 },
    ]
    .into_iter()
    .map(|k| make_channel(k).unwrap())
    .collect()
}
