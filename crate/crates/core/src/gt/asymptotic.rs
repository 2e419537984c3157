use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AsymptoticKind {
    Deterministic,
    Addition { q: f64 },
    Dilution { u: f64 },
}

/// Asymptotic test count. The dilution constant is only known up to a
/// correction `0 ≤ f(u) ≤ u²/(1-u)`, so the value is an interval; the other
/// kinds return a point (`low == high`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticValue {
    pub low: f64,
    pub high: f64,
}

/// Large-N, large-K approximations to the achievability bound.
pub fn asymptotic_t(kind: AsymptoticKind, n: usize, k: usize) -> Result<AsymptoticValue> {
    if k < 2 || n <= k {
        return Err(invalid(format!("asymptotic forms need 2 <= K < N, got K = {k}, N = {n}")));
    }
    let (nf, kf) = (n as f64, k as f64);
    let e = std::f64::consts::E;
    let bracket = e * kf * (1.0 + (nf - kf).ln() / kf.ln());
    let point = |v: f64| AsymptoticValue { low: v, high: v };
    match kind {
        AsymptoticKind::Deterministic => Ok(point(bracket)),
        AsymptoticKind::Addition { q } => {
            if !(q > 0.0 && q <= 1.0) {
                return Err(invalid(format!("addition probability {q} outside (0,1]")));
            }
            Ok(point(e * kf * (kf * (nf - kf)).ln() / (1.0 / q).ln()))
        }
        AsymptoticKind::Dilution { u } => {
            if !(0.0..1.0).contains(&u) {
                return Err(invalid(format!("dilution probability {u} outside [0,1)")));
            }
            Ok(AsymptoticValue { low: bracket * u.exp(), high: bracket * (u + u * u / (1.0 - u)).exp() })
        }
    }
}
