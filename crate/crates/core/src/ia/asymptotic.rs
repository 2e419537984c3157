use crate::error::{invalid, Result};

/// Many-user regime: fixed DOF `alpha` (I) or DOF `beta / n` (II).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    I { alpha: f64 },
    II { beta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeQuery {
    pub regime: Regime,
    pub n: usize,
}

impl RegimeQuery {
    pub fn new(regime: Regime, n: usize) -> Result<Self> {
        match regime {
            Regime::I { alpha } if !(alpha > 0.0 && alpha <= 0.5) => {
                Err(invalid(format!("alpha = {alpha} outside (0, 1/2]")))
            }
            Regime::II { beta } if !(beta >= 1.0) => Err(invalid(format!("beta = {beta} below 1"))),
            _ => Ok(Self { regime, n }),
        }
    }
}

/// Scheme family whose exponent is predicted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Best parent JAP-B scheme.
    ParentJapb,
    /// JAP-B([m]) time-shared among n users.
    ChildOfJapbM,
}

/// Leading-order exponent, with an interval when only bounds are known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub value: f64,
    pub interval: Option<(f64, f64)>,
}

pub fn asymptotic_prediction(query: RegimeQuery, family: Family) -> Result<Prediction> {
    let query = RegimeQuery::new(query.regime, query.n)?;
    let n = query.n as f64;
    Ok(match (query.regime, family) {
        (Regime::I { alpha }, Family::ParentJapb) => {
            let k = (1.0 / alpha).floor() - 1.0;
            Prediction { value: n * n / k, interval: None }
        }
        (Regime::I { alpha }, Family::ChildOfJapbM) => {
            Prediction { value: 4.0 * alpha * alpha * n * n - 6.0 * alpha * n, interval: None }
        }
        (Regime::II { beta }, Family::ParentJapb) => {
            let lo = (beta + 1.0 / beta - 2.0) * n;
            let hi = beta * n;
            Prediction { value: 0.5 * (lo + hi), interval: Some((lo, hi)) }
        }
        (Regime::II { beta }, Family::ChildOfJapbM) => {
            let m = (2.0 * beta).floor();
            Prediction { value: (m - 1.0) * (m - 2.0), interval: None }
        }
    })
}
