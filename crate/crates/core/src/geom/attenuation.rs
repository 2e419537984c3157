use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AttenuationKind {
    /// `h ρ^{-α}`.
    PowerLaw,
    /// `min{cap, h ρ^{-α}}`; `cap = h` gives `h min{1, ρ^{-α}}`.
    Capped { cap: f64 },
    /// `h (ρ + ρ₀)^{-α}`.
    Shifted { rho0: f64 },
}

/// Received power as a function of distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttenuationModel {
    kind: AttenuationKind,
    h: f64,
    alpha: f64,
}

impl AttenuationModel {
    fn build(kind: AttenuationKind, h: f64, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(invalid(format!("attenuation exponent {alpha} must be positive")));
        }
        if !(h >= 0.0) || !h.is_finite() {
            return Err(invalid(format!("gain {h} must be finite and non-negative")));
        }
        match kind {
            AttenuationKind::Capped { cap } if !(cap > 0.0) => {
                return Err(invalid("cap must be positive"))
            }
            AttenuationKind::Shifted { rho0 } if !(rho0 > 0.0) => {
                return Err(invalid("shift must be positive"))
            }
            _ => {}
        }
        Ok(Self { kind, h, alpha })
    }

    pub fn power_law(h: f64, alpha: f64) -> Result<Self> {
        Self::build(AttenuationKind::PowerLaw, h, alpha)
    }

    /// `h min{1, ρ^{-α}}`.
    pub fn capped(h: f64, alpha: f64) -> Result<Self> {
        Self::build(AttenuationKind::Capped { cap: h.max(f64::MIN_POSITIVE) }, h, alpha)
    }

    /// `min{cap, h ρ^{-α}}`.
    pub fn capped_at(h: f64, alpha: f64, cap: f64) -> Result<Self> {
        Self::build(AttenuationKind::Capped { cap }, h, alpha)
    }

    pub fn shifted(h: f64, alpha: f64, rho0: f64) -> Result<Self> {
        Self::build(AttenuationKind::Shifted { rho0 }, h, alpha)
    }

    pub fn kind(&self) -> AttenuationKind {
        self.kind
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Constant with `a(ρ) <= c_dec ρ^{-α}` for every kind.
    pub fn c_dec(&self) -> f64 {
        self.h
    }

    /// Largest value `a` can take, if bounded.
    pub fn max_power(&self) -> Option<f64> {
        match self.kind {
            AttenuationKind::PowerLaw => None,
            AttenuationKind::Capped { cap } => Some(if self.h > 0.0 { cap } else { 0.0 }),
            AttenuationKind::Shifted { rho0 } => Some(self.h * rho0.powf(-self.alpha)),
        }
    }

    /// `a(ρ)`; the pure power law is singular at ρ = 0.
    pub fn power(&self, rho: f64) -> Result<f64> {
        if self.h == 0.0 {
            return Ok(0.0);
        }
        match self.kind {
            AttenuationKind::PowerLaw => {
                if rho <= 0.0 {
                    return Err(Error::Singular("zero distance under a pure power law".into()));
                }
                Ok(self.h * rho.powf(-self.alpha))
            }
            AttenuationKind::Capped { cap } => {
                if rho <= 0.0 {
                    return Ok(cap);
                }
                Ok(cap.min(self.h * rho.powf(-self.alpha)))
            }
            AttenuationKind::Shifted { rho0 } => Ok(self.h * (rho + rho0).powf(-self.alpha)),
        }
    }
}

/// Noise at each receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseFloor {
    /// Unit noise power.
    #[default]
    Unit,
    /// No noise: the `h -> inf` interference-limited regime.
    Absent,
}

impl NoiseFloor {
    pub fn power(self) -> f64 {
        match self {
            Self::Unit => 1.0,
            Self::Absent => 0.0,
        }
    }
}
