//! Node placements, attenuation and the outage analysis of random networks.
//!
//! All formulas use the power-domain exponent: a transmitter at distance ρ is
//! received with power `h ρ^{-α}` (amplitude `√h ρ^{-α/2}`). Rates are
//! `log₂(1 + SINR)` with interference treated as noise and unit noise power,
//! or no noise at all in the interference-limited regime.

mod attenuation;
mod growth;
mod lattice;
mod outage;
mod placement;

pub use attenuation::{AttenuationKind, AttenuationModel, NoiseFloor};
pub use growth::{chernoff_check, linear_growth_experiment, ChernoffCheck, GrowthOutcome};
pub use lattice::{regular_interference, unit_ball_volume, RegularInterference};
pub use outage::{outage_bounds, outage_monte_carlo, outage_monte_carlo_grid, palm_window_radius, OutageBounds, OutageQuery};
pub(crate) use placement::{distance as placement_distance, sample_placement_with};
pub use placement::{link_rate, sample_placement, LinkRate, Placement, PlacementModel, PointSet, SpatialLaw};
