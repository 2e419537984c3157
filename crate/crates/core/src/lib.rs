//! Numerics for interference mitigation in wireless networks.
//!
//! The crate is organised by topic:
//!
//! - [`ff`]: prime fields, linear dependence and channel states.
//! - [`ia`]: ergodic alignment schemes, their delays and the scheme search.
//! - [`geom`]: node placements, attenuation, outage bounds, Monte Carlo.
//! - [`dense`]: rate matrices and bottleneck links for dense random networks.
//! - [`gt`]: group-testing channels, decoders, information bounds and
//!   interference-graph discovery.
//!
//! Shared helpers live in [`info`], [`special`], [`stats`] and [`rng`].

pub mod dense;
pub mod error;
pub mod ff;
pub mod geom;
pub mod gt;
pub mod ia;
pub mod info;
pub mod rng;
pub mod special;
pub mod stats;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/finite-fields.md")]
    mod finite_fields {}
    #[doc = include_str!("../../../book/src/alignment.md")]
    mod alignment {}
    #[doc = include_str!("../../../book/src/outage.md")]
    mod outage {}
    #[doc = include_str!("../../../book/src/dense.md")]
    mod dense {}
    #[doc = include_str!("../../../book/src/group-testing.md")]
    mod group_testing {}
    #[doc = include_str!("../../../book/src/discovery.md")]
    mod discovery {}
}
