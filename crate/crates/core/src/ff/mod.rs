//! Prime-field arithmetic and the linear algebra used by alignment schemes.
//!
//! Elements are plain `u32` values in `[0, q)`; the [`PrimeField`] carries the
//! modulus and performs every operation. Vectors and matrices remember their
//! field so mixing moduli is caught as a dimension error.

mod field;
mod linalg;
mod recovery;
mod state;

pub use field::PrimeField;
pub use linalg::{null_space, rank, solve_dependence};
pub use recovery::recovery_check;
pub use state::{sample_channel_state, ChannelState, FieldMatrix, FieldVector, NoiseModel};
