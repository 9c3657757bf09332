//! Limit surface tensions, generating measures, zonotopes and Wulff shapes of
//! ferromagnetic Ising systems on `Z^d`, with exact min-cut interface
//! energies and volume-constrained ground states.

#![allow(
    clippy::neg_cmp_op_on_partial_ord,
    clippy::type_complexity,
    clippy::needless_range_loop
)]

pub mod cli;
pub mod error;
pub mod ground_state;
pub mod io;
pub mod ising;
pub mod lattice;
pub mod num;
pub mod presets;
pub mod wulff_discrete;
pub mod zonoid;

pub use error::{Error, Result};
pub use ising::{DirectedIsingSystem, IsingSystem};
pub use lattice::{DirectionClass, LatticeVector};
pub use num::Rational;
pub use zonoid::{GeneratingMeasure, Zonotope};

/// Seed used by every randomized routine unless one is given.
pub const DEFAULT_SEED: u64 = 1729;
