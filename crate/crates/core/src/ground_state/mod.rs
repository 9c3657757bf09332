//! Minimal-interface energies by exact max-flow/min-cut, periodic
//! coefficients, and zero-energy witnesses of non-coercive systems.

pub mod maxflow;
pub mod periodic;
pub mod transition;
pub mod witness;

pub use periodic::{homogenized_tension, PeriodicCoefficients, PeriodicKind};
pub use transition::{
    brute_force_transition_energy, cube_frame, cube_sites, flat_interface_energy,
    min_transition_energy, surface_tension_sweep, sweep_csv, CutGraph, PairInteractions, SweepRow,
    TransitionProblem, TransitionSolution,
};
pub use witness::{box_connected_in_lattice, interaction_components, zero_energy_witness};
