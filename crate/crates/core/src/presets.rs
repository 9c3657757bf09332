//! Named systems used throughout the examples and tests.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::ising::IsingSystem;
use crate::lattice::LatticeVector;
use crate::num::{rat, Rational};

/// `α_k = 1` for `k = ±e_ℓ`; `φ(z) = 8 ‖z‖_1`.
pub fn nearest_neighbour(dim: usize) -> IsingSystem {
    IsingSystem::from_pairs(
        dim,
        (0..dim).map(|l| (LatticeVector::unit(dim, l), rat(1, 1))),
    )
    .expect("valid system")
}

/// `α_k = 1/2` for `k = ±2e_ℓ`: same φ as [`nearest_neighbour`], not coercive.
pub fn range_two(dim: usize) -> IsingSystem {
    IsingSystem::from_pairs(
        dim,
        (0..dim).map(|l| (LatticeVector::unit(dim, l).scale(2), rat(1, 2))),
    )
    .expect("valid system")
}

/// `α_k = 1` for `k ∈ {±e_1 ± e_2}`: index-2 connectivity sublattice.
pub fn diagonal_2d() -> IsingSystem {
    IsingSystem::from_pairs(
        2,
        [
            (LatticeVector::from([1, 1]), rat(1, 1)),
            (LatticeVector::from([1, -1]), rat(1, 1)),
        ],
    )
    .expect("valid system")
}

/// Axis system with raw weight `λ_n` on `n e_ℓ` (`lambda[0]` is `λ_1`),
/// symmetrized. With `λ = Σ n λ_n`, `φ(z) = 4 λ ‖z‖_1`.
pub fn alfamult(dim: usize, lambda: &[Rational]) -> Result<IsingSystem> {
    let mut raw = BTreeMap::new();
    for (i, l) in lambda.iter().enumerate() {
        for axis in 0..dim {
            raw.insert(
                LatticeVector::unit(dim, axis).scale(i as i64 + 1),
                l.clone(),
            );
        }
    }
    IsingSystem::symmetrize(dim, &raw)
}
