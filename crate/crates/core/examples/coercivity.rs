//! Coercivity through the sublattice spanned by the interaction support,
//! with a zero-energy witness when it is proper.

use ising_zonoids::ground_state::{witness::distinct_spins, zero_energy_witness};
use ising_zonoids::num::rat;
use ising_zonoids::{presets, IsingSystem, LatticeVector};

fn main() -> ising_zonoids::Result<()> {
    let knight = IsingSystem::from_pairs(
        2,
        [
            (LatticeVector::from([1, 2]), rat(1, 1)),
            (LatticeVector::from([2, 1]), rat(1, 1)),
        ],
    )?;
    let systems = [
        ("nearest-neighbour", presets::nearest_neighbour(2)),
        ("range-two", presets::range_two(2)),
        ("diagonal", presets::diagonal_2d()),
        ("knight moves", knight),
    ];
    for (name, system) in systems {
        let dec = system.connectivity_sublattice()?;
        print!(
            "{name:>18}: coercive = {:5}, index = {}",
            system.is_coercive(),
            dec.index
        );
        match zero_energy_witness(&system, 6)? {
            Some(w) => println!(
                ", witness energy = {}, spins used = {}",
                system.energy(&w)?,
                distinct_spins(&w)
            ),
            None => println!(", interaction graph connected"),
        }
    }
    Ok(())
}
