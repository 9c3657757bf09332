//! Surface tension of a few systems, evaluated directly and through the
//! support function of the zonotope built from the generating measure.

use ising_zonoids::num::rat;
use ising_zonoids::zonoid::support_function;
use ising_zonoids::{presets, IsingSystem, LatticeVector};

fn main() -> ising_zonoids::Result<()> {
    let mixed = IsingSystem::from_pairs(
        2,
        [
            (LatticeVector::from([1, 0]), rat(1, 1)),
            (LatticeVector::from([2, 0]), rat(1, 3)),
            (LatticeVector::from([1, 2]), rat(1, 2)),
        ],
    )?;
    let systems = [
        ("nearest-neighbour", presets::nearest_neighbour(2)),
        ("diagonal", presets::diagonal_2d()),
        ("mixed", mixed),
    ];
    let z = [rat(3, 5), rat(-4, 5)];
    for (name, system) in systems {
        let direct = system.surface_tension_exact(&z)?;
        let zonotope = system.generating_measure().exact_zonotope()?;
        let via_zonotope = support_function(&zonotope, &z);
        assert_eq!(direct, via_zonotope);
        println!("{name:>18}: phi(3/5, -4/5) = {direct}");
        for atom in system.generating_measure().atoms() {
            println!(
                "{:>18}  atom {} with weight {:.6}",
                "",
                atom.direction,
                atom.lambda()
            );
        }
    }
    Ok(())
}
