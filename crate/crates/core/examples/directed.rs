//! Directed systems: the tension uses only the positive part of ⟨k, z⟩ and
//! the Wulff shape is a translated zonotope.

use std::collections::BTreeMap;

use ising_zonoids::num::{format_rational, rat};
use ising_zonoids::zonoid::directed_wulff;
use ising_zonoids::{presets, DirectedIsingSystem, LatticeVector};

fn main() -> ising_zonoids::Result<()> {
    let single = DirectedIsingSystem::new(
        2,
        BTreeMap::from([(LatticeVector::from([1, 0]), rat(1, 1))]),
    )?;
    let (z, t) = directed_wulff(&single)?;
    let show = |v: &[ising_zonoids::Rational]| {
        v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
    };
    println!(
        "single bond: generator ({}), translation ({})",
        show(&z.generators()[0]),
        show(&t)
    );
    for x in [[1.0, 0.0], [-1.0, 0.0], [0.6, 0.8]] {
        println!("  phi({x:?}) = {}", single.directed_surface_tension(&x));
    }
    let sym = presets::diagonal_2d();
    let reduced = DirectedIsingSystem::from_undirected(&sym);
    let z = [rat(2, 7), rat(-5, 7)];
    println!(
        "diagonal: undirected {} = directed {}",
        sym.surface_tension_exact(&z)?,
        reduced.directed_surface_tension_exact(&z)?
    );
    Ok(())
}
