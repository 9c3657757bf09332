//! Wulff shape of a system as an intersection of half-planes, compared with
//! the zonotope of its generating measure. Writes `wulff.svg`.

use ising_zonoids::io::polygon_svg;
use ising_zonoids::num::rat;
use ising_zonoids::zonoid::{hausdorff_distance, perimeter_energy_polygon, wulff_shape_2d};
use ising_zonoids::{IsingSystem, LatticeVector};

fn main() -> ising_zonoids::Result<()> {
    let system = IsingSystem::from_pairs(
        2,
        [
            (LatticeVector::from([1, 0]), rat(1, 1)),
            (LatticeVector::from([1, 1]), rat(1, 2)),
            (LatticeVector::from([-1, 2]), rat(1, 4)),
        ],
    )?;
    let clipped = wulff_shape_2d(|z| system.surface_tension(z), 720)?;
    let zonogon = system.generating_measure().exact_zonotope()?.polygon_2d()?;
    let exact_area = zonogon.area();
    let energy = perimeter_energy_polygon(
        |z| system.surface_tension_exact(z).expect("planar"),
        &zonogon,
    );
    println!(
        "vertices: clipped {}, exact {}",
        clipped.vertices().len(),
        zonogon.vertices().len()
    );
    println!(
        "Hausdorff distance: {:.2e}",
        hausdorff_distance(&clipped, &zonogon.to_f64(), 1440)
    );
    println!("area = {exact_area}, perimeter energy = {energy} (twice the area)");
    std::fs::write("wulff.svg", polygon_svg(&zonogon.to_f64()))?;
    Ok(())
}
