//! Minimal transition energies m_T(ν) by exact min-cut, normalized by the
//! cube face and compared with the closed-form tension.

use ising_zonoids::ground_state::{surface_tension_sweep, sweep_csv};
use ising_zonoids::presets;

fn main() -> ising_zonoids::Result<()> {
    let nn = presets::nearest_neighbour(2);
    for nu in [[0.0, 1.0], [1.0, 2.0], [1.0, 1.0]] {
        println!("nu = {nu:?}");
        print!(
            "{}",
            sweep_csv(&surface_tension_sweep(&nn, &nu, &[4, 8, 16, 32])?)
        );
    }
    let cubic = presets::nearest_neighbour(3);
    println!("nu = (1, 1, 1) in three dimensions");
    print!(
        "{}",
        sweep_csv(&surface_tension_sweep(&cubic, &[1.0, 1.0, 1.0], &[4, 8])?)
    );
    Ok(())
}
