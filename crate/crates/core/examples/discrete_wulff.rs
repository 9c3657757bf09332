//! Volume-constrained ground states of the nearest-neighbour system at
//! shrinking lattice spacings, compared with the square Wulff shape.

use ising_zonoids::presets;
use ising_zonoids::wulff_discrete::{wulff_convergence_diagnostic, DiagnosticOptions};

fn main() -> ising_zonoids::Result<()> {
    let nn = presets::nearest_neighbour(2);
    let eps: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("epsilon"))
        .collect();
    let eps = if eps.is_empty() {
        vec![1.0 / 2.0, 1.0 / 4.0, 1.0 / 8.0]
    } else {
        eps
    };
    let report = wulff_convergence_diagnostic(&nn, &eps, &DiagnosticOptions::default())?;
    print!("{}", report.to_csv());
    println!(
        "F(W) = {}, |W| = {}",
        report.wulff_energy, report.wulff_volume
    );
    Ok(())
}
