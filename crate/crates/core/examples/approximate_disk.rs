//! Rational zonotopes approaching the unit disk as the direction bound grows.

use ising_zonoids::ising::canonical_system;
use ising_zonoids::zonoid::{approximate_zonoid, ApproxOptions, ZonoidTarget};

fn main() -> ising_zonoids::Result<()> {
    let disk = ZonoidTarget::unit_disk();
    for bound in [2, 5, 10, 20] {
        let options = ApproxOptions {
            eta: 0.1,
            denominator_bound: bound,
            ..ApproxOptions::default()
        };
        let result = approximate_zonoid(&disk, &options)?;
        let system = canonical_system(&result.measure)?;
        println!(
            "bound {bound:>2}: {:>3} directions, sup-error {:.5}, coercive {}",
            result.measure.atoms().len(),
            result.sup_error,
            system.is_coercive()
        );
    }
    Ok(())
}
