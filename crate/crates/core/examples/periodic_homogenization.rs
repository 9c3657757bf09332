//! A 2-periodic layered medium: the interface settles on the weak rows.

use ising_zonoids::ground_state::{homogenized_tension, PeriodicCoefficients, PeriodicKind};
use ising_zonoids::num::rat;
use ising_zonoids::LatticeVector;

fn main() -> ising_zonoids::Result<()> {
    let (e1, e2) = (LatticeVector::from([1, 0]), LatticeVector::from([0, 1]));
    let mut entries = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            let base = LatticeVector::from([x, y]);
            let vertical = if y == 0 { rat(2, 1) } else { rat(1, 2) };
            entries.push((base.clone(), e1.clone(), rat(1, 1)));
            entries.push((base.clone(), e1.neg(), rat(1, 1)));
            entries.push((base.clone(), e2.clone(), vertical.clone()));
            entries.push((base.add(&e2), e2.neg(), vertical));
        }
    }
    let layered = PeriodicCoefficients::new(2, 2, PeriodicKind::Undirected, entries)?;
    for nu in [[0.0, 1.0], [1.0, 0.0], [1.0, 1.0]] {
        let row: Vec<String> = [4, 8, 16]
            .iter()
            .map(|&t| homogenized_tension(&layered, &nu, t).map(|v| format!("{v:.4}")))
            .collect::<Result<_, _>>()?;
        println!("nu = {nu:?}: {}", row.join("  "));
    }
    Ok(())
}
