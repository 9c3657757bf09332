//! Different coefficients, same generating measure, same surface tension.

use ising_zonoids::num::rat;
use ising_zonoids::presets;

fn main() -> ising_zonoids::Result<()> {
    let nn = presets::nearest_neighbour(2);
    let r2 = presets::range_two(2);
    let a = presets::alfamult(2, &[rat(1, 1), rat(1, 2)])?;
    let b = presets::alfamult(2, &[rat(0, 1), rat(1, 1)])?;
    println!("nearest-neighbour ~ range-two: {}", nn.equivalent(&r2));
    println!("alfamult (1, 1/2) ~ alfamult (0, 1): {}", a.equivalent(&b));
    println!(
        "alfamult (1, 1/2) ~ nearest-neighbour: {}",
        a.equivalent(&nn)
    );
    println!(
        "nearest-neighbour ~ diagonal: {}",
        nn.equivalent(&presets::diagonal_2d())
    );
    for (class, s) in a.aggregates() {
        println!("  aggregate on {class}: {s}");
    }
    Ok(())
}
