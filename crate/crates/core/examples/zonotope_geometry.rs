//! Volume, membership and support function of a zonotope.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ising_zonoids::Zonotope;

fn main() -> ising_zonoids::Result<()> {
    let z = Zonotope::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]])?;
    let mut rng = ChaCha8Rng::seed_from_u64(ising_zonoids::DEFAULT_SEED);
    let n = 200_000;
    let hits = (0..n)
        .filter(|_| z.contains(&[rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)]))
        .count();
    println!(
        "volume {} (Monte-Carlo {:.4})",
        z.volume(),
        16.0 * hits as f64 / n as f64
    );
    println!("support at (1, 0): {}", z.support(&[1.0, 0.0]));
    println!("gauge of (1, 1): {}", z.gauge(&[1.0, 1.0]));
    for v in z.polygon_2d()?.vertices() {
        println!("vertex {v:?}");
    }
    Ok(())
}
