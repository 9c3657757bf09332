use num_traits::Zero;

use crate::error::Result;
use crate::ising::DirectedIsingSystem;
use crate::num::{rat_int, Rational};
use crate::zonoid::zonotope::Zonotope;

/// Wulff shape of a directed system: the sum of segments `[0, 4 a_k k]`,
/// returned as the centered zonotope with generators `2 a_k k` and the
/// translation `2 Σ a_k k`. Its support function is `4 Σ a_k ⟨k, z⟩^+`.
pub fn directed_wulff(system: &DirectedIsingSystem) -> Result<(Zonotope<Rational>, Vec<Rational>)> {
    let dim = system.dim();
    let mut translation = vec![Rational::zero(); dim];
    let mut gens = Vec::with_capacity(system.coefficients().len());
    for (k, a) in system.coefficients() {
        let half: Vec<Rational> = k.components().iter().map(|&c| a * rat_int(2 * c)).collect();
        for (t, h) in translation.iter_mut().zip(&half) {
            *t += h;
        }
        gens.push(half);
    }
    Ok((Zonotope::new(dim, gens)?, translation))
}
