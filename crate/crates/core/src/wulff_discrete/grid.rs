use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ising::IsingSystem;
use crate::lattice::LatticeVector;
use crate::num::{common_denominator, rat_int, Rational};

/// The box `[-R, R]^d` in row-major order with integer bond weights.
///
/// A `+1` site `i` with a `-1` site at `i + k` costs `8 α_k`; weights are
/// stored as `8 α_k · scale` so energies stay exact in `i64`.
#[derive(Clone, Debug)]
pub(crate) struct BoxGrid {
    pub dim: usize,
    pub radius: i64,
    pub side: i64,
    pub len: usize,
    pub offsets: Vec<Vec<i64>>,
    pub weights: Vec<i64>,
    pub scale: i64,
}

impl BoxGrid {
    pub fn new(system: &IsingSystem, radius: i64) -> Result<BoxGrid> {
        if radius < 0 {
            return Err(Error::InvalidArgument(format!(
                "box radius must be nonnegative, got {radius}"
            )));
        }
        let dim = system.dim();
        let side = 2 * radius + 1;
        let len = (side as u128)
            .checked_pow(dim as u32)
            .filter(|n| *n <= isize::MAX as u128)
            .ok_or_else(|| Error::InvalidArgument(format!("box of radius {radius} is too large")))?
            as usize;
        let scale = common_denominator(system.coefficients().values());
        let mut offsets = Vec::new();
        let mut weights = Vec::new();
        for (k, a) in system.coefficients() {
            let w = a * rat_int(8) * Rational::from_integer(scale.clone());
            offsets.push(k.components().to_vec());
            weights.push(w.to_integer().to_i64().ok_or(Error::CapacityOverflow)?);
        }
        let scale = scale.to_i64().ok_or(Error::CapacityOverflow)?;
        Ok(BoxGrid {
            dim,
            radius,
            side,
            len,
            offsets,
            weights,
            scale,
        })
    }

    pub fn coords(&self, mut idx: usize) -> Vec<i64> {
        let mut c = vec![0; self.dim];
        for slot in c.iter_mut().rev() {
            *slot = (idx as i64 % self.side) - self.radius;
            idx /= self.side as usize;
        }
        c
    }

    pub fn index(&self, c: &[i64]) -> Option<usize> {
        let mut idx = 0usize;
        for &x in c {
            if x < -self.radius || x > self.radius {
                return None;
            }
            idx = idx * self.side as usize + (x + self.radius) as usize;
        }
        Some(idx)
    }

    pub fn site(&self, idx: usize) -> LatticeVector {
        LatticeVector::new(self.coords(idx))
    }

    /// Index of `idx + offsets[j]`, or `None` outside the box.
    pub fn neighbour(&self, idx: usize, j: usize) -> Option<usize> {
        let mut c = self.coords(idx);
        for (x, k) in c.iter_mut().zip(&self.offsets[j]) {
            *x += k;
        }
        self.index(&c)
    }

    pub fn on_boundary(&self, idx: usize) -> bool {
        self.coords(idx).iter().any(|x| x.abs() == self.radius)
    }

    /// Energy change, in units of `1/scale`, of turning `x` to `+1`.
    pub fn add_delta(&self, plus: &[bool], x: usize) -> i64 {
        let mut delta = 0;
        for (j, w) in self.weights.iter().enumerate() {
            match self.neighbour(x, j) {
                Some(y) if plus[y] => delta -= w,
                _ => delta += w,
            }
        }
        delta
    }

    pub fn energy_units(&self, plus: &[bool], members: &[usize]) -> i64 {
        let mut e = 0;
        for &i in members {
            for (j, w) in self.weights.iter().enumerate() {
                if !matches!(self.neighbour(i, j), Some(y) if plus[y]) {
                    e += w;
                }
            }
        }
        e
    }

    pub fn to_rational(&self, units: i64) -> Rational {
        if units.is_zero() {
            return Rational::zero();
        }
        Rational::new(units.into(), self.scale.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;
    use crate::presets;

    #[test]
    fn index_round_trip() {
        let g = BoxGrid::new(&presets::nearest_neighbour(3), 2).unwrap();
        assert_eq!(g.len, 125);
        for i in 0..g.len {
            assert_eq!(g.index(&g.coords(i)), Some(i));
        }
        assert_eq!(g.index(&[3, 0, 0]), None);
    }

    #[test]
    fn weights_are_scaled_bond_costs() {
        let sys = IsingSystem::from_pairs(2, [(LatticeVector::from([1, 0]), rat(1, 3))]).unwrap();
        let g = BoxGrid::new(&sys, 1).unwrap();
        assert_eq!(g.scale, 3);
        assert_eq!(g.weights, vec![8, 8]);
        let mut plus = vec![false; g.len];
        let centre = g.index(&[0, 0]).unwrap();
        plus[centre] = true;
        assert_eq!(g.to_rational(g.energy_units(&plus, &[centre])), rat(16, 3));
    }
}
