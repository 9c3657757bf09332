use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ground_state::transition::{min_transition_energy, PairInteractions, TransitionProblem};
use crate::ising::{DirectedIsingSystem, IsingSystem};
use crate::lattice::LatticeVector;
use crate::num::{format_rational, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeriodicKind {
    /// Energy `Σ a_{ij} (u_i - u_j)²` over ordered pairs.
    Undirected,
    /// Energy `Σ a_{ij} ((u_i - u_j)^+)²`.
    Directed,
}

/// `N`-periodic coefficients `a_{i, i+k}`, keyed by `(i mod N, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicCoefficients {
    dim: usize,
    period: i64,
    kind: PeriodicKind,
    entries: BTreeMap<(LatticeVector, LatticeVector), Rational>,
}

impl PeriodicCoefficients {
    /// Entries sharing a reduced key are summed; bases are taken mod `N`.
    pub fn new(
        dim: usize,
        period: i64,
        kind: PeriodicKind,
        entries: impl IntoIterator<Item = (LatticeVector, LatticeVector, Rational)>,
    ) -> Result<Self> {
        if period < 1 {
            return Err(Error::InvalidArgument(format!(
                "period must be positive, got {period}"
            )));
        }
        let mut map: BTreeMap<(LatticeVector, LatticeVector), Rational> = BTreeMap::new();
        for (base, k, a) in entries {
            for v in [&base, &k] {
                if v.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: v.dim(),
                    });
                }
            }
            if k.is_zero() {
                return Err(Error::InvalidArgument(
                    "coefficient on the zero offset".into(),
                ));
            }
            if a.is_negative() {
                return Err(Error::NotFerromagnetic {
                    offset: k.to_string(),
                    value: format_rational(&a),
                });
            }
            if a.is_zero() {
                continue;
            }
            *map.entry((reduce(&base, period), k))
                .or_insert_with(Rational::zero) += a;
        }
        Ok(PeriodicCoefficients {
            dim,
            period,
            kind,
            entries: map,
        })
    }

    /// Period-1 coefficients `a_{i,i+k} = α_{-k}` of a homogeneous system.
    pub fn from_homogeneous(system: &IsingSystem) -> Self {
        let zero = LatticeVector::zero(system.dim());
        let entries = system
            .coefficients()
            .iter()
            .map(|(k, a)| (zero.clone(), k.neg(), a.clone()));
        PeriodicCoefficients::new(system.dim(), 1, PeriodicKind::Undirected, entries)
            .expect("valid system")
    }

    /// Period-1 coefficients of a directed system.
    pub fn from_directed(system: &DirectedIsingSystem) -> Self {
        let zero = LatticeVector::zero(system.dim());
        let entries = system
            .coefficients()
            .iter()
            .map(|(k, a)| (zero.clone(), k.neg(), a.clone()));
        PeriodicCoefficients::new(system.dim(), 1, PeriodicKind::Directed, entries)
            .expect("valid system")
    }

    pub fn period(&self) -> i64 {
        self.period
    }

    pub fn kind(&self) -> PeriodicKind {
        self.kind
    }

    pub fn entries(&self) -> &BTreeMap<(LatticeVector, LatticeVector), Rational> {
        &self.entries
    }

    /// `a_{i, i+k}`.
    pub fn coefficient(&self, site: &LatticeVector, k: &LatticeVector) -> Rational {
        self.entries
            .get(&(reduce(site, self.period), k.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

fn reduce(v: &LatticeVector, n: i64) -> LatticeVector {
    LatticeVector::new(v.components().iter().map(|c| c.rem_euclid(n)).collect())
}

impl PairInteractions for PeriodicCoefficients {
    fn dim(&self) -> usize {
        self.dim
    }

    fn offsets(&self) -> Vec<LatticeVector> {
        let mut ks: Vec<LatticeVector> = self.entries.keys().map(|(_, k)| k.clone()).collect();
        if self.kind == PeriodicKind::Undirected {
            ks.extend(self.entries.keys().map(|(_, k)| k.neg()));
        }
        ks.sort();
        ks.dedup();
        ks
    }

    fn cut_weight(&self, site: &LatticeVector, k: &LatticeVector) -> Rational {
        let forward = self.coefficient(site, k);
        match self.kind {
            PeriodicKind::Directed => forward,
            PeriodicKind::Undirected => forward + self.coefficient(&site.add(k), &k.neg()),
        }
    }
}

/// `m_T(ν) / T^{d-1}` for periodic coefficients.
pub fn homogenized_tension(
    periodic: &PeriodicCoefficients,
    nu: &[f64],
    size: usize,
) -> Result<f64> {
    let sol = min_transition_energy(&TransitionProblem {
        coefficients: periodic,
        nu: nu.to_vec(),
        size,
    })?;
    Ok(Scalar::to_f64(&sol.energy) / (size as f64).powi(periodic.dim as i32 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;
    use crate::presets;

    #[test]
    fn period_one_matches_homogeneous() {
        for s in [
            presets::nearest_neighbour(2),
            presets::diagonal_2d(),
            presets::range_two(2),
        ] {
            let p = PeriodicCoefficients::from_homogeneous(&s);
            for (nu, t) in [(vec![0.0, 1.0], 4), (vec![1.0, 2.0], 6)] {
                let a = min_transition_energy(&TransitionProblem {
                    coefficients: &s,
                    nu: nu.clone(),
                    size: t,
                })
                .unwrap();
                let b = min_transition_energy(&TransitionProblem {
                    coefficients: &p,
                    nu,
                    size: t,
                })
                .unwrap();
                assert_eq!(a.energy, b.energy);
            }
        }
    }

    #[test]
    fn layered_estimate_between_row_cuts() {
        // Horizontal bonds 1; vertical bonds 2 above even rows and 1/2 above odd rows.
        let e1 = LatticeVector::from([1, 0]);
        let e2 = LatticeVector::from([0, 1]);
        let mut entries = Vec::new();
        for (x, r) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let base = LatticeVector::from([x, r]);
            let above = LatticeVector::from([x, r + 1]);
            let s = if r == 0 { rat(2, 1) } else { rat(1, 2) };
            entries.push((base.clone(), e1.clone(), rat(1, 1)));
            entries.push((base.clone(), e1.neg(), rat(1, 1)));
            entries.push((base, e2.clone(), s.clone()));
            entries.push((above, e2.neg(), s));
        }
        let p = PeriodicCoefficients::new(2, 2, PeriodicKind::Undirected, entries).unwrap();
        let est = homogenized_tension(&p, &[0.0, 1.0], 8).unwrap();
        let (weak, strong) = (8.0 * 0.5, 8.0 * 2.0);
        assert!(weak <= est && est <= strong, "{est}");
    }

    #[test]
    fn zero_coefficients_give_zero() {
        let p = PeriodicCoefficients::new(2, 3, PeriodicKind::Undirected, []).unwrap();
        assert_eq!(homogenized_tension(&p, &[1.0, 1.0], 6).unwrap(), 0.0);
    }

    #[test]
    fn directed_period_one_matches_directed_system() {
        let d = DirectedIsingSystem::from_undirected(&presets::diagonal_2d());
        let p = PeriodicCoefficients::from_directed(&d);
        let a = min_transition_energy(&TransitionProblem {
            coefficients: &d,
            nu: vec![1.0, 3.0],
            size: 5,
        })
        .unwrap();
        let b = min_transition_energy(&TransitionProblem {
            coefficients: &p,
            nu: vec![1.0, 3.0],
            size: 5,
        })
        .unwrap();
        assert_eq!(a.energy, b.energy);
    }
}
