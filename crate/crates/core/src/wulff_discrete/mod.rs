//! Ground states with a prescribed number of `+1` sites and their
//! comparison with the Wulff shape.

mod anneal;
mod diagnostic;
mod exact;
mod grid;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ising::{ExteriorRule, IsingSystem, Spin, SpinConfiguration, SublatticeDecomposition};
use crate::lattice::LatticeVector;
use crate::num::Rational;

pub use anneal::{anneal_constrained_ground_state, AnnealInit, AnnealSchedule};
pub use diagnostic::{
    wulff_convergence_diagnostic, DiagnosticOptions, DiagnosticReport, DiagnosticRow,
};
pub use exact::{exact_constrained_ground_state, ENUMERATION_BUDGET};

/// Minimize the energy over configurations with exactly `plus_count` sites
/// at `+1`, all inside `[-R, R]^d`, and `-1` everywhere else.
#[derive(Clone, Debug)]
pub struct VolumeConstrainedProblem {
    pub system: IsingSystem,
    pub plus_count: usize,
    pub box_radius: i64,
    /// Lattice spacing the problem stands for; only used for reporting.
    pub epsilon: f64,
}

impl VolumeConstrainedProblem {
    pub fn new(system: IsingSystem, plus_count: usize, box_radius: i64) -> Self {
        VolumeConstrainedProblem {
            system,
            plus_count,
            box_radius,
            epsilon: 1.0,
        }
    }

    pub fn box_size(&self) -> Option<u128> {
        let side = u128::try_from(2 * self.box_radius + 1).ok()?;
        side.checked_pow(self.system.dim() as u32)
    }

    fn validate(&self) -> Result<()> {
        if self.box_radius < 0 {
            return Err(Error::InvalidArgument(format!(
                "box radius must be nonnegative, got {}",
                self.box_radius
            )));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        match self.box_size() {
            Some(n) if self.plus_count as u128 <= n => Ok(()),
            Some(n) => Err(Error::InvalidArgument(format!(
                "{} plus sites do not fit in a box of {n} sites",
                self.plus_count
            ))),
            None => Err(Error::InvalidArgument("box too large".into())),
        }
    }
}

/// A configuration with `-1` outside `plus_sites`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstrainedSolution {
    pub dim: usize,
    pub energy: Rational,
    /// Sorted.
    pub plus_sites: Vec<LatticeVector>,
}

impl ConstrainedSolution {
    pub fn configuration(&self) -> SpinConfiguration {
        let values: BTreeMap<LatticeVector, Spin> = self
            .plus_sites
            .iter()
            .map(|s| (s.clone(), Spin::Plus))
            .collect();
        SpinConfiguration::new(self.dim, values, ExteriorRule::Constant(Spin::Minus))
            .expect("sites share the dimension")
    }

    pub fn barycentre(&self) -> Vec<f64> {
        let mut b = vec![0.0; self.dim];
        for s in &self.plus_sites {
            for (acc, &c) in b.iter_mut().zip(s.components()) {
                *acc += c as f64;
            }
        }
        let n = self.plus_sites.len().max(1) as f64;
        b.iter().map(|x| x / n).collect()
    }
}

/// Number of `+1` sites in each residue class of the decomposition, in the
/// order of its representatives.
pub fn class_occupancy(
    config: &SpinConfiguration,
    decomposition: &SublatticeDecomposition,
) -> Vec<usize> {
    let mut counts = vec![0; decomposition.representatives.len()];
    for site in config.plus_sites() {
        counts[decomposition.class_of(&site)] += 1;
    }
    counts
}
