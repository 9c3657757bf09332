//! Homogeneous and directed Ising systems with rational coefficients.

mod config;

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

pub use config::{box_sites, ExteriorRule, Spin, SpinConfiguration};

use crate::error::{Error, Result};
use crate::lattice::{
    primitive_direction, sublattice_basis, DirectionClass, LatticeIndex, LatticeVector,
    SublatticeBasis,
};
use crate::num::{format_rational, rat_int, Rational, Scalar};
use crate::zonoid::measure::GeneratingMeasure;

/// Symmetric ferromagnetic system `{α_k}` of finite range.
///
/// Keys are nonzero, values are positive, and `α_{-k} = α_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsingSystem {
    dim: usize,
    coefficients: BTreeMap<LatticeVector, Rational>,
}

impl IsingSystem {
    pub fn empty(dim: usize) -> Self {
        IsingSystem {
            dim,
            coefficients: BTreeMap::new(),
        }
    }

    /// Replaces `α_k, α_{-k}` by their mean. Entries of a raw map that share a
    /// key are not allowed; zero entries are dropped.
    pub fn symmetrize(dim: usize, raw: &BTreeMap<LatticeVector, Rational>) -> Result<Self> {
        validate_raw(dim, raw)?;
        let half = Rational::new(1.into(), 2.into());
        let mut coefficients = BTreeMap::new();
        for (k, a) in raw {
            if a.is_zero() {
                continue;
            }
            for key in [k.clone(), k.neg()] {
                *coefficients.entry(key).or_insert_with(Rational::zero) += a * &half;
            }
        }
        Ok(IsingSystem { dim, coefficients })
    }

    /// Builds a system from `(k, α_k)` pairs listing each unordered pair
    /// `{k, -k}` once; the value is placed on both offsets.
    pub fn from_pairs(
        dim: usize,
        pairs: impl IntoIterator<Item = (LatticeVector, Rational)>,
    ) -> Result<Self> {
        let mut raw: BTreeMap<LatticeVector, Rational> = BTreeMap::new();
        for (k, a) in pairs {
            *raw.entry(k.neg()).or_insert_with(Rational::zero) += &a;
            *raw.entry(k).or_insert_with(Rational::zero) += a;
        }
        IsingSystem::symmetrize(dim, &raw)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficients(&self) -> &BTreeMap<LatticeVector, Rational> {
        &self.coefficients
    }

    pub fn coefficient(&self, k: &LatticeVector) -> Rational {
        self.coefficients
            .get(k)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> Vec<LatticeVector> {
        self.coefficients.keys().cloned().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Largest Euclidean length of an interacting offset.
    pub fn range(&self) -> f64 {
        self.coefficients
            .keys()
            .map(LatticeVector::norm)
            .fold(0.0, f64::max)
    }

    /// Exact `φ(z) = 4 Σ α_k |⟨z, k⟩|`.
    pub fn surface_tension_exact(&self, z: &[Rational]) -> Result<Rational> {
        check_dim(self.dim, z.len())?;
        let mut total = Rational::zero();
        for (k, a) in &self.coefficients {
            total += a * dot_rat(k, z).abs();
        }
        Ok(total * rat_int(4))
    }

    /// `φ(z)` in floating point.
    pub fn surface_tension(&self, z: &[f64]) -> f64 {
        4.0 * self
            .coefficients
            .iter()
            .map(|(k, a)| a.to_f64() * k.dot_f64(z).abs())
            .sum::<f64>()
    }

    /// Per-class aggregates `s(p) = Σ_{n≥1} n α_{np}`.
    pub fn aggregates(&self) -> BTreeMap<DirectionClass, Rational> {
        let mut out: BTreeMap<DirectionClass, Rational> = BTreeMap::new();
        for (k, a) in &self.coefficients {
            if !k.is_canonical_sign() {
                continue;
            }
            let (class, n) = primitive_direction(k).expect("keys are nonzero");
            *out.entry(class).or_insert_with(Rational::zero) += a * rat_int(n);
        }
        out
    }

    /// Generating measure with exact aggregates; its support function is φ.
    pub fn generating_measure(&self) -> GeneratingMeasure {
        GeneratingMeasure::from_aggregates(self.dim, self.aggregates())
            .expect("aggregates are positive")
    }

    /// Same generating measure, i.e. equal aggregates on every class.
    pub fn equivalent(&self, other: &IsingSystem) -> bool {
        self.dim == other.dim && self.aggregates() == other.aggregates()
    }

    /// The integer span of the support is all of `Z^d`.
    pub fn is_coercive(&self) -> bool {
        sublattice_basis(self.dim, &self.support())
            .map(|b| b.index() == LatticeIndex::Finite(1.into()))
            .unwrap_or(false)
    }

    /// Sublattice `L` spanned by the support, with its residue classes.
    pub fn connectivity_sublattice(&self) -> Result<SublatticeDecomposition> {
        let basis = sublattice_basis(self.dim, &self.support())?;
        let representatives = basis.residue_classes()?;
        Ok(SublatticeDecomposition {
            index: representatives.len(),
            basis,
            representatives,
        })
    }

    /// `E(u) = Σ α_{i-j} (u_i - u_j)²` over ordered pairs with at least one
    /// site in the configuration's support.
    pub fn energy(&self, config: &SpinConfiguration) -> Result<Rational> {
        pair_energy(self.dim, &self.coefficients, config)
    }
}

/// Sublattice spanned by a system's support and a transversal of `Z^d / L`.
#[derive(Clone, Debug)]
pub struct SublatticeDecomposition {
    pub basis: SublatticeBasis,
    pub index: usize,
    /// Canonical residues, the first being `0`.
    pub representatives: Vec<LatticeVector>,
}

impl SublatticeDecomposition {
    /// Position of the residue class of `site` in `representatives`.
    pub fn class_of(&self, site: &LatticeVector) -> usize {
        let r = self.basis.reduce(site);
        self.representatives
            .iter()
            .position(|m| *m == r)
            .expect("residues are canonical")
    }
}

/// Ferromagnetic system without the symmetry constraint, with energy
/// `Σ a_{i-j} ((u_i - u_j)^+)²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedIsingSystem {
    dim: usize,
    coefficients: BTreeMap<LatticeVector, Rational>,
}

impl DirectedIsingSystem {
    pub fn new(dim: usize, coefficients: BTreeMap<LatticeVector, Rational>) -> Result<Self> {
        validate_raw(dim, &coefficients)?;
        let coefficients = coefficients
            .into_iter()
            .filter(|(_, a)| !a.is_zero())
            .collect();
        Ok(DirectedIsingSystem { dim, coefficients })
    }

    /// The directed system with the same energy: `a_k = α_k + α_{-k}`.
    pub fn from_undirected(system: &IsingSystem) -> Self {
        let coefficients = system
            .coefficients
            .iter()
            .map(|(k, a)| (k.clone(), a * rat_int(2)))
            .collect();
        DirectedIsingSystem {
            dim: system.dim,
            coefficients,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficients(&self) -> &BTreeMap<LatticeVector, Rational> {
        &self.coefficients
    }

    pub fn range(&self) -> f64 {
        self.coefficients
            .keys()
            .map(LatticeVector::norm)
            .fold(0.0, f64::max)
    }

    /// Exact `φ(z) = 4 Σ a_k ⟨k, z⟩^+`.
    pub fn directed_surface_tension_exact(&self, z: &[Rational]) -> Result<Rational> {
        check_dim(self.dim, z.len())?;
        let mut total = Rational::zero();
        for (k, a) in &self.coefficients {
            let d = dot_rat(k, z);
            if d.is_positive() {
                total += a * d;
            }
        }
        Ok(total * rat_int(4))
    }

    pub fn directed_surface_tension(&self, z: &[f64]) -> f64 {
        4.0 * self
            .coefficients
            .iter()
            .map(|(k, a)| a.to_f64() * k.dot_f64(z).max(0.0))
            .sum::<f64>()
    }

    pub fn energy(&self, config: &SpinConfiguration) -> Result<Rational> {
        check_dim(self.dim, config.dim())?;
        let mut total = Rational::zero();
        for_each_pair(&self.coefficients, config, |a, ui, uj| {
            if ui == Spin::Plus && uj == Spin::Minus {
                total += a * rat_int(4);
            }
        });
        Ok(total)
    }
}

/// Symmetrization of a raw coefficient map.
pub fn symmetrize(dim: usize, raw: &BTreeMap<LatticeVector, Rational>) -> Result<IsingSystem> {
    IsingSystem::symmetrize(dim, raw)
}

pub fn surface_tension(system: &IsingSystem, z: &[f64]) -> f64 {
    system.surface_tension(z)
}

pub fn generating_measure(system: &IsingSystem) -> GeneratingMeasure {
    system.generating_measure()
}

pub fn equivalent(a: &IsingSystem, b: &IsingSystem) -> bool {
    a.equivalent(b)
}

/// System carrying all the mass of each class on its primitive vector,
/// `α_{±p} = s(p)`.
pub fn canonical_system(measure: &GeneratingMeasure) -> Result<IsingSystem> {
    let aggr = measure.aggregates().ok_or(Error::InexactMeasure)?;
    IsingSystem::from_pairs(
        measure.dim(),
        aggr.into_iter().map(|(p, s)| (p.primitive().clone(), s)),
    )
}

pub fn is_coercive(system: &IsingSystem) -> bool {
    system.is_coercive()
}

pub fn connectivity_sublattice(system: &IsingSystem) -> Result<SublatticeDecomposition> {
    system.connectivity_sublattice()
}

pub fn energy(system: &IsingSystem, config: &SpinConfiguration) -> Result<Rational> {
    system.energy(config)
}

pub fn directed_surface_tension(system: &DirectedIsingSystem, z: &[f64]) -> f64 {
    system.directed_surface_tension(z)
}

/// `Σ α_{i-j} (u_i - u_j)²` for an arbitrary (not necessarily symmetric)
/// coefficient map.
pub fn pair_energy(
    dim: usize,
    coefficients: &BTreeMap<LatticeVector, Rational>,
    config: &SpinConfiguration,
) -> Result<Rational> {
    check_dim(dim, config.dim())?;
    let mut total = Rational::zero();
    for_each_pair(coefficients, config, |a, ui, uj| {
        if ui != uj {
            total += a * rat_int(4);
        }
    });
    Ok(total)
}

/// Visits every ordered pair `(i, j)` with `α_{i-j} > 0` and at least one
/// endpoint in the configuration's support.
fn for_each_pair(
    coefficients: &BTreeMap<LatticeVector, Rational>,
    config: &SpinConfiguration,
    mut visit: impl FnMut(&Rational, Spin, Spin),
) {
    for (i, ui) in config.sites() {
        for (k, a) in coefficients {
            // (i, i - k): α_{i-j} = α_k.
            let j = i.sub(k);
            visit(a, ui, config.value(&j));
            // (i + k, i) with i + k outside the support.
            let j = i.add(k);
            if !config.contains(&j) {
                visit(a, config.value(&j), ui);
            }
        }
    }
}

fn validate_raw(dim: usize, raw: &BTreeMap<LatticeVector, Rational>) -> Result<()> {
    for (k, a) in raw {
        check_dim(dim, k.dim())?;
        if k.is_zero() {
            return Err(Error::InvalidArgument(
                "coefficient on the zero offset".into(),
            ));
        }
        if a.is_negative() {
            return Err(Error::NotFerromagnetic {
                offset: k.to_string(),
                value: format_rational(a),
            });
        }
    }
    Ok(())
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

fn dot_rat(k: &LatticeVector, z: &[Rational]) -> Rational {
    k.components()
        .iter()
        .zip(z)
        .fold(Rational::zero(), |acc, (&c, x)| acc + x * rat_int(c))
}
