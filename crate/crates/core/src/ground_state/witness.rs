use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::ising::{box_sites, ExteriorRule, IsingSystem, Spin, SpinConfiguration};
use crate::lattice::{sublattice_basis, LatticeVector};

/// Connected components of the interaction graph on `[-R, R]^d` (edges
/// where `α_{i-j} > 0`), as a component label per box site.
pub fn interaction_components(
    system: &IsingSystem,
    radius: i64,
) -> (Vec<LatticeVector>, Vec<usize>, usize) {
    let d = system.dim();
    let sites = box_sites(&vec![-radius; d], &vec![radius; d]);
    let index: BTreeMap<&LatticeVector, usize> =
        sites.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut parent: Vec<usize> = (0..sites.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, s) in sites.iter().enumerate() {
        for k in system.coefficients().keys() {
            if let Some(&b) = index.get(&s.add(k)) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut labels = BTreeMap::new();
    let comp: Vec<usize> = (0..sites.len())
        .map(|a| {
            let r = find(&mut parent, a);
            let next = labels.len();
            *labels.entry(r).or_insert(next)
        })
        .collect();
    let count = labels.len();
    (sites, comp, count)
}

/// Whether the sites of `[-R, R]^d` lie in one component of the interaction
/// graph of `Z^d`, looking for paths inside `[-R-m, R+m]^d`.
///
/// Unlike the box graph of [`interaction_components`], corner sites whose
/// neighbours all lie outside the box are not isolated here.
pub fn box_connected_in_lattice(system: &IsingSystem, radius: i64, margin: i64) -> bool {
    let (sites, comp, _) = interaction_components(system, radius + margin);
    let mut labels = sites
        .iter()
        .zip(&comp)
        .filter(|(s, _)| s.max_norm() <= radius)
        .map(|(_, &c)| c);
    match labels.next() {
        Some(first) => labels.all(|c| c == first),
        None => true,
    }
}

/// A nonconstant configuration on `[-R, R]^d` built from the components of
/// the interaction graph, or `None` when the graph is connected.
///
/// When the support spans a proper sublattice `L`, spins are `+1` on the
/// cosets of `L` whose canonical residue has even `ℓ¹` norm and `-1` on the
/// others, inside the box and outside it, so the energy is exactly zero.
/// Otherwise (a box too small to connect a coercive system) the component
/// containing the first box site is `+1`, every other site `-1`.
pub fn zero_energy_witness(system: &IsingSystem, radius: i64) -> Result<Option<SpinConfiguration>> {
    let (sites, comp, count) = interaction_components(system, radius);
    if count < 2 {
        return Ok(None);
    }
    let d = system.dim();
    let basis = sublattice_basis(d, &system.support())?;
    if !system.is_coercive() {
        let exterior = ExteriorRule::CosetParity(basis);
        let values = sites
            .iter()
            .map(|s| (s.clone(), exterior.value(s)))
            .collect();
        return Ok(Some(SpinConfiguration::new(d, values, exterior)?));
    }
    let values = sites
        .iter()
        .zip(&comp)
        .map(|(s, &c)| (s.clone(), Spin::from_sign(c == 0)))
        .collect();
    Ok(Some(SpinConfiguration::new(
        d,
        values,
        ExteriorRule::Constant(Spin::Minus),
    )?))
}

/// Number of distinct spins a configuration takes inside its box.
pub fn distinct_spins(config: &SpinConfiguration) -> usize {
    config
        .sites()
        .map(|(_, s)| s)
        .collect::<BTreeSet<_>>()
        .len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;
    use crate::presets;
    use num_traits::Zero;

    #[test]
    fn range_two_gives_checkerboard() {
        let r2 = presets::range_two(2);
        let w = zero_energy_witness(&r2, 4).unwrap().unwrap();
        assert!(r2.energy(&w).unwrap().is_zero());
        for (s, spin) in w.sites() {
            assert_eq!(spin, Spin::from_sign(s.l1_norm() % 2 == 0));
        }
    }

    #[test]
    fn nearest_neighbour_has_none() {
        for r in 0..=6 {
            assert!(zero_energy_witness(&presets::nearest_neighbour(2), r)
                .unwrap()
                .is_none());
        }
    }

    #[test]
    fn diagonal_splits_parity_classes() {
        let diag = presets::diagonal_2d();
        let w = zero_energy_witness(&diag, 3).unwrap().unwrap();
        assert!(diag.energy(&w).unwrap().is_zero());
        assert_eq!(distinct_spins(&w), 2);
        for (s, spin) in w.sites() {
            assert_eq!(spin, Spin::from_sign(s.l1_norm() % 2 == 0));
        }
    }

    #[test]
    fn skew_offsets_isolate_box_corners_only() {
        let skew = IsingSystem::from_pairs(
            2,
            [
                (LatticeVector::from([1, 1]), rat(1, 1)),
                (LatticeVector::from([1, 2]), rat(1, 1)),
            ],
        )
        .unwrap();
        assert!(skew.is_coercive());
        let (_, _, count) = interaction_components(&skew, 6);
        assert_eq!(count, 3);
        assert!(box_connected_in_lattice(&skew, 6, 6));
        assert!(!box_connected_in_lattice(&presets::diagonal_2d(), 6, 6));
    }

    #[test]
    fn rank_deficient_support_has_zero_energy_witness() {
        let rows = IsingSystem::from_pairs(2, [(LatticeVector::from([1, 0]), rat(1, 1))]).unwrap();
        let w = zero_energy_witness(&rows, 3).unwrap().unwrap();
        assert!(rows.energy(&w).unwrap().is_zero());
        assert_eq!(distinct_spins(&w), 2);
    }
}
