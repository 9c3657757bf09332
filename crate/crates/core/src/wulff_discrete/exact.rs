use crate::error::{Error, Result};
use crate::wulff_discrete::grid::BoxGrid;
use crate::wulff_discrete::{ConstrainedSolution, VolumeConstrainedProblem};

/// Largest number of candidate sets the exact solver enumerates.
pub const ENUMERATION_BUDGET: u128 = 10_000_000;

/// `C(n, k)`, or `None` once it exceeds `cap`.
pub(crate) fn binomial_capped(n: u128, k: u128, cap: u128) -> Option<u128> {
    let k = k.min(n - k.min(n));
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) / (i + 1);
        if c > cap {
            return None;
        }
    }
    Some(c)
}

/// Exact minimum by enumerating every set of `plus_count` box sites.
///
/// Among equal energies the lexicographically first set (row-major box
/// order) is returned.
pub fn exact_constrained_ground_state(
    problem: &VolumeConstrainedProblem,
) -> Result<ConstrainedSolution> {
    problem.validate()?;
    let n = problem.box_size().expect("validated");
    if binomial_capped(n, problem.plus_count as u128, ENUMERATION_BUDGET).is_none() {
        return Err(Error::EnumerationBudget(format!(
            "C({n}, {}) > {ENUMERATION_BUDGET}",
            problem.plus_count
        )));
    }
    let grid = BoxGrid::new(&problem.system, problem.box_radius)?;
    let mut search = Search {
        grid: &grid,
        plus: vec![false; grid.len],
        chosen: Vec::with_capacity(problem.plus_count),
        best: None,
    };
    search.run(0, problem.plus_count, 0);
    let (units, members) = search.best.expect("at least one candidate set");
    let mut plus_sites: Vec<_> = members.iter().map(|&i| grid.site(i)).collect();
    plus_sites.sort();
    Ok(ConstrainedSolution {
        dim: grid.dim,
        energy: grid.to_rational(units),
        plus_sites,
    })
}

struct Search<'a> {
    grid: &'a BoxGrid,
    plus: Vec<bool>,
    chosen: Vec<usize>,
    best: Option<(i64, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, start: usize, remaining: usize, energy: i64) {
        if remaining == 0 {
            if self.best.as_ref().is_none_or(|(e, _)| energy < *e) {
                self.best = Some((energy, self.chosen.clone()));
            }
            return;
        }
        for x in start..=(self.grid.len - remaining) {
            let delta = self.grid.add_delta(&self.plus, x);
            self.plus[x] = true;
            self.chosen.push(x);
            self.run(x + 1, remaining - 1, energy + delta);
            self.chosen.pop();
            self.plus[x] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ising::IsingSystem;
    use crate::lattice::LatticeVector;
    use crate::num::{rat, rat_int};
    use crate::presets;
    use num_traits::Zero;

    fn solve(system: &IsingSystem, n: usize, r: i64) -> ConstrainedSolution {
        exact_constrained_ground_state(&VolumeConstrainedProblem::new(system.clone(), n, r))
            .unwrap()
    }

    /// Direct ordered-pair energy of a set in an otherwise `-1` lattice.
    fn pair_sum(system: &IsingSystem, set: &[LatticeVector]) -> crate::num::Rational {
        system
            .energy(
                &ConstrainedSolution {
                    dim: system.dim(),
                    energy: rat(0, 1),
                    plus_sites: set.to_vec(),
                }
                .configuration(),
            )
            .unwrap()
    }

    #[test]
    fn binomial_matches_pascal() {
        assert_eq!(binomial_capped(25, 2, u128::MAX), Some(300));
        assert_eq!(binomial_capped(10, 0, u128::MAX), Some(1));
        assert_eq!(binomial_capped(10, 10, u128::MAX), Some(1));
        assert_eq!(binomial_capped(100, 50, ENUMERATION_BUDGET), None);
    }

    #[test]
    fn single_site_costs_32() {
        let sol = solve(&presets::nearest_neighbour(2), 1, 2);
        assert_eq!(sol.energy, rat_int(32));
        assert_eq!(sol.plus_sites.len(), 1);
    }

    #[test]
    fn pair_oracle_gives_domino() {
        let nn = presets::nearest_neighbour(2);
        let sites = crate::ising::box_sites(&[-2, -2], &[2, 2]);
        let mut best = None;
        for (a, p) in sites.iter().enumerate() {
            for q in &sites[a + 1..] {
                let e = pair_sum(&nn, &[p.clone(), q.clone()]);
                if best.as_ref().is_none_or(|b| e < *b) {
                    best = Some(e);
                }
            }
        }
        let best = best.unwrap();
        assert_eq!(best, rat_int(48));
        let sol = solve(&nn, 2, 2);
        assert_eq!(sol.energy, best);
        assert_eq!(sol.plus_sites[0].sub(&sol.plus_sites[1]).l1_norm(), 1);
    }

    #[test]
    fn empty_set_costs_nothing() {
        let sol = solve(&presets::nearest_neighbour(2), 0, 1);
        assert!(sol.energy.is_zero());
        assert!(sol.plus_sites.is_empty());
    }

    #[test]
    fn perfect_squares_are_lattice_squares() {
        let nn = presets::nearest_neighbour(2);
        for (n, side) in [(4usize, 2i64), (9, 3)] {
            let sol = solve(&nn, n, 2);
            assert_eq!(sol.energy, rat_int(8 * 4 * side));
            let lo: Vec<i64> = (0..2)
                .map(|a| {
                    sol.plus_sites
                        .iter()
                        .map(|s| s.components()[a])
                        .min()
                        .unwrap()
                })
                .collect();
            let hi: Vec<i64> = (0..2)
                .map(|a| {
                    sol.plus_sites
                        .iter()
                        .map(|s| s.components()[a])
                        .max()
                        .unwrap()
                })
                .collect();
            assert_eq!((hi[0] - lo[0] + 1, hi[1] - lo[1] + 1), (side, side));
        }
    }

    #[test]
    fn reported_energy_is_the_pair_sum() {
        for sys in [
            presets::diagonal_2d(),
            presets::range_two(2),
            presets::nearest_neighbour(2),
        ] {
            let sol = solve(&sys, 5, 2);
            assert_eq!(sol.energy, pair_sum(&sys, &sol.plus_sites));
        }
    }

    #[test]
    fn energy_is_monotone_in_box_radius() {
        let sys = IsingSystem::from_pairs(
            2,
            [
                (LatticeVector::from([1, 0]), rat(1, 1)),
                (LatticeVector::from([1, 2]), rat(1, 2)),
            ],
        )
        .unwrap();
        let mut prev = None;
        for r in 1..=3 {
            let e = solve(&sys, 3, r).energy;
            if let Some(p) = prev {
                assert!(e <= p);
            }
            prev = Some(e);
        }
    }

    #[test]
    fn translates_of_a_minimizer_have_equal_energy() {
        let sys = presets::diagonal_2d();
        let sol = solve(&sys, 3, 2);
        for t in [[1i64, 0], [0, -1], [-1, 1]] {
            let shifted: Vec<LatticeVector> = sol
                .plus_sites
                .iter()
                .map(|s| s.add(&LatticeVector::from(t)))
                .collect();
            assert_eq!(pair_sum(&sys, &shifted), sol.energy);
        }
    }

    #[test]
    fn over_budget_suggests_annealing() {
        let p = VolumeConstrainedProblem::new(presets::nearest_neighbour(2), 40, 5);
        assert!(matches!(
            exact_constrained_ground_state(&p),
            Err(Error::EnumerationBudget(_))
        ));
    }
}
