use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ground_state::maxflow::FlowNetwork;
use crate::ising::{
    box_sites, DirectedIsingSystem, ExteriorRule, IsingSystem, Spin, SpinConfiguration,
};
use crate::lattice::LatticeVector;
use crate::num::{common_denominator, format_rational, rat_int, Rational, Scalar};

/// Coefficients seen through the cut they induce: `4 · cut_weight(i, k)` is
/// the energy of the ordered pair `(i, i + k)` when `u_i = +1` and
/// `u_{i+k} = -1`.
pub trait PairInteractions {
    fn dim(&self) -> usize;
    /// Offsets `k` for which `cut_weight(·, k)` can be nonzero.
    fn offsets(&self) -> Vec<LatticeVector>;
    fn cut_weight(&self, site: &LatticeVector, k: &LatticeVector) -> Rational;
    /// Closed-form tension at a unit direction, when one is known.
    fn analytic_tension(&self, _nu: &[f64]) -> Option<f64> {
        None
    }
}

impl PairInteractions for IsingSystem {
    fn dim(&self) -> usize {
        IsingSystem::dim(self)
    }

    fn offsets(&self) -> Vec<LatticeVector> {
        self.support()
    }

    /// Both ordered pairs of a broken bond: `2 α_k`.
    fn cut_weight(&self, _site: &LatticeVector, k: &LatticeVector) -> Rational {
        self.coefficient(k) * rat_int(2)
    }

    fn analytic_tension(&self, nu: &[f64]) -> Option<f64> {
        Some(self.surface_tension(nu))
    }
}

impl PairInteractions for DirectedIsingSystem {
    fn dim(&self) -> usize {
        DirectedIsingSystem::dim(self)
    }

    fn offsets(&self) -> Vec<LatticeVector> {
        self.coefficients().keys().map(LatticeVector::neg).collect()
    }

    /// `a_{i-j}` with `j = i + k`.
    fn cut_weight(&self, _site: &LatticeVector, k: &LatticeVector) -> Rational {
        self.coefficients()
            .get(&k.neg())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn analytic_tension(&self, nu: &[f64]) -> Option<f64> {
        Some(self.directed_surface_tension(nu))
    }
}

/// Boundary-value problem on the cube `T Q^ν`.
pub struct TransitionProblem<'a> {
    pub coefficients: &'a dyn PairInteractions,
    /// Interface normal; need not be a unit vector. Integer-valued entries
    /// keep the exterior sign test exact.
    pub nu: Vec<f64>,
    pub size: usize,
}

#[derive(Clone, Debug)]
pub struct TransitionSolution {
    /// Unnormalized minimum `m_T(ν)`.
    pub energy: Rational,
    pub configuration: SpinConfiguration,
}

/// Interior sites, exterior arcs and capacities of a transition problem.
#[derive(Clone, Debug)]
pub struct CutGraph {
    pub sites: Vec<LatticeVector>,
    /// `(from, to, 4·w)` between interior sites.
    pub interior_arcs: Vec<(usize, usize, Rational)>,
    /// Capacity from the `+1` exterior into each interior site.
    pub source_caps: Vec<Rational>,
    /// Capacity from each interior site into the `-1` exterior.
    pub sink_caps: Vec<Rational>,
    pub nu: Vec<f64>,
}

impl CutGraph {
    pub fn build(problem: &TransitionProblem<'_>) -> Result<CutGraph> {
        let dim = problem.coefficients.dim();
        if problem.nu.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: problem.nu.len(),
            });
        }
        if problem.size == 0 {
            return Err(Error::InvalidArgument(
                "cube size T must be positive".into(),
            ));
        }
        if problem.nu.iter().all(|c| *c == 0.0) || problem.nu.iter().any(|c| !c.is_finite()) {
            return Err(Error::NotADirection);
        }
        let sites = cube_sites(&problem.nu, problem.size);
        let index: BTreeMap<&LatticeVector, usize> =
            sites.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let exterior = ExteriorRule::HalfSpace(problem.nu.clone());
        let offsets = problem.coefficients.offsets();
        let mut interior_arcs = Vec::new();
        let mut source_caps = vec![Rational::zero(); sites.len()];
        let mut sink_caps = vec![Rational::zero(); sites.len()];
        let four = rat_int(4);
        for (a, i) in sites.iter().enumerate() {
            for k in &offsets {
                let w = problem.coefficients.cut_weight(i, k);
                if !w.is_zero() {
                    let j = i.add(k);
                    match index.get(&j) {
                        Some(&b) => interior_arcs.push((a, b, &w * &four)),
                        None if exterior.value(&j) == Spin::Minus => sink_caps[a] += &w * &four,
                        None => {}
                    }
                }
                let j = i.sub(k);
                if !index.contains_key(&j) && exterior.value(&j) == Spin::Plus {
                    let w = problem.coefficients.cut_weight(&j, k);
                    source_caps[a] += w * &four;
                }
            }
        }
        Ok(CutGraph {
            sites,
            interior_arcs,
            source_caps,
            sink_caps,
            nu: problem.nu.clone(),
        })
    }

    /// Energy of an interior assignment (`true` = `+1`).
    pub fn cut_value(&self, plus: &[bool]) -> Rational {
        let mut total = Rational::zero();
        for (a, b, c) in &self.interior_arcs {
            if plus[*a] && !plus[*b] {
                total += c;
            }
        }
        for (i, &p) in plus.iter().enumerate() {
            total += if p {
                &self.sink_caps[i]
            } else {
                &self.source_caps[i]
            };
        }
        total
    }

    pub fn configuration(&self, plus: &[bool]) -> SpinConfiguration {
        let values = self
            .sites
            .iter()
            .zip(plus)
            .map(|(s, &p)| (s.clone(), Spin::from_sign(p)))
            .collect();
        SpinConfiguration::new(
            self.nu.len(),
            values,
            ExteriorRule::HalfSpace(self.nu.clone()),
        )
        .expect("sites share the dimension")
    }

    /// Exact minimum cut.
    pub fn solve(&self) -> Result<TransitionSolution> {
        let n = self.sites.len();
        let all = self
            .interior_arcs
            .iter()
            .map(|a| &a.2)
            .chain(&self.source_caps)
            .chain(&self.sink_caps);
        let scale = common_denominator(all);
        let to_int = |r: &Rational| -> Result<i128> {
            (r * Rational::from_integer(scale.clone()))
                .to_integer()
                .to_i128()
                .ok_or(Error::CapacityOverflow)
        };
        let (source, sink) = (n, n + 1);
        let mut net = FlowNetwork::new(n + 2);
        let mut bound: i128 = 0;
        for (a, b, c) in &self.interior_arcs {
            let c = to_int(c)?;
            bound = bound.checked_add(c).ok_or(Error::CapacityOverflow)?;
            net.add_arc(*a, *b, c);
        }
        for i in 0..n {
            let (s, t) = (to_int(&self.source_caps[i])?, to_int(&self.sink_caps[i])?);
            bound = bound
                .checked_add(s)
                .and_then(|x| x.checked_add(t))
                .ok_or(Error::CapacityOverflow)?;
            net.add_arc(source, i, s);
            net.add_arc(i, sink, t);
        }
        let flow = net.max_flow(source, sink);
        let side = net.source_side(source);
        let plus: Vec<bool> = side[..n].to_vec();
        let energy = Rational::new(BigInt::from(flow), scale);
        debug_assert_eq!(energy, self.cut_value(&plus));
        Ok(TransitionSolution {
            energy,
            configuration: self.configuration(&plus),
        })
    }
}

/// Orthonormal frame `b_1 = ν/|ν|, b_2, …, b_d` completed by Gram–Schmidt
/// over `e_1, …, e_d` in order.
pub fn cube_frame(nu: &[f64]) -> Vec<Vec<f64>> {
    let d = nu.len();
    let mut frame: Vec<Vec<f64>> = Vec::with_capacity(d);
    let candidates = std::iter::once(nu.to_vec())
        .chain((0..d).map(|i| (0..d).map(|j| f64::from(u8::from(i == j))).collect()));
    for mut v in candidates {
        for b in &frame {
            let p: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= p * y);
        }
        let len = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if len > 1e-9 {
            frame.push(v.into_iter().map(|x| x / len).collect());
        }
        if frame.len() == d {
            break;
        }
    }
    frame
}

/// Lattice points of the half-open rotated cube
/// `{x : -T/2 ≤ ⟨x, b_m⟩ < T/2 for every frame vector b_m}`.
pub fn cube_sites(nu: &[f64], size: usize) -> Vec<LatticeVector> {
    let d = nu.len();
    let frame = cube_frame(nu);
    let half = size as f64 / 2.0;
    let r = (half * (d as f64).sqrt()).ceil() as i64 + 1;
    let eps = 1e-9;
    box_sites(&vec![-r; d], &vec![r; d])
        .into_iter()
        .filter(|s| {
            frame.iter().all(|b| {
                let t = s.dot_f64(b);
                t >= -half - eps && t < half - eps
            })
        })
        .collect()
}

/// Exact `m_T(ν)` with a minimizing configuration.
pub fn min_transition_energy(problem: &TransitionProblem<'_>) -> Result<TransitionSolution> {
    CutGraph::build(problem)?.solve()
}

/// Energy of the flat interface `u_i = +1` iff `⟨i, ν⟩ ≥ 0`.
pub fn flat_interface_energy(problem: &TransitionProblem<'_>) -> Result<Rational> {
    let g = CutGraph::build(problem)?;
    let plus: Vec<bool> = g
        .sites
        .iter()
        .map(|s| s.dot_f64(&problem.nu) >= 0.0)
        .collect();
    Ok(g.cut_value(&plus))
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub size: usize,
    pub energy: Rational,
    /// `m_T / T^{d-1}`.
    pub normalized: f64,
    pub analytic: Option<f64>,
    pub relative_error: Option<f64>,
}

/// `m_T(ν) / T^{d-1}` for each `T`, next to the closed-form tension at the
/// unit normal when the coefficients provide one.
pub fn surface_tension_sweep(
    coefficients: &dyn PairInteractions,
    nu: &[f64],
    sizes: &[usize],
) -> Result<Vec<SweepRow>> {
    let len = nu.iter().map(|x| x * x).sum::<f64>().sqrt();
    let unit: Vec<f64> = nu.iter().map(|x| x / len).collect();
    let analytic = coefficients.analytic_tension(&unit);
    let d = coefficients.dim() as i32;
    let mut rows = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let sol = min_transition_energy(&TransitionProblem {
            coefficients,
            nu: nu.to_vec(),
            size,
        })?;
        let normalized = Scalar::to_f64(&sol.energy) / (size as f64).powi(d - 1);
        let relative_error = analytic
            .filter(|a| *a != 0.0)
            .map(|a| (normalized - a).abs() / a);
        rows.push(SweepRow {
            size,
            energy: sol.energy,
            normalized,
            analytic,
            relative_error,
        });
    }
    Ok(rows)
}

/// CSV with columns `T,m_T,m_T_per_area,phi,relative_error`.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("T,m_T,m_T_per_area,phi,relative_error\n");
    let opt = |x: Option<f64>| x.map(|v| format!("{v:.12}")).unwrap_or_default();
    for r in rows {
        out.push_str(&format!(
            "{},{},{:.12},{},{}\n",
            r.size,
            format_rational(&r.energy),
            r.normalized,
            opt(r.analytic),
            opt(r.relative_error)
        ));
    }
    out
}

/// Exhaustive minimum over all interior assignments; for small cubes only.
pub fn brute_force_transition_energy(problem: &TransitionProblem<'_>) -> Result<Rational> {
    let g = CutGraph::build(problem)?;
    let n = g.sites.len();
    if n > 24 {
        return Err(Error::EnumerationBudget(format!("{n} interior sites")));
    }
    let mut best: Option<Rational> = None;
    let mut plus = vec![false; n];
    for mask in 0u64..(1u64 << n) {
        for (b, p) in plus.iter_mut().enumerate() {
            *p = mask >> b & 1 == 1;
        }
        let v = g.cut_value(&plus);
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    Ok(best.unwrap_or_else(Rational::one))
}
