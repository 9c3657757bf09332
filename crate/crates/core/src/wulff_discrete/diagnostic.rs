use std::collections::HashSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::io::{bounding_box, SvgCanvas};
use crate::ising::IsingSystem;
use crate::lattice::{sublattice_basis, LatticeVector};
use crate::num::{Rational, Scalar};
use crate::wulff_discrete::exact::{binomial_capped, ENUMERATION_BUDGET};
use crate::wulff_discrete::{
    anneal_constrained_ground_state, exact_constrained_ground_state, AnnealSchedule,
    ConstrainedSolution, VolumeConstrainedProblem,
};
use crate::zonoid::{perimeter_energy_polygon, ConvexPolygon, Zonotope};

#[derive(Clone, Debug)]
pub struct DiagnosticOptions {
    pub schedule: AnnealSchedule,
    /// Use the exact solver when the number of candidate sets is at most this.
    pub exact_budget: u128,
    /// Overrides the default box radius `3 ⌈ε^{-1} |W|^{1/d}⌉`.
    pub box_radius: Option<i64>,
    /// Monte-Carlo samples for the symmetric difference when `d ≥ 3`.
    pub volume_samples: usize,
}

impl Default for DiagnosticOptions {
    fn default() -> Self {
        DiagnosticOptions {
            schedule: AnnealSchedule::default(),
            exact_budget: ENUMERATION_BUDGET,
            box_radius: None,
            volume_samples: 200_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DiagnosticRow {
    pub epsilon: f64,
    pub plus_count: usize,
    pub box_radius: i64,
    pub exact: bool,
    pub energy: Rational,
    /// `ε^{d-1} E / F(W)`.
    pub energy_ratio: f64,
    /// `|U Δ W| / |W|` for the recentred union `U` of `ε`-cells.
    pub symdiff_fraction: f64,
    pub touches_box: bool,
    pub solution: ConstrainedSolution,
}

#[derive(Clone, Debug)]
pub struct DiagnosticReport {
    pub dim: usize,
    pub wulff_volume: f64,
    /// Anisotropic perimeter `F(W)` of the Wulff shape.
    pub wulff_energy: f64,
    pub wulff_polygon: Option<ConvexPolygon<f64>>,
    pub rows: Vec<DiagnosticRow>,
}

/// Solves the volume-constrained problem at each `ε` with
/// `N_ε = ⌊ε^{-1} |W|^{1/d}⌋^d` and compares the rescaled minimizer with the
/// Wulff shape `W` of the system.
pub fn wulff_convergence_diagnostic(
    system: &IsingSystem,
    eps_list: &[f64],
    options: &DiagnosticOptions,
) -> Result<DiagnosticReport> {
    let d = system.dim();
    let basis = sublattice_basis(d, &system.support())?;
    if !basis.is_full_rank() {
        return Err(Error::DegenerateSublattice {
            rank: basis.rank(),
            dim: d,
        });
    }
    let zonotope = system.generating_measure().zonotope();
    let polygon = if d == 2 {
        Some(zonotope.polygon_2d()?)
    } else {
        None
    };
    let wulff_volume = zonotope.volume();
    let wulff_energy = match &polygon {
        Some(p) => perimeter_energy_polygon(|z: &[f64]| system.surface_tension(z), p),
        None => d as f64 * wulff_volume,
    };
    let mut rows = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "epsilon must be positive, got {eps}"
            )));
        }
        let linear = wulff_volume.powf(1.0 / d as f64) / eps;
        let side = (linear + 1e-9).floor() as usize;
        let plus_count = side.pow(d as u32);
        let box_radius = options
            .box_radius
            .unwrap_or(3 * (linear - 1e-9).ceil() as i64);
        let problem = VolumeConstrainedProblem {
            system: system.clone(),
            plus_count,
            box_radius,
            epsilon: eps,
        };
        problem.validate()?;
        let n = problem.box_size().expect("validated");
        let exact = binomial_capped(n, plus_count as u128, options.exact_budget).is_some();
        let solution = if exact {
            exact_constrained_ground_state(&problem)?
        } else {
            anneal_constrained_ground_state(&problem, &options.schedule)?
        };
        let touches_box = solution
            .plus_sites
            .iter()
            .any(|s| s.max_norm() == box_radius);
        if touches_box {
            log::warn!("minimizer at eps = {eps} touches the box boundary");
        }
        let energy_ratio = eps.powi(d as i32 - 1) * Scalar::to_f64(&solution.energy) / wulff_energy;
        let symdiff = match &polygon {
            Some(p) => symmetric_difference_2d(&solution, eps, p),
            None => symmetric_difference_sampled(
                &solution,
                eps,
                &zonotope,
                options.volume_samples,
                options.schedule.seed,
            ),
        };
        log::info!(
            "eps = {eps}: N = {plus_count}, ratio = {energy_ratio:.6}, symdiff = {:.6}",
            symdiff / wulff_volume
        );
        rows.push(DiagnosticRow {
            epsilon: eps,
            plus_count,
            box_radius,
            exact,
            energy: solution.energy.clone(),
            energy_ratio,
            symdiff_fraction: symdiff / wulff_volume,
            touches_box,
            solution,
        });
    }
    Ok(DiagnosticReport {
        dim: d,
        wulff_volume,
        wulff_energy,
        wulff_polygon: polygon,
        rows,
    })
}

/// `|U Δ W|` where `U` is the union of the cells `ε (i - b) + ε [-1/2, 1/2]^2`
/// over the `+1` sites `i`, `b` their barycentre.
fn symmetric_difference_2d(
    solution: &ConstrainedSolution,
    eps: f64,
    wulff: &ConvexPolygon<f64>,
) -> f64 {
    let b = solution.barycentre();
    let half = eps / 2.0;
    let mut inside = 0.0;
    for s in &solution.plus_sites {
        let c = [
            eps * (s.components()[0] as f64 - b[0]),
            eps * (s.components()[1] as f64 - b[1]),
        ];
        let cell = ConvexPolygon::from_ccw(vec![
            [c[0] - half, c[1] - half],
            [c[0] + half, c[1] - half],
            [c[0] + half, c[1] + half],
            [c[0] - half, c[1] + half],
        ]);
        if cell.vertices().iter().all(|v| wulff.contains(*v)) {
            inside += eps * eps;
        } else {
            inside += intersect(&cell, wulff).area();
        }
    }
    let union = solution.plus_sites.len() as f64 * eps * eps;
    (union + wulff.area() - 2.0 * inside).max(0.0)
}

fn intersect(a: &ConvexPolygon<f64>, b: &ConvexPolygon<f64>) -> ConvexPolygon<f64> {
    let mut out = a.clone();
    for (p, q) in b.edges() {
        let n = [q[1] - p[1], p[0] - q[0]];
        out = out.clip(n, n[0] * p[0] + n[1] * p[1]);
        if out.vertices().is_empty() {
            break;
        }
    }
    out
}

fn symmetric_difference_sampled(
    solution: &ConstrainedSolution,
    eps: f64,
    wulff: &Zonotope<f64>,
    samples: usize,
    seed: u64,
) -> f64 {
    let d = solution.dim;
    let b = solution.barycentre();
    let sites: HashSet<&LatticeVector> = solution.plus_sites.iter().collect();
    let mut reach: f64 = (0..d)
        .map(|a| {
            let mut e = vec![0.0; d];
            e[a] = 1.0;
            wulff.support(&e)
        })
        .fold(0.0, f64::max);
    for s in &solution.plus_sites {
        for (c, bc) in s.components().iter().zip(&b) {
            reach = reach.max(eps * ((*c as f64 - bc).abs() + 0.5));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    let mut x = vec![0.0; d];
    for _ in 0..samples {
        for v in x.iter_mut() {
            *v = rng.random_range(-reach..reach);
        }
        let site = LatticeVector::new(
            x.iter()
                .zip(&b)
                .map(|(v, bc)| (v / eps + bc).round() as i64)
                .collect(),
        );
        if sites.contains(&site) != wulff.contains(&x) {
            hits += 1;
        }
    }
    (2.0 * reach).powi(d as i32) * hits as f64 / samples.max(1) as f64
}

impl DiagnosticReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("eps,N_eps,energy,energy_ratio,symdiff_fraction\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{:.9},{:.9}",
                r.epsilon,
                r.plus_count,
                Scalar::to_f64(&r.energy),
                r.energy_ratio,
                r.symdiff_fraction
            );
        }
        out
    }

    /// Interface cells of the rescaled minimizer over the Wulff polygon, for
    /// planar systems.
    pub fn overlay_svg(&self, row: usize) -> Option<String> {
        let polygon = self.wulff_polygon.as_ref()?;
        let r = self.rows.get(row)?;
        let eps = r.epsilon;
        let b = r.solution.barycentre();
        let sites: HashSet<&LatticeVector> = r.solution.plus_sites.iter().collect();
        let mut cells = Vec::new();
        for s in &r.solution.plus_sites {
            let c = s.components();
            let interior = [[1, 0], [-1, 0], [0, 1], [0, -1]]
                .iter()
                .all(|o| sites.contains(&LatticeVector::new(vec![c[0] + o[0], c[1] + o[1]])));
            if !interior {
                cells.push([eps * (c[0] as f64 - b[0]), eps * (c[1] as f64 - b[1])]);
            }
        }
        let half = eps / 2.0;
        let mut extent: Vec<[f64; 2]> = polygon.vertices().to_vec();
        extent.extend(
            cells
                .iter()
                .flat_map(|c| [[c[0] - half, c[1] - half], [c[0] + half, c[1] + half]]),
        );
        let (lo, hi) = bounding_box(&extent);
        let mut canvas = SvgCanvas::new(lo, hi);
        canvas.polygon(
            polygon.vertices(),
            "fill=\"#deebf7\" stroke=\"#08519c\" stroke-width=\"2\"",
        );
        for c in cells {
            let square = [
                [c[0] - half, c[1] - half],
                [c[0] + half, c[1] - half],
                [c[0] + half, c[1] + half],
                [c[0] - half, c[1] + half],
            ];
            canvas.polygon(&square, "fill=\"#fc9272\" stroke=\"none\"");
        }
        Some(canvas.finish())
    }
}
