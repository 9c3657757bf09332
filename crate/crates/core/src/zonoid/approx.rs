use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lattice::{primitive_direction, DirectionClass, LatticeVector};
use crate::num::{rat_from_f64, Rational};
use crate::zonoid::hausdorff::sample_directions;
use crate::zonoid::measure::{AtomWeight, GeneratingMeasure, MeasureAtom};

/// What `approximate_zonoid` approximates.
pub enum ZonoidTarget {
    /// A finite generating measure, transported onto the direction family.
    Measure(GeneratingMeasure),
    /// Planar measure with density `g(θ) dθ` on the unit circle; its support
    /// function is `∫ |⟨z, u(θ)⟩| g(θ) dθ`. `support` may supply it in closed
    /// form; otherwise it is integrated numerically.
    Density2d {
        density: Box<dyn Fn(f64) -> f64>,
        support: Option<Box<dyn Fn(&[f64]) -> f64>>,
    },
    /// Black-box support function of a centered zonoid in `R^dim`.
    Oracle {
        dim: usize,
        support: Box<dyn Fn(&[f64]) -> f64>,
    },
}

impl ZonoidTarget {
    /// The unit disk: uniform density `1/4` on the circle.
    pub fn unit_disk() -> Self {
        ZonoidTarget::Density2d {
            density: Box::new(|_| 0.25),
            support: Some(Box::new(|z: &[f64]| z[0].hypot(z[1]))),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ZonoidTarget::Measure(m) => m.dim(),
            ZonoidTarget::Density2d { .. } => 2,
            ZonoidTarget::Oracle { dim, .. } => *dim,
        }
    }

    pub fn support(&self, z: &[f64]) -> f64 {
        match self {
            ZonoidTarget::Measure(m) => m.support(z),
            ZonoidTarget::Density2d {
                support: Some(f), ..
            } => f(z),
            ZonoidTarget::Density2d {
                density,
                support: None,
            } => {
                let n = 20_000;
                let h = 2.0 * PI / n as f64;
                (0..n)
                    .map(|j| {
                        let t = (j as f64 + 0.5) * h;
                        (z[0] * t.cos() + z[1] * t.sin()).abs() * density(t)
                    })
                    .sum::<f64>()
                    * h
            }
            ZonoidTarget::Oracle { support, .. } => support(z),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ApproxOptions {
    pub eta: f64,
    /// Largest max-norm of a primitive direction in the output.
    pub denominator_bound: i64,
    /// Number of unit directions on which the sup-error is measured.
    pub samples: usize,
    /// Add mass on every coordinate direction so that the canonical system
    /// of the output is coercive.
    pub coercive_padding: bool,
}

impl Default for ApproxOptions {
    fn default() -> Self {
        ApproxOptions {
            eta: 0.02,
            denominator_bound: 10,
            samples: 3600,
            coercive_padding: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ApproxResult {
    /// Exact aggregates on directions of max-norm `≤ denominator_bound`.
    pub measure: GeneratingMeasure,
    /// `max |f_out - f_target|` over the sampled directions.
    pub sup_error: f64,
    /// Aggregate added on each coordinate direction, when requested.
    pub padding: Option<Rational>,
}

/// Rational zonoid whose support function is within `eta` of the target's
/// on `samples` directions.
pub fn approximate_zonoid(target: &ZonoidTarget, options: &ApproxOptions) -> Result<ApproxResult> {
    let dim = target.dim();
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    if !(options.eta > 0.0) || options.denominator_bound < 1 || options.samples == 0 {
        return Err(Error::InvalidArgument(
            "eta, denominator_bound and samples must be positive".into(),
        ));
    }
    let family = direction_family(dim, options.denominator_bound);
    let raw = match target {
        ZonoidTarget::Measure(m) => transport(m, &family)?,
        ZonoidTarget::Density2d { density, .. } => arc_quadrature(density.as_ref(), &family)?,
        ZonoidTarget::Oracle { support, .. } => {
            least_squares_fit(dim, support.as_ref(), &family, options.samples)?
        }
    };
    let mut measure = to_exact(&raw)?;
    let samples = sample_directions(dim, options.samples);
    let error_of = |m: &GeneratingMeasure| {
        samples
            .iter()
            .map(|u| (m.support(u) - target.support(u)).abs())
            .fold(0.0, f64::max)
    };
    let mut sup_error = error_of(&measure);
    if sup_error >= options.eta {
        return Err(Error::ToleranceUnreachable {
            achieved: sup_error,
            eta: options.eta,
        });
    }
    let mut padding = None;
    if options.coercive_padding {
        // 8 δ ‖z‖_1 ≤ 8 δ √d keeps half of the remaining slack.
        let delta = rat_from_f64((options.eta - sup_error) / (16.0 * (dim as f64).sqrt()))?;
        let extra = (0..dim).map(|n| MeasureAtom {
            direction: primitive_direction(&LatticeVector::unit(dim, n))
                .expect("unit vector")
                .0,
            weight: AtomWeight::Aggregate(delta.clone()),
        });
        measure = GeneratingMeasure::new(dim, measure.atoms().iter().cloned().chain(extra))?;
        sup_error = error_of(&measure);
        padding = Some(delta);
    }
    Ok(ApproxResult {
        measure,
        sup_error,
        padding,
    })
}

/// Primitive integer directions with max-norm `≤ bound`, one per class.
pub fn direction_family(dim: usize, bound: i64) -> Vec<DirectionClass> {
    let side = (2 * bound + 1) as usize;
    let total = side.pow(dim as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let v: Vec<i64> = (0..dim)
            .map(|_| {
                let x = (c % side) as i64 - bound;
                c /= side;
                x
            })
            .collect();
        let v = LatticeVector::new(v);
        if v.is_zero() || !v.is_canonical_sign() {
            continue;
        }
        let g = v.components().iter().fold(0i64, |acc, c| acc.gcd(c));
        if g == 1 {
            out.push(primitive_direction(&v).expect("nonzero").0);
        }
    }
    out.sort();
    out
}

fn nearest(family: &[DirectionClass], u: &[f64]) -> usize {
    let mut best = 0;
    let mut best_cos = f64::NEG_INFINITY;
    for (i, p) in family.iter().enumerate() {
        let c = p.primitive().dot_f64(u).abs() / p.primitive().norm();
        if c > best_cos {
            best_cos = c;
            best = i;
        }
    }
    best
}

fn transport(m: &GeneratingMeasure, family: &[DirectionClass]) -> Result<GeneratingMeasure> {
    let atoms = m.atoms().iter().map(|a| {
        if family.binary_search(&a.direction).is_ok() {
            a.clone()
        } else {
            let target = &family[nearest(family, &a.direction.unit())];
            MeasureAtom {
                direction: target.clone(),
                weight: AtomWeight::Lambda(a.lambda()),
            }
        }
    });
    GeneratingMeasure::new(m.dim(), atoms.collect::<Vec<_>>())
}

/// Each class receives the density mass of its Voronoi arc on the circle,
/// averaged with the antipodal arc.
fn arc_quadrature(
    density: &dyn Fn(f64) -> f64,
    family: &[DirectionClass],
) -> Result<GeneratingMeasure> {
    let mut angles: Vec<(f64, &DirectionClass)> = family
        .iter()
        .map(|p| {
            let u = p.unit();
            (u[1].atan2(u[0]).rem_euclid(PI), p)
        })
        .collect();
    angles.sort_by(|a, b| a.0.total_cmp(&b.0));
    let m = angles.len();
    let mut atoms = Vec::with_capacity(m);
    for i in 0..m {
        let t = angles[i].0;
        let prev = if i == 0 {
            angles[m - 1].0 - PI
        } else {
            angles[i - 1].0
        };
        let next = if i + 1 == m {
            angles[0].0 + PI
        } else {
            angles[i + 1].0
        };
        let (lo, hi) = (0.5 * (prev + t), 0.5 * (t + next));
        let mass = 0.5 * (integrate(density, lo, hi) + integrate(density, lo + PI, hi + PI));
        atoms.push(MeasureAtom {
            direction: angles[i].1.clone(),
            weight: AtomWeight::Lambda(mass),
        });
    }
    GeneratingMeasure::new(2, atoms)
}

/// Composite Simpson rule.
fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let n = 64;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for j in 1..n {
        let w = if j % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + j as f64 * h);
    }
    s * h / 3.0
}

/// Nonnegative least squares `min ‖A c - f‖²` with `A_{s,i} = |⟨u_s, ν_i⟩|`
/// by cyclic coordinate descent on the normal equations.
fn least_squares_fit(
    dim: usize,
    support: &dyn Fn(&[f64]) -> f64,
    family: &[DirectionClass],
    samples: usize,
) -> Result<GeneratingMeasure> {
    let dirs = sample_directions(dim, samples);
    let units: Vec<Vec<f64>> = family.iter().map(|p| p.unit()).collect();
    let m = units.len();
    let columns: Vec<Vec<f64>> = units
        .iter()
        .map(|nu| {
            dirs.iter()
                .map(|u| u.iter().zip(nu).map(|(a, b)| a * b).sum::<f64>().abs())
                .collect()
        })
        .collect();
    let f: Vec<f64> = dirs.iter().map(|u| support(u)).collect();
    let dotv = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let gram: Vec<Vec<f64>> = (0..m)
        .map(|i| (0..m).map(|j| dotv(&columns[i], &columns[j])).collect())
        .collect();
    let rhs: Vec<f64> = columns.iter().map(|c| dotv(c, &f)).collect();
    let mut c = vec![0.0; m];
    let mut grad: Vec<f64> = rhs.iter().map(|b| -b).collect();
    for _ in 0..5000 {
        let mut moved = 0.0f64;
        for i in 0..m {
            if gram[i][i] <= 0.0 {
                continue;
            }
            let new = (c[i] - grad[i] / gram[i][i]).max(0.0);
            let step = new - c[i];
            if step != 0.0 {
                for (g, row) in grad.iter_mut().zip(&gram) {
                    *g += row[i] * step;
                }
                c[i] = new;
                moved = moved.max(step.abs());
            }
        }
        if moved < 1e-13 {
            break;
        }
    }
    let atoms = family
        .iter()
        .zip(c)
        .filter(|(_, w)| *w > 0.0)
        .map(|(p, w)| MeasureAtom {
            direction: p.clone(),
            weight: AtomWeight::Lambda(w / 2.0),
        });
    GeneratingMeasure::new(dim, atoms.collect::<Vec<_>>())
}

/// Replaces real weights by the exact aggregate `s = λ / (4 ‖p‖)` of their
/// floating-point value.
fn to_exact(m: &GeneratingMeasure) -> Result<GeneratingMeasure> {
    let mut aggr: BTreeMap<DirectionClass, Rational> = BTreeMap::new();
    for a in m.atoms() {
        let s = match &a.weight {
            AtomWeight::Aggregate(s) => s.clone(),
            AtomWeight::Lambda(l) => rat_from_f64(l / (4.0 * a.direction.primitive().norm()))?,
        };
        *aggr.entry(a.direction.clone()).or_default() += s;
    }
    GeneratingMeasure::from_aggregates(m.dim(), aggr)
}
