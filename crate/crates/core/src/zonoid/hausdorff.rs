use std::f64::consts::PI;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::zonoid::ConvexBody;

/// Seed of the direction sampler for `d ≥ 3`.
pub const DIRECTION_SEED: u64 = 0x5eed_d1ec;

/// `n` unit directions: equally spaced angles for `d = 2`, `±1` for `d = 1`,
/// seeded Gaussian samples for `d ≥ 3`. The `d ≥ 3` family is prefix-stable:
/// the first `n` directions do not depend on the requested count.
pub fn sample_directions(dim: usize, n: usize) -> Vec<Vec<f64>> {
    match dim {
        0 => Vec::new(),
        1 => vec![vec![1.0], vec![-1.0]],
        2 => (0..n)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / n as f64;
                vec![t.cos(), t.sin()]
            })
            .collect(),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(DIRECTION_SEED);
            let mut out = Vec::with_capacity(n);
            while out.len() < n {
                let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
                let len = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                if len > 1e-9 {
                    out.push(v.into_iter().map(|c| c / len).collect());
                }
            }
            out
        }
    }
}

/// `max_u |h_A(u) - h_B(u)|` over the given unit directions.
pub fn hausdorff_distance_on<A: ConvexBody + ?Sized, B: ConvexBody + ?Sized>(
    a: &A,
    b: &B,
    directions: &[Vec<f64>],
) -> f64 {
    directions
        .iter()
        .map(|u| (a.support(u) - b.support(u)).abs())
        .fold(0.0, f64::max)
}

/// Support-function Hausdorff distance.
///
/// In the plane the sample is augmented with every edge normal of both bodies
/// and, on each arc between consecutive normals, the direction of the
/// difference of the two support points; the result is then exact for
/// polygons and zonogons. In higher dimension it is a lower estimate that is
/// nondecreasing in `n_samples`.
pub fn hausdorff_distance<A: ConvexBody + ?Sized, B: ConvexBody + ?Sized>(
    a: &A,
    b: &B,
    n_samples: usize,
) -> f64 {
    let dim = a.dim();
    let mut dirs = sample_directions(dim, n_samples);
    if dim == 2 {
        dirs.extend(critical_directions(a, b));
    }
    hausdorff_distance_on(a, b, &dirs)
}

fn critical_directions<A: ConvexBody + ?Sized, B: ConvexBody + ?Sized>(
    a: &A,
    b: &B,
) -> Vec<Vec<f64>> {
    let mut angles: Vec<f64> = a
        .edge_normals_2d()
        .into_iter()
        .chain(b.edge_normals_2d())
        .filter(|n| n[0] != 0.0 || n[1] != 0.0)
        .map(|n| n[1].atan2(n[0]).rem_euclid(2.0 * PI))
        .collect();
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|x, y| (*x - *y).abs() < 1e-15);
    let mut out: Vec<Vec<f64>> = angles.iter().map(|t| vec![t.cos(), t.sin()]).collect();
    if angles.is_empty() {
        return out;
    }
    // On an open arc between consecutive normals both support points are
    // fixed, so h_A - h_B = ⟨p - q, u⟩ peaks at u = ±(p - q)/|p - q|.
    for i in 0..angles.len() {
        let lo = angles[i];
        let mut hi = angles[(i + 1) % angles.len()];
        if hi <= lo {
            hi += 2.0 * PI;
        }
        let mid = 0.5 * (lo + hi);
        let u = [mid.cos(), mid.sin()];
        let p = a.support_point(&u);
        let q = b.support_point(&u);
        let diff = [p[0] - q[0], p[1] - q[1]];
        if diff[0] == 0.0 && diff[1] == 0.0 {
            continue;
        }
        for s in [1.0, -1.0] {
            let t = (s * diff[1]).atan2(s * diff[0]).rem_euclid(2.0 * PI);
            let t = if t < lo { t + 2.0 * PI } else { t };
            if t > lo && t < hi {
                out.push(vec![t.cos(), t.sin()]);
            }
        }
    }
    out
}
