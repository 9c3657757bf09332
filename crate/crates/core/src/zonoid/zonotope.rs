use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::num::{Rational, Scalar};
use crate::zonoid::polygon::ConvexPolygon;
use crate::zonoid::ConvexBody;

/// Centered zonotope `Σ_i [-w_i, w_i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Zonotope<T = f64> {
    dim: usize,
    generators: Vec<Vec<T>>,
}

impl<T: Scalar> Zonotope<T> {
    /// Zero generators are dropped.
    pub fn new(dim: usize, generators: Vec<Vec<T>>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: g.len(),
                });
            }
            if g.iter().any(|c| !c.is_zero()) {
                gens.push(g);
            }
        }
        Ok(Zonotope {
            dim,
            generators: gens,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<T>] {
        &self.generators
    }

    /// `f(z) = Σ |⟨z, w_i⟩|`.
    pub fn support(&self, z: &[T]) -> T {
        self.generators
            .iter()
            .fold(T::zero(), |acc, w| acc + dot(w, z).abs())
    }

    pub fn rank(&self) -> usize {
        rank(&self.generators, self.dim)
    }

    pub fn is_non_degenerate(&self) -> bool {
        self.rank() == self.dim
    }

    /// `2^d Σ_{|S| = d} |det(w_S)|`.
    pub fn volume(&self) -> T {
        let d = self.dim;
        let mut total = T::zero();
        for_each_subset(self.generators.len(), d, |idx| {
            let m: Vec<Vec<T>> = idx.iter().map(|&i| self.generators[i].clone()).collect();
            total = total.clone() + determinant(m).abs();
        });
        let two_d = (0..d).fold(T::one(), |acc, _| acc * T::from_i64(2));
        total * two_d
    }

    pub fn scaled(&self, t: &T) -> Zonotope<T> {
        Zonotope {
            dim: self.dim,
            generators: self
                .generators
                .iter()
                .map(|g| g.iter().map(|c| c.clone() * t.clone()).collect())
                .collect(),
        }
    }

    pub fn to_f64(&self) -> Zonotope<f64> {
        Zonotope {
            dim: self.dim,
            generators: self
                .generators
                .iter()
                .map(|g| g.iter().map(Scalar::to_f64).collect())
                .collect(),
        }
    }

    /// Boundary of a planar zonotope, walked counterclockwise: generators are
    /// folded into the upper half-plane, parallel ones merged, and sorted by
    /// angle; edges are `2 g_1, …, 2 g_m, -2 g_1, …, -2 g_m`.
    pub fn polygon_2d(&self) -> Result<ConvexPolygon<T>> {
        if self.dim != 2 {
            return Err(Error::InvalidArgument(format!(
                "polygon_2d needs d = 2, got {}",
                self.dim
            )));
        }
        let mut gens: Vec<[T; 2]> = Vec::new();
        for g in &self.generators {
            let (x, y) = (g[0].clone(), g[1].clone());
            let flip = y.is_negative() || (y.is_zero() && x.is_negative());
            let v = if flip { [-x, -y] } else { [x, y] };
            match gens.iter_mut().find(|u| cross(u, &v).is_zero()) {
                Some(u) => {
                    u[0] = u[0].clone() + v[0].clone();
                    u[1] = u[1].clone() + v[1].clone();
                }
                None => gens.push(v),
            }
        }
        if gens.len() < 2 {
            return Err(Error::DegenerateWulffShape(format!(
                "{} direction class(es) in the plane",
                gens.len()
            )));
        }
        gens.sort_by(|a, b| {
            let c = cross(a, b);
            if c.is_positive() {
                Ordering::Less
            } else if c.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        });
        let two = T::from_i64(2);
        let mut p = [T::zero(), T::zero()];
        for g in &gens {
            p[0] = p[0].clone() - g[0].clone();
            p[1] = p[1].clone() - g[1].clone();
        }
        let mut vertices = Vec::with_capacity(2 * gens.len());
        for sign in [1i64, -1] {
            let s = T::from_i64(sign) * two.clone();
            for g in &gens {
                vertices.push(p.clone());
                p = [
                    p[0].clone() + s.clone() * g[0].clone(),
                    p[1].clone() + s.clone() * g[1].clone(),
                ];
            }
        }
        Ok(ConvexPolygon::from_ccw(vertices))
    }
}

impl Zonotope<f64> {
    /// Membership test through the facet normals (normals of every
    /// `(d-1)`-subset of generators). Degenerate zonotopes contain no point
    /// in this sense.
    pub fn contains(&self, x: &[f64]) -> bool {
        if !self.is_non_degenerate() {
            return false;
        }
        let tol = 1e-12
            * (1.0
                + self
                    .generators
                    .iter()
                    .flatten()
                    .fold(0.0f64, |a, c| a.max(c.abs())));
        let mut inside = true;
        for_each_subset(self.generators.len(), self.dim - 1, |idx| {
            if !inside {
                return;
            }
            let rows: Vec<Vec<f64>> = idx.iter().map(|&i| self.generators[i].clone()).collect();
            let n = normal_of(&rows, self.dim);
            if n.iter().all(|c| *c == 0.0) {
                return;
            }
            if dot(&n, x).abs() > self.support(&n) + tol * n.iter().map(|c| c.abs()).sum::<f64>() {
                inside = false;
            }
        });
        inside
    }
}

impl Zonotope<f64> {
    /// Normals of the facet hyperplanes, one per spanning `(d-1)`-subset of
    /// generators, up to sign. Not normalized.
    pub fn facet_normals(&self) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = Vec::new();
        for_each_subset(self.generators.len(), self.dim.saturating_sub(1), |idx| {
            let rows: Vec<Vec<f64>> = idx.iter().map(|&i| self.generators[i].clone()).collect();
            let n = normal_of(&rows, self.dim);
            let len = n.iter().map(|c| c * c).sum::<f64>().sqrt();
            if len > 0.0 {
                out.push(n.iter().map(|c| c / len).collect());
            }
        });
        out
    }

    /// Gauge `inf { t ≥ 0 : x ∈ t Z }` of a non-degenerate zonotope.
    pub fn gauge(&self, x: &[f64]) -> f64 {
        self.facet_normals()
            .iter()
            .map(|n| dot(n, x).abs() / self.support(n))
            .fold(0.0, f64::max)
    }
}

impl Zonotope<Rational> {
    pub fn support_f64(&self, z: &[f64]) -> f64 {
        self.to_f64().support(z)
    }
}

impl<T: Scalar> ConvexBody for Zonotope<T> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn support(&self, z: &[f64]) -> f64 {
        self.generators
            .iter()
            .map(|w| {
                w.iter()
                    .zip(z)
                    .map(|(a, b)| a.to_f64() * b)
                    .sum::<f64>()
                    .abs()
            })
            .sum()
    }

    fn support_point(&self, z: &[f64]) -> Vec<f64> {
        let mut p = vec![0.0; self.dim];
        for w in &self.generators {
            let wf: Vec<f64> = w.iter().map(Scalar::to_f64).collect();
            let s = dot(&wf, z);
            let sign = if s > 0.0 {
                1.0
            } else if s < 0.0 {
                -1.0
            } else {
                0.0
            };
            for (pi, wi) in p.iter_mut().zip(&wf) {
                *pi += sign * wi;
            }
        }
        p
    }

    fn edge_normals_2d(&self) -> Vec<[f64; 2]> {
        self.generators
            .iter()
            .flat_map(|w| {
                let (x, y) = (w[0].to_f64(), w[1].to_f64());
                [[-y, x], [y, -x]]
            })
            .collect()
    }
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn cross<T: Scalar>(a: &[T; 2], b: &[T; 2]) -> T {
    a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone()
}

/// Calls `f` with every increasing index tuple of length `k` from `0..n`.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Determinant by Gaussian elimination with largest-magnitude pivots.
pub(crate) fn determinant<T: Scalar>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut det = T::one();
    for col in 0..n {
        let pivot = (col..n).max_by(|&a, &b| {
            m[a][col]
                .abs()
                .partial_cmp(&m[b][col].abs())
                .unwrap_or(Ordering::Equal)
        });
        let Some(p) = pivot else { return T::zero() };
        if m[p][col].is_zero() {
            return T::zero();
        }
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det = det * pv.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pv.clone();
            for c in col..n {
                let delta = factor.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - delta;
            }
        }
    }
    det
}

fn rank<T: Scalar>(rows: &[Vec<T>], dim: usize) -> usize {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let scale = rows
        .iter()
        .flatten()
        .map(|c| c.to_f64().abs())
        .fold(0.0, f64::max);
    let mut r = 0;
    for col in 0..dim {
        if r == m.len() {
            break;
        }
        let pivot = (r..m.len()).max_by(|&a, &b| {
            m[a][col]
                .abs()
                .partial_cmp(&m[b][col].abs())
                .unwrap_or(Ordering::Equal)
        });
        let Some(p) = pivot else { break };
        if m[p][col].near_zero(scale) {
            continue;
        }
        m.swap(p, r);
        let pv = m[r][col].clone();
        for i in r + 1..m.len() {
            let factor = m[i][col].clone() / pv.clone();
            for c in col..dim {
                let delta = factor.clone() * m[r][c].clone();
                m[i][c] = m[i][c].clone() - delta;
            }
        }
        r += 1;
    }
    r
}

/// Generalized cross product of `d - 1` vectors in `R^d`.
pub(crate) fn normal_of(rows: &[Vec<f64>], d: usize) -> Vec<f64> {
    (0..d)
        .map(|i| {
            let minor: Vec<Vec<f64>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, c)| *c)
                        .collect()
                })
                .collect();
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sign * determinant(minor)
        })
        .collect()
}
