use crate::num::Scalar;
use crate::zonoid::ConvexBody;

/// Convex polygon with counterclockwise vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon<T = f64> {
    vertices: Vec<[T; 2]>,
}

impl<T: Scalar> ConvexPolygon<T> {
    /// Trusts the caller on convexity and orientation.
    pub fn from_ccw(vertices: Vec<[T; 2]>) -> Self {
        ConvexPolygon { vertices }
    }

    pub fn vertices(&self) -> &[[T; 2]] {
        &self.vertices
    }

    /// Edges as `(start, end)` pairs in boundary order.
    pub fn edges(&self) -> impl Iterator<Item = (&[T; 2], &[T; 2])> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// Shoelace area.
    pub fn area(&self) -> T {
        let twice = self.edges().fold(T::zero(), |acc, (a, b)| {
            acc + a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone()
        });
        twice / T::from_i64(2)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges()
            .map(|(a, b)| {
                let dx = b[0].to_f64() - a[0].to_f64();
                let dy = b[1].to_f64() - a[1].to_f64();
                dx.hypot(dy)
            })
            .sum()
    }

    pub fn translated(&self, t: &[T; 2]) -> ConvexPolygon<T> {
        ConvexPolygon {
            vertices: self
                .vertices
                .iter()
                .map(|v| [v[0].clone() + t[0].clone(), v[1].clone() + t[1].clone()])
                .collect(),
        }
    }

    pub fn to_f64(&self) -> ConvexPolygon<f64> {
        ConvexPolygon {
            vertices: self
                .vertices
                .iter()
                .map(|v| [v[0].to_f64(), v[1].to_f64()])
                .collect(),
        }
    }

    /// Whether the vertex sequence equals `other` up to a cyclic shift.
    pub fn same_cycle(&self, other: &ConvexPolygon<T>) -> bool {
        let n = self.vertices.len();
        if n != other.vertices.len() {
            return false;
        }
        if n == 0 {
            return true;
        }
        (0..n).any(|shift| (0..n).all(|i| self.vertices[(i + shift) % n] == other.vertices[i]))
    }
}

impl ConvexPolygon<f64> {
    pub fn contains(&self, p: [f64; 2]) -> bool {
        self.edges()
            .all(|(a, b)| (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) >= -1e-12)
    }

    /// Clips the polygon by the half-plane `⟨n, x⟩ ≤ c`.
    pub fn clip(&self, n: [f64; 2], c: f64) -> ConvexPolygon<f64> {
        let inside = |p: &[f64; 2]| n[0] * p[0] + n[1] * p[1] - c;
        let mut out = Vec::with_capacity(self.vertices.len() + 1);
        for (a, b) in self.edges() {
            let (fa, fb) = (inside(a), inside(b));
            if fa <= 0.0 {
                out.push(*a);
            }
            if (fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0) {
                let t = fa / (fa - fb);
                out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
            }
        }
        ConvexPolygon { vertices: out }
    }

    /// Removes repeated and collinear vertices.
    pub fn simplified(&self, tol: f64) -> ConvexPolygon<f64> {
        let mut v: Vec<[f64; 2]> = Vec::with_capacity(self.vertices.len());
        for p in &self.vertices {
            if v.last()
                .is_none_or(|q| (q[0] - p[0]).hypot(q[1] - p[1]) > tol)
            {
                v.push(*p);
            }
        }
        while v.len() > 1 && (v[0][0] - v[v.len() - 1][0]).hypot(v[0][1] - v[v.len() - 1][1]) <= tol
        {
            v.pop();
        }
        let mut changed = true;
        while changed && v.len() > 3 {
            changed = false;
            let n = v.len();
            for i in 0..n {
                let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
                let cr = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
                let scale = (c[0] - a[0]).hypot(c[1] - a[1]).max(1.0);
                if cr.abs() <= tol * scale {
                    v.remove(i);
                    changed = true;
                    break;
                }
            }
        }
        ConvexPolygon { vertices: v }
    }
}

impl<T: Scalar> ConvexBody for ConvexPolygon<T> {
    fn dim(&self) -> usize {
        2
    }

    fn support(&self, z: &[f64]) -> f64 {
        self.vertices
            .iter()
            .map(|v| v[0].to_f64() * z[0] + v[1].to_f64() * z[1])
            .fold(f64::NEG_INFINITY, f64::max)
    }

    fn support_point(&self, z: &[f64]) -> Vec<f64> {
        let best = self
            .vertices
            .iter()
            .map(|v| [v[0].to_f64(), v[1].to_f64()])
            .max_by(|a, b| (a[0] * z[0] + a[1] * z[1]).total_cmp(&(b[0] * z[0] + b[1] * z[1])));
        best.map(|b| b.to_vec()).unwrap_or_else(|| vec![0.0, 0.0])
    }

    fn edge_normals_2d(&self) -> Vec<[f64; 2]> {
        self.edges()
            .map(|(a, b)| {
                let (ex, ey) = (b[0].to_f64() - a[0].to_f64(), b[1].to_f64() - a[1].to_f64());
                [ey, -ex]
            })
            .collect()
    }
}

/// `F_φ(P) = Σ_edges φ(n_e)·|e|`, evaluated as `Σ φ(rot(e))` with `rot(e)`
/// the outward normal scaled to the edge length (φ is positively
/// 1-homogeneous), so the sum stays exact over rationals.
pub fn perimeter_energy_polygon<T: Scalar>(
    phi: impl Fn(&[T]) -> T,
    polygon: &ConvexPolygon<T>,
) -> T {
    polygon.edges().fold(T::zero(), |acc, (a, b)| {
        let ex = b[0].clone() - a[0].clone();
        let ey = b[1].clone() - a[1].clone();
        acc + phi(&[ey, -ex])
    })
}
