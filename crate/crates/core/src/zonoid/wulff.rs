use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::zonoid::polygon::ConvexPolygon;

/// Polygon `{w : ⟨ν_j, w⟩ ≤ φ(ν_j)}` over `n` equally spaced unit directions
/// `ν_j = (cos 2πj/n, sin 2πj/n)`.
pub fn wulff_shape_2d(
    phi: impl Fn(&[f64]) -> f64,
    n_halfplanes: usize,
) -> Result<ConvexPolygon<f64>> {
    if n_halfplanes < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 half-planes, got {n_halfplanes}"
        )));
    }
    let constraints: Vec<([f64; 2], f64)> = (0..n_halfplanes)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / n_halfplanes as f64;
            let nu = [t.cos(), t.sin()];
            (nu, phi(&nu))
        })
        .collect();
    let max_phi = constraints.iter().map(|c| c.1).fold(0.0, f64::max);
    if let Some((nu, value)) = constraints.iter().find(|(_, v)| !(*v > 1e-12 * max_phi)) {
        return Err(Error::DegenerateWulffShape(format!(
            "φ({:.6}, {:.6}) = {value}",
            nu[0], nu[1]
        )));
    }
    // Every point of the intersection lies within max φ / cos(π/n) of 0.
    let b = max_phi / (PI / n_halfplanes as f64).cos() + 1.0;
    let mut poly = ConvexPolygon::from_ccw(vec![[-b, -b], [b, -b], [b, b], [-b, b]]);
    for (nu, value) in constraints {
        poly = poly.clip(nu, value);
    }
    Ok(poly.simplified(1e-9 * b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zonoid::hausdorff::hausdorff_distance;
    use crate::zonoid::zonotope::Zonotope;
    use crate::zonoid::ConvexBody;

    #[test]
    fn l1_tension_gives_square() {
        let w = wulff_shape_2d(|z| 8.0 * (z[0].abs() + z[1].abs()), 360).unwrap();
        let square =
            ConvexPolygon::from_ccw(vec![[-8.0, -8.0], [8.0, -8.0], [8.0, 8.0], [-8.0, 8.0]]);
        assert!(hausdorff_distance(&w, &square, 720) <= 0.01);
        assert_eq!(w.vertices().len(), 4);
    }

    #[test]
    fn euclidean_tension_gives_disk() {
        let w = wulff_shape_2d(|z| z[0].hypot(z[1]), 360).unwrap();
        assert!((w.area() - PI).abs() < 1e-3);
        for v in w.vertices() {
            let r = v[0].hypot(v[1]);
            assert!((1.0..1.0001).contains(&r));
        }
    }

    #[test]
    fn zonogon_self_consistency() {
        let z = Zonotope::new(2, vec![vec![2.0, 1.0], vec![-1.0, 3.0], vec![1.0, 0.0]]).unwrap();
        let w = wulff_shape_2d(|x| z.support(x), 720).unwrap();
        let p = z.polygon_2d().unwrap();
        assert!(hausdorff_distance(&w, &p, 720) <= 0.01);
        assert!((ConvexBody::support(&w, &[1.0, 0.0]) - 4.0).abs() < 1e-9);
    }

    #[test]
    fn vanishing_tension_is_rejected() {
        assert!(matches!(
            wulff_shape_2d(|z| 8.0 * z[0].abs(), 360),
            Err(Error::DegenerateWulffShape(_))
        ));
    }
}
