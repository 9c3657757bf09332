use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{primitive_direction, DirectionClass, LatticeVector};
use crate::num::{rat_int, Rational, Scalar};
use crate::zonoid::zonotope::Zonotope;

/// Weight of one atom `λ(δ_ν + δ_{-ν})` of a generating measure.
#[derive(Clone, Debug, PartialEq)]
pub enum AtomWeight {
    /// Exact per-direction aggregate `s(p) = Σ_{n≥1} n α_{np}` of a system;
    /// the measure weight is `λ = 4 s ‖p‖`.
    Aggregate(Rational),
    /// Free-standing real weight `λ`.
    Lambda(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasureAtom {
    pub direction: DirectionClass,
    pub weight: AtomWeight,
}

impl MeasureAtom {
    pub fn lambda(&self) -> f64 {
        match &self.weight {
            AtomWeight::Aggregate(s) => 4.0 * Scalar::to_f64(s) * self.direction.primitive().norm(),
            AtomWeight::Lambda(l) => *l,
        }
    }
}

/// Finite symmetric measure `Σ λ_i (δ_{ν_i} + δ_{-ν_i})` on rational directions.
///
/// Atoms are kept sorted by direction class and are pairwise distinct.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratingMeasure {
    dim: usize,
    atoms: Vec<MeasureAtom>,
}

impl GeneratingMeasure {
    pub fn empty(dim: usize) -> Self {
        GeneratingMeasure {
            dim,
            atoms: Vec::new(),
        }
    }

    /// Builds a measure, merging atoms on the same direction class. Two exact
    /// aggregates add exactly; any other combination falls back to `λ`.
    pub fn new(dim: usize, atoms: impl IntoIterator<Item = MeasureAtom>) -> Result<Self> {
        let mut merged: BTreeMap<DirectionClass, AtomWeight> = BTreeMap::new();
        for atom in atoms {
            if atom.direction.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: atom.direction.dim(),
                });
            }
            match &atom.weight {
                AtomWeight::Aggregate(s) if s.is_negative() => {
                    return Err(Error::InvalidArgument(format!(
                        "negative weight on {}",
                        atom.direction
                    )))
                }
                AtomWeight::Lambda(l) if !(l.is_finite() && *l >= 0.0) => {
                    return Err(Error::InvalidArgument(format!(
                        "invalid weight {l} on {}",
                        atom.direction
                    )))
                }
                _ => {}
            }
            let lambda = atom.lambda();
            let entry = merged.remove(&atom.direction);
            let combined = match (entry, atom.weight) {
                (None, w) => w,
                (Some(AtomWeight::Aggregate(a)), AtomWeight::Aggregate(b)) => {
                    AtomWeight::Aggregate(a + b)
                }
                (Some(prev), _) => {
                    let prev_lambda = MeasureAtom {
                        direction: atom.direction.clone(),
                        weight: prev,
                    }
                    .lambda();
                    AtomWeight::Lambda(prev_lambda + lambda)
                }
            };
            merged.insert(atom.direction, combined);
        }
        let atoms = merged
            .into_iter()
            .filter(|(_, w)| match w {
                AtomWeight::Aggregate(s) => !s.is_zero(),
                AtomWeight::Lambda(l) => *l > 0.0,
            })
            .map(|(direction, weight)| MeasureAtom { direction, weight })
            .collect();
        Ok(GeneratingMeasure { dim, atoms })
    }

    /// Measure with exact aggregates `s(p)` per class.
    pub fn from_aggregates(
        dim: usize,
        aggregates: BTreeMap<DirectionClass, Rational>,
    ) -> Result<Self> {
        GeneratingMeasure::new(
            dim,
            aggregates.into_iter().map(|(direction, s)| MeasureAtom {
                direction,
                weight: AtomWeight::Aggregate(s),
            }),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[MeasureAtom] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.atoms
            .iter()
            .all(|a| matches!(a.weight, AtomWeight::Aggregate(_)))
    }

    /// Exact aggregates per class, if every atom carries one.
    pub fn aggregates(&self) -> Option<BTreeMap<DirectionClass, Rational>> {
        self.atoms
            .iter()
            .map(|a| match &a.weight {
                AtomWeight::Aggregate(s) => Some((a.direction.clone(), s.clone())),
                AtomWeight::Lambda(_) => None,
            })
            .collect()
    }

    /// Total mass `μ(S^{d-1}) = Σ 2λ`.
    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| 2.0 * a.lambda()).sum()
    }

    /// `f_μ(z) = Σ 2λ |⟨z, ν⟩|`.
    pub fn support(&self, z: &[f64]) -> f64 {
        self.atoms
            .iter()
            .map(|a| match &a.weight {
                AtomWeight::Aggregate(s) => {
                    8.0 * Scalar::to_f64(s) * a.direction.primitive().dot_f64(z).abs()
                }
                AtomWeight::Lambda(l) => {
                    2.0 * l * a.direction.primitive().dot_f64(z).abs()
                        / a.direction.primitive().norm()
                }
            })
            .sum()
    }

    /// Exact `f_μ(z) = Σ 8 s(p) |⟨z, p⟩|` for exact measures.
    pub fn support_exact(&self, z: &[Rational]) -> Result<Rational> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: z.len(),
            });
        }
        let mut total = Rational::zero();
        for a in &self.atoms {
            let AtomWeight::Aggregate(s) = &a.weight else {
                return Err(Error::InexactMeasure);
            };
            let dot = dot_int_rat(a.direction.primitive(), z);
            total += s * dot.abs() * rat_int(8);
        }
        Ok(total)
    }

    /// Zonotope with generators `w_i = 2 λ_i ν_i`.
    pub fn zonotope(&self) -> Zonotope<f64> {
        let gens = self
            .atoms
            .iter()
            .map(|a| {
                let l = a.lambda();
                a.direction
                    .unit()
                    .into_iter()
                    .map(|c| 2.0 * l * c)
                    .collect()
            })
            .collect();
        Zonotope::new(self.dim, gens).expect("generator dimensions match")
    }

    /// Exact zonotope with generators `8 s(p) p`.
    pub fn exact_zonotope(&self) -> Result<Zonotope<Rational>> {
        let mut gens = Vec::with_capacity(self.atoms.len());
        for a in &self.atoms {
            let AtomWeight::Aggregate(s) = &a.weight else {
                return Err(Error::InexactMeasure);
            };
            let scale = s * rat_int(8);
            gens.push(
                a.direction
                    .primitive()
                    .components()
                    .iter()
                    .map(|&c| &scale * rat_int(c))
                    .collect(),
            );
        }
        Zonotope::new(self.dim, gens)
    }
}

fn dot_int_rat(p: &LatticeVector, z: &[Rational]) -> Rational {
    p.components()
        .iter()
        .zip(z)
        .fold(Rational::zero(), |acc, (&c, zi)| acc + zi * rat_int(c))
}

/// `w_i = 2 λ_i ν_i`: the zonotope whose support function is `f_μ`.
pub fn zonotope_from_measure(measure: &GeneratingMeasure) -> Zonotope<f64> {
    measure.zonotope()
}

/// Generating measure `Σ (‖w_i‖/2)(δ_{ν_i} + δ_{-ν_i})` of a zonotope whose
/// generators all point in rational directions (detected up to `1e-12`
/// relative error with denominators at most `10^4`).
pub fn measure_from_zonotope(z: &Zonotope<f64>) -> Result<GeneratingMeasure> {
    let mut atoms = Vec::new();
    for w in z.generators() {
        let p = rational_direction(w).ok_or_else(|| Error::NotRational(format!("{w:?}")))?;
        let norm = w.iter().map(|c| c * c).sum::<f64>().sqrt();
        atoms.push(MeasureAtom {
            direction: p,
            weight: AtomWeight::Lambda(norm / 2.0),
        });
    }
    GeneratingMeasure::new(z.dim(), atoms)
}

/// Exact inverse of [`GeneratingMeasure::exact_zonotope`]: a rational
/// generator `w = c p` (`p` primitive) contributes `s = |c| / 8`.
pub fn measure_from_exact_zonotope(z: &Zonotope<Rational>) -> Result<GeneratingMeasure> {
    let mut atoms = Vec::new();
    for w in z.generators() {
        let denom = w.iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = w
            .iter()
            .map(|c| (c * Rational::from_integer(denom.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let prim: Option<Vec<i64>> = ints.iter().map(|c| (c / &g).to_i64()).collect();
        let prim =
            prim.ok_or_else(|| Error::InvalidArgument(format!("generator {w:?} too large")))?;
        let (class, _) = primitive_direction(&LatticeVector::new(prim))?;
        let c = Rational::new(g, denom);
        atoms.push(MeasureAtom {
            direction: class,
            weight: AtomWeight::Aggregate(c / rat_int(8)),
        });
    }
    GeneratingMeasure::new(z.dim(), atoms)
}

const MAX_DENOMINATOR: i64 = 10_000;
const RATIONAL_TOL: f64 = 1e-12;

/// Primitive integer direction parallel to `w`, if one exists with small
/// denominators.
pub fn rational_direction(w: &[f64]) -> Option<DirectionClass> {
    let m = w.iter().fold(0.0f64, |acc, c| acc.max(c.abs()));
    if m == 0.0 || !m.is_finite() {
        return None;
    }
    let mut fracs = Vec::with_capacity(w.len());
    for &c in w {
        let r = c / m;
        let (a, b) = best_rational(r, MAX_DENOMINATOR);
        if (r - a as f64 / b as f64).abs() > RATIONAL_TOL {
            return None;
        }
        fracs.push((a, b));
    }
    let l = fracs.iter().fold(1i64, |acc, &(_, b)| acc.lcm(&b));
    let ints: Vec<i64> = fracs.iter().map(|&(a, b)| a * (l / b)).collect();
    primitive_direction(&LatticeVector::new(ints))
        .ok()
        .map(|(p, _)| p)
}

/// Last continued-fraction convergent of `x` with denominator `≤ max_den`.
fn best_rational(x: f64, max_den: i64) -> (i64, i64) {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i64;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    if k1 == 0 {
        (x.round() as i64, 1)
    } else {
        (h1, k1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn class(v: &[i64]) -> DirectionClass {
        primitive_direction(&LatticeVector::new(v.to_vec()))
            .unwrap()
            .0
    }

    #[test]
    fn measure_from_zonotope_examples() {
        let z = Zonotope::new(2, vec![vec![3.0, 4.0]]).unwrap();
        let m = measure_from_zonotope(&z).unwrap();
        assert_eq!(m.atoms().len(), 1);
        assert_eq!(m.atoms()[0].direction, class(&[3, 4]));
        assert!((m.atoms()[0].lambda() - 2.5).abs() < 1e-12);

        let z = Zonotope::new(2, vec![vec![1.0, 0.0], vec![2.0, 0.0]]).unwrap();
        let m = measure_from_zonotope(&z).unwrap();
        assert_eq!(m.atoms().len(), 1);
        assert!((m.atoms()[0].lambda() - 1.5).abs() < 1e-12);

        let z = Zonotope::new(2, vec![vec![1.0, std::f64::consts::SQRT_2]]).unwrap();
        assert!(matches!(
            measure_from_zonotope(&z),
            Err(Error::NotRational(_))
        ));
    }

    #[test]
    fn exact_zonotope_round_trip() {
        let z = Zonotope::new(
            2,
            vec![
                vec![rat(3, 1), rat(4, 1)],
                vec![rat(1, 2), rat(0, 1)],
                vec![rat(-1, 1), rat(0, 1)],
            ],
        )
        .unwrap();
        let m = measure_from_exact_zonotope(&z).unwrap();
        let aggr = m.aggregates().unwrap();
        assert_eq!(aggr[&class(&[3, 4])], rat(1, 8));
        assert_eq!(aggr[&class(&[1, 0])], rat(3, 16));
        let back = m.exact_zonotope().unwrap();
        for zz in [[rat(1, 1), rat(0, 1)], [rat(2, 3), rat(-5, 7)]] {
            assert_eq!(back.support(&zz), z.support(&zz));
        }
    }

    #[test]
    fn single_class_segment() {
        let m = GeneratingMeasure::new(
            2,
            [MeasureAtom {
                direction: class(&[1, 0]),
                weight: AtomWeight::Lambda(0.5),
            }],
        )
        .unwrap();
        let z = m.zonotope();
        assert_eq!(z.generators(), &[vec![1.0, 0.0]]);
        assert!(GeneratingMeasure::empty(2)
            .zonotope()
            .generators()
            .is_empty());
    }

    #[test]
    fn rational_direction_detection() {
        assert_eq!(rational_direction(&[0.5, 0.25]).unwrap(), class(&[2, 1]));
        assert_eq!(rational_direction(&[-3.0, 0.0]).unwrap(), class(&[1, 0]));
        assert!(rational_direction(&[1.0, std::f64::consts::PI]).is_none());
        assert!(rational_direction(&[0.0, 0.0]).is_none());
    }
}
