//! Exact integer-lattice algebra: primitive directions, Hermite normal form
//! of generator sets, sublattice index and residue classes.
//!
//! Everything here is exact; the echelon form is computed over `BigInt`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A point (or offset) of the integer lattice `Z^d`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(components: Vec<i64>) -> Self {
        LatticeVector(components)
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![0; dim])
    }

    /// The `axis`-th standard basis vector of `Z^dim`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = vec![0; dim];
        v[axis] = 1;
        LatticeVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &LatticeVector) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeVector) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, t: i64) -> Self {
        LatticeVector(self.0.iter().map(|c| c * t).collect())
    }

    pub fn dot_f64(&self, z: &[f64]) -> f64 {
        self.0.iter().zip(z).map(|(&a, &b)| a as f64 * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.0
            .iter()
            .map(|&c| (c as f64) * (c as f64))
            .sum::<f64>()
            .sqrt()
    }

    pub fn norm_sq(&self) -> i64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn max_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn l1_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).sum()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&c| c as f64).collect()
    }

    /// True when the first nonzero component is positive.
    pub fn is_canonical_sign(&self) -> bool {
        self.0.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

impl<const N: usize> From<[i64; N]> for LatticeVector {
    fn from(v: [i64; N]) -> Self {
        LatticeVector(v.to_vec())
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The unordered pair `{p, -p}` of a primitive lattice vector, stored with
/// its first nonzero component positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DirectionClass(LatticeVector);

impl DirectionClass {
    pub fn primitive(&self) -> &LatticeVector {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Unit vector `p / ‖p‖`.
    pub fn unit(&self) -> Vec<f64> {
        let n = self.0.norm();
        self.0.components().iter().map(|&c| c as f64 / n).collect()
    }
}

impl fmt::Display for DirectionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "±{}", self.0)
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Splits `k = ±multiplier · p` with `p` primitive and canonically signed.
pub fn primitive_direction(k: &LatticeVector) -> Result<(DirectionClass, i64)> {
    if k.is_zero() {
        return Err(Error::NotADirection);
    }
    let g = k.components().iter().fold(0, |acc, &c| gcd_i64(acc, c));
    let mut p: Vec<i64> = k.components().iter().map(|c| c / g).collect();
    let p_vec = LatticeVector(p.clone());
    if !p_vec.is_canonical_sign() {
        p.iter_mut().for_each(|c| *c = -*c);
    }
    Ok((DirectionClass(LatticeVector(p)), g))
}

/// Index of a sublattice in `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl LatticeIndex {
    pub fn as_u64(&self) -> Option<u64> {
        match self {
            LatticeIndex::Finite(n) => n.to_u64(),
            LatticeIndex::Infinite => None,
        }
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{n}"),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

/// Hermite basis of the integer span of a set of generators.
///
/// Basis vectors are stored as echelon rows: row `r` vanishes before its
/// pivot column, the pivot is positive, and every entry above a pivot lies
/// in `[0, pivot)`. Read as columns, these rows form the `d × r` matrix in
/// column Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublatticeBasis {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl SublatticeBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    /// `d × r` matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Vec<Vec<BigInt>> {
        (0..self.dim)
            .map(|i| self.rows.iter().map(|row| row[i].clone()).collect())
            .collect()
    }

    /// Basis vectors as lattice vectors (panics only if an entry leaves `i64`).
    pub fn basis_vectors(&self) -> Vec<LatticeVector> {
        self.rows
            .iter()
            .map(|row| {
                LatticeVector(
                    row.iter()
                        .map(|c| c.to_i64().expect("basis entry fits i64"))
                        .collect(),
                )
            })
            .collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn index(&self) -> LatticeIndex {
        if !self.is_full_rank() {
            return LatticeIndex::Infinite;
        }
        let det = self
            .rows
            .iter()
            .zip(&self.pivots)
            .fold(BigInt::one(), |acc, (row, &p)| acc * &row[p]);
        LatticeIndex::Finite(det)
    }

    /// Canonical representative of `v` modulo the sublattice: every pivot
    /// coordinate is reduced into `[0, pivot)`.
    pub fn reduce(&self, v: &LatticeVector) -> LatticeVector {
        let mut x: Vec<BigInt> = v.components().iter().map(|&c| BigInt::from(c)).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let q = x[p].div_floor(&row[p]);
            if !q.is_zero() {
                for (xi, ri) in x.iter_mut().zip(row) {
                    *xi -= &q * ri;
                }
            }
        }
        LatticeVector(
            x.iter()
                .map(|c| c.to_i64().expect("residue fits i64"))
                .collect(),
        )
    }

    /// Whether `v` lies in the sublattice.
    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// One representative per class of `Z^d / L`, enumerated inside the
    /// fundamental box of the Hermite basis; the first one is `0`.
    pub fn residue_classes(&self) -> Result<Vec<LatticeVector>> {
        if !self.is_full_rank() {
            return Err(Error::DegenerateSublattice {
                rank: self.rank(),
                dim: self.dim,
            });
        }
        let diag: Vec<i64> = self
            .rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &p)| row[p].to_i64().expect("index fits i64"))
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.dim];
        loop {
            out.push(LatticeVector(cur.clone()));
            // odometer with the last coordinate fastest
            let mut axis = self.dim;
            loop {
                if axis == 0 {
                    return Ok(out);
                }
                axis -= 1;
                cur[axis] += 1;
                if cur[axis] < diag[axis] {
                    break;
                }
                cur[axis] = 0;
            }
        }
    }
}

/// Hermite basis of the `Z`-span of `generators` in dimension `dim`.
pub fn sublattice_basis(dim: usize, generators: &[LatticeVector]) -> Result<SublatticeBasis> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(generators.len());
    for g in generators {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: g.dim(),
            });
        }
        if !g.is_zero() {
            rows.push(g.components().iter().map(|&c| BigInt::from(c)).collect());
        }
    }

    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..dim {
        if r == rows.len() {
            break;
        }
        // Euclid on the column entries of rows r..
        loop {
            let best = (r..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()).then(a.cmp(&b)));
            let Some(best) = best else { break };
            rows.swap(r, best);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                let pivot_row = rows[r].clone();
                for (a, b) in rows[i].iter_mut().zip(&pivot_row) {
                    *a -= &q * b;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][col].is_zero() {
            if rows[r][col].is_negative() {
                rows[r].iter_mut().for_each(|c| *c = -c.clone());
            }
            let pivot_row = rows[r].clone();
            for row in rows.iter_mut().take(r) {
                let q = row[col].div_floor(&pivot_row[col]);
                if !q.is_zero() {
                    for (a, b) in row.iter_mut().zip(&pivot_row) {
                        *a -= &q * b;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
    }
    rows.truncate(r);
    Ok(SublatticeBasis { dim, rows, pivots })
}

pub fn lattice_index(dim: usize, generators: &[LatticeVector]) -> Result<LatticeIndex> {
    Ok(sublattice_basis(dim, generators)?.index())
}

pub fn spans_full_lattice(dim: usize, generators: &[LatticeVector]) -> Result<bool> {
    Ok(lattice_index(dim, generators)? == LatticeIndex::Finite(BigInt::one()))
}

pub fn residue_classes(basis: &SublatticeBasis) -> Result<Vec<LatticeVector>> {
    basis.residue_classes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn lv<const N: usize>(v: [i64; N]) -> LatticeVector {
        LatticeVector::from(v)
    }

    #[test]
    fn primitive_direction_examples() {
        let (p, m) = primitive_direction(&lv([2, 4])).unwrap();
        assert_eq!((p.primitive().clone(), m), (lv([1, 2]), 2));
        let (p, m) = primitive_direction(&lv([0, 0, -3])).unwrap();
        assert_eq!((p.primitive().clone(), m), (lv([0, 0, 1]), 3));
        let (p, m) = primitive_direction(&lv([5, 0])).unwrap();
        assert_eq!((p.primitive().clone(), m), (lv([1, 0]), 5));
        assert!(matches!(
            primitive_direction(&lv([0, 0])),
            Err(Error::NotADirection)
        ));
    }

    /// Counts residues of Z^2 modulo span{a, b} by brute force: points of a
    /// large box that are pairwise inequivalent, checked via an independent
    /// rational solve of `x = s a + t b`.
    fn brute_index_2d(a: [i64; 2], b: [i64; 2]) -> usize {
        let det = a[0] * b[1] - a[1] * b[0];
        assert_ne!(det, 0);
        let in_span = |x: [i64; 2]| {
            let s_num = x[0] * b[1] - x[1] * b[0];
            let t_num = a[0] * x[1] - a[1] * x[0];
            s_num % det == 0 && t_num % det == 0
        };
        let mut reps: Vec<[i64; 2]> = Vec::new();
        for x in -6..=6 {
            for y in -6..=6 {
                if reps.iter().all(|r| !in_span([x - r[0], y - r[1]])) {
                    reps.push([x, y]);
                }
            }
        }
        reps.len()
    }

    #[test]
    fn sublattice_basis_examples() {
        let id = sublattice_basis(2, &[lv([1, 0]), lv([0, 1])]).unwrap();
        assert_eq!(id.rank(), 2);
        assert_eq!(id.index(), LatticeIndex::Finite(BigInt::one()));

        let diag = sublattice_basis(2, &[lv([1, 1]), lv([1, -1])]).unwrap();
        assert_eq!(brute_index_2d([1, 1], [1, -1]), 2);
        assert_eq!(diag.index(), LatticeIndex::Finite(BigInt::from(2)));

        let even = sublattice_basis(2, &[lv([2, 0]), lv([0, 2])]).unwrap();
        assert_eq!(even.index(), LatticeIndex::Finite(BigInt::from(4)));
    }

    #[test]
    fn empty_generators_give_rank_zero() {
        let b = sublattice_basis(3, &[]).unwrap();
        assert_eq!(b.rank(), 0);
        assert_eq!(b.index(), LatticeIndex::Infinite);
    }

    #[test]
    fn lattice_index_examples() {
        assert_eq!(
            lattice_index(2, &[lv([1, 1]), lv([1, -1])]).unwrap(),
            LatticeIndex::Finite(2.into())
        );
        assert_eq!(
            lattice_index(2, &[lv([1, 0])]).unwrap(),
            LatticeIndex::Infinite
        );
        for d in 1..=4 {
            let units: Vec<_> = (0..d).map(|i| LatticeVector::unit(d, i)).collect();
            assert_eq!(
                lattice_index(d, &units).unwrap(),
                LatticeIndex::Finite(1.into())
            );
        }
    }

    #[test]
    fn spans_full_lattice_examples() {
        assert!(spans_full_lattice(2, &[lv([1, 0]), lv([0, 1])]).unwrap());
        assert!(!spans_full_lattice(2, &[lv([1, 1]), lv([1, -1])]).unwrap());
        assert!(!spans_full_lattice(2, &[lv([2, 0]), lv([0, 2])]).unwrap());
    }

    #[test]
    fn residue_class_examples() {
        let diag = sublattice_basis(2, &[lv([1, 1]), lv([1, -1])]).unwrap();
        assert_eq!(
            diag.residue_classes().unwrap(),
            vec![lv([0, 0]), lv([0, 1])]
        );

        let id = sublattice_basis(2, &[lv([1, 0]), lv([0, 1])]).unwrap();
        assert_eq!(id.residue_classes().unwrap(), vec![lv([0, 0])]);

        let strip = sublattice_basis(2, &[lv([2, 0]), lv([0, 1])]).unwrap();
        assert_eq!(
            strip.residue_classes().unwrap(),
            vec![lv([0, 0]), lv([1, 0])]
        );

        let line = sublattice_basis(2, &[lv([1, 0])]).unwrap();
        assert!(matches!(
            line.residue_classes(),
            Err(Error::DegenerateSublattice { .. })
        ));
    }

    #[test]
    fn mismatched_dimension_is_rejected() {
        assert!(sublattice_basis(2, &[lv([1, 0, 0])]).is_err());
    }

    fn leibniz_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = 0i64;
        // Heap's algorithm over all permutations
        fn sign(p: &[usize]) -> i64 {
            let mut s = 1;
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    if p[i] > p[j] {
                        s = -s;
                    }
                }
            }
            s
        }
        fn rec(k: usize, perm: &mut Vec<usize>, m: &[Vec<i64>], total: &mut i64) {
            if k == perm.len() {
                let prod: i64 = (0..perm.len()).map(|i| m[i][perm[i]]).product();
                *total += sign(perm) * prod;
                return;
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                rec(k + 1, perm, m, total);
                perm.swap(k, i);
            }
        }
        rec(0, &mut perm, m, &mut total);
        total
    }

    fn vec_strategy(d: usize) -> impl Strategy<Value = LatticeVector> {
        proptest::collection::vec(-9i64..=9, d).prop_map(LatticeVector::new)
    }

    proptest! {
        #[test]
        fn primitive_direction_is_idempotent(v in proptest::collection::vec(-50i64..=50, 1..=4)) {
            let v = LatticeVector::new(v);
            prop_assume!(!v.is_zero());
            let (p, m) = primitive_direction(&v).unwrap();
            prop_assert!(v == p.primitive().scale(m) || v == p.primitive().scale(-m));
            let (p2, m2) = primitive_direction(p.primitive()).unwrap();
            prop_assert_eq!(m2, 1);
            prop_assert_eq!(p2, p);
        }

        #[test]
        fn generators_lie_in_their_span(d in 1usize..=4, seed in proptest::collection::vec(vec_strategy(4), 0..6)) {
            let gens: Vec<_> = seed.iter().map(|v| LatticeVector::new(v.components()[..d].to_vec())).collect();
            let basis = sublattice_basis(d, &gens).unwrap();
            for g in &gens {
                prop_assert!(basis.contains(g));
            }
        }

        #[test]
        fn index_of_matrix_columns_is_abs_det(d in 1usize..=4, entries in proptest::collection::vec(-6i64..=6, 16)) {
            let m: Vec<Vec<i64>> = (0..d).map(|i| entries[i * 4..i * 4 + d].to_vec()).collect();
            let det = leibniz_det(&m);
            prop_assume!(det != 0);
            // columns A e_j
            let cols: Vec<_> = (0..d).map(|j| LatticeVector::new((0..d).map(|i| m[i][j]).collect())).collect();
            prop_assert_eq!(lattice_index(d, &cols).unwrap(), LatticeIndex::Finite(BigInt::from(det.abs())));
        }

        #[test]
        fn residues_are_pairwise_inequivalent(d in 1usize..=3, entries in proptest::collection::vec(-4i64..=4, 9)) {
            let cols: Vec<_> = (0..d).map(|j| LatticeVector::new((0..d).map(|i| entries[i * 3 + j]).collect())).collect();
            let basis = sublattice_basis(d, &cols).unwrap();
            prop_assume!(basis.is_full_rank());
            let reps = basis.residue_classes().unwrap();
            prop_assert_eq!(reps.len() as u64, basis.index().as_u64().unwrap());
            prop_assert!(reps[0].is_zero());
            let set: BTreeSet<_> = reps.iter().map(|r| basis.reduce(r)).collect();
            prop_assert_eq!(set.len(), reps.len());
            for a in &reps {
                for b in &reps {
                    if a != b {
                        prop_assert!(!basis.contains(&a.sub(b)));
                    }
                }
            }
        }
    }
}
