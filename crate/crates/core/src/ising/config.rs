use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, SublatticeBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Minus,
    Plus,
}

impl Spin {
    pub fn value(self) -> i64 {
        match self {
            Spin::Plus => 1,
            Spin::Minus => -1,
        }
    }

    pub fn flip(self) -> Spin {
        match self {
            Spin::Plus => Spin::Minus,
            Spin::Minus => Spin::Plus,
        }
    }

    pub fn from_sign(positive: bool) -> Spin {
        if positive {
            Spin::Plus
        } else {
            Spin::Minus
        }
    }
}

/// How sites outside the configuration's support are valued.
#[derive(Clone, Debug)]
pub enum ExteriorRule {
    Constant(Spin),
    /// `+1` where `⟨i, ν⟩ ≥ 0`, `-1` elsewhere. Sites on the hyperplane are
    /// `+1` by convention.
    HalfSpace(Vec<f64>),
    /// `+1` on the cosets of a sublattice whose canonical residue
    /// ([`SublatticeBasis::reduce`]) has even `ℓ¹` norm.
    CosetParity(SublatticeBasis),
}

impl ExteriorRule {
    pub fn value(&self, site: &LatticeVector) -> Spin {
        match self {
            ExteriorRule::Constant(s) => *s,
            ExteriorRule::HalfSpace(nu) => Spin::from_sign(site.dot_f64(nu) >= 0.0),
            ExteriorRule::CosetParity(lattice) => {
                Spin::from_sign(lattice.reduce(site).l1_norm() % 2 == 0)
            }
        }
    }
}

/// Spins on a finite set of sites together with the rule valuing every
/// other site of `Z^d`.
#[derive(Clone, Debug)]
pub struct SpinConfiguration {
    dim: usize,
    values: BTreeMap<LatticeVector, Spin>,
    exterior: ExteriorRule,
}

impl SpinConfiguration {
    pub fn new(
        dim: usize,
        values: BTreeMap<LatticeVector, Spin>,
        exterior: ExteriorRule,
    ) -> Result<Self> {
        if let Some(bad) = values.keys().find(|k| k.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.dim(),
            });
        }
        Ok(SpinConfiguration {
            dim,
            values,
            exterior,
        })
    }

    /// Configuration on the inclusive box `lo ..= hi`.
    pub fn on_box(
        lo: &[i64],
        hi: &[i64],
        mut spin: impl FnMut(&LatticeVector) -> Spin,
        exterior: ExteriorRule,
    ) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                got: hi.len(),
            });
        }
        let values = box_sites(lo, hi).into_iter().map(|s| {
            let v = spin(&s);
            (s, v)
        });
        SpinConfiguration::new(lo.len(), values.collect(), exterior)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn exterior(&self) -> &ExteriorRule {
        &self.exterior
    }

    pub fn contains(&self, site: &LatticeVector) -> bool {
        self.values.contains_key(site)
    }

    pub fn value(&self, site: &LatticeVector) -> Spin {
        match self.values.get(site) {
            Some(s) => *s,
            None => self.exterior.value(site),
        }
    }

    pub fn sites(&self) -> impl Iterator<Item = (&LatticeVector, Spin)> {
        self.values.iter().map(|(k, v)| (k, *v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn plus_sites(&self) -> Vec<LatticeVector> {
        self.values
            .iter()
            .filter(|(_, v)| **v == Spin::Plus)
            .map(|(k, _)| k.clone())
            .collect()
    }

    /// True when every site of the support carries the same spin.
    pub fn is_constant_inside(&self) -> bool {
        let mut it = self.values.values();
        match it.next() {
            None => true,
            Some(first) => it.all(|v| v == first),
        }
    }
}

/// All lattice points of the inclusive box `lo ..= hi`, last coordinate fastest.
pub fn box_sites(lo: &[i64], hi: &[i64]) -> Vec<LatticeVector> {
    let d = lo.len();
    if (0..d).any(|i| hi[i] < lo[i]) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = lo.to_vec();
    loop {
        out.push(LatticeVector::new(cur.clone()));
        let mut axis = d;
        loop {
            if axis == 0 {
                return out;
            }
            axis -= 1;
            cur[axis] += 1;
            if cur[axis] <= hi[axis] {
                break;
            }
            cur[axis] = lo[axis];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_sites_counts() {
        assert_eq!(box_sites(&[-1, -1], &[1, 1]).len(), 9);
        assert_eq!(box_sites(&[0], &[4]).len(), 5);
        assert!(box_sites(&[1], &[0]).is_empty());
        assert_eq!(box_sites(&[], &[]).len(), 1);
    }

    #[test]
    fn halfspace_ties_go_plus() {
        let rule = ExteriorRule::HalfSpace(vec![0.0, 1.0]);
        assert_eq!(rule.value(&LatticeVector::from([5, 0])), Spin::Plus);
        assert_eq!(rule.value(&LatticeVector::from([5, -1])), Spin::Minus);
    }
}
