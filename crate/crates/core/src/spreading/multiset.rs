use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A multiset of points of a finite domain, as a multiplicity vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiset {
    mult: Vec<u64>,
    cardinality: u64,
}

impl Multiset {
    pub fn from_multiplicities(mult: Vec<u64>) -> Multiset {
        let cardinality = mult.iter().sum();
        Multiset { mult, cardinality }
    }

    /// `constant * Omega + sum_k coeff_k * S_k`; fails on a negative multiplicity.
    pub fn combination(degree: usize, constant: i64, terms: &[(i64, &[u32])]) -> Result<Multiset> {
        let mut acc = vec![constant; degree];
        for (coeff, set) in terms {
            for &x in *set {
                let x = x as usize;
                if x >= degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                acc[x] += coeff;
            }
        }
        if let Some(p) = acc.iter().position(|&m| m < 0) {
            return Err(Error::Invalid(format!(
                "negative multiplicity {} at point {p}",
                acc[p]
            )));
        }
        Ok(Multiset::from_multiplicities(
            acc.into_iter().map(|m| m as u64).collect(),
        ))
    }

    pub fn degree(&self) -> usize {
        self.mult.len()
    }

    #[inline]
    pub fn multiplicity(&self, point: usize) -> u64 {
        self.mult[point]
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.mult
    }

    pub fn cardinality(&self) -> u64 {
        self.cardinality
    }

    pub fn support_size(&self) -> usize {
        self.mult.iter().filter(|&&m| m != 0).count()
    }

    /// Trivial means constant on the domain, or supported on a single point.
    pub fn is_trivial(&self) -> bool {
        let constant = self.mult.windows(2).all(|w| w[0] == w[1]);
        constant || self.support_size() == 1
    }

    /// `sum_{x in set} mu(x)`.
    pub fn sum_over(&self, set: &[u32]) -> u64 {
        set.iter().map(|&x| self.mult[x as usize]).sum()
    }

    /// Sparse form: point (as a decimal string key) to nonzero multiplicity.
    pub fn to_sparse(&self) -> BTreeMap<u32, u64> {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(i, &m)| (i as u32, m))
            .collect()
    }

    pub fn from_sparse(degree: usize, sparse: &BTreeMap<u32, u64>) -> Result<Multiset> {
        let mut mult = vec![0u64; degree];
        for (&p, &m) in sparse {
            let p = p as usize;
            if p >= degree {
                return Err(Error::PointOutOfRange { point: p, degree });
            }
            mult[p] = m;
        }
        Ok(Multiset::from_multiplicities(mult))
    }
}

impl Serialize for Multiset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let sparse: BTreeMap<String, u64> = self
            .to_sparse()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        sparse.serialize(s)
    }
}

/// Sparse JSON form with string keys, as read from witness files.
#[derive(Debug, Clone, Deserialize)]
#[serde(transparent)]
pub struct SparseMultiset(pub BTreeMap<String, u64>);

impl SparseMultiset {
    pub fn resolve(&self, degree: usize) -> Result<Multiset> {
        let mut sparse = BTreeMap::new();
        for (k, &v) in &self.0 {
            let p: u32 = k
                .parse()
                .map_err(|_| Error::Invalid(format!("multiset key {k:?} is not a point")))?;
            sparse.insert(p, v);
        }
        Multiset::from_sparse(degree, &sparse)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triviality() {
        let all_two = Multiset::combination(60, 2, &[]).unwrap();
        assert!(all_two.is_trivial());
        let mut single = vec![0u64; 10];
        single[3] = 7;
        assert!(Multiset::from_multiplicities(single).is_trivial());
        // Omega + 3 V - A with V inside A: values 0, 1 and 3
        let a: Vec<u32> = (0..12).collect();
        let v: Vec<u32> = vec![0, 1, 2, 3];
        let j = Multiset::combination(60, 1, &[(3, &v), (-1, &a)]).unwrap();
        assert!(!j.is_trivial());
        assert_eq!(j.cardinality(), 60);
        assert_eq!(j.multiplicity(0), 3);
        assert_eq!(j.multiplicity(5), 0);
        assert_eq!(j.multiplicity(20), 1);
    }

    #[test]
    fn negative_multiplicity_rejected() {
        assert!(Multiset::combination(4, 0, &[(-1, &[0])]).is_err());
    }

    #[test]
    fn sparse_json_round_trip() {
        let j = Multiset::combination(5, 0, &[(2, &[0]), (1, &[3])]).unwrap();
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(text, r#"{"0":2,"3":1}"#);
        let back: SparseMultiset = serde_json::from_str(&text).unwrap();
        assert_eq!(back.resolve(5).unwrap(), j);
    }
}
