//! Permutations of `{0, .., n-1}` and the permutation-group engine built on them.
//!
//! Composition applies the left factor first: `p.then(&q)` (also `&p * &q`)
//! maps `i` to `q(p(i))`. This matches writing group actions as exponents,
//! `i^(pq) = (i^p)^q`, and is used everywhere in the crate.

mod bsgs;
mod classes;
mod group;

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bsgs::Bsgs;
pub use classes::{conjugacy_classes, ConjClass, ElementList};
pub use group::{PermutationGroup, SetOrbit, DEFAULT_ELEMENT_CAP, DEFAULT_SET_ORBIT_CAP};

/// A bijection of `{0, .., n-1}` stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(Error::NotAPermutation(format!(
                    "image {x} out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAPermutation(format!("image {x} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let a = a as usize;
                if a >= degree {
                    return Err(Error::PointOutOfRange { point: a, degree });
                }
                if std::mem::replace(&mut touched[a], true) {
                    return Err(Error::NotAPermutation(format!(
                        "point {a} appears in more than one cycle position"
                    )));
                }
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`, i.e. `i -> other(self(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked form of [`compose`](Self::compose); panics on a degree mismatch.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        other.inverse().then(self).then(other)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i)
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Image of a point set, as a strictly increasing vector.
    pub fn image_of_set(&self, set: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = set.iter().map(|&x| self.images[x as usize]).collect();
        out.sort_unstable();
        out
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Permutation as written in JSON: an image array `[1,2,0]` or a cycle list `[[0,1,2]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermSpec {
    Images(Vec<u32>),
    Cycles(Vec<Vec<u32>>),
}

impl PermSpec {
    /// Resolves against a known degree. An empty list is the identity.
    pub fn resolve(&self, degree: usize) -> Result<Permutation> {
        match self {
            PermSpec::Images(v) if v.is_empty() => Ok(Permutation::identity(degree)),
            PermSpec::Images(v) => {
                if v.len() != degree {
                    return Err(Error::DegreeMismatch {
                        expected: degree,
                        found: v.len(),
                    });
                }
                Permutation::from_images(v.clone())
            }
            PermSpec::Cycles(c) => Permutation::from_cycles(degree, c),
        }
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = PermSpec::deserialize(d)?;
        let degree = match &spec {
            PermSpec::Images(v) => v.len(),
            PermSpec::Cycles(c) => c
                .iter()
                .flatten()
                .map(|&x| x as usize + 1)
                .max()
                .unwrap_or(0),
        };
        spec.resolve(degree).map_err(serde::de::Error::custom)
    }
}
