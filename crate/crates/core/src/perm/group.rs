use std::collections::HashMap;
use std::sync::OnceLock;

use super::{Bsgs, Permutation};
use crate::error::{Error, Result};

/// Default cap on the number of group elements enumerated explicitly.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;
/// Default cap on the number of distinct images in a set orbit.
pub const DEFAULT_SET_ORBIT_CAP: usize = 1_000_000;

/// A permutation group given by generators, with a lazily built stabilizer chain.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    bsgs: OnceLock<Bsgs>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let generators = if generators.is_empty() {
            vec![Permutation::identity(degree)]
        } else {
            generators
        };
        Ok(PermutationGroup {
            degree,
            generators,
            bsgs: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup::new(degree, Vec::new()).expect("identity has the right degree")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn bsgs(&self) -> &Bsgs {
        self.bsgs
            .get_or_init(|| Bsgs::build(self.degree, &self.generators, &[]))
    }

    pub fn order(&self) -> u128 {
        self.bsgs().order()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(self.bsgs().contains(p))
    }

    fn check_point(&self, point: usize) -> Result<()> {
        if point >= self.degree {
            Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            })
        } else {
            Ok(())
        }
    }

    /// Orbit of `point`, in BFS order over the generators.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        self.check_point(point)?;
        Ok(orbit_of(self.degree, &self.generators, point))
    }

    /// All orbits, each in BFS order, ordered by their smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let orb = orbit_of(self.degree, &self.generators, p);
            for &x in &orb {
                seen[x] = true;
            }
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || orbit_of(self.degree, &self.generators, 0).len() == self.degree
    }

    /// Point stabilizer, generated by the sifted Schreier generators of a
    /// chain whose base starts at `point`.
    pub fn stabilizer(&self, point: usize) -> Result<PermutationGroup> {
        self.check_point(point)?;
        let chain = match self.bsgs.get() {
            Some(b) if b.levels() > 0 && b.base()[0] == point => b.clone(),
            _ => Bsgs::build(self.degree, &self.generators, &[point]),
        };
        let gens = if chain.levels() > 0 && chain.base()[0] == point {
            chain.level_generators(1)
        } else {
            // the point is fixed by every generator
            self.generators.clone()
        };
        PermutationGroup::new(self.degree, gens)
    }

    /// Every element, by BFS from the identity in generator order.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        if self.order() > cap as u128 {
            return Err(Error::CapExceeded {
                what: "group order",
                cap,
            });
        }
        let id = Permutation::identity(self.degree);
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(id.clone(), 0);
        let mut elements = vec![id];
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in &self.generators {
                let y = x.then(g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        Ok(elements)
    }

    /// All distinct images `X^g`, each a strictly increasing point vector,
    /// in BFS order starting with `X` itself.
    pub fn set_orbit(&self, set: &[u32], cap: usize) -> Result<Vec<Vec<u32>>> {
        Ok(self.set_orbit_tree(set, cap)?.sets)
    }

    /// [`set_orbit`](Self::set_orbit) together with the BFS tree, so that a
    /// group element carrying `X` to any image can be recovered.
    pub fn set_orbit_tree(&self, set: &[u32], cap: usize) -> Result<SetOrbit> {
        let mut start: Vec<u32> = set.to_vec();
        start.sort_unstable();
        start.dedup();
        for &x in &start {
            self.check_point(x as usize)?;
        }
        let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
        seen.insert(start.clone(), 0);
        let mut sets = vec![start];
        let mut parent = vec![(0usize, 0usize)];
        let mut head = 0;
        while head < sets.len() {
            for (k, g) in self.generators.iter().enumerate() {
                let img = g.image_of_set(&sets[head]);
                if !seen.contains_key(&img) {
                    if sets.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "set orbit",
                            cap,
                        });
                    }
                    seen.insert(img.clone(), sets.len());
                    sets.push(img);
                    parent.push((head, k));
                }
            }
            head += 1;
        }
        Ok(SetOrbit {
            sets,
            parent,
            index: seen,
        })
    }

    /// Whether `self` is normalized by every generator of `other`, and a
    /// subgroup of it (checked on generators).
    pub fn is_normal_in(&self, other: &PermutationGroup) -> Result<bool> {
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        for a in &other.generators {
            for g in &self.generators {
                if !self.contains(&g.conjugate_by(a))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Distinct images of a point set under a group, with a BFS tree over the generators.
#[derive(Debug, Clone)]
pub struct SetOrbit {
    pub sets: Vec<Vec<u32>>,
    parent: Vec<(usize, usize)>,
    index: HashMap<Vec<u32>, usize>,
}

impl SetOrbit {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn position(&self, set: &[u32]) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// A group element `g` with `sets[0]^g = sets[i]`.
    pub fn element(&self, group: &PermutationGroup, mut i: usize) -> Permutation {
        let mut word = Vec::new();
        while i != 0 {
            let (p, k) = self.parent[i];
            word.push(k);
            i = p;
        }
        word.iter()
            .rev()
            .fold(Permutation::identity(group.degree()), |acc, &k| {
                acc.then(&group.generators()[k])
            })
    }
}

pub(crate) fn orbit_of(degree: usize, gens: &[Permutation], point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut orbit = vec![point];
    let mut head = 0;
    while head < orbit.len() {
        let x = orbit[head];
        head += 1;
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                orbit.push(y);
            }
        }
    }
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[&[u32]]) -> Permutation {
        let c: Vec<Vec<u32>> = c.iter().map(|x| x.to_vec()).collect();
        Permutation::from_cycles(n, &c).unwrap()
    }

    fn a5() -> PermutationGroup {
        PermutationGroup::new(5, vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[2, 3, 4]])]).unwrap()
    }

    fn psl27() -> PermutationGroup {
        PermutationGroup::new(
            8,
            vec![
                cyc(8, &[&[0, 1, 2, 3, 4, 5, 6]]),
                cyc(8, &[&[0, 7], &[1, 6], &[2, 3], &[4, 5]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn orbits() {
        let a4 = PermutationGroup::new(4, vec![cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[0, 1], &[2, 3]])])
            .unwrap();
        let mut o = a4.orbit(0).unwrap();
        o.sort();
        assert_eq!(o, vec![0, 1, 2, 3]);
        assert_eq!(PermutationGroup::trivial(5).orbit(3).unwrap(), vec![3]);
        let c2 = PermutationGroup::new(4, vec![cyc(4, &[&[0, 1], &[2, 3]])]).unwrap();
        let mut o = c2.orbit(0).unwrap();
        o.sort();
        assert_eq!(o, vec![0, 1]);
        assert!(matches!(c2.orbit(4), Err(Error::PointOutOfRange { .. })));
    }

    #[test]
    fn orders_match_closure() {
        assert_eq!(a5().order(), 60);
        assert_eq!(a5().elements(1000).unwrap().len(), 60);
        assert_eq!(PermutationGroup::trivial(6).order(), 1);
        assert_eq!(psl27().order(), 168);
        assert_eq!(psl27().elements(1000).unwrap().len(), 168);
    }

    #[test]
    fn membership() {
        let g = a5();
        assert!(g.contains(&cyc(5, &[&[0, 1, 2]])).unwrap());
        assert!(!g.contains(&cyc(5, &[&[0, 1]])).unwrap());
        assert!(g.contains(&Permutation::identity(5)).unwrap());
        assert!(g.contains(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn stabilizers() {
        assert_eq!(a5().stabilizer(4).unwrap().order(), 12);
        assert_eq!(
            PermutationGroup::trivial(3).stabilizer(1).unwrap().order(),
            1
        );
        let c2 = PermutationGroup::new(4, vec![cyc(4, &[&[0, 1], &[2, 3]])]).unwrap();
        assert_eq!(c2.stabilizer(0).unwrap().order(), 1);
    }

    #[test]
    fn transitivity() {
        assert!(a5().is_transitive());
        let g = PermutationGroup::new(3, vec![cyc(3, &[&[0, 1]])]).unwrap();
        assert!(!g.is_transitive());
    }

    #[test]
    fn set_orbits() {
        let imgs = a5().set_orbit(&[0, 1], 100).unwrap();
        assert_eq!(imgs.len(), 10);
        let full = a5().set_orbit(&[0, 1, 2, 3, 4], 100).unwrap();
        assert_eq!(full, vec![vec![0, 1, 2, 3, 4]]);
        assert!(matches!(
            a5().set_orbit(&[0, 1], 5),
            Err(Error::CapExceeded { .. })
        ));
    }
}
