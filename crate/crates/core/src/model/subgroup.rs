use std::collections::BTreeSet;

use super::GroupTable;
use crate::error::{Error, Result};

/// A subgroup of a [`GroupTable`], held as a sorted element-index set.
/// Equality compares element sets only.
#[derive(Debug, Clone)]
pub struct Subgroup {
    elements: Vec<u32>,
    member: Vec<bool>,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl Subgroup {
    pub fn trivial(table: &GroupTable) -> Subgroup {
        Subgroup::from_generators(table, &[])
    }

    pub fn whole(table: &GroupTable) -> Subgroup {
        Subgroup::from_generators(table, table.generators())
    }

    /// Closure of `gens` under multiplication.
    pub fn from_generators(table: &GroupTable, gens: &[usize]) -> Subgroup {
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        let elements = closure(table, &gens);
        Subgroup::from_closed(table, elements, gens)
    }

    fn from_closed(table: &GroupTable, mut elements: Vec<u32>, gens: Vec<usize>) -> Subgroup {
        elements.sort_unstable();
        let mut member = vec![false; table.size()];
        for &e in &elements {
            member[e as usize] = true;
        }
        Subgroup {
            elements,
            member,
            gens,
        }
    }

    /// Validates that `elements` is closed under multiplication (a finite
    /// nonempty closed subset is a subgroup).
    pub fn from_elements(table: &GroupTable, elements: &[usize]) -> Result<Subgroup> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&e| e >= table.size()) {
            return Err(Error::NotASubgroup(format!("index {bad} out of range")));
        }
        if !set.contains(&0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        // greedy generators, then compare the closure with the given set
        let mut gens: Vec<usize> = Vec::new();
        let mut current = vec![false; table.size()];
        current[0] = true;
        for &e in &set {
            if !current[e] {
                gens.push(e);
                for x in closure(table, &gens) {
                    if !set.contains(&(x as usize)) {
                        return Err(Error::NotASubgroup(format!(
                            "not closed: generated element {x} lies outside the set"
                        )));
                    }
                    current[x as usize] = true;
                }
            }
        }
        let elements: Vec<u32> = set.iter().map(|&e| e as u32).collect();
        Ok(Subgroup::from_closed(table, elements, gens))
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().map(|&e| e as usize)
    }

    pub fn element_indices(&self) -> &[u32] {
        &self.elements
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.member[x]
    }

    /// A generating set (the one supplied, or a greedy one).
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements().all(|x| other.contains(x))
    }

    pub fn is_normal_in(&self, table: &GroupTable, other: &Subgroup) -> bool {
        self.is_subgroup_of(other)
            && other.generators().iter().all(|&a| {
                self.generators()
                    .iter()
                    .all(|&b| self.contains(table.conjugate(b, a)))
            })
    }

    /// `t^-1 A t`.
    pub fn conjugate(&self, table: &GroupTable, t: usize) -> Subgroup {
        let elements = self
            .elements()
            .map(|a| table.conjugate(a, t) as u32)
            .collect();
        let gens = self.gens.iter().map(|&a| table.conjugate(a, t)).collect();
        Subgroup::from_closed(table, elements, gens)
    }

    /// Image under an index mapping that is known to be an automorphism.
    pub fn image(&self, table: &GroupTable, mapping: &[u32]) -> Subgroup {
        let elements = self.elements().map(|a| mapping[a]).collect();
        let gens = self.gens.iter().map(|&a| mapping[a] as usize).collect();
        Subgroup::from_closed(table, elements, gens)
    }

    pub fn intersection(&self, table: &GroupTable, other: &Subgroup) -> Subgroup {
        let elements: Vec<u32> = self
            .elements
            .iter()
            .copied()
            .filter(|&x| other.contains(x as usize))
            .collect();
        let gens = greedy_generators(table, &elements);
        Subgroup::from_closed(table, elements, gens)
    }

    /// Subgroup generated by `self` and `other`.
    pub fn join(&self, table: &GroupTable, other: &Subgroup) -> Subgroup {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().copied());
        Subgroup::from_generators(table, &gens)
    }
}

fn closure(table: &GroupTable, gens: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; table.size()];
    seen[0] = true;
    let mut out = vec![0u32];
    let mut head = 0;
    while head < out.len() {
        let x = out[head] as usize;
        head += 1;
        for &g in gens {
            let y = table.multiply(x, g);
            if !seen[y] {
                seen[y] = true;
                out.push(y as u32);
            }
        }
    }
    out
}

fn greedy_generators(table: &GroupTable, elements: &[u32]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = vec![false; table.size()];
    current[0] = true;
    for &e in elements {
        if !current[e as usize] {
            gens.push(e as usize);
            for x in closure(table, &gens) {
                current[x as usize] = true;
            }
        }
    }
    gens
}

/// `{t : t^-1 H t = H}`, by scanning the whole group.
pub fn normalizer(table: &GroupTable, h: &Subgroup) -> Subgroup {
    let elements: Vec<u32> = (0..table.size())
        .filter(|&t| {
            h.generators()
                .iter()
                .all(|&g| h.contains(table.conjugate(g, t)))
        })
        .map(|t| t as u32)
        .collect();
    let gens = greedy_generators(table, &elements);
    Subgroup::from_closed(table, elements, gens)
}

pub fn centralizer(table: &GroupTable, x: usize) -> Subgroup {
    let elements: Vec<u32> = (0..table.size())
        .filter(|&t| table.multiply(x, t) == table.multiply(t, x))
        .map(|t| t as u32)
        .collect();
    let gens = greedy_generators(table, &elements);
    Subgroup::from_closed(table, elements, gens)
}

/// Smallest subgroup of `within` containing `seeds` and normalized by `within`.
pub fn normal_closure(table: &GroupTable, within: &Subgroup, seeds: &[usize]) -> Subgroup {
    let mut gens: Vec<usize> = seeds.iter().copied().filter(|&s| s != 0).collect();
    let mut current = Subgroup::from_generators(table, &gens);
    loop {
        let mut grew = false;
        for &a in within.generators() {
            for k in 0..gens.len() {
                let c = table.conjugate(gens[k], a);
                if !current.contains(c) {
                    gens.push(c);
                    current = Subgroup::from_generators(table, &gens);
                    grew = true;
                }
            }
        }
        if !grew {
            return current;
        }
    }
}

/// Commutator subgroup of `h`.
pub fn derived_subgroup(table: &GroupTable, h: &Subgroup) -> Subgroup {
    let g = h.generators();
    let mut seeds = Vec::new();
    for (i, &x) in g.iter().enumerate() {
        for &y in &g[i + 1..] {
            // x^-1 y^-1 x y
            let c = table.multiply(
                table.multiply(table.inverse(x), table.inverse(y)),
                table.multiply(x, y),
            );
            seeds.push(c);
        }
    }
    normal_closure(table, h, &seeds)
}

/// Every normal subgroup of `a`, ordered by size then element set.
pub fn normal_subgroups(table: &GroupTable, a: &Subgroup) -> Vec<Subgroup> {
    let mut minimal: Vec<Subgroup> = Vec::new();
    for x in a.elements() {
        let n = normal_closure(table, a, &[x]);
        if !minimal.contains(&n) {
            minimal.push(n);
        }
    }
    let mut all = minimal.clone();
    let mut head = 0;
    while head < all.len() {
        for m in &minimal {
            let j = all[head].join(table, m);
            if !all.contains(&j) {
                all.push(j);
            }
        }
        head += 1;
    }
    all.sort_by(|x, y| (x.order(), &x.elements).cmp(&(y.order(), &y.elements)));
    all
}

/// Sylow `p`-subgroup: start from an element of largest `p`-power order and
/// repeatedly adjoin a `p`-element of the normalizer until the full `p`-part
/// is reached.
pub fn sylow_subgroup(table: &GroupTable, p: u64) -> Subgroup {
    let mut part = 1usize;
    let mut n = table.size();
    while n % p as usize == 0 {
        n /= p as usize;
        part *= p as usize;
    }
    if part == 1 {
        return Subgroup::trivial(table);
    }
    let is_p_power = |mut k: u64| {
        while k % p == 0 {
            k /= p;
        }
        k == 1
    };
    let start = (0..table.classes().len())
        .filter(|&c| is_p_power(table.class_order(c)) && table.class_order(c) > 1)
        .max_by_key(|&c| (table.class_order(c), std::cmp::Reverse(c)))
        .map(|c| table.classes()[c].representative)
        .expect("Cauchy: an element of order p exists");
    let mut current = Subgroup::from_generators(table, &[start]);
    while current.order() < part {
        let norm = normalizer(table, &current);
        let next = norm
            .elements()
            .filter(|&y| !current.contains(y) && is_p_power(table.element_order(y)))
            .find_map(|y| {
                let mut gens = current.generators().to_vec();
                gens.push(y);
                let cand = Subgroup::from_generators(table, &gens);
                is_p_power(cand.order() as u64).then_some(cand)
            })
            .expect(
                "a p-subgroup below the Sylow order has a larger p-overgroup in its normalizer",
            );
        current = next;
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{Permutation, PermutationGroup};

    fn cyc(n: usize, c: &[&[u32]]) -> Permutation {
        let c: Vec<Vec<u32>> = c.iter().map(|x| x.to_vec()).collect();
        Permutation::from_cycles(n, &c).unwrap()
    }

    fn a5() -> GroupTable {
        let g = PermutationGroup::new(5, vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[2, 3, 4]])])
            .unwrap();
        GroupTable::build("A5", &g, 1000).unwrap()
    }

    fn sub(t: &GroupTable, gens: &[Permutation]) -> Subgroup {
        let idx: Vec<usize> = gens.iter().map(|g| t.index_of(g).unwrap()).collect();
        Subgroup::from_generators(t, &idx)
    }

    #[test]
    fn a4_and_v4() {
        let t = a5();
        let a4 = sub(&t, &[cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1], &[2, 3]])]);
        let v4 = sub(
            &t,
            &[cyc(5, &[&[0, 1], &[2, 3]]), cyc(5, &[&[0, 2], &[1, 3]])],
        );
        assert_eq!(a4.order(), 12);
        assert_eq!(v4.order(), 4);
        assert!(v4.is_normal_in(&t, &a4));
        assert!(!a4.is_normal_in(&t, &Subgroup::whole(&t)));
        assert_eq!(derived_subgroup(&t, &a4), v4);
        assert_eq!(normalizer(&t, &a4), a4);
        let ns: Vec<usize> = normal_subgroups(&t, &a4)
            .iter()
            .map(|s| s.order())
            .collect();
        assert_eq!(ns, vec![1, 4, 12]);
    }

    #[test]
    fn from_elements_validates() {
        let t = a5();
        let a4 = sub(&t, &[cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1], &[2, 3]])]);
        let els: Vec<usize> = a4.elements().collect();
        assert_eq!(Subgroup::from_elements(&t, &els).unwrap(), a4);
        assert!(Subgroup::from_elements(&t, &els[1..]).is_err());
        assert!(Subgroup::from_elements(&t, &els[..5]).is_err());
    }

    #[test]
    fn sylow_subgroups_of_a5() {
        let t = a5();
        assert_eq!(sylow_subgroup(&t, 2).order(), 4);
        assert_eq!(sylow_subgroup(&t, 3).order(), 3);
        assert_eq!(sylow_subgroup(&t, 5).order(), 5);
        assert_eq!(sylow_subgroup(&t, 7).order(), 1);
        assert_eq!(normalizer(&t, &sylow_subgroup(&t, 5)).order(), 10);
        assert_eq!(normalizer(&t, &sylow_subgroup(&t, 2)).order(), 12);
        assert_eq!(centralizer(&t, t.classes()[1].representative).order(), 5);
    }
}
