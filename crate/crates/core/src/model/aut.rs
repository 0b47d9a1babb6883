use super::GroupTable;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on `|T|` for the automorphism search.
pub const DEFAULT_AUT_CAP: usize = 10_000;
/// Default bound on generator-image tuples examined by the search.
pub const DEFAULT_SEARCH_LIMIT: u64 = 50_000_000;

/// An automorphism of a [`GroupTable`], as a bijection of element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    mapping: Vec<u32>,
    inner: Option<usize>,
}

impl Automorphism {
    pub fn identity(table: &GroupTable) -> Automorphism {
        Automorphism {
            mapping: (0..table.size() as u32).collect(),
            inner: Some(0),
        }
    }

    /// `x -> t^-1 x t`.
    pub fn inner(table: &GroupTable, t: usize) -> Automorphism {
        let mapping = (0..table.size())
            .map(|x| table.conjugate(x, t) as u32)
            .collect();
        Automorphism {
            mapping,
            inner: Some(t),
        }
    }

    /// Extends images of the defining generators along the BFS tree and
    /// validates the result as a bijective homomorphism.
    pub fn from_generator_images(table: &GroupTable, images: &[usize]) -> Result<Automorphism> {
        let mapping = extend(table, images).ok_or_else(|| {
            Error::Invalid("generator images do not define an automorphism".into())
        })?;
        let mut aut = Automorphism {
            mapping,
            inner: None,
        };
        aut.inner = aut.find_inner_witness(table);
        Ok(aut)
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.mapping[x] as usize
    }

    pub fn mapping(&self) -> &[u32] {
        &self.mapping
    }

    pub fn is_inner(&self) -> bool {
        self.inner.is_some()
    }

    /// Some `t` with `self = (x -> t^-1 x t)`, the smallest such index.
    pub fn inner_witness(&self) -> Option<usize> {
        self.inner
    }

    fn find_inner_witness(&self, table: &GroupTable) -> Option<usize> {
        let gens = table.generators();
        (0..table.size()).find(|&t| gens.iter().all(|&g| table.conjugate(g, t) == self.apply(g)))
    }

    /// `self` followed by `other`.
    pub fn then(&self, table: &GroupTable, other: &Automorphism) -> Automorphism {
        let mapping: Vec<u32> = self
            .mapping
            .iter()
            .map(|&x| other.mapping[x as usize])
            .collect();
        let mut aut = Automorphism {
            mapping,
            inner: None,
        };
        aut.inner = aut.find_inner_witness(table);
        aut
    }

    pub fn inverse(&self, table: &GroupTable) -> Automorphism {
        let mut mapping = vec![0u32; self.mapping.len()];
        for (i, &x) in self.mapping.iter().enumerate() {
            mapping[x as usize] = i as u32;
        }
        let mut aut = Automorphism {
            mapping,
            inner: None,
        };
        aut.inner = aut.find_inner_witness(table);
        aut
    }

    /// Exhaustive check of `f(xy) = f(x) f(y)`.
    pub fn is_homomorphism(&self, table: &GroupTable) -> bool {
        let n = table.size();
        (0..n).all(|x| {
            (0..n).all(|y| {
                self.apply(table.multiply(x, y)) == table.multiply(self.apply(x), self.apply(y))
            })
        })
    }

    /// The automorphism as a permutation of the `|T|` element indices.
    pub fn as_permutation(&self) -> Permutation {
        Permutation::from_images_unchecked(self.mapping.clone())
    }
}

fn extend(table: &GroupTable, images: &[usize]) -> Option<Vec<u32>> {
    let n = table.size();
    if images.len() != table.generators().len() {
        return None;
    }
    let mut mapping = vec![0u32; n];
    let mut hit = vec![false; n];
    hit[0] = true;
    for x in 1..n {
        let (p, k) = table.bfs_parent(x).expect("non-identity");
        let y = table.multiply(mapping[p] as usize, images[k]);
        if std::mem::replace(&mut hit[y], true) {
            return None;
        }
        mapping[x] = y as u32;
    }
    // every Cayley-graph edge must be respected, not just the tree edges
    for x in 0..n {
        for (k, &img) in images.iter().enumerate() {
            let xg = table.multiply_by_generator(x, k);
            if mapping[xg] as usize != table.multiply(mapping[x] as usize, img) {
                return None;
            }
        }
    }
    Some(mapping)
}

/// `Aut(T)` as inner generators plus a transversal of `Inn(T)`.
#[derive(Debug, Clone)]
pub struct AutGroup {
    order: u128,
    inner_order: usize,
    generators: Vec<Automorphism>,
    outer_reps: Vec<Automorphism>,
}

impl AutGroup {
    /// Builds the group generated by `Inn(T)` and `extra`, enumerating
    /// `Aut(T)/Inn(T)` by BFS over the extra generators.
    pub fn from_automorphisms(table: &GroupTable, extra: &[Automorphism]) -> AutGroup {
        let outer_gens: Vec<&Automorphism> = extra.iter().filter(|a| !a.is_inner()).collect();
        let mut reps = vec![Automorphism::identity(table)];
        let mut head = 0;
        while head < reps.len() {
            for g in &outer_gens {
                let cand = reps[head].then(table, g);
                let known = reps
                    .iter()
                    .any(|r| cand.then(table, &r.inverse(table)).is_inner());
                if !known {
                    reps.push(cand);
                }
            }
            head += 1;
        }
        let inner_order = table.size() / table.center_size();
        let mut generators: Vec<Automorphism> = table
            .generators()
            .iter()
            .map(|&g| Automorphism::inner(table, g))
            .collect();
        generators.extend(reps.iter().skip(1).cloned());
        AutGroup {
            order: inner_order as u128 * reps.len() as u128,
            inner_order,
            generators,
            outer_reps: reps,
        }
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn inner_order(&self) -> usize {
        self.inner_order
    }

    pub fn out_order(&self) -> usize {
        self.outer_reps.len()
    }

    pub fn generators(&self) -> &[Automorphism] {
        &self.generators
    }

    /// Transversal of `Inn(T)` in `Aut(T)`; the first entry is the identity.
    pub fn outer_reps(&self) -> &[Automorphism] {
        &self.outer_reps
    }
}

/// Backtracking search over images of the defining generators.
///
/// The first generator is sent only to class representatives (every
/// automorphism is an inner one composed with such a map); later generators
/// range over elements with matching order and class size, pruned by the
/// orders of pairwise products. `|Aut(T)|` is counted from the survivors and
/// cross-checked against the coset enumeration.
pub fn automorphism_group(table: &GroupTable, cap: usize, search_limit: u64) -> Result<AutGroup> {
    if table.size() > cap {
        return Err(Error::CapExceeded {
            what: "group order for automorphism search",
            cap,
        });
    }
    let gens = table.generators().to_vec();
    if gens.is_empty() || table.size() == 1 {
        return Ok(AutGroup::from_automorphisms(table, &[]));
    }
    let signature = |x: usize| {
        let c = table.class_of(x);
        (table.class_order(c), table.classes()[c].size)
    };
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .enumerate()
        .map(|(k, &g)| {
            let sig = signature(g);
            if k == 0 {
                (0..table.classes().len())
                    .filter(|&c| (table.class_order(c), table.classes()[c].size) == sig)
                    .map(|c| table.classes()[c].representative)
                    .collect()
            } else {
                (0..table.size()).filter(|&x| signature(x) == sig).collect()
            }
        })
        .collect();
    let product_orders: Vec<Vec<u64>> = gens
        .iter()
        .map(|&a| {
            gens.iter()
                .map(|&b| table.element_order(table.multiply(a, b)))
                .collect()
        })
        .collect();

    let mut found: Vec<Automorphism> = Vec::new();
    let mut count: u128 = 0;
    let mut examined: u64 = 0;
    let mut images: Vec<usize> = Vec::with_capacity(gens.len());
    search(
        table,
        &candidates,
        &product_orders,
        &mut images,
        &mut examined,
        search_limit,
        &mut |imgs| {
            if let Some(mapping) = extend(table, imgs) {
                let c = table.classes()[table.class_of(imgs[0])].size as u128;
                count += c;
                let mut aut = Automorphism {
                    mapping,
                    inner: None,
                };
                aut.inner = aut.find_inner_witness(table);
                found.push(aut);
            }
        },
    )?;
    let group = AutGroup::from_automorphisms(table, &found);
    if count != group.order() {
        return Err(Error::Internal(format!(
            "automorphism count {count} disagrees with coset enumeration {}",
            group.order()
        )));
    }
    Ok(group)
}

fn search(
    table: &GroupTable,
    candidates: &[Vec<usize>],
    product_orders: &[Vec<u64>],
    images: &mut Vec<usize>,
    examined: &mut u64,
    limit: u64,
    accept: &mut dyn FnMut(&[usize]),
) -> Result<()> {
    let k = images.len();
    if k == candidates.len() {
        accept(images);
        return Ok(());
    }
    for &x in &candidates[k] {
        *examined += 1;
        if *examined > limit {
            return Err(Error::CapExceeded {
                what: "automorphism search space",
                cap: limit as usize,
            });
        }
        let consistent = images.iter().enumerate().all(|(j, &y)| {
            table.element_order(table.multiply(y, x)) == product_orders[j][k]
                && table.element_order(table.multiply(x, y)) == product_orders[k][j]
        });
        if !consistent {
            continue;
        }
        images.push(x);
        search(
            table,
            candidates,
            product_orders,
            images,
            examined,
            limit,
            accept,
        )?;
        images.pop();
    }
    Ok(())
}

/// Orbits of the automorphisms on conjugacy classes, each sorted, ordered by
/// smallest class id.
pub fn aut_orbits_on_classes(table: &GroupTable, auts: &[Automorphism]) -> Vec<Vec<usize>> {
    let k = table.classes().len();
    let mut orbit_of: Vec<Option<usize>> = vec![None; k];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for c in 0..k {
        if orbit_of[c].is_some() {
            continue;
        }
        let id = orbits.len();
        orbit_of[c] = Some(id);
        let mut orbit = vec![c];
        let mut head = 0;
        while head < orbit.len() {
            let d = orbit[head];
            head += 1;
            for a in auts {
                let e = table.class_of(a.apply(table.classes()[d].representative));
                if orbit_of[e].is_none() {
                    orbit_of[e] = Some(id);
                    orbit.push(e);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermutationGroup;

    fn cyc(n: usize, c: &[&[u32]]) -> Permutation {
        let c: Vec<Vec<u32>> = c.iter().map(|x| x.to_vec()).collect();
        Permutation::from_cycles(n, &c).unwrap()
    }

    fn a5() -> GroupTable {
        let g = PermutationGroup::new(5, vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[2, 3, 4]])])
            .unwrap();
        GroupTable::build("A5", &g, 1000).unwrap()
    }

    #[test]
    fn aut_a5() {
        let t = a5();
        let aut = automorphism_group(&t, DEFAULT_AUT_CAP, DEFAULT_SEARCH_LIMIT).unwrap();
        assert_eq!(aut.order(), 120);
        assert_eq!(aut.out_order(), 2);
        for a in aut.generators() {
            assert!(a.is_homomorphism(&t));
            assert_eq!(a.apply(0), 0);
        }
        // fuses 5A with 5B, fixes 3A
        let orbits = aut_orbits_on_classes(&t, aut.generators());
        let c5a = t.class_by_label("5A").unwrap();
        let c5b = t.class_by_label("5B").unwrap();
        let c3a = t.class_by_label("3A").unwrap();
        assert!(orbits.contains(&vec![c5a, c5b]));
        assert!(orbits.contains(&vec![c3a]));
        assert!(orbits.contains(&vec![0]));
    }

    #[test]
    fn inner_automorphisms() {
        let t = a5();
        let id = Automorphism::inner(&t, 0);
        assert_eq!(id, Automorphism::identity(&t));
        let five = t.classes()[t.class_by_label("5A").unwrap()].representative;
        let inn = Automorphism::inner(&t, five);
        assert!(inn.is_homomorphism(&t));
        for x in 0..t.size() {
            assert_eq!(t.class_of(inn.apply(x)), t.class_of(x));
        }
        assert_eq!(inn.as_permutation().order(), 5);
    }

    #[test]
    fn from_images_rejects_non_homomorphisms() {
        let t = a5();
        let gens = t.generators().to_vec();
        assert!(Automorphism::from_generator_images(&t, &[gens[1], gens[0]]).is_err());
        let ok = Automorphism::from_generator_images(&t, &gens).unwrap();
        assert!(ok.is_inner());
    }

    #[test]
    fn cap_is_enforced() {
        let t = a5();
        assert!(matches!(
            automorphism_group(&t, 59, DEFAULT_SEARCH_LIMIT),
            Err(Error::CapExceeded { .. })
        ));
        assert!(automorphism_group(&t, 60, 3).is_err());
    }
}
