use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{AutGroup, GroupTable, Subgroup};

/// Which conjugates `A^tau` the supplement property is checked against.
#[derive(Debug, Clone, Copy)]
pub enum Scope<'a> {
    /// `tau` ranges over inner automorphisms, i.e. `A^t` for `t` in `T`.
    Inner,
    /// `tau` ranges over all of `Aut(T)`.
    Full(&'a AutGroup),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScopeKind {
    T,
    Aut,
}

/// `tau = outer_reps[outer] * inn(t)` with `B (A ∩ A^tau) != A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupplementFailure {
    /// Index into the outer-automorphism transversal (0 is the identity).
    pub outer: usize,
    pub t: usize,
    pub intersection_order: usize,
    pub product_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupplementReport {
    pub holds: bool,
    pub failing: Option<SupplementFailure>,
    pub scope: ScopeKind,
    pub subgroup_order: usize,
    pub normal_order: usize,
}

impl SupplementFailure {
    /// Re-checks the failure by building `B (A ∩ A^tau)` as a set.
    pub fn recheck(
        &self,
        table: &GroupTable,
        a: &Subgroup,
        b: &Subgroup,
        aut: Option<&AutGroup>,
    ) -> bool {
        let target = match (self.outer, aut) {
            (0, _) => a.clone(),
            (k, Some(aut)) if k < aut.out_order() => a.image(table, aut.outer_reps()[k].mapping()),
            _ => return false,
        };
        let conj = target.conjugate(table, self.t);
        let s: Vec<usize> = a.elements().filter(|&x| conj.contains(x)).collect();
        let mut product = vec![false; table.size()];
        for x in b.elements() {
            for &y in &s {
                product[table.multiply(x, y)] = true;
            }
        }
        let size = product.iter().filter(|&&p| p).count();
        s.len() == self.intersection_order && size == self.product_order && size != a.order()
    }
}

/// Marks every element of the right coset `sub * t`.
fn mark_right_coset(table: &GroupTable, sub: &Subgroup, t: usize, done: &mut [bool]) {
    for x in sub.elements() {
        done[table.multiply(x, t)] = true;
    }
}

/// `|A ∩ target^t|` and `|B ∩ target^t|`, using `x in target^t <=> t x t^-1 in target`.
fn intersection_orders(
    table: &GroupTable,
    a: &Subgroup,
    b: &Subgroup,
    target: &Subgroup,
    t: usize,
) -> (usize, usize) {
    let ti = table.inverse(t);
    let mut s = 0;
    let mut bs = 0;
    for x in a.elements() {
        if target.contains(table.conjugate(x, ti)) {
            s += 1;
            if b.contains(x) {
                bs += 1;
            }
        }
    }
    (s, bs)
}

/// Checks `A = B (A ∩ A^tau)` for every `tau` in scope.
///
/// Products are size-checked via `|B S| = |B| |S| / |B ∩ S|`. Since
/// `A^(tau inn(t))` depends only on the right coset `A^tau t`, the check runs
/// once per coset. The reported failure has the smallest outer index, then
/// the smallest `t`.
pub fn supplement_property(
    table: &GroupTable,
    a: &Subgroup,
    b: &Subgroup,
    scope: Scope<'_>,
) -> Result<SupplementReport> {
    if a.order() == table.size() {
        return Err(Error::Invalid("A must be a proper subgroup of T".into()));
    }
    if !b.is_normal_in(table, a) {
        return Err(Error::NotASubgroup(
            "B is not a normal subgroup of A".into(),
        ));
    }
    if b.order() == a.order() {
        return Err(Error::Invalid("B must be a proper subgroup of A".into()));
    }
    let (targets, kind): (Vec<Subgroup>, ScopeKind) = match scope {
        Scope::Inner => (vec![a.clone()], ScopeKind::T),
        Scope::Full(aut) => (
            aut.outer_reps()
                .iter()
                .map(|tau| a.image(table, tau.mapping()))
                .collect(),
            ScopeKind::Aut,
        ),
    };
    let mut failing = None;
    'outer: for (k, target) in targets.iter().enumerate() {
        let mut done = vec![false; table.size()];
        for t in 0..table.size() {
            if done[t] {
                continue;
            }
            mark_right_coset(table, target, t, &mut done);
            let (s, bs) = intersection_orders(table, a, b, target, t);
            let product = b.order() * s / bs;
            let ok = product == a.order();
            if !ok {
                failing = Some(SupplementFailure {
                    outer: k,
                    t,
                    intersection_order: s,
                    product_order: product,
                });
                break 'outer;
            }
        }
    }
    Ok(SupplementReport {
        holds: failing.is_none(),
        failing,
        scope: kind,
        subgroup_order: a.order(),
        normal_order: b.order(),
    })
}

/// First `t` (in element order) with `A ∩ A^t = 1`, if any.
pub fn two_point_stabilizer_trivial(table: &GroupTable, a: &Subgroup) -> Option<usize> {
    let mut done = vec![false; table.size()];
    for t in 0..table.size() {
        if done[t] {
            continue;
        }
        mark_right_coset(table, a, t, &mut done);
        let ti = table.inverse(t);
        let meets = a
            .elements()
            .filter(|&x| x != 0)
            .any(|x| a.contains(table.conjugate(x, ti)));
        if !meets {
            return Some(t);
        }
    }
    None
}

/// Whether every `A^tau` (`tau` in `Aut(T)`) equals some `A^t` with `t` in `T`,
/// in which case the supplement property over `T` and over `Aut(T)` coincide.
pub fn aut_conjugates_are_inner(table: &GroupTable, a: &Subgroup, aut: &AutGroup) -> bool {
    aut.outer_reps().iter().skip(1).all(|tau| {
        let image = a.image(table, tau.mapping());
        let mut done = vec![false; table.size()];
        (0..table.size()).any(|t| {
            if done[t] {
                return false;
            }
            mark_right_coset(table, a, t, &mut done);
            a.conjugate(table, t) == image
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{automorphism_group, DEFAULT_AUT_CAP, DEFAULT_SEARCH_LIMIT};
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

    fn sub(table: &GroupTable, gens: &[Permutation]) -> Subgroup {
        let idx: Vec<usize> = gens.iter().map(|p| table.index_of(p).unwrap()).collect();
        Subgroup::from_generators(table, &idx)
    }

    /// Materializes `B (A ∩ A^t)` for every `t`.
    fn brute(table: &GroupTable, a: &Subgroup, b: &Subgroup) -> Option<usize> {
        (0..table.size()).find(|&t| {
            let conj = a.conjugate(table, t);
            let mut product = vec![false; table.size()];
            for x in b.elements() {
                for y in a.elements().filter(|&y| conj.contains(y)) {
                    product[table.multiply(x, y)] = true;
                }
            }
            product.iter().filter(|&&p| p).count() != a.order()
        })
    }

    #[test]
    fn a4_over_v4_holds() {
        let t = a5();
        let a = sub(&t, &[cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1], &[2, 3]])]);
        let b = sub(
            &t,
            &[cyc(5, &[&[0, 1], &[2, 3]]), cyc(5, &[&[0, 2], &[1, 3]])],
        );
        let r = supplement_property(&t, &a, &b, Scope::Inner).unwrap();
        assert!(r.holds);
        assert_eq!(brute(&t, &a, &b), None);
        let aut = automorphism_group(&t, DEFAULT_AUT_CAP, DEFAULT_SEARCH_LIMIT).unwrap();
        assert!(
            supplement_property(&t, &a, &b, Scope::Full(&aut))
                .unwrap()
                .holds
        );
    }

    #[test]
    fn c5_over_trivial_fails() {
        let t = a5();
        let a = sub(&t, &[cyc(5, &[&[0, 1, 2, 3, 4]])]);
        let b = Subgroup::trivial(&t);
        let r = supplement_property(&t, &a, &b, Scope::Inner).unwrap();
        assert!(!r.holds);
        let f = r.failing.unwrap();
        assert_eq!(Some(f.t), brute(&t, &a, &b));
        assert_eq!(f.intersection_order, 1);
        assert!(f.recheck(&t, &a, &b, None));
    }

    #[test]
    fn preconditions() {
        let t = a5();
        let a = sub(&t, &[cyc(5, &[&[0, 1, 2, 3, 4]])]);
        assert!(supplement_property(&t, &a, &a, Scope::Inner).is_err());
        let whole = Subgroup::whole(&t);
        assert!(supplement_property(&t, &whole, &a, Scope::Inner).is_err());
        let not_normal = sub(&t, &[cyc(5, &[&[0, 1], &[2, 3]])]);
        let a4 = sub(&t, &[cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1], &[2, 3]])]);
        assert!(supplement_property(&t, &a4, &not_normal, Scope::Inner).is_err());
    }

    #[test]
    fn two_point_stabilizers() {
        let t = a5();
        let c5 = sub(&t, &[cyc(5, &[&[0, 1, 2, 3, 4]])]);
        let found = two_point_stabilizer_trivial(&t, &c5).unwrap();
        assert_eq!(c5.intersection(&t, &c5.conjugate(&t, found)).order(), 1);
        let a4 = sub(&t, &[cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1], &[2, 3]])]);
        assert_eq!(two_point_stabilizer_trivial(&t, &a4), None);
    }
}
