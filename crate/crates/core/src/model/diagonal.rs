use serde::Serialize;

use super::{AutGroup, Automorphism, GroupTable, Subgroup};
use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};

/// Default cap on `|T|`, i.e. on the degree of `W(T)`.
pub const DEFAULT_DIAGONAL_CAP: usize = 10_000;

/// Which part of `W(T)` a generator comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "role", content = "index", rename_all = "snake_case")]
pub enum GeneratorRole {
    /// `x -> x t` for the given element index.
    RightTranslation(usize),
    /// `x -> t^-1 x` for the given element index.
    LeftTranslation(usize),
    /// An outer automorphism representative (index into `AutGroup::outer_reps`).
    Automorphism(usize),
    /// `x -> x^-1`.
    Inversion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `W(T)` acting on `Omega = T`, point `i` being element `i` (point 0 is `1_T`).
#[derive(Debug, Clone)]
pub struct DiagonalGroup {
    group: PermutationGroup,
    roles: Vec<GeneratorRole>,
    out_order: usize,
}

pub fn right_translation(table: &GroupTable, t: usize) -> Permutation {
    Permutation::from_images_unchecked(
        (0..table.size())
            .map(|x| table.multiply(x, t) as u32)
            .collect(),
    )
}

pub fn left_translation(table: &GroupTable, t: usize) -> Permutation {
    let ti = table.inverse(t);
    Permutation::from_images_unchecked(
        (0..table.size())
            .map(|x| table.multiply(ti, x) as u32)
            .collect(),
    )
}

pub fn inversion(table: &GroupTable) -> Permutation {
    Permutation::from_images_unchecked(table.inverses().to_vec())
}

impl DiagonalGroup {
    pub fn build(table: &GroupTable, aut: &AutGroup, cap: usize) -> Result<DiagonalGroup> {
        if table.size() > cap {
            return Err(Error::CapExceeded {
                what: "diagonal group degree",
                cap,
            });
        }
        let mut gens = Vec::new();
        let mut roles = Vec::new();
        for &t in table.generators() {
            gens.push(right_translation(table, t));
            roles.push(GeneratorRole::RightTranslation(t));
        }
        for &t in table.generators() {
            gens.push(left_translation(table, t));
            roles.push(GeneratorRole::LeftTranslation(t));
        }
        for (k, tau) in aut.outer_reps().iter().enumerate().skip(1) {
            gens.push(tau.as_permutation());
            roles.push(GeneratorRole::Automorphism(k));
        }
        gens.push(inversion(table));
        roles.push(GeneratorRole::Inversion);
        Ok(DiagonalGroup {
            group: PermutationGroup::new(table.size(), gens)?,
            roles,
            out_order: aut.out_order(),
        })
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn roles(&self) -> &[GeneratorRole] {
        &self.roles
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    /// `|T|^2 |Out(T)| 2`, the order `W(T)` must have for simple `T`.
    pub fn expected_order(&self) -> u128 {
        let n = self.degree() as u128;
        n * n * self.out_order as u128 * 2
    }

    /// `{x -> x a}` (right side) or `{x -> a^-1 x}` (left side) for `a` in `A`.
    pub fn subgroup_image(
        &self,
        table: &GroupTable,
        side: Side,
        sub: &Subgroup,
    ) -> Result<PermutationGroup> {
        let gens = sub
            .generators()
            .iter()
            .map(|&a| match side {
                Side::Right => right_translation(table, a),
                Side::Left => left_translation(table, a),
            })
            .collect();
        PermutationGroup::new(table.size(), gens)
    }

    pub fn automorphism_image(aut: &Automorphism) -> Permutation {
        aut.as_permutation()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{automorphism_group, DEFAULT_AUT_CAP, DEFAULT_SEARCH_LIMIT};

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
    fn w_a5() {
        let t = a5();
        let aut = automorphism_group(&t, DEFAULT_AUT_CAP, DEFAULT_SEARCH_LIMIT).unwrap();
        let w = DiagonalGroup::build(&t, &aut, DEFAULT_DIAGONAL_CAP).unwrap();
        assert_eq!(w.group().order(), 14400);
        assert_eq!(w.expected_order(), 14400);
        assert!(w.group().is_transitive());
        let stab = w.group().stabilizer(0).unwrap();
        assert_eq!(stab.order(), 240);
        for a in aut.generators() {
            assert!(stab.contains(&a.as_permutation()).unwrap());
        }
        assert!(stab.contains(&inversion(&t)).unwrap());
    }

    #[test]
    fn translation_identities() {
        let t = a5();
        let sigma = inversion(&t);
        for x in 0..t.size() {
            let inner = Automorphism::inner(&t, x).as_permutation();
            assert_eq!(
                inner,
                left_translation(&t, x).then(&right_translation(&t, x))
            );
            assert_eq!(
                sigma.then(&right_translation(&t, x)).then(&sigma),
                left_translation(&t, x)
            );
        }
    }

    #[test]
    fn right_regular_and_subgroup_images() {
        let t = a5();
        let aut = automorphism_group(&t, DEFAULT_AUT_CAP, DEFAULT_SEARCH_LIMIT).unwrap();
        let w = DiagonalGroup::build(&t, &aut, DEFAULT_DIAGONAL_CAP).unwrap();
        let whole = w
            .subgroup_image(&t, Side::Right, &Subgroup::whole(&t))
            .unwrap();
        assert_eq!(whole.order(), 60);
        assert_eq!(whole.orbit(0).unwrap().len(), 60);
        assert_eq!(whole.stabilizer(0).unwrap().order(), 1);
        let triv = w
            .subgroup_image(&t, Side::Left, &Subgroup::trivial(&t))
            .unwrap();
        assert_eq!(triv.order(), 1);
        let a4 = Subgroup::from_generators(
            &t,
            &[
                t.index_of(&cyc(5, &[&[0, 1, 2]])).unwrap(),
                t.index_of(&cyc(5, &[&[0, 1], &[2, 3]])).unwrap(),
            ],
        );
        let img = w.subgroup_image(&t, Side::Right, &a4).unwrap();
        assert_eq!(img.order(), 12);
        // orbits of x -> x a are the left cosets x A
        for orb in img.orbits() {
            let x = orb[0];
            let mut coset: Vec<usize> = a4.elements().map(|a| t.multiply(x, a)).collect();
            coset.sort();
            let mut orb = orb.clone();
            orb.sort();
            assert_eq!(orb, coset);
        }
        assert!(DiagonalGroup::build(&t, &aut, 10).is_err());
    }
}
