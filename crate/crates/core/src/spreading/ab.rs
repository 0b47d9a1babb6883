use serde::Serialize;

use super::{verify_witness, Multiset, Refutation, Witness, WitnessCheck};
use crate::error::{Error, Result};
use crate::model::{AutGroup, DiagonalGroup, GroupTable, Side, Subgroup};
use crate::perm::{PermutationGroup, SetOrbit};

/// A witness produced by the block construction, with the data it was built from.
#[derive(Debug, Clone, Serialize)]
pub struct AbWitness {
    pub witness: Witness,
    /// Number of `B`-orbits making up `omega1^A`.
    pub k: usize,
    pub b_orbit: Vec<u32>,
    pub a_orbit: Vec<u32>,
    /// `|Delta|`, the images of `X` meeting `omega1^A`.
    pub delta_size: usize,
    /// Number of `A`-orbits on `Delta`.
    pub delta_orbits: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum AbFailure {
    /// `omega1^A` is a single `B`-orbit.
    TooFewBlocks { k: usize, a_orbit: Vec<u32> },
    /// `B` splits the `A`-orbit `orbit` of `Delta`; `b_orbit` is the `B`-orbit
    /// of its first member.
    NotTransitiveOnOrbit {
        orbit: Vec<Vec<u32>>,
        b_orbit: Vec<Vec<u32>>,
    },
    /// The constructed pair failed direct verification.
    CrossCheck { refutation: Box<Refutation> },
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum AbOutcome {
    Witness(Box<AbWitness>),
    Failure(AbFailure),
}

impl AbOutcome {
    pub fn witness(&self) -> Option<&AbWitness> {
        match self {
            AbOutcome::Witness(w) => Some(w),
            AbOutcome::Failure(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&AbFailure> {
        match self {
            AbOutcome::Failure(f) => Some(f),
            AbOutcome::Witness(_) => None,
        }
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<u32> {
    v.sort_unstable();
    v.into_iter().map(|x| x as u32).collect()
}

/// Orbits of a group acting on the sets of a set orbit, as index lists.
fn orbits_on(orbit: &SetOrbit, members: &[usize], gens: &PermutationGroup) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; orbit.len()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for &start in members {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        label[start] = id;
        let mut comp = vec![start];
        let mut head = 0;
        while head < comp.len() {
            let y = &orbit.sets[comp[head]];
            head += 1;
            for g in gens.generators() {
                let z = orbit
                    .position(&g.image_of_set(y))
                    .expect("set orbit is closed under a subgroup");
                if label[z] == usize::MAX {
                    label[z] = id;
                    comp.push(z);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Checks the hypotheses of the block construction for `B ⊴ A ≤ G` and, if
/// they hold, returns the witness `(X, Omega + k omega1^B - omega1^A)`
/// after verifying it directly.
///
/// Precondition violations are errors; a construction whose hypotheses
/// fail on the given data is an [`AbFailure`].
pub fn ab_lemma_check(
    g: &PermutationGroup,
    group_name: &str,
    a: &PermutationGroup,
    b: &PermutationGroup,
    omega1: usize,
    set: &[u32],
    cap: usize,
) -> Result<AbOutcome> {
    let n = g.degree();
    if a.degree() != n || b.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: if a.degree() != n {
                a.degree()
            } else {
                b.degree()
            },
        });
    }
    if omega1 >= n {
        return Err(Error::PointOutOfRange {
            point: omega1,
            degree: n,
        });
    }
    if !g.is_transitive() {
        return Err(Error::Invalid(format!("{group_name} is not transitive")));
    }
    for x in a.generators() {
        if !g.contains(x)? {
            return Err(Error::NotASubgroup(format!(
                "A is not contained in {group_name}"
            )));
        }
    }
    if !b.is_normal_in(a)? {
        return Err(Error::NotASubgroup(
            "B is not a normal subgroup of A".into(),
        ));
    }
    if b.order() == a.order() {
        return Err(Error::Invalid("B is not a proper subgroup of A".into()));
    }
    let mut x: Vec<u32> = set.to_vec();
    x.sort_unstable();
    x.dedup();
    if x.is_empty() || x.len() >= n {
        return Err(Error::Invalid("X must be a non-empty proper subset".into()));
    }

    let b_orbit = sorted(b.orbit(omega1)?);
    let a_orbit = sorted(a.orbit(omega1)?);
    // B is normal in A, so A permutes the B-orbits inside omega1^A
    let k = a_orbit.len() / b_orbit.len();
    if k < 2 {
        return Ok(AbOutcome::Failure(AbFailure::TooFewBlocks { k, a_orbit }));
    }

    let orbit = g.set_orbit_tree(&x, cap)?;
    let mut in_a_orbit = vec![false; n];
    for &p in &a_orbit {
        in_a_orbit[p as usize] = true;
    }
    let delta: Vec<usize> = (0..orbit.len())
        .filter(|&i| orbit.sets[i].iter().any(|&p| in_a_orbit[p as usize]))
        .collect();
    let a_orbits = orbits_on(&orbit, &delta, a);
    let b_orbits = orbits_on(&orbit, &delta, b);
    let mut b_label = vec![usize::MAX; orbit.len()];
    for (id, comp) in b_orbits.iter().enumerate() {
        for &i in comp {
            b_label[i] = id;
        }
    }
    for comp in &a_orbits {
        let first = b_label[comp[0]];
        if comp.iter().any(|&i| b_label[i] != first) {
            let sets = |v: &[usize]| v.iter().map(|&i| orbit.sets[i].clone()).collect();
            return Ok(AbOutcome::Failure(AbFailure::NotTransitiveOnOrbit {
                orbit: sets(comp),
                b_orbit: sets(&b_orbits[first]),
            }));
        }
    }

    let j = Multiset::combination(n, 1, &[(k as i64, &b_orbit), (-1, &a_orbit)])?;
    debug_assert_eq!(j.cardinality(), n as u64);
    match verify_witness(g, group_name, &x, &j, cap)? {
        WitnessCheck::Verified(witness) => Ok(AbOutcome::Witness(Box::new(AbWitness {
            witness,
            k,
            b_orbit,
            a_orbit,
            delta_size: delta.len(),
            delta_orbits: a_orbits.len(),
        }))),
        WitnessCheck::Refuted(r) => Ok(AbOutcome::Failure(AbFailure::CrossCheck {
            refutation: Box::new(r),
        })),
    }
}

/// The block construction on `W(T)`, with `A`, `B` acting by right translation.
#[derive(Debug, Clone, Serialize)]
pub struct DiagonalWitness {
    pub group: String,
    pub group_order: u128,
    pub degree: usize,
    pub outcome: AbOutcome,
}

/// Builds `W(T)` and runs [`ab_lemma_check`] with `omega1 = 1_T` and `X = A`.
pub fn diagonal_witness(
    table: &GroupTable,
    aut: &AutGroup,
    a: &Subgroup,
    b: &Subgroup,
    degree_cap: usize,
    orbit_cap: usize,
) -> Result<DiagonalWitness> {
    if a.order() == table.size() {
        return Err(Error::Invalid("A must be a proper subgroup of T".into()));
    }
    if !b.is_normal_in(table, a) {
        return Err(Error::NotASubgroup(
            "B is not a normal subgroup of A".into(),
        ));
    }
    let w = DiagonalGroup::build(table, aut, degree_cap)?;
    let ga = w.subgroup_image(table, Side::Right, a)?;
    let gb = w.subgroup_image(table, Side::Right, b)?;
    let x: Vec<u32> = a.element_indices().to_vec();
    let name = format!("W({})", table.name());
    let outcome = ab_lemma_check(w.group(), &name, &ga, &gb, 0, &x, orbit_cap)?;
    if let Some(ok) = outcome.witness() {
        let expected = table.size() as u64 + (ok.k * ok.b_orbit.len()) as u64 - a.order() as u64;
        if ok.witness.multiset.cardinality() != expected || expected != table.size() as u64 {
            return Err(Error::Internal(format!(
                "multiset has cardinality {}, expected {}",
                ok.witness.multiset.cardinality(),
                table.size()
            )));
        }
    }
    Ok(DiagonalWitness {
        group: name,
        group_order: w.group().order(),
        degree: w.degree(),
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{automorphism_group, DEFAULT_AUT_CAP, DEFAULT_SEARCH_LIMIT};
    use crate::perm::Permutation;

    fn cyc(n: usize, c: &[&[u32]]) -> Permutation {
        let c: Vec<Vec<u32>> = c.iter().map(|x| x.to_vec()).collect();
        Permutation::from_cycles(n, &c).unwrap()
    }

    fn perm_a5() -> PermutationGroup {
        PermutationGroup::new(5, vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[2, 3, 4]])]).unwrap()
    }

    fn sub(table: &GroupTable, gens: &[Permutation]) -> Subgroup {
        let idx: Vec<usize> = gens.iter().map(|p| table.index_of(p).unwrap()).collect();
        Subgroup::from_generators(table, &idx)
    }

    #[test]
    fn single_block_is_reported() {
        let g = perm_a5();
        let a = g.stabilizer(4).unwrap();
        let b = PermutationGroup::new(
            5,
            vec![cyc(5, &[&[0, 1], &[2, 3]]), cyc(5, &[&[0, 2], &[1, 3]])],
        )
        .unwrap();
        let out = ab_lemma_check(&g, "A5", &a, &b, 0, &[0, 1], 1000).unwrap();
        match out.failure().unwrap() {
            AbFailure::TooFewBlocks { k, a_orbit } => {
                assert_eq!(*k, 1);
                assert_eq!(a_orbit, &vec![0, 1, 2, 3]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_proper_b_is_an_error() {
        let g = perm_a5();
        let a = g.stabilizer(4).unwrap();
        assert!(ab_lemma_check(&g, "A5", &a, &a, 0, &[0, 1], 1000).is_err());
    }

    #[test]
    fn diagonal_a5_a4_v4() {
        let t = GroupTable::build("A5", &perm_a5(), 1000).unwrap();
        let aut = automorphism_group(&t, DEFAULT_AUT_CAP, DEFAULT_SEARCH_LIMIT).unwrap();
        let a = sub(&t, &[cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1], &[2, 3]])]);
        let b = sub(
            &t,
            &[cyc(5, &[&[0, 1], &[2, 3]]), cyc(5, &[&[0, 2], &[1, 3]])],
        );
        let d = diagonal_witness(&t, &aut, &a, &b, 10_000, 100_000).unwrap();
        assert_eq!(d.group_order, 14_400);
        assert_eq!(d.degree, 60);
        let w = d.outcome.witness().unwrap();
        assert_eq!(w.k, 3);
        assert_eq!(w.witness.multiset.cardinality(), 60);
        assert_eq!(w.witness.constant, 12);
        // {A^tau t}: 5 conjugates of A4, 5 right cosets each
        assert_eq!(w.witness.images_checked, 25);
    }

    #[test]
    fn diagonal_a5_d10_c5() {
        let t = GroupTable::build("A5", &perm_a5(), 1000).unwrap();
        let aut = automorphism_group(&t, DEFAULT_AUT_CAP, DEFAULT_SEARCH_LIMIT).unwrap();
        let a = sub(
            &t,
            &[cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[1, 4], &[2, 3]])],
        );
        let b = sub(&t, &[cyc(5, &[&[0, 1, 2, 3, 4]])]);
        let d = diagonal_witness(&t, &aut, &a, &b, 10_000, 100_000).unwrap();
        let w = d.outcome.witness().unwrap();
        assert_eq!(w.k, 2);
        assert_eq!(w.witness.multiset.cardinality(), 60);
    }

    #[test]
    fn diagonal_fails_without_supplement() {
        // C5 with trivial B: A ∩ A^t = 1 for some t, so B(A ∩ A^t) != A
        let t = GroupTable::build("A5", &perm_a5(), 1000).unwrap();
        let aut = automorphism_group(&t, DEFAULT_AUT_CAP, DEFAULT_SEARCH_LIMIT).unwrap();
        let a = sub(&t, &[cyc(5, &[&[0, 1, 2, 3, 4]])]);
        let b = Subgroup::trivial(&t);
        let d = diagonal_witness(&t, &aut, &a, &b, 10_000, 100_000).unwrap();
        assert!(matches!(
            d.outcome.failure(),
            Some(AbFailure::NotTransitiveOnOrbit { .. })
        ));
    }
}
