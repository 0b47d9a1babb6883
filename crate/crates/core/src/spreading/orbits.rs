use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{CosetSpace, GroupTable, Subgroup};

/// Orbit counts of `A` and `B` on the right cosets of `A`, by two methods.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitCounts {
    pub c_a: usize,
    pub c_b: usize,
    /// `|R : A|`.
    pub degree: usize,
    /// Orbit sizes of `A`, in order of their smallest coset.
    pub a_orbit_sizes: Vec<usize>,
    pub b_orbit_sizes: Vec<usize>,
    /// `<pi, pi>` for the permutation character `pi` of `R` on the cosets.
    pub rank: usize,
}

fn direct_orbits(space: &CosetSpace, table: &GroupTable, sub: &Subgroup) -> Result<Vec<usize>> {
    let image = space.image_of(table, sub)?;
    Ok(image.orbits().iter().map(|o| o.len()).collect())
}

/// Permutation character of `R` on the cosets of `A`, per conjugacy class:
/// `pi(g) = |R| |g^R ∩ A| / (|A| |g^R|)`.
pub fn permutation_character(table: &GroupTable, a: &Subgroup) -> Result<Vec<u64>> {
    let mut meet = vec![0u64; table.classes().len()];
    for x in a.elements() {
        meet[table.class_of(x)] += 1;
    }
    let r = table.size() as u64;
    let h = a.order() as u64;
    meet.iter()
        .zip(table.classes())
        .map(|(&m, c)| {
            let num = r * m;
            let den = h * c.size as u64;
            if num % den != 0 {
                Err(Error::Internal(format!(
                    "permutation character value {num}/{den} is not an integer"
                )))
            } else {
                Ok(num / den)
            }
        })
        .collect()
}

/// `(1/|H|) sum_{h in H} pi(h)`, the number of orbits of `H` (Cauchy-Frobenius).
fn fixed_point_average(table: &GroupTable, pi: &[u64], h: &Subgroup) -> Result<usize> {
    let total: u64 = h.elements().map(|x| pi[table.class_of(x)]).sum();
    let n = h.order() as u64;
    if total % n != 0 {
        return Err(Error::Internal(format!(
            "fixed-point sum {total} is not divisible by {n}"
        )));
    }
    Ok((total / n) as usize)
}

/// Counts the orbits of `A` and `B` on the right cosets of `A` in `R`,
/// both by partitioning the cosets and by averaging fixed points; the two
/// must agree.
pub fn orbit_count_pair(table: &GroupTable, a: &Subgroup, b: &Subgroup) -> Result<OrbitCounts> {
    if !b.is_subgroup_of(a) {
        return Err(Error::NotASubgroup("B is not contained in A".into()));
    }
    let space = CosetSpace::new(table, a);
    let a_orbit_sizes = direct_orbits(&space, table, a)?;
    let b_orbit_sizes = direct_orbits(&space, table, b)?;
    let pi = permutation_character(table, a)?;
    let ca = fixed_point_average(table, &pi, a)?;
    let cb = fixed_point_average(table, &pi, b)?;
    if ca != a_orbit_sizes.len() || cb != b_orbit_sizes.len() {
        return Err(Error::Internal(format!(
            "orbit counts disagree: direct ({}, {}), fixed points ({ca}, {cb})",
            a_orbit_sizes.len(),
            b_orbit_sizes.len()
        )));
    }
    // <pi, pi> = number of R-orbits on pairs = c_A
    let sq: u64 = table
        .classes()
        .iter()
        .enumerate()
        .map(|(c, cl)| cl.size as u64 * pi[c] * pi[c])
        .sum();
    let rank = (sq / table.size() as u64) as usize;
    if rank != ca {
        return Err(Error::Internal(format!(
            "rank {rank} differs from the number of A-orbits {ca}"
        )));
    }
    Ok(OrbitCounts {
        c_a: ca,
        c_b: cb,
        degree: space.len(),
        a_orbit_sizes,
        b_orbit_sizes,
        rank,
    })
}

/// The counting bound `c |A| / 2 >= |R : A|` with `c` the number of
/// `A`-orbits on cosets; it holds whenever no two cosets have trivial joint
/// stabilizer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitBound {
    pub orbits: usize,
    pub subgroup_order: usize,
    pub index: usize,
    pub holds: bool,
}

pub fn orbit_bound_holds(table: &GroupTable, a: &Subgroup) -> Result<OrbitBound> {
    if a.order() == table.size() {
        return Err(Error::Invalid("A must be a proper subgroup".into()));
    }
    let space = CosetSpace::new(table, a);
    let orbits = direct_orbits(&space, table, a)?.len();
    let index = space.len();
    Ok(OrbitBound {
        orbits,
        subgroup_order: a.order(),
        index,
        holds: orbits * a.order() >= 2 * index,
    })
}
