use super::{GroupTable, Subgroup};
use crate::error::Result;
use crate::perm::{Permutation, PermutationGroup};

/// Right cosets `A x` of a subgroup, numbered by their smallest element.
#[derive(Debug, Clone)]
pub struct CosetSpace {
    subgroup: Subgroup,
    reps: Vec<u32>,
    point_of: Vec<u32>,
}

impl CosetSpace {
    pub fn new(table: &GroupTable, subgroup: &Subgroup) -> CosetSpace {
        let n = table.size();
        let mut point_of = vec![u32::MAX; n];
        let mut reps = Vec::with_capacity(n / subgroup.order());
        for x in 0..n {
            if point_of[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x as u32);
            for a in subgroup.elements() {
                point_of[table.multiply(a, x)] = id;
            }
        }
        CosetSpace {
            subgroup: subgroup.clone(),
            reps,
            point_of,
        }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Smallest element of each coset.
    pub fn representatives(&self) -> &[u32] {
        &self.reps
    }

    /// The coset containing element `x`.
    #[inline]
    pub fn point_of(&self, x: usize) -> usize {
        self.point_of[x] as usize
    }

    /// Permutation of cosets induced by right multiplication by `r`.
    pub fn action_of(&self, table: &GroupTable, r: usize) -> Permutation {
        let images = self
            .reps
            .iter()
            .map(|&x| self.point_of[table.multiply(x as usize, r)])
            .collect();
        Permutation::from_images_unchecked(images)
    }

    /// Image of a subgroup (given by generators) in the coset action.
    pub fn image_of(&self, table: &GroupTable, sub: &Subgroup) -> Result<PermutationGroup> {
        PermutationGroup::new(
            self.len(),
            sub.generators()
                .iter()
                .map(|&g| self.action_of(table, g))
                .collect(),
        )
    }
}

/// `R` acting on the right cosets of `A` by right multiplication.
#[derive(Debug, Clone)]
pub struct CosetAction {
    pub space: CosetSpace,
    pub group: PermutationGroup,
}

pub fn coset_action(table: &GroupTable, subgroup: &Subgroup) -> Result<CosetAction> {
    let space = CosetSpace::new(table, subgroup);
    let gens = table
        .generators()
        .iter()
        .map(|&g| space.action_of(table, g))
        .collect();
    let group = PermutationGroup::new(space.len(), gens)?;
    Ok(CosetAction { space, group })
}
