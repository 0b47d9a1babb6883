use serde::Serialize;

use super::Multiset;
use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};

/// A verified pair `(X, J)`: every image `X^g` has the same `J`-weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub set: Vec<u32>,
    pub multiset: Multiset,
    pub constant: u64,
    pub group: String,
    pub verified: bool,
    /// Number of distinct images `X^g` that were summed.
    #[serde(skip)]
    pub images_checked: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    /// `X` is empty, a single point, or the whole domain.
    TrivialSet,
    /// `J` is constant or supported on a single point.
    TrivialMultiset,
    /// `|J|` does not divide `|Omega|`.
    Divisibility,
    /// Two images of `X` have different `J`-weight.
    NotConstant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    SetSize {
        size: usize,
        degree: usize,
    },
    ConstantMultiset {
        multiplicity: u64,
    },
    SinglePoint {
        point: usize,
        multiplicity: u64,
    },
    Cardinality {
        cardinality: u64,
        degree: usize,
    },
    /// `set^element = image`, whose weight differs from the weight of `set`.
    ImageSum {
        element: Permutation,
        image: Vec<u32>,
        sum: u64,
        reference_sum: u64,
    },
}

/// A failed verification, with a certificate that can be re-checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Refutation {
    pub set: Vec<u32>,
    pub multiset: Multiset,
    pub group: String,
    pub verified: bool,
    pub violation: Violation,
    pub counterexample: Counterexample,
}

impl Refutation {
    /// Re-checks the certificate without enumerating anything.
    pub fn recheck(&self, group: &PermutationGroup) -> bool {
        let n = group.degree();
        match &self.counterexample {
            Counterexample::SetSize { size, degree } => {
                *size == self.set.len() && *degree == n && (*size < 2 || *size >= n)
            }
            Counterexample::ConstantMultiset { multiplicity } => self
                .multiset
                .multiplicities()
                .iter()
                .all(|m| m == multiplicity),
            Counterexample::SinglePoint {
                point,
                multiplicity,
            } => {
                self.multiset.support_size() == 1
                    && self.multiset.multiplicity(*point) == *multiplicity
            }
            Counterexample::Cardinality {
                cardinality,
                degree,
            } => {
                *cardinality == self.multiset.cardinality()
                    && *degree == n
                    && (*cardinality == 0 || n as u64 % cardinality != 0)
            }
            Counterexample::ImageSum {
                element,
                image,
                sum,
                reference_sum,
            } => {
                group.contains(element).unwrap_or(false)
                    && element.image_of_set(&self.set) == *image
                    && self.multiset.sum_over(image) == *sum
                    && self.multiset.sum_over(&self.set) == *reference_sum
                    && sum != reference_sum
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum WitnessCheck {
    Verified(Witness),
    Refuted(Refutation),
}

impl WitnessCheck {
    pub fn is_verified(&self) -> bool {
        matches!(self, WitnessCheck::Verified(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            WitnessCheck::Verified(w) => Some(w),
            WitnessCheck::Refuted(_) => None,
        }
    }

    pub fn refutation(&self) -> Option<&Refutation> {
        match self {
            WitnessCheck::Refuted(r) => Some(r),
            WitnessCheck::Verified(_) => None,
        }
    }
}

/// Checks that `(X, J)` witnesses `G` being non-spreading.
///
/// The weight `sum_{x in X^g} mu_J(x)` depends only on the image set `X^g`,
/// so it is evaluated over the set orbit of `X` rather than over all of `G`.
pub fn verify_witness(
    group: &PermutationGroup,
    group_name: &str,
    set: &[u32],
    multiset: &Multiset,
    cap: usize,
) -> Result<WitnessCheck> {
    let n = group.degree();
    if multiset.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: multiset.degree(),
        });
    }
    if !group.is_transitive() {
        return Err(Error::Invalid(format!("{group_name} is not transitive")));
    }
    let mut x: Vec<u32> = set.to_vec();
    x.sort_unstable();
    x.dedup();
    if let Some(&bad) = x.iter().find(|&&p| p as usize >= n) {
        return Err(Error::PointOutOfRange {
            point: bad as usize,
            degree: n,
        });
    }
    let refute = |violation, counterexample| {
        Ok(WitnessCheck::Refuted(Refutation {
            set: x.clone(),
            multiset: multiset.clone(),
            group: group_name.to_string(),
            verified: false,
            violation,
            counterexample,
        }))
    };
    if x.len() < 2 || x.len() >= n {
        return refute(
            Violation::TrivialSet,
            Counterexample::SetSize {
                size: x.len(),
                degree: n,
            },
        );
    }
    if multiset.is_trivial() {
        let ce = if multiset.support_size() == 1 {
            let point = (0..n)
                .find(|&p| multiset.multiplicity(p) != 0)
                .expect("support");
            Counterexample::SinglePoint {
                point,
                multiplicity: multiset.multiplicity(point),
            }
        } else {
            Counterexample::ConstantMultiset {
                multiplicity: multiset.multiplicity(0),
            }
        };
        return refute(Violation::TrivialMultiset, ce);
    }
    let card = multiset.cardinality();
    if card == 0 || n as u64 % card != 0 {
        return refute(
            Violation::Divisibility,
            Counterexample::Cardinality {
                cardinality: card,
                degree: n,
            },
        );
    }
    let orbit = group.set_orbit_tree(&x, cap)?;
    let reference = multiset.sum_over(&x);
    if let Some(i) = orbit
        .sets
        .iter()
        .position(|img| multiset.sum_over(img) != reference)
    {
        let image = orbit.sets[i].clone();
        return refute(
            Violation::NotConstant,
            Counterexample::ImageSum {
                element: orbit.element(group, i),
                sum: multiset.sum_over(&image),
                image,
                reference_sum: reference,
            },
        );
    }
    Ok(WitnessCheck::Verified(Witness {
        set: x,
        multiset: multiset.clone(),
        constant: reference,
        group: group_name.to_string(),
        verified: true,
        images_checked: orbit.len(),
    }))
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

    #[test]
    fn constant_multiset_is_refuted() {
        let g = a5();
        let j = Multiset::combination(5, 1, &[]).unwrap();
        let r = verify_witness(&g, "A5", &[0, 1], &j, 1000).unwrap();
        let r = r.refutation().unwrap();
        assert_eq!(r.violation, Violation::TrivialMultiset);
        assert!(r.recheck(&g));
    }

    #[test]
    fn divisibility_is_refuted() {
        let g = a5();
        let j = Multiset::combination(5, 1, &[(1, &[0])]).unwrap();
        assert_eq!(j.cardinality(), 6);
        let r = verify_witness(&g, "A5", &[0, 1], &j, 1000).unwrap();
        let r = r.refutation().unwrap();
        assert_eq!(r.violation, Violation::Divisibility);
        assert!(r.recheck(&g));
    }

    #[test]
    fn non_constant_sum_carries_an_element() {
        let g = a5();
        // |J| = 5 but the weights of 2-sets differ
        let j = Multiset::combination(5, 0, &[(2, &[0]), (1, &[1, 2, 3])]).unwrap();
        let r = verify_witness(&g, "A5", &[0, 1], &j, 1000).unwrap();
        let r = r.refutation().unwrap();
        assert_eq!(r.violation, Violation::NotConstant);
        assert!(r.recheck(&g));
    }

    #[test]
    fn trivial_set_is_refuted() {
        let g = a5();
        let j = Multiset::combination(5, 0, &[(2, &[0]), (1, &[1, 2, 3])]).unwrap();
        let r = verify_witness(&g, "A5", &[3], &j, 1000).unwrap();
        assert_eq!(r.refutation().unwrap().violation, Violation::TrivialSet);
    }

    #[test]
    fn intransitive_group_is_an_error() {
        let g = PermutationGroup::new(3, vec![cyc(3, &[&[0, 1]])]).unwrap();
        let j = Multiset::combination(3, 0, &[(1, &[0, 1, 2])]).unwrap();
        assert!(verify_witness(&g, "C2", &[0, 1], &j, 100).is_err());
    }

    #[test]
    fn imprimitive_group_has_a_block_witness() {
        // C6 on 6 points, block {0,3}: X = block, J = 2 * {0, 2, 4} is constant on X-images? no:
        // use X = {0, 3} and J = {0, 1, 2} (a transversal of the blocks)
        let g = PermutationGroup::new(6, vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        let j = Multiset::combination(6, 0, &[(1, &[0, 1, 2])]).unwrap();
        let w = verify_witness(&g, "C6", &[0, 3], &j, 100).unwrap();
        let w = w.witness().unwrap();
        assert_eq!(w.constant, 1);
        assert_eq!(w.images_checked, 3);
    }
}
