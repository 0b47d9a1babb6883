use serde::Serialize;

use super::CharacterTable;
use crate::error::{Error, Result};
use crate::model::GroupTable;
use crate::perm::PermutationGroup;
use crate::spreading::{verify_witness, Multiset, Witness, WitnessCheck};

/// Classes `(r, s1, s2)` for which `(r^T, Omega + s1^T - s2^T)` is a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharWitnessSpec {
    pub r_class: usize,
    pub s1_class: usize,
    pub s2_class: usize,
    pub r_label: String,
    pub s1_label: String,
    pub s2_label: String,
    /// `|s1^T| = |s2^T|`.
    pub sizes_equal: bool,
    /// Every character separating `s1` from `s2` vanishes on the
    /// automorphism orbit of `r`.
    pub vanishing: bool,
    /// Rows of the characters with `chi(s1) != chi(s2)`.
    pub separating: Vec<usize>,
    /// Classes in the automorphism orbit of `r`.
    pub r_orbit: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum CharRefutation {
    SizeMismatch { s1_size: usize, s2_size: usize },
    NonVanishing { character: usize, class: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CharCheck {
    Passed(CharWitnessSpec),
    Refuted(CharRefutation),
}

impl CharCheck {
    pub fn spec(&self) -> Option<&CharWitnessSpec> {
        match self {
            CharCheck::Passed(s) => Some(s),
            CharCheck::Refuted(_) => None,
        }
    }
}

/// Tests the class-size and vanishing conditions for `(r, s1, s2)`.
///
/// `aut_class_orbits` partitions the classes into orbits of `Aut(T)`.
pub fn lemma25_check(
    table: &GroupTable,
    chars: &CharacterTable,
    aut_class_orbits: &[Vec<usize>],
    r: usize,
    s1: usize,
    s2: usize,
) -> Result<CharCheck> {
    let n = chars.num_classes();
    if r >= n || s1 >= n || s2 >= n {
        return Err(Error::Invalid("class index out of range".into()));
    }
    if r == s1 || r == s2 || s1 == s2 {
        return Err(Error::Invalid(
            "the three classes must be pairwise distinct".into(),
        ));
    }
    let (z1, z2) = (chars.classes[s1].size, chars.classes[s2].size);
    if z1 != z2 {
        return Ok(CharCheck::Refuted(CharRefutation::SizeMismatch {
            s1_size: z1,
            s2_size: z2,
        }));
    }
    let r_orbit = aut_class_orbits
        .iter()
        .find(|o| o.contains(&r))
        .cloned()
        .unwrap_or_else(|| vec![r]);
    let separating: Vec<usize> = (0..chars.values.len())
        .filter(|&chi| chars.value(chi, s1) != chars.value(chi, s2))
        .collect();
    for &chi in &separating {
        for &c in &r_orbit {
            if !chars.value(chi, c).is_zero() {
                return Ok(CharCheck::Refuted(CharRefutation::NonVanishing {
                    character: chi,
                    class: c,
                }));
            }
        }
    }
    Ok(CharCheck::Passed(CharWitnessSpec {
        r_class: r,
        s1_class: s1,
        s2_class: s2,
        r_label: table.class_label(r).to_string(),
        s1_label: table.class_label(s1).to_string(),
        s2_label: table.class_label(s2).to_string(),
        sizes_equal: true,
        vanishing: true,
        separating,
        r_orbit,
    }))
}

/// Every passing triple, `r` outermost, then `s1 < s2`, in class order.
pub fn lemma25_search(
    table: &GroupTable,
    chars: &CharacterTable,
    aut_class_orbits: &[Vec<usize>],
) -> Result<Vec<CharWitnessSpec>> {
    let n = chars.num_classes();
    let mut out = Vec::new();
    for r in 0..n {
        for s1 in 0..n {
            for s2 in s1 + 1..n {
                if r == s1 || r == s2 {
                    continue;
                }
                if let CharCheck::Passed(spec) =
                    lemma25_check(table, chars, aut_class_orbits, r, s1, s2)?
                {
                    out.push(spec);
                }
            }
        }
    }
    Ok(out)
}

/// Builds `X = r^T` and `J = Omega + s1^T - s2^T` on `Omega = T` and
/// verifies the pair on `W(T)` by set-orbit enumeration. The common sum must
/// be `|X|`.
pub fn char_witness_validate(
    table: &GroupTable,
    w: &PermutationGroup,
    group_name: &str,
    spec: &CharWitnessSpec,
    cap: usize,
) -> Result<Witness> {
    if w.degree() != table.size() {
        return Err(Error::DegreeMismatch {
            expected: table.size(),
            found: w.degree(),
        });
    }
    let class = |c: usize| -> Vec<u32> {
        table.classes()[c]
            .members
            .iter()
            .map(|&x| x as u32)
            .collect()
    };
    let x = class(spec.r_class);
    let j = Multiset::combination(
        table.size(),
        1,
        &[(1, &class(spec.s1_class)), (-1, &class(spec.s2_class))],
    )?;
    match verify_witness(w, group_name, &x, &j, cap)? {
        WitnessCheck::Verified(wit) if wit.constant == x.len() as u64 => Ok(wit),
        WitnessCheck::Verified(wit) => Err(Error::Internal(format!(
            "witness constant {} differs from |X| = {}",
            wit.constant,
            x.len()
        ))),
        WitnessCheck::Refuted(r) => Err(Error::Internal(format!(
            "character witness failed verification: {:?}",
            r.violation
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::{dixon_character_table, DEFAULT_CLASS_CAP};
    use crate::model::{
        aut_orbits_on_classes, automorphism_group, DiagonalGroup, DEFAULT_AUT_CAP,
        DEFAULT_SEARCH_LIMIT,
    };
    use crate::perm::Permutation;

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
    fn a5_checks_and_search() {
        let t = a5();
        let ct = dixon_character_table(&t, DEFAULT_CLASS_CAP).unwrap();
        let aut = automorphism_group(&t, DEFAULT_AUT_CAP, DEFAULT_SEARCH_LIMIT).unwrap();
        let orbits = aut_orbits_on_classes(&t, aut.generators());
        let c = |l: &str| t.class_by_label(l).unwrap();
        let pass = lemma25_check(&t, &ct, &orbits, c("3A"), c("5A"), c("5B")).unwrap();
        let spec = pass.spec().unwrap();
        assert_eq!(spec.separating, vec![1, 2]);
        let fail = lemma25_check(&t, &ct, &orbits, c("2A"), c("5A"), c("5B")).unwrap();
        assert!(matches!(
            fail,
            CharCheck::Refuted(CharRefutation::NonVanishing { .. })
        ));
        assert!(lemma25_check(&t, &ct, &orbits, c("3A"), c("5A"), c("5A")).is_err());

        let found = lemma25_search(&t, &ct, &orbits).unwrap();
        assert!(found
            .iter()
            .any(|s| s.r_class == c("3A") && s.s1_class == c("5A") && s.s2_class == c("5B")));

        let w = DiagonalGroup::build(&t, &aut, 10_000).unwrap();
        let wit = char_witness_validate(&t, w.group(), "W(A5)", spec, 1_000_000).unwrap();
        assert_eq!(wit.constant, 20);
        assert_eq!(wit.set.len(), 20);
        assert_eq!(wit.multiset.cardinality(), 60);
    }

    #[test]
    fn cyclic_scaffold_search_is_empty() {
        let g = PermutationGroup::new(3, vec![cyc(3, &[&[0, 1, 2]])]).unwrap();
        let t = GroupTable::build("C3", &g, 10).unwrap();
        let ct = dixon_character_table(&t, DEFAULT_CLASS_CAP).unwrap();
        let orbits: Vec<Vec<usize>> = (0..3).map(|c| vec![c]).collect();
        assert!(lemma25_search(&t, &ct, &orbits).unwrap().is_empty());
    }
}
