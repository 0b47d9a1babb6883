//! Named groups with their standard subgroups, and the JSON group-spec format.
//!
//! A group spec looks like
//! `{"name": "A5", "degree": 5, "generators": [[[0,1,2,3,4]], [[2,3,4]]],
//!   "known_order": 60, "subgroups": {"A4": [[[0,1,2]], [[0,1],[2,3]]]}}`,
//! with each permutation written as an image array or a cycle list.
//! `aut_generators`, if present, lists automorphisms by the images of the
//! defining generators.

mod builtin;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    automorphism_group, derived_subgroup, normalizer, sylow_subgroup, AutGroup, Automorphism,
    GroupTable, Subgroup,
};
use crate::perm::{PermSpec, Permutation, PermutationGroup, DEFAULT_ELEMENT_CAP};

pub use builtin::BUILTIN_NAMES;

/// Environment variable naming a directory of extra `<name>.json` group specs.
pub const CATALOG_DIR_ENV: &str = "DIAGSPREAD_CATALOG_DIR";

/// How a named subgroup is obtained.
#[derive(Clone)]
pub enum SubgroupSource {
    Generators(Vec<Permutation>),
    /// Computed from the group table (for subgroups described structurally).
    Recipe(fn(&GroupTable) -> Result<Subgroup>),
}

impl std::fmt::Debug for SubgroupSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SubgroupSource::Generators(g) => f.debug_tuple("Generators").field(g).finish(),
            SubgroupSource::Recipe(_) => f.write_str("Recipe"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub known_order: Option<u128>,
    /// Automorphisms given by the images of the defining generators.
    pub aut_generators: Option<Vec<Vec<Permutation>>>,
    pub subgroups: BTreeMap<String, SubgroupSource>,
}

/// JSON form of a [`CatalogEntry`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<PermSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub known_order: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aut_generators: Option<Vec<Vec<PermSpec>>>,
    #[serde(default)]
    pub subgroups: BTreeMap<String, Vec<PermSpec>>,
}

impl GroupSpec {
    pub fn into_entry(self) -> Result<CatalogEntry> {
        let resolve = |v: &[PermSpec]| -> Result<Vec<Permutation>> {
            v.iter().map(|p| p.resolve(self.degree)).collect()
        };
        let generators = resolve(&self.generators)?;
        let aut_generators = match &self.aut_generators {
            Some(list) => Some(
                list.iter()
                    .map(|imgs| resolve(imgs))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        let subgroups = self
            .subgroups
            .iter()
            .map(|(k, v)| Ok((k.clone(), SubgroupSource::Generators(resolve(v)?))))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let entry = CatalogEntry {
            name: self.name,
            degree: self.degree,
            generators,
            known_order: self.known_order,
            aut_generators,
            subgroups,
        };
        entry.validate()?;
        Ok(entry)
    }
}

impl CatalogEntry {
    pub fn group(&self) -> Result<PermutationGroup> {
        PermutationGroup::new(self.degree, self.generators.clone())
    }

    /// Checks the order against `known_order` and that explicit subgroup
    /// generators lie in the group.
    pub fn validate(&self) -> Result<()> {
        let g = self.group()?;
        if let Some(k) = self.known_order {
            if g.order() != k {
                return Err(Error::Invalid(format!(
                    "{} has order {}, expected {k}",
                    self.name,
                    g.order()
                )));
            }
        }
        for (name, src) in &self.subgroups {
            if let SubgroupSource::Generators(gens) = src {
                for p in gens {
                    if !g.contains(p)? {
                        return Err(Error::NotASubgroup(format!(
                            "generator {p} of {name} is not in {}",
                            self.name
                        )));
                    }
                }
            }
        }
        if let Some(auts) = &self.aut_generators {
            for imgs in auts {
                if imgs.len() != self.generators.len() {
                    return Err(Error::Invalid(format!(
                        "automorphism lists {} images for {} generators",
                        imgs.len(),
                        self.generators.len()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_spec(&self) -> GroupSpec {
        let images = |p: &Permutation| PermSpec::Images(p.images().to_vec());
        GroupSpec {
            name: self.name.clone(),
            degree: self.degree,
            generators: self.generators.iter().map(images).collect(),
            known_order: self.known_order,
            aut_generators: self
                .aut_generators
                .as_ref()
                .map(|a| a.iter().map(|v| v.iter().map(images).collect()).collect()),
            subgroups: self
                .subgroups
                .iter()
                .filter_map(|(k, v)| match v {
                    SubgroupSource::Generators(g) => {
                        Some((k.clone(), g.iter().map(images).collect()))
                    }
                    SubgroupSource::Recipe(_) => None,
                })
                .collect(),
        }
    }
}

/// Names of the built-in groups.
pub fn catalog_names() -> Vec<&'static str> {
    BUILTIN_NAMES.to_vec()
}

/// Looks a group up among the built-ins, then in the catalog directory.
pub fn catalog_load(name: &str) -> Result<CatalogEntry> {
    if let Some(e) = builtin::builtin(name) {
        e.validate()?;
        return Ok(e);
    }
    if let Ok(dir) = std::env::var(CATALOG_DIR_ENV) {
        let path = PathBuf::from(dir).join(format!("{name}.json"));
        if path.exists() {
            return load_spec_file(&path);
        }
    }
    Err(Error::Unknown(format!("group {name:?}")))
}

pub fn load_spec_file(path: &Path) -> Result<CatalogEntry> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let spec: GroupSpec = serde_json::from_str(&text)
        .map_err(|e| Error::Invalid(format!("bad group spec {}: {e}", path.display())))?;
    spec.into_entry()
}

/// A catalog entry together with its element table.
#[derive(Debug, Clone)]
pub struct LoadedGroup {
    pub entry: CatalogEntry,
    pub table: GroupTable,
}

impl LoadedGroup {
    pub fn new(entry: CatalogEntry, cap: usize) -> Result<LoadedGroup> {
        let table = GroupTable::build(&entry.name, &entry.group()?, cap)?;
        Ok(LoadedGroup { entry, table })
    }

    pub fn load(name: &str) -> Result<LoadedGroup> {
        LoadedGroup::new(catalog_load(name)?, DEFAULT_ELEMENT_CAP)
    }

    fn subgroup_of_perms(&self, perms: &[Permutation]) -> Result<Subgroup> {
        let idx = perms
            .iter()
            .map(|p| {
                self.table.index_of(p).ok_or_else(|| {
                    Error::NotASubgroup(format!("{p} is not in {}", self.entry.name))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Subgroup::from_generators(&self.table, &idx))
    }

    /// Resolves a subgroup name.
    ///
    /// Besides the entry's named subgroups this accepts `1`, `T`,
    /// `sylow<p>`, `sylow<p>_normalizer`, `stab<k>` (point stabilizer),
    /// `derived(<name>)`, and an inline JSON list of generators.
    pub fn subgroup(&self, name: &str) -> Result<Subgroup> {
        let t = &self.table;
        if let Some(src) = self.entry.subgroups.get(name) {
            return match src {
                SubgroupSource::Generators(g) => self.subgroup_of_perms(g),
                SubgroupSource::Recipe(f) => f(t),
            };
        }
        if name == "1" || name == "trivial" {
            return Ok(Subgroup::trivial(t));
        }
        if name == "T" || name == "whole" {
            return Ok(Subgroup::whole(t));
        }
        if let Some(inner) = name
            .strip_prefix("derived(")
            .and_then(|s| s.strip_suffix(')'))
        {
            return Ok(derived_subgroup(t, &self.subgroup(inner)?));
        }
        if let Some(rest) = name.strip_prefix("sylow") {
            let (num, norm) = match rest.strip_suffix("_normalizer") {
                Some(n) => (n, true),
                None => (rest, false),
            };
            if let Ok(p) = num.parse::<u64>() {
                let s = sylow_subgroup(t, p);
                return Ok(if norm { normalizer(t, &s) } else { s });
            }
        }
        if let Some(k) = name
            .strip_prefix("stab")
            .and_then(|k| k.parse::<usize>().ok())
        {
            return builtin::point_stabilizer(t, k);
        }
        if name.trim_start().starts_with('[') {
            let specs: Vec<PermSpec> = serde_json::from_str(name)
                .map_err(|e| Error::Invalid(format!("bad generator list: {e}")))?;
            let perms = specs
                .iter()
                .map(|p| p.resolve(self.entry.degree))
                .collect::<Result<Vec<_>>>()?;
            return self.subgroup_of_perms(&perms);
        }
        Err(Error::Unknown(format!(
            "subgroup {name:?} of {}",
            self.entry.name
        )))
    }

    /// `Aut(T)`: from the listed automorphisms if the entry has them,
    /// otherwise by search.
    pub fn automorphisms(&self, cap: usize, search_limit: u64) -> Result<AutGroup> {
        match &self.entry.aut_generators {
            Some(list) => {
                let auts = list
                    .iter()
                    .map(|imgs| {
                        let idx = imgs
                            .iter()
                            .map(|p| {
                                self.table.index_of(p).ok_or_else(|| {
                                    Error::Invalid(format!("automorphism image {p} not in group"))
                                })
                            })
                            .collect::<Result<Vec<_>>>()?;
                        Automorphism::from_generator_images(&self.table, &idx)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(AutGroup::from_automorphisms(&self.table, &auts))
            }
            None => automorphism_group(&self.table, cap, search_limit),
        }
    }
}

/// `(group, A, B)` instances of the supplement property shipped with the catalog.
pub const STANDARD_TRIPLES: &[(&str, &str, &str)] = &[
    ("A5", "A4", "V4"),
    ("A5", "D10", "C5"),
    ("A5", "S3", "C3"),
    ("A5", "C5", "1"),
    ("A6", "sylow3_normalizer", "sylow3"),
    ("A6", "setstab3", "setstab3_even"),
    ("A7", "setstab3", "setstab3_even"),
    ("A8", "setstab3", "setstab3_even"),
    ("A9", "setstab3", "setstab3_even"),
    ("PSL(2,7)", "sylow7_normalizer", "C7"),
    ("PSL(2,8)", "borel", "unipotent"),
    ("PSL(2,11)", "borel", "unipotent"),
    ("PSL(2,13)", "borel", "unipotent"),
    ("PSL(3,2)", "parabolic", "parabolic_even"),
    ("PSL(3,2)", "parabolic", "parabolic_core"),
    ("M11", "A6.2", "A6"),
    ("M12", "2xS5", "S5"),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders_validate() {
        for name in [
            "A5",
            "A6",
            "PSL(2,7)",
            "PSL(2,8)",
            "PSL(2,11)",
            "PSL(3,2)",
            "A7_3sets",
        ] {
            let e = catalog_load(name).unwrap();
            assert_eq!(e.group().unwrap().order(), e.known_order.unwrap(), "{name}");
        }
        assert_eq!(catalog_load("PSL(2,8)").unwrap().degree, 9);
        assert_eq!(catalog_load("A7_3sets").unwrap().degree, 35);
        assert!(matches!(catalog_load("J4"), Err(Error::Unknown(_))));
    }

    #[test]
    fn named_subgroups_resolve() {
        let g = LoadedGroup::load("A5").unwrap();
        let order = |n: &str| g.subgroup(n).unwrap().order();
        assert_eq!(order("A4"), 12);
        assert_eq!(order("V4"), 4);
        assert_eq!(order("D10"), 10);
        assert_eq!(order("1"), 1);
        assert_eq!(order("T"), 60);
        assert_eq!(order("sylow5_normalizer"), 10);
        assert_eq!(order("stab4"), 12);
        assert_eq!(order("derived(A4)"), 4);
        assert_eq!(order("[[[0,1,2]]]"), 3);
        assert!(g.subgroup("[[[0,1]]]").is_err());
        assert!(g.subgroup("nope").is_err());
    }

    #[test]
    fn spec_round_trip() {
        let e = catalog_load("A5").unwrap();
        let text = serde_json::to_string(&e.to_spec()).unwrap();
        let back: GroupSpec = serde_json::from_str(&text).unwrap();
        let e2 = back.into_entry().unwrap();
        assert_eq!(e2.generators, e.generators);
        assert_eq!(e2.subgroups.len(), e.subgroups.len());
    }

    #[test]
    fn bad_spec_is_rejected() {
        let text = r#"{"name":"bad","degree":3,"generators":[[0,0,1]]}"#;
        let spec: GroupSpec = serde_json::from_str(text).unwrap();
        assert!(spec.into_entry().is_err());
        let text = r#"{"name":"bad","degree":3,"generators":[[[0,1,2]]],"known_order":6}"#;
        let spec: GroupSpec = serde_json::from_str(text).unwrap();
        assert!(spec.into_entry().is_err());
    }

    #[test]
    fn standard_subgroup_orders() {
        let expect = [
            ("A6", "sylow3_normalizer", 36, "sylow3", 9),
            ("A7", "setstab3", 72, "setstab3_even", 36),
            ("PSL(2,7)", "sylow7_normalizer", 21, "C7", 7),
            ("PSL(2,8)", "borel", 56, "unipotent", 8),
            ("PSL(2,13)", "borel", 78, "unipotent", 13),
            ("PSL(3,2)", "parabolic", 24, "parabolic_even", 12),
            ("M11", "A6.2", 720, "A6", 360),
        ];
        for (g, a, oa, b, ob) in expect {
            let lg = LoadedGroup::load(g).unwrap();
            assert_eq!(lg.subgroup(a).unwrap().order(), oa, "{g} {a}");
            assert_eq!(lg.subgroup(b).unwrap().order(), ob, "{g} {b}");
        }
        assert_eq!(
            LoadedGroup::load("PSL(3,2)")
                .unwrap()
                .subgroup("parabolic_core")
                .unwrap()
                .order(),
            4
        );
    }

    #[test]
    fn listed_automorphisms_give_symmetric_group() {
        use crate::spreading::aut_conjugates_are_inner;
        let lg = LoadedGroup::load("A7").unwrap();
        let aut = lg.automorphisms(0, 0).unwrap();
        assert_eq!(aut.order(), 5040);
        let a = lg.subgroup("setstab3").unwrap();
        assert!(aut_conjugates_are_inner(&lg.table, &a, &aut));

        // the graph automorphism swaps point and line stabilizers
        let lg = LoadedGroup::load("PSL(3,2)").unwrap();
        let aut = lg
            .automorphisms(1000, crate::model::DEFAULT_SEARCH_LIMIT)
            .unwrap();
        assert_eq!(aut.order(), 336);
        let a = lg.subgroup("parabolic").unwrap();
        assert!(!aut_conjugates_are_inner(&lg.table, &a, &aut));
    }
}
