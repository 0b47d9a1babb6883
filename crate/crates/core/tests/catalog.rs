use diagspread::catalog::{
    catalog_load, catalog_names, LoadedGroup, CATALOG_DIR_ENV, STANDARD_TRIPLES,
};
use diagspread::model::{automorphism_group, DEFAULT_SEARCH_LIMIT};
use diagspread::spreading::{orbit_count_pair, supplement_property, Scope};
use diagspread::Error;

#[test]
fn catalog_orders() {
    for (name, degree, order) in [
        ("A5", 5, 60u128),
        ("A9", 9, 181_440),
        ("A6_3sets", 20, 360),
        ("PSL(2,8)", 9, 504),
        ("PSL(2,11)", 12, 660),
        ("PSL(2,13)", 14, 1092),
        ("PSL(3,2)", 7, 168),
        ("M11", 11, 7920),
        ("M12", 12, 95_040),
    ] {
        let e = catalog_load(name).unwrap();
        assert_eq!(e.degree, degree, "{name}");
        assert_eq!(e.group().unwrap().order(), order, "{name}");
        assert!(e.group().unwrap().is_transitive(), "{name}");
    }
    assert_eq!(catalog_names().len(), 17);
}

#[test]
fn every_named_subgroup_resolves() {
    for name in catalog_names() {
        if name.starts_with("A9") || name == "M12" {
            continue;
        }
        let lg = LoadedGroup::load(name).unwrap();
        for sub in lg.entry.subgroups.keys() {
            let s = lg.subgroup(sub).unwrap();
            assert_eq!(lg.table.size() % s.order(), 0, "{name} {sub}");
        }
    }
}

#[test]
fn m12_subgroups() {
    let lg = LoadedGroup::load("M12").unwrap();
    let a = lg.subgroup("2xS5").unwrap();
    let b = lg.subgroup("S5").unwrap();
    assert_eq!((a.order(), b.order()), (240, 120));
    assert!(b.is_normal_in(&lg.table, &a));
}

#[test]
fn standard_triples_are_normal_pairs() {
    for &(g, a, b) in STANDARD_TRIPLES
        .iter()
        .filter(|t| t.0 != "A9" && t.0 != "M12")
    {
        let lg = LoadedGroup::load(g).unwrap();
        let (sa, sb) = (lg.subgroup(a).unwrap(), lg.subgroup(b).unwrap());
        assert!(sb.is_normal_in(&lg.table, &sa), "{g} {a} {b}");
        let counts = orbit_count_pair(&lg.table, &sa, &sb).unwrap();
        let rep = supplement_property(&lg.table, &sa, &sb, Scope::Inner).unwrap();
        // B transitive on every A-orbit of cosets iff the supplement property holds
        assert_eq!(counts.c_a == counts.c_b, rep.holds, "{g} {a} {b}");
    }
}

#[test]
fn listed_automorphisms_match_search() {
    let lg = LoadedGroup::load("A5").unwrap();
    let listed = lg.automorphisms(0, 0).unwrap();
    let searched = automorphism_group(&lg.table, 10_000, DEFAULT_SEARCH_LIMIT).unwrap();
    assert_eq!(listed.order(), searched.order());
}

#[test]
fn catalog_directory_and_bad_specs() {
    let dir = std::env::temp_dir().join(format!("diagspread-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("S3.json"),
        r#"{"name":"S3","degree":3,"generators":[[[0,1]],[1,2,0]],"known_order":6,
            "subgroups":{"C3":[[[0,1,2]]]}}"#,
    )
    .unwrap();
    std::fs::write(
        dir.join("broken.json"),
        r#"{"name":"broken","degree":3,"generators":[[0,1]]}"#,
    )
    .unwrap();
    std::fs::write(
        dir.join("wrong.json"),
        r#"{"name":"wrong","degree":3,"generators":[[[0,1]]],"known_order":6}"#,
    )
    .unwrap();
    std::fs::write(
        dir.join("outside.json"),
        r#"{"name":"outside","degree":3,"generators":[[[0,1,2]]],"subgroups":{"S":[[[0,1]]]}}"#,
    )
    .unwrap();
    std::env::set_var(CATALOG_DIR_ENV, &dir);

    let lg = LoadedGroup::load("S3").unwrap();
    assert_eq!(lg.table.size(), 6);
    assert_eq!(lg.subgroup("C3").unwrap().order(), 3);
    assert!(matches!(
        catalog_load("broken"),
        Err(Error::DegreeMismatch { .. })
    ));
    assert!(matches!(catalog_load("wrong"), Err(Error::Invalid(_))));
    assert!(matches!(
        catalog_load("outside"),
        Err(Error::NotASubgroup(_))
    ));
    assert!(matches!(catalog_load("missing"), Err(Error::Unknown(_))));
    std::fs::remove_dir_all(&dir).unwrap();
}
