//! Built-in groups, constructed from standard generators.

use std::collections::BTreeMap;

use super::{CatalogEntry, SubgroupSource};
use crate::error::{Error, Result};
use crate::model::{centralizer, derived_subgroup, GroupTable, Subgroup};
use crate::perm::Permutation;

pub const BUILTIN_NAMES: &[&str] = &[
    "A5",
    "A6",
    "A7",
    "A8",
    "A9",
    "A5_3sets",
    "A6_3sets",
    "A7_3sets",
    "A8_3sets",
    "A9_3sets",
    "PSL(2,7)",
    "PSL(2,8)",
    "PSL(2,11)",
    "PSL(2,13)",
    "PSL(3,2)",
    "M11",
    "M12",
];

fn cyc(n: usize, cycles: &[&[u32]]) -> Permutation {
    let c: Vec<Vec<u32>> = cycles.iter().map(|x| x.to_vec()).collect();
    Permutation::from_cycles(n, &c).expect("built-in cycles are valid")
}

fn long_cycle(n: usize, from: u32, to: u32) -> Permutation {
    let c: Vec<u32> = (from..=to).collect();
    cyc(n, &[&c])
}

fn gens(perms: Vec<Permutation>) -> SubgroupSource {
    SubgroupSource::Generators(perms)
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

/// Generators of `Alt({from..=to})` inside `Sym(n)`.
fn alt_generators(n: usize, from: u32, to: u32) -> Vec<Permutation> {
    let m = to + 1 - from;
    if m < 3 {
        return Vec::new();
    }
    let first = cyc(n, &[&[from, from + 1, from + 2]]);
    if m == 3 {
        return vec![first];
    }
    // an (m)-cycle is even for odd m; otherwise use an (m-1)-cycle fixing `from`
    let second = if m % 2 == 1 {
        long_cycle(n, from, to)
    } else {
        long_cycle(n, from + 1, to)
    };
    vec![first, second]
}

fn alternating(n: usize) -> CatalogEntry {
    let mut subgroups = BTreeMap::new();
    let nn = n as u32;
    // (S3 x S_{n-3}) ∩ A_n and A3 x A_{n-3}
    let mut even = vec![cyc(n, &[&[0, 1, 2]])];
    even.extend(alt_generators(n, 3, nn - 1));
    let mut stab = even.clone();
    stab.push(cyc(n, &[&[0, 1], &[3, 4]]));
    subgroups.insert("setstab3".into(), gens(stab));
    subgroups.insert("setstab3_even".into(), gens(even));
    if n == 5 {
        subgroups.insert(
            "A4".into(),
            gens(vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1], &[2, 3]])]),
        );
        subgroups.insert(
            "V4".into(),
            gens(vec![
                cyc(5, &[&[0, 1], &[2, 3]]),
                cyc(5, &[&[0, 2], &[1, 3]]),
            ]),
        );
        subgroups.insert("C5".into(), gens(vec![cyc(5, &[&[0, 1, 2, 3, 4]])]));
        subgroups.insert(
            "D10".into(),
            gens(vec![
                cyc(5, &[&[0, 1, 2, 3, 4]]),
                cyc(5, &[&[1, 4], &[2, 3]]),
            ]),
        );
        subgroups.insert(
            "S3".into(),
            gens(vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1], &[3, 4]])]),
        );
        subgroups.insert("C3".into(), gens(vec![cyc(5, &[&[0, 1, 2]])]));
    }
    let generators = alt_generators(n, 0, nn - 1);
    // Aut(A_n) = S_n except for n = 6, where the search is cheap anyway
    let aut_generators = (n != 6).then(|| {
        let s = cyc(n, &[&[0, 1]]);
        vec![generators
            .iter()
            .map(|g| s.inverse().then(g).then(&s))
            .collect()]
    });
    CatalogEntry {
        name: format!("A{n}"),
        degree: n,
        generators,
        known_order: Some(factorial(n as u128) / 2),
        aut_generators,
        subgroups,
    }
}

/// 3-subsets of `{0..n-1}` in lexicographic order.
fn three_subsets(n: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.push([a, b, c]);
            }
        }
    }
    out
}

fn on_three_subsets(p: &Permutation, subsets: &[[u32; 3]]) -> Permutation {
    let images = subsets
        .iter()
        .map(|s| {
            let mut img = s.map(|x| p.apply(x as usize) as u32);
            img.sort_unstable();
            subsets.binary_search(&img).expect("image is a 3-subset") as u32
        })
        .collect();
    Permutation::from_images(images).expect("induced action is a bijection")
}

fn alternating_on_three_subsets(n: usize) -> CatalogEntry {
    let natural = alternating(n);
    let subsets = three_subsets(n as u32);
    let lift = |ps: &[Permutation]| -> Vec<Permutation> {
        ps.iter().map(|p| on_three_subsets(p, &subsets)).collect()
    };
    let subgroups = natural
        .subgroups
        .iter()
        .map(|(k, v)| match v {
            SubgroupSource::Generators(g) => (k.clone(), gens(lift(g))),
            SubgroupSource::Recipe(_) => unreachable!("alternating groups use generators"),
        })
        .collect();
    CatalogEntry {
        name: format!("A{n}_3sets"),
        degree: subsets.len(),
        generators: lift(&natural.generators),
        known_order: natural.known_order,
        aut_generators: natural
            .aut_generators
            .as_ref()
            .map(|a| a.iter().map(|v| lift(v)).collect()),
        subgroups,
    }
}

fn inv_mod(a: u64, q: u64) -> u64 {
    (1..q).find(|&b| a * b % q == 1).expect("prime modulus")
}

/// `PSL(2,q)` for prime `q` on the projective line `{0..q-1} ∪ {∞ = q}`.
fn psl2_prime(q: u64) -> CatalogEntry {
    let inf = q;
    let mobius = |f: &dyn Fn(u64) -> u64| -> Permutation {
        Permutation::from_images((0..=q).map(|x| f(x) as u32).collect()).expect("Mobius map")
    };
    let translate = mobius(&|x| if x == inf { inf } else { (x + 1) % q });
    let invert = mobius(&|x| {
        if x == inf {
            0
        } else if x == 0 {
            inf
        } else {
            (q - inv_mod(x, q)) % q
        }
    });
    // a primitive root g; x -> g^2 x generates the diagonal torus
    let g = (2..q)
        .find(|&g| (1..q - 1).all(|k| (1..=k).fold(1, |acc, _| acc * g % q) != 1))
        .expect("primitive root");
    let scale = mobius(&|x| if x == inf { inf } else { x * g % q * g % q });
    let mut subgroups = BTreeMap::new();
    subgroups.insert("unipotent".into(), gens(vec![translate.clone()]));
    subgroups.insert("borel".into(), gens(vec![translate.clone(), scale]));
    let order = (q * (q * q - 1) / 2) as u128;
    CatalogEntry {
        name: format!("PSL(2,{q})"),
        degree: q as usize + 1,
        generators: vec![translate, invert],
        known_order: Some(order),
        aut_generators: None,
        subgroups,
    }
}

/// `PSL(2,7)` with generators `(0 1 2 3 4 5 6)` and `(0 7)(1 6)(2 3)(4 5)`.
fn psl27() -> CatalogEntry {
    let mut e = psl2_prime(7);
    e.generators = vec![
        cyc(8, &[&[0, 1, 2, 3, 4, 5, 6]]),
        cyc(8, &[&[0, 7], &[1, 6], &[2, 3], &[4, 5]]),
    ];
    let c7 = cyc(8, &[&[0, 1, 2, 3, 4, 5, 6]]);
    let three = cyc(8, &[&[1, 2, 4], &[3, 6, 5]]);
    e.subgroups
        .insert("sylow7_normalizer".into(), gens(vec![c7.clone(), three]));
    e.subgroups.insert("C7".into(), gens(vec![c7]));
    e
}

/// Multiplication in `GF(8) = GF(2)[x]/(x^3 + x + 1)`, elements as bit masks.
fn gf8_mul(mut a: u32, mut b: u32) -> u32 {
    let mut r = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & 0b1000 != 0 {
            a ^= 0b1011;
        }
    }
    r
}

fn psl28() -> CatalogEntry {
    let inf = 8u32;
    let map = |f: &dyn Fn(u32) -> u32| -> Permutation {
        Permutation::from_images((0..=8).map(f).collect()).expect("Mobius map over GF(8)")
    };
    let add = |c: u32| map(&move |x| if x == inf { inf } else { x ^ c });
    let w = 0b010;
    let scale = map(&|x| if x == inf { inf } else { gf8_mul(x, w) });
    let invert = map(&|x| {
        if x == inf {
            0
        } else if x == 0 {
            inf
        } else {
            (1..8).find(|&y| gf8_mul(x, y) == 1).expect("field inverse")
        }
    });
    let mut subgroups = BTreeMap::new();
    subgroups.insert("unipotent".into(), gens(vec![add(1), add(2), add(4)]));
    subgroups.insert("borel".into(), gens(vec![add(1), scale.clone()]));
    CatalogEntry {
        name: "PSL(2,8)".into(),
        degree: 9,
        generators: vec![add(1), scale, invert],
        known_order: Some(504),
        aut_generators: None,
        subgroups,
    }
}

/// `PSL(3,2)` on the 7 nonzero vectors of `GF(2)^3` (vector `v` is point `v - 1`).
fn psl32() -> CatalogEntry {
    let from_matrix = |rows: [u32; 3]| -> Permutation {
        // column-vector convention: image of v is M v; rows are bit masks
        let apply = |v: u32| -> u32 {
            (0..3).fold(0, |acc, i| {
                acc | ((rows[i] & v).count_ones() & 1) << (2 - i)
            })
        };
        Permutation::from_images((1..8u32).map(|v| apply(v) - 1).collect())
            .expect("invertible matrix")
    };
    // Singer cycle (companion matrix of x^3 + x + 1) and a transvection
    let singer = from_matrix([0b001, 0b101, 0b010]);
    let transvection = from_matrix([0b110, 0b010, 0b001]);
    let mut subgroups = BTreeMap::new();
    subgroups.insert(
        "parabolic".into(),
        SubgroupSource::Recipe(|t| point_stabilizer(t, 0)),
    );
    subgroups.insert(
        "parabolic_even".into(),
        SubgroupSource::Recipe(|t| {
            let p = point_stabilizer(t, 0)?;
            Ok(derived_subgroup(t, &p))
        }),
    );
    subgroups.insert(
        "parabolic_core".into(),
        SubgroupSource::Recipe(|t| {
            let p = point_stabilizer(t, 0)?;
            let d = derived_subgroup(t, &p);
            Ok(derived_subgroup(t, &d))
        }),
    );
    CatalogEntry {
        name: "PSL(3,2)".into(),
        degree: 7,
        generators: vec![singer, transvection],
        known_order: Some(168),
        aut_generators: None,
        subgroups,
    }
}

/// Stabilizer of a point of the defining representation, as a subgroup of the table.
pub(crate) fn point_stabilizer(table: &GroupTable, point: usize) -> Result<Subgroup> {
    let stab = table.representation().stabilizer(point)?;
    let idx: Vec<usize> = stab
        .generators()
        .iter()
        .map(|g| table.index_of(g).expect("stabilizer lies in the group"))
        .collect();
    Ok(Subgroup::from_generators(table, &idx))
}

fn m11() -> CatalogEntry {
    let mut subgroups = BTreeMap::new();
    subgroups.insert(
        "A6.2".into(),
        SubgroupSource::Recipe(|t| point_stabilizer(t, 10)),
    );
    subgroups.insert(
        "A6".into(),
        SubgroupSource::Recipe(|t| {
            let a = point_stabilizer(t, 10)?;
            Ok(derived_subgroup(t, &a))
        }),
    );
    CatalogEntry {
        name: "M11".into(),
        degree: 11,
        generators: vec![
            long_cycle(11, 0, 10),
            cyc(11, &[&[2, 6, 10, 7], &[3, 9, 4, 5]]),
        ],
        known_order: Some(7920),
        aut_generators: None,
        subgroups,
    }
}

/// Centralizer of an involution whose centralizer has order 240 (`2 x S5`).
fn m12_involution_centralizer(t: &GroupTable) -> Result<Subgroup> {
    let c = (0..t.classes().len())
        .find(|&c| t.class_order(c) == 2 && t.size() / t.classes()[c].size == 240)
        .ok_or_else(|| Error::Internal("no involution with centralizer of order 240".into()))?;
    Ok(centralizer(t, t.classes()[c].representative))
}

fn m12() -> CatalogEntry {
    let mut subgroups = BTreeMap::new();
    subgroups.insert(
        "2xS5".into(),
        SubgroupSource::Recipe(m12_involution_centralizer),
    );
    subgroups.insert(
        "S5".into(),
        SubgroupSource::Recipe(|t| {
            // <A', y> for y outside A' x <z>, z the central involution of A
            let a = m12_involution_centralizer(t)?;
            let derived = derived_subgroup(t, &a);
            let z = a
                .elements()
                .find(|&x| {
                    x != 0
                        && a.generators()
                            .iter()
                            .all(|&g| t.multiply(g, x) == t.multiply(x, g))
                })
                .ok_or_else(|| Error::Internal("2 x S5 has no central involution".into()))?;
            let dz = derived.join(t, &Subgroup::from_generators(t, &[z]));
            let y = a
                .elements()
                .find(|&y| !dz.contains(y))
                .ok_or_else(|| Error::Internal("index computation failed".into()))?;
            let mut g = derived.generators().to_vec();
            g.push(y);
            Ok(Subgroup::from_generators(t, &g))
        }),
    );
    let mut gens = m11().generators;
    for g in gens.iter_mut() {
        let mut im = g.images().to_vec();
        im.push(11);
        *g = Permutation::from_images(im).expect("extension by a fixed point");
    }
    gens.push(cyc(
        12,
        &[&[0, 11], &[1, 10], &[2, 5], &[3, 7], &[4, 8], &[6, 9]],
    ));
    CatalogEntry {
        name: "M12".into(),
        degree: 12,
        generators: gens,
        known_order: Some(95040),
        aut_generators: None,
        subgroups,
    }
}

pub fn builtin(name: &str) -> Option<CatalogEntry> {
    let entry = match name {
        "A5" => alternating(5),
        "A6" => alternating(6),
        "A7" => alternating(7),
        "A8" => alternating(8),
        "A9" => alternating(9),
        "A5_3sets" => alternating_on_three_subsets(5),
        "A6_3sets" => alternating_on_three_subsets(6),
        "A7_3sets" => alternating_on_three_subsets(7),
        "A8_3sets" => alternating_on_three_subsets(8),
        "A9_3sets" => alternating_on_three_subsets(9),
        "PSL(2,7)" => psl27(),
        "PSL(2,8)" => psl28(),
        "PSL(2,11)" => psl2_prime(11),
        "PSL(2,13)" => psl2_prime(13),
        "PSL(3,2)" => psl32(),
        "M11" => m11(),
        "M12" => m12(),
        _ => return None,
    };
    Some(entry)
}
