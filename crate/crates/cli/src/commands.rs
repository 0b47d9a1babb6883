use std::path::Path;

use serde_json::{json, Value};

use diagspread::catalog::{catalog_load, load_spec_file, LoadedGroup};
use diagspread::chartab::{
    char_witness_validate, dixon_character_table, lemma25_check, lemma25_search, CharCheck,
    CharacterTable, DEFAULT_CLASS_CAP,
};
use diagspread::model::{
    aut_orbits_on_classes, AutGroup, DiagonalGroup, Subgroup, DEFAULT_AUT_CAP,
    DEFAULT_DIAGONAL_CAP, DEFAULT_SEARCH_LIMIT,
};
use diagspread::perm::{DEFAULT_ELEMENT_CAP, DEFAULT_SET_ORBIT_CAP};
use diagspread::spreading::{
    ab_lemma_check, diagonal_witness, orbit_count_pair, supplement_property,
    two_point_stabilizer_trivial, verify_witness, AbOutcome, Scope, SparseMultiset, WitnessCheck,
};
use diagspread::{Permutation, PermutationGroup};

use crate::report::{Outcome, Verdict};
use crate::{
    BasesizeCmd, ChartabCmd, Cli, Command, GroupArg, GroupCmd, OrbitsCmd, PairArg, ScopeArg,
    SpreadingCmd,
};

type CmdResult = Result<Outcome, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("certificate serializes")
}

struct Caps {
    elements: usize,
    set_orbit: usize,
    aut: usize,
    diagonal: usize,
    classes: usize,
}

impl Caps {
    fn new(cap: Option<usize>) -> Caps {
        Caps {
            elements: cap.unwrap_or(DEFAULT_ELEMENT_CAP),
            set_orbit: cap.unwrap_or(DEFAULT_SET_ORBIT_CAP),
            aut: cap.unwrap_or(DEFAULT_AUT_CAP),
            diagonal: cap.unwrap_or(DEFAULT_DIAGONAL_CAP),
            classes: cap.unwrap_or(DEFAULT_CLASS_CAP),
        }
    }
}

struct Ctx<'a> {
    caps: Caps,
    group: &'a GroupArg,
}

impl Ctx<'_> {
    fn name(&self) -> String {
        match (&self.group.group, &self.group.file) {
            (Some(n), _) => n.clone(),
            (None, Some(p)) => p.display().to_string(),
            (None, None) => String::new(),
        }
    }

    fn entry(&self) -> Result<diagspread::catalog::CatalogEntry, String> {
        match (&self.group.group, &self.group.file) {
            (Some(n), _) => catalog_load(n).map_err(err),
            (None, Some(p)) => load_spec_file(Path::new(p)).map_err(err),
            (None, None) => Err("one of --group or --file is required".into()),
        }
    }

    fn load(&self) -> Result<LoadedGroup, String> {
        LoadedGroup::new(self.entry()?, self.caps.elements).map_err(err)
    }

    fn aut(&self, lg: &LoadedGroup) -> Result<AutGroup, String> {
        lg.automorphisms(self.caps.aut, DEFAULT_SEARCH_LIMIT)
            .map_err(err)
    }

    fn inputs(&self, extra: Value) -> Value {
        let mut v = json!({ "group": self.name() });
        if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
            m.extend(e);
        }
        v
    }
}

fn outcome(inputs: Value, ok: bool, certificate: Value, summary: Vec<String>) -> Outcome {
    Outcome {
        inputs,
        verdict: if ok {
            Verdict::Verified
        } else {
            Verdict::Refuted
        },
        certificate,
        summary,
    }
}

fn subgroups(lg: &LoadedGroup, pair: &PairArg) -> Result<(Subgroup, Subgroup), String> {
    Ok((
        lg.subgroup(&pair.a).map_err(err)?,
        lg.subgroup(&pair.b).map_err(err)?,
    ))
}

fn pair_inputs(pair: &PairArg) -> Value {
    json!({ "A": pair.a, "B": pair.b })
}

/// Subgroup as a permutation group in the group's own action.
fn as_perm_group(lg: &LoadedGroup, sub: &Subgroup) -> Result<PermutationGroup, String> {
    let gens: Vec<Permutation> = sub
        .generators()
        .iter()
        .map(|&i| lg.table.element(i).clone())
        .collect();
    PermutationGroup::new(lg.entry.degree, gens).map_err(err)
}

fn parse_set(text: &str) -> Result<Vec<u32>, String> {
    serde_json::from_str(text).map_err(|e| format!("bad point set: {e}"))
}

fn parse_multiset(text: &str) -> Result<SparseMultiset, String> {
    serde_json::from_str(text).map_err(|e| format!("bad multiset: {e}"))
}

pub fn run(cli: &Cli) -> CmdResult {
    let caps = || Caps::new(cli.cap);
    match &cli.command {
        Command::Group(cmd) => match cmd {
            GroupCmd::Info(g) => group_info(&Ctx {
                caps: caps(),
                group: g,
            }),
            GroupCmd::Classes(g) => group_classes(&Ctx {
                caps: caps(),
                group: g,
            }),
            GroupCmd::Aut(g) => group_aut(&Ctx {
                caps: caps(),
                group: g,
            }),
        },
        Command::Chartab(ChartabCmd::Compute(g)) => chartab(&Ctx {
            caps: caps(),
            group: g,
        }),
        Command::Spreading(cmd) => match cmd {
            SpreadingCmd::VerifyWitness {
                group,
                witness,
                set,
                multiset,
                diagonal,
            } => verify(
                &Ctx {
                    caps: caps(),
                    group,
                },
                witness.as_deref(),
                set.as_deref(),
                multiset.as_deref(),
                *diagonal,
            ),
            SpreadingCmd::AbCheck {
                group,
                pair,
                omega1,
                set,
            } => ab_check(
                &Ctx {
                    caps: caps(),
                    group,
                },
                pair,
                *omega1,
                set,
            ),
            SpreadingCmd::DiagonalWitness { group, pair } => diagonal(
                &Ctx {
                    caps: caps(),
                    group,
                },
                pair,
            ),
            SpreadingCmd::Supplement { group, pair, scope } => supplement(
                &Ctx {
                    caps: caps(),
                    group,
                },
                pair,
                *scope,
            ),
            SpreadingCmd::CharWitness { group, r, s1, s2 } => char_witness(
                &Ctx {
                    caps: caps(),
                    group,
                },
                r,
                s1,
                s2,
            ),
            SpreadingCmd::CharSearch(g) => char_search(&Ctx {
                caps: caps(),
                group: g,
            }),
        },
        Command::Orbits(OrbitsCmd::Count { group, pair }) => orbits(
            &Ctx {
                caps: caps(),
                group,
            },
            pair,
        ),
        Command::Basesize(BasesizeCmd::TwoCheck { group, a }) => two_check(
            &Ctx {
                caps: caps(),
                group,
            },
            a,
        ),
    }
}

fn group_info(ctx: &Ctx) -> CmdResult {
    let entry = ctx.entry()?;
    let g = entry.group().map_err(err)?;
    let order = g.order();
    let mut named = serde_json::Map::new();
    if order <= ctx.caps.elements as u128 {
        let lg = LoadedGroup::new(entry.clone(), ctx.caps.elements).map_err(err)?;
        for name in entry.subgroups.keys() {
            let sub = lg.subgroup(name).map_err(err)?;
            named.insert(name.clone(), json!(sub.order()));
        }
    }
    let mut summary = vec![
        format!("group: {}", entry.name),
        format!("degree: {}", entry.degree),
        format!("order: {order}"),
        format!("transitive: {}", g.is_transitive()),
    ];
    for (k, v) in &named {
        summary.push(format!("subgroup {k}: order {v}"));
    }
    let cert = json!({
        "name": entry.name,
        "degree": entry.degree,
        "order": order,
        "known_order": entry.known_order,
        "transitive": g.is_transitive(),
        "generators": entry.generators.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "subgroups": named,
    });
    Ok(outcome(ctx.inputs(json!({})), true, cert, summary))
}

fn group_classes(ctx: &Ctx) -> CmdResult {
    let lg = ctx.load()?;
    let t = &lg.table;
    let classes: Vec<Value> = t
        .classes()
        .iter()
        .enumerate()
        .map(|(c, cl)| {
            json!({
                "label": t.class_label(c),
                "order": t.class_order(c),
                "size": cl.size,
                "representative": t.element(cl.representative).to_string(),
            })
        })
        .collect();
    let summary = classes
        .iter()
        .map(|c| {
            format!(
                "{:>5}  size {:>6}  {}",
                c["label"].as_str().unwrap_or(""),
                c["size"],
                c["representative"].as_str().unwrap_or("")
            )
        })
        .collect();
    let cert = json!({ "order": t.size(), "classes": classes });
    Ok(outcome(ctx.inputs(json!({})), true, cert, summary))
}

fn group_aut(ctx: &Ctx) -> CmdResult {
    let lg = ctx.load()?;
    let aut = ctx.aut(&lg)?;
    let t = &lg.table;
    let reps: Vec<Vec<String>> = aut
        .outer_reps()
        .iter()
        .map(|a| {
            t.generators()
                .iter()
                .map(|&g| t.element(a.apply(g)).to_string())
                .collect()
        })
        .collect();
    let orbits = aut_orbits_on_classes(t, aut.generators());
    let fused: Vec<Vec<&str>> = orbits
        .iter()
        .filter(|o| o.len() > 1)
        .map(|o| o.iter().map(|&c| t.class_label(c)).collect())
        .collect();
    let summary = vec![
        format!("|Aut| = {}", aut.order()),
        format!("|Inn| = {}", aut.inner_order()),
        format!("|Out| = {}", aut.out_order()),
        format!("fused classes: {fused:?}"),
    ];
    let cert = json!({
        "order": aut.order(),
        "inner_order": aut.inner_order(),
        "out_order": aut.out_order(),
        "outer_reps_on_generators": reps,
        "fused_classes": fused,
    });
    Ok(outcome(ctx.inputs(json!({})), true, cert, summary))
}

fn character_table(ctx: &Ctx, lg: &LoadedGroup) -> Result<CharacterTable, String> {
    dixon_character_table(&lg.table, ctx.caps.classes).map_err(err)
}

fn chartab(ctx: &Ctx) -> CmdResult {
    let lg = ctx.load()?;
    let ct = character_table(ctx, &lg)?;
    let checks = [
        ("row_orthogonality", ct.check_row_orthogonality()),
        ("column_orthogonality", ct.check_column_orthogonality()),
        ("degree_sum", ct.check_degree_sum()),
        ("class_algebra", ct.check_class_algebra(&lg.table, None)),
    ];
    let ok = checks.iter().all(|(_, r)| r.is_ok());
    let mut summary: Vec<String> = ct.render().lines().map(str::to_string).collect();
    let mut results = serde_json::Map::new();
    for (name, r) in &checks {
        let status = match r {
            Ok(()) => "ok".to_string(),
            Err(e) => e.to_string(),
        };
        summary.push(format!("{name}: {status}"));
        results.insert(name.to_string(), json!(status));
    }
    let cert = json!({ "table": to_value(&ct), "checks": results });
    Ok(outcome(ctx.inputs(json!({})), ok, cert, summary))
}

fn witness_summary(check: &WitnessCheck) -> Vec<String> {
    match check {
        WitnessCheck::Verified(w) => vec![
            format!("X = {:?}", w.set),
            format!("|J| = {}", w.multiset.cardinality()),
            format!("constant = {} over {} images", w.constant, w.images_checked),
        ],
        WitnessCheck::Refuted(r) => vec![
            format!("violation: {:?}", r.violation),
            format!("counterexample: {}", to_value(&r.counterexample)),
        ],
    }
}

fn verify(
    ctx: &Ctx,
    file: Option<&Path>,
    set: Option<&str>,
    multiset: Option<&str>,
    on_diagonal: bool,
) -> CmdResult {
    let (x, j) = match (file, set, multiset) {
        (Some(path), _, _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| format!("bad witness: {e}"))?;
            let x: Vec<u32> = serde_json::from_value(v["set"].clone())
                .map_err(|e| format!("bad witness set: {e}"))?;
            let j: SparseMultiset = serde_json::from_value(v["multiset"].clone())
                .map_err(|e| format!("bad witness multiset: {e}"))?;
            (x, j)
        }
        (None, Some(s), Some(m)) => (parse_set(s)?, parse_multiset(m)?),
        _ => return Err("give --witness FILE or both --set and --multiset".into()),
    };
    let entry = ctx.entry()?;
    let (g, name) = if on_diagonal {
        let lg = LoadedGroup::new(entry, ctx.caps.elements).map_err(err)?;
        let aut = ctx.aut(&lg)?;
        let w = DiagonalGroup::build(&lg.table, &aut, ctx.caps.diagonal).map_err(err)?;
        (w.group().clone(), format!("W({})", lg.entry.name))
    } else {
        (entry.group().map_err(err)?, entry.name.clone())
    };
    let jm = j.resolve(g.degree()).map_err(err)?;
    let check = verify_witness(&g, &name, &x, &jm, ctx.caps.set_orbit).map_err(err)?;
    let inputs =
        ctx.inputs(json!({ "set": x, "multiset": to_value(&jm), "diagonal": on_diagonal }));
    let summary = witness_summary(&check);
    Ok(outcome(
        inputs,
        check.is_verified(),
        to_value(&check),
        summary,
    ))
}

fn ab_summary(out: &AbOutcome) -> Vec<String> {
    match out {
        AbOutcome::Witness(w) => {
            let mut s = vec![
                format!("k = {}", w.k),
                format!(
                    "|omega1^A| = {}, |omega1^B| = {}",
                    w.a_orbit.len(),
                    w.b_orbit.len()
                ),
                format!("|Delta| = {} in {} A-orbits", w.delta_size, w.delta_orbits),
            ];
            s.extend(witness_summary(&WitnessCheck::Verified(w.witness.clone())));
            s
        }
        AbOutcome::Failure(f) => vec![format!("failure: {}", to_value(f))],
    }
}

fn ab_check(ctx: &Ctx, pair: &PairArg, omega1: usize, set: &str) -> CmdResult {
    let lg = ctx.load()?;
    let (a, b) = subgroups(&lg, pair)?;
    let x = parse_set(set)?;
    let g = lg.entry.group().map_err(err)?;
    let out = ab_lemma_check(
        &g,
        &lg.entry.name,
        &as_perm_group(&lg, &a)?,
        &as_perm_group(&lg, &b)?,
        omega1,
        &x,
        ctx.caps.set_orbit,
    )
    .map_err(err)?;
    let mut inputs = pair_inputs(pair);
    inputs["omega1"] = json!(omega1);
    inputs["set"] = json!(x);
    Ok(outcome(
        ctx.inputs(inputs),
        out.witness().is_some(),
        to_value(&out),
        ab_summary(&out),
    ))
}

fn diagonal(ctx: &Ctx, pair: &PairArg) -> CmdResult {
    let lg = ctx.load()?;
    let (a, b) = subgroups(&lg, pair)?;
    let aut = ctx.aut(&lg)?;
    let dw = diagonal_witness(
        &lg.table,
        &aut,
        &a,
        &b,
        ctx.caps.diagonal,
        ctx.caps.set_orbit,
    )
    .map_err(err)?;
    let mut summary = vec![
        format!(
            "{}: order {}, degree {}",
            dw.group, dw.group_order, dw.degree
        ),
        format!("|A| = {}, |B| = {}", a.order(), b.order()),
    ];
    summary.extend(ab_summary(&dw.outcome));
    Ok(outcome(
        ctx.inputs(pair_inputs(pair)),
        dw.outcome.witness().is_some(),
        to_value(&dw),
        summary,
    ))
}

fn supplement(ctx: &Ctx, pair: &PairArg, scope: ScopeArg) -> CmdResult {
    let lg = ctx.load()?;
    let (a, b) = subgroups(&lg, pair)?;
    let aut = match scope {
        ScopeArg::T => None,
        ScopeArg::Aut => Some(ctx.aut(&lg)?),
    };
    let sc = match &aut {
        None => Scope::Inner,
        Some(aut) => Scope::Full(aut),
    };
    let report = supplement_property(&lg.table, &a, &b, sc).map_err(err)?;
    let mut cert = to_value(&report);
    let mut summary = vec![
        format!(
            "|A| = {}, |B| = {}",
            report.subgroup_order, report.normal_order
        ),
        format!("holds: {}", report.holds),
    ];
    if let Some(f) = &report.failing {
        let t = lg.table.element(f.t).to_string();
        summary.push(format!(
            "failing t = {t} (outer {}): |A ∩ A^tau| = {}, |B (A ∩ A^tau)| = {}",
            f.outer, f.intersection_order, f.product_order
        ));
        cert["failing"]["t_permutation"] = json!(t);
        cert["failing"]["rechecked"] = json!(f.recheck(&lg.table, &a, &b, aut.as_ref()));
    }
    let mut inputs = pair_inputs(pair);
    inputs["scope"] = json!(match scope {
        ScopeArg::T => "T",
        ScopeArg::Aut => "Aut",
    });
    Ok(outcome(ctx.inputs(inputs), report.holds, cert, summary))
}

fn char_witness(ctx: &Ctx, r: &str, s1: &str, s2: &str) -> CmdResult {
    let lg = ctx.load()?;
    let t = &lg.table;
    let class = |l: &str| {
        t.class_by_label(l)
            .ok_or_else(|| format!("no class labelled {l:?} in {}", lg.entry.name))
    };
    let (rc, c1, c2) = (class(r)?, class(s1)?, class(s2)?);
    let ct = character_table(ctx, &lg)?;
    let aut = ctx.aut(&lg)?;
    let orbits = aut_orbits_on_classes(t, aut.generators());
    let inputs = ctx.inputs(json!({ "r": r, "s1": s1, "s2": s2 }));
    match lemma25_check(t, &ct, &orbits, rc, c1, c2).map_err(err)? {
        CharCheck::Passed(spec) => {
            let w = DiagonalGroup::build(t, &aut, ctx.caps.diagonal).map_err(err)?;
            let name = format!("W({})", lg.entry.name);
            let wit = char_witness_validate(t, w.group(), &name, &spec, ctx.caps.set_orbit)
                .map_err(err)?;
            let mut summary = vec![format!(
                "characters separating {s1} and {s2}: {:?}, all vanishing on {r}",
                spec.separating
            )];
            summary.extend(witness_summary(&WitnessCheck::Verified(wit.clone())));
            let cert = json!({ "classes": to_value(&spec), "witness": to_value(&wit) });
            Ok(outcome(inputs, true, cert, summary))
        }
        CharCheck::Refuted(why) => {
            let summary = vec![format!("refuted: {}", to_value(&why))];
            Ok(outcome(inputs, false, to_value(&why), summary))
        }
    }
}

fn char_search(ctx: &Ctx) -> CmdResult {
    let lg = ctx.load()?;
    let ct = character_table(ctx, &lg)?;
    let aut = ctx.aut(&lg)?;
    let orbits = aut_orbits_on_classes(&lg.table, aut.generators());
    let found = lemma25_search(&lg.table, &ct, &orbits).map_err(err)?;
    let mut summary: Vec<String> = found
        .iter()
        .map(|s| {
            format!(
                "r = {}, s1 = {}, s2 = {}",
                s.r_label, s.s1_label, s.s2_label
            )
        })
        .collect();
    summary.push(format!("{} triple(s) found", found.len()));
    Ok(outcome(
        ctx.inputs(json!({})),
        !found.is_empty(),
        json!({ "triples": to_value(&found) }),
        summary,
    ))
}

fn orbits(ctx: &Ctx, pair: &PairArg) -> CmdResult {
    let lg = ctx.load()?;
    let (a, b) = subgroups(&lg, pair)?;
    let counts = orbit_count_pair(&lg.table, &a, &b).map_err(err)?;
    let summary = vec![
        format!("|T : A| = {}", counts.degree),
        format!("A-orbits: {} {:?}", counts.c_a, counts.a_orbit_sizes),
        format!("B-orbits: {} {:?}", counts.c_b, counts.b_orbit_sizes),
        format!("<pi, pi> = {}", counts.rank),
    ];
    Ok(outcome(
        ctx.inputs(pair_inputs(pair)),
        counts.c_a == counts.c_b,
        to_value(&counts),
        summary,
    ))
}

fn two_check(ctx: &Ctx, a_name: &str) -> CmdResult {
    let lg = ctx.load()?;
    let a = lg.subgroup(a_name).map_err(err)?;
    let found = two_point_stabilizer_trivial(&lg.table, &a);
    let inputs = ctx.inputs(json!({ "A": a_name }));
    Ok(match found {
        Some(t) => {
            let p = lg.table.element(t).to_string();
            outcome(
                inputs,
                true,
                json!({ "t": t, "t_permutation": p }),
                vec![format!("A ∩ A^t = 1 for t = {p}")],
            )
        }
        None => outcome(
            inputs,
            false,
            json!({ "t": null }),
            vec!["every two-point stabilizer A ∩ A^t is nontrivial".into()],
        ),
    })
}
