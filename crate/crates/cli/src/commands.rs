use fusionsharp::fplin::{chop_simples, FpGroupRep};
use fusionsharp::fusion::{check_saturation, FusionSystem};
use fusionsharp::hlim::higher_limits;
use fusionsharp::mackey::{verify_axioms, AxiomFailure, SqvFunctor, TruncationReading};
use fusionsharp::pgroup::{PcGroup, Subgroup};
use fusionsharp::sharp::{essential_constraints, scan, validate_lemmas, LemmaConfig, ModuleMode, ScanConfig};
use fusionsharp::Result;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Budgets;

pub struct Outcome {
    pub passed: bool,
    pub summary: Vec<String>,
    pub result: Value,
}

fn exps(g: &PcGroup, s: &Subgroup) -> Vec<Vec<u32>> {
    s.gens().iter().map(|&x| g.exponents(x)).collect()
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn simples(f: &FusionSystem, q: &Subgroup, seed: u64) -> Result<Vec<FpGroupRep>> {
    let out = f.automizer(q)?.out().clone();
    Ok(chop_simples(&FpGroupRep::regular(out, f.group().prime()), seed)?.simples)
}

/// Fully normalized representatives of the `F`-classes of `subs`.
fn class_reps(f: &FusionSystem, subs: &[Subgroup]) -> Result<Vec<Subgroup>> {
    f.classes(subs)?.iter().map(|c| f.fully_normalized_rep(&c[0])).collect()
}

pub fn group_inspect(f: &FusionSystem, budgets: &Budgets) -> Result<Outcome> {
    let g = f.group();
    let data = g.central_series();
    let summary = data.summary();
    let gamma1 = data.gamma1.as_ref();
    let gamma1_extraspecial = gamma1.map(|h| g.is_extraspecial(h));
    let gamma1_center_is_center = gamma1.map(|h| g.center(h) == g.center(&g.whole()));
    let maximal = g.all_subgroups(Some(g.order() as usize / g.prime() as usize), budgets.subgroup_limit)?;
    let meet = if maximal.len() >= 2 && g.rank() >= 2 {
        let gamma2 = data.gamma(2);
        let mut all = true;
        for (i, a) in maximal.iter().enumerate() {
            for b in &maximal[i + 1..] {
                all &= g.intersection(a, b) == *gamma2;
            }
        }
        Some(all)
    } else {
        None
    };
    let mut lines = vec![
        format!("order {}^{}", g.prime(), g.rank()),
        format!("nilpotency class {}", data.nilpotency_class),
        format!("maximal class {}", data.maximal_class),
    ];
    if let Some(e) = data.exceptional {
        lines.push(format!("exceptional {e}"));
    }
    if let (Some(h), Some(x)) = (gamma1, gamma1_extraspecial) {
        lines.push(format!("gamma_1 of order {}^{}, extraspecial {x}", g.prime(), h.log_order()));
    }
    if let Some(m) = meet {
        lines.push(format!("distinct maximal subgroups meet in gamma_2: {m}"));
    }
    Ok(Outcome {
        passed: true,
        summary: lines,
        result: json!({
            "prime": g.prime(),
            "series": to_value(&summary),
            "gamma1_extraspecial": gamma1_extraspecial,
            "gamma1_center_is_center": gamma1_center_is_center,
            "maximal_subgroups": maximal.len(),
            "maximal_subgroups_meet_in_gamma2": meet,
        }),
    })
}

pub fn fusion_build(f: &FusionSystem, budgets: &Budgets) -> Result<Outcome> {
    let saturation = check_saturation(f, budgets.subgroup_limit)?;
    let subs = f.lattice(budgets.subgroup_limit)?;
    let classes = f.classes(&subs)?;
    let centric = f.centric_collection(&subs)?;
    let essentials = f.essentials(&subs)?;
    Ok(Outcome {
        passed: saturation.passed(),
        summary: vec![
            format!("mode {}", f.mode_name()),
            format!("saturation {:?}", saturation.status),
            format!("{} subgroups in {} classes, {} centric, {} essential", subs.len(), classes.len(), centric.len(), essentials.len()),
        ],
        result: json!({
            "mode": f.mode_name(),
            "saturation": to_value(&saturation),
            "subgroups": subs.len(),
            "classes": classes.len(),
            "centric": centric.len(),
            "essentials": essentials.len(),
        }),
    })
}

pub fn fusion_centrics(f: &FusionSystem, budgets: &Budgets) -> Result<Outcome> {
    let g = f.group();
    let subs = f.lattice(budgets.subgroup_limit)?;
    let centric = f.centric_collection(&subs)?;
    let reps = class_reps(f, &centric)?;
    let mut entries = Vec::new();
    for r in &reps {
        entries.push(json!({
            "subgroup": exps(g, r),
            "order_log": r.log_order(),
            "out_order": f.automizer(r)?.out().order(),
        }));
    }
    Ok(Outcome {
        passed: true,
        summary: vec![format!("{} centric subgroups in {} classes", centric.len(), reps.len())],
        result: json!({ "centric": centric.len(), "classes": entries }),
    })
}

pub fn fusion_essentials(f: &FusionSystem, budgets: &Budgets) -> Result<Outcome> {
    let subs = f.lattice(budgets.subgroup_limit)?;
    let report = essential_constraints(f, &subs)?;
    let mut summary = vec![format!("{} essential subgroups", report.essentials.len())];
    if report.applicable {
        summary.push(format!("order constraint violations {}", report.violations));
    } else {
        summary.push("order constraint not applicable (not of maximal class with order at least p^4)".into());
    }
    Ok(Outcome { passed: report.passed(), summary, result: to_value(&report) })
}

#[derive(Serialize)]
struct MackeyEntry {
    q: Vec<Vec<u32>>,
    v_index: usize,
    v_dim: usize,
    objects: usize,
    isomorphism_checks: usize,
    triples: usize,
    failure_count: usize,
    failures: Vec<AxiomFailure>,
}

pub fn mackey_verify(f: &FusionSystem, budgets: &Budgets, seed: u64, centric_only: bool, reading: TruncationReading) -> Result<Outcome> {
    let g = f.group();
    let subs = f.lattice(budgets.subgroup_limit)?;
    let x = if centric_only { f.centric_collection(&subs)? } else { subs.clone() };
    let mut entries = Vec::new();
    let (mut triples, mut failures) = (0, 0);
    for q in class_reps(f, &subs)? {
        for (v_index, v) in simples(f, &q, seed)?.into_iter().enumerate() {
            let v_dim = v.dim();
            let m = SqvFunctor::new(f, &q, v)?;
            let report = verify_axioms(&m, &x, reading)?;
            triples += report.triples;
            failures += report.failures.len();
            entries.push(MackeyEntry {
                q: exps(g, &q),
                v_index,
                v_dim,
                objects: report.objects,
                isomorphism_checks: report.isomorphism_checks,
                triples: report.triples,
                failure_count: report.failures.len(),
                failures: report.failures.into_iter().take(10).collect(),
            });
        }
    }
    Ok(Outcome {
        passed: failures == 0,
        summary: vec![
            format!("{} functors on {} objects", entries.len(), x.len()),
            format!("{triples} double coset triples, {failures} failures"),
        ],
        result: json!({ "reading": to_value(&reading), "functors": to_value(&entries) }),
    })
}

pub fn scan_config(budgets: &Budgets, seed: u64, sample: Option<f64>, modules: ModuleMode, list_all: bool) -> ScanConfig {
    ScanConfig { subgroup_limit: budgets.subgroup_limit, seed, sample, modules, list_all, max_positions: budgets.max_tuples }
}

pub fn sharp_scan(f: &FusionSystem, config: &ScanConfig) -> Result<Outcome> {
    let report = scan(f, config)?;
    let s = &report.summary;
    let mut summary = vec![
        format!("{} non-centric classes, {} modules, {} centric subgroups, {} pairs", s.q_classes, s.modules, s.centric, s.pairs),
        format!("evaluated {} of {} tuples (coverage {:.6})", s.evaluated, s.total, s.coverage),
        format!("zero {}, nonzero {}, with a vanishing value {}", s.zero, s.nonzero, s.vanishing_value),
    ];
    if s.partial {
        summary.push("partial: stopped at the tuple bound".into());
    }
    Ok(Outcome { passed: report.passed(), summary, result: to_value(&report) })
}

pub fn sharp_lemmas(f: &FusionSystem, budgets: &Budgets, seed: u64, scan_config: &ScanConfig) -> Result<Outcome> {
    let s = scan(f, scan_config)?;
    let config = LemmaConfig { subgroup_limit: budgets.subgroup_limit, seed, ..Default::default() };
    let report = validate_lemmas(f, &config, Some(&s))?;
    let mut summary: Vec<String> = report
        .checks
        .iter()
        .map(|c| {
            if c.skipped {
                format!("{}: skipped", c.name)
            } else {
                format!("{}: {} instances, {} failures", c.name, c.instances, c.failures)
            }
        })
        .collect();
    summary.push(format!("nonzero tuples examined {}, property violations {}", report.nonzero_tuples_examined, report.violations.len()));
    Ok(Outcome { passed: report.passed(), summary, result: to_value(&report) })
}

pub fn hlim_compute(f: &FusionSystem, budgets: &Budgets, seed: u64, degrees: usize, include_centric: bool, scan_config: &ScanConfig) -> Result<Outcome> {
    let g = f.group();
    let composition_zero = scan(f, scan_config)?.passed();
    let subs = f.lattice(budgets.subgroup_limit)?;
    let mut entries = Vec::new();
    let mut passed = true;
    let mut nonvanishing = 0;
    for q in class_reps(f, &subs)? {
        let centric = f.is_centric(&q)?;
        if centric && !include_centric {
            continue;
        }
        for (v_index, v) in simples(f, &q, seed)?.into_iter().enumerate() {
            let v_dim = v.dim();
            let m = SqvFunctor::new(f, &q, v)?;
            let report = higher_limits(f, &m, budgets.subgroup_limit, degrees, budgets.chain_limit, Some(composition_zero))?;
            if !centric && !report.higher_vanish() {
                passed = false;
                nonvanishing += 1;
            }
            entries.push(json!({
                "q": exps(g, &q),
                "q_centric": centric,
                "v_index": v_index,
                "v_dim": v_dim,
                "report": to_value(&report),
            }));
        }
    }
    Ok(Outcome {
        passed,
        summary: vec![
            format!("{} functors, degrees 0..{}", entries.len(), degrees),
            format!("composition scan zero: {composition_zero}"),
            format!("non-centric functors with a nonzero higher limit: {nonvanishing}"),
        ],
        result: json!({ "composition_zero": composition_zero, "functors": entries }),
    })
}
