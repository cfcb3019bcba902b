use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fplin::{chop_simples, FpGroupRep};
use crate::fusion::FusionSystem;
use crate::mackey::SqvFunctor;
use crate::pgroup::Subgroup;

use super::{exps, FusionSummary};

/// Which `Out_F(Q)`-modules the scan runs over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleMode {
    /// The simple modules.
    #[default]
    Simple,
    /// The regular module (not simple in general).
    Regular,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ScanConfig {
    pub subgroup_limit: usize,
    pub seed: u64,
    /// Fraction of tuples evaluated; `None` evaluates all of them.
    pub sample: Option<f64>,
    pub modules: ModuleMode,
    /// List every evaluated tuple, not only those whose composite has nonzero source, middle and target.
    pub list_all: bool,
    /// Only tuple positions below this bound are evaluated; the report is then marked partial.
    pub max_positions: Option<u64>,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { subgroup_limit: 1_000_000, seed: 0, sample: None, modules: ModuleMode::Simple, list_all: false, max_positions: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Zero,
    Nonzero,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanTuple {
    pub q: Vec<Vec<u32>>,
    pub module: ModuleMode,
    pub v_index: usize,
    pub v_dim: usize,
    pub p: Vec<Vec<u32>>,
    pub r: Vec<Vec<u32>>,
    pub t: Vec<Vec<u32>>,
    /// Dimensions of the values at `P`, `T` and `R`.
    pub dims: [usize; 3],
    pub rank: usize,
    pub verdict: Verdict,
    pub annotations: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct ScanSummary {
    /// Size of the whole tuple space.
    pub total: u64,
    pub evaluated: u64,
    pub zero: u64,
    pub nonzero: u64,
    /// Evaluated tuples where one of the values at `P`, `T`, `R` is zero.
    pub vanishing_value: u64,
    /// Tuples not evaluated (sampling or position bound).
    pub skipped: u64,
    pub listed: u64,
    pub q_classes: usize,
    pub modules: usize,
    pub centric: usize,
    pub pairs: usize,
    pub coverage: f64,
    pub partial: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub fusion: FusionSummary,
    pub config: ScanConfig,
    pub summary: ScanSummary,
    pub tuples: Vec<ScanTuple>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.summary.nonzero == 0
    }
}

struct Task {
    q: Subgroup,
    v_index: usize,
    module: FpGroupRep,
}

#[derive(Default)]
struct TaskResult {
    evaluated: u64,
    zero: u64,
    nonzero: u64,
    vanishing_value: u64,
    skipped: u64,
    tuples: Vec<(usize, ScanTuple)>,
}

/// Centric pairs `(P, R)` with non-centric `T = P ∩ R`, ordered by `(T, P, R)`.
pub(crate) fn centric_pairs(f: &FusionSystem, centric: &[Subgroup]) -> Vec<(Subgroup, usize, usize)> {
    let g = f.group();
    let cset: HashSet<&Subgroup> = centric.iter().collect();
    let mut pairs = Vec::new();
    for (i, p) in centric.iter().enumerate() {
        for (j, r) in centric.iter().enumerate() {
            let t = g.intersection(p, r);
            if !cset.contains(&t) {
                pairs.push((t, i, j));
            }
        }
    }
    pairs.sort();
    pairs
}

/// Non-centric `F`-class representatives (fully normalized) among `subs`.
pub(crate) fn noncentric_reps(f: &FusionSystem, subs: &[Subgroup]) -> Result<Vec<Subgroup>> {
    let g = f.group();
    let mut reps = Vec::new();
    for class in f.classes(subs)? {
        if !class.iter().all(|q| g.centralizer(q).is_subgroup_of(q)) {
            reps.push(f.fully_normalized_rep(&class[0])?);
        }
    }
    Ok(reps)
}

pub(crate) fn modules_for(f: &FusionSystem, q: &Subgroup, mode: ModuleMode, seed: u64) -> Result<Vec<FpGroupRep>> {
    let out = f.automizer(q)?.out().clone();
    let regular = FpGroupRep::regular(out, f.group().prime());
    Ok(match mode {
        ModuleMode::Simple => chop_simples(&regular, seed)?.simples,
        ModuleMode::Regular => vec![regular],
    })
}

/// Evaluates `Ind_T^R ∘ Res_T^P` for every non-centric `Q`-class, module `V`, and centric
/// pair `(P, R)` whose intersection `T` is not centric.
pub fn scan(f: &FusionSystem, config: &ScanConfig) -> Result<ScanReport> {
    if let Some(s) = config.sample {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::input(format!("sample fraction {s} outside (0, 1]")));
        }
    }
    let g = f.group();
    if g.prime() == 2 {
        return Err(Error::input("the scan needs an odd prime"));
    }
    let fusion = FusionSummary::of(f, config.subgroup_limit)?;
    let subs = f.lattice(config.subgroup_limit)?;
    let centric = f.centric_collection(&subs)?;
    let pairs = centric_pairs(f, &centric);
    let qs = noncentric_reps(f, &subs)?;
    let mut tasks = Vec::new();
    for q in &qs {
        f.isos_from(q)?;
        for (v_index, module) in modules_for(f, q, config.modules, config.seed)?.into_iter().enumerate() {
            tasks.push(Task { q: q.clone(), v_index, module });
        }
    }
    let n_tasks = tasks.len() as u64;
    let results: Vec<Result<TaskResult>> = tasks
        .par_iter()
        .enumerate()
        .map(|(idx, task)| run_task(f, config, &centric, &pairs, idx as u64, n_tasks, task))
        .collect();
    let mut summary = ScanSummary {
        total: n_tasks * pairs.len() as u64,
        q_classes: qs.len(),
        modules: tasks.len(),
        centric: centric.len(),
        pairs: pairs.len(),
        ..Default::default()
    };
    let mut tuples = Vec::new();
    for r in results {
        let r = r?;
        summary.evaluated += r.evaluated;
        summary.zero += r.zero;
        summary.nonzero += r.nonzero;
        summary.vanishing_value += r.vanishing_value;
        summary.skipped += r.skipped;
        tuples.extend(r.tuples);
    }
    tuples.sort_by_key(|(pos, _)| *pos);
    summary.listed = tuples.len() as u64;
    summary.coverage = if summary.total == 0 { 1.0 } else { summary.evaluated as f64 / summary.total as f64 };
    summary.partial = config.max_positions.is_some_and(|m| m < summary.total);
    Ok(ScanReport { fusion, config: config.clone(), summary, tuples: tuples.into_iter().map(|(_, t)| t).collect() })
}

fn run_task(
    f: &FusionSystem,
    config: &ScanConfig,
    centric: &[Subgroup],
    pairs: &[(Subgroup, usize, usize)],
    idx: u64,
    n_tasks: u64,
    task: &Task,
) -> Result<TaskResult> {
    let g = f.group();
    let m = SqvFunctor::new(f, &task.q, task.module.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(idx);
    let mut out = TaskResult::default();
    for (k, (t, i, j)) in pairs.iter().enumerate() {
        let pos = k as u64 * n_tasks + idx;
        let draw: f64 = rng.gen();
        if config.max_positions.is_some_and(|mx| pos >= mx) || config.sample.is_some_and(|s| draw >= s) {
            out.skipped += 1;
            continue;
        }
        let (p, r) = (&centric[*i], &centric[*j]);
        let dims = [m.dim(p)?, m.dim(t)?, m.dim(r)?];
        let mut rank = 0;
        if dims.iter().all(|&d| d > 0) {
            rank = (&*m.ind(t, r)? * &*m.res(t, p)?).rank();
        } else {
            out.vanishing_value += 1;
        }
        out.evaluated += 1;
        let verdict = if rank == 0 { Verdict::Zero } else { Verdict::Nonzero };
        match verdict {
            Verdict::Zero => out.zero += 1,
            Verdict::Nonzero => out.nonzero += 1,
        }
        if config.list_all || dims.iter().all(|&d| d > 0) || verdict == Verdict::Nonzero {
            out.tuples.push((
                pos as usize,
                ScanTuple {
                    q: exps(g, &task.q),
                    module: config.modules,
                    v_index: task.v_index,
                    v_dim: task.module.dim(),
                    p: exps(g, p),
                    r: exps(g, r),
                    t: exps(g, t),
                    dims,
                    rank,
                    verdict,
                    annotations: annotate(f, p, r, t),
                },
            ));
        }
    }
    Ok(out)
}

/// Structural features of the configuration `(P, R, T)`.
fn annotate(f: &FusionSystem, p: &Subgroup, r: &Subgroup, t: &Subgroup) -> Vec<String> {
    let g = f.group();
    let s = g.whole();
    let mut out = Vec::new();
    if g.is_abelian(t) {
        out.push("intersection_abelian".to_string());
    }
    if g.is_normal_in(t, p) && g.is_normal_in(t, r) {
        out.push("intersection_normal_in_both".to_string());
    }
    if g.is_normal_in(t, &s) {
        out.push("intersection_normal_in_s".to_string());
    }
    if g.centralizer(t).is_subgroup_of(t) {
        out.push("intersection_s_centric".to_string());
    }
    if g.is_abelian(p) || g.is_abelian(r) {
        out.push("abelian_centric_member".to_string());
    }
    out
}
