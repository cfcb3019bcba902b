use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fusion::FusionSystem;
use crate::mackey::SqvFunctor;
use crate::pgroup::Subgroup;

use super::scan::{modules_for, ModuleMode, ScanReport};
use super::{exps, FusionSummary};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LemmaConfig {
    pub subgroup_limit: usize,
    pub seed: u64,
    /// Checks over pairs of subgroups run only when `|S|` is at most this.
    pub pair_check_max_order: u32,
}

impl Default for LemmaConfig {
    fn default() -> Self {
        LemmaConfig { subgroup_limit: 1_000_000, seed: 0, pair_check_max_order: 243 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub name: String,
    pub instances: u64,
    pub failures: u64,
    pub skipped: bool,
    pub first_failure: Option<String>,
}

impl LemmaCheck {
    fn new(name: &str) -> Self {
        LemmaCheck { name: name.into(), instances: 0, failures: 0, skipped: false, first_failure: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(witness());
            }
        }
    }
}

/// A property that must hold for any tuple with nonzero composite, found false on such a tuple.
#[derive(Clone, Debug, Serialize)]
pub struct PropertyViolation {
    pub property: String,
    pub q: Vec<Vec<u32>>,
    pub p: Vec<Vec<u32>>,
    pub r: Vec<Vec<u32>>,
    pub t: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub fusion: FusionSummary,
    pub checks: Vec<LemmaCheck>,
    pub nonzero_tuples_examined: usize,
    pub violations: Vec<PropertyViolation>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0) && self.violations.is_empty()
    }

    pub fn check(&self, name: &str) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Properties forced on `(Q, P, R, T)` when `Ind_T^R Res_T^P` is nonzero for a non-centric `Q`.
pub fn configuration_properties(f: &FusionSystem, q: &Subgroup, p: &Subgroup, r: &Subgroup) -> Result<Vec<(String, bool)>> {
    let g = f.group();
    let s = g.whole();
    let t = g.intersection(p, r);
    let prime = g.prime() as usize;
    let mut out = vec![
        ("p_and_r_nonabelian".to_string(), !g.is_abelian(p) && !g.is_abelian(r)),
        ("center_in_intersection".to_string(), g.center(&s).is_subgroup_of(&t)),
        (
            "centralizers_in_intersection".to_string(),
            g.centralizer(p).is_subgroup_of(&t) && g.centralizer(r).is_subgroup_of(&t),
        ),
        ("intersection_order_at_least_p2".to_string(), t.order() >= prime * prime),
        ("intersection_not_s_centric".to_string(), !g.centralizer(&t).is_subgroup_of(&t)),
    ];
    if g.is_abelian(&t) {
        out.push(("abelian_intersection_conjugate_to_q".to_string(), f.is_f_conjugate(q, &t)?));
        if g.is_normal_in(&t, p) && g.is_normal_in(&t, r) {
            let self_centralizing = g.centralizer_in(p, &t) == t && g.centralizer_in(r, &t) == t;
            out.push(("abelian_normal_intersection_self_centralizing".to_string(), self_centralizing));
            let aut = f.automizer(&t)?;
            let classes = |u: &Subgroup| -> HashSet<Option<u32>> {
                u.elements().iter().map(|&x| aut.out_class_of_conj(g, x)).collect()
            };
            out.push(("distinct_outer_actions".to_string(), classes(p) != classes(r)));
        }
    }
    let data = g.central_series();
    if data.maximal_class && g.rank() >= 4 {
        let gamma1 = data.gamma1.as_ref().expect("rank at least 4");
        let c_z2 = data.c_z2.as_ref().expect("rank at least 4");
        out.push(("gamma1_nonabelian".to_string(), !g.is_abelian(gamma1)));
        out.push((
            "intersection_in_gamma1_or_c_z2".to_string(),
            t.is_subgroup_of(gamma1) || t.is_subgroup_of(c_z2),
        ));
        if g.is_normal_in(&t, &s) {
            out.push(("normal_intersection_in_lower_series".to_string(), data.lower.iter().skip(1).any(|h| *h == t)));
        }
    }
    Ok(out)
}

/// Direct checks of the unconditional statements on every class of `Q`, every simple module and
/// every subgroup; then the forced properties on each nonzero tuple of `scan`, if given.
pub fn validate_lemmas(f: &FusionSystem, config: &LemmaConfig, scan: Option<&ScanReport>) -> Result<LemmaReport> {
    let g = f.group();
    let fusion = FusionSummary::of(f, config.subgroup_limit)?;
    let subs = f.lattice(config.subgroup_limit)?;
    let pair_checks = g.order() <= config.pair_check_max_order;
    let show = |s: &Subgroup| format!("{:?}", exps(g, s));

    let mut summands = LemmaCheck::new("nonzero_summand_self_centralizing");
    let mut l_nonempty = LemmaCheck::new("nonzero_value_has_self_centralizing_conjugate");
    let mut l_conj = LemmaCheck::new("l_set_closed_under_conjugation");
    let mut l_restrict = LemmaCheck::new("l_set_restricts_to_intermediate_subgroups");
    let mut abelian = LemmaCheck::new("abelian_value_is_conjugate_of_q");
    let mut vanishing = LemmaCheck::new("trace_vanishes_beyond_self_centralizing");
    let mut nilpotent = LemmaCheck::new("trace_squares_to_zero");
    if !pair_checks {
        l_restrict.skipped = true;
        vanishing.skipped = true;
        nilpotent.skipped = true;
    }

    for class in f.classes(&subs)? {
        let q = f.fully_normalized_rep(&class[0])?;
        let q_centric = f.is_centric(&q)?;
        for v in modules_for(f, &q, ModuleMode::Simple, config.seed)? {
            let vdim = v.dim();
            let m = SqvFunctor::new(f, &q, v)?;
            for p in &subs {
                let value = m.value(p)?;
                for s in &value.summands {
                    if !s.space.is_zero() {
                        let ok = g.centralizer_in(p, &s.conjugate).is_subgroup_of(&s.conjugate);
                        summands.record(ok, || format!("P = {}, L = {}", show(p), show(&s.conjugate)));
                    }
                }
                let l_set = f.l_set(p, &q)?;
                if value.dim() > 0 {
                    l_nonempty.record(!l_set.is_empty(), || format!("Q = {}, P = {}", show(&q), show(p)));
                }
                let members: HashSet<&Subgroup> = l_set.iter().collect();
                for l in &l_set {
                    for &x in p.gens() {
                        let c = g.conjugate(l, x);
                        l_conj.record(members.contains(&c), || format!("P = {}, L = {}", show(p), show(l)));
                    }
                    if pair_checks {
                        for t in subs.iter().filter(|t| l.is_subgroup_of(t) && t.is_subgroup_of(p)) {
                            let ok = f.l_set(t, &q)?.contains(l);
                            l_restrict.record(ok, || format!("L = {}, T = {}, P = {}", show(l), show(t), show(p)));
                        }
                    }
                }
                if !q_centric && g.is_abelian(p) && value.dim() > 0 {
                    let ok = f.is_f_conjugate(&q, p)? && value.dim() == vdim;
                    abelian.record(ok, || format!("Q = {}, K = {}", show(&q), show(p)));
                }
            }
            if !pair_checks {
                continue;
            }
            for l in m.conjugates() {
                let n = g.normalizer(l);
                let above: Vec<&Subgroup> = subs.iter().filter(|k| l.is_subgroup_of(k)).collect();
                if !q_centric && g.is_abelian(l) {
                    for k in &above {
                        if l.order() < g.centralizer_in(k, l).order() {
                            let ok = m.ind(l, k)?.is_zero();
                            vanishing.record(ok, || format!("T = {}, K = {}", show(l), show(k)));
                        }
                    }
                }
                for k in above.iter().filter(|k| k.is_subgroup_of(&n) && **k != l) {
                    let tr = m.relative_trace(l, l, k)?;
                    nilpotent.record((&tr * &tr).is_zero(), || format!("L = {}, K = {}", show(l), show(k)));
                }
            }
        }
    }

    let mut violations = Vec::new();
    let mut examined = 0;
    if let Some(report) = scan {
        for tuple in report.tuples.iter().filter(|t| t.verdict == super::Verdict::Nonzero) {
            examined += 1;
            let parse = |v: &Vec<Vec<u32>>| -> Result<Subgroup> {
                let elems = v.iter().map(|e| g.from_exponents(e)).collect::<Result<Vec<_>>>()?;
                Ok(g.subgroup(&elems))
            };
            let (q, p, r) = (parse(&tuple.q)?, parse(&tuple.p)?, parse(&tuple.r)?);
            for (name, ok) in configuration_properties(f, &q, &p, &r)? {
                if !ok {
                    violations.push(PropertyViolation {
                        property: name,
                        q: tuple.q.clone(),
                        p: tuple.p.clone(),
                        r: tuple.r.clone(),
                        t: tuple.t.clone(),
                    });
                }
            }
        }
    }
    Ok(LemmaReport {
        fusion,
        checks: vec![summands, l_nonempty, l_conj, l_restrict, abelian, vanishing, nilpotent],
        nonzero_tuples_examined: examined,
        violations,
    })
}
