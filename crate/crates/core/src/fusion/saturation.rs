use std::collections::HashSet;

use serde::Serialize;

use crate::error::Result;
use crate::pgroup::{Elem, GroupMorphism, Subgroup};

use super::system::FusionSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SaturationStatus {
    /// Realized by a group (inner or ambient), so saturated without a check.
    ByConstruction,
    Saturated,
    Failed,
    /// Too large for the full check; results built on it are marked unvalidated.
    Unvalidated,
}

#[derive(Clone, Debug, Serialize)]
pub struct SaturationReport {
    pub status: SaturationStatus,
    pub note: String,
    /// Canonical generators (exponent vectors) of a subgroup where an axiom fails.
    pub witness: Option<Vec<Vec<u32>>>,
}

impl SaturationReport {
    pub fn passed(&self) -> bool {
        self.status != SaturationStatus::Failed
    }
}

/// Largest `|S|` exponent for which the axioms are checked exhaustively.
pub const FULL_CHECK_MAX_LOG: usize = 4;

/// Checks the fully automized and receptive axioms on every subgroup.
pub fn check_saturation(f: &FusionSystem, subgroup_limit: usize) -> Result<SaturationReport> {
    if f.saturated_by_construction() {
        return Ok(SaturationReport {
            status: SaturationStatus::ByConstruction,
            note: format!("{} fusion system is realized by a group; check skipped", f.mode_name()),
            witness: None,
        });
    }
    let g = f.group();
    if g.rank() > FULL_CHECK_MAX_LOG {
        return Ok(SaturationReport {
            status: SaturationStatus::Unvalidated,
            note: format!("|S| = p^{} exceeds the p^{FULL_CHECK_MAX_LOG} limit of the full check", g.rank()),
            witness: None,
        });
    }
    let witness = |p: &Subgroup| Some(p.gens().iter().map(|&x| g.exponents(x)).collect());
    let fail = |p: &Subgroup, note: String| SaturationReport { status: SaturationStatus::Failed, note, witness: witness(p) };
    let subs = g.all_subgroups(None, subgroup_limit)?;
    let prime = g.prime() as usize;

    for p in &subs {
        let autos: HashSet<Vec<Elem>> = f.isos(p, p)?.iter().map(|m| m.images().to_vec()).collect();
        for &x in g.normalizer(p).gens() {
            if !autos.contains(GroupMorphism::conjugation(g, x, p).images()) {
                return Ok(fail(p, "Aut_S(P) is not contained in Aut_F(P)".into()));
            }
        }
    }

    for class in f.classes(&subs)? {
        let norm_orders: Vec<usize> = class.iter().map(|q| g.normalizer(q).order()).collect();
        let cent_orders: Vec<usize> = class.iter().map(|q| g.centralizer(q).order()).collect();
        let max_n = *norm_orders.iter().max().expect("nonempty");
        let max_c = *cent_orders.iter().max().expect("nonempty");
        for (i, p) in class.iter().enumerate() {
            if norm_orders[i] == max_n {
                if cent_orders[i] != max_c {
                    return Ok(fail(p, "fully normalized subgroup is not fully centralized".into()));
                }
                let aut_f = f.automizer(p)?.autos().len();
                let aut_s = norm_orders[i] / cent_orders[i];
                if (aut_f / aut_s) % prime == 0 {
                    return Ok(fail(p, "Aut_S(P) is not a Sylow subgroup of Aut_F(P)".into()));
                }
            }
        }
        for (i, p) in class.iter().enumerate() {
            if cent_orders[i] != max_c {
                continue;
            }
            if let Some(report) = check_receptive(f, p, &class)? {
                return Ok(report);
            }
        }
    }
    Ok(SaturationReport {
        status: SaturationStatus::Saturated,
        note: format!("all axioms hold on {} subgroups", subs.len()),
        witness: None,
    })
}

/// Every `phi: Q -> P` extends to `N_phi` when `P` is fully centralized.
fn check_receptive(f: &FusionSystem, p: &Subgroup, class: &[Subgroup]) -> Result<Option<SaturationReport>> {
    let g = f.group();
    let s = g.whole();
    let aut_s_p: HashSet<Vec<Elem>> = g
        .normalizer(p)
        .elements()
        .iter()
        .map(|&y| GroupMorphism::conjugation(g, y, p).images().to_vec())
        .collect();
    for q in class {
        let nq = g.normalizer(q);
        for phi in f.isos(q, p)? {
            let phi = phi.map();
            let phi_inv = phi.inverse(g);
            let n_phi_elems: Vec<Elem> = nq
                .elements()
                .iter()
                .copied()
                .filter(|&x| {
                    let cx = GroupMorphism::conjugation(g, x, q);
                    let psi = phi.compose(g, &cx.compose(g, &phi_inv));
                    aut_s_p.contains(psi.images())
                })
                .collect();
            let n_phi = g.subgroup(&n_phi_elems);
            let extends = f.hom(&n_phi, &s)?.iter().any(|m| {
                q.gens().iter().zip(phi.images()).all(|(&x, &y)| m.map().apply(g, x) == y)
            });
            if !extends {
                return Ok(Some(SaturationReport {
                    status: SaturationStatus::Failed,
                    note: "a morphism into a fully centralized subgroup does not extend to N_phi".into(),
                    witness: Some(q.gens().iter().map(|&x| g.exponents(x)).collect()),
                }));
            }
        }
    }
    Ok(None)
}
