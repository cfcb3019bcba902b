use serde::Serialize;

use crate::error::Result;
use crate::fusion::FusionSystem;
use crate::pgroup::Subgroup;

use super::exps;

#[derive(Clone, Debug, Serialize)]
pub struct EssentialEntry {
    pub subgroup: Vec<Vec<u32>>,
    pub order_log: usize,
    pub out_order: usize,
    pub is_gamma1: bool,
    pub is_c_z2: bool,
    pub conforming: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EssentialReport {
    /// `S` has maximal class and order at least `p^4`.
    pub applicable: bool,
    pub exceptional: Option<bool>,
    pub essentials: Vec<EssentialEntry>,
    pub violations: usize,
}

impl EssentialReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// On `S` of maximal class with `|S| >= p^4`, every essential `E` has `|E| <= p^3` or is
/// `γ_1(S)` or `C_S(Z_2(S))`, and `|E| != p^3` when `S` is exceptional.
pub fn essential_constraints(f: &FusionSystem, subs: &[Subgroup]) -> Result<EssentialReport> {
    let g = f.group();
    let data = g.central_series();
    let applicable = data.maximal_class && g.rank() >= 4;
    let mut essentials = Vec::new();
    let mut violations = 0;
    for e in f.essentials(subs)? {
        let is_gamma1 = data.gamma1.as_ref() == Some(&e);
        let is_c_z2 = data.c_z2.as_ref() == Some(&e);
        let log = e.log_order();
        let conforming = !applicable
            || ((log <= 3 || is_gamma1 || is_c_z2) && !(data.exceptional == Some(true) && log == 3));
        if !conforming {
            violations += 1;
        }
        essentials.push(EssentialEntry {
            subgroup: exps(g, &e),
            order_log: log,
            out_order: f.automizer(&e)?.out().order(),
            is_gamma1,
            is_c_z2,
            conforming,
        });
    }
    Ok(EssentialReport { applicable, exceptional: data.exceptional, essentials, violations })
}
