//! The zero-composition scan over centric pairs, structural lemma checks, and essential subgroup constraints.

mod essentials;
mod lemmas;
mod scan;

use serde::Serialize;

use crate::error::Result;
use crate::fplin::FpMatrix;
use crate::fusion::{check_saturation, FusionSystem, SaturationReport};
use crate::mackey::SqvFunctor;
use crate::pgroup::{PcGroup, Subgroup};

pub use essentials::{essential_constraints, EssentialEntry, EssentialReport};
pub use lemmas::{configuration_properties, validate_lemmas, LemmaCheck, LemmaConfig, LemmaReport, PropertyViolation};
pub use scan::{scan, ModuleMode, ScanConfig, ScanReport, ScanSummary, ScanTuple, Verdict};

/// `Ind_T^R ∘ Res_T^P` with `T = P ∩ R`.
pub fn composition(m: &SqvFunctor<'_>, p: &Subgroup, r: &Subgroup) -> Result<FpMatrix> {
    let g = m.fusion().group();
    let t = g.intersection(p, r);
    Ok(&*m.ind(&t, r)? * &*m.res(&t, p)?)
}

/// Description of the fusion system a report was computed on.
#[derive(Clone, Debug, Serialize)]
pub struct FusionSummary {
    pub prime: u32,
    pub order_log: usize,
    pub mode: String,
    pub saturation: SaturationReport,
}

impl FusionSummary {
    pub fn of(f: &FusionSystem, subgroup_limit: usize) -> Result<Self> {
        let g = f.group();
        Ok(FusionSummary {
            prime: g.prime(),
            order_log: g.rank(),
            mode: f.mode_name().to_string(),
            saturation: check_saturation(f, subgroup_limit)?,
        })
    }
}

pub(crate) fn exps(g: &PcGroup, s: &Subgroup) -> Vec<Vec<u32>> {
    s.gens().iter().map(|&x| g.exponents(x)).collect()
}
