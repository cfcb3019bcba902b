use crate::error::{Error, Result};
use crate::fplin::{FpGroupRep, FpMatrix};
use crate::fusion::FusionSystem;
use crate::pgroup::GroupMorphism;

/// `^α V`: the `Out_F(L)`-module on `V` with `[γ] v = [α^{-1} γ α] v`.
#[derive(Clone, Debug)]
pub struct TwistedModule {
    pub alpha: GroupMorphism,
    pub rep: FpGroupRep,
}

/// Twists an `Out_F(Q)`-module `v` along `α ∈ Iso_F(Q, L)`.
pub fn twist(f: &FusionSystem, alpha: &GroupMorphism, v: &FpGroupRep) -> Result<TwistedModule> {
    let g = f.group();
    let q = alpha.source();
    let aut_q = f.automizer(q)?;
    if !std::sync::Arc::ptr_eq(v.group(), aut_q.out()) {
        return Err(Error::input("module is not a representation of Out_F(Q)"));
    }
    if !alpha.is_injective(g) {
        return Err(Error::input("twisting map is not injective"));
    }
    let l = alpha.image(g);
    if !f.isos(q, &l)?.iter().any(|m| m.images() == alpha.images()) {
        return Err(Error::input("twisting map is not an F-isomorphism"));
    }
    let aut_l = f.automizer(&l)?;
    let alpha_inv = alpha.inverse(g);
    let mats: Vec<FpMatrix> = aut_l
        .out()
        .generators()
        .iter()
        .map(|&gen| {
            let gamma = &aut_l.out_reps()[gen as usize];
            let psi = alpha_inv.compose(g, &gamma.compose(g, alpha));
            let class = aut_q.out_class(&psi).ok_or_else(|| Error::internal("conjugated automorphism leaves Aut_F(Q)"))?;
            Ok(v.matrix(class).clone())
        })
        .collect::<Result<_>>()?;
    let rep = FpGroupRep::from_generator_matrices(aut_l.out().clone(), v.prime(), v.dim(), mats)?;
    Ok(TwistedModule { alpha: alpha.clone(), rep })
}
