//! Mackey functors for fusion systems, the simple functors `S_{Q,V}`, and an axiom verifier.

mod sqv;
mod twist;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fplin::FpMatrix;
use crate::fusion::{FMorphism, FusionSystem};
use crate::pgroup::{GroupMorphism, PcGroup, Subgroup};

pub use sqv::{Choices, DumpMap, DumpObject, DumpSummand, SqvDump, SqvFunctor, SqvValue, Summand};
pub use twist::{twist, TwistedModule};

/// A bivariant functor on an orbit category with `F_p`-values.
pub trait MackeyFunctorData {
    fn fusion(&self) -> &FusionSystem;

    fn dim(&self, p: &Subgroup) -> Result<usize>;

    /// `M_*([φ])`
    fn covariant(&self, m: &FMorphism) -> Result<FpMatrix>;

    /// `M^*([φ])`
    fn contravariant(&self, m: &FMorphism) -> Result<FpMatrix>;
}

fn inclusion(q: &Subgroup, p: &Subgroup) -> FMorphism {
    FMorphism::new(GroupMorphism::identity(q), p.clone())
}

/// Which intersection decides whether a double coset `RxQ` contributes to the truncated formula.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TruncationReading {
    /// `R ∩ ^xQ ∈ X`, the subgroup the summand is induced from.
    #[default]
    RCapXq,
    /// `Q ∩ ^xR ∈ X`
    QCapXr,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomFailure {
    pub axiom: String,
    pub subgroups: Vec<Vec<Vec<u32>>>,
    pub lhs: Vec<Vec<u32>>,
    pub rhs: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MackeyReport {
    pub reading: TruncationReading,
    pub objects: usize,
    pub isomorphism_checks: usize,
    pub triples: usize,
    pub failures: Vec<AxiomFailure>,
}

impl MackeyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn exps(g: &PcGroup, s: &Subgroup) -> Vec<Vec<u32>> {
    s.gens().iter().map(|&x| g.exponents(x)).collect()
}

/// Checks bivariance, the isomorphism axiom and the `X`-truncated double coset formula on `X`.
pub fn verify_axioms<M: MackeyFunctorData + ?Sized>(m: &M, x: &[Subgroup], reading: TruncationReading) -> Result<MackeyReport> {
    let f = m.fusion();
    let g = f.group();
    let p = g.prime();
    let members: HashSet<&Subgroup> = x.iter().collect();
    let mut objects: Vec<&Subgroup> = members.iter().copied().collect();
    objects.sort();
    let mut failures = Vec::new();
    let mut fail = |axiom: &str, subs: &[&Subgroup], lhs: &FpMatrix, rhs: &FpMatrix| {
        failures.push(AxiomFailure {
            axiom: axiom.into(),
            subgroups: subs.iter().map(|s| exps(g, s)).collect(),
            lhs: lhs.row_vecs(),
            rhs: rhs.row_vecs(),
        })
    };

    let mut isomorphism_checks = 0;
    for &obj in &objects {
        let d = m.dim(obj)?;
        let id = FpMatrix::identity(p, d);
        let incl = inclusion(obj, obj);
        let (co, contra) = (m.covariant(&incl)?, m.contravariant(&incl)?);
        if co != id || contra != id {
            fail("bivariance", &[obj], &co, &contra);
        }
        for alpha in f.isos_from(obj)?.iter().filter(|a| members.contains(a.target())) {
            isomorphism_checks += 1;
            let target = alpha.target();
            let inv = FMorphism::new(alpha.map().inverse(g), obj.clone());
            let forward = m.covariant(alpha)?;
            let back = m.covariant(&inv)?;
            if forward.shape() != (m.dim(target)?, d) || m.contravariant(alpha)?.shape() != (d, m.dim(target)?) {
                fail("bivariance", &[obj, target], &forward, &back);
            }
            let contra = m.contravariant(&inv)?;
            if contra != forward {
                fail("isomorphism", &[obj, target], &contra, &forward);
            }
            let round = &back * &forward;
            if round != id {
                fail("isomorphism", &[obj, target], &round, &id);
            }
            if let Some(&y) = target.gens().first() {
                let shifted: Vec<_> = alpha.images().iter().map(|&t| g.conj(y, t)).collect();
                let other = FMorphism::new(GroupMorphism::from_images(g, obj.clone(), shifted)?, target.clone());
                let alt = m.covariant(&other)?;
                if alt != forward {
                    fail("orbit class", &[obj, target], &alt, &forward);
                }
            }
        }
    }

    let mut triples = 0;
    for &top in &objects {
        let below: Vec<&Subgroup> = objects.iter().copied().filter(|s| s.is_subgroup_of(top)).collect();
        for &q in &below {
            let ind_q = m.covariant(&inclusion(q, top))?;
            for &r in &below {
                triples += 1;
                let lhs = &m.contravariant(&inclusion(r, top))? * &ind_q;
                let mut rhs = FpMatrix::zeros(p, lhs.rows(), lhs.cols());
                for xe in g.double_cosets(r, top, q)? {
                    let xq = g.conjugate(q, xe);
                    let meet = g.intersection(r, &xq);
                    let keep = match reading {
                        TruncationReading::RCapXq => members.contains(&meet),
                        TruncationReading::QCapXr => members.contains(&g.intersection(q, &g.conjugate(r, xe))),
                    };
                    if !keep {
                        continue;
                    }
                    let conj = FMorphism::new(GroupMorphism::conjugation(g, xe, q), xq.clone());
                    let term = &(&m.covariant(&inclusion(&meet, r))? * &m.contravariant(&inclusion(&meet, &xq))?)
                        * &m.covariant(&conj)?;
                    rhs = &rhs + &term;
                }
                if lhs != rhs {
                    fail("double coset formula", &[top, q, r], &lhs, &rhs);
                }
            }
        }
    }
    Ok(MackeyReport { reading, objects: objects.len(), isomorphism_checks, triples, failures })
}
