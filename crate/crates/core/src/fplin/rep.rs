use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

use super::group::FiniteGroup;
use super::matrix::FpMatrix;
use super::subspace::FpSubspace;

/// Representation of a [`FiniteGroup`] on `F_p^d`, stored by the matrices of the group's generators.
/// Matrices of all elements are derived on demand.
#[derive(Clone, Debug)]
pub struct FpGroupRep {
    group: Arc<FiniteGroup>,
    p: u32,
    dim: usize,
    gens: Vec<FpMatrix>,
    elems: OnceLock<Vec<FpMatrix>>,
}

impl FpGroupRep {
    pub(crate) fn from_parts(group: Arc<FiniteGroup>, p: u32, dim: usize, gens: Vec<FpMatrix>) -> Self {
        debug_assert_eq!(gens.len(), group.generators().len());
        FpGroupRep { group, p, dim, gens, elems: OnceLock::new() }
    }

    /// Checks that the generator matrices satisfy every relation of the group.
    pub fn from_generator_matrices(group: Arc<FiniteGroup>, p: u32, dim: usize, gens: Vec<FpMatrix>) -> Result<Self> {
        if gens.len() != group.generators().len() {
            return Err(Error::input(format!(
                "{} generator matrices for a group with {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        if gens.iter().any(|m| m.shape() != (dim, dim) || m.prime() != p) {
            return Err(Error::input(format!("generator matrices must be {dim}x{dim} over F_{p}")));
        }
        let mut mats: Vec<Option<FpMatrix>> = vec![None; group.order()];
        mats[0] = Some(FpMatrix::identity(p, dim));
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let mx = mats[x as usize].clone().expect("visited");
            for (&s, ms) in group.generators().iter().zip(&gens) {
                let y = group.mul(x, s);
                let my = &mx * ms;
                match &mats[y as usize] {
                    Some(old) if *old != my => {
                        return Err(Error::input(format!(
                            "generator matrices violate the relation at element {x} times generator {s}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        mats[y as usize] = Some(my);
                        queue.push(y);
                    }
                }
            }
        }
        let elems = mats.into_iter().map(|m| m.expect("generators generate")).collect();
        let rep = FpGroupRep { group, p, dim, gens, elems: OnceLock::new() };
        let _ = rep.elems.set(elems);
        Ok(rep)
    }

    /// Permutation module of an action `act(g, i)` on `0..points`, checked to satisfy
    /// `act(x s, i) = act(x, act(s, i))`.
    pub fn from_action<F>(group: Arc<FiniteGroup>, p: u32, points: usize, act: F) -> Result<Self>
    where
        F: Fn(u32, usize) -> usize,
    {
        for x in group.elements() {
            for &s in group.generators() {
                for i in 0..points {
                    if act(group.mul(x, s), i) != act(x, act(s, i)) {
                        return Err(Error::input(format!("action relation fails at ({x} * {s}) . {i}")));
                    }
                }
            }
        }
        if (0..points).any(|i| act(0, i) != i) {
            return Err(Error::input("identity does not act trivially"));
        }
        let gens = group
            .generators()
            .iter()
            .map(|&s| {
                let mut m = FpMatrix::zeros(p, points, points);
                for i in 0..points {
                    m.set(act(s, i), i, 1);
                }
                m
            })
            .collect();
        Ok(FpGroupRep::from_parts(group, p, points, gens))
    }

    pub fn regular(group: Arc<FiniteGroup>, p: u32) -> Self {
        let n = group.order();
        let g2 = group.clone();
        FpGroupRep::from_action(group, p, n, move |g, h| g2.mul(g, h as u32) as usize).expect("left regular action")
    }

    pub fn trivial(group: Arc<FiniteGroup>, p: u32) -> Self {
        let gens = vec![FpMatrix::identity(p, 1); group.generators().len()];
        FpGroupRep::from_parts(group, p, 1, gens)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_matrices(&self) -> &[FpMatrix] {
        &self.gens
    }

    fn element_matrices(&self) -> &[FpMatrix] {
        self.elems.get_or_init(|| {
            let mut mats: Vec<Option<FpMatrix>> = vec![None; self.group.order()];
            mats[0] = Some(FpMatrix::identity(self.p, self.dim));
            let mut queue = vec![0u32];
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                for (&s, ms) in self.group.generators().iter().zip(&self.gens) {
                    let y = self.group.mul(x, s);
                    if mats[y as usize].is_none() {
                        mats[y as usize] = Some(mats[x as usize].as_ref().expect("visited") * ms);
                        queue.push(y);
                    }
                }
            }
            mats.into_iter().map(|m| m.expect("generators generate")).collect()
        })
    }

    /// Matrix of the group element `g`.
    pub fn matrix(&self, g: u32) -> &FpMatrix {
        &self.element_matrices()[g as usize]
    }

    pub fn is_trivial_action(&self) -> bool {
        self.gens.iter().all(FpMatrix::is_identity)
    }

    /// Contragredient module: `g -> (M_g^{-1})^T`.
    pub fn dual(&self) -> FpGroupRep {
        let gens = self.gens.iter().map(|m| m.inverse().expect("invertible").transpose()).collect();
        FpGroupRep::from_parts(self.group.clone(), self.p, self.dim, gens)
    }

    /// Fixed points of the whole group.
    pub fn fixed_space(&self) -> FpSubspace {
        let id = FpMatrix::identity(self.p, self.dim);
        let mut fixed = FpSubspace::full(self.p, self.dim);
        for m in &self.gens {
            fixed = fixed.intersect(&(m - &id).kernel()).expect("same ambient");
        }
        fixed
    }

    /// Restriction to an invariant subspace, in its echelon basis.
    pub fn submodule(&self, w: &FpSubspace) -> Result<FpGroupRep> {
        let gens = self
            .gens
            .iter()
            .map(|m| w.restricted_matrix(m).ok_or_else(|| Error::input("subspace is not invariant")))
            .collect::<Result<Vec<_>>>()?;
        Ok(FpGroupRep::from_parts(self.group.clone(), self.p, w.dim(), gens))
    }

    /// Action on `V / W`, with basis the images of the standard vectors off the pivots of `W`.
    pub fn quotient(&self, w: &FpSubspace) -> Result<FpGroupRep> {
        if !self.gens.iter().all(|m| w.is_invariant_under(m)) {
            return Err(Error::input("subspace is not invariant"));
        }
        let free: Vec<usize> = (0..self.dim).filter(|c| !w.pivots().contains(c)).collect();
        let q = free.len();
        let p = self.p as u64;
        let reduce = |v: &[u32]| -> Vec<u32> {
            let mut v: Vec<u64> = v.iter().map(|&x| x as u64).collect();
            for (i, &pc) in w.pivots().iter().enumerate() {
                let a = v[pc];
                if a == 0 {
                    continue;
                }
                for (x, &b) in v.iter_mut().zip(w.basis().row(i)) {
                    *x = (*x + (p - a) * b as u64) % p;
                }
            }
            free.iter().map(|&c| v[c] as u32).collect()
        };
        let gens = self
            .gens
            .iter()
            .map(|m| {
                let mut out = FpMatrix::zeros(self.p, q, q);
                for (j, &c) in free.iter().enumerate() {
                    for (i, x) in reduce(&m.column(c)).into_iter().enumerate() {
                        out.set(i, j, x);
                    }
                }
                out
            })
            .collect();
        Ok(FpGroupRep::from_parts(self.group.clone(), self.p, q, gens))
    }
}

/// Sum of the listed matrices: the relative trace `sum_x [x] v` over a transversal.
pub fn trace_map(action: &[FpMatrix]) -> Result<FpMatrix> {
    let (first, rest) = action.split_first().ok_or_else(|| Error::input("trace over an empty transversal"))?;
    let mut acc = first.clone();
    for m in rest {
        acc = acc.checked_add(m)?;
    }
    Ok(acc)
}

pub fn norm_image(action: &[FpMatrix]) -> Result<FpSubspace> {
    Ok(trace_map(action)?.image())
}

/// Spins `v` under `mats`, returning the spanned invariant subspace together with the raw spin
/// vectors and, for each, the `(parent, generator)` step that produced it (`None` for `v`).
pub(crate) fn spin(v: &[u32], mats: &[FpMatrix]) -> (FpSubspace, Vec<Vec<u32>>, Vec<Option<(usize, usize)>>) {
    let n = v.len();
    let p = mats.first().map(|m| m.prime()).unwrap_or(2);
    let mut ech = Echelon::new(p, n);
    let mut raw: Vec<Vec<u32>> = Vec::new();
    let mut steps = Vec::new();
    if ech.add(v) {
        raw.push(v.to_vec());
        steps.push(None);
    }
    let mut head = 0;
    while head < raw.len() && raw.len() < n {
        for (s, m) in mats.iter().enumerate() {
            let w = m.apply(&raw[head]);
            if ech.add(&w) {
                raw.push(w);
                steps.push(Some((head, s)));
            }
        }
        head += 1;
    }
    (FpSubspace::from_vectors(p, n, &raw), raw, steps)
}

/// Incremental echelon basis for independence tests.
pub(crate) struct Echelon {
    p: u32,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    _n: usize,
}

impl Echelon {
    pub(crate) fn new(p: u32, n: usize) -> Self {
        Echelon { p, rows: Vec::new(), pivots: Vec::new(), _n: n }
    }

    /// Adds `v` if independent of the current rows.
    pub(crate) fn add(&mut self, v: &[u32]) -> bool {
        let p = self.p as u64;
        let mut w: Vec<u64> = v.iter().map(|&x| x as u64 % p).collect();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let a = w[pc];
            if a == 0 {
                continue;
            }
            for (x, &b) in w.iter_mut().zip(row) {
                *x = (*x + (p - a) * b as u64) % p;
            }
        }
        let Some(pc) = w.iter().position(|&x| x != 0) else { return false };
        let inv = super::matrix::inv_mod(w[pc] as u32, self.p) as u64;
        let row: Vec<u32> = w.iter().map(|&x| (x * inv % p) as u32).collect();
        self.rows.push(row);
        self.pivots.push(pc);
        true
    }
}
