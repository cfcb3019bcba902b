use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fplin::{FpGroupRep, FpMatrix, FpSubspace};
use crate::fusion::{Automizer, FMorphism, FusionSystem};
use crate::pgroup::{Elem, GroupMorphism, PcGroup, Subgroup};

use super::MackeyFunctorData;

/// One summand `V_{α,L}(P) = tr_L^{N_P(L)}(^α V)`, as a subspace of `V`.
#[derive(Clone, Debug)]
pub struct Summand {
    pub conjugate: Subgroup,
    pub space: FpSubspace,
}

/// `S_{Q,V}(P)` with its decomposition over `P`-classes of `F`-conjugates of `Q`.
#[derive(Clone, Debug)]
pub struct SqvValue {
    pub subgroup: Subgroup,
    pub summands: Vec<Summand>,
    offsets: Vec<usize>,
    locate: HashMap<Subgroup, (usize, Elem)>,
}

impl SqvValue {
    pub fn dim(&self) -> usize {
        *self.offsets.last().expect("offsets end with the total")
    }

    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    /// Summand index of the class of `l`, and `x` in `P` with `x l x^{-1}` the class representative.
    pub fn locate(&self, l: &Subgroup) -> Option<(usize, Elem)> {
        self.locate.get(l).copied()
    }
}

/// How the choices of the construction are made.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Choices {
    /// Use the last isomorphism `Q -> L` in closure order instead of the first.
    pub last_alpha: bool,
    /// Use the greatest member of each `P`-class as its representative instead of the least.
    pub last_representative: bool,
}

type MapCache = Mutex<HashMap<(Subgroup, Subgroup), Arc<FpMatrix>>>;

/// The Mackey functor `S_{Q,V}` on `orb(F)` with every structure map realized as a matrix.
pub struct SqvFunctor<'a> {
    f: &'a FusionSystem,
    q: Subgroup,
    automizer: Arc<Automizer>,
    module: FpGroupRep,
    choices: Choices,
    conjugates: Vec<Subgroup>,
    alphas: HashMap<Subgroup, (GroupMorphism, GroupMorphism)>,
    values: Mutex<HashMap<Subgroup, Arc<SqvValue>>>,
    inds: MapCache,
    ress: MapCache,
}

impl std::fmt::Debug for SqvFunctor<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SqvFunctor").field("q", &self.q).field("dim", &self.module.dim()).finish()
    }
}

impl<'a> SqvFunctor<'a> {
    pub fn new(f: &'a FusionSystem, q: &Subgroup, module: FpGroupRep) -> Result<Self> {
        Self::with_choices(f, q, module, Choices::default())
    }

    /// `module` must be a representation of the group `f.automizer(q).out()`.
    pub fn with_choices(f: &'a FusionSystem, q: &Subgroup, module: FpGroupRep, choices: Choices) -> Result<Self> {
        let g = f.group();
        let automizer = f.automizer(q)?;
        if !Arc::ptr_eq(module.group(), automizer.out()) {
            return Err(Error::input("module is not a representation of Out_F(Q)"));
        }
        if module.prime() != g.prime() {
            return Err(Error::input("module prime differs from the group prime"));
        }
        let isos = f.isos_from(q)?;
        let mut alphas: HashMap<Subgroup, (GroupMorphism, GroupMorphism)> = HashMap::new();
        for m in isos.iter() {
            if *m.target() == *q {
                continue;
            }
            if choices.last_alpha || !alphas.contains_key(m.target()) {
                alphas.insert(m.target().clone(), (m.map().clone(), m.map().inverse(g)));
            }
        }
        let id = GroupMorphism::identity(q);
        alphas.insert(q.clone(), (id.clone(), id));
        let conjugates = f.f_class(q)?;
        Ok(SqvFunctor {
            f,
            q: q.clone(),
            automizer,
            module,
            choices,
            conjugates,
            alphas,
            values: Mutex::new(HashMap::new()),
            inds: Mutex::new(HashMap::new()),
            ress: Mutex::new(HashMap::new()),
        })
    }

    pub fn fusion(&self) -> &'a FusionSystem {
        self.f
    }

    pub fn q(&self) -> &Subgroup {
        &self.q
    }

    pub fn module(&self) -> &FpGroupRep {
        &self.module
    }

    pub fn automizer(&self) -> &Arc<Automizer> {
        &self.automizer
    }

    /// The `F`-class of `Q`, sorted.
    pub fn conjugates(&self) -> &[Subgroup] {
        &self.conjugates
    }

    /// The fixed `α_L : Q -> L`.
    pub fn alpha(&self, l: &Subgroup) -> Option<&GroupMorphism> {
        self.alphas.get(l).map(|(a, _)| a)
    }

    fn group(&self) -> &PcGroup {
        self.f.group()
    }

    fn p(&self) -> u32 {
        self.group().prime()
    }

    /// Matrix on `V` of `[α_{L2}^{-1} φ α_{L1}]` for `φ: L1 -> L2`.
    pub fn transport(&self, l2: &Subgroup, phi: &GroupMorphism) -> Result<FpMatrix> {
        let g = self.group();
        let l1 = phi.source();
        let (a1, _) = self.alphas.get(l1).ok_or_else(|| Error::input("source is not F-conjugate to Q"))?;
        let (_, a2_inv) = self.alphas.get(l2).ok_or_else(|| Error::input("target is not F-conjugate to Q"))?;
        let psi = a2_inv.compose(g, &phi.compose(g, a1));
        let class = self
            .automizer
            .out_class(&psi)
            .ok_or_else(|| Error::input("map between conjugates of Q is not an F-isomorphism"))?;
        Ok(self.module.matrix(class).clone())
    }

    /// Action of `n` in `N_S(L)` on `^{α_L} V`.
    pub fn action(&self, l: &Subgroup, n: Elem) -> Result<FpMatrix> {
        self.transport(l, &GroupMorphism::conjugation(self.group(), n, l))
    }

    /// `tr_H^K` on `^{α_L} V` for `L <= H <= K <= N_S(L)`, as a product of cyclic sums over index-`p` steps.
    pub fn relative_trace(&self, l: &Subgroup, h: &Subgroup, k: &Subgroup) -> Result<FpMatrix> {
        let g = self.group();
        let d = self.module.dim();
        let mut acc = FpMatrix::identity(self.p(), d);
        for n in g.index_p_steps(h, k) {
            let a = self.action(l, n)?;
            let mut power = FpMatrix::identity(self.p(), d);
            let mut sum = FpMatrix::zeros(self.p(), d, d);
            for _ in 0..self.p() {
                sum = &sum + &power;
                power = &power * &a;
            }
            acc = &sum * &acc;
        }
        Ok(acc)
    }

    /// `S_{Q,V}(P)`
    pub fn value(&self, p: &Subgroup) -> Result<Arc<SqvValue>> {
        if let Some(hit) = self.values.lock().expect("cache lock").get(p) {
            return Ok(hit.clone());
        }
        let value = Arc::new(self.compute_value(p)?);
        self.values.lock().expect("cache lock").insert(p.clone(), value.clone());
        Ok(value)
    }

    fn compute_value(&self, p: &Subgroup) -> Result<SqvValue> {
        let g = self.group();
        let mut members: Vec<&Subgroup> = self.conjugates.iter().filter(|l| l.is_subgroup_of(p)).collect();
        if self.choices.last_representative {
            members.reverse();
        }
        let mut locate: HashMap<Subgroup, (usize, Elem)> = HashMap::new();
        let mut summands = Vec::new();
        let mut offsets = vec![0];
        for l in members {
            if locate.contains_key(l) {
                continue;
            }
            let idx = summands.len();
            for (m, t) in g.conjugacy_class_with_transporters(l, p) {
                locate.insert(m, (idx, g.inv(t)));
            }
            let n = g.normalizer_in(p, l);
            let space = self.relative_trace(l, l, &n)?.image();
            if !space.is_zero() && !g.centralizer_in(p, l).is_subgroup_of(l) {
                return Err(Error::internal("nonzero summand V_{α,L}(P) with C_P(L) not contained in L"));
            }
            offsets.push(offsets[idx] + space.dim());
            summands.push(Summand { conjugate: l.clone(), space });
        }
        Ok(SqvValue { subgroup: p.clone(), summands, offsets, locate })
    }

    pub fn dim(&self, p: &Subgroup) -> Result<usize> {
        Ok(self.value(p)?.dim())
    }

    /// Writes the block of `m` (a map on `V`) from summand `i` of `src` into summand `j` of `dst`.
    fn add_block(&self, out: &mut FpMatrix, src: &SqvValue, i: usize, dst: &SqvValue, j: usize, m: &FpMatrix) -> Result<()> {
        let p = self.p();
        let target = &dst.summands[j].space;
        for (k, b) in src.summands[i].space.basis_vectors().iter().enumerate() {
            let w = m.apply(b);
            let coords = target
                .coordinates(&w)
                .ok_or_else(|| Error::internal("structure map leaves the target summand"))?;
            for (r, c) in coords.into_iter().enumerate() {
                let (row, col) = (dst.offset(j) + r, src.offset(i) + k);
                out.set(row, col, (out.get(row, col) + c) % p);
            }
        }
        Ok(())
    }

    /// `Ind_T^R = S_{Q,V*}([ι_T^R])`
    pub fn ind(&self, t: &Subgroup, r: &Subgroup) -> Result<Arc<FpMatrix>> {
        if !t.is_subgroup_of(r) {
            return Err(Error::input("induction needs T <= R"));
        }
        let key = (t.clone(), r.clone());
        if let Some(hit) = self.inds.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let g = self.group();
        let (vt, vr) = (self.value(t)?, self.value(r)?);
        let mut out = FpMatrix::zeros(self.p(), vr.dim(), vt.dim());
        for (i, s) in vt.summands.iter().enumerate() {
            if s.space.is_zero() {
                continue;
            }
            let l = &s.conjugate;
            let (j, x) = vr.locate(l).ok_or_else(|| Error::internal("conjugate of Q missing from a larger value"))?;
            let tr = self.relative_trace(l, &g.normalizer_in(t, l), &g.normalizer_in(r, l))?;
            let tp = self.transport(&vr.summands[j].conjugate, &GroupMorphism::conjugation(g, x, l))?;
            self.add_block(&mut out, &vt, i, &vr, j, &(&tp * &tr))?;
        }
        let out = Arc::new(out);
        self.inds.lock().expect("cache lock").insert(key, out.clone());
        Ok(out)
    }

    /// `Res_T^P = S_{Q,V}^*([ι_T^P])`
    pub fn res(&self, t: &Subgroup, p: &Subgroup) -> Result<Arc<FpMatrix>> {
        if !t.is_subgroup_of(p) {
            return Err(Error::input("restriction needs T <= P"));
        }
        let key = (t.clone(), p.clone());
        if let Some(hit) = self.ress.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let g = self.group();
        let (vt, vp) = (self.value(t)?, self.value(p)?);
        let mut out = FpMatrix::zeros(self.p(), vt.dim(), vp.dim());
        for (j, s) in vt.summands.iter().enumerate() {
            if s.space.is_zero() {
                continue;
            }
            let m = &s.conjugate;
            let (i, x) = vp.locate(m).ok_or_else(|| Error::internal("conjugate of Q missing from a larger value"))?;
            let li = &vp.summands[i].conjugate;
            if vp.summands[i].space.is_zero() {
                continue;
            }
            let tp = self.transport(m, &GroupMorphism::conjugation(g, g.inv(x), li))?;
            self.add_block(&mut out, &vp, i, &vt, j, &tp)?;
        }
        let out = Arc::new(out);
        self.ress.lock().expect("cache lock").insert(key, out.clone());
        Ok(out)
    }

    /// `Iso([φ])` for an isomorphism `φ: P -> R`.
    pub fn iso(&self, phi: &GroupMorphism) -> Result<FpMatrix> {
        let g = self.group();
        if !phi.is_injective(g) {
            return Err(Error::input("Iso needs an injective morphism"));
        }
        let p = phi.source();
        let r = phi.image(g);
        let (vp, vr) = (self.value(p)?, self.value(&r)?);
        let mut out = FpMatrix::zeros(self.p(), vr.dim(), vp.dim());
        for (i, s) in vp.summands.iter().enumerate() {
            if s.space.is_zero() {
                continue;
            }
            let l = &s.conjugate;
            let image = phi.image_of(g, l);
            let (j, x) = vr.locate(&image).ok_or_else(|| Error::input("morphism does not map conjugates of Q to conjugates of Q"))?;
            let images: Vec<Elem> = l.gens().iter().map(|&y| g.conj(x, phi.apply(g, y))).collect();
            let map = GroupMorphism::from_parts(l.clone(), images);
            let tp = self.transport(&vr.summands[j].conjugate, &map)?;
            self.add_block(&mut out, &vp, i, &vr, j, &tp)?;
        }
        Ok(out)
    }

    /// Natural isomorphism at `p` from this construction to `other` (same `Q` and `V`, other choices).
    pub fn comparison(&self, other: &SqvFunctor<'_>, p: &Subgroup) -> Result<FpMatrix> {
        if self.q != other.q || !Arc::ptr_eq(self.module.group(), other.module.group()) {
            return Err(Error::input("functors built from different data"));
        }
        let g = self.group();
        let (va, vb) = (self.value(p)?, other.value(p)?);
        let mut out = FpMatrix::zeros(self.p(), vb.dim(), va.dim());
        for (i, s) in va.summands.iter().enumerate() {
            if s.space.is_zero() {
                continue;
            }
            let l = &s.conjugate;
            let (j, x) = vb.locate(l).ok_or_else(|| Error::internal("class missing from the other construction"))?;
            let l2 = &vb.summands[j].conjugate;
            let c = GroupMorphism::conjugation(g, x, l);
            let a_old = self.alpha(l).expect("conjugate");
            let (_, b_inv) = other.alphas.get(l2).expect("conjugate");
            let psi = b_inv.compose(g, &c.compose(g, a_old));
            let class = self.automizer.out_class(&psi).ok_or_else(|| Error::internal("comparison leaves Aut_F(Q)"))?;
            other.add_block(&mut out, &va, i, &vb, j, self.module.matrix(class))?;
        }
        Ok(out)
    }

    /// Values and cached inclusion maps, for inspection.
    pub fn dump(&self) -> SqvDump {
        let g = self.group();
        let exps = |s: &Subgroup| -> Vec<Vec<u32>> { s.gens().iter().map(|&x| g.exponents(x)).collect() };
        let mut objects: Vec<DumpObject> = self
            .values
            .lock()
            .expect("cache lock")
            .values()
            .map(|v| DumpObject {
                subgroup: exps(&v.subgroup),
                summands: v
                    .summands
                    .iter()
                    .map(|s| DumpSummand { conjugate: exps(&s.conjugate), basis: s.space.basis_vectors() })
                    .collect(),
            })
            .collect();
        objects.sort_by(|a, b| a.subgroup.len().cmp(&b.subgroup.len()).then_with(|| a.subgroup.cmp(&b.subgroup)));
        let mut maps = Vec::new();
        for (kind, cache) in [("ind", &self.inds), ("res", &self.ress)] {
            for ((t, u), m) in cache.lock().expect("cache lock").iter() {
                maps.push(DumpMap { kind: kind.into(), small: exps(t), large: exps(u), matrix: m.row_vecs() });
            }
        }
        maps.sort_by(|a, b| (&a.kind, a.small.len(), &a.small, &a.large).cmp(&(&b.kind, b.small.len(), &b.small, &b.large)));
        SqvDump { q: exps(&self.q), module_dim: self.module.dim(), objects, maps }
    }
}

impl MackeyFunctorData for SqvFunctor<'_> {
    fn fusion(&self) -> &FusionSystem {
        self.f
    }

    fn dim(&self, p: &Subgroup) -> Result<usize> {
        SqvFunctor::dim(self, p)
    }

    fn covariant(&self, m: &FMorphism) -> Result<FpMatrix> {
        let g = self.group();
        let image = m.map().image(g);
        let iso = self.iso(m.map())?;
        if image == *m.target() {
            return Ok(iso);
        }
        Ok(&*self.ind(&image, m.target())? * &iso)
    }

    fn contravariant(&self, m: &FMorphism) -> Result<FpMatrix> {
        let g = self.group();
        let image = m.map().image(g);
        let back = self.iso(&m.map().inverse(g))?;
        if image == *m.target() {
            return Ok(back);
        }
        Ok(&back * &*self.res(&image, m.target())?)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DumpSummand {
    pub conjugate: Vec<Vec<u32>>,
    pub basis: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DumpObject {
    pub subgroup: Vec<Vec<u32>>,
    pub summands: Vec<DumpSummand>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DumpMap {
    pub kind: String,
    pub small: Vec<Vec<u32>>,
    pub large: Vec<Vec<u32>>,
    pub matrix: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SqvDump {
    pub q: Vec<Vec<u32>>,
    pub module_dim: usize,
    pub objects: Vec<DumpObject>,
    pub maps: Vec<DumpMap>,
}
