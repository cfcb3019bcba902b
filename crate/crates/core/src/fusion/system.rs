use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::fplin::FiniteGroup;
use crate::pgroup::{Elem, GroupMorphism, PcGroup, Subgroup};

use super::ambient::{AmbientCatalog, AmbientOracle};
use super::generators::FusionGenerators;

/// A morphism of the fusion system, with its target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FMorphism {
    map: GroupMorphism,
    target: Subgroup,
}

impl FMorphism {
    pub fn new(map: GroupMorphism, target: Subgroup) -> Self {
        FMorphism { map, target }
    }

    pub fn map(&self) -> &GroupMorphism {
        &self.map
    }

    pub fn source(&self) -> &Subgroup {
        self.map.source()
    }

    pub fn target(&self) -> &Subgroup {
        &self.target
    }

    pub fn images(&self) -> &[Elem] {
        self.map.images()
    }
}

#[derive(Clone, Debug)]
pub enum FusionSource {
    Inner,
    Ambient(Arc<AmbientOracle>),
    Generators(Arc<FusionGenerators>),
}

/// `Aut_F(Q)` with `Inn(Q)` and the quotient `Out_F(Q)` as an explicit group.
#[derive(Debug)]
pub struct Automizer {
    subgroup: Subgroup,
    autos: Vec<GroupMorphism>,
    inner: Vec<GroupMorphism>,
    out: Arc<FiniteGroup>,
    out_reps: Vec<GroupMorphism>,
    out_index: HashMap<Vec<Elem>, u32>,
}

impl Automizer {
    fn new(g: &PcGroup, q: &Subgroup, autos: Vec<GroupMorphism>) -> Result<Self> {
        let mut inner: Vec<GroupMorphism> = q
            .elements()
            .iter()
            .map(|&x| GroupMorphism::conjugation(g, x, q))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        inner.sort_by(|a, b| a.images().cmp(b.images()));
        let aut_set: HashSet<&[Elem]> = autos.iter().map(|a| a.images()).collect();
        if let Some(missing) = inner.iter().find(|c| !aut_set.contains(c.images())) {
            return Err(Error::input(format!(
                "fusion data is missing the inner automorphism {:?} of a subgroup of order {}",
                missing.images(),
                q.order()
            )));
        }
        let mut out_index: HashMap<Vec<Elem>, u32> = HashMap::new();
        let mut out_reps: Vec<GroupMorphism> = Vec::new();
        let identity = GroupMorphism::identity(q);
        let ordered = std::iter::once(&identity).chain(autos.iter());
        for a in ordered {
            if out_index.contains_key(a.images()) {
                continue;
            }
            let idx = out_reps.len() as u32;
            for c in &inner {
                out_index.insert(c.compose(g, a).images().to_vec(), idx);
            }
            out_reps.push(a.clone());
        }
        if out_index.len() != autos.len() {
            return Err(Error::internal("automizer cosets do not partition Aut_F(Q)"));
        }
        let n = out_reps.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let prod = out_reps[i].compose(g, &out_reps[j]);
                table[i * n + j] = *out_index
                    .get(prod.images())
                    .ok_or_else(|| Error::input("Aut_F(Q) is not closed under composition"))?;
            }
        }
        let mut gens = Vec::new();
        let mut generated: Vec<u32> = vec![0];
        for x in 1..n as u32 {
            if generated.binary_search(&x).is_err() {
                gens.push(x);
                generated = closure(&table, n, &gens);
            }
        }
        let out = Arc::new(FiniteGroup::from_table(n, table, gens)?);
        Ok(Automizer { subgroup: q.clone(), autos, inner, out, out_reps, out_index })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn autos(&self) -> &[GroupMorphism] {
        &self.autos
    }

    pub fn inner(&self) -> &[GroupMorphism] {
        &self.inner
    }

    pub fn out(&self) -> &Arc<FiniteGroup> {
        &self.out
    }

    pub fn out_reps(&self) -> &[GroupMorphism] {
        &self.out_reps
    }

    /// Class in `Out_F(Q)` of an automorphism of `Q`.
    pub fn out_class(&self, a: &GroupMorphism) -> Option<u32> {
        self.out_index.get(a.images()).copied()
    }

    /// Class of `c_x|_Q` for `x` normalizing `Q`.
    pub fn out_class_of_conj(&self, g: &PcGroup, x: Elem) -> Option<u32> {
        self.out_class(&GroupMorphism::conjugation(g, x, &self.subgroup))
    }
}

fn closure(table: &[u32], n: usize, gens: &[u32]) -> Vec<u32> {
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut elems = vec![0u32];
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head] as usize;
        head += 1;
        for &s in gens {
            let y = table[x * n + s as usize];
            if !seen[y as usize] {
                seen[y as usize] = true;
                elems.push(y);
            }
        }
    }
    elems.sort_unstable();
    elems
}

/// Default bound on the number of isomorphisms enumerated from one subgroup.
pub const DEFAULT_CLOSURE_LIMIT: usize = 2_000_000;

/// A fusion system on a finite p-group, given by inner conjugation, an ambient group, or
/// generating automorphisms.
pub struct FusionSystem {
    group: Arc<PcGroup>,
    source: FusionSource,
    inner_gens: FusionGenerators,
    closure_limit: usize,
    isos: Mutex<HashMap<Subgroup, Arc<Vec<FMorphism>>>>,
    automizers: Mutex<HashMap<Subgroup, Arc<Automizer>>>,
}

impl std::fmt::Debug for FusionSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FusionSystem").field("mode", &self.mode_name()).field("order", &self.group.order()).finish()
    }
}

impl FusionSystem {
    fn with_source(group: Arc<PcGroup>, source: FusionSource) -> Self {
        let inner_gens = FusionGenerators::inner(&group);
        FusionSystem {
            group,
            source,
            inner_gens,
            closure_limit: DEFAULT_CLOSURE_LIMIT,
            isos: Mutex::new(HashMap::new()),
            automizers: Mutex::new(HashMap::new()),
        }
    }

    /// `F_S(S)`
    pub fn inner(group: Arc<PcGroup>) -> Self {
        Self::with_source(group, FusionSource::Inner)
    }

    /// `F_S(G)`
    pub fn from_ambient(group: Arc<PcGroup>, oracle: AmbientOracle) -> Self {
        Self::with_source(group, FusionSource::Ambient(Arc::new(oracle)))
    }

    pub fn from_generators(group: Arc<PcGroup>, gens: FusionGenerators) -> Self {
        Self::with_source(group, FusionSource::Generators(Arc::new(gens)))
    }

    /// `F_S(G)` for a named ambient group at `p = 3`.
    pub fn from_ambient_catalog(entry: AmbientCatalog, order_limit: usize) -> Result<Self> {
        let group = Arc::new(entry.sylow_entry().build(3)?);
        let oracle = AmbientOracle::new(&group, entry.spec(), order_limit)?;
        Ok(Self::from_ambient(group, oracle))
    }

    /// Generating data in the spirit of Alperin's theorem: all of `Aut_F(S)` together with
    /// `Aut_F(E)` for each essential class representative `E`.
    pub fn derived_generators(&self, subgroup_limit: usize) -> Result<FusionGenerators> {
        let g = &*self.group;
        let s = g.whole();
        let mut entries = vec![(s.clone(), self.automizer(&s)?.autos().to_vec())];
        for e in self.essentials(&self.lattice(subgroup_limit)?)? {
            if e != s {
                entries.push((e.clone(), self.automizer(&e)?.autos().to_vec()));
            }
        }
        FusionGenerators::new(g, entries)
    }

    pub fn with_closure_limit(mut self, limit: usize) -> Self {
        self.closure_limit = limit;
        self
    }

    pub fn group(&self) -> &PcGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<PcGroup> {
        &self.group
    }

    pub fn source(&self) -> &FusionSource {
        &self.source
    }

    pub fn mode_name(&self) -> &'static str {
        match self.source {
            FusionSource::Inner => "inner",
            FusionSource::Ambient(_) => "ambient",
            FusionSource::Generators(_) => "generators",
        }
    }

    /// Whether the system is known to be saturated without a check.
    pub fn saturated_by_construction(&self) -> bool {
        !matches!(self.source, FusionSource::Generators(_))
    }

    /// All isomorphisms in `F` from `p` onto subgroups, sorted by (target, images).
    pub fn isos_from(&self, p: &Subgroup) -> Result<Arc<Vec<FMorphism>>> {
        if let Some(hit) = self.isos.lock().expect("cache lock").get(p) {
            return Ok(hit.clone());
        }
        let computed = Arc::new(match &self.source {
            FusionSource::Inner => self.closure_isos(p, &self.inner_gens)?,
            FusionSource::Generators(gens) => self.closure_isos(p, gens)?,
            FusionSource::Ambient(oracle) => self.ambient_isos(p, oracle)?,
        });
        self.isos.lock().expect("cache lock").insert(p.clone(), computed.clone());
        Ok(computed)
    }

    fn ambient_isos(&self, p: &Subgroup, oracle: &AmbientOracle) -> Result<Vec<FMorphism>> {
        let g = &*self.group;
        let mut out = Vec::new();
        let mut targets: HashMap<Vec<Elem>, Subgroup> = HashMap::new();
        for imgs in oracle.conjugation_images(p.gens()) {
            let target = g.subgroup(&imgs);
            let key = target.gens().to_vec();
            let target = targets.entry(key).or_insert(target).clone();
            let map = GroupMorphism::from_images(g, p.clone(), imgs)?;
            out.push(FMorphism { map, target });
        }
        out.sort_by(|a, b| a.target.cmp(&b.target).then_with(|| a.images().cmp(b.images())));
        Ok(out)
    }

    fn closure_isos(&self, p: &Subgroup, gens: &FusionGenerators) -> Result<Vec<FMorphism>> {
        let g = &*self.group;
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        let mut found: Vec<(Subgroup, Vec<Elem>)> = vec![(p.clone(), p.gens().to_vec())];
        seen.insert(p.gens().to_vec());
        let mut step_cache: HashMap<(Subgroup, usize, usize), Subgroup> = HashMap::new();
        let mut head = 0;
        while head < found.len() {
            let (target, imgs) = found[head].clone();
            head += 1;
            for (ei, (e, autos)) in gens.entries().iter().enumerate() {
                if !target.is_subgroup_of(e) {
                    continue;
                }
                for (ai, phi) in autos.iter().enumerate() {
                    let new_imgs: Vec<Elem> = imgs.iter().map(|&x| phi.apply(g, x)).collect();
                    if seen.contains(&new_imgs) {
                        continue;
                    }
                    let new_target = step_cache
                        .entry((target.clone(), ei, ai))
                        .or_insert_with(|| phi.image_of(g, &target))
                        .clone();
                    seen.insert(new_imgs.clone());
                    found.push((new_target, new_imgs));
                    if found.len() > self.closure_limit {
                        return Err(Error::resource(
                            format!("morphism closure from a subgroup of order {} (partial result discarded)", p.order()),
                            self.closure_limit as u64,
                        ));
                    }
                }
            }
        }
        let mut out: Vec<FMorphism> = found
            .into_iter()
            .map(|(target, imgs)| FMorphism { map: GroupMorphism::from_parts(p.clone(), imgs), target })
            .collect();
        out.sort_by(|a, b| a.target.cmp(&b.target).then_with(|| a.images().cmp(b.images())));
        Ok(out)
    }

    /// `Hom_F(P, Q)`, sorted by images.
    pub fn hom(&self, p: &Subgroup, q: &Subgroup) -> Result<Vec<FMorphism>> {
        let mut out: Vec<FMorphism> = self
            .isos_from(p)?
            .iter()
            .filter(|m| m.target.is_subgroup_of(q))
            .map(|m| FMorphism { map: m.map.clone(), target: q.clone() })
            .collect();
        out.sort_by(|a, b| a.images().cmp(b.images()));
        Ok(out)
    }

    /// `Iso_F(P, Q)`
    pub fn isos(&self, p: &Subgroup, q: &Subgroup) -> Result<Vec<FMorphism>> {
        Ok(self.isos_from(p)?.iter().filter(|m| m.target == *q).cloned().collect())
    }

    /// The `F`-conjugacy class of `p`, sorted.
    pub fn f_class(&self, p: &Subgroup) -> Result<Vec<Subgroup>> {
        let mut out: Vec<Subgroup> = self.isos_from(p)?.iter().map(|m| m.target.clone()).collect();
        out.dedup();
        Ok(out)
    }

    pub fn is_f_conjugate(&self, a: &Subgroup, b: &Subgroup) -> Result<bool> {
        if a.order() != b.order() {
            return Ok(false);
        }
        Ok(self.isos_from(a)?.iter().any(|m| m.target == *b))
    }

    /// A fixed isomorphism `p -> q` (the least by images), if one exists.
    pub fn first_iso(&self, p: &Subgroup, q: &Subgroup) -> Result<Option<GroupMorphism>> {
        Ok(self.isos_from(p)?.iter().find(|m| m.target == *q).map(|m| m.map.clone()))
    }

    pub fn automizer(&self, q: &Subgroup) -> Result<Arc<Automizer>> {
        if let Some(hit) = self.automizers.lock().expect("cache lock").get(q) {
            return Ok(hit.clone());
        }
        let autos: Vec<GroupMorphism> = self.isos(q, q)?.into_iter().map(|m| m.map).collect();
        let aut = Arc::new(Automizer::new(&self.group, q, autos)?);
        self.automizers.lock().expect("cache lock").insert(q.clone(), aut.clone());
        Ok(aut)
    }

    /// `C_S(Q) <= Q` for every `F`-conjugate `Q` of `p`.
    pub fn is_centric(&self, p: &Subgroup) -> Result<bool> {
        let g = &*self.group;
        Ok(self.f_class(p)?.iter().all(|q| g.centralizer(q).is_subgroup_of(q)))
    }

    pub fn is_fully_normalized(&self, p: &Subgroup) -> Result<bool> {
        let g = &*self.group;
        let n = g.normalizer(p).order();
        Ok(self.f_class(p)?.iter().all(|q| g.normalizer(q).order() <= n))
    }

    /// Class representative maximizing `|N_S(.)|`, least canonical form among ties.
    pub fn fully_normalized_rep(&self, p: &Subgroup) -> Result<Subgroup> {
        let g = &*self.group;
        let class = self.f_class(p)?;
        let best = class.iter().map(|q| g.normalizer(q).order()).max().expect("nonempty class");
        Ok(class.into_iter().find(|q| g.normalizer(q).order() == best).expect("maximum attained"))
    }

    /// Centric, fully normalized, and `Out_F(E)` has a strongly `p`-embedded subgroup.
    pub fn is_essential(&self, e: &Subgroup) -> Result<bool> {
        if !self.is_centric(e)? || !self.is_fully_normalized(e)? {
            return Ok(false);
        }
        Ok(self.automizer(e)?.out().has_strongly_p_embedded(self.group.prime()))
    }

    /// `L(P, Q) = { L <= P : L is F-conjugate to Q and C_P(L) <= L }`
    pub fn l_set(&self, p: &Subgroup, q: &Subgroup) -> Result<Vec<Subgroup>> {
        let g = &*self.group;
        Ok(self
            .f_class(q)?
            .into_iter()
            .filter(|l| l.is_subgroup_of(p) && g.centralizer_in(p, l).is_subgroup_of(l))
            .collect())
    }

    /// Subgroups considered by default: all of them for `|S| <= 3^5`, otherwise those containing `Z(S)`.
    pub fn lattice(&self, limit: usize) -> Result<Vec<Subgroup>> {
        let g = &*self.group;
        if g.order() <= 243 {
            g.all_subgroups(None, limit)
        } else {
            let z = g.center(&g.whole());
            g.subgroups_containing(&z, g.order() as usize, limit)
        }
    }

    /// Partition of `subs` (closed under `F`-conjugacy) into sorted `F`-classes, ordered by least member.
    pub fn classes(&self, subs: &[Subgroup]) -> Result<Vec<Vec<Subgroup>>> {
        let mut sorted = subs.to_vec();
        sorted.sort();
        let mut done: HashSet<Subgroup> = HashSet::new();
        let mut out = Vec::new();
        for s in sorted {
            if done.contains(&s) {
                continue;
            }
            let class = self.f_class(&s)?;
            done.extend(class.iter().cloned());
            out.push(class);
        }
        Ok(out)
    }

    /// The `F`-centric members of `subs`, sorted.
    pub fn centric_collection(&self, subs: &[Subgroup]) -> Result<Vec<Subgroup>> {
        let g = &*self.group;
        let mut out = Vec::new();
        for class in self.classes(subs)? {
            if class.iter().all(|q| g.centralizer(q).is_subgroup_of(q)) {
                out.extend(class);
            }
        }
        out.sort();
        Ok(out)
    }

    /// Essential subgroups among `subs`, one fully normalized representative per class.
    pub fn essentials(&self, subs: &[Subgroup]) -> Result<Vec<Subgroup>> {
        let mut out = Vec::new();
        for class in self.classes(subs)? {
            let rep = self.fully_normalized_rep(&class[0])?;
            if self.is_essential(&rep)? {
                out.push(rep);
            }
        }
        Ok(out)
    }
}
