//! Orbit categories of fusion systems and chain enumeration over finite categories.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::fusion::{FMorphism, FusionSystem};
use crate::pgroup::{Elem, GroupMorphism, PcGroup, Subgroup};

/// A category with finitely many objects and morphisms, indexed by integers.
pub trait FiniteCategory {
    fn object_count(&self) -> usize;

    fn hom_count(&self, a: usize, b: usize) -> Result<usize>;

    fn identity(&self, a: usize) -> Result<usize>;

    /// `g ∘ f` for `f: a -> b` and `g: b -> c`.
    fn compose(&self, a: usize, b: usize, c: usize, g: usize, f: usize) -> Result<usize>;
}

/// Composable arrows `objects[i] -> objects[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Chain {
    pub fn source(&self) -> usize {
        self.objects[0]
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Default maximal chain length.
pub const DEFAULT_MAX_DEGREE: usize = 4;

fn arrow_counts<C: FiniteCategory + ?Sized>(cat: &C, normalized: bool) -> Result<Vec<Vec<u128>>> {
    let n = cat.object_count();
    let mut counts = vec![vec![0u128; n]; n];
    for a in 0..n {
        for b in 0..n {
            let mut h = cat.hom_count(a, b)? as u128;
            if normalized && a == b {
                h -= 1;
            }
            counts[a][b] = h;
        }
    }
    Ok(counts)
}

/// Number of chains of length `n`, by the recursion over last arrows.
pub fn count_chains<C: FiniteCategory + ?Sized>(cat: &C, n: usize, normalized: bool) -> Result<u128> {
    let counts = arrow_counts(cat, normalized)?;
    let objs = cat.object_count();
    let mut ending = vec![1u128; objs];
    for _ in 0..n {
        let mut next = vec![0u128; objs];
        for (x, &c) in ending.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (y, nx) in next.iter_mut().enumerate() {
                *nx = nx.saturating_add(c.saturating_mul(counts[x][y]));
            }
        }
        ending = next;
    }
    Ok(ending.iter().fold(0u128, |a, &b| a.saturating_add(b)))
}

/// All chains of length `n` in lexicographic order; `normalized` drops those with an identity arrow.
pub fn chains<C: FiniteCategory + ?Sized>(cat: &C, n: usize, normalized: bool, budget: usize) -> Result<Vec<Chain>> {
    let total = count_chains(cat, n, normalized)?;
    if total > budget as u128 {
        return Err(Error::resource(format!("chains of length {n} ({total} of them)"), budget as u64));
    }
    let objs = cat.object_count();
    let mut ids = Vec::with_capacity(objs);
    for a in 0..objs {
        ids.push(cat.identity(a)?);
    }
    let mut out: Vec<Chain> = (0..objs).map(|a| Chain { objects: vec![a], arrows: Vec::new() }).collect();
    for _ in 0..n {
        let mut next = Vec::new();
        for ch in &out {
            let last = *ch.objects.last().expect("nonempty chain");
            for b in 0..objs {
                for f in 0..cat.hom_count(last, b)? {
                    if normalized && last == b && f == ids[last] {
                        continue;
                    }
                    let mut c = ch.clone();
                    c.objects.push(b);
                    c.arrows.push(f);
                    next.push(c);
                }
            }
        }
        out = next;
    }
    Ok(out)
}

/// `[φ] ∈ Inn(Q)\Hom_F(P, Q)`, stored as the least generator-image tuple of its orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitMorphism {
    pub source: usize,
    pub target: usize,
    pub images: Vec<Elem>,
}

/// Least tuple in the orbit of `images` under conjugation by `q`.
pub fn canonical_images(g: &PcGroup, q: &Subgroup, images: &[Elem]) -> Vec<Elem> {
    let mut seen: HashSet<Vec<Elem>> = HashSet::from([images.to_vec()]);
    let mut stack = vec![images.to_vec()];
    let mut best = images.to_vec();
    while let Some(t) = stack.pop() {
        for &x in q.gens() {
            let u: Vec<Elem> = t.iter().map(|&y| g.conj(x, y)).collect();
            if !seen.contains(&u) {
                if u < best {
                    best = u.clone();
                }
                seen.insert(u.clone());
                stack.push(u);
            }
        }
    }
    best
}

/// Number of composition triples checked when a category is built.
pub const BUILD_VERIFY_BUDGET: usize = 20_000;

/// `orb(X)` for an overgroup- and `F`-conjugacy-closed collection `X`.
pub struct OrbitCategory<'a> {
    f: &'a FusionSystem,
    objects: Vec<Subgroup>,
    index: HashMap<Subgroup, usize>,
    homs: Mutex<HashMap<(usize, usize), Arc<Vec<OrbitMorphism>>>>,
}

impl std::fmt::Debug for OrbitCategory<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OrbitCategory").field("objects", &self.objects.len()).finish()
    }
}

impl<'a> OrbitCategory<'a> {
    /// Builds `orb(X)`, validating closure of `X` and composition on a bounded set of triples.
    pub fn build(f: &'a FusionSystem, x: &[Subgroup]) -> Result<Self> {
        let cat = Self::build_unchecked(f, x)?;
        cat.validate_closure()?;
        cat.verify_composition(BUILD_VERIFY_BUDGET)?;
        Ok(cat)
    }

    fn build_unchecked(f: &'a FusionSystem, x: &[Subgroup]) -> Result<Self> {
        let objects: Vec<Subgroup> = x.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let index = objects.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Ok(OrbitCategory { f, objects, index, homs: Mutex::new(HashMap::new()) })
    }

    fn validate_closure(&self) -> Result<()> {
        let g = self.f.group();
        let p = g.prime() as i64;
        for obj in &self.objects {
            for c in self.f.f_class(obj)? {
                if !self.index.contains_key(&c) {
                    return Err(Error::input(format!(
                        "collection is not closed under F-conjugacy: missing {:?}",
                        c.gens().iter().map(|&y| g.exponents(y)).collect::<Vec<_>>()
                    )));
                }
            }
            let n = g.normalizer(obj);
            for x in g.left_transversal(&n, obj) {
                if obj.contains(x) || !obj.contains(g.pow(x, p)) {
                    continue;
                }
                let mut gens = obj.gens().to_vec();
                gens.push(x);
                let over = g.subgroup(&gens);
                if !self.index.contains_key(&over) {
                    return Err(Error::input(format!(
                        "collection is not closed under overgroups: missing {:?}",
                        over.gens().iter().map(|&y| g.exponents(y)).collect::<Vec<_>>()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn fusion(&self) -> &'a FusionSystem {
        self.f
    }

    pub fn objects(&self) -> &[Subgroup] {
        &self.objects
    }

    pub fn object(&self, i: usize) -> &Subgroup {
        &self.objects[i]
    }

    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// `Hom_orb(P, Q)` sorted by canonical images.
    pub fn hom(&self, a: usize, b: usize) -> Result<Arc<Vec<OrbitMorphism>>> {
        if let Some(hit) = self.homs.lock().expect("cache lock").get(&(a, b)) {
            return Ok(hit.clone());
        }
        let g = self.f.group();
        let q = &self.objects[b];
        let set: BTreeSet<Vec<Elem>> = self
            .f
            .hom(&self.objects[a], q)?
            .iter()
            .map(|m| canonical_images(g, q, m.images()))
            .collect();
        let list = Arc::new(set.into_iter().map(|images| OrbitMorphism { source: a, target: b, images }).collect::<Vec<_>>());
        self.homs.lock().expect("cache lock").insert((a, b), list.clone());
        Ok(list)
    }

    /// Orbit class of an `F`-morphism between objects.
    pub fn class_of(&self, m: &FMorphism) -> Result<OrbitMorphism> {
        let a = self.index_of(m.source()).ok_or_else(|| Error::input("morphism source is not an object"))?;
        let b = self.index_of(m.target()).ok_or_else(|| Error::input("morphism target is not an object"))?;
        let images = canonical_images(self.f.group(), &self.objects[b], m.images());
        Ok(OrbitMorphism { source: a, target: b, images })
    }

    /// Position of a class in its hom list.
    pub fn position(&self, m: &OrbitMorphism) -> Result<usize> {
        self.hom(m.source, m.target)?
            .binary_search(m)
            .map_err(|_| Error::internal("orbit morphism missing from its hom set"))
    }

    pub fn representative(&self, m: &OrbitMorphism) -> FMorphism {
        let src = self.objects[m.source].clone();
        FMorphism::new(GroupMorphism::from_parts(src, m.images.clone()), self.objects[m.target].clone())
    }

    pub fn identity_morphism(&self, a: usize) -> OrbitMorphism {
        let obj = &self.objects[a];
        OrbitMorphism { source: a, target: a, images: canonical_images(self.f.group(), obj, obj.gens()) }
    }

    pub fn inclusion(&self, a: usize, b: usize) -> Result<OrbitMorphism> {
        if !self.objects[a].is_subgroup_of(&self.objects[b]) {
            return Err(Error::input("inclusion between non-nested objects"));
        }
        let images = canonical_images(self.f.group(), &self.objects[b], self.objects[a].gens());
        Ok(OrbitMorphism { source: a, target: b, images })
    }

    /// `[ψ] ∘ [φ]` computed on representatives.
    pub fn compose_morphisms(&self, psi: &OrbitMorphism, phi: &OrbitMorphism) -> Result<OrbitMorphism> {
        if psi.source != phi.target {
            return Err(Error::input("morphisms are not composable"));
        }
        let g = self.f.group();
        let rep = GroupMorphism::from_parts(self.objects[psi.source].clone(), psi.images.clone());
        let imgs: Vec<Elem> = phi.images.iter().map(|&y| rep.apply(g, y)).collect();
        Ok(OrbitMorphism { source: phi.source, target: psi.target, images: canonical_images(g, &self.objects[psi.target], &imgs) })
    }

    pub fn is_isomorphism(&self, m: &OrbitMorphism) -> bool {
        self.objects[m.source].order() == self.objects[m.target].order()
    }

    /// Checks that composition does not depend on representatives, over at most `budget` pairs.
    pub fn verify_composition(&self, budget: usize) -> Result<usize> {
        let g = self.f.group();
        let n = self.objects.len();
        let mut checked = 0;
        'outer: for a in 0..n {
            for b in 0..n {
                if self.objects[a].order() > self.objects[b].order() {
                    continue;
                }
                let fs = self.hom(a, b)?;
                if fs.is_empty() {
                    continue;
                }
                for c in 0..n {
                    if self.objects[b].order() > self.objects[c].order() {
                        continue;
                    }
                    let gs = self.hom(b, c)?;
                    for phi in fs.iter() {
                        for psi in gs.iter() {
                            if checked >= budget {
                                break 'outer;
                            }
                            checked += 1;
                            let expected = self.compose_morphisms(psi, phi)?;
                            let yb = *self.objects[b].gens().last().unwrap_or(&0);
                            let yc = *self.objects[c].gens().first().unwrap_or(&0);
                            let phi2: Vec<Elem> = phi.images.iter().map(|&t| g.conj(yb, t)).collect();
                            let rep = GroupMorphism::from_parts(self.objects[b].clone(), psi.images.clone());
                            let imgs: Vec<Elem> = phi2.iter().map(|&t| g.conj(yc, rep.apply(g, t))).collect();
                            if canonical_images(g, &self.objects[c], &imgs) != expected.images {
                                return Err(Error::internal("orbit composition depends on representatives"));
                            }
                        }
                    }
                }
            }
        }
        Ok(checked)
    }

    /// One object per `F`-class (its fully normalized representative), with isomorphisms onto it.
    pub fn skeleton(&self) -> Result<Skeleton<'a>> {
        let mut reps = Vec::new();
        for class in self.f.classes(&self.objects)? {
            reps.push(self.f.fully_normalized_rep(&class[0])?);
        }
        let category = OrbitCategory::build_unchecked(self.f, &reps)?;
        let mut retraction = Vec::with_capacity(self.objects.len());
        for obj in &self.objects {
            let rep = self.f.fully_normalized_rep(obj)?;
            let iso = self.f.first_iso(obj, &rep)?.ok_or_else(|| Error::internal("class representative not reached"))?;
            let idx = category.index_of(&rep).expect("representative is an object");
            retraction.push((idx, FMorphism::new(iso, rep)));
        }
        Ok(Skeleton { category, retraction })
    }
}

impl FiniteCategory for OrbitCategory<'_> {
    fn object_count(&self) -> usize {
        self.objects.len()
    }

    fn hom_count(&self, a: usize, b: usize) -> Result<usize> {
        if self.objects[a].order() > self.objects[b].order() {
            return Ok(0);
        }
        Ok(self.hom(a, b)?.len())
    }

    fn identity(&self, a: usize) -> Result<usize> {
        self.position(&self.identity_morphism(a))
    }

    fn compose(&self, a: usize, b: usize, c: usize, g: usize, f: usize) -> Result<usize> {
        let phi = self.hom(a, b)?[f].clone();
        let psi = self.hom(b, c)?[g].clone();
        self.position(&self.compose_morphisms(&psi, &phi)?)
    }
}

/// A skeletal full subcategory and, per object of the original category, an isomorphism onto its representative.
#[derive(Debug)]
pub struct Skeleton<'a> {
    pub category: OrbitCategory<'a>,
    pub retraction: Vec<(usize, FMorphism)>,
}
