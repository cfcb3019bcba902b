#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use fusionsharp::fusion::AmbientCatalog;
use fusionsharp::pgroup::{Elem, PcGroup, Subgroup};

pub type Perm = Vec<u32>;

pub fn compose(a: &[u32], b: &[u32]) -> Perm {
    b.iter().map(|&i| a[i as usize]).collect()
}

pub fn inverse(a: &[u32]) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j as usize] = i as u32;
    }
    inv
}

/// Independent model of an ambient group: every element and the permutation of every element of `S`.
pub struct Brute {
    pub elements: Vec<Perm>,
    pub s_perm: Vec<Perm>,
    pub s_index: HashMap<Perm, Elem>,
}

impl Brute {
    pub fn new(s: &PcGroup, entry: AmbientCatalog) -> Self {
        let spec = entry.spec();
        let id: Perm = (0..spec.degree as u32).collect();
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut stack = vec![id.clone()];
        while let Some(x) = stack.pop() {
            for g in &spec.generators {
                let y = compose(g, &x);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        let s_perm: Vec<Perm> = s
            .elements()
            .map(|x| {
                let mut acc = id.clone();
                for (i, e) in s.exponents(x).into_iter().enumerate() {
                    for _ in 0..e {
                        acc = compose(&acc, &spec.sylow[i]);
                    }
                }
                acc
            })
            .collect();
        let s_index = s_perm.iter().cloned().zip(0..).collect();
        Brute { elements: seen.into_iter().collect(), s_perm, s_index }
    }

    /// Distinct maps `c_g|_P` landing in `Q`, as image tuples on the canonical generators of `P`.
    pub fn hom(&self, s: &PcGroup, p: &Subgroup, q: &Subgroup) -> BTreeSet<Vec<Elem>> {
        let mut out = BTreeSet::new();
        for g in &self.elements {
            let gi = inverse(g);
            let imgs: Option<Vec<Elem>> = p
                .elements()
                .iter()
                .map(|&x| self.s_index.get(&compose(&compose(g, &self.s_perm[x as usize]), &gi)).copied())
                .collect();
            if let Some(imgs) = imgs {
                if imgs.iter().all(|&y| q.contains(y)) {
                    let on_gens: Vec<Elem> = p.gens().iter().map(|&x| imgs[p.elements().binary_search(&x).unwrap()]).collect();
                    out.insert(on_gens);
                }
            }
        }
        let _ = s;
        out
    }
}


impl Brute {
    /// The map `x -> g x g^{-1}` on `p`, if it lands in `S`, as images of `p`'s generators.
    pub fn conj_images(&self, g: &[u32], p: &Subgroup) -> Option<Vec<Elem>> {
        let gi = inverse(g);
        p.gens()
            .iter()
            .map(|&x| self.s_index.get(&compose(&compose(g, &self.s_perm[x as usize]), &gi)).copied())
            .collect()
    }
}
