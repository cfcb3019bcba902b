use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pgroup::{CatalogEntry, Elem, PcGroup};

pub type Perm = Vec<u32>;

/// `(a * b)(i) = a(b(i))`
fn compose(a: &[u32], b: &[u32]) -> Perm {
    b.iter().map(|&i| a[i as usize]).collect()
}

fn inverse(a: &[u32]) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j as usize] = i as u32;
    }
    inv
}

/// Serialized description of an ambient permutation group containing `S`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AmbientSpec {
    pub degree: usize,
    /// Generators of `G` as image lists of `0..degree`.
    pub generators: Vec<Perm>,
    /// Images of the pc generators of `S`.
    pub sylow: Vec<Perm>,
}

/// A finite group `G` acting faithfully on points, with `S` embedded as a Sylow `p`-subgroup.
/// Conjugation is `c_g(x) = g x g^{-1}` with permutations composed right to left.
#[derive(Clone, Debug)]
pub struct AmbientOracle {
    spec: AmbientSpec,
    elements: Vec<Perm>,
    s_perm: Vec<Perm>,
    s_index: HashMap<Perm, Elem>,
}

impl AmbientOracle {
    pub fn new(s: &PcGroup, spec: AmbientSpec, order_limit: usize) -> Result<Self> {
        let n = spec.degree;
        if n == 0 || n > 100_000 {
            return Err(Error::input(format!("ambient degree {n} outside 1..=100000")));
        }
        for perm in spec.generators.iter().chain(&spec.sylow) {
            let mut seen = vec![false; n];
            if perm.len() != n || perm.iter().any(|&i| i as usize >= n || std::mem::replace(&mut seen[i as usize], true)) {
                return Err(Error::input("ambient permutation is not a permutation of the stated degree"));
            }
        }
        if spec.sylow.len() != s.rank() {
            return Err(Error::input(format!("need {} Sylow generator images, got {}", s.rank(), spec.sylow.len())));
        }
        let id: Perm = (0..n as u32).collect();
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in &spec.generators {
                let y = compose(&x, g);
                if !seen.contains(&y) {
                    if elements.len() >= order_limit {
                        return Err(Error::resource("ambient group order", order_limit as u64));
                    }
                    seen.insert(y.clone());
                    elements.push(y);
                }
            }
        }
        elements.sort();
        for img in &spec.sylow {
            if !seen.contains(img) {
                return Err(Error::input("Sylow generator image is not in the ambient group"));
            }
        }
        let p = s.prime() as usize;
        let index = elements.len() / s.order() as usize;
        if elements.len() % s.order() as usize != 0 || index % p == 0 {
            return Err(Error::input(format!(
                "S of order {} is not a Sylow {p}-subgroup of a group of order {}",
                s.order(),
                elements.len()
            )));
        }
        let mut s_perm: Vec<Perm> = Vec::with_capacity(s.order() as usize);
        for x in s.elements() {
            let mut acc = id.clone();
            for (i, e) in s.exponents(x).into_iter().enumerate() {
                for _ in 0..e {
                    acc = compose(&acc, &spec.sylow[i]);
                }
            }
            s_perm.push(acc);
        }
        for x in s.elements() {
            for i in 0..s.rank() {
                if s_perm[s.mul(x, s.generator(i)) as usize] != compose(&s_perm[x as usize], &spec.sylow[i]) {
                    return Err(Error::input(format!("Sylow images do not satisfy the relations (element {x}, generator {i})")));
                }
            }
        }
        let s_index: HashMap<Perm, Elem> = s_perm.iter().cloned().enumerate().map(|(i, q)| (q, i as Elem)).collect();
        if s_index.len() != s_perm.len() {
            return Err(Error::input("Sylow embedding is not injective"));
        }
        Ok(AmbientOracle { spec, elements, s_perm, s_index })
    }

    pub fn spec(&self) -> &AmbientSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn perm_of(&self, x: Elem) -> &Perm {
        &self.s_perm[x as usize]
    }

    /// `g x g^{-1}` as an element of `S`, if it lies there.
    pub fn conj_into_s(&self, g: &[u32], g_inv: &[u32], x: Elem) -> Option<Elem> {
        let c = compose(&compose(g, &self.s_perm[x as usize]), g_inv);
        self.s_index.get(&c).copied()
    }

    /// Images of `gens` under every conjugation map `c_g` (g in G) that sends all of them into `S`.
    pub fn conjugation_images(&self, gens: &[Elem]) -> Vec<Vec<Elem>> {
        let mut out: HashSet<Vec<Elem>> = HashSet::new();
        for g in &self.elements {
            let g_inv = inverse(g);
            let imgs: Option<Vec<Elem>> = gens.iter().map(|&x| self.conj_into_s(g, &g_inv, x)).collect();
            if let Some(imgs) = imgs {
                out.insert(imgs);
            }
        }
        let mut out: Vec<Vec<Elem>> = out.into_iter().collect();
        out.sort();
        out
    }
}

fn cycle_perm(n: usize, cycles: &[&[u32]]) -> Perm {
    let mut p: Perm = (0..n as u32).collect();
    for c in cycles {
        for (k, &i) in c.iter().enumerate() {
            p[i as usize] = c[(k + 1) % c.len()];
        }
    }
    p
}

fn commutator(a: &[u32], b: &[u32]) -> Perm {
    compose(&compose(&inverse(a), &inverse(b)), &compose(a, b))
}

/// Points of the projective plane over `F_3` as normalized column vectors.
fn projective_points() -> Vec<[u32; 3]> {
    let mut pts = Vec::new();
    for a in 0..3u32 {
        for b in 0..3u32 {
            for c in 0..3u32 {
                let v = [a, b, c];
                if let Some(first) = v.iter().find(|&&x| x != 0) {
                    if *first == 1 {
                        pts.push(v);
                    }
                }
            }
        }
    }
    pts
}

fn matrix_perm(m: [[u32; 3]; 3], pts: &[[u32; 3]]) -> Perm {
    pts.iter()
        .map(|v| {
            let mut w = [0u32; 3];
            for (i, wi) in w.iter_mut().enumerate() {
                *wi = (0..3).map(|j| m[i][j] * v[j]).sum::<u32>() % 3;
            }
            let lead = *w.iter().find(|&&x| x != 0).expect("invertible");
            let scale = if lead == 1 { 1 } else { 2 };
            let w = w.map(|x| x * scale % 3);
            pts.iter().position(|u| *u == w).expect("projective point") as u32
        })
        .collect()
}

fn elementary(i: usize, j: usize) -> [[u32; 3]; 3] {
    let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    m[i][j] = 1;
    m
}

/// Named ambient groups for the `p = 3` corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmbientCatalog {
    /// `Sym(3) x Sym(3)` on 6 points, Sylow `C_3 x C_3`.
    Sym3xSym3,
    /// `SL_3(3)` on the 13 points of the projective plane, Sylow `3^{1+2}`.
    Sl3Mod3,
    /// `Sym(3) wr Sym(3)` on 9 points, Sylow `C_3 wr C_3`.
    Sym3WrSym3,
}

impl std::str::FromStr for AmbientCatalog {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym3xsym3" => Ok(AmbientCatalog::Sym3xSym3),
            "sl3_3" => Ok(AmbientCatalog::Sl3Mod3),
            "sym3wrsym3" => Ok(AmbientCatalog::Sym3WrSym3),
            _ => Err(Error::input(format!("unknown ambient group '{s}' (expected sym3xsym3, sl3_3 or sym3wrsym3)"))),
        }
    }
}

impl std::fmt::Display for AmbientCatalog {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AmbientCatalog::Sym3xSym3 => "sym3xsym3",
            AmbientCatalog::Sl3Mod3 => "sl3_3",
            AmbientCatalog::Sym3WrSym3 => "sym3wrsym3",
        })
    }
}

impl AmbientCatalog {
    pub const ALL: [AmbientCatalog; 3] = [AmbientCatalog::Sym3xSym3, AmbientCatalog::Sl3Mod3, AmbientCatalog::Sym3WrSym3];

    /// Every catalog ambient is taken at `p = 3`.
    pub const PRIME: u32 = 3;

    /// The catalog group `S` (at `p = 3`) this ambient contains.
    pub fn sylow_entry(&self) -> CatalogEntry {
        match self {
            AmbientCatalog::Sym3xSym3 => CatalogEntry::ElementaryAbelian(2),
            AmbientCatalog::Sl3Mod3 => CatalogEntry::ExtraspecialPlus,
            AmbientCatalog::Sym3WrSym3 => CatalogEntry::WreathCpCp,
        }
    }

    pub fn spec(&self) -> AmbientSpec {
        match self {
            AmbientCatalog::Sym3xSym3 => {
                let a = cycle_perm(6, &[&[0, 1, 2]]);
                let b = cycle_perm(6, &[&[3, 4, 5]]);
                AmbientSpec {
                    degree: 6,
                    generators: vec![a.clone(), cycle_perm(6, &[&[0, 1]]), b.clone(), cycle_perm(6, &[&[3, 4]])],
                    sylow: vec![a, b],
                }
            }
            AmbientCatalog::Sl3Mod3 => {
                let pts = projective_points();
                let mut generators = Vec::new();
                for i in 0..3 {
                    for j in 0..3 {
                        if i != j {
                            generators.push(matrix_perm(elementary(i, j), &pts));
                        }
                    }
                }
                let x = matrix_perm(elementary(0, 1), &pts);
                let y = matrix_perm(elementary(1, 2), &pts);
                let z = matrix_perm(elementary(0, 2), &pts);
                AmbientSpec { degree: pts.len(), generators, sylow: vec![x, y, z] }
            }
            AmbientCatalog::Sym3WrSym3 => {
                let t = cycle_perm(9, &[&[0, 3, 6], &[1, 4, 7], &[2, 5, 8]]);
                let a = cycle_perm(9, &[&[0, 1, 2]]);
                let g2 = commutator(&a, &t);
                let g3 = commutator(&g2, &t);
                AmbientSpec {
                    degree: 9,
                    generators: vec![
                        a.clone(),
                        cycle_perm(9, &[&[0, 1]]),
                        t.clone(),
                        cycle_perm(9, &[&[0, 3], &[1, 4], &[2, 5]]),
                    ],
                    sylow: vec![t, a, g2, g3],
                }
            }
        }
    }
}
