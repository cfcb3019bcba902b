use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::matrix::FpMatrix;
use super::poly;
use super::rep::{spin, FpGroupRep};
use super::subspace::FpSubspace;

/// Limits for [`chop_simples_with`].
#[derive(Clone, Copy, Debug)]
pub struct ChopConfig {
    pub seed: u64,
    pub max_dim: usize,
    pub max_tries: usize,
}

impl Default for ChopConfig {
    fn default() -> Self {
        ChopConfig { seed: 0, max_dim: 600, max_tries: 200 }
    }
}

/// Pairwise non-isomorphic composition factors with their multiplicities.
#[derive(Clone, Debug)]
pub struct ChopResult {
    pub simples: Vec<FpGroupRep>,
    pub multiplicities: Vec<usize>,
}

pub fn chop_simples(rep: &FpGroupRep, seed: u64) -> Result<ChopResult> {
    chop_simples_with(rep, &ChopConfig { seed, ..ChopConfig::default() })
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n > 1 && n % p == 0 {
        n /= p;
    }
    n == 1
}

pub fn chop_simples_with(rep: &FpGroupRep, config: &ChopConfig) -> Result<ChopResult> {
    if rep.dim() > config.max_dim {
        return Err(Error::resource("module dimension", config.max_dim as u64));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut factors: Vec<FpGroupRep> = Vec::new();
    if rep.dim() > 0 && is_power_of(rep.group().order(), rep.prime() as usize) {
        // A p-group has only the trivial simple module in characteristic p.
        let triv = FpGroupRep::trivial(rep.group().clone(), rep.prime());
        return Ok(ChopResult { simples: vec![triv], multiplicities: vec![rep.dim()] });
    }
    let mut stack = vec![rep.clone()];
    while let Some(m) = stack.pop() {
        if m.dim() == 0 {
            continue;
        }
        match find_submodule(&m, &mut rng, config.max_tries)? {
            None => factors.push(m),
            Some(w) => {
                stack.push(m.quotient(&w)?);
                stack.push(m.submodule(&w)?);
            }
        }
    }
    let mut simples: Vec<FpGroupRep> = Vec::new();
    let mut multiplicities = Vec::new();
    for f in factors {
        let mut found = None;
        for (i, s) in simples.iter().enumerate() {
            if are_isomorphic(s, &f, config.seed)? {
                found = Some(i);
                break;
            }
        }
        match found {
            Some(i) => multiplicities[i] += 1,
            None => {
                simples.push(f);
                multiplicities.push(1);
            }
        }
    }
    let mut order: Vec<usize> = (0..simples.len()).collect();
    order.sort_by_key(|&i| (simples[i].dim(), !simples[i].is_trivial_action()));
    Ok(ChopResult {
        simples: order.iter().map(|&i| simples[i].clone()).collect(),
        multiplicities: order.iter().map(|&i| multiplicities[i]).collect(),
    })
}

/// Random element of the enveloping algebra, built from a growing pool of words.
fn random_algebra_element<R: Rng>(pool: &mut Vec<FpMatrix>, rng: &mut R, p: u32) -> FpMatrix {
    let a = rng.gen_range(0..pool.len());
    let b = rng.gen_range(0..pool.len());
    let w = &pool[a] * &pool[b];
    pool.push(w);
    let n = pool[0].rows();
    let mut acc = FpMatrix::zeros(p, n, n);
    for _ in 0..pool.len().min(4) {
        let i = rng.gen_range(0..pool.len());
        let c = rng.gen_range(1..p);
        acc = &acc + &pool[i].scale(c);
    }
    acc
}

/// A proper nonzero submodule, or `None` with an irreducibility certificate (Norton's test).
pub fn find_submodule<R: Rng>(rep: &FpGroupRep, rng: &mut R, max_tries: usize) -> Result<Option<FpSubspace>> {
    let d = rep.dim();
    let p = rep.prime();
    if d <= 1 {
        return Ok(None);
    }
    if rep.is_trivial_action() {
        let mut e = vec![0u32; d];
        e[0] = 1;
        return Ok(Some(FpSubspace::from_vectors(p, d, &[e])));
    }
    let gens = rep.generator_matrices();
    let transposes: Vec<FpMatrix> = gens.iter().map(FpMatrix::transpose).collect();
    let mut pool: Vec<FpMatrix> = gens.to_vec();
    for _ in 0..max_tries {
        let a = random_algebra_element(&mut pool, rng, p);
        let cp = poly::charpoly(&a);
        for f in poly::irreducible_factors(&cp, p, rng).into_iter().take(3) {
            let fa = poly::eval_matrix(&f, &a);
            let null = fa.kernel();
            let vectors = null.basis_vectors();
            let (w, _, _) = spin(&vectors[0], gens);
            if w.dim() < d {
                return Ok(Some(w));
            }
            if null.dim() == f.len() - 1 {
                let null_t = fa.transpose().kernel();
                let (u, _, _) = spin(&null_t.basis_vectors()[0], &transposes);
                if u.dim() < d {
                    return Ok(Some(u.annihilator()));
                }
                return Ok(None);
            }
            // Cheap extra chance: a random kernel vector may already generate a proper submodule.
            let coords: Vec<u32> = (0..null.dim()).map(|_| rng.gen_range(0..p)).collect();
            let v = null.combination(&coords);
            if v.iter().any(|&x| x != 0) {
                let (w, _, _) = spin(&v, gens);
                if w.dim() < d {
                    return Ok(Some(w));
                }
            }
        }
    }
    Err(Error::Certificate(format!(
        "no irreducibility certificate or splitting found for a {d}-dimensional module after {max_tries} tries"
    )))
}

/// Dimension of `Hom_G(a, b)` for a simple module `a`.
///
/// A homomorphism is fixed by the image of one vector `v` of `a`, which must lie in
/// `ker f(A_b)` whenever `v` lies in `ker f(A_a)`; this reduces to a small linear system.
pub fn hom_dim_from_simple(a: &FpGroupRep, b: &FpGroupRep, seed: u64) -> Result<usize> {
    if a.prime() != b.prime() || !std::sync::Arc::ptr_eq(a.group(), b.group()) && a.group() != b.group() {
        return Err(Error::input("modules over different groups or fields"));
    }
    let p = a.prime();
    let (da, db) = (a.dim(), b.dim());
    if da == 0 || db == 0 {
        return Ok(0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    // Pick an algebra element and factor with small kernel on `a`.
    let mut pool_a = a.generator_matrices().to_vec();
    let mut pool_b = b.generator_matrices().to_vec();
    let mut best: Option<(FpSubspace, FpSubspace)> = None;
    for _ in 0..8 {
        let state: u64 = rng.gen();
        let xa = random_algebra_element(&mut pool_a, &mut ChaCha8Rng::seed_from_u64(state), p);
        let xb = random_algebra_element(&mut pool_b, &mut ChaCha8Rng::seed_from_u64(state), p);
        for f in poly::irreducible_factors(&poly::charpoly(&xa), p, &mut rng) {
            let na = poly::eval_matrix(&f, &xa).kernel();
            let nb = poly::eval_matrix(&f, &xb).kernel();
            if best.as_ref().map_or(true, |(_, old)| nb.dim() < old.dim()) {
                best = Some((na, nb));
            }
        }
        if best.as_ref().is_some_and(|(_, nb)| nb.dim() <= 1) {
            break;
        }
    }
    let Some((na, nb)) = best else { return Ok(0) };
    if nb.is_zero() {
        return Ok(0);
    }
    let gens_a = a.generator_matrices();
    let gens_b = b.generator_matrices();
    let (span, raw, steps) = spin(&na.basis_vectors()[0], gens_a);
    if span.dim() != da {
        return Err(Error::input("first module is not simple"));
    }
    let basis_a = FpMatrix::from_rows(p, da, &raw)?.transpose();
    let inv_a = basis_a.inverse().expect("spin basis is a basis");
    // For each basis vector of nb, the candidate map X_i sending raw[k] to the same word applied to it.
    let candidates: Vec<FpMatrix> = nb
        .basis_vectors()
        .iter()
        .map(|w| {
            let mut imgs: Vec<Vec<u32>> = Vec::with_capacity(da);
            for step in &steps {
                let v = match step {
                    None => w.clone(),
                    Some((parent, s)) => gens_b[*s].apply(&imgs[*parent]),
                };
                imgs.push(v);
            }
            let cols = FpMatrix::from_rows(p, db, &imgs).expect("lengths").transpose();
            &cols * &inv_a
        })
        .collect();
    let k = candidates.len();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (ma, mb) in gens_a.iter().zip(gens_b) {
        let defects: Vec<FpMatrix> = candidates.iter().map(|x| &(x * ma) - &(mb * x)).collect();
        for r in 0..db {
            for c in 0..da {
                let row: Vec<u32> = defects.iter().map(|m| m.get(r, c)).collect();
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Ok(k);
    }
    Ok(FpMatrix::from_rows(p, k, &rows)?.kernel().dim())
}

/// Isomorphism test for simple modules.
pub fn are_isomorphic(a: &FpGroupRep, b: &FpGroupRep, seed: u64) -> Result<bool> {
    if a.dim() != b.dim() {
        return Ok(false);
    }
    for (ma, mb) in a.generator_matrices().iter().zip(b.generator_matrices()) {
        if poly::charpoly(ma) != poly::charpoly(mb) {
            return Ok(false);
        }
    }
    Ok(hom_dim_from_simple(a, b, seed)? > 0)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fplin::group::FiniteGroup;

    #[test]
    fn trivial_group() {
        let rep = FpGroupRep::regular(Arc::new(FiniteGroup::trivial()), 5);
        let out = chop_simples(&rep, 1).unwrap();
        assert_eq!(out.simples.len(), 1);
        assert_eq!(out.simples[0].dim(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let rep = FpGroupRep::regular(Arc::new(FiniteGroup::cyclic(8)), 3);
        let cfg = ChopConfig { max_dim: 4, ..ChopConfig::default() };
        assert!(matches!(chop_simples_with(&rep, &cfg), Err(Error::Resource { .. })));
    }
}
