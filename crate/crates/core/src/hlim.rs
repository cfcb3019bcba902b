//! Higher limits of contravariant functors over finite categories via the normalized bar complex.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fplin::FpMatrix;
use crate::fusion::FusionSystem;
use crate::mackey::{MackeyFunctorData, SqvFunctor};
use crate::orbitcat::{chains, count_chains, Chain, FiniteCategory, OrbitCategory};

pub const DEFAULT_DEGREES: usize = 3;
pub const DEFAULT_CHAIN_BUDGET: usize = 1_000_000;
/// Largest number of entries allowed in one differential matrix.
pub const MAX_DIFFERENTIAL_ENTRIES: u64 = 50_000_000;

/// An `F_p`-valued contravariant functor on a finite category.
pub trait ContravariantFunctor: Sync {
    fn prime(&self) -> u32;

    fn dim(&self, obj: usize) -> Result<usize>;

    /// `F(f): F(b) -> F(a)` for the `f`-th arrow `a -> b`, of shape `dim(a) x dim(b)`.
    fn map(&self, a: usize, b: usize, f: usize) -> Result<FpMatrix>;
}

#[derive(Clone, Debug)]
pub struct CochainComplex {
    /// Normalized chains of length `0..=degrees`.
    pub chains: Vec<Vec<Chain>>,
    pub dims: Vec<usize>,
    /// `d^n: C^n -> C^{n+1}` for `n < degrees`.
    pub differentials: Vec<FpMatrix>,
}

/// Builds `C^0 -> ... -> C^degrees` with `C^n` the product over normalized `n`-chains
/// `x_0 -> ... -> x_n` of `F(x_0)`, and checks `d ∘ d = 0`.
pub fn build_complex<C, F>(cat: &C, functor: &F, degrees: usize, budget: usize) -> Result<CochainComplex>
where
    C: FiniteCategory + Sync + ?Sized,
    F: ContravariantFunctor + ?Sized,
{
    let mut counts = Vec::new();
    for n in 0..=degrees {
        counts.push(count_chains(cat, n, true)?);
    }
    let total: u128 = counts.iter().sum();
    if total > budget as u128 {
        return Err(Error::resource(format!("{total} chains up to degree {degrees} (per degree {counts:?})"), budget as u64));
    }
    let mut all = Vec::new();
    for n in 0..=degrees {
        all.push(chains(cat, n, true, budget)?);
    }
    let obj_dims = (0..cat.object_count()).map(|a| functor.dim(a)).collect::<Result<Vec<_>>>()?;
    let mut offsets = Vec::new();
    let mut dims = Vec::new();
    let mut index = Vec::new();
    for level in &all {
        let mut off = Vec::with_capacity(level.len());
        let mut acc = 0;
        let mut idx = HashMap::with_capacity(level.len());
        for (k, ch) in level.iter().enumerate() {
            off.push(acc);
            acc += obj_dims[ch.source()];
            idx.insert((ch.objects.clone(), ch.arrows.clone()), k);
        }
        offsets.push(off);
        dims.push(acc);
        index.push(idx);
    }
    for n in 0..degrees {
        let cells = dims[n] as u64 * dims[n + 1] as u64;
        if cells > MAX_DIFFERENTIAL_ENTRIES {
            return Err(Error::resource(format!("differential d^{n} of shape {} x {} (cochain dimensions {dims:?})", dims[n + 1], dims[n]), MAX_DIFFERENTIAL_ENTRIES));
        }
    }
    let p = functor.prime();
    let mut differentials = Vec::with_capacity(degrees);
    for n in 0..degrees {
        let blocks: Vec<Vec<(usize, usize, FpMatrix)>> = all[n + 1]
            .par_iter()
            .enumerate()
            .map(|(row, ch)| {
                faces(cat, functor, ch, &index[n], p)
                    .map(|fs| fs.into_iter().map(|(col, m)| (offsets[n + 1][row], offsets[n][col], m)).collect())
            })
            .collect::<Result<_>>()?;
        let mut d = FpMatrix::zeros(p, dims[n + 1], dims[n]);
        for (r0, c0, m) in blocks.into_iter().flatten() {
            let sum = &d.submatrix(r0..r0 + m.rows(), c0..c0 + m.cols()) + &m;
            d.set_block(r0, c0, &sum);
        }
        differentials.push(d);
    }
    for n in 1..differentials.len() {
        if !(&differentials[n] * &differentials[n - 1]).is_zero() {
            return Err(Error::internal(format!("d^{n} d^{} is nonzero", n - 1)));
        }
    }
    Ok(CochainComplex { chains: all, dims, differentials })
}

/// The blocks of `(dc)(σ)` for the `(n+1)`-chain `σ`, keyed by the `n`-chain they read.
fn faces<C, F>(
    cat: &C,
    functor: &F,
    ch: &Chain,
    index: &HashMap<(Vec<usize>, Vec<usize>), usize>,
    p: u32,
) -> Result<Vec<(usize, FpMatrix)>>
where
    C: FiniteCategory + ?Sized,
    F: ContravariantFunctor + ?Sized,
{
    let len = ch.arrows.len();
    let x0 = ch.source();
    let d0 = functor.dim(x0)?;
    let mut out = Vec::new();
    let lookup = |objects: Vec<usize>, arrows: Vec<usize>| {
        index.get(&(objects, arrows)).copied().ok_or_else(|| Error::internal("face of a normalized chain is missing"))
    };
    let k = lookup(ch.objects[1..].to_vec(), ch.arrows[1..].to_vec())?;
    out.push((k, functor.map(x0, ch.objects[1], ch.arrows[0])?));
    for i in 1..len {
        let (a, b, c) = (ch.objects[i - 1], ch.objects[i], ch.objects[i + 1]);
        let comp = cat.compose(a, b, c, ch.arrows[i], ch.arrows[i - 1])?;
        if a == c && comp == cat.identity(a)? {
            continue;
        }
        let mut objects = ch.objects.clone();
        objects.remove(i);
        let mut arrows = ch.arrows.clone();
        arrows.splice(i - 1..=i, [comp]);
        let sign = if i % 2 == 1 { p - 1 } else { 1 };
        out.push((lookup(objects, arrows)?, FpMatrix::scalar(p, d0, sign)));
    }
    let sign = if len % 2 == 1 { p - 1 } else { 1 };
    out.push((lookup(ch.objects[..len].to_vec(), ch.arrows[..len - 1].to_vec())?, FpMatrix::scalar(p, d0, sign)));
    Ok(out)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DegreeDim {
    pub i: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub degrees: Vec<DegreeDim>,
    pub chain_counts: Vec<usize>,
    pub cochain_dims: Vec<usize>,
    pub ranks: Vec<usize>,
    /// `lim^0` from the equalizer of `Π F(x) ⇉ Π_{f: x -> y} F(x)`.
    pub equalizer_lim0: usize,
    pub warnings: Vec<String>,
}

impl CohomologyReport {
    pub fn lim(&self, i: usize) -> Option<usize> {
        self.degrees.iter().find(|d| d.i == i).map(|d| d.dim)
    }

    pub fn higher_vanish(&self) -> bool {
        self.degrees.iter().all(|d| d.i == 0 || d.dim == 0)
    }
}

/// `lim^i` for `i < degrees`.
pub fn cohomology<C, F>(cat: &C, functor: &F, degrees: usize, budget: usize) -> Result<CohomologyReport>
where
    C: FiniteCategory + Sync + ?Sized,
    F: ContravariantFunctor + ?Sized,
{
    if degrees == 0 {
        return Err(Error::input("at least one degree is needed"));
    }
    let complex = build_complex(cat, functor, degrees, budget)?;
    let ranks: Vec<usize> = complex.differentials.iter().map(|d| d.rank()).collect();
    let mut out = Vec::with_capacity(degrees);
    for i in 0..degrees {
        let nullity = complex.differentials[i].kernel().dim();
        if nullity + ranks[i] != complex.dims[i] {
            return Err(Error::internal(format!("rank-nullity fails in degree {i}")));
        }
        let incoming = if i == 0 { 0 } else { ranks[i - 1] };
        out.push(DegreeDim { i, dim: nullity - incoming });
    }
    let equalizer_lim0 = equalizer_lim0(cat, functor)?;
    if equalizer_lim0 != out[0].dim {
        return Err(Error::internal(format!("lim^0 is {} from the complex but {equalizer_lim0} from the equalizer", out[0].dim)));
    }
    Ok(CohomologyReport {
        degrees: out,
        chain_counts: complex.chains.iter().map(Vec::len).collect(),
        cochain_dims: complex.dims,
        ranks,
        equalizer_lim0,
        warnings: Vec::new(),
    })
}

/// Dimension of the families `(v_x)` with `F(f) v_y = v_x` for every arrow `f: x -> y`.
pub fn equalizer_lim0<C, F>(cat: &C, functor: &F) -> Result<usize>
where
    C: FiniteCategory + ?Sized,
    F: ContravariantFunctor + ?Sized,
{
    let n = cat.object_count();
    let p = functor.prime();
    let dims = (0..n).map(|a| functor.dim(a)).collect::<Result<Vec<_>>>()?;
    let mut offs = vec![0; n + 1];
    for a in 0..n {
        offs[a + 1] = offs[a] + dims[a];
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for f in 0..cat.hom_count(a, b)? {
                let m = functor.map(a, b, f)?;
                for r in 0..dims[a] {
                    let mut row = vec![0; offs[n]];
                    for c in 0..dims[b] {
                        row[offs[b] + c] = (row[offs[b] + c] + m.get(r, c)) % p;
                    }
                    row[offs[a] + r] = (row[offs[a] + r] + p - 1) % p;
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Ok(offs[n]);
    }
    Ok(offs[n] - FpMatrix::from_rows(p, offs[n], &rows)?.rank())
}

/// The contravariant part of a Mackey functor on the objects of an orbit category.
pub struct MackeyRestriction<'a, 'c, M: MackeyFunctorData> {
    pub category: &'c OrbitCategory<'a>,
    pub functor: &'c M,
}

impl<M: MackeyFunctorData + Sync> ContravariantFunctor for MackeyRestriction<'_, '_, M> {
    fn prime(&self) -> u32 {
        self.functor.fusion().group().prime()
    }

    fn dim(&self, obj: usize) -> Result<usize> {
        self.functor.dim(self.category.object(obj))
    }

    fn map(&self, a: usize, b: usize, f: usize) -> Result<FpMatrix> {
        let m = self.category.hom(a, b)?[f].clone();
        self.functor.contravariant(&self.category.representative(&m))
    }
}

/// `lim^i` (`i < degrees`) of `S_{Q,V}^*` over the skeletal centric orbit category.
/// `composition_zero` is the verdict of the zero-composition scan for `f`, if one was run.
pub fn higher_limits(
    f: &FusionSystem,
    m: &SqvFunctor<'_>,
    subgroup_limit: usize,
    degrees: usize,
    budget: usize,
    composition_zero: Option<bool>,
) -> Result<CohomologyReport> {
    let subs = f.lattice(subgroup_limit)?;
    let centric = f.centric_collection(&subs)?;
    let cat = OrbitCategory::build(f, &centric)?;
    let skeleton = cat.skeleton()?;
    let restricted = MackeyRestriction { category: &skeleton.category, functor: m };
    let mut report = cohomology(&skeleton.category, &restricted, degrees, budget)?;
    match composition_zero {
        Some(true) => {}
        Some(false) => report.warnings.push("the scan found a nonzero composite, so the restriction need not be a truncated Mackey functor".into()),
        None => report.warnings.push("no scan was run, so truncation of the restriction is unverified".into()),
    }
    Ok(report)
}
