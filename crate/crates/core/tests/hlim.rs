use std::sync::Arc;

use fusionsharp::fplin::{chop_simples, FpGroupRep, FpMatrix};
use fusionsharp::fusion::{AmbientCatalog, FMorphism, FusionSystem};
use fusionsharp::hlim::{build_complex, cohomology, equalizer_lim0, higher_limits, ContravariantFunctor, MackeyRestriction};
use fusionsharp::mackey::{MackeyFunctorData, SqvFunctor};
use fusionsharp::orbitcat::{FiniteCategory, OrbitCategory};
use fusionsharp::pgroup::{CatalogEntry, Subgroup};
use fusionsharp::Error;
use proptest::prelude::*;

const LIMIT: usize = 1_000_000;
const BUDGET: usize = 1_000_000;

/// The cyclic group `C_m` as a one-object category.
struct Cyclic(usize);

impl FiniteCategory for Cyclic {
    fn object_count(&self) -> usize {
        1
    }
    fn hom_count(&self, _: usize, _: usize) -> fusionsharp::Result<usize> {
        Ok(self.0)
    }
    fn identity(&self, _: usize) -> fusionsharp::Result<usize> {
        Ok(0)
    }
    fn compose(&self, _: usize, _: usize, _: usize, g: usize, f: usize) -> fusionsharp::Result<usize> {
        Ok((g + f) % self.0)
    }
}

/// `C_m` acting on `F_p` through `g -> sign^g`.
struct SignModule {
    p: u32,
    sign: u32,
}

impl ContravariantFunctor for SignModule {
    fn prime(&self) -> u32 {
        self.p
    }
    fn dim(&self, _: usize) -> fusionsharp::Result<usize> {
        Ok(1)
    }
    fn map(&self, _: usize, _: usize, f: usize) -> fusionsharp::Result<FpMatrix> {
        Ok(FpMatrix::scalar(self.p, 1, FpMatrix::scalar(self.p, 1, self.sign).pow(f as u64).get(0, 0)))
    }
}

/// A finite poset as a category: one arrow `a -> b` exactly when `a <= b`.
struct Poset {
    leq: Vec<Vec<bool>>,
}

impl FiniteCategory for Poset {
    fn object_count(&self) -> usize {
        self.leq.len()
    }
    fn hom_count(&self, a: usize, b: usize) -> fusionsharp::Result<usize> {
        Ok(self.leq[a][b] as usize)
    }
    fn identity(&self, _: usize) -> fusionsharp::Result<usize> {
        Ok(0)
    }
    fn compose(&self, _: usize, _: usize, _: usize, _: usize, _: usize) -> fusionsharp::Result<usize> {
        Ok(0)
    }
}

struct Constant {
    p: u32,
    dim: usize,
}

impl ContravariantFunctor for Constant {
    fn prime(&self) -> u32 {
        self.p
    }
    fn dim(&self, _: usize) -> fusionsharp::Result<usize> {
        Ok(self.dim)
    }
    fn map(&self, _: usize, _: usize, _: usize) -> fusionsharp::Result<FpMatrix> {
        Ok(FpMatrix::identity(self.p, self.dim))
    }
}

fn dims(cat: &(impl FiniteCategory + Sync), f: &(impl ContravariantFunctor + ?Sized), n: usize) -> Vec<usize> {
    let r = cohomology(cat, f, n, BUDGET).unwrap();
    r.degrees.iter().map(|d| d.dim).collect()
}

#[test]
fn cyclic_groups_match_standard_resolution() {
    // H^n(C_m, F_p) is F_p in every degree when p | m and vanishes above degree 0 otherwise.
    assert_eq!(dims(&Cyclic(2), &SignModule { p: 3, sign: 1 }, 3), vec![1, 0, 0]);
    assert_eq!(dims(&Cyclic(3), &SignModule { p: 3, sign: 1 }, 3), vec![1, 1, 1]);
    assert_eq!(dims(&Cyclic(2), &SignModule { p: 3, sign: 2 }, 3), vec![0, 0, 0]);
    assert_eq!(dims(&Cyclic(4), &SignModule { p: 5, sign: 1 }, 3), vec![1, 0, 0]);
    assert_eq!(dims(&Cyclic(5), &SignModule { p: 5, sign: 1 }, 3), vec![1, 1, 1]);
}

#[test]
fn trivial_categories() {
    let point = Poset { leq: vec![vec![true]] };
    let r = cohomology(&point, &Constant { p: 3, dim: 2 }, 3, BUDGET).unwrap();
    assert_eq!(r.cochain_dims, vec![2, 0, 0, 0]);
    assert_eq!(r.lim(0), Some(2));
    assert!(r.higher_vanish());

    let arrow = Poset { leq: vec![vec![true, true], vec![false, true]] };
    let c = build_complex(&arrow, &Constant { p: 5, dim: 1 }, 2, BUDGET).unwrap();
    assert_eq!(c.dims, vec![2, 1, 0]);
    assert_eq!(c.differentials[0].rank(), 1);
    assert_eq!(dims(&arrow, &Constant { p: 5, dim: 1 }, 2), vec![1, 0]);

    let empty = Poset { leq: vec![] };
    assert_eq!(dims(&empty, &Constant { p: 3, dim: 1 }, 3), vec![0, 0, 0]);
}

#[test]
fn circle_poset() {
    // Two minima below two maxima: the order complex is a circle.
    let mut leq = vec![vec![false; 4]; 4];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for a in 0..2 {
        for b in 2..4 {
            leq[a][b] = true;
        }
    }
    assert_eq!(dims(&Poset { leq }, &Constant { p: 3, dim: 1 }, 3), vec![1, 1, 0]);
}

#[test]
fn chain_budget_is_enforced() {
    let err = build_complex(&Cyclic(9), &SignModule { p: 3, sign: 1 }, 3, 100).unwrap_err();
    assert!(matches!(err, Error::Resource { .. }), "{err:?}");
}

fn random_poset(n: usize, bits: &[bool]) -> Poset {
    // Transitive closure of a random relation compatible with the index order.
    let mut leq = vec![vec![false; n]; n];
    let mut k = 0;
    for a in 0..n {
        leq[a][a] = true;
        for b in a + 1..n {
            leq[a][b] = bits[k % bits.len()];
            k += 1;
        }
    }
    for m in 0..n {
        for a in 0..n {
            for b in 0..n {
                if leq[a][m] && leq[m][b] {
                    leq[a][b] = true;
                }
            }
        }
    }
    Poset { leq }
}

fn components(poset: &Poset) -> usize {
    let n = poset.leq.len();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut Vec<usize>, x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    for a in 0..n {
        for b in 0..n {
            if poset.leq[a][b] {
                let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
                comp[ra] = rb;
            }
        }
    }
    (0..n).filter(|&x| find(&mut comp, x) == x).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn posets_with_a_maximum_are_acyclic(n in 1usize..6, bits in proptest::collection::vec(any::<bool>(), 1..16)) {
        let mut poset = random_poset(n, &bits);
        for row in poset.leq.iter_mut() {
            row.push(true);
        }
        let mut top = vec![false; n + 1];
        top[n] = true;
        poset.leq.push(top);
        prop_assert_eq!(dims(&poset, &Constant { p: 3, dim: 1 }, 3), vec![1, 0, 0]);
    }

    #[test]
    fn lim0_counts_components(n in 1usize..7, bits in proptest::collection::vec(any::<bool>(), 1..22)) {
        let poset = random_poset(n, &bits);
        let f = Constant { p: 5, dim: 2 };
        prop_assert_eq!(equalizer_lim0(&poset, &f).unwrap(), 2 * components(&poset));
        prop_assert_eq!(dims(&poset, &f, 2)[0], 2 * components(&poset));
    }
}

fn simples(f: &FusionSystem, q: &Subgroup) -> Vec<FpGroupRep> {
    let out = f.automizer(q).unwrap().out().clone();
    chop_simples(&FpGroupRep::regular(out, f.group().prime()), 3).unwrap().simples
}

fn extraspecial_systems() -> Vec<FusionSystem> {
    vec![
        FusionSystem::inner(Arc::new(CatalogEntry::ExtraspecialPlus.build(3).unwrap())),
        FusionSystem::from_ambient_catalog(AmbientCatalog::Sl3Mod3, LIMIT).unwrap(),
    ]
}

#[test]
fn extraspecial_noncentric_functors_are_acyclic() {
    for f in extraspecial_systems() {
        let subs = f.lattice(LIMIT).unwrap();
        let mut cases = 0;
        for class in f.classes(&subs).unwrap() {
            let q = f.fully_normalized_rep(&class[0]).unwrap();
            if f.is_centric(&q).unwrap() {
                continue;
            }
            for v in simples(&f, &q) {
                let m = SqvFunctor::new(&f, &q, v).unwrap();
                let r = higher_limits(&f, &m, LIMIT, 3, BUDGET, Some(true)).unwrap();
                assert_eq!(r.lim(1), Some(0));
                assert_eq!(r.lim(2), Some(0));
                assert_eq!(r.lim(0), Some(r.equalizer_lim0));
                assert!(r.warnings.is_empty());
                cases += 1;
            }
        }
        assert!(cases > 0);
    }
}

#[test]
fn top_subgroup_lim0_is_fixed_space() {
    for f in extraspecial_systems() {
        let g = f.group();
        let s = g.whole();
        for v in simples(&f, &s) {
            let p = v.prime();
            let d = v.dim();
            let mut stacked = FpMatrix::zeros(p, 0, d);
            for x in v.group().elements() {
                stacked = stacked.vstack(&(v.matrix(x) - &FpMatrix::identity(p, d))).unwrap();
            }
            let fixed = d - stacked.rank();
            let m = SqvFunctor::new(&f, &s, v).unwrap();
            let r = higher_limits(&f, &m, LIMIT, 2, BUDGET, None).unwrap();
            assert_eq!(r.lim(0), Some(fixed));
            assert_eq!(r.warnings.len(), 1);
        }
    }
}

#[test]
fn skeleton_transport_agrees_with_direct_evaluation() {
    let f = FusionSystem::from_ambient_catalog(AmbientCatalog::Sl3Mod3, LIMIT).unwrap();
    let g = f.group();
    let subs = f.lattice(LIMIT).unwrap();
    let centric = f.centric_collection(&subs).unwrap();
    let cat = OrbitCategory::build(&f, &centric).unwrap();
    let skeleton = cat.skeleton().unwrap();
    let q = g.center(&g.whole());
    for v in simples(&f, &q) {
        let m = SqvFunctor::new(&f, &q, v).unwrap();
        for a in 0..cat.object_count() {
            let (ra, alpha) = &skeleton.retraction[a];
            assert_eq!(m.dim(cat.object(a)).unwrap(), m.dim(skeleton.category.object(*ra)).unwrap());
            for b in 0..cat.object_count() {
                let (rb, beta) = &skeleton.retraction[b];
                for phi in cat.hom(a, b).unwrap().iter() {
                    let phi = cat.representative(phi);
                    let moved = FMorphism::new(
                        beta.map().compose(g, &phi.map().compose(g, &alpha.map().inverse(g))),
                        skeleton.category.object(*rb).clone(),
                    );
                    let beta_inv = FMorphism::new(beta.map().inverse(g), cat.object(b).clone());
                    let direct = &(&m.contravariant(alpha).unwrap() * &m.contravariant(&moved).unwrap())
                        * &m.contravariant(&beta_inv).unwrap();
                    assert_eq!(direct, m.contravariant(&phi).unwrap());
                    let via_skeleton = MackeyRestriction { category: &skeleton.category, functor: &m };
                    let pos = skeleton.category.position(&skeleton.category.class_of(&moved).unwrap()).unwrap();
                    assert_eq!(via_skeleton.map(*ra, *rb, pos).unwrap(), m.contravariant(&moved).unwrap());
                }
            }
        }
    }
}
