use std::sync::Arc;

use fusionsharp::fplin::{chop_simples, FpGroupRep, FpMatrix};
use fusionsharp::fusion::{AmbientCatalog, FMorphism, FusionSystem};
use fusionsharp::mackey::{twist, verify_axioms, Choices, MackeyFunctorData, SqvFunctor, TruncationReading};
use fusionsharp::pgroup::{CatalogEntry, GroupMorphism, Subgroup};

const LIMIT: usize = 1_000_000;

fn inner(entry: CatalogEntry, p: u32) -> FusionSystem {
    FusionSystem::inner(Arc::new(entry.build(p).unwrap()))
}

fn ambient(entry: AmbientCatalog) -> FusionSystem {
    FusionSystem::from_ambient_catalog(entry, LIMIT).unwrap()
}

fn simples(f: &FusionSystem, q: &Subgroup) -> Vec<FpGroupRep> {
    let out = f.automizer(q).unwrap().out().clone();
    chop_simples(&FpGroupRep::regular(out, f.group().prime()), 7).unwrap().simples
}

/// One representative per `F`-class of subgroups, paired with each simple `Out_F(Q)`-module.
fn all_pairs(f: &FusionSystem) -> Vec<(Subgroup, FpGroupRep)> {
    let subs = f.group().all_subgroups(None, LIMIT).unwrap();
    let mut out = Vec::new();
    for class in f.classes(&subs).unwrap() {
        for v in simples(f, &class[0]) {
            out.push((class[0].clone(), v));
        }
    }
    out
}

fn incl(q: &Subgroup, p: &Subgroup) -> FMorphism {
    FMorphism::new(GroupMorphism::identity(q), p.clone())
}

#[test]
fn twisting() {
    let f = ambient(AmbientCatalog::Sl3Mod3);
    let g = f.group();
    let subs = g.all_subgroups(None, LIMIT).unwrap();
    let mut nontrivial = 0;
    for q in &subs {
        for v in simples(&f, q) {
            let id = twist(&f, &GroupMorphism::identity(q), &v).unwrap();
            for s in v.group().elements() {
                assert_eq!(id.rep.matrix(s), v.matrix(s));
            }
            for alpha in f.isos_from(q).unwrap().iter() {
                let l = alpha.target();
                let tw = twist(&f, alpha.map(), &v).unwrap();
                assert!(Arc::ptr_eq(tw.rep.group(), f.automizer(l).unwrap().out()));
                let back = twist(&f, &alpha.map().inverse(g), &tw.rep).unwrap();
                for s in v.group().elements() {
                    assert_eq!(back.rep.matrix(s), v.matrix(s));
                }
                if !tw.rep.is_trivial_action() {
                    nontrivial += 1;
                }
                for &x in g.generators().iter().take(2) {
                    let cx = GroupMorphism::conjugation(g, x, l);
                    let direct = twist(&f, &cx.compose(g, alpha.map()), &v).unwrap();
                    let stepwise = twist(&f, &cx, &tw.rep).unwrap();
                    let target = direct.rep.group();
                    for s in target.elements() {
                        assert_eq!(direct.rep.matrix(s), stepwise.rep.matrix(s));
                    }
                }
            }
        }
    }
    assert!(nontrivial > 0);
    let q = &subs[1];
    let v = simples(&f, q).remove(0);
    let bogus = GroupMorphism::identity(&g.whole());
    assert!(twist(&f, &bogus, &v).is_err());
}

#[test]
fn values_on_abelian_subgroups() {
    for f in [ambient(AmbientCatalog::Sym3WrSym3), inner(CatalogEntry::ExtraspecialPlus, 3), ambient(AmbientCatalog::Sl3Mod3)] {
        let g = f.group();
        let subs = g.all_subgroups(None, LIMIT).unwrap();
        for (q, v) in all_pairs(&f) {
            if f.is_centric(&q).unwrap() {
                continue;
            }
            let m = SqvFunctor::new(&f, &q, v.clone()).unwrap();
            for k in subs.iter().filter(|k| g.is_abelian(k)) {
                let d = m.dim(k).unwrap();
                if f.is_f_conjugate(&q, k).unwrap() {
                    assert_eq!(d, v.dim());
                } else {
                    assert_eq!(d, 0);
                }
            }
            if g.normalizer(&q) == q {
                assert_eq!(m.dim(&q).unwrap(), v.dim());
            }
        }
    }
}

#[test]
fn values_vanish_without_self_centralizing_conjugates() {
    let f = ambient(AmbientCatalog::Sym3WrSym3);
    let g = f.group();
    let subs = g.all_subgroups(None, LIMIT).unwrap();
    for (q, v) in all_pairs(&f) {
        let m = SqvFunctor::new(&f, &q, v).unwrap();
        for p in &subs {
            let value = m.value(p).unwrap();
            for s in &value.summands {
                if !s.space.is_zero() {
                    assert!(g.centralizer_in(p, &s.conjugate).is_subgroup_of(&s.conjugate));
                }
            }
            if value.dim() > 0 {
                assert!(!f.l_set(p, &q).unwrap().is_empty());
            }
        }
    }
}

#[test]
fn iso_maps() {
    let f = ambient(AmbientCatalog::Sl3Mod3);
    let g = f.group();
    let subs = g.all_subgroups(None, LIMIT).unwrap();
    for (q, v) in all_pairs(&f) {
        let m = SqvFunctor::new(&f, &q, v).unwrap();
        for p in &subs {
            let d = m.dim(p).unwrap();
            assert!(m.iso(&GroupMorphism::identity(p)).unwrap().is_identity() || d == 0);
            let isos = f.isos_from(p).unwrap();
            for phi in isos.iter().step_by(5) {
                let r = phi.target();
                let a = m.iso(phi.map()).unwrap();
                for &y in r.elements().iter().step_by(4) {
                    let shifted: Vec<_> = phi.images().iter().map(|&t| g.conj(y, t)).collect();
                    let alt = GroupMorphism::from_images(g, p.clone(), shifted).unwrap();
                    assert_eq!(m.iso(&alt).unwrap(), a);
                }
                for psi in f.isos_from(r).unwrap().iter().step_by(7) {
                    let comp = psi.map().compose(g, phi.map());
                    assert_eq!(m.iso(&comp).unwrap(), &m.iso(psi.map()).unwrap() * &a);
                }
            }
        }
    }
}

#[test]
fn induction_and_restriction_basics() {
    let f = ambient(AmbientCatalog::Sym3WrSym3);
    let g = f.group();
    let subs = g.all_subgroups(None, LIMIT).unwrap();
    let mut vanishing = 0;
    for (q, v) in all_pairs(&f) {
        let m = SqvFunctor::new(&f, &q, v).unwrap();
        for t in &subs {
            assert!(m.ind(t, t).unwrap().is_identity() || m.dim(t).unwrap() == 0);
            assert!(m.res(t, t).unwrap().is_identity() || m.dim(t).unwrap() == 0);
            if g.is_abelian(t) && f.is_f_conjugate(&q, t).unwrap() && !f.is_centric(&q).unwrap() {
                for k in subs.iter().filter(|k| t.is_subgroup_of(k)) {
                    let c = g.centralizer_in(k, t);
                    if c.order() > t.order() {
                        assert!(m.ind(t, k).unwrap().is_zero());
                        vanishing += 1;
                    }
                }
            }
        }
    }
    assert!(vanishing > 0);
    let s = g.whole();
    let (q, v) = all_pairs(&f).remove(1);
    let m = SqvFunctor::new(&f, &q, v).unwrap();
    assert!(m.ind(&s, &q).is_err() || q == s);
}

#[test]
fn restriction_then_induction_over_a_normal_subgroup() {
    let f = ambient(AmbientCatalog::Sym3WrSym3);
    let g = f.group();
    let subs = g.all_subgroups(None, LIMIT).unwrap();
    let mut checked = 0;
    for (q, v) in all_pairs(&f) {
        let m = SqvFunctor::new(&f, &q, v).unwrap();
        for p in &subs {
            for t in subs.iter().filter(|t| t.order() * 3 == p.order() && g.is_normal_in(t, p)) {
                let res = m.res(t, p).unwrap();
                let ind = m.ind(t, p).unwrap();
                let mut sum = FpMatrix::zeros(3, m.dim(t).unwrap(), m.dim(t).unwrap());
                for x in g.left_transversal(p, t) {
                    sum = &sum + &m.iso(&GroupMorphism::conjugation(g, x, t)).unwrap();
                }
                assert_eq!(&*res * &*ind, sum);
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn trace_nilpotence() {
    let f = ambient(AmbientCatalog::Sym3WrSym3);
    let g = f.group();
    for (q, v) in all_pairs(&f) {
        let m = SqvFunctor::new(&f, &q, v).unwrap();
        for l in m.conjugates() {
            let n = g.normalizer(l);
            for k in g.all_subgroups(None, LIMIT).unwrap().iter().filter(|k| l.is_subgroup_of(k) && k.is_subgroup_of(&n)) {
                if k == l {
                    continue;
                }
                let tr = m.relative_trace(l, l, k).unwrap();
                assert!((&tr * &tr).is_zero());
                let mut direct = FpMatrix::zeros(3, tr.rows(), tr.cols());
                for x in g.left_transversal(k, l) {
                    direct = &direct + &m.action(l, x).unwrap();
                }
                assert_eq!(direct, tr);
            }
        }
    }
}

#[test]
fn axioms_hold_on_extraspecial_inner() {
    let f = inner(CatalogEntry::ExtraspecialPlus, 3);
    let subs = f.group().all_subgroups(None, LIMIT).unwrap();
    for (q, v) in all_pairs(&f) {
        let m = SqvFunctor::new(&f, &q, v).unwrap();
        let report = verify_axioms(&m, &subs, TruncationReading::RCapXq).unwrap();
        assert!(report.passed(), "{:?}", report.failures.first());
        assert_eq!(report.objects, subs.len());
        assert!(report.triples > 100);
    }
}

#[test]
fn axioms_hold_on_sl3() {
    let f = ambient(AmbientCatalog::Sl3Mod3);
    let subs = f.group().all_subgroups(None, LIMIT).unwrap();
    let centrics = f.centric_collection(&subs).unwrap();
    for (q, v) in all_pairs(&f) {
        let m = SqvFunctor::new(&f, &q, v).unwrap();
        let report = verify_axioms(&m, &subs, TruncationReading::RCapXq).unwrap();
        assert!(report.passed(), "{:?}", report.failures.first());
        for reading in [TruncationReading::RCapXq, TruncationReading::QCapXr] {
            let report = verify_axioms(&m, &centrics, reading).unwrap();
            assert!(report.passed(), "{reading:?} {:?}", report.failures.first());
        }
    }
}

#[test]
fn broken_functor_is_reported() {
    struct Doubled<'a>(SqvFunctor<'a>);
    impl MackeyFunctorData for Doubled<'_> {
        fn fusion(&self) -> &FusionSystem {
            self.0.fusion()
        }
        fn dim(&self, p: &Subgroup) -> fusionsharp::Result<usize> {
            self.0.dim(p)
        }
        fn covariant(&self, m: &FMorphism) -> fusionsharp::Result<FpMatrix> {
            let c = self.0.covariant(m)?;
            Ok(if m.source() == m.target() { c } else { c.scale(2) })
        }
        fn contravariant(&self, m: &FMorphism) -> fusionsharp::Result<FpMatrix> {
            self.0.contravariant(m)
        }
    }
    let f = ambient(AmbientCatalog::Sl3Mod3);
    let g = f.group();
    let subs = g.all_subgroups(None, LIMIT).unwrap();
    let (q, v) = all_pairs(&f)
        .into_iter()
        .find(|(q, v)| {
            let m = SqvFunctor::new(&f, q, v.clone()).unwrap();
            subs.iter().any(|p| {
                subs.iter()
                    .filter(|t| t.is_subgroup_of(p) && *t != p)
                    .any(|t| !(&*m.res(t, p).unwrap() * &*m.ind(t, p).unwrap()).is_zero())
            })
        })
        .unwrap();
    let m = Doubled(SqvFunctor::new(&f, &q, v).unwrap());
    let report = verify_axioms(&m, &subs, TruncationReading::RCapXq).unwrap();
    assert!(!report.passed());
    assert!(report.failures.iter().any(|x| x.axiom == "double coset formula"));
}

#[test]
fn independent_of_choices() {
    let f = ambient(AmbientCatalog::Sl3Mod3);
    let g = f.group();
    let subs = g.all_subgroups(None, LIMIT).unwrap();
    let other = Choices { last_alpha: true, last_representative: true };
    for (q, v) in all_pairs(&f) {
        let a = SqvFunctor::new(&f, &q, v.clone()).unwrap();
        let b = SqvFunctor::with_choices(&f, &q, v, other).unwrap();
        for p in &subs {
            let eta_p = a.comparison(&b, p).unwrap();
            assert!(eta_p.rows() == 0 || eta_p.inverse().is_some());
            for t in subs.iter().filter(|t| t.is_subgroup_of(p)) {
                let eta_t = a.comparison(&b, t).unwrap();
                assert_eq!(&eta_p * &*a.ind(t, p).unwrap(), &*b.ind(t, p).unwrap() * &eta_t);
                assert_eq!(&eta_t * &*a.res(t, p).unwrap(), &*b.res(t, p).unwrap() * &eta_p);
            }
        }
    }
}

#[test]
fn functoriality() {
    let f = ambient(AmbientCatalog::Sym3xSym3);
    let g = f.group();
    let subs = g.all_subgroups(None, LIMIT).unwrap();
    for (q, v) in all_pairs(&f) {
        let m = SqvFunctor::new(&f, &q, v).unwrap();
        for a in &subs {
            for b in &subs {
                for phi in f.hom(a, b).unwrap() {
                    for c in &subs {
                        for psi in f.hom(b, c).unwrap() {
                            let comp = FMorphism::new(psi.map().compose(g, phi.map()), c.clone());
                            assert_eq!(m.covariant(&comp).unwrap(), &m.covariant(&psi).unwrap() * &m.covariant(&phi).unwrap());
                            assert_eq!(
                                m.contravariant(&comp).unwrap(),
                                &m.contravariant(&phi).unwrap() * &m.contravariant(&psi).unwrap()
                            );
                        }
                    }
                }
            }
        }
        let s = g.whole();
        assert_eq!(m.covariant(&incl(&s, &s)).unwrap().rows(), m.dim(&s).unwrap());
    }
}

#[test]
fn dump_lists_values_and_maps() {
    let f = inner(CatalogEntry::ExtraspecialPlus, 3);
    let g = f.group();
    let z = g.center(&g.whole());
    let v = simples(&f, &z).remove(0);
    let m = SqvFunctor::new(&f, &z, v).unwrap();
    let s = g.whole();
    m.ind(&z, &s).unwrap();
    m.res(&z, &s).unwrap();
    let dump = m.dump();
    assert_eq!(dump.objects.len(), 2);
    assert_eq!(dump.maps.len(), 2);
    let json = serde_json::to_string(&dump).unwrap();
    assert!(json.contains("\"kind\":\"ind\""));
}

#[test]
fn module_must_belong_to_the_automizer() {
    let f = inner(CatalogEntry::ExtraspecialPlus, 3);
    let g = f.group();
    let z = g.center(&g.whole());
    let s = g.whole();
    let v = simples(&f, &s).remove(0);
    assert!(SqvFunctor::new(&f, &z, v).is_err());
}
