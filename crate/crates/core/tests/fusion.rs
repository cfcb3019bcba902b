use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

mod common;
use common::{compose, inverse, Brute};

use fusionsharp::fplin::FiniteGroup;
use fusionsharp::fusion::{
    check_saturation, AmbientCatalog, FusionGenerators, FusionSystem, SaturationStatus,
};
use fusionsharp::pgroup::{CatalogEntry, Elem, GroupMorphism, Subgroup};

const LIMIT: usize = 1_000_000;

fn inner(entry: CatalogEntry, p: u32) -> FusionSystem {
    FusionSystem::inner(Arc::new(entry.build(p).unwrap()))
}

fn ambient(entry: AmbientCatalog) -> FusionSystem {
    FusionSystem::from_ambient_catalog(entry, LIMIT).unwrap()
}

fn hom_set(f: &FusionSystem, p: &Subgroup, q: &Subgroup) -> BTreeSet<Vec<Elem>> {
    f.hom(p, q).unwrap().iter().map(|m| m.images().to_vec()).collect()
}

#[test]
fn inner_automorphisms_of_s() {
    let f = inner(CatalogEntry::ExtraspecialPlus, 3);
    let g = f.group();
    let s = g.whole();
    let homs = f.hom(&s, &s).unwrap();
    assert_eq!(homs.len(), 9);
    let inn: BTreeSet<Vec<Elem>> =
        g.elements().map(|x| GroupMorphism::conjugation(g, x, &s).images().to_vec()).collect();
    assert_eq!(homs.iter().map(|m| m.images().to_vec()).collect::<BTreeSet<_>>(), inn);
}

#[test]
fn trivial_source_has_one_morphism() {
    for f in [inner(CatalogEntry::WreathCpCp, 3), ambient(AmbientCatalog::Sl3Mod3)] {
        let g = f.group();
        let one = g.trivial_subgroup();
        for q in g.all_subgroups(None, LIMIT).unwrap() {
            assert_eq!(f.hom(&one, &q).unwrap().len(), 1);
        }
    }
}

#[test]
fn factor_of_c3_x_c3_in_sym3_x_sym3() {
    let f = ambient(AmbientCatalog::Sym3xSym3);
    let g = f.group();
    let brute = Brute::new(g, AmbientCatalog::Sym3xSym3);
    assert_eq!(brute.elements.len(), 36);
    let a = g.subgroup(&[g.generator(0)]);
    let s = g.whole();
    let expected = brute.hom(g, &a, &s);
    assert_eq!(expected.len(), 2);
    assert_eq!(hom_set(&f, &a, &s), expected);
}

#[test]
fn ambient_hom_sets_match_brute_force() {
    for entry in AmbientCatalog::ALL {
        let f = ambient(entry);
        let g = f.group();
        let brute = Brute::new(g, entry);
        let subs = g.all_subgroups(None, LIMIT).unwrap();
        for p in &subs {
            for q in subs.iter().filter(|q| q.order() >= p.order()) {
                assert_eq!(hom_set(&f, p, q), brute.hom(g, p, q), "{entry}");
            }
        }
    }
}

#[test]
fn f_classes() {
    let f = inner(CatalogEntry::WreathCpCp, 3);
    let g = f.group();
    let s = g.whole();
    assert_eq!(f.f_class(&s).unwrap(), vec![s.clone()]);
    for p in g.all_subgroups(None, LIMIT).unwrap() {
        assert_eq!(f.f_class(&p).unwrap(), g.conjugacy_class(&p, &s));
    }
    for entry in AmbientCatalog::ALL {
        let f = ambient(entry);
        let g = f.group();
        let brute = Brute::new(g, entry);
        for p in g.all_subgroups(None, LIMIT).unwrap() {
            let class = f.f_class(&p).unwrap();
            let mut expected: BTreeSet<Vec<Elem>> = BTreeSet::new();
            for gg in &brute.elements {
                let gi = inverse(gg);
                let conj: Option<Vec<Elem>> = p
                    .elements()
                    .iter()
                    .map(|&x| brute.s_index.get(&compose(&compose(gg, &brute.s_perm[x as usize]), &gi)).copied())
                    .collect();
                if let Some(mut c) = conj {
                    c.sort();
                    expected.insert(c);
                }
            }
            let got: BTreeSet<Vec<Elem>> = class.iter().map(|h| h.elements().to_vec()).collect();
            assert_eq!(got, expected);
            assert!(g.conjugacy_class(&p, &g.whole()).iter().all(|c| class.contains(c)));
        }
    }
}

#[test]
fn centric_subgroups_of_extraspecial() {
    let f = inner(CatalogEntry::ExtraspecialPlus, 3);
    let g = f.group();
    let s = g.whole();
    let z = g.center(&s);
    let subs = g.all_subgroups(None, LIMIT).unwrap();
    let centrics = f.centric_collection(&subs).unwrap();
    let brute: Vec<Subgroup> = subs
        .iter()
        .filter(|p| {
            g.conjugacy_class(p, &s).iter().all(|q| {
                g.elements().filter(|&x| q.elements().iter().all(|&y| g.comm(x, y) == 0)).all(|x| q.contains(x))
            })
        })
        .cloned()
        .collect();
    assert_eq!(centrics, brute);
    let expected: Vec<Subgroup> = subs.iter().filter(|p| p.order() >= 9 && z.is_subgroup_of(p)).cloned().collect();
    assert_eq!(centrics, expected);
    assert!(f.is_centric(&s).unwrap());
    assert!(!f.is_centric(&z).unwrap());
}

#[test]
fn centric_collections_are_overgroup_and_conjugation_closed() {
    let mut systems: Vec<FusionSystem> = AmbientCatalog::ALL.iter().map(|&e| ambient(e)).collect();
    systems.push(inner(CatalogEntry::WreathCpCp, 3));
    for f in systems {
        let g = f.group();
        let subs = g.all_subgroups(None, LIMIT).unwrap();
        let centrics: HashSet<Subgroup> = f.centric_collection(&subs).unwrap().into_iter().collect();
        for p in &centrics {
            for q in &subs {
                if p.is_subgroup_of(q) {
                    assert!(centrics.contains(q));
                }
            }
            for q in f.f_class(p).unwrap() {
                assert!(centrics.contains(&q));
            }
        }
    }
}

/// Strongly p-embedded by the definition: `M < G`, `p | |M|`, `p` coprime to `|M ∩ M^g|` for `g ∉ M`.
fn brute_strongly_embedded(g: &FiniteGroup, p: usize) -> bool {
    let all: Vec<u32> = g.elements().collect();
    g.subgroups_of(&all).into_iter().any(|m| {
        m.len() < g.order()
            && m.len() % p == 0
            && g.elements().filter(|x| m.binary_search(x).is_err()).all(|x| {
                let conj: BTreeSet<u32> = m.iter().map(|&y| g.conj(x, y)).collect();
                m.iter().filter(|y| conj.contains(y)).count() % p != 0
            })
    })
}

fn perm_group(degree: usize, gens: &[Vec<usize>]) -> FiniteGroup {
    FiniteGroup::from_permutations(degree, gens, 10_000).unwrap().0
}

#[test]
fn strongly_embedded_matches_definition() {
    let s3 = perm_group(3, &[vec![1, 0, 2], vec![1, 2, 0]]);
    let s4 = perm_group(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]);
    let c6 = FiniteGroup::cyclic(6);
    let c9 = FiniteGroup::cyclic(9);
    // GL_2(3) acting on the 8 nonzero vectors of F_3^2
    let vecs: Vec<(u32, u32)> = (0..9).map(|k| (k / 3, k % 3)).filter(|&v| v != (0, 0)).collect();
    let act = |m: [[u32; 2]; 2]| -> Vec<usize> {
        vecs.iter()
            .map(|&(a, b)| {
                let w = ((m[0][0] * a + m[0][1] * b) % 3, (m[1][0] * a + m[1][1] * b) % 3);
                vecs.iter().position(|&v| v == w).unwrap()
            })
            .collect()
    };
    let gl23 = perm_group(8, &[act([[1, 1], [0, 1]]), act([[0, 1], [2, 0]]), act([[2, 0], [0, 1]])]);
    assert_eq!(gl23.order(), 48);
    for (g, p) in [(&s3, 2), (&s3, 3), (&s4, 2), (&s4, 3), (&c6, 3), (&c9, 3), (&gl23, 3), (&gl23, 2)] {
        assert_eq!(g.has_strongly_p_embedded(p as u32), brute_strongly_embedded(g, p), "order {} p {p}", g.order());
    }
    assert!(!s3.has_strongly_p_embedded(3));
    assert!(gl23.has_strongly_p_embedded(3));
}

#[test]
fn essentials() {
    // inner systems have p-group automizers
    let f = inner(CatalogEntry::WreathCpCp, 3);
    assert!(f.essentials(&f.lattice(LIMIT).unwrap()).unwrap().is_empty());
    // SL_3(3): the two elementary abelian subgroups of order 9, with Out = GL_2(3)
    let f = ambient(AmbientCatalog::Sl3Mod3);
    let ess = f.essentials(&f.lattice(LIMIT).unwrap()).unwrap();
    assert_eq!(ess.len(), 2);
    for e in &ess {
        assert_eq!(e.order(), 9);
        assert_eq!(f.automizer(e).unwrap().out().order(), 48);
    }
    // Sym(3) wr Sym(3): the base group of order 27
    let f = ambient(AmbientCatalog::Sym3WrSym3);
    let ess = f.essentials(&f.lattice(LIMIT).unwrap()).unwrap();
    assert!(ess.iter().any(|e| e.order() == 27));
    // C_3 x C_3 in Sym(3) x Sym(3): Out_F(S) has order prime to 3
    let f = ambient(AmbientCatalog::Sym3xSym3);
    assert_eq!(f.automizer(&f.group().whole()).unwrap().out().order(), 4);
    assert!(f.essentials(&f.lattice(LIMIT).unwrap()).unwrap().is_empty());
}

#[test]
fn automizer_orders() {
    for entry in AmbientCatalog::ALL {
        let f = ambient(entry);
        let g = f.group();
        for p in g.all_subgroups(None, LIMIT).unwrap() {
            let a = f.automizer(&p).unwrap();
            assert_eq!(a.autos().len(), a.inner().len() * a.out().order());
            let inn = p.order() / g.center(&p).order();
            assert_eq!(a.inner().len(), inn);
        }
    }
}

#[test]
fn fully_normalized_rep_has_largest_normalizer() {
    let f = ambient(AmbientCatalog::Sym3WrSym3);
    let g = f.group();
    for p in g.all_subgroups(None, LIMIT).unwrap() {
        let rep = f.fully_normalized_rep(&p).unwrap();
        let best = f.f_class(&p).unwrap().iter().map(|q| g.normalizer(q).order()).max().unwrap();
        assert_eq!(g.normalizer(&rep).order(), best);
        assert!(f.is_fully_normalized(&rep).unwrap());
    }
}

#[test]
fn l_sets() {
    let f = inner(CatalogEntry::ElementaryAbelian(2), 3);
    let g = f.group();
    for p in g.all_subgroups(None, LIMIT).unwrap() {
        assert_eq!(f.l_set(&p, &p).unwrap(), vec![p.clone()]);
    }
    let f = inner(CatalogEntry::ExtraspecialPlus, 3);
    let g = f.group();
    let s = g.whole();
    let z = g.center(&s);
    for q in g.all_subgroups(Some(3), LIMIT).unwrap() {
        if q != z {
            let brute = g
                .all_subgroups(Some(3), LIMIT)
                .unwrap()
                .into_iter()
                .filter(|l| f.is_f_conjugate(&q, l).unwrap() && g.centralizer(l).is_subgroup_of(l))
                .count();
            assert_eq!(brute, 0);
            assert!(f.l_set(&s, &q).unwrap().is_empty());
        }
    }
}

#[test]
fn l_sets_are_conjugation_closed_and_restrict() {
    for f in [ambient(AmbientCatalog::Sym3WrSym3), ambient(AmbientCatalog::Sl3Mod3)] {
        let g = f.group();
        let subs = g.all_subgroups(None, LIMIT).unwrap();
        for p in &subs {
            for q in &subs {
                let l = f.l_set(p, q).unwrap();
                for x in l.iter() {
                    for &y in p.elements() {
                        assert!(l.contains(&g.conjugate(x, y)));
                    }
                    for t in subs.iter().filter(|t| x.is_subgroup_of(t) && t.is_subgroup_of(p)) {
                        assert!(f.l_set(t, q).unwrap().contains(x));
                    }
                }
            }
        }
    }
}

#[test]
fn saturation() {
    let f = inner(CatalogEntry::ExtraspecialPlus, 3);
    assert_eq!(check_saturation(&f, LIMIT).unwrap().status, SaturationStatus::ByConstruction);
    let f = ambient(AmbientCatalog::Sl3Mod3);
    assert_eq!(check_saturation(&f, LIMIT).unwrap().status, SaturationStatus::ByConstruction);
    for entry in [CatalogEntry::ExtraspecialPlus, CatalogEntry::WreathCpCp] {
        let g = Arc::new(entry.build(3).unwrap());
        let f = FusionSystem::from_generators(g.clone(), FusionGenerators::inner(&g));
        assert_eq!(check_saturation(&f, LIMIT).unwrap().status, SaturationStatus::Saturated);
    }
    for entry in AmbientCatalog::ALL {
        let f = ambient(entry);
        let gens = f.derived_generators(LIMIT).unwrap();
        let h = FusionSystem::from_generators(f.group_arc().clone(), gens);
        assert_eq!(check_saturation(&h, LIMIT).unwrap().status, SaturationStatus::Saturated, "{entry}");
    }
    // no inner automorphisms listed
    let g = Arc::new(CatalogEntry::ExtraspecialPlus.build(3).unwrap());
    let s = g.whole();
    let gens = FusionGenerators::new(&g, vec![(s.clone(), vec![GroupMorphism::identity(&s)])]).unwrap();
    let f = FusionSystem::from_generators(g.clone(), gens);
    let report = check_saturation(&f, LIMIT).unwrap();
    assert_eq!(report.status, SaturationStatus::Failed);
    assert!(report.witness.is_some());
    // too large for the exhaustive check
    let g = Arc::new(CatalogEntry::SylowG2.build(5).unwrap());
    let f = FusionSystem::from_generators(g.clone(), FusionGenerators::inner(&g));
    assert_eq!(check_saturation(&f, LIMIT).unwrap().status, SaturationStatus::Unvalidated);
}

#[test]
fn generator_closure_matches_oracle() {
    for entry in AmbientCatalog::ALL {
        let f = ambient(entry);
        let h = FusionSystem::from_generators(f.group_arc().clone(), f.derived_generators(LIMIT).unwrap());
        let g = f.group();
        let subs = g.all_subgroups(None, LIMIT).unwrap();
        for p in &subs {
            for q in &subs {
                assert_eq!(hom_set(&f, p, q), hom_set(&h, p, q), "{entry}");
            }
        }
    }
}

#[test]
fn morphisms_factor_through_isomorphisms() {
    let f = ambient(AmbientCatalog::Sym3WrSym3);
    let g = f.group();
    let subs = g.all_subgroups(None, LIMIT).unwrap();
    for p in &subs {
        for q in subs.iter().step_by(3) {
            for m in f.hom(p, q).unwrap() {
                let image = m.map().image(g);
                assert!(image.is_subgroup_of(q));
                assert!(f.isos(p, &image).unwrap().iter().any(|iso| iso.images() == m.images()));
            }
        }
    }
}
