use std::collections::BTreeSet;

use fusionsharp::pgroup::{CatalogEntry, Elem, PcGroup, Subgroup};
use fusionsharp::Error;
use proptest::prelude::*;

const LIMIT: usize = 1_000_000;

type Mat3 = [[u32; 3]; 3];

fn mat_mul(a: &Mat3, b: &Mat3, p: u32) -> Mat3 {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum::<u32>() % p;
        }
    }
    c
}

fn mat_pow(a: &Mat3, e: u32, p: u32) -> Mat3 {
    let mut out = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..e {
        out = mat_mul(&out, a, p);
    }
    out
}

/// `x^a y^b z^c` in the unitriangular group with `x = 1 + e12`, `y = 1 + e23`, `z = 1 + e13`.
fn unitriangular(e: &[u32], p: u32) -> Mat3 {
    let x = [[1, 1, 0], [0, 1, 0], [0, 0, 1]];
    let y = [[1, 0, 0], [0, 1, 1], [0, 0, 1]];
    let z = [[1, 0, 1], [0, 1, 0], [0, 0, 1]];
    mat_mul(&mat_mul(&mat_pow(&x, e[0], p), &mat_pow(&y, e[1], p), p), &mat_pow(&z, e[2], p), p)
}

fn extraspecial(p: u32) -> PcGroup {
    CatalogEntry::ExtraspecialPlus.build(p).unwrap()
}

#[test]
fn extraspecial_matches_unitriangular_model() {
    for p in [3u32, 5] {
        let s = extraspecial(p);
        assert_eq!(s.order(), p.pow(3));
        let model: Vec<Mat3> = s.elements().map(|x| unitriangular(&s.exponents(x), p)).collect();
        let distinct: BTreeSet<Mat3> = model.iter().copied().collect();
        assert_eq!(distinct.len(), model.len());
        for x in s.elements() {
            for y in s.elements() {
                assert_eq!(model[s.mul(x, y) as usize], mat_mul(&model[x as usize], &model[y as usize], p));
            }
        }
    }
}

#[test]
fn second_generator_times_first() {
    let p = 3;
    let s = extraspecial(p);
    // y x = x y z^{-1} in the matrix model
    let x = [[1, 1, 0], [0, 1, 0], [0, 0, 1]];
    let y = [[1, 0, 0], [0, 1, 1], [0, 0, 1]];
    assert_eq!(mat_mul(&y, &x, p), unitriangular(&[1, 1, p - 1], p));
    let yx = s.normalize(&[(1, 1), (0, 1)]).unwrap();
    assert_eq!(s.exponents(yx), vec![1, 1, p - 1]);
}

#[test]
fn exponent_p() {
    let s = extraspecial(3);
    assert_eq!(s.elements().count(), 27);
    for x in s.elements() {
        assert_eq!(s.normalize(&[]).unwrap(), s.identity());
        assert_eq!(s.pow(x, 3), s.identity());
    }
    assert_eq!(s.normalize(&[(0, 3)]).unwrap(), s.identity());
}

#[test]
fn empty_word_and_bad_index() {
    let s = extraspecial(3);
    assert_eq!(s.normalize(&[]).unwrap(), 0);
    assert!(matches!(s.normalize(&[(7, 1)]), Err(Error::Input(_))));
}

#[test]
fn centralizers_in_extraspecial() {
    let s = extraspecial(3);
    let whole = s.whole();
    let z = s.center(&whole);
    assert_eq!(z.order(), 3);
    assert_eq!(s.centralizer(&whole), z);
    assert_eq!(s.centralizer(&z), whole);
    for h in s.all_subgroups(Some(3), LIMIT).unwrap() {
        if h == z {
            continue;
        }
        let brute = s.elements().filter(|&x| h.elements().iter().all(|&y| s.comm(x, y) == 0)).count();
        assert_eq!(brute, 9);
        assert_eq!(s.centralizer(&h).order(), 9);
    }
}

/// Subgroup generated by `gens` using nothing but multiplication.
fn naive_closure(s: &PcGroup, gens: &[Elem]) -> BTreeSet<Elem> {
    let mut set: BTreeSet<Elem> = BTreeSet::from([0]);
    loop {
        let before = set.len();
        let current: Vec<Elem> = set.iter().copied().collect();
        for &a in &current {
            for &g in gens {
                set.insert(s.mul(a, g));
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

#[test]
fn subgroup_counts_match_pair_closures() {
    // every subgroup of these groups is generated by two elements
    for (entry, p) in [(CatalogEntry::ExtraspecialPlus, 3u32), (CatalogEntry::ElementaryAbelian(2), 5)] {
        let s = entry.build(p).unwrap();
        let mut brute: BTreeSet<BTreeSet<Elem>> = BTreeSet::new();
        for a in s.elements() {
            for b in s.elements() {
                brute.insert(naive_closure(&s, &[a, b]));
            }
        }
        let subs = s.all_subgroups(None, LIMIT).unwrap();
        assert_eq!(subs.len(), brute.len());
        let listed: BTreeSet<BTreeSet<Elem>> =
            subs.iter().map(|h| h.elements().iter().copied().collect()).collect();
        assert_eq!(listed, brute);
    }
}

#[test]
fn elementary_abelian_rank_two() {
    for p in [3u32, 5, 7] {
        let s = CatalogEntry::ElementaryAbelian(2).build(p).unwrap();
        assert_eq!(s.order(), p * p);
        assert!(s.is_abelian(&s.whole()));
        assert_eq!(s.all_subgroups(None, LIMIT).unwrap().len(), p as usize + 3);
        assert_eq!(s.all_subgroups(Some((p * p) as usize), LIMIT).unwrap(), vec![s.whole()]);
    }
}

#[test]
fn subgroup_invariants() {
    for (entry, p) in [(CatalogEntry::ExtraspecialPlus, 3u32), (CatalogEntry::WreathCpCp, 3)] {
        let s = entry.build(p).unwrap();
        let subs = s.all_subgroups(None, LIMIT).unwrap();
        let distinct: BTreeSet<Vec<Elem>> = subs.iter().map(|h| h.gens().to_vec()).collect();
        assert_eq!(distinct.len(), subs.len());
        for h in &subs {
            assert_eq!(s.order() as usize % h.order(), 0);
            let n = s.normalizer(h);
            assert!(h.is_subgroup_of(&n));
            assert!(s.centralizer(h).is_subgroup_of(&n));
            for &a in h.gens() {
                for &b in h.gens() {
                    assert!(h.contains(s.mul(a, b)));
                }
                assert!(h.contains(s.inv(a)));
            }
            assert_eq!(&s.subgroup(h.elements()), h);
        }
    }
}

#[test]
fn double_cosets_in_extraspecial() {
    let s = extraspecial(3);
    let whole = s.whole();
    let z = s.center(&whole);
    assert_eq!(s.double_cosets(&whole, &whole, &whole).unwrap(), vec![0]);
    let reps = s.double_cosets(&z, &whole, &z).unwrap();
    // brute-force partition by x ~ r x q
    let mut classes: BTreeSet<BTreeSet<Elem>> = BTreeSet::new();
    for x in s.elements() {
        let class: BTreeSet<Elem> =
            z.elements().iter().flat_map(|&r| z.elements().iter().map(move |&q| (r, q))).map(|(r, q)| s.mul(s.mul(r, x), q)).collect();
        classes.insert(class);
    }
    assert_eq!(classes.len(), 9);
    assert_eq!(reps.len(), 9);
    let abelian = CatalogEntry::ElementaryAbelian(2).build(3).unwrap();
    let one = abelian.trivial_subgroup();
    assert_eq!(abelian.double_cosets(&one, &abelian.whole(), &one).unwrap().len(), 9);
}

#[test]
fn double_cosets_partition() {
    let s = CatalogEntry::WreathCpCp.build(3).unwrap();
    let subs = s.all_subgroups(None, LIMIT).unwrap();
    let whole = s.whole();
    for r in subs.iter().step_by(7) {
        for q in subs.iter().step_by(5) {
            let reps = s.double_cosets(r, &whole, q).unwrap();
            let total: usize = reps
                .iter()
                .map(|&x| {
                    let set: BTreeSet<Elem> = r
                        .elements()
                        .iter()
                        .flat_map(|&a| q.elements().iter().map(move |&b| (a, b)))
                        .map(|(a, b)| s.mul(s.mul(a, x), b))
                        .collect();
                    set.len()
                })
                .sum();
            assert_eq!(total, s.order() as usize);
        }
    }
}

#[test]
fn double_cosets_need_containment() {
    let s = CatalogEntry::WreathCpCp.build(3).unwrap();
    let a = s.subgroup(&[s.generator(0)]);
    let b = s.subgroup(&[s.generator(1)]);
    assert!(matches!(s.double_cosets(&a, &b, &b), Err(Error::Input(_))));
}

/// Lower central series using only element enumeration.
fn brute_lower_central(s: &PcGroup) -> Vec<BTreeSet<Elem>> {
    let all: Vec<Elem> = s.elements().collect();
    let mut series = vec![all.iter().copied().collect::<BTreeSet<Elem>>()];
    loop {
        let last = series.last().unwrap();
        let comms: Vec<Elem> = last.iter().flat_map(|&x| all.iter().map(move |&y| (x, y))).map(|(x, y)| s.comm(x, y)).collect();
        let next = naive_closure(s, &comms);
        if &next == last {
            break;
        }
        let done = next.len() == 1;
        series.push(next);
        if done {
            break;
        }
    }
    series
}

#[test]
fn wreath_gamma1_matches_brute_force() {
    let s = CatalogEntry::WreathCpCp.build(3).unwrap();
    assert_eq!(s.order(), 81);
    let data = s.central_series();
    assert!(data.maximal_class);
    let lower = brute_lower_central(&s);
    let g2 = &lower[1];
    let g4 = &lower[3];
    let brute: BTreeSet<Elem> = s.elements().filter(|&x| g2.iter().all(|&y| g4.contains(&s.comm(x, y)))).collect();
    let gamma1 = data.gamma1.as_ref().unwrap();
    assert_eq!(gamma1.elements().iter().copied().collect::<BTreeSet<_>>(), brute);
    for (k, term) in data.lower.iter().enumerate() {
        assert_eq!(term.elements().iter().copied().collect::<BTreeSet<_>>(), lower[k]);
    }
}

#[test]
fn abelian_series() {
    let s = CatalogEntry::ElementaryAbelian(3).build(5).unwrap();
    let data = s.central_series();
    assert!(data.gamma(2).is_trivial());
    assert_eq!(*data.z(1), s.whole());
    assert!(!data.maximal_class);
    assert!(data.gamma1.is_none());
    let ea2 = CatalogEntry::ElementaryAbelian(2).build(5).unwrap();
    assert_eq!(ea2.order(), 25);
    assert!(ea2.is_abelian(&ea2.whole()));
}

fn check_maximal_class(s: &PcGroup) {
    let data = s.central_series();
    let n = s.rank();
    assert!(data.maximal_class);
    for i in 2..=n {
        assert_eq!(data.gamma(i).log_order(), n - i, "gamma_{i}");
    }
    for i in 1..=n - 2 {
        assert_eq!(data.z(i), data.gamma(n - i), "Z_{i}");
    }
    if n >= 4 {
        assert_eq!(data.gamma1.as_ref().unwrap().log_order(), n - 1);
        assert_eq!(data.c_z2.as_ref().unwrap().log_order(), n - 1);
    }
}

#[test]
fn maximal_class_series() {
    check_maximal_class(&extraspecial(3));
    check_maximal_class(&CatalogEntry::WreathCpCp.build(3).unwrap());
    check_maximal_class(&CatalogEntry::WreathCpCp.build(5).unwrap());
    check_maximal_class(&CatalogEntry::SylowG2.build(5).unwrap());
}

#[test]
fn sylow_g2_structure() {
    let s = CatalogEntry::SylowG2.build(5).unwrap();
    assert_eq!(s.order(), 5u32.pow(6));
    let data = s.central_series();
    assert_eq!(data.nilpotency_class, 5);
    assert!(data.maximal_class);
    let gamma1 = data.gamma1.clone().unwrap();
    assert_eq!(gamma1.order(), 5usize.pow(5));
    assert!(s.is_extraspecial(&gamma1));
    assert_eq!(s.center(&gamma1), s.center(&s.whole()));
    assert_eq!(data.exceptional, Some(true));
    let w = CatalogEntry::WreathCpCp.build(3).unwrap().central_series();
    assert_eq!(w.exceptional, Some(false));
}

#[test]
fn catalog_rejects_bad_primes() {
    assert!(matches!(CatalogEntry::SylowG2.build(3), Err(Error::Input(_))));
    assert!(matches!(CatalogEntry::ExtraspecialPlus.build(2), Err(Error::Input(_))));
    assert!(matches!(CatalogEntry::ExtraspecialPlus.build(9), Err(Error::Input(_))));
    assert!(matches!("nonsense".parse::<CatalogEntry>(), Err(Error::Input(_))));
    assert_eq!("elementary_abelian(3)".parse::<CatalogEntry>().unwrap(), CatalogEntry::ElementaryAbelian(3));
}

fn maximal_subgroups(s: &PcGroup) -> Vec<Subgroup> {
    let frattini = s.frattini(&s.whole());
    let index_p = s.order() as usize / s.prime() as usize;
    s.subgroups_containing(&frattini, index_p, LIMIT).unwrap().into_iter().filter(|h| h.order() == index_p).collect()
}

#[test]
fn maximal_subgroups_meet_in_gamma2() {
    for (entry, p) in [(CatalogEntry::ExtraspecialPlus, 3u32), (CatalogEntry::WreathCpCp, 3)] {
        let s = entry.build(p).unwrap();
        let gamma2 = s.central_series().gamma(2).clone();
        let index_p = s.order() as usize / p as usize;
        let maxes: Vec<Subgroup> =
            s.all_subgroups(Some(index_p), LIMIT).unwrap();
        assert_eq!(maxes.len(), p as usize + 1);
        for (i, a) in maxes.iter().enumerate() {
            for b in &maxes[i + 1..] {
                assert_eq!(s.intersection(a, b), gamma2);
            }
        }
    }
    let s = CatalogEntry::SylowG2.build(5).unwrap();
    let gamma2 = s.central_series().gamma(2).clone();
    let maxes = maximal_subgroups(&s);
    assert_eq!(maxes.len(), 6);
    for (a, b) in [(0, 1), (0, 5), (2, 3), (4, 5)] {
        assert_eq!(s.intersection(&maxes[a], &maxes[b]), gamma2);
    }
}

fn word_strategy(rank: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    proptest::collection::vec((0..rank, -6i64..7), 0..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalize_is_a_homomorphism(u in word_strategy(6), v in word_strategy(6)) {
        let s = CatalogEntry::SylowG2.build(5).unwrap();
        let uv: Vec<(usize, i64)> = u.iter().chain(&v).copied().collect();
        let lhs = s.normalize(&uv).unwrap();
        let rhs = s.mul(s.normalize(&u).unwrap(), s.normalize(&v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wreath_normalize_is_a_homomorphism(u in word_strategy(4), v in word_strategy(4)) {
        let s = CatalogEntry::WreathCpCp.build(3).unwrap();
        let uv: Vec<(usize, i64)> = u.iter().chain(&v).copied().collect();
        prop_assert_eq!(s.normalize(&uv).unwrap(), s.mul(s.normalize(&u).unwrap(), s.normalize(&v).unwrap()));
    }
}
