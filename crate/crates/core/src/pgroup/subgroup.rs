use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

use super::pc::{Elem, PcGroup};

/// A subgroup of a pc group, stored as its canonical induced generating sequence
/// together with its sorted element list.
///
/// The canonical sequence has strictly increasing depths, leading exponent 1 and
/// zero exponents at the other generators' depths, so two subgroups of the same
/// ambient are equal exactly when their sequences are equal.
#[derive(Clone)]
pub struct Subgroup {
    gens: Vec<Elem>,
    elems: Arc<[Elem]>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.gens.hash(state);
    }
}

impl Ord for Subgroup {
    /// Orders by size first, then lexicographically by canonical sequence.
    fn cmp(&self, other: &Self) -> Ordering {
        self.elems.len().cmp(&other.elems.len()).then_with(|| self.gens.cmp(&other.gens))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, gens {:?})", self.elems.len(), self.gens)
    }
}

/// Dense membership set over the ambient's elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    words: Vec<u64>,
}

impl ElemSet {
    pub fn new(universe: u32) -> Self {
        ElemSet { words: vec![0; (universe as usize).div_ceil(64)] }
    }

    pub fn from_elems(universe: u32, elems: &[Elem]) -> Self {
        let mut s = Self::new(universe);
        for &x in elems {
            s.insert(x);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, x: Elem) -> bool {
        let (w, b) = ((x / 64) as usize, x % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.words[(x / 64) as usize] & (1 << (x % 64)) != 0
    }

    pub fn intersect(&self, other: &ElemSet) -> ElemSet {
        ElemSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub fn to_elems(&self) -> Vec<Elem> {
        let mut out = Vec::new();
        for (i, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros();
                out.push(i as u32 * 64 + b);
                w &= w - 1;
            }
        }
        out
    }
}

impl Subgroup {
    /// Builds the subgroup from its complete sorted element list.
    pub(crate) fn from_sorted_elems(g: &PcGroup, elems: Vec<Elem>) -> Subgroup {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        let mut depths: Vec<usize> = Vec::new();
        for &x in &elems {
            let d = g.depth(x);
            if d < g.rank() && !depths.contains(&d) {
                depths.push(d);
            }
        }
        depths.sort_unstable();
        let gens = depths
            .iter()
            .map(|&d| {
                *elems
                    .iter()
                    .find(|&&x| g.depth(x) == d && g.digit(x, d) == 1 && depths.iter().all(|&e| e == d || g.digit(x, e) == 0))
                    .expect("canonical generator exists for every depth")
            })
            .collect();
        Subgroup { gens, elems: elems.into() }
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    /// `log_p` of the order.
    pub fn log_order(&self) -> usize {
        self.gens.len()
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.gens.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn elem_set(&self, g: &PcGroup) -> ElemSet {
        ElemSet::from_elems(g.order(), &self.elems)
    }

    /// Exponents of `x` with respect to the canonical sequence, or `None` if `x` is not in the subgroup.
    pub fn sift(&self, g: &PcGroup, mut x: Elem) -> Option<Vec<u32>> {
        let mut exps = Vec::with_capacity(self.gens.len());
        for &h in &self.gens {
            let c = g.digit(x, g.depth(h));
            if c != 0 {
                x = g.mul(g.pow(h, -(c as i64)), x);
            }
            exps.push(c);
        }
        (x == 0).then_some(exps)
    }
}

impl PcGroup {
    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { gens: Vec::new(), elems: vec![0].into() }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { gens: self.generators(), elems: self.elements().collect::<Vec<_>>().into() }
    }

    pub fn subgroup_from_set(&self, set: &ElemSet) -> Subgroup {
        Subgroup::from_sorted_elems(self, set.to_elems())
    }

    /// Closure of a set of elements.
    pub fn subgroup(&self, gens: &[Elem]) -> Subgroup {
        let gens: Vec<Elem> = gens.iter().copied().filter(|&x| x != 0).collect();
        let mut set = ElemSet::new(self.order());
        set.insert(0);
        let mut frontier = vec![0];
        let mut all = vec![0];
        while let Some(x) = frontier.pop() {
            for &s in &gens {
                let y = self.mul(x, s);
                if set.insert(y) {
                    frontier.push(y);
                    all.push(y);
                }
            }
        }
        all.sort_unstable();
        Subgroup::from_sorted_elems(self, all)
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = a.gens.clone();
        gens.extend_from_slice(&b.gens);
        self.subgroup(&gens)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
        let elems: Vec<Elem> = small.elems.iter().copied().filter(|&x| large.contains(x)).collect();
        Subgroup::from_sorted_elems(self, elems)
    }

    /// `^x H = x H x^{-1}`
    pub fn conjugate(&self, h: &Subgroup, x: Elem) -> Subgroup {
        if x == 0 {
            return h.clone();
        }
        let mut elems: Vec<Elem> = h.elems.iter().map(|&y| self.conj(x, y)).collect();
        elems.sort_unstable();
        Subgroup::from_sorted_elems(self, elems)
    }

    /// `C_K(H)`
    pub fn centralizer_in(&self, k: &Subgroup, h: &Subgroup) -> Subgroup {
        let elems: Vec<Elem> = k
            .elems
            .iter()
            .copied()
            .filter(|&x| h.gens.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
            .collect();
        Subgroup::from_sorted_elems(self, elems)
    }

    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        self.centralizer_in(&self.whole(), h)
    }

    /// `N_K(H)`
    pub fn normalizer_in(&self, k: &Subgroup, h: &Subgroup) -> Subgroup {
        let elems: Vec<Elem> =
            k.elems.iter().copied().filter(|&x| h.gens.iter().all(|&y| h.contains(self.conj(x, y)))).collect();
        Subgroup::from_sorted_elems(self, elems)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        self.normalizer_in(&self.whole(), h)
    }

    pub fn center(&self, h: &Subgroup) -> Subgroup {
        self.centralizer_in(h, h)
    }

    pub fn is_normal_in(&self, h: &Subgroup, k: &Subgroup) -> bool {
        h.is_subgroup_of(k) && k.gens.iter().all(|&x| h.gens.iter().all(|&y| h.contains(self.conj(x, y))))
    }

    pub fn is_abelian(&self, h: &Subgroup) -> bool {
        h.gens.iter().enumerate().all(|(i, &x)| h.gens[i + 1..].iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Smallest subgroup of `k` containing `h` and normalized by `k`.
    pub fn normal_closure(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let mut cur = h.clone();
        loop {
            let mut extra: Vec<Elem> = Vec::new();
            for &x in &k.gens {
                for &y in &cur.gens {
                    let z = self.conj(x, y);
                    if !cur.contains(z) {
                        extra.push(z);
                    }
                }
            }
            if extra.is_empty() {
                return cur;
            }
            extra.extend_from_slice(&cur.gens);
            cur = self.subgroup(&extra);
        }
    }

    /// `[A, B]`, as the normal closure in `<A, B>` of the generator commutators.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let comms: Vec<Elem> = a.gens.iter().flat_map(|&x| b.gens.iter().map(move |&y| (x, y))).map(|(x, y)| self.comm(x, y)).collect();
        let base = self.subgroup(&comms);
        self.normal_closure(&base, &self.join(a, b))
    }

    /// `{x in K : [x, a] in B for all a in A}`, i.e. `C_K(A/B)` for `B` normal.
    pub fn centralizer_modulo(&self, k: &Subgroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let elems: Vec<Elem> =
            k.elems.iter().copied().filter(|&x| a.gens.iter().all(|&y| b.contains(self.comm(x, y)))).collect();
        Subgroup::from_sorted_elems(self, elems)
    }

    /// Frattini subgroup `H^p [H, H]`.
    pub fn frattini(&self, h: &Subgroup) -> Subgroup {
        let mut gens: Vec<Elem> = h.gens.iter().map(|&x| self.pow(x, self.prime() as i64)).collect();
        gens.extend_from_slice(&self.commutator_subgroup(h, h).gens);
        let base = self.subgroup(&gens);
        self.normal_closure(&base, h)
    }

    /// Conjugacy class of `h` under `k`, sorted, together with a transporter
    /// `t` (with `^t h = member`) for each member.
    pub fn conjugacy_class_with_transporters(&self, h: &Subgroup, k: &Subgroup) -> Vec<(Subgroup, Elem)> {
        let mut seen: HashMap<Subgroup, Elem> = HashMap::new();
        seen.insert(h.clone(), 0);
        let mut queue = vec![(h.clone(), 0)];
        while let Some((cur, t)) = queue.pop() {
            for &x in &k.gens {
                let next = self.conjugate(&cur, x);
                if !seen.contains_key(&next) {
                    let tx = self.mul(x, t);
                    seen.insert(next.clone(), tx);
                    queue.push((next, tx));
                }
            }
        }
        let mut out: Vec<(Subgroup, Elem)> = seen.into_iter().collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn conjugacy_class(&self, h: &Subgroup, k: &Subgroup) -> Vec<Subgroup> {
        self.conjugacy_class_with_transporters(h, k).into_iter().map(|(s, _)| s).collect()
    }

    /// Partitions `subs` (assumed closed under `k`-conjugation) into `k`-classes.
    /// Each class is sorted; classes are ordered by their least member.
    pub fn conjugacy_classes(&self, subs: &[Subgroup], k: &Subgroup) -> Vec<Vec<Subgroup>> {
        let mut done: HashSet<Subgroup> = HashSet::new();
        let mut sorted = subs.to_vec();
        sorted.sort();
        let mut classes = Vec::new();
        for s in sorted {
            if done.contains(&s) {
                continue;
            }
            let class = self.conjugacy_class(&s, k);
            done.extend(class.iter().cloned());
            classes.push(class);
        }
        classes
    }

    /// Representatives of the double cosets `R x Q` in `P`; each is the least
    /// element of its double coset.
    pub fn double_cosets(&self, r: &Subgroup, p: &Subgroup, q: &Subgroup) -> Result<Vec<Elem>> {
        if !r.is_subgroup_of(p) || !q.is_subgroup_of(p) {
            return Err(Error::input("double cosets need R, Q <= P"));
        }
        let mut seen = ElemSet::new(self.order());
        let mut reps = Vec::new();
        for &x in p.elements() {
            if seen.contains(x) {
                continue;
            }
            reps.push(x);
            for &a in r.elements() {
                let ax = self.mul(a, x);
                for &b in q.elements() {
                    seen.insert(self.mul(ax, b));
                }
            }
        }
        Ok(reps)
    }

    /// Left transversal of `h` in `k` (`h <= k`), least element of each coset `x h`.
    pub fn left_transversal(&self, k: &Subgroup, h: &Subgroup) -> Vec<Elem> {
        let mut seen = ElemSet::new(self.order());
        let mut reps = Vec::new();
        for &x in k.elements() {
            if seen.contains(x) {
                continue;
            }
            reps.push(x);
            for &y in h.elements() {
                seen.insert(self.mul(x, y));
            }
        }
        reps
    }

    /// Elements `n_1, .., n_k` such that `H = N_0 < N_1 < .. < N_k = K` with
    /// `N_i = <N_{i-1}, n_i>` of index `p` over `N_{i-1}`. The products
    /// `n_k^{e_k} .. n_1^{e_1}` then form a left transversal of `H` in `K`.
    pub fn index_p_steps(&self, h: &Subgroup, k: &Subgroup) -> Vec<Elem> {
        debug_assert!(h.is_subgroup_of(k));
        let mut cur = h.clone();
        let mut steps = Vec::new();
        let p = self.prime() as i64;
        while cur.order() < k.order() {
            let n = k
                .elements()
                .iter()
                .copied()
                .find(|&x| {
                    !cur.contains(x)
                        && cur.contains(self.pow(x, p))
                        && cur.gens.iter().all(|&y| cur.contains(self.conj(x, y)))
                })
                .expect("a p-group properly contains its subgroup's normalizer step");
            let mut elems: Vec<Elem> = Vec::with_capacity(cur.order() * p as usize);
            let mut xe = 0;
            for _ in 0..p {
                elems.extend(cur.elems.iter().map(|&y| self.mul(xe, y)));
                xe = self.mul(xe, n);
            }
            elems.sort_unstable();
            cur = Subgroup::from_sorted_elems(self, elems);
            steps.push(n);
        }
        steps
    }

    /// All subgroups of `S` of order at most `max_order` containing `base`, by
    /// cyclic extension through index-`p` normal steps. Sorted by (order, canonical sequence).
    pub fn subgroups_containing(&self, base: &Subgroup, max_order: usize, limit: usize) -> Result<Vec<Subgroup>> {
        let p = self.prime() as i64;
        let mut layer = vec![base.clone()];
        let mut all = vec![base.clone()];
        while !layer.is_empty() && layer[0].order() * (p as usize) <= max_order {
            let mut next: HashSet<Subgroup> = HashSet::new();
            for k in &layer {
                let norm = self.normalizer(k);
                let mut covered = k.elem_set(self);
                for &x in norm.elements() {
                    if covered.contains(x) || !k.contains(self.pow(x, p)) {
                        continue;
                    }
                    let mut elems: Vec<Elem> = Vec::with_capacity(k.order() * p as usize);
                    let mut xe = 0;
                    for _ in 0..p {
                        elems.extend(k.elems.iter().map(|&y| self.mul(xe, y)));
                        xe = self.mul(xe, x);
                    }
                    elems.sort_unstable();
                    for &y in &elems {
                        covered.insert(y);
                    }
                    next.insert(Subgroup::from_sorted_elems(self, elems));
                }
            }
            let mut next: Vec<Subgroup> = next.into_iter().collect();
            next.sort();
            all.extend(next.iter().cloned());
            if all.len() > limit {
                return Err(Error::resource("subgroup enumeration count", limit as u64));
            }
            layer = next;
        }
        all.sort();
        Ok(all)
    }

    /// All subgroups, optionally restricted to a single order.
    pub fn all_subgroups(&self, order_filter: Option<usize>, limit: usize) -> Result<Vec<Subgroup>> {
        let all = self.subgroups_containing(&self.trivial_subgroup(), self.order() as usize, limit)?;
        Ok(match order_filter {
            Some(o) => all.into_iter().filter(|h| h.order() == o).collect(),
            None => all,
        })
    }
}
