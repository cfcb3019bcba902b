use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

/// Abstract finite group given by its multiplication table. Element `0` is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    gens: Vec<u32>,
}

impl FiniteGroup {
    /// Validates the table (identity at 0, Latin square, associativity by Light's test on `gens`).
    pub fn from_table(order: usize, table: Vec<u32>, gens: Vec<u32>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::input("multiplication table has the wrong size"));
        }
        if table.iter().any(|&x| x as usize >= order) || gens.iter().any(|&x| x as usize >= order) {
            return Err(Error::input("multiplication table entry out of range"));
        }
        for a in 0..order {
            if table[a] as usize != a || table[a * order] as usize != a {
                return Err(Error::input("element 0 is not the identity"));
            }
        }
        let mut inverses = vec![u32::MAX; order];
        for a in 0..order {
            let mut seen = vec![false; order];
            for b in 0..order {
                let c = table[a * order + b] as usize;
                if seen[c] {
                    return Err(Error::input(format!("row {a} of the multiplication table repeats {c}")));
                }
                seen[c] = true;
                if c == 0 {
                    inverses[a] = b as u32;
                }
            }
        }
        let g = FiniteGroup { order, table, inverses, gens };
        if g.generated(&g.gens).len() != order {
            return Err(Error::input("listed generators do not generate the group"));
        }
        for &s in &g.gens {
            for x in 0..order as u32 {
                for y in 0..order as u32 {
                    if g.mul(g.mul(x, s), y) != g.mul(x, g.mul(s, y)) {
                        return Err(Error::input(format!("multiplication is not associative at ({x}, {s}, {y})")));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Closes `gens` under `mul`, returning the group on the enumerated elements (identity first,
    /// breadth-first order) together with those elements.
    pub fn from_closure<T, F>(identity: T, gens: &[T], mul: F, limit: usize) -> Result<(Self, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut index: HashMap<T, u32> = HashMap::new();
        let mut elems = vec![identity.clone()];
        index.insert(identity, 0);
        let mut gen_idx = Vec::new();
        for s in gens {
            if !index.contains_key(s) {
                index.insert(s.clone(), elems.len() as u32);
                elems.push(s.clone());
            }
            let i = index[s];
            if i != 0 && !gen_idx.contains(&i) {
                gen_idx.push(i);
            }
        }
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head].clone();
            head += 1;
            for &s in &gen_idx {
                let y = mul(&x, &elems[s as usize]);
                if !index.contains_key(&y) {
                    if elems.len() >= limit {
                        return Err(Error::resource("group order", limit as u64));
                    }
                    index.insert(y.clone(), elems.len() as u32);
                    elems.push(y);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for (a, x) in elems.iter().enumerate() {
            for (b, y) in elems.iter().enumerate() {
                table[a * n + b] = *index.get(&mul(x, y)).ok_or_else(|| Error::internal("closure is not closed"))?;
            }
        }
        let mut inverses = vec![0u32; n];
        for a in 0..n {
            inverses[a] = (0..n as u32).find(|&b| table[a * n + b as usize] == 0).expect("finite group");
        }
        Ok((FiniteGroup { order: n, table, inverses, gens: gen_idx }, elems))
    }

    /// Group generated by permutations of `0..degree` (composition `(a*b)(i) = a(b(i))`).
    pub fn from_permutations(degree: usize, perms: &[Vec<usize>], limit: usize) -> Result<(Self, Vec<Vec<usize>>)> {
        for perm in perms {
            let mut seen = vec![false; degree];
            if perm.len() != degree || perm.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::input("not a permutation of the stated degree"));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        Self::from_closure(id, perms, |a, b| b.iter().map(|&i| a[i]).collect(), limit)
    }

    pub fn trivial() -> Self {
        FiniteGroup { order: 1, table: vec![0], inverses: vec![0], gens: Vec::new() }
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        let inverses = (0..n).map(|a| ((n - a) % n) as u32).collect();
        let gens = if n > 1 { vec![1] } else { Vec::new() };
        FiniteGroup { order: n, table, inverses, gens }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[u32]) -> Vec<u32> {
        let mut in_sub = vec![false; self.order];
        in_sub[0] = true;
        let mut elems = vec![0u32];
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head];
            head += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if !in_sub[y as usize] {
                    in_sub[y as usize] = true;
                    elems.push(y);
                }
            }
        }
        elems.sort_unstable();
        elems
    }

    /// `g h g^{-1}`
    pub fn conj(&self, g: u32, h: u32) -> u32 {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// Sorted normalizer of the sorted subgroup `h`.
    pub fn normalizer(&self, h: &[u32]) -> Vec<u32> {
        self.elements().filter(|&g| h.iter().all(|&x| h.binary_search(&self.conj(g, x)).is_ok())).collect()
    }

    /// A Sylow `p`-subgroup (sorted), grown one factor of `p` at a time inside normalizers.
    pub fn sylow(&self, p: u32) -> Vec<u32> {
        let p = p as usize;
        let mut target = 1;
        while self.order % (target * p) == 0 {
            target *= p;
        }
        let mut sub = vec![0u32];
        while sub.len() < target {
            let norm = self.normalizer(&sub);
            let next = norm.iter().copied().find(|&g| {
                sub.binary_search(&g).is_err() && {
                    let mut x = g;
                    for _ in 1..p {
                        x = self.mul(x, g);
                    }
                    sub.binary_search(&x).is_ok()
                }
            });
            let g = next.expect("Cauchy's theorem in N(P)/P");
            let mut gens: Vec<u32> = sub.clone();
            gens.push(g);
            sub = self.generated(&gens);
        }
        sub
    }

    /// All subgroups of the subgroup `within` (sorted element lists), by cyclic extension.
    pub fn subgroups_of(&self, within: &[u32]) -> Vec<Vec<u32>> {
        let mut found: Vec<Vec<u32>> = vec![vec![0]];
        let mut seen: std::collections::HashSet<Vec<u32>> = found.iter().cloned().collect();
        let mut head = 0;
        while head < found.len() {
            let h = found[head].clone();
            head += 1;
            for &g in within {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.generated(&gens);
                if seen.insert(k.clone()) {
                    found.push(k);
                }
            }
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        found
    }

    /// Whether the group has a strongly `p`-embedded subgroup: `p` divides the order and the
    /// normalizers of the nontrivial subgroups of a Sylow `p`-subgroup generate a proper subgroup.
    pub fn has_strongly_p_embedded(&self, p: u32) -> bool {
        if self.order % p as usize != 0 {
            return false;
        }
        let sylow = self.sylow(p);
        let mut gens: Vec<u32> = Vec::new();
        let mut current = vec![0u32];
        for q in self.subgroups_of(&sylow).into_iter().filter(|q| q.len() > 1) {
            for g in self.normalizer(&q) {
                if current.binary_search(&g).is_err() {
                    gens.push(g);
                    current = self.generated(&gens);
                    if current.len() == self.order {
                        return false;
                    }
                }
            }
        }
        current.len() < self.order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> FiniteGroup {
        let mut transposition: Vec<usize> = (0..n).collect();
        transposition.swap(0, 1);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        FiniteGroup::from_permutations(n, &[transposition, cycle], 10_000).unwrap().0
    }

    #[test]
    fn symmetric_group_orders() {
        assert_eq!(sym(3).order(), 6);
        assert_eq!(sym(4).order(), 24);
    }

    #[test]
    fn sylow_orders() {
        let s4 = sym(4);
        assert_eq!(s4.sylow(2).len(), 8);
        assert_eq!(s4.sylow(3).len(), 3);
    }

    #[test]
    fn strongly_embedded() {
        // S_3 at p = 3: the Sylow is normal, so no.
        assert!(!sym(3).has_strongly_p_embedded(3));
        // S_3 at p = 2: a Sylow 2-subgroup is TI and self-normalizing.
        assert!(sym(3).has_strongly_p_embedded(2));
        assert!(!FiniteGroup::cyclic(6).has_strongly_p_embedded(3));
        assert!(!FiniteGroup::cyclic(2).has_strongly_p_embedded(3));
    }

    #[test]
    fn table_validation() {
        let c3 = FiniteGroup::cyclic(3);
        assert!(FiniteGroup::from_table(3, c3.table.clone(), vec![1]).is_ok());
        let mut bad = c3.table.clone();
        bad.swap(4, 5);
        assert!(matches!(FiniteGroup::from_table(3, bad, vec![1]), Err(Error::Input(_))));
    }
}
