use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Group elements are indices into the ambient's normal-form table: the exponent
/// vector `(e_0, .., e_{n-1})` maps to `sum e_i * p^(n-1-i)`, so numeric order is
/// lexicographic order on exponent vectors.
pub type Elem = u32;

/// A word in the pc generators: `(generator, exponent)` pairs, 0-based generators.
pub type Word = Vec<(usize, i64)>;

/// Largest ambient order the engine will tabulate.
pub const MAX_PC_ORDER: u64 = 1 << 21;

/// A power-commutator presentation of a finite p-group.
///
/// `powers[i]` is the tail of `g_i^p`; `commutators` holds `(i, j, tail)` meaning
/// `[g_j, g_i] = tail` for `i < j`. Missing relations are trivial. Tails may only
/// mention generators of higher index (`> i` for powers, `> j` for commutators).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcPresentation {
    pub prime: u32,
    pub rank: usize,
    #[serde(default)]
    pub powers: Vec<Word>,
    #[serde(default)]
    pub commutators: Vec<(usize, usize, Word)>,
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl PcPresentation {
    pub fn new(prime: u32, rank: usize) -> Self {
        PcPresentation { prime, rank, powers: vec![Vec::new(); rank], commutators: Vec::new() }
    }

    pub fn set_power(&mut self, i: usize, tail: Word) -> &mut Self {
        if self.powers.len() < self.rank {
            self.powers.resize(self.rank, Vec::new());
        }
        self.powers[i] = tail;
        self
    }

    /// Sets `[g_j, g_i] = tail` (requires `i < j`).
    pub fn set_commutator(&mut self, j: usize, i: usize, tail: Word) -> &mut Self {
        self.commutators.retain(|(a, b, _)| !(*a == i && *b == j));
        self.commutators.push((i, j, tail));
        self
    }

    fn validate(&self) -> Result<()> {
        if !is_prime(self.prime) || self.prime == 2 {
            return Err(Error::input(format!("prime must be an odd prime, got {}", self.prime)));
        }
        let order = (self.prime as u64).checked_pow(self.rank as u32).unwrap_or(u64::MAX);
        if order > MAX_PC_ORDER {
            return Err(Error::resource(format!("group order {}^{}", self.prime, self.rank), MAX_PC_ORDER));
        }
        if self.powers.len() > self.rank {
            return Err(Error::input(format!("{} power relations for rank {}", self.powers.len(), self.rank)));
        }
        for (i, tail) in self.powers.iter().enumerate() {
            for &(g, _) in tail {
                if g <= i || g >= self.rank {
                    return Err(Error::input(format!("power tail of g_{i} mentions g_{g}")));
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        for (i, j, tail) in &self.commutators {
            if i >= j || *j >= self.rank {
                return Err(Error::input(format!("commutator entry ({i}, {j}) needs i < j < rank")));
            }
            if !seen.insert((*i, *j)) {
                return Err(Error::input(format!("duplicate commutator relation ({i}, {j})")));
            }
            for &(g, _) in tail {
                if g <= *j || g >= self.rank {
                    return Err(Error::input(format!("tail of [g_{j}, g_{i}] mentions g_{g}")));
                }
            }
        }
        Ok(())
    }

    fn power_tail(&self, i: usize) -> &[(usize, i64)] {
        self.powers.get(i).map(|w| w.as_slice()).unwrap_or(&[])
    }

    fn commutator_tail(&self, j: usize, i: usize) -> &[(usize, i64)] {
        self.commutators
            .iter()
            .find(|(a, b, _)| *a == i && *b == j)
            .map(|(_, _, w)| w.as_slice())
            .unwrap_or(&[])
    }
}

/// A finite p-group given by a consistent pc presentation, with tabulated
/// right multiplication by each generator.
#[derive(Debug)]
pub struct PcGroup {
    pres: PcPresentation,
    p: u32,
    n: usize,
    order: u32,
    weight: Vec<u32>,
    right: Vec<Vec<Elem>>,
    inv: Vec<Elem>,
}

impl PcGroup {
    /// Builds the multiplication tables by collection and verifies consistency:
    /// every defining relation must hold for the right-regular action on all
    /// `p^n` normal forms, which forces the presented group to have order exactly `p^n`.
    pub fn new(pres: PcPresentation) -> Result<Self> {
        pres.validate()?;
        let p = pres.prime;
        let n = pres.rank;
        let order = p.pow(n as u32);
        let weight: Vec<u32> = (0..n).map(|i| p.pow((n - 1 - i) as u32)).collect();
        let mut g = PcGroup { pres, p, n, order, weight, right: vec![Vec::new(); n], inv: Vec::new() };

        for i in (0..n).rev() {
            let power = g.eval_word(g.pres.power_tail(i))?;
            // conj[j] = g_i^{-1} g_j g_i = g_j [g_j, g_i]
            let mut conj = vec![0; n];
            for (j, c) in conj.iter_mut().enumerate().skip(i + 1) {
                let tail = g.eval_word(g.pres.commutator_tail(j, i))?;
                *c = g.mul(g.weight[j], tail);
            }
            let tail_size = g.weight[i] as usize;
            let mut conj_tail = vec![0 as Elem; tail_size];
            for w in 1..tail_size as u32 {
                let last = (0..n).rev().find(|&j| g.digit(w, j) != 0).expect("nonzero tail");
                conj_tail[w as usize] = g.mul(conj_tail[(w - g.weight[last]) as usize], conj[last]);
            }
            let mut table = vec![0 as Elem; order as usize];
            for x in 0..order {
                let w = x % g.weight[i];
                let head = x - w;
                let base = if g.digit(x, i) + 1 < p {
                    head + g.weight[i]
                } else {
                    g.mul(head - (p - 1) * g.weight[i], power)
                };
                table[x as usize] = g.mul(base, conj_tail[w as usize]);
            }
            g.right[i] = table;
        }
        g.check_consistency()?;
        g.inv = (0..order).map(|x| g.compute_inverse(x)).collect();
        Ok(g)
    }

    fn check_consistency(&self) -> Result<()> {
        for i in 0..self.n {
            let power = self.eval_word(self.pres.power_tail(i))?;
            for x in 0..self.order {
                let mut y = x;
                for _ in 0..self.p {
                    y = self.right[i][y as usize];
                }
                if y != self.mul(x, power) {
                    return Err(Error::input(format!("inconsistent presentation: power relation of g_{i} fails")));
                }
            }
            for j in i + 1..self.n {
                let tail = self.eval_word(self.pres.commutator_tail(j, i))?;
                for x in 0..self.order {
                    let lhs = self.right[i][self.right[j][x as usize] as usize];
                    let rhs = self.mul(self.right[j][self.right[i][x as usize] as usize], tail);
                    if lhs != rhs {
                        return Err(Error::input(format!(
                            "inconsistent presentation: relation [g_{j}, g_{i}] fails on overlap"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_inverse(&self, x: Elem) -> Elem {
        let mut y = x;
        let mut prev = 0;
        while y != 0 {
            prev = y;
            y = self.mul(y, x);
        }
        prev
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn generator(&self, i: usize) -> Elem {
        self.weight[i]
    }

    pub fn generators(&self) -> Vec<Elem> {
        self.weight.clone()
    }

    #[inline]
    pub fn digit(&self, x: Elem, i: usize) -> u32 {
        (x / self.weight[i]) % self.p
    }

    pub fn exponents(&self, x: Elem) -> Vec<u32> {
        (0..self.n).map(|i| self.digit(x, i)).collect()
    }

    pub fn from_exponents(&self, e: &[u32]) -> Result<Elem> {
        if e.len() != self.n || e.iter().any(|&v| v >= self.p) {
            return Err(Error::input(format!("exponent vector {e:?} is not a normal form for rank {}", self.n)));
        }
        Ok(e.iter().zip(&self.weight).map(|(a, w)| a * w).sum())
    }

    /// Index of the first nonzero exponent; `rank()` for the identity.
    pub fn depth(&self, x: Elem) -> usize {
        (0..self.n).find(|&i| self.digit(x, i) != 0).unwrap_or(self.n)
    }

    #[inline]
    pub fn mul(&self, mut x: Elem, y: Elem) -> Elem {
        let mut rest = y;
        for i in 0..self.n {
            let w = self.weight[i];
            let e = rest / w;
            rest -= e * w;
            let table = &self.right[i];
            for _ in 0..e {
                x = table[x as usize];
            }
            if rest == 0 {
                break;
            }
        }
        x
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inv[x as usize]
    }

    pub fn pow(&self, x: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// `g x g^{-1}`
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[x, y] = x^{-1} y^{-1} x y`
    #[inline]
    pub fn comm(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn element_order(&self, x: Elem) -> u32 {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Collects a word to its normal form.
    pub fn normalize(&self, word: &[(usize, i64)]) -> Result<Elem> {
        if let Some(&(g, _)) = word.iter().find(|(g, _)| *g >= self.n) {
            return Err(Error::input(format!("generator index {g} out of range for rank {}", self.n)));
        }
        self.eval_word(word)
    }

    // Only uses tables of generators mentioned in the word, so it is usable
    // while the tables are still being built from the top down.
    fn eval_word(&self, word: &[(usize, i64)]) -> Result<Elem> {
        let mut x = 0;
        for &(g, e) in word {
            let table = self.right.get(g).filter(|t| !t.is_empty()).ok_or_else(|| {
                Error::internal(format!("generator {g} used before its table exists"))
            })?;
            let mut ord = 1u64;
            let mut y = table[0];
            while y != 0 {
                y = table[y as usize];
                ord += 1;
            }
            let steps = e.rem_euclid(ord as i64);
            for _ in 0..steps {
                x = table[x as usize];
            }
        }
        Ok(x)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order
    }
}
