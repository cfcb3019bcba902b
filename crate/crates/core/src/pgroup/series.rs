use serde::Serialize;

use super::pc::PcGroup;
use super::subgroup::Subgroup;

/// Central series and the structural subgroups used for groups of maximal class.
#[derive(Clone, Debug)]
pub struct MaxClassData {
    /// `lower[k]` is `gamma_{k+1}(S)`: `lower[0] = S`, `lower[1] = [S, S]`, ... ending at the trivial group.
    pub lower: Vec<Subgroup>,
    /// `upper[k]` is `Z_k(S)`: `upper[0] = 1`, `upper[1] = Z(S)`, ... ending at `S`.
    pub upper: Vec<Subgroup>,
    pub nilpotency_class: usize,
    pub maximal_class: bool,
    /// `C_S(gamma_2 / gamma_4)`, present when `|S| >= p^4`.
    pub gamma1: Option<Subgroup>,
    /// `C_S(Z_2(S))`, present when `|S| >= p^4`.
    pub c_z2: Option<Subgroup>,
    pub exceptional: Option<bool>,
}

impl MaxClassData {
    /// `gamma_i(S)` in the usual 1-based numbering for `i >= 2` (`gamma(1)` is `S`).
    pub fn gamma(&self, i: usize) -> &Subgroup {
        let idx = i.saturating_sub(1).min(self.lower.len() - 1);
        &self.lower[idx]
    }

    pub fn z(&self, i: usize) -> &Subgroup {
        &self.upper[i.min(self.upper.len() - 1)]
    }
}

/// Serializable summary of [`MaxClassData`].
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SeriesSummary {
    pub order_log: usize,
    pub nilpotency_class: usize,
    pub maximal_class: bool,
    pub lower_central_orders: Vec<usize>,
    pub upper_central_orders: Vec<usize>,
    pub gamma1_order_log: Option<usize>,
    pub c_z2_order_log: Option<usize>,
    pub exceptional: Option<bool>,
}

impl PcGroup {
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let s = self.whole();
        let mut series = vec![s.clone()];
        loop {
            let last = series.last().expect("nonempty");
            if last.is_trivial() {
                break;
            }
            let next = self.commutator_subgroup(last, &s);
            if next == *last {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn upper_central_series(&self) -> Vec<Subgroup> {
        let s = self.whole();
        let mut series = vec![self.trivial_subgroup()];
        loop {
            let last = series.last().expect("nonempty");
            if *last == s {
                break;
            }
            let next = self.centralizer_modulo(&s, &s, last);
            if next == *last {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn central_series(&self) -> MaxClassData {
        let lower = self.lower_central_series();
        let upper = self.upper_central_series();
        let nilpotency_class = lower.len() - 1;
        let n = self.rank();
        let maximal_class = n >= 2 && nilpotency_class == n - 1;
        let s = self.whole();
        let (gamma1, c_z2, exceptional) = if n >= 4 {
            let idx = |k: usize| lower[k.min(lower.len() - 1)].clone();
            let g2 = idx(1);
            let g4 = idx(3);
            let gamma1 = self.centralizer_modulo(&s, &g2, &g4);
            let z2 = upper[2.min(upper.len() - 1)].clone();
            let c_z2 = self.centralizer_in(&s, &z2);
            let exc = gamma1 != c_z2;
            (Some(gamma1), Some(c_z2), Some(exc))
        } else {
            (None, None, None)
        };
        MaxClassData { lower, upper, nilpotency_class, maximal_class, gamma1, c_z2, exceptional }
    }

    /// Extraspecial: `Z(H) = [H, H] = Phi(H)` of order `p`.
    pub fn is_extraspecial(&self, h: &Subgroup) -> bool {
        let z = self.center(h);
        z.log_order() == 1 && self.commutator_subgroup(h, h) == z && self.frattini(h) == z
    }
}

impl MaxClassData {
    pub fn summary(&self) -> SeriesSummary {
        SeriesSummary {
            order_log: self.lower[0].log_order(),
            nilpotency_class: self.nilpotency_class,
            maximal_class: self.maximal_class,
            lower_central_orders: self.lower.iter().map(|h| h.log_order()).collect(),
            upper_central_orders: self.upper.iter().map(|h| h.log_order()).collect(),
            gamma1_order_log: self.gamma1.as_ref().map(|h| h.log_order()),
            c_z2_order_log: self.c_z2.as_ref().map(|h| h.log_order()),
            exceptional: self.exceptional,
        }
    }
}
