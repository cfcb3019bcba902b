use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::pc::{PcGroup, PcPresentation};

/// Named groups available without an input file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CatalogEntry {
    /// `C_p^n`
    ElementaryAbelian(usize),
    /// Extraspecial of order `p^3` and exponent `p`.
    ExtraspecialPlus,
    /// `C_p wr C_p`, of order `p^{p+1}` and maximal class.
    WreathCpCp,
    /// Sylow `p`-subgroup of `G_2(p)`, `p >= 5`.
    SylowG2,
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogEntry::ElementaryAbelian(n) => write!(f, "elementary_abelian({n})"),
            CatalogEntry::ExtraspecialPlus => write!(f, "extraspecial_plus"),
            CatalogEntry::WreathCpCp => write!(f, "wreath_cp_cp"),
            CatalogEntry::SylowG2 => write!(f, "sylow_g2"),
        }
    }
}

impl FromStr for CatalogEntry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("elementary_abelian") {
            let digits = rest.trim_matches(|c| c == '(' || c == ')' || c == ':');
            let n = if digits.is_empty() { 2 } else { digits.parse().map_err(|_| Error::input(format!("bad rank in {s}")))? };
            return Ok(CatalogEntry::ElementaryAbelian(n));
        }
        match s {
            "extraspecial_plus" => Ok(CatalogEntry::ExtraspecialPlus),
            "wreath_cp_cp" => Ok(CatalogEntry::WreathCpCp),
            "sylow_g2" => Ok(CatalogEntry::SylowG2),
            _ => Err(Error::input(format!("unknown catalog group '{s}'"))),
        }
    }
}

impl CatalogEntry {
    pub fn presentation(&self, p: u32) -> Result<PcPresentation> {
        if !super::pc::is_prime(p) || p == 2 {
            return Err(Error::input(format!("catalog groups need an odd prime, got {p}")));
        }
        Ok(match *self {
            CatalogEntry::ElementaryAbelian(n) => PcPresentation::new(p, n),
            CatalogEntry::ExtraspecialPlus => {
                let mut pres = PcPresentation::new(p, 3);
                pres.set_commutator(1, 0, vec![(2, -1)]);
                pres
            }
            CatalogEntry::WreathCpCp => {
                // g_0 = top generator t; g_1..g_p = basis (x - 1)^k of F_p[x]/(x^p - 1)
                let n = p as usize + 1;
                let mut pres = PcPresentation::new(p, n);
                for k in 1..p as usize {
                    pres.set_commutator(k, 0, vec![(k + 1, 1)]);
                }
                pres
            }
            CatalogEntry::SylowG2 => {
                if p < 5 {
                    return Err(Error::input(format!("sylow_g2 needs p >= 5, got {p}")));
                }
                // Root subgroups ordered by height: a, b, a+b, 2a+b, 3a+b, 3a+2b
                // (a short, b long), generators x_r(1).
                let mut pres = PcPresentation::new(p, 6);
                pres.set_commutator(1, 0, vec![(2, 1), (3, 1), (4, -1), (5, -2)]);
                pres.set_commutator(2, 0, vec![(3, 2), (4, -3), (5, -3)]);
                pres.set_commutator(3, 0, vec![(4, -3)]);
                pres.set_commutator(4, 1, vec![(5, -1)]);
                pres.set_commutator(3, 2, vec![(5, -3)]);
                pres
            }
        })
    }

    /// Builds the group; `sylow_g2` is additionally checked against its known structure.
    pub fn build(&self, p: u32) -> Result<PcGroup> {
        let g = PcGroup::new(self.presentation(p)?)?;
        if *self == CatalogEntry::SylowG2 {
            let data = g.central_series();
            let gamma1 = data.gamma1.as_ref().expect("order p^6");
            let ok = g.order() == p.pow(6)
                && data.maximal_class
                && gamma1.log_order() == 5
                && g.is_extraspecial(gamma1)
                && g.center(gamma1) == g.center(&g.whole())
                && data.exceptional == Some(true);
            if !ok {
                return Err(Error::internal("sylow_g2 presentation fails its structural validation"));
            }
        }
        Ok(g)
    }
}
