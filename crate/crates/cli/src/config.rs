use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use fusionsharp::fusion::{AmbientCatalog, AmbientOracle, AmbientSpec, FusionGenerators, FusionSystem, GeneratorSpec};
use fusionsharp::pgroup::{CatalogEntry, PcGroup, PcPresentation};
use fusionsharp::{Error, Result};
use serde::{Deserialize, Serialize};

/// Default budgets selected by `--profile` or `FUSIONSHARP_PROFILE`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    #[default]
    Desk,
    Ci,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub subgroup_limit: usize,
    pub closure_limit: usize,
    pub chain_limit: usize,
    pub max_tuples: Option<u64>,
}

impl Profile {
    pub fn budgets(self) -> Budgets {
        match self {
            Profile::Desk => Budgets { subgroup_limit: 1_000_000, closure_limit: 1_000_000, chain_limit: 1_000_000, max_tuples: None },
            Profile::Ci => Budgets { subgroup_limit: 1_000_000, closure_limit: 100_000, chain_limit: 200_000, max_tuples: None },
            Profile::Full => Budgets { subgroup_limit: 20_000_000, closure_limit: 10_000_000, chain_limit: 10_000_000, max_tuples: None },
        }
    }

    /// Sampling fraction used by scans when `--sample` is absent.
    pub fn default_sample(self) -> Option<f64> {
        match self {
            Profile::Ci => Some(0.01),
            Profile::Desk | Profile::Full => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `F_S(S)`
    #[default]
    Inner,
    /// `F_S(G)` for an ambient permutation group `G`.
    Ambient,
    /// Closure of listed automorphisms.
    Generators,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Inner => "inner",
            Mode::Ambient => "ambient",
            Mode::Generators => "generators",
        })
    }
}

#[derive(Args, Clone, Debug)]
pub struct SourceArgs {
    /// Catalog group: elementary_abelian(n), extraspecial_plus, wreath_cp_cp, sylow_g2.
    #[arg(long, conflicts_with = "group_file")]
    pub catalog: Option<String>,
    /// Prime for catalog groups.
    #[arg(long)]
    pub p: Option<u32>,
    /// JSON power-commutator presentation.
    #[arg(long)]
    pub group_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Inner)]
    pub mode: Mode,
    /// Catalog ambient group (sym3xsym3, sl3_3, sym3wrsym3); supplies the group as well.
    #[arg(long, conflicts_with_all = ["catalog", "group_file"])]
    pub ambient: Option<String>,
    /// JSON file with `ambient` or `generators` data for the chosen mode.
    #[arg(long)]
    pub fusion_file: Option<PathBuf>,
}

/// Everything that determines the content of a report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub prime: u32,
    pub group: String,
    pub mode: Mode,
    pub ambient: Option<String>,
    pub fusion_file: Option<String>,
    pub profile: Profile,
    pub budgets: Budgets,
    pub seed: u64,
    pub sample: Option<f64>,
    pub options: serde_json::Value,
}

#[derive(Deserialize)]
struct FusionFile {
    #[serde(default)]
    ambient: Option<AmbientSpec>,
    #[serde(default)]
    generators: Option<Vec<GeneratorSpec>>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

pub struct Loaded {
    pub fusion: FusionSystem,
    pub group_label: String,
}

impl SourceArgs {
    pub fn load(&self, budgets: &Budgets) -> Result<Loaded> {
        if let Some(name) = &self.ambient {
            let entry = AmbientCatalog::from_str(name)?;
            if self.mode != Mode::Ambient {
                return Err(Error::input("--ambient needs --mode ambient"));
            }
            if let Some(p) = self.p {
                if p != AmbientCatalog::PRIME {
                    return Err(Error::input(format!("{name} is taken at p = {}, not p = {p}", AmbientCatalog::PRIME)));
                }
            }
            let fusion = FusionSystem::from_ambient_catalog(entry, budgets.closure_limit)?;
            return Ok(Loaded { fusion, group_label: format!("ambient {name}") });
        }
        let (group, label) = match (&self.catalog, &self.group_file) {
            (Some(name), None) => {
                let p = self.p.ok_or_else(|| Error::input("--catalog needs --p"))?;
                let entry = CatalogEntry::from_str(name)?;
                (entry.build(p)?, format!("{entry} p={p}"))
            }
            (None, Some(path)) => {
                let pres: PcPresentation = read_json(path)?;
                if self.p.is_some_and(|p| p != pres.prime) {
                    return Err(Error::input("--p disagrees with the prime in the group file"));
                }
                (PcGroup::new(pres)?, format!("file {}", path.display()))
            }
            _ => return Err(Error::input("give exactly one of --catalog, --group-file or --ambient")),
        };
        let group = Arc::new(group);
        let fusion = match self.mode {
            Mode::Inner => {
                if self.fusion_file.is_some() {
                    return Err(Error::input("--fusion-file is not used with --mode inner"));
                }
                FusionSystem::inner(group)
            }
            Mode::Ambient => {
                let file: FusionFile = read_json(self.fusion_file.as_ref().ok_or_else(|| Error::input("--mode ambient needs --ambient or --fusion-file"))?)?;
                let spec = file.ambient.ok_or_else(|| Error::input("fusion file has no `ambient` entry"))?;
                let oracle = AmbientOracle::new(&group, spec, budgets.closure_limit)?;
                FusionSystem::from_ambient(group, oracle)
            }
            Mode::Generators => {
                let file: FusionFile = read_json(self.fusion_file.as_ref().ok_or_else(|| Error::input("--mode generators needs --fusion-file"))?)?;
                let specs = file.generators.ok_or_else(|| Error::input("fusion file has no `generators` entry"))?;
                let entries = specs.iter().map(|s| s.resolve(&group)).collect::<Result<Vec<_>>>()?;
                let gens = FusionGenerators::new(&group, entries)?;
                FusionSystem::from_generators(group, gens)
            }
        };
        Ok(Loaded { fusion, group_label: label })
    }
}
