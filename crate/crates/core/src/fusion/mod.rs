//! Fusion systems on finite p-groups.

mod ambient;
mod generators;
mod saturation;
mod system;

pub use ambient::{AmbientCatalog, AmbientOracle, AmbientSpec, Perm};
pub use generators::{FusionGenerators, GeneratorSpec};
pub use saturation::{check_saturation, SaturationReport, SaturationStatus, FULL_CHECK_MAX_LOG};
pub use system::{Automizer, FMorphism, FusionSource, FusionSystem, DEFAULT_CLOSURE_LIMIT};
