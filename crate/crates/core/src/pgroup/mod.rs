//! Finite p-groups given by power-commutator presentations.

mod catalog;
mod morphism;
mod pc;
mod series;
mod subgroup;

pub use catalog::CatalogEntry;
pub use morphism::GroupMorphism;
pub use pc::{Elem, PcGroup, PcPresentation, Word, MAX_PC_ORDER};
pub use series::{MaxClassData, SeriesSummary};
pub use subgroup::{ElemSet, Subgroup};
