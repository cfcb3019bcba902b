//! Exact linear algebra over prime fields and small modular representation theory.

mod group;
mod matrix;
mod meataxe;
pub mod poly;
mod rep;
mod subspace;

pub use group::FiniteGroup;
pub use matrix::FpMatrix;
pub use meataxe::{are_isomorphic, chop_simples, chop_simples_with, find_submodule, hom_dim_from_simple, ChopConfig, ChopResult};
pub use rep::{norm_image, trace_map, FpGroupRep};
pub use subspace::FpSubspace;
