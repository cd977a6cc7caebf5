//! Cohomology of finite groups with coefficients in finite modules:
//! 2-cocycles, extensions, Baer sums, pushouts, pullbacks, splittings and
//! the Kummer boundary.

mod cocycle;
mod extension;
mod group;
mod lgroup;
mod metagalois;
mod modsolve;
mod module;

use thiserror::Error;

use crate::arith::ArithError;
use crate::cover::CoverError;

pub use cocycle::{
    kummer_boundary, kummer_boundary_with, torsion_submodule, FailingTriple, OneCocycle, TwoCocycle, SOLVER_BOUND,
};
pub use extension::{cocycle_from_extension, ExtensionGroup, MATERIALIZE_BOUND};
pub use group::FiniteGroup;
pub use lgroup::{lgroup, lgroup_assemble, lgroup_twist1, LGroupData};
pub use metagalois::{
    frobenius_cocycle, frobenius_model, frobenius_splitting_mu2, frobenius_splitting_mu4, metagalois_model,
    mu4_pushout, square_class_group, unit_subgroup, weil_splitting, WeilSplitting,
};
pub use module::{FiniteModule, GModule, ModuleHom, ModuleSpec};

/// Module element as coordinates reduced mod the invariant factors.
pub type Elem = Vec<u64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("invalid group: {0}")]
    BadGroup(String),
    #[error("invalid module: {0}")]
    BadModule(String),
    #[error("invalid module map: {0}")]
    BadHom(String),
    #[error("invalid cocycle: {0}")]
    BadCocycle(String),
    #[error("invalid extension: {0}")]
    BadExtension(String),
    #[error("invalid model: {0}")]
    BadModel(String),
    #[error("map of groups is not a homomorphism")]
    NotHomomorphism,
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("value z({0}) is not divisible by n")]
    NotDivisible(usize),
    #[error("dual center is infinite (free rank {0})")]
    InfiniteCenter(usize),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}
