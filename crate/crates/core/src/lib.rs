//! Dual groups of covers of reductive groups, computed exactly from a based
//! root datum, a Weyl-invariant quadratic form `Q` and a degree `n`, together
//! with the local arithmetic and finite group cohomology needed to assemble
//! the metaGalois extension and the L-group of the center.
//!
//! - [`lattice`]: integer matrices, Smith and Hermite normal forms,
//!   sublattices and quotient invariants.
//! - [`rootdata`]: based root data, Dynkin classification, builders,
//!   isomorphism testing and naming.
//! - [`cover`]: the modified root datum, `tau_Q(-1)`, functoriality, Levi
//!   subgroups and the dual group tables.
//! - [`arith`]: square classes, Hilbert symbols and Weil indices.
//! - [`cohomology`]: cocycles, extensions, splittings and L-group assembly.

pub mod arith;
pub mod cohomology;
pub mod cover;
pub mod json;
pub mod lattice;
pub mod rootdata;

pub use arith::{ArithError, Place, RootOfUnity8, SquareClass};
pub use cohomology::{CohomologyError, ExtensionGroup, FiniteGroup, FiniteModule, GModule, OneCocycle, TwoCocycle};
pub use cover::{identify_dual, modified_datum, Cover, CoverError, ModifiedDatum, QuadraticForm};
pub use json::{parse_cover, CoverSpec, InputError};
pub use lattice::{AbelianInvariants, IntMatrix, LatticeError, Sublattice};
pub use rootdata::{build_from_code, DualGroupId, RootDataError, RootDatum};
