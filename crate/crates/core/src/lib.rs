//! Topological entropy of GF(2)-linear subshifts over Z^d and derived
//! invariants: entropy Betti numbers of periodic complexes, dual module
//! ranks, finite-cover approximations, and additivity/integrality
//! diagnostics.
//!
//! All dimensions are computed exactly over GF(2) on finite windows; the
//! per-window estimates carry an explicit boundary-term uncertainty that is
//! an honest convergence-scale indicator, not a certified enclosure.

pub mod betti;
pub mod duality;
pub mod error;
pub mod exec;
pub mod gf2;
pub mod lattice;
pub mod laurent;
pub mod subshift;

pub use betti::{CohomologyDims, PeriodicComplex, SubcomplexMode};
pub use duality::{GrothendieckCheck, ModulePresentation, PerpCheck};
pub use error::{CoboundaryViolation, Error};
pub use exec::EvalOptions;
pub use gf2::{BitMatrix, BitVec};
pub use lattice::{FiniteQuotient, LatticeWindow, Point, TilingReport};
pub use laurent::{LaurentMatrix, LaurentPoly};
pub use subshift::{EntropyEstimate, EstimateMode, SeparatedCount, SubshiftPresentation};
