//! Exact bookkeeping of Seiberg-Witten basic classes of smooth 4-manifolds
//! with `b₁ = 0` under blow-up and connected sum along embedded surfaces.
//!
//! Everything is integer lattice algebra over arbitrary-precision integers;
//! no floating point is used.

pub mod catalog;
pub mod error;
pub mod floer;
pub mod format;
pub mod lattice;
pub mod manifold;
pub mod matrix;
pub mod report;
pub mod surgery;

pub use error::{Error, Result, Severity, Violation};
pub use format::ManifoldFile;
pub use lattice::{Inertia, IntegerLattice, LatticeVector, SublatticeBasis};
pub use manifold::{BasicClass, FourManifold, SurfaceEmbedding};
pub use matrix::{IntMatrix, SmithForm};
pub use surgery::{BasisRole, FiberSum, GluedLatticePresentation, GluingOutcome, UndeterminedPair};
