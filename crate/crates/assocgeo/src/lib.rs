//! Exact computational algebra on Grassmannians of finite-dimensional modules.
//!
//! The crate computes the quintary product map `Γ` on subspace lattices, the
//! dilation map `Π_r`, the torsor and affine structures they induce on chart
//! domains, the semitorsor of linear relations, and the associative pairs and
//! unital algebras attached to base points — all by exact arithmetic over
//! GF(p) or the rationals, with brute-force enumeration oracles and
//! verification suites for every identity.
//!
//! The core is generic over the scalar [`field::Field`]; concrete aliases for
//! the two supported fields live at the crate root.

pub mod axioms;
pub mod chart;
pub mod error;
pub mod field;
pub mod gamma;
pub mod io;
pub mod matrix;
pub mod pairs;
pub mod relations;
pub mod sample;
pub mod subspace;
pub mod torsors;
pub mod verify;

pub use error::GeomError;
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use matrix::Matrix;
pub use subspace::Subspace;

/// Matrix over a prime field GF(p).
pub type MatrixGf = Matrix<PrimeField>;
/// Matrix over the rationals.
pub type MatrixQ = Matrix<Rationals>;
/// Subspace of GF(p)^n.
pub type SubspaceGf = Subspace<PrimeField>;
/// Subspace of Q^n.
pub type SubspaceQ = Subspace<Rationals>;
/// Linear relation between GF(p)-spaces.
pub type RelationGf = relations::LinearRelation<PrimeField>;
/// Linear relation between Q-spaces.
pub type RelationQ = relations::LinearRelation<Rationals>;
