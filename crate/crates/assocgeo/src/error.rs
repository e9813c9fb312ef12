//! Error type shared across the crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("{0}")]
    BadField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("subspaces are not transversal ({0})")]
    NotTransversal(String),
    #[error("quintuple lies outside the operator domain D_L | D_R | D_M")]
    OutsideDomain,
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("singular denominator: the result leaves the affine chart")]
    SingularDenominator,
    #[error("matrix is singular")]
    Singular,
    #[error("{0} is not a member of {1}")]
    Membership(String, String),
    #[error("operation requires a finite field")]
    NotFinite,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
