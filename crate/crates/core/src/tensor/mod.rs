//! Transport of identities to `B ⊗ E` and `B ⊗ C`, where `E` is the Grassmann
//! algebra and `C` a color commutative algebra for a skew-symmetric
//! bicharacter `β` on a finite abelian group `H`.

mod bicharacter;
mod model;
mod regular;
mod signed;
mod transform;

use thiserror::Error;

use crate::basis::BasisError;
use crate::free::FreeError;
use crate::grading::GradingError;
use crate::group::GroupError;

pub use bicharacter::{BetaTable, Bicharacter, BicharacterViolation};
pub use model::{tensor_evaluate, ColorModel, GrassmannModel, Model};
pub use regular::{check_regular, GradedStructure, Regularity, RegularityPolicy};
pub use signed::{lambda_sigma, phi_h, zeta_j, SignedPolynomial};
pub use transform::{grassmann_templates, transform_basis, TransformedIdentity};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("the group H must be finite")]
    InfiniteH,
    #[error("the group H must be abelian")]
    NonAbelianH,
    #[error("root order must be positive")]
    ZeroRootOrder,
    #[error("bicharacter table must be {expected}×{expected}")]
    MalformedTable { expected: usize },
    #[error("bicharacter violates {0}")]
    NotABicharacter(BicharacterViolation),
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{0:?} is not a permutation of 1..n")]
    NotAPermutation(Vec<usize>),
    #[error("polynomial is not multilinear")]
    NotMultilinear,
    #[error("variables must carry pairwise distinct indices")]
    DuplicateIndex,
    #[error("degree {0} does not belong to the group")]
    ForeignDegree(String),
    #[error("model truncation {available} is smaller than the arity {needed}")]
    TruncationTooSmall { needed: usize, available: usize },
    #[error(
        "component of degree {degree} has dimension {dim}; one-dimensional components are required"
    )]
    ComponentTooBig { degree: String, dim: usize },
    #[error("length bound must be at least 2")]
    LengthBoundTooSmall,
    #[error("structure constants are malformed: {0}")]
    MalformedStructure(String),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Free(#[from] FreeError),
}
