//! Exact Steiner (k,l)-eccentricity invariants on trees.
//!
//! The crate computes Steiner distances and (k,l)-eccentricities exactly,
//! rewrites trees with the sigma and (p,q) transformations, builds the
//! extremal tree families (paths, stars, brooms, balanced starlike trees,
//! caterpillars) and sweeps every non-isomorphic tree of small order to check
//! the known extremal bounds.
//!
//! Averages are exact rationals. Numeric routines are generic over
//! [`Scalar`]; [`Rational`] is the arbitrary-precision default.

pub mod enumerate;
pub mod error;
pub mod families;
pub mod metrics;
pub mod scalar;
pub mod transforms;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use metrics::{EccResult, EccTable, KLParams};
pub use scalar::Scalar;
pub use tree::{ShapeClass, ShapeTag, Tree, TreePath, VertexSet};

/// Arbitrary-precision exact rational; the default scalar.
pub type Rational = num_rational::BigRational;
/// Fixed-width rational for callers whose sums are known to be small.
pub type Rational64 = num_rational::Ratio<i64>;
/// Wider fixed-width rational.
pub type Rational128 = num_rational::Ratio<i128>;
