//! Exact linear canonical relations between symplectic vector spaces.
//!
//! Everything is computed over ℚ (arbitrary-precision fractions), 𝔽_p, or,
//! for one-parameter limit experiments, ℚ(t). There is no floating point:
//! transversality and the other rank conditions are decided exactly.

pub mod error;
pub mod field;
pub mod matrix;
pub mod nerve;
pub mod parametric;
pub mod random;
pub mod ratfunc;
pub mod reduction;
pub mod relation;
pub mod sabot;
pub mod subspace;
pub mod symplectic;
pub mod wwcat;

pub use error::{Error, LagrangianDefect, Result};
pub use field::{Field, PrimeField, Rationals};
pub use matrix::Matrix;
pub use nerve::NerveTuple;
pub use parametric::{limit_subspace, ParametricSubspace};
pub use ratfunc::{Poly, RatFunc, RationalFunctions};
pub use relation::{CanonicalRelation, PointDirection, TransversalityReport};
pub use subspace::Subspace;
pub use symplectic::{Classification, LagGrassmannian, SymplecticSpace};
pub use wwcat::{Equivalence, RewriteKind, RewriteStep, WWSequence};
