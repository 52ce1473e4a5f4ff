//! Polynomial-identity invariants of finite-dimensional algebras graded by a
//! finite abelian group and carrying a graded involution.
//!
//! Everything is computed exactly over the rationals: codimension sequences,
//! cocharacter multiplicities, colengths, radicals, bounded-degree T-ideal
//! comparisons and growth profiles.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod codim;
pub mod error;
pub mod group;
pub mod growth;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod reptheory;

pub use algebra::{GStarAlgebra, PeirceDecomposition, Validation};
pub use catalog::CatalogKey;
pub use codim::{DegreeVector, Engine};
pub use error::{Error, Result};
pub use group::FiniteAbelianGroup;
pub use growth::{GrowthReport, Profile};
pub use linalg::Subspace;
pub use poly::{Monomial, Polynomial, VarKind, Variable};
pub use rational::Q;
pub use reptheory::{Multipartition, Partition};
