//! Morphisms and mapping cones between string and band complexes over gentle
//! algebras, with an exact linear-algebra oracle to check every answer.

pub mod algebra;
pub mod complex;
pub mod cone;
pub mod corpus;
pub mod error;
pub mod field;
pub mod hom;
pub mod linalg;
pub mod oracle;
pub mod quiver;
pub mod render;
pub mod verify;
pub mod words;

pub use algebra::Algebra;
pub use error::{Error, Result};
pub use field::{Field, Fp, Rat, F32003};
pub use quiver::{parse_presentation, Quiver};
pub use words::{Band, HString, Object};
