//! Exact computation of Auslander-Reiten triangles, translates and components in the bounded
//! derived category of a linear Nakayama algebra `kA_n/I`.
//!
//! Objects are represented by minimal bounded complexes of indecomposable projectives (or
//! injectives), each an interval module, with differentials given by rational scalars on
//! canonical maps. All arithmetic is exact over the rationals.

pub mod algebra;
pub mod ar;
pub mod complex;
pub mod engine;
pub mod error;
pub mod expr;
pub mod homalg;
pub mod linalg;
pub mod poly;
pub mod rep;

pub use algebra::{compose_scalar, AlgebraSpec, CanonicalMap, IntervalModule, ModuleKind};
pub use complex::endo::EndAlgebra;
pub use complex::hom::HomSpace;
pub use complex::minimize::{Minimized, Strip};
pub use complex::{build_complex, cone, ChainMap, Complex, Kind};

pub use engine::Engine;
pub use error::{Error, Result};
pub use homalg::Direction;
pub use linalg::{Mat, Q};
pub use rep::{decompose_rep, rep_oracle, LinearRepresentation};
