//! Exact computations with Landau-Ginzburg matrix factorisations, orbifold
//! equivalences between simple singularities and Calabi-Yau completions of
//! quiver path algebras.

pub mod ade;
pub mod algebra;
pub mod cy;
pub mod dg;
pub mod error;
pub mod field;
pub mod groebner;
pub mod io;
pub mod linalg;
pub mod mf;
pub mod poly;
pub mod quiver;
pub mod residue;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use field::Field;
pub use poly::{Monomial, Poly, WeightSystem};
pub use scalar::Scalar;
