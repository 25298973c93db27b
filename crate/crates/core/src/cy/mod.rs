//! Inverse dualising complexes, truncated Calabi-Yau completions of path
//! algebras and the lift of bimodules along them.

mod compare;
mod completion;
mod lift;
mod resolution;

pub use compare::{compare_ginzburg, ComparisonRow};
pub use completion::{CyCompletion, Product, TensorChain, TensorWord};
pub use lift::{bimodule_atlas, lift_twist_sum, AtlasEntry, LiftReport};
pub use resolution::{augmentation, bimodule_dual, shift_free, standard_resolution};

use crate::dg::FreeBimodule;
use crate::error::Result;
use crate::quiver::PathAlgebra;

/// `Θ_A` and `θ_A = Θ_A[n-1]`.
#[derive(Clone, Debug)]
pub struct InverseDualizing {
    pub dualizing: FreeBimodule,
    pub theta: FreeBimodule,
}

pub fn inverse_dualizing(alg: &PathAlgebra, n: u32) -> Result<InverseDualizing> {
    let dualizing = bimodule_dual(&standard_resolution(alg)?)?;
    let theta = shift_free(&dualizing, i64::from(n) - 1)?;
    Ok(InverseDualizing { dualizing, theta })
}
