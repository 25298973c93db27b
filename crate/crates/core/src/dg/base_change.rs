//! Base change along algebra maps: `Hom_{A^op}(X, M) ≅ Hom_{A'^op}(X ⊗_A A', M)`
//! and its mirror image for left modules.

use std::sync::Arc;

use super::hom::{hom_left, hom_right, HomModule};
use super::maps::BimoduleMap;
use super::tensor::tensor;
use super::DgBimodule;
use crate::algebra::{basis_vector, AlgebraMap, FinDimAlgebra, Vector};
use crate::error::{Error, Result};

/// Dimensions and the verified maps.
#[derive(Clone, Debug)]
pub struct BaseChangeReport {
    /// `(dim Hom_{A^op}(X, M), dim Hom_{A'^op}(X ⊗_A A', M))`
    pub right_dims: (usize, usize),
    /// `(dim Hom_B(X, N), dim Hom_{B'}(B' ⊗_B X, N))`
    pub left_dims: (usize, usize),
    pub xi: BimoduleMap,
    pub xi_tilde: BimoduleMap,
}

fn express(hom: &HomModule, columns: &[Vector], source: &DgBimodule, target: &DgBimodule) -> Result<Vector> {
    hom.element_of(columns, source, target)
        .ok_or_else(|| Error::InvalidModule("base change image leaves the Hom complex".into()))
}

fn check_inverse(forward: &BimoduleMap, backward: &BimoduleMap, src: &DgBimodule, tgt: &DgBimodule) -> Result<()> {
    if !backward.after(forward).sub(&BimoduleMap::identity(src)).is_zero()
        || !forward.after(backward).sub(&BimoduleMap::identity(tgt)).is_zero()
    {
        return Err(Error::InvalidModule("base change map is not bijective".into()));
    }
    forward.check(src, tgt)
}

/// `X` is a `B`-`A` bimodule, `M` a `C`-`A'` bimodule and `N` a `B'`-`D`
/// bimodule. `phi: A -> A'` and `psi: B -> B'` are given on basis elements and
/// validated as unital algebra maps.
#[allow(clippy::too_many_arguments)]
pub fn base_change_iso(
    x: &DgBimodule,
    a_prime: &Arc<FinDimAlgebra>,
    phi_images: Vec<Vector>,
    m: &DgBimodule,
    b_prime: &Arc<FinDimAlgebra>,
    psi_images: Vec<Vector>,
    n: &DgBimodule,
) -> Result<BaseChangeReport> {
    let phi = AlgebraMap::new(x.right(), a_prime, phi_images)?;
    let psi = AlgebraMap::new(x.left(), b_prime, psi_images)?;
    if !Arc::ptr_eq(m.right(), a_prime) || !Arc::ptr_eq(n.left(), b_prime) {
        return Err(Error::InvalidModule("test modules live over the wrong algebras".into()));
    }

    // ξ(f)(x ⊗ a') = f(x) a'
    let a_prime_phi = DgBimodule::regular(a_prime).restrict_left(x.right(), &phi);
    let extended = tensor(x, &a_prime_phi)?;
    let m_restricted = m.restrict_right(x.right(), &phi);
    let src = hom_right(x, &m_restricted)?;
    let tgt = hom_right(&extended.module, m)?;
    let xi_columns = (0..src.module.dim())
        .map(|k| {
            let f = src.space.columns(k);
            let image: Vec<Vector> =
                extended.representatives().iter().map(|&(i, a)| m.act_right(&f[i], &basis_vector(a))).collect();
            express(&tgt, &image, &extended.module, m)
        })
        .collect::<Result<Vec<_>>>()?;
    let xi_inverse = (0..tgt.module.dim())
        .map(|k| {
            let big = tgt.space.columns(k);
            let image: Vec<Vector> = (0..x.dim())
                .map(|i| super::maps::apply(&big, &extended.class_of_pair(&basis_vector(i), a_prime.unit())))
                .collect();
            express(&src, &image, x, &m_restricted)
        })
        .collect::<Result<Vec<_>>>()?;
    let xi = BimoduleMap::new(0, xi_columns);
    check_inverse(&xi, &BimoduleMap::new(0, xi_inverse), &src.module, &tgt.module)?;

    // ξ̃(g)(b' ⊗ x) = b' g(x)
    let b_prime_psi = DgBimodule::regular(b_prime).restrict_right(x.left(), &psi);
    let extended_left = tensor(&b_prime_psi, x)?;
    let n_restricted = n.restrict_left(x.left(), &psi);
    let src_l = hom_left(x, &n_restricted)?;
    let tgt_l = hom_left(&extended_left.module, n)?;
    let tilde_columns = (0..src_l.module.dim())
        .map(|k| {
            let g = src_l.space.columns(k);
            let image: Vec<Vector> =
                extended_left.representatives().iter().map(|&(b, i)| n.act_left(&basis_vector(b), &g[i])).collect();
            express(&tgt_l, &image, &extended_left.module, n)
        })
        .collect::<Result<Vec<_>>>()?;
    let tilde_inverse = (0..tgt_l.module.dim())
        .map(|k| {
            let big = tgt_l.space.columns(k);
            let image: Vec<Vector> = (0..x.dim())
                .map(|i| super::maps::apply(&big, &extended_left.class_of_pair(b_prime.unit(), &basis_vector(i))))
                .collect();
            express(&src_l, &image, x, &n_restricted)
        })
        .collect::<Result<Vec<_>>>()?;
    let xi_tilde = BimoduleMap::new(0, tilde_columns);
    check_inverse(&xi_tilde, &BimoduleMap::new(0, tilde_inverse), &src_l.module, &tgt_l.module)?;

    Ok(BaseChangeReport {
        right_dims: (src.module.dim(), tgt.module.dim()),
        left_dims: (src_l.module.dim(), tgt_l.module.dim()),
        xi,
        xi_tilde,
    })
}
