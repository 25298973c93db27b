//! Left and right quantum dimensions via residues.

use super::{mat_mul, MatrixFactorisation};
use crate::error::Result;
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumDimensions {
    pub left: Scalar,
    pub right: Scalar,
}

fn binom2_sign(k: usize) -> Scalar {
    // (-1)^{k(k+1)/2}
    Scalar::from_int(if (k * (k + 1) / 2) % 2 == 0 { 1 } else { -1 })
}

/// Supertrace of `d_{x_1} d ... d_{x_n} d d_{z_1} d ... d_{z_m} d` over the joint ring.
pub fn derivative_supertrace(x: &MatrixFactorisation) -> Poly {
    let ring = x.ring();
    let r = x.rank();
    let mut acc: Vec<Vec<Poly>> = (0..r).map(|i| (0..r).map(|j| if i == j { Poly::one(ring) } else { Poly::zero(ring) }).collect()).collect();
    for v in 0..ring.nvars() {
        let dv: Vec<Vec<Poly>> = x.d().iter().map(|row| row.iter().map(|p| p.derivative(v)).collect()).collect();
        acc = mat_mul(ring, &acc, &dv);
    }
    let mut str = Poly::zero(ring);
    for (i, g) in x.gens().iter().enumerate() {
        str.add_assign_ref(&acc[i][i].scale(&g.parity.sign()));
    }
    str
}

/// `(qdim_l, qdim_r)` of a factorisation `X: W -> V`.
pub fn qdim(x: &MatrixFactorisation) -> Result<QuantumDimensions> {
    let n = x.inner().nvars();
    let m = x.outer().nvars();
    let str = derivative_supertrace(x);
    let outer_ring = x.outer().ring();
    let inner_ring = x.inner().ring();
    let to_outer: Vec<Option<usize>> = (0..n).map(|_| None).chain((0..m).map(Some)).collect();
    let to_inner: Vec<Option<usize>> = (0..n).map(Some).chain((0..m).map(|_| None)).collect();
    let left = x.outer().milnor()?.residue(&str.rename(outer_ring, &to_outer)).mul_ref(&binom2_sign(n));
    let right = x.inner().milnor()?.residue(&str.rename(inner_ring, &to_inner)).mul_ref(&binom2_sign(m));
    Ok(QuantumDimensions { left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ade::AdeType;
    use crate::mf::LgSpace;

    #[test]
    fn units_have_dimension_one() {
        for t in [AdeType::A(2), AdeType::D(4), AdeType::E6] {
            let sp = LgSpace::new(t.potential()).unwrap();
            let q = qdim(&MatrixFactorisation::unit(&sp).unwrap()).unwrap();
            assert_eq!(q.left, Scalar::one());
            assert_eq!(q.right, Scalar::one());
        }
    }

    #[test]
    fn permutation_dimensions_are_quantum_integers() {
        // P_{0,1} for u^5: [2]_q at q = exp(i pi / 5), i.e. zeta + zeta^{-1} for zeta a primitive 10th root
        let p = MatrixFactorisation::permutation(5, &[0, 1]).unwrap();
        let q = qdim(&p).unwrap();
        let z = Scalar::root_of_unity(10, 1);
        let golden = z.add_ref(&z.inv().unwrap());
        let sq = golden.mul_ref(&golden);
        // equal to [2]^2 up to a root of unity coming from the choice of dual presentation
        for v in [&q.left, &q.right] {
            let v2 = v.mul_ref(v);
            assert!((0..10).any(|k| v2 == sq.mul_ref(&Scalar::root_of_unity(10, k))), "{v}");
        }
    }
}
