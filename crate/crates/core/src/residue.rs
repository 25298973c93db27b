//! Milnor rings of quasi-homogeneous potentials and the Grothendieck residue.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::groebner::{groebner, GroebnerBasis};
use crate::poly::{Monomial, Poly, WeightSystem};
use crate::scalar::Scalar;

/// `k[x] / (dW)` with a monomial basis and the residue functional.
#[derive(Debug)]
pub struct MilnorRing {
    potential: Poly,
    gb: Arc<GroebnerBasis>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    socle: Monomial,
    // residue = (socle coefficient of the normal form) * scale
    scale: Scalar,
}

fn milnor_cache() -> &'static DashMap<String, Arc<MilnorRing>> {
    static CACHE: OnceLock<DashMap<String, Arc<MilnorRing>>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

/// Determinant of a small square matrix of polynomials by cofactor expansion.
pub fn poly_det(ring: &Arc<WeightSystem>, m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(ring);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(ring);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = m[0][j].mul_ref(&poly_det(ring, &minor));
        acc = if j % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
    }
    acc
}

pub fn hessian(w: &Poly) -> Poly {
    let n = w.ring().nvars();
    let grads: Vec<Poly> = (0..n).map(|i| w.derivative(i)).collect();
    let m: Vec<Vec<Poly>> = grads.iter().map(|g| (0..n).map(|j| g.derivative(j)).collect()).collect();
    poly_det(w.ring(), &m)
}

/// Checks that `w` is quasi-homogeneous of weighted degree 2.
pub fn check_potential(w: &Poly) -> Result<()> {
    let two = BigRational::from_integer(2.into());
    if w.is_zero() && w.ring().nvars() == 0 {
        return Ok(());
    }
    if w.is_zero() || !w.is_homogeneous_of(&two) {
        return Err(Error::NotQuasiHomogeneous(w.to_string()));
    }
    Ok(())
}

impl MilnorRing {
    /// Memoised construction for a potential.
    pub fn of(w: &Poly) -> Result<Arc<MilnorRing>> {
        let ring = w.ring();
        let key = format!("{:?}|{:?}|{w}", ring.vars(), ring.weights());
        if let Some(m) = milnor_cache().get(&key) {
            return Ok(m.clone());
        }
        let m = Arc::new(Self::build(w)?);
        milnor_cache().insert(key, m.clone());
        Ok(m)
    }

    fn build(w: &Poly) -> Result<MilnorRing> {
        check_potential(w)?;
        let ring = w.ring().clone();
        let n = ring.nvars();
        let grads: Vec<Poly> = (0..n).map(|i| w.derivative(i)).collect();
        let gb = groebner(&ring, &grads);
        let basis = gb.standard_monomials().ok_or(Error::InfiniteMilnor)?;
        let socle_deg: BigRational =
            ring.weights().iter().map(|q| BigRational::from_integer(2.into()) - q * BigRational::from_integer(2.into())).sum();
        let top: Vec<&Monomial> = basis.iter().filter(|m| ring.degree(m) == socle_deg).collect();
        if top.len() != 1 {
            return Err(Error::InfiniteMilnor);
        }
        let socle = top[0].clone();
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let hess_nf = gb.normal_form(&hessian(w));
        let h = hess_nf.coeff(&socle);
        let mu = Scalar::from_int(basis.len() as i64);
        let scale = mu.mul_ref(&h.inv().ok_or(Error::InfiniteMilnor)?);
        Ok(MilnorRing { potential: w.clone(), gb, basis, index, socle, scale })
    }

    pub fn potential(&self) -> &Poly {
        &self.potential
    }

    /// Milnor number.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn socle(&self) -> &Monomial {
        &self.socle
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        self.gb.normal_form(f)
    }

    /// Coordinates of `f` in the monomial basis.
    pub fn coords(&self, f: &Poly) -> Vec<Scalar> {
        let nf = self.normal_form(f);
        let mut v = vec![Scalar::zero(); self.basis.len()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Residue of `f dx / (dW_1 ... dW_n)`, normalised so the Hessian gives the Milnor number.
    pub fn residue(&self, f: &Poly) -> Scalar {
        self.normal_form(f).coeff(&self.socle).mul_ref(&self.scale)
    }
}

/// Central charge `3 * sum (1 - |x_i|)`.
pub fn central_charge(ring: &WeightSystem) -> BigRational {
    let three = BigRational::from_integer(3.into());
    ring.weights().iter().map(|q| &three * (BigRational::one() - q)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn a_type_residues() {
        let ring = WeightSystem::new(vec!["x".into()], vec![rat(2, 5)]).unwrap();
        let w = Poly::parse("x^5", &ring).unwrap();
        let m = MilnorRing::of(&w).unwrap();
        assert_eq!(m.dim(), 4);
        assert_eq!(m.residue(&hessian(&w)), Scalar::from_int(4));
        // Res[x^3 dx / 5x^4] = 1/5
        assert_eq!(m.residue(&Poly::parse("x^3", &ring).unwrap()), Scalar::from_rational(rat(1, 5)));
        assert_eq!(m.residue(&Poly::parse("x^2", &ring).unwrap()), Scalar::zero());
    }

    #[test]
    fn rejects_bad_potentials() {
        let ring = WeightSystem::new(vec!["x".into(), "y".into()], vec![rat(1, 1), rat(1, 1)]).unwrap();
        assert!(matches!(MilnorRing::of(&Poly::parse("x^2", &ring).unwrap()), Err(Error::InfiniteMilnor)));
        assert!(matches!(MilnorRing::of(&Poly::parse("x^3", &ring).unwrap()), Err(Error::NotQuasiHomogeneous(_))));
    }
}
