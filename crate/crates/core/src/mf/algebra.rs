//! Decomposition against an atlas and the Frobenius algebra `X^dagger (x) X`.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::chain::{transport, ChainElement, UnitInsertion};
use super::tensor::{reduce, reduce_with_multiplier, tensor, Reduced};
use super::{find_iso, qdim, HomComplex, MatrixFactorisation, MfMorphism, Parity, QuantumDimensions};
use crate::error::{Error, Result};
use crate::linalg::{rank_dense, solve_sparse, Echelon, Insert, SparseVec};
use crate::scalar::Scalar;

/// One summand type found by [`decompose`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionPart {
    pub name: String,
    pub parity_shift: i64,
    pub qshift: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub parts: Vec<DecompositionPart>,
    /// True when the found summands do not exhaust the input.
    pub remainder: bool,
}

/// Representatives of a basis of `H^0` in degree zero.
fn cohomology_basis(hc: &HomComplex<'_>) -> Vec<MfMorphism> {
    let zero = BigRational::zero();
    let mut ech: Echelon<Scalar> = Echelon::new(false);
    for b in hc.coboundaries(Parity::Even, &zero) {
        ech.insert(&b);
    }
    let mut out = Vec::new();
    for z in hc.cocycles(Parity::Even, &zero) {
        if let Insert::Independent = ech.insert(&z) {
            out.push(hc.to_morphism(Parity::Even, &zero, &z));
        }
    }
    out
}

/// The scalar `c` with `f ~ c * 1`, if `f` is homotopic to a multiple of the identity.
fn scalar_of(t: &MatrixFactorisation, f: &MfMorphism) -> Result<Option<Scalar>> {
    let hc = HomComplex::new(t, t)?;
    let zero = BigRational::zero();
    let mut cols: Vec<SparseVec<Scalar>> = vec![hc.to_vector(&MfMorphism::identity(t))?];
    cols.extend(hc.coboundaries(Parity::Even, &zero));
    let target = hc.to_vector(f)?;
    Ok(solve_sparse(&cols, &target).map(|sol| sol.iter().find(|(k, _)| *k == 0).map_or_else(Scalar::zero, |(_, c)| c.clone())))
}

/// Number of summands of `x` isomorphic to `t`, via the rank of the composition pairing
/// `Hom(t, x) x Hom(x, t) -> End(t) = k`.
pub fn multiplicity(x: &MatrixFactorisation, t: &MatrixFactorisation) -> Result<usize> {
    let t = t.aligned_to(x)?;
    let end = HomComplex::new(&t, &t)?;
    if end.cohomology_dim(Parity::Even, &BigRational::zero()) != 1 {
        return Err(Error::Unsupported("atlas member without one-dimensional degree-zero endomorphisms".into()));
    }
    let into = cohomology_basis(&HomComplex::new(&t, x)?);
    let out = cohomology_basis(&HomComplex::new(x, &t)?);
    if into.is_empty() || out.is_empty() {
        return Ok(0);
    }
    let mut pairing = Vec::with_capacity(out.len());
    for g in &out {
        let mut row = Vec::with_capacity(into.len());
        for f in &into {
            let c = scalar_of(&t, &g.compose(f, x.ring()))?
                .ok_or_else(|| Error::Unsupported("composite not a multiple of the identity".into()))?;
            row.push(c);
        }
        pairing.push(row);
    }
    Ok(rank_dense(&pairing))
}

/// Candidate q-shifts of `t` that can meet generators of `x`.
fn shift_candidates(x: &MatrixFactorisation, t: &MatrixFactorisation) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = x.gens().iter().flat_map(|gx| t.gens().iter().map(move |gt| &gx.qdeg - &gt.qdeg)).collect();
    out.sort();
    out.dedup();
    out
}

/// Splits `x` into shifted atlas members; atlas order decides ties.
pub fn decompose(x: &MatrixFactorisation, atlas: &[(String, MatrixFactorisation)], seed: u64) -> Result<Decomposition> {
    let mut parts = Vec::new();
    let mut sum = MatrixFactorisation::zero_rank(x.inner().clone(), x.outer().clone(), x.ring().clone());
    for (name, t) in atlas {
        for s in 0..2 {
            for q in shift_candidates(x, t) {
                let shifted = t.shift_by(s).qshift(&q);
                let mult = multiplicity(x, &shifted)?;
                if mult == 0 {
                    continue;
                }
                for _ in 0..mult {
                    sum = sum.direct_sum(&shifted)?;
                }
                parts.push(DecompositionPart { name: name.clone(), parity_shift: s, qshift: q.to_string(), multiplicity: mult });
            }
        }
    }
    let remainder = find_iso(x, &sum, seed).is_err();
    Ok(Decomposition { parts, remainder })
}

/// Whether `f ~ g` as maps `source -> target`.
fn homotopic(source: &MatrixFactorisation, target: &MatrixFactorisation, f: &MfMorphism, g: &MfMorphism) -> Result<bool> {
    let target = target.aligned_to(source)?;
    Ok(HomComplex::new(source, &target)?.null_homotopy(&f.sub(g))?.is_some())
}

/// Coefficients `c` with `sum c_k family_k ~ rhs`.
fn solve_family(source: &MatrixFactorisation, target: &MatrixFactorisation, family: &[MfMorphism], rhs: &MfMorphism) -> Result<Option<Vec<Scalar>>> {
    let target = target.aligned_to(source)?;
    let hc = HomComplex::new(source, &target)?;
    let mut cols = Vec::with_capacity(family.len());
    for f in family {
        cols.push(hc.to_vector(f)?);
    }
    for b in hc.coboundaries(Parity::Even, &BigRational::zero()) {
        cols.push(b.into_iter().map(|(i, c)| (i, c.neg_ref())).collect());
    }
    Ok(solve_sparse(&cols, &hc.to_vector(rhs)?).map(|sol| {
        let mut c = vec![Scalar::zero(); family.len()];
        for (k, v) in sol {
            if k < family.len() {
                c[k] = v;
            }
        }
        c
    }))
}

fn combine(family: &[MfMorphism], coeffs: &[Scalar], like: &MfMorphism) -> MfMorphism {
    let mut out = like.scale(&Scalar::zero());
    for (f, c) in family.iter().zip(coeffs) {
        out = out.add(&f.scale(c));
    }
    out
}

fn random_closed(source: &MatrixFactorisation, target: &MatrixFactorisation, rng: &mut ChaCha8Rng) -> Result<MfMorphism> {
    let basis = cohomology_basis(&HomComplex::new(source, target)?);
    let mut out = MfMorphism::zero(source.ring(), target.rank(), source.rank(), Parity::Even, BigRational::zero());
    for b in &basis {
        out = out.add(&b.scale(&Scalar::from_int(rng.gen_range(1i64..=9))));
    }
    Ok(out)
}

/// Structure maps of `A = X^dagger (x) X` and the results of their checks.
#[derive(Clone, Debug)]
pub struct FrobeniusAlgebra {
    pub algebra: MatrixFactorisation,
    pub qdims: QuantumDimensions,
    /// `ev~ . coev`, the scalar dividing the comultiplication
    pub loop_scalar: Scalar,
    /// `A (x) A -> A` on the reduced square
    pub multiplication: MfMorphism,
    pub unit: MfMorphism,
    /// `A -> A (x) A` on the reduced square
    pub comultiplication: MfMorphism,
    pub counit: MfMorphism,
    pub square: MatrixFactorisation,
    pub checks: Vec<(String, bool)>,
}

impl FrobeniusAlgebra {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// The adjunction data and reductions the structure maps are built from.
struct Ingredients {
    a: Reduced,
    e: Reduced,
    e_mf: Arc<MatrixFactorisation>,
    unit_v: Arc<MatrixFactorisation>,
    ev_tilde: MfMorphism,
    coev: MfMorphism,
    insertion: UnitInsertion,
    loop_inv: Scalar,
}

impl Ingredients {
    /// `mu` on factors `f`, `f + 1` (both `A`).
    fn mu(&self, e: ChainElement, f: usize) -> Result<ChainElement> {
        e.expand(f + 1, &self.a)?
            .expand(f, &self.a)?
            .collapse(f + 1, &self.e)?
            .apply(f + 1, &self.ev_tilde, &self.unit_v)?
            .unit_collapse(f + 1)?
            .collapse(f, &self.a)
    }

    /// `Delta` on factor `f` (an `A`).
    fn delta(&self, e: ChainElement, f: usize) -> Result<ChainElement> {
        Ok(e.expand(f, &self.a)?
            .insert_unit(f, &self.insertion)?
            .apply(f + 1, &self.coev, &self.e_mf)?
            .expand(f + 1, &self.e)?
            .collapse(f + 2, &self.a)?
            .collapse(f, &self.a)?
            .scale(&self.loop_inv))
    }
}

/// Builds `A = X^dagger (x) X` with multiplication, unit, comultiplication and counit
/// from the two adjunctions, and checks the Frobenius algebra axioms up to homotopy.
pub fn algebra_from_adjunction(x: &MatrixFactorisation, seed: u64) -> Result<FrobeniusAlgebra> {
    let mut last = None;
    for window in [2, 4, 8] {
        match algebra_with_window(x, seed, window) {
            Err(Error::OutsideWindow(msg)) => last = Some(msg),
            other => return other,
        }
    }
    Err(Error::OutsideWindow(last.unwrap_or_default()))
}

/// As [`algebra_from_adjunction`], with reductions that get projected onto
/// computed at `window` times the default bound.
fn algebra_with_window(x: &MatrixFactorisation, seed: u64, window: u32) -> Result<FrobeniusAlgebra> {
    if !x.is_ambidextrous() {
        return Err(Error::NotAmbidextrous("variable count parity or central charge differ".into()));
    }
    let qdims = qdim(x)?;
    if qdims.left.is_zero() || qdims.right.is_zero() {
        return Err(Error::NonInvertibleDimension(format!("({}, {})", qdims.left, qdims.right)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (_, right) = x.adjoints();
    let xm = Arc::new(x.clone());
    let xd = Arc::new(right);
    let a = reduce_with_multiplier(&tensor(&xd, &xm)?, window)?;
    let e = reduce_with_multiplier(&tensor(&xm, &xd)?, window)?;
    let a_mf = Arc::new(a.mf().clone());
    let e_mf = Arc::new(e.mf().clone());
    let unit_w = Arc::new(MatrixFactorisation::unit(x.inner())?);
    let unit_v = Arc::new(MatrixFactorisation::unit(x.outer())?);

    // right adjunction: ev~ : X Xd -> I_V, coev~ : I_W -> Xd X
    let r1 = reduce(&tensor(&xm, &unit_w)?)?;
    let r1_mf = Arc::new(r1.mf().clone());
    let r2 = reduce(&tensor(&unit_w, &xd)?)?;
    let r2_mf = Arc::new(r2.mf().clone());
    let coev_family = cohomology_basis(&HomComplex::new(&unit_w, &a_mf.aligned_to(&unit_w)?)?);
    let mut right_pair = None;
    for _ in 0..4 {
        let ev_tilde = random_closed(&e_mf, &unit_v.aligned_to(&e_mf)?, &mut rng)?;
        let zorro = |c: &MfMorphism| {
            transport(&r1_mf, &xm, |el| {
                el.expand(0, &r1)?
                    .apply(0, c, &a_mf)?
                    .expand(0, &a)?
                    .collapse(1, &e)?
                    .apply(1, &ev_tilde, &unit_v)?
                    .unit_collapse(1)
            })
        };
        let lhs: Vec<MfMorphism> = coev_family.iter().map(zorro).collect::<Result<_>>()?;
        let rhs = transport(&r1_mf, &xm, |el| el.expand(0, &r1)?.unit_collapse(0))?;
        if let Some(c) = solve_family(&r1_mf, &xm, &lhs, &rhs)? {
            let like = MfMorphism::zero(unit_w.ring(), a_mf.rank(), unit_w.rank(), Parity::Even, BigRational::zero());
            right_pair = Some((ev_tilde, combine(&coev_family, &c, &like)));
            break;
        }
    }
    let (ev_tilde, coev_tilde) = right_pair.ok_or_else(|| Error::NoIsomorphism("no right adjunction found".into()))?;

    // left adjunction: ev : Xd X -> I_W, coev : I_V -> X Xd
    let r3 = reduce(&tensor(&unit_v, &xm)?)?;
    let r3_mf = Arc::new(r3.mf().clone());
    let r4 = reduce(&tensor(&xd, &unit_v)?)?;
    let r4_mf = Arc::new(r4.mf().clone());
    let coev_left_family = cohomology_basis(&HomComplex::new(&unit_v, &e_mf.aligned_to(&unit_v)?)?);
    let mut left_pair = None;
    for _ in 0..4 {
        let ev = random_closed(&a_mf, &unit_w.aligned_to(&a_mf)?, &mut rng)?;
        let zorro = |c: &MfMorphism| {
            transport(&r3_mf, &xm, |el| {
                el.expand(0, &r3)?
                    .apply(1, c, &e_mf)?
                    .expand(1, &e)?
                    .collapse(0, &a)?
                    .apply(0, &ev, &unit_w)?
                    .unit_collapse(0)
            })
        };
        let lhs: Vec<MfMorphism> = coev_left_family.iter().map(zorro).collect::<Result<_>>()?;
        let rhs = transport(&r3_mf, &xm, |el| el.expand(0, &r3)?.unit_collapse(1))?;
        if let Some(c) = solve_family(&r3_mf, &xm, &lhs, &rhs)? {
            let like = MfMorphism::zero(unit_v.ring(), e_mf.rank(), unit_v.rank(), Parity::Even, BigRational::zero());
            left_pair = Some((ev, combine(&coev_left_family, &c, &like)));
            break;
        }
    }
    let (ev, coev) = left_pair.ok_or_else(|| Error::NoIsomorphism("no left adjunction found".into()))?;

    let mut checks = Vec::new();
    let z2_lhs = transport(&r2_mf, &xd, |el| {
        el.expand(0, &r2)?
            .apply(1, &coev_tilde, &a_mf)?
            .expand(1, &a)?
            .collapse(0, &e)?
            .apply(0, &ev_tilde, &unit_v)?
            .unit_collapse(0)
    })?;
    let z2_rhs = transport(&r2_mf, &xd, |el| el.expand(0, &r2)?.unit_collapse(1))?;
    checks.push(("zorro right adjunction".to_string(), homotopic(&r2_mf, &xd, &z2_lhs, &z2_rhs)?));
    let z4_lhs = transport(&r4_mf, &xd, |el| {
        el.expand(0, &r4)?
            .apply(0, &coev, &e_mf)?
            .expand(0, &e)?
            .collapse(1, &a)?
            .apply(1, &ev, &unit_w)?
            .unit_collapse(1)
    })?;
    let z4_rhs = transport(&r4_mf, &xd, |el| el.expand(0, &r4)?.unit_collapse(0))?;
    checks.push(("zorro left adjunction".to_string(), homotopic(&r4_mf, &xd, &z4_lhs, &z4_rhs)?));

    // ev~ . coev in End(I_V)
    let loop_map = transport(&unit_v, &unit_v, |el| el.apply(0, &coev, &e_mf)?.apply(0, &ev_tilde, &unit_v))?;
    let loop_scalar = scalar_of(&unit_v, &loop_map)?.ok_or_else(|| Error::Unsupported("End(I) is not spanned by the identity".into()))?;
    let loop_inv = loop_scalar.inv().ok_or_else(|| Error::NonInvertibleDimension(format!("loop scalar {loop_scalar}")))?;

    let insertion = UnitInsertion::new(&xm)?;
    let ing = Ingredients {
        a,
        e,
        e_mf,
        unit_v,
        ev_tilde,
        coev,
        insertion,
        loop_inv,
    };

    let aa = reduce_with_multiplier(&tensor(&a_mf, &a_mf)?, window)?;
    let aa_mf = Arc::new(aa.mf().clone());
    let multiplication = transport(&aa_mf, &a_mf, |el| ing.mu(el.expand(0, &aa)?, 0))?;
    let comultiplication = transport(&a_mf, &aa_mf, |el| ing.delta(el, 0)?.collapse(0, &aa))?;
    let id_a = MfMorphism::identity(&a_mf);

    // unitality
    let ul = reduce(&tensor(&a_mf, &unit_w)?)?;
    let ul_mf = Arc::new(ul.mf().clone());
    let lhs = transport(&ul_mf, &a_mf, |el| ing.mu(el.expand(0, &ul)?.apply(0, &coev_tilde, &a_mf)?, 0))?;
    let rhs = transport(&ul_mf, &a_mf, |el| el.expand(0, &ul)?.unit_collapse(0))?;
    checks.push(("unit on the right".to_string(), homotopic(&ul_mf, &a_mf, &lhs, &rhs)?));
    let ur = reduce(&tensor(&unit_w, &a_mf)?)?;
    let ur_mf = Arc::new(ur.mf().clone());
    let lhs = transport(&ur_mf, &a_mf, |el| ing.mu(el.expand(0, &ur)?.apply(1, &coev_tilde, &a_mf)?, 0))?;
    let rhs = transport(&ur_mf, &a_mf, |el| el.expand(0, &ur)?.unit_collapse(1))?;
    checks.push(("unit on the left".to_string(), homotopic(&ur_mf, &a_mf, &lhs, &rhs)?));

    // associativity on A A A
    let aaa = reduce(&tensor(&a_mf, &aa_mf)?)?;
    let aaa_mf = Arc::new(aaa.mf().clone());
    let lhs = transport(&aaa_mf, &a_mf, |el| {
        let e3 = el.expand(0, &aaa)?.expand(0, &aa)?;
        ing.mu(ing.mu(e3, 0)?, 0)
    })?;
    let rhs = transport(&aaa_mf, &a_mf, |el| {
        let e3 = el.expand(0, &aaa)?.expand(0, &aa)?;
        ing.mu(ing.mu(e3, 1)?, 0)
    })?;
    checks.push(("associativity".to_string(), homotopic(&aaa_mf, &a_mf, &lhs, &rhs)?));

    // Frobenius identities on A A
    let middle = transport(&aa_mf, &aa_mf, |el| ing.delta(ing.mu(el.expand(0, &aa)?, 0)?, 0)?.collapse(0, &aa))?;
    let inner_side = transport(&aa_mf, &aa_mf, |el| ing.mu(ing.delta(el.expand(0, &aa)?, 0)?, 1)?.collapse(0, &aa))?;
    let outer_side = transport(&aa_mf, &aa_mf, |el| ing.mu(ing.delta(el.expand(0, &aa)?, 1)?, 0)?.collapse(0, &aa))?;
    checks.push((
        "frobenius".to_string(),
        homotopic(&aa_mf, &aa_mf, &inner_side, &middle)? && homotopic(&aa_mf, &aa_mf, &outer_side, &middle)?,
    ));

    // counit and separability
    // the counit carries the factor removed from the comultiplication
    let counit = ev.scale(&loop_scalar);
    let lhs = transport(&a_mf, &a_mf, |el| ing.delta(el, 0)?.apply(1, &counit, &unit_w)?.unit_collapse(1))?;
    let rhs = transport(&a_mf, &a_mf, |el| ing.delta(el, 0)?.apply(0, &counit, &unit_w)?.unit_collapse(0))?;
    checks.push((
        "counit".to_string(),
        homotopic(&a_mf, &a_mf, &lhs, &id_a)? && homotopic(&a_mf, &a_mf, &rhs, &id_a)?,
    ));
    let sep = transport(&a_mf, &a_mf, |el| ing.mu(ing.delta(el, 0)?, 0))?;
    checks.push(("separable".to_string(), homotopic(&a_mf, &a_mf, &sep, &id_a)?));

    Ok(FrobeniusAlgebra {
        algebra: (*a_mf).clone(),
        qdims,
        loop_scalar,
        multiplication,
        unit: coev_tilde,
        comultiplication,
        counit,
        square: (*aa_mf).clone(),
        checks,
    })
}

impl MatrixFactorisation {
    /// The zero factorisation.
    pub fn zero_rank(
        inner: Arc<super::LgSpace>,
        outer: Arc<super::LgSpace>,
        ring: Arc<crate::poly::WeightSystem>,
    ) -> MatrixFactorisation {
        MatrixFactorisation::from_parts(inner, outer, ring, Vec::new(), Vec::new())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompose_sums() {
        let p = MatrixFactorisation::permutation(4, &[1]).unwrap();
        let atlas: Vec<(String, MatrixFactorisation)> =
            (0..4).map(|l| (format!("P{l}"), MatrixFactorisation::permutation(4, &[l]).unwrap())).collect();
        let d = decompose(&p, &atlas, 1).unwrap();
        assert!(!d.remainder);
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[0].name, "P1");
        let two = p.direct_sum(&p).unwrap();
        let d = decompose(&two, &atlas, 1).unwrap();
        assert_eq!(d.parts[0].multiplicity, 2);
        assert!(!d.remainder);
    }

    #[test]
    fn group_like_algebra_is_the_unit() {
        let p = MatrixFactorisation::permutation(4, &[1]).unwrap();
        let alg = algebra_from_adjunction(&p, 5).unwrap();
        assert!(alg.all_pass(), "{:?}", alg.checks);
        let unit = MatrixFactorisation::permutation(4, &[0]).unwrap();
        find_iso(&alg.algebra, &unit, 1).unwrap();
    }
}
