//! Graded matrix factorisations between Landau-Ginzburg potentials.
//!
//! A factorisation `X: (x, W) -> (z, V)` lives over the joint ring with the
//! inner variables `x` first and the outer variables `z` after them, and its
//! odd differential squares to `(V(z) - W(x)) * id`.

mod algebra;
mod chain;
mod hom;
mod qdim;
mod tensor;

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{infer_weights, parse_raw, raw_variables, Poly, WeightSystem};
use crate::residue::{central_charge, check_potential, MilnorRing};
use crate::scalar::Scalar;

pub use hom::{find_iso, hom_rank, is_contractible, is_null_homotopic, HomComplex, MfMorphism};
pub use algebra::{algebra_from_adjunction, decompose, multiplicity, Decomposition, DecompositionPart, FrobeniusAlgebra};
pub use chain::{transport, Chain, ChainElement, UnitInsertion};
pub use hom::{find_iso_up_to_shift, one_sided_inverse, Side};
pub use qdim::{derivative_supertrace, qdim, QuantumDimensions};
pub use tensor::{reduce, reduce_with_multiplier, tensor, Reduced, TensorRaw};

/// Z/2 degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_int(v: i64) -> Parity {
        if v.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_int(self) -> i64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Parity {
        Parity::from_int(self.as_int() + 1)
    }

    pub fn add(self, o: Parity) -> Parity {
        Parity::from_int(self.as_int() + o.as_int())
    }

    /// `(-1)^self`
    pub fn sign(self) -> Scalar {
        Scalar::from_int(if self == Parity::Even { 1 } else { -1 })
    }
}

/// A Landau-Ginzburg model: polynomial ring with weights and a potential.
#[derive(Clone, Debug)]
pub struct LgSpace {
    ring: Arc<WeightSystem>,
    potential: Poly,
}

impl LgSpace {
    pub fn new(potential: Poly) -> Result<Arc<LgSpace>> {
        check_potential(&potential)?;
        Ok(Arc::new(LgSpace { ring: potential.ring().clone(), potential }))
    }

    /// Potential text such as `x^4 + y^2 + z^2`; variables in order of first
    /// appearance, weights solved so every monomial has degree 2.
    pub fn parse(text: &str) -> Result<Arc<LgSpace>> {
        let raw = parse_raw(text)?;
        let vars = raw_variables(&raw);
        let weights = infer_weights(&raw, &vars)?;
        let ring = WeightSystem::new(vars, weights)?;
        LgSpace::new(Poly::parse(text, &ring)?)
    }

    pub fn ring(&self) -> &Arc<WeightSystem> {
        &self.ring
    }

    pub fn potential(&self) -> &Poly {
        &self.potential
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn central_charge(&self) -> BigRational {
        central_charge(&self.ring)
    }

    pub fn milnor(&self) -> Result<Arc<MilnorRing>> {
        MilnorRing::of(&self.potential)
    }

    /// Same space with renamed variables.
    pub fn renamed(&self, names: &[String]) -> Result<Arc<LgSpace>> {
        let ring = WeightSystem::new(names.to_vec(), self.ring.weights().to_vec())?;
        let map: Vec<Option<usize>> = (0..self.nvars()).map(Some).collect();
        Ok(Arc::new(LgSpace { potential: self.potential.rename(&ring, &map), ring }))
    }

    /// Equal weights and potential after identifying variables by position.
    pub fn matches(&self, other: &LgSpace) -> bool {
        if self.ring.weights() != other.ring.weights() {
            return false;
        }
        let map: Vec<Option<usize>> = (0..self.nvars()).map(Some).collect();
        self.potential.rename(&other.ring, &map) == other.potential
    }
}

/// Generator of the graded free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub parity: Parity,
    pub qdeg: BigRational,
}

impl Generator {
    pub fn new(parity: Parity, qdeg: BigRational) -> Self {
        Generator { parity, qdeg }
    }
}

/// Graded matrix factorisation; `d[i][j]` is the coefficient of generator
/// `i` in the image of generator `j`.
#[derive(Clone, Debug)]
pub struct MatrixFactorisation {
    inner: Arc<LgSpace>,
    outer: Arc<LgSpace>,
    ring: Arc<WeightSystem>,
    gens: Vec<Generator>,
    d: Vec<Vec<Poly>>,
}

/// Embeds the inner and outer potentials into a joint ring.
fn joint_potential(inner: &LgSpace, outer: &LgSpace, ring: &Arc<WeightSystem>) -> Poly {
    let n = inner.nvars();
    let m = outer.nvars();
    let w = inner.potential.rename(ring, &(0..n).map(Some).collect::<Vec<_>>());
    let v = outer.potential.rename(ring, &(0..m).map(|j| Some(n + j)).collect::<Vec<_>>());
    v.sub_ref(&w)
}

impl MatrixFactorisation {
    /// Validates and builds; checks parity, entry degrees and `d^2 = (V - W) id`.
    pub fn new(inner: Arc<LgSpace>, outer: Arc<LgSpace>, gens: Vec<Generator>, d: Vec<Vec<Poly>>) -> Result<Self> {
        let ring = inner.ring.concat(&outer.ring)?;
        let mf = Self::new_unchecked(inner, outer, ring, gens, d);
        mf.validate()?;
        Ok(mf)
    }

    fn new_unchecked(inner: Arc<LgSpace>, outer: Arc<LgSpace>, ring: Arc<WeightSystem>, gens: Vec<Generator>, d: Vec<Vec<Poly>>) -> Self {
        MatrixFactorisation { inner, outer, ring, gens, d }
    }

    /// Joint ring of `inner` and `outer`.
    pub fn joint_ring(inner: &LgSpace, outer: &LgSpace) -> Result<Arc<WeightSystem>> {
        inner.ring.concat(&outer.ring)
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.gens.len();
        if self.d.len() != r || self.d.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidFactorisation("differential is not a square matrix of the module rank".into()));
        }
        for i in 0..r {
            for j in 0..r {
                let e = &self.d[i][j];
                if e.is_zero() {
                    continue;
                }
                if e.ring() != &self.ring && **e.ring() != *self.ring {
                    return Err(Error::InvalidFactorisation(format!("entry ({i},{j}) is not over the joint ring")));
                }
                if self.gens[i].parity == self.gens[j].parity {
                    return Err(Error::InvalidFactorisation(format!("entry ({i},{j}) is even")));
                }
                let want = self.entry_degree(i, j);
                if !e.is_homogeneous_of(&want) {
                    return Err(Error::InvalidFactorisation(format!("entry ({i},{j}) = {e} is not of degree {want}")));
                }
            }
        }
        let pot = self.potential();
        let sq = self.square();
        for i in 0..r {
            for j in 0..r {
                let want = if i == j { pot.clone() } else { Poly::zero(&self.ring) };
                if sq[i][j] != want {
                    return Err(Error::InvalidFactorisation(format!("d^2 differs from the potential at ({i},{j})")));
                }
            }
        }
        Ok(())
    }

    /// Required q-degree of `d[i][j]`.
    pub fn entry_degree(&self, i: usize, j: usize) -> BigRational {
        &self.gens[j].qdeg + BigRational::one() - &self.gens[i].qdeg
    }

    fn square(&self) -> Vec<Vec<Poly>> {
        mat_mul(&self.ring, &self.d, &self.d)
    }

    pub fn inner(&self) -> &Arc<LgSpace> {
        &self.inner
    }

    pub fn outer(&self) -> &Arc<LgSpace> {
        &self.outer
    }

    pub fn ring(&self) -> &Arc<WeightSystem> {
        &self.ring
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn d(&self) -> &[Vec<Poly>] {
        &self.d
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// `V - W` in the joint ring.
    pub fn potential(&self) -> Poly {
        joint_potential(&self.inner, &self.outer, &self.ring)
    }

    /// Unit factorisation of `W(x') - W(x)` in Koszul form, inner `x`, outer `x'`.
    pub fn unit(space: &Arc<LgSpace>) -> Result<Self> {
        let names: Vec<String> = space.ring.vars().iter().map(|v| format!("{v}'")).collect();
        Self::unit_named(space, &names)
    }

    /// Unit factorisation with the given outer variable names.
    pub fn unit_named(space: &Arc<LgSpace>, outer_names: &[String]) -> Result<Self> {
        let n = space.nvars();
        let outer = space.renamed(outer_names)?;
        let ring = Self::joint_ring(space, &outer)?;
        let w = &space.potential;
        // W with the first k variables primed
        let partial = |k: usize| -> Poly {
            let map: Vec<Option<usize>> = (0..n).map(|i| Some(if i < k { n + i } else { i })).collect();
            w.rename(&ring, &map)
        };
        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for i in 0..n {
            let diff = Poly::var(&ring, n + i).sub_ref(&Poly::var(&ring, i));
            let num = partial(i + 1).sub_ref(&partial(i));
            b.push(num.div_exact(&diff)?);
            a.push(diff);
        }
        let size = 1usize << n;
        let gens: Vec<Generator> = (0..size)
            .map(|mask| {
                let parity = Parity::from_int(mask.count_ones() as i64);
                let qdeg = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &space.ring.weights()[i] - BigRational::one()).sum();
                Generator::new(parity, qdeg)
            })
            .collect();
        let mut d = vec![vec![Poly::zero(&ring); size]; size];
        for mask in 0..size {
            for i in 0..n {
                let below = (mask & ((1 << i) - 1)).count_ones();
                let sign = Scalar::from_int(if below % 2 == 0 { 1 } else { -1 });
                let target = mask ^ (1 << i);
                let entry = if mask >> i & 1 == 1 { &a[i] } else { &b[i] };
                d[target][mask] = d[target][mask].add_ref(&entry.scale(&sign));
            }
        }
        let mf = Self::new_unchecked(space.clone(), outer, ring, gens, d);
        mf.validate()?;
        Ok(mf)
    }

    /// Permutation factorisation `P_S` of `u'^d - u^d`.
    pub fn permutation(d: u32, subset: &[u32]) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidFactorisation("permutation factorisations need d >= 2".into()));
        }
        let mut s: Vec<u32> = subset.iter().map(|l| l % d).collect();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() {
            return Err(Error::InvalidFactorisation("permutation factorisation with empty subset".into()));
        }
        let ring = WeightSystem::new(vec!["u".into()], vec![BigRational::new(2.into(), (d as i64).into())])?;
        let inner = LgSpace::new(Poly::parse(&format!("u^{d}"), &ring)?)?;
        let outer = inner.renamed(&["u'".to_string()])?;
        let joint = Self::joint_ring(&inner, &outer)?;
        let u = Poly::var(&joint, 0);
        let up = Poly::var(&joint, 1);
        let factor = |l: u32| up.sub_ref(&u.scale(&Scalar::root_of_unity(d, l as i64)));
        let prod = |ls: &mut dyn Iterator<Item = u32>| ls.fold(Poly::one(&joint), |acc, l| acc.mul_ref(&factor(l)));
        let in_s = prod(&mut s.iter().copied());
        let out_s = prod(&mut (0..d).filter(|l| !s.contains(l)));
        let w_u = &inner.ring.weights()[0];
        let q1 = w_u * BigRational::from_integer((s.len() as i64).into()) - BigRational::one();
        let gens = vec![Generator::new(Parity::Even, BigRational::zero()), Generator::new(Parity::Odd, q1)];
        let zero = Poly::zero(&joint);
        let dm = vec![vec![zero.clone(), in_s], vec![out_s, zero]];
        let mf = Self::new_unchecked(inner, outer, joint, gens, dm);
        mf.validate()?;
        Ok(mf)
    }

    /// `X[1]`: parities flipped, differential negated.
    pub fn shift(&self) -> Self {
        let mut out = self.clone();
        for g in &mut out.gens {
            g.parity = g.parity.flip();
        }
        out.d = self.d.iter().map(|row| row.iter().map(Poly::neg_ref).collect()).collect();
        out
    }

    /// `X[k]`
    pub fn shift_by(&self, k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.shift()
        }
    }

    /// `X{q}`: every generator degree raised by `q`.
    pub fn qshift(&self, q: &BigRational) -> Self {
        let mut out = self.clone();
        for g in &mut out.gens {
            g.qdeg += q;
        }
        out
    }

    /// Dual factorisation `Hom(X, R)`, a factorisation from the outer space to the inner one.
    pub fn dual(&self) -> Self {
        let n = self.inner.nvars();
        let m = self.outer.nvars();
        let ring = self.outer.ring.concat(&self.inner.ring).expect("disjoint variables");
        let map: Vec<Option<usize>> = (0..n).map(|i| Some(m + i)).chain((0..m).map(Some)).collect();
        let r = self.rank();
        let gens: Vec<Generator> = self.gens.iter().map(|g| Generator::new(g.parity, -g.qdeg.clone())).collect();
        let mut d = vec![vec![Poly::zero(&ring); r]; r];
        for (l, row) in d.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                // d^v(e_j^*) = -(-1)^{|j|} sum_l d[j][l] e_l^*
                let e = &self.d[j][l];
                if !e.is_zero() {
                    let s = self.gens[j].parity.sign().neg_ref();
                    *slot = e.rename(&ring, &map).scale(&s);
                }
            }
        }
        Self::new_unchecked(self.outer.clone(), self.inner.clone(), ring, gens, d)
    }

    /// `(left adjoint, right adjoint)` = `(X^v[m]{c(V)/3}, X^v[n]{c(W)/3})`.
    pub fn adjoints(&self) -> (Self, Self) {
        let three = BigRational::from_integer(3.into());
        let dual = self.dual();
        // the grading shift {q} in these formulas lowers generator degrees by q
        let left = dual.shift_by(self.outer.nvars() as i64).qshift(&-(self.outer.central_charge() / &three));
        let right = dual.shift_by(self.inner.nvars() as i64).qshift(&-(self.inner.central_charge() / &three));
        (left, right)
    }

    pub fn is_ambidextrous(&self) -> bool {
        self.inner.nvars() % 2 == self.outer.nvars() % 2 && self.inner.central_charge() == self.outer.central_charge()
    }

    /// Block-diagonal sum of factorisations over the same spaces.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let other = other.aligned_to(self)?;
        let r1 = self.rank();
        let r = r1 + other.rank();
        let mut d = vec![vec![Poly::zero(&self.ring); r]; r];
        for i in 0..r1 {
            for j in 0..r1 {
                d[i][j] = self.d[i][j].clone();
            }
        }
        for i in 0..other.rank() {
            for j in 0..other.rank() {
                d[r1 + i][r1 + j] = other.d[i][j].clone();
            }
        }
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::new_unchecked(self.inner.clone(), self.outer.clone(), self.ring.clone(), gens, d))
    }

    /// Same factorisation written with the variable names of `model`,
    /// identifying variables by position.
    pub fn aligned_to(&self, model: &Self) -> Result<Self> {
        if !self.inner.matches(&model.inner) || !self.outer.matches(&model.outer) {
            return Err(Error::PotentialMismatch(format!(
                "{} -> {} versus {} -> {}",
                self.inner.potential, self.outer.potential, model.inner.potential, model.outer.potential
            )));
        }
        if Arc::ptr_eq(&self.ring, &model.ring) || self.ring == model.ring {
            let mut out = self.clone();
            out.ring = model.ring.clone();
            out.inner = model.inner.clone();
            out.outer = model.outer.clone();
            out.d = self.d.iter().map(|r| r.iter().map(|p| p.rename(&model.ring, &(0..p.ring().nvars()).map(Some).collect::<Vec<_>>())).collect()).collect();
            return Ok(out);
        }
        let map: Vec<Option<usize>> = (0..self.ring.nvars()).map(Some).collect();
        let d = self.d.iter().map(|r| r.iter().map(|p| p.rename(&model.ring, &map)).collect()).collect();
        Ok(Self::new_unchecked(model.inner.clone(), model.outer.clone(), model.ring.clone(), self.gens.clone(), d))
    }

    /// Renames inner and outer variables.
    pub fn renamed(&self, inner: &[String], outer: &[String]) -> Result<Self> {
        let inner_sp = self.inner.renamed(inner)?;
        let outer_sp = self.outer.renamed(outer)?;
        let ring = Self::joint_ring(&inner_sp, &outer_sp)?;
        let map: Vec<Option<usize>> = (0..self.ring.nvars()).map(Some).collect();
        let d = self.d.iter().map(|r| r.iter().map(|p| p.rename(&ring, &map)).collect()).collect();
        Ok(Self::new_unchecked(inner_sp, outer_sp, ring, self.gens.clone(), d))
    }

    /// Builds from parts already known to be consistent (validation is the caller's job).
    pub(crate) fn from_parts(inner: Arc<LgSpace>, outer: Arc<LgSpace>, ring: Arc<WeightSystem>, gens: Vec<Generator>, d: Vec<Vec<Poly>>) -> Self {
        Self::new_unchecked(inner, outer, ring, gens, d)
    }
}

impl fmt::Display for MatrixFactorisation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MF of rank {} over {:?} -> {:?}", self.rank(), self.inner.ring.vars(), self.outer.ring.vars())?;
        for (i, g) in self.gens.iter().enumerate() {
            writeln!(f, "  e{i}: parity {:?}, qdeg {}", g.parity, g.qdeg)?;
        }
        for (i, row) in self.d.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    writeln!(f, "  d[{i}][{j}] = {e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Product of polynomial matrices.
pub fn mat_mul(ring: &Arc<WeightSystem>, a: &[Vec<Poly>], b: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Poly::zero(ring);
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc.add_assign_ref(&row[k].mul_ref(&b[k][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ade::AdeType;
    use crate::field::rat;

    fn space(text: &str, vars: &[&str], weights: Vec<BigRational>) -> Arc<LgSpace> {
        let ring = WeightSystem::new(vars.iter().map(|s| s.to_string()).collect(), weights).unwrap();
        LgSpace::new(Poly::parse(text, &ring).unwrap()).unwrap()
    }

    #[test]
    fn one_variable_unit_matrix() {
        let sp = space("x^2", &["x"], vec![rat(1, 1)]);
        let u = MatrixFactorisation::unit(&sp).unwrap();
        assert_eq!(u.rank(), 2);
        assert_eq!(u.d()[0][1].to_string(), "-x + x'");
        assert_eq!(u.d()[1][0].to_string(), "x + x'");
    }

    #[test]
    fn units_of_ade_potentials_validate() {
        for t in [AdeType::A(3), AdeType::D(4), AdeType::E6, AdeType::E7] {
            let sp = LgSpace::new(t.potential()).unwrap();
            let u = MatrixFactorisation::unit(&sp).unwrap();
            assert_eq!(u.rank(), 8);
            u.dual().validate().unwrap();
            let (l, r) = u.adjoints();
            l.validate().unwrap();
            r.validate().unwrap();
        }
    }

    #[test]
    fn permutation_entries() {
        let p = MatrixFactorisation::permutation(3, &[0, 1]).unwrap();
        assert_eq!(p.gens()[1].qdeg, rat(1, 3));
        let z = Scalar::root_of_unity(3, 1);
        let ring = p.ring().clone();
        let u = Poly::var(&ring, 0);
        let up = Poly::var(&ring, 1);
        let expect = up.sub_ref(&u).mul_ref(&up.sub_ref(&u.scale(&z)));
        assert_eq!(p.d()[0][1], expect);
        assert!(MatrixFactorisation::permutation(4, &[]).is_err());
        let full = MatrixFactorisation::permutation(3, &[0, 1, 2]).unwrap();
        assert_eq!(full.d()[1][0], Poly::one(&ring));
    }

    #[test]
    fn perm_zero_is_the_unit() {
        for d in 2..=6 {
            let p = MatrixFactorisation::permutation(d, &[0]).unwrap();
            let sp = p.inner().clone();
            let u = MatrixFactorisation::unit(&sp).unwrap();
            assert_eq!(p.gens(), u.gens());
            assert_eq!(p.d(), u.d());
        }
    }

    #[test]
    fn shifted_half_permutation() {
        let p = MatrixFactorisation::permutation(4, &[2]).unwrap().shift();
        let ring = p.ring().clone();
        let u = Poly::var(&ring, 0);
        let up = Poly::var(&ring, 1);
        // entries up to the sign from the shift: (u' + u) and (u'^4 - u^4)/(u' + u)
        assert_eq!(p.d()[0][1], up.add_ref(&u).neg_ref());
        let pot = up.pow(4).sub_ref(&u.pow(4));
        assert_eq!(p.d()[1][0].neg_ref(), pot.div_exact(&up.add_ref(&u)).unwrap());
    }

    #[test]
    fn parse_space_infers_weights() {
        let sp = LgSpace::parse("x^4 + y^2 + z^2").unwrap();
        assert_eq!(sp.ring().vars(), ["x", "y", "z"]);
        assert_eq!(sp.central_charge(), BigRational::new(3.into(), 2.into()));
        assert!(LgSpace::parse("x^2 + x^3").is_err());
    }

    #[test]
    fn rejects_bad_differential() {
        let sp = space("x^2", &["x"], vec![rat(1, 1)]);
        let u = MatrixFactorisation::unit(&sp).unwrap();
        let mut d = u.d().to_vec();
        d[0][1] = d[0][1].scale(&Scalar::from_int(2));
        assert!(MatrixFactorisation::new(u.inner().clone(), u.outer().clone(), u.gens().to_vec(), d).is_err());
    }
}
