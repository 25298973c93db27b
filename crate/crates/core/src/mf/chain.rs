//! Elements of iterated tensor products `F_k (x) ... (x) F_1` and the maps used to
//! transport morphisms through reductions and unitors.
//!
//! Factor 0 is innermost. Variable block `s` holds the inner variables of factor `s`
//! (equivalently the outer variables of factor `s - 1`); a tuple of generator
//! indices is stored innermost first.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::tensor::{reduce, tensor, Reduced};
use super::{one_sided_inverse, MatrixFactorisation, MfMorphism, Parity, Side};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, WeightSystem};
use crate::scalar::Scalar;

/// A composable sequence of factorisations over one polynomial ring.
#[derive(Clone, Debug)]
pub struct Chain {
    factors: Vec<Arc<MatrixFactorisation>>,
    ring: Arc<WeightSystem>,
    offsets: Vec<usize>,
}

impl Chain {
    pub fn new(factors: Vec<Arc<MatrixFactorisation>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Unsupported("empty chain".into()));
        }
        for w in factors.windows(2) {
            if !w[1].inner().matches(w[0].outer()) {
                return Err(Error::PotentialMismatch("adjacent chain factors do not compose".into()));
            }
        }
        let mut blocks: Vec<&[BigRational]> = vec![factors[0].inner().ring().weights()];
        blocks.extend(factors.iter().map(|f| f.outer().ring().weights()));
        let mut names = Vec::new();
        let mut weights = Vec::new();
        let mut offsets = vec![0];
        for (s, ws) in blocks.iter().enumerate() {
            for (i, w) in ws.iter().enumerate() {
                names.push(format!("v{s}_{i}"));
                weights.push(w.clone());
            }
            offsets.push(names.len());
        }
        let ring = WeightSystem::new(names, weights)?;
        Ok(Chain { factors, ring, offsets })
    }

    pub fn ring(&self) -> &Arc<WeightSystem> {
        &self.ring
    }

    pub fn factors(&self) -> &[Arc<MatrixFactorisation>] {
        &self.factors
    }

    fn block(&self, s: usize) -> std::ops::Range<usize> {
        self.offsets[s]..self.offsets[s + 1]
    }

    /// Variable map from factor `f`'s joint ring into the chain ring.
    fn factor_map(&self, f: usize) -> Vec<Option<usize>> {
        self.block(f).chain(self.block(f + 1)).map(Some).collect()
    }
}

/// Element of a chain: generator tuples with polynomial coefficients.
#[derive(Clone, Debug)]
pub struct ChainElement {
    chain: Arc<Chain>,
    terms: BTreeMap<Vec<usize>, Poly>,
}

fn accumulate(terms: &mut BTreeMap<Vec<usize>, Poly>, key: Vec<usize>, p: Poly) {
    if p.is_zero() {
        return;
    }
    match terms.get_mut(&key) {
        Some(e) => {
            e.add_assign_ref(&p);
            if e.is_zero() {
                terms.remove(&key);
            }
        }
        None => {
            terms.insert(key, p);
        }
    }
}

/// Monomial of the old chain ring moved into a new one; `old_to_new[v]` is the new index of variable `v`.
fn move_monomial(m: &Monomial, old_to_new: &[Option<usize>], new_len: usize) -> Option<Monomial> {
    let mut e = vec![0u32; new_len];
    for (v, ex) in m.0.iter().enumerate() {
        if *ex == 0 {
            continue;
        }
        e[old_to_new[v]?] += ex;
    }
    Some(Monomial(e))
}

impl ChainElement {
    pub fn basis(chain: Arc<Chain>, tuple: Vec<usize>) -> Self {
        let one = Poly::one(&chain.ring);
        ChainElement { terms: BTreeMap::from([(tuple, one)]), chain }
    }

    pub fn chain(&self) -> &Arc<Chain> {
        &self.chain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(mut self, s: &Scalar) -> Self {
        for p in self.terms.values_mut() {
            *p = p.scale(s);
        }
        self.terms.retain(|_, p| !p.is_zero());
        self
    }

    /// Applies a homogeneous morphism to factor `f`, replacing it by `target`.
    pub fn apply(&self, f: usize, morphism: &MfMorphism, target: &Arc<MatrixFactorisation>) -> Result<Self> {
        let chain = &self.chain;
        let mut factors = chain.factors.clone();
        if morphism.cols() != factors[f].rank() || morphism.rows() != target.rank() {
            return Err(Error::Unsupported("morphism does not match the chain factor".into()));
        }
        factors[f] = target.clone();
        let new_chain = Arc::new(Chain::new(factors)?);
        let map = chain.factor_map(f);
        let images: Vec<Vec<(usize, Poly)>> = (0..morphism.cols())
            .map(|j| {
                (0..morphism.rows())
                    .filter(|i| !morphism.matrix[*i][j].is_zero())
                    .map(|i| (i, morphism.matrix[i][j].rename(&new_chain.ring, &map)))
                    .collect()
            })
            .collect();
        let mut terms = BTreeMap::new();
        for (tuple, p) in &self.terms {
            let p = p.rename(&new_chain.ring, &(0..chain.ring.nvars()).map(Some).collect::<Vec<_>>());
            // Koszul sign against the factors written to the left
            let left: i64 = tuple[f + 1..].iter().zip(&chain.factors[f + 1..]).map(|(a, fac)| fac.gens()[*a].parity.as_int()).sum();
            let sign = if morphism.parity == Parity::Odd && left % 2 == 1 { Scalar::from_int(-1) } else { Scalar::one() };
            for (i, e) in &images[tuple[f]] {
                let mut t = tuple.clone();
                t[f] = *i;
                accumulate(&mut terms, t, p.mul_ref(e).scale(&sign));
            }
        }
        Ok(ChainElement { chain: new_chain, terms })
    }

    /// Replaces the reduced factor `f` by the two raw factors it came from.
    pub fn expand(&self, f: usize, red: &Reduced) -> Result<Self> {
        let chain = &self.chain;
        let raw = red.raw();
        if chain.factors[f].rank() != red.mf().rank() {
            return Err(Error::Unsupported("expansion does not match the chain factor".into()));
        }
        let mut factors: Vec<Arc<MatrixFactorisation>> = chain.factors[..f].to_vec();
        factors.push(Arc::new(raw.inner_factor().clone()));
        factors.push(Arc::new(raw.outer_factor().clone()));
        factors.extend(chain.factors[f + 1..].iter().cloned());
        let new_chain = Arc::new(Chain::new(factors)?);
        let nv = new_chain.ring.nvars();
        // old blocks <= f stay, later blocks move up by one
        let mut old_to_new = vec![None; chain.ring.nvars()];
        for s in 0..chain.offsets.len() - 1 {
            let t = if s <= f { s } else { s + 1 };
            for (a, b) in chain.block(s).zip(new_chain.block(t)) {
                old_to_new[a] = Some(b);
            }
        }
        let raw_map: Vec<Option<usize>> = new_chain.block(f).chain(new_chain.block(f + 1)).chain(new_chain.block(f + 2)).map(Some).collect();
        let rx = raw.inner_factor().rank();
        let images: Vec<Vec<(usize, usize, Poly)>> = (0..red.mf().rank())
            .map(|l| red.include(l).iter().map(|(g, q)| (g % rx, g / rx, q.rename(&new_chain.ring, &raw_map))).collect())
            .collect();
        let mut terms = BTreeMap::new();
        for (tuple, p) in &self.terms {
            let p = Poly::from_terms(
                &new_chain.ring,
                p.terms().map(|(m, c)| (move_monomial(m, &old_to_new, nv).unwrap(), c.clone())),
            );
            for (b, a, q) in &images[tuple[f]] {
                let mut t = tuple[..f].to_vec();
                t.push(*b);
                t.push(*a);
                t.extend_from_slice(&tuple[f + 1..]);
                accumulate(&mut terms, t, p.mul_ref(q));
            }
        }
        Ok(ChainElement { chain: new_chain, terms })
    }

    /// Projects factors `f` and `f + 1` onto their reduction.
    pub fn collapse(&self, f: usize, red: &Reduced) -> Result<Self> {
        let chain = &self.chain;
        let raw = red.raw();
        let mut factors: Vec<Arc<MatrixFactorisation>> = chain.factors[..f].to_vec();
        factors.push(Arc::new(red.mf().clone()));
        factors.extend(chain.factors[f + 2..].iter().cloned());
        let new_chain = Arc::new(Chain::new(factors)?);
        let nv = new_chain.ring.nvars();
        let mid = chain.block(f + 1);
        let mut old_to_new = vec![None; chain.ring.nvars()];
        for s in 0..chain.offsets.len() - 1 {
            if s == f + 1 {
                continue;
            }
            let t = if s <= f { s } else { s - 1 };
            for (a, b) in chain.block(s).zip(new_chain.block(t)) {
                old_to_new[a] = Some(b);
            }
        }
        let red_map: Vec<Option<usize>> = new_chain.block(f).chain(new_chain.block(f + 1)).map(Some).collect();
        let rx = raw.inner_factor().rank();
        let mut terms = BTreeMap::new();
        for (tuple, p) in &self.terms {
            let g = tuple[f + 1] * rx + tuple[f];
            let mut by_y: BTreeMap<Monomial, Poly> = BTreeMap::new();
            for (m, c) in p.terms() {
                let ym = Monomial(m.0[mid.clone()].to_vec());
                let mut rest = m.clone();
                for v in mid.clone() {
                    rest.0[v] = 0;
                }
                let moved = move_monomial(&rest, &old_to_new, nv).unwrap();
                by_y.entry(ym).or_insert_with(|| Poly::zero(&new_chain.ring)).add_term(moved, c);
            }
            for (ym, coeff) in by_y {
                for (l, r) in red.project(g, &ym)? {
                    let mut t = tuple[..f].to_vec();
                    t.push(*l);
                    t.extend_from_slice(&tuple[f + 2..]);
                    accumulate(&mut terms, t, coeff.mul_ref(&r.rename(&new_chain.ring, &red_map)));
                }
            }
        }
        Ok(ChainElement { chain: new_chain, terms })
    }

    /// Removes a Koszul unit factor `f`: keeps its degree-zero generator and
    /// identifies its outer variables with its inner ones.
    pub fn unit_collapse(&self, f: usize) -> Result<Self> {
        let chain = &self.chain;
        if chain.factors.len() < 2 {
            return Err(Error::Unsupported("cannot remove the only factor".into()));
        }
        let mut factors = chain.factors.clone();
        factors.remove(f);
        let new_chain = Arc::new(Chain::new(factors)?);
        let nv = new_chain.ring.nvars();
        let mut old_to_new = vec![None; chain.ring.nvars()];
        for s in 0..chain.offsets.len() - 1 {
            let t = if s <= f { s } else { s - 1 };
            for (a, b) in chain.block(s).zip(new_chain.block(t)) {
                old_to_new[a] = Some(b);
            }
        }
        let mut terms = BTreeMap::new();
        for (tuple, p) in &self.terms {
            if tuple[f] != 0 {
                continue;
            }
            let mut t = tuple.clone();
            t.remove(f);
            let q = Poly::from_terms(&new_chain.ring, p.terms().map(|(m, c)| (move_monomial(m, &old_to_new, nv).unwrap(), c.clone())));
            accumulate(&mut terms, t, q);
        }
        Ok(ChainElement { chain: new_chain, terms })
    }

    /// Inserts a unit above factor `f` through a homotopy section of the unitor.
    pub fn insert_unit(&self, f: usize, ins: &UnitInsertion) -> Result<Self> {
        let target = Arc::new(ins.reduced.mf().clone());
        self.apply(f, &ins.section, &target)?.expand(f, &ins.reduced)
    }

    /// Coefficients of a single-factor element as a column over that factor's ring.
    pub fn into_column(self) -> Result<Vec<Poly>> {
        let chain = &self.chain;
        if chain.factors.len() != 1 {
            return Err(Error::Unsupported("column of a chain with several factors".into()));
        }
        let fac = &chain.factors[0];
        let map: Vec<Option<usize>> = (0..chain.ring.nvars()).map(Some).collect();
        let mut col = vec![Poly::zero(fac.ring()); fac.rank()];
        for (tuple, p) in self.terms {
            col[tuple[0]] = p.rename(fac.ring(), &map);
        }
        Ok(col)
    }
}

/// Data to insert a unit above a factor `N`: the reduction of `I (x) N` and a
/// homotopy section of the unitor `I (x) N -> N`.
#[derive(Clone, Debug)]
pub struct UnitInsertion {
    reduced: Reduced,
    section: MfMorphism,
}

impl UnitInsertion {
    pub fn new(n: &MatrixFactorisation) -> Result<Self> {
        let unit = MatrixFactorisation::unit(n.outer())?;
        let reduced = reduce(&tensor(&unit, n)?)?;
        let red = Arc::new(reduced.mf().clone());
        let unitor = transport(&red, n, |e| e.expand(0, &reduced)?.unit_collapse(1))?;
        let section = one_sided_inverse(&red, n, &unitor, Side::Right)?
            .ok_or_else(|| Error::NoIsomorphism("unitor has no homotopy section".into()))?;
        Ok(UnitInsertion { reduced, section })
    }

    pub fn reduced(&self) -> &Reduced {
        &self.reduced
    }
}

/// Degree-zero morphism `source -> target` obtained by running `ops` on every source generator.
pub fn transport(
    source: &Arc<MatrixFactorisation>,
    target: &MatrixFactorisation,
    ops: impl Fn(ChainElement) -> Result<ChainElement>,
) -> Result<MfMorphism> {
    let chain = Arc::new(Chain::new(vec![source.clone()])?);
    let mut f = MfMorphism::zero(source.ring(), target.rank(), source.rank(), Parity::Even, BigRational::zero());
    for l in 0..source.rank() {
        let out = ops(ChainElement::basis(chain.clone(), vec![l]))?;
        let col = out.into_column()?;
        if col.len() != target.rank() {
            return Err(Error::Unsupported("transport landed in a factor of the wrong rank".into()));
        }
        let map: Vec<Option<usize>> = (0..target.ring().nvars()).map(Some).collect();
        for (i, p) in col.into_iter().enumerate() {
            f.matrix[i][l] = p.rename(source.ring(), &map);
        }
    }
    Ok(f)
}
