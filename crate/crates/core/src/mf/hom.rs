//! Morphisms of matrix factorisations and the graded Hom complex.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{mat_mul, MatrixFactorisation, Parity};
use crate::error::{Error, Result};
use crate::linalg::{axpy, kernel_sparse, rank_sparse, solve_sparse, sparse_from_map, SparseVec};
use crate::poly::{Monomial, Poly, WeightSystem};
use crate::scalar::Scalar;

/// A homogeneous module map between the underlying free modules.
/// `matrix[i][j]` is the coefficient of target generator `i` in the image of source generator `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct MfMorphism {
    pub parity: Parity,
    pub qdeg: BigRational,
    pub matrix: Vec<Vec<Poly>>,
}

impl MfMorphism {
    pub fn zero(ring: &Arc<WeightSystem>, rows: usize, cols: usize, parity: Parity, qdeg: BigRational) -> Self {
        MfMorphism { parity, qdeg, matrix: vec![vec![Poly::zero(ring); cols]; rows] }
    }

    pub fn identity(x: &MatrixFactorisation) -> Self {
        let mut out = Self::zero(x.ring(), x.rank(), x.rank(), Parity::Even, BigRational::zero());
        for i in 0..x.rank() {
            out.matrix[i][i] = Poly::one(x.ring());
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, |r| r.len())
    }

    /// `self . other`
    pub fn compose(&self, other: &MfMorphism, ring: &Arc<WeightSystem>) -> MfMorphism {
        MfMorphism {
            parity: self.parity.add(other.parity),
            qdeg: &self.qdeg + &other.qdeg,
            matrix: mat_mul(ring, &self.matrix, &other.matrix),
        }
    }

    pub fn add(&self, other: &MfMorphism) -> MfMorphism {
        let matrix = self.matrix.iter().zip(&other.matrix).map(|(a, b)| a.iter().zip(b).map(|(p, q)| p.add_ref(q)).collect()).collect();
        MfMorphism { parity: self.parity, qdeg: self.qdeg.clone(), matrix }
    }

    pub fn sub(&self, other: &MfMorphism) -> MfMorphism {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> MfMorphism {
        let matrix = self.matrix.iter().map(|r| r.iter().map(|p| p.scale(s)).collect()).collect();
        MfMorphism { parity: self.parity, qdeg: self.qdeg.clone(), matrix }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Poly::is_zero)
    }

    /// `d_Y f - (-1)^|f| f d_X`
    pub fn differential(&self, source: &MatrixFactorisation, target: &MatrixFactorisation) -> MfMorphism {
        let ring = source.ring();
        let left = mat_mul(ring, target.d(), &self.matrix);
        let right = mat_mul(ring, &self.matrix, source.d());
        let s = self.parity.sign();
        let matrix = left.iter().zip(&right).map(|(a, b)| a.iter().zip(b).map(|(p, q)| p.sub_ref(&q.scale(&s))).collect()).collect();
        MfMorphism { parity: self.parity.flip(), qdeg: &self.qdeg + BigRational::one(), matrix }
    }

    pub fn is_closed(&self, source: &MatrixFactorisation, target: &MatrixFactorisation) -> bool {
        self.differential(source, target).is_zero()
    }
}

/// Basis of one graded piece `C(p, q)` of the Hom complex.
#[derive(Debug)]
pub struct HomPiece {
    pub basis: Vec<(usize, usize, Monomial)>,
    index: HashMap<(usize, usize, Monomial), usize>,
}

impl HomPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, i: usize, j: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(i, j, m.clone())).copied()
    }
}

/// The Z/2 x Q graded complex `Hom(X, Y)` with differential `d_Y f - (-1)^p f d_X`.
pub struct HomComplex<'a> {
    source: &'a MatrixFactorisation,
    target: &'a MatrixFactorisation,
    pieces: RefCell<HashMap<(Parity, BigRational), Rc<HomPiece>>>,
}

impl<'a> HomComplex<'a> {
    /// Both factorisations must live over the same joint ring.
    pub fn new(source: &'a MatrixFactorisation, target: &'a MatrixFactorisation) -> Result<Self> {
        if source.ring() != target.ring() && !Arc::ptr_eq(source.ring(), target.ring()) {
            return Err(Error::RingMismatch(format!("{:?} versus {:?}", source.ring().vars(), target.ring().vars())));
        }
        Ok(HomComplex { source, target, pieces: RefCell::new(HashMap::new()) })
    }

    pub fn source(&self) -> &MatrixFactorisation {
        self.source
    }

    pub fn target(&self) -> &MatrixFactorisation {
        self.target
    }

    pub fn piece(&self, p: Parity, q: &BigRational) -> Rc<HomPiece> {
        let key = (p, q.clone());
        if let Some(piece) = self.pieces.borrow().get(&key) {
            return piece.clone();
        }
        let ring = self.source.ring();
        let mut basis = Vec::new();
        for (i, gy) in self.target.gens().iter().enumerate() {
            for (j, gx) in self.source.gens().iter().enumerate() {
                if gy.parity.add(gx.parity) != p {
                    continue;
                }
                let deg = q + &gx.qdeg - &gy.qdeg;
                if let Some(units) = ring.to_units(&deg) {
                    for m in ring.monomials_of_units(units) {
                        basis.push((i, j, m));
                    }
                }
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
        let piece = Rc::new(HomPiece { basis, index });
        self.pieces.borrow_mut().insert(key, piece.clone());
        piece
    }

    /// Coordinates of a homogeneous morphism in its piece.
    pub fn to_vector(&self, f: &MfMorphism) -> Result<SparseVec<Scalar>> {
        let piece = self.piece(f.parity, &f.qdeg);
        let mut out = BTreeMap::new();
        for (i, row) in f.matrix.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                for (m, c) in e.terms() {
                    let k = piece
                        .index_of(i, j, m)
                        .ok_or_else(|| Error::InvalidFactorisation(format!("morphism entry ({i},{j}) is not homogeneous of the stated degree")))?;
                    out.insert(k, c.clone());
                }
            }
        }
        Ok(sparse_from_map(out))
    }

    pub fn to_morphism(&self, p: Parity, q: &BigRational, v: &[(usize, Scalar)]) -> MfMorphism {
        let ring = self.source.ring();
        let piece = self.piece(p, q);
        let mut f = MfMorphism::zero(ring, self.target.rank(), self.source.rank(), p, q.clone());
        for (k, c) in v {
            let (i, j, m) = &piece.basis[*k];
            f.matrix[*i][*j].add_term(m.clone(), c);
        }
        f
    }

    /// Images of the basis of `C(p, q)` in `C(p + 1, q + 1)`.
    pub fn delta_columns(&self, p: Parity, q: &BigRational) -> Vec<SparseVec<Scalar>> {
        let src = self.piece(p, q);
        let tgt = self.piece(p.flip(), &(q + BigRational::one()));
        let sign = p.sign();
        let dy = self.target.d();
        let dx = self.source.d();
        src.basis
            .iter()
            .map(|(i, j, m)| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                let mut push = |row: usize, col: usize, e: &Poly, s: &Scalar| {
                    for (mm, c) in e.terms() {
                        let k = tgt.index_of(row, col, &mm.mul(m)).expect("differential preserves degree");
                        axpy(&mut acc, s, &[(k, c.clone())]);
                    }
                };
                for (k, row) in dy.iter().enumerate() {
                    if !row[*i].is_zero() {
                        push(k, *j, &row[*i], &Scalar::one());
                    }
                }
                let neg = sign.neg_ref();
                for (l, e) in dx[*j].iter().enumerate() {
                    if !e.is_zero() {
                        push(*i, l, e, &neg);
                    }
                }
                sparse_from_map(acc)
            })
            .collect()
    }

    /// Basis of closed morphisms in `C(p, q)`.
    pub fn cocycles(&self, p: Parity, q: &BigRational) -> Vec<SparseVec<Scalar>> {
        kernel_sparse(&self.delta_columns(p, q))
    }

    /// Images `delta(C(p + 1, q - 1))` inside `C(p, q)`.
    pub fn coboundaries(&self, p: Parity, q: &BigRational) -> Vec<SparseVec<Scalar>> {
        self.delta_columns(p.flip(), &(q - BigRational::one()))
    }

    pub fn cohomology_dim(&self, p: Parity, q: &BigRational) -> usize {
        self.cocycles(p, q).len() - rank_sparse(&self.coboundaries(p, q))
    }

    /// Some `h` with `delta h = f`.
    pub fn null_homotopy(&self, f: &MfMorphism) -> Result<Option<MfMorphism>> {
        let v = self.to_vector(f)?;
        let q = &f.qdeg - BigRational::one();
        Ok(solve_sparse(&self.coboundaries(f.parity, &f.qdeg), &v).map(|h| self.to_morphism(f.parity.flip(), &q, &h)))
    }
}

/// Dimension of `H^p(Hom(X, Y))` in q-degree `q`.
pub fn hom_rank(x: &MatrixFactorisation, y: &MatrixFactorisation, p: Parity, q: &BigRational) -> Result<usize> {
    let y = y.aligned_to(x)?;
    Ok(HomComplex::new(x, &y)?.cohomology_dim(p, q))
}

/// A null-homotopy of `f: X -> Y` if one exists.
pub fn is_null_homotopic(x: &MatrixFactorisation, y: &MatrixFactorisation, f: &MfMorphism) -> Result<Option<MfMorphism>> {
    let y = y.aligned_to(x)?;
    HomComplex::new(x, &y)?.null_homotopy(f)
}

/// True when the identity is null-homotopic.
pub fn is_contractible(x: &MatrixFactorisation) -> bool {
    if x.rank() == 0 {
        return true;
    }
    let hc = HomComplex::new(x, x).expect("same ring");
    matches!(hc.null_homotopy(&MfMorphism::identity(x)), Ok(Some(_)))
}

/// Random closed degree-zero morphism `X -> Y`.
fn random_cocycle(hc: &HomComplex<'_>, rng: &mut ChaCha8Rng) -> MfMorphism {
    let zero = BigRational::zero();
    let basis = hc.cocycles(Parity::Even, &zero);
    let mut acc = BTreeMap::new();
    for v in &basis {
        let c = Scalar::from_int(rng.gen_range(-7i64..=7));
        axpy(&mut acc, &c, v);
    }
    hc.to_morphism(Parity::Even, &zero, &sparse_from_map(acc))
}

/// Which composite a one-sided homotopy inverse should trivialise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `g . f ~ 1`
    Left,
    /// `f . g ~ 1`
    Right,
}

/// A closed degree-zero `g: Y -> X` with `g f ~ 1_X` (left) or `f g ~ 1_Y` (right).
pub fn one_sided_inverse(x: &MatrixFactorisation, y: &MatrixFactorisation, f: &MfMorphism, side: Side) -> Result<Option<MfMorphism>> {
    let y = y.aligned_to(x)?;
    let ring = x.ring().clone();
    let zero = BigRational::zero();
    let yx = HomComplex::new(&y, x)?;
    let (base, base_mf) = match side {
        Side::Left => (HomComplex::new(x, x)?, x),
        Side::Right => (HomComplex::new(&y, &y)?, &y),
    };
    let id = base.to_vector(&MfMorphism::identity(base_mf))?;
    // rows: first delta(g) in C_YX(1,1), then the composite in C(0,0)
    let g_dim = yx.piece(Parity::Even, &zero).dim();
    let closed_rows = yx.piece(Parity::Odd, &BigRational::one()).dim();
    let mut columns: Vec<SparseVec<Scalar>> = Vec::new();
    for (k, delta) in yx.delta_columns(Parity::Even, &zero).into_iter().enumerate() {
        let g = yx.to_morphism(Parity::Even, &zero, &[(k, Scalar::one())]);
        let comp = match side {
            Side::Left => g.compose(f, &ring),
            Side::Right => f.compose(&g, &ring),
        };
        let mut col = delta;
        col.extend(base.to_vector(&comp)?.into_iter().map(|(i, c)| (i + closed_rows, c)));
        columns.push(col);
    }
    for h in base.coboundaries(Parity::Even, &zero) {
        columns.push(h.iter().map(|(i, c)| (i + closed_rows, c.neg_ref())).collect());
    }
    let target: SparseVec<Scalar> = id.iter().map(|(i, c)| (i + closed_rows, c.clone())).collect();
    Ok(solve_sparse(&columns, &target).map(|sol| {
        let g_vec: SparseVec<Scalar> = sol.into_iter().filter(|(k, _)| *k < g_dim).collect();
        yx.to_morphism(Parity::Even, &zero, &g_vec)
    }))
}

/// Mutually inverse homotopy equivalences `f: X -> Y`, `g: Y -> X` of degree zero.
pub fn find_iso(x: &MatrixFactorisation, y: &MatrixFactorisation, seed: u64) -> Result<(MfMorphism, MfMorphism)> {
    let y = y.aligned_to(x)?;
    let ring = x.ring().clone();
    let xy = HomComplex::new(x, &y)?;
    let yy = HomComplex::new(&y, &y)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id_y = MfMorphism::identity(&y);
    for _attempt in 0..4 {
        let f = random_cocycle(&xy, &mut rng);
        let Some(g) = one_sided_inverse(x, &y, &f, Side::Left)? else { continue };
        let fg = f.compose(&g, &ring).sub(&id_y);
        if yy.null_homotopy(&fg)?.is_some() {
            return Ok((f, g));
        }
    }
    Err(Error::NoIsomorphism("no homotopy equivalence of degree zero found".into()))
}

/// Searches shifts `Y[s]{q}` (q from differences of generator degrees) with
/// `X` homotopy equivalent to `Y[s]{q}`; returns `(s, q, f, g)`.
pub fn find_iso_up_to_shift(
    x: &MatrixFactorisation,
    y: &MatrixFactorisation,
    seed: u64,
) -> Result<(i64, BigRational, MfMorphism, MfMorphism)> {
    let mut shifts: Vec<BigRational> = Vec::new();
    for gx in x.gens() {
        for gy in y.gens() {
            let q = &gx.qdeg - &gy.qdeg;
            if !shifts.contains(&q) {
                shifts.push(q);
            }
        }
    }
    if shifts.is_empty() {
        shifts.push(BigRational::zero());
    }
    shifts.sort();
    for s in 0..2 {
        for q in &shifts {
            let candidate = y.shift_by(s).qshift(q);
            if x.rank() > 0 && hom_rank(x, &candidate, Parity::Even, &BigRational::zero())? == 0 {
                continue;
            }
            if let Ok((f, g)) = find_iso(x, &candidate, seed) {
                return Ok((s, q.clone(), f, g));
            }
        }
    }
    Err(Error::NoIsomorphism("no shift of the target is equivalent to the source".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn unit_endomorphisms() {
        let p = MatrixFactorisation::permutation(4, &[0]).unwrap();
        // End(I) = Jacobi ring of u^4, degree 0 part is one-dimensional
        assert_eq!(hom_rank(&p, &p, Parity::Even, &BigRational::zero()).unwrap(), 1);
        assert_eq!(hom_rank(&p, &p, Parity::Even, &rat(1, 2)).unwrap(), 1);
        assert_eq!(hom_rank(&p, &p, Parity::Even, &rat(3, 2)).unwrap(), 0);
        assert!(!is_contractible(&p));
        let full = MatrixFactorisation::permutation(4, &[0, 1, 2, 3]).unwrap();
        assert!(is_contractible(&full));
    }

    #[test]
    fn iso_with_itself_and_shift_search() {
        let p = MatrixFactorisation::permutation(5, &[1, 2]).unwrap();
        let (f, g) = find_iso(&p, &p, 1).unwrap();
        assert!(f.is_closed(&p, &p) && g.is_closed(&p, &p));
        let moved = p.shift().qshift(&rat(2, 5));
        let (s, q, _, _) = find_iso_up_to_shift(&p, &moved, 3).unwrap();
        assert_eq!(s, 1);
        assert_eq!(q, rat(-2, 5));
        let other = MatrixFactorisation::permutation(5, &[0]).unwrap();
        assert!(find_iso(&p, &other, 1).is_err());
    }
}
