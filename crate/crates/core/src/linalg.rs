//! Exact linear algebra over a [`Field`]: incremental sparse row echelon,
//! dense solves and division-free characteristic polynomials.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

use crate::field::Field;

/// Sparse vector as sorted `(index, value)` pairs with no explicit zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

pub fn sparse_from_map<F: Field>(m: BTreeMap<usize, F>) -> SparseVec<F> {
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// `acc += c * v`
pub fn axpy<F: Field>(acc: &mut BTreeMap<usize, F>, c: &F, v: &[(usize, F)]) {
    for (i, x) in v {
        let term = c.mul_ref(x);
        match acc.get_mut(i) {
            Some(e) => {
                e.add_assign_ref(&term);
                if e.is_zero() {
                    acc.remove(i);
                }
            }
            None => {
                if !term.is_zero() {
                    acc.insert(*i, term);
                }
            }
        }
    }
}

/// Row echelon form built one vector at a time. Optionally records, for every
/// stored row, the combination of inserted vectors that produced it.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    rows: Vec<SparseVec<F>>,
    pivot_of: HashMap<usize, usize>,
    combos: Option<Vec<SparseVec<F>>>,
    inserted: usize,
}

/// Outcome of inserting one vector.
#[derive(Clone, Debug)]
pub enum Insert<F: Field> {
    /// The vector was independent; rank went up.
    Independent,
    /// The vector was dependent; the combination of inserted vectors summing to zero.
    Dependent(SparseVec<F>),
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Self::new(false)
    }
}

impl<F: Field> Echelon<F> {
    pub fn new(track: bool) -> Self {
        Echelon { rows: Vec::new(), pivot_of: HashMap::new(), combos: track.then(Vec::new), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduces `v` against the stored rows; returns the remainder and, when
    /// tracking, minus the combination of inserted vectors that was subtracted.
    fn reduce_map(&self, v: &[(usize, F)]) -> (BTreeMap<usize, F>, BTreeMap<usize, F>) {
        let mut work: BTreeMap<usize, F> = v.iter().filter(|(_, x)| !x.is_zero()).cloned().collect();
        let mut combo: BTreeMap<usize, F> = BTreeMap::new();
        let mut cursor = 0usize;
        loop {
            let next = work.range(cursor..).find(|(k, _)| self.pivot_of.contains_key(k)).map(|(k, x)| (*k, x.clone()));
            let Some((k, c)) = next else { break };
            let r = self.pivot_of[&k];
            let neg = c.neg_ref();
            axpy(&mut work, &neg, &self.rows[r]);
            if let Some(combos) = &self.combos {
                axpy(&mut combo, &neg, &combos[r]);
            }
            cursor = k + 1;
        }
        (work, combo)
    }

    /// Remainder of `v` modulo the span, supported away from the pivots.
    pub fn reduce(&self, v: &[(usize, F)]) -> SparseVec<F> {
        self.reduce_map(v).0.into_iter().collect()
    }

    /// True when `v` lies in the span.
    pub fn contains(&self, v: &[(usize, F)]) -> bool {
        self.reduce_map(v).0.is_empty()
    }

    /// Coefficients `c` with `sum c_j inserted_j = v`, requires tracking.
    pub fn express(&self, v: &[(usize, F)]) -> Option<SparseVec<F>> {
        assert!(self.combos.is_some(), "express needs a tracking echelon");
        let (rem, combo) = self.reduce_map(v);
        if !rem.is_empty() {
            return None;
        }
        Some(combo.into_iter().map(|(k, x)| (k, x.neg_ref())).collect())
    }

    pub fn insert(&mut self, v: &[(usize, F)]) -> Insert<F> {
        let idx = self.inserted;
        self.inserted += 1;
        let (rem, mut combo) = self.reduce_map(v);
        if self.combos.is_some() {
            combo.insert(idx, F::one());
        }
        match rem.iter().next() {
            None => Insert::Dependent(combo.into_iter().collect()),
            Some((&p, lead)) => {
                let inv = lead.inv().expect("nonzero pivot");
                let row: SparseVec<F> = rem.iter().map(|(k, x)| (*k, x.mul_ref(&inv))).collect();
                self.pivot_of.insert(p, self.rows.len());
                self.rows.push(row);
                if let Some(combos) = &mut self.combos {
                    combos.push(combo.iter().map(|(k, x)| (*k, x.mul_ref(&inv))).collect());
                }
                Insert::Independent
            }
        }
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }
}

/// Rank of a list of sparse vectors.
pub fn rank_sparse<F: Field>(vectors: &[SparseVec<F>]) -> usize {
    let mut e = Echelon::new(false);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of the kernel of the map sending basis vector j to `columns[j]`.
pub fn kernel_sparse<F: Field>(columns: &[SparseVec<F>]) -> Vec<SparseVec<F>> {
    let mut e = Echelon::new(true);
    let mut out = Vec::new();
    for c in columns {
        if let Insert::Dependent(k) = e.insert(c) {
            out.push(k);
        }
    }
    out
}

/// Some `x` with `sum x_j columns[j] = target`.
pub fn solve_sparse<F: Field>(columns: &[SparseVec<F>], target: &[(usize, F)]) -> Option<SparseVec<F>> {
    let mut e = Echelon::new(true);
    for c in columns {
        e.insert(c);
    }
    e.express(target)
}

fn dense_to_columns<F: Field>(rows: &[Vec<F>]) -> Vec<SparseVec<F>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    (0..ncols)
        .map(|j| rows.iter().enumerate().filter(|(_, r)| !r[j].is_zero()).map(|(i, r)| (i, r[j].clone())).collect())
        .collect()
}

/// Solves `rows * x = rhs`; `None` if inconsistent. Picks some solution when
/// the system is underdetermined.
pub fn solve_dense<F: Field>(rows: &[Vec<F>], rhs: &[F]) -> Option<Vec<F>> {
    let cols = dense_to_columns(rows);
    let target: SparseVec<F> = rhs.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
    let sol = solve_sparse(&cols, &target)?;
    let mut out = vec![F::zero(); cols.len()];
    for (j, x) in sol {
        out[j] = x;
    }
    Some(out)
}

pub fn rank_dense<F: Field>(rows: &[Vec<F>]) -> usize {
    rank_sparse(&dense_to_columns(rows))
}

/// Kernel basis of a dense matrix given by rows.
pub fn nullspace_dense<F: Field>(rows: &[Vec<F>]) -> Vec<Vec<F>> {
    let cols = dense_to_columns(rows);
    let n = cols.len();
    kernel_sparse(&cols)
        .into_iter()
        .map(|k| {
            let mut v = vec![F::zero(); n];
            for (j, x) in k {
                v[j] = x;
            }
            v
        })
        .collect()
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let inner = b.len();
    let ncols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|j| {
                    let mut acc = F::zero();
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

/// Characteristic polynomial `det(tI - A)`, coefficients from constant term
/// upwards, by Berkowitz's division-free recursion.
pub fn char_poly<F: Field>(a: &[Vec<F>]) -> Vec<F> {
    let n = a.len();
    if n == 0 {
        return vec![F::one()];
    }
    assert!(a.iter().all(|r| r.len() == n), "char_poly needs a square matrix");
    // coefficients from leading term down
    let mut vect = vec![F::one(), a[0][0].neg_ref()];
    for r in 1..n {
        let col: Vec<F> = (0..r).map(|i| a[i][r].clone()).collect();
        let row: Vec<F> = (0..r).map(|j| a[r][j].clone()).collect();
        let mut t = Vec::with_capacity(r + 2);
        t.push(F::one());
        t.push(a[r][r].neg_ref());
        let mut power = col;
        for k in 0..r {
            let q = row.iter().zip(&power).fold(F::zero(), |acc, (x, y)| acc.add_ref(&x.mul_ref(y)));
            t.push(q.neg_ref());
            if k + 1 < r {
                power = (0..r)
                    .map(|i| (0..r).fold(F::zero(), |acc, j| acc.add_ref(&a[i][j].mul_ref(&power[j]))))
                    .collect();
            }
        }
        let mut next = vec![F::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, v) in vect.iter().enumerate().take(i + 1) {
                slot.add_assign_ref(&t[i - j].mul_ref(v));
            }
        }
        vect = next;
    }
    vect.reverse();
    vect
}

/// Multiplicity of zero as a root of a coefficient list (constant term first).
pub fn zero_root_multiplicity<F: Field>(coeffs: &[F]) -> usize {
    coeffs.iter().take_while(|c| c.is_zero()).count()
}

/// Long division of univariate coefficient lists (constant term first).
pub fn poly_divrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut den = den.to_vec();
    while den.last().is_some_and(Zero::is_zero) {
        den.pop();
    }
    assert!(!den.is_empty(), "division by zero polynomial");
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    if rem.len() <= dn {
        return (vec![], rem);
    }
    let lead = den[dn].clone();
    let mut quot = vec![BigRational::zero(); rem.len() - dn];
    for k in (dn..rem.len()).rev() {
        let c = &rem[k] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[k - dn + j] -= &c * d;
        }
        quot[k - dn] = c;
    }
    rem.truncate(dn);
    while rem.last().is_some_and(Zero::is_zero) {
        rem.pop();
    }
    (quot, rem)
}

/// Product of univariate coefficient lists.
pub fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn q(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()
    }

    #[test]
    fn berkowitz_matches_cofactor_small() {
        let a = q(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        // det(tI - A) = t^3 - 9t^2 + 24t - 18
        let expect: Vec<BigRational> = [-18, 24, -9, 1].iter().map(|&x| rat(x, 1)).collect();
        assert_eq!(char_poly(&a), expect);
    }

    #[test]
    fn kernel_and_solve() {
        let a = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank_dense(&a), 2);
        let ker = nullspace_dense(&a);
        assert_eq!(ker.len(), 1);
        let prod = mat_mul(&a, &ker.iter().map(|v| v.clone()).map(|v| v.into_iter().map(|x| vec![x]).collect::<Vec<_>>()).next().unwrap());
        assert!(prod.iter().all(|r| r[0].is_zero()));
        let x = solve_dense(&a, &[rat(1, 1), rat(2, 1), rat(0, 1)]).unwrap();
        let back = mat_mul(&a, &x.iter().map(|v| vec![v.clone()]).collect::<Vec<_>>());
        assert_eq!(back.iter().map(|r| r[0].clone()).collect::<Vec<_>>(), vec![rat(1, 1), rat(2, 1), rat(0, 1)]);
        assert!(solve_dense(&a, &[rat(1, 1), rat(0, 1), rat(0, 1)]).is_none());
    }

    #[test]
    fn divrem_roundtrip() {
        let a: Vec<BigRational> = [6, -6, 1].iter().map(|&x| rat(x, 1)).collect();
        let sq = poly_mul(&a, &a);
        let (quo, rem) = poly_divrem(&sq, &a);
        assert!(rem.is_empty());
        assert_eq!(quo, a);
    }
}
