//! Finite-dimensional algebras over the rationals given by structure constants,
//! concentrated in degree zero.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{axpy, rank_sparse, sparse_from_map, SparseVec};

pub type Rat = BigRational;
pub type Vector = SparseVec<Rat>;

/// Basis vector `e_i` as a sparse vector.
pub fn basis_vector(i: usize) -> Vector {
    vec![(i, Rat::one())]
}

pub fn scale(v: &[(usize, Rat)], c: &Rat) -> Vector {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

pub fn add(a: &[(usize, Rat)], b: &[(usize, Rat)]) -> Vector {
    let mut acc: BTreeMap<usize, Rat> = a.iter().cloned().collect();
    axpy(&mut acc, &Rat::one(), b);
    sparse_from_map(acc)
}

pub fn sub(a: &[(usize, Rat)], b: &[(usize, Rat)]) -> Vector {
    let mut acc: BTreeMap<usize, Rat> = a.iter().cloned().collect();
    axpy(&mut acc, &-Rat::one(), b);
    sparse_from_map(acc)
}

/// Associative unital algebra with a fixed basis.
#[derive(Clone, Debug)]
pub struct FinDimAlgebra {
    names: Vec<String>,
    /// `table[i][j] = b_i * b_j`
    table: Vec<Vec<Vector>>,
    unit: Vector,
    idempotents: Vec<Vector>,
}

impl FinDimAlgebra {
    /// Validates associativity, unitality and orthogonality of the idempotents.
    pub fn new(names: Vec<String>, table: Vec<Vec<Vector>>, unit: Vector, idempotents: Vec<Vector>) -> Result<Self> {
        let n = names.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidModule("structure constant table has the wrong shape".into()));
        }
        let alg = FinDimAlgebra { names, table, unit, idempotents };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            let bi = basis_vector(i);
            if self.mul(&self.unit, &bi) != bi || self.mul(&bi, &self.unit) != bi {
                return Err(Error::InvalidModule(format!("unit fails on {}", self.names[i])));
            }
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.mul(&self.table[i][j], &basis_vector(k));
                    let rhs = self.mul(&bi, &self.table[j][k]);
                    if lhs != rhs {
                        return Err(Error::InvalidModule(format!(
                            "not associative on ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
            }
        }
        for (a, e) in self.idempotents.iter().enumerate() {
            for (b, f) in self.idempotents.iter().enumerate() {
                let prod = self.mul(e, f);
                let expected = if a == b { e.clone() } else { Vec::new() };
                if prod != expected {
                    return Err(Error::InvalidModule("idempotents are not orthogonal".into()));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Vector] {
        &self.idempotents
    }

    /// Whether the declared idempotents sum to the unit.
    pub fn idempotents_complete(&self) -> bool {
        let sum = self.idempotents.iter().fold(Vec::new(), |acc, e| add(&acc, e));
        sum == self.unit
    }

    pub fn basis_mul(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn mul(&self, a: &[(usize, Rat)], b: &[(usize, Rat)]) -> Vector {
        let mut acc = BTreeMap::new();
        for (i, x) in a {
            for (j, y) in b {
                axpy(&mut acc, &x.mul_ref(y), &self.table[*i][*j]);
            }
        }
        sparse_from_map(acc)
    }

    /// Matrix (as columns) of left multiplication by `a`.
    pub fn left_mul_columns(&self, a: &[(usize, Rat)]) -> Vec<Vector> {
        (0..self.dim()).map(|j| self.mul(a, &basis_vector(j))).collect()
    }

    /// Matrix (as columns) of right multiplication by `a`.
    pub fn right_mul_columns(&self, a: &[(usize, Rat)]) -> Vec<Vector> {
        (0..self.dim()).map(|j| self.mul(&basis_vector(j), a)).collect()
    }

    /// Whether `z` commutes with every basis element.
    pub fn is_central(&self, z: &[(usize, Rat)]) -> bool {
        (0..self.dim()).all(|i| {
            let b = basis_vector(i);
            self.mul(z, &b) == self.mul(&b, z)
        })
    }

    /// Dimension of `e A f` for idempotent vectors `e`, `f`.
    pub fn corner_dim(&self, e: &[(usize, Rat)], f: &[(usize, Rat)]) -> usize {
        let images: Vec<Vector> = (0..self.dim()).map(|i| self.mul(&self.mul(e, &basis_vector(i)), f)).collect();
        rank_sparse(&images)
    }

    pub fn format_vector(&self, v: &[(usize, Rat)]) -> String {
        if v.is_empty() {
            return "0".into();
        }
        v.iter()
            .map(|(i, c)| if c.is_one() { self.names[*i].clone() } else { format!("{c}*{}", self.names[*i]) })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for FinDimAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "algebra of dimension {} with basis [{}]", self.dim(), self.names.join(", "))
    }
}

/// Linear map between algebras given on basis elements.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    images: Vec<Vector>,
}

impl AlgebraMap {
    /// Checks unitality and multiplicativity on all basis pairs.
    pub fn new(source: &FinDimAlgebra, target: &FinDimAlgebra, images: Vec<Vector>) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::NotAlgebraMap("one image per basis element required".into()));
        }
        let map = AlgebraMap { images };
        if map.apply(source.unit()) != *target.unit() {
            return Err(Error::NotAlgebraMap("the unit is not sent to the unit".into()));
        }
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                let lhs = map.apply(source.basis_mul(i, j));
                let rhs = target.mul(&map.images[i], &map.images[j]);
                if lhs != rhs {
                    return Err(Error::NotAlgebraMap(format!(
                        "not multiplicative on ({}, {})",
                        source.names()[i],
                        source.names()[j]
                    )));
                }
            }
        }
        Ok(map)
    }

    pub fn identity(alg: &FinDimAlgebra) -> Self {
        AlgebraMap { images: (0..alg.dim()).map(basis_vector).collect() }
    }

    pub fn image(&self, i: usize) -> &Vector {
        &self.images[i]
    }

    pub fn apply(&self, v: &[(usize, Rat)]) -> Vector {
        let mut acc = BTreeMap::new();
        for (i, c) in v {
            axpy(&mut acc, c, &self.images[*i]);
        }
        sparse_from_map(acc)
    }
}

/// The semisimple algebra `k^n` with its primitive idempotents.
pub fn semisimple(n: usize) -> FinDimAlgebra {
    let names = (1..=n).map(|i| format!("e{i}")).collect();
    let table = (0..n).map(|i| (0..n).map(|j| if i == j { basis_vector(i) } else { Vec::new() }).collect()).collect();
    let unit = (0..n).map(|i| (i, Rat::one())).collect();
    let idempotents = (0..n).map(basis_vector).collect();
    FinDimAlgebra::new(names, table, unit, idempotents).expect("k^n is a valid algebra")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semisimple_is_valid() {
        let k3 = semisimple(3);
        assert_eq!(k3.dim(), 3);
        assert!(k3.idempotents_complete());
        assert!(k3.is_central(&basis_vector(1)));
    }

    #[test]
    fn non_unital_map_rejected() {
        let k1 = semisimple(1);
        let k2 = semisimple(2);
        let err = AlgebraMap::new(&k1, &k2, vec![basis_vector(0)]).unwrap_err();
        assert!(matches!(err, Error::NotAlgebraMap(_)));
        assert!(AlgebraMap::new(&k1, &k2, vec![vec![(0, Rat::one()), (1, Rat::one())]]).is_ok());
    }

    #[test]
    fn bad_table_rejected() {
        // b0 * b0 = b0 + b0 breaks the unit
        let table = vec![vec![vec![(0, Rat::from_int(2))]]];
        assert!(FinDimAlgebra::new(vec!["u".into()], table, basis_vector(0), vec![]).is_err());
    }
}
