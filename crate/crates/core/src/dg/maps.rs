//! Linear maps stored as sparse columns, and bimodule maps between dg bimodules.

use std::collections::BTreeMap;

use num_traits::One;

use super::hom::{hom_space, Linearity};
use super::DgBimodule;
use crate::algebra::{basis_vector, scale, sub, Rat, Vector};
use crate::error::{Error, Result};
use crate::linalg::{axpy, solve_sparse, sparse_from_map};

/// Applies the map with the given columns to `v`.
pub fn apply(columns: &[Vector], v: &[(usize, Rat)]) -> Vector {
    let mut acc = BTreeMap::new();
    for (j, c) in v {
        axpy(&mut acc, c, &columns[*j]);
    }
    sparse_from_map(acc)
}

/// Columns of `outer ∘ inner`.
pub fn compose(outer: &[Vector], inner: &[Vector]) -> Vec<Vector> {
    inner.iter().map(|col| apply(outer, col)).collect()
}

pub fn identity_columns(n: usize) -> Vec<Vector> {
    (0..n).map(basis_vector).collect()
}

/// Entry `(i, j)` of a map into a space of dimension `target_dim` sits at `j * target_dim + i`.
pub fn flatten(columns: &[Vector], target_dim: usize) -> Vector {
    columns.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |(i, c)| (j * target_dim + i, c.clone()))).collect()
}

pub fn unflatten(flat: &[(usize, Rat)], source_dim: usize, target_dim: usize) -> Vec<Vector> {
    let mut cols = vec![Vec::new(); source_dim];
    for (k, c) in flat {
        cols[k / target_dim].push((k % target_dim, c.clone()));
    }
    cols
}

/// A homogeneous linear map between two dg bimodules over the same algebras.
#[derive(Clone, Debug, PartialEq)]
pub struct BimoduleMap {
    pub degree: i64,
    pub columns: Vec<Vector>,
}

impl BimoduleMap {
    pub fn new(degree: i64, columns: Vec<Vector>) -> Self {
        BimoduleMap { degree, columns }
    }

    pub fn identity(m: &DgBimodule) -> Self {
        BimoduleMap { degree: 0, columns: identity_columns(m.dim()) }
    }

    pub fn apply(&self, v: &[(usize, Rat)]) -> Vector {
        apply(&self.columns, v)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn sub(&self, other: &BimoduleMap) -> BimoduleMap {
        BimoduleMap { degree: self.degree, columns: self.columns.iter().zip(&other.columns).map(|(a, b)| sub(a, b)).collect() }
    }

    /// `self ∘ inner`
    pub fn after(&self, inner: &BimoduleMap) -> BimoduleMap {
        BimoduleMap { degree: self.degree + inner.degree, columns: compose(&self.columns, &inner.columns) }
    }

    /// Checks degree, compatibility with both actions and, for degree zero,
    /// with the differentials.
    pub fn check(&self, source: &DgBimodule, target: &DgBimodule) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidModule(format!("not a bimodule map: {msg}")));
        if self.columns.len() != source.dim() {
            return bad("wrong number of columns");
        }
        for (j, col) in self.columns.iter().enumerate() {
            if col.iter().any(|(i, _)| *i >= target.dim() || target.degree(*i) != source.degree(j) + self.degree) {
                return bad("inhomogeneous");
            }
            let m = basis_vector(j);
            for b in 0..source.left().dim() {
                let bv = basis_vector(b);
                if self.apply(&source.act_left(&bv, &m)) != target.act_left(&bv, col) {
                    return bad("left action");
                }
            }
            for a in 0..source.right().dim() {
                let av = basis_vector(a);
                if self.apply(&source.act_right(&m, &av)) != target.act_right(col, &av) {
                    return bad("right action");
                }
            }
            // d f - (-1)^|f| f d
            let sign = if self.degree.rem_euclid(2) == 0 { Rat::one() } else { -Rat::one() };
            let lhs = target.d(col);
            let rhs = scale(&self.apply(&source.d(&m)), &sign);
            if lhs != rhs {
                return bad("differential");
            }
        }
        Ok(())
    }

    /// For a degree-zero map, a degree `-1` bimodule map `h` with
    /// `self = d h + h d`, if one exists.
    pub fn null_homotopy(&self, source: &DgBimodule, target: &DgBimodule) -> Result<Option<BimoduleMap>> {
        if self.degree != 0 {
            return Err(Error::Unsupported("null homotopies are searched for degree-zero maps only".into()));
        }
        if self.is_zero() {
            return Ok(Some(BimoduleMap::new(-1, vec![Vec::new(); source.dim()])));
        }
        let space = hom_space(source, target, Linearity::Both)?;
        let candidates = space.basis_in_degree(-1);
        let tdim = target.dim();
        let columns: Vec<Vector> = candidates
            .iter()
            .map(|&k| {
                let h = unflatten(space.map(k), source.dim(), tdim);
                let dh = compose(target.differential(), &h);
                let hd = compose(&h, source.differential());
                flatten(&dh.iter().zip(&hd).map(|(x, y)| crate::algebra::add(x, y)).collect::<Vec<_>>(), tdim)
            })
            .collect();
        let Some(sol) = solve_sparse(&columns, &flatten(&self.columns, tdim)) else {
            return Ok(None);
        };
        let mut flat = BTreeMap::new();
        for (k, c) in sol {
            axpy(&mut flat, &c, space.map(candidates[k]));
        }
        Ok(Some(BimoduleMap::new(-1, unflatten(&sparse_from_map(flat), source.dim(), tdim))))
    }
}
