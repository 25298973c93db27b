//! Tensor products over the middle algebra, as quotients of the tensor
//! product over the ground field by the balancing relations.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::One;

use super::DgBimodule;
use crate::algebra::{basis_vector, Rat, Vector};
use crate::error::{Error, Result};
use crate::linalg::{axpy, sparse_from_map, Echelon};

/// `X ⊗_A Y` with its quotient presentation.
#[derive(Clone, Debug)]
pub struct TensorModule {
    pub module: DgBimodule,
    x_dim: usize,
    y_dim: usize,
    relations: Echelon<Rat>,
    /// position of each surviving pure tensor index in the quotient basis
    position: HashMap<usize, usize>,
    /// `(i, j)` such that quotient basis element `s` is the class of `x_i ⊗ y_j`
    representatives: Vec<(usize, usize)>,
}

impl TensorModule {
    /// Class of a vector in `X ⊗_k Y` (pure index `i * dim Y + j`).
    pub fn class_of(&self, v: &[(usize, Rat)]) -> Vector {
        let mut out: Vector = self.relations.reduce(v).into_iter().map(|(k, c)| (self.position[&k], c)).collect();
        out.sort_by_key(|(k, _)| *k);
        out
    }

    /// Class of `x ⊗ y`.
    pub fn class_of_pair(&self, x: &[(usize, Rat)], y: &[(usize, Rat)]) -> Vector {
        let mut acc = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                axpy(&mut acc, &(a * b), &[(i * self.y_dim + j, Rat::one())]);
            }
        }
        self.class_of(&sparse_from_map(acc))
    }

    pub fn representatives(&self) -> &[(usize, usize)] {
        &self.representatives
    }

    pub fn x_dim(&self) -> usize {
        self.x_dim
    }
}

/// `X ⊗_A Y` for `X` a `B`-`A` and `Y` an `A`-`C` bimodule, with
/// `d(x ⊗ y) = dx ⊗ y + (-1)^|x| x ⊗ dy`.
pub fn tensor(x: &DgBimodule, y: &DgBimodule) -> Result<TensorModule> {
    if !Arc::ptr_eq(x.right(), y.left()) {
        return Err(Error::InvalidModule("tensor factors disagree on the middle algebra".into()));
    }
    let (nx, ny) = (x.dim(), y.dim());
    let mut relations = Echelon::new(false);
    for a in 0..x.right().dim() {
        let av = basis_vector(a);
        for i in 0..nx {
            let xa = &x.right_action()[a][i];
            for j in 0..ny {
                let mut acc = BTreeMap::new();
                for (k, c) in xa {
                    axpy(&mut acc, c, &[(k * ny + j, Rat::one())]);
                }
                for (l, c) in &y.act_left(&av, &basis_vector(j)) {
                    axpy(&mut acc, &-c, &[(i * ny + l, Rat::one())]);
                }
                let rel = sparse_from_map(acc);
                if !rel.is_empty() {
                    relations.insert(&rel);
                }
            }
        }
    }
    let pivots: std::collections::HashSet<usize> = relations.pivots().collect();
    let representatives: Vec<(usize, usize)> =
        (0..nx * ny).filter(|k| !pivots.contains(k)).map(|k| (k / ny, k % ny)).collect();
    let position: HashMap<usize, usize> =
        representatives.iter().enumerate().map(|(s, &(i, j))| (i * ny + j, s)).collect();
    let mut tm = TensorModule {
        module: DgBimodule::zero(x.left().clone(), y.right().clone()),
        x_dim: nx,
        y_dim: ny,
        relations,
        position,
        representatives,
    };

    let degrees: Vec<i64> = tm.representatives.iter().map(|&(i, j)| x.degree(i) + y.degree(j)).collect();
    let labels: Vec<String> =
        tm.representatives.iter().map(|&(i, j)| format!("{}⊗{}", x.labels()[i], y.labels()[j])).collect();
    let differential: Vec<Vector> = tm
        .representatives
        .iter()
        .map(|&(i, j)| {
            let ei = basis_vector(i);
            let ej = basis_vector(j);
            let first = tm.class_of_pair(&x.d(&ei), &ej);
            let sign = if x.degree(i).rem_euclid(2) == 0 { Rat::one() } else { -Rat::one() };
            let second = tm.class_of_pair(&ei, &y.d(&ej));
            crate::algebra::add(&first, &crate::algebra::scale(&second, &sign))
        })
        .collect();
    let left_action: Vec<Vec<Vector>> = (0..x.left().dim())
        .map(|b| {
            tm.representatives
                .iter()
                .map(|&(i, j)| tm.class_of_pair(&x.left_action()[b][i], &basis_vector(j)))
                .collect()
        })
        .collect();
    let right_action: Vec<Vec<Vector>> = (0..y.right().dim())
        .map(|c| {
            tm.representatives
                .iter()
                .map(|&(i, j)| tm.class_of_pair(&basis_vector(i), &y.right_action()[c][j]))
                .collect()
        })
        .collect();
    tm.module = DgBimodule::new_unchecked(
        x.left().clone(),
        y.right().clone(),
        degrees,
        labels,
        differential,
        left_action,
        right_action,
    );
    Ok(tm)
}
