//! Differential graded bimodules over finite-dimensional algebras concentrated
//! in degree zero. Everything is stored densely on a fixed homogeneous basis.

mod base_change;
mod casimir;
mod free;
mod hom;
mod maps;
mod tensor;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::algebra::{basis_vector, FinDimAlgebra, Rat, Vector};
use crate::error::{Error, Result};
use crate::linalg::{axpy, rank_sparse, sparse_from_map};

pub use base_change::{base_change_iso, BaseChangeReport};
pub use casimir::{
    adjunction_maps, canonical_alpha, casimir, homotopy_inverse, qdim_bimodule, zorro, AdjunctionMaps,
    BimoduleDimensions, CasimirData, ZorroReport,
};
pub use free::{idempotent_support, DenseFree, FreeBimodule, FreeTerm, Generator};
pub use hom::{hom_left, hom_right, hom_space, HomModule, HomSpace, Linearity};
pub use maps::{apply, compose, flatten, identity_columns, unflatten, BimoduleMap};
pub use tensor::{tensor, TensorModule};

/// A bounded complex of `B`-`A` bimodules, `B` acting on the left.
#[derive(Clone, Debug)]
pub struct DgBimodule {
    left: Arc<FinDimAlgebra>,
    right: Arc<FinDimAlgebra>,
    degrees: Vec<i64>,
    labels: Vec<String>,
    /// column `j` is `d(m_j)`
    differential: Vec<Vector>,
    /// `left_action[b][j] = b_b m_j`
    left_action: Vec<Vec<Vector>>,
    /// `right_action[a][j] = m_j a_a`
    right_action: Vec<Vec<Vector>>,
}

impl DgBimodule {
    pub fn new(
        left: Arc<FinDimAlgebra>,
        right: Arc<FinDimAlgebra>,
        degrees: Vec<i64>,
        labels: Vec<String>,
        differential: Vec<Vector>,
        left_action: Vec<Vec<Vector>>,
        right_action: Vec<Vec<Vector>>,
    ) -> Result<Self> {
        let m = DgBimodule { left, right, degrees, labels, differential, left_action, right_action };
        m.validate()?;
        Ok(m)
    }

    /// Builds without running the checks; callers validate afterwards.
    pub(crate) fn new_unchecked(
        left: Arc<FinDimAlgebra>,
        right: Arc<FinDimAlgebra>,
        degrees: Vec<i64>,
        labels: Vec<String>,
        differential: Vec<Vector>,
        left_action: Vec<Vec<Vector>>,
        right_action: Vec<Vec<Vector>>,
    ) -> Self {
        DgBimodule { left, right, degrees, labels, differential, left_action, right_action }
    }

    /// Checks shapes, `d^2 = 0`, degrees, module axioms, commuting actions and
    /// the Leibniz rule (trivial signs since the algebras sit in degree zero).
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let bad = |msg: String| Err(Error::InvalidModule(msg));
        if self.labels.len() != n || self.differential.len() != n {
            return bad("basis data have inconsistent lengths".into());
        }
        if self.left_action.len() != self.left.dim() || self.right_action.len() != self.right.dim() {
            return bad("one action matrix per algebra basis element required".into());
        }
        if self.left_action.iter().chain(&self.right_action).any(|cols| cols.len() != n) {
            return bad("action matrices have the wrong size".into());
        }
        for (j, col) in self.differential.iter().enumerate() {
            if col.iter().any(|(i, _)| *i >= n || self.degrees[*i] != self.degrees[j] + 1) {
                return bad(format!("d does not raise the degree of {} by one", self.labels[j]));
            }
        }
        for actions in [&self.left_action, &self.right_action] {
            for cols in actions {
                for (j, col) in cols.iter().enumerate() {
                    if col.iter().any(|(i, _)| *i >= n || self.degrees[*i] != self.degrees[j]) {
                        return bad(format!("an action changes the degree of {}", self.labels[j]));
                    }
                }
            }
        }
        for j in 0..n {
            let m = basis_vector(j);
            if !self.d(&self.d(&m)).is_empty() {
                return bad(format!("d^2 is nonzero on {}", self.labels[j]));
            }
            if self.act_left(self.left.unit(), &m) != m || self.act_right(&m, self.right.unit()) != m {
                return bad(format!("the units do not act trivially on {}", self.labels[j]));
            }
            for b in 0..self.left.dim() {
                let bm = self.act_left(&basis_vector(b), &m);
                if self.d(&bm) != self.act_left(&basis_vector(b), &self.d(&m)) {
                    return bad("d does not commute with the left action".into());
                }
                for c in 0..self.left.dim() {
                    let lhs = self.act_left(&basis_vector(c), &bm);
                    let rhs = self.act_left(self.left.basis_mul(c, b), &m);
                    if lhs != rhs {
                        return bad("left action is not associative".into());
                    }
                }
                for a in 0..self.right.dim() {
                    let lhs = self.act_right(&bm, &basis_vector(a));
                    let rhs = self.act_left(&basis_vector(b), &self.act_right(&m, &basis_vector(a)));
                    if lhs != rhs {
                        return bad("left and right actions do not commute".into());
                    }
                }
            }
            for a in 0..self.right.dim() {
                let ma = self.act_right(&m, &basis_vector(a));
                if self.d(&ma) != self.act_right(&self.d(&m), &basis_vector(a)) {
                    return bad("d does not commute with the right action".into());
                }
                for c in 0..self.right.dim() {
                    let lhs = self.act_right(&ma, &basis_vector(c));
                    let rhs = self.act_right(&m, self.right.basis_mul(a, c));
                    if lhs != rhs {
                        return bad("right action is not associative".into());
                    }
                }
            }
        }
        Ok(())
    }

    /// The algebra `A` as an `A`-`A` bimodule in degree zero.
    pub fn regular(alg: &Arc<FinDimAlgebra>) -> Self {
        let n = alg.dim();
        let left_action = (0..n).map(|b| alg.left_mul_columns(&basis_vector(b))).collect();
        let right_action = (0..n).map(|a| alg.right_mul_columns(&basis_vector(a))).collect();
        DgBimodule {
            left: alg.clone(),
            right: alg.clone(),
            degrees: vec![0; n],
            labels: alg.names().to_vec(),
            differential: vec![Vec::new(); n],
            left_action,
            right_action,
        }
    }

    /// The zero bimodule.
    pub fn zero(left: Arc<FinDimAlgebra>, right: Arc<FinDimAlgebra>) -> Self {
        let (nl, nr) = (left.dim(), right.dim());
        DgBimodule {
            left,
            right,
            degrees: Vec::new(),
            labels: Vec::new(),
            differential: Vec::new(),
            left_action: vec![Vec::new(); nl],
            right_action: vec![Vec::new(); nr],
        }
    }

    /// `A_sigma`: underlying `A`, left action twisted by `sigma`, `b.x = sigma(b) x`.
    pub fn twisted(alg: &Arc<FinDimAlgebra>, sigma: &crate::algebra::AlgebraMap) -> Self {
        let mut m = Self::regular(alg);
        m.left_action = (0..alg.dim()).map(|b| alg.left_mul_columns(sigma.image(b))).collect();
        m.labels = alg.names().iter().map(|s| format!("{s}'")).collect();
        m
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn left(&self) -> &Arc<FinDimAlgebra> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FinDimAlgebra> {
        &self.right
    }

    pub fn degree(&self, j: usize) -> i64 {
        self.degrees[j]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn differential(&self) -> &[Vector] {
        &self.differential
    }

    pub fn left_action(&self) -> &[Vec<Vector>] {
        &self.left_action
    }

    pub fn right_action(&self) -> &[Vec<Vector>] {
        &self.right_action
    }

    pub fn d(&self, v: &[(usize, Rat)]) -> Vector {
        apply(&self.differential, v)
    }

    pub fn act_left(&self, b: &[(usize, Rat)], v: &[(usize, Rat)]) -> Vector {
        let mut acc = BTreeMap::new();
        for (k, c) in b {
            for (j, x) in v {
                axpy(&mut acc, &(c * x), &self.left_action[*k][*j]);
            }
        }
        sparse_from_map(acc)
    }

    pub fn act_right(&self, v: &[(usize, Rat)], a: &[(usize, Rat)]) -> Vector {
        let mut acc = BTreeMap::new();
        for (k, c) in a {
            for (j, x) in v {
                axpy(&mut acc, &(c * x), &self.right_action[*k][*j]);
            }
        }
        sparse_from_map(acc)
    }

    /// Basis indices sitting in degree `n`.
    pub fn basis_in_degree(&self, n: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&j| self.degrees[j] == n).collect()
    }

    /// Degrees carrying a nonzero component, with their dimensions.
    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &g in &self.degrees {
            *out.entry(g).or_insert(0) += 1;
        }
        out
    }

    /// Dimensions of cohomology, omitting zeros.
    pub fn cohomology(&self) -> BTreeMap<i64, usize> {
        let dims = self.graded_dims();
        let rank_out = |n: i64| rank_sparse(&self.basis_in_degree(n).iter().map(|&j| self.differential[j].clone()).collect::<Vec<_>>());
        dims.iter()
            .map(|(&n, &dim)| (n, dim - rank_out(n) - rank_out(n - 1)))
            .filter(|(_, h)| *h > 0)
            .collect()
    }

    /// `M[k]`: degrees lowered by `k`, differential times `(-1)^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut m = self.clone();
        m.degrees = self.degrees.iter().map(|g| g - k).collect();
        if k.rem_euclid(2) == 1 {
            m.differential = self.differential.iter().map(|c| crate::algebra::scale(c, &-Rat::one())).collect();
        }
        m
    }

    /// Direct sum, basis of `self` first.
    pub fn direct_sum(&self, other: &DgBimodule) -> Result<Self> {
        if !Arc::ptr_eq(&self.left, &other.left) || !Arc::ptr_eq(&self.right, &other.right) {
            return Err(Error::InvalidModule("direct sum of bimodules over different algebras".into()));
        }
        let off = self.dim();
        let shift_vec = |v: &Vector| v.iter().map(|(i, c)| (i + off, c.clone())).collect::<Vector>();
        let join = |a: &[Vector], b: &[Vector]| a.iter().cloned().chain(b.iter().map(shift_vec)).collect::<Vec<_>>();
        Ok(DgBimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            degrees: self.degrees.iter().chain(&other.degrees).copied().collect(),
            labels: self.labels.iter().cloned().chain(other.labels.iter().map(|l| format!("{l}#2"))).collect(),
            differential: join(&self.differential, &other.differential),
            left_action: self.left_action.iter().zip(&other.left_action).map(|(a, b)| join(a, b)).collect(),
            right_action: self.right_action.iter().zip(&other.right_action).map(|(a, b)| join(a, b)).collect(),
        })
    }

    /// Restriction of the right action along `phi: source -> right()`.
    pub fn restrict_right(&self, source: &Arc<FinDimAlgebra>, phi: &crate::algebra::AlgebraMap) -> Self {
        let mut m = self.clone();
        m.right = source.clone();
        m.right_action = (0..source.dim()).map(|a| self.action_columns(phi.image(a), false)).collect();
        m
    }

    /// Restriction of the left action along `psi: source -> left()`.
    pub fn restrict_left(&self, source: &Arc<FinDimAlgebra>, psi: &crate::algebra::AlgebraMap) -> Self {
        let mut m = self.clone();
        m.left = source.clone();
        m.left_action = (0..source.dim()).map(|b| self.action_columns(psi.image(b), true)).collect();
        m
    }

    fn action_columns(&self, elt: &[(usize, Rat)], on_left: bool) -> Vec<Vector> {
        (0..self.dim())
            .map(|j| {
                let m = basis_vector(j);
                if on_left {
                    self.act_left(elt, &m)
                } else {
                    self.act_right(&m, elt)
                }
            })
            .collect()
    }

    pub fn format_vector(&self, v: &[(usize, Rat)]) -> String {
        if v.is_empty() {
            return "0".into();
        }
        v.iter()
            .map(|(i, c)| if c.is_one() { self.labels[*i].clone() } else { format!("{c}*({})", self.labels[*i]) })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for DgBimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims = self.graded_dims().into_iter().map(|(g, d)| format!("{g}:{d}")).collect::<Vec<_>>().join(" ");
        write!(f, "dg bimodule of total dimension {} [{dims}]", self.dim())
    }
}
