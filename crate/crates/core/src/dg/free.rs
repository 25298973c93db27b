//! Complexes of free bimodules presented by generators. A generator of type
//! `(i, j)` spans `B e_i ⊗ e_j A`, with basis `x g y` for basis elements
//! `x = x e_i` and `y = e_j y`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use super::DgBimodule;
use crate::algebra::{basis_vector, FinDimAlgebra, Rat, Vector};
use crate::error::{Error, Result};
use crate::linalg::{axpy, sparse_from_map};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// index into the left algebra's idempotents
    pub left_idempotent: usize,
    /// index into the right algebra's idempotents
    pub right_idempotent: usize,
    pub degree: i64,
}

/// `coef * x g y` with `x`, `y` basis elements.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeTerm {
    pub coef: Rat,
    pub left: usize,
    pub generator: usize,
    pub right: usize,
}

#[derive(Clone, Debug)]
pub struct FreeBimodule {
    left: Arc<FinDimAlgebra>,
    right: Arc<FinDimAlgebra>,
    generators: Vec<Generator>,
    differential: Vec<Vec<FreeTerm>>,
}

/// Basis indices `k` with `b_k e = b_k` (on the right when `right`), after
/// checking that every `b_k e` is either `b_k` or zero.
pub fn idempotent_support(alg: &FinDimAlgebra, e: &[(usize, Rat)], right: bool) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for k in 0..alg.dim() {
        let b = basis_vector(k);
        let prod = if right { alg.mul(&b, e) } else { alg.mul(e, &b) };
        if prod == b {
            out.push(k);
        } else if !prod.is_empty() {
            return Err(Error::InvalidModule("the basis is not adapted to the idempotents".into()));
        }
    }
    Ok(out)
}

impl FreeBimodule {
    pub fn new(
        left: Arc<FinDimAlgebra>,
        right: Arc<FinDimAlgebra>,
        generators: Vec<Generator>,
        differential: Vec<Vec<FreeTerm>>,
    ) -> Result<Self> {
        if differential.len() != generators.len() {
            return Err(Error::InvalidModule("one differential per generator required".into()));
        }
        for g in &generators {
            if g.left_idempotent >= left.idempotents().len() || g.right_idempotent >= right.idempotents().len() {
                return Err(Error::InvalidModule(format!("generator {} uses an unknown idempotent", g.name)));
            }
        }
        for terms in &differential {
            for t in terms {
                if t.generator >= generators.len() || t.left >= left.dim() || t.right >= right.dim() {
                    return Err(Error::InvalidModule("differential term out of range".into()));
                }
            }
        }
        Ok(FreeBimodule { left, right, generators, differential })
    }

    pub fn left(&self) -> &Arc<FinDimAlgebra> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FinDimAlgebra> {
        &self.right
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn differential(&self) -> &[Vec<FreeTerm>] {
        &self.differential
    }

    /// Dense model on the basis `x g y`, validated.
    pub fn to_dense(&self) -> Result<DenseFree> {
        let mut basis: Vec<(usize, usize, usize)> = Vec::new();
        let mut index: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
        for (g, gen) in self.generators.iter().enumerate() {
            let xs = idempotent_support(&self.left, &self.left.idempotents()[gen.left_idempotent], true)?;
            let ys = idempotent_support(&self.right, &self.right.idempotents()[gen.right_idempotent], false)?;
            for &x in &xs {
                for &y in &ys {
                    index.insert((x, g, y), basis.len());
                    basis.push((x, g, y));
                }
            }
        }
        let element = |x: &Vector, g: usize, y: &Vector| -> Result<Vector> {
            let mut acc = BTreeMap::new();
            for (i, a) in x {
                for (j, b) in y {
                    let Some(&k) = index.get(&(*i, g, *j)) else {
                        return Err(Error::InvalidModule(format!(
                            "{} {} {} is not in the span of the generator",
                            self.left.names()[*i],
                            self.generators[g].name,
                            self.right.names()[*j]
                        )));
                    };
                    axpy(&mut acc, &(a * b), &[(k, Rat::one())]);
                }
            }
            Ok(sparse_from_map(acc))
        };
        let degrees = basis.iter().map(|&(_, g, _)| self.generators[g].degree).collect();
        let labels = basis
            .iter()
            .map(|&(x, g, y)| format!("{} {} {}", self.left.names()[x], self.generators[g].name, self.right.names()[y]))
            .collect();
        let mut differential = Vec::with_capacity(basis.len());
        for &(x, g, y) in &basis {
            let mut acc = BTreeMap::new();
            for t in &self.differential[g] {
                let xl = self.left.mul(&basis_vector(x), &basis_vector(t.left));
                let ry = self.right.mul(&basis_vector(t.right), &basis_vector(y));
                if xl.is_empty() || ry.is_empty() {
                    continue;
                }
                axpy(&mut acc, &t.coef, &element(&xl, t.generator, &ry)?);
            }
            differential.push(sparse_from_map(acc));
        }
        let left_action = (0..self.left.dim())
            .map(|b| {
                basis
                    .iter()
                    .map(|&(x, g, y)| element(&self.left.mul(&basis_vector(b), &basis_vector(x)), g, &basis_vector(y)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let right_action = (0..self.right.dim())
            .map(|a| {
                basis
                    .iter()
                    .map(|&(x, g, y)| element(&basis_vector(x), g, &self.right.mul(&basis_vector(y), &basis_vector(a))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let module = DgBimodule::new(
            self.left.clone(),
            self.right.clone(),
            degrees,
            labels,
            differential,
            left_action,
            right_action,
        )?;
        Ok(DenseFree { module, basis, index })
    }
}

/// A free bimodule with its dense model and the basis bookkeeping.
#[derive(Clone, Debug)]
pub struct DenseFree {
    pub module: DgBimodule,
    /// `(x, generator, y)` per dense basis element
    pub basis: Vec<(usize, usize, usize)>,
    pub index: BTreeMap<(usize, usize, usize), usize>,
}
