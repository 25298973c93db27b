//! Hom complexes. Maps of degree `n` are found as the kernel of the linearity
//! constraints inside all degree-`n` linear maps, one degree at a time.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::One;

use super::maps::{compose, flatten, unflatten};
use super::DgBimodule;
use crate::algebra::{scale, sub, FinDimAlgebra, Rat, Vector};
use crate::error::{Error, Result};
use crate::linalg::{kernel_sparse, Echelon};

/// Which actions a map must commute with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Linearity {
    /// right module maps, `f(xa) = f(x)a`
    Right,
    /// left module maps, `f(bx) = b f(x)`
    Left,
    Both,
}

/// A basis of homogeneous maps, stored flattened (see [`super::flatten`]).
#[derive(Clone, Debug)]
pub struct HomSpace {
    source_dim: usize,
    target_dim: usize,
    maps: Vec<Vector>,
    degrees: Vec<i64>,
    echelons: BTreeMap<i64, (Echelon<Rat>, Vec<usize>)>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn map(&self, k: usize) -> &Vector {
        &self.maps[k]
    }

    pub fn columns(&self, k: usize) -> Vec<Vector> {
        unflatten(&self.maps[k], self.source_dim, self.target_dim)
    }

    pub fn degree(&self, k: usize) -> i64 {
        self.degrees[k]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn basis_in_degree(&self, n: i64) -> Vec<usize> {
        self.echelons.get(&n).map(|(_, idx)| idx.clone()).unwrap_or_default()
    }

    /// Coordinates of a homogeneous flattened map of degree `n`, if it lies in the space.
    pub fn coordinates(&self, flat: &[(usize, Rat)], n: i64) -> Option<Vector> {
        if flat.is_empty() {
            return Some(Vec::new());
        }
        let (ech, idx) = self.echelons.get(&n)?;
        let local = ech.express(flat)?;
        let mut out: Vector = local.into_iter().map(|(k, c)| (idx[k], c)).collect();
        out.sort_by_key(|(k, _)| *k);
        Some(out)
    }

    /// Coordinates of a map given by columns; the degree is read off a nonzero entry.
    pub fn coordinates_of_columns(&self, columns: &[Vector], source_degrees: &[i64], target_degrees: &[i64]) -> Option<Vector> {
        let degree = columns.iter().enumerate().find_map(|(j, c)| c.first().map(|(i, _)| target_degrees[*i] - source_degrees[j]));
        match degree {
            None => Some(Vec::new()),
            Some(n) => self.coordinates(&flatten(columns, self.target_dim), n),
        }
    }

    /// The flattened map with the given coordinates.
    pub fn combine(&self, coords: &[(usize, Rat)]) -> Vector {
        let mut acc = BTreeMap::new();
        for (k, c) in coords {
            crate::linalg::axpy(&mut acc, c, &self.maps[*k]);
        }
        crate::linalg::sparse_from_map(acc)
    }
}

// transposed action: for each algebra element a and each basis index i, the
// pairs (j, c) with (m_j . a) having coefficient c at i
fn transpose(actions: &[Vec<Vector>]) -> Vec<Vec<Vec<(usize, Rat)>>> {
    actions
        .iter()
        .map(|cols| {
            let mut rows = vec![Vec::new(); cols.len()];
            for (j, col) in cols.iter().enumerate() {
                for (i, c) in col {
                    rows[*i].push((j, c.clone()));
                }
            }
            rows
        })
        .collect()
}

/// All homogeneous maps `x -> y` commuting with the requested actions.
pub fn hom_space(x: &DgBimodule, y: &DgBimodule, linearity: Linearity) -> Result<HomSpace> {
    let right = matches!(linearity, Linearity::Right | Linearity::Both);
    let left = matches!(linearity, Linearity::Left | Linearity::Both);
    if right && !Arc::ptr_eq(x.right(), y.right()) {
        return Err(Error::InvalidModule("right actions are over different algebras".into()));
    }
    if left && !Arc::ptr_eq(x.left(), y.left()) {
        return Err(Error::InvalidModule("left actions are over different algebras".into()));
    }
    let (sx, ty) = (x.dim(), y.dim());
    let x_right_t = transpose(x.right_action());
    let x_left_t = transpose(x.left_action());
    let block = sx * ty;
    let left_offset = if right { x.right().dim() * block } else { 0 };

    let degrees: BTreeSet<i64> =
        x.degrees().iter().flat_map(|dx| y.degrees().iter().map(move |dy| dy - dx)).collect();
    let mut space = HomSpace { source_dim: sx, target_dim: ty, maps: Vec::new(), degrees: Vec::new(), echelons: BTreeMap::new() };
    for n in degrees {
        let unknowns: Vec<(usize, usize)> = (0..sx)
            .flat_map(|j| (0..ty).map(move |i| (i, j)))
            .filter(|&(i, j)| y.degree(i) == x.degree(j) + n)
            .collect();
        let columns: Vec<Vector> = unknowns
            .iter()
            .map(|&(i, j)| {
                let mut col = BTreeMap::new();
                let mut push = |k: usize, c: &Rat| {
                    crate::linalg::axpy(&mut col, &Rat::one(), &[(k, c.clone())]);
                };
                if right {
                    // f(x_j' a) - f(x_j') a
                    for (a, rows) in x_right_t.iter().enumerate() {
                        for (jp, c) in &rows[j] {
                            push(a * block + jp * ty + i, c);
                        }
                        for (ip, c) in &y.right_action()[a][i] {
                            push(a * block + j * ty + ip, &-c);
                        }
                    }
                }
                if left {
                    // f(b x_j') - b f(x_j')
                    for (b, rows) in x_left_t.iter().enumerate() {
                        for (jp, c) in &rows[j] {
                            push(left_offset + b * block + jp * ty + i, c);
                        }
                        for (ip, c) in &y.left_action()[b][i] {
                            push(left_offset + b * block + j * ty + ip, &-c);
                        }
                    }
                }
                crate::linalg::sparse_from_map(col)
            })
            .collect();
        let kernel = kernel_sparse(&columns);
        if kernel.is_empty() {
            continue;
        }
        let mut ech = Echelon::new(true);
        let mut idx = Vec::new();
        for k in kernel {
            let mut flat: Vector = k.into_iter().map(|(u, c)| (unknowns[u].1 * ty + unknowns[u].0, c)).collect();
            flat.sort_by_key(|(p, _)| *p);
            ech.insert(&flat);
            idx.push(space.maps.len());
            space.maps.push(flat);
            space.degrees.push(n);
        }
        space.echelons.insert(n, (ech, idx));
    }
    Ok(space)
}

/// A Hom complex together with its basis of maps.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: DgBimodule,
    pub space: HomSpace,
}

impl HomModule {
    /// The map represented by an element, as columns.
    pub fn columns_of(&self, v: &[(usize, Rat)]) -> Vec<Vector> {
        unflatten(&self.space.combine(v), self.space.source_dim, self.space.target_dim)
    }

    /// Evaluates the element `v` at the source vector `x`.
    pub fn evaluate(&self, v: &[(usize, Rat)], x: &[(usize, Rat)]) -> Vector {
        super::maps::apply(&self.columns_of(v), x)
    }

    /// Coordinates of a map given by columns.
    pub fn element_of(&self, columns: &[Vector], source: &DgBimodule, target: &DgBimodule) -> Option<Vector> {
        self.space.coordinates_of_columns(columns, source.degrees(), target.degrees())
    }
}

fn express_all(space: &HomSpace, images: impl Fn(usize) -> Vec<Vector>, shift: i64, what: &str) -> Result<Vec<Vector>> {
    (0..space.dim())
        .map(|k| {
            let cols = images(k);
            space
                .coordinates(&flatten(&cols, space.target_dim), space.degree(k) + shift)
                .ok_or_else(|| Error::InvalidModule(format!("{what} leaves the Hom space")))
        })
        .collect()
}

fn differential_columns(x: &DgBimodule, y: &DgBimodule, space: &HomSpace) -> Result<Vec<Vector>> {
    // ∇f = d_Y f - (-1)^n f d_X
    express_all(
        space,
        |k| {
            let f = space.columns(k);
            let dyf = compose(y.differential(), &f);
            let fdx = compose(&f, x.differential());
            let sign = if space.degree(k).rem_euclid(2) == 0 { Rat::one() } else { -Rat::one() };
            dyf.iter().zip(&fdx).map(|(a, b)| sub(a, &scale(b, &sign))).collect()
        },
        1,
        "the differential",
    )
}

fn labels(space: &HomSpace) -> Vec<String> {
    (0..space.dim()).map(|k| format!("f{k}[{}]", space.degree(k))).collect()
}

/// `Hom_{A^op}(X, Y)` for `X` a `B`-`A` and `Y` a `C`-`A` bimodule: a
/// `C`-`B` bimodule with `(c f b)(x) = c f(b x)`.
pub fn hom_right(x: &DgBimodule, y: &DgBimodule) -> Result<HomModule> {
    let space = hom_space(x, y, Linearity::Right)?;
    let differential = differential_columns(x, y, &space)?;
    let left_alg: Arc<FinDimAlgebra> = y.left().clone();
    let right_alg: Arc<FinDimAlgebra> = x.left().clone();
    let left_action = (0..left_alg.dim())
        .map(|c| {
            express_all(&space, |k| compose(&y.left_action()[c], &space.columns(k)), 0, "the left action")
        })
        .collect::<Result<Vec<_>>>()?;
    let right_action = (0..right_alg.dim())
        .map(|b| {
            express_all(&space, |k| compose(&space.columns(k), &x.left_action()[b]), 0, "the right action")
        })
        .collect::<Result<Vec<_>>>()?;
    let module = DgBimodule::new_unchecked(
        left_alg,
        right_alg,
        space.degrees().to_vec(),
        labels(&space),
        differential,
        left_action,
        right_action,
    );
    Ok(HomModule { module, space })
}

/// `Hom_B(X, Z)` for `X` a `B`-`A` and `Z` a `B`-`C` bimodule: an
/// `A`-`C` bimodule with `(a g c)(x) = g(x a) c`.
pub fn hom_left(x: &DgBimodule, z: &DgBimodule) -> Result<HomModule> {
    let space = hom_space(x, z, Linearity::Left)?;
    let differential = differential_columns(x, z, &space)?;
    let left_alg: Arc<FinDimAlgebra> = x.right().clone();
    let right_alg: Arc<FinDimAlgebra> = z.right().clone();
    let left_action = (0..left_alg.dim())
        .map(|a| express_all(&space, |k| compose(&space.columns(k), &x.right_action()[a]), 0, "the left action"))
        .collect::<Result<Vec<_>>>()?;
    let right_action = (0..right_alg.dim())
        .map(|c| express_all(&space, |k| compose(&z.right_action()[c], &space.columns(k)), 0, "the right action"))
        .collect::<Result<Vec<_>>>()?;
    let module = DgBimodule::new_unchecked(
        left_alg,
        right_alg,
        space.degrees().to_vec(),
        labels(&space),
        differential,
        left_action,
        right_action,
    );
    Ok(HomModule { module, space })
}
