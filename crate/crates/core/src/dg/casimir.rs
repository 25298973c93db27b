//! Casimir elements, evaluation and coevaluation maps, Zorro checks and
//! quantum dimensions of bimodules that are finitely generated projective on
//! each side.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::hom::{hom_left, hom_right, hom_space, HomModule, Linearity};
use super::maps::{compose, flatten, identity_columns, unflatten, BimoduleMap};
use super::tensor::{tensor, TensorModule};
use super::DgBimodule;
use crate::algebra::{add, basis_vector, scale, sub, FinDimAlgebra, Rat, Vector};
use crate::error::{Error, Result};
use crate::linalg::{axpy, solve_sparse, sparse_from_map, Echelon};

fn sign(parity: i64) -> Rat {
    if parity.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// The dual families of a `B`-`A` bimodule `P`.
#[derive(Clone, Debug)]
pub struct CasimirData {
    pub bimodule: DgBimodule,
    /// `†P = Hom_{A^op}(P, A)`
    pub dual: HomModule,
    /// `P† = Hom_B(P, B)`
    pub codual: HomModule,
    /// `P ⊗_A †P`
    pub left_tensor: TensorModule,
    /// `P† ⊗_B P`
    pub right_tensor: TensorModule,
    pub left_element: Vector,
    pub right_element: Vector,
    /// `Σ coef x ⊗ †x` as `(coef, basis index in P, basis index in †P)`
    pub left_family: Vec<(Rat, usize, usize)>,
    /// `Σ coef y† ⊗ y` as `(coef, basis index in P†, basis index in P)`
    pub right_family: Vec<(Rat, usize, usize)>,
    pub regular_left: DgBimodule,
    pub regular_right: DgBimodule,
}

// ν(p ⊗ f)(p') = p f(p')
fn nu(p: &DgBimodule, dual: &HomModule, i: usize, f: usize) -> Vec<Vector> {
    dual.space.columns(f).iter().map(|fp| p.act_right(&basis_vector(i), fp)).collect()
}

// ν̃(g ⊗ p)(p') = (-1)^{|p'||p|} g(p') p
fn nu_tilde(p: &DgBimodule, codual: &HomModule, g: usize, i: usize) -> Vec<Vector> {
    codual
        .space
        .columns(g)
        .iter()
        .enumerate()
        .map(|(j, gp)| scale(&p.act_left(gp, &basis_vector(i)), &sign(p.degree(j) * p.degree(i))))
        .collect()
}

fn solve_identity(
    tensor: &TensorModule,
    dim: usize,
    map_of: impl Fn(usize, usize) -> Vec<Vector>,
    side: &str,
) -> Result<Vector> {
    let candidates: Vec<usize> = (0..tensor.module.dim()).filter(|&s| tensor.module.degree(s) == 0).collect();
    let columns: Vec<Vector> = candidates
        .iter()
        .map(|&s| {
            let (a, b) = tensor.representatives()[s];
            flatten(&map_of(a, b), dim)
        })
        .collect();
    let target = flatten(&identity_columns(dim), dim);
    let sol = solve_sparse(&columns, &target).ok_or_else(|| {
        Error::NotProjective(format!("the identity is not in the image of the {side} Casimir map"))
    })?;
    let mut out: Vector = sol.into_iter().map(|(k, c)| (candidates[k], c)).collect();
    out.sort_by_key(|(k, _)| *k);
    Ok(out)
}

/// Solves `ν_P(c) = 1_P` and `ν̃_P(c̃) = 1_P`.
pub fn casimir(p: &DgBimodule) -> Result<CasimirData> {
    let regular_left = DgBimodule::regular(p.left());
    let regular_right = DgBimodule::regular(p.right());
    let dual = hom_right(p, &regular_right)?;
    let codual = hom_left(p, &regular_left)?;
    let left_tensor = tensor(p, &dual.module)?;
    let right_tensor = tensor(&codual.module, p)?;
    let n = p.dim();
    let left_element = solve_identity(&left_tensor, n, |i, f| nu(p, &dual, i, f), "left")?;
    let right_element = solve_identity(&right_tensor, n, |g, i| nu_tilde(p, &codual, g, i), "right")?;
    let left_family = left_element
        .iter()
        .map(|(s, c)| {
            let (i, f) = left_tensor.representatives()[*s];
            (c.clone(), i, f)
        })
        .collect();
    let right_family = right_element
        .iter()
        .map(|(s, c)| {
            let (g, i) = right_tensor.representatives()[*s];
            (c.clone(), g, i)
        })
        .collect();
    let data = CasimirData {
        bimodule: p.clone(),
        dual,
        codual,
        left_tensor,
        right_tensor,
        left_element,
        right_element,
        left_family,
        right_family,
        regular_left,
        regular_right,
    };
    data.verify()?;
    Ok(data)
}

impl CasimirData {
    /// Re-evaluates `p = Σ x †x(p)` and `p = Σ ± y†(p) y` on every basis
    /// element and checks that both Casimir elements are closed.
    pub fn verify(&self) -> Result<()> {
        let p = &self.bimodule;
        for j in 0..p.dim() {
            let pj = basis_vector(j);
            let mut left = BTreeMap::new();
            for (c, i, f) in &self.left_family {
                let a = self.dual.evaluate(&basis_vector(*f), &pj);
                axpy(&mut left, c, &p.act_right(&basis_vector(*i), &a));
            }
            let mut right = BTreeMap::new();
            for (c, g, i) in &self.right_family {
                let b = self.codual.evaluate(&basis_vector(*g), &pj);
                axpy(&mut right, &(c * sign(p.degree(j) * p.degree(*i))), &p.act_left(&b, &basis_vector(*i)));
            }
            if sparse_from_map(left) != pj || sparse_from_map(right) != pj {
                return Err(Error::NotProjective(format!("Casimir round trip fails on {}", p.labels()[j])));
            }
        }
        if !self.left_tensor.module.d(&self.left_element).is_empty()
            || !self.right_tensor.module.d(&self.right_element).is_empty()
        {
            return Err(Error::NotProjective("Casimir element is not closed".into()));
        }
        Ok(())
    }
}

/// `ε: †P ⊗_B P -> A`, `η: B -> P ⊗_A †P`, `ε̃: P ⊗_A P† -> B`, `η̃: A -> P† ⊗_B P`.
#[derive(Clone, Debug)]
pub struct AdjunctionMaps {
    pub ev_source: TensorModule,
    pub coev_tilde_source: TensorModule,
    pub ev: BimoduleMap,
    pub coev: BimoduleMap,
    pub ev_tilde: BimoduleMap,
    pub coev_tilde: BimoduleMap,
}

/// Builds the four maps as matrices and checks each is a bimodule chain map.
pub fn adjunction_maps(cas: &CasimirData) -> Result<AdjunctionMaps> {
    let p = &cas.bimodule;
    let ev_source = tensor(&cas.dual.module, p)?;
    let ev = BimoduleMap::new(
        0,
        ev_source.representatives().iter().map(|&(f, i)| cas.dual.evaluate(&basis_vector(f), &basis_vector(i))).collect(),
    );
    ev.check(&ev_source.module, &cas.regular_right)?;

    let coev = BimoduleMap::new(
        0,
        (0..p.left().dim())
            .map(|b| cas.left_tensor.module.act_right(&cas.left_element, &basis_vector(b)))
            .collect(),
    );
    coev.check(&cas.regular_left, &cas.left_tensor.module)?;

    let ev_tilde_source = tensor(p, &cas.codual.module)?;
    let ev_tilde = BimoduleMap::new(
        0,
        ev_tilde_source
            .representatives()
            .iter()
            .map(|&(i, g)| {
                let value = cas.codual.evaluate(&basis_vector(g), &basis_vector(i));
                scale(&value, &sign(p.degree(i) * cas.codual.module.degree(g)))
            })
            .collect(),
    );
    ev_tilde.check(&ev_tilde_source.module, &cas.regular_left)?;

    let coev_tilde = BimoduleMap::new(
        0,
        (0..p.right().dim())
            .map(|a| cas.right_tensor.module.act_right(&cas.right_element, &basis_vector(a)))
            .collect(),
    );
    coev_tilde.check(&cas.regular_right, &cas.right_tensor.module)?;

    Ok(AdjunctionMaps { ev_source, coev_tilde_source: ev_tilde_source, ev, coev, ev_tilde, coev_tilde })
}

/// Outcome of the four Zorro checks, in the order `P`, `†P` (for `ε, η`)
/// then `P`, `P†` (for `ε̃, η̃`).
#[derive(Clone, Debug)]
pub struct ZorroReport {
    pub on_the_nose: [bool; 4],
    /// null homotopies of `composite - 1`
    pub witnesses: [BimoduleMap; 4],
}

fn witness(composite: Vec<Vector>, m: &DgBimodule, what: &str) -> Result<(bool, BimoduleMap)> {
    let diff = BimoduleMap::new(0, composite).sub(&BimoduleMap::identity(m));
    let exact = diff.is_zero();
    match diff.null_homotopy(m, m)? {
        Some(h) => Ok((exact, h)),
        None => Err(Error::NotAmbidextrous(format!("Zorro move fails for {what}"))),
    }
}

/// Evaluates the four snake composites and finds homotopy witnesses.
pub fn zorro(cas: &CasimirData, maps: &AdjunctionMaps) -> Result<ZorroReport> {
    let p = &cas.bimodule;
    let n = p.dim();
    let dual = &cas.dual.module;
    let codual = &cas.codual.module;

    // p -> Σ x ε(†x ⊗ p)
    let z1: Vec<Vector> = (0..n)
        .map(|j| {
            let mut acc = BTreeMap::new();
            for (c, i, f) in &cas.left_family {
                let a = maps.ev.apply(&maps.ev_source.class_of_pair(&basis_vector(*f), &basis_vector(j)));
                axpy(&mut acc, c, &p.act_right(&basis_vector(*i), &a));
            }
            sparse_from_map(acc)
        })
        .collect();
    // f -> Σ ε(f ⊗ x) †x
    let z2: Vec<Vector> = (0..dual.dim())
        .map(|f| {
            let mut acc = BTreeMap::new();
            for (c, i, g) in &cas.left_family {
                let a = maps.ev.apply(&maps.ev_source.class_of_pair(&basis_vector(f), &basis_vector(*i)));
                axpy(&mut acc, c, &dual.act_left(&a, &basis_vector(*g)));
            }
            sparse_from_map(acc)
        })
        .collect();
    // p -> Σ ε̃(p ⊗ y†) y
    let z3: Vec<Vector> = (0..n)
        .map(|j| {
            let mut acc = BTreeMap::new();
            for (c, g, i) in &cas.right_family {
                let b = maps.ev_tilde.apply(&maps.coev_tilde_source.class_of_pair(&basis_vector(j), &basis_vector(*g)));
                axpy(&mut acc, c, &p.act_left(&b, &basis_vector(*i)));
            }
            sparse_from_map(acc)
        })
        .collect();
    // g -> Σ y† ε̃(y ⊗ g)
    let z4: Vec<Vector> = (0..codual.dim())
        .map(|g| {
            let mut acc = BTreeMap::new();
            for (c, h, i) in &cas.right_family {
                let b = maps.ev_tilde.apply(&maps.coev_tilde_source.class_of_pair(&basis_vector(*i), &basis_vector(g)));
                axpy(&mut acc, c, &codual.act_right(&basis_vector(*h), &b));
            }
            sparse_from_map(acc)
        })
        .collect();

    let (e1, w1) = witness(z1, p, "P (left adjunction)")?;
    let (e2, w2) = witness(z2, dual, "the left dual")?;
    let (e3, w3) = witness(z3, p, "P (right adjunction)")?;
    let (e4, w4) = witness(z4, codual, "the right dual")?;
    Ok(ZorroReport { on_the_nose: [e1, e2, e3, e4], witnesses: [w1, w2, w3, w4] })
}

/// A closed degree-zero bimodule map `α: †P -> P†` with `α(f_r) - g_r` a
/// boundary for every reference pair `(f_r, g_r)`, given as maps `P -> A`
/// and `P -> B` respectively (columns).
pub fn canonical_alpha(cas: &CasimirData, references: &[(Vec<Vector>, Vec<Vector>)]) -> Result<BimoduleMap> {
    let p = &cas.bimodule;
    let dual = &cas.dual.module;
    let codual = &cas.codual.module;
    let space = hom_space(dual, codual, Linearity::Both)?;
    let candidates = space.basis_in_degree(0);
    let boundary_sources = codual.basis_in_degree(-1);
    let block = dual.dim() * codual.dim();

    let mut refs = Vec::with_capacity(references.len());
    for (f, g) in references {
        let fc = cas
            .dual
            .element_of(f, p, &cas.regular_right)
            .ok_or_else(|| Error::InvalidModule("reference is not a right module map".into()))?;
        let gc = cas
            .codual
            .element_of(g, p, &cas.regular_left)
            .ok_or_else(|| Error::InvalidModule("reference is not a left module map".into()))?;
        refs.push((fc, gc));
    }
    let offset = |r: usize| block + r * codual.dim();

    let mut columns: Vec<Vector> = candidates
        .iter()
        .map(|&k| {
            let alpha = space.columns(k);
            let d_alpha = compose(codual.differential(), &alpha);
            let alpha_d = compose(&alpha, dual.differential());
            let closed: Vec<Vector> = d_alpha.iter().zip(&alpha_d).map(|(a, b)| sub(a, b)).collect();
            let mut col: Vector = flatten(&closed, codual.dim());
            for (r, (fc, _)) in refs.iter().enumerate() {
                col.extend(super::maps::apply(&alpha, fc).into_iter().map(|(i, c)| (offset(r) + i, c)));
            }
            col
        })
        .collect();
    for r in 0..refs.len() {
        for &t in &boundary_sources {
            columns.push(scale(&codual.d(&basis_vector(t)), &-Rat::one()).into_iter().map(|(i, c)| (offset(r) + i, c)).collect());
        }
    }
    let mut target = Vec::new();
    for (r, (_, gc)) in refs.iter().enumerate() {
        target.extend(gc.iter().map(|(i, c)| (offset(r) + i, c.clone())));
    }
    let sol = solve_sparse(&columns, &target)
        .ok_or_else(|| Error::NotAmbidextrous("no bimodule map matches the reference elements".into()))?;
    let mut flat = BTreeMap::new();
    for (k, c) in sol {
        if k < candidates.len() {
            axpy(&mut flat, &c, space.map(candidates[k]));
        }
    }
    let alpha = BimoduleMap::new(0, unflatten(&sparse_from_map(flat), dual.dim(), codual.dim()));
    alpha.check(dual, codual)?;
    Ok(alpha)
}

/// A two-sided inverse up to homotopy of the closed bimodule map `alpha: X -> Y`.
pub fn homotopy_inverse(alpha: &BimoduleMap, x: &DgBimodule, y: &DgBimodule) -> Result<BimoduleMap> {
    let not_invertible = || Error::NotAmbidextrous("α is not invertible up to homotopy".into());
    if x.dim() == y.dim() {
        let mut ech = Echelon::new(true);
        for col in &alpha.columns {
            ech.insert(col);
        }
        if ech.rank() == x.dim() {
            let columns: Vec<Vector> =
                (0..y.dim()).map(|t| ech.express(&basis_vector(t)).expect("full rank")).collect();
            return Ok(BimoduleMap::new(0, columns));
        }
    }
    // β closed with βα - 1 = dh + hd
    let betas = hom_space(y, x, Linearity::Both)?;
    let homotopies = hom_space(x, x, Linearity::Both)?;
    let beta_idx = betas.basis_in_degree(0);
    let h_idx = homotopies.basis_in_degree(-1);
    let block = y.dim() * x.dim();
    let mut columns = Vec::new();
    for &k in &beta_idx {
        let beta = betas.columns(k);
        let closed: Vec<Vector> = compose(x.differential(), &beta)
            .iter()
            .zip(&compose(&beta, y.differential()))
            .map(|(a, b)| sub(a, b))
            .collect();
        let mut col = flatten(&closed, x.dim());
        col.extend(flatten(&compose(&beta, &alpha.columns), x.dim()).into_iter().map(|(i, c)| (block + i, c)));
        columns.push(col);
    }
    for &k in &h_idx {
        let h = homotopies.columns(k);
        let dh = compose(x.differential(), &h);
        let hd = compose(&h, x.differential());
        let sum: Vec<Vector> = dh.iter().zip(&hd).map(|(a, b)| scale(&add(a, b), &-Rat::one())).collect();
        columns.push(flatten(&sum, x.dim()).into_iter().map(|(i, c)| (block + i, c)).collect());
    }
    let target: Vector = flatten(&identity_columns(x.dim()), x.dim()).into_iter().map(|(i, c)| (block + i, c)).collect();
    let sol = solve_sparse(&columns, &target).ok_or_else(not_invertible)?;
    let mut flat = BTreeMap::new();
    for (k, c) in sol {
        if k < beta_idx.len() {
            axpy(&mut flat, &c, betas.map(beta_idx[k]));
        }
    }
    let beta = BimoduleMap::new(0, unflatten(&sparse_from_map(flat), y.dim(), x.dim()));
    let other = alpha.after(&beta).sub(&BimoduleMap::identity(y));
    if other.null_homotopy(y, y)?.is_none() {
        return Err(not_invertible());
    }
    Ok(beta)
}

/// Left and right quantum dimensions as central elements of `A` and `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct BimoduleDimensions {
    pub left: Vector,
    pub right: Vector,
    pub left_scalar: Option<Rat>,
    pub right_scalar: Option<Rat>,
}

fn scalar_multiple(alg: &FinDimAlgebra, z: &Vector) -> Option<Rat> {
    if z.is_empty() {
        return Some(Rat::zero());
    }
    let (k, c) = alg.unit().first()?;
    let lambda = z.iter().find(|(i, _)| i == k).map(|(_, x)| x / c)?;
    (scale(alg.unit(), &lambda) == *z).then_some(lambda)
}

/// `dim_l = Σ [α^{-1}(y†)](y)` in `A` and `dim_r = Σ ± [α(†x)](x)` in `B`.
pub fn qdim_bimodule(cas: &CasimirData, alpha: &BimoduleMap) -> Result<BimoduleDimensions> {
    let p = &cas.bimodule;
    let dual = &cas.dual.module;
    let codual = &cas.codual.module;
    alpha.check(dual, codual)?;
    let beta = homotopy_inverse(alpha, dual, codual)?;

    let mut left = BTreeMap::new();
    for (c, g, i) in &cas.right_family {
        let f = beta.apply(&basis_vector(*g));
        axpy(&mut left, c, &cas.dual.evaluate(&f, &basis_vector(*i)));
    }
    let mut right = BTreeMap::new();
    for (c, i, f) in &cas.left_family {
        let g = alpha.apply(&basis_vector(*f));
        let s = sign(dual.degree(*f) * p.degree(*i));
        axpy(&mut right, &(c * s), &cas.codual.evaluate(&g, &basis_vector(*i)));
    }
    let (left, right) = (sparse_from_map(left), sparse_from_map(right));
    let (alg_a, alg_b) = (p.right(), p.left());
    if !alg_a.is_central(&left) || !alg_b.is_central(&right) {
        return Err(Error::InvalidModule(format!(
            "quantum dimensions are not central: left {}, right {}",
            alg_a.format_vector(&left),
            alg_b.format_vector(&right)
        )));
    }
    Ok(BimoduleDimensions {
        left_scalar: scalar_multiple(alg_a, &left),
        right_scalar: scalar_multiple(alg_b, &right),
        left,
        right,
    })
}
