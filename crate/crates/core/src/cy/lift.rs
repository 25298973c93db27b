//! Lifting `P = ⊕_r A_{σ_r}` along `A -> 𝒜 = Π_n(A)_{≤k}`.
//!
//! `𝒫 = P ⊗_A 𝒜` is free on generators `1_r` as a right `𝒜`-module, with
//! left action `v.(1_r y) = 1_r σ̂_r(v) y` where `σ̂_r` is the automorphism
//! of `𝒜` induced by the quiver automorphism. Both duals are free of rank `R`:
//! `F ∈ †𝒫` is determined by the components `F(1_r)` and `G ∈ 𝒫†` by `G(1_r)`.
//! In components the actions read
//! `(uF)_r = u F_r`, `(Fv)_r = F_r σ̂_r(v)`, `(uG)_r = σ̂_r^{-1}(u) G_r`, `(Gv)_r = G_r v`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::completion::{CyCompletion, TensorChain, TensorWord};
use crate::algebra::{basis_vector, Rat, Vector};
use crate::dg::{canonical_alpha, casimir, homotopy_inverse, qdim_bimodule, DgBimodule};
use crate::error::{Error, Result};
use crate::linalg::solve_sparse;
use crate::quiver::{PathAlgebra, QuiverAutomorphism};

/// Base and lifted quantum dimensions of one atlas entry.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiftReport {
    pub base_left: String,
    pub base_right: String,
    pub lifted_left: String,
    pub lifted_right: String,
    pub agrees: bool,
    /// number of basis elements on which the lifted structure maps were checked
    pub checked: usize,
}

/// Induced automorphism of the completion.
struct Hat {
    paths: Vec<usize>,
    generators: Vec<usize>,
}

impl Hat {
    fn new(alg: &PathAlgebra, sigma: &QuiverAutomorphism) -> Result<Self> {
        let map = sigma.algebra_map(alg)?;
        let paths = (0..alg.dim()).map(|p| map.image(p)[0].0).collect();
        let nv = alg.quiver().num_vertices();
        let arrows = alg.quiver().arrows().len();
        // θ generators: one per vertex, then one per arrow
        let generators = (0..nv).map(|v| sigma.vertex(v)).chain((0..arrows).map(|a| nv + sigma.arrow(a))).collect();
        Ok(Hat { paths, generators })
    }

    fn word(&self, w: &TensorWord) -> TensorWord {
        TensorWord {
            paths: w.paths.iter().map(|&p| self.paths[p]).collect(),
            generators: w.generators.iter().map(|&g| self.generators[g]).collect(),
        }
    }

    fn chain(&self, c: &TensorChain) -> TensorChain {
        c.iter().map(|(w, x)| (self.word(w), x.clone())).collect()
    }
}

fn path_chain(v: &[(usize, Rat)]) -> TensorChain {
    v.iter().map(|(p, c)| (TensorWord::path(*p), c.clone())).collect()
}

fn single(w: &TensorWord) -> TensorChain {
    TensorChain::from([(w.clone(), Rat::one())])
}

fn add_into(acc: &mut TensorChain, c: &TensorChain, scale: &Rat) {
    for (w, x) in c {
        let e = acc.entry(w.clone()).or_insert_with(Rat::zero);
        *e += x * scale;
        if e.is_zero() {
            acc.remove(w);
        }
    }
}

/// Dense base bimodule `⊕_r A_{σ_r}` with the reference maps `F^{(r)}`, `G^{(r)}`.
struct Base {
    module: DgBimodule,
    f_refs: Vec<Vec<Vector>>,
    g_refs: Vec<Vec<Vector>>,
}

fn base_bimodule(alg: &PathAlgebra, twists: &[QuiverAutomorphism]) -> Result<Base> {
    let a = alg.algebra();
    let dim = a.dim();
    let rank = twists.len();
    let mut module: Option<DgBimodule> = None;
    let mut inverses = Vec::with_capacity(rank);
    for sigma in twists {
        let summand = DgBimodule::twisted(a, &sigma.algebra_map(alg)?);
        inverses.push(sigma.inverse().algebra_map(alg)?);
        module = Some(match module {
            None => summand,
            Some(m) => m.direct_sum(&summand)?,
        });
    }
    let module = module.ok_or_else(|| Error::InvalidModule("empty atlas entry".into()))?;
    module.validate()?;
    // F^{(r)}(1_s y) = δ_rs y,  G^{(r)}(1_s y) = δ_rs σ_s^{-1}(y)
    let f_refs = (0..rank)
        .map(|r| (0..rank * dim).map(|j| if j / dim == r { basis_vector(j % dim) } else { Vec::new() }).collect())
        .collect();
    let g_refs = (0..rank)
        .map(|r| {
            (0..rank * dim).map(|j| if j / dim == r { inverses[r].image(j % dim).clone() } else { Vec::new() }).collect()
        })
        .collect();
    Ok(Base { module, f_refs, g_refs })
}

/// Computes the base quantum dimensions of `⊕_r A_{σ_r}`, lifts the bimodule
/// and its ambidexterity data to `Π_n(A)_{≤level}`, checks the lifted
/// structure maps on every basis element and compares the scalars.
pub fn lift_twist_sum(alg: &PathAlgebra, twists: &[QuiverAutomorphism], n: u32, level: usize) -> Result<LiftReport> {
    if level == 0 {
        return Err(Error::Unsupported("the lift needs tensor level at least 1".into()));
    }
    let a = alg.algebra();
    let dim = a.dim();
    let rank = twists.len();
    let base = base_bimodule(alg, twists)?;
    let cas = casimir(&base.module)?;
    let refs: Vec<_> = base.f_refs.iter().cloned().zip(base.g_refs.iter().cloned()).collect();
    let alpha = canonical_alpha(&cas, &refs)?;
    let dims = qdim_bimodule(&cas, &alpha)?;
    let (Some(base_left), Some(base_right)) = (dims.left_scalar.clone(), dims.right_scalar.clone()) else {
        return Err(Error::NotAmbidextrous("base quantum dimensions are not scalars".into()));
    };
    let beta = homotopy_inverse(&alpha, &cas.dual.module, &cas.codual.module)?;

    // components of α(F^{(s)}) and β(G^{(s)}) at 1_t
    let one = |t: usize| -> Vector { a.unit().iter().map(|(i, c)| (t * dim + i, c.clone())).collect() };
    let mut alpha_comp = vec![vec![TensorChain::new(); rank]; rank];
    let mut beta_comp = vec![vec![TensorChain::new(); rank]; rank];
    for s in 0..rank {
        let f = cas
            .dual
            .element_of(&base.f_refs[s], &base.module, &cas.regular_right)
            .ok_or_else(|| Error::InvalidModule("reference is not right linear".into()))?;
        let g = cas
            .codual
            .element_of(&base.g_refs[s], &base.module, &cas.regular_left)
            .ok_or_else(|| Error::InvalidModule("reference is not left linear".into()))?;
        let af = alpha.apply(&f);
        let bg = beta.apply(&g);
        for t in 0..rank {
            alpha_comp[s][t] = path_chain(&cas.codual.evaluate(&af, &one(t)));
            beta_comp[s][t] = path_chain(&cas.dual.evaluate(&bg, &one(t)));
        }
    }

    let completion = CyCompletion::new(alg.clone(), n, level)?;
    let hats: Vec<Hat> = twists.iter().map(|s| Hat::new(alg, s)).collect::<Result<_>>()?;
    let hat_inverses: Vec<Hat> = twists.iter().map(|s| Hat::new(alg, &s.inverse())).collect::<Result<_>>()?;
    let all_words: Vec<TensorWord> = (0..=level).flat_map(|m| completion.words(m).to_vec()).collect();
    let mul = |x: &TensorChain, y: &TensorChain| completion.multiply_chains(x, y);
    let mut checked = 0usize;

    // the induced automorphisms are dg algebra automorphisms
    for hat in &hats {
        for w in &all_words {
            if hat.chain(&completion.differential(w)) != completion.differential(&hat.word(w)) {
                return Err(Error::InvalidModule("induced automorphism does not commute with d".into()));
            }
            for v in completion.words(1).iter().chain(completion.words(0)) {
                if v.level() + w.level() > level {
                    continue;
                }
                if hat.chain(&mul(&single(v), &single(w))?) != mul(&single(&hat.word(v)), &single(&hat.word(w)))? {
                    return Err(Error::InvalidModule("induced automorphism is not multiplicative".into()));
                }
            }
        }
    }

    // lifted Casimir solves; equations indexed by (s, r, word)
    let index: HashMap<&TensorWord, usize> = all_words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let nw = all_words.len();
    let row = |s: usize, r: usize, w: &TensorWord| (s * rank + r) * nw + index[w];
    let chain_rows = |s: usize, r: usize, c: &TensorChain| -> Vector {
        let mut v: Vector = c.iter().map(|(w, x)| (row(s, r, w), x.clone())).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    };
    let mut target: Vector = Vec::new();
    for s in 0..rank {
        for w in &all_words {
            target.push((row(s, s, w), Rat::one()));
        }
    }
    target.sort_by_key(|(k, _)| *k);
    let unknowns: Vec<(usize, usize, usize)> =
        (0..rank).flat_map(|r| (0..rank).flat_map(move |s| (0..dim).map(move |p| (r, s, p)))).collect();
    // ν(Σ_r 1_r ⊗ F_r)(1_s w) has component r equal to (F_r)_s w
    let left_columns = unknowns
        .iter()
        .map(|&(r, s, p)| {
            let mut col = Vec::new();
            for w in &all_words {
                col.extend(chain_rows(s, r, &mul(&single(&TensorWord::path(p)), &single(w))?));
            }
            col.sort_by_key(|(k, _)| *k);
            Ok(col)
        })
        .collect::<Result<Vec<_>>>()?;
    // ν̃(Σ_r y_r† ⊗ 1_r)(1_s w) has component r equal to σ̂_r(σ̂_s^{-1}(w) (Y_r)_s)
    let right_columns = unknowns
        .iter()
        .map(|&(r, s, p)| {
            let mut col = Vec::new();
            for w in &all_words {
                let inner = mul(&hat_inverses[s].chain(&single(w)), &single(&TensorWord::path(p)))?;
                col.extend(chain_rows(s, r, &hats[r].chain(&inner)));
            }
            col.sort_by_key(|(k, _)| *k);
            Ok(col)
        })
        .collect::<Result<Vec<_>>>()?;
    let solve = |columns: &[Vector]| -> Result<Vec<Vec<TensorChain>>> {
        let sol = solve_sparse(columns, &target)
            .ok_or_else(|| Error::NotProjective("lifted Casimir system is inconsistent".into()))?;
        let mut comps = vec![vec![TensorChain::new(); rank]; rank];
        for (k, c) in sol {
            let (r, s, p) = unknowns[k];
            add_into(&mut comps[r][s], &single(&TensorWord::path(p)), &c);
        }
        Ok(comps)
    };
    let left_family = solve(&left_columns)?;
    let right_family = solve(&right_columns)?;
    checked += 2 * rank * nw;

    // α on generators is the base α; check it on every basis element of †𝒫
    let alpha_lift = |s: usize, w: &TensorChain| -> Result<Vec<TensorChain>> {
        (0..rank).map(|t| mul(&hat_inverses[t].chain(w), &alpha_comp[s][t])).collect()
    };
    for s in 0..rank {
        for w in &all_words {
            let image = alpha_lift(s, &single(w))?;
            // differential
            let dw = completion.differential(w);
            let lhs = alpha_lift(s, &dw)?;
            let rhs: Vec<TensorChain> = image.iter().map(|c| completion.differential_chain(c)).collect();
            if lhs != rhs {
                return Err(Error::InvalidModule("lifted α does not commute with d".into()));
            }
            // right action by generators of 𝒜
            for v in completion.words(1).iter().chain(completion.words(0)) {
                if v.level() + w.level() > level {
                    continue;
                }
                let fv = mul(&single(w), &hats[s].chain(&single(v)))?;
                let lhs = alpha_lift(s, &fv)?;
                let rhs = image.iter().map(|c| mul(c, &single(v))).collect::<Result<Vec<_>>>()?;
                if lhs != rhs {
                    return Err(Error::InvalidModule("lifted α is not right linear".into()));
                }
            }
            checked += 1;
        }
        // β α = 1 on generators
        for u in 0..rank {
            let mut acc = TensorChain::new();
            for t in 0..rank {
                add_into(&mut acc, &mul(&hats[t].chain(&alpha_comp[s][t]), &beta_comp[t][u])?, &Rat::one());
            }
            let expected = if u == s { path_chain(a.unit()) } else { TensorChain::new() };
            if acc != expected {
                return Err(Error::NotAmbidextrous("lifted α is not invertible".into()));
            }
        }
    }

    // dim_r = Σ_r Σ_s σ̂_r^{-1}((F_r)_s) G_{s,r},  dim_l = Σ_r Σ_t σ̂_t((Y_r)_t) H_{t,r}
    let mut lifted_right = TensorChain::new();
    let mut lifted_left = TensorChain::new();
    for r in 0..rank {
        for s in 0..rank {
            add_into(&mut lifted_right, &mul(&hat_inverses[r].chain(&left_family[r][s]), &alpha_comp[s][r])?, &Rat::one());
            add_into(&mut lifted_left, &mul(&hats[s].chain(&right_family[r][s]), &beta_comp[s][r])?, &Rat::one());
        }
    }
    let scalar_of = |c: &TensorChain| -> Result<Rat> {
        let unit = path_chain(a.unit());
        let lambda = c.get(&TensorWord::path(a.unit()[0].0)).cloned().unwrap_or_else(Rat::zero);
        let mut scaled = TensorChain::new();
        add_into(&mut scaled, &unit, &lambda);
        if scaled != *c {
            return Err(Error::NotAmbidextrous("lifted quantum dimension is not a scalar".into()));
        }
        Ok(lambda)
    };
    let left_scalar = scalar_of(&lifted_left)?;
    let right_scalar = scalar_of(&lifted_right)?;
    // multiplication by the lifted dimension is the scalar on every basis element
    for u in &all_words {
        for (dimension, lambda) in [(&lifted_left, &left_scalar), (&lifted_right, &right_scalar)] {
            let mut expected = TensorChain::new();
            add_into(&mut expected, &single(u), lambda);
            if mul(dimension, &single(u))? != expected || mul(&single(u), dimension)? != expected {
                return Err(Error::NotAmbidextrous("lifted quantum dimension is not central".into()));
            }
        }
    }
    let agrees = left_scalar == base_left && right_scalar == base_right;
    Ok(LiftReport {
        base_left: base_left.to_string(),
        base_right: base_right.to_string(),
        lifted_left: left_scalar.to_string(),
        lifted_right: right_scalar.to_string(),
        agrees,
        checked,
    })
}

/// One bimodule `⊕_r A_{σ_r}` of the test atlas with its expected scalar.
#[derive(Clone, Debug)]
pub struct AtlasEntry {
    pub name: String,
    pub algebra: PathAlgebra,
    pub twists: Vec<QuiverAutomorphism>,
    pub expected: i64,
}

/// Identity, diagram-flip twists and direct sums over `A2` and the symmetric `A3`.
pub fn bimodule_atlas() -> Result<Vec<AtlasEntry>> {
    let a2 = PathAlgebra::dynkin(crate::ade::AdeType::A(2))?;
    let id2 = QuiverAutomorphism::identity(a2.quiver());
    let (q3, flip) = crate::quiver::symmetric_a3();
    let a3 = PathAlgebra::new(q3)?;
    let id3 = QuiverAutomorphism::identity(a3.quiver());
    let entry = |name: &str, algebra: &PathAlgebra, twists: Vec<QuiverAutomorphism>| AtlasEntry {
        name: name.into(),
        algebra: algebra.clone(),
        expected: twists.len() as i64,
        twists,
    };
    Ok(vec![
        entry("A2 identity", &a2, vec![id2.clone()]),
        entry("A2 identity+identity", &a2, vec![id2.clone(), id2]),
        entry("A3 identity", &a3, vec![id3.clone()]),
        entry("A3 flip", &a3, vec![flip.clone()]),
        entry("A3 identity+flip", &a3, vec![id3, flip.clone()]),
        entry("A3 flip+flip", &a3, vec![flip.clone(), flip]),
    ])
}
