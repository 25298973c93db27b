//! The tensor algebra of the shifted inverse dualising complex over a path
//! algebra, truncated at a tensor level. Elements are spanned by words
//! `p_0 g_1 p_1 ... g_m p_m` with `g_i` generators of `θ` and `p_i` paths.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use super::resolution::{bimodule_dual, shift_free, standard_resolution};
use crate::algebra::Rat;
use crate::dg::FreeBimodule;
use crate::error::{Error, Result};
use crate::linalg::{axpy, rank_sparse, sparse_from_map};
use crate::quiver::PathAlgebra;

/// `paths.len() == generators.len() + 1`
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorWord {
    pub paths: Vec<usize>,
    pub generators: Vec<usize>,
}

impl TensorWord {
    pub fn path(p: usize) -> Self {
        TensorWord { paths: vec![p], generators: Vec::new() }
    }

    pub fn level(&self) -> usize {
        self.generators.len()
    }
}

pub type TensorChain = BTreeMap<TensorWord, Rat>;

fn add_term(chain: &mut TensorChain, w: TensorWord, c: &Rat) {
    if c.is_zero() {
        return;
    }
    let entry = chain.entry(w.clone()).or_insert_with(Rat::zero);
    *entry += c;
    if entry.is_zero() {
        chain.remove(&w);
    }
}

/// Result of multiplying two words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Product {
    Zero,
    Word(TensorWord),
    /// the product lies above the truncation level
    Overflow,
}

/// `Π_n(A)` truncated at tensor level `level`.
#[derive(Clone, Debug)]
pub struct CyCompletion {
    algebra: PathAlgebra,
    n: u32,
    level: usize,
    resolution: FreeBimodule,
    dualizing: FreeBimodule,
    theta: FreeBimodule,
    words: Vec<Vec<TensorWord>>,
}

impl CyCompletion {
    pub fn new(algebra: PathAlgebra, n: u32, level: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Unsupported("Calabi-Yau dimension must be at least 2".into()));
        }
        let resolution = standard_resolution(&algebra)?;
        let dualizing = bimodule_dual(&resolution)?;
        let theta = shift_free(&dualizing, i64::from(n) - 1)?;
        let mut c = CyCompletion { algebra, n, level, resolution, dualizing, theta, words: Vec::new() };
        c.words = (0..=level).map(|m| c.enumerate(m)).collect();
        Ok(c)
    }

    pub fn algebra(&self) -> &PathAlgebra {
        &self.algebra
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn resolution(&self) -> &FreeBimodule {
        &self.resolution
    }

    /// `Θ_A`
    pub fn dualizing(&self) -> &FreeBimodule {
        &self.dualizing
    }

    /// `θ_A = Θ_A[n-1]`
    pub fn theta(&self) -> &FreeBimodule {
        &self.theta
    }

    fn generator_degree(&self, g: usize) -> i64 {
        self.theta.generators()[g].degree
    }

    fn enumerate(&self, m: usize) -> Vec<TensorWord> {
        let paths = self.algebra.paths();
        let gens = self.theta.generators();
        let mut out = Vec::new();
        if m == 0 {
            return (0..paths.len()).map(TensorWord::path).collect();
        }
        // partial words: generators chosen so far and paths p_0..p_{k-1}
        let mut stack: Vec<TensorWord> = Vec::new();
        for (g, gen) in gens.iter().enumerate() {
            for p in 0..paths.len() {
                if paths[p].tail == gen.left_idempotent {
                    stack.push(TensorWord { paths: vec![p], generators: vec![g] });
                }
            }
        }
        while let Some(w) = stack.pop() {
            let last = gens[*w.generators.last().expect("nonempty")].right_idempotent;
            if w.level() == m {
                for p in 0..paths.len() {
                    if paths[p].head == last {
                        let mut full = w.clone();
                        full.paths.push(p);
                        out.push(full);
                    }
                }
                continue;
            }
            for (g, gen) in gens.iter().enumerate() {
                for p in 0..paths.len() {
                    if paths[p].head == last && paths[p].tail == gen.left_idempotent {
                        let mut next = w.clone();
                        next.paths.push(p);
                        next.generators.push(g);
                        stack.push(next);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Words of tensor level `m`, sorted.
    pub fn words(&self, m: usize) -> &[TensorWord] {
        &self.words[m]
    }

    pub fn degree(&self, w: &TensorWord) -> i64 {
        w.generators.iter().map(|&g| self.generator_degree(g)).sum()
    }

    /// Dimension of each `(level, degree)` piece.
    pub fn graded_dims(&self) -> BTreeMap<(usize, i64), usize> {
        let mut out = BTreeMap::new();
        for (m, ws) in self.words.iter().enumerate() {
            for w in ws {
                *out.entry((m, self.degree(w))).or_insert(0) += 1;
            }
        }
        out
    }

    /// Leibniz extension of the differential of `θ`; paths are closed.
    pub fn differential(&self, w: &TensorWord) -> TensorChain {
        let mut out = TensorChain::new();
        let mut sign_parity = 0i64;
        for (k, &g) in w.generators.iter().enumerate() {
            let sign = if sign_parity.rem_euclid(2) == 0 { Rat::one() } else { -Rat::one() };
            for t in &self.theta.differential()[g] {
                let (Some(before), Some(after)) =
                    (self.algebra.compose(w.paths[k], t.left), self.algebra.compose(t.right, w.paths[k + 1]))
                else {
                    continue;
                };
                let mut next = w.clone();
                next.paths[k] = before;
                next.paths[k + 1] = after;
                next.generators[k] = t.generator;
                add_term(&mut out, next, &(&t.coef * &sign));
            }
            sign_parity += self.generator_degree(g);
        }
        out
    }

    pub fn differential_chain(&self, c: &TensorChain) -> TensorChain {
        let mut out = TensorChain::new();
        for (w, coef) in c {
            for (v, x) in self.differential(w) {
                add_term(&mut out, v, &(coef * &x));
            }
        }
        out
    }

    /// Concatenation, multiplying the adjacent paths.
    pub fn multiply(&self, u: &TensorWord, w: &TensorWord) -> Product {
        if u.level() + w.level() > self.level {
            return Product::Overflow;
        }
        let Some(middle) = self.algebra.compose(*u.paths.last().expect("nonempty"), w.paths[0]) else {
            return Product::Zero;
        };
        let mut paths = u.paths[..u.paths.len() - 1].to_vec();
        paths.push(middle);
        paths.extend_from_slice(&w.paths[1..]);
        let mut generators = u.generators.clone();
        generators.extend_from_slice(&w.generators);
        Product::Word(TensorWord { paths, generators })
    }

    /// Product of chains; overflow is an error.
    pub fn multiply_chains(&self, a: &TensorChain, b: &TensorChain) -> Result<TensorChain> {
        let mut out = TensorChain::new();
        for (u, x) in a {
            for (w, y) in b {
                match self.multiply(u, w) {
                    Product::Zero => {}
                    Product::Word(v) => add_term(&mut out, v, &(x * y)),
                    Product::Overflow => {
                        return Err(Error::BeyondCap(format!("product exceeds tensor level {}", self.level)))
                    }
                }
            }
        }
        Ok(out)
    }

    /// Cohomology of the `(level, degree)` piece; exact since `d` preserves the level.
    pub fn cohomology(&self, m: usize, degree: i64) -> usize {
        let index: HashMap<&TensorWord, usize> = self.words[m].iter().enumerate().map(|(i, w)| (w, i)).collect();
        let column = |w: &TensorWord| {
            let mut acc = BTreeMap::new();
            for (v, c) in self.differential(w) {
                axpy(&mut acc, &c, &[(index[&v], Rat::one())]);
            }
            sparse_from_map(acc)
        };
        let here: Vec<&TensorWord> = self.words[m].iter().filter(|w| self.degree(w) == degree).collect();
        let below: Vec<&TensorWord> = self.words[m].iter().filter(|w| self.degree(w) == degree - 1).collect();
        let out_rank = rank_sparse(&here.iter().map(|w| column(w)).collect::<Vec<_>>());
        let in_rank = rank_sparse(&below.iter().map(|w| column(w)).collect::<Vec<_>>());
        here.len() - out_rank - in_rank
    }

    /// Checks `d^2 = 0` on every word within the truncation.
    pub fn check_square_zero(&self) -> std::result::Result<(), String> {
        for w in self.words.iter().flatten() {
            let dd = self.differential_chain(&self.differential(w));
            if !dd.is_empty() {
                return Err(format!("d^2 is nonzero on {}", self.format_word(w)));
            }
        }
        Ok(())
    }

    /// Checks associativity on all word triples within the truncation and
    /// the Leibniz rule on all pairs.
    pub fn check_algebra(&self) -> std::result::Result<(), String> {
        let all: Vec<&TensorWord> = self.words.iter().flatten().collect();
        let single = |w: &TensorWord| TensorChain::from([(w.clone(), Rat::one())]);
        for u in &all {
            for v in &all {
                if u.level() + v.level() > self.level {
                    continue;
                }
                let uv = self.multiply_chains(&single(u), &single(v)).map_err(|e| e.to_string())?;
                // d(uv) = d(u) v + (-1)^|u| u d(v)
                let lhs = self.differential_chain(&uv);
                let mut rhs = self.multiply_chains(&self.differential(u), &single(v)).map_err(|e| e.to_string())?;
                let sign = if self.degree(u).rem_euclid(2) == 0 { Rat::one() } else { -Rat::one() };
                for (w, c) in self.multiply_chains(&single(u), &self.differential(v)).map_err(|e| e.to_string())? {
                    add_term(&mut rhs, w, &(c * &sign));
                }
                if lhs != rhs {
                    return Err(format!("Leibniz fails on ({}, {})", self.format_word(u), self.format_word(v)));
                }
                for w in &all {
                    if u.level() + v.level() + w.level() > self.level {
                        continue;
                    }
                    let left = self.multiply_chains(&uv, &single(w)).map_err(|e| e.to_string())?;
                    let vw = self.multiply_chains(&single(v), &single(w)).map_err(|e| e.to_string())?;
                    let right = self.multiply_chains(&single(u), &vw).map_err(|e| e.to_string())?;
                    if left != right {
                        return Err(format!(
                            "not associative on ({}, {}, {})",
                            self.format_word(u),
                            self.format_word(v),
                            self.format_word(w)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn format_word(&self, w: &TensorWord) -> String {
        let mut parts = vec![self.algebra.name(w.paths[0])];
        for (k, &g) in w.generators.iter().enumerate() {
            parts.push(self.theta.generators()[g].name.clone());
            parts.push(self.algebra.name(w.paths[k + 1]));
        }
        parts.join(" ")
    }
}

impl fmt::Display for CyCompletion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pi_{}({}) truncated at level {}", self.n, self.algebra.quiver(), self.level)
    }
}
