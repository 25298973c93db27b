//! Ginzburg dg algebras of acyclic quivers.
//!
//! Internally `a*` sits in cohomological degree `-(n-2)` and `t_i` in degree
//! `-(n-1)`, so the differential has degree `+1`. Words are tracked with the
//! auxiliary bidegree `(#a*, #t)`; the differential sends `(s, l)` to
//! `(s + 1, l - 1)`, so the algebra splits into finite complexes indexed by
//! the number of starred letters.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Path, PathAlgebra, Quiver};
use crate::algebra::Rat;
use crate::error::{Error, Result};
use crate::linalg::{rank_sparse, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Arrow(usize),
    Star(usize),
    Loop(usize),
}

/// Path in the doubled quiver, letters in written order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub tail: usize,
    pub head: usize,
    pub letters: Vec<Letter>,
}

pub type WordChain = BTreeMap<Word, Rat>;

/// Bounds on the number of `a*` and `t` letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LetterCaps {
    pub star: usize,
    pub loops: usize,
}

impl LetterCaps {
    pub fn uniform(cap: usize) -> Self {
        LetterCaps { star: cap, loops: cap }
    }
}

/// Dimensions of the capped pieces, by cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDimensionTable {
    pub caps: LetterCaps,
    pub dims: BTreeMap<i64, usize>,
}

#[derive(Clone, Debug)]
pub struct GinzburgAlgebra {
    quiver: Arc<Quiver>,
    n: u32,
}

fn add_term(chain: &mut WordChain, w: Word, c: Rat) {
    if c.is_zero() {
        return;
    }
    let entry = chain.entry(w);
    match entry {
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

impl GinzburgAlgebra {
    pub fn new(quiver: Quiver, n: u32) -> Result<Self> {
        quiver.require_acyclic()?;
        if n < 2 {
            return Err(Error::Unsupported(format!("Ginzburg algebras need n >= 2, got {n}")));
        }
        Ok(GinzburgAlgebra { quiver: Arc::new(quiver), n })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn letter_tail(&self, l: Letter) -> usize {
        match l {
            Letter::Arrow(a) => self.quiver.arrows()[a].tail,
            Letter::Star(a) => self.quiver.arrows()[a].head,
            Letter::Loop(v) => v,
        }
    }

    pub fn letter_head(&self, l: Letter) -> usize {
        match l {
            Letter::Arrow(a) => self.quiver.arrows()[a].head,
            Letter::Star(a) => self.quiver.arrows()[a].tail,
            Letter::Loop(v) => v,
        }
    }

    /// Internal cohomological degree.
    pub fn letter_degree(&self, l: Letter) -> i64 {
        let n = self.n as i64;
        match l {
            Letter::Arrow(_) => 0,
            Letter::Star(_) => -(n - 2),
            Letter::Loop(_) => -(n - 1),
        }
    }

    /// Degree magnitudes `|a| = 0`, `|a*| = n - 2`, `|t| = n - 1`.
    pub fn magnitude(&self, l: Letter) -> i64 {
        -self.letter_degree(l)
    }

    pub fn letters(&self) -> Vec<Letter> {
        let arrows = self.quiver.arrows().len();
        (0..arrows)
            .map(Letter::Arrow)
            .chain((0..arrows).map(Letter::Star))
            .chain((0..self.quiver.num_vertices()).map(Letter::Loop))
            .collect()
    }

    pub fn trivial(&self, v: usize) -> Word {
        Word { tail: v, head: v, letters: Vec::new() }
    }

    pub fn letter_word(&self, l: Letter) -> Word {
        Word { tail: self.letter_tail(l), head: self.letter_head(l), letters: vec![l] }
    }

    /// Word from letters in written order, if composable.
    pub fn word(&self, letters: Vec<Letter>) -> Option<Word> {
        let first = *letters.first()?;
        let last = *letters.last()?;
        for pair in letters.windows(2) {
            if self.letter_tail(pair[0]) != self.letter_head(pair[1]) {
                return None;
            }
        }
        Some(Word { tail: self.letter_tail(last), head: self.letter_head(first), letters })
    }

    pub fn degree(&self, w: &Word) -> i64 {
        w.letters.iter().map(|&l| self.letter_degree(l)).sum()
    }

    /// `(#a*, #t)`.
    pub fn bidegree(&self, w: &Word) -> (usize, usize) {
        let s = w.letters.iter().filter(|l| matches!(l, Letter::Star(_))).count();
        let t = w.letters.iter().filter(|l| matches!(l, Letter::Loop(_))).count();
        (s, t)
    }

    /// Written product `u * w` (first `w`, then `u`).
    pub fn multiply(&self, u: &Word, w: &Word) -> Option<Word> {
        if u.tail != w.head {
            return None;
        }
        let mut letters = u.letters.clone();
        letters.extend_from_slice(&w.letters);
        Some(Word { tail: w.tail, head: u.head, letters })
    }

    pub fn multiply_chains(&self, u: &WordChain, w: &WordChain) -> WordChain {
        let mut out = WordChain::new();
        for (a, x) in u {
            for (b, y) in w {
                if let Some(p) = self.multiply(a, b) {
                    add_term(&mut out, p, x * y);
                }
            }
        }
        out
    }

    /// `d t_i = sum_{h(a)=i} a a* - sum_{t(a)=i} a* a`; arrows and their
    /// duals are closed.
    pub fn letter_differential(&self, l: Letter) -> WordChain {
        let mut out = WordChain::new();
        if let Letter::Loop(v) = l {
            for (k, a) in self.quiver.arrows().iter().enumerate() {
                if a.head == v {
                    add_term(&mut out, self.word(vec![Letter::Arrow(k), Letter::Star(k)]).expect("loop at head"), Rat::one());
                }
                if a.tail == v {
                    add_term(&mut out, self.word(vec![Letter::Star(k), Letter::Arrow(k)]).expect("loop at tail"), -Rat::one());
                }
            }
        }
        out
    }

    /// Leibniz extension of the differential to a word.
    pub fn differential(&self, w: &Word) -> WordChain {
        let mut out = WordChain::new();
        let mut sign_degree = 0i64;
        for (k, &l) in w.letters.iter().enumerate() {
            let dl = self.letter_differential(l);
            let sign = if sign_degree.rem_euclid(2) == 0 { Rat::one() } else { -Rat::one() };
            for (piece, c) in dl {
                let mut letters = w.letters[..k].to_vec();
                letters.extend_from_slice(&piece.letters);
                letters.extend_from_slice(&w.letters[k + 1..]);
                add_term(&mut out, Word { tail: w.tail, head: w.head, letters }, &sign * &c);
            }
            sign_degree += self.letter_degree(l);
        }
        out
    }

    pub fn differential_chain(&self, c: &WordChain) -> WordChain {
        let mut out = WordChain::new();
        for (w, x) in c {
            for (v, y) in self.differential(w) {
                add_term(&mut out, v, x * &y);
            }
        }
        out
    }

    pub fn format_letter(&self, l: Letter) -> String {
        match l {
            Letter::Arrow(a) => self.quiver.arrows()[a].name.clone(),
            Letter::Star(a) => format!("{}*", self.quiver.arrows()[a].name),
            Letter::Loop(v) => format!("t{}", self.quiver.vertices()[v]),
        }
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.letters.is_empty() {
            return format!("e{}", self.quiver.vertices()[w.tail]);
        }
        w.letters.iter().map(|&l| self.format_letter(l)).collect::<Vec<_>>().join("")
    }

    pub fn format_chain(&self, c: &WordChain) -> String {
        if c.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, x)) in c.iter().enumerate() {
            let neg = x < &Rat::zero();
            let mag = if neg { -x.clone() } else { x.clone() };
            let body = if mag.is_one() { self.format_word(w) } else { format!("{mag}*{}", self.format_word(w)) };
            match (i, neg) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }

    /// All words with exactly `s` starred arrows and `l` loops, in
    /// length-lexicographic order.
    pub fn words_with(&self, s: usize, l: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let letters = self.letters();
        for v in 0..self.quiver.num_vertices() {
            let mut stack = vec![(self.trivial(v), 0usize, 0usize)];
            while let Some((w, ws, wl)) = stack.pop() {
                if ws == s && wl == l {
                    out.push(w.clone());
                }
                for &ltr in &letters {
                    if self.letter_head(ltr) != w.tail {
                        continue;
                    }
                    let (ns, nl) = match ltr {
                        Letter::Arrow(_) => (ws, wl),
                        Letter::Star(_) => (ws + 1, wl),
                        Letter::Loop(_) => (ws, wl + 1),
                    };
                    if ns > s || nl > l {
                        continue;
                    }
                    let mut letters = w.letters.clone();
                    letters.push(ltr);
                    stack.push((Word { tail: self.letter_tail(ltr), head: w.head, letters }, ns, nl));
                }
            }
        }
        out.sort_by(|a, b| (a.letters.len(), &a.letters, a.tail).cmp(&(b.letters.len(), &b.letters, b.tail)));
        out
    }

    /// The bidegrees `(s, l)` within caps that make up cohomological degree
    /// `degree`.
    pub fn bidegrees(&self, degree: i64, caps: LetterCaps) -> Result<Vec<(usize, usize)>> {
        if degree > 0 {
            return Ok(Vec::new());
        }
        let need = -degree;
        let n = self.n as i64;
        let mut inside = Vec::new();
        let mut outside = false;
        let mut l = 0i64;
        while (n - 1) * l <= need {
            let rest = need - (n - 1) * l;
            let candidates: Vec<i64> = if n == 2 {
                if rest == 0 {
                    (0..=caps.star as i64).collect()
                } else {
                    Vec::new()
                }
            } else if rest % (n - 2) == 0 {
                vec![rest / (n - 2)]
            } else {
                Vec::new()
            };
            for s in candidates {
                if s as usize <= caps.star && l as usize <= caps.loops {
                    inside.push((s as usize, l as usize));
                } else {
                    outside = true;
                }
            }
            l += 1;
        }
        if inside.is_empty() && outside {
            return Err(Error::BeyondCap(format!(
                "degree {degree} needs more starred letters than the caps (a*: {}, t: {}) allow",
                caps.star, caps.loops
            )));
        }
        Ok(inside)
    }

    /// Whether the caps see every word of the given degree.
    pub fn is_complete(&self, degree: i64, caps: LetterCaps) -> bool {
        if degree > 0 {
            return true;
        }
        if self.n == 2 {
            // a* has degree zero, so every degree is infinite once there is an arrow
            return self.quiver.arrows().is_empty() && (-degree) as usize <= caps.loops;
        }
        let need = (-degree) as usize;
        let huge = LetterCaps { star: need, loops: need };
        let all = self.bidegrees(degree, huge).unwrap_or_default();
        all.iter().all(|&(s, l)| s <= caps.star && l <= caps.loops)
    }

    /// Dimension of the path space in the given degree within caps.
    pub fn graded_dimension(&self, degree: i64, caps: LetterCaps) -> Result<usize> {
        Ok(self.bidegrees(degree, caps)?.into_iter().map(|(s, l)| self.words_with(s, l).len()).sum())
    }

    fn differential_rank(&self, source: &[Word], target: &[Word]) -> usize {
        if source.is_empty() || target.is_empty() {
            return 0;
        }
        let index: HashMap<&Word, usize> = target.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let columns: Vec<SparseVec<Rat>> = source
            .iter()
            .map(|w| {
                let mut col: Vec<(usize, Rat)> =
                    self.differential(w).into_iter().map(|(v, c)| (*index.get(&v).expect("differential stays in bidegree"), c)).collect();
                col.sort_by_key(|(i, _)| *i);
                col
            })
            .collect();
        rank_sparse(&columns)
    }

    /// Cohomology of the bidegree `(s, l)` piece of the complex with `s + l`
    /// starred letters.
    pub fn bidegree_cohomology(&self, s: usize, l: usize) -> usize {
        let here = self.words_with(s, l);
        let out_rank = if l >= 1 { self.differential_rank(&here, &self.words_with(s + 1, l - 1)) } else { 0 };
        let in_rank = if s >= 1 { self.differential_rank(&self.words_with(s - 1, l + 1), &here) } else { 0 };
        here.len() - out_rank - in_rank
    }

    /// Cohomology in the given degree, summed over the bidegrees within caps.
    pub fn cohomology_dim(&self, degree: i64, caps: LetterCaps) -> Result<usize> {
        Ok(self.bidegrees(degree, caps)?.into_iter().map(|(s, l)| self.bidegree_cohomology(s, l)).sum())
    }

    /// Every degree reachable within caps with its dimension.
    pub fn dimension_table(&self, caps: LetterCaps) -> GradedDimensionTable {
        let mut dims = BTreeMap::new();
        for s in 0..=caps.star {
            for l in 0..=caps.loops {
                let w = self.words_with(s, l).len();
                if w > 0 {
                    let deg = -(self.n as i64 - 2) * s as i64 - (self.n as i64 - 1) * l as i64;
                    *dims.entry(deg).or_insert(0) += w;
                }
            }
        }
        GradedDimensionTable { caps, dims }
    }

    /// Random composable word with at most `max_len` letters.
    pub fn random_word(&self, rng: &mut impl Rng, max_len: usize) -> Word {
        let letters = self.letters();
        let mut w = self.trivial(rng.gen_range(0..self.quiver.num_vertices()));
        let len = rng.gen_range(0..=max_len);
        for _ in 0..len {
            let options: Vec<Letter> = letters.iter().copied().filter(|&l| self.letter_head(l) == w.tail).collect();
            if options.is_empty() {
                break;
            }
            let l = options[rng.gen_range(0..options.len())];
            w.letters.push(l);
            w.tail = self.letter_tail(l);
        }
        w
    }

    /// Checks `d^2 = 0` on all generators and on `samples` random words, and
    /// the Leibniz rule on `samples` random pairs. Returns the first failure.
    pub fn check_structure(&self, samples: usize, seed: u64) -> std::result::Result<(), String> {
        for l in self.letters() {
            let dd = self.differential_chain(&self.letter_differential(l));
            if !dd.is_empty() {
                return Err(format!("d^2 {} = {}", self.format_letter(l), self.format_chain(&dd)));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let w = self.random_word(&mut rng, 6);
            let dd = self.differential_chain(&self.differential(&w));
            if !dd.is_empty() {
                return Err(format!("d^2 {} = {}", self.format_word(&w), self.format_chain(&dd)));
            }
        }
        for _ in 0..samples {
            let p = self.random_word(&mut rng, 4);
            let q = self.random_word(&mut rng, 4);
            let Some(pq) = self.multiply(&p, &q) else { continue };
            let lhs = self.differential(&pq);
            let single = |w: &Word| -> WordChain { [(w.clone(), Rat::one())].into_iter().collect() };
            let mut rhs = self.multiply_chains(&self.differential(&p), &single(&q));
            let sign = if self.degree(&p).rem_euclid(2) == 0 { Rat::one() } else { -Rat::one() };
            for (w, c) in self.multiply_chains(&single(&p), &self.differential(&q)) {
                add_term(&mut rhs, w, &sign * &c);
            }
            if lhs != rhs {
                return Err(format!("Leibniz fails on ({}, {})", self.format_word(&p), self.format_word(&q)));
            }
        }
        Ok(())
    }

    /// The degree-zero subalgebra for `n >= 3`: words in unstarred arrows,
    /// which is the path algebra of the quiver.
    pub fn degree_zero_algebra(&self) -> Result<PathAlgebra> {
        if self.n < 3 {
            return Err(Error::Unsupported("the degree-zero part is infinite dimensional for n = 2".into()));
        }
        PathAlgebra::new((*self.quiver).clone())
    }

    /// The word of a path of the underlying quiver.
    pub fn path_word(&self, p: &Path) -> Word {
        Word { tail: p.tail, head: p.head, letters: p.arrows.iter().map(|&a| Letter::Arrow(a)).collect() }
    }
}

impl fmt::Display for GinzburgAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ginzburg algebra (n = {}) of {}", self.n, self.quiver)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ade::AdeType;

    fn gamma(t: AdeType, n: u32) -> GinzburgAlgebra {
        GinzburgAlgebra::new(Quiver::dynkin(t).unwrap(), n).unwrap()
    }

    #[test]
    fn a2_loop_differentials() {
        let g = gamma(AdeType::A(2), 3);
        assert_eq!(g.format_chain(&g.letter_differential(Letter::Loop(0))), "-a*a");
        assert_eq!(g.format_chain(&g.letter_differential(Letter::Loop(1))), "aa*");
    }

    #[test]
    fn degrees_for_n_two() {
        let g = gamma(AdeType::A(2), 2);
        assert_eq!(g.magnitude(Letter::Star(0)), 0);
        assert_eq!(g.magnitude(Letter::Loop(0)), 1);
        assert_eq!(g.magnitude(Letter::Arrow(0)), 0);
    }

    #[test]
    fn a2_graded_dimensions() {
        let g = gamma(AdeType::A(2), 3);
        let caps = LetterCaps::uniform(2);
        assert_eq!(g.graded_dimension(0, caps).unwrap(), 3);
        // exactly one a*: a*, aa*, a*a, aa*a
        assert_eq!(g.words_with(1, 0).len(), 4);
        assert_eq!(g.graded_dimension(-1, caps).unwrap(), 4);
        assert!(matches!(g.graded_dimension(-9, caps), Err(Error::BeyondCap(_))));
        assert_eq!(g.graded_dimension(3, caps).unwrap(), 0);
    }

    #[test]
    fn degree_zero_cohomology_is_path_algebra() {
        for t in [AdeType::A(2), AdeType::A(3), AdeType::D(4)] {
            let kq = PathAlgebra::dynkin(t).unwrap().dim();
            for n in [3, 4] {
                assert_eq!(gamma(t, n).cohomology_dim(0, LetterCaps::uniform(2)).unwrap(), kq);
            }
        }
    }

    #[test]
    fn structure_checks_pass() {
        for t in AdeType::smallest() {
            for n in [2, 3, 4] {
                gamma(t, n).check_structure(100, 7).unwrap();
            }
        }
    }

    #[test]
    fn completeness_flags() {
        let g3 = gamma(AdeType::A(2), 3);
        assert!(g3.is_complete(-2, LetterCaps::uniform(2)));
        assert!(!g3.is_complete(-3, LetterCaps::uniform(2)));
        assert!(!gamma(AdeType::A(2), 2).is_complete(0, LetterCaps::uniform(5)));
    }
}
