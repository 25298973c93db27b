//! Finite quivers, their paths and path algebras.
//!
//! Paths are written right to left: the path `b a` first traverses `a` and
//! then `b`, so it composes iff `head(a) = tail(b)`.

mod ginzburg;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::ade::AdeType;
use crate::algebra::{basis_vector, AlgebraMap, FinDimAlgebra, Rat, Vector};
use crate::error::{Error, Result};

pub use ginzburg::{GinzburgAlgebra, GradedDimensionTable, Letter, LetterCaps, Word, WordChain};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

/// Quiver with named vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// On-disk `quiver.v1` layout.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverFile {
    #[serde(default = "quiver_schema")]
    pub schema: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowFile {
    pub name: String,
    pub tail: String,
    pub head: String,
}

fn quiver_schema() -> String {
    "quiver.v1".into()
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if index.len() != vertices.len() {
            return Err(Error::InvalidQuiver("duplicate vertex names".into()));
        }
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (name, tail, head) in arrows {
            if name.is_empty() || name.ends_with('*') || !seen.insert(name.clone()) {
                return Err(Error::InvalidQuiver(format!("bad or duplicate arrow name `{name}`")));
            }
            let lookup = |v: &str| {
                index.get(v).copied().ok_or_else(|| Error::InvalidQuiver(format!("arrow `{name}` references unknown vertex `{v}`")))
            };
            out.push(Arrow { tail: lookup(&tail)?, head: lookup(&head)?, name });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn from_file(file: &QuiverFile) -> Result<Self> {
        if file.schema != "quiver.v1" {
            return Err(Error::Parse(format!("unsupported quiver schema `{}`", file.schema)));
        }
        Quiver::new(
            file.vertices.clone(),
            file.arrows.iter().map(|a| (a.name.clone(), a.tail.clone(), a.head.clone())).collect(),
        )
    }

    pub fn to_file(&self) -> QuiverFile {
        QuiverFile {
            schema: quiver_schema(),
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowFile {
                    name: a.name.clone(),
                    tail: self.vertices[a.tail].clone(),
                    head: self.vertices[a.head].clone(),
                })
                .collect(),
        }
    }

    /// Dynkin quiver of the given type, vertices labelled as in the standard
    /// ADE table; linear orientation for A, arrows towards the trivalent
    /// vertex otherwise.
    pub fn dynkin(t: AdeType) -> Result<Self> {
        let t = t.validate()?;
        let r = t.rank();
        let edges: Vec<(usize, usize)> = match t {
            AdeType::A(_) => (1..r).map(|i| (i, i + 1)).collect(),
            AdeType::D(_) => {
                let branch = r - 2;
                let mut e: Vec<(usize, usize)> = (1..branch).map(|i| (i, i + 1)).collect();
                e.push((r - 1, branch));
                e.push((r, branch));
                e
            }
            AdeType::E6 => vec![(5, 3), (3, 2), (6, 4), (4, 2), (1, 2)],
            AdeType::E7 => vec![(7, 6), (6, 5), (5, 3), (1, 2), (2, 3), (4, 3)],
            AdeType::E8 => vec![(1, 2), (2, 3), (3, 4), (4, 5), (8, 7), (7, 5), (6, 5)],
        };
        let vertices = (1..=r).map(|i| i.to_string()).collect();
        let arrows = edges
            .iter()
            .enumerate()
            .map(|(k, (s, t))| (arrow_name(k, edges.len()), s.to_string(), t.to_string()))
            .collect();
        Quiver::new(vertices, arrows)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Vertices in an order where every arrow points forward; `None` if the
    /// quiver has an oriented cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.num_vertices();
        let mut indegree = vec![0usize; n];
        for a in &self.arrows {
            indegree[a.head] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.tail == v) {
                indegree[a.head] -= 1;
                if indegree[a.head] == 0 {
                    ready.push(a.head);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    pub fn require_acyclic(&self) -> Result<()> {
        if self.is_acyclic() {
            Ok(())
        } else {
            Err(Error::InvalidQuiver("the quiver has an oriented cycle".into()))
        }
    }

    /// All paths, in length-lexicographic order with the declared arrow order.
    pub fn paths(&self) -> Result<Vec<Path>> {
        self.require_acyclic()?;
        let mut out: Vec<Path> = (0..self.num_vertices()).map(Path::trivial).collect();
        let mut frontier = out.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for (k, a) in self.arrows.iter().enumerate() {
                    if a.tail == p.head {
                        let mut arrows = vec![k];
                        arrows.extend_from_slice(&p.arrows);
                        next.push(Path { tail: p.tail, head: a.head, arrows });
                    }
                }
            }
            next.sort_by(|a, b| a.arrows.cmp(&b.arrows));
            out.extend(next.iter().cloned());
            frontier = next;
        }
        Ok(out)
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e{}", self.vertices[p.tail])
        } else {
            p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("")
        }
    }

    /// The opposite quiver.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self.arrows.iter().map(|a| Arrow { name: a.name.clone(), tail: a.head, head: a.tail }).collect(),
        }
    }
}

fn arrow_name(k: usize, total: usize) -> String {
    if total <= 26 {
        ((b'a' + k as u8) as char).to_string()
    } else {
        format!("a{k}")
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self
            .arrows
            .iter()
            .map(|a| format!("{}: {} -> {}", a.name, self.vertices[a.tail], self.vertices[a.head]))
            .collect();
        write!(f, "quiver on [{}] with arrows [{}]", self.vertices.join(", "), arrows.join(", "))
    }
}

/// A path, arrows listed in written order (the last one is traversed first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub tail: usize,
    pub head: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { tail: v, head: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// The written product `self * other`: first `other`, then `self`.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.tail != other.head {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { tail: other.tail, head: self.head, arrows })
    }
}

/// Path algebra of an acyclic quiver with its basis of paths.
#[derive(Clone, Debug)]
pub struct PathAlgebra {
    quiver: Arc<Quiver>,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    algebra: Arc<FinDimAlgebra>,
}

impl PathAlgebra {
    pub fn new(quiver: Quiver) -> Result<Self> {
        let paths = quiver.paths()?;
        let index: HashMap<Path, usize> = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let n = paths.len();
        let table: Vec<Vec<Vector>> = (0..n)
            .map(|i| {
                (0..n).map(|j| paths[i].compose(&paths[j]).map(|p| basis_vector(index[&p])).unwrap_or_default()).collect()
            })
            .collect();
        let nv = quiver.num_vertices();
        let unit: Vector = (0..nv).map(|v| (v, Rat::one())).collect();
        let idempotents = (0..nv).map(basis_vector).collect();
        let names = paths.iter().map(|p| quiver.format_path(p)).collect();
        let algebra = FinDimAlgebra::new(names, table, unit, idempotents)?;
        Ok(PathAlgebra { quiver: Arc::new(quiver), paths, index, algebra: Arc::new(algebra) })
    }

    pub fn dynkin(t: AdeType) -> Result<Self> {
        PathAlgebra::new(Quiver::dynkin(t)?)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn algebra(&self) -> &Arc<FinDimAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.paths[i]
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Basis index of the trivial path at `v`; trivial paths come first.
    pub fn idempotent(&self, v: usize) -> usize {
        v
    }

    /// Basis index of the length-one path of arrow `a`.
    pub fn arrow(&self, a: usize) -> usize {
        let ar = &self.quiver.arrows()[a];
        self.index[&Path { tail: ar.tail, head: ar.head, arrows: vec![a] }]
    }

    /// Indices of paths starting at `v` (a basis of `A e_v`).
    pub fn starting_at(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.paths[i].tail == v).collect()
    }

    /// Indices of paths ending at `v` (a basis of `e_v A`).
    pub fn ending_at(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.paths[i].head == v).collect()
    }

    /// Product of basis paths, if nonzero.
    pub fn compose(&self, i: usize, j: usize) -> Option<usize> {
        self.paths[i].compose(&self.paths[j]).map(|p| self.index[&p])
    }

    pub fn name(&self, i: usize) -> String {
        self.quiver.format_path(&self.paths[i])
    }

    /// `kQ / rad^{max_len+1}` on the paths of length at most `max_len`,
    /// with the quotient map.
    pub fn radical_truncation(&self, max_len: usize) -> Result<(Arc<FinDimAlgebra>, AlgebraMap)> {
        let kept: Vec<usize> = (0..self.dim()).filter(|&i| self.paths[i].len() <= max_len).collect();
        let position: HashMap<usize, usize> = kept.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let lift = |i: Option<usize>| i.and_then(|i| position.get(&i)).map(|&k| basis_vector(k)).unwrap_or_default();
        let table = kept.iter().map(|&i| kept.iter().map(|&j| lift(self.compose(i, j))).collect()).collect();
        let nv = self.quiver.num_vertices();
        let names = kept.iter().map(|&i| self.name(i)).collect();
        let unit: Vector = (0..nv).map(|v| (v, Rat::one())).collect();
        let quotient = Arc::new(FinDimAlgebra::new(names, table, unit, (0..nv).map(basis_vector).collect())?);
        let images = (0..self.dim()).map(|i| lift(Some(i))).collect();
        let map = AlgebraMap::new(&self.algebra, &quotient, images)?;
        Ok((quotient, map))
    }
}

/// Automorphism of a quiver: permutations of vertices and arrows compatible
/// with tails and heads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverAutomorphism {
    vertices: Vec<usize>,
    arrows: Vec<usize>,
}

impl QuiverAutomorphism {
    pub fn new(quiver: &Quiver, vertices: Vec<usize>, arrows: Vec<usize>) -> Result<Self> {
        let is_perm = |p: &[usize], n: usize| {
            let mut seen = vec![false; n];
            p.len() == n && p.iter().all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
        };
        if !is_perm(&vertices, quiver.num_vertices()) || !is_perm(&arrows, quiver.arrows().len()) {
            return Err(Error::InvalidQuiver("automorphism data are not permutations".into()));
        }
        for (k, a) in quiver.arrows().iter().enumerate() {
            let b = &quiver.arrows()[arrows[k]];
            if b.tail != vertices[a.tail] || b.head != vertices[a.head] {
                return Err(Error::InvalidQuiver(format!("arrow `{}` is not mapped compatibly", a.name)));
            }
        }
        Ok(QuiverAutomorphism { vertices, arrows })
    }

    pub fn identity(quiver: &Quiver) -> Self {
        QuiverAutomorphism { vertices: (0..quiver.num_vertices()).collect(), arrows: (0..quiver.arrows().len()).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.vertices.iter().enumerate().all(|(i, &v)| i == v) && self.arrows.iter().enumerate().all(|(i, &a)| i == a)
    }

    pub fn vertex(&self, v: usize) -> usize {
        self.vertices[v]
    }

    pub fn arrow(&self, a: usize) -> usize {
        self.arrows[a]
    }

    pub fn inverse(&self) -> Self {
        let mut vertices = vec![0; self.vertices.len()];
        for (i, &v) in self.vertices.iter().enumerate() {
            vertices[v] = i;
        }
        let mut arrows = vec![0; self.arrows.len()];
        for (i, &a) in self.arrows.iter().enumerate() {
            arrows[a] = i;
        }
        QuiverAutomorphism { vertices, arrows }
    }

    pub fn apply_path(&self, p: &Path) -> Path {
        Path {
            tail: self.vertices[p.tail],
            head: self.vertices[p.head],
            arrows: p.arrows.iter().map(|&a| self.arrows[a]).collect(),
        }
    }

    /// Induced automorphism of the path algebra.
    pub fn algebra_map(&self, alg: &PathAlgebra) -> Result<AlgebraMap> {
        let images = alg.paths().iter().map(|p| basis_vector(alg.index_of(&self.apply_path(p)).expect("paths map to paths"))).collect();
        AlgebraMap::new(alg.algebra(), alg.algebra(), images)
    }
}

/// The A3 quiver `1 -> 2 <- 3` and its diagram flip exchanging 1 and 3.
pub fn symmetric_a3() -> (Quiver, QuiverAutomorphism) {
    let q = Quiver::new(
        vec!["1".into(), "2".into(), "3".into()],
        vec![("a".into(), "1".into(), "2".into()), ("b".into(), "3".into(), "2".into())],
    )
    .expect("valid quiver");
    let flip = QuiverAutomorphism::new(&q, vec![2, 1, 0], vec![1, 0]).expect("flip is an automorphism");
    (q, flip)
}

/// Dimension of each `e_i A e_j` block, keyed by `(i, j)`.
pub fn block_dimensions(alg: &PathAlgebra) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for p in alg.paths() {
        *out.entry((p.head, p.tail)).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_algebra_dimensions() {
        assert_eq!(PathAlgebra::dynkin(AdeType::A(2)).unwrap().dim(), 3);
        assert_eq!(PathAlgebra::dynkin(AdeType::A(3)).unwrap().dim(), 6);
        assert_eq!(PathAlgebra::dynkin(AdeType::D(4)).unwrap().dim(), 7);
    }

    #[test]
    fn a2_basis_and_products() {
        let alg = PathAlgebra::dynkin(AdeType::A(2)).unwrap();
        let names: Vec<String> = (0..3).map(|i| alg.name(i)).collect();
        assert_eq!(names, ["e1", "e2", "a"]);
        let a = alg.arrow(0);
        // a = e2 a = a e1, and e1 a = 0
        assert_eq!(alg.compose(1, a), Some(a));
        assert_eq!(alg.compose(a, 0), Some(a));
        assert_eq!(alg.compose(0, a), None);
        assert!(alg.algebra().idempotents_complete());
    }

    #[test]
    fn all_dynkin_quivers_are_acyclic_trees() {
        for t in [AdeType::A(5), AdeType::D(6), AdeType::E6, AdeType::E7, AdeType::E8] {
            let q = Quiver::dynkin(t).unwrap();
            assert!(q.is_acyclic());
            assert_eq!(q.arrows().len(), t.rank() - 1);
        }
    }

    #[test]
    fn cyclic_quiver_rejected() {
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![("a".into(), "1".into(), "2".into()), ("b".into(), "2".into(), "1".into())],
        )
        .unwrap();
        assert!(matches!(PathAlgebra::new(q), Err(Error::InvalidQuiver(_))));
    }

    #[test]
    fn unknown_vertex_rejected() {
        assert!(Quiver::new(vec!["1".into()], vec![("a".into(), "1".into(), "7".into())]).is_err());
    }

    #[test]
    fn file_round_trip() {
        let q = Quiver::dynkin(AdeType::D(4)).unwrap();
        let text = serde_json::to_string(&q.to_file()).unwrap();
        let back = Quiver::from_file(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(q, back);
    }

    #[test]
    fn flip_is_an_algebra_automorphism() {
        let (q, flip) = symmetric_a3();
        let alg = PathAlgebra::new(q).unwrap();
        assert!(flip.algebra_map(&alg).is_ok());
        assert_eq!(flip.inverse(), flip);
    }
}
