//! Buchberger's algorithm with the sugar strategy and both pair criteria,
//! plus a process-wide and optional on-disk cache of reduced bases.

use std::collections::{BTreeSet, HashSet};
use std::io::Write;
use std::path::PathBuf;
use std::sync::{Arc, OnceLock, RwLock};

use dashmap::DashMap;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::poly::{Monomial, Poly, WeightSystem};
use crate::scalar::Scalar;

/// Reduced Groebner basis of an ideal under degrevlex.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<WeightSystem>,
    polys: Vec<Poly>,
}

fn memory_cache() -> &'static DashMap<String, Arc<GroebnerBasis>> {
    static CACHE: OnceLock<DashMap<String, Arc<GroebnerBasis>>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

fn disk_dir() -> &'static RwLock<Option<PathBuf>> {
    static DIR: OnceLock<RwLock<Option<PathBuf>>> = OnceLock::new();
    DIR.get_or_init(|| RwLock::new(None))
}

/// Enables the content-addressed on-disk cache under `dir`.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *disk_dir().write().unwrap() = dir;
}

/// Canonical text identifying an ideal's generators and weight system.
fn cache_key(ring: &WeightSystem, gens: &[Poly]) -> String {
    let header: Vec<String> = ring.vars().iter().zip(ring.weights()).map(|(v, w)| format!("{v}:{w}")).collect();
    let mut lines: Vec<String> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.to_string()).collect();
    lines.sort();
    lines.dedup();
    format!("{}\n{}", header.join(","), lines.join("\n"))
}

fn content_hash(key: &str) -> String {
    hex::encode(Sha256::digest(key.as_bytes()))
}

fn load_from_disk(ring: &Arc<WeightSystem>, key: &str) -> Option<GroebnerBasis> {
    let dir = disk_dir().read().unwrap().clone()?;
    let path = dir.join(format!("{}.gb", content_hash(key)));
    let text = std::fs::read_to_string(path).ok()?;
    let (stored_key, body) = text.split_once("\n---\n")?;
    if stored_key != key {
        return None;
    }
    let polys = body.lines().filter(|l| !l.trim().is_empty()).map(|l| Poly::parse(l, ring)).collect::<Result<Vec<_>>>().ok()?;
    Some(GroebnerBasis { ring: ring.clone(), polys })
}

fn store_to_disk(key: &str, gb: &GroebnerBasis) {
    let Some(dir) = disk_dir().read().unwrap().clone() else { return };
    let write = || -> std::io::Result<()> {
        std::fs::create_dir_all(&dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
        write!(tmp, "{key}\n---\n")?;
        for p in &gb.polys {
            writeln!(tmp, "{p}")?;
        }
        tmp.persist(dir.join(format!("{}.gb", content_hash(key)))).map_err(|e| e.error)?;
        Ok(())
    };
    if let Err(e) = write() {
        tracing::warn!("could not write Groebner cache entry: {e}");
    }
}

/// Reduced Groebner basis of the ideal generated by `gens`, memoised.
pub fn groebner(ring: &Arc<WeightSystem>, gens: &[Poly]) -> Arc<GroebnerBasis> {
    let key = cache_key(ring, gens);
    if let Some(gb) = memory_cache().get(&key) {
        return gb.clone();
    }
    let gb = Arc::new(load_from_disk(ring, &key).unwrap_or_else(|| {
        let gb = buchberger(ring, gens);
        store_to_disk(&key, &gb);
        gb
    }));
    memory_cache().insert(key, gb.clone());
    gb
}

fn monic(p: Poly) -> Poly {
    match p.leading() {
        Some((_, c)) => {
            let inv = c.inv().unwrap();
            p.scale(&inv)
        }
        None => p,
    }
}

/// Fully reduces `p` modulo `basis`.
fn reduce_full(p: &Poly, basis: &[Poly]) -> Poly {
    let ring = p.ring().clone();
    let mut work = p.clone();
    let mut rem = Poly::zero(&ring);
    while let Some((m, c)) = work.leading().map(|(m, c)| (m.clone(), c.clone())) {
        match basis.iter().find(|g| g.leading().is_some_and(|(lm, _)| lm.divides(&m))) {
            Some(g) => {
                let (lm, lc) = g.leading().unwrap();
                let factor = c.mul_ref(&lc.inv().unwrap());
                work = work.sub_ref(&g.mul_monomial(&lm.quotient(&m), &factor));
            }
            None => {
                rem.add_term(m.clone(), &c);
                work = work.sub_ref(&Poly::monomial(&ring, m, c));
            }
        }
    }
    rem
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (lf, cf) = f.leading().unwrap();
    let (lg, cg) = g.leading().unwrap();
    let l = lf.lcm(lg);
    let a = f.mul_monomial(&lf.quotient(&l), &cf.inv().unwrap());
    let b = g.mul_monomial(&lg.quotient(&l), &cg.inv().unwrap());
    a.sub_ref(&b)
}

fn coprime(a: &Monomial, b: &Monomial) -> bool {
    a.0.iter().zip(&b.0).all(|(x, y)| *x == 0 || *y == 0)
}

fn buchberger(ring: &Arc<WeightSystem>, gens: &[Poly]) -> GroebnerBasis {
    let mut basis: Vec<Poly> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    // queue ordered by (sugar, lcm degree, i, j)
    let mut queue: BTreeSet<(u32, u32, usize, usize)> = BTreeSet::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();

    let push = |basis: &mut Vec<Poly>, sugar: &mut Vec<u32>, queue: &mut BTreeSet<(u32, u32, usize, usize)>, p: Poly, s: u32| {
        let j = basis.len();
        let lj = p.leading().unwrap().0.clone();
        for (i, g) in basis.iter().enumerate() {
            let li = g.leading().unwrap().0;
            let l = li.lcm(&lj);
            let si = sugar[i] + l.total_degree() - li.total_degree();
            let sj = s + l.total_degree() - lj.total_degree();
            queue.insert((si.max(sj), l.total_degree(), i, j));
        }
        basis.push(p);
        sugar.push(s);
    };

    for g in gens {
        let r = monic(reduce_full(g, &basis));
        if !r.is_zero() {
            let s = g.terms().map(|(m, _)| m.total_degree()).max().unwrap_or(0);
            push(&mut basis, &mut sugar, &mut queue, r, s);
        }
    }

    while let Some(pair) = queue.pop_first() {
        let (s, _, i, j) = pair;
        done.insert((i, j));
        let li = basis[i].leading().unwrap().0.clone();
        let lj = basis[j].leading().unwrap().0.clone();
        if coprime(&li, &lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let chain = (0..basis.len()).any(|k| {
            k != i && k != j && basis[k].leading().unwrap().0.divides(&l) && {
                let (a, b) = if i < k { (i, k) } else { (k, i) };
                let (c, d) = if j < k { (j, k) } else { (k, j) };
                done.contains(&(a, b)) && done.contains(&(c, d))
            }
        });
        if chain {
            continue;
        }
        let r = reduce_full(&s_poly(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            push(&mut basis, &mut sugar, &mut queue, monic(r), s);
        }
    }

    // minimalise and interreduce
    let mut minimal: Vec<Poly> = Vec::new();
    for (k, p) in basis.iter().enumerate() {
        let lp = p.leading().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(l, q)| {
            let lq = q.leading().unwrap().0;
            l != k && lq.divides(lp) && (lq != lp || l < k)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let reduced: Vec<Poly> = (0..minimal.len())
        .map(|k| {
            let others: Vec<Poly> = minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, q)| q.clone()).collect();
            let lead = Poly::monomial(ring, minimal[k].leading().unwrap().0.clone(), Scalar::one());
            let tail = minimal[k].sub_ref(&lead);
            monic(lead.add_ref(&reduce_full(&tail, &others)))
        })
        .collect();
    let mut polys = reduced;
    polys.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    GroebnerBasis { ring: ring.clone(), polys }
}

impl GroebnerBasis {
    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn ring(&self) -> &Arc<WeightSystem> {
        &self.ring
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        reduce_full(p, &self.polys)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p.leading().unwrap().0.clone()).collect()
    }

    /// Monomials outside the leading ideal, or `None` when infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        // finite iff every variable has a pure power among the leading monomials
        let bounded = (0..n).all(|i| lms.iter().any(|m| m.pure_power() == Some(i)));
        if !bounded {
            return None;
        }
        let mut seen: BTreeSet<Monomial> = BTreeSet::new();
        let mut frontier = vec![Monomial::one(n)];
        while let Some(m) = frontier.pop() {
            if lms.iter().any(|l| l.divides(&m)) || !seen.insert(m.clone()) {
                continue;
            }
            for i in 0..n {
                let mut next = m.clone();
                next.0[i] += 1;
                frontier.push(next);
            }
        }
        Some(seen.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn jacobian_of_e6_potential() {
        let ring = WeightSystem::new(vec!["x".into(), "y".into()], vec![rat(2, 3), rat(1, 2)]).unwrap();
        let w = Poly::parse("x^3 + y^4", &ring).unwrap();
        let gb = groebner(&ring, &[w.derivative(0), w.derivative(1)]);
        assert_eq!(gb.standard_monomials().unwrap().len(), 6);
        let infinite = groebner(&ring, &[Poly::parse("x*y", &ring).unwrap()]);
        assert!(infinite.standard_monomials().is_none());
    }

    #[test]
    fn reduced_basis_is_canonical() {
        let ring = WeightSystem::new(vec!["x".into(), "y".into()], vec![rat(1, 1), rat(1, 1)]).unwrap();
        let f = Poly::parse("x^2 - y", &ring).unwrap();
        let g = Poly::parse("x*y - 1", &ring).unwrap();
        let a = buchberger(&ring, &[f.clone(), g.clone()]);
        let b = buchberger(&ring, &[g.add_ref(&f), f.clone()]);
        assert_eq!(a.polys, b.polys);
        for p in a.polys() {
            assert!(a.contains(p));
        }
        assert!(a.contains(&f.mul_ref(&g)));
    }
}
