//! Tensor products over an intermediate ring and their reduction to finite rank.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Generator, LgSpace, MatrixFactorisation};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, WeightSystem};
use crate::scalar::Scalar;

/// `Y (y; z)` composed after `X (x; y)` over `k[x, y, z]`; generator `a * rank(X) + b`
/// stands for `e_a (x) e_b` with `a` in `Y` and `b` in `X`.
#[derive(Clone, Debug)]
pub struct TensorRaw {
    outer_factor: MatrixFactorisation,
    inner_factor: MatrixFactorisation,
    ring: Arc<WeightSystem>,
    mid_ring: Arc<WeightSystem>,
    inner: Arc<LgSpace>,
    outer: Arc<LgSpace>,
    gens: Vec<Generator>,
    d: Vec<Vec<Poly>>,
}

fn fresh(name: &str, taken: &BTreeSet<String>, suffix: &str) -> String {
    let mut out = name.to_string();
    while taken.contains(&out) {
        out.push_str(suffix);
    }
    out
}

/// `Y (x) X` with differential `d_Y (x) 1 + (-1)^|a| 1 (x) d_X`.
pub fn tensor(y: &MatrixFactorisation, x: &MatrixFactorisation) -> Result<TensorRaw> {
    if !y.inner().matches(x.outer()) {
        return Err(Error::PotentialMismatch(format!(
            "intermediate potentials differ: {} versus {}",
            y.inner().potential(),
            x.outer().potential()
        )));
    }
    let n = x.inner().nvars();
    let k = x.outer().nvars();
    let m = y.outer().nvars();
    let mut taken: BTreeSet<String> = x.inner().ring().vars().iter().cloned().collect();
    let z_names: Vec<String> = y.outer().ring().vars().iter().map(|v| fresh(v, &taken, "'")).collect();
    taken.extend(z_names.iter().cloned());
    let y_names: Vec<String> = x.outer().ring().vars().iter().map(|v| fresh(v, &taken, "_m")).collect();
    let inner = x.inner().clone();
    let outer = y.outer().renamed(&z_names)?;
    let mid = x.outer().renamed(&y_names)?;
    let ring = inner.ring().concat(mid.ring())?.concat(outer.ring())?;
    let x_map: Vec<Option<usize>> = (0..n + k).map(Some).collect();
    let y_map: Vec<Option<usize>> = (0..k + m).map(|i| Some(n + i)).collect();
    let (ry, rx) = (y.rank(), x.rank());
    let gens: Vec<Generator> = (0..ry * rx)
        .map(|g| {
            let (a, b) = (g / rx, g % rx);
            Generator::new(y.gens()[a].parity.add(x.gens()[b].parity), &y.gens()[a].qdeg + &x.gens()[b].qdeg)
        })
        .collect();
    let dy: Vec<Vec<Poly>> = y.d().iter().map(|r| r.iter().map(|p| p.rename(&ring, &y_map)).collect()).collect();
    let dx: Vec<Vec<Poly>> = x.d().iter().map(|r| r.iter().map(|p| p.rename(&ring, &x_map)).collect()).collect();
    let mut d = vec![vec![Poly::zero(&ring); ry * rx]; ry * rx];
    for a in 0..ry {
        let sign = y.gens()[a].parity.sign();
        for b in 0..rx {
            let col = a * rx + b;
            for a2 in 0..ry {
                if !dy[a2][a].is_zero() {
                    d[a2 * rx + b][col] = d[a2 * rx + b][col].add_ref(&dy[a2][a]);
                }
            }
            for b2 in 0..rx {
                if !dx[b2][b].is_zero() {
                    d[a * rx + b2][col] = d[a * rx + b2][col].add_ref(&dx[b2][b].scale(&sign));
                }
            }
        }
    }
    Ok(TensorRaw { outer_factor: y.clone(), inner_factor: x.clone(), ring, mid_ring: mid.ring().clone(), inner, outer, gens, d })
}

impl TensorRaw {
    pub fn outer_factor(&self) -> &MatrixFactorisation {
        &self.outer_factor
    }

    pub fn inner_factor(&self) -> &MatrixFactorisation {
        &self.inner_factor
    }

    /// `k[x, y, z]`
    pub fn ring(&self) -> &Arc<WeightSystem> {
        &self.ring
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn d(&self) -> &[Vec<Poly>] {
        &self.d
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// Checks `D^2 = (V(z) - W(x)) id`.
    pub fn check_square(&self) -> bool {
        let n = self.inner.nvars();
        let k = self.mid_ring.nvars();
        let m = self.outer.nvars();
        let w = self.inner.potential().rename(&self.ring, &(0..n).map(Some).collect::<Vec<_>>());
        let v = self.outer.potential().rename(&self.ring, &(0..m).map(|j| Some(n + k + j)).collect::<Vec<_>>());
        let pot = v.sub_ref(&w);
        let sq = super::mat_mul(&self.ring, &self.d, &self.d);
        sq.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, e)| if i == j { *e == pot } else { e.is_zero() }))
    }
}

/// Finite-rank factorisation homotopy equivalent to a raw tensor, together
/// with the inclusion into and projection from the raw tensor on a degree window.
#[derive(Clone, Debug)]
pub struct Reduced {
    mf: MatrixFactorisation,
    raw: TensorRaw,
    // per reduced generator: image under the inclusion, as (raw generator, polynomial over k[x, y, z])
    iota: Vec<Vec<(usize, Poly)>>,
    // (raw generator, y-monomial) -> projection onto reduced generators, coefficients over k[x, z]
    pi: HashMap<(usize, Monomial), Vec<(usize, Poly)>>,
    cutoff: BigRational,
    bound_units: i64,
}

/// Truncated elimination state: a sparse matrix over `k[x, z]`.
struct Elimination {
    qdeg: Vec<BigRational>,
    cols: Vec<BTreeMap<usize, Poly>>,
    rows: Vec<BTreeSet<usize>>,
    alive: Vec<bool>,
    candidates: BTreeSet<(usize, usize)>,
    iota: Vec<BTreeMap<usize, Poly>>,
    pi: Vec<BTreeMap<usize, Poly>>,
}

impl Elimination {
    fn set(&mut self, i: usize, j: usize, p: Poly) {
        if p.is_zero() {
            self.cols[j].remove(&i);
            self.rows[i].remove(&j);
            self.candidates.remove(&(i, j));
        } else {
            if self.qdeg[i] == &self.qdeg[j] + BigRational::one() {
                self.candidates.insert((i, j));
            }
            self.cols[j].insert(i, p);
            self.rows[i].insert(j);
        }
    }

    fn pick(&self) -> Option<(usize, usize)> {
        self.candidates.iter().copied().min_by_key(|&(i, j)| ((self.cols[j].len() - 1) * (self.rows[i].len() - 1), i, j))
    }

    fn remove_gen(&mut self, g: usize) {
        self.alive[g] = false;
        for j in std::mem::take(&mut self.rows[g]) {
            self.cols[j].remove(&g);
            self.candidates.remove(&(g, j));
        }
        for i in std::mem::take(&mut self.cols[g]).into_keys() {
            self.rows[i].remove(&g);
            self.candidates.remove(&(i, g));
        }
    }

    fn eliminate(&mut self, i: usize, j: usize) {
        let c = self.cols[j][&i].as_constant().expect("degree zero entry");
        let cinv = c.inv().expect("nonzero pivot");
        let col_j: Vec<(usize, Poly)> = self.cols[j].iter().filter(|(k, _)| **k != i && **k != j).map(|(k, p)| (*k, p.scale(&cinv))).collect();
        let row_i: Vec<(usize, Poly)> = self.rows[i].iter().filter(|l| **l != i && **l != j).map(|l| (*l, self.cols[*l][&i].clone())).collect();
        for (k, a) in &col_j {
            for (l, b) in &row_i {
                let old = self.cols[*l].get(k).cloned().unwrap_or_else(|| Poly::zero(a.ring()));
                self.set(*k, *l, old.sub_ref(&a.mul_ref(b)));
            }
        }
        // inclusion: col_l -= c^-1 D[i][l] col_j
        let iota_j = std::mem::take(&mut self.iota[j]);
        for (l, b) in &row_i {
            let f = b.scale(&cinv);
            for (t, p) in &iota_j {
                add_to(&mut self.iota[*l], *t, &f.mul_ref(p).neg_ref());
            }
        }
        // projection: row_k -= c^-1 D[k][j] row_i
        let pi_i = std::mem::take(&mut self.pi[i]);
        for (k, a) in &col_j {
            for (t, p) in &pi_i {
                add_to(&mut self.pi[*k], *t, &a.mul_ref(p).neg_ref());
            }
        }
        self.iota[i].clear();
        self.pi[j].clear();
        self.remove_gen(i);
        self.remove_gen(j);
    }
}

fn add_to(map: &mut BTreeMap<usize, Poly>, key: usize, p: &Poly) {
    if p.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(e) => {
            e.add_assign_ref(p);
            if e.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, p.clone());
        }
    }
}

/// Splits a raw monomial into its `x z` part (over the reduced ring) and its `y` part.
fn split_monomial(m: &Monomial, n: usize, k: usize) -> (Monomial, Monomial) {
    let xz: Vec<u32> = m.0[..n].iter().chain(&m.0[n + k..]).copied().collect();
    (Monomial(xz), Monomial(m.0[n..n + k].to_vec()))
}

/// Outcome of one truncated reduction before stability checks.
fn reduce_at(raw: &TensorRaw, bound_units: i64) -> Result<Reduced> {
    let n = raw.inner.nvars();
    let k = raw.mid_ring.nvars();
    let ring = MatrixFactorisation::joint_ring(&raw.inner, &raw.outer)?;
    let ymons = raw.mid_ring.monomials_below_units(bound_units);
    let y_denom = BigRational::from_integer(raw.mid_ring.denom().into());
    let bound = BigRational::from_integer(bound_units.into()) / &y_denom;
    let delta_min = raw.gens.iter().map(|g| g.qdeg.clone()).min().unwrap_or_else(BigRational::zero);
    let cutoff = &delta_min + &bound - BigRational::one();

    let mut basis: Vec<(usize, Monomial)> = Vec::new();
    for g in 0..raw.rank() {
        for ym in &ymons {
            basis.push((g, ym.clone()));
        }
    }
    let index: HashMap<(usize, Monomial), usize> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let qdeg: Vec<BigRational> = basis.iter().map(|(g, ym)| &raw.gens[*g].qdeg + raw.mid_ring.degree(ym)).collect();
    let size = basis.len();
    let mut el = Elimination {
        qdeg,
        cols: vec![BTreeMap::new(); size],
        rows: vec![BTreeSet::new(); size],
        alive: vec![true; size],
        candidates: BTreeSet::new(),
        iota: (0..size).map(|t| BTreeMap::from([(t, Poly::one(&ring))])).collect(),
        pi: (0..size).map(|t| BTreeMap::from([(t, Poly::one(&ring))])).collect(),
    };
    // entries grouped by the y-exponent they contribute
    for g in 0..raw.rank() {
        for g2 in 0..raw.rank() {
            let e = &raw.d[g2][g];
            if e.is_zero() {
                continue;
            }
            let mut by_y: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
            for (mono, c) in e.terms() {
                let (xz, ym) = split_monomial(mono, n, k);
                by_y.entry(ym.0).or_insert_with(|| Poly::zero(&ring)).add_term(xz, c);
            }
            for ym in &ymons {
                let col = index[&(g, ym.clone())];
                for (shift, p) in &by_y {
                    let target = Monomial(ym.0.iter().zip(shift).map(|(a, b)| a + b).collect());
                    if let Some(&row) = index.get(&(g2, target)) {
                        let old = el.cols[col].get(&row).cloned().unwrap_or_else(|| Poly::zero(&ring));
                        el.set(row, col, old.add_ref(p));
                    }
                }
            }
        }
    }
    while let Some((i, j)) = el.pick() {
        el.eliminate(i, j);
    }
    let window: Vec<usize> = (0..size).filter(|&t| el.alive[t] && el.qdeg[t] < cutoff).collect();
    let pos: HashMap<usize, usize> = window.iter().enumerate().map(|(p, t)| (*t, p)).collect();
    for &l in &window {
        if el.cols[l].keys().any(|k| !pos.contains_key(k)) {
            return Err(Error::NonStabilizing(format!("reduced window not closed at bound {bound}")));
        }
    }
    let gens: Vec<Generator> =
        window.iter().map(|&t| Generator::new(raw.gens[basis[t].0].parity, el.qdeg[t].clone())).collect();
    let mut d = vec![vec![Poly::zero(&ring); window.len()]; window.len()];
    for (c, &l) in window.iter().enumerate() {
        for (row, p) in &el.cols[l] {
            d[pos[row]][c] = p.clone();
        }
    }
    let mf = MatrixFactorisation::from_parts(raw.inner.clone(), raw.outer.clone(), ring.clone(), gens, d);
    mf.validate()?;

    let m = raw.outer.nvars();
    let to_raw: Vec<Option<usize>> = (0..n).map(Some).chain((0..m).map(|j| Some(n + k + j))).collect();
    let iota = window
        .iter()
        .map(|&l| {
            el.iota[l]
                .iter()
                .map(|(t, p)| {
                    let (g, ym) = &basis[*t];
                    let mut shift = vec![0u32; n + k + m];
                    shift[n..n + k].copy_from_slice(&ym.0);
                    (*g, p.rename(&raw.ring, &to_raw).mul_monomial(&Monomial(shift), &Scalar::one()))
                })
                .collect()
        })
        .collect();
    let mut pi: HashMap<(usize, Monomial), Vec<(usize, Poly)>> = HashMap::new();
    for (p_idx, &l) in window.iter().enumerate() {
        for (t, p) in &el.pi[l] {
            if el.qdeg[*t] < cutoff {
                pi.entry(basis[*t].clone()).or_default().push((p_idx, p.clone()));
            }
        }
    }
    Ok(Reduced { mf, raw: raw.clone(), iota, pi, cutoff, bound_units })
}

fn signature(mf: &MatrixFactorisation) -> Vec<(i64, BigRational)> {
    let mut s: Vec<(i64, BigRational)> = mf.gens().iter().map(|g| (g.parity.as_int(), g.qdeg.clone())).collect();
    s.sort();
    s
}

/// Reduces with the default initial bound.
pub fn reduce(raw: &TensorRaw) -> Result<Reduced> {
    reduce_with_multiplier(raw, 1)
}

/// Reduces starting from `multiplier` times the default bound; the result is
/// accepted once two consecutive doublings agree.
pub fn reduce_with_multiplier(raw: &TensorRaw, multiplier: u32) -> Result<Reduced> {
    if raw.mid_ring.nvars() == 0 {
        return reduce_at(raw, 1);
    }
    let w_min = *raw.mid_ring.int_weights().iter().min().unwrap() as i64;
    let y_denom = BigRational::from_integer(raw.mid_ring.denom().into());
    let qs: Vec<&BigRational> = raw.gens.iter().map(|g| &g.qdeg).collect();
    let spread = match (qs.iter().min(), qs.iter().max()) {
        (Some(a), Some(b)) => (*b).clone() - (*a).clone(),
        _ => BigRational::zero(),
    };
    let need = (spread + BigRational::from_integer(2.into())) * &y_denom / BigRational::from_integer(w_min.into());
    let n0 = need.ceil().to_integer().try_into().unwrap_or(1i64).max(1) * multiplier.max(1) as i64;
    let first = reduce_at(raw, n0 * w_min);
    let second = reduce_at(raw, 2 * n0 * w_min);
    if let (Ok(a), Ok(b)) = (&first, &second) {
        if signature(&a.mf) == signature(&b.mf) {
            return first;
        }
    }
    let third = reduce_at(raw, 4 * n0 * w_min)?;
    match second {
        Ok(b) if signature(&b.mf) == signature(&third.mf) => Ok(b),
        _ => Err(Error::NonStabilizing(format!("reduction changed at bounds {}, {} and {}", n0, 2 * n0, 4 * n0))),
    }
}

impl Reduced {
    pub fn mf(&self) -> &MatrixFactorisation {
        &self.mf
    }

    pub fn raw(&self) -> &TensorRaw {
        &self.raw
    }

    /// Image of reduced generator `l` in the raw tensor.
    pub fn include(&self, l: usize) -> &[(usize, Poly)] {
        &self.iota[l]
    }

    /// Projection of `y^ym e_g` onto reduced generators.
    pub fn project(&self, g: usize, ym: &Monomial) -> Result<&[(usize, Poly)]> {
        let deg = &self.raw.gens[g].qdeg + self.raw.mid_ring.degree(ym);
        if deg >= self.cutoff {
            return Err(Error::OutsideWindow(format!("degree {deg} beyond the reduction window {}", self.cutoff)));
        }
        Ok(self.pi.get(&(g, ym.clone())).map_or(&[][..], |v| v.as_slice()))
    }

    pub fn bound_units(&self) -> i64 {
        self.bound_units
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::mf::{find_iso, hom_rank, Parity};

    #[test]
    fn raw_tensor_squares_to_potential() {
        let p = MatrixFactorisation::permutation(3, &[0]).unwrap();
        let q = MatrixFactorisation::permutation(3, &[1]).unwrap();
        let t = tensor(&q, &p).unwrap();
        assert_eq!(t.rank(), 4);
        assert!(t.check_square());
        let other = MatrixFactorisation::permutation(4, &[1]).unwrap();
        assert!(tensor(&other, &p).is_err());
    }

    #[test]
    fn unit_acts_trivially() {
        for d in 2..=4 {
            let unit = MatrixFactorisation::permutation(d, &[0]).unwrap();
            let s = MatrixFactorisation::permutation(d, &[1]).unwrap();
            let r = reduce(&tensor(&unit, &s).unwrap()).unwrap();
            assert_eq!(r.mf().rank(), 2);
            find_iso(r.mf(), &s, 7).unwrap();
        }
    }

    #[test]
    fn group_like_fusion() {
        let p1 = MatrixFactorisation::permutation(5, &[1]).unwrap();
        let p2 = MatrixFactorisation::permutation(5, &[2]).unwrap();
        let r = reduce(&tensor(&p1, &p1).unwrap()).unwrap();
        assert_eq!(hom_rank(r.mf(), &p2, Parity::Even, &rat(0, 1)).unwrap(), 1);
        find_iso(r.mf(), &p2, 1).unwrap();
    }
}
