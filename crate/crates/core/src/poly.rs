//! Weight systems and sparse multivariate polynomials with cyclotomic coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Ordered variables with positive rational weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    vars: Vec<String>,
    weights: Vec<BigRational>,
    denom: u64,
    int_weights: Vec<u64>,
}

impl WeightSystem {
    pub fn new(vars: Vec<String>, weights: Vec<BigRational>) -> Result<Arc<Self>> {
        if vars.len() != weights.len() {
            return Err(Error::RingMismatch("variable and weight counts differ".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::RingMismatch(format!("weight {w} is not positive")));
        }
        if vars.iter().duplicates().next().is_some() {
            return Err(Error::RingMismatch(format!("repeated variable names in {vars:?}")));
        }
        let denom = weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()))
            .to_u64()
            .ok_or_else(|| Error::RingMismatch("weight denominators too large".into()))?;
        let int_weights = weights
            .iter()
            .map(|w| (w * BigRational::from_integer(denom.into())).to_integer().to_u64().unwrap())
            .collect();
        Ok(Arc::new(WeightSystem { vars, weights, denom, int_weights }))
    }

    pub fn empty() -> Arc<Self> {
        Self::new(vec![], vec![]).unwrap()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Common denominator `D` of the weights.
    pub fn denom(&self) -> u64 {
        self.denom
    }

    /// Weights multiplied by `D`.
    pub fn int_weights(&self) -> &[u64] {
        &self.int_weights
    }

    /// Variables of `self` followed by those of `other`.
    pub fn concat(&self, other: &WeightSystem) -> Result<Arc<Self>> {
        let vars = self.vars.iter().chain(&other.vars).cloned().collect();
        let weights = self.weights.iter().chain(&other.weights).cloned().collect();
        Self::new(vars, weights)
    }

    /// Weighted degree of a monomial in units of `1/D`.
    pub fn units(&self, m: &Monomial) -> u64 {
        m.0.iter().zip(&self.int_weights).map(|(e, w)| *e as u64 * w).sum()
    }

    pub fn degree(&self, m: &Monomial) -> BigRational {
        BigRational::new(self.units(m).into(), self.denom.into())
    }

    /// Converts a rational degree into units of `1/D` if it is a multiple.
    pub fn to_units(&self, q: &BigRational) -> Option<i64> {
        let u = q * BigRational::from_integer(self.denom.into());
        u.is_integer().then(|| u.to_integer().to_i64()).flatten()
    }

    /// All monomials of weighted degree exactly `units / D`.
    pub fn monomials_of_units(&self, units: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        if units < 0 {
            return out;
        }
        let mut cur = vec![0u32; self.nvars()];
        fn rec(ws: &[u64], i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == ws.len() {
                if left == 0 {
                    out.push(Monomial(cur.clone()));
                }
                return;
            }
            let mut e = 0u32;
            while e as u64 * ws[i] <= left {
                cur[i] = e;
                rec(ws, i + 1, left - e as u64 * ws[i], cur, out);
                e += 1;
            }
            cur[i] = 0;
        }
        rec(&self.int_weights, 0, units as u64, &mut cur, &mut out);
        out
    }

    /// Monomials of weighted degree strictly below `units / D`.
    pub fn monomials_below_units(&self, units: i64) -> Vec<Monomial> {
        (0..units.max(0)).flat_map(|u| self.monomials_of_units(u)).collect()
    }
}

/// Exponent vector, ordered by degree reverse lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Monomial(v)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    /// Index of the single variable if the monomial is a pure power.
    pub fn pure_power(&self) -> Option<usize> {
        let nz: Vec<usize> = self.0.iter().positions(|e| *e > 0).collect();
        (nz.len() == 1).then(|| nz[0])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    // smaller exponent in the last differing variable is larger
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over a weight system.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Arc<WeightSystem>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

fn same_ring(a: &Arc<WeightSystem>, b: &Arc<WeightSystem>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Poly {
    pub fn zero(ring: &Arc<WeightSystem>) -> Self {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<WeightSystem>, c: Scalar) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<WeightSystem>) -> Self {
        Self::constant(ring, Scalar::one())
    }

    pub fn var(ring: &Arc<WeightSystem>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), Scalar::one())
    }

    pub fn monomial(ring: &Arc<WeightSystem>, m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { ring: ring.clone(), terms }
    }

    pub fn from_terms(ring: &Arc<WeightSystem>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<WeightSystem> {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.ring.nvars()))
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                crate::field::Field::add_assign_ref(e, c);
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_ring(&self, o: &Poly) {
        assert!(same_ring(&self.ring, &o.ring), "polynomials live in different rings");
    }

    pub fn add_ref(&self, o: &Poly) -> Poly {
        self.check_ring(o);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn add_assign_ref(&mut self, o: &Poly) {
        self.check_ring(o);
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn sub_ref(&self, o: &Poly) -> Poly {
        self.add_ref(&o.neg_ref())
    }

    pub fn neg_ref(&self) -> Poly {
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul_ref(s))).collect() }
    }

    pub fn mul_monomial(&self, mono: &Monomial, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.mul_ref(s))).collect() }
    }

    pub fn mul_ref(&self, o: &Poly) -> Poly {
        self.check_ring(o);
        let mut out = Poly::zero(&self.ring);
        if self.is_zero() || o.is_zero() {
            return out;
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), &c1.mul_ref(c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Weighted degree if homogeneous; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<BigRational> {
        let units: Vec<u64> = self.terms.keys().map(|m| self.ring.units(m)).dedup().collect();
        let first = *units.first()?;
        units.iter().all(|u| *u == first).then(|| BigRational::new(first.into(), self.ring.denom().into()))
    }

    pub fn is_homogeneous_of(&self, deg: &BigRational) -> bool {
        self.terms.keys().all(|m| self.ring.degree(m) == *deg)
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm.0[i] -= 1;
            out.add_term(mm, &c.mul_ref(&Scalar::from_int(e as i64)));
        }
        out
    }

    /// Moves the polynomial to `target`: variable `i` becomes `map[i]`
    /// (or zero for `None`).
    pub fn rename(&self, target: &Arc<WeightSystem>, map: &[Option<usize>]) -> Poly {
        assert_eq!(map.len(), self.ring.nvars());
        let mut out = Poly::zero(target);
        'terms: for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (i, ex) in m.0.iter().enumerate() {
                if *ex == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] += ex,
                    None => continue 'terms,
                }
            }
            out.add_term(Monomial(e), c);
        }
        out
    }

    /// Substitutes `images[i]` (in `target`) for variable `i`.
    pub fn substitute(&self, target: &Arc<WeightSystem>, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars());
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, e) in m.0.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                while powers[i].len() <= *e as usize {
                    let next = powers[i].last().unwrap().mul_ref(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul_ref(&powers[i][*e as usize]);
            }
            out.add_assign_ref(&t);
        }
        out
    }

    /// Exact quotient `self / d`.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        self.check_ring(d);
        let (lm, lc) = d.leading().ok_or_else(|| Error::NotDivisible("division by zero".into()))?;
        let lc_inv = lc.inv().unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.ring);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return Err(Error::NotDivisible(format!("{self} by {d}")));
            }
            let qm = lm.quotient(&m);
            let qc = c.mul_ref(&lc_inv);
            rem = rem.sub_ref(&d.mul_monomial(&qm, &qc));
            quot.add_term(qm, &qc);
        }
        Ok(quot)
    }

    /// Parses text such as `x^4 + 3/2*y^2 - [0,1]@4*x*z`.
    pub fn parse(text: &str, ring: &Arc<WeightSystem>) -> Result<Poly> {
        let raw = parse_raw(text)?;
        let mut p = Poly::zero(ring);
        for (c, factors) in raw {
            let mut e = vec![0u32; ring.nvars()];
            for (name, ex) in factors {
                let i = ring.index_of(&name).ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                e[i] += ex;
            }
            p.add_term(Monomial(e), &c);
        }
        Ok(p)
    }

    /// Maximal exponent of variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }
}

/// A term as coefficient plus `(variable, exponent)` factors.
pub type RawTerm = (Scalar, Vec<(String, u32)>);

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, String::from_utf8_lossy(self.s)))
    }
    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &'a str {
        let start = self.pos;
        while self.pos < self.s.len() && f(self.s[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap()
    }
    fn number(&mut self) -> Result<Scalar> {
        let n = self.take_while(|b| b.is_ascii_digit());
        let mut text = n.to_string();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let d = self.take_while(|b| b.is_ascii_digit());
            if d.is_empty() {
                return Err(self.err("missing denominator"));
            }
            text = format!("{n}/{d}");
        }
        Scalar::parse(&text)
    }
    fn bracket_scalar(&mut self) -> Result<Scalar> {
        let start = self.pos;
        let close = self.s[start..].iter().position(|b| *b == b']').ok_or_else(|| self.err("unterminated `[`"))?;
        self.pos = start + close + 1;
        self.skip_ws();
        if self.s.get(self.pos) != Some(&b'@') {
            return Err(self.err("expected `@conductor`"));
        }
        self.pos += 1;
        self.skip_ws();
        let m = self.take_while(|b| b.is_ascii_digit());
        let text = format!("{}@{m}", std::str::from_utf8(&self.s[start..start + close + 1]).unwrap());
        Scalar::parse(&text)
    }
}

fn is_ident_start(b: u8) -> bool {
    b.is_ascii_alphabetic() || b == b'_'
}

fn is_ident(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b == b'\''
}

/// Parses polynomial text without a ring.
pub fn parse_raw(text: &str) -> Result<Vec<RawTerm>> {
    let mut lx = Lexer { s: text.as_bytes(), pos: 0 };
    let mut out = Vec::new();
    if lx.peek().is_none() {
        return Err(lx.err("empty polynomial"));
    }
    let mut first = true;
    loop {
        let mut sign = 1i64;
        match lx.peek() {
            None if !first => break,
            Some(b'+') => {
                lx.pos += 1;
            }
            Some(b'-') => {
                lx.pos += 1;
                sign = -1;
            }
            _ if first => {}
            _ => return Err(lx.err("expected `+` or `-`")),
        }
        first = false;
        let mut coeff = Scalar::from_int(sign);
        let mut factors = Vec::new();
        loop {
            match lx.peek() {
                Some(b) if b.is_ascii_digit() => coeff = coeff.mul_ref(&lx.number()?),
                Some(b'[') => coeff = coeff.mul_ref(&lx.bracket_scalar()?),
                Some(b) if is_ident_start(b) => {
                    let name = lx.take_while(is_ident).to_string();
                    let mut e = 1u32;
                    if lx.peek() == Some(b'^') {
                        lx.pos += 1;
                        lx.skip_ws();
                        let digits = lx.take_while(|b| b.is_ascii_digit());
                        e = digits.parse().map_err(|_| lx.err("bad exponent"))?;
                    }
                    factors.push((name, e));
                }
                _ => return Err(lx.err("expected a factor")),
            }
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
            } else {
                break;
            }
        }
        out.push((coeff, factors));
        if lx.peek().is_none() {
            break;
        }
    }
    Ok(out)
}

/// Variable names in order of first appearance.
pub fn raw_variables(terms: &[RawTerm]) -> Vec<String> {
    terms.iter().flat_map(|(_, f)| f.iter().map(|(n, _)| n.clone())).unique().collect()
}

/// Solves for weights making every monomial of weighted degree 2.
pub fn infer_weights(terms: &[RawTerm], vars: &[String]) -> Result<Vec<BigRational>> {
    let rows: Vec<Vec<BigRational>> = terms
        .iter()
        .filter(|(c, _)| !c.is_zero())
        .map(|(_, f)| {
            let mut r = vec![BigRational::zero(); vars.len()];
            for (name, e) in f {
                let i = vars.iter().position(|v| v == name).unwrap();
                r[i] += BigRational::from_integer((*e).into());
            }
            r
        })
        .collect();
    if crate::linalg::rank_dense(&rows) < vars.len() {
        return Err(Error::NotQuasiHomogeneous("weights are not determined by the monomials".into()));
    }
    let rhs = vec![BigRational::from_integer(2.into()); rows.len()];
    let w = crate::linalg::solve_dense(&rows, &rhs)
        .ok_or_else(|| Error::NotQuasiHomogeneous("no weights give every monomial degree 2".into()))?;
    if w.iter().any(|x| !x.is_positive()) {
        return Err(Error::NotQuasiHomogeneous("inferred weights are not positive".into()));
    }
    Ok(w)
}

fn fmt_term(ring: &WeightSystem, m: &Monomial, c: &Scalar) -> String {
    let vars: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, e)| if *e == 1 { ring.vars()[i].clone() } else { format!("{}^{e}", ring.vars()[i]) })
        .collect();
    let monomial = vars.join("*");
    if monomial.is_empty() {
        return c.to_string();
    }
    match c.to_rational() {
        Some(q) if q.is_one() => monomial,
        Some(q) if (-q.clone()).is_one() => format!("-{monomial}"),
        _ => format!("{c}*{monomial}"),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let t = fmt_term(&self.ring, m, c);
            if k == 0 {
                write!(f, "{t}")?;
            } else if let Some(rest) = t.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {t}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn ring3() -> Arc<WeightSystem> {
        WeightSystem::new(vec!["x".into(), "y".into(), "z".into()], vec![rat(1, 2), rat(1, 1), rat(1, 1)]).unwrap()
    }

    #[test]
    fn degrevlex_order() {
        let a = Monomial(vec![1, 0, 1]);
        let b = Monomial(vec![0, 2, 0]);
        // same degree; last differing variable is z, a has more z so a < b
        assert!(a < b);
        assert!(Monomial(vec![0, 0, 3]) > b);
    }

    #[test]
    fn parse_print_roundtrip() {
        let r = ring3();
        let p = Poly::parse("x^4 + 3/2*y^2 - [0,1]@4*x*z - 1", &r).unwrap();
        let q = Poly::parse(&p.to_string(), &r).unwrap();
        assert_eq!(p, q);
        assert!(Poly::parse("x^4 + w", &r).is_err());
        assert!(Poly::parse("x^^2", &r).is_err());
    }

    #[test]
    fn exact_division_and_derivative() {
        let r = ring3();
        let p = Poly::parse("y^4 - x^8", &r).unwrap();
        let d = Poly::parse("y - x^2", &r).unwrap();
        let q = p.div_exact(&d).unwrap();
        assert_eq!(q.mul_ref(&d), p);
        assert!(p.div_exact(&Poly::parse("y - x", &r).unwrap()).is_err());
        assert_eq!(p.derivative(0), Poly::parse("-8*x^7", &r).unwrap());
        assert_eq!(p.homogeneous_degree(), Some(rat(4, 1)));
    }

    #[test]
    fn weight_inference() {
        let raw = parse_raw("x^3 + x*y^3 + z^2").unwrap();
        let vars = raw_variables(&raw);
        let w = infer_weights(&raw, &vars).unwrap();
        assert_eq!(w, vec![rat(2, 3), rat(4, 9), rat(1, 1)]);
        let raw = parse_raw("x*y").unwrap();
        assert!(infer_weights(&raw, &raw_variables(&raw)).is_err());
    }

    #[test]
    fn monomial_enumeration() {
        let r = ring3();
        // D = 2, int weights (1,2,2); degree 2 units -> x^2, y, z
        assert_eq!(r.monomials_of_units(2).len(), 3);
        assert_eq!(r.monomials_below_units(3).len(), 1 + 1 + 3);
    }
}
