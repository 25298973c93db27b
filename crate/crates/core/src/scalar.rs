//! Exact scalars in cyclotomic fields `Q(zeta_m)`, stored in the power basis
//! modulo the m-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::Field;
use crate::Error;

/// Largest conductor accepted; keeps the power basis small.
pub const MAX_CONDUCTOR: u32 = 2048;

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients (low to high) of the m-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<i64>> {
    assert!(m >= 1);
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = div_monic(&num, &phi_d);
        }
    }
    let p = Arc::new(num);
    cyclotomic_cache().lock().unwrap().insert(m, p.clone());
    p
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (dn..num.len()).rev() {
        let c = rem[k];
        if c != 0 {
            quot[k - dn] = c;
            for (j, dj) in den.iter().enumerate() {
                rem[k - dn + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0));
    quot
}

/// Euler phi, the degree of `Q(zeta_m)` over `Q`.
pub fn euler_phi(m: u32) -> usize {
    cyclotomic_polynomial(m).len() - 1
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Element of `Q(zeta_m)`; `coeffs[k]` multiplies `zeta_m^k`.
#[derive(Clone, Debug)]
pub struct Scalar {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl Scalar {
    pub fn from_rational(q: BigRational) -> Self {
        Scalar { conductor: 1, coeffs: vec![q] }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `zeta_m^k` for a primitive m-th root of unity.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m >= 1 && m <= MAX_CONDUCTOR, "conductor out of range");
        let k = k.rem_euclid(m as i64) as usize;
        let mut v = vec![BigRational::zero(); m as usize];
        v[k] = BigRational::one();
        Self::from_raw(m, v)
    }

    /// Builds from an arbitrary-length coefficient vector, reducing mod Phi_m.
    pub fn from_raw(m: u32, mut v: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(m);
        let deg = phi.len() - 1;
        if v.len() > deg {
            for k in (deg..v.len()).rev() {
                if v[k].is_zero() {
                    continue;
                }
                let c = std::mem::replace(&mut v[k], BigRational::zero());
                for (j, pj) in phi.iter().enumerate().take(deg) {
                    if *pj != 0 {
                        v[k - deg + j] -= &c * BigRational::from_integer((*pj).into());
                    }
                }
            }
            v.truncate(deg);
        }
        v.resize(deg, BigRational::zero());
        let mut s = Scalar { conductor: m, coeffs: v };
        s.normalize();
        s
    }

    /// Parses `p/q`, an integer, or `[c0,c1,...]@m`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let t = text.trim();
        if let Some(rest) = t.strip_prefix('[') {
            let (body, tail) = rest
                .split_once(']')
                .ok_or_else(|| Error::Parse(format!("unterminated scalar `{t}`")))?;
            let m: u32 = tail
                .trim()
                .strip_prefix('@')
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| Error::Parse(format!("missing conductor in `{t}`")))?;
            if m == 0 || m > MAX_CONDUCTOR {
                return Err(Error::Parse(format!("bad conductor {m}")));
            }
            let coeffs = body
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Self::from_raw(m, coeffs))
        } else {
            parse_rational(t).map(Self::from_rational)
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn normalize(&mut self) {
        if self.conductor == 1 {
            return;
        }
        if self.coeffs.len() <= 1 || self.coeffs[1..].iter().all(Zero::is_zero) {
            let c = self.coeffs.first().cloned().unwrap_or_else(BigRational::zero);
            self.conductor = 1;
            self.coeffs = vec![c];
        }
    }

    /// Same element written over `Q(zeta_target)`; `target` must be a multiple.
    pub fn promote(&self, target: u32) -> Scalar {
        assert!(target % self.conductor == 0, "conductor does not divide target");
        if target == self.conductor {
            return self.clone();
        }
        let step = (target / self.conductor) as usize;
        let mut v = vec![BigRational::zero(); self.coeffs.len() * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * step] = c.clone();
        }
        Scalar::from_raw(target, v).with_conductor(target)
    }

    // keeps the requested conductor even when the value is rational
    fn with_conductor(mut self, m: u32) -> Scalar {
        if self.conductor != m {
            let deg = euler_phi(m);
            let mut v = vec![BigRational::zero(); deg];
            v[0] = self.coeffs[0].clone();
            self.conductor = m;
            self.coeffs = v;
        }
        self
    }

    fn aligned(&self, other: &Scalar) -> (u32, Scalar, Scalar) {
        let m = lcm(self.conductor, other.conductor);
        (m, self.promote(m), other.promote(m))
    }

    fn zip_with(&self, other: &Scalar, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Scalar {
        if self.conductor == 1 && other.conductor == 1 {
            return Scalar::from_rational(f(&self.coeffs[0], &other.coeffs[0]));
        }
        let (m, a, b) = self.aligned(other);
        let v = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| f(x, y)).collect();
        let mut s = Scalar { conductor: m, coeffs: v };
        s.normalize();
        s
    }

    pub fn add_ref(&self, other: &Scalar) -> Scalar {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub_ref(&self, other: &Scalar) -> Scalar {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn neg_ref(&self) -> Scalar {
        Scalar { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul_ref(&self, other: &Scalar) -> Scalar {
        if self.conductor == 1 {
            return other.scale_rational(&self.coeffs[0]);
        }
        if other.conductor == 1 {
            return self.scale_rational(&other.coeffs[0]);
        }
        let (m, a, b) = self.aligned(other);
        let mut v = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        Scalar::from_raw(m, v)
    }

    pub fn scale_rational(&self, q: &BigRational) -> Scalar {
        let mut s = Scalar { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() };
        s.normalize();
        s
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.conductor == 1 {
            return Some(Scalar::from_rational(self.coeffs[0].recip()));
        }
        // solve (multiplication by self) * c = 1 in the power basis
        let m = self.conductor;
        let n = self.coeffs.len();
        let mut columns = Vec::with_capacity(n);
        for j in 0..n {
            let mut shifted = vec![BigRational::zero(); n + j];
            for (k, c) in self.coeffs.iter().enumerate() {
                shifted[k + j] = c.clone();
            }
            columns.push(Scalar::from_raw(m, shifted).with_conductor(m).coeffs);
        }
        let mut rhs = vec![BigRational::zero(); n];
        rhs[0] = BigRational::one();
        let rows: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| columns[j][i].clone()).collect()).collect();
        let sol = crate::linalg::solve_dense(&rows, &rhs)?;
        Some(Scalar::from_raw(m, sol))
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }
}

fn parse_rational(text: &str) -> Result<BigRational, Error> {
    let t = text.trim();
    let bad = || Error::Parse(format!("bad rational `{t}`"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => BigInt::from_str(t).map(BigRational::from_integer).map_err(|_| bad()),
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]@{}", self.conductor)
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Scalar::parse(s)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        self.add_ref(&o)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        self.sub_ref(&o)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        self.mul_ref(&o)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
    fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }
}

impl Field for Scalar {
    fn from_int(v: i64) -> Self {
        Scalar::from_int(v)
    }
    fn add_ref(&self, o: &Self) -> Self {
        Scalar::add_ref(self, o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Scalar::sub_ref(self, o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Scalar::mul_ref(self, o)
    }
    fn neg_ref(&self) -> Self {
        Scalar::neg_ref(self)
    }
    fn inv(&self) -> Option<Self> {
        Scalar::inv(self)
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if self.conductor == 1 && a.conductor == 1 && b.conductor == 1 {
            self.coeffs[0] -= &a.coeffs[0] * &b.coeffs[0];
        } else {
            *self = self.sub_ref(&a.mul_ref(b));
        }
    }
    fn add_assign_ref(&mut self, o: &Self) {
        if self.conductor == 1 && o.conductor == 1 {
            self.coeffs[0] += &o.coeffs[0];
        } else {
            *self = self.add_ref(o);
        }
    }
}

/// True when the rational is an integer of absolute value one.
pub fn is_unit_integer(q: &BigRational) -> bool {
    q.is_integer() && q.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn cyclotomic_polynomials_small() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(30), 8);
    }

    #[test]
    fn root_powers_close_up() {
        for m in 1..=12u32 {
            let z = Scalar::root_of_unity(m, 1);
            assert_eq!(z.pow(m), Scalar::one(), "m = {m}");
            let s = (0..m as i64).fold(Scalar::zero(), |acc, k| acc + Scalar::root_of_unity(m, k));
            let expect = if m == 1 { Scalar::one() } else { Scalar::zero() };
            assert_eq!(s, expect);
        }
    }

    #[test]
    fn mixed_conductors_promote() {
        let i = Scalar::root_of_unity(4, 1);
        let w = Scalar::root_of_unity(3, 1);
        let p = i.mul_ref(&w);
        assert_eq!(p.conductor(), 12);
        assert_eq!(p, Scalar::root_of_unity(12, 7));
        assert_eq!(i.mul_ref(&i), Scalar::from_int(-1));
        assert!(i.mul_ref(&i).is_rational());
    }

    #[test]
    fn inverse_and_text_roundtrip() {
        let a = Scalar::parse("[1/2,3,-2]@7").unwrap();
        let b = a.inv().unwrap();
        assert_eq!(a.mul_ref(&b), Scalar::one());
        let back = Scalar::parse(&a.to_string()).unwrap();
        assert_eq!(a, back);
        assert_eq!(Scalar::parse("-3/6").unwrap(), Scalar::from_rational(rat(-1, 2)));
        assert!(Scalar::parse("[1,2]").is_err());
        assert!(Scalar::zero().inv().is_none());
    }
}
