//! Simple singularities: potentials in three variables, Milnor numbers and
//! the integer action matrices on the A-type indecomposables.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::rat;
use crate::poly::{Poly, WeightSystem};

/// ADE label; `A(k)` is A_k and `D(k)` is D_k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdeType {
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
}

impl AdeType {
    pub fn validate(self) -> Result<Self> {
        match self {
            AdeType::A(k) if k >= 1 => Ok(self),
            AdeType::D(k) if k >= 4 => Ok(self),
            AdeType::E6 | AdeType::E7 | AdeType::E8 => Ok(self),
            _ => Err(Error::Parse(format!("no simple singularity {self}"))),
        }
    }

    /// Rank of the Dynkin diagram, equal to the Milnor number.
    pub fn rank(self) -> usize {
        match self {
            AdeType::A(k) | AdeType::D(k) => k as usize,
            AdeType::E6 => 6,
            AdeType::E7 => 7,
            AdeType::E8 => 8,
        }
    }

    /// Potential text and weights of `(x, y, z)`.
    pub fn potential_data(self) -> (String, [BigRational; 3]) {
        let one = rat(1, 1);
        match self {
            AdeType::A(k) => {
                let d = k as i64 + 1;
                (format!("x^{d} + y^2 + z^2"), [rat(2, d), one.clone(), one])
            }
            AdeType::D(k) => {
                let d = k as i64 - 1;
                (format!("x^{d} + x*y^2 + z^2"), [rat(2, d), rat(d - 1, d), one])
            }
            AdeType::E6 => ("x^3 + y^4 + z^2".into(), [rat(2, 3), rat(1, 2), one]),
            AdeType::E7 => ("x^3 + x*y^3 + z^2".into(), [rat(2, 3), rat(4, 9), one]),
            AdeType::E8 => ("x^3 + y^5 + z^2".into(), [rat(2, 3), rat(2, 5), one]),
        }
    }

    pub fn potential(self) -> Poly {
        let (text, weights) = self.potential_data();
        let ring: Arc<WeightSystem> =
            WeightSystem::new(vec!["x".into(), "y".into(), "z".into()], weights.to_vec()).expect("table weights are positive");
        Poly::parse(&text, &ring).expect("table potentials parse")
    }

    /// Smallest member of each family.
    pub fn smallest() -> [AdeType; 5] {
        [AdeType::A(1), AdeType::D(4), AdeType::E6, AdeType::E7, AdeType::E8]
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeType::A(k) => write!(f, "A{k}"),
            AdeType::D(k) => write!(f, "D{k}"),
            AdeType::E6 => write!(f, "E6"),
            AdeType::E7 => write!(f, "E7"),
            AdeType::E8 => write!(f, "E8"),
        }
    }
}

impl FromStr for AdeType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown Dynkin type `{s}`"));
        let (head, tail) = s.split_at(s.len().min(1));
        let k: u32 = tail.parse().map_err(|_| bad())?;
        let t = match (head.to_ascii_uppercase().as_str(), k) {
            ("A", k) => AdeType::A(k),
            ("D", k) => AdeType::D(k),
            ("E", 6) => AdeType::E6,
            ("E", 7) => AdeType::E7,
            ("E", 8) => AdeType::E8,
            _ => return Err(bad()),
        };
        t.validate()
    }
}

/// Integer matrix of an action on the indecomposables `T_1, ..., T_r` of an
/// A-type singularity, indexed by its rank.
pub fn action_matrix(rank: usize) -> Option<&'static [&'static [i64]]> {
    match rank {
        11 => Some(M_A11),
        17 => Some(M_A17),
        29 => Some(M_A29),
        _ => None,
    }
}

/// Matrix entries as rationals.
pub fn to_rational_matrix(m: &[&[i64]]) -> Vec<Vec<BigRational>> {
    m.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()
}

/// Action matrix for A11.
pub const M_A11: &[&[i64]] = &[
    &[1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
    &[0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0],
    &[0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0],
    &[0, 0, 0, 2, 0, 1, 0, 1, 0, 1, 0],
    &[0, 0, 1, 0, 2, 0, 1, 0, 1, 0, 1],
    &[0, 1, 0, 1, 0, 2, 0, 1, 0, 1, 0],
    &[1, 0, 1, 0, 1, 0, 2, 0, 1, 0, 0],
    &[0, 1, 0, 1, 0, 1, 0, 2, 0, 0, 0],
    &[0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0],
    &[0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0],
    &[0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1],
];

/// Action matrix for A17.
pub const M_A17: &[&[i64]] = &[
    &[1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1],
    &[0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0],
    &[0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0],
    &[0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0],
    &[0, 0, 0, 0, 2, 0, 1, 0, 1, 0, 1, 0, 2, 0, 0, 0, 0],
    &[0, 0, 0, 1, 0, 2, 0, 1, 0, 1, 0, 2, 0, 1, 0, 0, 0],
    &[0, 0, 1, 0, 1, 0, 2, 0, 1, 0, 2, 0, 1, 0, 1, 0, 0],
    &[0, 1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 1, 0, 1, 0, 1, 0],
    &[1, 0, 1, 0, 1, 0, 1, 0, 3, 0, 1, 0, 1, 0, 1, 0, 1],
    &[0, 1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 1, 0, 1, 0, 1, 0],
    &[0, 0, 1, 0, 1, 0, 2, 0, 1, 0, 2, 0, 1, 0, 1, 0, 0],
    &[0, 0, 0, 1, 0, 2, 0, 1, 0, 1, 0, 2, 0, 1, 0, 0, 0],
    &[0, 0, 0, 0, 2, 0, 1, 0, 1, 0, 1, 0, 2, 0, 0, 0, 0],
    &[0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0],
    &[0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0],
    &[0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0],
    &[1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1],
];

/// Action matrix for A29.
pub const M_A29: &[&[i64]] = &[
    &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0],
    &[0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0],
    &[0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0],
    &[0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 2, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0],
    &[0, 0, 0, 0, 0, 2, 0, 1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 1, 0, 1, 0, 1, 0, 2, 0, 0, 0, 0, 0],
    &[0, 0, 0, 0, 1, 0, 2, 0, 1, 0, 1, 0, 2, 0, 2, 0, 2, 0, 1, 0, 1, 0, 2, 0, 1, 0, 0, 0, 0],
    &[0, 0, 0, 1, 0, 1, 0, 2, 0, 1, 0, 2, 0, 2, 0, 2, 0, 2, 0, 1, 0, 2, 0, 1, 0, 1, 0, 0, 0],
    &[0, 0, 1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 1, 0, 1, 0, 1, 0, 0],
    &[0, 1, 0, 1, 0, 1, 0, 1, 0, 3, 0, 2, 0, 2, 0, 2, 0, 2, 0, 3, 0, 1, 0, 1, 0, 1, 0, 1, 0],
    &[1, 0, 1, 0, 1, 0, 1, 0, 2, 0, 3, 0, 2, 0, 2, 0, 2, 0, 3, 0, 2, 0, 1, 0, 1, 0, 1, 0, 1],
    &[0, 1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 3, 0, 2, 0, 2, 0, 3, 0, 2, 0, 2, 0, 1, 0, 1, 0, 1, 0],
    &[0, 0, 1, 0, 1, 0, 2, 0, 2, 0, 2, 0, 3, 0, 2, 0, 3, 0, 2, 0, 2, 0, 2, 0, 1, 0, 1, 0, 0],
    &[0, 0, 0, 1, 0, 2, 0, 2, 0, 2, 0, 2, 0, 3, 0, 3, 0, 2, 0, 2, 0, 2, 0, 2, 0, 1, 0, 0, 0],
    &[0, 0, 0, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 4, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 0, 0, 0],
    &[0, 0, 0, 1, 0, 2, 0, 2, 0, 2, 0, 2, 0, 3, 0, 3, 0, 2, 0, 2, 0, 2, 0, 2, 0, 1, 0, 0, 0],
    &[0, 0, 1, 0, 1, 0, 2, 0, 2, 0, 2, 0, 3, 0, 2, 0, 3, 0, 2, 0, 2, 0, 2, 0, 1, 0, 1, 0, 0],
    &[0, 1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 3, 0, 2, 0, 2, 0, 3, 0, 2, 0, 2, 0, 1, 0, 1, 0, 1, 0],
    &[1, 0, 1, 0, 1, 0, 1, 0, 2, 0, 3, 0, 2, 0, 2, 0, 2, 0, 3, 0, 2, 0, 1, 0, 1, 0, 1, 0, 1],
    &[0, 1, 0, 1, 0, 1, 0, 1, 0, 3, 0, 2, 0, 2, 0, 2, 0, 2, 0, 3, 0, 1, 0, 1, 0, 1, 0, 1, 0],
    &[0, 0, 1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 1, 0, 1, 0, 1, 0, 0],
    &[0, 0, 0, 1, 0, 1, 0, 2, 0, 1, 0, 2, 0, 2, 0, 2, 0, 2, 0, 1, 0, 2, 0, 1, 0, 1, 0, 0, 0],
    &[0, 0, 0, 0, 1, 0, 2, 0, 1, 0, 1, 0, 2, 0, 2, 0, 2, 0, 1, 0, 1, 0, 2, 0, 1, 0, 0, 0, 0],
    &[0, 0, 0, 0, 0, 2, 0, 1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 1, 0, 1, 0, 1, 0, 2, 0, 0, 0, 0, 0],
    &[0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 2, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0],
    &[0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0],
    &[0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0],
    &[0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0],
    &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::central_charge;

    #[test]
    fn parse_and_print() {
        for s in ["A1", "A11", "D4", "E6", "E7", "E8"] {
            assert_eq!(s.parse::<AdeType>().unwrap().to_string(), s);
        }
        assert!("D3".parse::<AdeType>().is_err());
        assert!("E9".parse::<AdeType>().is_err());
    }

    #[test]
    fn potentials_are_quasi_homogeneous() {
        for t in [AdeType::A(5), AdeType::D(7), AdeType::E6, AdeType::E7, AdeType::E8] {
            assert!(t.potential().is_homogeneous_of(&rat(2, 1)), "{t}");
        }
        assert_eq!(central_charge(AdeType::A(11).potential().ring()), rat(5, 2));
    }

    #[test]
    fn matrices_square_and_symmetric() {
        for (m, n) in [(M_A11, 11), (M_A17, 17), (M_A29, 29)] {
            assert_eq!(m.len(), n);
            for i in 0..n {
                assert_eq!(m[i].len(), n);
                for j in 0..n {
                    assert_eq!(m[i][j], m[j][i]);
                }
            }
        }
    }
}
