//! Cohomology of the truncated completion against the Ginzburg algebra.

use serde::Serialize;

use super::completion::CyCompletion;
use crate::error::Result;
use crate::quiver::GinzburgAlgebra;
use crate::quiver::PathAlgebra;

/// One row of the comparison; `level = None` marks a per-degree total.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub degree: i64,
    pub level: Option<usize>,
    pub pi_dim: usize,
    pub gamma_dim: usize,
    pub certified: bool,
}

impl ComparisonRow {
    pub fn agrees(&self) -> bool {
        self.pi_dim == self.gamma_dim
    }
}

/// Compares `H(Π_n(kQ))` truncated at level `cap` with `H(Γ_n(Q))` on the
/// matching bidegrees. A tensor level `m` in degree `g` corresponds to `s`
/// starred arrows and `l` loops with `s + l = m` and `g = -(n-2) s - (n-1) l`.
/// Per-level rows are exact. A per-degree total is certified when no level
/// above `cap` can reach that degree, which needs `n >= 3`.
pub fn compare_ginzburg(alg: &PathAlgebra, n: u32, cap: usize) -> Result<Vec<ComparisonRow>> {
    let completion = CyCompletion::new(alg.clone(), n, cap)?;
    let ginzburg = GinzburgAlgebra::new((**alg.quiver()).clone(), n)?;
    let step = i64::from(n) - 2;
    let mut rows = Vec::new();
    let mut totals: std::collections::BTreeMap<i64, (usize, usize)> = Default::default();
    for m in 0..=cap {
        let mi = m as i64;
        // l loops: degree = -step*m - l
        for l in 0..=mi {
            let degree = -step * mi - l;
            let s = (mi - l) as usize;
            let pi_dim = completion.cohomology(m, degree);
            let gamma_dim = ginzburg.bidegree_cohomology(s, l as usize);
            let total = totals.entry(degree).or_insert((0, 0));
            total.0 += pi_dim;
            total.1 += gamma_dim;
            rows.push(ComparisonRow { degree, level: Some(m), pi_dim, gamma_dim, certified: true });
        }
    }
    let bound = -step * (cap as i64 + 1);
    for (degree, (pi_dim, gamma_dim)) in totals.into_iter().rev() {
        rows.push(ComparisonRow { degree, level: None, pi_dim, gamma_dim, certified: n >= 3 && degree > bound });
    }
    Ok(rows)
}
