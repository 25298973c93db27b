//! The two-term projective bimodule resolution of a hereditary path algebra
//! and its bimodule dual.

use num_traits::One;

use crate::algebra::{Rat, Vector};
use crate::dg::{DenseFree, FreeBimodule, FreeTerm, Generator};
use crate::error::Result;
use crate::quiver::PathAlgebra;

/// `⊕_a A e_{h(a)} ⊗ e_{t(a)} A -> ⊕_v A e_v ⊗ e_v A` in degrees `-1, 0`,
/// with `d u_a = a u_{t(a)} - u_{h(a)} a`.
pub fn standard_resolution(alg: &PathAlgebra) -> Result<FreeBimodule> {
    let quiver = alg.quiver();
    quiver.require_acyclic()?;
    let nv = quiver.num_vertices();
    let mut generators: Vec<Generator> = quiver
        .vertices()
        .iter()
        .enumerate()
        .map(|(v, name)| Generator { name: format!("u{name}"), left_idempotent: v, right_idempotent: v, degree: 0 })
        .collect();
    let mut differential: Vec<Vec<FreeTerm>> = vec![Vec::new(); nv];
    for (a, arrow) in quiver.arrows().iter().enumerate() {
        generators.push(Generator {
            name: format!("u{}", arrow.name),
            left_idempotent: arrow.head,
            right_idempotent: arrow.tail,
            degree: -1,
        });
        differential.push(vec![
            FreeTerm { coef: Rat::one(), left: alg.arrow(a), generator: arrow.tail, right: alg.idempotent(arrow.tail) },
            FreeTerm { coef: -Rat::one(), left: alg.idempotent(arrow.head), generator: arrow.head, right: alg.arrow(a) },
        ]);
    }
    FreeBimodule::new(alg.algebra().clone(), alg.algebra().clone(), generators, differential)
}

/// The augmentation `x u_v y -> x y`, zero on the arrow generators, as columns.
pub fn augmentation(alg: &PathAlgebra, dense: &DenseFree) -> Vec<Vector> {
    let nv = alg.quiver().num_vertices();
    let a = alg.algebra();
    dense
        .basis
        .iter()
        .map(|&(x, g, y)| if g < nv { a.mul(&[(x, Rat::one())], &[(y, Rat::one())]) } else { Vec::new() })
        .collect()
}

/// Bimodule dual of a free complex: a generator `g` of type `(i, j)` and
/// degree `k` gives `g^v` of type `(j, i)` and degree `-k`; a term `x h y` of
/// `d g` contributes `-(-1)^{|h^v|} y g^v x` to `d h^v`.
pub fn bimodule_dual(free: &FreeBimodule) -> Result<FreeBimodule> {
    let generators: Vec<Generator> = free
        .generators()
        .iter()
        .map(|g| Generator {
            name: format!("{}^", g.name),
            left_idempotent: g.right_idempotent,
            right_idempotent: g.left_idempotent,
            degree: -g.degree,
        })
        .collect();
    let mut differential: Vec<Vec<FreeTerm>> = vec![Vec::new(); generators.len()];
    for (g, terms) in free.differential().iter().enumerate() {
        for t in terms {
            let parity = generators[t.generator].degree;
            let sign = if parity.rem_euclid(2) == 0 { -Rat::one() } else { Rat::one() };
            differential[t.generator].push(FreeTerm { coef: &t.coef * sign, left: t.right, generator: g, right: t.left });
        }
    }
    FreeBimodule::new(free.right().clone(), free.left().clone(), generators, differential)
}

/// `M[k]` for a free complex: degrees lowered by `k`, differential times `(-1)^k`.
pub fn shift_free(free: &FreeBimodule, k: i64) -> Result<FreeBimodule> {
    let sign = if k.rem_euclid(2) == 0 { Rat::one() } else { -Rat::one() };
    let generators = free.generators().iter().map(|g| Generator { degree: g.degree - k, ..g.clone() }).collect();
    let differential = free
        .differential()
        .iter()
        .map(|terms| terms.iter().map(|t| FreeTerm { coef: &t.coef * &sign, ..t.clone() }).collect())
        .collect();
    FreeBimodule::new(free.left().clone(), free.right().clone(), generators, differential)
}
