#![allow(dead_code)]

use std::sync::Arc;

use lgcy_core::ade::AdeType;
use lgcy_core::algebra::{basis_vector, semisimple, FinDimAlgebra, Rat, Vector};
use lgcy_core::dg::{
    base_change_iso, idempotent_support, BaseChangeReport, DgBimodule, FreeBimodule, FreeTerm, Generator,
};
use lgcy_core::quiver::{symmetric_a3, GinzburgAlgebra, PathAlgebra};
use num_traits::Zero;
use rand::Rng;

/// Basis elements `x` with `e_i x e_j = x`.
pub fn corner(alg: &FinDimAlgebra, i: usize, j: usize) -> Vec<usize> {
    let left = idempotent_support(alg, &alg.idempotents()[i], false).unwrap();
    let right = idempotent_support(alg, &alg.idempotents()[j], true).unwrap();
    left.into_iter().filter(|k| right.contains(k)).collect()
}

/// Random two-term complex of free bimodules `g -> h` in degrees -1, 0 with
/// random small integer coefficients.
pub fn random_two_term(left: &Arc<FinDimAlgebra>, right: &Arc<FinDimAlgebra>, rng: &mut impl Rng) -> FreeBimodule {
    let nl = left.idempotents().len();
    let nr = right.idempotents().len();
    let count = rng.gen_range(1..=2);
    let mut generators = Vec::new();
    for k in 0..count {
        generators.push(Generator {
            name: format!("h{k}"),
            left_idempotent: rng.gen_range(0..nl),
            right_idempotent: rng.gen_range(0..nr),
            degree: 0,
        });
    }
    let g = Generator {
        name: "g".into(),
        left_idempotent: rng.gen_range(0..nl),
        right_idempotent: rng.gen_range(0..nr),
        degree: -1,
    };
    let mut terms = Vec::new();
    for (h, target) in generators.iter().enumerate() {
        for x in corner(left, g.left_idempotent, target.left_idempotent) {
            for y in corner(right, target.right_idempotent, g.right_idempotent) {
                let coef = Rat::from_integer(rng.gen_range(-2i64..=2).into());
                if !coef.is_zero() {
                    terms.push(FreeTerm { coef, left: x, generator: h, right: y });
                }
            }
        }
    }
    let mut differential = vec![Vec::new(); generators.len()];
    generators.push(g);
    differential.push(terms);
    FreeBimodule::new(left.clone(), right.clone(), generators, differential).unwrap()
}

/// One randomized base change problem: `X` over `A`, the map `A -> A'` used
/// on both sides, and random test modules over `A'`.
pub struct BaseChangeInstance {
    pub label: &'static str,
    pub x: DgBimodule,
    pub target: Arc<FinDimAlgebra>,
    pub images: Vec<Vector>,
    pub m: DgBimodule,
    pub n: DgBimodule,
}

impl BaseChangeInstance {
    pub fn run(&self) -> lgcy_core::Result<BaseChangeReport> {
        base_change_iso(&self.x, &self.target, self.images.clone(), &self.m, &self.target, self.images.clone(), &self.n)
    }
}

fn path_images(from: &PathAlgebra, to: &PathAlgebra) -> Vec<Vector> {
    from.paths().iter().map(|p| basis_vector(to.index_of(p).expect("path survives"))).collect()
}

/// Cycles through `k^n -> kQ`, a diagram automorphism, the identity,
/// `kQ -> kQ/rad^2` and `kQ -> H^0` of the Ginzburg algebra.
pub fn base_change_instance(index: usize, rng: &mut impl Rng) -> BaseChangeInstance {
    let a3 = PathAlgebra::dynkin(AdeType::A(3)).unwrap();
    let (label, source, target, images): (_, Arc<FinDimAlgebra>, Arc<FinDimAlgebra>, Vec<Vector>) = match index % 5 {
        0 => {
            let nv = a3.quiver().num_vertices();
            ("semisimple inclusion", Arc::new(semisimple(nv)), a3.algebra().clone(), (0..nv).map(basis_vector).collect())
        }
        1 => {
            let (quiver, flip) = symmetric_a3();
            let alg = PathAlgebra::new(quiver).unwrap();
            let sigma = flip.algebra_map(&alg).unwrap();
            let images = (0..alg.dim()).map(|i| sigma.image(i).clone()).collect();
            ("diagram automorphism", alg.algebra().clone(), alg.algebra().clone(), images)
        }
        2 => ("identity", a3.algebra().clone(), a3.algebra().clone(), (0..a3.dim()).map(basis_vector).collect()),
        3 => {
            let (quotient, map) = a3.radical_truncation(1).unwrap();
            let images = (0..a3.dim()).map(|i| map.image(i).clone()).collect();
            ("radical square quotient", a3.algebra().clone(), quotient, images)
        }
        _ => {
            let a2 = PathAlgebra::dynkin(AdeType::A(2)).unwrap();
            let ginzburg = GinzburgAlgebra::new((**a2.quiver()).clone(), 3).unwrap();
            let h0 = ginzburg.degree_zero_algebra().unwrap();
            let images = path_images(&a2, &h0);
            ("Ginzburg degree zero", a2.algebra().clone(), h0.algebra().clone(), images)
        }
    };
    let x = random_two_term(&source, &source, rng).to_dense().unwrap().module;
    let m = random_two_term(&target, &target, rng).to_dense().unwrap().module;
    let n = random_two_term(&target, &target, rng).to_dense().unwrap().module;
    BaseChangeInstance { label, x, target, images, m, n }
}
