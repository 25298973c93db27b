//! Acceptance criteria 1-11. Each criterion is its own test and writes one
//! status line straight to stdout so the line survives output capture.

mod common;

use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use lgcy_core::ade::{to_rational_matrix, AdeType, M_A11, M_A17, M_A29};
use lgcy_core::algebra::{basis_vector, Rat, Vector};
use lgcy_core::cy::{bimodule_atlas, compare_ginzburg, lift_twist_sum};
use lgcy_core::dg::{adjunction_maps, canonical_alpha, casimir, qdim_bimodule, zorro, DgBimodule};
use lgcy_core::field::rat;
use lgcy_core::linalg::{char_poly, poly_divrem, poly_mul, zero_root_multiplicity};
use lgcy_core::mf::{
    algebra_from_adjunction, decompose, find_iso, hom_rank, is_contractible, qdim, reduce, tensor, LgSpace,
    MatrixFactorisation, Parity,
};
use lgcy_core::quiver::{GinzburgAlgebra, Letter, PathAlgebra, Quiver};
use lgcy_core::residue::{central_charge, hessian, MilnorRing};
use lgcy_core::Scalar;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn report(number: u32, budget: Duration, run: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    let timing = if elapsed <= budget { "" } else { " [over runtime budget]" };
    let line = match &outcome {
        Ok(detail) => format!("criterion {number:>2}: PASS ({:.2?}){timing} {detail}", elapsed),
        Err(detail) => format!("criterion {number:>2}: FAIL ({:.2?}){timing} {detail}", elapsed),
    };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
    if let Err(detail) = outcome {
        panic!("criterion {number} failed: {detail}");
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn a_type(d: u32) -> AdeType {
    AdeType::A(d - 1)
}

#[test]
fn criterion_01_unit_quantum_dimensions() {
    report(1, Duration::from_secs(30), || {
        let mut types: Vec<AdeType> = (2..=6).map(a_type).collect();
        types.extend([AdeType::D(4), AdeType::E6]);
        for t in &types {
            let space = LgSpace::new(t.potential()).map_err(|e| e.to_string())?;
            let unit = MatrixFactorisation::unit(&space).map_err(|e| e.to_string())?;
            let q = qdim(&unit).map_err(|e| e.to_string())?;
            ensure(q.left == Scalar::one() && q.right == Scalar::one(), || format!("{t}: ({}, {})", q.left, q.right))?;
        }
        Ok(format!("{} potentials", types.len()))
    });
}

/// Milnor number of a quasi-homogeneous isolated singularity from its weights.
fn milnor_from_weights(t: AdeType) -> Rat {
    let (_, weights) = t.potential_data();
    // weights are normalised to degree 2, so the degree-one weights are w/2
    weights.iter().fold(Rat::one(), |acc, w| acc * (Rat::from_integer(2.into()) / w - Rat::one()))
}

#[test]
fn criterion_02_residue_normalisation() {
    report(2, Duration::from_secs(30), || {
        let mut cases: Vec<(AdeType, usize)> = Vec::new();
        for d in 2..=8u32 {
            cases.push((a_type(d), (d - 1) as usize));
            if d >= 3 {
                cases.push((AdeType::D(d + 1), (d + 1) as usize));
            }
        }
        cases.extend([(AdeType::E6, 6), (AdeType::E7, 7), (AdeType::E8, 8)]);
        for (t, mu) in &cases {
            let w = t.potential();
            let ring = MilnorRing::of(&w).map_err(|e| e.to_string())?;
            ensure(milnor_from_weights(*t) == rat(*mu as i64, 1), || format!("{t}: weight formula disagrees"))?;
            ensure(ring.dim() == *mu, || format!("{t}: Milnor ring has dimension {}", ring.dim()))?;
            let res = ring.residue(&hessian(&w));
            ensure(res == Scalar::from_int(*mu as i64), || format!("{t}: residue {res}"))?;
        }
        Ok(format!("{} singularities", cases.len()))
    });
}

#[test]
fn criterion_03_central_charges() {
    report(3, Duration::from_secs(1), || {
        let c = |t: AdeType| central_charge(t.potential().ring());
        for (a, e, value) in
            [(AdeType::A(11), AdeType::E6, rat(5, 2)), (AdeType::A(17), AdeType::E7, rat(8, 3)), (AdeType::A(29), AdeType::E8, rat(14, 5))]
        {
            ensure(c(a) == value && c(e) == value, || format!("{a}/{e}: {} and {}", c(a), c(e)))?;
        }
        for d in 2..=10u32 {
            // D_3 is the potential x^2 + x y^2 + z^2, which the family formula still covers
            let expected = rat(3, 1) - rat(3, d as i64);
            let (a, dd) = (c(AdeType::A(2 * d - 1)), c(AdeType::D(d + 1)));
            ensure(a == expected && dd == expected, || format!("d = {d}: {a} vs {dd}"))?;
        }
        Ok("3 exceptional pairs, 9 A/D pairs".into())
    });
}

fn certify_iso(x: &MatrixFactorisation, y: &MatrixFactorisation) -> Result<(), String> {
    let rank = hom_rank(x, y, Parity::Even, &Rat::zero()).map_err(|e| e.to_string())?;
    ensure(rank >= 1, || "no degree-zero morphisms".into())?;
    find_iso(x, y, 3).map(|_| ()).map_err(|e| e.to_string())
}

#[test]
fn criterion_04_permutation_fusion() {
    report(4, Duration::from_secs(300), || {
        let mut count = 0;
        for d in 2..=6u32 {
            let unit = MatrixFactorisation::permutation(d, &[0]).map_err(|e| e.to_string())?;
            for mask in 1u32..(1 << d) {
                let subset: Vec<u32> = (0..d).filter(|l| mask & (1 << l) != 0).collect();
                let ps = MatrixFactorisation::permutation(d, &subset).map_err(|e| e.to_string())?;
                let red = reduce(&tensor(&unit, &ps).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                if subset.len() == d as usize {
                    // P_{Z_d} is contractible
                    ensure(is_contractible(red.mf()) && is_contractible(&ps), || format!("d={d} full subset"))?;
                } else {
                    certify_iso(red.mf(), &ps).map_err(|e| format!("d={d} S={subset:?}: {e}"))?;
                }
                count += 1;
            }
            for j in 0..d {
                for k in 0..d {
                    let pj = MatrixFactorisation::permutation(d, &[j]).map_err(|e| e.to_string())?;
                    let pk = MatrixFactorisation::permutation(d, &[k]).map_err(|e| e.to_string())?;
                    let target = MatrixFactorisation::permutation(d, &[(j + k) % d]).map_err(|e| e.to_string())?;
                    let red = reduce(&tensor(&pj, &pk).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                    certify_iso(red.mf(), &target).map_err(|e| format!("d={d} {j}+{k}: {e}"))?;
                    count += 1;
                }
            }
        }
        Ok(format!("{count} fusions"))
    });
}

/// `(x^2 - 6x + 6)^2 (x - 2)^2`, constant term first.
fn expected_factor() -> Vec<Rat> {
    let quad = vec![rat(6, 1), rat(-6, 1), rat(1, 1)];
    let lin = vec![rat(-2, 1), rat(1, 1)];
    let q2 = poly_mul(&quad, &quad);
    poly_mul(&q2, &poly_mul(&lin, &lin))
}

#[test]
fn criterion_05_action_matrix_spectra() {
    report(5, Duration::from_secs(10), || {
        let mut counts = Vec::new();
        for m in [M_A11, M_A17, M_A29] {
            let cp = char_poly(&to_rational_matrix(m));
            counts.push(m.len() - zero_root_multiplicity(&cp));
        }
        ensure(counts == [6, 7, 8], || format!("nonzero eigenvalue counts {counts:?}"))?;
        let cp = char_poly(&to_rational_matrix(M_A11));
        let (quotient, remainder) = poly_divrem(&cp, &expected_factor());
        ensure(remainder.iter().all(Zero::is_zero), || "not divisible by (x^2-6x+6)^2 (x-2)^2".into())?;
        ensure(zero_root_multiplicity(&cp) == 5, || "zero multiplicity differs from 5".into())?;
        // the cofactor is exactly x^5, so the spectrum is 0^5, 2^2, (3 -+ sqrt 3)^2
        let x5: Vec<Rat> = (0..=5).map(|i| if i == 5 { Rat::one() } else { Rat::zero() }).collect();
        ensure(quotient == x5, || "cofactor is not x^5".into())?;
        Ok(format!("counts {counts:?}, divisibility and zero multiplicity 5"))
    });
}

#[test]
fn criterion_06_ginzburg_structure() {
    report(6, Duration::from_secs(30), || {
        for t in AdeType::smallest() {
            for n in [2, 3, 4] {
                let g = GinzburgAlgebra::new(Quiver::dynkin(t).map_err(|e| e.to_string())?, n).map_err(|e| e.to_string())?;
                g.check_structure(100, 11).map_err(|e| format!("{t} n={n}: {e}"))?;
            }
        }
        let g = GinzburgAlgebra::new(Quiver::dynkin(AdeType::A(2)).unwrap(), 3).unwrap();
        let dt = g.format_chain(&g.letter_differential(Letter::Loop(0)));
        ensure(dt == "-a*a", || format!("d t_1 = {dt}"))?;
        Ok("5 families x n in {2,3,4}, d t_1 = -a*a".into())
    });
}

#[test]
fn criterion_07_completion_against_ginzburg() {
    report(7, Duration::from_secs(300), || {
        let mut certified = 0;
        for t in [AdeType::A(2), AdeType::A(3), AdeType::D(4)] {
            let alg = PathAlgebra::dynkin(t).map_err(|e| e.to_string())?;
            for n in [2, 3] {
                let rows = compare_ginzburg(&alg, n, 3).map_err(|e| e.to_string())?;
                for r in rows.iter().filter(|r| r.certified) {
                    ensure(r.agrees(), || format!("{t} n={n}: {r:?}"))?;
                    certified += 1;
                }
            }
        }
        Ok(format!("{certified} certified rows agree"))
    });
}

#[test]
fn criterion_08_casimir_zorro_identity() {
    report(8, Duration::from_secs(120), || {
        for t in [AdeType::A(2), AdeType::A(3), AdeType::D(4)] {
            let alg = PathAlgebra::dynkin(t).map_err(|e| e.to_string())?;
            let dense = lgcy_core::cy::standard_resolution(&alg).and_then(|r| r.to_dense()).map_err(|e| e.to_string())?;
            let cas = casimir(&dense.module).map_err(|e| e.to_string())?;
            cas.verify().map_err(|e| format!("{t}: {e}"))?;
            let maps = adjunction_maps(&cas).map_err(|e| e.to_string())?;
            let moves = zorro(&cas, &maps).map_err(|e| format!("{t}: {e}"))?;
            for (w, m) in moves.witnesses.iter().zip([&dense.module, &cas.dual.module, &dense.module, &cas.codual.module]) {
                w.check(m, m).map_err(|e| format!("{t}: homotopy witness: {e}"))?;
            }
            let regular = DgBimodule::regular(alg.algebra());
            let reg_cas = casimir(&regular).map_err(|e| e.to_string())?;
            let id: Vec<Vector> = (0..alg.dim()).map(basis_vector).collect();
            let alpha = canonical_alpha(&reg_cas, &[(id.clone(), id)]).map_err(|e| e.to_string())?;
            let q = qdim_bimodule(&reg_cas, &alpha).map_err(|e| e.to_string())?;
            ensure(q.left_scalar == Some(Rat::one()) && q.right_scalar == Some(Rat::one()), || format!("{t}: {q:?}"))?;
        }
        Ok("A2, A3, D4".into())
    });
}

#[test]
fn criterion_09_lifted_quantum_dimensions() {
    report(9, Duration::from_secs(300), || {
        let atlas = bimodule_atlas().map_err(|e| e.to_string())?;
        for entry in &atlas {
            let r = lift_twist_sum(&entry.algebra, &entry.twists, 3, 3).map_err(|e| format!("{}: {e}", entry.name))?;
            let expected = Rat::from_integer(entry.expected.into()).to_string();
            ensure(r.agrees && r.lifted_left == expected && r.lifted_right == expected, || {
                format!("{}: base ({}, {}), lifted ({}, {})", entry.name, r.base_left, r.base_right, r.lifted_left, r.lifted_right)
            })?;
        }
        Ok(format!("{} atlas entries at n = 3, level 3", atlas.len()))
    });
}

#[test]
fn criterion_10_base_change_bijections() {
    report(10, Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for index in 0..20 {
            let instance = common::base_change_instance(index, &mut rng);
            let r = instance.run().map_err(|e| format!("{} #{index}: {e}", instance.label))?;
            ensure(r.right_dims.0 == r.right_dims.1 && r.left_dims.0 == r.left_dims.1, || {
                format!("{} #{index}: {:?} {:?}", instance.label, r.right_dims, r.left_dims)
            })?;
        }
        Ok("20 randomized instances".into())
    });
}

/// External factorisation `X: A11 -> E6` in `mf.v1`, looked up under
/// `$LGCY_DATA_DIR` or `tests/data`.
fn external_x() -> Option<PathBuf> {
    let name = "external_X_A11_E6.json";
    std::env::var_os("LGCY_DATA_DIR")
        .map(|d| PathBuf::from(d).join(name))
        .into_iter()
        .chain([PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)])
        .find(|p| p.exists())
}

#[test]
fn criterion_11_external_factorisation() {
    let Some(path) = external_x() else {
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, "criterion 11: SKIPPED (data-gated: external_X_A11_E6.json not found)");
        return;
    };
    report(11, Duration::from_secs(600), || {
        let x = lgcy_core::io::read_mf(&path).map_err(|e| e.to_string())?;
        let alg = algebra_from_adjunction(&x, 1).map_err(|e| e.to_string())?;
        ensure(alg.all_pass(), || format!("Frobenius checks: {:?}", alg.checks))?;
        let expected = MatrixFactorisation::permutation(12, &[0])
            .and_then(|p0| p0.direct_sum(&MatrixFactorisation::permutation(12, &[9, 10, 11, 0, 1, 2, 3])?))
            .map_err(|e| e.to_string())?;
        certify_iso(&alg.algebra, &expected)?;
        let atlas: Vec<(String, MatrixFactorisation)> = (1..=11u32)
            .map(|j| (format!("T{j}"), MatrixFactorisation::permutation(12, &(0..j).collect::<Vec<_>>()).unwrap()))
            .collect();
        let t1 = &atlas[0].1;
        let d = decompose(&reduce(&tensor(&alg.algebra, t1).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?.mf().clone(), &atlas, 1)
            .map_err(|e| e.to_string())?;
        let column: Vec<i64> = (0..11).map(|i| M_A11[i][0]).collect();
        let found: Vec<i64> = atlas
            .iter()
            .map(|(name, _)| d.parts.iter().filter(|p| &p.name == name).map(|p| p.multiplicity as i64).sum())
            .collect();
        ensure(found == column, || format!("column 1: {found:?} vs {column:?}"))?;
        Ok("A = P_{0} + P_{-3..3}, column 1 of the A11 matrix".into())
    });
}
