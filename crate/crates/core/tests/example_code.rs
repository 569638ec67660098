//! The bundled [[6, 2, 3]]_3 code: its published vectors, phases and the
//! reconstruction circuit for shares {3, 4, 5, 6}.

use num_complex::Complex64;
use qss_core::catalog::qutrit_6_2_3;
use qss_core::field::express_in_rows;
use qss_core::pauli::omega_power;
use qss_core::*;

fn f3() -> PrimeField {
    PrimeField::new(3).unwrap()
}

fn vec(s: &str) -> SymplecticVector {
    SymplecticVector::parse(f3(), s).unwrap()
}

const H: [&str; 4] = ["100202|020112", "010000|001222", "001200|220201", "000011|211002"];
const LISTED_Z: [&str; 2] = ["000100|122000", "000001|221020"];
const LISTED_X: [&str; 2] = ["000000|101100", "000000|100021"];
const W: [&str; 2] = ["002122|000200", "002122|002121"];
const Y: [&str; 2] = ["000111|000002", "002101|001122"];
const U: &str = "001211|101200";
const V: [&str; 2] = ["000022|122001", "001200|220201"];

fn j3456() -> ShareIndexSet {
    ShareIndexSet::new(6, [3, 4, 5, 6]).unwrap()
}

fn span(rows: &[&str]) -> CodeSpace {
    let rows: Vec<SymplecticVector> = rows.iter().map(|s| vec(s)).collect();
    CodeSpace::span(f3(), 6, &rows).unwrap()
}

#[test]
fn dimensions() {
    let code = qutrit_6_2_3();
    assert_eq!(code.stabilizer().dim(), 4);
    assert_eq!(code.self_dual().dim(), 6);
    assert_eq!(code.dual().dim(), 8);
    assert_eq!(span(&H).dim(), 4);
    let all: Vec<&str> = H.iter().chain(&LISTED_Z).chain(&LISTED_X).copied().collect();
    assert_eq!(rref(span(&all).matrix()).rank, 8);
    assert!(code
        .self_dual()
        .same_space(&span(&[H[0], H[1], H[2], H[3], LISTED_Z[0], LISTED_Z[1]])));
}

#[test]
fn listed_pairs_are_normalized_on_load() {
    assert_eq!(symplectic_product(&vec(LISTED_X[0]), &vec(LISTED_Z[0])).unwrap(), 2);
    assert_eq!(symplectic_product(&vec(LISTED_X[0]), &vec(LISTED_Z[1])).unwrap(), 0);
    let code = qutrit_6_2_3();
    assert_eq!(code.rescaled_pairs(), &[(0, 2), (1, 2)]);
    for (i, pair) in code.logical_pairs().iter().enumerate() {
        assert_eq!(pair.x, vec(LISTED_X[i]));
        assert_eq!(pair.z, vec(LISTED_Z[i]).neg());
        assert_eq!(symplectic_product(&pair.x, &pair.z).unwrap(), 1);
    }
}

#[test]
fn first_two_shares_carry_no_information() {
    let code = qutrit_6_2_3();
    let erased = ShareIndexSet::new(6, [1, 2]).unwrap();
    assert_eq!(code.stabilizer().coordinate_section(&erased).dim(), 0);
    assert_eq!(code.dual().coordinate_section(&erased).dim(), 0);
    assert!(code.erasure_correctable(&erased));
    assert_eq!(
        vec(H[0]).project(&erased),
        SymplecticVector::parse(f3(), "10|02").unwrap()
    );
    // P(C) = P(C⊥) = P(Cᵐ) on the erased shares
    let pc = code.stabilizer().project(&erased);
    assert!(pc.same_space(&code.dual().project(&erased)));
    assert!(pc.same_space(&code.self_dual().project(&erased)));
}

#[test]
fn listed_shadow_vectors_pass_validators() {
    let code = qutrit_6_2_3();
    let j = j3456();
    for i in 0..2 {
        let (w, y) = (vec(W[i]), vec(Y[i]));
        assert!(w.supported_on(&j) && y.supported_on(&j));
        assert!(code.dual().contains(&w));
        assert!(code.self_dual().contains(&y));
        assert!(code.stabilizer().contains(&vec(LISTED_X[i]).sub(&w).unwrap()));
        assert!(code.stabilizer().contains(&vec(LISTED_Z[i]).sub(&y).unwrap()));
    }
    assert!(code.dual().coordinate_section(&j).contains(&vec(W[0])));
    let u = vec(U);
    assert_eq!(u, vec(H[2]).add(&vec(H[3])).unwrap());
    assert_eq!(vec(V[0]), vec(H[3]).neg());
    assert_eq!(vec(V[1]), vec(H[2]));
    for v in [&u, &vec(V[0]), &vec(V[1])] {
        assert!(code.stabilizer().contains(v));
    }
    let sol = express_in_rows(code.stabilizer().matrix(), u.coords()).unwrap();
    assert_eq!(sol.x, vec![0, 0, 1, 1]);
}

#[test]
fn computed_decompositions_match_listed_vectors() {
    let code = qutrit_6_2_3();
    let j = j3456();
    for i in 0..2 {
        let pair = &code.logical_pairs()[i];
        let dx = code.shadow_decompose_x(&pair.x, &j).unwrap();
        assert_eq!(dx.shadow, vec(W[i]));
        assert_eq!(dx.stabilizer_part, vec(U));
        // z was negated on load, so y and v flip sign too
        let dz = code.shadow_decompose_z(&pair.z, &j).unwrap();
        assert_eq!(dz.shadow, vec(Y[i]).neg());
        assert_eq!(dz.stabilizer_part, vec(V[i]).neg());
    }
}

#[test]
fn four_shares_always_suffice_and_three_sometimes_fail() {
    let code = qutrit_6_2_3();
    let sets = code.qualified_sets(6).unwrap();
    for mask in 0u64..64 {
        let j = ShareIndexSet::from_mask(6, mask);
        if j.len() >= 4 {
            assert!(code.is_qualified(&j), "{j}");
        }
        if j.len() <= 2 {
            assert!(!code.is_qualified(&j), "{j}");
        }
    }
    assert!(sets.iter().all(|s| s.len() >= 3));
    assert!((0u64..64)
        .map(|m| ShareIndexSet::from_mask(6, m))
        .any(|j| j.len() == 3 && !code.is_qualified(&j)));
    let err = plan_reconstruction(
        &code,
        &EncodingConvention::standard(&code).unwrap(),
        &ShareIndexSet::new(6, [1, 2, 3]).unwrap(),
    );
    assert!(matches!(err, Err(Error::NotCorrectable { .. })));
}

#[test]
fn stabilizer_product_phase() {
    let f = f3();
    let prod = pauli_mul(
        &PhasedPauli::from_vector(vec(H[2])),
        &PhasedPauli::from_vector(vec(H[3])),
    )
    .unwrap();
    assert_eq!(prod.phase(), PhaseExponent::new(f, 1));
    assert_eq!(prod.vector(), &vec(U));
    let code = qutrit_6_2_3();
    let conv = EncodingConvention::standard(&code).unwrap();
    assert_eq!(conv.eta(&vec(U)).unwrap(), PhaseExponent::new(f, 2));
}

#[test]
fn beta_and_gamma_against_dense_oracle() {
    let f = f3();
    let dense = |s: &str| dense_matrix(&PhasedPauli::from_vector(vec(s))).unwrap();
    let beta = relative_phase(&vec(LISTED_X[0]), &vec(W[0]), &vec(U)).unwrap();
    assert_eq!(beta, PhaseExponent::new(f, 2));
    let rhs = dense(W[0]).mul(&dense(U)).scale(omega_power(f, 2));
    assert!(dense(LISTED_X[0]).max_diff(&rhs) < 1e-10);

    let gamma = relative_phase(&vec(LISTED_Z[0]), &vec(Y[0]), &vec(V[0])).unwrap();
    let ratio = dense(LISTED_Z[0])
        .equal_up_to_phase(&dense(Y[0]).mul(&dense(V[0])), 1e-10)
        .unwrap();
    assert!((ratio - gamma.to_complex()).norm() < 1e-10);
    assert_eq!(gamma, PhaseExponent::new(f, 2));
}

#[test]
fn eigenvalues_of_listed_stabilizer_parts_on_logical_zero() {
    let f = f3();
    let code = qutrit_6_2_3();
    let conv = EncodingConvention::standard(&code).unwrap();
    let zero = logical_zero(&code, &conv, &SimLimits::default()).unwrap();
    assert_eq!(zero.dim(), 729);
    let eigen = |s: &str| {
        let m = dense_matrix(&PhasedPauli::from_vector(vec(s))).unwrap();
        let image = m.mul_vec(zero.amplitudes());
        let lambda: Complex64 = zero.amplitudes().iter().zip(&image).map(|(a, b)| a.conj() * b).sum();
        let residual = image
            .iter()
            .zip(zero.amplitudes())
            .map(|(b, a)| (b - lambda * a).norm())
            .fold(0.0, f64::max);
        assert!(residual < 1e-10);
        lambda
    };
    assert!((eigen(U) - omega_power(f, 2)).norm() < 1e-10);
    assert!((eigen(V[1]) - omega_power(f, 0)).norm() < 1e-10);
    // M(h)² = ω² M(2h) for h = h₄, and h₄ has eigenvalue 1
    assert!((eigen(V[0]) - omega_power(f, 1)).norm() < 1e-10);
    assert_eq!(conv.eta(&vec(V[0])).unwrap(), PhaseExponent::new(f, 1));
    assert_eq!(conv.eta(&vec(V[1])).unwrap(), PhaseExponent::one(f));
}

#[test]
fn logical_zero_passes_every_check() {
    let code = qutrit_6_2_3();
    let conv = EncodingConvention::standard(&code).unwrap();
    let zero = logical_zero(&code, &conv, &SimLimits::default()).unwrap();
    assert_eq!(conv.generators().len(), 6);
    for g in conv.generators().generators() {
        let mut t = zero.clone();
        t.apply_phased_pauli(g, 0).unwrap();
        assert!(t.max_diff(&zero) < 1e-9);
    }
    let first = zero.amplitudes().iter().find(|a| a.norm() > 1e-9).unwrap();
    assert!(first.im.abs() < 1e-12 && first.re > 0.0);
}

#[test]
fn reconstruction_circuit_for_last_four_shares() {
    let code = qutrit_6_2_3();
    let conv = EncodingConvention::standard(&code).unwrap();
    let plan = plan_reconstruction(&code, &conv, &j3456()).unwrap();
    let c = synthesize_reconstruction(&plan).unwrap();
    assert_eq!(c.num_qudits(), 8);
    assert!(c.touched_qudits().iter().all(|&q| q >= 2));
    assert_eq!(c.two_qudit_count(), 15);
    assert!(c.two_qudit_count() <= 2 * 2 * 4);
    assert_eq!(c.phase_pow_count(), 4);
    assert_eq!(c.fourier_count(), 4);
    assert_eq!(parse_circuit(&emit_circuit(&c)).unwrap(), c);
    let supports: Vec<usize> = plan
        .logicals()
        .iter()
        .flat_map(|l| [l.w.weight(), l.y.weight()])
        .collect();
    assert_eq!(supports, vec![4, 3, 4, 4]);
}

#[test]
fn available_shares_are_mixed_after_encoding() {
    let code = qutrit_6_2_3();
    let conv = EncodingConvention::standard(&code).unwrap();
    let lim = SimLimits::default();
    let secret = random_secret(f3(), 2, 11, &lim).unwrap();
    let enc = encode_secret(&code, &conv, &secret, &lim).unwrap();
    let rho = enc.reduced_state(&[2, 3, 4, 5], &lim).unwrap();
    assert!(purity(&rho) < 1.0 - 1e-6);
    assert!((rho.trace().re - 1.0).abs() < 1e-10);
}

#[test]
fn zero_secret_is_recovered() {
    let code = qutrit_6_2_3();
    let conv = EncodingConvention::standard(&code).unwrap();
    let lim = SimLimits::default();
    let secret = StateVector::zero(f3(), 2, &lim).unwrap();
    let r = verify_reconstruction(&code, &conv, &j3456(), &secret, &lim).unwrap();
    assert!((r.fidelity - 1.0).abs() < 1e-9);
    assert!((r.purity - 1.0).abs() < 1e-9);
}
