//! Logical-zero preparation, encoding of secrets and end-to-end
//! verification of reconstruction circuits.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::circuit::Circuit;
use crate::code::StabilizerCodeSpec;
use crate::error::{Error, Result};
use crate::field::{solve_linear, FpMatrix, PrimeField};
use crate::pauli::PhasedPauli;
use crate::statevector::{fidelity_with_pure, purity, SimLimits, StateVector};
use crate::symplectic::ShareIndexSet;
use crate::synthesis::{plan_reconstruction, synthesize_dealer, synthesize_reconstruction, EncodingConvention};

/// Agreement required between the two encoding routes.
pub const ENCODING_TOLERANCE: f64 = 1e-10;

/// `|0̄⟩`: the common `+1` eigenvector of the calibrated `Cᵐ` generators.
///
/// The projector `Π_i (1/p) Σ_j g_i^j` is applied to a basis state `|t⟩`
/// fixed by every diagonal element of the generated group, which makes the
/// projection nonzero. The global phase makes the first nonzero amplitude
/// real and positive.
pub fn logical_zero(code: &StabilizerCodeSpec, conv: &EncodingConvention, limits: &SimLimits) -> Result<StateVector> {
    let f = code.field();
    let n = code.n();
    limits.check(f.modulus(), n)?;
    let gens = conv.generators().generators();
    let t = support_state(f, n, gens)?;
    let mut state = StateVector::basis(f, &t, limits)?;
    for g in gens {
        let mut acc = state.clone();
        let mut term = state.clone();
        for _ in 1..f.modulus() {
            term.apply_phased_pauli(g, 0)?;
            acc.add_scaled(&term, Complex64::new(1.0, 0.0));
        }
        state = acc;
    }
    state
        .normalize()
        .map_err(|_| Error::PreparationFailed("projection onto the code space vanished".into()))?;
    state.fix_global_phase();
    Ok(state)
}

/// A basis state fixed by every diagonal element `ω^e Z^b` of the group
/// generated by `gens`.
fn support_state(f: PrimeField, n: usize, gens: &[PhasedPauli]) -> Result<Vec<u32>> {
    if gens.is_empty() {
        return Ok(vec![0; n]);
    }
    let x_rows: Vec<&[u32]> = gens.iter().map(|g| g.vector().a()).collect();
    // coefficient vectors c with Σ c_i a(g_i) = 0
    let combos = FpMatrix::from_rows(f, n, &x_rows)?.transpose().nullspace();
    let mut b_rows = Vec::new();
    let mut rhs = Vec::new();
    for c in combos.row_iter() {
        let mut g = PhasedPauli::identity(f, n);
        for (gi, &ci) in gens.iter().zip(c) {
            g = g.mul(&gi.pow(ci as i64))?;
        }
        let e = g.phase().value();
        let target = if f.modulus() == 2 {
            if e % 2 == 1 {
                return Err(Error::PreparationFailed(format!(
                    "diagonal element {g} has no +1 eigenvector"
                )));
            }
            f.neg(e / 2)
        } else {
            f.neg(e)
        };
        b_rows.push(g.vector().b().to_vec());
        rhs.push(target);
    }
    let b = FpMatrix::from_rows(f, n, &b_rows)?;
    let sol = solve_linear(&b, &rhs)
        .map_err(|_| Error::PreparationFailed("diagonal stabilizer constraints are inconsistent".into()))?;
    Ok(sol.x)
}

fn digits_of(mut idx: usize, p: u32, len: usize) -> Vec<u32> {
    let mut d = vec![0u32; len];
    for x in d.iter_mut().rev() {
        *x = (idx % p as usize) as u32;
        idx /= p as usize;
    }
    d
}

/// `|j̄⟩ = Π_i (α_i M(x_i))^{j_i} |0̄⟩` for each basis state, extended linearly.
pub fn encode_direct(
    code: &StabilizerCodeSpec,
    conv: &EncodingConvention,
    zero: &StateVector,
    secret: &StateVector,
) -> Result<StateVector> {
    check_secret(code, secret)?;
    let p = code.p();
    let mut out = zero.clone();
    out.scale(Complex64::new(0.0, 0.0));
    for (idx, &s) in secret.amplitudes().iter().enumerate() {
        if s.norm() == 0.0 {
            continue;
        }
        let digits = digits_of(idx, p, code.k());
        let mut word = zero.clone();
        for (i, &d) in digits.iter().enumerate().rev() {
            let x = conv.logical_x(code, i);
            for _ in 0..d {
                word.apply_phased_pauli(&x, 0)?;
            }
        }
        out.add_scaled(&word, s);
    }
    Ok(out)
}

/// Runs the dealer circuit on `|0̄⟩ ⊗ secret`, checks that the message
/// register ends in `|ψ₀⟩`, and returns the code register.
pub fn encode_with_dealer(
    code: &StabilizerCodeSpec,
    conv: &EncodingConvention,
    zero: &StateVector,
    secret: &StateVector,
    limits: &SimLimits,
) -> Result<StateVector> {
    check_secret(code, secret)?;
    let f = code.field();
    let dealer = synthesize_dealer(code, conv)?;
    let mut joint = zero.tensor(secret, limits)?;
    joint.apply_circuit(&dealer)?;
    let k = code.k();
    let msg_dim = secret.dim();
    let psi0 = Complex64::new(1.0 / (msg_dim as f64).sqrt(), 0.0);
    let amps = joint.amplitudes();
    let code_amps: Vec<Complex64> = (0..zero.dim())
        .map(|d| amps[d * msg_dim..(d + 1) * msg_dim].iter().sum::<Complex64>() * psi0)
        .collect();
    let code_state = StateVector::from_amplitudes(f, code.n(), code_amps)?;
    let mut uniform = StateVector::zero(f, k, limits)?;
    for q in 0..k {
        uniform.apply_gate(&crate::circuit::Gate::Fourier(q))?;
    }
    let rebuilt = code_state.tensor(&uniform, limits)?;
    let residue = rebuilt.max_diff(&joint);
    if residue > ENCODING_TOLERANCE {
        return Err(Error::EncodingMismatch(residue));
    }
    Ok(code_state)
}

/// Encodes `secret` (on `k` qudits) into the code register by both routes
/// and fails with [`Error::EncodingMismatch`] if they disagree.
pub fn encode_secret(
    code: &StabilizerCodeSpec,
    conv: &EncodingConvention,
    secret: &StateVector,
    limits: &SimLimits,
) -> Result<StateVector> {
    limits.check(code.p(), code.n() + code.k())?;
    let zero = logical_zero(code, conv, limits)?;
    let direct = encode_direct(code, conv, &zero, secret)?;
    let dealt = encode_with_dealer(code, conv, &zero, secret, limits)?;
    let diff = direct.max_diff(&dealt);
    if diff > ENCODING_TOLERANCE {
        return Err(Error::EncodingMismatch(diff));
    }
    Ok(direct)
}

fn check_secret(code: &StabilizerCodeSpec, secret: &StateVector) -> Result<()> {
    if secret.p() != code.p() || secret.num_qudits() != code.k() {
        return Err(Error::LengthMismatch {
            expected: code.k(),
            found: secret.num_qudits(),
        });
    }
    Ok(())
}

/// A normalized random state on `k` qudits (complex Gaussian amplitudes).
pub fn random_secret(field: PrimeField, k: usize, seed: u64, limits: &SimLimits) -> Result<StateVector> {
    let dim = limits.check(field.modulus(), k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps = (0..dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let mut s = StateVector::from_amplitudes(field, k, amps)?;
    s.normalize()?;
    Ok(s)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReconstructionReport {
    pub available: ShareIndexSet,
    /// `⟨s|ρ|s⟩` for the reduced state `ρ` of the ancilla register.
    pub fidelity: f64,
    /// `tr ρ²`.
    pub purity: f64,
    pub two_qudit_gates: usize,
    pub single_qudit_gates: usize,
}

/// Runs an already synthesized reconstruction circuit on `encoded ⊗ |0…0⟩`
/// and inspects the ancilla register.
pub fn run_reconstruction(
    circuit: &Circuit,
    available: &ShareIndexSet,
    encoded: &StateVector,
    secret: &StateVector,
    limits: &SimLimits,
) -> Result<ReconstructionReport> {
    let f = encoded.field();
    let k = secret.num_qudits();
    let ancilla = StateVector::zero(f, k, limits)?;
    let mut joint = encoded.tensor(&ancilla, limits)?;
    joint.apply_circuit(circuit)?;
    let n = encoded.num_qudits();
    let keep: Vec<usize> = (n..n + k).collect();
    let rho = joint.reduced_state(&keep, limits)?;
    Ok(ReconstructionReport {
        available: available.clone(),
        fidelity: fidelity_with_pure(&rho, secret),
        purity: purity(&rho),
        two_qudit_gates: circuit.two_qudit_count(),
        single_qudit_gates: circuit.single_qudit_count(),
    })
}

/// Encodes `secret`, appends the ancillas, applies the reconstruction
/// circuit for `J` and reports fidelity and purity of the ancilla register.
pub fn verify_reconstruction(
    code: &StabilizerCodeSpec,
    conv: &EncodingConvention,
    available: &ShareIndexSet,
    secret: &StateVector,
    limits: &SimLimits,
) -> Result<ReconstructionReport> {
    let plan = plan_reconstruction(code, conv, available)?;
    let circuit = synthesize_reconstruction(&plan)?;
    let encoded = encode_secret(code, conv, secret, limits)?;
    run_reconstruction(&circuit, available, &encoded, secret, limits)
}
