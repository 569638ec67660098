//! Dealer encoding circuit and the measurement-free reconstruction circuit.
//!
//! Register layout for both circuits: shares `1..n` occupy qudits `0..n`,
//! message/ancilla qudits follow at `n..n+k`.

use crate::circuit::{Circuit, Gate};
use crate::code::StabilizerCodeSpec;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::pauli::{calibrate, relative_phase, PhaseExponent, PhasedGeneratorSet, PhasedPauli};
use crate::symplectic::{ShareIndexSet, SymplecticVector};

/// Phases fixing the encoded basis states: the coefficients `α_i` and the
/// calibrated generators of `Cᵐ` whose common `+1` eigenvector is `|0̄⟩`.
///
/// Generators are the stabilizer basis rows in order, followed by
/// `α_i⁻¹ M(z_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingConvention {
    alpha: Vec<PhaseExponent>,
    generators: PhasedGeneratorSet,
    stabilizer_rows: usize,
}

impl EncodingConvention {
    /// `α_i = 1` for odd `p`. For `p = 2`, `α_i⁻¹` is the calibration phase of
    /// `M(z_i)`, so that `α_i⁻¹ M(z_i)` squares to the identity and has a
    /// `+1` eigenspace.
    pub fn standard(code: &StabilizerCodeSpec) -> Result<Self> {
        let stab = code.stabilizer().basis();
        let mut gens: Vec<PhasedPauli> = stab.iter().map(|h| calibrate(h.clone())).collect();
        let mut alpha = Vec::with_capacity(code.k());
        for pair in code.logical_pairs() {
            let g = calibrate(pair.z.clone());
            alpha.push(g.phase().neg());
            gens.push(g);
        }
        Ok(Self {
            alpha,
            generators: PhasedGeneratorSet::new(gens)?,
            stabilizer_rows: stab.len(),
        })
    }

    /// Convention with caller-chosen `α_i`. Fails unless every
    /// `α_i⁻¹ M(z_i)` has order `p` (order 2 for `p = 2`).
    pub fn with_alpha(code: &StabilizerCodeSpec, alpha: Vec<PhaseExponent>) -> Result<Self> {
        if alpha.len() != code.k() {
            return Err(Error::LengthMismatch {
                expected: code.k(),
                found: alpha.len(),
            });
        }
        let stab = code.stabilizer().basis();
        let mut gens: Vec<PhasedPauli> = stab.iter().map(|h| calibrate(h.clone())).collect();
        for (pair, a) in code.logical_pairs().iter().zip(&alpha) {
            gens.push(PhasedPauli::new(a.neg(), pair.z.clone()));
        }
        Ok(Self {
            alpha,
            generators: PhasedGeneratorSet::new(gens)?,
            stabilizer_rows: stab.len(),
        })
    }

    pub fn alpha(&self) -> &[PhaseExponent] {
        &self.alpha
    }

    /// All calibrated generators of `Cᵐ`.
    pub fn generators(&self) -> &PhasedGeneratorSet {
        &self.generators
    }

    pub fn stabilizer_generators(&self) -> &[PhasedPauli] {
        &self.generators.generators()[..self.stabilizer_rows]
    }

    /// `α_i M(x_i)`, zero-based `i`.
    pub fn logical_x(&self, code: &StabilizerCodeSpec, i: usize) -> PhasedPauli {
        PhasedPauli::new(self.alpha[i], code.logical_pairs()[i].x.clone())
    }

    /// `α_i⁻¹ M(z_i)`, zero-based `i`.
    pub fn logical_z(&self, i: usize) -> &PhasedPauli {
        &self.generators.generators()[self.stabilizer_rows + i]
    }

    /// `η(M(u))` for `u ∈ Cᵐ`.
    pub fn eta(&self, u: &SymplecticVector) -> Result<PhaseExponent> {
        self.generators.eta_eigenvalue(u)
    }

    /// `η(M(u))` for `u = Σ c_j h_j` over the stabilizer basis.
    pub fn eta_stabilizer(&self, u: &SymplecticVector, coeffs: &[u32]) -> Result<PhaseExponent> {
        let mut full = coeffs.to_vec();
        full.resize(self.generators.len(), 0);
        self.generators.eta_from_coefficients(u, &full)
    }
}

/// Everything the `i`-th ancilla needs: `x = w + u`, `z = y + v`, and the
/// phases used by the phase-correction steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalReconstruction {
    pub x: SymplecticVector,
    pub w: SymplecticVector,
    pub u: SymplecticVector,
    /// `M(x) = β M(w) M(u)`.
    pub beta: PhaseExponent,
    pub eta_u: PhaseExponent,
    pub z: SymplecticVector,
    pub y: SymplecticVector,
    pub v: SymplecticVector,
    /// `M(z) = γ M(y) M(v)`.
    pub gamma: PhaseExponent,
    pub eta_v: PhaseExponent,
    /// `−e(α⁻¹ γ η(M(v)))`.
    pub step3_exponent: PhaseExponent,
    /// `−e(α β η(M(u)))`.
    pub step6_exponent: PhaseExponent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionPlan {
    field: PrimeField,
    available: ShareIndexSet,
    logicals: Vec<LogicalReconstruction>,
}

impl ReconstructionPlan {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn available(&self) -> &ShareIndexSet {
        &self.available
    }

    pub fn n(&self) -> usize {
        self.available.total()
    }

    pub fn k(&self) -> usize {
        self.logicals.len()
    }

    pub fn logicals(&self) -> &[LogicalReconstruction] {
        &self.logicals
    }
}

pub fn plan_reconstruction(
    code: &StabilizerCodeSpec,
    conv: &EncodingConvention,
    available: &ShareIndexSet,
) -> Result<ReconstructionPlan> {
    if available.total() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            found: available.total(),
        });
    }
    if !code.is_qualified(available) {
        return Err(Error::NotCorrectable {
            erased: available.complement().members().to_vec(),
        });
    }
    let mut logicals = Vec::with_capacity(code.k());
    for (i, pair) in code.logical_pairs().iter().enumerate() {
        let alpha = conv.alpha()[i];
        let dx = code.shadow_decompose_x(&pair.x, available)?;
        let dz = code.shadow_decompose_z(&pair.z, available)?;
        let (w, u) = (dx.shadow, dx.stabilizer_part);
        let (y, v) = (dz.shadow, dz.stabilizer_part);
        let beta = relative_phase(&pair.x, &w, &u)?;
        let gamma = relative_phase(&pair.z, &y, &v)?;
        let eta_u = conv.eta_stabilizer(&u, &dx.coefficients)?;
        let eta_v = conv.eta_stabilizer(&v, &dz.coefficients)?;
        let step3_exponent = alpha.neg().add(gamma).add(eta_v).neg();
        let step6_exponent = alpha.add(beta).add(eta_u).neg();
        logicals.push(LogicalReconstruction {
            x: pair.x.clone(),
            w,
            u,
            beta,
            eta_u,
            z: pair.z.clone(),
            y,
            v,
            gamma,
            eta_v,
            step3_exponent,
            step6_exponent,
        });
    }
    Ok(ReconstructionPlan {
        field: code.field(),
        available: available.clone(),
        logicals,
    })
}

/// One two-qudit gate per site in the support of `v`, all sharing
/// `control`; together they realize `Σ_j |j⟩⟨j| ⊗ M(v)^j` (or `M(v)^{−j}`
/// when `inverse`). Vector sites `s` map to qudits `s`.
pub fn controlled_pauli_decompose(control: usize, v: &SymplecticVector, inverse: bool) -> Vec<Gate> {
    v.support()
        .into_iter()
        .map(|s| {
            let (target, x, z) = (s, v.a()[s], v.b()[s]);
            if inverse {
                Gate::ControlledPauliInv { control, target, x, z }
            } else {
                Gate::ControlledPauli { control, target, x, z }
            }
        })
        .collect()
}

/// The six reconstruction steps on shares `1..n` plus `k` ancillas
/// starting in `|0…0⟩`. Only shares in `J` are addressed.
pub fn synthesize_reconstruction(plan: &ReconstructionPlan) -> Result<Circuit> {
    let (n, k) = (plan.n(), plan.k());
    let mut c = Circuit::shares_then_ancillas(plan.field(), n, k);
    let anc = |i: usize| n + i;
    // Step 1: |ψ₀⟩ = F^{⊗k}|0…0⟩
    c.extend((0..k).map(|i| Gate::Fourier(anc(i))))?;
    // Step 2
    for (i, l) in plan.logicals().iter().enumerate() {
        c.extend(controlled_pauli_decompose(anc(i), &l.y, true))?;
    }
    // Step 3
    for (i, l) in plan.logicals().iter().enumerate() {
        c.push(Gate::PhasePow {
            qudit: anc(i),
            exponent: l.step3_exponent.value(),
        })?;
    }
    // Step 4
    c.extend((0..k).map(|i| Gate::Fourier(anc(i))))?;
    // Step 5
    for (i, l) in plan.logicals().iter().enumerate() {
        c.extend(controlled_pauli_decompose(anc(i), &l.w, true))?;
    }
    // Step 6
    for (i, l) in plan.logicals().iter().enumerate() {
        c.push(Gate::PhasePow {
            qudit: anc(i),
            exponent: l.step6_exponent.value(),
        })?;
    }
    Ok(c)
}

/// Encoder Steps 2 and 3 on shares `1..n` (holding `|0̄⟩`) plus `k` message
/// qudits: controlled-`(α_i M(x_i))`, inverse Fourier on the messages, then
/// controlled-`(α_i⁻¹ M(z_i))`. Scalars sit on the control as `PhasePow`.
pub fn synthesize_dealer(code: &StabilizerCodeSpec, conv: &EncodingConvention) -> Result<Circuit> {
    let (n, k) = (code.n(), code.k());
    let mut c = Circuit::shares_then_ancillas(code.field(), n, k);
    for (i, pair) in code.logical_pairs().iter().enumerate() {
        let alpha = conv.alpha()[i];
        if !alpha.is_one() {
            c.push(Gate::PhasePow {
                qudit: n + i,
                exponent: alpha.value(),
            })?;
        }
        c.extend(controlled_pauli_decompose(n + i, &pair.x, false))?;
    }
    c.extend((0..k).map(|i| Gate::FourierInv(n + i)))?;
    for (i, pair) in code.logical_pairs().iter().enumerate() {
        let inv = conv.alpha()[i].neg();
        if !inv.is_one() {
            c.push(Gate::PhasePow {
                qudit: n + i,
                exponent: inv.value(),
            })?;
        }
        c.extend(controlled_pauli_decompose(n + i, &pair.z, false))?;
    }
    Ok(c)
}
