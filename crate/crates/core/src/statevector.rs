//! Dense state vectors over `m` qudits of dimension `p`. Qudit 0 is the
//! most significant digit of the basis index.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::pauli::{omega_power, PhasedPauli, DENSE_LIMIT};

/// Environment variable overriding [`SimLimits::max_amplitudes`].
pub const MAX_AMPLITUDES_ENV: &str = "QSS_MAX_AMPLITUDES";

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Memory guard for simulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimLimits {
    pub max_amplitudes: u128,
}

impl Default for SimLimits {
    fn default() -> Self {
        Self {
            max_amplitudes: 1 << 24,
        }
    }
}

impl SimLimits {
    /// Defaults, overridden by `QSS_MAX_AMPLITUDES` when it holds an integer.
    pub fn from_env() -> Self {
        match std::env::var(MAX_AMPLITUDES_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            Some(max_amplitudes) => Self { max_amplitudes },
            None => Self::default(),
        }
    }

    /// `p^m` when it fits under the limit.
    pub fn check(&self, p: u32, m: usize) -> Result<usize> {
        let requested = (p as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        if requested > self.max_amplitudes {
            return Err(Error::TooLarge {
                requested,
                limit: self.max_amplitudes,
            });
        }
        Ok(requested as usize)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    field: PrimeField,
    qudits: usize,
    amps: Vec<Complex64>,
}

/// `(X^a Z^b)` as a `p × p` matrix.
pub fn local_pauli(field: PrimeField, a: u32, b: u32) -> DenseMatrix {
    let p = field.modulus() as usize;
    let mut m = DenseMatrix::zeros(p);
    for j in 0..p {
        let phase = omega_p(field, (b as usize * j) as u32);
        m.set((j + a as usize) % p, j, phase);
    }
    m
}

/// `ω_p^k`.
fn omega_p(field: PrimeField, k: u32) -> Complex64 {
    let p = field.modulus();
    Complex64::from_polar(1.0, 2.0 * PI * f64::from(k % p) / f64::from(p))
}

/// The single-qudit Fourier matrix `F[b][a] = p^{-1/2} ω_p^{ab}`.
pub fn fourier_matrix(field: PrimeField) -> DenseMatrix {
    let p = field.modulus() as usize;
    let s = 1.0 / (p as f64).sqrt();
    DenseMatrix::from_fn(p, |b, a| omega_p(field, (a * b) as u32) * s)
}

impl StateVector {
    /// `|0…0⟩` on `m` qudits.
    pub fn zero(field: PrimeField, m: usize, limits: &SimLimits) -> Result<Self> {
        Self::basis(field, &vec![0; m], limits)
    }

    /// The computational basis state with the given digits.
    pub fn basis(field: PrimeField, digits: &[u32], limits: &SimLimits) -> Result<Self> {
        let p = field.modulus();
        let dim = limits.check(p, digits.len())?;
        let mut amps = vec![ZERO; dim];
        let idx = digits
            .iter()
            .fold(0usize, |acc, &d| acc * p as usize + (d % p) as usize);
        amps[idx] = ONE;
        Ok(Self {
            field,
            qudits: digits.len(),
            amps,
        })
    }

    /// Wraps raw amplitudes; the length must be `p^m`. No normalization.
    pub fn from_amplitudes(field: PrimeField, m: usize, amps: Vec<Complex64>) -> Result<Self> {
        let dim = (field.modulus() as usize).pow(m as u32);
        if amps.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                found: amps.len(),
            });
        }
        Ok(Self { field, qudits: m, amps })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    pub fn num_qudits(&self) -> usize {
        self.qudits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Scales to unit norm; fails on the zero vector.
    pub fn normalize(&mut self) -> Result<()> {
        let n = self.norm();
        if n < 1e-12 {
            return Err(Error::PreparationFailed("cannot normalize the zero vector".into()));
        }
        for a in &mut self.amps {
            *a /= n;
        }
        Ok(())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn scale(&mut self, s: Complex64) {
        for a in &mut self.amps {
            *a *= s;
        }
    }

    pub fn add_scaled(&mut self, other: &Self, s: Complex64) {
        for (a, b) in self.amps.iter_mut().zip(&other.amps) {
            *a += s * b;
        }
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `self ⊗ other`, with `self` on the leading qudits.
    pub fn tensor(&self, other: &Self, limits: &SimLimits) -> Result<Self> {
        limits.check(self.p(), self.qudits + other.qudits)?;
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        Ok(Self {
            field: self.field,
            qudits: self.qudits + other.qudits,
            amps,
        })
    }

    /// Multiplies by a phase so the first amplitude with modulus above
    /// `1e−9` is real and positive.
    pub fn fix_global_phase(&mut self) {
        if let Some(a) = self.amps.iter().find(|a| a.norm() > 1e-9).copied() {
            self.scale(a.conj() / a.norm());
        }
    }

    fn check_qudit(&self, q: usize) -> Result<()> {
        if q >= self.qudits {
            return Err(Error::IndexOutOfRange {
                index: q,
                qudits: self.qudits,
            });
        }
        Ok(())
    }

    fn stride(&self, q: usize) -> usize {
        (self.p() as usize).pow((self.qudits - 1 - q) as u32)
    }

    /// Applies a `p × p` matrix to qudit `q`.
    pub fn apply_local(&mut self, q: usize, u: &DenseMatrix) -> Result<()> {
        self.check_qudit(q)?;
        let p = self.p() as usize;
        let stride = self.stride(q);
        let mut buf = vec![ZERO; p];
        for base in 0..self.dim() {
            if !(base / stride).is_multiple_of(p) {
                continue;
            }
            for (j, b) in buf.iter_mut().enumerate() {
                *b = self.amps[base + j * stride];
            }
            for r in 0..p {
                self.amps[base + r * stride] = (0..p).map(|c| u.get(r, c) * buf[c]).sum();
            }
        }
        Ok(())
    }

    /// Applies `Σ_j |j⟩⟨j|_control ⊗ ops[j]_target`.
    pub fn apply_controlled(&mut self, control: usize, target: usize, ops: &[DenseMatrix]) -> Result<()> {
        self.check_qudit(control)?;
        self.check_qudit(target)?;
        if control == target {
            return Err(Error::InvalidCode("control and target coincide".into()));
        }
        let p = self.p() as usize;
        let (cs, ts) = (self.stride(control), self.stride(target));
        let mut buf = vec![ZERO; p];
        for base in 0..self.dim() {
            if (base / ts) % p != 0 {
                continue;
            }
            let u = &ops[(base / cs) % p];
            for (j, b) in buf.iter_mut().enumerate() {
                *b = self.amps[base + j * ts];
            }
            for r in 0..p {
                self.amps[base + r * ts] = (0..p).map(|c| u.get(r, c) * buf[c]).sum();
            }
        }
        Ok(())
    }

    /// Applies a diagonal phase `|j⟩_q ↦ phases[j] |j⟩_q`.
    fn apply_diagonal(&mut self, q: usize, phases: &[Complex64]) -> Result<()> {
        self.check_qudit(q)?;
        let p = self.p() as usize;
        let stride = self.stride(q);
        for (idx, a) in self.amps.iter_mut().enumerate() {
            *a *= phases[(idx / stride) % p];
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        let f = self.field;
        let p = f.modulus();
        match *gate {
            Gate::Fourier(q) => self.apply_local(q, &fourier_matrix(f)),
            Gate::FourierInv(q) => self.apply_local(q, &fourier_matrix(f).adjoint()),
            Gate::PhasePow { qudit, exponent } => {
                let phases: Vec<Complex64> = (0..p).map(|j| omega_power(f, exponent * j)).collect();
                self.apply_diagonal(qudit, &phases)
            }
            Gate::ControlledPauli { control, target, x, z } | Gate::ControlledPauliInv { control, target, x, z } => {
                let u = local_pauli(f, x % p, z % p);
                let u = if matches!(gate, Gate::ControlledPauliInv { .. }) {
                    u.adjoint()
                } else {
                    u
                };
                let ops: Vec<DenseMatrix> = (0..p as usize).map(|j| u.pow(j)).collect();
                self.apply_controlled(control, target, &ops)
            }
            Gate::Pauli { qudit, x, z } => self.apply_local(qudit, &local_pauli(f, x % p, z % p)),
        }
    }

    /// Applies the gates of `c` in order; the register sizes must agree.
    pub fn apply_circuit(&mut self, c: &Circuit) -> Result<()> {
        if c.num_qudits() != self.qudits || c.p() != self.p() {
            return Err(Error::DimensionMismatch);
        }
        for g in c.gates() {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    /// Applies `ω^e M(x)` to the qudits `offset..offset + n`.
    pub fn apply_phased_pauli(&mut self, op: &PhasedPauli, offset: usize) -> Result<()> {
        let v = op.vector();
        if offset + v.len() > self.qudits {
            return Err(Error::IndexOutOfRange {
                index: offset + v.len(),
                qudits: self.qudits,
            });
        }
        let f = self.field;
        let p = f.modulus() as usize;
        let mut out = vec![ZERO; self.dim()];
        let (a, b) = (v.a(), v.b());
        let strides: Vec<usize> = (0..v.len()).map(|s| self.stride(offset + s)).collect();
        let global = op.phase().to_complex();
        let phases: Vec<Complex64> = (0..p).map(|k| omega_p(f, k as u32)).collect();
        for (idx, amp) in self.amps.iter().enumerate() {
            if *amp == ZERO {
                continue;
            }
            let (mut new_idx, mut twist) = (idx, 0usize);
            for s in 0..v.len() {
                let d = (idx / strides[s]) % p;
                twist += b[s] as usize * d;
                let nd = (d + a[s] as usize) % p;
                new_idx = new_idx - d * strides[s] + nd * strides[s];
            }
            out[new_idx] += amp * global * phases[twist % p];
        }
        self.amps = out;
        Ok(())
    }

    /// Partial trace onto `keep` (zero-based, in the order given).
    pub fn reduced_state(&self, keep: &[usize], limits: &SimLimits) -> Result<DenseMatrix> {
        for &q in keep {
            self.check_qudit(q)?;
        }
        let p = self.p() as usize;
        limits.check(self.p(), 2 * keep.len())?;
        let kd = p.pow(keep.len() as u32);
        let env_dim = self.dim() / kd;
        let keep_strides: Vec<usize> = keep.iter().map(|&q| self.stride(q)).collect();
        let env: Vec<usize> = (0..self.qudits).filter(|q| !keep.contains(q)).collect();
        let env_strides: Vec<usize> = env.iter().map(|&q| self.stride(q)).collect();
        // psi[k][e] laid out row-major
        let mut psi = vec![ZERO; self.dim()];
        for (idx, amp) in self.amps.iter().enumerate() {
            let ki = keep_strides.iter().fold(0, |acc, s| acc * p + (idx / s) % p);
            let ei = env_strides.iter().fold(0, |acc, s| acc * p + (idx / s) % p);
            psi[ki * env_dim + ei] = *amp;
        }
        let mut rho = DenseMatrix::zeros(kd);
        for r in 0..kd {
            for c in r..kd {
                let row_r = &psi[r * env_dim..(r + 1) * env_dim];
                let row_c = &psi[c * env_dim..(c + 1) * env_dim];
                let v: Complex64 = row_r.iter().zip(row_c).map(|(x, y)| x * y.conj()).sum();
                rho.set(r, c, v);
                rho.set(c, r, v.conj());
            }
        }
        Ok(rho)
    }
}

/// `tr ρ²`.
pub fn purity(rho: &DenseMatrix) -> f64 {
    let d = rho.dim();
    let mut s = 0.0;
    for r in 0..d {
        for c in 0..d {
            s += rho.get(r, c).norm_sqr();
        }
    }
    s
}

/// `⟨s|ρ|s⟩`.
pub fn fidelity_with_pure(rho: &DenseMatrix, s: &StateVector) -> f64 {
    let v = rho.mul_vec(s.amplitudes());
    s.amplitudes()
        .iter()
        .zip(&v)
        .map(|(a, b)| a.conj() * b)
        .sum::<Complex64>()
        .re
}

/// Free-function form of [`StateVector::apply_gate`].
pub fn apply_gate(s: &StateVector, g: &Gate) -> Result<StateVector> {
    let mut out = s.clone();
    out.apply_gate(g)?;
    Ok(out)
}

/// Dense unitary of a circuit, built column by column from basis states.
pub fn circuit_unitary(c: &Circuit) -> Result<DenseMatrix> {
    let limits = SimLimits {
        max_amplitudes: DENSE_LIMIT as u128,
    };
    let dim = limits.check(c.p(), c.num_qudits())?;
    let p = c.p();
    let mut columns = Vec::with_capacity(dim);
    for col in 0..dim {
        let mut digits = vec![0u32; c.num_qudits()];
        let mut rest = col;
        for d in digits.iter_mut().rev() {
            *d = (rest % p as usize) as u32;
            rest /= p as usize;
        }
        let mut s = StateVector::basis(c.field(), &digits, &limits)?;
        s.apply_circuit(c)?;
        columns.push(s.amps);
    }
    Ok(DenseMatrix::from_columns(&columns))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Role;
    use crate::pauli::{dense_matrix, PhaseExponent};
    use crate::symplectic::SymplecticVector;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn fourier_on_zero_is_uniform() {
        let lim = SimLimits::default();
        let mut s = StateVector::zero(f(5), 2, &lim).unwrap();
        s.apply_gate(&Gate::Fourier(1)).unwrap();
        for (i, a) in s.amplitudes().iter().enumerate() {
            let expect = if i < 5 { 1.0 / 5f64.sqrt() } else { 0.0 };
            assert!((a - Complex64::new(expect, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn phase_pow_on_basis_state() {
        let lim = SimLimits::default();
        for (p, e, j) in [(3u32, 2u32, 2u32), (2, 1, 1), (2, 3, 1), (5, 4, 3)] {
            let mut s = StateVector::basis(f(p), &[j], &lim).unwrap();
            s.apply_gate(&Gate::PhasePow { qudit: 0, exponent: e }).unwrap();
            let expect = omega_power(f(p), e * j);
            assert!((s.amplitudes()[j as usize] - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn qubit_phase_gate_is_root_of_z() {
        let lim = SimLimits::default();
        let mut s = StateVector::basis(f(2), &[1], &lim).unwrap();
        s.apply_gate(&Gate::PhasePow { qudit: 0, exponent: 1 }).unwrap();
        assert!((s.amplitudes()[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn phased_pauli_matches_dense() {
        let field = f(3);
        let v = SymplecticVector::parse(field, "12|21").unwrap();
        let op = PhasedPauli::new(PhaseExponent::new(field, 1), v);
        let dense = dense_matrix(&op).unwrap();
        let lim = SimLimits::default();
        for col in 0..9u32 {
            let mut s = StateVector::basis(field, &[col / 3, col % 3], &lim).unwrap();
            s.apply_phased_pauli(&op, 0).unwrap();
            for r in 0..9 {
                assert!((s.amplitudes()[r] - dense.get(r, col as usize)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn product_state_is_pure() {
        let lim = SimLimits::default();
        let mut s = StateVector::zero(f(3), 3, &lim).unwrap();
        s.apply_gate(&Gate::Fourier(0)).unwrap();
        s.apply_gate(&Gate::Fourier(2)).unwrap();
        for keep in [vec![0], vec![1, 2], vec![2, 0]] {
            let rho = s.reduced_state(&keep, &lim).unwrap();
            assert!((purity(&rho) - 1.0).abs() < 1e-12);
            assert!((rho.trace().re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn maximally_entangled_halves_have_purity_one_over_p() {
        let lim = SimLimits::default();
        for p in [2u32, 3, 5] {
            let mut s = StateVector::zero(f(p), 2, &lim).unwrap();
            s.apply_gate(&Gate::Fourier(0)).unwrap();
            s.apply_gate(&Gate::ControlledPauli {
                control: 0,
                target: 1,
                x: 1,
                z: 0,
            })
            .unwrap();
            for q in 0..2 {
                let rho = s.reduced_state(&[q], &lim).unwrap();
                assert!((purity(&rho) - 1.0 / p as f64).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn size_guard() {
        let lim = SimLimits { max_amplitudes: 100 };
        assert!(matches!(
            StateVector::zero(f(3), 5, &lim),
            Err(Error::TooLarge {
                requested: 243,
                limit: 100
            })
        ));
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::new(f(3), vec![Role::Share(1), Role::Ancilla(1)]);
        assert!(circuit_unitary(&c).unwrap().approx_eq(&DenseMatrix::identity(9), 0.0));
    }

    #[test]
    fn bad_index_is_reported() {
        let lim = SimLimits::default();
        let mut s = StateVector::zero(f(3), 2, &lim).unwrap();
        assert_eq!(
            s.apply_gate(&Gate::Fourier(2)),
            Err(Error::IndexOutOfRange { index: 2, qudits: 2 })
        );
    }
}
