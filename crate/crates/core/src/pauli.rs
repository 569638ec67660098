//! Exact arithmetic in the error group: phased Pauli operators `ω^e·M(x)`.
//!
//! Conventions: `X|i⟩ = |i+1 mod p⟩`, `Z|i⟩ = ω_p^i|i⟩` with
//! `ω_p = exp(2πi/p)`, so `ZX = ω_p·XZ`. The phase unit `ω` equals `ω_p` for
//! odd `p`; for `p = 2` it is `√−1`, and phases live modulo 4 while the
//! vector part stays modulo 2.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::field::{express_in_rows, FpMatrix, PrimeField};
use crate::symplectic::SymplecticVector;

/// Largest Hilbert-space dimension accepted by [`dense_matrix`].
pub const DENSE_LIMIT: usize = 1 << 14;

/// Order of the phase unit ω: `p` for odd primes, 4 for `p = 2`.
#[inline]
pub fn phase_order(field: PrimeField) -> u32 {
    match field.modulus() {
        2 => 4,
        p => p,
    }
}

/// How many units of ω make up `ω_p`.
#[inline]
fn omega_p_units(field: PrimeField) -> u32 {
    phase_order(field) / field.modulus()
}

/// `ω^k` as a complex number.
pub fn omega_power(field: PrimeField, k: u32) -> Complex64 {
    let order = phase_order(field);
    Complex64::from_polar(1.0, 2.0 * PI * f64::from(k % order) / f64::from(order))
}

/// The scalar `ω^e`, with `e` taken modulo the order of ω.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhaseExponent {
    value: u32,
    order: u32,
}

impl PhaseExponent {
    pub fn new(field: PrimeField, e: i64) -> Self {
        let order = phase_order(field);
        Self {
            value: e.rem_euclid(order as i64) as u32,
            order,
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::new(field, 0)
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn order(self) -> u32 {
        self.order
    }

    pub fn is_one(self) -> bool {
        self.value == 0
    }

    pub fn add(self, other: Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        Self {
            value: (self.value + other.value) % self.order,
            order: self.order,
        }
    }

    pub fn neg(self) -> Self {
        Self {
            value: (self.order - self.value) % self.order,
            order: self.order,
        }
    }

    pub fn sub(self, other: Self) -> Self {
        self.add(other.neg())
    }

    pub fn times(self, k: i64) -> Self {
        let order = self.order as i64;
        Self {
            value: (self.value as i64 * k.rem_euclid(order)).rem_euclid(order) as u32,
            order: self.order,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * f64::from(self.value) / f64::from(self.order))
    }
}

impl fmt::Display for PhaseExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            0 => write!(f, "1"),
            1 => write!(f, "w"),
            e => write!(f, "w^{e}"),
        }
    }
}

impl fmt::Debug for PhaseExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.order)
    }
}

/// `ω^phase · M(vec)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PhasedPauli {
    phase: PhaseExponent,
    vec: SymplecticVector,
}

impl PhasedPauli {
    pub fn new(phase: PhaseExponent, vec: SymplecticVector) -> Self {
        debug_assert_eq!(phase.order, phase_order(vec.field()));
        Self { phase, vec }
    }

    /// `M(x)` with trivial phase.
    pub fn from_vector(vec: SymplecticVector) -> Self {
        Self {
            phase: PhaseExponent::one(vec.field()),
            vec,
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        Self::from_vector(SymplecticVector::zero(field, n))
    }

    pub fn field(&self) -> PrimeField {
        self.vec.field()
    }

    pub fn phase(&self) -> PhaseExponent {
        self.phase
    }

    pub fn vector(&self) -> &SymplecticVector {
        &self.vec
    }

    pub fn with_phase(&self, phase: PhaseExponent) -> Self {
        Self {
            phase,
            vec: self.vec.clone(),
        }
    }

    /// Multiplies the operator by the scalar `ω^e`.
    pub fn times_phase(&self, e: PhaseExponent) -> Self {
        self.with_phase(self.phase.add(e))
    }

    pub fn is_scalar(&self) -> bool {
        self.vec.is_zero()
    }

    /// Operator product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let f = self.field();
        let vec = self.vec.add(&other.vec).map_err(|_| Error::DimensionMismatch)?;
        // Z^b X^a' = ω_p^{b·a'} X^a' Z^b on every site
        let twist = f.dot(other.vec.a(), self.vec.b());
        let phase = self
            .phase
            .add(other.phase)
            .add(PhaseExponent::new(f, (twist * omega_p_units(f)) as i64));
        Ok(Self { phase, vec })
    }

    /// `self^j` for any integer `j`; negative powers give inverses.
    pub fn pow(&self, j: i64) -> Self {
        let f = self.field();
        // every phased Pauli satisfies P^order = I
        let j = j.rem_euclid(phase_order(f) as i64);
        let mut acc = Self::identity(f, self.vec.len());
        for _ in 0..j {
            acc = acc.mul(self).expect("same shape");
        }
        acc
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }
}

impl fmt::Display for PhasedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·M{}", self.phase, self.vec)
    }
}

impl fmt::Debug for PhasedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn pauli_mul(p: &PhasedPauli, q: &PhasedPauli) -> Result<PhasedPauli> {
    p.mul(q)
}

pub fn pauli_pow(p: &PhasedPauli, j: i64) -> PhasedPauli {
    p.pow(j)
}

/// The exponent `c` with `M(x)M(y) = ω^c · M(y)M(x)`; equals `−⟨x, y⟩` in
/// units of `ω_p`.
pub fn commutation_phase(x: &SymplecticVector, y: &SymplecticVector) -> Result<PhaseExponent> {
    let f = x.field();
    let s = x.symplectic_product(y)?;
    Ok(PhaseExponent::new(f, -((s * omega_p_units(f)) as i64)))
}

/// The scalar `β` with `M(target) = β · M(left) · M(right)`.
pub fn relative_phase(
    target: &SymplecticVector,
    left: &SymplecticVector,
    right: &SymplecticVector,
) -> Result<PhaseExponent> {
    let sum = left.add(right)?;
    if &sum != target {
        return Err(Error::DecompositionMismatch);
    }
    let prod = PhasedPauli::from_vector(left.clone()).mul(&PhasedPauli::from_vector(right.clone()))?;
    Ok(prod.phase.neg())
}

/// Exact matrix of `ω^e M(x)`; site 1 is the most significant tensor factor.
pub fn dense_matrix(p: &PhasedPauli) -> Result<DenseMatrix> {
    let f = p.field();
    let q = f.modulus() as usize;
    let n = p.vec.len();
    let dim = (q as u128).pow(n as u32);
    if dim > DENSE_LIMIT as u128 {
        return Err(Error::TooLarge {
            requested: dim,
            limit: DENSE_LIMIT as u128,
        });
    }
    let shift = shift_matrix(f);
    let clock = clock_matrix(f);
    let mut acc = DenseMatrix::identity(1);
    for i in 0..n {
        let site = shift.pow(p.vec.a()[i] as usize).mul(&clock.pow(p.vec.b()[i] as usize));
        acc = acc.kron(&site);
    }
    Ok(acc.scale(p.phase.to_complex()))
}

/// `X`: `|i⟩ ↦ |i+1 mod p⟩`.
pub fn shift_matrix(field: PrimeField) -> DenseMatrix {
    let p = field.modulus() as usize;
    DenseMatrix::from_fn(p, |r, c| {
        if r == (c + 1) % p {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `Z`: `|i⟩ ↦ ω_p^i |i⟩`.
pub fn clock_matrix(field: PrimeField) -> DenseMatrix {
    let p = field.modulus();
    DenseMatrix::from_fn(p as usize, |r, c| {
        if r == c {
            Complex64::from_polar(1.0, 2.0 * PI * r as f64 / f64::from(p))
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Commuting phased generators whose joint `+1` eigenspace defines a state
/// or code space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhasedGeneratorSet {
    generators: Vec<PhasedPauli>,
}

impl PhasedGeneratorSet {
    /// Validates that the generators commute pairwise and that each has
    /// order `p` (order 2 when `p = 2`).
    pub fn new(generators: Vec<PhasedPauli>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            for (j, h) in generators.iter().enumerate().skip(i + 1) {
                let s = g.vector().symplectic_product(h.vector())?;
                if s != 0 {
                    return Err(Error::NotSelfOrthogonal {
                        first: i,
                        second: j,
                        value: s,
                    });
                }
            }
            let f = g.field();
            if !g.pow(f.modulus() as i64).is_identity() {
                return Err(Error::InvalidCode(format!(
                    "generator {i} = {g} does not have order {}",
                    f.modulus()
                )));
            }
        }
        Ok(Self { generators })
    }

    /// Attaches phases so that every generator has a `+1` eigenvalue: trivial
    /// phase for odd `p`; for `p = 2` a factor `√−1` on every vector with an
    /// odd number of `XZ` sites.
    pub fn calibrated(vectors: &[SymplecticVector]) -> Result<Self> {
        let gens = vectors.iter().map(|v| calibrate(v.clone())).collect();
        Self::new(gens)
    }

    pub fn generators(&self) -> &[PhasedPauli] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    fn vector_matrix(&self) -> Option<FpMatrix> {
        let first = self.generators.first()?;
        let rows: Vec<&[u32]> = self.generators.iter().map(|g| g.vector().coords()).collect();
        FpMatrix::from_rows(first.field(), 2 * first.vector().len(), &rows).ok()
    }

    /// The group element `Π g_i^{c_i}`, multiplied left to right.
    pub fn product(&self, coeffs: &[u32]) -> Result<PhasedPauli> {
        if coeffs.len() != self.generators.len() {
            return Err(Error::LengthMismatch {
                expected: self.generators.len(),
                found: coeffs.len(),
            });
        }
        let first = self.generators.first().ok_or(Error::NotInStabilizer)?;
        let mut acc = PhasedPauli::identity(first.field(), first.vector().len());
        for (g, &c) in self.generators.iter().zip(coeffs) {
            acc = acc.mul(&g.pow(c as i64))?;
        }
        Ok(acc)
    }

    /// `η(M(u))`: the eigenvalue of `M(u)` on every state fixed by the
    /// generators.
    pub fn eta_eigenvalue(&self, u: &SymplecticVector) -> Result<PhaseExponent> {
        if u.is_zero() {
            return Ok(PhaseExponent::one(u.field()));
        }
        let m = self.vector_matrix().ok_or(Error::NotInStabilizer)?;
        let sol = express_in_rows(&m, u.coords()).map_err(|e| match e {
            Error::NoSolution => Error::NotInStabilizer,
            other => other,
        })?;
        self.eta_from_coefficients(u, &sol.x)
    }

    /// Same as [`eta_eigenvalue`](Self::eta_eigenvalue) but with a caller
    /// supplied expression `u = Σ c_i vec(g_i)`.
    pub fn eta_from_coefficients(&self, u: &SymplecticVector, coeffs: &[u32]) -> Result<PhaseExponent> {
        let g = self.product(coeffs)?;
        if g.vector() != u {
            return Err(Error::NotInStabilizer);
        }
        // G = δ·M(u) fixes the state, so M(u) acts as δ⁻¹
        Ok(g.phase().neg())
    }
}

impl PhasedPauli {
    pub fn is_identity(&self) -> bool {
        self.vec.is_zero() && self.phase.is_one()
    }
}

/// Phase that gives `M(v)` a `+1` eigenvalue.
pub fn calibrate(v: SymplecticVector) -> PhasedPauli {
    let f = v.field();
    let e = if f.modulus() == 2 && v.xz_count() % 2 == 1 {
        1
    } else {
        0
    };
    PhasedPauli::new(PhaseExponent::new(f, e), v)
}

pub fn eta_eigenvalue(gens: &PhasedGeneratorSet, u: &SymplecticVector) -> Result<PhaseExponent> {
    gens.eta_eigenvalue(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn pv(p: u32, s: &str) -> PhasedPauli {
        PhasedPauli::from_vector(SymplecticVector::parse(field(p), s).unwrap())
    }

    #[test]
    fn identity_is_neutral() {
        let q = pv(3, "102|210");
        let id = PhasedPauli::identity(field(3), 3);
        assert_eq!(id.mul(&q).unwrap(), q);
        assert_eq!(q.mul(&id).unwrap(), q);
        assert_eq!(q.pow(0), id);
    }

    #[test]
    fn y_squared_is_minus_one_for_qubits() {
        let y = pv(2, "1|1");
        let sq = y.mul(&y).unwrap();
        assert!(sq.is_scalar());
        assert_eq!(sq.phase().value(), 2);
        let dense = dense_matrix(&y).unwrap();
        let oracle = dense.mul(&dense);
        assert!(oracle.approx_eq(&DenseMatrix::identity(2).scale(Complex64::new(-1.0, 0.0)), 1e-12));
    }

    #[test]
    fn qutrit_xz_cubed_is_identity() {
        let xz = pv(3, "1|1");
        let cube = xz.pow(3);
        assert!(cube.is_identity());
        let d = dense_matrix(&xz).unwrap();
        assert!(d.pow(3).approx_eq(&DenseMatrix::identity(3), 1e-12));
    }

    #[test]
    fn clock_and_shift() {
        let z = dense_matrix(&pv(3, "0|1")).unwrap();
        for i in 0..3 {
            assert!((z.get(i, i) - omega_power(field(3), i as u32)).norm() < 1e-12);
        }
        let x = dense_matrix(&pv(2, "1|0")).unwrap();
        assert_eq!(x.get(0, 1), Complex64::new(1.0, 0.0));
        assert_eq!(x.get(1, 0), Complex64::new(1.0, 0.0));
        assert_eq!(x.get(0, 0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn commutation_of_a_vector_with_itself() {
        let x = SymplecticVector::parse(field(5), "1234|4321").unwrap();
        assert!(commutation_phase(&x, &x).unwrap().is_one());
    }

    #[test]
    fn unit_pairing_gives_inverse_root() {
        // ⟨x, z⟩ = 1 gives M(x)M(z) = ω^{-1} M(z)M(x)
        let f = field(3);
        let x = SymplecticVector::parse(f, "1|0").unwrap();
        let z = SymplecticVector::parse(f, "0|1").unwrap();
        assert_eq!(x.symplectic_product(&z).unwrap(), 1);
        assert_eq!(commutation_phase(&x, &z).unwrap(), PhaseExponent::new(f, -1));
    }

    #[test]
    fn relative_phase_trivial_split() {
        let x = SymplecticVector::parse(field(3), "12|21").unwrap();
        let zero = SymplecticVector::zero(field(3), 2);
        assert!(relative_phase(&x, &x, &zero).unwrap().is_one());
        assert_eq!(relative_phase(&x, &x, &x), Err(Error::DecompositionMismatch));
    }

    #[test]
    fn dense_guard() {
        let big = PhasedPauli::identity(field(13), 4);
        assert!(matches!(dense_matrix(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn calibration_gives_order_two_for_qubits() {
        let v = SymplecticVector::parse(field(2), "110|100").unwrap();
        let g = calibrate(v);
        assert_eq!(g.phase().value(), 1);
        assert!(g.pow(2).is_identity());
    }

    #[test]
    fn generator_set_rejects_anticommuting() {
        let f = field(3);
        let a = SymplecticVector::parse(f, "1|0").unwrap();
        let b = SymplecticVector::parse(f, "0|1").unwrap();
        assert!(PhasedGeneratorSet::calibrated(&[a, b]).is_err());
    }

    #[test]
    fn eta_of_zero_is_one() {
        let f = field(3);
        let gens = PhasedGeneratorSet::calibrated(&[SymplecticVector::parse(f, "0|1").unwrap()]).unwrap();
        assert!(gens.eta_eigenvalue(&SymplecticVector::zero(f, 1)).unwrap().is_one());
        let outside = SymplecticVector::parse(f, "1|0").unwrap();
        assert_eq!(gens.eta_eigenvalue(&outside), Err(Error::NotInStabilizer));
    }

    #[test]
    fn display_uses_w() {
        let f = field(3);
        assert_eq!(PhaseExponent::new(f, 0).to_string(), "1");
        assert_eq!(PhaseExponent::new(f, 1).to_string(), "w");
        assert_eq!(PhaseExponent::new(f, -1).to_string(), "w^2");
    }
}
