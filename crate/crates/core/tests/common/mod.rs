//! Test-only oracles built straight from the operator definitions.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use qss_core::{DenseMatrix, PhaseExponent, PrimeField, SymplecticVector};

pub fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn small_prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5])
}

/// `X|i⟩ = |i+1⟩`.
pub fn shift(p: usize) -> DenseMatrix {
    DenseMatrix::from_fn(p, |r, c| {
        if r == (c + 1) % p {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `Z|i⟩ = ω_p^i |i⟩`.
pub fn clock(p: usize) -> DenseMatrix {
    DenseMatrix::from_fn(p, |r, c| {
        if r == c {
            Complex64::from_polar(1.0, 2.0 * PI * r as f64 / p as f64)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

pub fn phase_scalar(e: PhaseExponent) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * e.value() as f64 / e.order() as f64)
}

/// `X^{a_1} Z^{b_1} ⊗ … ⊗ X^{a_n} Z^{b_n}` by Kronecker products.
pub fn pauli_oracle(v: &SymplecticVector) -> DenseMatrix {
    let p = v.field().modulus() as usize;
    let (x, z) = (shift(p), clock(p));
    let mut out = DenseMatrix::identity(1);
    for s in 0..v.len() {
        let site = x.pow(v.a()[s] as usize).mul(&z.pow(v.b()[s] as usize));
        out = out.kron(&site);
    }
    out
}

/// `|j⟩⟨j|` on one qudit.
pub fn projector(p: usize, j: usize) -> DenseMatrix {
    DenseMatrix::from_fn(p, |r, c| {
        if r == j && c == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

pub fn add(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    DenseMatrix::from_fn(a.dim(), |r, c| a.get(r, c) + b.get(r, c))
}

pub fn vector_strategy(p: u32, n: usize) -> impl Strategy<Value = SymplecticVector> + Clone {
    prop::collection::vec(0..p, 2 * n).prop_map(move |c| SymplecticVector::from_coords(field(p), c).unwrap())
}

/// Every `F_p` combination of `rows`, as coordinate vectors.
pub fn enumerate_span(p: u32, rows: &[Vec<u32>], cols: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; cols]];
    for r in rows {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for base in &out {
            for c in 0..p {
                next.push(base.iter().zip(r).map(|(x, y)| (x + c * y) % p).collect());
            }
        }
        out = next;
    }
    out.sort();
    out.dedup();
    out
}
