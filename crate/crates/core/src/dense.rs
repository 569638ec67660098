//! Small dense complex matrices, used as exact-definition oracles.

use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m.data[r * dim + c] = f(r, c);
            }
        }
        m
    }

    /// Builds the matrix whose `c`-th column is `columns[c]`.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Self {
        let dim = columns.len();
        Self::from_fn(dim, |r, c| columns[c][r])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..d {
                    out.data[r * d + c] += a * other.data[k * d + c];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        Self::from_fn(a * b, |r, c| self.get(r / b, c / b) * other.get(r % b, c % b))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::identity(self.dim), |acc, _| acc.mul(self))
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.max_diff(other) <= tol
    }

    /// Equality up to a global phase; returns the phase when it exists.
    pub fn equal_up_to_phase(&self, other: &Self, tol: f64) -> Option<Complex64> {
        if self.dim != other.dim {
            return None;
        }
        let (idx, pivot) = other
            .data
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))?;
        if pivot.norm() < tol {
            return (self.max_diff(other) <= tol).then_some(Complex64::new(1.0, 0.0));
        }
        let phase = self.data[idx] / pivot;
        self.approx_eq(&other.scale(phase), tol).then_some(phase)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.adjoint().mul(self).approx_eq(&Self::identity(self.dim), tol)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }
}
