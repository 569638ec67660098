//! Exact arithmetic and linear algebra over a prime field F_p.
//!
//! Elements are plain `u32` values in `[0, p)`; the modulus travels with a
//! [`PrimeField`] context. Matrices are dense, row-major and value-semantic.
//! All elimination routines pivot on the lowest column index first and, within
//! a column, on the lowest row index, so every result is deterministic.

use std::fmt;

use crate::error::{Error, Result};

/// Largest modulus accepted by the toolkit.
pub const MAX_PRIME: u32 = 13;

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if !prime || p > MAX_PRIME {
            return Err(Error::UnsupportedPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, x: u32, y: u32) -> u32 {
        (x + y) % self.p
    }

    #[inline]
    pub fn sub(self, x: u32, y: u32) -> u32 {
        (x + self.p - y) % self.p
    }

    #[inline]
    pub fn neg(self, x: u32) -> u32 {
        (self.p - x) % self.p
    }

    #[inline]
    pub fn mul(self, x: u32, y: u32) -> u32 {
        (x * y) % self.p
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(self, x: u32) -> Result<u32> {
        let x = x % self.p;
        if x == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(x, self.p - 2))
    }

    pub fn pow(self, x: u32, mut e: u32) -> u32 {
        let mut base = x % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn dot(self, x: &[u32], y: &[u32]) -> u32 {
        x.iter().zip(y).fold(0, |acc, (&a, &b)| (acc + a * b) % self.p)
    }
}

/// `fp_inv`: inverse of `x` modulo the prime `p`.
pub fn fp_inv(x: u32, p: u32) -> Result<u32> {
    PrimeField::new(p)?.inv(x)
}

/// Dense matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// A particular solution of `A·x = b` together with a basis of `ker A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub x: Vec<u32>,
    /// Rows form a basis of the right kernel of `A`.
    pub nullspace: FpMatrix,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major entries, reducing every entry mod p.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        let p = field.modulus();
        let data = data.into_iter().map(|x| x % p).collect();
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Stacks rows of equal length. `cols` is needed for the empty case.
    pub fn from_rows<R: AsRef<[u32]>>(field: PrimeField, cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::from_vec(field, rows.len(), cols, data)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::DimensionMismatch);
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, c)));
                }
            }
        }
        Ok(out)
    }

    /// `A·x` for a column vector `x`.
    pub fn mul_vec(&self, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok(self.row_iter().map(|r| self.field.dot(r, x)).collect())
    }

    /// `y·A` for a row vector `y` (a combination of the rows).
    pub fn combine_rows(&self, coeffs: &[u32]) -> Result<Vec<u32>> {
        if coeffs.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                found: coeffs.len(),
            });
        }
        let f = self.field;
        let mut out = vec![0; self.cols];
        for (r, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(self.row(r)) {
                *o = f.add(*o, f.mul(c, v));
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols || self.field != other.field {
            return Err(Error::DimensionMismatch);
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Selects a subset of columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            data.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        Self {
            field: self.field,
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    pub fn rref(&self) -> Rref {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    /// Nonzero rows of the reduced row-echelon form: a canonical basis of the
    /// row space.
    pub fn row_space_basis(&self) -> Self {
        let r = rref(self);
        let mut m = r.matrix;
        m.data.truncate(r.rank * m.cols);
        m.rows = r.rank;
        m
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &[u32]) -> bool {
        if v.len() != self.cols {
            return false;
        }
        let single = match Self::from_rows(self.field, self.cols, &[v]) {
            Ok(m) => m,
            Err(_) => return false,
        };
        let joined = self.stack(&single).expect("same shape");
        joined.rank() == self.rank()
    }

    /// Whether both matrices have the same row space.
    pub fn same_row_space(&self, other: &Self) -> bool {
        self.cols == other.cols && self.field == other.field && self.row_space_basis() == other.row_space_basis()
    }

    /// Basis of the right kernel `{x : A·x = 0}`, one vector per row.
    pub fn nullspace(&self) -> Self {
        let r = rref(self);
        nullspace_from_rref(&r, self.cols)
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.field.p, self.rows, self.cols)?;
        for r in self.row_iter() {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// Reduced row-echelon form with lowest-index pivoting.
pub fn rref(a: &FpMatrix) -> Rref {
    let f = a.field;
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut lead = 0;
    for c in 0..cols {
        if lead == rows {
            break;
        }
        let Some(pr) = (lead..rows).find(|&r| m.get(r, c) != 0) else {
            continue;
        };
        if pr != lead {
            for j in 0..cols {
                m.data.swap(pr * cols + j, lead * cols + j);
            }
        }
        let inv = f.inv(m.get(lead, c)).expect("pivot is nonzero");
        for j in 0..cols {
            let idx = lead * cols + j;
            m.data[idx] = f.mul(m.data[idx], inv);
        }
        for r in 0..rows {
            if r == lead {
                continue;
            }
            let factor = m.get(r, c);
            if factor == 0 {
                continue;
            }
            for j in 0..cols {
                let sub = f.mul(factor, m.data[lead * cols + j]);
                let idx = r * cols + j;
                m.data[idx] = f.sub(m.data[idx], sub);
            }
        }
        pivots.push(c);
        lead += 1;
    }
    let rank = pivots.len();
    Rref {
        matrix: m,
        pivots,
        rank,
    }
}

fn nullspace_from_rref(r: &Rref, cols: usize) -> FpMatrix {
    let f = r.matrix.field;
    let free: Vec<usize> = (0..cols).filter(|c| !r.pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![0; cols];
        v[fc] = 1;
        for (i, &pc) in r.pivots.iter().enumerate() {
            v[pc] = f.neg(r.matrix.get(i, fc));
        }
        basis.push(v);
    }
    FpMatrix::from_rows(f, cols, &basis).expect("rows have the kernel length")
}

/// Solves `A·x = b`. Free variables are set to zero.
pub fn solve_linear(a: &FpMatrix, b: &[u32]) -> Result<Solution> {
    if b.len() != a.rows {
        return Err(Error::LengthMismatch {
            expected: a.rows,
            found: b.len(),
        });
    }
    let f = a.field;
    let cols = a.cols;
    let mut aug = FpMatrix::zeros(f, a.rows, cols + 1);
    for r in 0..a.rows {
        for c in 0..cols {
            aug.data[r * (cols + 1) + c] = a.get(r, c);
        }
        aug.data[r * (cols + 1) + cols] = b[r] % f.modulus();
    }
    let red = rref(&aug);
    if red.pivots.last() == Some(&cols) {
        return Err(Error::NoSolution);
    }
    let mut x = vec![0; cols];
    for (i, &pc) in red.pivots.iter().enumerate() {
        x[pc] = red.matrix.get(i, cols);
    }
    let coeff = rref(a);
    Ok(Solution {
        x,
        nullspace: nullspace_from_rref(&coeff, cols),
    })
}

/// Coefficients `c` with `c·basis = v`, i.e. `v` expressed over the rows of
/// `basis`.
pub fn express_in_rows(basis: &FpMatrix, v: &[u32]) -> Result<Solution> {
    solve_linear(&basis.transpose(), v)
}

/// Basis (in reduced row-echelon form) of `rowspace(A) ∩ rowspace(B)`.
pub fn intersect_spans(a: &FpMatrix, b: &FpMatrix) -> Result<FpMatrix> {
    if a.cols != b.cols || a.field != b.field {
        return Err(Error::DimensionMismatch);
    }
    let a = a.row_space_basis();
    let b = b.row_space_basis();
    // (c | d) in the left kernel of [A; B] gives c·A = -d·B
    let stacked = a.stack(&b)?;
    let kernel = stacked.transpose().nullspace();
    let mut rows = Vec::with_capacity(kernel.rows);
    for k in kernel.row_iter() {
        rows.push(a.combine_rows(&k[..a.rows])?);
    }
    Ok(FpMatrix::from_rows(a.field, a.cols, &rows)?.row_space_basis())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn inverses() {
        assert_eq!(fp_inv(1, 3).unwrap(), 1);
        assert_eq!(fp_inv(2, 3).unwrap(), 2);
        // exhaustive search over [1, 7)
        let brute = (1..7).find(|y| (3 * y) % 7 == 1).unwrap();
        assert_eq!(brute, 5);
        assert_eq!(fp_inv(3, 7).unwrap(), brute);
        assert_eq!(fp_inv(0, 5), Err(Error::ZeroInverse));
    }

    #[test]
    fn rejects_bad_moduli() {
        for p in [0, 1, 4, 9, 15, 17] {
            assert_eq!(PrimeField::new(p), Err(Error::UnsupportedPrime(p)));
        }
        for p in [2, 3, 5, 7, 11, 13] {
            assert!(PrimeField::new(p).is_ok());
        }
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let m = FpMatrix::zeros(gf(3), 3, 4);
        let r = m.rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
        assert_eq!(m.nullspace().rows(), 4);
    }

    #[test]
    fn identity_solves_to_rhs() {
        let f = gf(5);
        let a = FpMatrix::identity(f, 4);
        let s = solve_linear(&a, &[3, 0, 4, 1]).unwrap();
        assert_eq!(s.x, vec![3, 0, 4, 1]);
        assert_eq!(s.nullspace.rows(), 0);
    }

    #[test]
    fn inconsistent_system() {
        let f = gf(3);
        let a = FpMatrix::from_rows(f, 2, &[[1, 1], [2, 2]]).unwrap();
        assert_eq!(solve_linear(&a, &[1, 1]), Err(Error::NoSolution));
        assert!(solve_linear(&a, &[1, 2]).is_ok());
    }

    #[test]
    fn free_variables_default_to_zero() {
        let f = gf(3);
        let a = FpMatrix::from_rows(f, 3, &[[1, 1, 0]]).unwrap();
        let s = solve_linear(&a, &[2]).unwrap();
        assert_eq!(s.x, vec![2, 0, 0]);
        assert_eq!(s.nullspace.rows(), 2);
    }

    #[test]
    fn intersection_of_a_space_with_itself() {
        let f = gf(3);
        let a = FpMatrix::from_rows(f, 4, &[[1, 2, 0, 1], [0, 1, 1, 1]]).unwrap();
        let i = intersect_spans(&a, &a).unwrap();
        assert!(i.same_row_space(&a));
    }

    #[test]
    fn intersection_can_be_empty() {
        let f = gf(2);
        let a = FpMatrix::from_rows(f, 3, &[[1, 0, 0]]).unwrap();
        let b = FpMatrix::from_rows(f, 3, &[[0, 1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(intersect_spans(&a, &b).unwrap().rows(), 0);
    }

    #[test]
    fn empty_shapes_are_fine() {
        let f = gf(3);
        let a = FpMatrix::zeros(f, 0, 5);
        assert_eq!(a.rank(), 0);
        assert_eq!(a.nullspace().rows(), 5);
        let s = solve_linear(&FpMatrix::zeros(f, 0, 3), &[]).unwrap();
        assert_eq!(s.x, vec![0, 0, 0]);
    }
}
