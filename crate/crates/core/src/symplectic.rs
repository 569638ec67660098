//! Vectors of F_p^{2n} with the standard symplectic form, share index sets and
//! subspaces ("code spaces") spanned by such vectors.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{intersect_spans, FpMatrix, PrimeField};

/// An element `(a_1..a_n | b_1..b_n)` of F_p^{2n}: the X-part `a` and the
/// Z-part `b` of a Pauli error pattern.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymplecticVector {
    field: PrimeField,
    n: usize,
    coords: Vec<u32>,
}

impl SymplecticVector {
    pub fn new(field: PrimeField, a: &[u32], b: &[u32]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        let mut coords = Vec::with_capacity(2 * a.len());
        coords.extend_from_slice(a);
        coords.extend_from_slice(b);
        Self::from_coords(field, coords)
    }

    /// From the concatenated coordinates `(a | b)`; the length must be even.
    pub fn from_coords(field: PrimeField, coords: Vec<u32>) -> Result<Self> {
        if !coords.len().is_multiple_of(2) {
            return Err(Error::LengthMismatch {
                expected: coords.len() + 1,
                found: coords.len(),
            });
        }
        let p = field.modulus();
        Ok(Self {
            field,
            n: coords.len() / 2,
            coords: coords.into_iter().map(|x| x % p).collect(),
        })
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        Self {
            field,
            n,
            coords: vec![0; 2 * n],
        }
    }

    /// Parses the compact `a…a|b…b` notation. Digits may be packed
    /// (`100202|020112`) or whitespace separated (`1 0 11 | 0 2 3`).
    pub fn parse(field: PrimeField, text: &str) -> Result<Self> {
        let bad = |message: String| Error::Parse { line: 0, message };
        let (a, b) = text
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split_once('|')
            .ok_or_else(|| bad(format!("missing '|' in {text:?}")))?;
        let half = |s: &str| -> Result<Vec<u32>> {
            let tokens: Vec<&str> = s.split_whitespace().collect();
            let digits: Vec<u32> = if tokens.len() == 1 {
                tokens[0]
                    .chars()
                    .map(|c| c.to_digit(10).ok_or_else(|| bad(format!("bad digit {c:?}"))))
                    .collect::<Result<_>>()?
            } else {
                tokens
                    .iter()
                    .map(|t| t.parse::<u32>().map_err(|_| bad(format!("bad value {t:?}"))))
                    .collect::<Result<_>>()?
            };
            if let Some(d) = digits.iter().find(|&&d| d >= field.modulus()) {
                return Err(bad(format!("value {d} is not below p = {}", field.modulus())));
            }
            Ok(digits)
        };
        let (a, b) = (half(a)?, half(b)?);
        if a.len() != b.len() {
            return Err(bad(format!(
                "X part has {} entries but Z part has {}",
                a.len(),
                b.len()
            )));
        }
        Self::new(field, &a, &b)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn a(&self) -> &[u32] {
        &self.coords[..self.n]
    }

    #[inline]
    pub fn b(&self) -> &[u32] {
        &self.coords[self.n..]
    }

    #[inline]
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::DimensionMismatch);
        }
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = self.field;
        Ok(Self {
            field: f,
            n: self.n,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&x, &y)| f.add(x, y))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(self.field.modulus() - 1)
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        Self {
            field: f,
            n: self.n,
            coords: self.coords.iter().map(|&x| f.mul(x, c % f.modulus())).collect(),
        }
    }

    /// `Σ_i (a_i b'_i − a'_i b_i) mod p`.
    pub fn symplectic_product(&self, other: &Self) -> Result<u32> {
        self.check(other)?;
        let f = self.field;
        let ab = f.dot(self.a(), other.b());
        let ba = f.dot(other.a(), self.b());
        Ok(f.sub(ab, ba))
    }

    /// Zero-based positions `i` with `(a_i, b_i) ≠ (0, 0)`.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| self.coords[i] != 0 || self.coords[self.n + i] != 0)
            .collect()
    }

    pub fn weight(&self) -> usize {
        self.support().len()
    }

    /// Number of positions with both `a_i` and `b_i` nonzero.
    pub fn xz_count(&self) -> usize {
        (0..self.n)
            .filter(|&i| self.coords[i] != 0 && self.coords[self.n + i] != 0)
            .count()
    }

    /// `P_J`: keeps the coordinates in `J` in both halves, order preserved.
    pub fn project(&self, j: &ShareIndexSet) -> Self {
        let idx: Vec<usize> = j.zero_based().collect();
        let mut coords = Vec::with_capacity(2 * idx.len());
        coords.extend(idx.iter().map(|&i| self.coords[i]));
        coords.extend(idx.iter().map(|&i| self.coords[self.n + i]));
        Self {
            field: self.field,
            n: idx.len(),
            coords,
        }
    }

    /// Whether the vector lies in F_p^J, i.e. vanishes outside `J`.
    pub fn supported_on(&self, j: &ShareIndexSet) -> bool {
        self.support().iter().all(|&i| j.contains(i + 1))
    }
}

impl fmt::Display for SymplecticVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let packed = self.field.modulus() <= 10;
        let half = |xs: &[u32]| -> String {
            let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
            if packed {
                parts.concat()
            } else {
                parts.join(" ")
            }
        };
        write!(f, "({}|{})", half(self.a()), half(self.b()))
    }
}

impl fmt::Debug for SymplecticVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `symplectic_product` as a free function.
pub fn symplectic_product(x: &SymplecticVector, y: &SymplecticVector) -> Result<u32> {
    x.symplectic_product(y)
}

/// A subset `J ⊆ {1..n}` of share indices (1-based).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShareIndexSet {
    n: usize,
    members: Vec<usize>,
}

impl ShareIndexSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        let len = members.len();
        members.dedup();
        if members.len() != len {
            return Err(Error::InvalidCode("duplicate share index".into()));
        }
        if let Some(&bad) = members.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::IndexOutOfRange { index: bad, qudits: n });
        }
        Ok(Self { n, members })
    }

    pub fn all(n: usize) -> Self {
        Self {
            n,
            members: (1..=n).collect(),
        }
    }

    pub fn empty(n: usize) -> Self {
        Self { n, members: vec![] }
    }

    /// Bit `i` set means share `i + 1` is a member.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self {
            n,
            members: (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect(),
        }
    }

    pub fn mask(&self) -> u64 {
        self.members.iter().fold(0, |m, &i| m | 1 << (i - 1))
    }

    pub fn total(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, share: usize) -> bool {
        self.members.binary_search(&share).is_ok()
    }

    pub fn zero_based(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|&i| i - 1)
    }

    /// `J̄ = {1..n} \ J`.
    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            members: (1..=self.n).filter(|i| !self.contains(*i)).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.members.iter().all(|&i| other.contains(i))
    }
}

impl fmt::Display for ShareIndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for ShareIndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A linear subspace of F_p^{2n}, held as a matrix of linearly independent
/// rows.
#[derive(Clone, PartialEq, Eq)]
pub struct CodeSpace {
    n: usize,
    basis: FpMatrix,
}

impl CodeSpace {
    /// Keeps the given rows verbatim; they must be linearly independent.
    pub fn from_basis(field: PrimeField, n: usize, rows: &[SymplecticVector]) -> Result<Self> {
        let m = rows_to_matrix(field, n, rows)?;
        if m.rank() != m.rows() {
            return Err(Error::InvalidCode("basis rows are linearly dependent".into()));
        }
        Ok(Self { n, basis: m })
    }

    /// Span of arbitrary rows, stored in reduced row-echelon form.
    pub fn span(field: PrimeField, n: usize, rows: &[SymplecticVector]) -> Result<Self> {
        let m = rows_to_matrix(field, n, rows)?;
        Ok(Self {
            n,
            basis: m.row_space_basis(),
        })
    }

    pub fn from_matrix(n: usize, m: &FpMatrix) -> Result<Self> {
        if m.cols() != 2 * n {
            return Err(Error::LengthMismatch {
                expected: 2 * n,
                found: m.cols(),
            });
        }
        Ok(Self {
            n,
            basis: m.row_space_basis(),
        })
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        Self {
            n,
            basis: FpMatrix::zeros(field, 0, 2 * n),
        }
    }

    /// The whole of F_p^{2n}.
    pub fn full(field: PrimeField, n: usize) -> Self {
        Self {
            n,
            basis: FpMatrix::identity(field, 2 * n),
        }
    }

    /// F_p^J: vectors vanishing outside `J`.
    pub fn coordinate_space(field: PrimeField, j: &ShareIndexSet) -> Self {
        let n = j.total();
        let mut rows = Vec::with_capacity(2 * j.len());
        for i in j.zero_based() {
            let mut e = vec![0; 2 * n];
            e[i] = 1;
            rows.push(e.clone());
            e[i] = 0;
            e[n + i] = 1;
            rows.push(e);
        }
        Self {
            n,
            basis: FpMatrix::from_rows(field, 2 * n, &rows)
                .expect("unit rows")
                .row_space_basis(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn basis(&self) -> Vec<SymplecticVector> {
        self.basis
            .row_iter()
            .map(|r| SymplecticVector::from_coords(self.field(), r.to_vec()).expect("even length"))
            .collect()
    }

    pub fn contains(&self, v: &SymplecticVector) -> bool {
        v.len() == self.n && v.field() == self.field() && self.basis.row_space_contains(v.coords())
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.n == other.n && self.basis().iter().all(|v| other.contains(v))
    }

    pub fn same_space(&self, other: &Self) -> bool {
        self.n == other.n && self.basis.same_row_space(&other.basis)
    }

    /// First pair of basis rows (0-based) with a nonzero symplectic product.
    pub fn first_non_orthogonal_pair(&self) -> Option<(usize, usize, u32)> {
        let rows = self.basis();
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                let v = rows[i].symplectic_product(&rows[j]).expect("same shape");
                if v != 0 {
                    return Some((i, j, v));
                }
            }
        }
        None
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.first_non_orthogonal_pair().is_none()
    }

    /// Symplectic dual `{y : ⟨x, y⟩ = 0 for all x in the space}`.
    pub fn dual(&self) -> Self {
        let f = self.field();
        let n = self.n;
        // ⟨x, y⟩ = (−b_x | a_x) · y
        let mut rows = Vec::with_capacity(self.dim());
        for r in self.basis.row_iter() {
            let mut functional: Vec<u32> = r[n..].iter().map(|&b| f.neg(b)).collect();
            functional.extend_from_slice(&r[..n]);
            rows.push(functional);
        }
        let m = FpMatrix::from_rows(f, 2 * n, &rows).expect("2n columns");
        Self {
            n,
            basis: m.nullspace().row_space_basis(),
        }
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch);
        }
        Ok(Self {
            n: self.n,
            basis: intersect_spans(&self.basis, &other.basis)?,
        })
    }

    /// `D ∩ F_p^J`.
    pub fn coordinate_section(&self, j: &ShareIndexSet) -> Self {
        let coord = Self::coordinate_space(self.field(), j);
        self.intersect(&coord).expect("same length")
    }

    /// `P_J(D)` as a subspace of F_p^{2|J|}.
    pub fn project(&self, j: &ShareIndexSet) -> Self {
        let rows: Vec<SymplecticVector> = self.basis().iter().map(|v| v.project(j)).collect();
        Self::span(self.field(), j.len(), &rows).expect("projected rows share a length")
    }

    /// Adds rows to the space.
    pub fn extend(&self, rows: &[SymplecticVector]) -> Result<Self> {
        let mut all = self.basis();
        all.extend_from_slice(rows);
        Self::span(self.field(), self.n, &all)
    }
}

impl fmt::Debug for CodeSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis().iter().map(|v| v.to_string()).collect();
        write!(f, "CodeSpace(n={}, dim={}, [{}])", self.n, self.dim(), rows.join(", "))
    }
}

fn rows_to_matrix(field: PrimeField, n: usize, rows: &[SymplecticVector]) -> Result<FpMatrix> {
    for r in rows {
        if r.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: r.len(),
            });
        }
        if r.field() != field {
            return Err(Error::DimensionMismatch);
        }
    }
    let coords: Vec<&[u32]> = rows.iter().map(|r| r.coords()).collect();
    FpMatrix::from_rows(field, 2 * n, &coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    fn v(s: &str) -> SymplecticVector {
        SymplecticVector::parse(f3(), s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let x = v("100202|020112");
        assert_eq!(x.a(), &[1, 0, 0, 2, 0, 2]);
        assert_eq!(x.b(), &[0, 2, 0, 1, 1, 2]);
        assert_eq!(x.to_string(), "(100202|020112)");
        let spaced = SymplecticVector::parse(f3(), "1 0 0 2 0 2 | 0 2 0 1 1 2").unwrap();
        assert_eq!(spaced, x);
        assert!(SymplecticVector::parse(f3(), "1003|012").is_err());
        assert!(SymplecticVector::parse(f3(), "13|00").is_err());
    }

    #[test]
    fn product_is_alternating() {
        let x = v("100202|020112");
        let y = v("001200|220201");
        assert_eq!(x.symplectic_product(&x).unwrap(), 0);
        let xy = x.symplectic_product(&y).unwrap();
        let yx = y.symplectic_product(&x).unwrap();
        assert_eq!(f3().add(xy, yx), 0);
    }

    #[test]
    fn projection_keeps_order() {
        let h1 = v("100202|020112");
        let j = ShareIndexSet::new(6, [1, 2]).unwrap();
        assert_eq!(h1.project(&j), v("10|02"));
        assert_eq!(h1.project(&ShareIndexSet::all(6)), h1);
    }

    #[test]
    fn share_sets() {
        let j = ShareIndexSet::new(6, [5, 3, 4, 6]).unwrap();
        assert_eq!(j.members(), &[3, 4, 5, 6]);
        assert_eq!(j.complement().members(), &[1, 2]);
        assert_eq!(ShareIndexSet::from_mask(6, j.mask()), j);
        assert_eq!(j.to_string(), "{3,4,5,6}");
        assert!(ShareIndexSet::new(6, [0]).is_err());
        assert!(ShareIndexSet::new(6, [7]).is_err());
        assert!(ShareIndexSet::new(6, [2, 2]).is_err());
    }

    #[test]
    fn dual_of_everything_is_trivial() {
        let full = CodeSpace::full(f3(), 3);
        assert_eq!(full.dual().dim(), 0);
        assert_eq!(CodeSpace::zero(f3(), 3).dual().dim(), 6);
    }

    #[test]
    fn section_of_full_index_set_is_identity() {
        let d = CodeSpace::span(f3(), 6, &[v("100202|020112"), v("010000|001222")]).unwrap();
        assert!(d.coordinate_section(&ShareIndexSet::all(6)).same_space(&d));
        assert_eq!(d.coordinate_section(&ShareIndexSet::empty(6)).dim(), 0);
    }
}
