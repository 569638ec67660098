//! Stabilizer codes as F_p-linear spaces: the stabilizer space `C`, its
//! symplectic dual `C⊥`, a self-dual space `Cᵐ` between them and hyperbolic
//! logical pairs `(x_i, z_i)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{express_in_rows, FpMatrix, PrimeField};
use crate::symplectic::{CodeSpace, ShareIndexSet, SymplecticVector};

/// Largest share count for which access structures are enumerated.
pub const ENUMERATION_LIMIT: usize = 12;

/// Representatives of the `i`-th logical X and Z operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalPair {
    pub x: SymplecticVector,
    pub z: SymplecticVector,
}

/// `x = u + w` with `u ∈ C` and `w` supported on the available shares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowDecomposition {
    /// Stabilizer part (`u` or `v`).
    pub stabilizer_part: SymplecticVector,
    /// Part supported on `J` (`w` or `y`).
    pub shadow: SymplecticVector,
    /// Coefficients of the stabilizer part over the stabilizer basis.
    pub coefficients: Vec<u32>,
}

/// A validated `[[n, k]]_p` stabilizer code together with a self-dual
/// extension and logical pairs.
#[derive(Clone, Debug)]
pub struct StabilizerCodeSpec {
    field: PrimeField,
    n: usize,
    k: usize,
    stabilizer: CodeSpace,
    self_dual: CodeSpace,
    dual: CodeSpace,
    logical: Vec<LogicalPair>,
    rescaled: Vec<(usize, u32)>,
}

impl StabilizerCodeSpec {
    /// Assembles a code from its parts. Missing pieces are completed:
    ///
    /// * no self-dual rows and no logical pairs: [`self_dual_completion`];
    /// * self-dual rows only: logical pairs are derived inside the given `Cᵐ`;
    /// * logical pairs given: `Cᵐ = C + span{z_i}` and pairings
    ///   `⟨x_i, z_i⟩ = c ≠ 1` are normalized by rescaling `z_i` by `c⁻¹`.
    ///
    /// `self_dual_extra` lists rows that together with the stabilizer rows
    /// span `Cᵐ`.
    pub fn from_parts(
        field: PrimeField,
        n: usize,
        stabilizer: &[SymplecticVector],
        self_dual_extra: &[SymplecticVector],
        logical_x: &[SymplecticVector],
        logical_z: &[SymplecticVector],
    ) -> Result<Self> {
        let c = CodeSpace::from_basis(field, n, stabilizer).map_err(|e| match e {
            Error::InvalidCode(_) => Error::InvalidCode("stabilizer rows are linearly dependent".into()),
            other => other,
        })?;
        if let Some((i, j, value)) = c.first_non_orthogonal_pair() {
            return Err(Error::NotSelfOrthogonal {
                first: i + 1,
                second: j + 1,
                value,
            });
        }
        let k = n - c.dim();
        let given_self_dual = if self_dual_extra.is_empty() {
            None
        } else {
            Some(c.extend(self_dual_extra)?)
        };

        let mut rescaled = Vec::new();
        let (self_dual, logical) = match (logical_x.is_empty(), logical_z.is_empty()) {
            (true, true) => match &given_self_dual {
                Some(cm) => {
                    check_self_dual(&c, cm)?;
                    let pairs = pairs_within(&c, cm)?;
                    (cm.clone(), pairs)
                }
                None => self_dual_completion(&c)?,
            },
            (false, false) => {
                if logical_x.len() != k || logical_z.len() != k {
                    return Err(Error::InvalidCode(format!(
                        "expected {k} logical pairs, found {} X and {} Z rows",
                        logical_x.len(),
                        logical_z.len()
                    )));
                }
                let (zs, r) = normalize_pairing(logical_x, logical_z)?;
                rescaled = r;
                let cm = c.extend(&zs)?;
                if let Some(given) = &given_self_dual {
                    if !given.same_space(&cm) {
                        return Err(Error::InvalidCode(
                            "self-dual rows disagree with the span of the stabilizer and logical Z rows".into(),
                        ));
                    }
                }
                let pairs = logical_x
                    .iter()
                    .cloned()
                    .zip(zs)
                    .map(|(x, z)| LogicalPair { x, z })
                    .collect();
                (cm, pairs)
            }
            _ => return Err(Error::InvalidCode("logical X and Z rows must be given together".into())),
        };

        let dual = c.dual();
        let spec = Self {
            field,
            n,
            k,
            stabilizer: c,
            self_dual,
            dual,
            logical,
            rescaled,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks every structural invariant of the code.
    pub fn validate(&self) -> Result<()> {
        let (n, k) = (self.n, self.k);
        let bad = |m: String| Err(Error::InvalidCode(m));
        if self.stabilizer.dim() != n - k {
            return bad(format!("dim C = {} but n - k = {}", self.stabilizer.dim(), n - k));
        }
        if let Some((i, j, value)) = self.stabilizer.first_non_orthogonal_pair() {
            return Err(Error::NotSelfOrthogonal {
                first: i + 1,
                second: j + 1,
                value,
            });
        }
        check_self_dual(&self.stabilizer, &self.self_dual)?;
        if self.dual.dim() != n + k {
            return bad(format!("dim C⊥ = {} but n + k = {}", self.dual.dim(), n + k));
        }
        if self.logical.len() != k {
            return bad(format!("{} logical pairs for k = {k}", self.logical.len()));
        }
        for (i, pair) in self.logical.iter().enumerate() {
            if !self.self_dual.contains(&pair.z) {
                return bad(format!("logical z_{} is not in the self-dual space", i + 1));
            }
            if !self.dual.contains(&pair.x) {
                return bad(format!("logical x_{} is not in the dual space", i + 1));
            }
        }
        let xs: Vec<SymplecticVector> = self.logical.iter().map(|l| l.x.clone()).collect();
        if self.self_dual.extend(&xs)?.dim() != n + k {
            return bad("logical X cosets are linearly dependent modulo the self-dual space".into());
        }
        for (i, a) in self.logical.iter().enumerate() {
            for (j, b) in self.logical.iter().enumerate() {
                let xz = a.x.symplectic_product(&b.z)?;
                if xz != u32::from(i == j) {
                    return bad(format!("<x_{}, z_{}> = {xz}", i + 1, j + 1));
                }
                let xx = a.x.symplectic_product(&b.x)?;
                if xx != 0 {
                    return bad(format!("<x_{}, x_{}> = {xx}", i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `C`, with the basis rows in the order they were supplied.
    pub fn stabilizer(&self) -> &CodeSpace {
        &self.stabilizer
    }

    /// `C⊥`.
    pub fn dual(&self) -> &CodeSpace {
        &self.dual
    }

    /// `Cᵐ`.
    pub fn self_dual(&self) -> &CodeSpace {
        &self.self_dual
    }

    pub fn logical_pairs(&self) -> &[LogicalPair] {
        &self.logical
    }

    /// Logical pairs whose Z representative was rescaled at load time, as
    /// `(zero-based index, original pairing value)`.
    pub fn rescaled_pairs(&self) -> &[(usize, u32)] {
        &self.rescaled
    }

    fn check_share_set(&self, j: &ShareIndexSet) -> Result<()> {
        if j.total() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: j.total(),
            });
        }
        Ok(())
    }

    /// Whether erasures on `J̄` can be corrected, i.e.
    /// `C⊥ ∩ F_p^{J̄} = C ∩ F_p^{J̄}`.
    pub fn erasure_correctable(&self, erased: &ShareIndexSet) -> bool {
        let inner = self.stabilizer.coordinate_section(erased).dim();
        let outer = self.dual.coordinate_section(erased).dim();
        inner == outer
    }

    /// Whether the shares in `J` can reconstruct the secret.
    pub fn is_qualified(&self, available: &ShareIndexSet) -> bool {
        self.erasure_correctable(&available.complement())
    }

    /// Writes `x ∈ C⊥` as `u + w` with `u ∈ C` and `w ∈ C⊥ ∩ F_p^J`.
    pub fn shadow_decompose_x(&self, x: &SymplecticVector, available: &ShareIndexSet) -> Result<ShadowDecomposition> {
        self.check_share_set(available)?;
        if !self.dual.contains(x) {
            return Err(Error::NotInDual);
        }
        self.shadow(x, available)
    }

    /// Writes `z ∈ Cᵐ` as `v + y` with `v ∈ C` and `y ∈ Cᵐ ∩ F_p^J`.
    pub fn shadow_decompose_z(&self, z: &SymplecticVector, available: &ShareIndexSet) -> Result<ShadowDecomposition> {
        self.check_share_set(available)?;
        if !self.self_dual.contains(z) {
            return Err(Error::NotInSelfDual);
        }
        self.shadow(z, available)
    }

    fn shadow(&self, x: &SymplecticVector, available: &ShareIndexSet) -> Result<ShadowDecomposition> {
        let erased = available.complement();
        let not_correctable = || Error::NotCorrectable {
            erased: erased.members().to_vec(),
        };
        if !self.erasure_correctable(&erased) {
            return Err(not_correctable());
        }
        // find u ∈ C agreeing with x on the erased shares
        let basis = self.stabilizer.basis();
        let projected: Vec<Vec<u32>> = basis.iter().map(|h| h.project(&erased).coords().to_vec()).collect();
        let m = FpMatrix::from_rows(self.field, 2 * erased.len(), &projected)?;
        let sol = express_in_rows(&m, x.project(&erased).coords()).map_err(|e| match e {
            Error::NoSolution => not_correctable(),
            other => other,
        })?;
        let u = SymplecticVector::from_coords(self.field, self.stabilizer.matrix().combine_rows(&sol.x)?)?;
        let w = x.sub(&u)?;
        Ok(ShadowDecomposition {
            stabilizer_part: u,
            shadow: w,
            coefficients: sol.x,
        })
    }

    /// Every qualified share set, ordered by size and then lexicographically.
    pub fn all_qualified_sets(&self) -> Result<Vec<ShareIndexSet>> {
        Ok(self
            .subsets_by_size()?
            .into_iter()
            .filter(|j| self.is_qualified(j))
            .collect())
    }

    /// Minimal qualified sets with at most `max_size` members.
    pub fn qualified_sets(&self, max_size: usize) -> Result<Vec<ShareIndexSet>> {
        let mut minimal: Vec<ShareIndexSet> = Vec::new();
        for j in self.subsets_by_size()? {
            if j.len() > max_size {
                break;
            }
            // qualification is monotone, so supersets of a minimal set qualify
            if minimal.iter().any(|m| m.is_subset_of(&j)) {
                continue;
            }
            if self.is_qualified(&j) {
                minimal.push(j);
            }
        }
        Ok(minimal)
    }

    fn subsets_by_size(&self) -> Result<Vec<ShareIndexSet>> {
        if self.n > ENUMERATION_LIMIT {
            return Err(Error::TooLarge {
                requested: self.n as u128,
                limit: ENUMERATION_LIMIT as u128,
            });
        }
        let mut sets: Vec<ShareIndexSet> = (0..1u64 << self.n)
            .map(|m| ShareIndexSet::from_mask(self.n, m))
            .collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members().cmp(b.members())));
        Ok(sets)
    }
}

fn check_self_dual(c: &CodeSpace, cm: &CodeSpace) -> Result<()> {
    let n = c.n();
    if cm.dim() != n {
        return Err(Error::InvalidCode(format!("dim Cᵐ = {} but n = {n}", cm.dim())));
    }
    if let Some((i, j, value)) = cm.first_non_orthogonal_pair() {
        return Err(Error::InvalidCode(format!(
            "self-dual space is not isotropic: basis rows {} and {} have product {value}",
            i + 1,
            j + 1
        )));
    }
    if !c.is_subspace_of(cm) {
        return Err(Error::InvalidCode(
            "stabilizer is not contained in the self-dual space".into(),
        ));
    }
    Ok(())
}

/// Rescales each `z_i` so that `⟨x_i, z_j⟩ = δ_ij`; returns the new Z rows and
/// the list of `(index, original pairing)` that were changed.
fn normalize_pairing(
    xs: &[SymplecticVector],
    zs: &[SymplecticVector],
) -> Result<(Vec<SymplecticVector>, Vec<(usize, u32)>)> {
    let mut out = Vec::with_capacity(zs.len());
    let mut rescaled = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        for (j, z) in zs.iter().enumerate() {
            let v = x.symplectic_product(z)?;
            if i != j && v != 0 {
                return Err(Error::InvalidCode(format!(
                    "<x_{}, z_{}> = {v} but logical pairs must pair diagonally",
                    i + 1,
                    j + 1
                )));
            }
        }
        let c = x.symplectic_product(&zs[i])?;
        if c == 0 {
            return Err(Error::InvalidCode(format!("<x_{0}, z_{0}> = 0", i + 1)));
        }
        if c != 1 {
            let inv = x.field().inv(c)?;
            log::warn!(
                "logical pair {} has <x, z> = {c}; rescaling z_{} by {inv}",
                i + 1,
                i + 1
            );
            rescaled.push((i, c));
            out.push(zs[i].scale(inv));
        } else {
            out.push(zs[i].clone());
        }
    }
    Ok((out, rescaled))
}

/// Basis vectors of `big` that extend `small` to a basis of `big`.
fn complement_basis(small: &CodeSpace, big: &CodeSpace) -> Result<Vec<SymplecticVector>> {
    let mut acc = small.clone();
    let mut out = Vec::new();
    for v in big.basis() {
        if !acc.contains(&v) {
            acc = acc.extend(std::slice::from_ref(&v))?;
            out.push(v);
        }
    }
    Ok(out)
}

/// Symplectic Gram–Schmidt on `C⊥` modulo `C`.
///
/// Returns `Cᵐ = C + span{z_i}` with `C ⊆ Cᵐ = (Cᵐ)⊥` and pairs satisfying
/// `⟨x_i, z_j⟩ = δ_ij`, `⟨x_i, x_j⟩ = ⟨z_i, z_j⟩ = 0`.
pub fn self_dual_completion(c: &CodeSpace) -> Result<(CodeSpace, Vec<LogicalPair>)> {
    if let Some((i, j, value)) = c.first_non_orthogonal_pair() {
        return Err(Error::NotSelfOrthogonal {
            first: i + 1,
            second: j + 1,
            value,
        });
    }
    let f = c.field();
    let dual = c.dual();
    let mut pool = complement_basis(c, &dual)?;
    let mut pairs = Vec::new();
    while let Some(x) = (!pool.is_empty()).then(|| pool.remove(0)) {
        let partner = pool
            .iter()
            .position(|w| x.symplectic_product(w).map(|s| s != 0).unwrap_or(false))
            .ok_or_else(|| Error::InvalidCode("degenerate form on C⊥/C".into()))?;
        let z = pool.remove(partner);
        let z = z.scale(f.inv(x.symplectic_product(&z)?)?);
        for w in pool.iter_mut() {
            let wz = w.symplectic_product(&z)?;
            let wx = w.symplectic_product(&x)?;
            // w ← w − ⟨w,z⟩x + ⟨w,x⟩z
            *w = w.sub(&x.scale(wz))?.add(&z.scale(wx))?;
        }
        pairs.push(LogicalPair { x, z });
    }
    let zs: Vec<SymplecticVector> = pairs.iter().map(|p| p.z.clone()).collect();
    let cm = c.extend(&zs)?;
    Ok((cm, pairs))
}

/// Logical pairs with every `z_i` inside a prescribed self-dual `cm`.
fn pairs_within(c: &CodeSpace, cm: &CodeSpace) -> Result<Vec<LogicalPair>> {
    let f = c.field();
    let n = c.n();
    let zs = complement_basis(c, cm)?;
    // ⟨h, x⟩ = 0 for h ∈ C and ⟨z_j, x⟩ = −δ_ij, i.e. ⟨x, z_j⟩ = δ_ij
    let functional = |v: &SymplecticVector| -> Vec<u32> {
        let mut row: Vec<u32> = v.b().iter().map(|&b| f.neg(b)).collect();
        row.extend_from_slice(v.a());
        row
    };
    let mut rows: Vec<Vec<u32>> = c.basis().iter().map(functional).collect();
    rows.extend(zs.iter().map(functional));
    let a = FpMatrix::from_rows(f, 2 * n, &rows)?;
    let mut xs = Vec::with_capacity(zs.len());
    for i in 0..zs.len() {
        let mut rhs = vec![0; c.dim()];
        rhs.extend((0..zs.len()).map(|j| if i == j { f.neg(1) } else { 0 }));
        let sol = crate::field::solve_linear(&a, &rhs)
            .map_err(|_| Error::InvalidCode("no logical X partner for a self-dual row".into()))?;
        xs.push(SymplecticVector::from_coords(f, sol.x)?);
    }
    let original = xs.clone();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let s = original[i].symplectic_product(&original[j])?;
            if s != 0 {
                xs[i] = xs[i].add(&zs[j].scale(s))?;
            }
        }
    }
    Ok(xs.into_iter().zip(zs).map(|(x, z)| LogicalPair { x, z }).collect())
}

/// A random `[[n, k]]_p` code built from a random symplectic basis
/// (products of random transvections applied to the standard basis).
pub fn random_self_orthogonal_code(p: u32, n: usize, k: usize, seed: u64) -> Result<StabilizerCodeSpec> {
    let f = PrimeField::new(p)?;
    if k > n || n == 0 {
        return Err(Error::InvalidCode(format!("cannot build a code with n = {n}, k = {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = |i: usize| {
        let mut v = vec![0; 2 * n];
        v[i] = 1;
        SymplecticVector::from_coords(f, v).expect("even length")
    };
    let mut es: Vec<SymplecticVector> = (0..n).map(unit).collect();
    let mut fs: Vec<SymplecticVector> = (n..2 * n).map(unit).collect();
    for _ in 0..(6 * n + 8) {
        let t = loop {
            let coords: Vec<u32> = (0..2 * n).map(|_| rng.random_range(0..p)).collect();
            let v = SymplecticVector::from_coords(f, coords)?;
            if !v.is_zero() {
                break v;
            }
        };
        let lambda = rng.random_range(1..p);
        // x ↦ x + λ⟨x, t⟩ t preserves the symplectic form
        for v in es.iter_mut().chain(fs.iter_mut()) {
            let s = f.mul(lambda, v.symplectic_product(&t)?);
            *v = v.add(&t.scale(s))?;
        }
    }
    let stabilizer = &fs[k..];
    StabilizerCodeSpec::from_parts(f, n, stabilizer, &[], &es[..k], &fs[..k])
}
