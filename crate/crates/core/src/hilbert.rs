//! Dense complex linear algebra on small Hilbert spaces.
//!
//! Everything here is sized for a handful of qudits: vectors and matrices are
//! stored densely, row-major, with no attempt at sparsity.
//!
//! Multi-party spaces follow one fixed convention throughout the crate: in a
//! tensor product `a ⊗ b` the left factor is the slow (most significant)
//! index, so the basis state `|i⟩|j⟩` of a `d_a ⊗ d_b` space sits at flat
//! index `i * d_b + j`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default absolute tolerance for equality and validation checks.
pub const TOL: f64 = 1e-10;

/// Eigenvalues above this (negative) threshold count as nonnegative.
pub const PSD_TOL: f64 = 1e-9;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Kronecker product, left factor slow.
pub trait Tensor {
    fn tensor(&self, rhs: &Self) -> Self;
}

/// A normalized pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Builds a state, rejecting input whose squared norm is not 1 within [`TOL`].
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidArgument("state vector must be non-empty".into()));
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self { amps })
    }

    /// Builds a state after dividing out the norm. Fails only on the zero vector.
    pub fn renormalize(amps: Vec<Complex64>) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if amps.is_empty() || norm < f64::EPSILON {
            return Err(Error::NotNormalized(norm * norm));
        }
        Ok(Self {
            amps: amps.into_iter().map(|a| a / norm).collect(),
        })
    }

    /// Wraps amplitudes without checking the norm.
    pub fn from_raw(amps: Vec<Complex64>) -> Self {
        Self { amps }
    }

    /// Computational basis state `|k⟩` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index {k} out of range for dimension {dim}");
        let mut amps = vec![ZERO; dim];
        amps[k] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Complex conjugate in the computational basis, `|ψ*⟩`.
    pub fn conj(&self) -> Self {
        Self {
            amps: self.amps.iter().map(|a| a.conj()).collect(),
        }
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> DensityMatrix {
        let n = self.dim();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.amps[i] * self.amps[j].conj());
            }
        }
        DensityMatrix { dim: n, entries }
    }

    /// True when the two states differ only by a global phase: `|⟨u|v⟩| > 1 - tol`.
    pub fn equal_up_to_phase(&self, other: &StateVector, tol: f64) -> bool {
        match self.inner(other) {
            Ok(z) => z.norm() > 1.0 - tol,
            Err(_) => false,
        }
    }
}

impl Tensor for StateVector {
    fn tensor(&self, rhs: &Self) -> Self {
        let amps = self
            .amps
            .iter()
            .flat_map(|a| rhs.amps.iter().map(move |b| a * b))
            .collect();
        Self { amps }
    }
}

/// Kronecker product of two row-major square matrices.
fn kron(dim_a: usize, a: &[Complex64], dim_b: usize, b: &[Complex64]) -> Vec<Complex64> {
    let dim = dim_a * dim_b;
    let mut out = vec![ZERO; dim * dim];
    for i in 0..dim_a {
        for j in 0..dim_a {
            let aij = a[i * dim_a + j];
            if aij == ZERO {
                continue;
            }
            for k in 0..dim_b {
                for l in 0..dim_b {
                    out[(i * dim_b + k) * dim + (j * dim_b + l)] = aij * b[k * dim_b + l];
                }
            }
        }
    }
    out
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        Err(Error::DimensionMismatch { expected, found })
    } else {
        Ok(())
    }
}

/// A square matrix acting on states. No structural invariant beyond shape.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl Operator {
    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                ZERO
            }
        })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    /// Row-major entries; fails if the length is not a perfect square.
    pub fn from_entries(entries: Vec<Complex64>) -> Result<Self> {
        let dim = square_side(entries.len())?;
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        check_dim(self.dim, psi.dim())?;
        let n = self.dim;
        let amps = (0..n)
            .map(|i| (0..n).map(|j| self.entries[i * n + j] * psi.amps[j]).sum())
            .collect();
        Ok(StateVector { amps })
    }

    pub fn matmul(&self, rhs: &Operator) -> Result<Operator> {
        check_dim(self.dim, rhs.dim)?;
        let n = self.dim;
        Ok(Self::from_fn(n, |i, j| {
            (0..n).map(|k| self.get(i, k) * rhs.get(k, j)).sum()
        }))
    }

    pub fn adjoint(&self) -> Operator {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    /// Largest entrywise modulus of `U†U - I`.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self
            .adjoint()
            .matmul(self)
            .expect("adjoint has the same dimension");
        max_abs_diff(&prod.entries, &Operator::identity(self.dim).entries)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() < tol
    }

    /// Largest entrywise modulus of `self - other`, or infinity on shape mismatch.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        max_abs_diff(&self.entries, &other.entries)
    }
}

impl Tensor for Operator {
    fn tensor(&self, rhs: &Self) -> Self {
        Self {
            dim: self.dim * rhs.dim,
            entries: kron(self.dim, &self.entries, rhs.dim, &rhs.entries),
        }
    }
}

fn square_side(len: usize) -> Result<usize> {
    let side = (len as f64).sqrt().round() as usize;
    if side == 0 || side * side != len {
        return Err(Error::InvalidArgument(format!(
            "{len} entries do not form a non-empty square matrix"
        )));
    }
    Ok(side)
}

fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// A Hermitian, unit-trace, positive semidefinite matrix.
///
/// [`DensityMatrix::new`] enforces all three properties; [`DensityMatrix::from_raw`]
/// skips validation and is meant for intermediate arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        let rho = Self::from_raw(entries)?;
        rho.validate()?;
        Ok(rho)
    }

    /// Row-major entries; only the shape is checked.
    pub fn from_raw(entries: Vec<Complex64>) -> Result<Self> {
        let dim = square_side(entries.len())?;
        Ok(Self { dim, entries })
    }

    /// The maximally mixed state `I/dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        let w = Complex64::new(1.0 / dim as f64, 0.0);
        let op = Operator::from_fn(dim, |i, j| if i == j { w } else { ZERO });
        Self {
            dim,
            entries: op.entries,
        }
    }

    /// Convex combination `Σ wᵢ ρᵢ`. Weights are not checked.
    pub fn mixture<'a>(
        terms: impl IntoIterator<Item = (f64, &'a DensityMatrix)>,
    ) -> Result<DensityMatrix> {
        let mut acc: Option<DensityMatrix> = None;
        for (w, rho) in terms {
            match acc.as_mut() {
                None => {
                    acc = Some(DensityMatrix {
                        dim: rho.dim,
                        entries: rho.entries.iter().map(|z| z * w).collect(),
                    })
                }
                Some(sum) => {
                    check_dim(sum.dim, rho.dim)?;
                    for (s, z) in sum.entries.iter_mut().zip(&rho.entries) {
                        *s += z * w;
                    }
                }
            }
        }
        acc.ok_or_else(|| Error::InvalidArgument("empty mixture".into()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let n = self.dim;
        let m = DMatrix::from_fn(n, n, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * 0.5
        });
        m.symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Checks Hermiticity and unit trace within [`TOL`] and positivity within [`PSD_TOL`].
    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_defect();
        if herm > TOL {
            return Err(Error::NotHermitian(herm));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > TOL || tr.im.abs() > TOL {
            return Err(Error::InvalidTrace(tr.re));
        }
        let min_eig = self.min_eigenvalue();
        if min_eig < -PSD_TOL {
            return Err(Error::NotPositive(min_eig));
        }
        Ok(())
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &Operator) -> Result<DensityMatrix> {
        check_dim(self.dim, u.dim)?;
        let rho = Operator {
            dim: self.dim,
            entries: self.entries.clone(),
        };
        let out = u.matmul(&rho)?.matmul(&u.adjoint())?;
        Ok(DensityMatrix {
            dim: out.dim,
            entries: out.entries,
        })
    }

    /// Largest entrywise modulus of `self - other`, or infinity on shape mismatch.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        max_abs_diff(&self.entries, &other.entries)
    }
}

impl Tensor for DensityMatrix {
    fn tensor(&self, rhs: &Self) -> Self {
        Self {
            dim: self.dim * rhs.dim,
            entries: kron(self.dim, &self.entries, rhs.dim, &rhs.entries),
        }
    }
}

/// Splits the subsystems into (kept, traced) index tables.
///
/// Returns `(kept_dim, traced_dim, table)` where `table[k * traced_dim + t]` is
/// the flat index of the full space for kept multi-index `k` and traced
/// multi-index `t`.
fn subsystem_table(total: usize, dims: &[usize], keep: &[usize]) -> Result<(usize, usize, Vec<usize>)> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidArgument(format!("bad subsystem dimensions {dims:?}")));
    }
    let product: usize = dims.iter().product();
    check_dim(product, total)?;
    if keep.is_empty() {
        return Err(Error::InvalidArgument("keep set must be non-empty".into()));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() || *kept.last().unwrap() >= dims.len() {
        return Err(Error::InvalidArgument(format!(
            "keep set {keep:?} is not a set of subsystem indices below {}",
            dims.len()
        )));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !kept.contains(i)).collect();

    // stride of subsystem i in the flat index
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let offsets = |subs: &[usize]| -> Vec<usize> {
        let size: usize = subs.iter().map(|&s| dims[s]).product();
        (0..size)
            .map(|mut idx| {
                let mut flat = 0;
                for &s in subs.iter().rev() {
                    flat += (idx % dims[s]) * strides[s];
                    idx /= dims[s];
                }
                flat
            })
            .collect()
    };
    let kept_off = offsets(&kept);
    let traced_off = offsets(&traced);
    let mut table = Vec::with_capacity(kept_off.len() * traced_off.len());
    for &k in &kept_off {
        for &t in &traced_off {
            table.push(k + t);
        }
    }
    Ok((kept_off.len(), traced_off.len(), table))
}

/// Reduced density matrix over the subsystems listed in `keep`.
///
/// `dims` lists the subsystem dimensions in tensor order; their product must
/// equal `rho.dim()`. Kept subsystems appear in ascending index order in the
/// result.
///
/// ```
/// use qclone::hilbert::{partial_trace, StateVector, Tensor};
///
/// let plus = StateVector::renormalize(vec![1.0.into(), 1.0.into()]).unwrap();
/// let zero = StateVector::basis(2, 0);
/// let rho = plus.tensor(&zero).projector();
/// let reduced = partial_trace(&rho, &[2, 2], &[0]).unwrap();
/// assert!(reduced.max_abs_diff(&plus.projector()) < 1e-12);
/// ```
pub fn partial_trace(rho: &DensityMatrix, dims: &[usize], keep: &[usize]) -> Result<DensityMatrix> {
    let (k, t, table) = subsystem_table(rho.dim, dims, keep)?;
    let mut entries = vec![ZERO; k * k];
    for i in 0..k {
        for j in 0..k {
            entries[i * k + j] = (0..t)
                .map(|s| rho.get(table[i * t + s], table[j * t + s]))
                .sum();
        }
    }
    Ok(DensityMatrix { dim: k, entries })
}

/// Reduced density matrix of a pure state, without forming `|ψ⟩⟨ψ|`.
pub fn reduced_density(psi: &StateVector, dims: &[usize], keep: &[usize]) -> Result<DensityMatrix> {
    let (k, t, table) = subsystem_table(psi.dim(), dims, keep)?;
    let amps = &psi.amps;
    let mut entries = vec![ZERO; k * k];
    for i in 0..k {
        for j in 0..k {
            entries[i * k + j] = (0..t)
                .map(|s| amps[table[i * t + s]] * amps[table[j * t + s]].conj())
                .sum();
        }
    }
    Ok(DensityMatrix { dim: k, entries })
}

/// `⟨ψ|ρ|ψ⟩`, which must be real within [`TOL`].
pub fn fidelity(psi: &StateVector, rho: &DensityMatrix) -> Result<f64> {
    check_dim(rho.dim, psi.dim())?;
    let n = rho.dim;
    let mut acc = ZERO;
    for i in 0..n {
        let row: Complex64 = (0..n).map(|j| rho.get(i, j) * psi.amps[j]).sum();
        acc += psi.amps[i].conj() * row;
    }
    if acc.im.abs() > TOL {
        return Err(Error::NotReal(acc.im));
    }
    Ok(acc.re)
}

/// Shannon entropy in bits, with `0 log 0 = 0`.
///
/// Entries down to `-1e-12` are treated as rounding noise and clamped to zero;
/// the entries must sum to 1 within [`TOL`].
pub fn shannon_entropy(probs: &[f64]) -> Result<f64> {
    if let Some(&bad) = probs.iter().find(|&&p| p < -1e-12 || !p.is_finite()) {
        return Err(Error::InvalidArgument(format!("negative or non-finite probability {bad}")));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > TOL {
        return Err(Error::InvalidArgument(format!("probabilities sum to {total}, not 1")));
    }
    Ok(probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn plus2() -> StateVector {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        StateVector::new(vec![c(s, 0.0), c(s, 0.0)]).unwrap()
    }

    #[test]
    fn tensor_of_basis_states() {
        let v = StateVector::basis(2, 0).tensor(&StateVector::basis(2, 1));
        assert_eq!(v.amplitudes(), &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn tensor_of_identities() {
        let i4 = Operator::identity(2).tensor(&Operator::identity(2));
        assert_eq!(i4, Operator::identity(4));
    }

    #[test]
    fn tensor_uniform_product() {
        let v = plus2().tensor(&plus2());
        for a in v.amplitudes() {
            assert_abs_diff_eq!(a.re, 0.5, epsilon = 1e-15);
            assert_abs_diff_eq!(a.im, 0.0);
        }
    }

    #[test]
    fn state_construction_rejects_unnormalized() {
        assert!(matches!(
            StateVector::new(vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::NotNormalized(_))
        ));
        assert!(StateVector::renormalize(vec![c(0.0, 0.0)]).is_err());
        let v = StateVector::renormalize(vec![c(3.0, 0.0), c(0.0, 4.0)]).unwrap();
        assert_abs_diff_eq!(v.norm_sqr(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(plus2().projector().entries().to_vec()).is_ok());
        // trace 2
        let bad = vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        assert!(matches!(DensityMatrix::new(bad), Err(Error::InvalidTrace(_))));
        // not Hermitian
        let bad = vec![c(0.5, 0.0), c(0.3, 0.0), c(0.0, 0.0), c(0.5, 0.0)];
        assert!(matches!(DensityMatrix::new(bad), Err(Error::NotHermitian(_))));
        // eigenvalues 1.5 and -0.5
        let bad = vec![c(0.5, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.5, 0.0)];
        assert!(matches!(DensityMatrix::new(bad), Err(Error::NotPositive(_))));
        assert!(DensityMatrix::from_raw(vec![c(1.0, 0.0); 3]).is_err());
    }

    #[test]
    fn maximally_entangled_reduces_to_mixed() {
        let s = 1.0 / 3f64.sqrt();
        let mut amps = vec![c(0.0, 0.0); 9];
        for k in 0..3 {
            amps[k * 3 + k] = c(s, 0.0);
        }
        let bell = StateVector::new(amps).unwrap();
        let rho = partial_trace(&bell.projector(), &[3, 3], &[0]).unwrap();
        assert!(rho.max_abs_diff(&DensityMatrix::maximally_mixed(3)) < 1e-12);
    }

    #[test]
    fn partial_trace_of_product_returns_each_factor() {
        let a = plus2().projector();
        let b = DensityMatrix::maximally_mixed(3);
        let c3 = StateVector::basis(2, 1).projector();
        let full = a.tensor(&b).tensor(&c3);
        let dims = [2, 3, 2];
        assert!(partial_trace(&full, &dims, &[0]).unwrap().max_abs_diff(&a) < 1e-14);
        assert!(partial_trace(&full, &dims, &[1]).unwrap().max_abs_diff(&b) < 1e-14);
        assert!(partial_trace(&full, &dims, &[2]).unwrap().max_abs_diff(&c3) < 1e-14);
        let ac = partial_trace(&full, &dims, &[2, 0]).unwrap();
        assert!(ac.max_abs_diff(&a.tensor(&c3)) < 1e-14);
    }

    #[test]
    fn partial_trace_argument_errors() {
        let rho = DensityMatrix::maximally_mixed(4);
        assert!(matches!(
            partial_trace(&rho, &[2, 3], &[0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(partial_trace(&rho, &[2, 2], &[]).is_err());
        assert!(partial_trace(&rho, &[2, 2], &[2]).is_err());
        assert!(partial_trace(&rho, &[2, 2], &[0, 0]).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let psi = plus2();
        assert_abs_diff_eq!(fidelity(&psi, &psi.projector()).unwrap(), 1.0, epsilon = 1e-15);
        let f = fidelity(&StateVector::basis(3, 0), &DensityMatrix::maximally_mixed(3)).unwrap();
        assert_abs_diff_eq!(f, 1.0 / 3.0, epsilon = 1e-15);
        assert!(matches!(
            fidelity(&psi, &DensityMatrix::maximally_mixed(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn entropy_examples() {
        assert_abs_diff_eq!(shannon_entropy(&[1.0, 0.0, 0.0]).unwrap(), 0.0);
        assert_abs_diff_eq!(shannon_entropy(&[1.0 / 9.0; 9]).unwrap(), 9f64.log2(), epsilon = 1e-12);
        assert_abs_diff_eq!(9f64.log2(), 3.169925, epsilon = 1e-6);
        assert!(shannon_entropy(&[1.1, -0.1]).is_err());
        assert!(shannon_entropy(&[0.5, 0.4]).is_err());
        // rounding dust is tolerated
        assert!(shannon_entropy(&[1.0 + 1e-13, -1e-13]).is_ok());
    }
}
