//! The cloning engine.
//!
//! A cloner in this class is fully described by an `N × N` amplitude matrix
//! `a_{m,n}` over the Weyl error operators. Clone A suffers error `U_{m,n}`
//! with probability `p_{m,n} = |a_{m,n}|²`; clone B with `q_{m,n} = |b_{m,n}|²`
//! where `b` is the two-dimensional Fourier dual of `a`.
//!
//! Clone outputs can be computed two ways that must agree: directly as Weyl
//! mixtures ([`clone_outputs_mixture`]), or by building the purified
//! reference/clone/clone/machine state and projecting the reference
//! ([`clone_by_projection`]).

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{self, partial_trace, DensityMatrix, StateVector, TOL};
use crate::mub::{BasisLabel, EquatorParams};
use crate::weyl_bell::{bell_state, root_of_unity, weyl_operator, WeylIndex};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Normalized `N × N` complex amplitudes; row index `m` is the shift, column
/// index `n` the phase.
///
/// Serializes as `{"dim": N, "a": [[[re, im], ...], ...]}`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AmplitudeJson", into = "AmplitudeJson")]
pub struct AmplitudeMatrix {
    dim: usize,
    a: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct AmplitudeJson {
    dim: usize,
    a: Vec<Vec<[f64; 2]>>,
}

impl TryFrom<AmplitudeJson> for AmplitudeMatrix {
    type Error = Error;

    fn try_from(raw: AmplitudeJson) -> Result<Self> {
        if raw.a.len() != raw.dim {
            return Err(Error::DimensionMismatch { expected: raw.dim, found: raw.a.len() });
        }
        let mut entries = Vec::with_capacity(raw.dim * raw.dim);
        for row in &raw.a {
            if row.len() != raw.dim {
                return Err(Error::DimensionMismatch { expected: raw.dim, found: row.len() });
            }
            entries.extend(row.iter().map(|&[re, im]| Complex64::new(re, im)));
        }
        AmplitudeMatrix::new(raw.dim, entries)
    }
}

impl From<AmplitudeMatrix> for AmplitudeJson {
    fn from(m: AmplitudeMatrix) -> Self {
        AmplitudeJson {
            dim: m.dim,
            a: m.a
                .chunks(m.dim)
                .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}

impl AmplitudeMatrix {
    /// Row-major entries; `Σ|a|²` must be 1 within [`TOL`].
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        let norm: f64 = entries.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { dim, a: entries })
    }

    /// Real row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::new(dim, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// `a_{m,n} = δ_{m,0} δ_{n,0}`: clone A is perfect.
    pub fn identity(dim: usize) -> Self {
        let mut a = vec![ZERO; dim * dim];
        a[0] = Complex64::new(1.0, 0.0);
        Self { dim, a }
    }

    /// Syntax errors carry their position; well-formed JSON that is not a
    /// valid cloner gives the validation error itself.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: AmplitudeJson = serde_json::from_str(text)?;
        raw.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("amplitude matrix serializes")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        self.a[m * self.dim + n]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.a
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        Self {
            dim: n,
            a: (0..n * n).map(|i| self.a[(i % n) * n + i / n]).collect(),
        }
    }

    /// `p_{m,n} = |a_{m,n}|²`.
    pub fn probabilities(&self) -> ProbabilityMatrix {
        ProbabilityMatrix {
            dim: self.dim,
            p: self.a.iter().map(|z| clamp_dust(z.norm_sqr())).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &AmplitudeMatrix) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.a
            .iter()
            .zip(&other.a)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut a = Vec::with_capacity(dim * dim);
        for m in 0..dim {
            for n in 0..dim {
                a.push(f(m, n));
            }
        }
        Self { dim, a }
    }
}

fn clamp_dust(x: f64) -> f64 {
    if x < 0.0 && x > -1e-14 {
        0.0
    } else {
        x
    }
}

/// Error probabilities `p_{m,n}` of one clone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityMatrix {
    dim: usize,
    p: Vec<f64>,
}

impl ProbabilityMatrix {
    /// Row-major entries; nonnegative (dust above `-1e-14` is clamped) and summing to 1.
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != dim * dim || dim == 0 {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        let p: Vec<f64> = entries.into_iter().map(clamp_dust).collect();
        if let Some(bad) = p.iter().find(|&&x| x < 0.0 || !x.is_finite()) {
            return Err(Error::InvalidArgument(format!("negative probability {bad}")));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > TOL {
            return Err(Error::NotNormalized(total));
        }
        Ok(Self { dim, p })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, m: usize, n: usize) -> f64 {
        self.p[m * self.dim + n]
    }

    pub fn entries(&self) -> &[f64] {
        &self.p
    }

    /// Shannon entropy in bits.
    pub fn entropy(&self) -> f64 {
        hilbert::shannon_entropy(&self.p).expect("validated distribution")
    }
}

/// The two clone states together with their error distributions.
#[derive(Debug, Clone, PartialEq)]
pub struct CloneOutputs {
    pub rho_a: DensityMatrix,
    pub rho_b: DensityMatrix,
    pub p: ProbabilityMatrix,
    pub q: ProbabilityMatrix,
}

impl CloneOutputs {
    /// `(F_A, F_B)` for the input state.
    pub fn fidelities(&self, psi: &StateVector) -> Result<(f64, f64)> {
        Ok((hilbert::fidelity(psi, &self.rho_a)?, hilbert::fidelity(psi, &self.rho_b)?))
    }

    pub fn max_abs_diff(&self, other: &CloneOutputs) -> f64 {
        self.rho_a
            .max_abs_diff(&other.rho_a)
            .max(self.rho_b.max_abs_diff(&other.rho_b))
    }
}

/// Unit-norm state on `R ⊗ A ⊗ B ⊗ C`, each factor of dimension `N`, in that order.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    dim: usize,
    psi: StateVector,
}

impl JointState {
    /// Per-party dimension `N`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn state(&self) -> &StateVector {
        &self.psi
    }

    pub fn max_abs_diff(&self, other: &JointState) -> f64 {
        self.psi
            .amplitudes()
            .iter()
            .zip(other.psi.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

/// `b_{m,n} = (1/N) Σ_{x,y} e^{2πi(nx - my)/N} a_{x,y}`.
///
/// The map is unitary, and applying it twice gives back `a`.
///
/// ```
/// use qclone::cloner::{fourier_dual, AmplitudeMatrix};
///
/// let b = fourier_dual(&AmplitudeMatrix::identity(3));
/// for z in b.entries() {
///     assert!((z.re - 1.0 / 3.0).abs() < 1e-12 && z.im.abs() < 1e-12);
/// }
/// ```
pub fn fourier_dual(a: &AmplitudeMatrix) -> AmplitudeMatrix {
    let dim = a.dim;
    let scale = 1.0 / dim as f64;
    AmplitudeMatrix::from_fn(dim, |m, n| {
        let mut acc = ZERO;
        for x in 0..dim {
            for y in 0..dim {
                acc += root_of_unity((n * x) as i64 - (m * y) as i64, dim) * a.get(x, y);
            }
        }
        acc * scale
    })
}

/// Inverse of [`fourier_dual`], written with conjugated phases.
pub fn fourier_dual_inverse(b: &AmplitudeMatrix) -> AmplitudeMatrix {
    let dim = b.dim;
    let scale = 1.0 / dim as f64;
    AmplitudeMatrix::from_fn(dim, |x, y| {
        let mut acc = ZERO;
        for m in 0..dim {
            for n in 0..dim {
                acc += root_of_unity((m * y) as i64 - (n * x) as i64, dim) * b.get(m, n);
            }
        }
        acc * scale
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourierDirection {
    Forward,
    Inverse,
}

/// Unitary DFT along each row, over the phase index `n`.
///
/// Forward: `c^F_{m,n} = N^{-1/2} Σ_{n'} e^{-2πi nn'/N} c_{m,n'}`; inverse flips the sign.
/// The transformed matrices of `a` and its dual are transposes of each other.
pub fn row_fourier(c: &AmplitudeMatrix, direction: FourierDirection) -> AmplitudeMatrix {
    let dim = c.dim;
    let sign: i64 = match direction {
        FourierDirection::Forward => -1,
        FourierDirection::Inverse => 1,
    };
    let scale = 1.0 / (dim as f64).sqrt();
    AmplitudeMatrix::from_fn(dim, |m, n| {
        (0..dim)
            .map(|k| root_of_unity(sign * (n * k) as i64, dim) * c.get(m, k))
            .sum::<Complex64>()
            * scale
    })
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        Err(Error::DimensionMismatch { expected, found })
    } else {
        Ok(())
    }
}

fn weyl_mixture(probs: &ProbabilityMatrix, psi: &StateVector) -> Result<DensityMatrix> {
    let dim = probs.dim;
    let images = WeylIndex::all(dim)
        .map(|idx| Ok((probs.get(idx.m(), idx.n()), weyl_operator(idx).apply(psi)?.projector())))
        .collect::<Result<Vec<_>>>()?;
    DensityMatrix::mixture(images.iter().map(|(w, rho)| (*w, rho)))
}

/// Clone states as Weyl mixtures: `ρ_A = Σ p_{m,n} U_{m,n}|ψ⟩⟨ψ|U_{m,n}†`,
/// and likewise `ρ_B` with `q` from the dual amplitudes.
pub fn clone_outputs_mixture(a: &AmplitudeMatrix, psi: &StateVector) -> Result<CloneOutputs> {
    check_dim(a.dim, psi.dim())?;
    let p = a.probabilities();
    let q = fourier_dual(a).probabilities();
    Ok(CloneOutputs {
        rho_a: weyl_mixture(&p, psi)?,
        rho_b: weyl_mixture(&q, psi)?,
        p,
        q,
    })
}

/// Adds `weight · |s1⟩_{P} |s2⟩_{Q}` into a 4-party vector, where `P` and `Q`
/// are disjoint position pairs in `R, A, B, C` (0..4).
fn add_pair_product(
    out: &mut [Complex64],
    dim: usize,
    weight: Complex64,
    first: (&StateVector, [usize; 2]),
    second: (&StateVector, [usize; 2]),
) {
    let (s1, p1) = first;
    let (s2, p2) = second;
    for (i, &x) in s1.amplitudes().iter().enumerate() {
        if x == ZERO {
            continue;
        }
        for (j, &y) in s2.amplitudes().iter().enumerate() {
            if y == ZERO {
                continue;
            }
            let mut digits = [0usize; 4];
            digits[p1[0]] = i / dim;
            digits[p1[1]] = i % dim;
            digits[p2[0]] = j / dim;
            digits[p2[1]] = j % dim;
            let flat = ((digits[0] * dim + digits[1]) * dim + digits[2]) * dim + digits[3];
            out[flat] += weight * x * y;
        }
    }
}

fn pair_expansion(coeffs: &AmplitudeMatrix, first: [usize; 2], second: [usize; 2]) -> JointState {
    let dim = coeffs.dim;
    let mut amps = vec![ZERO; dim.pow(4)];
    for idx in WeylIndex::all(dim) {
        let (m, n) = (idx.m() as i64, idx.n() as i64);
        let w = coeffs.get(idx.m(), idx.n());
        if w == ZERO {
            continue;
        }
        let b1 = bell_state(idx);
        let b2 = bell_state(WeylIndex::new(m, -n, dim));
        add_pair_product(&mut amps, dim, w, (&b1, first), (&b2, second));
    }
    JointState {
        dim,
        psi: StateVector::from_raw(amps),
    }
}

/// `|Ψ⟩_{RABC} = Σ a_{m,n} |B_{m,n}⟩_{RA} |B_{m,-n}⟩_{BC}`.
pub fn joint_state(a: &AmplitudeMatrix) -> JointState {
    pair_expansion(a, [0, 1], [2, 3])
}

/// `Σ b_{m,n} |B_{m,n}⟩_{RB} |B_{m,-n}⟩_{AC}`. Equal to [`joint_state`] of
/// `a` when `b` is its Fourier dual.
pub fn joint_state_from_dual(b: &AmplitudeMatrix) -> JointState {
    pair_expansion(b, [0, 2], [1, 3])
}

/// Clone states obtained by projecting the reference of [`joint_state`] onto
/// `|ψ*⟩` and tracing out the other parties.
pub fn clone_by_projection(a: &AmplitudeMatrix, psi: &StateVector) -> Result<CloneOutputs> {
    let dim = a.dim;
    check_dim(dim, psi.dim())?;
    let joint = joint_state(a);
    let amps = joint.psi.amplitudes();
    let block = dim.pow(3);
    // ⟨ψ*|_R contracts the reference index with ψ itself; ⟨ψ*|B_{0,0}⟩ has norm 1/√N.
    let scale = (dim as f64).sqrt();
    let mut abc = vec![ZERO; block];
    for (r, &w) in psi.amplitudes().iter().enumerate() {
        for (slot, &z) in abc.iter_mut().zip(&amps[r * block..(r + 1) * block]) {
            *slot += w * z * scale;
        }
    }
    let projected = StateVector::from_raw(abc);
    let norm = projected.norm_sqr();
    assert!(norm > 0.5, "projected clone state has squared norm {norm}");
    let rho_abc = projected.projector();
    let dims = [dim, dim, dim];
    Ok(CloneOutputs {
        rho_a: partial_trace(&rho_abc, &dims, &[0])?,
        rho_b: partial_trace(&rho_abc, &dims, &[1])?,
        p: a.probabilities(),
        q: fourier_dual(a).probabilities(),
    })
}

/// Fidelity and the two disturbances for one basis (or equator) state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisFidelity {
    pub fidelity: f64,
    pub d1: f64,
    /// Always zero for qubits, which have a single error state.
    pub d2: f64,
}

impl BasisFidelity {
    pub fn total(&self) -> f64 {
        self.fidelity + self.d1 + self.d2
    }
}

/// Fidelity and disturbances when cloning any state of the given basis.
///
/// `d1` is the weight on the state one elementary error away from the input
/// and `d2` two errors away. The elementary error is `U_{1,0}` for the
/// computational basis and `U_{0,1}` for the flat bases, so in the fourth
/// basis `d1` lands on `|k+2'''⟩` of the printed labelling.
///
/// For qutrits each is a sum of three `p_{m,n}`; e.g. the third basis gives
/// `F'' = p_{0,0} + p_{1,1} + p_{2,2}`. For qubits (`z, x, y`) the sums are
/// `p_{0,0} + p_{0,1}`, `p_{0,0} + p_{1,0}` and `p_{0,0} + p_{1,1}`.
pub fn fidelity_in_basis(p: &ProbabilityMatrix, basis: BasisLabel) -> Result<BasisFidelity> {
    check_dim(basis.dim(), p.dim)?;
    let g = |m, n| p.get(m, n);
    let (f, d1, d2) = match basis {
        BasisLabel::Computational => (
            g(0, 0) + g(0, 1) + g(0, 2),
            g(1, 0) + g(1, 1) + g(1, 2),
            g(2, 0) + g(2, 1) + g(2, 2),
        ),
        BasisLabel::Second => (
            g(0, 0) + g(1, 0) + g(2, 0),
            g(0, 1) + g(1, 1) + g(2, 1),
            g(0, 2) + g(1, 2) + g(2, 2),
        ),
        BasisLabel::Third => (
            g(0, 0) + g(1, 1) + g(2, 2),
            g(0, 1) + g(1, 2) + g(2, 0),
            g(0, 2) + g(1, 0) + g(2, 1),
        ),
        BasisLabel::Fourth => (
            g(0, 0) + g(1, 2) + g(2, 1),
            g(0, 1) + g(1, 0) + g(2, 2),
            g(0, 2) + g(1, 1) + g(2, 0),
        ),
        BasisLabel::Z => (g(0, 0) + g(0, 1), g(1, 0) + g(1, 1), 0.0),
        BasisLabel::X => (g(0, 0) + g(1, 0), g(0, 1) + g(1, 1), 0.0),
        BasisLabel::Y => (g(0, 0) + g(1, 1), g(0, 1) + g(1, 0), 0.0),
    };
    Ok(BasisFidelity { fidelity: f, d1, d2 })
}

/// Closed-form `(F, D₁, D₂)` for the qutrit equator state `|ψ₀(α, β)⟩`.
pub fn fidelity_equator(p: &ProbabilityMatrix, params: EquatorParams) -> Result<BasisFidelity> {
    check_dim(3, p.dim)?;
    let EquatorParams { alpha: a, beta: b } = params;
    let cos_sum = |shift: f64| (a + b + shift).cos() + (a - 2.0 * b + shift).cos() + (b - 2.0 * a + shift).cos();
    let c0 = cos_sum(0.0);
    let cp = cos_sum(TAU / 3.0);
    let cm = cos_sum(-TAU / 3.0);
    let g = |m, n| p.get(m, n);

    let f = g(0, 0)
        + (g(1, 0) + g(2, 0) + g(1, 2) + g(2, 1) + g(1, 1) + g(2, 2)) / 3.0
        + 2.0 / 9.0 * ((g(1, 0) + g(2, 0)) * c0 + (g(1, 2) + g(2, 1)) * cp + (g(1, 1) + g(2, 2)) * cm);
    let d1 = g(0, 1)
        + (g(1, 1) + g(2, 1) + g(1, 0) + g(2, 2) + g(1, 2) + g(2, 0)) / 3.0
        + 2.0 / 9.0 * ((g(1, 1) + g(2, 1)) * c0 + (g(1, 0) + g(2, 2)) * cp + (g(1, 2) + g(2, 0)) * cm);
    let d2 = g(0, 2)
        + (g(1, 2) + g(2, 2) + g(1, 1) + g(2, 0) + g(1, 0) + g(2, 1)) / 3.0
        + 2.0 / 9.0 * ((g(1, 2) + g(2, 2)) * c0 + (g(1, 1) + g(2, 0)) * cp + (g(1, 0) + g(2, 1)) * cm);
    Ok(BasisFidelity { fidelity: f, d1, d2 })
}

/// Both sides of `H[p] + H[q] ≥ log₂(N²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropicCheck {
    pub entropy_p: f64,
    pub entropy_q: f64,
    pub total: f64,
    pub bound: f64,
    pub satisfied: bool,
}

pub fn entropic_check(p: &ProbabilityMatrix, q: &ProbabilityMatrix) -> Result<EntropicCheck> {
    check_dim(p.dim, q.dim)?;
    let entropy_p = p.entropy();
    let entropy_q = q.entropy();
    let total = entropy_p + entropy_q;
    let bound = ((p.dim * p.dim) as f64).log2();
    Ok(EntropicCheck {
        entropy_p,
        entropy_q,
        total,
        bound,
        satisfied: total >= bound - 1e-9,
    })
}
