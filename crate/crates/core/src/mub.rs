//! Maximally-conjugate (mutually unbiased) bases for qubits and qutrits, and
//! the generalized-equator states `|ψ₀⟩, |ψ₁⟩, |ψ₂⟩`.
//!
//! The basis vectors are written out literally rather than generated from a
//! formula, so the phase conventions match the published tables exactly. In
//! particular the qubit `y` basis uses `|1''⟩ = (i|0⟩ + |1⟩)/√2`.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{StateVector, TOL};
use crate::weyl_bell::root_of_unity;

/// Which basis of a [`MubSet`] a [`Basis`] is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisLabel {
    Computational,
    Second,
    Third,
    Fourth,
    Z,
    X,
    Y,
}

impl BasisLabel {
    /// 1-based position of the basis within its set.
    pub fn ordinal(self) -> usize {
        match self {
            BasisLabel::Computational | BasisLabel::Z => 1,
            BasisLabel::Second | BasisLabel::X => 2,
            BasisLabel::Third | BasisLabel::Y => 3,
            BasisLabel::Fourth => 4,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            BasisLabel::Z | BasisLabel::X | BasisLabel::Y => 2,
            _ => 3,
        }
    }

    /// Inverse of [`BasisLabel::ordinal`] for the given dimension.
    pub fn from_ordinal(dim: usize, ordinal: usize) -> Result<Self> {
        use BasisLabel::*;
        match (dim, ordinal) {
            (3, 1) => Ok(Computational),
            (3, 2) => Ok(Second),
            (3, 3) => Ok(Third),
            (3, 4) => Ok(Fourth),
            (2, 1) => Ok(Z),
            (2, 2) => Ok(X),
            (2, 3) => Ok(Y),
            _ => Err(Error::InvalidArgument(format!(
                "no basis number {ordinal} in dimension {dim}"
            ))),
        }
    }

    pub fn all(dim: usize) -> &'static [BasisLabel] {
        use BasisLabel::*;
        match dim {
            2 => &[Z, X, Y],
            3 => &[Computational, Second, Third, Fourth],
            _ => &[],
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BasisLabel::Computational => "computational",
            BasisLabel::Second => "second",
            BasisLabel::Third => "third",
            BasisLabel::Fourth => "fourth",
            BasisLabel::Z => "z",
            BasisLabel::X => "x",
            BasisLabel::Y => "y",
        };
        f.write_str(s)
    }
}

/// An orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    label: BasisLabel,
    vectors: Vec<StateVector>,
}

impl Basis {
    /// Fails unless the vectors are `dim` orthonormal states of dimension `dim`.
    pub fn new(label: BasisLabel, vectors: Vec<StateVector>) -> Result<Self> {
        let dim = vectors.len();
        for (i, u) in vectors.iter().enumerate() {
            if u.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: u.dim() });
            }
            for (j, v) in vectors.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                let z = u.inner(v)?;
                if (z - Complex64::new(expect, 0.0)).norm() > TOL {
                    return Err(Error::InvalidArgument(format!(
                        "{label} basis is not orthonormal at ({i}, {j}): {z}"
                    )));
                }
            }
        }
        Ok(Self { label, vectors })
    }

    pub fn label(&self) -> BasisLabel {
        self.label
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }

    pub fn vector(&self, k: usize) -> &StateVector {
        &self.vectors[k]
    }

    /// Reads off `(α, β)` with `|k⟩ ∝ |ψ₀(α, β)⟩` from the relative phases of
    /// the amplitudes. `None` unless the vector is a flat qutrit state.
    pub fn equator_params(&self, k: usize) -> Option<EquatorParams> {
        let amps = self.vectors.get(k)?.amplitudes();
        if amps.len() != 3 {
            return None;
        }
        let flat = 1.0 / 3f64.sqrt();
        if amps.iter().any(|a| (a.norm() - flat).abs() > TOL) {
            return None;
        }
        let phase = |z: Complex64| (z / amps[0]).arg().rem_euclid(TAU);
        Some(EquatorParams::new(phase(amps[1]), phase(amps[2])))
    }
}

/// An ordered set of pairwise mutually unbiased bases.
#[derive(Debug, Clone, PartialEq)]
pub struct MubSet {
    bases: Vec<Basis>,
}

impl MubSet {
    /// Fails unless every cross-basis overlap has squared modulus `1/dim`.
    pub fn new(bases: Vec<Basis>) -> Result<Self> {
        let set = Self { bases };
        let worst = set.unbiasedness_defect();
        if worst > TOL {
            return Err(Error::InvalidArgument(format!(
                "bases are not mutually unbiased (defect {worst:e})"
            )));
        }
        Ok(set)
    }

    pub fn bases(&self) -> &[Basis] {
        &self.bases
    }

    pub fn get(&self, label: BasisLabel) -> Option<&Basis> {
        self.bases.iter().find(|b| b.label == label)
    }

    /// Largest `| |⟨bᵢ|b'ⱼ⟩|² - 1/N |` over distinct bases.
    pub fn unbiasedness_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.bases.iter().enumerate() {
            for b in &self.bases[i + 1..] {
                let inv = 1.0 / a.dim() as f64;
                for u in &a.vectors {
                    for v in &b.vectors {
                        let overlap = u.inner(v).map(|z| z.norm_sqr()).unwrap_or(f64::INFINITY);
                        worst = worst.max((overlap - inv).abs());
                    }
                }
            }
        }
        worst
    }
}

fn flat_state(phases: [Complex64; 3]) -> StateVector {
    let s = 1.0 / 3f64.sqrt();
    StateVector::from_raw(phases.iter().map(|p| p * s).collect())
}

/// The four qutrit bases: computational, then `|k'⟩`, `|k''⟩`, `|k'''⟩`.
pub fn qutrit_mubs() -> MubSet {
    let one = Complex64::new(1.0, 0.0);
    let g = root_of_unity(1, 3);
    let g2 = root_of_unity(2, 3);
    let computational = (0..3).map(|k| StateVector::basis(3, k)).collect();
    let second = vec![
        flat_state([one, one, one]),
        flat_state([one, g, g2]),
        flat_state([one, g2, g]),
    ];
    let third = vec![
        flat_state([one, one, g]),
        flat_state([one, g, one]),
        flat_state([g, one, one]),
    ];
    let fourth = vec![
        flat_state([one, one, g2]),
        flat_state([one, g2, one]),
        flat_state([g2, one, one]),
    ];
    let bases = vec![
        Basis::new(BasisLabel::Computational, computational),
        Basis::new(BasisLabel::Second, second),
        Basis::new(BasisLabel::Third, third),
        Basis::new(BasisLabel::Fourth, fourth),
    ];
    MubSet::new(bases.into_iter().collect::<Result<_>>().expect("orthonormal"))
        .expect("mutually unbiased")
}

/// The three qubit bases in `z, x, y` order.
pub fn qubit_mubs() -> MubSet {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let r = |re: f64, im: f64| Complex64::new(re * s, im * s);
    let z = vec![StateVector::basis(2, 0), StateVector::basis(2, 1)];
    let x = vec![
        StateVector::from_raw(vec![r(1.0, 0.0), r(1.0, 0.0)]),
        StateVector::from_raw(vec![r(1.0, 0.0), r(-1.0, 0.0)]),
    ];
    let y = vec![
        StateVector::from_raw(vec![r(1.0, 0.0), r(0.0, 1.0)]),
        StateVector::from_raw(vec![r(0.0, 1.0), r(1.0, 0.0)]),
    ];
    let bases = vec![
        Basis::new(BasisLabel::Z, z),
        Basis::new(BasisLabel::X, x),
        Basis::new(BasisLabel::Y, y),
    ];
    MubSet::new(bases.into_iter().collect::<Result<_>>().expect("orthonormal"))
        .expect("mutually unbiased")
}

/// Phases `(α, β)` of `|ψ₀⟩ = (|0⟩ + e^{iα}|1⟩ + e^{iβ}|2⟩)/√3`, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquatorParams {
    pub alpha: f64,
    pub beta: f64,
}

impl EquatorParams {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }

    /// Both phases reduced into `[0, 2π)`.
    pub fn reduced(self) -> Self {
        Self {
            alpha: self.alpha.rem_euclid(TAU),
            beta: self.beta.rem_euclid(TAU),
        }
    }
}

/// One of the three orthonormal equator states for the given phases.
///
/// Branch 0 is `|ψ₀⟩`; branches 1 and 2 multiply the `|1⟩, |2⟩` amplitudes
/// by `(γ, γ²)` and `(γ², γ)` respectively, with `γ = e^{2πi/3}`.
///
/// ```
/// use qclone::mub::{equator_state, qutrit_mubs, BasisLabel, EquatorParams};
///
/// let zero_prime = equator_state(EquatorParams::new(0.0, 0.0), 0);
/// let second = qutrit_mubs();
/// let second = second.get(BasisLabel::Second).unwrap();
/// assert!(zero_prime.equal_up_to_phase(second.vector(0), 1e-10));
/// ```
pub fn equator_state(params: EquatorParams, branch: usize) -> StateVector {
    assert!(branch < 3, "equator branch must be 0, 1 or 2");
    let EquatorParams { alpha, beta } = params.reduced();
    let g1 = root_of_unity(branch as i64, 3);
    let g2 = root_of_unity(2 * branch as i64, 3);
    flat_state([
        Complex64::new(1.0, 0.0),
        g1 * Complex64::from_polar(1.0, alpha),
        g2 * Complex64::from_polar(1.0, beta),
    ])
}
