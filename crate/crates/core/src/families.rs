//! Parametric cloner families and the probability-matrix constraints that
//! define each class.
//!
//! | family              | dim | amplitude matrix                              | normalization          |
//! |---------------------|-----|-----------------------------------------------|------------------------|
//! | `two_basis`         | 3   | `(v y y / y x x / y x x)`                     | `v² + 4x² + 4y² = 1`   |
//! | `three_basis_sym`   | 3   | `(x+y+z, x+γy+γ²z, x+γ²y+γz / y y y / z z z)` | `3x² + 6y² + 6z² = 1`  |
//! | `three_basis_asym`  | 3   | `(v y y / x x x / x x x)`                     | `v² + 6x² + 2y² = 1`   |
//! | `universal`         | N   | `α δ_{m,0}δ_{n,0} + β/N`                      | `α² + (2/N)αβ + β² = 1`|
//! | `qubit_phase_cov`   | 2   | `(v x / x y)`                                 | `v² + 2x² + y² = 1`    |
//!
//! All parameters are real. Each family is closed under the Fourier dual,
//! which maps a matrix to another member of the same family
//! ([`FamilyParams::dual`]).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cloner::{AmplitudeMatrix, ProbabilityMatrix};
use crate::error::{Error, Result};
use crate::hilbert::TOL;
use crate::weyl_bell::root_of_unity;

fn check_norm(norm: f64) -> Result<()> {
    if (norm - 1.0).abs() > TOL || !norm.is_finite() {
        Err(Error::NotNormalized(norm))
    } else {
        Ok(())
    }
}

/// Clones the third and fourth qutrit bases equally well.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoBasisParams {
    pub v: f64,
    pub x: f64,
    pub y: f64,
}

impl TwoBasisParams {
    pub fn new(v: f64, x: f64, y: f64) -> Result<Self> {
        let p = Self { v, x, y };
        p.validate()?;
        Ok(p)
    }

    pub fn norm(&self) -> f64 {
        self.v * self.v + 4.0 * self.x * self.x + 4.0 * self.y * self.y
    }

    pub fn validate(&self) -> Result<()> {
        check_norm(self.norm())
    }

    /// Parameters of the dual amplitude matrix `b`.
    pub fn dual(&self) -> Self {
        let Self { v, x, y } = *self;
        Self {
            v: (v + 4.0 * x + 4.0 * y) / 3.0,
            x: (v + x - 2.0 * y) / 3.0,
            y: (v - 2.0 * x + y) / 3.0,
        }
    }
}

/// Self-dual cloner of the last three qutrit bases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeBasisSymParams {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ThreeBasisSymParams {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let p = Self { x, y, z };
        p.validate()?;
        Ok(p)
    }

    pub fn norm(&self) -> f64 {
        3.0 * self.x * self.x + 6.0 * self.y * self.y + 6.0 * self.z * self.z
    }

    pub fn validate(&self) -> Result<()> {
        check_norm(self.norm())
    }
}

/// Asymmetric cloner of the last three qutrit bases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeBasisAsymParams {
    pub v: f64,
    pub x: f64,
    pub y: f64,
}

impl ThreeBasisAsymParams {
    pub fn new(v: f64, x: f64, y: f64) -> Result<Self> {
        let p = Self { v, x, y };
        p.validate()?;
        Ok(p)
    }

    pub fn norm(&self) -> f64 {
        self.v * self.v + 6.0 * self.x * self.x + 2.0 * self.y * self.y
    }

    pub fn validate(&self) -> Result<()> {
        check_norm(self.norm())
    }

    pub fn dual(&self) -> Self {
        let Self { v, x, y } = *self;
        Self {
            v: (v + 6.0 * x + 2.0 * y) / 3.0,
            x: (v - y) / 3.0,
            y: (v - 3.0 * x + 2.0 * y) / 3.0,
        }
    }

    /// The symmetric cloner with `y = z` written in this family's shape.
    pub fn from_symmetric(sym: &ThreeBasisSymParams) -> Result<Self> {
        if (sym.y - sym.z).abs() > TOL {
            return Err(Error::InvalidArgument(
                "only the y = z symmetric cloners lie in the asymmetric family".into(),
            ));
        }
        Self::new(sym.x + 2.0 * sym.y, sym.y, sym.x - sym.y)
    }
}

/// State-independent cloner in any dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniversalParams {
    pub alpha: f64,
    pub beta: f64,
    pub dim: usize,
}

impl UniversalParams {
    pub fn new(alpha: f64, beta: f64, dim: usize) -> Result<Self> {
        let p = Self { alpha, beta, dim };
        p.validate()?;
        Ok(p)
    }

    /// The symmetric point `α = β = √(N / (2(N+1)))`.
    pub fn symmetric(dim: usize) -> Self {
        let n = dim as f64;
        let a = (n / (2.0 * (n + 1.0))).sqrt();
        Self { alpha: a, beta: a, dim }
    }

    pub fn norm(&self) -> f64 {
        let n = self.dim as f64;
        self.alpha * self.alpha + 2.0 / n * self.alpha * self.beta + self.beta * self.beta
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::InvalidArgument("universal cloner needs dim >= 2".into()));
        }
        check_norm(self.norm())
    }

    pub fn dual(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
            dim: self.dim,
        }
    }
}

/// Qubit cloner of the `z` and `x` bases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitPhaseCovParams {
    pub v: f64,
    pub x: f64,
    pub y: f64,
}

impl QubitPhaseCovParams {
    pub fn new(v: f64, x: f64, y: f64) -> Result<Self> {
        let p = Self { v, x, y };
        p.validate()?;
        Ok(p)
    }

    pub fn norm(&self) -> f64 {
        self.v * self.v + 2.0 * self.x * self.x + self.y * self.y
    }

    pub fn validate(&self) -> Result<()> {
        check_norm(self.norm())
    }

    pub fn dual(&self) -> Self {
        let Self { v, x, y } = *self;
        Self {
            v: (v + 2.0 * x + y) / 2.0,
            x: (v - y) / 2.0,
            y: (v - 2.0 * x + y) / 2.0,
        }
    }
}

/// Family name, used on the command line and in JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    TwoBasis,
    ThreeBasisSym,
    ThreeBasisAsym,
    Universal,
    QubitPhaseCov,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        FamilyKind::TwoBasis,
        FamilyKind::ThreeBasisSym,
        FamilyKind::ThreeBasisAsym,
        FamilyKind::Universal,
        FamilyKind::QubitPhaseCov,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::TwoBasis => "two_basis",
            FamilyKind::ThreeBasisSym => "three_basis_sym",
            FamilyKind::ThreeBasisAsym => "three_basis_asym",
            FamilyKind::Universal => "universal",
            FamilyKind::QubitPhaseCov => "qubit_phase_cov",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family {s:?}")))
    }
}

/// Any family's parameters. JSON form: `{"family": "two_basis", "params": {...}}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum FamilyParams {
    TwoBasis(TwoBasisParams),
    ThreeBasisSym(ThreeBasisSymParams),
    ThreeBasisAsym(ThreeBasisAsymParams),
    Universal(UniversalParams),
    QubitPhaseCov(QubitPhaseCovParams),
}

impl FamilyParams {
    /// Parses and validates the JSON form.
    pub fn from_json(text: &str) -> Result<Self> {
        let params: FamilyParams = serde_json::from_str(text)?;
        params.validate()?;
        Ok(params)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family params serialize")
    }

    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilyParams::TwoBasis(_) => FamilyKind::TwoBasis,
            FamilyParams::ThreeBasisSym(_) => FamilyKind::ThreeBasisSym,
            FamilyParams::ThreeBasisAsym(_) => FamilyKind::ThreeBasisAsym,
            FamilyParams::Universal(_) => FamilyKind::Universal,
            FamilyParams::QubitPhaseCov(_) => FamilyKind::QubitPhaseCov,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            FamilyParams::Universal(p) => p.dim,
            FamilyParams::QubitPhaseCov(_) => 2,
            _ => 3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FamilyParams::TwoBasis(p) => p.validate(),
            FamilyParams::ThreeBasisSym(p) => p.validate(),
            FamilyParams::ThreeBasisAsym(p) => p.validate(),
            FamilyParams::Universal(p) => p.validate(),
            FamilyParams::QubitPhaseCov(p) => p.validate(),
        }
    }

    /// Parameters of the Fourier-dual amplitude matrix, i.e. of clone B.
    pub fn dual(&self) -> FamilyParams {
        match self {
            FamilyParams::TwoBasis(p) => FamilyParams::TwoBasis(p.dual()),
            FamilyParams::ThreeBasisSym(p) => FamilyParams::ThreeBasisSym(*p),
            FamilyParams::ThreeBasisAsym(p) => FamilyParams::ThreeBasisAsym(p.dual()),
            FamilyParams::Universal(p) => FamilyParams::Universal(p.dual()),
            FamilyParams::QubitPhaseCov(p) => FamilyParams::QubitPhaseCov(p.dual()),
        }
    }

    /// The family's amplitude matrix.
    ///
    /// ```
    /// use qclone::families::{FamilyParams, UniversalParams};
    ///
    /// let identity = FamilyParams::Universal(UniversalParams::new(1.0, 0.0, 3).unwrap());
    /// assert_eq!(identity.build().unwrap(), qclone::cloner::AmplitudeMatrix::identity(3));
    /// ```
    pub fn build(&self) -> Result<AmplitudeMatrix> {
        self.validate()?;
        match *self {
            FamilyParams::TwoBasis(TwoBasisParams { v, x, y }) => {
                AmplitudeMatrix::from_real(3, &[v, y, y, y, x, x, y, x, x])
            }
            FamilyParams::ThreeBasisSym(ThreeBasisSymParams { x, y, z }) => {
                let g = root_of_unity(1, 3);
                let g2 = root_of_unity(2, 3);
                let r = |v: f64| Complex64::new(v, 0.0);
                AmplitudeMatrix::new(
                    3,
                    vec![
                        r(x + y + z),
                        r(x) + g * y + g2 * z,
                        r(x) + g2 * y + g * z,
                        r(y),
                        r(y),
                        r(y),
                        r(z),
                        r(z),
                        r(z),
                    ],
                )
            }
            FamilyParams::ThreeBasisAsym(ThreeBasisAsymParams { v, x, y }) => {
                AmplitudeMatrix::from_real(3, &[v, y, y, x, x, x, x, x, x])
            }
            FamilyParams::Universal(UniversalParams { alpha, beta, dim }) => {
                let flat = beta / dim as f64;
                let mut entries = vec![flat; dim * dim];
                entries[0] += alpha;
                AmplitudeMatrix::from_real(dim, &entries)
            }
            FamilyParams::QubitPhaseCov(QubitPhaseCovParams { v, x, y }) => {
                AmplitudeMatrix::from_real(2, &[v, x, x, y])
            }
        }
    }

    /// Recovers this family's parameters from an amplitude matrix, or `None`
    /// if the matrix does not have the family's shape within [`TOL`].
    pub fn recognize(kind: FamilyKind, a: &AmplitudeMatrix) -> Option<FamilyParams> {
        let dim = a.dim();
        if a.entries().iter().any(|z| z.im.abs() > TOL) && kind != FamilyKind::ThreeBasisSym {
            return None;
        }
        let re = |m, n| a.get(m, n).re;
        let candidate = match kind {
            FamilyKind::TwoBasis if dim == 3 => FamilyParams::TwoBasis(TwoBasisParams {
                v: re(0, 0),
                x: re(1, 1),
                y: re(0, 1),
            }),
            FamilyKind::ThreeBasisAsym if dim == 3 => FamilyParams::ThreeBasisAsym(ThreeBasisAsymParams {
                v: re(0, 0),
                x: re(1, 0),
                y: re(0, 1),
            }),
            FamilyKind::ThreeBasisSym if dim == 3 => {
                let (y, z) = (re(1, 0), re(2, 0));
                FamilyParams::ThreeBasisSym(ThreeBasisSymParams { x: re(0, 0) - y - z, y, z })
            }
            FamilyKind::Universal if dim >= 2 => {
                let beta = re(0, 1) * dim as f64;
                FamilyParams::Universal(UniversalParams { alpha: re(0, 0) - re(0, 1), beta, dim })
            }
            FamilyKind::QubitPhaseCov if dim == 2 => FamilyParams::QubitPhaseCov(QubitPhaseCovParams {
                v: re(0, 0),
                x: re(0, 1),
                y: re(1, 1),
            }),
            _ => return None,
        };
        let rebuilt = candidate.build().ok()?;
        (rebuilt.max_abs_diff(a) < TOL).then_some(candidate)
    }

    /// Closed-form fidelities for this family.
    pub fn fidelities(&self) -> FamilyFidelities {
        family_fidelities(self)
    }
}

/// Fidelity and per-error disturbance of each clone, on the states the
/// family is built to copy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyFidelities {
    pub fidelity_a: f64,
    pub disturbance_a: f64,
    pub fidelity_b: f64,
    pub disturbance_b: f64,
    /// Clone-A fidelity on the bases the family does not target, if any.
    pub other_bases_a: Option<f64>,
}

/// Closed-form fidelities.
///
/// Targets: bases 3 and 4 for `two_basis`, bases 2 to 4 (and the whole
/// generalized equator) for the three-basis families, every state for
/// `universal`, and the `z`, `x` bases for `qubit_phase_cov`. Off-target
/// fidelities are for bases 1 and 2, basis 1, basis 1 and `y` respectively.
pub fn family_fidelities(params: &FamilyParams) -> FamilyFidelities {
    match *params {
        FamilyParams::TwoBasis(TwoBasisParams { v, x, y }) => FamilyFidelities {
            fidelity_a: v * v + 2.0 * x * x,
            disturbance_a: x * x + 2.0 * y * y,
            fidelity_b: (v * v + 6.0 * x * x + 8.0 * y * y + 4.0 * v * x + 8.0 * x * y) / 3.0,
            disturbance_b: (v * v + 3.0 * x * x + 2.0 * y * y - 2.0 * v * x - 4.0 * x * y) / 3.0,
            other_bases_a: Some(v * v + 2.0 * y * y),
        },
        FamilyParams::ThreeBasisSym(ThreeBasisSymParams { x, y, z }) => {
            let sq = x * x + 2.0 * y * y + 2.0 * z * z;
            let cross = x * y + y * z + x * z;
            let f = sq + 2.0 * cross;
            let d = sq - cross;
            FamilyFidelities {
                fidelity_a: f,
                disturbance_a: d,
                fidelity_b: f,
                disturbance_b: d,
                other_bases_a: Some(3.0 * (x * x + y * y + z * z)),
            }
        }
        FamilyParams::ThreeBasisAsym(ThreeBasisAsymParams { v, x, y }) => FamilyFidelities {
            fidelity_a: v * v + 2.0 * x * x,
            disturbance_a: 2.0 * x * x + y * y,
            fidelity_b: (v * v + 12.0 * x * x + 2.0 * y * y + 4.0 * v * x + 8.0 * x * y) / 3.0,
            disturbance_b: (v * v + 3.0 * x * x + 2.0 * y * y - 2.0 * v * x - 4.0 * x * y) / 3.0,
            other_bases_a: Some(v * v + 2.0 * y * y),
        },
        FamilyParams::Universal(UniversalParams { alpha, beta, dim }) => {
            let n = dim as f64;
            FamilyFidelities {
                fidelity_a: (alpha + beta / n).powi(2) + (n - 1.0) * (beta / n).powi(2),
                disturbance_a: beta * beta / n,
                fidelity_b: (beta + alpha / n).powi(2) + (n - 1.0) * (alpha / n).powi(2),
                disturbance_b: alpha * alpha / n,
                other_bases_a: None,
            }
        }
        FamilyParams::QubitPhaseCov(QubitPhaseCovParams { v, x, y }) => FamilyFidelities {
            fidelity_a: v * v + x * x,
            disturbance_a: x * x + y * y,
            fidelity_b: 0.5 + v * x + x * y,
            disturbance_b: 0.5 - v * x - x * y,
            other_bases_a: Some(v * v + y * y),
        },
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL
}

/// Equal cloning of the third and fourth qutrit bases.
pub fn check_two_basis_constraints(p: &ProbabilityMatrix) -> bool {
    if p.dim() != 3 {
        return false;
    }
    let g = |m, n| p.get(m, n);
    close(g(1, 1) + g(2, 2), g(1, 2) + g(2, 1))
        && close(g(1, 2) + g(2, 0), g(1, 0) + g(2, 2))
        && close(g(1, 0) + g(2, 1), g(1, 1) + g(2, 0))
}

/// Equal cloning of the last three qutrit bases with `D₁ = D₂`.
pub fn check_three_basis_constraints(p: &ProbabilityMatrix) -> bool {
    if p.dim() != 3 {
        return false;
    }
    let g = |m, n| p.get(m, n);
    let chain = |a: f64, b: f64, c: f64| close(a, b) && close(b, c);
    close(g(0, 1) + g(1, 1) + g(2, 1), g(0, 2) + g(1, 2) + g(2, 2))
        && chain(g(1, 0) + g(2, 0), g(1, 1) + g(2, 2), g(1, 2) + g(2, 1))
        && chain(g(1, 1) + g(2, 1), g(1, 2) + g(2, 0), g(1, 0) + g(2, 2))
        && chain(g(1, 2) + g(2, 2), g(1, 0) + g(2, 1), g(1, 1) + g(2, 0))
}

/// The canonical solution of the three-basis constraints: rows 1 and 2
/// constant and `p_{0,1} = p_{0,2}`.
pub fn is_three_basis_canonical(p: &ProbabilityMatrix) -> bool {
    if p.dim() != 3 {
        return false;
    }
    let g = |m, n| p.get(m, n);
    close(g(0, 1), g(0, 2))
        && (1..3).all(|m| close(g(m, 0), g(m, 1)) && close(g(m, 1), g(m, 2)))
}

/// Equal cloning of all four qutrit bases with `D₁ = D₂`.
pub fn check_four_basis_constraints(p: &ProbabilityMatrix) -> bool {
    if !check_three_basis_constraints(p) {
        return false;
    }
    let g = |m, n| p.get(m, n);
    close(g(0, 1) + g(0, 2), g(1, 0) + g(2, 0))
        && close(g(1, 0) + g(1, 2), g(0, 1) + g(2, 1))
        && close(g(2, 0) + g(2, 1), g(0, 2) + g(1, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cloner::fourier_dual;

    fn two_basis_at(f: f64) -> TwoBasisParams {
        TwoBasisParams::new(f, (f * (1.0 - f) / 2.0).sqrt(), (1.0 - f) / 2.0).unwrap()
    }

    fn sym_optimum() -> ThreeBasisSymParams {
        let r17 = 17f64.sqrt();
        let y = ((17.0 + r17) / 408.0).sqrt();
        ThreeBasisSymParams::new(((17.0 - r17) / 102.0).sqrt(), y, y).unwrap()
    }

    #[test]
    fn normalization_is_enforced() {
        assert!(matches!(TwoBasisParams::new(1.0, 0.1, 0.0), Err(Error::NotNormalized(_))));
        assert!(ThreeBasisSymParams::new(1.0, 0.0, 0.0).is_err());
        assert!(ThreeBasisAsymParams::new(0.5, 0.5, 0.5).is_err());
        assert!(UniversalParams::new(1.0, 1.0, 3).is_err());
        assert!(UniversalParams::new(1.0, 0.0, 1).is_err());
        assert!(QubitPhaseCovParams::new(0.0, 0.0, 0.5).is_err());
        let bad = FamilyParams::TwoBasis(TwoBasisParams { v: 2.0, x: 0.0, y: 0.0 });
        assert!(bad.build().is_err());
    }

    #[test]
    fn universal_identity() {
        let p = FamilyParams::Universal(UniversalParams::new(1.0, 0.0, 3).unwrap());
        assert_eq!(p.build().unwrap(), AmplitudeMatrix::identity(3));
    }

    #[test]
    fn two_basis_optimal_point_is_normalized() {
        // v² + 4x² + 4y² = F² + 2F(1-F) + (1-F)² = 1
        for f in [1.0 / 3.0, 0.5, 0.9, 1.0] {
            let p = two_basis_at(f);
            assert!((p.norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn symmetric_optimum_fidelity() {
        let p = FamilyParams::ThreeBasisSym(sym_optimum());
        let fid = p.fidelities();
        let expect = (5.0 + 17f64.sqrt()) / 12.0;
        assert!((fid.fidelity_a - expect).abs() < 1e-12);
        assert!((fid.fidelity_a + 2.0 * fid.disturbance_a - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constraint_predicates() {
        let two = FamilyParams::TwoBasis(two_basis_at(0.8)).build().unwrap().probabilities();
        assert!(check_two_basis_constraints(&two));
        let delta = AmplitudeMatrix::identity(3).probabilities();
        assert!(check_two_basis_constraints(&delta));
        assert!(check_three_basis_constraints(&delta));
        assert!(check_four_basis_constraints(&delta));

        let mut flat = vec![1.0 / 9.0; 9];
        flat[4] += 0.01;
        flat[0] -= 0.01;
        let perturbed = ProbabilityMatrix::new(3, flat).unwrap();
        assert!(!check_two_basis_constraints(&perturbed));

        let asym = ThreeBasisAsymParams::new(0.8, 0.15, (0.36 - 6.0 * 0.0225f64).sqrt() / 2f64.sqrt()).unwrap();
        let asym_p = FamilyParams::ThreeBasisAsym(asym).build().unwrap().probabilities();
        assert!(check_three_basis_constraints(&asym_p));
        assert!(is_three_basis_canonical(&asym_p));
        assert!(!check_four_basis_constraints(&asym_p));

        // two-basis point with x != y: (v, x) = (0.8, 0.2), y from normalization
        let y = ((1.0 - 0.64 - 0.16) / 4.0f64).sqrt();
        let tb = TwoBasisParams::new(0.8, 0.2, y).unwrap();
        let tb_p = FamilyParams::TwoBasis(tb).build().unwrap().probabilities();
        assert!(!check_three_basis_constraints(&tb_p));

        let uni = FamilyParams::Universal(UniversalParams::symmetric(3)).build().unwrap().probabilities();
        assert!(check_four_basis_constraints(&uni));

        let qubit = AmplitudeMatrix::identity(2).probabilities();
        assert!(!check_two_basis_constraints(&qubit));
    }

    #[test]
    fn general_three_basis_solution_shape() {
        let (v2, x2, y2, z2) = (0.3, 0.05, 0.1, 0.1);
        let p = ProbabilityMatrix::new(3, vec![v2, x2, x2, y2, y2, y2, z2, z2, z2]).unwrap();
        assert!(check_three_basis_constraints(&p));
        assert!(is_three_basis_canonical(&p));
    }

    #[test]
    fn dual_closure_with_parameter_recovery() {
        let cases = [
            FamilyParams::TwoBasis(two_basis_at(0.85)),
            FamilyParams::ThreeBasisSym(sym_optimum()),
            FamilyParams::ThreeBasisAsym(ThreeBasisAsymParams::from_symmetric(&sym_optimum()).unwrap()),
            FamilyParams::Universal(UniversalParams::new(0.9, {
                let a: f64 = 0.9;
                -a / 3.0 + (a * a / 9.0 - a * a + 1.0).sqrt()
            }, 3).unwrap()),
            FamilyParams::Universal(UniversalParams::symmetric(5)),
            FamilyParams::QubitPhaseCov(QubitPhaseCovParams::new(0.8, (0.16f64).sqrt(), 0.2).unwrap()),
        ];
        for params in cases {
            let b = fourier_dual(&params.build().unwrap());
            let recovered = FamilyParams::recognize(params.kind(), &b)
                .unwrap_or_else(|| panic!("{} dual left the family", params.kind()));
            let expect = params.dual();
            let diff = recovered.build().unwrap().max_abs_diff(&expect.build().unwrap());
            assert!(diff < 1e-12, "{}: {diff}", params.kind());
        }
    }

    #[test]
    fn symmetric_three_basis_is_self_dual() {
        let a = FamilyParams::ThreeBasisSym(sym_optimum()).build().unwrap();
        assert!(fourier_dual(&a).max_abs_diff(&a) < 1e-12);
    }

    #[test]
    fn recognize_rejects_wrong_shape() {
        let a = FamilyParams::TwoBasis(two_basis_at(0.7)).build().unwrap();
        assert!(FamilyParams::recognize(FamilyKind::ThreeBasisAsym, &a).is_none());
        assert!(FamilyParams::recognize(FamilyKind::QubitPhaseCov, &a).is_none());
        assert!(FamilyParams::recognize(FamilyKind::TwoBasis, &a).is_some());
    }

    #[test]
    fn json_round_trip_and_names() {
        let p = FamilyParams::TwoBasis(two_basis_at(0.9));
        let text = p.to_json();
        assert!(text.starts_with(r#"{"family":"two_basis","params":{"v":0.9"#), "{text}");
        assert_eq!(FamilyParams::from_json(&text).unwrap(), p);
        assert!(FamilyParams::from_json(r#"{"family":"two_basis","params":{"v":1,"x":1,"y":0}}"#).is_err());
        for kind in FamilyKind::ALL {
            assert_eq!(kind.name().parse::<FamilyKind>().unwrap(), kind);
        }
        assert!("four_basis".parse::<FamilyKind>().is_err());
    }
}
