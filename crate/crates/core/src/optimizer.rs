//! Optimal trade-offs between the two clone fidelities, in closed form
//! where one exists and by search otherwise.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{
    family_fidelities, FamilyKind, FamilyParams, QubitPhaseCovParams, ThreeBasisAsymParams,
    ThreeBasisSymParams, TwoBasisParams, UniversalParams,
};

/// One point of a trade-off curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TradeoffPoint {
    pub f_a: f64,
    pub f_b: f64,
    pub params: FamilyParams,
}

impl TradeoffPoint {
    fn from_params(params: FamilyParams) -> Self {
        let fid = family_fidelities(&params);
        Self {
            f_a: fid.fidelity_a,
            f_b: fid.fidelity_b,
            params,
        }
    }
}

fn check_domain(value: f64, min: f64, max: f64) -> Result<()> {
    if value.is_finite() && value >= min && value <= max {
        Ok(())
    } else {
        Err(Error::Domain { value, min, max })
    }
}

/// Best two-basis cloner with clone-A fidelity `f ∈ [1/3, 1]`:
/// `v = F`, `x = √(F(1-F)/2)`, `y = (1-F)/2`, giving
/// `F̃ = (2-F)/3 + (2√2/3)√(F(1-F))`.
///
/// ```
/// let p = qclone::optimizer::two_basis_tradeoff(1.0 / 3.0).unwrap();
/// assert!((p.f_b - 1.0).abs() < 1e-12);
/// ```
pub fn two_basis_tradeoff(f: f64) -> Result<TradeoffPoint> {
    check_domain(f, 1.0 / 3.0, 1.0)?;
    let params = TwoBasisParams::new(f, (f * (1.0 - f) / 2.0).sqrt(), (1.0 - f) / 2.0)?;
    Ok(TradeoffPoint::from_params(FamilyParams::TwoBasis(params)))
}

/// Best qubit phase-covariant cloner with `f ∈ [1/2, 1]`:
/// `v = F`, `x = √(F(1-F))`, `y = 1-F`, giving `F̃ = 1/2 + √(F(1-F))`.
pub fn qubit_phase_cov_tradeoff(f: f64) -> Result<TradeoffPoint> {
    check_domain(f, 0.5, 1.0)?;
    let params = QubitPhaseCovParams::new(f, (f * (1.0 - f)).sqrt(), 1.0 - f)?;
    Ok(TradeoffPoint::from_params(FamilyParams::QubitPhaseCov(params)))
}

/// Kind of a constrained stationary point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extremum {
    Maximum,
    Saddle,
    Minimum,
}

/// A stationary point of the symmetric three-basis fidelity on the
/// normalization ellipsoid, with its Lagrange multiplier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaryPoint {
    pub lambda: f64,
    pub fidelity: f64,
    pub params: ThreeBasisSymParams,
    pub kind: Extremum,
}

/// Largest violation of the stationarity equations
/// `y + z = λx`, `x + z = 2λy`, `x + y = 2λz`.
pub fn lagrange_residual(p: &ThreeBasisSymParams, lambda: f64) -> f64 {
    let ThreeBasisSymParams { x, y, z } = *p;
    [
        y + z - lambda * x,
        x + z - 2.0 * lambda * y,
        x + y - 2.0 * lambda * z,
    ]
    .into_iter()
    .fold(0.0, |acc, r| acc.max(r.abs()))
}

/// All three stationary points, sorted by decreasing fidelity. On each,
/// `F = (λ + 1)/3`.
pub fn three_basis_symmetric_stationary_points() -> Vec<StationaryPoint> {
    let r17 = 17f64.sqrt();
    let on_y_eq_z = |lambda: f64| {
        // x = (2λ - 1) y, 3x² + 12y² = 1
        let k = 2.0 * lambda - 1.0;
        let y = (1.0 / (3.0 * (k * k + 4.0))).sqrt();
        ThreeBasisSymParams { x: k * y, y, z: y }
    };
    let antisym = ThreeBasisSymParams {
        x: 0.0,
        y: (1.0 / 12f64).sqrt(),
        z: -(1.0 / 12f64).sqrt(),
    };
    let raw = [
        ((1.0 + r17) / 4.0, on_y_eq_z((1.0 + r17) / 4.0), Extremum::Maximum),
        (-0.5, antisym, Extremum::Saddle),
        ((1.0 - r17) / 4.0, on_y_eq_z((1.0 - r17) / 4.0), Extremum::Minimum),
    ];
    raw.into_iter()
        .map(|(lambda, params, kind)| StationaryPoint {
            lambda,
            fidelity: family_fidelities(&FamilyParams::ThreeBasisSym(params)).fidelity_a,
            params,
            kind,
        })
        .collect()
}

/// The optimal symmetric three-basis cloner, `F = (5 + √17)/12`.
pub fn three_basis_symmetric_optimal() -> StationaryPoint {
    three_basis_symmetric_stationary_points()[0]
}

const ASYM_SCAN_POINTS: usize = 400;
const GOLDEN_TOL: f64 = 1e-12;
const GOLDEN_MAX_ITER: usize = 200;

fn asym_fb(f: f64, x: f64) -> f64 {
    let v = (f - 2.0 * x * x).max(0.0).sqrt();
    let y = ((1.0 - f - 4.0 * x * x) / 2.0).max(0.0).sqrt();
    (1.0 + 6.0 * x * x + 4.0 * x * v + 8.0 * x * y) / 3.0
}

/// Maximizes `g` on `[lo, hi]` by golden-section search.
fn golden_max(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (start_lo, start_hi) = (lo, hi);
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..GOLDEN_MAX_ITER {
        if hi - lo < GOLDEN_TOL {
            return Ok(0.5 * (lo + hi));
        }
        if gc >= gd {
            hi = d;
            d = c;
            gd = gc;
            c = hi - ratio * (hi - lo);
            gc = g(c);
        } else {
            lo = c;
            c = d;
            gc = gd;
            d = lo + ratio * (hi - lo);
            gd = g(d);
        }
    }
    Err(Error::NoConvergence {
        lo: start_lo,
        hi: start_hi,
        iterations: GOLDEN_MAX_ITER,
    })
}

/// Best asymmetric three-basis cloner with `f ∈ [1/3, 1]`.
///
/// Fixing `F` leaves one free parameter `x`, with `v = √(F - 2x²)` and
/// `y = √((1 - F - 4x²)/2)`. Parameters are taken nonnegative, since a
/// global sign flip leaves both fidelities unchanged and the objective
/// only gains from aligned signs. A coarse scan brackets the maximum and
/// golden-section search refines it.
pub fn three_basis_asym_tradeoff(f: f64) -> Result<TradeoffPoint> {
    check_domain(f, 1.0 / 3.0, 1.0)?;
    let x_max = (f / 2.0).min((1.0 - f) / 4.0).max(0.0).sqrt();
    let x = if x_max == 0.0 {
        0.0
    } else {
        let step = x_max / ASYM_SCAN_POINTS as f64;
        let mut best = (0, asym_fb(f, 0.0));
        for i in 1..=ASYM_SCAN_POINTS {
            let val = asym_fb(f, i as f64 * step);
            if val > best.1 {
                best = (i, val);
            }
        }
        let lo = best.0.saturating_sub(1) as f64 * step;
        let hi = ((best.0 + 1) as f64 * step).min(x_max);
        golden_max(|x| asym_fb(f, x), lo, hi)?
    };
    let v = (f - 2.0 * x * x).max(0.0).sqrt();
    let y = ((1.0 - f - 4.0 * x * x) / 2.0).max(0.0).sqrt();
    let params = ThreeBasisAsymParams::new(v, x, y)?;
    Ok(TradeoffPoint::from_params(FamilyParams::ThreeBasisAsym(params)))
}

/// Universal cloner with weight `alpha ∈ [0, 1]` on the identity term.
/// `β` is the nonnegative root of the normalization.
pub fn universal_tradeoff(alpha: f64, dim: usize) -> Result<TradeoffPoint> {
    check_domain(alpha, 0.0, 1.0)?;
    if dim < 2 {
        return Err(Error::InvalidArgument("universal cloner needs dim >= 2".into()));
    }
    let n = dim as f64;
    let beta = -alpha / n + (alpha * alpha / (n * n) - alpha * alpha + 1.0).sqrt();
    let params = UniversalParams::new(alpha, beta, dim)?;
    Ok(TradeoffPoint::from_params(FamilyParams::Universal(params)))
}

/// Universal cloner whose clone A has fidelity `f ∈ [1/N, 1]`, found by
/// bisection on `α` (clone-A fidelity increases with `α`).
pub fn universal_tradeoff_at(f: f64, dim: usize) -> Result<TradeoffPoint> {
    if dim < 2 {
        return Err(Error::InvalidArgument("universal cloner needs dim >= 2".into()));
    }
    check_domain(f, 1.0 / dim as f64, 1.0)?;
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if universal_tradeoff(mid, dim)?.f_a < f {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    universal_tradeoff(0.5 * (lo + hi), dim)
}

pub const MIN_RESOLUTION: usize = 100;

/// Settings for [`brute_force_optimal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForce {
    /// Grid points per angle; the grid has `resolution²` points.
    pub resolution: usize,
    /// Also scan sign patterns of the parameters instead of assuming they
    /// are nonnegative.
    pub signed: bool,
}

impl Default for BruteForce {
    fn default() -> Self {
        Self {
            resolution: 400,
            signed: false,
        }
    }
}

/// Normalization weights of the three-parameter families.
fn ellipsoid_weights(kind: FamilyKind) -> Result<[f64; 3]> {
    match kind {
        FamilyKind::TwoBasis => Ok([1.0, 4.0, 4.0]),
        FamilyKind::ThreeBasisAsym => Ok([1.0, 6.0, 2.0]),
        FamilyKind::QubitPhaseCov => Ok([1.0, 2.0, 1.0]),
        other => Err(Error::InvalidArgument(format!(
            "brute-force search is defined for three-parameter families, not {other}"
        ))),
    }
}

struct Ellipsoid {
    kind: FamilyKind,
    scale: [f64; 3],
}

impl Ellipsoid {
    fn params(&self, theta: f64, phi: f64) -> FamilyParams {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        let [a, b, c] = [ct * self.scale[0], st * cp * self.scale[1], st * sp * self.scale[2]];
        match self.kind {
            FamilyKind::TwoBasis => FamilyParams::TwoBasis(TwoBasisParams { v: a, x: b, y: c }),
            FamilyKind::ThreeBasisAsym => FamilyParams::ThreeBasisAsym(ThreeBasisAsymParams { v: a, x: b, y: c }),
            _ => FamilyParams::QubitPhaseCov(QubitPhaseCovParams { v: a, x: b, y: c }),
        }
    }

    fn eval(&self, theta: f64, phi: f64) -> (f64, f64) {
        let fid = family_fidelities(&self.params(theta, phi));
        (fid.fidelity_a, fid.fidelity_b)
    }

    /// The `θ` at which clone A has fidelity `f` for this `φ`. Clone-A
    /// fidelity falls monotonically in `θ`, so bisection applies.
    fn theta_on_constraint(&self, f: f64, phi: f64) -> Option<f64> {
        if self.eval(FRAC_PI_2, phi).0 > f || self.eval(0.0, phi).0 < f {
            return None;
        }
        let (mut lo, mut hi) = (0.0, FRAC_PI_2);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if self.eval(mid, phi).0 > f {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(0.5 * (lo + hi))
    }

    fn constrained_fb(&self, f: f64, phi: f64) -> Option<(f64, f64)> {
        self.theta_on_constraint(f, phi).map(|t| (t, self.eval(t, phi).1))
    }
}

/// Maximizes clone-B fidelity at clone-A fidelity `f` by exhaustive search
/// over the family's normalization ellipsoid, independently of the closed
/// forms in this module.
///
/// The ellipsoid is parametrized by two angles on a `resolution²` grid.
/// Grid points within `2/resolution` of the constraint seed the search;
/// the best seed is moved onto the constraint by bisection and polished by
/// a shrinking-step line search in the remaining angle. Ties go to the
/// larger `v`.
pub fn brute_force_optimal(kind: FamilyKind, f: f64, opts: BruteForce) -> Result<TradeoffPoint> {
    let weights = ellipsoid_weights(kind)?;
    if opts.resolution < MIN_RESOLUTION {
        return Err(Error::InvalidArgument(format!(
            "resolution must be at least {MIN_RESOLUTION}"
        )));
    }
    check_domain(f, 0.0, 1.0)?;
    let res = opts.resolution;
    let tol = 2.0 / res as f64;
    let signs: &[[f64; 3]] = if opts.signed {
        &[[1., 1., 1.], [1., 1., -1.], [1., -1., 1.], [1., -1., -1.]]
    } else {
        &[[1., 1., 1.]]
    };
    let grid = |i: usize| FRAC_PI_2 * i as f64 / (res - 1) as f64;

    let mut best: Option<(f64, f64, f64, [f64; 3])> = None; // (fb, v, phi, signs)
    for s in signs {
        let ell = Ellipsoid {
            kind,
            scale: [s[0] / weights[0].sqrt(), s[1] / weights[1].sqrt(), s[2] / weights[2].sqrt()],
        };
        let mut seed: Option<(f64, f64, f64)> = None; // (fb, v, phi)
        for i in 0..res {
            let theta = grid(i);
            for j in 0..res {
                let phi = grid(j);
                let (fa, fb) = ell.eval(theta, phi);
                if (fa - f).abs() >= tol {
                    continue;
                }
                let v = theta.cos();
                if seed.is_none_or(|(bfb, bv, _)| fb > bfb + 1e-15 || (fb >= bfb - 1e-15 && v > bv)) {
                    seed = Some((fb, v, phi));
                }
            }
        }
        let Some((_, _, phi0)) = seed else { continue };
        let Some((mut phi, (mut theta, mut fb))) = polish_start(&ell, f, phi0, res) else {
            continue;
        };
        let mut step = FRAC_PI_2 / (res - 1) as f64;
        while step > 1e-13 {
            let mut moved = false;
            for cand in [phi + step, phi - step] {
                if !(0.0..=FRAC_PI_2).contains(&cand) {
                    continue;
                }
                if let Some((t, val)) = ell.constrained_fb(f, cand) {
                    if val > fb {
                        (phi, theta, fb) = (cand, t, val);
                        moved = true;
                    }
                }
            }
            if !moved {
                step /= 2.0;
            }
        }
        let v = theta.cos();
        if best.is_none_or(|(bfb, bv, _, _)| fb > bfb + 1e-15 || (fb >= bfb - 1e-15 && v > bv)) {
            best = Some((fb, v, phi, *s));
        }
    }

    let (_, _, phi, s) = best.ok_or(Error::EmptyFeasibleSet {
        target: f,
        tolerance: tol,
        resolution: res,
    })?;
    let ell = Ellipsoid {
        kind,
        scale: [s[0] / weights[0].sqrt(), s[1] / weights[1].sqrt(), s[2] / weights[2].sqrt()],
    };
    let theta = ell
        .theta_on_constraint(f, phi)
        .expect("polished point lies on the constraint");
    Ok(TradeoffPoint::from_params(ell.params(theta, phi)))
}

/// The seed's `φ` may not reach the constraint exactly; walk toward the
/// nearest `φ` that does.
fn polish_start(ell: &Ellipsoid, f: f64, phi0: f64, res: usize) -> Option<(f64, (f64, f64))> {
    if let Some(hit) = ell.constrained_fb(f, phi0) {
        return Some((phi0, hit));
    }
    let step = FRAC_PI_2 / (res - 1) as f64;
    (1..res).find_map(|k| {
        [phi0 + k as f64 * step, phi0 - k as f64 * step]
            .into_iter()
            .filter(|p| (0.0..=FRAC_PI_2).contains(p))
            .find_map(|p| ell.constrained_fb(f, p).map(|hit| (p, hit)))
    })
}

/// Clone-A fidelity range covered by a family's trade-off curve.
pub fn tradeoff_range(kind: FamilyKind, dim: usize) -> Result<(f64, f64)> {
    match kind {
        FamilyKind::TwoBasis | FamilyKind::ThreeBasisAsym => Ok((1.0 / 3.0, 1.0)),
        FamilyKind::QubitPhaseCov => Ok((0.5, 1.0)),
        FamilyKind::Universal if dim >= 2 => Ok((1.0 / dim as f64, 1.0)),
        FamilyKind::Universal => Err(Error::InvalidArgument("universal cloner needs dim >= 2".into())),
        FamilyKind::ThreeBasisSym => Err(Error::InvalidArgument(
            "the symmetric three-basis family has a single optimum, not a curve".into(),
        )),
    }
}

/// The optimal cloner with equal clone fidelities. `dim` is used by
/// `universal` only.
pub fn symmetric_point(kind: FamilyKind, dim: usize) -> Result<TradeoffPoint> {
    match kind {
        FamilyKind::TwoBasis => two_basis_tradeoff(0.5 + 1.0 / 12f64.sqrt()),
        FamilyKind::QubitPhaseCov => qubit_phase_cov_tradeoff(0.5 + 1.0 / 8f64.sqrt()),
        FamilyKind::ThreeBasisSym => Ok(TradeoffPoint::from_params(FamilyParams::ThreeBasisSym(
            three_basis_symmetric_optimal().params,
        ))),
        FamilyKind::ThreeBasisAsym => three_basis_asym_tradeoff(three_basis_symmetric_optimal().fidelity),
        FamilyKind::Universal => {
            if dim < 2 {
                return Err(Error::InvalidArgument("universal cloner needs dim >= 2".into()));
            }
            Ok(TradeoffPoint::from_params(FamilyParams::Universal(UniversalParams::symmetric(dim))))
        }
    }
}

/// Optimal point at clone-A fidelity `f`. `dim` is used by `universal` only.
pub fn tradeoff_at(kind: FamilyKind, f: f64, dim: usize) -> Result<TradeoffPoint> {
    match kind {
        FamilyKind::TwoBasis => two_basis_tradeoff(f),
        FamilyKind::ThreeBasisAsym => three_basis_asym_tradeoff(f),
        FamilyKind::QubitPhaseCov => qubit_phase_cov_tradeoff(f),
        FamilyKind::Universal => universal_tradeoff_at(f, dim),
        FamilyKind::ThreeBasisSym => Err(tradeoff_range(kind, dim).unwrap_err()),
    }
}

/// `points` evenly spaced samples of the optimal trade-off curve.
pub fn tradeoff_curve(kind: FamilyKind, points: usize, dim: usize) -> Result<Vec<TradeoffPoint>> {
    if points < 2 {
        return Err(Error::InvalidArgument("a curve needs at least 2 points".into()));
    }
    let (lo, hi) = tradeoff_range(kind, dim)?;
    (0..points)
        .map(|i| {
            let f = lo + (hi - lo) * i as f64 / (points - 1) as f64;
            tradeoff_at(kind, f.min(hi), dim)
        })
        .collect()
}
