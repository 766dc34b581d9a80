//! Recomputes each published value by simulating the cloner on concrete
//! input states.

use num_complex::Complex64;
use qclone::cloner::{clone_outputs_mixture, AmplitudeMatrix};
use qclone::families::{FamilyKind, FamilyParams, UniversalParams};
use qclone::hilbert::StateVector;
use qclone::mub::{equator_state, qubit_mubs, qutrit_mubs, BasisLabel, EquatorParams};
use qclone::optimizer::{qubit_phase_cov_tradeoff, symmetric_point, two_basis_tradeoff};
use serde_json::json;

use crate::numfmt::{fmt_f64, round_f64};
use crate::{Args, CliError, Format, Report};

const DEFAULT_TOLERANCE: f64 = 1e-9;

/// One published value and how to recompute it.
pub struct Claim {
    pub name: &'static str,
    pub expected: f64,
    pub compute: fn() -> qclone::Result<f64>,
}

fn fidelities(a: &AmplitudeMatrix, psi: &StateVector) -> qclone::Result<(f64, f64)> {
    clone_outputs_mixture(a, psi)?.fidelities(psi)
}

fn symmetric(kind: FamilyKind) -> qclone::Result<AmplitudeMatrix> {
    symmetric_point(kind, 3)?.params.build()
}

fn qutrit(label: BasisLabel, k: usize) -> StateVector {
    qutrit_mubs().get(label).expect("qutrit basis").vector(k).clone()
}

fn qubit(label: BasisLabel, k: usize) -> StateVector {
    qubit_mubs().get(label).expect("qubit basis").vector(k).clone()
}

fn generic_state(dim: usize) -> StateVector {
    let amps = (0..dim)
        .map(|k| Complex64::new(0.3 + 0.2 * k as f64, 0.5 - 0.35 * k as f64))
        .collect();
    StateVector::renormalize(amps).expect("nonzero state")
}

pub fn claims() -> Vec<Claim> {
    vec![
        Claim {
            name: "two_basis.symmetric_fidelity",
            expected: 0.5 + 1.0 / 12f64.sqrt(),
            compute: || Ok(fidelities(&symmetric(FamilyKind::TwoBasis)?, &qutrit(BasisLabel::Third, 0))?.0),
        },
        Claim {
            name: "two_basis.symmetric_fidelity_clone_b",
            expected: 0.5 + 1.0 / 12f64.sqrt(),
            compute: || Ok(fidelities(&symmetric(FamilyKind::TwoBasis)?, &qutrit(BasisLabel::Fourth, 1))?.1),
        },
        Claim {
            name: "two_basis.remaining_bases",
            expected: 0.5 + 1.0 / (2.0 * 12f64.sqrt()),
            compute: || Ok(fidelities(&symmetric(FamilyKind::TwoBasis)?, &qutrit(BasisLabel::Computational, 2))?.0),
        },
        Claim {
            name: "two_basis.perfect_first_clone",
            expected: 1.0 / 3.0,
            compute: || {
                let a = two_basis_tradeoff(1.0)?.params.build()?;
                Ok(fidelities(&a, &qutrit(BasisLabel::Third, 0))?.1)
            },
        },
        Claim {
            name: "three_basis.symmetric_optimum",
            expected: (5.0 + 17f64.sqrt()) / 12.0,
            compute: || Ok(fidelities(&symmetric(FamilyKind::ThreeBasisSym)?, &qutrit(BasisLabel::Second, 0))?.0),
        },
        Claim {
            name: "three_basis.equator_state",
            expected: (5.0 + 17f64.sqrt()) / 12.0,
            compute: || {
                let psi = equator_state(EquatorParams::new(0.7, 1.9), 0);
                Ok(fidelities(&symmetric(FamilyKind::ThreeBasisSym)?, &psi)?.0)
            },
        },
        Claim {
            name: "universal.qutrit",
            expected: 0.75,
            compute: || {
                let a = FamilyParams::Universal(UniversalParams::symmetric(3)).build()?;
                Ok(fidelities(&a, &generic_state(3))?.0)
            },
        },
        Claim {
            name: "universal.qubit",
            expected: 5.0 / 6.0,
            compute: || {
                let a = FamilyParams::Universal(UniversalParams::symmetric(2)).build()?;
                Ok(fidelities(&a, &generic_state(2))?.0)
            },
        },
        Claim {
            name: "qubit.symmetric_fidelity",
            expected: 0.5 + 1.0 / 8f64.sqrt(),
            compute: || {
                let a = symmetric_point(FamilyKind::QubitPhaseCov, 2)?.params.build()?;
                Ok(fidelities(&a, &qubit(BasisLabel::X, 0))?.0)
            },
        },
        Claim {
            name: "qubit.third_basis",
            expected: 0.75,
            compute: || {
                let a = symmetric_point(FamilyKind::QubitPhaseCov, 2)?.params.build()?;
                Ok(fidelities(&a, &qubit(BasisLabel::Y, 0))?.0)
            },
        },
        Claim {
            name: "qubit.perfect_first_clone",
            expected: 0.5,
            compute: || {
                let a = qubit_phase_cov_tradeoff(1.0)?.params.build()?;
                Ok(fidelities(&a, &qubit(BasisLabel::Z, 1))?.1)
            },
        },
    ]
}

struct Row {
    name: &'static str,
    expected: f64,
    computed: f64,
    delta: f64,
    pass: bool,
}

pub fn run(args: &Args) -> Result<Report, CliError> {
    let tolerance = args.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    let selected: Vec<Claim> = claims()
        .into_iter()
        .filter(|c| args.only.as_deref().is_none_or(|f| c.name.contains(f)))
        .collect();
    if selected.is_empty() {
        return Err(CliError::Usage(format!(
            "no verify rows match {:?}",
            args.only.as_deref().unwrap_or_default()
        )));
    }
    let mut rows = Vec::with_capacity(selected.len());
    for claim in selected {
        let computed = (claim.compute)()?;
        let delta = (computed - claim.expected).abs();
        rows.push(Row {
            name: claim.name,
            expected: claim.expected,
            computed,
            delta,
            pass: delta <= tolerance,
        });
    }
    let warnings: Vec<String> = rows
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("FAIL {}: |Δ| = {} > {}", r.name, fmt_f64(r.delta), fmt_f64(tolerance)))
        .collect();
    let body = match args.format {
        Format::Csv => {
            let mut out = String::from("claim,expected,computed,abs_delta,pass\n");
            for r in &rows {
                let verdict = if r.pass { "pass" } else { "FAIL" };
                out.push_str(&format!(
                    "{},{},{},{},{verdict}\n",
                    r.name,
                    fmt_f64(r.expected),
                    fmt_f64(r.computed),
                    fmt_f64(r.delta)
                ));
            }
            out
        }
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "claim": r.name,
                        "expected": round_f64(r.expected),
                        "computed": round_f64(r.computed),
                        "abs_delta": round_f64(r.delta),
                        "pass": r.pass,
                    })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&items).expect("json values serialize");
            s.push('\n');
            s
        }
    };
    Ok(Report {
        body,
        success: warnings.is_empty(),
        warnings,
    })
}
