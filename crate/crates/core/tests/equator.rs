mod common;

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use proptest::prelude::*;
use qclone::cloner::{clone_outputs_mixture, fidelity_equator, fidelity_in_basis};
use qclone::families::{FamilyParams, ThreeBasisAsymParams};
use qclone::hilbert::fidelity;
use qclone::mub::{equator_state, qutrit_mubs, BasisLabel, EquatorParams};
use qclone::optimizer::{three_basis_asym_tradeoff, three_basis_symmetric_optimal};
use serde::Deserialize;

#[derive(Deserialize)]
struct Fixture {
    bases: BTreeMap<String, Vec<[u8; 2]>>,
}

fn fixture() -> Fixture {
    serde_json::from_str(include_str!("fixtures/equator_params.json")).unwrap()
}

fn third_turns(pair: [u8; 2]) -> EquatorParams {
    EquatorParams::new(pair[0] as f64 * TAU / 3.0, pair[1] as f64 * TAU / 3.0)
}

#[test]
fn fixture_matches_solved_phases() {
    // Solve |k⟩ ∝ |ψ₀(α, β)⟩ over the nine candidates (α, β) ∈ (2π/3)·{0,1,2}²
    // and check the solution is unique and equals the stored table.
    let mubs = qutrit_mubs();
    let table = fixture();
    for label in [BasisLabel::Second, BasisLabel::Third, BasisLabel::Fourth] {
        let basis = mubs.get(label).unwrap();
        let stored = &table.bases[&label.to_string()];
        for k in 0..3 {
            let solutions: Vec<[u8; 2]> = (0..3u8)
                .flat_map(|a| (0..3u8).map(move |b| [a, b]))
                .filter(|&pair| equator_state(third_turns(pair), 0).equal_up_to_phase(basis.vector(k), 1e-10))
                .collect();
            assert_eq!(solutions, vec![stored[k]], "{label} k={k}");
            let read = basis.equator_params(k).unwrap();
            let expect = third_turns(stored[k]).reduced();
            assert!((read.alpha - expect.alpha).abs() < 1e-10 && (read.beta - expect.beta).abs() < 1e-10);
        }
    }
}

#[test]
fn equator_formula_agrees_with_basis_sums() {
    let table = fixture();
    let mut rng = common::rng(11);
    for _ in 0..20 {
        let p = common::random_amplitudes(&mut rng, 3).probabilities();
        for label in [BasisLabel::Second, BasisLabel::Third, BasisLabel::Fourth] {
            let sums = fidelity_in_basis(&p, label).unwrap();
            for pair in &table.bases[&label.to_string()] {
                let eq = fidelity_equator(&p, third_turns(*pair)).unwrap();
                assert!((eq.fidelity - sums.fidelity).abs() < 1e-12, "{label}");
                let mut lhs = [eq.d1, eq.d2];
                let mut rhs = [sums.d1, sums.d2];
                lhs.sort_by(f64::total_cmp);
                rhs.sort_by(f64::total_cmp);
                assert!((lhs[0] - rhs[0]).abs() < 1e-12 && (lhs[1] - rhs[1]).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn equator_formula_matches_simulation() {
    let mut rng = common::rng(12);
    for _ in 0..50 {
        let a = common::random_amplitudes(&mut rng, 3);
        let params = common::random_equator(&mut rng);
        let closed = fidelity_equator(&a.probabilities(), params).unwrap();
        let psi = equator_state(params, 0);
        let out = clone_outputs_mixture(&a, &psi).unwrap();
        assert!((fidelity(&psi, &out.rho_a).unwrap() - closed.fidelity).abs() < 1e-12);
        let others = [1, 2].map(|b| fidelity(&equator_state(params, b), &out.rho_a).unwrap());
        let mut got = [closed.d1, closed.d2];
        let mut want = others;
        got.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        assert!((got[0] - want[0]).abs() < 1e-12 && (got[1] - want[1]).abs() < 1e-12);
        assert!((closed.total() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn three_basis_families_are_phase_covariant() {
    let sym = FamilyParams::ThreeBasisSym(three_basis_symmetric_optimal().params);
    let asym = three_basis_asym_tradeoff(0.9).unwrap().params;
    let asym_by_hand = FamilyParams::ThreeBasisAsym(ThreeBasisAsymParams::new(0.6, 0.3, (0.05f64).sqrt()).unwrap());
    let mut rng = common::rng(13);
    for family in [sym, asym, asym_by_hand] {
        let a = family.build().unwrap();
        let expect = family.fidelities();
        for _ in 0..50 {
            let psi = equator_state(common::random_equator(&mut rng), 0);
            let (fa, fb) = clone_outputs_mixture(&a, &psi).unwrap().fidelities(&psi).unwrap();
            assert!((fa - expect.fidelity_a).abs() < 1e-10);
            assert!((fb - expect.fidelity_b).abs() < 1e-10);
        }
    }
}

proptest! {
    #[test]
    fn shifting_both_phases_together_is_exact(
        a in common::amplitude_strategy(3),
        alpha in 0.0..TAU,
        beta in 0.0..TAU,
        sign in prop_oneof![Just(1.0), Just(-1.0)],
    ) {
        let p = a.probabilities();
        let base = fidelity_equator(&p, EquatorParams::new(alpha, beta)).unwrap();
        let shifted = fidelity_equator(
            &p,
            EquatorParams::new(alpha + sign * TAU / 3.0, beta + sign * 2.0 * TAU / 3.0),
        ).unwrap();
        prop_assert!((base.fidelity - shifted.fidelity).abs() < 1e-12);
        prop_assert!((base.d1 - shifted.d1).abs() < 1e-12);
        prop_assert!((base.d2 - shifted.d2).abs() < 1e-12);
    }

    #[test]
    fn shifted_state_is_the_next_branch(alpha in 0.0..TAU, beta in 0.0..TAU) {
        let shifted = EquatorParams::new(alpha + TAU / 3.0, beta + 2.0 * TAU / 3.0);
        let next = equator_state(EquatorParams::new(alpha, beta), 1);
        prop_assert!(equator_state(shifted, 0).equal_up_to_phase(&next, 1e-10));
    }
}
