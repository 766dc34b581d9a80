//! Probes whether restricting the three-basis cloners to the real
//! `(v y y / x x x / x x x)` shape loses anything. Cloners whose `|a|²` has
//! the general three-basis shape are taken from a grid of real nonnegative
//! moduli and from random phases. The worst clone-B fidelity over the three
//! flat bases is compared with the optimizer's curve. The outcome is
//! printed, not asserted.

mod common;

use std::f64::consts::TAU;

use num_complex::Complex64;
use qclone::cloner::{fidelity_in_basis, fourier_dual, AmplitudeMatrix};
use qclone::mub::BasisLabel;
use qclone::optimizer::three_basis_asym_tradeoff;
use rand::Rng;

const GRID: usize = 60;
const RANDOM_PHASE_SAMPLES: usize = 20_000;

#[derive(Default)]
struct Tally {
    compared: usize,
    worst_excess: Option<(f64, f64)>,
}

impl Tally {
    fn record(&mut self, a: &AmplitudeMatrix) {
        let flat = [BasisLabel::Second, BasisLabel::Third, BasisLabel::Fourth];
        let p = a.probabilities();
        let q = fourier_dual(a).probabilities();
        let f_a = fidelity_in_basis(&p, BasisLabel::Second).unwrap().fidelity;
        if f_a < 1.0 / 3.0 {
            return;
        }
        let f_b = flat
            .iter()
            .map(|&b| fidelity_in_basis(&q, b).unwrap().fidelity)
            .fold(f64::INFINITY, f64::min);
        let excess = f_b - three_basis_asym_tradeoff(f_a.min(1.0)).unwrap().f_b;
        self.compared += 1;
        if self.worst_excess.is_none_or(|(e, _)| excess > e) {
            self.worst_excess = Some((excess, f_a));
        }
    }

    fn report(&self, label: &str) {
        let (e, f) = self.worst_excess.unwrap();
        println!("{label}: {} cloners, largest excess over the asymmetric curve {e:.3e} at F = {f:.6}", self.compared);
    }
}

/// `|a|²` entries from `(v², x², y², z²)` laid out in the general shape.
fn moduli(w: [f64; 4]) -> [f64; 9] {
    [w[0], w[1], w[1], w[2], w[2], w[2], w[3], w[3], w[3]].map(f64::sqrt)
}

#[test]
fn general_three_basis_cloners_against_the_asymmetric_curve() {
    // real nonnegative grid on v² + 2x² + 3y² + 3z² = 1
    let mut grid = Tally::default();
    let g = GRID as f64;
    for j in 0..=GRID / 2 {
        for k in 0..=GRID / 3 {
            for l in 0..=GRID / 3 {
                let Some(i) = GRID.checked_sub(2 * j + 3 * k + 3 * l) else { continue };
                let w = [i as f64 / g, j as f64 / g, k as f64 / g, l as f64 / g];
                grid.record(&AmplitudeMatrix::from_real(3, &moduli(w)).unwrap());
            }
        }
    }
    grid.report("real grid");

    let mut rng = common::rng(31);
    let mut phased = Tally::default();
    for _ in 0..RANDOM_PHASE_SAMPLES {
        let w: [f64; 4] = std::array::from_fn(|_| -rng.random::<f64>().ln());
        let total = w[0] + 2.0 * w[1] + 3.0 * w[2] + 3.0 * w[3];
        let entries = moduli(w.map(|x| x / total))
            .iter()
            .map(|&r| Complex64::from_polar(r, rng.random_range(0.0..TAU)))
            .collect();
        phased.record(&AmplitudeMatrix::new(3, entries).unwrap());
    }
    phased.report("random phases");

    assert!(grid.compared > 100 && phased.compared > RANDOM_PHASE_SAMPLES / 2);
}
