#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use qclone::cloner::AmplitudeMatrix;
use qclone::hilbert::StateVector;
use qclone::mub::EquatorParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_unit(rng: &mut impl Rng, len: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..len)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

pub fn random_state(rng: &mut impl Rng, dim: usize) -> StateVector {
    StateVector::new(random_unit(rng, dim)).unwrap()
}

pub fn random_amplitudes(rng: &mut impl Rng, dim: usize) -> AmplitudeMatrix {
    AmplitudeMatrix::new(dim, random_unit(rng, dim * dim)).unwrap()
}

pub fn random_equator(rng: &mut impl Rng) -> EquatorParams {
    let tau = std::f64::consts::TAU;
    EquatorParams::new(rng.random_range(0.0..tau), rng.random_range(0.0..tau))
}

fn unit_vector(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), len)
        .prop_filter("nonzero", |v| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-6)
        .prop_map(|v| {
            let norm = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
            v.into_iter().map(|(a, b)| Complex64::new(a / norm, b / norm)).collect()
        })
}

pub fn state_strategy(dim: usize) -> impl Strategy<Value = StateVector> {
    unit_vector(dim).prop_map(|v| StateVector::new(v).unwrap())
}

pub fn amplitude_strategy(dim: usize) -> impl Strategy<Value = AmplitudeMatrix> {
    unit_vector(dim * dim).prop_map(move |v| AmplitudeMatrix::new(dim, v).unwrap())
}

/// Qubit or qutrit cloner together with an input state of the same dimension.
pub fn cloner_and_state() -> impl Strategy<Value = (AmplitudeMatrix, StateVector)> {
    prop_oneof![Just(2usize), Just(3usize)]
        .prop_flat_map(|dim| (amplitude_strategy(dim), state_strategy(dim)))
}
