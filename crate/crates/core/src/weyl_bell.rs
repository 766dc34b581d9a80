//! Weyl error operators `U_{m,n}` and generalized Bell states.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hilbert::{Operator, StateVector};

/// `e^{2πi k/N}`.
pub fn root_of_unity(k: i64, dim: usize) -> Complex64 {
    let n = dim as i64;
    Complex64::from_polar(1.0, TAU * k.rem_euclid(n) as f64 / dim as f64)
}

/// Index `(m, n)` of a Weyl operator: shift by `m`, phase by `n`, both mod `dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylIndex {
    m: usize,
    n: usize,
    dim: usize,
}

impl WeylIndex {
    /// Reduces `m` and `n` into `0..dim`, so `-n` becomes `dim - n`.
    pub fn new(m: i64, n: i64, dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        let d = dim as i64;
        Self {
            m: m.rem_euclid(d) as usize,
            n: n.rem_euclid(d) as usize,
            dim,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// All `dim²` indices, row-major in `(m, n)`.
    pub fn all(dim: usize) -> impl Iterator<Item = WeylIndex> {
        (0..dim).flat_map(move |m| (0..dim).map(move |n| WeylIndex { m, n, dim }))
    }
}

/// `U_{m,n} = Σ_k e^{2πi kn/N} |k+m⟩⟨k|`.
pub fn weyl_operator(idx: WeylIndex) -> Operator {
    let WeylIndex { m, n, dim } = idx;
    Operator::from_fn(dim, |row, col| {
        if row == (col + m) % dim {
            root_of_unity((col * n) as i64, dim)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `|B_{m,n}⟩ = N^{-1/2} Σ_k e^{2πi kn/N} |k⟩|k+m⟩` on `N ⊗ N`.
pub fn bell_state(idx: WeylIndex) -> StateVector {
    let WeylIndex { m, n, dim } = idx;
    let scale = 1.0 / (dim as f64).sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); dim * dim];
    for k in 0..dim {
        amps[k * dim + (k + m) % dim] = root_of_unity((k * n) as i64, dim) * scale;
    }
    StateVector::from_raw(amps)
}
