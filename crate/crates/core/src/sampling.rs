//! Seeded random generators for effects, states and stochastic kernels.
//!
//! Effects are drawn as `a0 ~ U(0, 1)`, direction uniform on the sphere and
//! `|a| ~ U(0, min(a0, 1 − a0))`, which covers biased effects.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, UnitSphere};

use crate::operator::{ComplexMatrix, DensityOperator, QubitEffect, Vec3};

/// Deterministic generator used throughout tests, the oracle and the CLI.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    let [x, y, z]: [f64; 3] = UnitSphere.sample(rng);
    Vec3::new(x, y, z)
}

pub fn qubit_effect<R: Rng + ?Sized>(rng: &mut R) -> QubitEffect {
    let a0: f64 = rng.random();
    let dir = unit_vector(rng);
    let len = rng.random::<f64>() * a0.min(1.0 - a0);
    QubitEffect::new(a0, dir * len).expect("sampled inside the effect cone")
}

/// Bloch vector of an unbiased effect: `|a| ~ U(0, ½)`, uniform direction.
pub fn unbiased_vector<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    unit_vector(rng) * (0.5 * rng.random::<f64>())
}

/// Qubit state with Bloch vector uniform in the ball.
pub fn qubit_state<R: Rng + ?Sized>(rng: &mut R) -> DensityOperator {
    let r = rng.random::<f64>().cbrt();
    DensityOperator::from_bloch(&(unit_vector(rng) * r)).expect("inside the Bloch ball")
}

/// Random mixed state of dimension `dim` from a Ginibre matrix `G G† / tr`.
pub fn density_operator<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityOperator {
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let w = &g * g.adjoint();
    let tr = w.trace().re;
    let m = ComplexMatrix::new(w.map(|z| z / tr)).expect("finite");
    DensityOperator::new(m).expect("Ginibre states are valid")
}

/// Random `rows × cols` row-stochastic matrix.
pub fn stochastic_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Vec<Vec<f64>> {
    (0..rows)
        .map(|_| {
            let raw: Vec<f64> = (0..cols).map(|_| rng.random::<f64>() + 1e-3).collect();
            let s: f64 = raw.iter().sum();
            raw.into_iter().map(|v| v / s).collect()
        })
        .collect()
}
