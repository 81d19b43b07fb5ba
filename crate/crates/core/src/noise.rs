//! Parametric noise: depolarizing channels per gate class plus a readout
//! bit-flip, driving the density-matrix backend.
//!
//! The channel family is deliberately small — it is a qualitative stand-in
//! for hardware behaviour, not a calibration of any device. Parameters are
//! plain config values.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qsim::{DensityMatrix, Gate, SimError};

#[derive(Debug, Error)]
pub enum NoiseError {
    #[error("noise probability {name} = {value} is outside [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("turning-point fit needs a nonempty error curve")]
    EmptyCurve,
}

/// Depolarizing probabilities per gate class plus readout flip probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    /// Depolarizing probability after each one-qubit gate.
    pub p1: f64,
    /// Depolarizing probability after each two-qubit gate.
    pub p2: f64,
    /// Independent per-bit readout flip probability.
    pub p_ro: f64,
}

impl NoiseModel {
    /// The identity channel.
    pub fn noiseless() -> Self {
        NoiseModel { p1: 0.0, p2: 0.0, p_ro: 0.0 }
    }

    /// Defaults chosen by a calibration sweep so that the simulated 4-qubit
    /// MLAE error curve turns upward between m = 2 and m = 5. Not hardware
    /// calibration data.
    pub fn default_calibrated() -> Self {
        NoiseModel { p1: 3e-4, p2: 1e-2, p_ro: 2e-2 }
    }

    pub fn is_noiseless(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0 && self.p_ro == 0.0
    }

    pub fn validate(&self) -> Result<(), NoiseError> {
        for (name, value) in [("p1", self.p1), ("p2", self.p2), ("p_ro", self.p_ro)] {
            if !(0.0..=1.0).contains(&value) || value.is_nan() {
                return Err(NoiseError::InvalidProbability { name, value });
            }
        }
        Ok(())
    }
}

/// One noisy gate step: unitary conjugation, then the depolarizing channel
/// for the gate's class on the gate's qubits.
pub fn apply_channel(
    rho: &mut DensityMatrix,
    gate: &Gate,
    model: &NoiseModel,
) -> Result<(), SimError> {
    rho.apply_unitary(gate)?;
    let p = match gate.qubits.len() {
        1 => model.p1,
        _ => model.p2,
    };
    rho.depolarize(&gate.qubits, p)
}

/// Samples the diagonal of `rho`, then flips each measured bit independently
/// with probability `p_ro`. Deterministic per seed.
pub fn readout_sample(
    rho: &DensityMatrix,
    shots: u64,
    p_ro: f64,
    seed: u64,
) -> Result<BTreeMap<usize, u64>, SimError> {
    if shots == 0 {
        return Err(SimError::ZeroShots);
    }
    let probs = rho.diagonal_probabilities();
    let mut cdf = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for &p in &probs {
        acc += p;
        cdf.push(acc);
    }
    let total = acc;
    let width = rho.width();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for _ in 0..shots {
        let u: f64 = rng.random::<f64>() * total;
        let mut idx = match cdf.binary_search_by(|c| c.partial_cmp(&u).unwrap()) {
            Ok(i) => i + 1,
            Err(i) => i,
        }
        .min(probs.len() - 1);
        if p_ro > 0.0 {
            for q in 0..width {
                if rng.random::<f64>() < p_ro {
                    idx ^= 1 << q;
                }
            }
        }
        *counts.entry(idx).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Smallest Grover power minimizing the mean error; ties go to the smaller m.
pub fn fit_turning_point(error_curve: &[(usize, f64)]) -> Result<usize, NoiseError> {
    let mut best: Option<(usize, f64)> = None;
    for &(m, err) in error_curve {
        match best {
            Some((_, e)) if err >= e => {}
            _ => best = Some((m, err)),
        }
    }
    best.map(|(m, _)| m).ok_or(NoiseError::EmptyCurve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::{run_density, Circuit, DensityMatrix, Gate};

    #[test]
    fn zero_model_is_identity_channel() {
        let mut circ = Circuit::new(2);
        circ.push(Gate::h(0)).push(Gate::cx(0, 1));
        let pure = run_density(
            &circ,
            &NoiseModel::noiseless(),
            &DensityMatrix::zero(2).unwrap(),
        )
        .unwrap();
        let mut rho = DensityMatrix::zero(2).unwrap();
        for g in &circ.gates {
            rho.apply_unitary(g).unwrap();
        }
        assert_eq!(pure, rho);
    }

    #[test]
    fn two_qubit_depolarizing_closed_form() {
        // CX from |00⟩ stays |00⟩; D_p gives P(00) = 1 − 3p/4
        let p = 0.01;
        let noise = NoiseModel { p1: 0.0, p2: p, p_ro: 0.0 };
        let mut circ = Circuit::new(2);
        circ.push(Gate::cx(0, 1));
        let rho = run_density(&circ, &noise, &DensityMatrix::zero(2).unwrap()).unwrap();
        let probs = rho.diagonal_probabilities();
        assert!((probs[0] - (1.0 - 0.75 * p)).abs() < 1e-12);
    }

    #[test]
    fn readout_zero_flip_is_plain_sampling() {
        let rho = DensityMatrix::zero(2).unwrap();
        let counts = readout_sample(&rho, 1000, 0.0, 5).unwrap();
        assert_eq!(counts.get(&0), Some(&1000));
    }

    #[test]
    fn readout_certain_flip_inverts_bits() {
        let rho = DensityMatrix::zero(2).unwrap();
        let counts = readout_sample(&rho, 500, 1.0, 5).unwrap();
        assert_eq!(counts.get(&3), Some(&500));
    }

    #[test]
    fn readout_half_flip_is_unbiased() {
        let rho = DensityMatrix::zero(1).unwrap();
        let counts = readout_sample(&rho, 1_000_000, 0.5, 99).unwrap();
        let frac = *counts.get(&1).unwrap_or(&0) as f64 / 1e6;
        assert!((0.497..=0.503).contains(&frac), "frac = {frac}");
    }

    #[test]
    fn turning_point_rules() {
        assert_eq!(
            fit_turning_point(&[(0, 0.5), (1, 0.3), (2, 0.2), (3, 0.1)]).unwrap(),
            3
        );
        assert_eq!(
            fit_turning_point(&[(0, 0.1), (1, 0.05), (2, 0.04), (3, 0.06)]).unwrap(),
            2
        );
        // tie goes to the smaller m
        assert_eq!(fit_turning_point(&[(0, 0.2), (1, 0.2)]).unwrap(), 0);
        assert!(matches!(fit_turning_point(&[]), Err(NoiseError::EmptyCurve)));
    }

    #[test]
    fn parameter_validation() {
        assert!(NoiseModel { p1: 0.0, p2: 1.5, p_ro: 0.0 }.validate().is_err());
        assert!(NoiseModel::default_calibrated().validate().is_ok());
        assert!(NoiseModel::noiseless().is_noiseless());
    }
}
