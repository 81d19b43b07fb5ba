use ndarray::Array2;
use num_complex::Complex64;

use super::circuit::Circuit;
use super::error::SimError;
use super::gate::Gate;
use super::linalg::{self, hermitian_eigenvalues};
use super::state::Statevector;
use crate::noise::NoiseModel;

/// Hard cap for the density-matrix backend. The experiments need 4 qubits;
/// 6 leaves headroom without letting 2ⁿ×2ⁿ grow past 64×64.
pub const MAX_DENSITY_QUBITS: usize = 6;

/// Exact mixed state: a 2ⁿ×2ⁿ density operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    width: usize,
    mat: Array2<Complex64>,
}

impl DensityMatrix {
    /// `|0…0⟩⟨0…0|` on `width` qubits.
    pub fn zero(width: usize) -> Result<Self, SimError> {
        if width == 0 || width > MAX_DENSITY_QUBITS {
            return Err(SimError::WidthTooLarge {
                width,
                max: MAX_DENSITY_QUBITS,
                what: "density matrix",
            });
        }
        let dim = 1usize << width;
        let mut mat = Array2::zeros((dim, dim));
        mat[[0, 0]] = Complex64::new(1.0, 0.0);
        Ok(DensityMatrix { width, mat })
    }

    /// Outer product `|ψ⟩⟨ψ|`.
    pub fn from_statevector(state: &Statevector) -> Result<Self, SimError> {
        let width = state.width();
        if width > MAX_DENSITY_QUBITS {
            return Err(SimError::WidthTooLarge {
                width,
                max: MAX_DENSITY_QUBITS,
                what: "density matrix",
            });
        }
        let amps = state.amplitudes();
        let dim = amps.len();
        let mut mat = Array2::zeros((dim, dim));
        for r in 0..dim {
            for c in 0..dim {
                mat[[r, c]] = amps[r] * amps[c].conj();
            }
        }
        Ok(DensityMatrix { width, mat })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.mat
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.diag().sum()
    }

    /// `ρ ← U ρ U†` for the gate's embedded unitary.
    pub fn apply_unitary(&mut self, gate: &Gate) -> Result<(), SimError> {
        gate.validate(self.width)?;
        linalg::apply_gate_embedded(self.mat.view_mut(), gate, false);
        linalg::apply_gate_embedded(self.mat.view_mut().reversed_axes(), gate, true);
        Ok(())
    }

    /// Depolarizing mix on a qubit subset:
    /// `ρ ← (1−p)·ρ + p·(I/2ʷ ⊗ tr_S ρ)` with `S` the given qubits.
    pub fn depolarize(&mut self, qubits: &[usize], p: f64) -> Result<(), SimError> {
        if p == 0.0 {
            return Ok(());
        }
        let mut mask = 0usize;
        for &q in qubits {
            if q >= self.width {
                return Err(SimError::QubitOutOfRange { qubit: q, width: self.width });
            }
            mask |= 1 << q;
        }
        let dim = self.mat.nrows();
        let w = qubits.len() as u32;
        let mixed_weight = p / f64::from(1 << w);
        // σ[rest_r, rest_c] = Σ_s ρ[(rest_r|s), (rest_c|s)], keyed by masked-out indices
        let mut sigma: Array2<Complex64> = Array2::zeros((dim, dim));
        for r in 0..dim {
            for c in 0..dim {
                if r & mask == c & mask {
                    sigma[[r & !mask, c & !mask]] += self.mat[[r, c]];
                }
            }
        }
        for r in 0..dim {
            for c in 0..dim {
                let keep = (1.0 - p) * self.mat[[r, c]];
                let mixed = if r & mask == c & mask {
                    mixed_weight * sigma[[r & !mask, c & !mask]]
                } else {
                    Complex64::new(0.0, 0.0)
                };
                self.mat[[r, c]] = keep + mixed;
            }
        }
        Ok(())
    }

    /// Diagonal as a probability vector (small negative float dust clamped).
    pub fn diagonal_probabilities(&self) -> Vec<f64> {
        self.mat.diag().iter().map(|z| z.re.max(0.0)).collect()
    }

    /// Partial trace down to a single qubit, as a 2×2 matrix.
    pub fn reduced_qubit(&self, q: usize) -> Result<[[Complex64; 2]; 2], SimError> {
        if q >= self.width {
            return Err(SimError::QubitOutOfRange { qubit: q, width: self.width });
        }
        let bit = 1usize << q;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..self.mat.nrows() {
            if i & bit == 0 {
                out[0][0] += self.mat[[i, i]];
                out[1][1] += self.mat[[i | bit, i | bit]];
                out[0][1] += self.mat[[i, i | bit]];
                out[1][0] += self.mat[[i | bit, i]];
            }
        }
        Ok(out)
    }

    /// Largest violations of the density-matrix invariants, for checks:
    /// (|tr−1|, hermiticity deviation, most negative eigenvalue).
    pub fn invariant_errors(&self) -> (f64, f64, f64) {
        let trace_err = (self.trace() - Complex64::new(1.0, 0.0)).norm();
        let herm = linalg::max_abs_diff(&self.mat, &linalg::dagger(&self.mat));
        let min_eig = hermitian_eigenvalues(&self.mat)
            .first()
            .copied()
            .unwrap_or(0.0);
        (trace_err, herm, min_eig)
    }
}

/// Runs a circuit on the density backend: each gate is applied as a channel,
/// unitary conjugation followed by the model's depolarizing term for that
/// gate class.
pub fn run_density(
    circuit: &Circuit,
    noise: &NoiseModel,
    initial: &DensityMatrix,
) -> Result<DensityMatrix, SimError> {
    if circuit.width != initial.width() {
        return Err(SimError::WidthMismatch {
            circuit: circuit.width,
            state: initial.width(),
        });
    }
    let mut rho = initial.clone();
    for gate in &circuit.gates {
        crate::noise::apply_channel(&mut rho, gate, noise)?;
    }
    Ok(rho)
}
