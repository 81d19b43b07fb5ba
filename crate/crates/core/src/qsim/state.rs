use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::circuit::Circuit;
use super::error::SimError;
use super::gate::{Gate, GateKind};

/// Hard cap for the statevector backend (2¹² amplitudes).
pub const MAX_STATEVECTOR_QUBITS: usize = 12;

const NORM_TOL: f64 = 1e-10;

/// Exact pure state: 2ⁿ complex amplitudes.
///
/// Basis convention throughout the crate: qubit 0 is the least significant
/// bit of the basis index, so `|0001⟩` on four qubits is index 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    width: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// `|0…0⟩` on `width` qubits.
    pub fn zero(width: usize) -> Result<Self, SimError> {
        Self::basis(width, 0)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(width: usize, index: usize) -> Result<Self, SimError> {
        check_width(width)?;
        let dim = 1usize << width;
        if index >= dim {
            return Err(SimError::QubitOutOfRange { qubit: index, width });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Statevector { width, amps })
    }

    /// Wrap an amplitude vector; must be a normalized power-of-two length.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, SimError> {
        let len = amps.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(SimError::BadLength { len });
        }
        let width = len.trailing_zeros() as usize;
        check_width(width)?;
        let norm2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > NORM_TOL {
            return Err(SimError::NotNormalized { norm2, tol: NORM_TOL });
        }
        Ok(Statevector { width, amps })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// In-place gate application over strided amplitude pairs.
    pub fn apply(&mut self, gate: &Gate) -> Result<(), SimError> {
        gate.validate(self.width)?;
        match gate.kind {
            GateKind::X => self.kernel_x(gate.qubits[0]),
            GateKind::Z => self.kernel_phase_flip(1usize << gate.qubits[0], 0),
            GateKind::Cz => self.kernel_phase_flip(
                1usize << gate.qubits[0],
                1usize << gate.qubits[1],
            ),
            GateKind::Cx => self.kernel_cx(gate.qubits[0], gate.qubits[1]),
            GateKind::Rbs => self.kernel_rbs(gate.qubits[0], gate.qubits[1], gate.angle()),
            _ => self.kernel_1q(gate.qubits[0], &gate.matrix_1q().expect("1q kind")),
        }
        Ok(())
    }

    fn kernel_x(&mut self, q: usize) {
        let bit = 1usize << q;
        for base in pair_bases(self.width, bit) {
            self.amps.swap(base, base | bit);
        }
    }

    /// Negates amplitudes of indices where all `mask` bits are 1.
    /// `Z` uses a single bit; `CZ` passes both bits via `mask | mask2`.
    fn kernel_phase_flip(&mut self, mask: usize, mask2: usize) {
        let full = mask | mask2;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & full == full {
                *a = -*a;
            }
        }
    }

    fn kernel_cx(&mut self, control: usize, target: usize) {
        let cbit = 1usize << control;
        let tbit = 1usize << target;
        for i in 0..self.amps.len() {
            if i & cbit == cbit && i & tbit == 0 {
                self.amps.swap(i, i | tbit);
            }
        }
    }

    fn kernel_rbs(&mut self, a: usize, b: usize, theta: f64) {
        let (sn, cs) = theta.sin_cos();
        let abit = 1usize << a;
        let bbit = 1usize << b;
        for i in 0..self.amps.len() {
            // visit each {|a=1,b=0⟩, |a=0,b=1⟩} pair once, keyed by the a-side
            if i & abit == abit && i & bbit == 0 {
                let j = (i & !abit) | bbit;
                let (u, v) = (self.amps[i], self.amps[j]);
                self.amps[i] = cs * u + sn * v;
                self.amps[j] = -sn * u + cs * v;
            }
        }
    }

    fn kernel_1q(&mut self, q: usize, m: &[[Complex64; 2]; 2]) {
        let bit = 1usize << q;
        for base in pair_bases(self.width, bit) {
            let (a, b) = (self.amps[base], self.amps[base | bit]);
            self.amps[base] = m[0][0] * a + m[0][1] * b;
            self.amps[base | bit] = m[1][0] * a + m[1][1] * b;
        }
    }
}

fn check_width(width: usize) -> Result<(), SimError> {
    if width == 0 || width > MAX_STATEVECTOR_QUBITS {
        return Err(SimError::WidthTooLarge {
            width,
            max: MAX_STATEVECTOR_QUBITS,
            what: "statevector",
        });
    }
    Ok(())
}

/// Iterator over all basis indices with the given bit cleared.
fn pair_bases(width: usize, bit: usize) -> impl Iterator<Item = usize> {
    (0..1usize << width).filter(move |i| i & bit == 0)
}

/// Applies `gate` to a copy of `state`.
pub fn apply_gate(state: &Statevector, gate: &Gate) -> Result<Statevector, SimError> {
    let mut out = state.clone();
    out.apply(gate)?;
    Ok(out)
}

/// Runs every gate of `circuit` on `initial`, left to right.
pub fn run(circuit: &Circuit, initial: &Statevector) -> Result<Statevector, SimError> {
    if circuit.width != initial.width() {
        return Err(SimError::WidthMismatch {
            circuit: circuit.width,
            state: initial.width(),
        });
    }
    let mut state = initial.clone();
    for gate in &circuit.gates {
        state.apply(gate)?;
    }
    Ok(state)
}

/// Born-rule probabilities, indexed by basis state. Sums to 1 within 1e-10
/// for a normalized input.
pub fn probabilities(state: &Statevector) -> Vec<f64> {
    state.amplitudes().iter().map(|a| a.norm_sqr()).collect()
}

/// Multinomial shot sampling, deterministic per seed.
pub fn sample(
    state: &Statevector,
    shots: u64,
    seed: u64,
) -> Result<BTreeMap<usize, u64>, SimError> {
    let probs = probabilities(state);
    sample_distribution(&probs, shots, seed)
}

/// Draws `shots` outcomes from an explicit distribution (shared by the
/// statevector and density-matrix paths).
pub fn sample_distribution(
    probs: &[f64],
    shots: u64,
    seed: u64,
) -> Result<BTreeMap<usize, u64>, SimError> {
    if shots == 0 {
        return Err(SimError::ZeroShots);
    }
    let mut cdf = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for &p in probs {
        acc += p.max(0.0);
        cdf.push(acc);
    }
    let total = acc;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for _ in 0..shots {
        let u: f64 = rng.random::<f64>() * total;
        let idx = match cdf.binary_search_by(|c| c.partial_cmp(&u).unwrap()) {
            Ok(i) => i + 1,
            Err(i) => i,
        };
        *counts.entry(idx.min(probs.len() - 1)).or_insert(0) += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn x_flips_qubit_zero_as_lsb() {
        let mut circ = Circuit::new(2);
        circ.push(Gate::x(0));
        let out = run(&circ, &Statevector::zero(2).unwrap()).unwrap();
        // |00⟩ → |01⟩, basis index 1
        assert_eq!(out.amplitudes()[1], c(1.0, 0.0));
    }

    #[test]
    fn empty_circuit_is_identity() {
        let init = Statevector::basis(3, 5).unwrap();
        let out = run(&Circuit::new(3), &init).unwrap();
        assert_eq!(out, init);
    }

    #[test]
    fn rbs_on_01_matches_row_convention() {
        // RBS(θ)|01⟩ = cosθ|01⟩ − sinθ|10⟩
        let theta = 0.7;
        let mut state = Statevector::basis(2, 1).unwrap();
        state.apply(&Gate::rbs(0, 1, theta)).unwrap();
        assert!((state.amplitudes()[1] - c(theta.cos(), 0.0)).norm() < 1e-15);
        assert!((state.amplitudes()[2] - c(-theta.sin(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rbs_zero_angle_is_identity() {
        let mut state = Statevector::from_amplitudes(vec![
            c(0.5, 0.0),
            c(0.5, 0.0),
            c(0.5, 0.0),
            c(0.5, 0.0),
        ])
        .unwrap();
        let before = state.clone();
        state.apply(&Gate::rbs(0, 1, 0.0)).unwrap();
        assert_eq!(state, before);
    }

    #[test]
    fn rbs_half_pi_sends_01_to_minus_10() {
        // oracle: direct 4×4 matrix-vector product
        let g = Gate::rbs(0, 1, FRAC_PI_2);
        let m = g.matrix_2q().unwrap();
        let input = [c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)];
        let mut expect = [c(0., 0.); 4];
        for (r, row) in m.iter().enumerate() {
            for (k, e) in row.iter().enumerate() {
                expect[r] += e * input[k];
            }
        }
        let mut state = Statevector::basis(2, 1).unwrap();
        state.apply(&g).unwrap();
        for i in 0..4 {
            assert!((state.amplitudes()[i] - expect[i]).norm() < 1e-15);
        }
        assert!((state.amplitudes()[2] - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn probabilities_of_bell_state() {
        let mut state = Statevector::zero(2).unwrap();
        state.apply(&Gate::h(0)).unwrap();
        state.apply(&Gate::cx(0, 1)).unwrap();
        let p = probabilities(&state);
        assert!((p[0] - 0.5).abs() < 1e-12);
        assert!((p[3] - 0.5).abs() < 1e-12);
        assert!(p[1].abs() < 1e-15 && p[2].abs() < 1e-15);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn sample_is_deterministic_and_conserves_shots() {
        let state = Statevector::zero(2).unwrap();
        let counts = sample(&state, 100, 7).unwrap();
        assert_eq!(counts.get(&0), Some(&100));

        let mut plus = Statevector::zero(1).unwrap();
        plus.apply(&Gate::h(0)).unwrap();
        let a = sample(&plus, 5000, 42).unwrap();
        let b = sample(&plus, 5000, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.values().sum::<u64>(), 5000);
    }

    #[test]
    fn sample_uniform_qubit_large_shot_bound() {
        let mut plus = Statevector::zero(1).unwrap();
        plus.apply(&Gate::h(0)).unwrap();
        let counts = sample(&plus, 1_000_000, 20260810).unwrap();
        let frac = *counts.get(&1).unwrap() as f64 / 1e6;
        // 3σ binomial band around 0.5
        assert!((0.497..=0.503).contains(&frac), "frac = {frac}");
    }

    #[test]
    fn zero_shots_is_an_error() {
        let state = Statevector::zero(1).unwrap();
        assert!(matches!(sample(&state, 0, 1), Err(SimError::ZeroShots)));
    }

    #[test]
    fn norm_is_preserved_by_random_circuit() {
        let mut state = Statevector::zero(3).unwrap();
        let gates = [
            Gate::h(0),
            Gate::rx(1, 0.3),
            Gate::cx(0, 2),
            Gate::rbs(1, 2, 1.1),
            Gate::rz(2, -2.2),
            Gate::sx(0),
            Gate::cz(0, 1),
            Gate::ry(1, PI / 5.0),
        ];
        for g in &gates {
            state.apply(g).unwrap();
        }
        assert!((state.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn width_mismatch_and_range_errors() {
        let state = Statevector::zero(2).unwrap();
        let mut big = Circuit::new(3);
        big.push(Gate::x(2));
        assert!(matches!(
            run(&big, &state),
            Err(SimError::WidthMismatch { .. })
        ));
        assert!(matches!(
            apply_gate(&state, &Gate::x(5)),
            Err(SimError::QubitOutOfRange { .. })
        ));
    }

    #[test]
    fn statevector_width_cap() {
        assert!(Statevector::zero(12).is_ok());
        assert!(matches!(
            Statevector::zero(13),
            Err(SimError::WidthTooLarge { .. })
        ));
    }
}
