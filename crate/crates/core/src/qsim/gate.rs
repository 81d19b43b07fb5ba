use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::error::SimError;

/// Gate vocabulary understood by the simulator and transpiler.
///
/// `Rbs(θ)` is the two-qubit "reconfigurable beam splitter" rotation: identity
/// on `|00⟩` and `|11⟩`, and the real rotation `[[cosθ, sinθ], [−sinθ, cosθ]]`
/// on the span of `|01⟩`/`|10⟩`, where the first listed qubit plays the `|01⟩`
/// role (the state in which exactly that qubit is 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GateKind {
    X,
    Z,
    H,
    Sx,
    Rx,
    Ry,
    Rz,
    Cx,
    Cz,
    Rbs,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::X | GateKind::Z | GateKind::H | GateKind::Sx => 1,
            GateKind::Rx | GateKind::Ry | GateKind::Rz => 1,
            GateKind::Cx | GateKind::Cz | GateKind::Rbs => 2,
        }
    }

    pub fn is_parametric(self) -> bool {
        matches!(
            self,
            GateKind::Rx | GateKind::Ry | GateKind::Rz | GateKind::Rbs
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::Z => "Z",
            GateKind::H => "H",
            GateKind::Sx => "SX",
            GateKind::Rx => "RX",
            GateKind::Ry => "RY",
            GateKind::Rz => "RZ",
            GateKind::Cx => "CX",
            GateKind::Cz => "CZ",
            GateKind::Rbs => "RBS",
        }
    }
}

impl std::fmt::Display for GateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One gate instance: a kind, the qubits it acts on, and an optional angle.
///
/// Qubit order matters for `Cx` (control first, target second) and `Rbs`
/// (first qubit takes the `|01⟩` role of the rotation block).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<f64>,
}

impl Gate {
    pub fn x(q: usize) -> Self {
        Gate { kind: GateKind::X, qubits: vec![q], param: None }
    }

    pub fn z(q: usize) -> Self {
        Gate { kind: GateKind::Z, qubits: vec![q], param: None }
    }

    pub fn h(q: usize) -> Self {
        Gate { kind: GateKind::H, qubits: vec![q], param: None }
    }

    pub fn sx(q: usize) -> Self {
        Gate { kind: GateKind::Sx, qubits: vec![q], param: None }
    }

    pub fn rx(q: usize, theta: f64) -> Self {
        Gate { kind: GateKind::Rx, qubits: vec![q], param: Some(theta) }
    }

    pub fn ry(q: usize, theta: f64) -> Self {
        Gate { kind: GateKind::Ry, qubits: vec![q], param: Some(theta) }
    }

    pub fn rz(q: usize, theta: f64) -> Self {
        Gate { kind: GateKind::Rz, qubits: vec![q], param: Some(theta) }
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Gate { kind: GateKind::Cx, qubits: vec![control, target], param: None }
    }

    pub fn cz(a: usize, b: usize) -> Self {
        Gate { kind: GateKind::Cz, qubits: vec![a, b], param: None }
    }

    pub fn rbs(a: usize, b: usize, theta: f64) -> Self {
        Gate { kind: GateKind::Rbs, qubits: vec![a, b], param: Some(theta) }
    }

    /// Angle of a parametric gate; 0.0 for non-parametric kinds.
    pub fn angle(&self) -> f64 {
        self.param.unwrap_or(0.0)
    }

    pub fn validate(&self, width: usize) -> Result<(), SimError> {
        if self.qubits.len() != self.kind.arity() {
            return Err(SimError::WrongQubitCount {
                kind: self.kind,
                expected: self.kind.arity(),
                got: self.qubits.len(),
            });
        }
        for &q in &self.qubits {
            if q >= width {
                return Err(SimError::QubitOutOfRange { qubit: q, width });
            }
        }
        if self.qubits.len() == 2 && self.qubits[0] == self.qubits[1] {
            return Err(SimError::DuplicateQubits { qubit: self.qubits[0] });
        }
        match (self.kind.is_parametric(), self.param.is_some()) {
            (true, false) => Err(SimError::MissingParam { kind: self.kind }),
            (false, true) => Err(SimError::UnexpectedParam { kind: self.kind }),
            _ => Ok(()),
        }
    }

    /// Exact inverse as a gate sequence (time order). All kinds invert within
    /// the gate set; `Sx` needs three copies since `Sx⁴ = I`.
    pub fn inverse_gates(&self) -> Vec<Gate> {
        match self.kind {
            GateKind::X | GateKind::Z | GateKind::H | GateKind::Cx | GateKind::Cz => {
                vec![self.clone()]
            }
            GateKind::Sx => vec![self.clone(), self.clone(), self.clone()],
            GateKind::Rx | GateKind::Ry | GateKind::Rz | GateKind::Rbs => vec![Gate {
                kind: self.kind,
                qubits: self.qubits.clone(),
                param: Some(-self.angle()),
            }],
        }
    }

    /// Dense 2×2 matrix of a single-qubit gate.
    pub fn matrix_1q(&self) -> Option<[[Complex64; 2]; 2]> {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let t = self.angle();
        let m = match self.kind {
            GateKind::X => [[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]],
            GateKind::Z => [[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]],
            GateKind::H => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                [[c(s, 0.), c(s, 0.)], [c(s, 0.), c(-s, 0.)]]
            }
            GateKind::Sx => [
                [c(0.5, 0.5), c(0.5, -0.5)],
                [c(0.5, -0.5), c(0.5, 0.5)],
            ],
            GateKind::Rx => {
                let (sn, cs) = (t / 2.0).sin_cos();
                [[c(cs, 0.), c(0., -sn)], [c(0., -sn), c(cs, 0.)]]
            }
            GateKind::Ry => {
                let (sn, cs) = (t / 2.0).sin_cos();
                [[c(cs, 0.), c(-sn, 0.)], [c(sn, 0.), c(cs, 0.)]]
            }
            GateKind::Rz => {
                let (sn, cs) = (t / 2.0).sin_cos();
                [[c(cs, -sn), c(0., 0.)], [c(0., 0.), c(cs, sn)]]
            }
            _ => return None,
        };
        Some(m)
    }

    /// Dense 4×4 matrix of a two-qubit gate. Index convention within the
    /// pair: `idx = bit(qubits[0]) + 2·bit(qubits[1])`.
    pub fn matrix_2q(&self) -> Option<[[Complex64; 4]; 4]> {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let mut m = [[zero; 4]; 4];
        match self.kind {
            GateKind::Cx => {
                // control = qubits[0] (pair bit 0), target = qubits[1] (pair bit 1)
                m[0][0] = one;
                m[2][2] = one;
                m[3][1] = one;
                m[1][3] = one;
            }
            GateKind::Cz => {
                m[0][0] = one;
                m[1][1] = one;
                m[2][2] = one;
                m[3][3] = -one;
            }
            GateKind::Rbs => {
                let (sn, cs) = self.angle().sin_cos();
                m[0][0] = one;
                m[3][3] = one;
                m[1][1] = Complex64::new(cs, 0.0);
                m[1][2] = Complex64::new(sn, 0.0);
                m[2][1] = Complex64::new(-sn, 0.0);
                m[2][2] = Complex64::new(cs, 0.0);
            }
            _ => return None,
        }
        Some(m)
    }
}
