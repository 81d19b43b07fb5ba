use serde::{Deserialize, Serialize};

use super::error::SimError;
use super::gate::Gate;

/// Ordered gate list over a fixed number of qubits — the IR shared by the
/// simulator, loader, and transpiler.
///
/// Serialization is the interchange schema
/// `{"width": n, "gates": [{"kind": "...", "qubits": [...], "param": x?}]}`,
/// and round-trips bit-exactly (angles included).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub width: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Circuit { width, gates: Vec::new() }
    }

    pub fn push(&mut self, gate: Gate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> &mut Self {
        self.gates.extend(gates);
        self
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn validate(&self) -> Result<(), SimError> {
        for g in &self.gates {
            g.validate(self.width)?;
        }
        Ok(())
    }

    /// Exact inverse circuit: gates reversed, each inverted.
    pub fn adjoint(&self) -> Circuit {
        let mut gates = Vec::with_capacity(self.gates.len());
        for g in self.gates.iter().rev() {
            gates.extend(g.inverse_gates());
        }
        Circuit { width: self.width, gates }
    }

    /// Number of gates of each kind, in a fixed kind order.
    pub fn count_kind(&self, kind: super::gate::GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind == kind).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("circuit serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::gate::GateKind;

    #[test]
    fn json_round_trip_is_bit_exact() {
        let mut c = Circuit::new(3);
        c.push(Gate::x(0))
            .push(Gate::rbs(0, 2, 0.123456789012345678))
            .push(Gate::rz(1, -std::f64::consts::PI / 7.0))
            .push(Gate::cx(2, 1));
        let s = c.to_json();
        let back = Circuit::from_json(&s).unwrap();
        assert_eq!(c, back);
        // angles must survive exactly, not approximately
        assert_eq!(
            c.gates[1].param.unwrap().to_bits(),
            back.gates[1].param.unwrap().to_bits()
        );
    }

    #[test]
    fn param_field_is_omitted_for_fixed_gates() {
        let mut c = Circuit::new(1);
        c.push(Gate::x(0));
        assert!(!c.to_json().contains("param"));
    }

    #[test]
    fn adjoint_reverses_and_inverts() {
        let mut c = Circuit::new(2);
        c.push(Gate::x(0)).push(Gate::rbs(0, 1, 0.4)).push(Gate::sx(1));
        let adj = c.adjoint();
        // sx expands to three copies
        assert_eq!(adj.len(), 5);
        assert_eq!(adj.gates[0].kind, GateKind::Sx);
        assert_eq!(adj.gates[3].param, Some(-0.4));
        assert_eq!(adj.gates[4], Gate::x(0));
    }
}
