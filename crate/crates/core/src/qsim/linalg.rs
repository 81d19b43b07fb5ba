//! Dense complex-matrix helpers: full circuit unitaries, phase-insensitive
//! comparison, and a small Hermitian eigensolver used by the density-matrix
//! positivity checks.

use ndarray::Array2;
use num_complex::Complex64;

use super::circuit::Circuit;
use super::error::SimError;
use super::gate::Gate;

/// Hard cap for dense unitary construction (2⁸ × 2⁸).
pub const MAX_UNITARY_QUBITS: usize = 8;

/// Full 2ⁿ×2ⁿ matrix of a circuit (n ≤ 8), as the ordered product of gate
/// embeddings.
pub fn unitary_of(circuit: &Circuit) -> Result<Array2<Complex64>, SimError> {
    if circuit.width == 0 || circuit.width > MAX_UNITARY_QUBITS {
        return Err(SimError::WidthTooLarge {
            width: circuit.width,
            max: MAX_UNITARY_QUBITS,
            what: "dense unitary",
        });
    }
    let dim = 1usize << circuit.width;
    let mut u = Array2::eye(dim);
    for gate in &circuit.gates {
        gate.validate(circuit.width)?;
        apply_gate_left(&mut u, gate);
    }
    Ok(u)
}

/// Left-multiplies `mat` by the embedding of `gate`: every column is treated
/// as a statevector.
pub fn apply_gate_left(mat: &mut Array2<Complex64>, gate: &Gate) {
    apply_gate_embedded(mat.view_mut(), gate, false);
}

/// Applies the gate embedding along axis 0 of an arbitrary view, optionally
/// with the conjugated gate matrix. Right-multiplication by `U†` is this on
/// the transposed view with `conj = true`.
pub(crate) fn apply_gate_embedded(
    mut mat: ndarray::ArrayViewMut2<Complex64>,
    gate: &Gate,
    conj: bool,
) {
    let dim = mat.nrows();
    let cols = mat.ncols();
    let cj = |z: Complex64| if conj { z.conj() } else { z };
    if let Some(m) = gate.matrix_1q() {
        let bit = 1usize << gate.qubits[0];
        for col in 0..cols {
            for base in 0..dim {
                if base & bit == 0 {
                    let a = mat[[base, col]];
                    let b = mat[[base | bit, col]];
                    mat[[base, col]] = cj(m[0][0]) * a + cj(m[0][1]) * b;
                    mat[[base | bit, col]] = cj(m[1][0]) * a + cj(m[1][1]) * b;
                }
            }
        }
    } else {
        let m = gate.matrix_2q().expect("gate arity");
        let bit0 = 1usize << gate.qubits[0];
        let bit1 = 1usize << gate.qubits[1];
        for col in 0..cols {
            for base in 0..dim {
                if base & (bit0 | bit1) == 0 {
                    let idx = [base, base | bit0, base | bit1, base | bit0 | bit1];
                    let v = [
                        mat[[idx[0], col]],
                        mat[[idx[1], col]],
                        mat[[idx[2], col]],
                        mat[[idx[3], col]],
                    ];
                    for (r, &i) in idx.iter().enumerate() {
                        mat[[i, col]] = cj(m[r][0]) * v[0]
                            + cj(m[r][1]) * v[1]
                            + cj(m[r][2]) * v[2]
                            + cj(m[r][3]) * v[3];
                    }
                }
            }
        }
    }
}

pub fn dagger(m: &Array2<Complex64>) -> Array2<Complex64> {
    m.t().mapv(|z| z.conj())
}

pub fn max_abs_diff(a: &Array2<Complex64>, b: &Array2<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest elementwise deviation between `a` and `e^{iφ}·b`, with φ recovered
/// from the first entry of `b` whose magnitude exceeds 1e-8.
pub fn phase_aligned_max_diff(a: &Array2<Complex64>, b: &Array2<Complex64>) -> f64 {
    let anchor = b.iter().zip(a.iter()).find(|(bz, _)| bz.norm() > 1e-8);
    let phase = match anchor {
        Some((bz, az)) => {
            let ratio = az / bz;
            let n = ratio.norm();
            if n > 1e-12 {
                ratio / n
            } else {
                Complex64::new(1.0, 0.0)
            }
        }
        None => Complex64::new(1.0, 0.0),
    };
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - phase * y).norm())
        .fold(0.0, f64::max)
}

/// Deviation of `u` from unitarity: max |u·u† − I|.
pub fn unitarity_error(u: &Array2<Complex64>) -> f64 {
    let prod = u.dot(&dagger(u));
    let eye: Array2<Complex64> = Array2::eye(u.nrows());
    max_abs_diff(&prod, &eye)
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
/// ascending. Intended for the small matrices the density backend produces.
pub fn hermitian_eigenvalues(a: &Array2<Complex64>) -> Vec<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix must be square");
    let mut m = a.clone();
    let scale: f64 = m.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(m[[p, q]].norm());
            }
        }
        if off < 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[[p, q]];
                if apq.norm() < 1e-300 {
                    continue;
                }
                let app = m[[p, p]].re;
                let aqq = m[[q, q]].re;
                let phase = apq / apq.norm();
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // 2×2 rotation G = diag(1, e^{−iφ})·[[c, s], [−s, c]] zeroes the
                // (p,q) pivot of G†·A·G; apply A←A·G on columns, then A←G†·A on rows.
                for r in 0..n {
                    let mp = m[[r, p]];
                    let mq = m[[r, q]];
                    m[[r, p]] = c * mp - s * phase.conj() * mq;
                    m[[r, q]] = s * mp + c * phase.conj() * mq;
                }
                for col in 0..n {
                    let mp = m[[p, col]];
                    let mq = m[[q, col]];
                    m[[p, col]] = c * mp - s * phase * mq;
                    m[[q, col]] = s * mp + c * phase * mq;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| m[[i, i]].re).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}
