//! Qubit registers: labeled density matrices, qubit Hamiltonians, partial
//! swap gates, gate application on named subsystems, and partial trace.
//!
//! Basis convention: each qubit uses the ordered basis {|0>, |1>} with |1>
//! the higher energy level, so sigma_z = diag(-1, +1). In a register the
//! leftmost label is the most significant qubit.

use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::{kron, hermitian_eig, ComplexMatrix};
use crate::Error;

/// Subsystem tag: the system qubit or one reservoir ancilla, identified by
/// (reservoir index, collision index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    System,
    Ancilla { reservoir: usize, collision: usize },
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::System => write!(f, "S"),
            Label::Ancilla { reservoir, collision } => write!(f, "R{reservoir}_{collision}"),
        }
    }
}

/// Single-qubit Hamiltonian (omega/2) sigma_z, with hbar = 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitHamiltonian {
    pub omega: f64,
}

impl QubitHamiltonian {
    pub fn new(omega: f64) -> Self {
        QubitHamiltonian { omega }
    }

    /// diag(-omega/2, +omega/2) in the ordered basis {|0>, |1>}.
    pub fn matrix(&self) -> ComplexMatrix {
        ComplexMatrix::diag(&[-self.omega / 2.0, self.omega / 2.0])
    }
}

/// Hermitian, PSD, unit-trace state of a labeled multi-qubit register.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    labels: Vec<Label>,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Wraps a matrix as a state, checking Hermiticity, unit trace and
    /// positivity to the stated tolerances.
    pub fn new(labels: Vec<Label>, matrix: ComplexMatrix) -> Result<Self, Error> {
        let expected = 1usize << labels.len();
        if matrix.dim() != expected {
            return Err(Error::DimensionMismatch { left: matrix.dim(), right: expected });
        }
        let state = DensityMatrix { labels, matrix };
        state.validate()?;
        Ok(state)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !self.matrix.is_finite() {
            return Err(Error::InvalidState("non-finite entries".into()));
        }
        let herm = self.matrix.hermiticity_defect();
        if herm > 1e-10 {
            return Err(Error::InvalidState(format!("hermiticity defect {herm:.3e}")));
        }
        let tr = self.matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > 1e-10 {
            return Err(Error::InvalidState(format!("trace {tr}")));
        }
        let eig = hermitian_eig(&self.matrix)?;
        if eig.eigenvalues[0] < -1e-10 {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {:.3e}",
                eig.eigenvalues[0]
            )));
        }
        Ok(())
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    fn label_position(&self, label: Label) -> Result<usize, Error> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(Error::UnknownLabel(label.to_string()))
    }
}

/// Thermal Gibbs state of one qubit: diag(p0, p1) with p0 = e^{+beta w/2}/Z.
pub fn thermal_qubit(beta: f64, h: QubitHamiltonian, label: Label) -> Result<DensityMatrix, Error> {
    if !beta.is_finite() || beta <= 0.0 {
        return Err(Error::InvalidState(format!("inverse temperature {beta}")));
    }
    let x = beta * h.omega / 2.0;
    let z = 2.0 * x.cosh();
    let p0 = x.exp() / z;
    let p1 = (-x).exp() / z;
    DensityMatrix::new(vec![label], ComplexMatrix::diag(&[p0, p1]))
}

/// Two-qubit partial swap: (cos θ) I + i (sin θ) SWAP, with the global phase
/// e^{iθ} kept verbatim on the |00> and |11> corners.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartialSwapGate {
    strength: f64,
}

impl PartialSwapGate {
    pub fn new(strength: f64) -> Result<Self, Error> {
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&strength) {
            return Err(Error::StrengthOutOfRange(strength));
        }
        Ok(PartialSwapGate { strength })
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    /// 4x4 matrix in the ordered basis {|00>, |01>, |10>, |11>}.
    pub fn matrix(&self) -> ComplexMatrix {
        let th = self.strength;
        let (c, s) = (th.cos(), th.sin());
        let mut u = ComplexMatrix::zeros(4);
        let corner = Complex64::new(c, s); // e^{i theta}
        u[(0, 0)] = corner;
        u[(3, 3)] = corner;
        u[(1, 1)] = Complex64::new(c, 0.0);
        u[(2, 2)] = Complex64::new(c, 0.0);
        u[(1, 2)] = Complex64::new(0.0, s);
        u[(2, 1)] = Complex64::new(0.0, s);
        u
    }
}

/// Convenience constructor matching the protocol vocabulary.
pub fn partial_swap(strength: f64) -> Result<PartialSwapGate, Error> {
    PartialSwapGate::new(strength)
}

/// Embed a two-qubit gate acting on labeled qubits (a, b) into the full
/// register and conjugate the state: U rho U†.
pub fn apply_gate(
    state: &DensityMatrix,
    gate: &PartialSwapGate,
    a: Label,
    b: Label,
) -> Result<DensityMatrix, Error> {
    if a == b {
        return Err(Error::UnknownLabel(format!("duplicate label {a}")));
    }
    let pa = state.label_position(a)?;
    let pb = state.label_position(b)?;
    let k = state.num_qubits();
    let dim = 1usize << k;
    let g = gate.matrix();

    // bit shift for position i: leftmost label is most significant
    let shift = |pos: usize| k - 1 - pos;
    let (sa, sb) = (shift(pa), shift(pb));

    let mut u = ComplexMatrix::zeros(dim);
    for r in 0..dim {
        let ra = (r >> sa) & 1;
        let rb = (r >> sb) & 1;
        for ca in 0..2usize {
            for cb in 0..2usize {
                let gij = g[(ra * 2 + rb, ca * 2 + cb)];
                if gij.norm_sqr() == 0.0 {
                    continue;
                }
                let col = (r & !(1 << sa) & !(1 << sb)) | (ca << sa) | (cb << sb);
                u[(r, col)] = gij;
            }
        }
    }
    let rho = u.mul(state.matrix())?.mul(&u.dagger())?;
    Ok(DensityMatrix { labels: state.labels.clone(), matrix: rho })
}

/// Partial trace over the given labels; remaining label order is preserved.
pub fn partial_trace(state: &DensityMatrix, discard: &[Label]) -> Result<DensityMatrix, Error> {
    for &d in discard {
        state.label_position(d)?;
    }
    let keep: Vec<usize> = (0..state.num_qubits())
        .filter(|&i| !discard.contains(&state.labels[i]))
        .collect();
    if keep.is_empty() {
        return Err(Error::InvalidState("cannot trace out every label".into()));
    }
    if keep.len() == state.num_qubits() {
        return Err(Error::InvalidState("empty discard set".into()));
    }
    let traced: Vec<usize> = (0..state.num_qubits())
        .filter(|&i| discard.contains(&state.labels[i]))
        .collect();

    let k = state.num_qubits();
    let shift = |pos: usize| k - 1 - pos;
    let kd = keep.len();
    let out_dim = 1usize << kd;

    // Map reduced index bits back into full-register bit positions.
    let expand = |idx: usize, positions: &[usize]| -> usize {
        let mut full = 0usize;
        for (bit, &pos) in positions.iter().enumerate() {
            let b = (idx >> (positions.len() - 1 - bit)) & 1;
            full |= b << shift(pos);
        }
        full
    };

    let mut out = ComplexMatrix::zeros(out_dim);
    let tn = 1usize << traced.len();
    for i in 0..out_dim {
        let fi = expand(i, &keep);
        for j in 0..out_dim {
            let fj = expand(j, &keep);
            let mut sum = Complex64::new(0.0, 0.0);
            for t in 0..tn {
                let ft = expand(t, &traced);
                sum += state.matrix[(fi | ft, fj | ft)];
            }
            out[(i, j)] = sum;
        }
    }
    let labels = keep.iter().map(|&i| state.labels[i]).collect();
    Ok(DensityMatrix { labels, matrix: out })
}

/// Tensor product with a fresh register; fresh labels are appended after the
/// existing ones (least significant side).
pub fn attach(state: &DensityMatrix, fresh: &DensityMatrix) -> Result<DensityMatrix, Error> {
    for l in fresh.labels() {
        if state.labels.contains(l) {
            return Err(Error::LabelCollision(l.to_string()));
        }
    }
    let matrix = kron(state.matrix(), fresh.matrix())?;
    let mut labels = state.labels.clone();
    labels.extend_from_slice(fresh.labels());
    Ok(DensityMatrix { labels, matrix })
}
