//! Dense statevector engine: `2^n` complex amplitudes with in-place gate
//! application over index pairs.
//!
//! Bit-ordering convention: qubit `i` is bit `i` of the amplitude index, so
//! qubit 0 is the least significant bit. Bitstrings rendered from amplitude
//! indices put the highest qubit leftmost.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Amplitude = Complex64;

/// Hard cap on register size: 2^24 complex doubles is 256 MiB.
pub const MAX_QUBITS: usize = 24;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// One gate application. MCX controls are kept sorted.
#[derive(Debug, Clone, PartialEq)]
pub enum GateOp {
    X(usize),
    H(usize),
    Ry { target: usize, angle: f64 },
    Mcx { controls: Vec<usize>, target: usize },
}

impl GateOp {
    pub fn mcx(mut controls: Vec<usize>, target: usize) -> Self {
        controls.sort_unstable();
        controls.dedup();
        GateOp::Mcx { controls, target }
    }

    fn check(&self, qubit_count: usize) -> Result<()> {
        let oob = |index: usize| Error::QubitIndex { index, qubit_count };
        match self {
            GateOp::X(t) | GateOp::H(t) | GateOp::Ry { target: t, .. } => {
                if *t >= qubit_count {
                    return Err(oob(*t));
                }
            }
            GateOp::Mcx { controls, target } => {
                if *target >= qubit_count {
                    return Err(oob(*target));
                }
                for &c in controls {
                    if c >= qubit_count {
                        return Err(oob(c));
                    }
                    if c == *target {
                        return Err(Error::OverlappingQubits(c));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubit_count: usize,
    amplitudes: Vec<Amplitude>,
}

impl StateVector {
    /// All-zeros computational basis state |0...0⟩.
    pub fn new(qubit_count: usize) -> Result<Self> {
        if qubit_count == 0 || qubit_count > MAX_QUBITS {
            return Err(Error::QubitCount(qubit_count));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << qubit_count];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            qubit_count,
            amplitudes,
        })
    }

    /// Wraps raw amplitudes. The length must be a power of two in
    /// `2..=2^24`. Normalization is not enforced here; the sampler checks it.
    pub fn from_amplitudes(amplitudes: Vec<Amplitude>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::QubitCount(0));
        }
        let qubit_count = len.trailing_zeros() as usize;
        if qubit_count > MAX_QUBITS {
            return Err(Error::QubitCount(qubit_count));
        }
        Ok(StateVector {
            qubit_count,
            amplitudes,
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn apply(&mut self, op: &GateOp) -> Result<()> {
        op.check(self.qubit_count)?;
        match op {
            GateOp::X(target) => {
                let mask = 1usize << target;
                for i in 0..self.amplitudes.len() {
                    if i & mask == 0 {
                        self.amplitudes.swap(i, i | mask);
                    }
                }
            }
            GateOp::H(target) => {
                let mask = 1usize << target;
                for i in 0..self.amplitudes.len() {
                    if i & mask == 0 {
                        let a = self.amplitudes[i];
                        let b = self.amplitudes[i | mask];
                        self.amplitudes[i] = (a + b) * FRAC_1_SQRT_2;
                        self.amplitudes[i | mask] = (a - b) * FRAC_1_SQRT_2;
                    }
                }
            }
            GateOp::Ry { target, angle } => {
                let mask = 1usize << target;
                let (sin, cos) = (angle / 2.0).sin_cos();
                for i in 0..self.amplitudes.len() {
                    if i & mask == 0 {
                        let a = self.amplitudes[i];
                        let b = self.amplitudes[i | mask];
                        self.amplitudes[i] = a * cos - b * sin;
                        self.amplitudes[i | mask] = a * sin + b * cos;
                    }
                }
            }
            GateOp::Mcx { controls, target } => {
                let target_mask = 1usize << target;
                let control_mask: usize = controls.iter().fold(0, |m, &c| m | (1usize << c));
                for i in 0..self.amplitudes.len() {
                    if i & target_mask == 0 && i & control_mask == control_mask {
                        self.amplitudes.swap(i, i | target_mask);
                    }
                }
            }
        }
        Ok(())
    }

    /// Marginal probability of measuring |1⟩ on one qubit.
    pub fn probability_of_one(&self, qubit: usize) -> Result<f64> {
        if qubit >= self.qubit_count {
            return Err(Error::QubitIndex {
                index: qubit,
                qubit_count: self.qubit_count,
            });
        }
        let mask = 1usize << qubit;
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumCircuit {
    pub qubit_count: usize,
    pub ops: Vec<GateOp>,
}

impl QuantumCircuit {
    pub fn new(qubit_count: usize) -> Self {
        QuantumCircuit {
            qubit_count,
            ops: Vec::new(),
        }
    }

    /// Folds every op over the |0...0⟩ initial state.
    pub fn run(&self) -> Result<StateVector> {
        let mut state = StateVector::new(self.qubit_count)?;
        for op in &self.ops {
            state.apply(op)?;
        }
        Ok(state)
    }

    /// Deterministic text dump: header line `qubits <n>`, then one op per
    /// line. Angles are printed with 17 significant digits so the dump
    /// round-trips the underlying double exactly.
    pub fn dump(&self) -> String {
        let mut out = format!("qubits {}\n", self.qubit_count);
        for op in &self.ops {
            match op {
                GateOp::X(t) => out.push_str(&format!("x q{t}\n")),
                GateOp::H(t) => out.push_str(&format!("h q{t}\n")),
                GateOp::Ry { target, angle } => {
                    out.push_str(&format!("ry q{target} {angle:.16e}\n"));
                }
                GateOp::Mcx { controls, target } => {
                    let list: Vec<String> = controls.iter().map(|c| format!("q{c}")).collect();
                    out.push_str(&format!("mcx {} -> q{target}\n", list.join(",")));
                }
            }
        }
        out
    }
}

/// Renders an amplitude index as a bitstring, highest qubit leftmost.
pub fn index_to_bitstring(index: usize, qubit_count: usize) -> String {
    (0..qubit_count)
        .rev()
        .map(|q| if index & (1 << q) != 0 { '1' } else { '0' })
        .collect()
}
