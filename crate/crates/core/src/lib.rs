//! Fault tree analysis by quantum circuit simulation.
//!
//! The pipeline: parse a fault tree from a small line-oriented text format,
//! compile it into a quantum circuit (one qubit per basic event with its
//! failure probability Ry-encoded, one multi-controlled-NOT sub-circuit per
//! logic gate), run the circuit on a dense statevector engine, and estimate
//! the system failure probability by shot sampling. Closed-form evaluation
//! and exhaustive boolean enumeration provide independent cross-checks.
//!
//! ```
//! let tree = qfta::fault_tree::parse(
//!     "basic a p=0.5\nbasic b p=0.5\ngate g AND a b\ntop g",
//! )
//! .unwrap();
//! let compiled = qfta::compiler::compile(&tree).unwrap();
//! let state = compiled.circuit.run().unwrap();
//! let p = state.probability_of_one(compiled.map.top_qubit()).unwrap();
//! assert!((p - 0.25).abs() < 1e-12);
//! ```

pub mod analytic;
pub mod compiler;
pub mod error;
pub mod fault_tree;
pub mod quantum;
pub mod report;
pub mod sim;

pub use error::{Error, Result};
