//! Lowers a validated fault tree to a quantum circuit.
//!
//! One qubit per basic event, Ry-encoded failure probability, one ancilla
//! qubit per logic gate. Gate sub-circuits are built from multi-controlled
//! NOTs: AND is a bare MCX, OR is a NAND with inverted (and afterwards
//! restored) inputs, and NAND/NOR invert the respective outputs.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fault_tree::{FaultTree, GateType};
use crate::quantum::{GateOp, QuantumCircuit};

/// Assignment of fault tree nodes to qubit indices.
///
/// Qubits `0..N-1` are the basic events in declaration order; `N..N+M-1` are
/// gate outputs in bottom-up emission order.
#[derive(Debug, Clone)]
pub struct QubitMap {
    names: Vec<String>,
    indices: HashMap<String, usize>,
    event_count: usize,
    top_qubit: usize,
}

impl QubitMap {
    pub fn qubit_of(&self, name: &str) -> Option<usize> {
        self.indices.get(name).copied()
    }

    pub fn name_of(&self, qubit: usize) -> Option<&str> {
        self.names.get(qubit).map(String::as_str)
    }

    pub fn top_qubit(&self) -> usize {
        self.top_qubit
    }

    /// Number of basic events N; qubits below this index are events.
    pub fn event_count(&self) -> usize {
        self.event_count
    }

    pub fn qubit_count(&self) -> usize {
        self.names.len()
    }

    /// Default reporting layout: TOP qubit first, then basic events in
    /// declaration order. Gate ancillas are omitted.
    pub fn reduced_layout(&self) -> Vec<usize> {
        let mut layout = vec![self.top_qubit];
        layout.extend(0..self.event_count);
        layout
    }

    /// Every qubit, highest first, matching the full-width bitstrings
    /// produced by sampling.
    pub fn full_layout(&self) -> Vec<usize> {
        (0..self.names.len()).rev().collect()
    }
}

#[derive(Debug, Clone)]
pub struct CompiledCircuit {
    pub circuit: QuantumCircuit,
    pub map: QubitMap,
}

/// Rotation angle that encodes failure probability `p` as sin²(ξ/2).
///
/// `p = 1` maps to the limit value π instead of tripping the division
/// inside the arctangent form.
pub fn angle_for_probability(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::ProbabilityRange(p));
    }
    if p == 1.0 {
        return Ok(std::f64::consts::PI);
    }
    Ok(2.0 * (p / (1.0 - p)).sqrt().atan())
}

fn check_io(inputs: &[usize], output: usize) -> Result<()> {
    if inputs.is_empty() {
        return Err(Error::EmptyInputs);
    }
    if inputs.contains(&output) {
        return Err(Error::OverlappingQubits(output));
    }
    // a duplicated input would make the X pairs of the OR construction cancel
    for (i, a) in inputs.iter().enumerate() {
        if inputs[..i].contains(a) {
            return Err(Error::OverlappingQubits(*a));
        }
    }
    Ok(())
}

/// AND of `inputs` onto a |0⟩ output qubit: a single multi-controlled NOT.
pub fn emit_and(inputs: &[usize], output: usize) -> Result<Vec<GateOp>> {
    check_io(inputs, output)?;
    Ok(vec![GateOp::mcx(inputs.to_vec(), output)])
}

/// NAND: AND with the output inverted.
pub fn emit_nand(inputs: &[usize], output: usize) -> Result<Vec<GateOp>> {
    let mut ops = emit_and(inputs, output)?;
    ops.push(GateOp::X(output));
    Ok(ops)
}

/// OR via De Morgan: invert the inputs, NAND them, then restore the inputs.
pub fn emit_or(inputs: &[usize], output: usize) -> Result<Vec<GateOp>> {
    check_io(inputs, output)?;
    let mut ops: Vec<GateOp> = inputs.iter().map(|&q| GateOp::X(q)).collect();
    ops.push(GateOp::mcx(inputs.to_vec(), output));
    ops.push(GateOp::X(output));
    ops.extend(inputs.iter().map(|&q| GateOp::X(q)));
    Ok(ops)
}

/// NOR: OR with the output inverted.
pub fn emit_nor(inputs: &[usize], output: usize) -> Result<Vec<GateOp>> {
    let mut ops = emit_or(inputs, output)?;
    ops.push(GateOp::X(output));
    Ok(ops)
}

pub fn emit_gate(gate_type: GateType, inputs: &[usize], output: usize) -> Result<Vec<GateOp>> {
    match gate_type {
        GateType::And => emit_and(inputs, output),
        GateType::Or => emit_or(inputs, output),
        GateType::Nand => emit_nand(inputs, output),
        GateType::Nor => emit_nor(inputs, output),
    }
}

/// Compiles a validated fault tree into a quantum circuit over N + M qubits.
///
/// Emission order: one Ry per basic event in declaration order, then one
/// sub-circuit per gate in children-before-parent order (ties broken by
/// declaration order). Gate inputs are the child nodes' qubits, so a gate
/// feeding another gate contributes its output ancilla as a control.
pub fn compile(tree: &FaultTree) -> Result<CompiledCircuit> {
    let diags = tree.validate();
    if let Some(diag) = diags.first() {
        return Err(Error::Validation(diag.message.clone()));
    }

    let event_count = tree.basic_event_count();
    let qubit_count = event_count + tree.gate_count();

    let mut names: Vec<String> = Vec::with_capacity(qubit_count);
    let mut indices = HashMap::new();
    for event in tree.basic_events() {
        indices.insert(event.name.clone(), names.len());
        names.push(event.name.clone());
    }

    let mut circuit = QuantumCircuit::new(qubit_count);
    for event in tree.basic_events() {
        let target = indices[&event.name];
        circuit.ops.push(GateOp::Ry {
            target,
            angle: angle_for_probability(event.failure_probability)?,
        });
    }

    for gate in tree.topological_gates() {
        let output = names.len();
        indices.insert(gate.name.clone(), output);
        names.push(gate.name.clone());
        // a child listed twice contributes one control; the boolean gate is
        // unchanged by the duplicate
        let mut inputs: Vec<usize> = Vec::with_capacity(gate.children.len());
        for child in &gate.children {
            let q = indices[child];
            if !inputs.contains(&q) {
                inputs.push(q);
            }
        }
        circuit.ops.extend(emit_gate(gate.gate_type, &inputs, output)?);
    }

    let top_qubit = indices[tree.top_name()];
    Ok(CompiledCircuit {
        circuit,
        map: QubitMap {
            names,
            indices,
            event_count,
            top_qubit,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fault_tree::parse;
    use std::f64::consts::PI;

    const DP: &str = include_str!("../../../examples/dp_system.ft");

    #[test]
    fn angle_encoding_fixed_points() {
        assert_eq!(angle_for_probability(0.0).unwrap(), 0.0);
        assert!((angle_for_probability(0.5).unwrap() - PI / 2.0).abs() < 1e-15);
        assert_eq!(angle_for_probability(1.0).unwrap(), PI);
    }

    #[test]
    fn angle_encoding_recovers_probability() {
        for &p in &[0.0, 0.25, 0.5, 0.568, 0.999, 1.0] {
            let xi = angle_for_probability(p).unwrap();
            assert!((0.0..=PI).contains(&xi));
            assert!(((xi / 2.0).sin().powi(2) - p).abs() < 1e-12, "p={p}");
        }
    }

    #[test]
    fn angle_encoding_rejects_out_of_range() {
        assert!(angle_for_probability(-0.1).is_err());
        assert!(angle_for_probability(1.1).is_err());
        assert!(angle_for_probability(f64::NAN).is_err());
    }

    #[test]
    fn and_is_a_single_mcx() {
        assert_eq!(
            emit_and(&[0, 1], 2).unwrap(),
            vec![GateOp::mcx(vec![0, 1], 2)]
        );
        assert_eq!(
            emit_and(&[0, 1, 2], 3).unwrap(),
            vec![GateOp::mcx(vec![0, 1, 2], 3)]
        );
        assert_eq!(emit_and(&[0], 1).unwrap(), vec![GateOp::mcx(vec![0], 1)]);
    }

    #[test]
    fn or_inverts_and_restores_inputs() {
        assert_eq!(
            emit_or(&[0, 1], 2).unwrap(),
            vec![
                GateOp::X(0),
                GateOp::X(1),
                GateOp::mcx(vec![0, 1], 2),
                GateOp::X(2),
                GateOp::X(0),
                GateOp::X(1),
            ]
        );
        assert_eq!(emit_or(&[0, 1, 2], 3).unwrap().len(), 8);
        assert_eq!(
            emit_or(&[0], 1).unwrap(),
            vec![
                GateOp::X(0),
                GateOp::mcx(vec![0], 1),
                GateOp::X(1),
                GateOp::X(0),
            ]
        );
    }

    #[test]
    fn nand_and_nor_append_an_output_inversion() {
        assert_eq!(
            emit_nand(&[0, 1], 2).unwrap(),
            vec![GateOp::mcx(vec![0, 1], 2), GateOp::X(2)]
        );
        let nor = emit_nor(&[0], 1).unwrap();
        assert_eq!(nor.len(), 5);
        assert_eq!(nor.last(), Some(&GateOp::X(1)));
    }

    #[test]
    fn emitters_reject_overlap_and_empty_inputs() {
        assert!(emit_and(&[], 0).is_err());
        assert!(emit_and(&[1, 2], 2).is_err());
        assert!(emit_or(&[0], 0).is_err());
    }

    #[test]
    fn compiles_two_event_and() {
        let tree = parse("basic a p=0.5\nbasic b p=0.5\ngate g AND a b\ntop g").unwrap();
        let compiled = compile(&tree).unwrap();
        assert_eq!(compiled.circuit.qubit_count, 3);
        assert_eq!(
            compiled.circuit.ops,
            vec![
                GateOp::Ry { target: 0, angle: PI / 2.0 },
                GateOp::Ry { target: 1, angle: PI / 2.0 },
                GateOp::mcx(vec![0, 1], 2),
            ]
        );
        assert_eq!(compiled.map.top_qubit(), 2);
    }

    #[test]
    fn compiles_degenerate_tree() {
        let tree = parse("basic a p=0.3\ntop a").unwrap();
        let compiled = compile(&tree).unwrap();
        assert_eq!(compiled.circuit.qubit_count, 1);
        assert_eq!(compiled.circuit.ops.len(), 1);
        assert_eq!(compiled.map.top_qubit(), 0);
        match &compiled.circuit.ops[0] {
            GateOp::Ry { target: 0, angle } => {
                assert!(((angle / 2.0).sin().powi(2) - 0.3).abs() < 1e-12);
            }
            other => panic!("unexpected op {other:?}"),
        }
    }

    #[test]
    fn compiles_dp_system_shape() {
        let tree = parse(DP).unwrap();
        let compiled = compile(&tree).unwrap();
        assert_eq!(compiled.circuit.qubit_count, 14);
        let ry = compiled
            .circuit
            .ops
            .iter()
            .filter(|op| matches!(op, GateOp::Ry { .. }))
            .count();
        let mcx = compiled
            .circuit
            .ops
            .iter()
            .filter(|op| matches!(op, GateOp::Mcx { .. }))
            .count();
        let x = compiled
            .circuit
            .ops
            .iter()
            .filter(|op| matches!(op, GateOp::X(_)))
            .count();
        assert_eq!((ry, mcx, x), (9, 5, 19));
        // the first 9 ops are the event rotations
        assert!(compiled.circuit.ops[..9]
            .iter()
            .all(|op| matches!(op, GateOp::Ry { .. })));
        assert_eq!(
            compiled.map.name_of(compiled.map.top_qubit()),
            Some("control_system_failure")
        );
    }

    #[test]
    fn compile_rejects_invalid_tree() {
        let tree = crate::fault_tree::FaultTree::new(vec![], "missing");
        assert!(compile(&tree).is_err());
    }

    #[test]
    fn reduced_layout_is_top_then_events() {
        let tree = parse(DP).unwrap();
        let compiled = compile(&tree).unwrap();
        let layout = compiled.map.reduced_layout();
        assert_eq!(layout.len(), 10);
        assert_eq!(layout[0], compiled.map.top_qubit());
        assert_eq!(&layout[1..], &[0, 1, 2, 3, 4, 5, 6, 7, 8]);
    }
}
