//! Shared helpers for integration tests. Each test binary uses a subset.
#![allow(dead_code)]

use qfta::fault_tree::{BasicEvent, FaultTree, GateNode, GateType, Node};
use rand::Rng;
use rand_chacha::ChaCha12Rng;

pub const DP_FILE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../examples/dp_system.ft");

pub fn dp_tree() -> FaultTree {
    let text = std::fs::read_to_string(DP_FILE).unwrap();
    qfta::fault_tree::parse(&text).unwrap()
}

/// Random small fault tree: up to 6 basic events, a few gates layered over
/// them, everything reachable from the final top gate. Child reuse (shared
/// events) happens naturally.
pub fn random_tree(rng: &mut ChaCha12Rng) -> FaultTree {
    let n_events = rng.gen_range(1..=6);
    let mut nodes: Vec<Node> = (0..n_events)
        .map(|i| {
            Node::Basic(BasicEvent {
                name: format!("e{i}"),
                failure_probability: rng.gen(),
            })
        })
        .collect();
    let mut names: Vec<String> = (0..n_events).map(|i| format!("e{i}")).collect();

    if n_events == 1 && rng.gen_bool(0.2) {
        return FaultTree::new(nodes, "e0");
    }

    let n_gates = rng.gen_range(1..=4);
    let gate_types = [GateType::And, GateType::Or, GateType::Nand, GateType::Nor];
    for g in 0..n_gates {
        let fan_in = rng.gen_range(1..=3.min(names.len()));
        let children: Vec<String> = (0..fan_in)
            .map(|_| names[rng.gen_range(0..names.len())].clone())
            .collect();
        let name = format!("g{g}");
        nodes.push(Node::Gate(GateNode {
            name: name.clone(),
            gate_type: gate_types[rng.gen_range(0..4)],
            children,
        }));
        names.push(name);
    }

    // top gate collects every node that nothing else consumes
    let mut used: std::collections::HashSet<String> = std::collections::HashSet::new();
    for node in &nodes {
        if let Node::Gate(g) = node {
            used.extend(g.children.iter().cloned());
        }
    }
    let orphans: Vec<String> = names.iter().filter(|n| !used.contains(*n)).cloned().collect();
    if orphans.len() == 1 {
        return FaultTree::new(nodes, orphans[0].clone());
    }
    nodes.push(Node::Gate(GateNode {
        name: "top_gate".into(),
        gate_type: if rng.gen_bool(0.5) { GateType::Or } else { GateType::And },
        children: orphans,
    }));
    FaultTree::new(nodes, "top_gate")
}
