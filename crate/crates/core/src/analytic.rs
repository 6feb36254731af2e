//! Classical cross-checks: closed-form bottom-up evaluation under the
//! independence assumption, and exhaustive enumeration over all basic-event
//! assignments.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fault_tree::{FaultTree, GateType};

/// Failure probability of a gate from its children's probabilities,
/// generalized to N independent children:
/// AND = Π p, OR = 1 − Π(1−p), NAND = 1 − Π p, NOR = Π(1−p).
pub fn gate_probability(gate_type: GateType, child_probs: &[f64]) -> Result<f64> {
    if child_probs.is_empty() {
        return Err(Error::EmptyInputs);
    }
    for &p in child_probs {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(Error::ProbabilityRange(p));
        }
    }
    let all_fail: f64 = child_probs.iter().product();
    let none_fail: f64 = child_probs.iter().map(|p| 1.0 - p).product();
    Ok(match gate_type {
        GateType::And => all_fail,
        GateType::Or => 1.0 - none_fail,
        GateType::Nand => 1.0 - all_fail,
        GateType::Nor => none_fail,
    })
}

/// Closed-form failure probability for every node reachable from top.
///
/// Refuses trees where a basic event is reachable through more than one
/// path: the independence products would silently give a wrong answer.
/// Use [`brute_force_probability`] for such DAGs.
pub fn evaluate(tree: &FaultTree) -> Result<HashMap<String, f64>> {
    let diags = tree.validate();
    if let Some(diag) = diags.first() {
        return Err(Error::Validation(diag.message.clone()));
    }
    check_no_shared_events(tree)?;

    let mut probs: HashMap<String, f64> = tree
        .basic_events()
        .map(|e| (e.name.clone(), e.failure_probability))
        .collect();
    for gate in tree.topological_gates() {
        let children: Vec<f64> = gate.children.iter().map(|c| probs[c]).collect();
        let p = gate_probability(gate.gate_type, &children)?;
        probs.insert(gate.name.clone(), p);
    }
    Ok(probs)
}

fn check_no_shared_events(tree: &FaultTree) -> Result<()> {
    // Path multiplicity from top, parents processed before children.
    let mut paths: HashMap<&str, u64> = HashMap::new();
    paths.insert(tree.top_name(), 1);
    let topo = tree.topological_gates();
    for gate in topo.iter().rev() {
        let count = paths.get(gate.name.as_str()).copied().unwrap_or(0);
        if count == 0 {
            continue;
        }
        for child in &gate.children {
            *paths.entry(child.as_str()).or_insert(0) += count;
        }
    }
    for event in tree.basic_events() {
        if paths.get(event.name.as_str()).copied().unwrap_or(0) > 1 {
            return Err(Error::SharedEvent(event.name.clone()));
        }
    }
    Ok(())
}

/// Exact TOP probability by enumerating all 2^N basic-event assignments.
///
/// Handles shared events correctly; limited to N ≤ 20. Assignments are
/// summed in ascending index order so the result is reproducible bit for
/// bit.
pub fn brute_force_probability(tree: &FaultTree) -> Result<f64> {
    let diags = tree.validate();
    if let Some(diag) = diags.first() {
        return Err(Error::Validation(diag.message.clone()));
    }
    let events: Vec<_> = tree.basic_events().collect();
    let n = events.len();
    if n > 20 {
        return Err(Error::TooManyEvents(n));
    }
    let topo = tree.topological_gates();

    let mut total = 0.0;
    let mut truth: HashMap<&str, bool> = HashMap::new();
    for assignment in 0u64..(1u64 << n) {
        let mut weight = 1.0;
        truth.clear();
        for (i, event) in events.iter().enumerate() {
            let failed = assignment & (1 << i) != 0;
            weight *= if failed {
                event.failure_probability
            } else {
                1.0 - event.failure_probability
            };
            truth.insert(event.name.as_str(), failed);
        }
        for gate in &topo {
            let value = match gate.gate_type {
                GateType::And => gate.children.iter().all(|c| truth[c.as_str()]),
                GateType::Or => gate.children.iter().any(|c| truth[c.as_str()]),
                GateType::Nand => !gate.children.iter().all(|c| truth[c.as_str()]),
                GateType::Nor => !gate.children.iter().any(|c| truth[c.as_str()]),
            };
            truth.insert(gate.name.as_str(), value);
        }
        if truth[tree.top_name()] {
            total += weight;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fault_tree::parse;

    const DP: &str = include_str!("../../../examples/dp_system.ft");

    #[test]
    fn gate_probability_matches_case_study_subsystems() {
        let or = gate_probability(GateType::Or, &[2.44e-5, 8.54e-5, 5.68e-1]).unwrap();
        assert!((or - 0.5680474).abs() < 1e-7, "{or}");
        let and = gate_probability(GateType::And, &[0.568, 0.568]).unwrap();
        assert!((and - 0.322624).abs() < 1e-12);
        let power = gate_probability(GateType::And, &[3.41e-4, 3.66e-5, 3.66e-5]).unwrap();
        assert!((power - 4.568e-13).abs() / 4.568e-13 < 1e-3, "{power}");
        let nor = gate_probability(GateType::Nor, &[0.5, 0.5]).unwrap();
        assert!((nor - 0.25).abs() < 1e-15);
    }

    #[test]
    fn gate_probability_edge_cases() {
        assert!(gate_probability(GateType::And, &[]).is_err());
        assert!(gate_probability(GateType::Or, &[1.2]).is_err());
        assert_eq!(gate_probability(GateType::And, &[1.0, 1.0]).unwrap(), 1.0);
        assert_eq!(gate_probability(GateType::Or, &[0.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn de_morgan_duality_holds() {
        let ps = [0.1, 0.37, 0.9, 0.0003];
        let complements: Vec<f64> = ps.iter().map(|p| 1.0 - p).collect();
        let or = gate_probability(GateType::Or, &ps).unwrap();
        let and = gate_probability(GateType::And, &complements).unwrap();
        assert_eq!(or, 1.0 - and);
    }

    #[test]
    fn monotonicity_in_each_child() {
        let base = [0.2, 0.4, 0.6];
        for i in 0..base.len() {
            let mut bumped = base;
            bumped[i] += 0.1;
            for gt in [GateType::And, GateType::Or] {
                assert!(
                    gate_probability(gt, &bumped).unwrap()
                        >= gate_probability(gt, &base).unwrap()
                );
            }
            for gt in [GateType::Nand, GateType::Nor] {
                assert!(
                    gate_probability(gt, &bumped).unwrap()
                        <= gate_probability(gt, &base).unwrap()
                );
            }
        }
    }

    #[test]
    fn evaluates_dp_tree() {
        let tree = parse(DP).unwrap();
        let probs = evaluate(&tree).unwrap();
        assert!((probs["computer_r1_failure"] - 0.5680474326998156).abs() < 1e-12);
        assert!((probs["power_system_failure"] - 4.5678996e-13).abs() < 1e-20);
        assert!((probs["control_system_failure"] - 0.3226779).abs() < 1e-7);
        assert_eq!(probs.len(), 14);
    }

    #[test]
    fn evaluates_degenerate_tree() {
        let tree = parse("basic a p=0.3\ntop a").unwrap();
        let probs = evaluate(&tree).unwrap();
        assert_eq!(probs.len(), 1);
        assert_eq!(probs["a"], 0.3);
    }

    #[test]
    fn evaluate_refuses_shared_events() {
        let tree = parse(
            "basic a p=0.5\nbasic b p=0.2\ngate g1 AND a b\ngate g2 OR a g1\ntop g2",
        )
        .unwrap();
        let err = evaluate(&tree).unwrap_err();
        assert!(err.to_string().contains("`a`"), "{err}");
    }

    #[test]
    fn brute_force_two_event_and() {
        let tree = parse("basic a p=0.5\nbasic b p=0.5\ngate g AND a b\ntop g").unwrap();
        assert!((brute_force_probability(&tree).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn brute_force_matches_evaluate_on_dp() {
        let tree = parse(DP).unwrap();
        let brute = brute_force_probability(&tree).unwrap();
        let analytic = evaluate(&tree).unwrap()["control_system_failure"];
        assert!((brute - 0.3226779).abs() < 1e-7);
        assert!((brute - analytic).abs() < 1e-12);
    }

    #[test]
    fn brute_force_handles_self_shared_or() {
        // OR(a, a) is just a, not 1 - (1-p)^2
        let tree = parse("basic a p=0.5\ngate g1 OR a a\ntop g1").unwrap();
        assert!((brute_force_probability(&tree).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn brute_force_rejects_large_trees() {
        let mut text = String::new();
        for i in 0..21 {
            text.push_str(&format!("basic e{i} p=0.1\n"));
        }
        let children: Vec<String> = (0..21).map(|i| format!("e{i}")).collect();
        text.push_str(&format!("gate g OR {}\ntop g\n", children.join(" ")));
        let tree = parse(&text).unwrap();
        assert!(brute_force_probability(&tree).is_err());
    }
}
