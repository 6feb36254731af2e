//! Fault tree domain model, line-oriented text format, and structural validation.
//!
//! A fault tree is a DAG of named nodes: basic events carrying a failure
//! probability, and logic gates (AND/OR/NAND/NOR) combining child nodes.
//! One node is designated TOP. The text format is one declaration per line:
//!
//! ```text
//! basic <name> p=<float>
//! gate <name> <AND|OR|NAND|NOR> <child> [<child> ...]
//! top <name>
//! ```
//!
//! `#` starts a comment, blank lines are ignored, and declarations may appear
//! in any order (forward references to children are fine).

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateType {
    And,
    Or,
    Nand,
    Nor,
}

impl GateType {
    pub fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "AND" => Some(GateType::And),
            "OR" => Some(GateType::Or),
            "NAND" => Some(GateType::Nand),
            "NOR" => Some(GateType::Nor),
            _ => None,
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            GateType::And => "AND",
            GateType::Or => "OR",
            GateType::Nand => "NAND",
            GateType::Nor => "NOR",
        }
    }
}

impl fmt::Display for GateType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasicEvent {
    pub name: String,
    pub failure_probability: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateNode {
    pub name: String,
    pub gate_type: GateType,
    pub children: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Basic(BasicEvent),
    Gate(GateNode),
}

impl Node {
    pub fn name(&self) -> &str {
        match self {
            Node::Basic(e) => &e.name,
            Node::Gate(g) => &g.name,
        }
    }
}

/// One validation finding. `node` is the offending node when there is one.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub node: Option<String>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// A named DAG of basic events and logic gates with a designated TOP node.
///
/// Nodes keep their declaration order; the compiler and the report layer rely
/// on it for deterministic qubit assignment.
#[derive(Debug, Clone)]
pub struct FaultTree {
    nodes: Vec<Node>,
    index: HashMap<String, usize>,
    top: String,
}

impl FaultTree {
    /// Builds a tree from parts without validating. Call [`FaultTree::validate`]
    /// before handing the tree to the compiler or the analytic evaluator.
    pub fn new(nodes: Vec<Node>, top: impl Into<String>) -> Self {
        let mut index = HashMap::new();
        for (i, node) in nodes.iter().enumerate() {
            index.entry(node.name().to_string()).or_insert(i);
        }
        FaultTree {
            nodes,
            index,
            top: top.into(),
        }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, name: &str) -> Option<&Node> {
        self.index.get(name).map(|&i| &self.nodes[i])
    }

    pub fn top_name(&self) -> &str {
        &self.top
    }

    /// Basic events in declaration order.
    pub fn basic_events(&self) -> impl Iterator<Item = &BasicEvent> {
        self.nodes.iter().filter_map(|n| match n {
            Node::Basic(e) => Some(e),
            Node::Gate(_) => None,
        })
    }

    /// Gates in declaration order.
    pub fn gates(&self) -> impl Iterator<Item = &GateNode> {
        self.nodes.iter().filter_map(|n| match n {
            Node::Gate(g) => Some(g),
            Node::Basic(_) => None,
        })
    }

    pub fn basic_event_count(&self) -> usize {
        self.basic_events().count()
    }

    pub fn gate_count(&self) -> usize {
        self.gates().count()
    }

    /// Checks every structural invariant. Empty result means the tree is valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();

        let mut seen = HashSet::new();
        for node in &self.nodes {
            if !seen.insert(node.name()) {
                diags.push(Diagnostic {
                    node: Some(node.name().to_string()),
                    message: format!("duplicate node name `{}`", node.name()),
                });
            }
        }

        for event in self.basic_events() {
            let p = event.failure_probability;
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                diags.push(Diagnostic {
                    node: Some(event.name.clone()),
                    message: format!(
                        "probability {} of basic event `{}` is outside [0, 1]",
                        p, event.name
                    ),
                });
            }
        }

        let mut unresolved = false;
        for gate in self.gates() {
            if gate.children.is_empty() {
                diags.push(Diagnostic {
                    node: Some(gate.name.clone()),
                    message: format!("gate `{}` has no children", gate.name),
                });
            }
            for child in &gate.children {
                if !self.index.contains_key(child) {
                    unresolved = true;
                    diags.push(Diagnostic {
                        node: Some(gate.name.clone()),
                        message: format!(
                            "gate `{}` references undeclared node `{}`",
                            gate.name, child
                        ),
                    });
                }
            }
        }

        if !self.index.contains_key(&self.top) {
            diags.push(Diagnostic {
                node: None,
                message: format!("top node `{}` is not declared", self.top),
            });
            return diags;
        }

        if self.basic_event_count() == 0 {
            diags.push(Diagnostic {
                node: None,
                message: "tree has no basic events".to_string(),
            });
        }

        if unresolved {
            // Cycle and reachability checks need a closed node set.
            return diags;
        }

        for name in self.find_cycle_members() {
            diags.push(Diagnostic {
                node: Some(name.clone()),
                message: format!("node `{}` is part of a cycle", name),
            });
        }
        if diags.iter().any(|d| d.message.contains("cycle")) {
            return diags;
        }

        let reachable = self.reachable_from_top();
        for node in &self.nodes {
            if !reachable.contains(node.name()) {
                diags.push(Diagnostic {
                    node: Some(node.name().to_string()),
                    message: format!("node `{}` is not reachable from top", node.name()),
                });
            }
        }

        diags
    }

    /// Gates in a children-before-parent order, ties broken by declaration
    /// order. Requires a validated tree.
    pub fn topological_gates(&self) -> Vec<&GateNode> {
        let gates: Vec<&GateNode> = self.gates().collect();
        let mut emitted: HashSet<&str> = HashSet::new();
        let mut order = Vec::with_capacity(gates.len());
        while order.len() < gates.len() {
            let before = order.len();
            for gate in &gates {
                if emitted.contains(gate.name.as_str()) {
                    continue;
                }
                let ready = gate.children.iter().all(|c| {
                    emitted.contains(c.as_str())
                        || matches!(self.node(c), Some(Node::Basic(_)))
                });
                if ready {
                    emitted.insert(gate.name.as_str());
                    order.push(*gate);
                }
            }
            assert!(order.len() > before, "cycle in validated tree");
        }
        order
    }

    fn reachable_from_top(&self) -> HashSet<&str> {
        let mut reachable = HashSet::new();
        let mut stack = vec![self.top.as_str()];
        while let Some(name) = stack.pop() {
            if !reachable.insert(name) {
                continue;
            }
            if let Some(Node::Gate(g)) = self.node(name) {
                for child in &g.children {
                    stack.push(child.as_str());
                }
            }
        }
        reachable
    }

    fn find_cycle_members(&self) -> Vec<String> {
        // DFS with tricolor marking over the whole node set.
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Gray,
            Black,
        }
        let mut color = vec![Color::White; self.nodes.len()];
        let mut on_cycle = Vec::new();

        fn visit(
            tree: &FaultTree,
            i: usize,
            color: &mut [Color],
            on_cycle: &mut Vec<String>,
        ) -> bool {
            color[i] = Color::Gray;
            let mut cyclic = false;
            if let Node::Gate(g) = &tree.nodes[i] {
                for child in &g.children {
                    let j = tree.index[child.as_str()];
                    match color[j] {
                        Color::Gray => cyclic = true,
                        Color::White => {
                            if visit(tree, j, color, on_cycle) {
                                cyclic = true;
                            }
                        }
                        Color::Black => {}
                    }
                }
            }
            color[i] = Color::Black;
            if cyclic {
                on_cycle.push(tree.nodes[i].name().to_string());
            }
            cyclic
        }

        for i in 0..self.nodes.len() {
            if color[i] == Color::White {
                visit(self, i, &mut color, &mut on_cycle);
            }
        }
        on_cycle
    }

    /// Renders the tree back to its text form. `parse(tree.to_text())` yields
    /// a structurally identical tree.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for node in &self.nodes {
            match node {
                Node::Basic(e) => {
                    out.push_str(&format!("basic {} p={:e}\n", e.name, e.failure_probability));
                }
                Node::Gate(g) => {
                    out.push_str(&format!(
                        "gate {} {} {}\n",
                        g.name,
                        g.gate_type,
                        g.children.join(" ")
                    ));
                }
            }
        }
        out.push_str(&format!("top {}\n", self.top));
        out
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the line-oriented fault tree format and validates the result.
pub fn parse(text: &str) -> Result<FaultTree> {
    let mut nodes: Vec<Node> = Vec::new();
    let mut decl_lines: HashMap<String, usize> = HashMap::new();
    let mut top: Option<(String, usize)> = None;
    let mut line_count = 0;

    let err = |line: usize, message: String| Error::Parse { line, message };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        line_count = line_no;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut tokens = line.split_whitespace();
        let Some(keyword) = tokens.next() else {
            continue;
        };
        match keyword {
            "basic" => {
                let name = tokens
                    .next()
                    .ok_or_else(|| err(line_no, "expected event name after `basic`".into()))?;
                if !is_identifier(name) {
                    return Err(err(line_no, format!("invalid identifier `{name}`")));
                }
                let prob_tok = tokens
                    .next()
                    .ok_or_else(|| err(line_no, format!("expected `p=<float>` after `{name}`")))?;
                let prob_str = prob_tok.strip_prefix("p=").ok_or_else(|| {
                    err(line_no, format!("expected `p=<float>`, found `{prob_tok}`"))
                })?;
                let p: f64 = prob_str
                    .parse()
                    .map_err(|_| err(line_no, format!("invalid probability `{prob_str}`")))?;
                if !(0.0..=1.0).contains(&p) || p.is_nan() {
                    return Err(err(line_no, format!("probability {p} outside [0, 1]")));
                }
                if let Some(rest) = tokens.next() {
                    return Err(err(line_no, format!("unexpected token `{rest}`")));
                }
                if decl_lines.insert(name.to_string(), line_no).is_some() {
                    return Err(err(line_no, format!("duplicate node name `{name}`")));
                }
                nodes.push(Node::Basic(BasicEvent {
                    name: name.to_string(),
                    failure_probability: p,
                }));
            }
            "gate" => {
                let name = tokens
                    .next()
                    .ok_or_else(|| err(line_no, "expected gate name after `gate`".into()))?;
                if !is_identifier(name) {
                    return Err(err(line_no, format!("invalid identifier `{name}`")));
                }
                let type_tok = tokens.next().ok_or_else(|| {
                    err(line_no, "expected gate type (AND, OR, NAND, NOR)".into())
                })?;
                let gate_type = GateType::from_keyword(type_tok).ok_or_else(|| {
                    err(
                        line_no,
                        format!("unknown gate type `{type_tok}` (expected AND, OR, NAND or NOR)"),
                    )
                })?;
                let children: Vec<String> = tokens.map(str::to_string).collect();
                if children.is_empty() {
                    return Err(err(line_no, format!("gate `{name}` needs at least one child")));
                }
                for child in &children {
                    if !is_identifier(child) {
                        return Err(err(line_no, format!("invalid identifier `{child}`")));
                    }
                }
                if decl_lines.insert(name.to_string(), line_no).is_some() {
                    return Err(err(line_no, format!("duplicate node name `{name}`")));
                }
                nodes.push(Node::Gate(GateNode {
                    name: name.to_string(),
                    gate_type,
                    children,
                }));
            }
            "top" => {
                let name = tokens
                    .next()
                    .ok_or_else(|| err(line_no, "expected node name after `top`".into()))?;
                if let Some(rest) = tokens.next() {
                    return Err(err(line_no, format!("unexpected token `{rest}`")));
                }
                if top.is_some() {
                    return Err(err(line_no, "multiple `top` declarations".into()));
                }
                top = Some((name.to_string(), line_no));
            }
            other => {
                return Err(err(
                    line_no,
                    format!("unknown declaration `{other}` (expected basic, gate or top)"),
                ));
            }
        }
    }

    let Some((top_name, _)) = top else {
        return Err(err(line_count + 1, "missing `top` declaration".into()));
    };

    let tree = FaultTree::new(nodes, top_name);
    let diags = tree.validate();
    if let Some(diag) = diags.into_iter().next() {
        let line = diag
            .node
            .as_deref()
            .and_then(|n| decl_lines.get(n).copied())
            .unwrap_or(line_count);
        return Err(err(line, diag.message));
    }
    Ok(tree)
}
