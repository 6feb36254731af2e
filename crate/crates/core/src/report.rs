//! End-to-end analysis pipeline and report rendering.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::analytic;
use crate::compiler::{self, CompiledCircuit};
use crate::error::{Error, Result};
use crate::fault_tree::FaultTree;
use crate::sim::{self, ScenarioReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Sample,
    Exact,
    Analytic,
    Brute,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayoutChoice {
    /// TOP qubit first, then basic events in declaration order.
    Reduced,
    /// All N + M qubits, highest first.
    Full,
}

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub shots: u64,
    pub seed: u64,
    pub workers: u32,
    pub mode: Mode,
    pub layout: LayoutChoice,
    pub top_n: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            shots: 1_000_000,
            seed: 0,
            workers: 1,
            mode: Mode::All,
            layout: LayoutChoice::Reduced,
            top_n: 20,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SampledEstimate {
    pub estimate: f64,
    pub standard_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunMetadata {
    pub shots: u64,
    pub seed: u64,
    pub workers: u32,
    /// Excluded from determinism guarantees.
    pub wall_clock_seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub basic_event_count: usize,
    pub gate_count: usize,
    pub qubit_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic: Option<BTreeMap<String, f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force_top: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_top: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled: Option<SampledEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenarios: Option<Vec<ScenarioReport>>,
    /// Node name per bitstring position, leftmost first.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bit_layout: Option<Vec<String>>,
    pub metadata: RunMetadata,
}

/// Runs the requested subset of the parse → compile → simulate → cross-check
/// pipeline on an already-parsed tree.
pub fn analyze(tree: &FaultTree, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let started = Instant::now();
    let wants = |m: Mode| opts.mode == m || opts.mode == Mode::All;

    let mut report = AnalysisReport {
        basic_event_count: tree.basic_event_count(),
        gate_count: tree.gate_count(),
        qubit_count: tree.basic_event_count() + tree.gate_count(),
        analytic: None,
        analytic_note: None,
        brute_force_top: None,
        exact_top: None,
        sampled: None,
        scenarios: None,
        bit_layout: None,
        metadata: RunMetadata {
            shots: opts.shots,
            seed: opts.seed,
            workers: opts.workers,
            wall_clock_seconds: 0.0,
        },
    };

    if wants(Mode::Analytic) {
        match analytic::evaluate(tree) {
            Ok(probs) => report.analytic = Some(probs.into_iter().collect()),
            Err(e @ Error::SharedEvent(_)) => report.analytic_note = Some(e.to_string()),
            Err(e) => return Err(e),
        }
    }

    if wants(Mode::Brute) {
        report.brute_force_top = Some(analytic::brute_force_probability(tree)?);
    }

    let needs_circuit = wants(Mode::Exact) || wants(Mode::Sample);
    let compiled: Option<CompiledCircuit> = if needs_circuit {
        Some(compiler::compile(tree)?)
    } else {
        None
    };

    if let Some(compiled) = &compiled {
        let state = compiled.circuit.run()?;
        if wants(Mode::Exact) {
            report.exact_top = Some(state.probability_of_one(compiled.map.top_qubit())?);
        }
        if wants(Mode::Sample) {
            let hist = sim::sample_with_workers(&state, opts.shots, opts.seed, opts.workers)?;
            let estimate = sim::top_failure_estimate(&hist, compiled.map.top_qubit());
            let standard_error = if opts.shots > 0 {
                (estimate * (1.0 - estimate) / opts.shots as f64).sqrt()
            } else {
                0.0
            };
            report.sampled = Some(SampledEstimate {
                estimate,
                standard_error,
            });
            let layout = match opts.layout {
                LayoutChoice::Reduced => compiled.map.reduced_layout(),
                LayoutChoice::Full => compiled.map.full_layout(),
            };
            let mut scenarios = sim::failure_scenarios(&hist, &compiled.map, &layout)?;
            scenarios.truncate(opts.top_n);
            report.scenarios = Some(scenarios);
            report.bit_layout = Some(
                layout
                    .iter()
                    .map(|&q| compiled.map.name_of(q).unwrap_or("?").to_string())
                    .collect(),
            );
        }
    }

    report.metadata.wall_clock_seconds = started.elapsed().as_secs_f64();
    Ok(report)
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Scenario table as CSV. Failed components are `;`-separated so the
    /// line stays comma-splittable.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bitstring,count,frequency,failed_components\n");
        if let Some(scenarios) = &self.scenarios {
            for s in scenarios {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    s.bitstring,
                    s.count,
                    s.frequency,
                    s.failed_components.join(";")
                ));
            }
        }
        out
    }

    /// Human-readable report. `tree` supplies declaration order for the
    /// analytic table.
    pub fn to_text(&self, tree: &FaultTree) -> String {
        let mut out = format!(
            "fault tree: {} basic events, {} gates ({} qubits)\n",
            self.basic_event_count, self.gate_count, self.qubit_count
        );

        if let Some(analytic) = &self.analytic {
            out.push_str("\nanalytic failure probabilities:\n");
            for node in tree.nodes() {
                let name = node.name();
                if let Some(p) = analytic.get(name) {
                    let marker = if name == tree.top_name() { "  (TOP)" } else { "" };
                    out.push_str(&format!("  {name:<32} {p}{marker}\n"));
                }
            }
        }
        if let Some(note) = &self.analytic_note {
            out.push_str(&format!("\nanalytic evaluation skipped: {note}\n"));
        }

        out.push_str("\nTOP failure probability:\n");
        if let Some(analytic) = &self.analytic {
            if let Some(p) = analytic.get(tree.top_name()) {
                out.push_str(&format!("  analytic     {p}\n"));
            }
        }
        if let Some(p) = self.brute_force_top {
            out.push_str(&format!("  brute force  {p}\n"));
        }
        if let Some(p) = self.exact_top {
            out.push_str(&format!("  exact        {p}\n"));
        }
        if let Some(s) = &self.sampled {
            out.push_str(&format!(
                "  sampled      {} ± {}  ({} shots, seed {}, {} worker{})\n",
                s.estimate,
                s.standard_error,
                self.metadata.shots,
                self.metadata.seed,
                self.metadata.workers,
                if self.metadata.workers == 1 { "" } else { "s" }
            ));
        }

        if let Some(scenarios) = &self.scenarios {
            out.push_str("\ntop failure scenarios:\n");
            if let Some(layout) = &self.bit_layout {
                out.push_str(&format!("  bit layout: {}\n", layout.join(", ")));
            }
            out.push_str(&format!(
                "  {:<16} {:>10} {:>12}  failed components\n",
                "bitstring", "count", "frequency"
            ));
            for s in scenarios {
                out.push_str(&format!(
                    "  {:<16} {:>10} {:>12.6}  {}\n",
                    s.bitstring,
                    s.count,
                    s.frequency,
                    s.failed_components.join(", ")
                ));
            }
        }

        out.push_str(&format!(
            "\nwall clock: {:.3} s\n",
            self.metadata.wall_clock_seconds
        ));
        out
    }
}
