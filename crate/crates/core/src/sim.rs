//! Measurement sampling and scenario reporting.
//!
//! A shot is one i.i.d. draw of a full basis state from the final
//! statevector's |amplitude|² distribution, via inverse CDF over a
//! precomputed cumulative array. The PRNG is ChaCha12 seeded from a 64-bit
//! seed; worker `w` of a partitioned run samples from ChaCha stream `w`.
//! Results are a deterministic function of (state, shots, seed, workers).

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::compiler::QubitMap;
use crate::error::{Error, Result};
use crate::quantum::{index_to_bitstring, StateVector};

/// Counts of measured full-width bitstrings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShotHistogram {
    pub counts: BTreeMap<String, u64>,
    pub total_shots: u64,
    pub seed: u64,
}

/// One failure scenario: a reduced bitstring with its observed frequency and
/// the component names its set bits decode to.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub bitstring: String,
    pub count: u64,
    pub frequency: f64,
    pub failed_components: Vec<String>,
}

/// Samples `shots` basis states from a normalized statevector.
pub fn sample(state: &StateVector, shots: u64, seed: u64) -> Result<ShotHistogram> {
    sample_with_workers(state, shots, seed, 1)
}

/// Partitions the shots across `workers` independent ChaCha streams. The
/// histogram depends on (seed, workers) but not on scheduling; workers are
/// drained sequentially here.
pub fn sample_with_workers(
    state: &StateVector,
    shots: u64,
    seed: u64,
    workers: u32,
) -> Result<ShotHistogram> {
    if (state.norm_sqr() - 1.0).abs() > 1e-9 {
        return Err(Error::Unnormalized);
    }
    let workers = workers.max(1) as u64;

    // cumulative |amplitude|² over basis-state indices
    let mut cdf = Vec::with_capacity(state.amplitudes().len());
    let mut acc = 0.0;
    for a in state.amplitudes() {
        acc += a.norm_sqr();
        cdf.push(acc);
    }

    let mut index_counts: BTreeMap<usize, u64> = BTreeMap::new();
    let base = shots / workers;
    let remainder = shots % workers;
    for w in 0..workers {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(w);
        let quota = base + if w < remainder { 1 } else { 0 };
        for _ in 0..quota {
            let u: f64 = rng.gen();
            let idx = cdf.partition_point(|&c| c <= u).min(cdf.len() - 1);
            *index_counts.entry(idx).or_insert(0) += 1;
        }
    }

    let n = state.qubit_count();
    let counts = index_counts
        .into_iter()
        .map(|(idx, c)| (index_to_bitstring(idx, n), c))
        .collect();
    Ok(ShotHistogram {
        counts,
        total_shots: shots,
        seed,
    })
}

fn bit_at(bitstring: &str, position: usize) -> bool {
    bitstring.as_bytes()[position] == b'1'
}

/// Fraction of shots in which the given qubit measured 1. Bitstring keys are
/// full width, highest qubit leftmost.
pub fn top_failure_estimate(hist: &ShotHistogram, top_qubit: usize) -> f64 {
    if hist.total_shots == 0 {
        return 0.0;
    }
    let failed: u64 = hist
        .counts
        .iter()
        .filter(|(bits, _)| {
            let pos = bits.len() - 1 - top_qubit;
            bit_at(bits, pos)
        })
        .map(|(_, c)| c)
        .sum();
    failed as f64 / hist.total_shots as f64
}

/// Reduces full-width bitstrings to the given qubits, in layout order
/// (leftmost output character = first layout qubit). Colliding reduced
/// strings have their counts summed.
pub fn project(hist: &ShotHistogram, layout: &[usize]) -> Result<ShotHistogram> {
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for (bits, &count) in &hist.counts {
        let width = bits.len();
        let mut reduced = String::with_capacity(layout.len());
        for &q in layout {
            if q >= width {
                return Err(Error::QubitIndex {
                    index: q,
                    qubit_count: width,
                });
            }
            reduced.push(if bit_at(bits, width - 1 - q) { '1' } else { '0' });
        }
        *counts.entry(reduced).or_insert(0) += count;
    }
    Ok(ShotHistogram {
        counts,
        total_shots: hist.total_shots,
        seed: hist.seed,
    })
}

/// Names of the nodes whose layout positions carry a '1'.
pub fn decode(bitstring: &str, map: &QubitMap, layout: &[usize]) -> Result<Vec<String>> {
    if bitstring.len() != layout.len() {
        return Err(Error::LengthMismatch {
            got: bitstring.len(),
            want: layout.len(),
        });
    }
    let mut failed = Vec::new();
    for (pos, &q) in layout.iter().enumerate() {
        if bit_at(bitstring, pos) {
            let name = map.name_of(q).ok_or(Error::QubitIndex {
                index: q,
                qubit_count: map.qubit_count(),
            })?;
            failed.push(name.to_string());
        }
    }
    Ok(failed)
}

/// Scenarios in which the TOP qubit measured 1, projected to `layout`,
/// sorted by count descending with lexicographic tie-break.
pub fn failure_scenarios(
    hist: &ShotHistogram,
    map: &QubitMap,
    layout: &[usize],
) -> Result<Vec<ScenarioReport>> {
    let top_pos = layout
        .iter()
        .position(|&q| q == map.top_qubit())
        .ok_or(Error::QubitIndex {
            index: map.top_qubit(),
            qubit_count: layout.len(),
        })?;
    let reduced = project(hist, layout)?;
    let mut scenarios = Vec::new();
    for (bits, &count) in &reduced.counts {
        if !bit_at(bits, top_pos) {
            continue;
        }
        scenarios.push(ScenarioReport {
            bitstring: bits.clone(),
            count,
            frequency: count as f64 / reduced.total_shots as f64,
            failed_components: decode(bits, map, layout)?,
        });
    }
    scenarios.sort_by(|a, b| {
        b.count
            .cmp(&a.count)
            .then_with(|| a.bitstring.cmp(&b.bitstring))
    });
    Ok(scenarios)
}
