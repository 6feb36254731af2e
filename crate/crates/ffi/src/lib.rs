//! C ABI over the qfta library.
//!
//! Conventions: objects are opaque handles created and destroyed by this
//! library; functions return a [`QftaStatus`] and write results through out
//! pointers; on failure, [`qfta_last_error`] returns a message for the
//! current thread, valid until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use qfta::compiler::{self, CompiledCircuit};
use qfta::fault_tree::{self, FaultTree};
use qfta::{analytic, sim};

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QftaStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationError = 4,
    RuntimeError = 5,
}

/// Opaque parsed fault tree.
pub struct QftaFaultTree {
    tree: FaultTree,
}

/// Opaque compiled quantum circuit with its qubit map.
pub struct QftaCircuit {
    compiled: CompiledCircuit,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<Vec<u8>>) {
    let cstring = CString::new(message).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(cstring));
}

fn fail(status: QftaStatus, message: impl Into<Vec<u8>>) -> QftaStatus {
    set_error(message);
    status
}

fn error_status(err: &qfta::Error) -> QftaStatus {
    match err {
        qfta::Error::Parse { .. } => QftaStatus::ParseError,
        qfta::Error::Validation(_) | qfta::Error::SharedEvent(_) => QftaStatus::ValidationError,
        _ => QftaStatus::RuntimeError,
    }
}

/// Message for the last error on this thread, or NULL if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qfta_last_error() -> *const c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(msg) => msg.as_ptr(),
        None => std::ptr::null(),
    })
}

/// Parses and validates a fault tree from NUL-terminated text.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be a valid
/// pointer. On success `*out` owns the tree and must be released with
/// [`qfta_tree_free`].
#[no_mangle]
pub unsafe extern "C" fn qfta_tree_parse(
    text: *const c_char,
    out: *mut *mut QftaFaultTree,
) -> QftaStatus {
    if text.is_null() || out.is_null() {
        return fail(QftaStatus::NullArgument, "null argument");
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return fail(QftaStatus::InvalidUtf8, "input is not valid UTF-8");
    };
    match fault_tree::parse(text) {
        Ok(tree) => {
            *out = Box::into_raw(Box::new(QftaFaultTree { tree }));
            QftaStatus::Ok
        }
        Err(e) => fail(error_status(&e), e.to_string()),
    }
}

/// Releases a tree handle. NULL is ignored.
///
/// # Safety
/// `tree` must be NULL or a pointer obtained from [`qfta_tree_parse`], not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn qfta_tree_free(tree: *mut QftaFaultTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// Number of basic events (leaves). Returns 0 on NULL.
///
/// # Safety
/// `tree` must be NULL or a live tree handle.
#[no_mangle]
pub unsafe extern "C" fn qfta_tree_basic_event_count(tree: *const QftaFaultTree) -> usize {
    tree.as_ref().map_or(0, |t| t.tree.basic_event_count())
}

/// Number of logic gates. Returns 0 on NULL.
///
/// # Safety
/// `tree` must be NULL or a live tree handle.
#[no_mangle]
pub unsafe extern "C" fn qfta_tree_gate_count(tree: *const QftaFaultTree) -> usize {
    tree.as_ref().map_or(0, |t| t.tree.gate_count())
}

/// Closed-form TOP failure probability. Fails with a validation error on
/// trees that share a basic event between gates.
///
/// # Safety
/// `tree` must be a live tree handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qfta_tree_analytic_top(
    tree: *const QftaFaultTree,
    out: *mut f64,
) -> QftaStatus {
    let (Some(handle), false) = (tree.as_ref(), out.is_null()) else {
        return fail(QftaStatus::NullArgument, "null argument");
    };
    match analytic::evaluate(&handle.tree) {
        Ok(probs) => {
            *out = probs[handle.tree.top_name()];
            QftaStatus::Ok
        }
        Err(e) => fail(error_status(&e), e.to_string()),
    }
}

/// Exact TOP failure probability by enumerating all basic-event assignments.
/// Valid for up to 20 basic events; handles shared events.
///
/// # Safety
/// `tree` must be a live tree handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qfta_tree_brute_force_top(
    tree: *const QftaFaultTree,
    out: *mut f64,
) -> QftaStatus {
    let (Some(handle), false) = (tree.as_ref(), out.is_null()) else {
        return fail(QftaStatus::NullArgument, "null argument");
    };
    match analytic::brute_force_probability(&handle.tree) {
        Ok(p) => {
            *out = p;
            QftaStatus::Ok
        }
        Err(e) => fail(error_status(&e), e.to_string()),
    }
}

/// Compiles the tree into a quantum circuit.
///
/// # Safety
/// `tree` must be a live tree handle; `out` must be valid. On success `*out`
/// must be released with [`qfta_circuit_free`].
#[no_mangle]
pub unsafe extern "C" fn qfta_tree_compile(
    tree: *const QftaFaultTree,
    out: *mut *mut QftaCircuit,
) -> QftaStatus {
    let (Some(handle), false) = (tree.as_ref(), out.is_null()) else {
        return fail(QftaStatus::NullArgument, "null argument");
    };
    match compiler::compile(&handle.tree) {
        Ok(compiled) => {
            *out = Box::into_raw(Box::new(QftaCircuit { compiled }));
            QftaStatus::Ok
        }
        Err(e) => fail(error_status(&e), e.to_string()),
    }
}

/// Releases a circuit handle. NULL is ignored.
///
/// # Safety
/// `circuit` must be NULL or a pointer obtained from [`qfta_tree_compile`],
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qfta_circuit_free(circuit: *mut QftaCircuit) {
    if !circuit.is_null() {
        drop(Box::from_raw(circuit));
    }
}

/// Total qubit count (basic events plus gate outputs). Returns 0 on NULL.
///
/// # Safety
/// `circuit` must be NULL or a live circuit handle.
#[no_mangle]
pub unsafe extern "C" fn qfta_circuit_qubit_count(circuit: *const QftaCircuit) -> usize {
    circuit
        .as_ref()
        .map_or(0, |c| c.compiled.circuit.qubit_count)
}

/// Index of the qubit carrying the TOP event. Returns 0 on NULL.
///
/// # Safety
/// `circuit` must be NULL or a live circuit handle.
#[no_mangle]
pub unsafe extern "C" fn qfta_circuit_top_qubit(circuit: *const QftaCircuit) -> usize {
    circuit.as_ref().map_or(0, |c| c.compiled.map.top_qubit())
}

/// Exact TOP failure probability from the final statevector marginal.
///
/// # Safety
/// `circuit` must be a live circuit handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qfta_circuit_exact_top(
    circuit: *const QftaCircuit,
    out: *mut f64,
) -> QftaStatus {
    let (Some(handle), false) = (circuit.as_ref(), out.is_null()) else {
        return fail(QftaStatus::NullArgument, "null argument");
    };
    let result = handle
        .compiled
        .circuit
        .run()
        .and_then(|state| state.probability_of_one(handle.compiled.map.top_qubit()));
    match result {
        Ok(p) => {
            *out = p;
            QftaStatus::Ok
        }
        Err(e) => fail(error_status(&e), e.to_string()),
    }
}

/// Seeded shot-sampled estimate of the TOP failure probability.
///
/// # Safety
/// `circuit` must be a live circuit handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qfta_circuit_sample_top(
    circuit: *const QftaCircuit,
    shots: u64,
    seed: u64,
    workers: u32,
    out: *mut f64,
) -> QftaStatus {
    let (Some(handle), false) = (circuit.as_ref(), out.is_null()) else {
        return fail(QftaStatus::NullArgument, "null argument");
    };
    let result = handle.compiled.circuit.run().and_then(|state| {
        let hist = sim::sample_with_workers(&state, shots, seed, workers)?;
        Ok(sim::top_failure_estimate(&hist, handle.compiled.map.top_qubit()))
    });
    match result {
        Ok(p) => {
            *out = p;
            QftaStatus::Ok
        }
        Err(e) => fail(error_status(&e), e.to_string()),
    }
}

/// Circuit as text, one op per line. The returned string must be released
/// with [`qfta_string_free`]. Returns NULL on NULL input.
///
/// # Safety
/// `circuit` must be NULL or a live circuit handle.
#[no_mangle]
pub unsafe extern "C" fn qfta_circuit_dump(circuit: *const QftaCircuit) -> *mut c_char {
    match circuit.as_ref() {
        Some(handle) => CString::new(handle.compiled.circuit.dump())
            .map(CString::into_raw)
            .unwrap_or(std::ptr::null_mut()),
        None => std::ptr::null_mut(),
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a pointer returned by [`qfta_circuit_dump`], not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn qfta_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
