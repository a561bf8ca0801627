//! C interface to tpkit.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `*_free` function. Every fallible call returns a
//! [`TpkitStatus`]; on anything other than `TPKIT_STATUS_OK` the message is
//! available from [`tpkit_last_error_message`] on the same thread. Strings
//! returned to the caller are owned by the caller and released with
//! [`tpkit_string_free`]. No call unwinds into C: panics become
//! `TPKIT_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tpkit::biclique::has_balanced_biclique;
use tpkit::checker::{check, Method, Property};
use tpkit::document::{GadgetDocument, WitnessDocument};
use tpkit::generator::generate_ssr;
use tpkit::reduction::evaluate_reduction;
use tpkit::{BipartiteGraph, CheckReport, Error, PartialMatrix, Signature};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TpkitStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Bounds = 4,
    Shape = 5,
    DivisorZero = 6,
    Argument = 7,
    CandidateExhausted = 8,
    Certification = 9,
    Internal = 10,
    Panic = 11,
}

/// Work counters of a check.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TpkitCounters {
    pub minors_evaluated: u64,
    pub subproblems: u64,
    pub subproblems_raw: u64,
    pub arithmetic_ops: u64,
}

/// A partial matrix over the rationals.
pub struct TpkitMatrix(PartialMatrix);

/// The outcome of a check.
pub struct TpkitReport(CheckReport);

/// A bipartite graph.
pub struct TpkitGraph(BipartiteGraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs were replaced");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Failure(TpkitStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => TpkitStatus::Parse,
            Error::Bounds(_) => TpkitStatus::Bounds,
            Error::Shape(_) => TpkitStatus::Shape,
            Error::DivisorZero { .. } => TpkitStatus::DivisorZero,
            Error::Argument(_) => TpkitStatus::Argument,
            Error::CandidateExhausted { .. } => TpkitStatus::CandidateExhausted,
            Error::Certification(_) => TpkitStatus::Certification,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(TpkitStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, records any error or panic, and converts it to a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> TpkitStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => TpkitStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(&message);
            TpkitStatus::Panic
        }
    }
}

/// # Safety
/// `s` is null or a NUL-terminated string valid for the call.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(TpkitStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// As [`read_str`]; null yields `None`.
unsafe fn read_optional_str<'a>(s: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if s.is_null() {
        Ok(None)
    } else {
        read_str(s, what).map(Some)
    }
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(TpkitStatus::Internal, "output contains a NUL byte".into()))
}

/// # Safety
/// `out` is null or valid for a write.
unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn tpkit_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn tpkit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tpkit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the matrix text format (`?` marks an unspecified cell).
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tpkit_matrix_parse(text: *const c_char, out: *mut *mut TpkitMatrix) -> TpkitStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let matrix: PartialMatrix = text.parse()?;
        store(out, TpkitMatrix(matrix))
    })
}

/// # Safety
/// `matrix` is null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn tpkit_matrix_free(matrix: *mut TpkitMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

/// Row count, or 0 for a null handle.
///
/// # Safety
/// `matrix` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tpkit_matrix_rows(matrix: *const TpkitMatrix) -> usize {
    matrix.as_ref().map_or(0, |m| m.0.rows())
}

/// Column count, or 0 for a null handle.
///
/// # Safety
/// `matrix` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tpkit_matrix_cols(matrix: *const TpkitMatrix) -> usize {
    matrix.as_ref().map_or(0, |m| m.0.cols())
}

/// The matrix in text format, or null on a null handle. Free with
/// [`tpkit_string_free`].
///
/// # Safety
/// `matrix` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tpkit_matrix_to_string(matrix: *const TpkitMatrix) -> *mut c_char {
    match matrix.as_ref() {
        Some(m) => into_c_string(m.0.to_string()).unwrap_or(ptr::null_mut()),
        None => ptr::null_mut(),
    }
}

/// Checks `matrix` for `property` (`tp`, `tn`, `ssr`, `wsr`) with `method`
/// (`auto`, `dodgson`, `brute`, `recursive`, `biclique`; null means
/// `auto`). `signature` is `+,-,...` and may be null for `tp` and `tn`.
///
/// # Safety
/// `matrix` is a live handle, string arguments are null or NUL-terminated,
/// and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tpkit_check(
    matrix: *const TpkitMatrix,
    property: *const c_char,
    signature: *const c_char,
    method: *const c_char,
    out: *mut *mut TpkitReport,
) -> TpkitStatus {
    guard(|| {
        let matrix = &matrix.as_ref().ok_or_else(|| null("matrix"))?.0;
        let property: Property = read_str(property, "property")?.parse()?;
        let signature: Option<Signature> = read_optional_str(signature, "signature")?
            .map(str::parse)
            .transpose()?;
        let method: Method = read_optional_str(method, "method")?.unwrap_or("auto").parse()?;
        let spec = property.spec(signature.as_ref(), matrix.rows(), matrix.cols())?;
        let report = check(matrix, &spec, method, false)?;
        store(out, TpkitReport(report))
    })
}

/// # Safety
/// `report` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tpkit_report_free(report: *mut TpkitReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// True if the property holds; false for a failed check or a null handle.
///
/// # Safety
/// `report` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tpkit_report_passed(report: *const TpkitReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.passed())
}

/// Order of the witness minor, or 0 if the check passed.
///
/// # Safety
/// `report` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tpkit_report_witness_order(report: *const TpkitReport) -> usize {
    report
        .as_ref()
        .and_then(|r| r.0.witness.as_ref())
        .map_or(0, |w| w.order())
}

/// # Safety
/// `report` is a live handle and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tpkit_report_counters(report: *const TpkitReport, out: *mut TpkitCounters) -> TpkitStatus {
    guard(|| {
        let c = report.as_ref().ok_or_else(|| null("report"))?.0.counters;
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        *out = TpkitCounters {
            minors_evaluated: c.minors_evaluated,
            subproblems: c.subproblems,
            subproblems_raw: c.subproblems_raw,
            arithmetic_ops: c.arithmetic_ops,
        };
        Ok(())
    })
}

/// The report as JSON: `verdict`, `witness` (exact values as strings, or
/// null) and `counters`. Free with [`tpkit_string_free`].
///
/// # Safety
/// `report` is a live handle and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tpkit_report_to_json(report: *const TpkitReport, out: *mut *mut c_char) -> TpkitStatus {
    guard(|| {
        let r = &report.as_ref().ok_or_else(|| null("report"))?.0;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let doc = serde_json::json!({
            "verdict": r.verdict(),
            "witness": r.witness.as_ref().map(WitnessDocument::from),
            "counters": r.counters,
        });
        *out = into_c_string(doc.to_string())?;
        Ok(())
    })
}

/// A strictly sign-regular `rows`×`cols` matrix; a null `signature` means
/// all `+`.
///
/// # Safety
/// `signature` is null or NUL-terminated; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tpkit_generate_ssr(
    rows: usize,
    cols: usize,
    signature: *const c_char,
    out: *mut *mut TpkitMatrix,
) -> TpkitStatus {
    guard(|| {
        let signature = match read_optional_str(signature, "signature")? {
            Some(s) => s.parse()?,
            None => Signature::all_positive(rows.min(cols)),
        };
        let (matrix, _) = generate_ssr(rows, cols, &signature)?;
        store(out, TpkitMatrix(matrix))
    })
}

/// Parses the graph text format: `m n`, then one `u v` edge per line.
///
/// # Safety
/// `text` is NUL-terminated; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tpkit_graph_parse(text: *const c_char, out: *mut *mut TpkitGraph) -> TpkitStatus {
    guard(|| {
        let graph: BipartiteGraph = read_str(text, "text")?.parse()?;
        store(out, TpkitGraph(graph))
    })
}

/// # Safety
/// `graph` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tpkit_graph_free(graph: *mut TpkitGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Whether `graph` has `k` left and `k` right vertices that are all joined.
///
/// # Safety
/// `graph` is a live handle and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tpkit_has_balanced_biclique(graph: *const TpkitGraph, k: usize, out: *mut bool) -> TpkitStatus {
    guard(|| {
        let graph = &graph.as_ref().ok_or_else(|| null("graph"))?.0;
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        *out = has_balanced_biclique(graph, k);
        Ok(())
    })
}

/// Builds and verifies the balanced-biclique gadget for `graph`, writing
/// its JSON description to `out`. A null `signature` means all `+`.
///
/// # Safety
/// `graph` is a live handle, `signature` is null or NUL-terminated, and
/// `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tpkit_gadget(
    graph: *const TpkitGraph,
    k: usize,
    signature: *const c_char,
    strict: bool,
    out: *mut *mut c_char,
) -> TpkitStatus {
    guard(|| {
        let graph = &graph.as_ref().ok_or_else(|| null("graph"))?.0;
        let signature = match read_optional_str(signature, "signature")? {
            Some(s) => s.parse()?,
            None => Signature::all_positive(graph.left().min(graph.right())),
        };
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let outcome = evaluate_reduction(graph, k, &signature, strict)?;
        let json = serde_json::to_string(&GadgetDocument::from(&outcome))
            .map_err(|e| Failure(TpkitStatus::Internal, e.to_string()))?;
        *out = into_c_string(json)?;
        Ok(())
    })
}
