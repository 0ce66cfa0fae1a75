//! C ABI over `asz-core`.
//!
//! Instances and colorings live behind opaque handles that the caller must
//! release with the matching `*_free` function. Every fallible function
//! returns an [`AszStatus`]; on failure `asz_last_error()` describes the
//! problem until the next call on the same thread. Strings handed out by the
//! library are freed with `asz_string_free`.

use std::ffi::{c_char, CStr, CString};
use std::panic::AssertUnwindSafe;
use std::slice;

use asz::asz::asz_color as color_partition;
use asz::bounds::{build_table, strategy_bound};
use asz::instance::{BicliqueEntry, ColorReport, InstanceFile};
use asz::{
    bitvector_coloring, bp_exact, chromatic_number_exact, gen_random_partition, gen_star_partition,
    is_proper, BicliquePartition, BoundKind, OracleLimits, Strategy,
};
use num_bigint::BigUint;

mod error;

pub use error::AszStatus;
use error::{catch_error, null_pointer, FfiError};

static LIB_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");

/// A biclique partition instance under construction or ready for coloring.
pub struct AszPartition {
    instance: InstanceFile,
}

/// Result of [`asz_color`].
pub struct AszColoring {
    report: ColorReport,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AszStrategy {
    Thm1 = 0,
    Prop2 = 1,
    Greedy = 2,
    Bitvector = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AszBoundKind {
    Rec4 = 0,
    Rec2 = 1,
}

impl AszPartition {
    fn partition(&self) -> Result<BicliquePartition, FfiError> {
        Ok(self.instance.to_partition()?)
    }

    fn valid_partition(&self) -> Result<BicliquePartition, FfiError> {
        let p = self.partition()?;
        let report = p.validate();
        if let Some(v) = report.violations.first() {
            return Err(FfiError::Status(
                AszStatus::InvalidInstance,
                format!(
                    "invalid instance ({} violations), first: {v}",
                    report.violations.len()
                ),
            ));
        }
        Ok(p)
    }
}

unsafe fn as_ref<'a, T>(ptr: *const T, name: &str) -> Result<&'a T, FfiError> {
    ptr.as_ref().ok_or_else(|| null_pointer(name))
}

unsafe fn write_out<T>(out: *mut T, value: T, name: &str) -> Result<(), FfiError> {
    if out.is_null() {
        return Err(null_pointer(name));
    }
    out.write(value);
    Ok(())
}

unsafe fn vertex_slice<'a>(
    ptr: *const usize,
    len: usize,
    name: &str,
) -> Result<&'a [usize], FfiError> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null_pointer(name));
    }
    Ok(slice::from_raw_parts(ptr, len))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(std::ptr::null_mut(), CString::into_raw)
}

fn boxed_partition(p: &BicliquePartition) -> *mut AszPartition {
    Box::into_raw(Box::new(AszPartition {
        instance: InstanceFile::from_partition(p),
    }))
}

#[no_mangle]
pub extern "C" fn asz_version() -> *const c_char {
    LIB_VERSION.as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL.
#[no_mangle]
pub extern "C" fn asz_last_error() -> *const c_char {
    error::last_error_ptr()
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn asz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates an empty instance on `n` vertices.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn asz_partition_new(n: usize, out: *mut *mut AszPartition) -> AszStatus {
    catch_error(AssertUnwindSafe(|| {
        let p = Box::new(AszPartition {
            instance: InstanceFile {
                n,
                bicliques: Vec::new(),
                expect_edges: None,
            },
        });
        write_out(out, Box::into_raw(p), "out")
    }))
}

/// Appends the biclique `a x b`. Validity is only checked by
/// [`asz_partition_validate`] and the algorithms.
///
/// # Safety
/// `p` must be a live handle; `a`/`b` must point to `a_len`/`b_len` values.
#[no_mangle]
pub unsafe extern "C" fn asz_partition_add_biclique(
    p: *mut AszPartition,
    a: *const usize,
    a_len: usize,
    b: *const usize,
    b_len: usize,
) -> AszStatus {
    catch_error(AssertUnwindSafe(|| {
        let p = p.as_mut().ok_or_else(|| null_pointer("partition"))?;
        let a = vertex_slice(a, a_len, "a")?.to_vec();
        let b = vertex_slice(b, b_len, "b")?.to_vec();
        if let Some(&v) = a.iter().chain(&b).find(|&&v| v >= p.instance.n) {
            return Err(FfiError::Status(
                AszStatus::InvalidArgument,
                format!("vertex {v} outside 0..{}", p.instance.n),
            ));
        }
        p.instance.bicliques.push(BicliqueEntry { a, b });
        Ok(())
    }))
}

/// Parses an instance from its JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn asz_partition_from_json(
    json: *const c_char,
    out: *mut *mut AszPartition,
) -> AszStatus {
    catch_error(AssertUnwindSafe(|| {
        if json.is_null() {
            return Err(null_pointer("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| FfiError::Status(AszStatus::Io, format!("instance is not UTF-8: {e}")))?;
        let instance = InstanceFile::parse(text)?;
        instance.to_partition()?;
        write_out(
            out,
            Box::into_raw(Box::new(AszPartition { instance })),
            "out",
        )
    }))
}

/// Serializes an instance to JSON; free the result with `asz_string_free`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn asz_partition_to_json(
    p: *const AszPartition,
    out: *mut *mut c_char,
) -> AszStatus {
    catch_error(AssertUnwindSafe(|| {
        let p = as_ref(p, "partition")?;
        write_out(out, into_c_string(p.instance.to_json()), "out")
    }))
}

/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn asz_partition_vertex_count(p: *const AszPartition) -> usize {
    p.as_ref().map_or(0, |p| p.instance.n)
}

/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn asz_partition_biclique_count(p: *const AszPartition) -> usize {
    p.as_ref().map_or(0, |p| p.instance.bicliques.len())
}

/// Counts partition violations into `violations`; 0 means valid.
///
/// # Safety
/// `p` must be a live handle and `violations` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn asz_partition_validate(
    p: *const AszPartition,
    violations: *mut usize,
) -> AszStatus {
    catch_error(AssertUnwindSafe(|| {
        let p = as_ref(p, "partition")?;
        let report = p.partition()?.validate();
        if let Some(v) = report.violations.first() {
            error::set_last_error(v.to_string());
        }
        write_out(violations, report.violations.len(), "violations")
    }))
}

/// # Safety
/// `p` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn asz_partition_free(p: *mut AszPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// `K_n` as `n - 1` stars.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn asz_gen_star(n: usize, out: *mut *mut AszPartition) -> AszStatus {
    catch_error(AssertUnwindSafe(|| {
        write_out(out, boxed_partition(&gen_star_partition(n)), "out")
    }))
}

/// Reproducible random instance with at most `m` bicliques on `n >= 2` vertices.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn asz_gen_random(
    n: usize,
    m: usize,
    seed: u64,
    out: *mut *mut AszPartition,
) -> AszStatus {
    catch_error(AssertUnwindSafe(|| {
        if n < 2 {
            return Err(FfiError::Status(
                AszStatus::InvalidArgument,
                "n must be at least 2".into(),
            ));
        }
        write_out(
            out,
            boxed_partition(&gen_random_partition(n, m, seed)),
            "out",
        )
    }))
}

/// Colors a valid instance. With `trace` nonzero the recursion trace is kept
/// for [`asz_coloring_to_json`].
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn asz_color(
    p: *const AszPartition,
    strategy: AszStrategy,
    trace: bool,
    out: *mut *mut AszColoring,
) -> AszStatus {
    catch_error(AssertUnwindSafe(|| {
        let partition = as_ref(p, "partition")?.valid_partition()?;
        let strategy = match strategy {
            AszStrategy::Thm1 => Some(Strategy::Thm1),
            AszStrategy::Prop2 => Some(Strategy::Prop2),
            AszStrategy::Greedy => Some(Strategy::Greedy),
            AszStrategy::Bitvector => None,
        };
        let (coloring, rows, bound) = match strategy {
            Some(s) => {
                let (c, t) = color_partition(&partition, s)?;
                (c, Some(t), strategy_bound(s, partition.m()))
            }
            None => (
                bitvector_coloring(&partition)?,
                None,
                BigUint::from(1u8) << partition.m(),
            ),
        };
        let proper = is_proper(partition.graph(), &coloring)?;
        let within_bound = BigUint::from(coloring.num_colors()) <= bound;
        if !proper || !within_bound {
            return Err(asz::Error::Internal(format!(
                "coloring proper = {proper} with {} colors against bound {bound}",
                coloring.num_colors()
            ))
            .into());
        }
        let report = ColorReport {
            strategy: ColorReport::strategy_name(strategy),
            n: partition.n(),
            m: partition.m(),
            num_colors: coloring.num_colors(),
            colors: coloring.into_assignment(),
            bound: bound.to_string(),
            proper,
            within_bound,
            trace: if trace { rows } else { None },
        };
        write_out(out, Box::into_raw(Box::new(AszColoring { report })), "out")
    }))
}

/// # Safety
/// `c` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn asz_coloring_len(c: *const AszColoring) -> usize {
    c.as_ref().map_or(0, |c| c.report.colors.len())
}

/// # Safety
/// `c` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn asz_coloring_num_colors(c: *const AszColoring) -> usize {
    c.as_ref().map_or(0, |c| c.report.num_colors)
}

/// Copies the per-vertex colors into `buf`, which holds `len` entries.
///
/// # Safety
/// `c` must be a live handle and `buf` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn asz_coloring_copy(
    c: *const AszColoring,
    buf: *mut u64,
    len: usize,
) -> AszStatus {
    catch_error(AssertUnwindSafe(|| {
        let colors = &as_ref(c, "coloring")?.report.colors;
        if len < colors.len() {
            return Err(FfiError::Status(
                AszStatus::InvalidArgument,
                format!("buffer holds {len} colors, need {}", colors.len()),
            ));
        }
        if colors.is_empty() {
            return Ok(());
        }
        if buf.is_null() {
            return Err(null_pointer("buf"));
        }
        slice::from_raw_parts_mut(buf, colors.len()).copy_from_slice(colors);
        Ok(())
    }))
}

/// The certified color bound as a decimal string.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn asz_coloring_bound(
    c: *const AszColoring,
    out: *mut *mut c_char,
) -> AszStatus {
    catch_error(AssertUnwindSafe(|| {
        let c = as_ref(c, "coloring")?;
        write_out(out, into_c_string(c.report.bound.clone()), "out")
    }))
}

/// The full report (colors, bound, optional trace) as JSON.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn asz_coloring_to_json(
    c: *const AszColoring,
    out: *mut *mut c_char,
) -> AszStatus {
    catch_error(AssertUnwindSafe(|| {
        let c = as_ref(c, "coloring")?;
        let text = serde_json::to_string(&c.report).expect("report serializes");
        write_out(out, into_c_string(text), "out")
    }))
}

/// # Safety
/// `c` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn asz_coloring_free(c: *mut AszColoring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Exact chromatic number of the instance graph (caps from `ASZ_ORACLE_LIMIT`).
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn asz_chromatic_number(
    p: *const AszPartition,
    out: *mut usize,
) -> AszStatus {
    catch_error(AssertUnwindSafe(|| {
        let partition = as_ref(p, "partition")?.valid_partition()?;
        let (chi, _) = chromatic_number_exact(partition.graph(), &OracleLimits::from_env()?)?;
        write_out(out, chi, "out")
    }))
}

/// Exact biclique partition number of the instance graph.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn asz_bp_exact(p: *const AszPartition, out: *mut usize) -> AszStatus {
    catch_error(AssertUnwindSafe(|| {
        let partition = as_ref(p, "partition")?.valid_partition()?;
        let (bp, _) = bp_exact(partition.graph(), &OracleLimits::from_env()?)?;
        write_out(out, bp, "out")
    }))
}

/// Entry `k` of a recurrence table as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn asz_bound_value(
    kind: AszBoundKind,
    k: usize,
    out: *mut *mut c_char,
) -> AszStatus {
    catch_error(AssertUnwindSafe(|| {
        let kind = match kind {
            AszBoundKind::Rec4 => BoundKind::Rec4,
            AszBoundKind::Rec2 => BoundKind::Rec2,
        };
        let value = build_table(kind, k).get(k).to_string();
        write_out(out, into_c_string(value), "out")
    }))
}
