//! C ABI over the antiflag library.
//!
//! Digraphs travel as opaque `AfDigraph*` handles created and freed here.
//! Functions returning a handle give null on failure; functions returning
//! [`AfStatus`] give `AF_OK` (0) on success. In both cases the last error is
//! retrievable per thread via [`af_last_error_message`]. The matching header
//! is maintained at `include/antiflag.h`; a test keeps the symbol lists in
//! sync.

use antiflag::classify::{are_isomorphic, automorphism_group, canonical_form, recognize_group};
use antiflag::construct1::{build_c1_a1, build_c1_b1, build_c1_general, default_pi};
use antiflag::construct2::{blow_up, build_d1, build_d2, C2Variant};
use antiflag::designs::{chunked_pointwise_family, projective_plane_family, PointwiseFamily};
use antiflag::graphs::{verify_dsrg, verify_srg, Digraph};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

/// Opaque digraph handle.
pub struct AfDigraph(Digraph);

/// Status codes returned by fallible calls.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AfStatus {
    AfOk = 0,
    AfNullPointer = 1,
    AfInvalidArgument = 2,
    AfNotDsrg = 3,
    AfNotSrg = 4,
    AfBufferTooSmall = 5,
    AfConstructionFailed = 6,
}

/// Parameters `(v, k, t, lambda, mu)` of a verified DSRG.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct AfDsrgParams {
    pub v: u64,
    pub k: u64,
    pub t: u64,
    pub lambda: u64,
    pub mu: u64,
}

/// Parameters `(v, k, lambda, mu)` of a verified SRG.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct AfSrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(text).expect("nul-free error message");
    });
}

fn boxed(graph: Digraph) -> *mut AfDigraph {
    Box::into_raw(Box::new(AfDigraph(graph)))
}

/// # Safety
/// `handle` must be null or a pointer previously returned by one of the
/// constructors in this library and not yet freed.
unsafe fn borrow<'a>(handle: *const AfDigraph) -> Option<&'a Digraph> {
    unsafe { handle.as_ref().map(|h| &h.0) }
}

static VERSION: &CStr = c"0.1.0";

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn af_version() -> *const c_char {
    VERSION.as_ptr()
}

/// Copy the calling thread's last error message (NUL-terminated) into `buf`.
/// Returns the full length including the terminator; when `cap` is too small
/// the message is truncated but still terminated. A zero return means no
/// error has been recorded.
///
/// # Safety
/// `buf` must point to at least `cap` writable bytes, or be null (in which
/// case only the required length is returned).
#[no_mangle]
pub unsafe extern "C" fn af_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let msg = slot.borrow();
        let bytes = msg.as_bytes_with_nul();
        if bytes.len() == 1 {
            return 0;
        }
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap);
            unsafe {
                std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
                *buf.add(n - 1) = 0;
            }
        }
        bytes.len()
    })
}

/// Build a digraph from a row-major 0/1 byte matrix of order `n`.
///
/// # Safety
/// `entries` must point to `n * n` readable bytes.
#[no_mangle]
pub unsafe extern "C" fn af_digraph_from_matrix(n: usize, entries: *const u8) -> *mut AfDigraph {
    if entries.is_null() && n > 0 {
        set_error("entries pointer is null");
        return std::ptr::null_mut();
    }
    let slice = unsafe { std::slice::from_raw_parts(entries, n * n) };
    match Digraph::from_matrix(n, slice) {
        Ok(g) => boxed(g),
        Err(e) => {
            set_error(e.to_string());
            std::ptr::null_mut()
        }
    }
}

/// Parse the digraph01 text format (NUL-terminated).
///
/// # Safety
/// `text` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn af_digraph_parse01(text: *const c_char) -> *mut AfDigraph {
    if text.is_null() {
        set_error("text pointer is null");
        return std::ptr::null_mut();
    }
    let text = match unsafe { CStr::from_ptr(text) }.to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("text is not valid UTF-8");
            return std::ptr::null_mut();
        }
    };
    match Digraph::parse_digraph01(text) {
        Ok(g) => boxed(g),
        Err(e) => {
            set_error(e.to_string());
            std::ptr::null_mut()
        }
    }
}

/// Free a digraph handle; null is ignored.
///
/// # Safety
/// `handle` must be null or an unfreed pointer from this library.
#[no_mangle]
pub unsafe extern "C" fn af_digraph_free(handle: *mut AfDigraph) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Vertex count; 0 for null handles.
///
/// # Safety
/// See [`af_digraph_free`].
#[no_mangle]
pub unsafe extern "C" fn af_digraph_order(handle: *const AfDigraph) -> usize {
    unsafe { borrow(handle) }.map_or(0, |g| g.order())
}

/// Copy the row-major 0/1 adjacency matrix into `buf`.
///
/// # Safety
/// `buf` must point to at least `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn af_digraph_matrix(
    handle: *const AfDigraph,
    buf: *mut u8,
    cap: usize,
) -> AfStatus {
    let Some(g) = (unsafe { borrow(handle) }) else {
        set_error("graph handle is null");
        return AfStatus::AfNullPointer;
    };
    let matrix = g.to_matrix();
    if buf.is_null() || cap < matrix.len() {
        set_error(format!("matrix needs {} bytes", matrix.len()));
        return AfStatus::AfBufferTooSmall;
    }
    unsafe { std::ptr::copy_nonoverlapping(matrix.as_ptr(), buf, matrix.len()) };
    AfStatus::AfOk
}

macro_rules! unary_op {
    ($(#[$doc:meta])* $name:ident, $method:ident) => {
        $(#[$doc])*
        /// Returns a new handle; null on null input.
        ///
        /// # Safety
        /// `handle` must be null or an unfreed pointer from this library.
        #[no_mangle]
        pub unsafe extern "C" fn $name(handle: *const AfDigraph) -> *mut AfDigraph {
            match unsafe { borrow(handle) } {
                Some(g) => boxed(g.$method()),
                None => {
                    set_error("graph handle is null");
                    std::ptr::null_mut()
                }
            }
        }
    };
}

unary_op!(
    /// Orientation-reversing conjugate (transpose).
    af_digraph_transpose,
    transpose
);
unary_op!(
    /// Complement `J - I - A`.
    af_digraph_complement,
    complement
);
unary_op!(
    /// Elementwise OR of the matrix with its transpose.
    af_digraph_symmetrize,
    symmetrize
);

fn construct(result: antiflag::Result<Digraph>) -> *mut AfDigraph {
    match result {
        Ok(g) => boxed(g),
        Err(e) => {
            set_error(e.to_string());
            std::ptr::null_mut()
        }
    }
}

/// Construction I, general mode, with the deterministic default design
/// (`q - 1 = a*b` required).
#[no_mangle]
pub extern "C" fn af_construct_c1_general(
    r: usize,
    q: usize,
    a: usize,
    b: usize,
) -> *mut AfDigraph {
    construct(build_c1_general(r, q, a, b))
}

/// Construction I, `b = 1` mode, strict pairing.
#[no_mangle]
pub extern "C" fn af_construct_c1_b1(r: usize, q: usize) -> *mut AfDigraph {
    construct(build_c1_b1(r, q))
}

/// Construction I, `a = 1` mode, with the default part map.
#[no_mangle]
pub extern "C" fn af_construct_c1_a1(r: usize, q: usize) -> *mut AfDigraph {
    if r < 2 || q < 2 {
        set_error("need r >= 2 and q >= 2");
        return std::ptr::null_mut();
    }
    construct(build_c1_a1(r, q, &default_pi(r, q)).map(|built| built.graph))
}

fn c2_variant(variant: i32) -> Option<C2Variant> {
    match variant {
        0 => Some(C2Variant::D1),
        1 => Some(C2Variant::D2),
        _ => None,
    }
}

fn build_c2(family: &PointwiseFamily, variant: C2Variant, m: usize) -> antiflag::Result<Digraph> {
    let base = match variant {
        C2Variant::D1 => build_d1(family)?,
        C2Variant::D2 => build_d2(family)?,
    };
    if m > 1 {
        blow_up(&base, variant, m)
    } else {
        Ok(base)
    }
}

/// Construction II on the deterministic chunked family with per-point
/// parameters `(n-1, s, l, d)`; `variant` is 0 for D1, 1 for D2; `m >= 1`
/// copies.
#[no_mangle]
pub extern "C" fn af_construct_c2(
    n: usize,
    s: usize,
    l: usize,
    d: usize,
    variant: i32,
    m: usize,
) -> *mut AfDigraph {
    let Some(variant) = c2_variant(variant) else {
        set_error("variant must be 0 (D1) or 1 (D2)");
        return std::ptr::null_mut();
    };
    construct(chunked_pointwise_family(n, s, l, d).and_then(|f| build_c2(&f, variant, m)))
}

/// Construction II on the projective plane of prime order `order`.
#[no_mangle]
pub extern "C" fn af_construct_c2_plane(order: usize, variant: i32, m: usize) -> *mut AfDigraph {
    let Some(variant) = c2_variant(variant) else {
        set_error("variant must be 0 (D1) or 1 (D2)");
        return std::ptr::null_mut();
    };
    construct(projective_plane_family(order).and_then(|f| build_c2(&f, variant, m)))
}

/// Exact DSRG verification; fills `out` on success, records the rejection
/// witness otherwise.
///
/// # Safety
/// `handle` as in [`af_digraph_free`]; `out` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn af_verify_dsrg(
    handle: *const AfDigraph,
    out: *mut AfDsrgParams,
) -> AfStatus {
    let Some(g) = (unsafe { borrow(handle) }) else {
        set_error("graph handle is null");
        return AfStatus::AfNullPointer;
    };
    match verify_dsrg(g) {
        Ok(v) => {
            if let Some(out) = unsafe { out.as_mut() } {
                *out = AfDsrgParams {
                    v: v.params.v as u64,
                    k: v.params.k as u64,
                    t: v.params.t as u64,
                    lambda: v.params.lambda as u64,
                    mu: v.params.mu as u64,
                };
            }
            AfStatus::AfOk
        }
        Err(witness) => {
            set_error(witness.to_string());
            AfStatus::AfNotDsrg
        }
    }
}

/// Exact SRG verification for symmetric graphs.
///
/// # Safety
/// `handle` as in [`af_digraph_free`]; `out` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn af_verify_srg(
    handle: *const AfDigraph,
    out: *mut AfSrgParams,
) -> AfStatus {
    let Some(g) = (unsafe { borrow(handle) }) else {
        set_error("graph handle is null");
        return AfStatus::AfNullPointer;
    };
    match verify_srg(g) {
        Ok(p) => {
            if let Some(out) = unsafe { out.as_mut() } {
                *out = AfSrgParams {
                    v: p.v as u64,
                    k: p.k as u64,
                    lambda: p.lambda as u64,
                    mu: p.mu as u64,
                };
            }
            AfStatus::AfOk
        }
        Err(witness) => {
            set_error(witness.to_string());
            AfStatus::AfNotSrg
        }
    }
}

/// Length in bytes of the canonical certificate of `handle` (0 on null).
///
/// # Safety
/// `handle` as in [`af_digraph_free`].
#[no_mangle]
pub unsafe extern "C" fn af_certificate_len(handle: *const AfDigraph) -> usize {
    match unsafe { borrow(handle) } {
        Some(g) => canonical_form(g).certificate.len(),
        None => 0,
    }
}

/// Copy the relabeling-invariant certificate into `buf`; equal certificates
/// characterize isomorphic digraphs.
///
/// # Safety
/// `handle` as in [`af_digraph_free`]; `buf` must hold `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn af_certificate(
    handle: *const AfDigraph,
    buf: *mut u8,
    cap: usize,
) -> AfStatus {
    let Some(g) = (unsafe { borrow(handle) }) else {
        set_error("graph handle is null");
        return AfStatus::AfNullPointer;
    };
    let cert = canonical_form(g).certificate;
    if buf.is_null() || cap < cert.len() {
        set_error(format!("certificate needs {} bytes", cert.len()));
        return AfStatus::AfBufferTooSmall;
    }
    unsafe { std::ptr::copy_nonoverlapping(cert.as_ptr(), buf, cert.len()) };
    AfStatus::AfOk
}

/// Isomorphism test; writes 1 or 0 into `out`.
///
/// # Safety
/// Handles as in [`af_digraph_free`]; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn af_is_isomorphic(
    first: *const AfDigraph,
    second: *const AfDigraph,
    out: *mut u8,
) -> AfStatus {
    let (Some(a), Some(b)) = (unsafe { borrow(first) }, unsafe { borrow(second) }) else {
        set_error("graph handle is null");
        return AfStatus::AfNullPointer;
    };
    let Some(out) = (unsafe { out.as_mut() }) else {
        set_error("output pointer is null");
        return AfStatus::AfNullPointer;
    };
    *out = u8::from(are_isomorphic(a, b).is_some());
    AfStatus::AfOk
}

/// Order of the full automorphism group.
///
/// # Safety
/// `handle` as in [`af_digraph_free`]; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn af_automorphism_order(
    handle: *const AfDigraph,
    out: *mut u64,
) -> AfStatus {
    let Some(g) = (unsafe { borrow(handle) }) else {
        set_error("graph handle is null");
        return AfStatus::AfNullPointer;
    };
    let Some(out) = (unsafe { out.as_mut() }) else {
        set_error("output pointer is null");
        return AfStatus::AfNullPointer;
    };
    *out = automorphism_group(g).order() as u64;
    AfStatus::AfOk
}

/// Recognized structure name of the automorphism group (for orders <= 24),
/// copied NUL-terminated into `buf`; returns the needed length including the
/// terminator.
///
/// # Safety
/// `handle` as in [`af_digraph_free`]; `buf` must hold `cap` writable bytes
/// or be null to query the length.
#[no_mangle]
pub unsafe extern "C" fn af_automorphism_name(
    handle: *const AfDigraph,
    buf: *mut c_char,
    cap: usize,
) -> usize {
    let Some(g) = (unsafe { borrow(handle) }) else {
        set_error("graph handle is null");
        return 0;
    };
    let name = recognize_group(&automorphism_group(g));
    let bytes = name.as_bytes();
    if !buf.is_null() && cap > 0 {
        let n = (bytes.len() + 1).min(cap);
        unsafe {
            std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n - 1);
            *buf.add(n - 1) = 0;
        }
    }
    bytes.len() + 1
}
