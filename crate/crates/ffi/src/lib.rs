//! C ABI over the core library: opaque handles for groups and digraphs,
//! status codes, and JSON-in/JSON-out entry points for the structured
//! operations. Strings returned by this library are owned by the caller
//! and must be released with `dcg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use dcg_core::autiso::{aut_bruteforce_limited, coset_iso_limited, SearchLimits};
use dcg_core::construct::{cayley, coset_digraph, CayleySpec, CosetSpec};
use dcg_core::digraph::Digraph;
use dcg_core::error::Error;
use dcg_core::group::{Group, Subgroup};
use dcg_core::recognize::{maximal_witness, wreath_witnesses};
use dcg_core::{fixtures, json};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DcgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DomainError = 3,
    BudgetExceeded = 4,
    InternalError = 5,
}

/// Opaque handle to a validated finite group.
pub struct DcgGroup {
    inner: Group,
}

/// Opaque handle to a loopless digraph.
pub struct DcgDigraph {
    inner: Digraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> DcgStatus {
    match err.exit_code() {
        2 => DcgStatus::BudgetExceeded,
        3 => DcgStatus::InternalError,
        _ => DcgStatus::DomainError,
    }
}

fn fail(err: Error) -> DcgStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

fn null_check(ok: bool) -> Result<(), DcgStatus> {
    if ok {
        Ok(())
    } else {
        set_error("null pointer argument".into());
        Err(DcgStatus::NullPointer)
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, DcgStatus> {
    null_check(!ptr.is_null())?;
    unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| {
        set_error("string is not valid UTF-8".into());
        DcgStatus::InvalidArgument
    })
}

unsafe fn read_indices<'a>(ptr: *const u32, len: usize) -> Result<&'a [u32], DcgStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    null_check(!ptr.is_null())?;
    Ok(unsafe { std::slice::from_raw_parts(ptr, len) })
}

fn to_owned_string(text: String) -> *mut c_char {
    CString::new(text)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn dcg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Most recent error message on this thread, or null when none. The
/// returned string must be freed with `dcg_string_free`.
#[no_mangle]
pub extern "C" fn dcg_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(c) => c.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a dcg function and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dcg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parse a group from JSON (table form or generator form).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dcg_group_from_json(
    text: *const c_char,
    out: *mut *mut DcgGroup,
) -> DcgStatus {
    if let Err(s) = null_check(!out.is_null()) {
        return s;
    }
    let text = match unsafe { read_str(text) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    match json::group_from_json(text) {
        Ok((group, _)) => {
            unsafe { *out = Box::into_raw(Box::new(DcgGroup { inner: group })) };
            DcgStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Look up a bundled fixture group by name (for example "z6", "s3", "q8").
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dcg_group_fixture(
    name: *const c_char,
    out: *mut *mut DcgGroup,
) -> DcgStatus {
    if let Err(s) = null_check(!out.is_null()) {
        return s;
    }
    let name = match unsafe { read_str(name) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    match fixtures::by_name(name) {
        Some(group) => {
            unsafe { *out = Box::into_raw(Box::new(DcgGroup { inner: group })) };
            DcgStatus::Ok
        }
        None => {
            set_error(format!("unknown fixture '{name}'"));
            DcgStatus::InvalidArgument
        }
    }
}

/// Order of the group; 0 for a null handle.
///
/// # Safety
/// `group` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn dcg_group_order(group: *const DcgGroup) -> usize {
    if group.is_null() {
        return 0;
    }
    unsafe { &*group }.inner.order()
}

/// Canonical JSON for the group; free with `dcg_string_free`.
///
/// # Safety
/// `group` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dcg_group_to_json(group: *const DcgGroup) -> *mut c_char {
    if group.is_null() {
        return ptr::null_mut();
    }
    to_owned_string(json::group_to_json(&unsafe { &*group }.inner))
}

/// Release a group handle.
///
/// # Safety
/// `group` must have come from this library and not yet be freed.
#[no_mangle]
pub unsafe extern "C" fn dcg_group_free(group: *mut DcgGroup) {
    if !group.is_null() {
        drop(unsafe { Box::from_raw(group) });
    }
}

/// Build the Cayley digraph Cay(G, S) for a connection set given as an
/// array of element indices.
///
/// # Safety
/// `group` must be a live handle; `conn` must point to `conn_len` u32
/// values (or be null when `conn_len` is 0); `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dcg_cayley_digraph(
    group: *const DcgGroup,
    conn: *const u32,
    conn_len: usize,
    out: *mut *mut DcgDigraph,
) -> DcgStatus {
    if let Err(s) = null_check(!group.is_null() && !out.is_null()) {
        return s;
    }
    let conn = match unsafe { read_indices(conn, conn_len) } {
        Ok(c) => c,
        Err(s) => return s,
    };
    let g = &unsafe { &*group }.inner;
    let conn: Vec<usize> = conn.iter().map(|&x| x as usize).collect();
    match CayleySpec::new(g.clone(), &conn) {
        Ok(spec) => {
            let d = cayley(&spec);
            unsafe { *out = Box::into_raw(Box::new(DcgDigraph { inner: d })) };
            DcgStatus::Ok
        }
        Err(e) => fail(e),
    }
}

fn subgroup_from_indices(g: &Group, members: &[u32]) -> Result<Subgroup, Error> {
    // an empty member list stands for the trivial subgroup
    if members.is_empty() {
        return Ok(Subgroup::trivial());
    }
    let members: Vec<usize> = members.iter().map(|&x| x as usize).collect();
    Subgroup::new(g, &members)
}

/// Build the double coset digraph Cos(G, H, S); an empty subgroup array
/// means the trivial subgroup, giving the Cayley digraph.
///
/// # Safety
/// Pointer arguments follow the same rules as `dcg_cayley_digraph`.
#[no_mangle]
pub unsafe extern "C" fn dcg_coset_digraph(
    group: *const DcgGroup,
    subgroup: *const u32,
    subgroup_len: usize,
    conn: *const u32,
    conn_len: usize,
    out: *mut *mut DcgDigraph,
) -> DcgStatus {
    if let Err(s) = null_check(!group.is_null() && !out.is_null()) {
        return s;
    }
    let h = match unsafe { read_indices(subgroup, subgroup_len) } {
        Ok(c) => c,
        Err(s) => return s,
    };
    let s = match unsafe { read_indices(conn, conn_len) } {
        Ok(c) => c,
        Err(st) => return st,
    };
    let g = &unsafe { &*group }.inner;
    let s: Vec<usize> = s.iter().map(|&x| x as usize).collect();
    let spec = match subgroup_from_indices(g, h).and_then(|hh| CosetSpec::new(g.clone(), hh, &s)) {
        Ok(spec) => spec,
        Err(e) => return fail(e),
    };
    let d = coset_digraph(&spec);
    unsafe { *out = Box::into_raw(Box::new(DcgDigraph { inner: d })) };
    DcgStatus::Ok
}

/// Parse a digraph from JSON with fields n and arcs.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dcg_digraph_from_json(
    text: *const c_char,
    out: *mut *mut DcgDigraph,
) -> DcgStatus {
    if let Err(s) = null_check(!out.is_null()) {
        return s;
    }
    let text = match unsafe { read_str(text) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    match json::digraph_from_json(text) {
        Ok(d) => {
            unsafe { *out = Box::into_raw(Box::new(DcgDigraph { inner: d })) };
            DcgStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// # Safety
/// `digraph` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn dcg_digraph_vertex_count(digraph: *const DcgDigraph) -> usize {
    if digraph.is_null() {
        return 0;
    }
    unsafe { &*digraph }.inner.vertex_count()
}

/// # Safety
/// `digraph` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn dcg_digraph_arc_count(digraph: *const DcgDigraph) -> usize {
    if digraph.is_null() {
        return 0;
    }
    unsafe { &*digraph }.inner.arc_count()
}

/// 1 when the arc (u, v) is present, 0 otherwise (including out-of-range).
///
/// # Safety
/// `digraph` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn dcg_digraph_has_arc(
    digraph: *const DcgDigraph,
    u: usize,
    v: usize,
) -> i32 {
    if digraph.is_null() {
        return 0;
    }
    let d = &unsafe { &*digraph }.inner;
    i32::from(u < d.vertex_count() && v < d.vertex_count() && u != v && d.has_arc(u, v))
}

/// Canonical JSON for the digraph; free with `dcg_string_free`.
///
/// # Safety
/// `digraph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dcg_digraph_to_json(digraph: *const DcgDigraph) -> *mut c_char {
    if digraph.is_null() {
        return ptr::null_mut();
    }
    to_owned_string(json::digraph_to_json(&unsafe { &*digraph }.inner))
}

/// Release a digraph handle.
///
/// # Safety
/// `digraph` must have come from this library and not yet be freed.
#[no_mangle]
pub unsafe extern "C" fn dcg_digraph_free(digraph: *mut DcgDigraph) {
    if !digraph.is_null() {
        drop(unsafe { Box::from_raw(digraph) });
    }
}

/// Exact order of the digraph's automorphism group as a decimal string
/// (arbitrary precision); free with `dcg_string_free`.
///
/// # Safety
/// `digraph` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dcg_aut_order(
    digraph: *const DcgDigraph,
    max_vertices: usize,
    out: *mut *mut c_char,
) -> DcgStatus {
    if let Err(s) = null_check(!digraph.is_null() && !out.is_null()) {
        return s;
    }
    let limits = SearchLimits {
        max_vertices,
        ..SearchLimits::default()
    };
    match aut_bruteforce_limited(&unsafe { &*digraph }.inner, &limits) {
        Ok(result) => {
            unsafe { *out = to_owned_string(result.group.order().to_string()) };
            DcgStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Wreath witnesses and the maximal decomposition of Cos(G, H, S), as a
/// JSON report; free with `dcg_string_free`.
///
/// # Safety
/// Pointer arguments follow the same rules as `dcg_coset_digraph`.
#[no_mangle]
pub unsafe extern "C" fn dcg_recognize_json(
    group: *const DcgGroup,
    subgroup: *const u32,
    subgroup_len: usize,
    conn: *const u32,
    conn_len: usize,
    out: *mut *mut c_char,
) -> DcgStatus {
    if let Err(s) = null_check(!group.is_null() && !out.is_null()) {
        return s;
    }
    let h = match unsafe { read_indices(subgroup, subgroup_len) } {
        Ok(c) => c,
        Err(s) => return s,
    };
    let s = match unsafe { read_indices(conn, conn_len) } {
        Ok(c) => c,
        Err(st) => return st,
    };
    let g = &unsafe { &*group }.inner;
    let s: Vec<usize> = s.iter().map(|&x| x as usize).collect();
    let subgroup = match subgroup_from_indices(g, h) {
        Ok(sub) => sub,
        Err(e) => return fail(e),
    };
    let result = wreath_witnesses(g, &subgroup, &s).and_then(|witnesses| {
        let report = maximal_witness(g, &subgroup, &s)?;
        let value = serde_json::json!({
            "witnesses": witnesses.iter().map(|w| w.members().to_vec()).collect::<Vec<_>>(),
            "ambiguous_maximal": report.ambiguous,
            "maximal_witness": report
                .decomposition
                .as_ref()
                .map(|d| d.witness.members().to_vec()),
        });
        Ok(value.to_string())
    });
    match result {
        Ok(text) => {
            unsafe { *out = to_owned_string(text) };
            DcgStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Decide isomorphism of two coset specifications given as JSON (fields
/// group, H, S) and return a JSON verdict with the vertex mapping; free
/// with `dcg_string_free`.
///
/// # Safety
/// `first` and `second` must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dcg_coset_iso_json(
    first: *const c_char,
    second: *const c_char,
    out: *mut *mut c_char,
) -> DcgStatus {
    if let Err(s) = null_check(!out.is_null()) {
        return s;
    }
    let a = match unsafe { read_str(first) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    let b = match unsafe { read_str(second) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    let result = json::coset_spec_from_json(a).and_then(|spec1| {
        let spec2 = json::coset_spec_from_json(b)?;
        let outcome = coset_iso_limited(&spec1, &spec2, &SearchLimits::default())?;
        Ok(serde_json::json!({
            "isomorphic": outcome.certificate.is_some(),
            "route": outcome.route,
            "mapping": outcome.certificate.map(|c| c.mapping),
        })
        .to_string())
    });
    match result {
        Ok(text) => {
            unsafe { *out = to_owned_string(text) };
            DcgStatus::Ok
        }
        Err(e) => fail(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cstr(text: &str) -> CString {
        CString::new(text).unwrap()
    }

    #[test]
    fn group_lifecycle_through_abi() {
        let mut group: *mut DcgGroup = ptr::null_mut();
        let status = unsafe { dcg_group_fixture(cstr("z6").as_ptr(), &mut group) };
        assert_eq!(status, DcgStatus::Ok);
        assert_eq!(unsafe { dcg_group_order(group) }, 6);
        let json_ptr = unsafe { dcg_group_to_json(group) };
        let text = unsafe { CStr::from_ptr(json_ptr) }
            .to_str()
            .unwrap()
            .to_owned();
        assert!(text.contains("\"n\":6"));
        unsafe { dcg_string_free(json_ptr) };

        let mut reparsed: *mut DcgGroup = ptr::null_mut();
        let status = unsafe { dcg_group_from_json(cstr(&text).as_ptr(), &mut reparsed) };
        assert_eq!(status, DcgStatus::Ok);
        assert_eq!(unsafe { dcg_group_order(reparsed) }, 6);
        unsafe { dcg_group_free(group) };
        unsafe { dcg_group_free(reparsed) };
    }

    #[test]
    fn octahedron_aut_order_via_abi() {
        let mut group: *mut DcgGroup = ptr::null_mut();
        unsafe { dcg_group_fixture(cstr("z6").as_ptr(), &mut group) };
        let conn: [u32; 4] = [1, 2, 4, 5];
        let mut digraph: *mut DcgDigraph = ptr::null_mut();
        let status = unsafe { dcg_cayley_digraph(group, conn.as_ptr(), conn.len(), &mut digraph) };
        assert_eq!(status, DcgStatus::Ok);
        assert_eq!(unsafe { dcg_digraph_vertex_count(digraph) }, 6);
        assert_eq!(unsafe { dcg_digraph_arc_count(digraph) }, 24);
        assert_eq!(unsafe { dcg_digraph_has_arc(digraph, 0, 1) }, 1);
        assert_eq!(unsafe { dcg_digraph_has_arc(digraph, 0, 3) }, 0);

        let mut order: *mut c_char = ptr::null_mut();
        let status = unsafe { dcg_aut_order(digraph, 64, &mut order) };
        assert_eq!(status, DcgStatus::Ok);
        assert_eq!(unsafe { CStr::from_ptr(order) }.to_str().unwrap(), "48");
        unsafe { dcg_string_free(order) };
        unsafe { dcg_digraph_free(digraph) };
        unsafe { dcg_group_free(group) };
    }

    #[test]
    fn coset_digraph_and_recognition_via_abi() {
        let mut group: *mut DcgGroup = ptr::null_mut();
        unsafe { dcg_group_fixture(cstr("z8").as_ptr(), &mut group) };
        let conn: [u32; 4] = [1, 3, 5, 7];
        let mut report: *mut c_char = ptr::null_mut();
        let status = unsafe {
            dcg_recognize_json(
                group,
                ptr::null(),
                0,
                conn.as_ptr(),
                conn.len(),
                &mut report,
            )
        };
        assert_eq!(status, DcgStatus::Ok);
        let text = unsafe { CStr::from_ptr(report) }.to_str().unwrap();
        assert!(text.contains("[0,2,4,6]"), "{text}");
        unsafe { dcg_string_free(report) };
        unsafe { dcg_group_free(group) };
    }

    #[test]
    fn error_paths_set_messages() {
        let mut group: *mut DcgGroup = ptr::null_mut();
        let status = unsafe { dcg_group_fixture(cstr("nope").as_ptr(), &mut group) };
        assert_eq!(status, DcgStatus::InvalidArgument);
        let msg = dcg_last_error_message();
        assert!(!msg.is_null());
        let text = unsafe { CStr::from_ptr(msg) }.to_str().unwrap();
        assert!(text.contains("nope"));
        unsafe { dcg_string_free(msg) };

        // a loop in the connection set is a domain error
        unsafe { dcg_group_fixture(cstr("z4").as_ptr(), &mut group) };
        let conn: [u32; 1] = [0];
        let mut digraph: *mut DcgDigraph = ptr::null_mut();
        let status = unsafe { dcg_cayley_digraph(group, conn.as_ptr(), 1, &mut digraph) };
        assert_eq!(status, DcgStatus::DomainError);
        unsafe { dcg_group_free(group) };

        let status = unsafe { dcg_group_from_json(cstr("nonsense").as_ptr(), &mut group) };
        assert_eq!(status, DcgStatus::DomainError);
    }

    #[test]
    fn cross_group_iso_via_abi() {
        let a = cstr(
            r#"{"group": {"degree": 6, "generators": [[1,2,3,4,5,0]]}, "H": [0,3], "S": [1,2,4,5]}"#,
        );
        let b = cstr(
            r#"{"group": {"degree": 3, "generators": [[1,2,0],[1,0,2]]}, "H": [0,2], "S": [1,3,4,5]}"#,
        );
        let mut verdict: *mut c_char = ptr::null_mut();
        let status = unsafe { dcg_coset_iso_json(a.as_ptr(), b.as_ptr(), &mut verdict) };
        assert_eq!(status, DcgStatus::Ok);
        let text = unsafe { CStr::from_ptr(verdict) }.to_str().unwrap();
        assert!(text.contains("\"isomorphic\":true"), "{text}");
        unsafe { dcg_string_free(verdict) };
    }

    #[test]
    fn version_is_nul_terminated_static() {
        let v = unsafe { CStr::from_ptr(dcg_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
