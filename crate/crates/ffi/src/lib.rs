//! C ABI for the `netlts` library.
//!
//! Conventions:
//! - Inputs are NUL-terminated UTF-8 strings holding the same JSON documents
//!   the `netlts` CLI reads (algebras, actions, matrices, wedge pairs).
//! - Every fallible call returns a [`NetltsStatus`]; `NETLTS_STATUS_OK` means
//!   the computation ran, not that a checked identity holds. Verdict payloads
//!   carry their own `"pass"` field.
//! - Result payloads are returned as malloc-style C strings owned by the
//!   library; release them with [`netlts_string_free`].
//! - Contexts are opaque handles created by [`netlts_context_new`] and
//!   released with [`netlts_context_free`]. A handle may be shared across
//!   calls but is not synchronized; guard concurrent use externally.
//! - On any non-OK status, [`netlts_last_error_message`] returns a
//!   thread-local description of the failure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use netlts::deform::{deform_check, equivalence_check, nijenhuis_check, trivial_deform};
use netlts::io::{self, AlgebraFile};
use netlts::matrix::Matrix;
use netlts::net::{net_check, NetContext};
use netlts::{Error, Result};

/// Outcome of a C-ABI call. `Ok` means the computation completed; consult the
/// returned JSON for mathematical verdicts.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetltsStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// An input string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An input document failed to parse or had the wrong shape.
    Malformed = 3,
    DimensionMismatch = 4,
    IndexOutOfRange = 5,
    /// An input algebra or action violates its defining identities.
    AxiomsFailed = 6,
    /// A documented precondition of the operation does not hold.
    Precondition = 7,
    NotInvertible = 8,
    UnsupportedDegree = 9,
    Internal = 10,
    /// A panic was caught at the ABI boundary.
    Panic = 11,
}

/// Opaque handle bundling the target triple system, the source triple system,
/// and a verified coherent action between them.
pub struct NetltsContext {
    inner: NetContext,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> NetltsStatus {
    match err {
        Error::DimensionMismatch(_) => NetltsStatus::DimensionMismatch,
        Error::IndexOutOfRange(_) => NetltsStatus::IndexOutOfRange,
        Error::AxiomsFailed(_) => NetltsStatus::AxiomsFailed,
        Error::Precondition(_) => NetltsStatus::Precondition,
        Error::NotInvertible => NetltsStatus::NotInvertible,
        Error::UnsupportedDegree(_) => NetltsStatus::UnsupportedDegree,
        Error::Internal(_) => NetltsStatus::Internal,
        Error::BadRational(_) | Error::Malformed(_) | Error::Json(_) | Error::Io(_) => {
            NetltsStatus::Malformed
        }
    }
}

fn fail(err: Error) -> NetltsStatus {
    let status = status_of(&err);
    set_last_error(err.to_string());
    status
}

/// Reads a NUL-terminated UTF-8 argument, reporting NULL/UTF-8 problems.
///
/// # Safety
/// `p` must be NULL or point to a NUL-terminated string.
unsafe fn arg_str<'a>(name: &str, p: *const c_char) -> std::result::Result<&'a str, NetltsStatus> {
    if p.is_null() {
        set_last_error(format!("{name}: NULL pointer"));
        return Err(NetltsStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_last_error(format!("{name}: invalid UTF-8"));
        NetltsStatus::InvalidUtf8
    })
}

fn write_json(out: *mut *mut c_char, value: serde_json::Value) -> NetltsStatus {
    if out.is_null() {
        set_last_error("out: NULL pointer".into());
        return NetltsStatus::NullPointer;
    }
    let text = serde_json::to_string_pretty(&value).expect("verdict JSON serializes");
    let c = CString::new(text).expect("serde_json output has no NUL bytes");
    unsafe { *out = c.into_raw() };
    NetltsStatus::Ok
}

fn guarded(f: impl FnOnce() -> NetltsStatus) -> NetltsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            NetltsStatus::Panic
        }
    }
}

fn parse_lts(name: &str, text: &str) -> Result<netlts::algebra::LieTripleSystem> {
    match io::parse_algebra(text)? {
        AlgebraFile::TripleSystem { labels, bracket } => {
            netlts::algebra::LieTripleSystem::new(labels, bracket)
        }
        _ => Err(Error::Malformed(format!("{name}: expected kind \"lts\""))),
    }
}

fn context_map(ctx: &NetltsContext, map_json: &str) -> Result<Matrix> {
    let t = io::parse_map(map_json)?;
    ctx.inner.check_map_shape(&t)?;
    Ok(t)
}

/// Version of the underlying library, as a static string. Do not free.
#[no_mangle]
pub extern "C" fn netlts_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Description of the most recent failure on this thread, or NULL if the last
/// call succeeded. The pointer stays valid until the next failing call on the
/// same thread; do not free it.
#[no_mangle]
pub extern "C" fn netlts_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |c| c.as_ptr())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned through an `out`
/// parameter of this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn netlts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a verified context from three JSON documents: the target triple
/// system, the source triple system, and the action tensor. Verifies the
/// triple-system axioms of both algebras and the coherence of the action;
/// returns `AxiomsFailed` if any identity is violated.
///
/// On success `*out` owns a new handle; release it with
/// [`netlts_context_free`].
///
/// # Safety
/// String arguments must be NULL or NUL-terminated; `out` must be a valid
/// pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn netlts_context_new(
    target_json: *const c_char,
    source_json: *const c_char,
    action_json: *const c_char,
    out: *mut *mut NetltsContext,
) -> NetltsStatus {
    guarded(|| {
        if out.is_null() {
            set_last_error("out: NULL pointer".into());
            return NetltsStatus::NullPointer;
        }
        let target = match arg_str("target_json", target_json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let source = match arg_str("source_json", source_json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let action = match arg_str("action_json", action_json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let build = || -> Result<NetContext> {
            let l = parse_lts("target_json", target)?;
            let lp = parse_lts("source_json", source)?;
            let act = io::parse_action(action)?;
            NetContext::new(l, lp, act)
        };
        match build() {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(NetltsContext { inner }));
                NetltsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a context handle. NULL is ignored.
///
/// # Safety
/// `ctx` must be NULL or a handle from [`netlts_context_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn netlts_context_free(ctx: *mut NetltsContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

unsafe fn with_ctx<'a>(
    ctx: *const NetltsContext,
) -> std::result::Result<&'a NetltsContext, NetltsStatus> {
    if ctx.is_null() {
        set_last_error("ctx: NULL pointer".into());
        return Err(NetltsStatus::NullPointer);
    }
    Ok(&*ctx)
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

fn json_or_fail(out: *mut *mut c_char, r: Result<serde_json::Value>) -> NetltsStatus {
    match r {
        Ok(v) => write_json(out, v),
        Err(e) => fail(e),
    }
}

/// Checks whether the linear map in `map_json` satisfies the structure
/// equation (2.14) in the given context. Writes a verdict document to
/// `*out_json`; its `"pass"` field carries the answer and, on failure, a
/// witness pinpoints the first violated basis triple.
///
/// # Safety
/// `ctx` must be a live handle; `map_json` a NUL-terminated string; `out_json`
/// valid writable storage.
#[no_mangle]
pub unsafe extern "C" fn netlts_net_check(
    ctx: *const NetltsContext,
    map_json: *const c_char,
    out_json: *mut *mut c_char,
) -> NetltsStatus {
    guarded(|| {
        let ctx = try_status!(with_ctx(ctx));
        let map = try_status!(arg_str("map_json", map_json));
        json_or_fail(
            out_json,
            context_map(ctx, map).and_then(|t| {
                let v = net_check(&ctx.inner, &t)?;
                Ok(serde_json::to_value(&v)?)
            }),
        )
    })
}

/// Computes the descendent 3-Leibniz algebra of a verified structure map and
/// writes it as an algebra document (kind `"3leibniz"`). Returns
/// `Precondition` if the map fails the structure equation.
///
/// # Safety
/// Same contract as [`netlts_net_check`].
#[no_mangle]
pub unsafe extern "C" fn netlts_descendent(
    ctx: *const NetltsContext,
    map_json: *const c_char,
    out_json: *mut *mut c_char,
) -> NetltsStatus {
    guarded(|| {
        let ctx = try_status!(with_ctx(ctx));
        let map = try_status!(arg_str("map_json", map_json));
        json_or_fail(
            out_json,
            context_map(ctx, map).and_then(|t| {
                let net = netlts::net::Net::new(ctx.inner.clone(), t)?;
                let alg = netlts::net::descendent(&net)?;
                Ok(io::algebra_json(&AlgebraFile::ThreeLeibniz {
                    labels: Some(alg.labels.clone()),
                    bracket: alg.bracket,
                }))
            }),
        )
    })
}

/// Computes cochain, cocycle, coboundary, and quotient dimensions of the
/// complex induced by a verified structure map at the given degree
/// (0, 1, or 2; degree 3 additionally requires `enable_degree_3`).
///
/// # Safety
/// Same contract as [`netlts_net_check`].
#[no_mangle]
pub unsafe extern "C" fn netlts_cohomology(
    ctx: *const NetltsContext,
    map_json: *const c_char,
    degree: u32,
    enable_degree_3: bool,
    out_json: *mut *mut c_char,
) -> NetltsStatus {
    guarded(|| {
        let ctx = try_status!(with_ctx(ctx));
        let map = try_status!(arg_str("map_json", map_json));
        json_or_fail(
            out_json,
            context_map(ctx, map).and_then(|t| {
                let net = netlts::net::Net::new(ctx.inner.clone(), t)?;
                let report =
                    netlts::cohomology::cohomology_dims(&net, degree as usize, enable_degree_3)?;
                Ok(serde_json::to_value(&report)?)
            }),
        )
    })
}

/// Checks whether `direction_json` is an infinitesimal deformation of the
/// verified structure map: the three coefficient equations (5.1)-(5.3) are
/// reported separately in the verdict document.
///
/// # Safety
/// Same contract as [`netlts_net_check`], plus `direction_json` must be a
/// NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn netlts_deform_check(
    ctx: *const NetltsContext,
    map_json: *const c_char,
    direction_json: *const c_char,
    out_json: *mut *mut c_char,
) -> NetltsStatus {
    guarded(|| {
        let ctx = try_status!(with_ctx(ctx));
        let map = try_status!(arg_str("map_json", map_json));
        let direction = try_status!(arg_str("direction_json", direction_json));
        json_or_fail(
            out_json,
            (|| {
                let t = context_map(ctx, map)?;
                let t1 = context_map(ctx, direction)?;
                let net = netlts::net::Net::new(ctx.inner.clone(), t)?;
                let v = deform_check(&net, &t1)?;
                Ok(serde_json::to_value(&v)?)
            })(),
        )
    })
}

/// Checks whether two infinitesimal deformations are equivalent via the
/// wedge pair in `pair_json` (equations (5.4)-(5.6)). Both directions must
/// individually pass the deformation equations; otherwise `Precondition`.
///
/// # Safety
/// Same contract as [`netlts_deform_check`], plus `t1_tilde_json` and
/// `pair_json` must be NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn netlts_equivalence_check(
    ctx: *const NetltsContext,
    map_json: *const c_char,
    t1_json: *const c_char,
    t1_tilde_json: *const c_char,
    pair_json: *const c_char,
    out_json: *mut *mut c_char,
) -> NetltsStatus {
    guarded(|| {
        let ctx = try_status!(with_ctx(ctx));
        let map = try_status!(arg_str("map_json", map_json));
        let t1 = try_status!(arg_str("t1_json", t1_json));
        let t1t = try_status!(arg_str("t1_tilde_json", t1_tilde_json));
        let pair = try_status!(arg_str("pair_json", pair_json));
        json_or_fail(
            out_json,
            (|| {
                let t = context_map(ctx, map)?;
                let d1 = context_map(ctx, t1)?;
                let d2 = context_map(ctx, t1t)?;
                let p = io::parse_pair(pair, ctx.inner.dim_l())?;
                let net = netlts::net::Net::new(ctx.inner.clone(), t)?;
                let v = equivalence_check(&net, &d1, &d2, &p)?;
                Ok(serde_json::to_value(&v)?)
            })(),
        )
    })
}

/// Checks the Nijenhuis conditions (5.4), (5.5), (5.7) for a wedge pair of
/// target-algebra vectors against the verified structure map.
///
/// # Safety
/// Same contract as [`netlts_net_check`], plus `pair_json` must be a
/// NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn netlts_nijenhuis_check(
    ctx: *const NetltsContext,
    map_json: *const c_char,
    pair_json: *const c_char,
    out_json: *mut *mut c_char,
) -> NetltsStatus {
    guarded(|| {
        let ctx = try_status!(with_ctx(ctx));
        let map = try_status!(arg_str("map_json", map_json));
        let pair = try_status!(arg_str("pair_json", pair_json));
        json_or_fail(
            out_json,
            (|| {
                let t = context_map(ctx, map)?;
                let p = io::parse_pair(pair, ctx.inner.dim_l())?;
                let net = netlts::net::Net::new(ctx.inner.clone(), t)?;
                let v = nijenhuis_check(&net, &p)?;
                Ok(serde_json::to_value(&v)?)
            })(),
        )
    })
}

/// Produces the trivial infinitesimal deformation generated by a Nijenhuis
/// wedge pair and writes it as a matrix document. Returns `Precondition`
/// when the pair is not Nijenhuis.
///
/// # Safety
/// Same contract as [`netlts_nijenhuis_check`].
#[no_mangle]
pub unsafe extern "C" fn netlts_trivial_deform(
    ctx: *const NetltsContext,
    map_json: *const c_char,
    pair_json: *const c_char,
    out_json: *mut *mut c_char,
) -> NetltsStatus {
    guarded(|| {
        let ctx = try_status!(with_ctx(ctx));
        let map = try_status!(arg_str("map_json", map_json));
        let pair = try_status!(arg_str("pair_json", pair_json));
        json_or_fail(
            out_json,
            (|| {
                let t = context_map(ctx, map)?;
                let p = io::parse_pair(pair, ctx.inner.dim_l())?;
                let net = netlts::net::Net::new(ctx.inner.clone(), t)?;
                let t1 = trivial_deform(&net, &p)?;
                Ok(io::map_json(&t1))
            })(),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    const L3: &str = r#"{"kind":"lts","dim":3,
        "brackets":[{"args":[0,1,0],"out":{"2":"1"}},{"args":[1,0,0],"out":{"2":"-1"}}]}"#;
    const ACTION: &str = r#"{"acting_dim":3,"acted_dim":3,"theta":[
        {"x":0,"y":0,"matrix":[["0","0","0"],["0","0","0"],["0","-1","0"]]},
        {"x":1,"y":0,"matrix":[["0","0","0"],["0","0","0"],["1","0","0"]]}]}"#;
    const T_STAR: &str = r#"{"rows":3,"cols":3,
        "matrix":[["2","0","0"],["0","1/2","0"],["0","0","1"]]}"#;

    fn cstring(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    fn make_ctx() -> *mut NetltsContext {
        let (l, a) = (cstring(L3), cstring(ACTION));
        let mut ctx = ptr::null_mut();
        let status =
            unsafe { netlts_context_new(l.as_ptr(), l.as_ptr(), a.as_ptr(), &mut ctx) };
        assert_eq!(status, NetltsStatus::Ok);
        assert!(!ctx.is_null());
        ctx
    }

    fn take_json(out: *mut c_char) -> serde_json::Value {
        assert!(!out.is_null());
        let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
        unsafe { netlts_string_free(out) };
        serde_json::from_str(&text).unwrap()
    }

    #[test]
    fn net_check_round_trip() {
        let ctx = make_ctx();
        let map = cstring(T_STAR);
        let mut out = ptr::null_mut();
        let status = unsafe { netlts_net_check(ctx, map.as_ptr(), &mut out) };
        assert_eq!(status, NetltsStatus::Ok);
        let v = take_json(out);
        assert_eq!(v["pass"], serde_json::Value::Bool(true));
        unsafe { netlts_context_free(ctx) };
    }

    #[test]
    fn failing_map_reports_witness_equation() {
        let ctx = make_ctx();
        let id = cstring(
            r#"{"rows":3,"cols":3,"matrix":[["1","0","0"],["0","1","0"],["0","0","1"]]}"#,
        );
        let mut out = ptr::null_mut();
        let status = unsafe { netlts_net_check(ctx, id.as_ptr(), &mut out) };
        assert_eq!(status, NetltsStatus::Ok);
        let v = take_json(out);
        assert_eq!(v["pass"], serde_json::Value::Bool(false));
        assert_eq!(v["witness"]["equation"], "2.14");
        unsafe { netlts_context_free(ctx) };
    }

    #[test]
    fn bad_input_sets_error_message() {
        let l = cstring(L3);
        let a = cstring("not json");
        let mut ctx = ptr::null_mut();
        let status =
            unsafe { netlts_context_new(l.as_ptr(), l.as_ptr(), a.as_ptr(), &mut ctx) };
        assert_eq!(status, NetltsStatus::Malformed);
        let msg = unsafe { CStr::from_ptr(netlts_last_error_message()) };
        assert!(!msg.to_str().unwrap().is_empty());
    }

    #[test]
    fn null_arguments_are_rejected() {
        let mut ctx = ptr::null_mut();
        let status = unsafe { netlts_context_new(ptr::null(), ptr::null(), ptr::null(), &mut ctx) };
        assert_eq!(status, NetltsStatus::NullPointer);
        let mut out = ptr::null_mut();
        let status = unsafe { netlts_net_check(ptr::null(), ptr::null(), &mut out) };
        assert_eq!(status, NetltsStatus::NullPointer);
    }

    #[test]
    fn cohomology_and_trivial_deform_round_trip() {
        let ctx = make_ctx();
        let map = cstring(T_STAR);
        let mut out = ptr::null_mut();
        let status = unsafe { netlts_cohomology(ctx, map.as_ptr(), 1, false, &mut out) };
        assert_eq!(status, NetltsStatus::Ok);
        let v = take_json(out);
        assert_eq!(v["n"], 1);

        let pair = cstring(r#"{"a":["1","0","0"],"b":["0","1","0"]}"#);
        let mut out = ptr::null_mut();
        let status = unsafe { netlts_trivial_deform(ctx, map.as_ptr(), pair.as_ptr(), &mut out) };
        assert_eq!(status, NetltsStatus::Ok);
        let v = take_json(out);
        assert_eq!(v["matrix"][2][0], "-1");
        unsafe { netlts_context_free(ctx) };
    }
}
