//! C interface to linkform.
//!
//! Every function returns an [`LfStatus`]. Results come back through out
//! pointers as opaque handles that the caller releases with the matching
//! `*_free` function. When a call fails and an `LfString` out pointer was
//! supplied, it receives a JSON object `{"error", "message"}`.

use linkform::cli::{self, Format, Job, Verb};
use linkform::io::{self, Document};
use linkform::represent::is_representable;
use linkform::signature::total_jump;
use linkform::LinkError;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LfStatus {
    Ok = 0,
    Null = 1,
    Parse = 2,
    Math = 3,
    Identity = 4,
    Panic = 5,
}

impl LfStatus {
    fn of(e: &LinkError) -> LfStatus {
        match e.exit_code() {
            2 => LfStatus::Parse,
            4 => LfStatus::Identity,
            _ => LfStatus::Math,
        }
    }
}

/// A parsed input document together with its session field.
pub struct LfDocument {
    doc: Document,
}

/// An owned NUL-terminated UTF-8 string.
pub struct LfString {
    text: CString,
}

fn boxed_string(s: String) -> *mut LfString {
    // Rendered JSON never contains NUL; strip defensively rather than fail.
    let text = CString::new(s.replace('\0', "")).expect("NUL bytes removed");
    Box::into_raw(Box::new(LfString { text }))
}

unsafe fn put_string(out: *mut *mut LfString, s: String) {
    if !out.is_null() {
        *out = boxed_string(s);
    }
}

unsafe fn put_error(out: *mut *mut LfString, e: &LinkError) -> LfStatus {
    put_string(out, io::error_json(e).to_string());
    LfStatus::of(e)
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, LinkError> {
    CStr::from_ptr(p).to_str().map_err(|_| LinkError::Parse("input is not UTF-8".into()))
}

fn guarded(f: impl FnOnce() -> LfStatus) -> LfStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(LfStatus::Panic)
}

/// Parses a JSON document. `field_sqrt` of 0 means no square root is adjoined
/// beyond what the document requests.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be writable.
/// `error` may be null.
#[no_mangle]
pub unsafe extern "C" fn lf_document_parse(
    json: *const c_char,
    field_sqrt: u32,
    out: *mut *mut LfDocument,
    error: *mut *mut LfString,
) -> LfStatus {
    if json.is_null() || out.is_null() {
        return LfStatus::Null;
    }
    *out = ptr::null_mut();
    guarded(|| {
        let parsed = read_str(json).and_then(|s| {
            let v = serde_json::from_str(s).map_err(|e| LinkError::Parse(format!("invalid JSON: {e}")))?;
            io::parse_document(&v, (field_sqrt != 0).then_some(field_sqrt))
        });
        match parsed {
            Ok(doc) => {
                *out = Box::into_raw(Box::new(LfDocument { doc }));
                LfStatus::Ok
            }
            Err(e) => put_error(error, &e),
        }
    })
}

/// # Safety
/// `doc` must come from [`lf_document_parse`] and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lf_document_free(doc: *mut LfDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Classifies the document and returns the structured form as JSON.
///
/// # Safety
/// `doc` must be a live document handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_classify(doc: *const LfDocument, out: *mut *mut LfString) -> LfStatus {
    if doc.is_null() || out.is_null() {
        return LfStatus::Null;
    }
    *out = ptr::null_mut();
    guarded(|| {
        let d = &(*doc).doc;
        match cli::structured(d) {
            Ok(f) => {
                put_string(out, io::form_json(&f, &d.session).to_string());
                LfStatus::Ok
            }
            Err(e) => put_error(out, &e),
        }
    })
}

/// Sum of all signature jumps of the classified form.
///
/// # Safety
/// `doc` must be a live document handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_total_jump(doc: *const LfDocument, out: *mut i64) -> LfStatus {
    if doc.is_null() || out.is_null() {
        return LfStatus::Null;
    }
    guarded(|| match cli::structured(&(*doc).doc) {
        Ok(f) => {
            *out = total_jump(&f);
            LfStatus::Ok
        }
        Err(e) => LfStatus::of(&e),
    })
}

/// Writes 1 to `out` if the form is represented by some Hermitian matrix, else 0.
///
/// # Safety
/// `doc` must be a live document handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_is_representable(doc: *const LfDocument, out: *mut i32) -> LfStatus {
    if doc.is_null() || out.is_null() {
        return LfStatus::Null;
    }
    guarded(|| match cli::structured(&(*doc).doc) {
        Ok(f) => {
            *out = is_representable(&f).representable as i32;
            LfStatus::Ok
        }
        Err(e) => LfStatus::of(&e),
    })
}

/// Runs a command-line verb (for example "classify" or "verify") on a JSON
/// document and returns its JSON output. `csv` selects CSV output for "sigfn".
/// A failed verification yields `Identity` with the report in `out`.
///
/// # Safety
/// `verb` and `json` must be valid NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_run(
    verb: *const c_char,
    json: *const c_char,
    field_sqrt: u32,
    csv: bool,
    out: *mut *mut LfString,
) -> LfStatus {
    if verb.is_null() || json.is_null() || out.is_null() {
        return LfStatus::Null;
    }
    *out = ptr::null_mut();
    guarded(|| {
        let job = read_str(verb).and_then(|v| v.parse::<Verb>()).and_then(|verb| {
            Ok(Job {
                verb,
                input: read_str(json)?.to_owned(),
                format: if csv { Format::Csv } else { Format::Json },
                field_sqrt: (field_sqrt != 0).then_some(field_sqrt),
                truncation: None,
            })
        });
        let job = match job {
            Ok(j) => j,
            Err(e) => return put_error(out, &e),
        };
        let r = cli::run(&job);
        let status = match r.status {
            0 => LfStatus::Ok,
            2 => LfStatus::Parse,
            4 => LfStatus::Identity,
            _ => LfStatus::Math,
        };
        put_string(out, if r.stdout.is_empty() { r.stderr } else { r.stdout });
        status
    })
}

/// Borrowed pointer to the string contents, valid until the string is freed.
///
/// # Safety
/// `s` must be a live string handle or null.
#[no_mangle]
pub unsafe extern "C" fn lf_string_ptr(s: *const LfString) -> *const c_char {
    if s.is_null() {
        ptr::null()
    } else {
        (*s).text.as_ptr()
    }
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lf_string_free(s: *mut LfString) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}
