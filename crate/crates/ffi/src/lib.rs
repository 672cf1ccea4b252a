//! C ABI for the homtqft library.
//!
//! All functions are panic-safe: failures return a status code and
//! leave a thread-local message readable through
//! [`htq_last_error_message`]. Results are returned either as owned
//! UTF-8 JSON strings (release with [`htq_string_free`]) or through
//! plain out-parameters. Cobordism words are held behind the opaque
//! [`HtqWord`] handle.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use homtqft::json as wire;
use homtqft::{casson, cut, lescop, modular, suites, tables, tqft, Error};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HtqStatus {
    /// success
    Ok = 0,
    /// a required pointer argument was null
    NullPointer = 1,
    /// an input string was not valid UTF-8
    Utf8 = 2,
    /// the input failed to parse or violated its schema
    Parse = 3,
    /// the computation rejected the input (domain error)
    Domain = 4,
    /// a dual-route or exactness verification failed
    Mismatch = 5,
    /// an internal invariant was violated
    Internal = 6,
}

/// Opaque parsed cobordism word.
pub struct HtqWord {
    inner: tqft::CobordismWord,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn classify(e: &Error) -> HtqStatus {
    match e {
        Error::Json { .. } => HtqStatus::Parse,
        Error::Mismatch(_) | Error::ExactnessFailure(_) | Error::DimensionMismatch(_) => {
            HtqStatus::Mismatch
        }
        Error::NonIntegralTrace | Error::ContainmentViolation => HtqStatus::Internal,
        _ => HtqStatus::Domain,
    }
}

fn fail(e: &Error) -> HtqStatus {
    set_error(&e.to_string());
    classify(e)
}

/// Last error message of the current thread; the pointer stays valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn htq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// ABI version of this header; bumped on any breaking change.
#[no_mangle]
pub extern "C" fn htq_abi_version() -> u32 {
    1
}

/// Frees a string returned by any of the `*_json` functions.
///
/// # Safety
/// `s` must be a pointer previously returned by this library (or null).
#[no_mangle]
pub unsafe extern "C" fn htq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, HtqStatus> {
    if ptr.is_null() {
        set_error("null pointer argument");
        return Err(HtqStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("input is not valid UTF-8");
        HtqStatus::Utf8
    })
}

fn write_json(value: &serde_json::Value, out: *mut *mut c_char) -> HtqStatus {
    if out.is_null() {
        set_error("null output pointer");
        return HtqStatus::NullPointer;
    }
    let text = serde_json::to_string(value).expect("serializable");
    let owned = CString::new(text).expect("no interior NUL in JSON");
    unsafe {
        *out = owned.into_raw();
    }
    HtqStatus::Ok
}

fn guarded(body: impl FnOnce() -> HtqStatus) -> HtqStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            HtqStatus::Internal
        }
    }
}

fn parse_value(text: &str) -> Result<serde_json::Value, HtqStatus> {
    serde_json::from_str(text).map_err(|e| {
        set_error(&format!("invalid JSON: {e}"));
        HtqStatus::Parse
    })
}

/// Parses a cobordism word from its JSON form
/// `{"start_g": g, "ops": [{"mcg": [[..]]} | "add_handle" | "remove_handle", ..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid
/// pointer. On success the handle must be released with
/// [`htq_word_free`].
#[no_mangle]
pub unsafe extern "C" fn htq_word_parse(
    json: *const c_char,
    out: *mut *mut HtqWord,
) -> HtqStatus {
    guarded(|| {
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        if out.is_null() {
            set_error("null output pointer");
            return HtqStatus::NullPointer;
        }
        let value = match parse_value(text) {
            Ok(v) => v,
            Err(s) => return s,
        };
        match wire::word_from_value(&value, "") {
            Ok(word) => {
                *out = Box::into_raw(Box::new(HtqWord { inner: word }));
                HtqStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Releases a word handle.
///
/// # Safety
/// `word` must come from [`htq_word_parse`] (or be null) and must not
/// be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn htq_word_free(word: *mut HtqWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

unsafe fn word_ref<'a>(word: *const HtqWord) -> Result<&'a tqft::CobordismWord, HtqStatus> {
    if word.is_null() {
        set_error("null word handle");
        return Err(HtqStatus::NullPointer);
    }
    Ok(&(*word).inner)
}

/// Alexander polynomial of the word as `{"poly": {"coeffs": {..}}}`.
///
/// # Safety
/// `word` must be a live handle; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn htq_word_alexander(
    word: *const HtqWord,
    out_json: *mut *mut c_char,
) -> HtqStatus {
    guarded(|| {
        let w = match word_ref(word) {
            Ok(w) => w,
            Err(s) => return s,
        };
        match tqft::alexander_trace(w) {
            Ok(poly) => {
                let mut obj = serde_json::Map::new();
                obj.insert("poly".into(), wire::laurent_to_value(&poly));
                if w.has_handles() {
                    obj.insert("sign_ambiguous".into(), serde_json::json!(true));
                }
                write_json(&serde_json::Value::Object(obj), out_json)
            }
            Err(e) => fail(&e),
        }
    })
}

/// Fundamental torsion weights of the word as `{"weights": {..}}`.
///
/// # Safety
/// `word` must be a live handle; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn htq_word_weights(
    word: *const HtqWord,
    out_json: *mut *mut c_char,
) -> HtqStatus {
    guarded(|| {
        let w = match word_ref(word) {
            Ok(w) => w,
            Err(s) => return s,
        };
        match tqft::fundamental_weights(w) {
            Ok(weights) => write_json(&wire::weights_to_value(&weights), out_json),
            Err(e) => fail(&e),
        }
    })
}

/// Lescop invariant of the word's closed manifold as
/// `{"value": "a/b", "sign_certain": bool}`.
///
/// # Safety
/// `word` must be a live handle; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn htq_word_lescop(
    word: *const HtqWord,
    out_json: *mut *mut c_char,
) -> HtqStatus {
    guarded(|| {
        let w = match word_ref(word) {
            Ok(w) => w,
            Err(s) => return s,
        };
        let value = tqft::alexander_trace(w).and_then(|p| lescop::lescop_from_alexander(&p));
        match value {
            Ok(v) => write_json(&wire::lescop_to_value(&v), out_json),
            Err(e) => fail(&e),
        }
    })
}

/// p-modular weights and both mod-p Alexander routes of the word.
///
/// # Safety
/// `word` must be a live handle; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn htq_word_pmod(
    word: *const HtqWord,
    p: u32,
    out_json: *mut *mut c_char,
) -> HtqStatus {
    guarded(|| {
        let w = match word_ref(word) {
            Ok(w) => w,
            Err(s) => return s,
        };
        if p < 3 {
            set_error("modulus must be an odd prime >= 3");
            return HtqStatus::Domain;
        }
        let p = u64::from(p);
        let result = modular::pmod_weights(w, p).and_then(|weights| {
            let alexander = modular::pmod_alexander(w, p)?;
            let weight_map: serde_json::Map<String, serde_json::Value> =
                weights.iter().map(|(k, v)| (k.to_string(), serde_json::json!(v))).collect();
            let mut obj = serde_json::Map::new();
            obj.insert("p".into(), serde_json::json!(p));
            obj.insert("weights".into(), serde_json::Value::Object(weight_map));
            obj.insert("alexander".into(), wire::pmod_alexander_to_value(&alexander));
            if p >= 5 {
                obj.insert(
                    "lescop_mod_p".into(),
                    serde_json::json!(modular::lescop_mod_p(&weights, p)),
                );
            }
            Ok(serde_json::Value::Object(obj))
        });
        match result {
            Ok(v) => write_json(&v, out_json),
            Err(e) => fail(&e),
        }
    })
}

/// Lescop invariant of a polynomial given as
/// `{"coeffs": {"<exp>": int, ..}}`.
///
/// # Safety
/// `poly_json` must be NUL-terminated; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn htq_lescop_from_polynomial(
    poly_json: *const c_char,
    out_json: *mut *mut c_char,
) -> HtqStatus {
    guarded(|| {
        let text = match read_str(poly_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let value = match parse_value(text) {
            Ok(v) => v,
            Err(s) => return s,
        };
        let result = wire::laurent_from_value(&value, "")
            .and_then(|poly| lescop::lescop_from_alexander(&poly));
        match result {
            Ok(v) => write_json(&wire::lescop_to_value(&v), out_json),
            Err(e) => fail(&e),
        }
    })
}

/// Twist value of a bounding curve given as
/// `{"g": g, "h": h, "u": [[..]], "v": [[..]]}`.
///
/// # Safety
/// `curve_json` must be NUL-terminated; `out_twist` must be valid.
#[no_mangle]
pub unsafe extern "C" fn htq_casson_twist(
    curve_json: *const c_char,
    out_twist: *mut i64,
) -> HtqStatus {
    guarded(|| {
        let text = match read_str(curve_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        if out_twist.is_null() {
            set_error("null output pointer");
            return HtqStatus::NullPointer;
        }
        let value = match parse_value(text) {
            Ok(v) => v,
            Err(s) => return s,
        };
        match wire::curve_from_value(&value, "") {
            Ok(spec) => match i64::try_from(casson::casson_twist(&spec)) {
                Ok(v) => {
                    *out_twist = v;
                    HtqStatus::Ok
                }
                Err(_) => {
                    set_error("twist value exceeds 64 bits");
                    HtqStatus::Internal
                }
            },
            Err(e) => fail(&e),
        }
    })
}

/// Cut-number certificate report for `{"monodromy": [[..]]}` or
/// `{"poly": {..}, "b1": n}`.
///
/// # Safety
/// `input_json` must be NUL-terminated; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn htq_cut_report(
    input_json: *const c_char,
    out_json: *mut *mut c_char,
) -> HtqStatus {
    guarded(|| {
        let text = match read_str(input_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let value = match parse_value(text) {
            Ok(v) => v,
            Err(s) => return s,
        };
        let result =
            wire::cut_input_from_value(&value, "").and_then(|input| cut::cut_report(&input));
        match result {
            Ok(report) => write_json(&wire::cut_report_to_value(&report), out_json),
            Err(e) => fail(&e),
        }
    })
}

/// Coefficient and dimension tables as JSON.
///
/// # Safety
/// `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn htq_tables(out_json: *mut *mut c_char) -> HtqStatus {
    guarded(|| write_json(&tables::emit_tables(), out_json))
}

/// Runs a named check suite; `Mismatch` when any check fails, with the
/// full report still written.
///
/// # Safety
/// `suite` must be NUL-terminated; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn htq_check_suite(
    suite: *const c_char,
    gmax: u32,
    p: u32,
    seed: u64,
    out_json: *mut *mut c_char,
) -> HtqStatus {
    guarded(|| {
        let name = match read_str(suite) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match suites::run_suite(name, gmax as usize, u64::from(p), seed) {
            Ok(report) => {
                let status = write_json(&report.to_value(), out_json);
                if status != HtqStatus::Ok {
                    return status;
                }
                if report.pass {
                    HtqStatus::Ok
                } else {
                    set_error("check suite reported failures");
                    HtqStatus::Mismatch
                }
            }
            Err(e) => fail(&e),
        }
    })
}
