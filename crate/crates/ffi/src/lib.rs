//! C interface to `tabsynth`.
//!
//! Specifications are opaque `TsSpec` handles created by `ts_spec_parse`
//! and released with `ts_spec_free`. Every fallible call returns a
//! `TsStatus`; on failure `ts_last_error` describes the problem. Strings
//! handed out by the library must be released with `ts_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tabsynth::config::{EngineConfig, Heuristic, Simplify};
use tabsynth::formula::to_nnf;
use tabsynth::parser::{parse, render, SpecFile};
use tabsynth::tableau::{decide, Verdict};

/// Parsed specification.
pub struct TsSpec {
    spec: SpecFile,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    BudgetExceeded = 4,
    NotRealizable = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsVerdict {
    Realizable = 0,
    Unrealizable = 1,
    Unknown = 2,
}

/// Engine limits and switches. Obtain defaults with `ts_config_default`.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct TsConfig {
    pub max_nodes: usize,
    pub max_coverings: usize,
    pub max_env_space: u64,
    /// Explore coverings in enumeration order instead of weakest-first.
    pub declared_order: bool,
    pub prune_siblings: bool,
    /// Disable subsumption-based simplification of normal forms.
    pub no_simplify: bool,
    pub oracle_budget: u64,
    pub oracle_lazy: bool,
}

impl From<&TsConfig> for EngineConfig {
    fn from(c: &TsConfig) -> EngineConfig {
        EngineConfig {
            max_nodes: c.max_nodes.max(1),
            max_coverings: c.max_coverings.max(1),
            max_env_space: c.max_env_space.max(1),
            heuristic: if c.declared_order { Heuristic::Declared } else { Heuristic::Weakest },
            prune_siblings: c.prune_siblings,
            simplify: if c.no_simplify { Simplify::None } else { Simplify::Subsume },
            oracle_budget: c.oracle_budget.max(1),
            oracle_lazy: c.oracle_lazy,
            horizon: None,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

fn guarded(f: impl FnOnce() -> Result<(), (TsStatus, String)>) -> TsStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            TsStatus::Internal
        }
    }
}

unsafe fn spec_ref<'a>(spec: *const TsSpec) -> Result<&'a SpecFile, (TsStatus, String)> {
    spec.as_ref()
        .map(|s| &s.spec)
        .ok_or((TsStatus::NullArgument, "null specification handle".into()))
}

unsafe fn config_of(cfg: *const TsConfig) -> EngineConfig {
    cfg.as_ref().map(EngineConfig::from).unwrap_or_default()
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Fills `out` with the default configuration.
///
/// # Safety
/// `out` must be null or point to writable memory for one `TsConfig`.
#[no_mangle]
pub unsafe extern "C" fn ts_config_default(out: *mut TsConfig) {
    if out.is_null() {
        return;
    }
    let d = EngineConfig::default();
    *out = TsConfig {
        max_nodes: d.max_nodes,
        max_coverings: d.max_coverings,
        max_env_space: d.max_env_space,
        declared_order: false,
        prune_siblings: d.prune_siblings,
        no_simplify: false,
        oracle_budget: d.oracle_budget,
        oracle_lazy: d.oracle_lazy,
    };
}

/// Parses a NUL-terminated specification text into a new handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_spec_parse(text: *const c_char, out: *mut *mut TsSpec) -> TsStatus {
    guarded(|| {
        if text.is_null() || out.is_null() {
            return Err((TsStatus::NullArgument, "null argument".into()));
        }
        *out = ptr::null_mut();
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (TsStatus::InvalidUtf8, e.to_string()))?;
        let spec = parse(s).map_err(|e| (TsStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(TsSpec { spec }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `spec` must be null or a handle from `ts_spec_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_spec_free(spec: *mut TsSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Decides realizability with the tableau. A null `cfg` means defaults.
/// Budget exhaustion is not an error: it yields `TS_VERDICT_UNKNOWN`.
///
/// # Safety
/// `spec` must be a live handle, `cfg` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_check(spec: *const TsSpec, cfg: *const TsConfig, out: *mut TsVerdict) -> TsStatus {
    guarded(|| {
        let spec = spec_ref(spec)?;
        if out.is_null() {
            return Err((TsStatus::NullArgument, "null output".into()));
        }
        let tab = decide(spec, &config_of(cfg));
        *out = match tab.verdict {
            Verdict::Open => TsVerdict::Realizable,
            Verdict::Closed => TsVerdict::Unrealizable,
            Verdict::Unknown => TsVerdict::Unknown,
        };
        if let Some(b) = tab.budget {
            set_error(b.to_string());
        }
        Ok(())
    })
}

/// Decides realizability with the explicit safety game.
///
/// # Safety
/// As for `ts_check`.
#[no_mangle]
pub unsafe extern "C" fn ts_oracle(spec: *const TsSpec, cfg: *const TsConfig, out: *mut TsVerdict) -> TsStatus {
    guarded(|| {
        let spec = spec_ref(spec)?;
        if out.is_null() {
            return Err((TsStatus::NullArgument, "null output".into()));
        }
        let c = config_of(cfg);
        let res = tabsynth::game_oracle::solve(spec, c.oracle_budget, c.oracle_lazy)
            .map_err(|e| (TsStatus::BudgetExceeded, e.to_string()))?;
        *out = if res.realizable { TsVerdict::Realizable } else { TsVerdict::Unrealizable };
        Ok(())
    })
}

/// Synthesizes a strategy and returns it as JSON in `*out_json`.
/// Fails with `TS_STATUS_NOT_REALIZABLE` or `TS_STATUS_BUDGET_EXCEEDED`
/// when no strategy is produced.
///
/// # Safety
/// As for `ts_check`; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_synth_json(spec: *const TsSpec, cfg: *const TsConfig, out_json: *mut *mut c_char) -> TsStatus {
    guarded(|| {
        let spec = spec_ref(spec)?;
        if out_json.is_null() {
            return Err((TsStatus::NullArgument, "null output".into()));
        }
        *out_json = ptr::null_mut();
        let tab = decide(spec, &config_of(cfg));
        match tab.verdict {
            Verdict::Open => {}
            Verdict::Closed => return Err((TsStatus::NotRealizable, "specification is unrealizable".into())),
            Verdict::Unknown => {
                let why = tab.budget.map(|b| b.to_string()).unwrap_or_default();
                return Err((TsStatus::BudgetExceeded, why));
            }
        }
        let m = tabsynth::synthesis::extract(&tab).map_err(|e| (TsStatus::Internal, e.to_string()))?;
        let json = serde_json::to_string(&tabsynth::synthesis::machine_to_json(&m))
            .map_err(|e| (TsStatus::Internal, e.to_string()))?;
        *out_json = to_c_string(json);
        Ok(())
    })
}

/// Terse normal form of the safety body, one move per line.
///
/// # Safety
/// `spec` must be a live handle; `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_tnf(spec: *const TsSpec, out_text: *mut *mut c_char) -> TsStatus {
    guarded(|| {
        let spec = spec_ref(spec)?;
        if out_text.is_null() {
            return Err((TsStatus::NullArgument, "null output".into()));
        }
        let t = tabsynth::tnf::tnf(&to_nnf(&spec.safety), &spec.vars, Simplify::Subsume);
        let lines: Vec<String> = t
            .moves
            .iter()
            .map(|m| render(&m.to_formula(&spec.vars), &spec.vars))
            .collect();
        let text = if lines.is_empty() { "false".to_string() } else { lines.join("\n") };
        *out_text = to_c_string(text);
        Ok(())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failing call on this thread, or an empty string.
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
