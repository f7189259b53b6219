//! C interface to `lyu-core`.
//!
//! Objects are opaque heap handles released with the matching `*_free`.
//! Every fallible call returns a [`LyuStatus`]; on failure the message is
//! available from [`lyu_last_error`] on the same thread. Panics are caught at
//! the boundary and reported as `LYU_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use lyu_core::io::{parse_input, Input};
use lyu_core::lyubeznik::{check_lambda_consecutiveness, check_lambda_invariants, lyubeznik_table, LyubeznikTable};
use lyu_core::resolution::{betti_table, BettiTable};
use lyu_core::strands::{check_nu_consecutiveness, check_nu_invariants, nu_and_betti, NuOptions, NuTable, RankMode};
use lyu_core::{Budget, Error, FieldSpec, MonomialIdeal};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LyuStatus {
    Ok = 0,
    Parse = 1,
    InvalidInput = 2,
    Budget = 3,
    Internal = 4,
    NullArgument = 5,
    Panic = 6,
}

/// Computation settings. A null pointer means: characteristic 0, exact ranks.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct LyuOptions {
    /// 0 for the rationals, otherwise a prime.
    pub characteristic: u32,
    /// Nonzero selects randomized generic ranks.
    pub randomized: u8,
    pub seed: u64,
    pub trials: u32,
}

/// A monomial ideal.
pub struct LyuIdeal(MonomialIdeal);

/// A computed Betti, ν- or Lyubeznik table.
pub enum LyuTable {
    Betti(BettiTable),
    Nu(NuTable, BettiTable),
    Lyubeznik(LyubeznikTable),
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LyuStatus {
    match e {
        Error::Parse(_) => LyuStatus::Parse,
        Error::BudgetExceeded { .. } => LyuStatus::Budget,
        Error::Internal(_) => LyuStatus::Internal,
        _ => LyuStatus::InvalidInput,
    }
}

/// Run `f` behind the panic barrier, translating errors into status codes.
fn guarded(f: impl FnOnce() -> Result<(), (LyuStatus, String)>) -> LyuStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LyuStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside lyu");
            LyuStatus::Panic
        }
    }
}

fn lift<T>(r: lyu_core::Result<T>) -> Result<T, (LyuStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (LyuStatus, String) {
    (LyuStatus::NullArgument, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (LyuStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), (LyuStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn options(p: *const LyuOptions) -> lyu_core::Result<(FieldSpec, NuOptions)> {
    // SAFETY: caller passes null or a valid pointer
    let o = unsafe { p.as_ref() }.copied().unwrap_or(LyuOptions {
        characteristic: 0,
        randomized: 0,
        seed: 0,
        trials: 3,
    });
    let field = FieldSpec::from_characteristic(o.characteristic as u64)?;
    let rank_mode = if o.randomized != 0 {
        RankMode::Randomized {
            seed: o.seed,
            trials: o.trials.max(1) as usize,
        }
    } else {
        RankMode::Exact
    };
    Ok((
        field,
        NuOptions {
            rank_mode,
            budget: Budget::from_env()?,
            ..Default::default()
        },
    ))
}

/// Message of the last failed call on this thread ("" after a success).
/// The pointer stays valid until the next lyu call on the same thread.
#[no_mangle]
pub extern "C" fn lyu_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parse an ideal (JSON or line format). A simplicial complex is accepted
/// and converted to its Stanley-Reisner ideal.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lyu_ideal_parse(text: *const c_char, out: *mut *mut LyuIdeal) -> LyuStatus {
    guarded(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (LyuStatus::Parse, "input is not UTF-8".to_string()))?;
        let ideal = match lift(parse_input(s, None))?.input {
            Input::Ideal(i) => i,
            Input::Complex(c) => lift(MonomialIdeal::from_complex(&c))?,
        };
        write_out(out, LyuIdeal(ideal))
    })
}

/// Alexander dual of a squarefree ideal.
///
/// # Safety
/// `ideal` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lyu_ideal_dual(ideal: *const LyuIdeal, out: *mut *mut LyuIdeal) -> LyuStatus {
    guarded(|| {
        let i = deref(ideal, "ideal")?;
        write_out(out, LyuIdeal(lift(i.0.dual_ideal())?))
    })
}

/// Number of variables, or 0 for a null handle.
///
/// # Safety
/// `ideal` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn lyu_ideal_num_vars(ideal: *const LyuIdeal) -> usize {
    ideal.as_ref().map_or(0, |i| i.0.n_vars())
}

/// Number of minimal generators, or 0 for a null handle.
///
/// # Safety
/// `ideal` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn lyu_ideal_num_gens(ideal: *const LyuIdeal) -> usize {
    ideal.as_ref().map_or(0, |i| i.0.gens().len())
}

/// # Safety
/// `ideal` must be null or come from this library, and not be used again.
#[no_mangle]
pub unsafe extern "C" fn lyu_ideal_free(ideal: *mut LyuIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// Graded Betti table of the ideal.
///
/// # Safety
/// `ideal` must come from this library; `opts` null or valid; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn lyu_betti(ideal: *const LyuIdeal, opts: *const LyuOptions, out: *mut *mut LyuTable) -> LyuStatus {
    guarded(|| {
        let i = deref(ideal, "ideal")?;
        let (field, o) = lift(options(opts))?;
        write_out(out, LyuTable::Betti(lift(betti_table(&i.0, field, o.engine, &o.budget))?))
    })
}

/// ν-table of the ideal.
///
/// # Safety
/// As for [`lyu_betti`].
#[no_mangle]
pub unsafe extern "C" fn lyu_nu(ideal: *const LyuIdeal, opts: *const LyuOptions, out: *mut *mut LyuTable) -> LyuStatus {
    guarded(|| {
        let i = deref(ideal, "ideal")?;
        let (field, o) = lift(options(opts))?;
        let (nu, betti) = lift(nu_and_betti(&i.0, field, &o))?;
        write_out(out, LyuTable::Nu(nu, betti))
    })
}

/// Lyubeznik table of R/I.
///
/// # Safety
/// As for [`lyu_betti`].
#[no_mangle]
pub unsafe extern "C" fn lyu_lyubeznik(ideal: *const LyuIdeal, opts: *const LyuOptions, out: *mut *mut LyuTable) -> LyuStatus {
    guarded(|| {
        let i = deref(ideal, "ideal")?;
        let (field, o) = lift(options(opts))?;
        write_out(out, LyuTable::Lyubeznik(lift(lyubeznik_table(&i.0, field, &o))?))
    })
}

/// Entry (a, b) of a table: β_{a,b}, ν_{a,b} or λ_{a,b}.
///
/// # Safety
/// `table` must come from this library; `value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lyu_table_get(table: *const LyuTable, a: usize, b: usize, value: *mut usize) -> LyuStatus {
    guarded(|| {
        let t = deref(table, "table")?;
        if value.is_null() {
            return Err(null("value"));
        }
        *value = match t {
            LyuTable::Betti(x) => x.get(a, b),
            LyuTable::Nu(x, _) => x.get(a, b),
            LyuTable::Lyubeznik(x) => x.get(a, b),
        };
        Ok(())
    })
}

/// The d of a Lyubeznik table, the l of a ν-table, 0 for a Betti table.
///
/// # Safety
/// `table` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn lyu_table_dim(table: *const LyuTable) -> usize {
    match table.as_ref() {
        Some(LyuTable::Lyubeznik(t)) => t.d,
        Some(LyuTable::Nu(t, _)) => t.l,
        _ => 0,
    }
}

/// Number of violated structural identities (always 0 for Betti tables).
///
/// # Safety
/// `table` must come from this library; `count` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lyu_table_check(table: *const LyuTable, count: *mut usize) -> LyuStatus {
    guarded(|| {
        let t = deref(table, "table")?;
        if count.is_null() {
            return Err(null("count"));
        }
        *count = match t {
            LyuTable::Betti(_) => 0,
            LyuTable::Nu(nu, b) => check_nu_invariants(nu, b).len() + check_nu_consecutiveness(nu).len(),
            LyuTable::Lyubeznik(l) => check_lambda_invariants(l).len() + check_lambda_consecutiveness(l).len(),
        };
        Ok(())
    })
}

/// JSON rendering of a table; release with [`lyu_string_free`].
///
/// # Safety
/// `table` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lyu_table_json(table: *const LyuTable, out: *mut *mut c_char) -> LyuStatus {
    guarded(|| {
        let t = deref(table, "table")?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let json = match t {
            LyuTable::Betti(x) => x.to_json(false),
            LyuTable::Nu(x, _) => x.to_json(),
            LyuTable::Lyubeznik(x) => x.to_json(),
        };
        *out = CString::new(json.to_string()).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// # Safety
/// `table` must be null or come from this library, and not be used again.
#[no_mangle]
pub unsafe extern "C" fn lyu_table_free(table: *mut LyuTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn lyu_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
