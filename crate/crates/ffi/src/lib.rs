//! C ABI over the `wpcn` solvers.
//!
//! System parameters live behind an opaque `WpcnParams` handle created by
//! `wpcn_params_new` or `wpcn_params_from_toml` and released with
//! `wpcn_params_free`. Every fallible call returns a `WpcnStatus`; on failure
//! `wpcn_last_error` gives a message for the calling thread. Results are
//! written to caller-owned `repr(C)` structs.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wpcn::cli::{CliError, Render, RunConfig, SolveDoc};
use wpcn::{
    ChannelKind, ChannelModel, Comparison, Constraint, Error, FddSolution, ObjectiveSpec,
    SolveOptions, SystemParams, TddSolution, Winner,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WpcnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParams = 2,
    InvalidArgument = 3,
    NonFinite = 4,
    ConfigError = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WpcnWinner {
    Tdd = 0,
    Fdd = 1,
    Tie = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WpcnChannelKind {
    Deterministic = 0,
    Exponential = 1,
}

/// Bits of the `binding` masks.
pub const WPCN_BINDING_PSD_CAP: u32 = 1 << 0;
pub const WPCN_BINDING_POWER_CAP: u32 = 1 << 1;
pub const WPCN_BINDING_TIME_UNIT_INTERVAL: u32 = 1 << 2;
pub const WPCN_BINDING_BANDWIDTH_UNIT_INTERVAL: u32 = 1 << 3;
pub const WPCN_BINDING_INTERIOR: u32 = 1 << 4;

/// Opaque parameter set.
pub struct WpcnParams {
    inner: SystemParams,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WpcnTddResult {
    pub tau_star: f64,
    pub p_d: f64,
    pub s_implied: f64,
    pub gamma: f64,
    pub rate: f64,
    pub binding: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WpcnFddResult {
    pub beta_star: f64,
    pub s: f64,
    pub p_d: f64,
    pub beta_cap: f64,
    pub gamma: f64,
    pub rate: f64,
    pub binding: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WpcnComparison {
    pub tdd: WpcnTddResult,
    pub fdd: WpcnFddResult,
    /// FDD rate over TDD rate; NaN when the TDD rate is zero.
    pub rate_ratio: f64,
    pub winner: WpcnWinner,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WpcnMonteCarloReport {
    pub n_blocks: u64,
    pub seed: u64,
    pub mean_rate_tdd: f64,
    pub p5_tdd: f64,
    pub p50_tdd: f64,
    pub p95_tdd: f64,
    pub mean_rate_fdd: f64,
    pub p5_fdd: f64,
    pub p50_fdd: f64,
    pub p95_fdd: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &Error) -> WpcnStatus {
    match err {
        Error::InvalidParams { .. } => WpcnStatus::InvalidParams,
        Error::NonFiniteObjective { .. } => WpcnStatus::NonFinite,
        Error::FractionOutOfRange { .. }
        | Error::InvalidArgument(_)
        | Error::EmptyInterval { .. } => WpcnStatus::InvalidArgument,
    }
}

/// Runs `body`, turning errors and panics into a status plus last-error message.
fn guard<F>(body: F) -> WpcnStatus
where
    F: FnOnce() -> Result<(), (WpcnStatus, String)>,
{
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => WpcnStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside wpcn");
            WpcnStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (WpcnStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (WpcnStatus, String) {
    (WpcnStatus::NullPointer, format!("`{name}` is NULL"))
}

fn options(tol: f64) -> Result<SolveOptions, (WpcnStatus, String)> {
    if tol == 0.0 {
        Ok(SolveOptions::default())
    } else if tol.is_finite() && tol > 0.0 {
        Ok(SolveOptions { tol })
    } else {
        Err((
            WpcnStatus::InvalidArgument,
            format!("tolerance must be > 0 (or 0 for the default), got {tol}"),
        ))
    }
}

unsafe fn params_ref<'a>(
    params: *const WpcnParams,
) -> Result<&'a SystemParams, (WpcnStatus, String)> {
    params
        .as_ref()
        .map(|p| &p.inner)
        .ok_or_else(|| null("params"))
}

fn mask(binding: &[Constraint]) -> u32 {
    binding.iter().fold(0, |acc, c| {
        acc | match c {
            Constraint::PsdCap => WPCN_BINDING_PSD_CAP,
            Constraint::PowerCap => WPCN_BINDING_POWER_CAP,
            Constraint::TimeUnitInterval => WPCN_BINDING_TIME_UNIT_INTERVAL,
            Constraint::BandwidthUnitInterval => WPCN_BINDING_BANDWIDTH_UNIT_INTERVAL,
            Constraint::Interior => WPCN_BINDING_INTERIOR,
        }
    })
}

impl From<&TddSolution> for WpcnTddResult {
    fn from(s: &TddSolution) -> Self {
        Self {
            tau_star: s.tau_star,
            p_d: s.p_d,
            s_implied: s.s_implied,
            gamma: s.gamma,
            rate: s.rate,
            binding: mask(&s.binding),
        }
    }
}

impl From<&FddSolution> for WpcnFddResult {
    fn from(s: &FddSolution) -> Self {
        Self {
            beta_star: s.beta_star,
            s: s.s,
            p_d: s.p_d,
            beta_cap: s.beta_cap,
            gamma: s.gamma,
            rate: s.rate,
            binding: mask(&s.binding),
        }
    }
}

impl From<&Comparison> for WpcnComparison {
    fn from(c: &Comparison) -> Self {
        Self {
            tdd: (&c.tdd).into(),
            fdd: (&c.fdd).into(),
            rate_ratio: c.rate_ratio.unwrap_or(f64::NAN),
            winner: match c.winner {
                Winner::Tdd => WpcnWinner::Tdd,
                Winner::Fdd => WpcnWinner::Fdd,
                Winner::Tie => WpcnWinner::Tie,
            },
        }
    }
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next `wpcn_*` call on the same thread.
#[no_mangle]
pub extern "C" fn wpcn_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn wpcn_status_str(status: WpcnStatus) -> *const c_char {
    let s: &'static CStr = match status {
        WpcnStatus::Ok => c"ok",
        WpcnStatus::NullPointer => c"null pointer",
        WpcnStatus::InvalidParams => c"invalid system parameters",
        WpcnStatus::InvalidArgument => c"invalid argument",
        WpcnStatus::NonFinite => c"non-finite value",
        WpcnStatus::ConfigError => c"config error",
        WpcnStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Creates a parameter handle. Noise power is in watts.
///
/// # Safety
/// `out` must be a valid pointer to a `WpcnParams *` slot.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn wpcn_params_new(
    sigma2: f64,
    p_max: f64,
    s_max: f64,
    w0: f64,
    t_frame: f64,
    h_gain: f64,
    g_gain: f64,
    out: *mut *mut WpcnParams,
) -> WpcnStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let inner = SystemParams::new(sigma2, p_max, s_max, w0, t_frame, h_gain, g_gain)
            .map_err(lib_err)?;
        *out = Box::into_raw(Box::new(WpcnParams { inner }));
        Ok(())
    })
}

/// Creates a parameter handle from a TOML config document (same keys as the
/// `wpcn` CLI).
///
/// # Safety
/// `toml` must be a NUL-terminated string; `out` a valid `WpcnParams *` slot.
#[no_mangle]
pub unsafe extern "C" fn wpcn_params_from_toml(
    toml: *const c_char,
    out: *mut *mut WpcnParams,
) -> WpcnStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        if toml.is_null() {
            return Err(null("toml"));
        }
        let text = CStr::from_ptr(toml)
            .to_str()
            .map_err(|e| (WpcnStatus::ConfigError, format!("config is not UTF-8: {e}")))?;
        let cfg = RunConfig::parse(text, "<config>").map_err(|e| match e {
            CliError::Infeasible(msg) => (WpcnStatus::InvalidParams, msg),
            other => (WpcnStatus::ConfigError, other.to_string()),
        })?;
        *out = Box::into_raw(Box::new(WpcnParams { inner: cfg.params }));
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `params` must come from `wpcn_params_new`/`wpcn_params_from_toml` and not
/// have been freed.
#[no_mangle]
pub unsafe extern "C" fn wpcn_params_free(params: *mut WpcnParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Replaces the channel power gains of an existing handle.
///
/// # Safety
/// `params` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn wpcn_params_set_gains(
    params: *mut WpcnParams,
    h_gain: f64,
    g_gain: f64,
) -> WpcnStatus {
    guard(|| {
        let p = params.as_mut().ok_or_else(|| null("params"))?;
        let updated = p.inner.with_gains(h_gain, g_gain);
        updated.validate().map_err(lib_err)?;
        p.inner = updated;
        Ok(())
    })
}

/// # Safety
/// `out` must be a valid `double *`.
#[no_mangle]
pub unsafe extern "C" fn wpcn_dbm_to_watts(level_dbm: f64, out: *mut f64) -> WpcnStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = wpcn::dbm_to_watts(level_dbm).map_err(lib_err)?;
        Ok(())
    })
}

/// Rate `(1 - x) * w0 * log2(1 + gamma * x / (1 - x))` in bit/s.
///
/// # Safety
/// `out` must be a valid `double *`.
#[no_mangle]
pub unsafe extern "C" fn wpcn_throughput(gamma: f64, w0: f64, x: f64, out: *mut f64) -> WpcnStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let obj = ObjectiveSpec::unit(gamma, w0).map_err(lib_err)?;
        *out = obj.throughput(x).map_err(lib_err)?;
        Ok(())
    })
}

/// Optimal TDD split. `tol = 0` selects the default tolerance.
///
/// # Safety
/// `params` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wpcn_solve_tdd(
    params: *const WpcnParams,
    tol: f64,
    out: *mut WpcnTddResult,
) -> WpcnStatus {
    guard(|| {
        let p = params_ref(params)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let sol = wpcn::solve_tdd_with(p, &options(tol)?).map_err(lib_err)?;
        *out = (&sol).into();
        Ok(())
    })
}

/// Optimal FDD split. `tol = 0` selects the default tolerance.
///
/// # Safety
/// `params` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wpcn_solve_fdd(
    params: *const WpcnParams,
    tol: f64,
    out: *mut WpcnFddResult,
) -> WpcnStatus {
    guard(|| {
        let p = params_ref(params)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let sol = wpcn::solve_fdd_with(p, &options(tol)?).map_err(lib_err)?;
        *out = (&sol).into();
        Ok(())
    })
}

/// # Safety
/// `params` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wpcn_compare(
    params: *const WpcnParams,
    tol: f64,
    out: *mut WpcnComparison,
) -> WpcnStatus {
    guard(|| {
        let p = params_ref(params)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let c = wpcn::compare_with(p, &options(tol)?).map_err(lib_err)?;
        *out = (&c).into();
        Ok(())
    })
}

/// Block-fading Monte Carlo with channel means taken from the handle's gains.
///
/// # Safety
/// `params` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wpcn_monte_carlo(
    params: *const WpcnParams,
    kind: WpcnChannelKind,
    n_blocks: u64,
    seed: u64,
    tol: f64,
    out: *mut WpcnMonteCarloReport,
) -> WpcnStatus {
    guard(|| {
        let p = params_ref(params)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let kind = match kind {
            WpcnChannelKind::Deterministic => ChannelKind::Deterministic,
            WpcnChannelKind::Exponential => ChannelKind::Exponential,
        };
        let model = ChannelModel::new(kind, p.h_gain, p.g_gain).map_err(lib_err)?;
        let n_blocks = usize::try_from(n_blocks).map_err(|_| {
            (
                WpcnStatus::InvalidArgument,
                "n_blocks too large".to_string(),
            )
        })?;
        let r = wpcn::monte_carlo(p, &model, n_blocks, seed, &options(tol)?).map_err(lib_err)?;
        *out = WpcnMonteCarloReport {
            n_blocks: r.n_blocks as u64,
            seed: r.seed,
            mean_rate_tdd: r.mean_rate_tdd,
            p5_tdd: r.quantiles_tdd.p5,
            p50_tdd: r.quantiles_tdd.p50,
            p95_tdd: r.quantiles_tdd.p95,
            mean_rate_fdd: r.mean_rate_fdd,
            p5_fdd: r.quantiles_fdd.p5,
            p50_fdd: r.quantiles_fdd.p50,
            p95_fdd: r.quantiles_fdd.p95,
        };
        Ok(())
    })
}

/// Solves both schemes and returns the CLI's JSON document, or NULL on error.
/// Free the result with `wpcn_string_free`.
///
/// # Safety
/// `params` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn wpcn_solve_json(params: *const WpcnParams, tol: f64) -> *mut c_char {
    let mut json = ptr::null_mut();
    guard(|| {
        let p = params_ref(params)?;
        let c = wpcn::compare_with(p, &options(tol)?).map_err(lib_err)?;
        let text = SolveDoc::new(*p, c).json();
        json = CString::new(text)
            .map_err(|e| (WpcnStatus::Panic, e.to_string()))?
            .into_raw();
        Ok(())
    });
    json
}

/// # Safety
/// `s` must come from `wpcn_solve_json` and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn wpcn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binding_mask() {
        assert_eq!(mask(&[]), 0);
        assert_eq!(
            mask(&[Constraint::PsdCap, Constraint::PowerCap]),
            WPCN_BINDING_PSD_CAP | WPCN_BINDING_POWER_CAP
        );
    }

    #[test]
    fn panics_become_status() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, WpcnStatus::Panic);
        assert!(!wpcn_last_error().is_null());
    }

    #[test]
    fn tolerance_option() {
        assert_eq!(options(0.0).unwrap(), SolveOptions::default());
        assert_eq!(options(1e-6).unwrap().tol, 1e-6);
        assert!(options(-1.0).is_err());
        assert!(options(f64::NAN).is_err());
    }
}
