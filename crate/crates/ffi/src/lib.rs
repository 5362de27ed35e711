//! C ABI over `tvws_fcca`.
//!
//! Conventions:
//! - Every fallible call returns a [`TvwsStatus`]; results go through out
//!   pointers that are written only on success.
//! - On failure, [`tvws_last_error`] returns a message for the calling
//!   thread until its next failing call.
//! - Handles (`TvwsTopology`, `TvwsAllocation`, `TvwsOutcome`, `TvwsReport`)
//!   are opaque, owned by the caller, and released with their `*_free`
//!   function. Passing NULL to a `*_free` function is a no-op.
//! - Text is copied into caller buffers: `needed` receives the byte length
//!   including the NUL terminator, and the call fails with
//!   `TVWS_STATUS_BUFFER_TOO_SMALL` if `capacity` is smaller.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use tvws_fcca::config::{self, TopologyFile};
use tvws_fcca::conflict::build_interference_matrix;
use tvws_fcca::experiment::demand_mbps;
use tvws_fcca::fcca::{self, Candidate, FccaConfig, FccaOutcome};
use tvws_fcca::macsim::{Contention, Evaluator, MacConfig};
use tvws_fcca::model::{validate_topology, Allocation, ChannelMode, RadioParams, SubAlgorithm, ThroughputReport};
use tvws_fcca::propagation;
use tvws_fcca::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TvwsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Validation = 3,
    Io = 4,
    Parse = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TvwsChannelMode {
    Unassigned = 0,
    Dedicated = 1,
    Shared = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TvwsSubAlgorithm {
    Mdca = 0,
    OdrsCa = 1,
}

/// Which allocation of an outcome to read.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TvwsCandidate {
    Mdca = 0,
    OdrsCa = 1,
    Chosen = 2,
}

/// Per-eNB series stored in a report.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TvwsSeries {
    ThroughputBps = 0,
    SpectralEfficiency = 1,
    Airtime = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TvwsRadioParams {
    pub tx_power_dbm: f64,
    pub tx_gain_db: f64,
    pub rx_gain_db: f64,
    pub cable_loss_db: f64,
    pub noise_figure_db: f64,
    pub tx_height_m: f64,
    pub rx_height_m: f64,
    pub center_freq_mhz: f64,
    pub rx_sensitivity_dbm: f64,
}

impl From<TvwsRadioParams> for RadioParams {
    fn from(p: TvwsRadioParams) -> Self {
        RadioParams {
            tx_power_dbm: p.tx_power_dbm,
            tx_gain_db: p.tx_gain_db,
            rx_gain_db: p.rx_gain_db,
            cable_loss_db: p.cable_loss_db,
            noise_figure_db: p.noise_figure_db,
            tx_height_m: p.tx_height_m,
            rx_height_m: p.rx_height_m,
            center_freq_mhz: p.center_freq_mhz,
            rx_sensitivity_dbm: p.rx_sensitivity_dbm,
        }
    }
}

impl From<RadioParams> for TvwsRadioParams {
    fn from(p: RadioParams) -> Self {
        TvwsRadioParams {
            tx_power_dbm: p.tx_power_dbm,
            tx_gain_db: p.tx_gain_db,
            rx_gain_db: p.rx_gain_db,
            cable_loss_db: p.cable_loss_db,
            noise_figure_db: p.noise_figure_db,
            tx_height_m: p.tx_height_m,
            rx_height_m: p.rx_height_m,
            center_freq_mhz: p.center_freq_mhz,
            rx_sensitivity_dbm: p.rx_sensitivity_dbm,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TvwsMacParams {
    pub slot_us: f64,
    pub txop_ms: f64,
    pub sim_time_s: f64,
    pub contention_window_slots: u32,
    pub rng_seed: u64,
    pub spectral_efficiency_cap: f64,
    /// Non-zero: neighbors whose backoff ends in the same slot all transmit.
    pub collide: u8,
}

impl From<TvwsMacParams> for MacConfig {
    fn from(p: TvwsMacParams) -> Self {
        MacConfig {
            slot_us: p.slot_us,
            txop_ms: p.txop_ms,
            sim_time_s: p.sim_time_s,
            contention_window_slots: p.contention_window_slots,
            rng_seed: p.rng_seed,
            spectral_efficiency_cap: p.spectral_efficiency_cap,
            contention: if p.collide != 0 {
                Contention::Collide
            } else {
                Contention::Arbitrated
            },
        }
    }
}

impl From<MacConfig> for TvwsMacParams {
    fn from(m: MacConfig) -> Self {
        TvwsMacParams {
            slot_us: m.slot_us,
            txop_ms: m.txop_ms,
            sim_time_s: m.sim_time_s,
            contention_window_slots: m.contention_window_slots,
            rng_seed: m.rng_seed,
            spectral_efficiency_cap: m.spectral_efficiency_cap,
            collide: u8::from(m.contention == Contention::Collide),
        }
    }
}

/// A validated topology together with its channel plan, threshold, MAC and
/// fairness settings.
pub struct TvwsTopology {
    file: TopologyFile,
}

pub struct TvwsAllocation {
    inner: Allocation,
}

pub struct TvwsOutcome {
    inner: FccaOutcome,
}

pub struct TvwsReport {
    inner: ThroughputReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TvwsStatus {
    match e {
        Error::Validation(_) | Error::DegreeTooHigh { .. } => TvwsStatus::Validation,
        Error::Io { .. } => TvwsStatus::Io,
        Error::Parse { .. } | Error::Config(_) => TvwsStatus::Parse,
        Error::Invariant(_) => TvwsStatus::Internal,
        _ => TvwsStatus::InvalidArgument,
    }
}

struct Fail(TvwsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(TvwsStatus::NullPointer, format!("{what} is NULL"))
}

/// Runs `f`, converting errors and panics into a status plus message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> TvwsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TvwsStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TvwsStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(TvwsStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn write_text(text: &str, buf: *mut c_char, capacity: usize, needed: *mut usize) -> Result<(), Fail> {
    let len = text.len() + 1;
    if !needed.is_null() {
        *needed = len;
    }
    if buf.is_null() || capacity < len {
        return Err(Fail(
            TvwsStatus::BufferTooSmall,
            format!("buffer of {capacity} bytes, {len} needed"),
        ));
    }
    ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
    *buf.add(text.len()) = 0;
    Ok(())
}

fn check_index(index: usize, size: usize) -> Result<(), Fail> {
    if index >= size {
        return Err(Error::IndexOutOfRange { index, size }.into());
    }
    Ok(())
}

/// Message of the calling thread's last failure, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tvws_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn tvws_clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Reference link-budget parameters (18 dBm, 10 dBi, 500 MHz, -101 dBm).
#[no_mangle]
pub extern "C" fn tvws_radio_params_reference() -> TvwsRadioParams {
    RadioParams::reference().into()
}

#[no_mangle]
pub extern "C" fn tvws_mac_params_default() -> TvwsMacParams {
    MacConfig::default().into()
}

/// # Safety
/// `radio` and `out_db` must be valid pointers or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_max_allowed_path_loss(radio: *const TvwsRadioParams, out_db: *mut f64) -> TvwsStatus {
    guard(|| {
        let r: RadioParams = (*deref(radio, "radio")?).into();
        *out(out_db, "out_db")? = propagation::max_allowed_path_loss_db(&r);
        Ok(())
    })
}

/// # Safety
/// `radio` and `out_km` must be valid pointers or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_coverage_radius(radio: *const TvwsRadioParams, out_km: *mut f64) -> TvwsStatus {
    guard(|| {
        let r: RadioParams = (*deref(radio, "radio")?).into();
        let out_km = out(out_km, "out_km")?;
        *out_km = propagation::coverage_radius(&r)?;
        Ok(())
    })
}

/// Suburban Hata path loss in dB; fails outside the model's validity ranges.
///
/// # Safety
/// `out_db` must be a valid pointer or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_hata_suburban(
    d_km: f64,
    f_mhz: f64,
    tx_height_m: f64,
    rx_height_m: f64,
    out_db: *mut f64,
) -> TvwsStatus {
    guard(|| {
        let out_db = out(out_db, "out_db")?;
        *out_db = propagation::hata_suburban_pl(d_km, f_mhz, tx_height_m, rx_height_m)?;
        Ok(())
    })
}

/// Jain's fairness index of `count` throughputs.
///
/// # Safety
/// `values` must point to `count` doubles; `out_jfi` must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_jfi(values: *const f64, count: usize, out_jfi: *mut f64) -> TvwsStatus {
    guard(|| {
        if values.is_null() {
            return Err(null("values"));
        }
        let v = std::slice::from_raw_parts(values, count);
        let out_jfi = out(out_jfi, "out_jfi")?;
        *out_jfi = fcca::jfi(v)?;
        Ok(())
    })
}

/// # Safety
/// `out_mbps` must be a valid pointer or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_demand_mbps(
    population_per_village: f64,
    villages: f64,
    rate_mbps: f64,
    contention_ratio: f64,
    household_size: f64,
    out_mbps: *mut f64,
) -> TvwsStatus {
    guard(|| {
        let out_mbps = out(out_mbps, "out_mbps")?;
        *out_mbps = demand_mbps(population_per_village, villages, rate_mbps, contention_ratio, household_size)?;
        Ok(())
    })
}

fn checked_topology(file: TopologyFile) -> Result<Box<TvwsTopology>, Fail> {
    validate_topology(&file.topology(), &file.plan, file.threshold_km).map_err(Error::Validation)?;
    Ok(Box::new(TvwsTopology { file }))
}

/// Parses and validates a topology from TOML text.
///
/// # Safety
/// `toml` must be a NUL-terminated string; `out_topology` valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_topology_from_toml(toml: *const c_char, out_topology: *mut *mut TvwsTopology) -> TvwsStatus {
    guard(|| {
        let text = str_arg(toml, "toml")?;
        let slot = out(out_topology, "out_topology")?;
        *slot = Box::into_raw(checked_topology(config::parse_topology(text)?)?);
        Ok(())
    })
}

/// Loads and validates a topology file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out_topology` valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_topology_load(path: *const c_char, out_topology: *mut *mut TvwsTopology) -> TvwsStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        let slot = out(out_topology, "out_topology")?;
        *slot = Box::into_raw(checked_topology(config::load_topology(Path::new(path))?)?);
        Ok(())
    })
}

/// Number of eNBs, or 0 for NULL.
///
/// # Safety
/// `topology` must be a handle from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_topology_enb_count(topology: *const TvwsTopology) -> usize {
    topology.as_ref().map_or(0, |t| t.file.enb.len())
}

/// Number of channels in the topology's plan, or 0 for NULL.
///
/// # Safety
/// `topology` must be a handle from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_topology_channel_count(topology: *const TvwsTopology) -> usize {
    topology.as_ref().map_or(0, |t| t.file.plan.num_channels)
}

/// MAC settings stored with the topology (defaults unless its file set them).
///
/// # Safety
/// Pointers must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_topology_mac_params(topology: *const TvwsTopology, out_mac: *mut TvwsMacParams) -> TvwsStatus {
    guard(|| {
        let t = deref(topology, "topology")?;
        *out(out_mac, "out_mac")? = t.file.mac.into();
        Ok(())
    })
}

/// # Safety
/// `topology` must be a handle from this library or NULL; it must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tvws_topology_free(topology: *mut TvwsTopology) {
    if !topology.is_null() {
        drop(Box::from_raw(topology));
    }
}

fn mac_or_default(t: &TvwsTopology, mac: *const TvwsMacParams) -> MacConfig {
    // SAFETY: caller contract of the exported functions.
    unsafe { mac.as_ref() }.map_or(t.file.mac, |m| (*m).into())
}

/// Runs FCCA on `topology`. `mac` may be NULL to use the topology's MAC
/// settings; `delta` outside (0, 1] uses the topology's threshold.
///
/// # Safety
/// Pointers must be valid or NULL; `topology` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tvws_allocate(
    topology: *const TvwsTopology,
    mac: *const TvwsMacParams,
    delta: f64,
    out_outcome: *mut *mut TvwsOutcome,
) -> TvwsStatus {
    guard(|| {
        let t = deref(topology, "topology")?;
        let slot = out(out_outcome, "out_outcome")?;
        let mac = mac_or_default(t, mac);
        let delta = if delta > 0.0 && delta <= 1.0 { delta } else { t.file.delta };
        let topo = t.file.topology();
        let c = build_interference_matrix(&topo.enb_positions, t.file.threshold_km);
        let cfg = FccaConfig::new(delta, t.file.plan.num_channels)?;
        let mut eval = Evaluator::new(&topo, &c, &t.file.plan, &mac)?;
        let inner = fcca::fcca(&c, &cfg, |a| eval.evaluate(a).map(|r| r.per_enb_bps))?;
        *slot = Box::into_raw(Box::new(TvwsOutcome { inner }));
        Ok(())
    })
}

fn candidate(o: &FccaOutcome, which: TvwsCandidate) -> &Candidate {
    match which {
        TvwsCandidate::Mdca => &o.mdca,
        TvwsCandidate::OdrsCa => &o.odrs,
        TvwsCandidate::Chosen => o.chosen(),
    }
}

/// # Safety
/// Pointers must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_outcome_sub_algorithm(
    outcome: *const TvwsOutcome,
    out_sub: *mut TvwsSubAlgorithm,
) -> TvwsStatus {
    guard(|| {
        let o = deref(outcome, "outcome")?;
        *out(out_sub, "out_sub")? = match o.inner.chosen_sub_algorithm {
            SubAlgorithm::Mdca => TvwsSubAlgorithm::Mdca,
            SubAlgorithm::OdrsCa => TvwsSubAlgorithm::OdrsCa,
            SubAlgorithm::NotApplicable => {
                return Err(Error::Invariant("outcome without a sub-algorithm".into()).into())
            }
        };
        Ok(())
    })
}

/// Sum throughput (b/s) and fairness index of one candidate. Either out
/// pointer may be NULL.
///
/// # Safety
/// `outcome` must be a live handle; out pointers valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_outcome_score(
    outcome: *const TvwsOutcome,
    which: TvwsCandidate,
    out_total_bps: *mut f64,
    out_fairness: *mut f64,
) -> TvwsStatus {
    guard(|| {
        let c = candidate(&deref(outcome, "outcome")?.inner, which);
        if let Some(t) = out_total_bps.as_mut() {
            *t = c.total_throughput();
        }
        if let Some(f) = out_fairness.as_mut() {
            *f = c.fairness;
        }
        Ok(())
    })
}

/// Copies one candidate allocation into a new handle.
///
/// # Safety
/// `outcome` must be a live handle; `out_allocation` valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_outcome_allocation(
    outcome: *const TvwsOutcome,
    which: TvwsCandidate,
    out_allocation: *mut *mut TvwsAllocation,
) -> TvwsStatus {
    guard(|| {
        let c = candidate(&deref(outcome, "outcome")?.inner, which);
        let slot = out(out_allocation, "out_allocation")?;
        *slot = Box::into_raw(Box::new(TvwsAllocation {
            inner: c.allocation.clone(),
        }));
        Ok(())
    })
}

/// # Safety
/// `outcome` must be a handle from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_outcome_free(outcome: *mut TvwsOutcome) {
    if !outcome.is_null() {
        drop(Box::from_raw(outcome));
    }
}

/// Parses the plain-text matrix format (rows of `0`, `D`, `S`).
///
/// # Safety
/// `text` must be NUL-terminated; `out_allocation` valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_allocation_parse(text: *const c_char, out_allocation: *mut *mut TvwsAllocation) -> TvwsStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let slot = out(out_allocation, "out_allocation")?;
        let inner: Allocation = text.parse()?;
        *slot = Box::into_raw(Box::new(TvwsAllocation { inner }));
        Ok(())
    })
}

/// # Safety
/// `allocation` must be a handle from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_allocation_enb_count(allocation: *const TvwsAllocation) -> usize {
    allocation.as_ref().map_or(0, |a| a.inner.enb_count())
}

/// # Safety
/// `allocation` must be a handle from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_allocation_channel_count(allocation: *const TvwsAllocation) -> usize {
    allocation.as_ref().map_or(0, |a| a.inner.channel_count())
}

/// # Safety
/// Pointers must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_allocation_cell(
    allocation: *const TvwsAllocation,
    enb: usize,
    channel: usize,
    out_mode: *mut TvwsChannelMode,
) -> TvwsStatus {
    guard(|| {
        let a = &deref(allocation, "allocation")?.inner;
        check_index(enb, a.enb_count())?;
        check_index(channel, a.channel_count())?;
        *out(out_mode, "out_mode")? = match a.mode(enb, channel) {
            ChannelMode::Unassigned => TvwsChannelMode::Unassigned,
            ChannelMode::Dedicated => TvwsChannelMode::Dedicated,
            ChannelMode::Shared => TvwsChannelMode::Shared,
        };
        Ok(())
    })
}

/// Writes the allocation in the plain-text matrix format.
///
/// # Safety
/// `buf` must hold `capacity` bytes (or be NULL to query `needed`).
#[no_mangle]
pub unsafe extern "C" fn tvws_allocation_text(
    allocation: *const TvwsAllocation,
    buf: *mut c_char,
    capacity: usize,
    needed: *mut usize,
) -> TvwsStatus {
    guard(|| {
        let a = &deref(allocation, "allocation")?.inner;
        write_text(&a.to_string(), buf, capacity, needed)
    })
}

/// # Safety
/// `allocation` must be a handle from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_allocation_free(allocation: *mut TvwsAllocation) {
    if !allocation.is_null() {
        drop(Box::from_raw(allocation));
    }
}

/// Simulates `allocation` over `topology`. `mac` may be NULL to use the
/// topology's MAC settings.
///
/// # Safety
/// Pointers must be valid or NULL; handles must be live.
#[no_mangle]
pub unsafe extern "C" fn tvws_simulate(
    topology: *const TvwsTopology,
    allocation: *const TvwsAllocation,
    mac: *const TvwsMacParams,
    out_report: *mut *mut TvwsReport,
) -> TvwsStatus {
    guard(|| {
        let t = deref(topology, "topology")?;
        let a = &deref(allocation, "allocation")?.inner;
        let slot = out(out_report, "out_report")?;
        let mac = mac_or_default(t, mac);
        let topo = t.file.topology();
        let c = build_interference_matrix(&topo.enb_positions, t.file.threshold_km);
        let inner = Evaluator::new(&topo, &c, &t.file.plan, &mac)?.evaluate(a)?;
        *slot = Box::into_raw(Box::new(TvwsReport { inner }));
        Ok(())
    })
}

/// # Safety
/// `report` must be a handle from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_report_enb_count(report: *const TvwsReport) -> usize {
    report.as_ref().map_or(0, |r| r.inner.per_enb_bps.len())
}

/// Jain's index and total throughput (b/s). Either out pointer may be NULL.
///
/// # Safety
/// `report` must be a live handle; out pointers valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_report_summary(
    report: *const TvwsReport,
    out_jfi: *mut f64,
    out_total_bps: *mut f64,
) -> TvwsStatus {
    guard(|| {
        let r = &deref(report, "report")?.inner;
        if let Some(j) = out_jfi.as_mut() {
            *j = r.jfi;
        }
        if let Some(t) = out_total_bps.as_mut() {
            *t = r.total_bps();
        }
        Ok(())
    })
}

/// Copies one per-eNB series into `values`, which must hold at least
/// `tvws_report_enb_count` doubles.
///
/// # Safety
/// `values` must point to `capacity` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn tvws_report_series(
    report: *const TvwsReport,
    series: TvwsSeries,
    values: *mut f64,
    capacity: usize,
) -> TvwsStatus {
    guard(|| {
        let r = &deref(report, "report")?.inner;
        let src = match series {
            TvwsSeries::ThroughputBps => &r.per_enb_bps,
            TvwsSeries::SpectralEfficiency => &r.spectral_efficiency_bps_hz,
            TvwsSeries::Airtime => &r.airtime,
        };
        if values.is_null() {
            return Err(null("values"));
        }
        if capacity < src.len() {
            return Err(Fail(
                TvwsStatus::BufferTooSmall,
                format!("buffer of {capacity} values, {} needed", src.len()),
            ));
        }
        ptr::copy_nonoverlapping(src.as_ptr(), values, src.len());
        Ok(())
    })
}

/// # Safety
/// `report` must be a handle from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn tvws_report_free(report: *mut TvwsReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
