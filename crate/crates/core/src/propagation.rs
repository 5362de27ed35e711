//! Hata path loss, link budget and the SINR to rate mapping.
//!
//! Powers are in dBm, gains and losses in dB and distances in km throughout.
//! Interference is summed in linear milliwatts.

use crate::error::{Error, Result};
use crate::model::{RadioParams, HATA_FREQ_RANGE_MHZ};

/// Thermal noise density at room temperature.
pub const THERMAL_NOISE_DBM_PER_HZ: f64 = -174.0;

/// Spectral efficiency ceiling in b/s/Hz (64-QAM, rate ~0.8).
pub const DEFAULT_SPECTRAL_EFFICIENCY_CAP: f64 = 4.8;

pub const HATA_DISTANCE_RANGE_KM: (f64, f64) = (1.0, 20.0);
pub const HATA_TX_HEIGHT_RANGE_M: (f64, f64) = (30.0, 200.0);
pub const HATA_RX_HEIGHT_RANGE_M: (f64, f64) = (1.0, 10.0);

fn check_range(what: &'static str, value: f64, (min, max): (f64, f64)) -> Result<()> {
    if value.is_finite() && (min..=max).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what,
            value,
            min,
            max,
        })
    }
}

fn check_hata_inputs(d_km: f64, f_mhz: f64, ht_m: f64, hr_m: f64) -> Result<()> {
    check_range("distance_km", d_km, HATA_DISTANCE_RANGE_KM)?;
    check_range("frequency_mhz", f_mhz, HATA_FREQ_RANGE_MHZ)?;
    check_range("tx_height_m", ht_m, HATA_TX_HEIGHT_RANGE_M)?;
    check_range("rx_height_m", hr_m, HATA_RX_HEIGHT_RANGE_M)
}

/// Mobile antenna height correction for small and medium cities.
fn mobile_height_correction_db(f_mhz: f64, hr_m: f64) -> f64 {
    let lf = f_mhz.log10();
    (1.1 * lf - 0.7) * hr_m - (1.56 * lf - 0.8)
}

/// Distance slope of the Hata formula in dB per decade.
pub fn hata_slope_db_per_decade(ht_m: f64) -> f64 {
    44.9 - 6.55 * ht_m.log10()
}

/// Unchecked urban Hata formula; evaluates outside the validity ranges too.
fn urban_unchecked(d_km: f64, f_mhz: f64, ht_m: f64, hr_m: f64) -> f64 {
    69.55 + 26.16 * f_mhz.log10() - 13.82 * ht_m.log10() - mobile_height_correction_db(f_mhz, hr_m)
        + hata_slope_db_per_decade(ht_m) * d_km.log10()
}

/// Amount by which suburban loss sits below urban loss.
pub fn suburban_correction_db(f_mhz: f64) -> f64 {
    2.0 * (f_mhz / 28.0).log10().powi(2) + 5.4
}

fn suburban_unchecked(d_km: f64, f_mhz: f64, ht_m: f64, hr_m: f64) -> f64 {
    urban_unchecked(d_km, f_mhz, ht_m, hr_m) - suburban_correction_db(f_mhz)
}

/// Urban Hata path loss in dB.
pub fn hata_urban_pl(d_km: f64, f_mhz: f64, ht_m: f64, hr_m: f64) -> Result<f64> {
    check_hata_inputs(d_km, f_mhz, ht_m, hr_m)?;
    Ok(urban_unchecked(d_km, f_mhz, ht_m, hr_m))
}

/// Suburban Hata path loss in dB.
pub fn hata_suburban_pl(d_km: f64, f_mhz: f64, ht_m: f64, hr_m: f64) -> Result<f64> {
    check_hata_inputs(d_km, f_mhz, ht_m, hr_m)?;
    Ok(suburban_unchecked(d_km, f_mhz, ht_m, hr_m))
}

/// Path loss used for link rates. Below 1 km the loss is held at its 1 km
/// value; beyond 20 km the formula is extrapolated.
pub fn link_path_loss_db(radio: &RadioParams, d_km: f64) -> f64 {
    suburban_unchecked(
        d_km.max(HATA_DISTANCE_RANGE_KM.0),
        radio.center_freq_mhz,
        radio.tx_height_m,
        radio.rx_height_m,
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub max_allowed_pl_db: f64,
    pub noise_floor_dbm: f64,
}

impl LinkBudget {
    pub fn new(radio: &RadioParams, bandwidth_hz: f64) -> Self {
        LinkBudget {
            max_allowed_pl_db: max_allowed_path_loss_db(radio),
            noise_floor_dbm: noise_floor_dbm(bandwidth_hz, radio.noise_figure_db),
        }
    }
}

/// Largest path loss at which the receiver still sees its sensitivity level:
/// `Pt + Gt + Gr - CL - NF - RS`.
pub fn max_allowed_path_loss_db(radio: &RadioParams) -> f64 {
    radio.tx_power_dbm + radio.tx_gain_db + radio.rx_gain_db
        - radio.cable_loss_db
        - radio.noise_figure_db
        - radio.rx_sensitivity_dbm
}

pub fn noise_floor_dbm(bandwidth_hz: f64, noise_figure_db: f64) -> f64 {
    THERMAL_NOISE_DBM_PER_HZ + 10.0 * bandwidth_hz.log10() + noise_figure_db
}

/// Distance at which suburban loss reaches the maximum allowed path loss,
/// found by bisection. Radii past 20 km follow the extrapolated formula.
pub fn coverage_radius(radio: &RadioParams) -> Result<f64> {
    radio.validate()?;
    let target = max_allowed_path_loss_db(radio);
    let pl = |d: f64| link_path_loss_db(radio, d);
    let floor = pl(HATA_DISTANCE_RANGE_KM.0);
    if target < floor {
        return Err(Error::CoverageBelowHataFloor {
            max_allowed_pl_db: target,
            floor_pl_db: floor,
        });
    }

    let mut lo = HATA_DISTANCE_RANGE_KM.0;
    let mut hi = HATA_DISTANCE_RANGE_KM.1;
    while pl(hi) < target {
        lo = hi;
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::InvalidParameter(format!(
                "coverage radius diverges for max allowed path loss {target} dB"
            )));
        }
    }
    // 1 mm bracket keeps the loss residual well under 0.01 dB even at 1 km.
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if pl(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Received power at the CPE antenna output: `Pt + Gt + Gr - CL - PL(d)`.
pub fn received_power(radio: &RadioParams, d_km: f64) -> f64 {
    radio.tx_power_dbm + radio.tx_gain_db + radio.rx_gain_db
        - radio.cable_loss_db
        - link_path_loss_db(radio, d_km)
}

#[inline]
pub fn dbm_to_mw(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}

#[inline]
pub fn mw_to_dbm(mw: f64) -> f64 {
    10.0 * mw.log10()
}

pub fn sinr_db(signal_dbm: f64, interferer_powers_dbm: &[f64], noise_floor_dbm: f64) -> f64 {
    let interference: f64 = interferer_powers_dbm.iter().map(|&p| dbm_to_mw(p)).sum();
    sinr_linear(dbm_to_mw(signal_dbm), interference, dbm_to_mw(noise_floor_dbm)).log10() * 10.0
}

#[inline]
pub fn sinr_linear(signal_mw: f64, interference_mw: f64, noise_mw: f64) -> f64 {
    signal_mw / (interference_mw + noise_mw)
}

/// Shannon rate capped at [`DEFAULT_SPECTRAL_EFFICIENCY_CAP`].
pub fn link_rate_bps(sinr_db: f64, bandwidth_hz: f64) -> f64 {
    link_rate_linear(10f64.powf(sinr_db / 10.0), bandwidth_hz, DEFAULT_SPECTRAL_EFFICIENCY_CAP)
}

#[inline]
pub fn link_rate_linear(sinr: f64, bandwidth_hz: f64, se_cap: f64) -> f64 {
    bandwidth_hz * (1.0 + sinr).log2().min(se_cap)
}
