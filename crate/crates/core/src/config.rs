//! TOML configuration files.
//!
//! Topology file:
//!
//! ```toml
//! area_km = 10.0
//! threshold_km = 4.0          # optional, default 4.0
//! delta = 0.75                # optional fairness threshold
//!
//! [radio]                     # every key required
//! tx_power_dbm = 18.0
//! tx_gain_db = 10.0
//! rx_gain_db = 0.0
//! cable_loss_db = 2.0
//! noise_figure_db = 7.0
//! tx_height_m = 30.0
//! rx_height_m = 5.0
//! center_freq_mhz = 500.0
//! rx_sensitivity_dbm = -101.0
//!
//! [plan]                      # optional, default 4 x 5 MHz at 500-520 MHz
//! num_channels = 4
//! channel_bandwidth_hz = 5e6
//! channel_center_freqs_mhz = [502.5, 507.5, 512.5, 517.5]
//!
//! [mac]                       # optional, see MacConfig
//! sim_time_s = 30.0
//!
//! [[enb]]
//! position = [2.0, 3.0]       # km
//! cpes = [[2.5, 3.0], [1.0, 2.0]]
//! ```
//!
//! A radio file only needs the `[radio]` table (plus an optional `[plan]`);
//! any topology file also works as one. The sweep file mirrors
//! [`SweepConfig`](crate::experiment::SweepConfig) with `[mac]`, `[radio]`
//! and `[plan]` sub-tables, every key optional.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiment::SweepConfig;
use crate::fcca::DEFAULT_DELTA;
use crate::macsim::MacConfig;
use crate::model::{ChannelPlan, Point, RadioParams, Topology};

pub const DEFAULT_THRESHOLD_KM: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnbEntry {
    pub position: [f64; 2],
    #[serde(default)]
    pub cpes: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyFile {
    pub area_km: f64,
    #[serde(default = "default_threshold")]
    pub threshold_km: f64,
    pub radio: RadioParams,
    #[serde(default)]
    pub plan: ChannelPlan,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default)]
    pub mac: MacConfig,
    #[serde(default)]
    pub enb: Vec<EnbEntry>,
}

fn default_delta() -> f64 {
    DEFAULT_DELTA
}

fn default_threshold() -> f64 {
    DEFAULT_THRESHOLD_KM
}

impl TopologyFile {
    pub fn topology(&self) -> Topology {
        let pt = |p: &[f64; 2]| Point::new(p[0], p[1]);
        Topology {
            area_km: self.area_km,
            enb_positions: self.enb.iter().map(|e| pt(&e.position)).collect(),
            cpe_positions: self
                .enb
                .iter()
                .map(|e| e.cpes.iter().map(pt).collect())
                .collect(),
            radio: self.radio,
        }
    }

    pub fn from_topology(t: &Topology, plan: &ChannelPlan, threshold_km: f64) -> Self {
        TopologyFile {
            area_km: t.area_km,
            threshold_km,
            radio: t.radio,
            plan: plan.clone(),
            delta: DEFAULT_DELTA,
            mac: MacConfig::default(),
            enb: t
                .enb_positions
                .iter()
                .zip(&t.cpe_positions)
                .map(|(p, cpes)| EnbEntry {
                    position: [p.x_km, p.y_km],
                    cpes: cpes.iter().map(|c| [c.x_km, c.y_km]).collect(),
                })
                .collect(),
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct RadioFile {
    pub radio: RadioParams,
    #[serde(default)]
    pub plan: ChannelPlan,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| Error::Config(format!("{origin}: {}", e.message())))
}

pub fn parse_topology(text: &str) -> Result<TopologyFile> {
    parse(text, "topology")
}

pub fn parse_radio(text: &str) -> Result<RadioFile> {
    parse(text, "radio config")
}

pub fn parse_sweep(text: &str) -> Result<SweepConfig> {
    parse(text, "sweep config")
}

pub fn load_topology(path: &Path) -> Result<TopologyFile> {
    parse(&read(path)?, &path.display().to_string())
}

pub fn load_radio(path: &Path) -> Result<RadioFile> {
    parse(&read(path)?, &path.display().to_string())
}

pub fn load_sweep(path: &Path) -> Result<SweepConfig> {
    parse(&read(path)?, &path.display().to_string())
}
