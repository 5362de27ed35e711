//! Domain types shared by the allocation, propagation and simulation code.
//!
//! Every type here is an immutable value once constructed. Constructors
//! check the structural invariants (symmetry of the interference matrix,
//! mode bits only on assigned channels) so downstream code can rely on them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::conflict;
use crate::error::{Error, Result};
use crate::propagation;

/// Hata model frequency validity range in MHz.
pub const HATA_FREQ_RANGE_MHZ: (f64, f64) = (150.0, 1500.0);

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x_km: f64,
    pub y_km: f64,
}

impl Point {
    pub const fn new(x_km: f64, y_km: f64) -> Self {
        Point { x_km, y_km }
    }

    pub fn distance_km(&self, other: &Point) -> f64 {
        (self.x_km - other.x_km).hypot(self.y_km - other.y_km)
    }

    fn inside_square(&self, side_km: f64) -> bool {
        (0.0..=side_km).contains(&self.x_km) && (0.0..=side_km).contains(&self.y_km)
    }
}

/// Per-site radio parameters. All eNBs and CPEs of a topology share one set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadioParams {
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

impl RadioParams {
    /// Low-power UHF middle-mile eNB: 18 dBm, 10 dBi / 0 dBi antennas,
    /// 2 dB cable loss, 7 dB noise figure, -101 dBm sensitivity, 500 MHz,
    /// 30 m mast and 5 m CPE.
    pub const fn reference() -> Self {
        RadioParams {
            tx_power_dbm: 18.0,
            tx_gain_db: 10.0,
            rx_gain_db: 0.0,
            cable_loss_db: 2.0,
            noise_figure_db: 7.0,
            tx_height_m: 30.0,
            rx_height_m: 5.0,
            center_freq_mhz: 500.0,
            rx_sensitivity_dbm: -101.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.tx_power_dbm,
            self.tx_gain_db,
            self.rx_gain_db,
            self.cable_loss_db,
            self.noise_figure_db,
            self.tx_height_m,
            self.rx_height_m,
            self.center_freq_mhz,
            self.rx_sensitivity_dbm,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "radio parameters must be finite".into(),
            ));
        }
        if !(self.rx_height_m > 0.0 && self.tx_height_m > self.rx_height_m) {
            return Err(Error::InvalidParameter(format!(
                "antenna heights must satisfy tx_height_m > rx_height_m > 0 (got {} m / {} m)",
                self.tx_height_m, self.rx_height_m
            )));
        }
        let (lo, hi) = HATA_FREQ_RANGE_MHZ;
        if !(lo..=hi).contains(&self.center_freq_mhz) {
            return Err(Error::OutOfRange {
                what: "center_freq_mhz",
                value: self.center_freq_mhz,
                min: lo,
                max: hi,
            });
        }
        if self.cable_loss_db < 0.0 || self.noise_figure_db < 0.0 {
            return Err(Error::InvalidParameter(
                "cable_loss_db and noise_figure_db must be >= 0".into(),
            ));
        }
        Ok(())
    }
}

impl Default for RadioParams {
    fn default() -> Self {
        Self::reference()
    }
}

/// The pool of orthogonal channels managed by the spectrum manager.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelPlan {
    pub num_channels: usize,
    pub channel_bandwidth_hz: f64,
    pub channel_center_freqs_mhz: Vec<f64>,
}

impl ChannelPlan {
    /// `count` adjacent channels of `bandwidth_hz`, the lowest starting at
    /// `band_start_mhz`.
    pub fn contiguous(count: usize, bandwidth_hz: f64, band_start_mhz: f64) -> Self {
        let bw_mhz = bandwidth_hz / 1e6;
        ChannelPlan {
            num_channels: count,
            channel_bandwidth_hz: bandwidth_hz,
            channel_center_freqs_mhz: (0..count)
                .map(|i| band_start_mhz + bw_mhz * (i as f64 + 0.5))
                .collect(),
        }
    }

    /// 20 MHz at 500-520 MHz split into four 5 MHz channels.
    pub fn reference() -> Self {
        Self::contiguous(4, 5e6, 500.0)
    }

    pub fn total_bandwidth_hz(&self) -> f64 {
        self.channel_bandwidth_hz * self.num_channels as f64
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_channels == 0 {
            return Err(Error::InvalidParameter(
                "channel plan needs at least one channel".into(),
            ));
        }
        if !(self.channel_bandwidth_hz > 0.0 && self.channel_bandwidth_hz.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "channel bandwidth must be positive, got {} Hz",
                self.channel_bandwidth_hz
            )));
        }
        if self.channel_center_freqs_mhz.len() != self.num_channels {
            return Err(Error::SizeMismatch(format!(
                "{} channel centers listed for {} channels",
                self.channel_center_freqs_mhz.len(),
                self.num_channels
            )));
        }
        let mut centers = self.channel_center_freqs_mhz.clone();
        centers.sort_by(f64::total_cmp);
        let bw_mhz = self.channel_bandwidth_hz / 1e6;
        for pair in centers.windows(2) {
            // Allow for decimal rounding in hand-written configs.
            if pair[1] - pair[0] < bw_mhz - 1e-9 {
                return Err(Error::InvalidParameter(format!(
                    "channels at {} MHz and {} MHz overlap for {} MHz bandwidth",
                    pair[0], pair[1], bw_mhz
                )));
            }
        }
        Ok(())
    }
}

impl Default for ChannelPlan {
    fn default() -> Self {
        Self::reference()
    }
}

/// eNB and CPE sites in a square deployment area.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Topology {
    pub area_km: f64,
    pub enb_positions: Vec<Point>,
    /// `cpe_positions[k]` holds the CPEs served by eNB `k`.
    pub cpe_positions: Vec<Vec<Point>>,
    pub radio: RadioParams,
}

impl Topology {
    pub fn enb_count(&self) -> usize {
        self.enb_positions.len()
    }
}

/// A single reason a topology was rejected.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NoEnbs,
    Radio(String),
    Plan(String),
    EnbOutsideArea { enb: usize, position: Point },
    CpeOutsideArea { enb: usize, cpe: usize, position: Point },
    CpeOutsideCoverage {
        enb: usize,
        cpe: usize,
        distance_km: f64,
        radius_km: f64,
    },
    CpeListMismatch { enbs: usize, cpe_lists: usize },
    ExcessiveDegree {
        enb: usize,
        degree: usize,
        channels: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoEnbs => write!(f, "topology has no eNBs"),
            Violation::Radio(msg) => write!(f, "radio parameters: {msg}"),
            Violation::Plan(msg) => write!(f, "channel plan: {msg}"),
            Violation::EnbOutsideArea { enb, position } => write!(
                f,
                "eNB {enb}: position outside area ({}, {}) km",
                position.x_km, position.y_km
            ),
            Violation::CpeOutsideArea { enb, cpe, position } => write!(
                f,
                "CPE {cpe} of eNB {enb}: position outside area ({}, {}) km",
                position.x_km, position.y_km
            ),
            Violation::CpeOutsideCoverage {
                enb,
                cpe,
                distance_km,
                radius_km,
            } => write!(
                f,
                "CPE {cpe} of eNB {enb}: outside coverage ({distance_km:.3} km > {radius_km:.3} km)"
            ),
            Violation::CpeListMismatch { enbs, cpe_lists } => write!(
                f,
                "{cpe_lists} CPE lists given for {enbs} eNBs"
            ),
            Violation::ExcessiveDegree {
                enb,
                degree,
                channels,
            } => write!(
                f,
                "eNB {enb}: degree {degree} >= M = {channels} channels"
            ),
        }
    }
}

/// Checks a topology against the deployment assumptions: positions inside
/// the area, CPEs inside their eNB's coverage radius and every conflict
/// graph degree at most `num_channels - 1` so greedy coloring cannot stall.
///
/// Returns every violation found, not just the first.
pub fn validate_topology(
    topology: &Topology,
    plan: &ChannelPlan,
    threshold_km: f64,
) -> std::result::Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    if topology.enb_positions.is_empty() {
        violations.push(Violation::NoEnbs);
    }
    if let Err(e) = plan.validate() {
        violations.push(Violation::Plan(e.to_string()));
    }
    let radius = match topology
        .radio
        .validate()
        .and_then(|_| propagation::coverage_radius(&topology.radio))
    {
        Ok(r) => Some(r),
        Err(e) => {
            violations.push(Violation::Radio(e.to_string()));
            None
        }
    };

    let area = topology.area_km;
    for (k, p) in topology.enb_positions.iter().enumerate() {
        if !p.inside_square(area) {
            violations.push(Violation::EnbOutsideArea {
                enb: k,
                position: *p,
            });
        }
    }
    if topology.cpe_positions.len() != topology.enb_positions.len() {
        violations.push(Violation::CpeListMismatch {
            enbs: topology.enb_positions.len(),
            cpe_lists: topology.cpe_positions.len(),
        });
    }
    for (k, (enb, cpes)) in topology
        .enb_positions
        .iter()
        .zip(&topology.cpe_positions)
        .enumerate()
    {
        for (l, cpe) in cpes.iter().enumerate() {
            if !cpe.inside_square(area) {
                violations.push(Violation::CpeOutsideArea {
                    enb: k,
                    cpe: l,
                    position: *cpe,
                });
            }
            if let Some(radius) = radius {
                let d = enb.distance_km(cpe);
                if d > radius {
                    violations.push(Violation::CpeOutsideCoverage {
                        enb: k,
                        cpe: l,
                        distance_km: d,
                        radius_km: radius,
                    });
                }
            }
        }
    }

    if !topology.enb_positions.is_empty() && plan.num_channels > 0 {
        let c = conflict::build_interference_matrix(&topology.enb_positions, threshold_km);
        for k in 0..c.size() {
            let degree = c.degree(k);
            if degree >= plan.num_channels {
                violations.push(Violation::ExcessiveDegree {
                    enb: k,
                    degree,
                    channels: plan.num_channels,
                });
            }
        }
    }

    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Binary symmetric conflict matrix with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceMatrix {
    size: usize,
    entries: Vec<bool>,
    threshold_km: Option<f64>,
}

impl InterferenceMatrix {
    /// Builds a matrix from explicit rows, rejecting asymmetric input or a
    /// nonzero diagonal.
    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::InvalidParameter(
                "interference matrix needs at least one eNB".into(),
            ));
        }
        let mut entries = Vec::with_capacity(size * size);
        for (k, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::SizeMismatch(format!(
                    "row {k} has {} entries, expected {size}",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        for k in 0..size {
            if entries[k * size + k] {
                return Err(Error::InvalidParameter(format!(
                    "diagonal entry ({k}, {k}) must be zero"
                )));
            }
            for j in (k + 1)..size {
                if entries[k * size + j] != entries[j * size + k] {
                    return Err(Error::InvalidParameter(format!(
                        "matrix not symmetric at ({k}, {j})"
                    )));
                }
            }
        }
        Ok(InterferenceMatrix {
            size,
            entries,
            threshold_km: None,
        })
    }

    /// Builds a matrix from an undirected edge list.
    pub fn from_edges(size: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut rows = vec![vec![false; size]; size];
        for &(a, b) in edges {
            if a >= size || b >= size {
                return Err(Error::IndexOutOfRange {
                    index: a.max(b),
                    size,
                });
            }
            if a == b {
                return Err(Error::InvalidParameter(format!("self-loop on eNB {a}")));
            }
            rows[a][b] = true;
            rows[b][a] = true;
        }
        Self::from_rows(&rows)
    }

    pub(crate) fn from_parts(size: usize, entries: Vec<bool>, threshold_km: f64) -> Self {
        debug_assert_eq!(entries.len(), size * size);
        InterferenceMatrix {
            size,
            entries,
            threshold_km: Some(threshold_km),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Distance threshold used to build the matrix, if it came from positions.
    pub fn threshold_km(&self) -> Option<f64> {
        self.threshold_km
    }

    #[inline]
    pub fn interferes(&self, k: usize, j: usize) -> bool {
        self.entries[k * self.size + j]
    }

    pub fn neighbors(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.entries[k * self.size..(k + 1) * self.size];
        row.iter()
            .enumerate()
            .filter_map(|(j, &e)| if e { Some(j) } else { None })
    }

    pub fn degree(&self, k: usize) -> usize {
        self.neighbors(k).count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.size).map(|k| self.degree(k)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.entries.iter().filter(|&&e| e).count() / 2
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.entries
            .chunks(self.size)
            .map(|r| r.iter().map(|&e| e as u8).collect())
            .collect()
    }
}

/// Plain-text matrix: one row per eNB, cells separated by a space.
impl fmt::Display for InterferenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.size) {
            let cells: Vec<&str> = row.iter().map(|&e| if e { "1" } else { "0" }).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for InterferenceMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = parse_matrix_rows(s, |line, tok| match tok {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(Error::Parse {
                line,
                message: format!("expected 0 or 1, found `{other}`"),
            }),
        })?;
        Self::from_rows(&rows)
    }
}

/// Access mode of one (eNB, channel) cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ChannelMode {
    #[default]
    Unassigned,
    Dedicated,
    Shared,
}

impl ChannelMode {
    pub fn symbol(self) -> char {
        match self {
            ChannelMode::Unassigned => '0',
            ChannelMode::Dedicated => 'D',
            ChannelMode::Shared => 'S',
        }
    }

    pub fn is_assigned(self) -> bool {
        self != ChannelMode::Unassigned
    }
}

/// The channel matrix A and mode matrix B, stored as one cell per
/// (eNB, channel) so a shared bit can never exist without an assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Allocation {
    enbs: usize,
    channels: usize,
    cells: Vec<ChannelMode>,
}

impl Allocation {
    pub fn empty(enbs: usize, channels: usize) -> Self {
        Allocation {
            enbs,
            channels,
            cells: vec![ChannelMode::Unassigned; enbs * channels],
        }
    }

    /// Every eNB holds every channel in `mode`.
    pub fn uniform(enbs: usize, channels: usize, mode: ChannelMode) -> Self {
        Allocation {
            enbs,
            channels,
            cells: vec![mode; enbs * channels],
        }
    }

    pub fn from_rows(rows: &[Vec<ChannelMode>]) -> Result<Self> {
        let enbs = rows.len();
        let channels = rows.first().map_or(0, Vec::len);
        if enbs == 0 || channels == 0 {
            return Err(Error::InvalidParameter(
                "allocation needs at least one eNB and one channel".into(),
            ));
        }
        let mut cells = Vec::with_capacity(enbs * channels);
        for (k, row) in rows.iter().enumerate() {
            if row.len() != channels {
                return Err(Error::SizeMismatch(format!(
                    "allocation row {k} has {} channels, expected {channels}",
                    row.len()
                )));
            }
            cells.extend_from_slice(row);
        }
        Ok(Allocation {
            enbs,
            channels,
            cells,
        })
    }

    /// Builds an allocation from the binary channel matrix A and mode matrix
    /// B. Fails if B has a 1 where A has a 0.
    pub fn from_matrices(a: &[Vec<u8>], b: &[Vec<u8>]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::SizeMismatch(format!(
                "A has {} rows, B has {}",
                a.len(),
                b.len()
            )));
        }
        let mut rows = Vec::with_capacity(a.len());
        for (k, (ra, rb)) in a.iter().zip(b).enumerate() {
            if ra.len() != rb.len() {
                return Err(Error::SizeMismatch(format!("row {k} lengths differ")));
            }
            let row = ra
                .iter()
                .zip(rb)
                .enumerate()
                .map(|(m, (&av, &bv))| match (av, bv) {
                    (0, 0) => Ok(ChannelMode::Unassigned),
                    (1, 0) => Ok(ChannelMode::Dedicated),
                    (1, 1) => Ok(ChannelMode::Shared),
                    (0, 1) => Err(Error::InvalidParameter(format!(
                        "mode bit set on unassigned cell ({k}, {m})"
                    ))),
                    _ => Err(Error::InvalidParameter(format!(
                        "non-binary entry at ({k}, {m})"
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_rows(&rows)
    }

    pub fn enb_count(&self) -> usize {
        self.enbs
    }

    pub fn channel_count(&self) -> usize {
        self.channels
    }

    #[inline]
    pub fn mode(&self, enb: usize, channel: usize) -> ChannelMode {
        self.cells[enb * self.channels + channel]
    }

    pub(crate) fn set(&mut self, enb: usize, channel: usize, mode: ChannelMode) {
        self.cells[enb * self.channels + channel] = mode;
    }

    pub fn row(&self, enb: usize) -> &[ChannelMode] {
        &self.cells[enb * self.channels..(enb + 1) * self.channels]
    }

    pub fn channels_of(&self, enb: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(enb)
            .iter()
            .enumerate()
            .filter_map(|(m, c)| c.is_assigned().then_some(m))
    }

    pub fn count_mode(&self, mode: ChannelMode) -> usize {
        self.cells.iter().filter(|&&c| c == mode).count()
    }

    /// Matrix A.
    pub fn channel_matrix(&self) -> Vec<Vec<u8>> {
        self.cells
            .chunks(self.channels)
            .map(|r| r.iter().map(|c| c.is_assigned() as u8).collect())
            .collect()
    }

    /// Matrix B.
    pub fn mode_matrix(&self) -> Vec<Vec<u8>> {
        self.cells
            .chunks(self.channels)
            .map(|r| r.iter().map(|&c| (c == ChannelMode::Shared) as u8).collect())
            .collect()
    }
}

/// One row per eNB, one space-separated cell per channel: `0`, `D` or `S`.
impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.cells.chunks(self.channels) {
            let cells: Vec<String> = row.iter().map(|c| c.symbol().to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Allocation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = parse_matrix_rows(s, |line, tok| match tok {
            "0" => Ok(ChannelMode::Unassigned),
            "D" => Ok(ChannelMode::Dedicated),
            "S" => Ok(ChannelMode::Shared),
            other => Err(Error::Parse {
                line,
                message: format!("expected 0, D or S, found `{other}`"),
            }),
        })?;
        Self::from_rows(&rows)
    }
}

/// Splits whitespace-separated matrix text into rows, skipping blank lines
/// and `#` comments.
fn parse_matrix_rows<T>(
    s: &str,
    mut cell: impl FnMut(usize, &str) -> Result<T>,
) -> Result<Vec<Vec<T>>> {
    let mut rows = Vec::new();
    for (i, line) in s.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| cell(i + 1, tok))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no matrix rows found".into(),
        });
    }
    Ok(rows)
}

/// Which FCCA sub-algorithm produced an allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubAlgorithm {
    #[serde(rename = "MDCA")]
    Mdca,
    #[serde(rename = "ODRS_CA")]
    OdrsCa,
    #[serde(rename = "N/A")]
    NotApplicable,
}

impl fmt::Display for SubAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubAlgorithm::Mdca => "MDCA",
            SubAlgorithm::OdrsCa => "ODRS_CA",
            SubAlgorithm::NotApplicable => "N/A",
        })
    }
}

/// Per-eNB downlink throughput and the metrics derived from it.
#[derive(Debug, Clone, PartialEq)]
pub struct ThroughputReport {
    pub per_enb_bps: Vec<f64>,
    pub jfi: f64,
    /// Throughput normalized by the whole band (M x channel bandwidth).
    pub spectral_efficiency_bps_hz: Vec<f64>,
    /// Transmit time of each eNB summed over its channels, as a fraction of
    /// the simulated time (so at most the number of channels it holds).
    pub airtime: Vec<f64>,
    pub sub_algorithm_used: SubAlgorithm,
}

impl ThroughputReport {
    pub fn total_bps(&self) -> f64 {
        self.per_enb_bps.iter().sum()
    }

    pub fn mean_bps(&self) -> f64 {
        self.total_bps() / self.per_enb_bps.len() as f64
    }

    pub fn mean_spectral_efficiency(&self) -> f64 {
        self.spectral_efficiency_bps_hz.iter().sum::<f64>()
            / self.spectral_efficiency_bps_hz.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn topo(enbs: Vec<Point>) -> Topology {
        let cpes = enbs
            .iter()
            .map(|p| vec![Point::new(p.x_km + 0.5, p.y_km)])
            .collect();
        Topology {
            area_km: 20.0,
            enb_positions: enbs,
            cpe_positions: cpes,
            radio: RadioParams::reference(),
        }
    }

    #[test]
    fn far_apart_enbs_are_valid() {
        let t = topo(vec![
            Point::new(1.0, 1.0),
            Point::new(6.0, 1.0),
            Point::new(1.0, 6.0),
        ]);
        assert_eq!(validate_topology(&t, &ChannelPlan::reference(), 4.0), Ok(()));
    }

    #[test]
    fn negative_position_is_reported() {
        let mut t = topo(vec![Point::new(2.0, 5.0)]);
        t.enb_positions[0] = Point::new(-1.0, 5.0);
        let v = validate_topology(&t, &ChannelPlan::reference(), 4.0).unwrap_err();
        assert!(v.iter().any(|v| matches!(v, Violation::EnbOutsideArea { enb: 0, .. })));
        assert!(v.iter().any(|v| v.to_string().contains("position outside area")));
    }

    #[test]
    fn five_clique_exceeds_four_channels() {
        let t = topo(
            (0..5)
                .map(|i| Point::new(5.0 + 0.3 * i as f64, 5.0))
                .collect(),
        );
        let v = validate_topology(&t, &ChannelPlan::reference(), 4.0).unwrap_err();
        let degrees: Vec<_> = v
            .iter()
            .filter_map(|v| match v {
                Violation::ExcessiveDegree { degree, .. } => Some(*degree),
                _ => None,
            })
            .collect();
        assert_eq!(degrees, vec![4; 5]);
        assert!(v[0].to_string().contains("degree 4 >= M"));
    }

    #[test]
    fn cpe_outside_coverage() {
        let mut t = topo(vec![Point::new(5.0, 5.0)]);
        t.cpe_positions[0].push(Point::new(5.0, 9.5));
        let v = validate_topology(&t, &ChannelPlan::reference(), 4.0).unwrap_err();
        assert!(matches!(
            v.as_slice(),
            [Violation::CpeOutsideCoverage { enb: 0, cpe: 1, .. }]
        ));
    }

    #[test]
    fn reference_plan_is_orthogonal() {
        let plan = ChannelPlan::reference();
        plan.validate().unwrap();
        assert_eq!(plan.channel_center_freqs_mhz, vec![502.5, 507.5, 512.5, 517.5]);
        let mut overlapping = plan.clone();
        overlapping.channel_center_freqs_mhz[1] = 504.0;
        assert!(overlapping.validate().is_err());
    }

    #[test]
    fn radio_invariants() {
        RadioParams::reference().validate().unwrap();
        let mut r = RadioParams::reference();
        r.rx_height_m = 40.0;
        assert!(r.validate().is_err());
        let mut r = RadioParams::reference();
        r.center_freq_mhz = 2400.0;
        assert!(r.validate().is_err());
        let mut r = RadioParams::reference();
        r.cable_loss_db = -1.0;
        assert!(r.validate().is_err());
    }

    #[test]
    fn mode_bit_without_assignment_is_rejected() {
        let a = vec![vec![1, 0]];
        let b = vec![vec![0, 1]];
        assert!(Allocation::from_matrices(&a, &b).is_err());
        let b = vec![vec![1, 0]];
        let alloc = Allocation::from_matrices(&a, &b).unwrap();
        assert_eq!(alloc.mode(0, 0), ChannelMode::Shared);
        assert_eq!(alloc.channel_matrix(), a);
        assert_eq!(alloc.mode_matrix(), b);
    }

    #[test]
    fn allocation_text_format() {
        let alloc: Allocation = "D 0 S S\n# comment\n0 D S S\n".parse().unwrap();
        assert_eq!(alloc.enb_count(), 2);
        assert_eq!(alloc.to_string(), "D 0 S S\n0 D S S\n");
        assert!("D X".parse::<Allocation>().is_err());
        assert!("D D\nD".parse::<Allocation>().is_err());
    }

    #[test]
    fn interference_matrix_rejects_asymmetry() {
        assert!("0 1\n0 0".parse::<InterferenceMatrix>().is_err());
        assert!("1 0\n0 0".parse::<InterferenceMatrix>().is_err());
        let c: InterferenceMatrix = "0 1\n1 0".parse().unwrap();
        assert_eq!(c.edge_count(), 1);
        assert_eq!(c.to_string(), "0 1\n1 0\n");
    }
}
