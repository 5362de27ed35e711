//! Random-topology density sweep comparing FCCA against the no-coexistence
//! and full-band LBT baselines, plus the CSV/SVG outputs and the village
//! demand calculation.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conflict::build_interference_matrix;
use crate::error::{Error, Result};
use crate::fcca::{self, FccaConfig};
use crate::macsim::{Evaluator, MacConfig};
use crate::model::{ChannelPlan, Point, RadioParams, SubAlgorithm, ThroughputReport, Topology};
use crate::propagation::coverage_radius;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Scheme {
    #[serde(rename = "NO_COEX")]
    NoCoex,
    #[serde(rename = "FULL_LBT")]
    FullLbt,
    #[serde(rename = "FCCA")]
    Fcca,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::NoCoex, Scheme::FullLbt, Scheme::Fcca];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::NoCoex => "NO_COEX",
            Scheme::FullLbt => "FULL_LBT",
            Scheme::Fcca => "FCCA",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|sch| sch.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown scheme `{s}` (NO_COEX, FULL_LBT, FCCA)")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub enb_counts: Vec<usize>,
    /// Seeds `0..seeds` are run at every density.
    pub seeds: u64,
    pub area_km: f64,
    pub threshold_km: f64,
    pub cpes_per_enb: usize,
    pub schemes: Vec<Scheme>,
    pub delta: f64,
    /// Most conflict-graph neighbors a generated eNB may have (further
    /// capped at `num_channels - 1`).
    pub max_degree: usize,
    pub min_cpe_offset_km: f64,
    pub rejection_budget: usize,
    pub mac: MacConfig,
    pub radio: RadioParams,
    pub plan: ChannelPlan,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            enb_counts: (3..=10).collect(),
            seeds: 100,
            area_km: 10.0,
            threshold_km: 4.0,
            cpes_per_enb: 5,
            schemes: Scheme::ALL.to_vec(),
            delta: fcca::DEFAULT_DELTA,
            max_degree: 2,
            min_cpe_offset_km: 0.05,
            rejection_budget: 1_000_000,
            mac: MacConfig::default(),
            radio: RadioParams::reference(),
            plan: ChannelPlan::reference(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.enb_counts.is_empty() || self.enb_counts.contains(&0) {
            return Err(Error::Config("enb_counts must be non-empty and >= 1".into()));
        }
        if self.seeds == 0 {
            return Err(Error::Config("seeds must be >= 1".into()));
        }
        if self.schemes.is_empty() {
            return Err(Error::Config("at least one scheme is required".into()));
        }
        if !(self.area_km > 0.0 && self.threshold_km >= 0.0) {
            return Err(Error::Config("area_km must be > 0 and threshold_km >= 0".into()));
        }
        if self.cpes_per_enb == 0 {
            return Err(Error::Config("cpes_per_enb must be >= 1".into()));
        }
        self.mac.validate()?;
        self.radio.validate()?;
        self.plan.validate()?;
        FccaConfig::new(self.delta, self.plan.num_channels)?;
        Ok(())
    }

    fn degree_cap(&self) -> usize {
        self.max_degree.min(self.plan.num_channels.saturating_sub(1))
    }
}

fn topology_rng(seed: u64, n_enb: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n_enb as u64);
    rng
}

/// Mixes the MAC seed with the work item so every (seed, density) pair gets
/// its own backoff stream.
fn item_mac_seed(base: u64, seed: u64, n_enb: usize) -> u64 {
    let mut z = base ^ seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((n_enb as u64) << 48);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Draws `n_enb` eNBs uniformly in the square, redrawing the whole layout
/// until no eNB exceeds the degree cap, then places CPEs uniformly in each
/// eNB's coverage disk (outside a small exclusion radius, inside the area).
pub fn generate_topology(seed: u64, n_enb: usize, cfg: &SweepConfig) -> Result<Topology> {
    if n_enb == 0 {
        return Err(Error::Config("n_enb must be >= 1".into()));
    }
    let mut rng = topology_rng(seed, n_enb);
    let side = cfg.area_km;
    let cap = cfg.degree_cap();
    let mut enbs = vec![Point::default(); n_enb];
    let mut degree = vec![0usize; n_enb];
    let mut attempts = 0usize;
    loop {
        if attempts >= cfg.rejection_budget {
            return Err(Error::RejectionBudgetExceeded {
                enb_count: n_enb,
                attempts,
            });
        }
        attempts += 1;
        for p in enbs.iter_mut() {
            *p = Point::new(rng.gen_range(0.0..=side), rng.gen_range(0.0..=side));
        }
        degree.iter_mut().for_each(|d| *d = 0);
        let mut ok = true;
        'pairs: for a in 0..n_enb {
            for b in (a + 1)..n_enb {
                if enbs[a].distance_km(&enbs[b]) < cfg.threshold_km {
                    degree[a] += 1;
                    degree[b] += 1;
                    if degree[a] > cap || degree[b] > cap {
                        ok = false;
                        break 'pairs;
                    }
                }
            }
        }
        if ok {
            break;
        }
    }

    let radius = coverage_radius(&cfg.radio)?;
    let r0 = cfg.min_cpe_offset_km;
    if !(0.0..radius).contains(&r0) {
        return Err(Error::Config(format!(
            "min_cpe_offset_km = {r0} must lie in [0, coverage radius {radius:.3} km)"
        )));
    }
    let cpes = enbs
        .iter()
        .map(|enb| {
            let mut placed = Vec::with_capacity(cfg.cpes_per_enb);
            while placed.len() < cfg.cpes_per_enb {
                // Uniform over the annulus r0..radius.
                let u: f64 = rng.gen();
                let rho = (u * (radius * radius - r0 * r0) + r0 * r0).sqrt();
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                let p = Point::new(enb.x_km + rho * theta.cos(), enb.y_km + rho * theta.sin());
                if (0.0..=side).contains(&p.x_km) && (0.0..=side).contains(&p.y_km) {
                    placed.push(p);
                }
            }
            placed
        })
        .collect();

    Ok(Topology {
        area_km: side,
        enb_positions: enbs,
        cpe_positions: cpes,
        radio: cfg.radio,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub seed: u64,
    pub enb_count: usize,
    pub scheme: Scheme,
    pub mean_spectral_efficiency: f64,
    pub mean_throughput_mbps: f64,
    pub jfi: f64,
    pub chosen_sub_algorithm: SubAlgorithm,
}

impl SweepRecord {
    fn from_throughputs(
        seed: u64,
        enb_count: usize,
        scheme: Scheme,
        per_enb_bps: &[f64],
        band_hz: f64,
        chosen: SubAlgorithm,
    ) -> Result<Self> {
        let mean = per_enb_bps.iter().sum::<f64>() / per_enb_bps.len() as f64;
        Ok(SweepRecord {
            seed,
            enb_count,
            scheme,
            mean_spectral_efficiency: mean / band_hz,
            mean_throughput_mbps: mean / 1e6,
            jfi: fcca::jfi(per_enb_bps)?,
            chosen_sub_algorithm: chosen,
        })
    }

    fn from_report(seed: u64, enb_count: usize, scheme: Scheme, r: &ThroughputReport, band_hz: f64) -> Result<Self> {
        Self::from_throughputs(seed, enb_count, scheme, &r.per_enb_bps, band_hz, r.sub_algorithm_used)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepFailure {
    pub seed: u64,
    pub enb_count: usize,
    pub error: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepOutcome {
    pub records: Vec<SweepRecord>,
    pub failures: Vec<SweepFailure>,
}

/// Runs every requested scheme on one (seed, density) topology.
pub fn run_item(cfg: &SweepConfig, seed: u64, n_enb: usize) -> Result<Vec<SweepRecord>> {
    let topology = generate_topology(seed, n_enb, cfg)?;
    let c = build_interference_matrix(&topology.enb_positions, cfg.threshold_km);
    let mac = MacConfig {
        rng_seed: item_mac_seed(cfg.mac.rng_seed, seed, n_enb),
        ..cfg.mac
    };
    let band = cfg.plan.total_bandwidth_hz();
    let mut eval = Evaluator::new(&topology, &c, &cfg.plan, &mac)?;
    let fcca_cfg = FccaConfig::new(cfg.delta, cfg.plan.num_channels)?;
    cfg.schemes
        .iter()
        .map(|&scheme| match scheme {
            Scheme::NoCoex => SweepRecord::from_report(seed, n_enb, scheme, &eval.no_coexistence()?, band),
            Scheme::FullLbt => SweepRecord::from_report(seed, n_enb, scheme, &eval.full_lbt()?, band),
            Scheme::Fcca => {
                let out = fcca::fcca(&c, &fcca_cfg, |a| eval.evaluate(a).map(|r| r.per_enb_bps))?;
                SweepRecord::from_throughputs(
                    seed,
                    n_enb,
                    scheme,
                    &out.chosen().throughputs,
                    band,
                    out.chosen_sub_algorithm,
                )
            }
        })
        .collect()
}

/// Runs the whole sweep. Work items run in parallel on the current rayon
/// pool; results are merged in (density, seed, scheme) order so the output
/// does not depend on scheduling.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutcome> {
    cfg.validate()?;
    let items: Vec<(usize, u64)> = cfg
        .enb_counts
        .iter()
        .flat_map(|&n| (0..cfg.seeds).map(move |s| (n, s)))
        .collect();
    let results: Vec<_> = items
        .par_iter()
        .map(|&(n, seed)| (n, seed, run_item(cfg, seed, n)))
        .collect();
    let mut outcome = SweepOutcome::default();
    for (enb_count, seed, result) in results {
        match result {
            Ok(records) => outcome.records.extend(records),
            Err(e) => outcome.failures.push(SweepFailure {
                seed,
                enb_count,
                error: e.to_string(),
            }),
        }
    }
    Ok(outcome)
}

/// Sample mean and 95% normal-approximation half-width.
pub fn mean_ci95(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, 1.96 * (var / n).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub enb_count: usize,
    pub scheme: Scheme,
    pub seeds: usize,
    pub mean_spectral_efficiency: f64,
    pub ci95_spectral_efficiency: f64,
    pub mean_throughput_mbps: f64,
    pub ci95_throughput_mbps: f64,
    pub mean_jfi: f64,
    pub ci95_jfi: f64,
    /// Fraction of seeds where MDCA won; FCCA rows only.
    pub mdca_fraction: Option<f64>,
}

pub fn summarize(records: &[SweepRecord]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(usize, Scheme), Vec<&SweepRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.enb_count, r.scheme)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((enb_count, scheme), rs)| {
            let col = |f: fn(&SweepRecord) -> f64| rs.iter().map(|r| f(r)).collect::<Vec<_>>();
            let (se, se_ci) = mean_ci95(&col(|r| r.mean_spectral_efficiency));
            let (tp, tp_ci) = mean_ci95(&col(|r| r.mean_throughput_mbps));
            let (jfi, jfi_ci) = mean_ci95(&col(|r| r.jfi));
            let mdca_fraction = (scheme == Scheme::Fcca).then(|| {
                rs.iter()
                    .filter(|r| r.chosen_sub_algorithm == SubAlgorithm::Mdca)
                    .count() as f64
                    / rs.len() as f64
            });
            SummaryRow {
                enb_count,
                scheme,
                seeds: rs.len(),
                mean_spectral_efficiency: se,
                ci95_spectral_efficiency: se_ci,
                mean_throughput_mbps: tp,
                ci95_throughput_mbps: tp_ci,
                mean_jfi: jfi,
                ci95_jfi: jfi_ci,
                mdca_fraction,
            }
        })
        .collect()
}

/// How often each FCCA sub-algorithm won at one density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SelectionStats {
    pub mdca: usize,
    pub odrs_ca: usize,
}

impl SelectionStats {
    pub fn total(&self) -> usize {
        self.mdca + self.odrs_ca
    }

    pub fn mdca_fraction(&self) -> f64 {
        self.mdca as f64 / self.total() as f64
    }

    pub fn odrs_fraction(&self) -> f64 {
        self.odrs_ca as f64 / self.total() as f64
    }
}

pub fn selection_stats(records: &[SweepRecord], enb_count: usize) -> SelectionStats {
    records
        .iter()
        .filter(|r| r.scheme == Scheme::Fcca && r.enb_count == enb_count)
        .fold(SelectionStats::default(), |mut s, r| {
            match r.chosen_sub_algorithm {
                SubAlgorithm::Mdca => s.mdca += 1,
                SubAlgorithm::OdrsCa => s.odrs_ca += 1,
                SubAlgorithm::NotApplicable => {}
            }
            s
        })
}

/// Throughput a set of villages needs: `population * villages * rate /
/// (contention ratio * people per subscriber)`.
pub fn demand_mbps(
    population_per_village: f64,
    villages: f64,
    rate_mbps: f64,
    contention_ratio: f64,
    subscribers_divisor: f64,
) -> Result<f64> {
    let inputs = [population_per_village, villages, rate_mbps, contention_ratio, subscribers_divisor];
    if inputs.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::InvalidParameter("demand inputs must be finite and non-negative".into()));
    }
    let denom = contention_ratio * subscribers_divisor;
    if denom == 0.0 {
        return Err(Error::InvalidParameter(
            "contention ratio and subscriber divisor must be non-zero".into(),
        ));
    }
    Ok(population_per_village * villages * rate_mbps / denom)
}

type Metric = fn(&SummaryRow) -> f64;

pub const SWEEP_CSV: &str = "sweep.csv";
pub const SUMMARY_CSV: &str = "summary.csv";
pub const CHART_FILES: [&str; 3] = ["spectral_efficiency.svg", "throughput.svg", "jfi.svg"];

pub fn write_sweep_csv<W: std::io::Write>(records: &[SweepRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r).map_err(|e| Error::Config(format!("csv: {e}")))?;
    }
    w.flush().map_err(|e| Error::Config(format!("csv: {e}")))?;
    Ok(())
}

pub fn read_sweep_csv<R: std::io::Read>(input: R) -> Result<Vec<SweepRecord>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .enumerate()
        .map(|(i, r)| {
            r.map_err(|e| Error::Parse {
                line: i + 2,
                message: e.to_string(),
            })
        })
        .collect()
}

fn write_csv_file<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_io(path, e))?;
    for row in rows {
        w.serialize(row).map_err(|e| csv_io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn csv_io(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Config(format!("{}: {other:?}", path.display())),
    }
}

/// Writes `sweep.csv`, `summary.csv` and one SVG line chart per metric into
/// `out_dir`, returning the paths written.
pub fn emit_results(records: &[SweepRecord], out_dir: &Path) -> Result<Vec<PathBuf>> {
    if records.is_empty() {
        return Err(Error::InvalidParameter("no sweep records to emit".into()));
    }
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let sweep = out_dir.join(SWEEP_CSV);
    write_csv_file(&sweep, records)?;
    let summary_rows = summarize(records);
    let summary = out_dir.join(SUMMARY_CSV);
    write_csv_file(&summary, &summary_rows)?;

    let metrics: [(&str, &str, Metric); 3] = [
        ("Spectral efficiency per eNB", "b/s/Hz", |r| r.mean_spectral_efficiency),
        ("Average throughput per eNB", "Mbps", |r| r.mean_throughput_mbps),
        ("Jain's fairness index", "JFI", |r| r.mean_jfi),
    ];
    let mut written = vec![sweep, summary];
    for ((title, unit, metric), file) in metrics.into_iter().zip(CHART_FILES) {
        let path = out_dir.join(file);
        let svg = crate::plot::line_chart(title, unit, &summary_rows, metric)?;
        fs::write(&path, svg).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}
