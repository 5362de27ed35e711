//! `fcca` command-line entry point.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tvws_fcca::config::{self, TopologyFile};
use tvws_fcca::conflict::build_interference_matrix;
use tvws_fcca::experiment::{self, Scheme, SweepConfig};
use tvws_fcca::fcca::{self, FccaConfig};
use tvws_fcca::macsim::{Contention, Evaluator, MacConfig, TRACE_HEADER};
use tvws_fcca::model::{validate_topology, Allocation};
use tvws_fcca::propagation::{coverage_radius, max_allowed_path_loss_db, noise_floor_dbm};
use tvws_fcca::Error;

#[derive(Parser)]
#[command(name = "fcca", version, about = "Fair channel allocation for TV white space LTE-A middle-mile networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the link budget and coverage radius for a radio config.
    Coverage {
        /// TOML file with a [radio] table (and optional [plan]).
        config: PathBuf,
    },
    /// Run MDCA and ODRS-CA on a topology and pick one with FCCA.
    Allocate(AllocateArgs),
    /// Simulate an allocation and print a throughput report as CSV.
    Simulate(SimulateArgs),
    /// Run the random-topology density sweep and write CSV and SVG outputs.
    Sweep(SweepArgs),
    /// Compute the backhaul demand of a group of villages in Mbps.
    Demand(DemandArgs),
}

#[derive(Args)]
struct MacFlags {
    /// MAC random seed (overrides the file).
    #[arg(long)]
    seed: Option<u64>,
    /// Simulated seconds per channel (overrides the file).
    #[arg(long, value_name = "SECONDS")]
    sim_time: Option<f64>,
    /// Simultaneous backoff expiry handling: arbitrated or collide.
    #[arg(long, value_parser = parse_contention)]
    contention: Option<Contention>,
}

impl MacFlags {
    fn apply(&self, mac: &mut MacConfig) {
        if let Some(s) = self.seed {
            mac.rng_seed = s;
        }
        if let Some(t) = self.sim_time {
            mac.sim_time_s = t;
        }
        if let Some(c) = self.contention {
            mac.contention = c;
        }
    }
}

#[derive(Args)]
struct AllocateArgs {
    /// Topology TOML file.
    topology: PathBuf,
    /// Directory for mdca.txt, odrs_ca.txt, chosen.txt and interference.txt.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Fairness threshold (overrides the file).
    #[arg(long)]
    delta: Option<f64>,
    /// Interference distance threshold in km (overrides the file).
    #[arg(long, value_name = "KM")]
    threshold: Option<f64>,
    #[command(flatten)]
    mac: MacFlags,
}

#[derive(Args)]
struct SimulateArgs {
    /// Topology TOML file.
    topology: PathBuf,
    /// Allocation matrix file (rows of 0/D/S).
    allocation: PathBuf,
    /// Write the per-channel transmission trace to this file.
    #[arg(long, value_name = "FILE")]
    trace: Option<PathBuf>,
    /// Interference distance threshold in km (overrides the file).
    #[arg(long, value_name = "KM")]
    threshold: Option<f64>,
    #[command(flatten)]
    mac: MacFlags,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep TOML file; defaults apply when omitted.
    config: Option<PathBuf>,
    /// Comma-separated eNB counts per 100 km2.
    #[arg(long, value_delimiter = ',')]
    densities: Option<Vec<usize>>,
    /// Number of seeds per density.
    #[arg(long)]
    seeds: Option<u64>,
    /// Comma-separated schemes: NO_COEX, FULL_LBT, FCCA.
    #[arg(long, value_delimiter = ',', value_parser = parse_scheme)]
    schemes: Option<Vec<Scheme>>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Output directory for sweep.csv, summary.csv and charts.
    #[arg(long, default_value = "sweep_out")]
    out_dir: PathBuf,
    #[command(flatten)]
    mac: MacFlags,
}

#[derive(Args)]
struct DemandArgs {
    /// People per village.
    #[arg(long, default_value_t = 1000.0)]
    population: f64,
    /// Number of villages.
    #[arg(long, default_value_t = 10.0)]
    villages: f64,
    /// Per-subscriber rate in Mbps.
    #[arg(long, default_value_t = 2.0)]
    rate_mbps: f64,
    /// Oversubscription ratio.
    #[arg(long, default_value_t = 50.0)]
    contention_ratio: f64,
    /// People per subscriber (household).
    #[arg(long, default_value_t = 5.0)]
    household_size: f64,
}

fn parse_contention(s: &str) -> Result<Contention, String> {
    match s.to_ascii_lowercase().as_str() {
        "arbitrated" => Ok(Contention::Arbitrated),
        "collide" => Ok(Contention::Collide),
        _ => Err(format!("unknown contention model `{s}` (arbitrated, collide)")),
    }
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } => 2,
        Error::Invariant(_) => 3,
        _ => 1,
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn coverage(path: &Path) -> Result<String, Error> {
    let cfg = config::load_radio(path)?;
    let r = &cfg.radio;
    let max_pl = max_allowed_path_loss_db(r);
    let radius = coverage_radius(r)?;
    let mut out = String::new();
    let rows = [
        ("+ Pt   transmit power", r.tx_power_dbm, "dBm"),
        ("+ Gt   transmit antenna gain", r.tx_gain_db, "dB"),
        ("+ Gr   receive antenna gain", r.rx_gain_db, "dB"),
        ("- CL   cable loss", r.cable_loss_db, "dB"),
        ("- NF   noise figure", r.noise_figure_db, "dB"),
        ("- RS   receiver sensitivity", r.rx_sensitivity_dbm, "dBm"),
    ];
    writeln!(out, "link budget").unwrap();
    for (name, v, unit) in rows {
        writeln!(out, "  {name:<30} {v:>9.2} {unit}").unwrap();
    }
    writeln!(out, "max allowed path loss: {max_pl:.2} dB").unwrap();
    writeln!(
        out,
        "noise floor ({} MHz channel): {:.2} dBm",
        cfg.plan.channel_bandwidth_hz / 1e6,
        noise_floor_dbm(cfg.plan.channel_bandwidth_hz, r.noise_figure_db)
    )
    .unwrap();
    writeln!(out, "coverage radius: {radius:.3} km").unwrap();
    Ok(out)
}

fn load_checked(path: &Path, threshold: Option<f64>) -> Result<TopologyFile, Error> {
    let mut file = config::load_topology(path)?;
    if let Some(t) = threshold {
        file.threshold_km = t;
    }
    validate_topology(&file.topology(), &file.plan, file.threshold_km).map_err(Error::Validation)?;
    Ok(file)
}

fn allocate(args: &AllocateArgs) -> Result<String, Error> {
    let mut file = load_checked(&args.topology, args.threshold)?;
    if let Some(d) = args.delta {
        file.delta = d;
    }
    args.mac.apply(&mut file.mac);
    let topology = file.topology();
    let c = build_interference_matrix(&topology.enb_positions, file.threshold_km);
    let cfg = FccaConfig::new(file.delta, file.plan.num_channels)?;
    let mut eval = Evaluator::new(&topology, &c, &file.plan, &file.mac)?;
    let out = fcca::fcca(&c, &cfg, |a| eval.evaluate(a).map(|r| r.per_enb_bps))?;

    fs::create_dir_all(&args.out_dir).map_err(|source| Error::Io {
        path: args.out_dir.clone(),
        source,
    })?;
    let files = [
        ("interference.txt", c.to_string()),
        ("mdca.txt", out.mdca.allocation.to_string()),
        ("odrs_ca.txt", out.odrs.allocation.to_string()),
        ("chosen.txt", out.chosen().allocation.to_string()),
    ];
    for (name, text) in &files {
        write_file(&args.out_dir.join(name), text)?;
    }

    let mut s = String::new();
    for (label, cand) in [("MDCA", &out.mdca), ("ODRS_CA", &out.odrs)] {
        writeln!(
            s,
            "{label:<8} T = {:.3} Mbps  F = {:.4}",
            cand.total_throughput() / 1e6,
            cand.fairness
        )
        .unwrap();
        s.push_str(&cand.allocation.to_string());
    }
    writeln!(s, "delta = {}", out.delta).unwrap();
    writeln!(s, "chosen: {} ({})", out.chosen_sub_algorithm, out.reason).unwrap();
    s.push_str(&out.chosen().allocation.to_string());
    writeln!(s, "wrote {}", args.out_dir.display()).unwrap();
    Ok(s)
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(";")
}

fn simulate(args: &SimulateArgs) -> Result<String, Error> {
    let mut file = load_checked(&args.topology, args.threshold)?;
    args.mac.apply(&mut file.mac);
    let text = fs::read_to_string(&args.allocation).map_err(|source| Error::Io {
        path: args.allocation.clone(),
        source,
    })?;
    let alloc: Allocation = text.parse()?;
    let topology = file.topology();
    let c = build_interference_matrix(&topology.enb_positions, file.threshold_km);
    let mut eval = Evaluator::new(&topology, &c, &file.plan, &file.mac)?;
    let (report, timelines) = eval.evaluate_detailed(&alloc)?;

    if let Some(path) = &args.trace {
        let mut trace = String::from(TRACE_HEADER);
        for t in &timelines {
            t.write_trace(&mut trace);
        }
        write_file(path, &trace)?;
    }

    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Invariant(format!("csv: {e}"));
    w.write_record(["jfi", "total_bps", "per_enb_bps", "spectral_efficiency_bps_hz", "airtime"])
        .map_err(csv_err)?;
    w.write_record([
        format!("{}", report.jfi),
        format!("{}", report.total_bps()),
        join(&report.per_enb_bps),
        join(&report.spectral_efficiency_bps_hz),
        join(&report.airtime),
    ])
    .map_err(csv_err)?;
    let bytes = w.into_inner().map_err(|e| Error::Invariant(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Invariant(e.to_string()))
}

fn sweep(args: &SweepArgs) -> Result<(String, Vec<String>), Error> {
    let mut cfg = match &args.config {
        Some(p) => config::load_sweep(p)?,
        None => SweepConfig::default(),
    };
    if let Some(d) = &args.densities {
        cfg.enb_counts = d.clone();
    }
    if let Some(s) = args.seeds {
        cfg.seeds = s;
    }
    if let Some(s) = &args.schemes {
        cfg.schemes = s.clone();
    }
    args.mac.apply(&mut cfg.mac);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
    let outcome = pool.install(|| experiment::run_sweep(&cfg))?;
    let errors: Vec<String> = outcome
        .failures
        .iter()
        .map(|f| format!("density {} seed {}: {}", f.enb_count, f.seed, f.error))
        .collect();
    if outcome.records.is_empty() {
        return Ok((String::new(), errors));
    }
    let written = experiment::emit_results(&outcome.records, &args.out_dir)?;

    let mut s = String::new();
    writeln!(
        s,
        "{:>4} {:<9} {:>6} {:>16} {:>18} {:>14} {:>6}",
        "enbs", "scheme", "seeds", "SE b/s/Hz", "throughput Mbps", "JFI", "MDCA%"
    )
    .unwrap();
    for r in experiment::summarize(&outcome.records) {
        writeln!(
            s,
            "{:>4} {:<9} {:>6} {:>8.4} ±{:<7.4} {:>9.3} ±{:<7.3} {:>6.4} ±{:<6.4} {:>6}",
            r.enb_count,
            r.scheme.name(),
            r.seeds,
            r.mean_spectral_efficiency,
            r.ci95_spectral_efficiency,
            r.mean_throughput_mbps,
            r.ci95_throughput_mbps,
            r.mean_jfi,
            r.ci95_jfi,
            r.mdca_fraction.map_or("-".into(), |f| format!("{:.0}", 100.0 * f)),
        )
        .unwrap();
    }
    writeln!(s, "{} records", outcome.records.len()).unwrap();
    for p in written {
        writeln!(s, "wrote {}", p.display()).unwrap();
    }
    Ok((s, errors))
}

fn demand(args: &DemandArgs) -> Result<String, Error> {
    let mbps = experiment::demand_mbps(
        args.population,
        args.villages,
        args.rate_mbps,
        args.contention_ratio,
        args.household_size,
    )?;
    Ok(format!("{mbps} Mbps\n"))
}

fn run(cli: &Cli) -> Result<(String, Vec<String>), Error> {
    match &cli.command {
        Command::Coverage { config } => coverage(config).map(|s| (s, vec![])),
        Command::Allocate(a) => allocate(a).map(|s| (s, vec![])),
        Command::Simulate(a) => simulate(a).map(|s| (s, vec![])),
        Command::Sweep(a) => sweep(a),
        Command::Demand(a) => demand(a).map(|s| (s, vec![])),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, errors)) => {
            print!("{out}");
            let _ = std::io::stdout().flush();
            if errors.is_empty() {
                return ExitCode::SUCCESS;
            }
            eprintln!("{} work item(s) failed:", errors.len());
            for e in &errors {
                eprintln!("  {e}");
            }
            ExitCode::from(1)
        }
        Err(Error::Validation(violations)) => {
            eprintln!("error: topology validation failed");
            for v in &violations {
                eprintln!("  - {v}");
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
