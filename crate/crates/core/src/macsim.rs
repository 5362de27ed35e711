//! Slotted listen-before-talk MAC simulation.
//!
//! Each channel is simulated independently on a slot grid. Dedicated holders
//! transmit back-to-back TxOps for the whole run. Shared holders run LBT: a
//! node needs one idle CCA slot plus a uniform backoff of `[0, CW-1]` idle
//! slots, freezes its countdown while any conflict-graph neighbor on the
//! channel is transmitting, then sends one TxOp and redraws.
//!
//! The loop jumps from event to event (TxOp ends and backoff expiries)
//! rather than stepping every slot; between events the set of transmitters
//! and every node's busy/idle view of the channel are constant, so the jump
//! is exact.
//!
//! Rates are computed per CPE from the physical SINR against every other eNB
//! transmitting on the same channel at that moment, whatever its distance.
//! Under saturated traffic, static channels and stationary CPEs, proportional
//! fair scheduling reduces to an equal time share per CPE, so an eNB's rate
//! while transmitting is the mean of its CPEs' link rates.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fcca;
use crate::model::{Allocation, ChannelMode, ChannelPlan, InterferenceMatrix, SubAlgorithm, ThroughputReport, Topology};
use crate::propagation::{self, DEFAULT_SPECTRAL_EFFICIENCY_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MacConfig {
    pub slot_us: f64,
    pub txop_ms: f64,
    pub sim_time_s: f64,
    pub contention_window_slots: u32,
    pub rng_seed: u64,
    /// Ceiling on per-link spectral efficiency in b/s/Hz.
    pub spectral_efficiency_cap: f64,
    pub contention: Contention,
}

/// What happens when neighbors finish their backoff in the same slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Contention {
    /// One of them, chosen uniformly, seizes the channel; the rest sense it
    /// busy and defer. Neighbors never overlap on air.
    #[default]
    Arbitrated,
    /// All of them transmit and the overlapping TxOps interfere.
    Collide,
}

impl Default for MacConfig {
    fn default() -> Self {
        MacConfig {
            slot_us: 9.0,
            txop_ms: 10.0,
            sim_time_s: 30.0,
            contention_window_slots: 16,
            rng_seed: 1,
            spectral_efficiency_cap: DEFAULT_SPECTRAL_EFFICIENCY_CAP,
            contention: Contention::Arbitrated,
        }
    }
}

impl MacConfig {
    pub fn txop_slots(&self) -> u64 {
        (self.txop_ms * 1e3 / self.slot_us).round() as u64
    }

    pub fn total_slots(&self) -> u64 {
        (self.sim_time_s * 1e6 / self.slot_us).round() as u64
    }

    pub fn slot_s(&self) -> f64 {
        self.slot_us * 1e-6
    }

    /// Simulated time actually covered by the slot grid.
    pub fn simulated_s(&self) -> f64 {
        self.total_slots() as f64 * self.slot_s()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.slot_us > 0.0 && self.slot_us.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "slot_us must be positive, got {}",
                self.slot_us
            )));
        }
        if !(self.sim_time_s > 0.0 && self.sim_time_s.is_finite()) || self.total_slots() == 0 {
            return Err(Error::InvalidParameter(
                "zero-length simulation: sim_time_s must cover at least one slot".into(),
            ));
        }
        if !(self.txop_ms.is_finite() && self.txop_ms * 1e3 >= 10.0 * self.slot_us) {
            return Err(Error::InvalidParameter(format!(
                "txop_ms = {} must be at least 10 slots of {} us",
                self.txop_ms, self.slot_us
            )));
        }
        if self.total_slots() < 100 * self.txop_slots() {
            return Err(Error::InvalidParameter(format!(
                "sim_time_s = {} covers fewer than 100 TxOps of {} ms",
                self.sim_time_s, self.txop_ms
            )));
        }
        if self.contention_window_slots == 0 {
            return Err(Error::InvalidParameter(
                "contention_window_slots must be >= 1".into(),
            ));
        }
        if self.spectral_efficiency_cap.is_nan() || self.spectral_efficiency_cap <= 0.0 {
            return Err(Error::InvalidParameter(
                "spectral_efficiency_cap must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// A run of slots `[start, end)` during which `transmitters` (eNB indices,
/// ascending) are all mid-TxOp on the channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub start: u64,
    pub end: u64,
    pub transmitters: Vec<usize>,
}

impl Interval {
    pub fn slots(&self) -> u64 {
        self.end - self.start
    }
}

/// Occupancy of one channel over the slot grid, run-length encoded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelTimeline {
    pub channel: usize,
    pub total_slots: u64,
    pub intervals: Vec<Interval>,
}

impl ChannelTimeline {
    /// Slots during which `enb` transmitted.
    pub fn airtime_slots(&self, enb: usize) -> u64 {
        self.intervals
            .iter()
            .filter(|iv| iv.transmitters.contains(&enb))
            .map(Interval::slots)
            .sum()
    }

    pub fn airtime_fraction(&self, enb: usize) -> f64 {
        self.airtime_slots(enb) as f64 / self.total_slots as f64
    }

    /// Appends trace lines `<channel> <start_slot> <end_slot> <enb,enb,...>`,
    /// with `-` for an idle channel.
    pub fn write_trace(&self, out: &mut String) {
        for iv in &self.intervals {
            let who = if iv.transmitters.is_empty() {
                "-".to_string()
            } else {
                iv.transmitters
                    .iter()
                    .map(|k| k.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let _ = writeln!(out, "{} {} {} {}", self.channel, iv.start, iv.end, who);
        }
    }
}

pub const TRACE_HEADER: &str = "# channel start_slot end_slot transmitters\n";

#[derive(Debug, Clone, Copy)]
enum NodeState {
    Dedicated,
    Lbt {
        /// Idle slots still needed before transmitting (CCA slot + backoff).
        remaining: u64,
        tx_until: Option<u64>,
    },
}

impl NodeState {
    fn transmitting(&self) -> bool {
        match self {
            NodeState::Dedicated => true,
            NodeState::Lbt { tx_until, .. } => tx_until.is_some(),
        }
    }
}

/// Simulates one channel held by `holders` (eNB index and mode). Unassigned
/// holders are ignored.
pub fn simulate_channel<R: Rng>(
    channel: usize,
    holders: &[(usize, ChannelMode)],
    c: &InterferenceMatrix,
    mac: &MacConfig,
    rng: &mut R,
) -> ChannelTimeline {
    let total = mac.total_slots();
    let txop = mac.txop_slots();
    let cw = mac.contention_window_slots as u64;

    let holders: Vec<(usize, ChannelMode)> = holders
        .iter()
        .copied()
        .filter(|(_, m)| m.is_assigned())
        .collect();
    let n = holders.len();
    let neighbors: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| c.interferes(holders[i].0, holders[j].0))
                .collect()
        })
        .collect();
    let draw = |rng: &mut R| 1 + rng.gen_range(0..cw);
    let mut nodes: Vec<NodeState> = holders
        .iter()
        .map(|&(_, mode)| match mode {
            ChannelMode::Dedicated => NodeState::Dedicated,
            _ => NodeState::Lbt {
                remaining: draw(rng),
                tx_until: None,
            },
        })
        .collect();

    let mut intervals: Vec<Interval> = Vec::new();
    let mut busy = vec![false; n];
    let mut on_air = vec![false; n];
    let mut ready: Vec<usize> = Vec::new();
    let mut t = 0u64;
    while t < total {
        for i in 0..n {
            busy[i] = neighbors[i].iter().any(|&j| nodes[j].transmitting());
        }
        let mut next = total;
        for (i, node) in nodes.iter().enumerate() {
            if let NodeState::Lbt { remaining, tx_until } = node {
                match tx_until {
                    Some(end) => next = next.min(*end),
                    None if !busy[i] => next = next.min(t + remaining),
                    None => {}
                }
            }
        }
        debug_assert!(next > t);

        let transmitters: Vec<usize> = (0..n)
            .filter(|&i| nodes[i].transmitting())
            .map(|i| holders[i].0)
            .collect();
        match intervals.last_mut() {
            Some(last) if last.transmitters == transmitters && last.end == t => last.end = next,
            _ => intervals.push(Interval {
                start: t,
                end: next,
                transmitters,
            }),
        }

        let elapsed = next - t;
        for (i, node) in nodes.iter_mut().enumerate() {
            if let NodeState::Lbt {
                remaining,
                tx_until: None,
            } = node
            {
                if !busy[i] {
                    *remaining -= elapsed;
                }
            }
        }
        t = next;
        if t >= total {
            break;
        }

        for node in nodes.iter_mut() {
            if let NodeState::Lbt {
                remaining,
                tx_until,
            } = node
            {
                if *tx_until == Some(t) {
                    *tx_until = None;
                    *remaining = draw(rng);
                }
            }
        }

        // Nodes whose countdown expired in the same slot are served in random
        // order; one that finds a neighbor already on air defers one CCA slot.
        // Under `Collide` only transmissions that started before this slot
        // count as busy.
        for (i, node) in nodes.iter().enumerate() {
            on_air[i] = node.transmitting();
        }
        ready.clear();
        ready.extend((0..n).filter(|&i| {
            matches!(
                nodes[i],
                NodeState::Lbt {
                    remaining: 0,
                    tx_until: None
                }
            )
        }));
        ready.shuffle(rng);
        for &i in &ready {
            let blocked = match mac.contention {
                Contention::Arbitrated => neighbors[i].iter().any(|&j| nodes[j].transmitting()),
                Contention::Collide => neighbors[i].iter().any(|&j| on_air[j]),
            };
            if let NodeState::Lbt {
                remaining,
                tx_until,
            } = &mut nodes[i]
            {
                if blocked {
                    *remaining = 1;
                } else {
                    *tx_until = Some(t + txop);
                }
            }
        }
    }

    ChannelTimeline {
        channel,
        total_slots: total,
        intervals,
    }
}

/// Expected per-node airtime fraction on one channel shared by an `n`-clique
/// under the fixed-window LBT above: every TxOp is followed by a CCA slot and
/// the smallest of `n` residual backoffs, roughly `(CW-1)/(2n)` slots.
pub fn analytic_clique_share(n: usize, mac: &MacConfig) -> f64 {
    let n = n.max(1) as f64;
    let txop = mac.txop_slots() as f64;
    let gap = 1.0 + (mac.contention_window_slots as f64 - 1.0) / (2.0 * n);
    txop / (n * (txop + gap))
}

/// Precomputed link gains for one topology plus a per-transmitter-set rate
/// cache, reused across allocations of the same topology.
pub struct Evaluator<'a> {
    topology: &'a Topology,
    c: &'a InterferenceMatrix,
    plan: &'a ChannelPlan,
    mac: MacConfig,
    /// `gain_mw[i][k][l]`: power received from eNB `i` at CPE `l` of eNB `k`.
    gain_mw: Vec<Vec<Vec<f64>>>,
    noise_mw: f64,
    rate_cache: HashMap<Vec<usize>, Vec<f64>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(
        topology: &'a Topology,
        c: &'a InterferenceMatrix,
        plan: &'a ChannelPlan,
        mac: &MacConfig,
    ) -> Result<Self> {
        mac.validate()?;
        plan.validate()?;
        let k = topology.enb_count();
        if k == 0 {
            return Err(Error::InvalidParameter("topology has no eNBs".into()));
        }
        if c.size() != k {
            return Err(Error::SizeMismatch(format!(
                "interference matrix is {}x{} for {k} eNBs",
                c.size(),
                c.size()
            )));
        }
        if topology.cpe_positions.len() != k {
            return Err(Error::SizeMismatch(format!(
                "{} CPE lists for {k} eNBs",
                topology.cpe_positions.len()
            )));
        }
        let radio = &topology.radio;
        let gain_mw = topology
            .enb_positions
            .iter()
            .map(|tx| {
                topology
                    .cpe_positions
                    .iter()
                    .map(|cpes| {
                        cpes.iter()
                            .map(|cpe| {
                                propagation::dbm_to_mw(propagation::received_power(
                                    radio,
                                    tx.distance_km(cpe),
                                ))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let noise_mw = propagation::dbm_to_mw(propagation::noise_floor_dbm(
            plan.channel_bandwidth_hz,
            radio.noise_figure_db,
        ));
        Ok(Evaluator {
            topology,
            c,
            plan,
            mac: *mac,
            gain_mw,
            noise_mw,
            rate_cache: HashMap::new(),
        })
    }

    pub fn mac(&self) -> &MacConfig {
        &self.mac
    }

    /// Downlink rate of every member of `transmitters` while exactly that
    /// set is on air, in the member order.
    fn rates(&mut self, transmitters: &[usize]) -> &[f64] {
        if !self.rate_cache.contains_key(transmitters) {
            let bw = self.plan.channel_bandwidth_hz;
            let cap = self.mac.spectral_efficiency_cap;
            let rates = transmitters
                .iter()
                .map(|&k| {
                    let cpes = &self.topology.cpe_positions[k];
                    if cpes.is_empty() {
                        return 0.0;
                    }
                    let sum: f64 = (0..cpes.len())
                        .map(|l| {
                            let interference: f64 = transmitters
                                .iter()
                                .filter(|&&i| i != k)
                                .map(|&i| self.gain_mw[i][k][l])
                                .sum();
                            let sinr = propagation::sinr_linear(
                                self.gain_mw[k][k][l],
                                interference,
                                self.noise_mw,
                            );
                            propagation::link_rate_linear(sinr, bw, cap)
                        })
                        .sum();
                    sum / cpes.len() as f64
                })
                .collect();
            self.rate_cache.insert(transmitters.to_vec(), rates);
        }
        &self.rate_cache[transmitters]
    }

    fn check_allocation(&self, alloc: &Allocation) -> Result<()> {
        if alloc.enb_count() != self.topology.enb_count() {
            return Err(Error::SizeMismatch(format!(
                "allocation has {} rows for {} eNBs",
                alloc.enb_count(),
                self.topology.enb_count()
            )));
        }
        if alloc.channel_count() != self.plan.num_channels {
            return Err(Error::SizeMismatch(format!(
                "allocation has {} columns for {} channels",
                alloc.channel_count(),
                self.plan.num_channels
            )));
        }
        Ok(())
    }

    /// Runs the DES over every channel and returns the report together with
    /// the per-channel timelines.
    pub fn evaluate_detailed(
        &mut self,
        alloc: &Allocation,
    ) -> Result<(ThroughputReport, Vec<ChannelTimeline>)> {
        self.check_allocation(alloc)?;
        let k = alloc.enb_count();
        let slot_s = self.mac.slot_s();
        let mut bits = vec![0.0; k];
        let mut airtime_slots = vec![0u64; k];
        let mut timelines = Vec::with_capacity(alloc.channel_count());
        for m in 0..alloc.channel_count() {
            let holders: Vec<(usize, ChannelMode)> =
                (0..k).map(|e| (e, alloc.mode(e, m))).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(self.mac.rng_seed);
            rng.set_stream(m as u64);
            let timeline = simulate_channel(m, &holders, self.c, &self.mac, &mut rng);
            for iv in &timeline.intervals {
                if iv.transmitters.is_empty() {
                    continue;
                }
                let secs = iv.slots() as f64 * slot_s;
                let rates = self.rates(&iv.transmitters).to_vec();
                for (&e, rate) in iv.transmitters.iter().zip(rates) {
                    bits[e] += rate * secs;
                    airtime_slots[e] += iv.slots();
                }
            }
            timelines.push(timeline);
        }

        let sim_s = self.mac.simulated_s();
        let total_slots = self.mac.total_slots() as f64;
        let per_enb_bps: Vec<f64> = bits.iter().map(|b| b / sim_s).collect();
        let band = self.plan.total_bandwidth_hz();
        let report = ThroughputReport {
            jfi: fcca::jfi(&per_enb_bps).unwrap_or(0.0),
            spectral_efficiency_bps_hz: per_enb_bps.iter().map(|t| t / band).collect(),
            airtime: airtime_slots.iter().map(|&s| s as f64 / total_slots).collect(),
            per_enb_bps,
            sub_algorithm_used: SubAlgorithm::NotApplicable,
        };
        Ok((report, timelines))
    }

    pub fn evaluate(&mut self, alloc: &Allocation) -> Result<ThroughputReport> {
        self.evaluate_detailed(alloc).map(|(report, _)| report)
    }

    /// Every eNB transmits continuously on every channel.
    pub fn no_coexistence(&mut self) -> Result<ThroughputReport> {
        let alloc = Allocation::uniform(
            self.topology.enb_count(),
            self.plan.num_channels,
            ChannelMode::Dedicated,
        );
        self.evaluate(&alloc)
    }

    /// Every eNB contends with LBT on every channel.
    pub fn full_lbt(&mut self) -> Result<ThroughputReport> {
        let alloc = Allocation::uniform(
            self.topology.enb_count(),
            self.plan.num_channels,
            ChannelMode::Shared,
        );
        self.evaluate(&alloc)
    }
}

/// Simulates `alloc` over `topology` and reports per-eNB throughput.
pub fn evaluate(
    topology: &Topology,
    alloc: &Allocation,
    c: &InterferenceMatrix,
    plan: &ChannelPlan,
    mac: &MacConfig,
) -> Result<ThroughputReport> {
    Evaluator::new(topology, c, plan, mac)?.evaluate(alloc)
}

pub fn baseline_no_coexistence(
    topology: &Topology,
    c: &InterferenceMatrix,
    plan: &ChannelPlan,
    mac: &MacConfig,
) -> Result<ThroughputReport> {
    Evaluator::new(topology, c, plan, mac)?.no_coexistence()
}

pub fn baseline_full_lbt(
    topology: &Topology,
    c: &InterferenceMatrix,
    plan: &ChannelPlan,
    mac: &MacConfig,
) -> Result<ThroughputReport> {
    Evaluator::new(topology, c, plan, mac)?.full_lbt()
}
