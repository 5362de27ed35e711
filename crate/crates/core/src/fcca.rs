//! Fairness constrained channel allocation.
//!
//! Two greedy graph-coloring allocators run over the conflict graph:
//!
//! * MDCA repeats rounds of greedy coloring so every eNB accumulates as many
//!   dedicated channels as its neighborhood leaves free.
//! * ODRS-CA gives each eNB one dedicated channel, then grants in shared mode
//!   every channel that no neighbor holds as dedicated.
//!
//! Both candidates are scored with a caller-supplied throughput evaluator and
//! the winner is picked with the fairness threshold `delta`.

use crate::error::{Error, Result};
use crate::model::{Allocation, ChannelMode, InterferenceMatrix, SubAlgorithm};

pub const DEFAULT_DELTA: f64 = 0.75;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FccaConfig {
    pub delta: f64,
    pub num_channels: usize,
}

impl FccaConfig {
    pub fn new(delta: f64, num_channels: usize) -> Result<Self> {
        let cfg = FccaConfig {
            delta,
            num_channels,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(Error::OutOfRange {
                what: "delta",
                value: self.delta,
                min: 0.0,
                max: 1.0,
            });
        }
        if self.num_channels == 0 {
            return Err(Error::InvalidParameter("num_channels must be >= 1".into()));
        }
        Ok(())
    }
}

fn check_degree(c: &InterferenceMatrix, m: usize) -> Result<()> {
    for k in 0..c.size() {
        let degree = c.degree(k);
        if degree >= m {
            return Err(Error::DegreeTooHigh {
                enb: k,
                degree,
                channels: m,
            });
        }
    }
    Ok(())
}

/// Channels free for `k`: not held by any neighbor in a mode selected by
/// `blocks`, and not already held by `k`.
fn feasible_channels(
    alloc: &Allocation,
    c: &InterferenceMatrix,
    k: usize,
    blocks: impl Fn(ChannelMode) -> bool,
) -> Vec<usize> {
    let m = alloc.channel_count();
    let mut free: Vec<bool> = alloc.row(k).iter().map(|mode| !mode.is_assigned()).collect();
    for j in c.neighbors(k) {
        for (ch, slot) in free.iter_mut().enumerate() {
            if blocks(alloc.mode(j, ch)) {
                *slot = false;
            }
        }
    }
    (0..m).filter(|&ch| free[ch]).collect()
}

/// Multiple dedicated channel allocation.
///
/// Rounds continue while every eNB has a non-empty feasible set at the start
/// of the round. Within a round eNBs are visited in index order and take the
/// lowest feasible channel; an eNB whose set has emptied mid-round is skipped.
pub fn mdca(c: &InterferenceMatrix, m: usize) -> Result<Allocation> {
    check_degree(c, m)?;
    let k_count = c.size();
    let mut alloc = Allocation::empty(k_count, m);
    let any = |mode: ChannelMode| mode.is_assigned();
    loop {
        let all_open = (0..k_count).all(|k| !feasible_channels(&alloc, c, k, any).is_empty());
        if !all_open {
            break;
        }
        for k in 0..k_count {
            if let Some(&q) = feasible_channels(&alloc, c, k, any).first() {
                alloc.set(k, q, ChannelMode::Dedicated);
            }
        }
    }
    Ok(alloc)
}

/// One dedicated, rest shared channel allocation.
///
/// Shared grants exclude only the neighbors' dedicated channels, so adjacent
/// eNBs may hold the same shared channel and contend for it with LBT.
pub fn odrs_ca(c: &InterferenceMatrix, m: usize) -> Result<Allocation> {
    check_degree(c, m)?;
    let k_count = c.size();
    let mut alloc = Allocation::empty(k_count, m);
    let dedicated = |mode: ChannelMode| mode == ChannelMode::Dedicated;
    for k in 0..k_count {
        let q = feasible_channels(&alloc, c, k, dedicated)
            .first()
            .copied()
            .ok_or_else(|| Error::Invariant(format!("no dedicated channel left for eNB {k}")))?;
        alloc.set(k, q, ChannelMode::Dedicated);
    }
    for k in 0..k_count {
        for q in feasible_channels(&alloc, c, k, dedicated) {
            alloc.set(k, q, ChannelMode::Shared);
        }
    }
    Ok(alloc)
}

/// Jain's fairness index `(sum T)^2 / (K * sum T^2)`.
pub fn jfi(throughputs: &[f64]) -> Result<f64> {
    if throughputs.is_empty() {
        return Err(Error::InvalidParameter(
            "fairness index of an empty vector".into(),
        ));
    }
    if throughputs.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::InvalidParameter(
            "throughputs must be finite and non-negative".into(),
        ));
    }
    let sum: f64 = throughputs.iter().sum();
    let sum_sq: f64 = throughputs.iter().map(|t| t * t).sum();
    if sum_sq == 0.0 {
        return Err(Error::ZeroThroughput);
    }
    // Guard the [1/K, 1] range against rounding in the last ulp.
    let k = throughputs.len() as f64;
    Ok((sum * sum / (k * sum_sq)).clamp(1.0 / k, 1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub allocation: Allocation,
    pub throughputs: Vec<f64>,
    pub fairness: f64,
}

impl Candidate {
    pub fn total_throughput(&self) -> f64 {
        self.throughputs.iter().sum()
    }
}

/// Why the winning candidate was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionReason {
    /// Exactly one candidate met the fairness threshold.
    OnlyOneFair,
    /// Both met it; the larger sum throughput won (ties go to ODRS-CA).
    BothFairMaxThroughput,
    /// Neither met it; the fairer candidate was taken.
    NeitherFairMaxFairness,
}

impl std::fmt::Display for SelectionReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SelectionReason::OnlyOneFair => "only one candidate meets the fairness threshold",
            SelectionReason::BothFairMaxThroughput => {
                "both candidates meet the fairness threshold; larger sum throughput chosen"
            }
            SelectionReason::NeitherFairMaxFairness => {
                "no candidate meets the fairness threshold; fairer candidate chosen (fallback)"
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FccaOutcome {
    pub chosen_sub_algorithm: SubAlgorithm,
    pub reason: SelectionReason,
    pub delta: f64,
    pub mdca: Candidate,
    pub odrs: Candidate,
}

impl FccaOutcome {
    pub fn chosen(&self) -> &Candidate {
        match self.chosen_sub_algorithm {
            SubAlgorithm::Mdca => &self.mdca,
            _ => &self.odrs,
        }
    }
}

/// Picks between the two candidates given their `(sum throughput, fairness)`.
pub fn select(
    delta: f64,
    mdca: (f64, f64),
    odrs: (f64, f64),
) -> (SubAlgorithm, SelectionReason) {
    let (t1, f1) = mdca;
    let (t2, f2) = odrs;
    match (f1 >= delta, f2 >= delta) {
        (true, false) => (SubAlgorithm::Mdca, SelectionReason::OnlyOneFair),
        (false, true) => (SubAlgorithm::OdrsCa, SelectionReason::OnlyOneFair),
        (true, true) => {
            let pick = if t1 > t2 {
                SubAlgorithm::Mdca
            } else {
                SubAlgorithm::OdrsCa
            };
            (pick, SelectionReason::BothFairMaxThroughput)
        }
        (false, false) => {
            let pick = if f1 > f2 {
                SubAlgorithm::Mdca
            } else {
                SubAlgorithm::OdrsCa
            };
            (pick, SelectionReason::NeitherFairMaxFairness)
        }
    }
}

/// Runs both sub-algorithms, scores them with `evaluator` and selects one.
pub fn fcca<E>(c: &InterferenceMatrix, cfg: &FccaConfig, mut evaluator: E) -> Result<FccaOutcome>
where
    E: FnMut(&Allocation) -> Result<Vec<f64>>,
{
    cfg.validate()?;
    let mut score = |allocation: Allocation| -> Result<Candidate> {
        let throughputs = evaluator(&allocation)?;
        if throughputs.len() != c.size() {
            return Err(Error::SizeMismatch(format!(
                "evaluator returned {} throughputs for {} eNBs",
                throughputs.len(),
                c.size()
            )));
        }
        let fairness = jfi(&throughputs)?;
        Ok(Candidate {
            allocation,
            throughputs,
            fairness,
        })
    };
    let mdca = score(mdca(c, cfg.num_channels)?)?;
    let odrs = score(odrs_ca(c, cfg.num_channels)?)?;
    let (chosen_sub_algorithm, reason) = select(
        cfg.delta,
        (mdca.total_throughput(), mdca.fairness),
        (odrs.total_throughput(), odrs.fairness),
    );
    Ok(FccaOutcome {
        chosen_sub_algorithm,
        reason,
        delta: cfg.delta,
        mdca,
        odrs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn triangle() -> InterferenceMatrix {
        InterferenceMatrix::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn path3() -> InterferenceMatrix {
        InterferenceMatrix::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn text(a: &Allocation) -> String {
        a.to_string()
    }

    #[test]
    fn mdca_hand_traces() {
        let isolated = InterferenceMatrix::from_edges(2, &[]).unwrap();
        assert_eq!(text(&mdca(&isolated, 4).unwrap()), "D D D D\nD D D D\n");
        assert_eq!(text(&mdca(&triangle(), 4).unwrap()), "D 0 0 D\n0 D 0 0\n0 0 D 0\n");
        assert_eq!(text(&mdca(&path3(), 4).unwrap()), "D 0 D 0\n0 D 0 D\nD 0 D 0\n");
    }

    #[test]
    fn odrs_hand_traces() {
        let isolated = InterferenceMatrix::from_edges(2, &[]).unwrap();
        assert_eq!(text(&odrs_ca(&isolated, 4).unwrap()), "D S S S\nD S S S\n");
        assert_eq!(text(&odrs_ca(&triangle(), 4).unwrap()), "D 0 0 S\n0 D 0 S\n0 0 D S\n");
        assert_eq!(text(&odrs_ca(&path3(), 4).unwrap()), "D 0 S S\n0 D S S\nD 0 S S\n");
    }

    #[test]
    fn degree_precondition() {
        let k4 = InterferenceMatrix::from_edges(
            4,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        assert!(matches!(mdca(&k4, 3), Err(Error::DegreeTooHigh { degree: 3, .. })));
        assert!(odrs_ca(&k4, 3).is_err());
        assert!(mdca(&k4, 4).is_ok());
    }

    #[test]
    fn jfi_examples() {
        assert_abs_diff_eq!(jfi(&[3.0; 7]).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(jfi(&[0.0, 5.0, 0.0, 0.0]).unwrap(), 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(jfi(&[2.0, 1.0, 1.0]).unwrap(), 16.0 / 18.0, epsilon = 1e-12);
        assert!(matches!(jfi(&[0.0, 0.0]), Err(Error::ZeroThroughput)));
        assert!(jfi(&[]).is_err());
        assert!(jfi(&[-1.0, 2.0]).is_err());
    }

    #[test]
    fn selection_rules() {
        // Both fair: larger throughput wins.
        assert_eq!(select(0.75, (10.0, 0.9), (8.0, 0.8)).0, SubAlgorithm::Mdca);
        // Only ODRS-CA fair, regardless of throughput.
        assert_eq!(
            select(0.75, (100.0, 0.5), (1.0, 0.8)),
            (SubAlgorithm::OdrsCa, SelectionReason::OnlyOneFair)
        );
        assert_eq!(select(0.75, (1.0, 0.8), (100.0, 0.5)).0, SubAlgorithm::Mdca);
        // Ties go to ODRS-CA.
        assert_eq!(select(0.75, (5.0, 0.9), (5.0, 0.9)).0, SubAlgorithm::OdrsCa);
        // Neither fair: fairer wins.
        assert_eq!(
            select(0.75, (9.0, 0.6), (1.0, 0.7)),
            (SubAlgorithm::OdrsCa, SelectionReason::NeitherFairMaxFairness)
        );
        assert_eq!(select(0.75, (1.0, 0.7), (9.0, 0.6)).0, SubAlgorithm::Mdca);
    }

    /// Idealized evaluator: dedicated channels count 1, a shared channel is
    /// split evenly among the holder and its neighbors that also hold it.
    fn airtime_evaluator(c: &InterferenceMatrix) -> impl FnMut(&Allocation) -> Result<Vec<f64>> + '_ {
        move |a: &Allocation| {
            Ok((0..a.enb_count())
                .map(|k| {
                    a.channels_of(k)
                        .map(|m| match a.mode(k, m) {
                            ChannelMode::Shared => {
                                let contenders =
                                    1 + c.neighbors(k).filter(|&j| a.mode(j, m).is_assigned()).count();
                                1.0 / contenders as f64
                            }
                            _ => 1.0,
                        })
                        .sum()
                })
                .collect())
        }
    }

    #[test]
    fn fcca_end_to_end_triangle() {
        let c = triangle();
        let cfg = FccaConfig::new(DEFAULT_DELTA, 4).unwrap();
        let out = fcca(&c, &cfg, airtime_evaluator(&c)).unwrap();
        // MDCA: (2, 1, 1) -> 16/18. ODRS-CA: 1 + 1/3 each -> 1.
        assert_abs_diff_eq!(out.mdca.fairness, 16.0 / 18.0, epsilon = 1e-12);
        assert_abs_diff_eq!(out.odrs.fairness, 1.0, epsilon = 1e-12);
        // Equal sums (4 channel units): both fair, tie goes to ODRS-CA.
        assert_eq!(out.chosen_sub_algorithm, SubAlgorithm::OdrsCa);
        assert_eq!(out.reason, SelectionReason::BothFairMaxThroughput);
        assert_eq!(out.chosen().allocation, out.odrs.allocation);
    }

    #[test]
    fn evaluator_errors_propagate() {
        let c = path3();
        let cfg = FccaConfig::new(0.75, 4).unwrap();
        let err = fcca(&c, &cfg, |_| Err(Error::Invariant("boom".into()))).unwrap_err();
        assert!(err.to_string().contains("boom"));
        let err = fcca(&c, &cfg, |_| Ok(vec![1.0])).unwrap_err();
        assert!(matches!(err, Error::SizeMismatch(_)));
    }

    #[test]
    fn config_bounds() {
        assert!(FccaConfig::new(0.0, 4).is_err());
        assert!(FccaConfig::new(1.0, 4).is_ok());
        assert!(FccaConfig::new(1.1, 4).is_err());
        assert!(FccaConfig::new(0.5, 0).is_err());
    }

    /// Random graphs with maximum degree below `m`.
    fn bounded_graph() -> impl Strategy<Value = (InterferenceMatrix, usize)> {
        (1usize..12, 2usize..7, prop::collection::vec(any::<bool>(), 66)).prop_map(|(k, m, bits)| {
            let mut deg = vec![0usize; k];
            let mut edges = Vec::new();
            let mut i = 0;
            for a in 0..k {
                for b in (a + 1)..k {
                    if bits[i % bits.len()] && deg[a] + 1 < m && deg[b] + 1 < m {
                        deg[a] += 1;
                        deg[b] += 1;
                        edges.push((a, b));
                    }
                    i += 1;
                }
            }
            (InterferenceMatrix::from_edges(k, &edges).unwrap(), m)
        })
    }

    proptest! {
        #[test]
        fn allocation_invariants((c, m) in bounded_graph()) {
            let a1 = mdca(&c, m).unwrap();
            let a2 = odrs_ca(&c, m).unwrap();
            for a in [&a1, &a2] {
                for k in 0..c.size() {
                    prop_assert!(a.channels_of(k).count() >= 1);
                    for j in c.neighbors(k) {
                        for ch in 0..m {
                            prop_assert!(!(a.mode(k, ch) == ChannelMode::Dedicated
                                && a.mode(j, ch) == ChannelMode::Dedicated));
                            // Shared never collides with a neighbor's dedicated channel.
                            prop_assert!(!(a.mode(k, ch) == ChannelMode::Shared
                                && a.mode(j, ch) == ChannelMode::Dedicated));
                        }
                    }
                }
            }
            prop_assert_eq!(a1.count_mode(ChannelMode::Shared), 0);
            for k in 0..c.size() {
                let ded = a2.row(k).iter().filter(|&&x| x == ChannelMode::Dedicated).count();
                prop_assert_eq!(ded, 1);
            }
            // Deterministic.
            prop_assert_eq!(mdca(&c, m).unwrap(), a1);
            prop_assert_eq!(odrs_ca(&c, m).unwrap(), a2);
        }

        #[test]
        fn jfi_bounds(v in prop::collection::vec(0.0f64..1e9, 1..30)) {
            if let Ok(f) = jfi(&v) {
                let k = v.len() as f64;
                prop_assert!(f >= 1.0 / k && f <= 1.0);
            }
        }

        #[test]
        fn chosen_is_fair_when_possible(t1 in 0.0f64..10.0, f1 in 0.3f64..1.0, t2 in 0.0f64..10.0, f2 in 0.3f64..1.0, delta in 0.4f64..1.0) {
            let (pick, _) = select(delta, (t1, f1), (t2, f2));
            let f = if pick == SubAlgorithm::Mdca { f1 } else { f2 };
            if f1 >= delta || f2 >= delta {
                prop_assert!(f >= delta);
            }
        }
    }
}
