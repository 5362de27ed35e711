use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tvws_fcca::conflict::build_interference_matrix;
use tvws_fcca::macsim::{
    analytic_clique_share, baseline_full_lbt, baseline_no_coexistence, evaluate, simulate_channel,
    Contention, MacConfig,
};
use tvws_fcca::model::{Allocation, ChannelMode, ChannelPlan, InterferenceMatrix, Point, RadioParams, Topology};

fn mac(sim_time_s: f64, seed: u64) -> MacConfig {
    MacConfig {
        sim_time_s,
        rng_seed: seed,
        ..MacConfig::default()
    }
}

fn topology(enbs: &[(f64, f64)], cpe_offset_km: f64) -> Topology {
    let enb_positions: Vec<Point> = enbs.iter().map(|&(x, y)| Point::new(x, y)).collect();
    let cpe_positions = enb_positions
        .iter()
        .map(|p| {
            vec![
                Point::new(p.x_km + cpe_offset_km, p.y_km),
                Point::new(p.x_km, p.y_km + cpe_offset_km),
            ]
        })
        .collect();
    Topology {
        area_km: 100.0,
        enb_positions,
        cpe_positions,
        radio: RadioParams::reference(),
    }
}

fn clique(n: usize) -> InterferenceMatrix {
    let edges: Vec<_> = (0..n)
        .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
        .collect();
    InterferenceMatrix::from_edges(n, &edges).unwrap()
}

#[test]
fn co_located_no_coex_is_one_bit_per_hz() {
    let t = topology(&[(5.0, 5.0), (5.0, 5.0)], 1.5);
    let plan = ChannelPlan::reference();
    let c = build_interference_matrix(&t.enb_positions, 4.0);
    let r = baseline_no_coexistence(&t, &c, &plan, &mac(2.0, 1)).unwrap();
    for &se in &r.spectral_efficiency_bps_hz {
        // SINR just under 0 dB because noise adds to the equal-power interferer.
        assert!(se > 0.95 && se <= 1.0, "{se}");
    }
}

#[test]
fn single_enb_baselines_equal_dedicated() {
    let t = topology(&[(5.0, 5.0)], 2.0);
    let plan = ChannelPlan::reference();
    let c = build_interference_matrix(&t.enb_positions, 4.0);
    let m = mac(5.0, 1);
    let d = evaluate(&t, &Allocation::uniform(1, 4, ChannelMode::Dedicated), &c, &plan, &m).unwrap();
    let nc = baseline_no_coexistence(&t, &c, &plan, &m).unwrap();
    let lbt = baseline_full_lbt(&t, &c, &plan, &m).unwrap();
    assert_eq!(d.per_enb_bps, nc.per_enb_bps);
    assert!(lbt.per_enb_bps[0] >= 0.99 * d.per_enb_bps[0]);
}

#[test]
fn edgeless_full_lbt_is_near_full_band() {
    let t = topology(&[(1.0, 1.0), (9.0, 1.0), (5.0, 9.0)], 2.0);
    let plan = ChannelPlan::reference();
    let c = build_interference_matrix(&t.enb_positions, 4.0);
    assert_eq!(c.edge_count(), 0);
    let m = mac(5.0, 1);
    let nc = baseline_no_coexistence(&t, &c, &plan, &m).unwrap();
    let lbt = baseline_full_lbt(&t, &c, &plan, &m).unwrap();
    for k in 0..3 {
        assert!((0.99..=1.0 + 1e-12).contains(&(lbt.per_enb_bps[k] / nc.per_enb_bps[k])));
    }
}

#[test]
fn full_lbt_clique_of_three_shares_a_third() {
    let t = topology(&[(4.0, 4.0), (6.0, 4.0), (5.0, 5.5)], 0.5);
    let plan = ChannelPlan::reference();
    let c = clique(3);
    let r = baseline_full_lbt(&t, &c, &plan, &mac(30.0, 1)).unwrap();
    for &a in &r.airtime {
        let per_channel = a / 4.0;
        assert!((per_channel / (1.0 / 3.0) - 1.0).abs() <= 0.05, "{per_channel}");
    }
}

#[test]
fn path_middle_gets_least_airtime() {
    let t = topology(&[(2.0, 5.0), (5.0, 5.0), (8.0, 5.0)], 1.0);
    let plan = ChannelPlan::reference();
    let c = build_interference_matrix(&t.enb_positions, 4.0);
    assert_eq!(c.edge_count(), 2);
    let r = baseline_full_lbt(&t, &c, &plan, &mac(10.0, 1)).unwrap();
    assert!(r.airtime[1] <= r.airtime[0] && r.airtime[1] <= r.airtime[2], "{:?}", r.airtime);
}

#[test]
fn dedicated_is_seed_invariant() {
    let t = topology(&[(2.0, 5.0), (5.0, 5.0), (8.0, 5.0)], 1.0);
    let plan = ChannelPlan::reference();
    let c = build_interference_matrix(&t.enb_positions, 4.0);
    let alloc: Allocation = "D 0 D 0\n0 D 0 D\nD 0 D 0\n".parse().unwrap();
    let reference = evaluate(&t, &alloc, &c, &plan, &mac(2.0, 0)).unwrap();
    for seed in 1..6 {
        let r = evaluate(&t, &alloc, &c, &plan, &mac(2.0, seed)).unwrap();
        assert_eq!(r, reference);
    }
}

#[test]
fn n_clique_airtime_matches_analytic_share() {
    for n in 1..=4 {
        let m = mac(30.0, 1);
        let c = clique(n);
        let holders: Vec<_> = (0..n).map(|k| (k, ChannelMode::Shared)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(m.rng_seed);
        let tl = simulate_channel(0, &holders, &c, &m, &mut rng);
        let expected = analytic_clique_share(n, &m);
        let total: f64 = (0..n).map(|k| tl.airtime_fraction(k)).sum();
        assert!(total <= 1.0 + 1e-12);
        for k in 0..n {
            let rel = tl.airtime_fraction(k) / expected - 1.0;
            assert!(rel.abs() <= 0.05, "n={n} k={k} rel={rel}");
        }
    }
}

fn random_case() -> impl Strategy<Value = (Vec<(f64, f64)>, Vec<Vec<u8>>, u64)> {
    (2usize..6).prop_flat_map(|k| {
        (
            prop::collection::vec((0.0f64..10.0, 0.0f64..10.0), k),
            prop::collection::vec(prop::collection::vec(0u8..3, 4), k),
            any::<u64>(),
        )
    })
}

fn alloc_from(codes: &[Vec<u8>]) -> Allocation {
    let rows: Vec<Vec<ChannelMode>> = codes
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| match v {
                    0 => ChannelMode::Unassigned,
                    1 => ChannelMode::Dedicated,
                    _ => ChannelMode::Shared,
                })
                .collect()
        })
        .collect();
    Allocation::from_rows(&rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shared_neighbors_never_overlap((enbs, codes, seed) in random_case()) {
        let t = topology(&enbs, 0.5);
        let c = build_interference_matrix(&t.enb_positions, 4.0);
        let alloc = alloc_from(&codes);
        let m = mac(2.0, seed);
        for ch in 0..4 {
            let holders: Vec<_> = (0..t.enb_count()).map(|k| (k, alloc.mode(k, ch))).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let tl = simulate_channel(ch, &holders, &c, &m, &mut rng);
            let mut covered = 0;
            for iv in &tl.intervals {
                prop_assert_eq!(iv.start, covered);
                covered = iv.end;
                for (i, &a) in iv.transmitters.iter().enumerate() {
                    prop_assert!(alloc.mode(a, ch).is_assigned());
                    for &b in &iv.transmitters[i + 1..] {
                        let both_shared = alloc.mode(a, ch) == ChannelMode::Shared
                            && alloc.mode(b, ch) == ChannelMode::Shared;
                        prop_assert!(!(both_shared && c.interferes(a, b)), "{a} and {b} overlap on {ch}");
                        // A shared holder defers to a dedicated neighbor.
                        let mixed = alloc.mode(a, ch) != alloc.mode(b, ch);
                        prop_assert!(!(mixed && c.interferes(a, b)));
                    }
                }
            }
            prop_assert_eq!(covered, m.total_slots());
        }
    }

    #[test]
    fn clique_airtime_sums_to_at_most_one(n in 1usize..6, seed in any::<u64>()) {
        let m = mac(2.0, seed);
        let c = clique(n);
        let holders: Vec<_> = (0..n).map(|k| (k, ChannelMode::Shared)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tl = simulate_channel(0, &holders, &c, &m, &mut rng);
        let total: f64 = (0..n).map(|k| tl.airtime_fraction(k)).sum();
        prop_assert!(total <= 1.0 + 1e-12);
    }

    #[test]
    fn evaluation_is_bit_reproducible((enbs, codes, seed) in random_case(), collide in any::<bool>()) {
        let t = topology(&enbs, 0.5);
        let c = build_interference_matrix(&t.enb_positions, 4.0);
        let plan = ChannelPlan::reference();
        let alloc = alloc_from(&codes);
        let m = MacConfig {
            contention: if collide { Contention::Collide } else { Contention::Arbitrated },
            ..mac(2.0, seed)
        };
        let a = evaluate(&t, &alloc, &c, &plan, &m).unwrap();
        let b = evaluate(&t, &alloc, &c, &plan, &m).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn no_coex_never_beats_isolation(enbs in prop::collection::vec((0.0f64..10.0, 0.0f64..10.0), 1..6)) {
        let t = topology(&enbs, 1.0);
        let plan = ChannelPlan::reference();
        let c = build_interference_matrix(&t.enb_positions, 4.0);
        let m = mac(1.0, 1);
        let nc = baseline_no_coexistence(&t, &c, &plan, &m).unwrap();
        for k in 0..t.enb_count() {
            let alone = Topology {
                enb_positions: vec![t.enb_positions[k]],
                cpe_positions: vec![t.cpe_positions[k].clone()],
                ..t.clone()
            };
            let ci = build_interference_matrix(&alone.enb_positions, 4.0);
            let iso = evaluate(&alone, &Allocation::uniform(1, 4, ChannelMode::Dedicated), &ci, &plan, &m).unwrap();
            prop_assert!(nc.per_enb_bps[k] <= iso.per_enb_bps[0] * (1.0 + 1e-12));
        }
    }

    #[test]
    fn adding_a_dedicated_channel_never_hurts(
        (enbs, codes, seed) in random_case(),
        pick in any::<prop::sample::Index>(),
    ) {
        let t = topology(&enbs, 0.5);
        let c = build_interference_matrix(&t.enb_positions, 4.0);
        let plan = ChannelPlan::reference();
        // Start from a dedicated-only allocation and grant one more channel.
        let codes: Vec<Vec<u8>> = codes.iter().map(|r| r.iter().map(|&v| v.min(1)).collect()).collect();
        let before = alloc_from(&codes);
        let free: Vec<(usize, usize)> = (0..t.enb_count())
            .flat_map(|k| (0..4).map(move |ch| (k, ch)))
            .filter(|&(k, ch)| codes[k][ch] == 0)
            .collect();
        prop_assume!(!free.is_empty());
        let (k, ch) = free[pick.index(free.len())];
        let mut more = codes.clone();
        more[k][ch] = 1;
        let after = alloc_from(&more);
        let m = mac(1.0, seed);
        let a = evaluate(&t, &before, &c, &plan, &m).unwrap();
        let b = evaluate(&t, &after, &c, &plan, &m).unwrap();
        prop_assert!(b.per_enb_bps[k] >= a.per_enb_bps[k]);
    }
}
