//! Protocol-model conflict graph: two eNBs interfere iff they are closer
//! than a threshold distance.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{InterferenceMatrix, Point};

/// Builds the binary conflict matrix. The comparison is strict, so eNBs
/// exactly `threshold_km` apart do not interfere.
pub fn build_interference_matrix(positions: &[Point], threshold_km: f64) -> InterferenceMatrix {
    let k = positions.len();
    let mut entries = vec![false; k * k];
    for a in 0..k {
        for b in (a + 1)..k {
            if positions[a].distance_km(&positions[b]) < threshold_km {
                entries[a * k + b] = true;
                entries[b * k + a] = true;
            }
        }
    }
    InterferenceMatrix::from_parts(k, entries, threshold_km)
}

pub fn neighbor_set(c: &InterferenceMatrix, k: usize) -> Result<BTreeSet<usize>> {
    if k >= c.size() {
        return Err(Error::IndexOutOfRange {
            index: k,
            size: c.size(),
        });
    }
    Ok(c.neighbors(k).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn threshold_boundary() {
        let near = build_interference_matrix(&pts(&[(0.0, 0.0), (3.9, 0.0)]), 4.0);
        assert!(near.interferes(0, 1));
        let tie = build_interference_matrix(&pts(&[(0.0, 0.0), (4.0, 0.0)]), 4.0);
        assert!(!tie.interferes(0, 1));
    }

    #[test]
    fn single_enb() {
        let c = build_interference_matrix(&pts(&[(5.0, 5.0)]), 4.0);
        assert_eq!(c.size(), 1);
        assert_eq!(c.to_string(), "0\n");
        assert_eq!(c.threshold_km(), Some(4.0));
    }

    #[test]
    fn neighbor_sets() {
        let empty = build_interference_matrix(&pts(&[(0.0, 0.0), (5.0, 0.0), (0.0, 5.0)]), 4.0);
        for k in 0..3 {
            assert!(neighbor_set(&empty, k).unwrap().is_empty());
        }
        let triangle = build_interference_matrix(&pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]), 4.0);
        assert_eq!(neighbor_set(&triangle, 0).unwrap(), BTreeSet::from([1, 2]));

        let path = build_interference_matrix(&pts(&[(0.0, 0.0), (3.0, 0.0), (6.0, 0.0)]), 4.0);
        assert_eq!(neighbor_set(&path, 1).unwrap(), BTreeSet::from([0, 2]));
        assert_eq!(neighbor_set(&path, 0).unwrap(), BTreeSet::from([1]));
        assert!(matches!(
            neighbor_set(&path, 3),
            Err(Error::IndexOutOfRange { index: 3, size: 3 })
        ));
    }

    fn positions() -> impl Strategy<Value = Vec<Point>> {
        prop::collection::vec((0.0f64..10.0, 0.0f64..10.0), 1..20)
            .prop_map(|v| v.into_iter().map(|(x, y)| Point::new(x, y)).collect())
    }

    proptest! {
        #[test]
        fn symmetric_zero_diagonal(p in positions(), t in 0.0f64..8.0) {
            let c = build_interference_matrix(&p, t);
            for a in 0..c.size() {
                prop_assert!(!c.interferes(a, a));
                for b in 0..c.size() {
                    prop_assert_eq!(c.interferes(a, b), c.interferes(b, a));
                }
            }
        }

        #[test]
        fn raising_threshold_keeps_edges(p in positions(), t in 0.0f64..6.0, dt in 0.0f64..3.0) {
            let lo = build_interference_matrix(&p, t);
            let hi = build_interference_matrix(&p, t + dt);
            for a in 0..lo.size() {
                for b in 0..lo.size() {
                    prop_assert!(!lo.interferes(a, b) || hi.interferes(a, b));
                }
            }
        }

        #[test]
        fn spaced_grid_is_edgeless(n in 1usize..6, t in 0.5f64..5.0, jitter in 0.0f64..0.4) {
            // Spacing slightly above t absorbs rounding in i * spacing.
            let s = t * (1.0 + 1e-9);
            let p: Vec<Point> = (0..n * n)
                .map(|i| Point::new((i % n) as f64 * (s + jitter), (i / n) as f64 * s))
                .collect();
            prop_assert_eq!(build_interference_matrix(&p, t).edge_count(), 0);
        }
    }
}
