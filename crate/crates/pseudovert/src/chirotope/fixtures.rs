//! Committed test fixtures: small realizable sets with hand-checked duals
//! and the 9-element non-realizable abstract order type.

use super::{RealizedPointSet, TripleTable, WiringDiagram};

/// Three points whose dual lines (slope = primal x) are ordered b ≺ a ≺ c.
/// ids: 0 = a = (1,0), 1 = b = (-1,-2), 2 = c = (3,6).
pub fn tri3() -> RealizedPointSet {
    RealizedPointSet::new(vec![(1, 0), (-1, -2), (3, 6)]).unwrap()
}

/// Axis-aligned square plus an interior point (id 4), the only non-extreme
/// one. The exact center would sit on both diagonals, so the interior point
/// is nudged off them to keep the set in general position.
pub fn square_with_center() -> RealizedPointSet {
    RealizedPointSet::new(vec![(0, 0), (4, 0), (4, 4), (0, 4), (2, 1)]).unwrap()
}

/// Integer perturbation of the classical Pappus configuration
/// (A1 A2 A3 / B1 B2 B3 on two lines, C1 C2 C3 the cross-join points,
/// ids in that order). Every one of the nine incident triples is broken by
/// the perturbation; the conclusion triple C1 C2 C3 bounds a triangular face
/// of the dual arrangement, which makes its orientation flippable.
const NON_PAPPUS_POINTS: [(i64, i64); 9] = [
    (3, 1),
    (1597439, 3),
    (4792318, -1),
    (0, 1597440),
    (2396163, 1597437),
    (9584639, 1597441),
    (4055041, 491518),
    (3194881, 532482),
    (958462, 638976),
];

/// The perturbed Pappus points as a realizable set (used by fixture tests;
/// the non-realizable order type below flips one of its triples).
pub fn non_pappus_base_points() -> RealizedPointSet {
    RealizedPointSet::new(NON_PAPPUS_POINTS.to_vec()).unwrap()
}

/// The non-Pappus abstract order type on 9 elements: orientations of the
/// perturbed Pappus configuration with the conclusion triple (6,7,8)
/// reversed. By Pappus's theorem no point set realizes it.
pub fn non_pappus_table() -> TripleTable {
    let det = |p: (i64, i64), q: (i64, i64), r: (i64, i64)| -> i128 {
        let ux = (q.0 - p.0) as i128;
        let uy = (q.1 - p.1) as i128;
        let vx = (r.0 - p.0) as i128;
        let vy = (r.1 - p.1) as i128;
        ux * vy - uy * vx
    };
    TripleTable::from_fn(9, |i, j, k| {
        let ccw = det(
            NON_PAPPUS_POINTS[i],
            NON_PAPPUS_POINTS[j],
            NON_PAPPUS_POINTS[k],
        ) > 0;
        if (i, j, k) == (6, 7, 8) {
            !ccw
        } else {
            ccw
        }
    })
}

/// The non-Pappus order type as a wiring diagram: the pseudo-vertical sweep
/// of the oracle representation of [`non_pappus_table`], frozen here and
/// regenerated by a test. Wire ids relabel the table's elements, which does
/// not change the abstract order type.
pub fn non_pappus_wiring() -> WiringDiagram {
    WiringDiagram::new(9, NON_PAPPUS_SWAPS.to_vec()).unwrap()
}

const NON_PAPPUS_SWAPS: [usize; 36] = [
    1, 2, 3, 4, 5, 6, 7, 8, 7, 2, 3, 4, 5, 6, 7, 4, 2, 1, 2, 3, 4, 5, 6, 7, 4, 5, 2, 3, 4, 5, 2,
    1, 2, 3, 4, 2,
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chirotope::{validate_general_position, PointId, TripleOracle};

    fn above(r: (i64, i64), p: (i64, i64), q: (i64, i64)) -> bool {
        let det = ((q.0 - p.0) as i128) * ((r.1 - p.1) as i128)
            - ((q.1 - p.1) as i128) * ((r.0 - p.0) as i128);
        (det > 0) == (q.0 > p.0)
    }

    #[test]
    fn non_pappus_base_is_general_position() {
        assert!(validate_general_position(&non_pappus_base_points()).is_empty());
    }

    #[test]
    fn conclusion_triangle_is_a_face_of_the_dual() {
        // No other dual line separates the three pairwise crossings of the
        // C-duals, so reversing the triple is a valid mutation.
        for r in 0..6 {
            let c = NON_PAPPUS_POINTS;
            let s1 = above(c[r], c[6], c[7]);
            let s2 = above(c[r], c[6], c[8]);
            let s3 = above(c[r], c[7], c[8]);
            assert_eq!(s1, s2);
            assert_eq!(s2, s3);
        }
    }

    #[test]
    fn flip_changes_exactly_the_conclusion_triple() {
        let flipped = non_pappus_table();
        let base = non_pappus_base_points();
        let mut diffs = Vec::new();
        for i in 0..9u32 {
            for j in i + 1..9 {
                for k in j + 1..9 {
                    let t = (PointId(i), PointId(j), PointId(k));
                    if flipped.orient(t.0, t.1, t.2) != base.orient(t.0, t.1, t.2) {
                        diffs.push((i, j, k));
                    }
                }
            }
        }
        assert_eq!(diffs, vec![(6, 7, 8)]);
    }
}
