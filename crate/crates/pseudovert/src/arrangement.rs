//! The dual-arrangement view of an order type: a designated extreme element
//! plays the role of the line entering first from the top left, and all
//! structural queries (start order, above/below a crossing, crossing order
//! along a line) reduce to a constant number of sidedness queries.

use crate::chirotope::{PointId, TripleOracle};

/// A point and its dual pseudo-line share the identifier.
pub type LineId = PointId;

/// Unordered pair of lines, stored with the smaller id first. Which of the
/// two starts above is a property of the view, not of the pair.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Crossing {
    lo: LineId,
    hi: LineId,
}

impl Crossing {
    pub fn new(a: LineId, b: LineId) -> Crossing {
        assert_ne!(a, b, "a crossing needs two distinct lines");
        if a.0 < b.0 {
            Crossing { lo: a, hi: b }
        } else {
            Crossing { lo: b, hi: a }
        }
    }

    pub fn lines(&self) -> (LineId, LineId) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, a: LineId) -> bool {
        self.lo == a || self.hi == a
    }

    pub fn other(&self, a: LineId) -> LineId {
        debug_assert!(self.contains(a));
        if self.lo == a {
            self.hi
        } else {
            self.lo
        }
    }
}

impl std::fmt::Display for Crossing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.lo, self.hi)
    }
}

/// Structural queries on (a sub-arrangement of) the dual arrangement.
///
/// `members` is the active line set; predicates remain valid for any ids of
/// the underlying oracle, which is what lets sub-arrangements reference
/// crossings of retired lines.
pub trait Arrangement {
    fn members(&self) -> &[LineId];

    /// Start order: `a ≺ b` iff `a` enters above `b` on the far left.
    fn precedes(&self, a: LineId, b: LineId) -> bool;

    /// All members sorted by the start order. Implementations may cache
    /// this; the default sorts on every call.
    fn start_sorted(&self) -> Vec<LineId> {
        let mut sorted = self.members().to_vec();
        sorted.sort_by(|&a, &b| {
            if self.precedes(a, b) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        sorted
    }

    /// Whether line `r` passes strictly below the crossing.
    fn below_crossing(&self, r: LineId, c: Crossing) -> bool;

    /// Whether the crossing `ap` comes before the crossing `bp` along `p`.
    fn crossing_precedes_on(&self, a: LineId, p: LineId, b: LineId) -> bool {
        debug_assert!(a != p && b != p && a != b);
        // b sits below the point ap exactly when that point lies in the part
        // of p that b has not yet reached (if b starts below p) or has
        // already left (if b starts above p).
        self.below_crossing(b, Crossing::new(a, p)) == self.precedes(p, b)
    }

    /// `(p, q)` of a crossing with `p ≺ q`.
    fn oriented(&self, c: Crossing) -> (LineId, LineId) {
        let (a, b) = c.lines();
        if self.precedes(a, b) {
            (a, b)
        } else {
            (b, a)
        }
    }
}

/// The oracle-backed arrangement: `x ≺ a` for the designated extreme
/// element, `a ≺ a'` iff `P(x,a,a')`, and `r` below `uv` iff
/// `P(u,v,r) = P(u,v,x)`.
pub struct ArrangementView<'a> {
    oracle: &'a dyn TripleOracle,
    extreme: LineId,
    members: Vec<LineId>,
    start_order: std::cell::OnceCell<Vec<LineId>>,
}

impl<'a> ArrangementView<'a> {
    /// View over all elements with a freshly located extreme element.
    pub fn new(oracle: &'a dyn TripleOracle) -> ArrangementView<'a> {
        let extreme = find_extreme_point(oracle);
        ArrangementView::with_extreme(oracle, extreme)
    }

    /// View over all elements with a caller-chosen extreme element. An
    /// interior element would make the derived predicates inconsistent;
    /// extremality is the caller's contract.
    pub fn with_extreme(oracle: &'a dyn TripleOracle, extreme: LineId) -> ArrangementView<'a> {
        let members = (0..oracle.size() as u32).map(PointId).collect();
        ArrangementView {
            oracle,
            extreme,
            members,
            start_order: std::cell::OnceCell::new(),
        }
    }

    /// Same oracle and extreme element, restricted to `members`. The extreme
    /// element does not have to be a member; predicates still consult it.
    pub fn restricted(&self, mut members: Vec<LineId>) -> ArrangementView<'a> {
        members.sort_unstable();
        members.dedup();
        ArrangementView {
            oracle: self.oracle,
            extreme: self.extreme,
            members,
            start_order: std::cell::OnceCell::new(),
        }
    }

    pub fn oracle(&self) -> &'a dyn TripleOracle {
        self.oracle
    }

    pub fn extreme(&self) -> LineId {
        self.extreme
    }
}

impl Arrangement for ArrangementView<'_> {
    fn members(&self) -> &[LineId] {
        &self.members
    }

    fn start_sorted(&self) -> Vec<LineId> {
        self.start_order
            .get_or_init(|| {
                let mut sorted = self.members.clone();
                sorted.sort_by(|&a, &b| {
                    if self.precedes(a, b) {
                        std::cmp::Ordering::Less
                    } else {
                        std::cmp::Ordering::Greater
                    }
                });
                sorted
            })
            .clone()
    }

    fn precedes(&self, a: LineId, b: LineId) -> bool {
        debug_assert_ne!(a, b);
        if a == self.extreme {
            return true;
        }
        if b == self.extreme {
            return false;
        }
        self.oracle.orient(self.extreme, a, b).is_ccw()
    }

    fn below_crossing(&self, r: LineId, c: Crossing) -> bool {
        let (u, v) = c.lines();
        debug_assert!(r != u && r != v);
        if u == self.extreme {
            return self.oracle.orient(u, v, r).is_ccw();
        }
        if v == self.extreme {
            return self.oracle.orient(v, u, r).is_ccw();
        }
        self.oracle.orient(u, v, r) == self.oracle.orient(u, v, self.extreme)
    }
}

/// The same arrangement rotated by 180 degrees: the north and south faces
/// swap roles. The start order is unchanged (the final order of an
/// arrangement is the reversal of its start order), above/below flips, and
/// crossing order along every line reverses via the derived predicate.
pub struct Rotated<'a, A: Arrangement + ?Sized>(pub &'a A);

impl<A: Arrangement + ?Sized> Arrangement for Rotated<'_, A> {
    fn members(&self) -> &[LineId] {
        self.0.members()
    }

    // A 180° rotation preserves the start order: the final order of an
    // arrangement is the reversal of its start order.
    fn start_sorted(&self) -> Vec<LineId> {
        self.0.start_sorted()
    }

    fn precedes(&self, a: LineId, b: LineId) -> bool {
        self.0.precedes(a, b)
    }

    fn below_crossing(&self, r: LineId, c: Crossing) -> bool {
        !self.0.below_crossing(r, c)
    }
}

/// Reference extremality test: `a` is on the hull iff some `b` puts every
/// other element on one side of `(a, b)`. Cubic brute force.
pub fn is_extreme(oracle: &dyn TripleOracle, a: PointId) -> bool {
    let n = oracle.size() as u32;
    for b in (0..n).map(PointId) {
        if b == a {
            continue;
        }
        let mut side = None;
        let mut ok = true;
        for c in (0..n).map(PointId) {
            if c == a || c == b {
                continue;
            }
            let o = oracle.orient(a, b, c);
            match side {
                None => side = Some(o),
                Some(s) if s != o => {
                    ok = false;
                    break;
                }
                _ => {}
            }
        }
        if ok {
            return true;
        }
    }
    false
}

/// Locates a hull element with O(n log n) sidedness queries: sort the other
/// elements around a pivot; a reflex gap certifies the pivot itself,
/// otherwise the pivot is interior and the circular order is a star-shaped
/// polygon whose hull (Melkman's online algorithm) supplies a vertex.
pub fn find_extreme_point(oracle: &dyn TripleOracle) -> PointId {
    let n = oracle.size() as u32;
    assert!(n >= 3, "need at least three elements");
    let pivot = PointId(0);
    let others = sort_around(oracle, pivot);

    // A consecutive pair turning clockwise around the pivot means the angular
    // gap exceeds a half-plane, so the pivot is extreme.
    let m = others.len();
    for i in 0..m {
        let u = others[i];
        let v = others[(i + 1) % m];
        if u == v || !oracle.orient(pivot, u, v).is_ccw() {
            return pivot;
        }
    }

    // Pivot is interior: `others` traces a star-shaped (hence simple)
    // polygon. Any hull vertex of it is extreme for the whole set.
    let hull = melkman(oracle, &others);
    hull[0]
}

/// Circular order around `pivot`: split by the ray to the first element,
/// each half is totally ordered by the ccw-comparator.
fn sort_around(oracle: &dyn TripleOracle, pivot: PointId) -> Vec<PointId> {
    let n = oracle.size() as u32;
    let mut rest: Vec<PointId> = (0..n).map(PointId).filter(|&p| p != pivot).collect();
    let first = rest[0];
    let mut left: Vec<PointId> = Vec::new();
    let mut right: Vec<PointId> = Vec::new();
    for &p in rest.iter().skip(1) {
        if oracle.orient(pivot, first, p).is_ccw() {
            left.push(p);
        } else {
            right.push(p);
        }
    }
    let ccw_cmp = |a: &PointId, b: &PointId| {
        if oracle.orient(pivot, *a, *b).is_ccw() {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    };
    left.sort_by(ccw_cmp);
    right.sort_by(ccw_cmp);
    rest.clear();
    rest.push(first);
    rest.extend(left);
    rest.extend(right);
    rest
}

/// Melkman's online convex hull of a simple polyline, using orientation
/// tests only. Returns the hull in ccw order.
fn melkman(oracle: &dyn TripleOracle, poly: &[PointId]) -> Vec<PointId> {
    use std::collections::VecDeque;
    assert!(poly.len() >= 3);
    let ccw = |a: PointId, b: PointId, c: PointId| oracle.orient(a, b, c).is_ccw();
    let mut dq: VecDeque<PointId> = VecDeque::new();
    let (v0, v1, v2) = (poly[0], poly[1], poly[2]);
    if ccw(v0, v1, v2) {
        dq.push_back(v0);
        dq.push_back(v1);
    } else {
        dq.push_back(v1);
        dq.push_back(v0);
    }
    dq.push_back(v2);
    dq.push_front(v2);
    for &p in &poly[3..] {
        let front_ok = |dq: &VecDeque<PointId>| ccw(p, dq[0], dq[1]);
        let back_ok = |dq: &VecDeque<PointId>| ccw(dq[dq.len() - 2], dq[dq.len() - 1], p);
        if front_ok(&dq) && back_ok(&dq) {
            continue;
        }
        while !back_ok(&dq) {
            dq.pop_back();
        }
        dq.push_back(p);
        while !front_ok(&dq) {
            dq.pop_front();
        }
        dq.push_front(p);
    }
    dq.pop_front();
    dq.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chirotope::{
        non_pappus_table, random_wiring, square_with_center, table_from_wiring, tri3,
        RealizedPointSet,
    };

    fn ids(v: &[u32]) -> Vec<PointId> {
        v.iter().map(|&i| PointId(i)).collect()
    }

    #[test]
    fn tri3_start_order_matches_dual_slopes() {
        // Duals: a slope 1, b slope -1, c slope 3, so b ≺ a ≺ c.
        let ps = tri3();
        let view = ArrangementView::with_extreme(&ps, PointId(1));
        assert!(view.precedes(PointId(1), PointId(0)));
        assert!(view.precedes(PointId(1), PointId(2)));
        assert!(view.precedes(PointId(0), PointId(2)));
        assert!(!view.precedes(PointId(2), PointId(0)));
    }

    #[test]
    fn precedes_is_antisymmetric_and_total() {
        let w = random_wiring(10, 7);
        let table = table_from_wiring(&w).unwrap();
        let view = ArrangementView::new(&table);
        for a in (0..10).map(PointId) {
            for b in (0..10).map(PointId) {
                if a == b {
                    continue;
                }
                assert_ne!(view.precedes(a, b), view.precedes(b, a));
            }
        }
        // transitivity, exhaustive
        for a in (0..10).map(PointId) {
            for b in (0..10).map(PointId) {
                for c in (0..10).map(PointId) {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    if view.precedes(a, b) && view.precedes(b, c) {
                        assert!(view.precedes(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn tri3_below_crossing_matches_straight_lines() {
        let ps = tri3();
        let view = ArrangementView::with_extreme(&ps, PointId(1));
        let (a, b, c) = (PointId(0), PointId(1), PointId(2));
        // b passes below a∩c (at x=3 dual b is at -1 < 3)
        assert!(view.below_crossing(b, Crossing::new(a, c)));
        // a is above b∩c (at x=2 dual a is at 2 > 0)
        assert!(!view.below_crossing(a, Crossing::new(b, c)));
        // c below a∩b (at x=1 dual c is at -3 < 1)
        assert!(view.below_crossing(c, Crossing::new(a, b)));
    }

    #[test]
    fn below_partitions_other_lines() {
        let w = random_wiring(8, 3);
        let table = table_from_wiring(&w).unwrap();
        let view = ArrangementView::new(&table);
        for u in 0..8u32 {
            for v in u + 1..8 {
                let c = Crossing::new(PointId(u), PointId(v));
                let below = (0..8u32)
                    .map(PointId)
                    .filter(|&r| !c.contains(r) && view.below_crossing(r, c))
                    .count();
                let above = (0..8u32)
                    .map(PointId)
                    .filter(|&r| !c.contains(r) && !view.below_crossing(r, c))
                    .count();
                assert_eq!(below + above, 6);
            }
        }
    }

    #[test]
    fn tri3_crossing_order_along_lines() {
        let ps = tri3();
        let view = ArrangementView::with_extreme(&ps, PointId(1));
        let (a, b, c) = (PointId(0), PointId(1), PointId(2));
        // on a: ab (x=1) before ac (x=3)
        assert!(view.crossing_precedes_on(b, a, c));
        assert!(!view.crossing_precedes_on(c, a, b));
        // on c: bc (x=2) before ac (x=3)
        assert!(view.crossing_precedes_on(b, c, a));
    }

    #[test]
    fn crossing_order_is_total_on_each_line() {
        let w = random_wiring(9, 11);
        let table = table_from_wiring(&w).unwrap();
        let view = ArrangementView::new(&table);
        for p in (0..9).map(PointId) {
            let others: Vec<PointId> = (0..9).map(PointId).filter(|&r| r != p).collect();
            for &a in &others {
                for &b in &others {
                    if a == b {
                        continue;
                    }
                    assert_ne!(
                        view.crossing_precedes_on(a, p, b),
                        view.crossing_precedes_on(b, p, a)
                    );
                    for &c in &others {
                        if c == a || c == b {
                            continue;
                        }
                        if view.crossing_precedes_on(a, p, b) && view.crossing_precedes_on(b, p, c)
                        {
                            assert!(view.crossing_precedes_on(a, p, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rotation_flips_below_and_keeps_start_order() {
        let ps = square_with_center();
        let view = ArrangementView::new(&ps);
        let rot = Rotated(&view);
        let c = Crossing::new(PointId(0), PointId(2));
        assert_ne!(
            view.below_crossing(PointId(1), c),
            rot.below_crossing(PointId(1), c)
        );
        assert_eq!(
            view.precedes(PointId(0), PointId(1)),
            rot.precedes(PointId(0), PointId(1))
        );
        assert_ne!(
            view.crossing_precedes_on(PointId(1), PointId(0), PointId(3)),
            rot.crossing_precedes_on(PointId(1), PointId(0), PointId(3))
        );
    }

    #[test]
    fn triangle_every_point_extreme() {
        let ps = tri3();
        for p in ids(&[0, 1, 2]) {
            assert!(is_extreme(&ps, p));
        }
        assert!(ids(&[0, 1, 2]).contains(&find_extreme_point(&ps)));
    }

    #[test]
    fn square_center_is_interior() {
        let ps = square_with_center();
        assert!(!is_extreme(&ps, PointId(4)));
        for p in ids(&[0, 1, 2, 3]) {
            assert!(is_extreme(&ps, p));
        }
        assert_ne!(find_extreme_point(&ps), PointId(4));
    }

    #[test]
    fn interior_pivot_still_yields_extreme_point() {
        // Same square but with the interior point as element 0, exercising
        // the Melkman fallback.
        let ps = RealizedPointSet::new(vec![(2, 1), (0, 0), (4, 0), (4, 4), (0, 4)]).unwrap();
        let found = find_extreme_point(&ps);
        assert!(is_extreme(&ps, found));
        assert_ne!(found, PointId(0));

        // A larger set with more interior points around the pivot.
        let ps = RealizedPointSet::new(vec![
            (3, 2),
            (0, 0),
            (9, 0),
            (10, 8),
            (1, 9),
            (5, 3),
            (4, 6),
            (7, 6),
        ])
        .unwrap();
        assert!(crate::chirotope::validate_general_position(&ps).is_empty());
        let found = find_extreme_point(&ps);
        assert!(is_extreme(&ps, found));
    }

    #[test]
    fn extreme_point_on_non_pappus() {
        let table = non_pappus_table();
        let found = find_extreme_point(&table);
        assert!(is_extreme(&table, found));
    }

    #[test]
    fn extreme_point_random_corpus() {
        for n in [4usize, 6, 9, 13] {
            for seed in 0..25 {
                let w = random_wiring(n, seed);
                let table = table_from_wiring(&w).unwrap();
                let found = find_extreme_point(&table);
                assert!(is_extreme(&table, found), "n={n} seed={seed}");
            }
        }
    }
}
