//! Pseudo-verticals: the curve through a crossing that plays the role of a
//! vertical line. This module provides the quadratic-query reference
//! traversal, the rank formulas at a crossing, ordering of pseudo-verticals,
//! and rank selection by prune-and-search in randomized and deterministic
//! variants.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arrangement::{Arrangement, Crossing, LineId, Rotated};
use crate::chirotope::WiringDiagram;
use crate::epsapprox::{build_eps_approx, Eps, RangeKind, RangeSpace};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RankError {
    #[error("rank {k} out of range 1..={n}")]
    RankOutOfRange { k: usize, n: usize },
    #[error("line {0} is not above the crossing")]
    NotAbove(LineId),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Randomized,
    Deterministic,
}

/// Position of a crossing relative to a pseudo-vertical.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A rank-selection instance: the `k`-th line of `subset` in the order the
/// pseudo-vertical through `crossing` crosses them.
#[derive(Clone, Debug)]
pub struct RankQuery {
    pub crossing: Crossing,
    pub subset: Vec<LineId>,
    pub k: usize,
}

/// All lines in pseudo-vertical order, rank 1 (northmost) first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaOrder {
    crossing: Crossing,
    order: Vec<LineId>,
}

impl GammaOrder {
    pub fn crossing(&self) -> Crossing {
        self.crossing
    }

    pub fn order(&self) -> &[LineId] {
        &self.order
    }

    /// 1-based rank of a line.
    pub fn rank(&self, line: LineId) -> usize {
        self.order
            .iter()
            .position(|&l| l == line)
            .map(|i| i + 1)
            .expect("line not part of the traversal")
    }

    /// 1-based rank of `line` counting only members of `subset`.
    pub fn rank_within(&self, line: LineId, subset: &[LineId]) -> usize {
        let mut r = 0;
        for &l in &self.order {
            if subset.contains(&l) {
                r += 1;
            }
            if l == line {
                assert!(subset.contains(&line));
                return r;
            }
        }
        panic!("line not part of the traversal");
    }

    /// The subset member of a given 1-based rank within `subset`.
    pub fn nth_within(&self, subset: &[LineId], k: usize) -> LineId {
        let mut r = 0;
        for &l in &self.order {
            if subset.contains(&l) {
                r += 1;
                if r == k {
                    return l;
                }
            }
        }
        panic!("rank {k} out of range for subset of {} lines", subset.len());
    }
}

/// A sub-arrangement: same predicates, restricted member set.
pub struct Restricted<'a, A: Arrangement + ?Sized> {
    base: &'a A,
    members: Vec<LineId>,
}

impl<'a, A: Arrangement + ?Sized> Restricted<'a, A> {
    pub fn new(base: &'a A, mut members: Vec<LineId>) -> Self {
        members.sort_unstable();
        members.dedup();
        Restricted { base, members }
    }
}

impl<A: Arrangement + ?Sized> Arrangement for Restricted<'_, A> {
    fn members(&self) -> &[LineId] {
        &self.members
    }
    fn precedes(&self, a: LineId, b: LineId) -> bool {
        self.base.precedes(a, b)
    }
    fn below_crossing(&self, r: LineId, c: Crossing) -> bool {
        self.base.below_crossing(r, c)
    }
}

/// Lines below the crossing that start above its upper line. Their upper
/// envelope is the path the northbound ray follows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LSet {
    pub members: Vec<LineId>,
}

pub fn l_set<A: Arrangement + ?Sized>(view: &A, c: Crossing) -> LSet {
    let (p, _) = view.oriented(c);
    let members = view
        .members()
        .iter()
        .copied()
        .filter(|&a| !c.contains(a) && view.below_crossing(a, c) && view.precedes(a, p))
        .collect();
    LSet { members }
}

/// The element of `set` whose crossing with `host` comes last along `host`.
pub fn last_crossing_on<A: Arrangement + ?Sized>(
    view: &A,
    host: LineId,
    set: &[LineId],
) -> LineId {
    assert!(!set.is_empty());
    let mut best = set[0];
    for &s in &set[1..] {
        if view.crossing_precedes_on(best, host, s) {
            best = s;
        }
    }
    best
}

fn first_crossing_on<A: Arrangement + ?Sized>(view: &A, host: LineId, set: &[LineId]) -> LineId {
    assert!(!set.is_empty());
    let mut best = set[0];
    for &s in &set[1..] {
        if view.crossing_precedes_on(s, host, best) {
            best = s;
        }
    }
    best
}

fn min_by_precedes<A: Arrangement + ?Sized>(view: &A, items: &[LineId]) -> LineId {
    assert!(!items.is_empty());
    let mut best = items[0];
    for &i in &items[1..] {
        if view.precedes(i, best) {
            best = i;
        }
    }
    best
}

/// Reference oracle: simulate both rays of the pseudo-vertical through `c`
/// with the local following rules. Quadratic in the member count.
pub fn gamma_traversal<A: Arrangement + ?Sized>(view: &A, c: Crossing) -> GammaOrder {
    let members = view.members();
    let (p, q) = view.oriented(c);
    debug_assert!(members.contains(&p) && members.contains(&q));

    // Northbound: hug `cur` leftward starting at the crossing (cur, pos).
    // A line crossing `cur` from below is crossed by the ray; one crossing
    // from above takes over as the followed line.
    let walk = |northbound: bool| -> Vec<LineId> {
        let mut events = Vec::new();
        let mut cur = p;
        let mut pos = q;
        loop {
            let mut best: Option<LineId> = None;
            for &j in members {
                if j == cur || j == pos {
                    continue;
                }
                let before_pos = view.crossing_precedes_on(j, cur, pos);
                if before_pos != northbound {
                    continue;
                }
                best = match best {
                    None => Some(j),
                    Some(b) => {
                        // northbound wants the latest crossing left of pos,
                        // southbound the earliest right of pos
                        let replace = if northbound {
                            view.crossing_precedes_on(b, cur, j)
                        } else {
                            view.crossing_precedes_on(j, cur, b)
                        };
                        Some(if replace { j } else { b })
                    }
                };
            }
            match best {
                None => break,
                Some(j) => {
                    if view.precedes(cur, j) {
                        events.push(j);
                        pos = j;
                    } else {
                        pos = cur;
                        cur = j;
                    }
                }
            }
        }
        // Final vertical stretch: everything that still starts above the
        // followed line, nearest (largest in the start order) first.
        let mut rest: Vec<LineId> = members
            .iter()
            .copied()
            .filter(|&a| a != cur && view.precedes(a, cur))
            .collect();
        rest.sort_by(|&a, &b| {
            if view.precedes(a, b) {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Less
            }
        });
        events.extend(rest);
        events
    };

    let north = walk(true);
    let south = walk(false);

    let mut order: Vec<LineId> = north.iter().rev().copied().collect();
    order.push(p);
    order.push(q);
    order.extend(south.iter().copied());
    assert_eq!(order.len(), members.len(), "gamma must cross each line once");
    let mut seen = std::collections::HashSet::new();
    for l in &order {
        assert!(seen.insert(*l), "line {l} crossed twice by gamma");
    }
    GammaOrder { crossing: c, order }
}

/// Rank of `m` within `subset` along the pseudo-vertical through `c`, for a
/// line above the crossing, in O(|L| + |subset|) queries.
pub fn rank_above<A: Arrangement + ?Sized>(
    view: &A,
    c: Crossing,
    m: LineId,
    subset: &[LineId],
) -> Result<usize, RankError> {
    let (p, _) = view.oriented(c);
    if c.contains(m) || view.below_crossing(m, c) {
        return Err(RankError::NotAbove(m));
    }
    let l = l_set(view, c);
    let mut support = l.members.clone();
    support.push(p);
    Ok(rank_above_within(view, m, subset, &support))
}

/// The support line through which `m` leaves the upper envelope of
/// `support`, or `None` when `m` starts above all of it. Support crossings
/// with lines starting below `m` lie right of the defining crossing and are
/// never the exit, so only lines preceding `m` are scanned.
pub fn envelope_exit<A: Arrangement + ?Sized>(
    view: &A,
    m: LineId,
    support: &[LineId],
) -> Option<LineId> {
    let ahead: Vec<LineId> = support
        .iter()
        .copied()
        .filter(|&a| view.precedes(a, m))
        .collect();
    if ahead.is_empty() {
        None
    } else {
        Some(last_crossing_on(view, m, &ahead))
    }
}

/// Rank of `m` within `subset` along a pseudo-vertical whose northbound
/// support set is `support` (the current L(pq) plus the lower crossing
/// line), for `m` above the crossing.
pub fn rank_above_within<A: Arrangement + ?Sized>(
    view: &A,
    m: LineId,
    subset: &[LineId],
    support: &[LineId],
) -> usize {
    match envelope_exit(view, m, support) {
        None => {
            // m never meets the supporting envelope: its rank is its
            // position in the start order.
            let before = subset
                .iter()
                .filter(|&&a| a != m && view.precedes(a, m))
                .count();
            before + 1
        }
        Some(e) => {
            let exit = Crossing::new(e, m);
            let above = subset
                .iter()
                .filter(|&&a| a != m && a != e && !view.below_crossing(a, exit))
                .count();
            above + 1
        }
    }
}

/// Position of crossing `c2` relative to the pseudo-vertical through `c1`.
/// Linear queries in the worst case, constant for the quadrant cases.
pub fn compare_pseudo_verticals<A: Arrangement + ?Sized>(
    view: &A,
    c1: Crossing,
    c2: Crossing,
) -> Side {
    assert_ne!(c1, c2);
    let (p, q) = view.oriented(c1);
    let (r, s) = view.oriented(c2);

    // Crossings sharing a line are ordered along it.
    if c1.contains(r) || c1.contains(s) {
        let g = if c1.contains(r) { r } else { s };
        let a = c1.other(g);
        let b = c2.other(g);
        return if view.crossing_precedes_on(b, g, a) {
            Side::Left
        } else {
            Side::Right
        };
    }

    let c2_above_p = view.below_crossing(p, c2);
    let c2_above_q = view.below_crossing(q, c2);
    if !c2_above_p && c2_above_q {
        return Side::Left; // c2 in the left quadrant of c1
    }
    if c2_above_p && !c2_above_q {
        return Side::Right;
    }
    let c1_above_r = view.below_crossing(r, c1);
    let c1_above_s = view.below_crossing(s, c1);
    if !c1_above_r && c1_above_s {
        return Side::Right; // c1 in the left quadrant of c2
    }
    if c1_above_r && !c1_above_s {
        return Side::Left;
    }

    if c2_above_p && c2_above_q {
        // c2 in the upper quadrant of c1.
        if c1_above_r && c1_above_s {
            return if view.precedes(r, p) {
                Side::Left
            } else {
                Side::Right
            };
        }
        // c1 in the lower quadrant of c2: c2 is left of the vertical exactly
        // when some supporting line of the northbound ray passes above it.
        for &a in &l_set(view, c1).members {
            if c2.contains(a) {
                continue;
            }
            if !view.below_crossing(a, c2) {
                return Side::Left;
            }
        }
        Side::Right
    } else {
        // c2 in the lower quadrant of c1: rotate the arrangement by 180°,
        // which exchanges left and right, and replay the upper-quadrant
        // logic with negated below-tests.
        if !c1_above_r && !c1_above_s {
            return if view.precedes(r, p) {
                Side::Right
            } else {
                Side::Left
            };
        }
        for &a in view.members() {
            if c1.contains(a) || c2.contains(a) {
                continue;
            }
            if !view.below_crossing(a, c1) && view.precedes(a, p) && view.below_crossing(a, c2) {
                return Side::Right;
            }
        }
        Side::Left
    }
}

/// Total order on crossings induced by their pseudo-verticals.
pub fn sweep_cmp<A: Arrangement + ?Sized>(
    view: &A,
    c1: Crossing,
    c2: Crossing,
) -> std::cmp::Ordering {
    if c1 == c2 {
        return std::cmp::Ordering::Equal;
    }
    match compare_pseudo_verticals(view, c1, c2) {
        Side::Left => std::cmp::Ordering::Greater,
        Side::Right => std::cmp::Ordering::Less,
    }
}

/// Extracts the wiring diagram of the view by replaying all crossings in
/// pseudo-vertical order; each one must swap adjacent wires. Returns the
/// diagram and the map from wire index (start order) to line id. Quadratic
/// number of crossings with a linear comparator; this is a certification
/// and fixture tool, not a production path.
pub fn wiring_from_view<A: Arrangement + ?Sized>(view: &A) -> (WiringDiagram, Vec<LineId>) {
    let members = view.members().to_vec();
    let n = members.len();
    let mut wires = members.clone();
    wires.sort_by(|&a, &b| {
        if view.precedes(a, b) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let mut crossings = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            crossings.push(Crossing::new(members[i], members[j]));
        }
    }
    crossings.sort_by(|&a, &b| sweep_cmp(view, a, b));
    let mut track_of = vec![0usize; n];
    let mut track_line: Vec<LineId> = wires.clone();
    for (t, &w) in wires.iter().enumerate() {
        track_of[w.idx()] = t;
    }
    let mut swaps = Vec::with_capacity(crossings.len());
    for c in crossings {
        let (a, b) = c.lines();
        let (ta, tb) = (track_of[a.idx()], track_of[b.idx()]);
        let top = ta.min(tb);
        assert_eq!(
            ta.max(tb),
            top + 1,
            "pseudo-vertical order is not a valid sweep at {c}"
        );
        swaps.push(top + 1);
        track_of.swap(a.idx(), b.idx());
        track_line.swap(top, top + 1);
    }
    let diagram = WiringDiagram::new(n, swaps).expect("replayed sweep is a valid diagram");
    (diagram, wires)
}

// ---------------------------------------------------------------------------
// selection

/// Cut-off below which the residual sub-arrangement is solved by the
/// reference traversal.
const SELECT_CUTOFF: usize = 8;

#[derive(Clone, Copy)]
enum PivotRule {
    Random,
    MedianOfMedians,
}

fn median5<T: Copy, L: Fn(T, T) -> bool>(chunk: &[T], less: &L) -> T {
    let mut v: Vec<T> = chunk.to_vec();
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && less(v[j], v[j - 1]) {
            v.swap(j, j - 1);
            j -= 1;
        }
    }
    v[(v.len() - 1) / 2]
}

fn median_of_medians<T: Copy, L: Fn(T, T) -> bool>(items: &[T], less: &L) -> T {
    if items.len() <= 5 {
        return median5(items, less);
    }
    let medians: Vec<T> = items.chunks(5).map(|ch| median5(ch, less)).collect();
    median_of_medians(&medians, less)
}

/// k-th smallest (1-based) under a strict total order.
fn select_kth_by<T: Copy + PartialEq, L: Fn(T, T) -> bool>(
    mut items: Vec<T>,
    mut k: usize,
    less: &L,
    rule: PivotRule,
    rng: &mut ChaCha8Rng,
) -> T {
    assert!(k >= 1 && k <= items.len());
    loop {
        if items.len() <= 5 {
            return median_sorted(items, k, less);
        }
        let pivot = match rule {
            PivotRule::Random => items[rng.random_range(0..items.len())],
            PivotRule::MedianOfMedians => median_of_medians(&items, less),
        };
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for &it in &items {
            if it == pivot {
                continue;
            }
            if less(it, pivot) {
                lo.push(it);
            } else {
                hi.push(it);
            }
        }
        if k <= lo.len() {
            items = lo;
        } else if k == lo.len() + 1 {
            return pivot;
        } else {
            k -= lo.len() + 1;
            items = hi;
        }
    }
}

fn median_sorted<T: Copy, L: Fn(T, T) -> bool>(mut v: Vec<T>, k: usize, less: &L) -> T {
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && less(v[j], v[j - 1]) {
            v.swap(j, j - 1);
            j -= 1;
        }
    }
    v[k - 1]
}

/// The unique `m ∈ subset` whose rank along the pseudo-vertical through
/// `query.crossing` is `query.k`, using only sidedness queries. The
/// randomized strategy runs in expected linear queries; the deterministic
/// one trades the random pivots for median-of-medians, the identity
/// range-space approximation and an explicit envelope walk, staying
/// quadratic in the worst case at this scale.
pub fn select_rank<A: Arrangement + ?Sized>(
    view: &A,
    query: &RankQuery,
    strategy: Strategy,
    seed: u64,
) -> Result<LineId, RankError> {
    let mut subset = query.subset.clone();
    subset.sort_unstable();
    subset.dedup();
    let n = subset.len();
    if query.k < 1 || query.k > n {
        return Err(RankError::RankOutOfRange { k: query.k, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = query.crossing;
    let (p, q) = view.oriented(c);
    let above: Vec<LineId> = subset
        .iter()
        .copied()
        .filter(|&b| !c.contains(b) && !view.below_crossing(b, c))
        .collect();
    let t = above.len();
    if query.k <= t {
        return Ok(select_above(view, c, above, query.k, strategy, &mut rng));
    }
    let mut idx = t;
    if subset.contains(&p) {
        idx += 1;
        if query.k == idx {
            return Ok(p);
        }
    }
    if subset.contains(&q) {
        idx += 1;
        if query.k == idx {
            return Ok(q);
        }
    }
    let below: Vec<LineId> = subset
        .iter()
        .copied()
        .filter(|&b| !c.contains(b) && view.below_crossing(b, c))
        .collect();
    let j = query.k - idx;
    // South side by 180° rotation: the j-th below-member from the crossing
    // is the (|below|+1-j)-th above-member of the rotated arrangement.
    let rot = Rotated(view);
    let jr = below.len() + 1 - j;
    Ok(select_above(&rot, c, below, jr, strategy, &mut rng))
}

/// Selection among lines strictly above the crossing, 1-based rank `j`.
fn select_above<A: Arrangement + ?Sized>(
    view: &A,
    c: Crossing,
    mut u_set: Vec<LineId>,
    mut j: usize,
    strategy: Strategy,
    rng: &mut ChaCha8Rng,
) -> LineId {
    let (p, q) = view.oriented(c);
    let mut l = l_set(view, c).members;
    debug_assert!(j >= 1 && j <= u_set.len());

    let rule = match strategy {
        Strategy::Randomized => PivotRule::Random,
        Strategy::Deterministic => PivotRule::MedianOfMedians,
    };
    let less_prec = |a: LineId, b: LineId| view.precedes(a, b);

    // Early exit: lines starting above the whole support envelope occupy the
    // top ranks in start order.
    {
        let mut support = l.clone();
        support.push(p);
        let lstar = min_by_precedes(view, &support);
        let high: Vec<LineId> = u_set
            .iter()
            .copied()
            .filter(|&u| view.precedes(u, lstar))
            .collect();
        if j <= high.len() {
            return select_kth_by(high, j, &less_prec, rule, rng);
        }
        j -= high.len();
        u_set.retain(|u| !high.contains(u));
    }

    loop {
        debug_assert!(j >= 1 && j <= u_set.len());
        if u_set.len() + l.len() <= SELECT_CUTOFF {
            let mut mem = u_set.clone();
            mem.extend_from_slice(&l);
            mem.push(p);
            mem.push(q);
            let sub = Restricted::new(view, mem);
            let gamma = gamma_traversal(&sub, c);
            return gamma.nth_within(&u_set, j);
        }
        if l.len() >= u_set.len() {
            prune_support(view, c, &u_set, &mut l, j, rule, rng);
        } else {
            prune_candidates(view, p, &mut u_set, &mut j, &l, strategy, rng);
        }
    }
}

/// Rank of `u` within `u_set` via its envelope exit, without materializing
/// the split.
fn rank_in_u<A: Arrangement + ?Sized>(
    view: &A,
    p: LineId,
    u: LineId,
    u_set: &[LineId],
    l: &[LineId],
) -> usize {
    let mut support = l.to_vec();
    support.push(p);
    rank_above_within(view, u, u_set, &support)
}

/// One pruning round on the candidate set `u_set`: pick a splitter, locate
/// its envelope exit, keep the side that still contains the target rank.
fn prune_candidates<A: Arrangement + ?Sized>(
    view: &A,
    p: LineId,
    u_set: &mut Vec<LineId>,
    j: &mut usize,
    l: &[LineId],
    strategy: Strategy,
    rng: &mut ChaCha8Rng,
) {
    let mut support = l.to_vec();
    support.push(p);
    let splitter = match strategy {
        Strategy::Randomized => u_set[rng.random_range(0..u_set.len())],
        Strategy::Deterministic => {
            // Approximate the semispace range space of the candidates and
            // take the member of median rank; at this scale the verified
            // approximation is the identity, so the split is exact.
            let space = RangeSpace {
                kind: RangeKind::Semispace,
                ground: u_set.clone(),
            };
            let approx = build_eps_approx(view, &space, Eps::new(1, 12), 0);
            let ranked: Vec<(usize, LineId)> = approx
                .subset
                .iter()
                .map(|&o| (rank_in_u(view, p, o, u_set, l), o))
                .collect();
            let mid = ranked.len().div_ceil(2);
            select_kth_by(ranked, mid, &|a, b| a.0 < b.0, PivotRule::MedianOfMedians, rng).1
        }
    };
    let (rank, above): (usize, Vec<LineId>) = match envelope_exit(view, splitter, &support) {
        None => {
            let above: Vec<LineId> = u_set
                .iter()
                .copied()
                .filter(|&a| a != splitter && view.precedes(a, splitter))
                .collect();
            (above.len() + 1, above)
        }
        Some(e) => {
            let exit = Crossing::new(e, splitter);
            let above: Vec<LineId> = u_set
                .iter()
                .copied()
                .filter(|&a| a != splitter && a != e && !view.below_crossing(a, exit))
                .collect();
            (above.len() + 1, above)
        }
    };
    if *j == rank {
        *u_set = vec![splitter];
        *j = 1;
    } else if *j < rank {
        *u_set = above;
    } else {
        let above_set: std::collections::HashSet<LineId> = above.into_iter().collect();
        u_set.retain(|&a| a != splitter && !above_set.contains(&a));
        *j -= rank;
    }
}

/// One pruning round on the support set L(pq): median split along `p`,
/// discard dominated members, find the bridge crossing of the two halves on
/// the upper envelope and keep the half the target's exit lies on.
fn prune_support<A: Arrangement + ?Sized>(
    view: &A,
    c: Crossing,
    u_set: &[LineId],
    l: &mut Vec<LineId>,
    j: usize,
    rule: PivotRule,
    rng: &mut ChaCha8Rng,
) {
    let (p, _) = view.oriented(c);
    if l.len() == 1 {
        // A single support line cannot be pruned further; fall back to the
        // candidate side (caller alternates).
        return;
    }
    let on_p = |a: LineId, b: LineId| view.crossing_precedes_on(a, p, b);
    let med = select_kth_by(l.clone(), l.len().div_ceil(2), &on_p, rule, rng);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &a in l.iter() {
        if a != med && on_p(a, med) {
            left.push(a);
        } else {
            right.push(a);
        }
    }
    let rstar = min_by_precedes(view, &right);
    left.retain(|&a| view.precedes(a, rstar));
    if left.is_empty() {
        *l = right;
        return;
    }
    let (v, w) = match rule {
        PivotRule::Random => bridge_randomized(view, &left, &right, rng),
        PivotRule::MedianOfMedians => bridge_walk(view, c, &left, &right),
    };
    let bridge = Crossing::new(v, w);
    let lv = u_set
        .iter()
        .filter(|&&u| !view.below_crossing(u, bridge))
        .count();
    if j <= lv {
        *l = left;
    } else {
        *l = right;
    }
}

/// Randomized bridge finding: tournament pruning on whichever half is
/// larger, expected linear queries in |left| + |right|.
fn bridge_randomized<A: Arrangement + ?Sized>(
    view: &A,
    left: &[LineId],
    right: &[LineId],
    rng: &mut ChaCha8Rng,
) -> (LineId, LineId) {
    let mut lc = left.to_vec();
    let mut rc = right.to_vec();
    while lc.len() > 1 || rc.len() > 1 {
        if rc.len() >= lc.len() {
            let r = rc[rng.random_range(0..rc.len())];
            let lhat = last_crossing_on(view, r, &lc);
            rc.retain(|&r2| r2 == r || view.crossing_precedes_on(r2, lhat, r));
        } else {
            let lpick = lc[rng.random_range(0..lc.len())];
            let rhat = first_crossing_on(view, lpick, &rc);
            lc.retain(|&l2| l2 == lpick || view.crossing_precedes_on(lpick, rhat, l2));
        }
    }
    (lc[0], rc[0])
}

/// Deterministic fallback: walk the upper envelope of L(pq) ∪ {p} leftwards
/// from the crossing until it hands over from the right half to the left
/// half. Quadratic in |L| but free of randomness.
fn bridge_walk<A: Arrangement + ?Sized>(
    view: &A,
    c: Crossing,
    left: &[LineId],
    right: &[LineId],
) -> (LineId, LineId) {
    let (p, q) = view.oriented(c);
    let mut cur = p;
    let mut pos = q;
    loop {
        let mut best: Option<LineId> = None;
        for &cand in left.iter().chain(right.iter()).chain(std::iter::once(&p)) {
            if cand == cur || cand == pos {
                continue;
            }
            if !view.crossing_precedes_on(cand, cur, pos) {
                continue;
            }
            best = match best {
                None => Some(cand),
                Some(b) => Some(if view.crossing_precedes_on(b, cur, cand) {
                    cand
                } else {
                    b
                }),
            };
        }
        let next = best.expect("envelope reaches the left half");
        debug_assert!(
            view.precedes(next, cur),
            "support members only take over from above"
        );
        if left.contains(&next) {
            assert!(
                cur == p || right.contains(&cur),
                "envelope hand-over must come from the right half"
            );
            return (next, cur);
        }
        pos = cur;
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::ArrangementView;
    use crate::chirotope::{
        non_pappus_table, random_wiring, table_from_wiring, tri3, wiring_gamma, PointId,
        TripleOracle,
    };

    fn tri3_view(ps: &dyn TripleOracle) -> ArrangementView<'_> {
        ArrangementView::with_extreme(ps, PointId(1))
    }

    #[test]
    fn tri3_gamma_orders() {
        let ps = tri3();
        let view = tri3_view(&ps);
        let (a, b, c) = (PointId(0), PointId(1), PointId(2));
        let g_ac = gamma_traversal(&view, Crossing::new(a, c));
        assert_eq!(g_ac.order(), &[a, c, b]);
        let g_bc = gamma_traversal(&view, Crossing::new(b, c));
        assert_eq!(g_bc.order(), &[a, b, c]);
        let g_ab = gamma_traversal(&view, Crossing::new(a, b));
        assert_eq!(g_ab.order(), &[b, a, c]);
    }

    #[test]
    fn tri3_l_sets() {
        let ps = tri3();
        let view = tri3_view(&ps);
        let (a, b, c) = (PointId(0), PointId(1), PointId(2));
        assert_eq!(l_set(&view, Crossing::new(a, c)).members, vec![b]);
        assert!(l_set(&view, Crossing::new(a, b)).members.is_empty());
        assert!(l_set(&view, Crossing::new(b, c)).members.is_empty());
    }

    #[test]
    fn tri3_rank_above() {
        let ps = tri3();
        let view = tri3_view(&ps);
        let (a, b, c) = (PointId(0), PointId(1), PointId(2));
        let all = vec![a, b, c];
        assert_eq!(rank_above(&view, Crossing::new(b, c), a, &all), Ok(1));
        assert_eq!(
            rank_above(&view, Crossing::new(a, c), b, &all),
            Err(RankError::NotAbove(b))
        );
    }

    #[test]
    fn rank_above_matches_gamma_on_random_tables() {
        for seed in 0..8 {
            let w = random_wiring(9, seed);
            let table = table_from_wiring(&w).unwrap();
            let view = ArrangementView::new(&table);
            let all: Vec<LineId> = (0..9).map(PointId).collect();
            for u in 0..9u32 {
                for v in u + 1..9 {
                    let c = Crossing::new(PointId(u), PointId(v));
                    let gamma = gamma_traversal(&view, c);
                    for &m in &all {
                        if c.contains(m) || view.below_crossing(m, c) {
                            continue;
                        }
                        assert_eq!(
                            rank_above(&view, c, m, &all).unwrap(),
                            gamma.rank(m),
                            "seed={seed} c={c} m={m}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_agrees_with_wiring_walk() {
        // The oracle view redraws the arrangement around its extreme
        // element, so the comparison runs on the view's own diagram: extract
        // it by the sweep, then trace the pseudo-vertical cell walk there.
        for seed in 0..12 {
            let w = random_wiring(8, seed);
            let table = table_from_wiring(&w).unwrap();
            let view = ArrangementView::new(&table);
            let (diagram, wires) = wiring_from_view(&view);
            let wire_of = |id: PointId| {
                PointId(wires.iter().position(|&x| x == id).unwrap() as u32)
            };
            for a in 0..8u32 {
                for b in a + 1..8 {
                    let (a, b) = (PointId(a), PointId(b));
                    let walk = wiring_gamma(&diagram, wire_of(a), wire_of(b));
                    let mapped: Vec<PointId> =
                        walk.order.iter().map(|&w| wires[w.idx()]).collect();
                    let gamma = gamma_traversal(&view, Crossing::new(a, b));
                    assert_eq!(gamma.order(), &mapped[..], "seed={seed} {a}x{b}");
                }
            }
        }
    }

    #[test]
    fn tri3_compare_and_sweep() {
        let ps = tri3();
        let view = tri3_view(&ps);
        let (a, b, c) = (PointId(0), PointId(1), PointId(2));
        let ab = Crossing::new(a, b);
        let bc = Crossing::new(b, c);
        let ac = Crossing::new(a, c);
        // x-order of the straight-line crossings: ab (x=1), bc (2), ac (3).
        assert_eq!(compare_pseudo_verticals(&view, ab, bc), Side::Right);
        assert_eq!(compare_pseudo_verticals(&view, bc, ab), Side::Left);
        assert_eq!(compare_pseudo_verticals(&view, ab, ac), Side::Right);
        let mut all = vec![ac, ab, bc];
        all.sort_by(|&x, &y| sweep_cmp(&view, x, y));
        assert_eq!(all, vec![ab, bc, ac]);
    }

    #[test]
    fn sweep_order_is_antisymmetric_and_replayable() {
        for seed in 0..6 {
            let w = random_wiring(9, seed);
            let table = table_from_wiring(&w).unwrap();
            let view = ArrangementView::new(&table);
            let mut crossings = Vec::new();
            for u in 0..9u32 {
                for v in u + 1..9 {
                    crossings.push(Crossing::new(PointId(u), PointId(v)));
                }
            }
            for &c1 in &crossings {
                for &c2 in &crossings {
                    if c1 == c2 {
                        continue;
                    }
                    // c2 left of the vertical through c1 iff c1 right of the
                    // vertical through c2.
                    assert_ne!(
                        compare_pseudo_verticals(&view, c1, c2),
                        compare_pseudo_verticals(&view, c2, c1),
                        "antisymmetry seed={seed} {c1} {c2}"
                    );
                }
            }
            // Replay validates adjacency of every swap.
            let (_, wires) = wiring_from_view(&view);
            assert_eq!(wires.len(), 9);
        }
    }

    #[test]
    fn wiring_round_trip_reproduces_oracle() {
        for seed in [1u64, 5, 9] {
            let w = random_wiring(7, seed);
            let table = table_from_wiring(&w).unwrap();
            let view = ArrangementView::new(&table);
            let (diagram, wires) = wiring_from_view(&view);
            let table2 = table_from_wiring(&diagram).unwrap();
            for a in 0..7u32 {
                for b in 0..7 {
                    for c in 0..7 {
                        if a == b || b == c || a == c {
                            continue;
                        }
                        assert_eq!(
                            table2.orient(PointId(a), PointId(b), PointId(c)),
                            table.orient(wires[a as usize], wires[b as usize], wires[c as usize])
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn select_rank_matches_gamma_small() {
        let strategies = [Strategy::Randomized, Strategy::Deterministic];
        for seed in 0..4 {
            let w = random_wiring(8, seed);
            let table = table_from_wiring(&w).unwrap();
            let view = ArrangementView::new(&table);
            let all: Vec<LineId> = (0..8).map(PointId).collect();
            for u in 0..8u32 {
                for v in u + 1..8 {
                    let c = Crossing::new(PointId(u), PointId(v));
                    let gamma = gamma_traversal(&view, c);
                    for k in 1..=8 {
                        for &s in &strategies {
                            let q = RankQuery {
                                crossing: c,
                                subset: all.clone(),
                                k,
                            };
                            assert_eq!(
                                select_rank(&view, &q, s, seed ^ 77).unwrap(),
                                gamma.order()[k - 1],
                                "seed={seed} c={c} k={k} strategy={s:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn select_rank_on_subsets_and_larger_instances() {
        use rand::seq::IteratorRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for n in [24usize, 48] {
            let w = random_wiring(n, 1234 + n as u64);
            let table = table_from_wiring(&w).unwrap();
            let view = ArrangementView::new(&table);
            for trial in 0..12 {
                let u = rng.random_range(0..n as u32);
                let mut v = rng.random_range(0..n as u32);
                while v == u {
                    v = rng.random_range(0..n as u32);
                }
                let c = Crossing::new(PointId(u), PointId(v));
                let subset: Vec<LineId> = (0..n as u32)
                    .map(PointId)
                    .choose_multiple(&mut rng, n / 2 + 3);
                let gamma = gamma_traversal(&view, c);
                let k = rng.random_range(1..=subset.len());
                let expect = gamma.nth_within(&subset, k);
                for s in [Strategy::Randomized, Strategy::Deterministic] {
                    let q = RankQuery {
                        crossing: c,
                        subset: subset.clone(),
                        k,
                    };
                    assert_eq!(
                        select_rank(&view, &q, s, trial).unwrap(),
                        expect,
                        "n={n} trial={trial} {s:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn select_rank_rejects_bad_ranks() {
        let ps = tri3();
        let view = tri3_view(&ps);
        let q = RankQuery {
            crossing: Crossing::new(PointId(0), PointId(2)),
            subset: vec![PointId(0), PointId(1), PointId(2)],
            k: 0,
        };
        assert!(matches!(
            select_rank(&view, &q, Strategy::Randomized, 0),
            Err(RankError::RankOutOfRange { .. })
        ));
        let q4 = RankQuery { k: 4, ..q.clone() };
        assert!(select_rank(&view, &q4, Strategy::Randomized, 0).is_err());
    }

    #[test]
    fn select_rank_pair_subset() {
        let ps = tri3();
        let view = tri3_view(&ps);
        let c = Crossing::new(PointId(0), PointId(2));
        for (k, expect) in [(1, PointId(0)), (2, PointId(2))] {
            let q = RankQuery {
                crossing: c,
                subset: vec![PointId(0), PointId(2)],
                k,
            };
            assert_eq!(select_rank(&view, &q, Strategy::Deterministic, 0), Ok(expect));
        }
    }

    #[test]
    fn non_pappus_select_rank_matches_gamma() {
        let table = non_pappus_table();
        let view = ArrangementView::new(&table);
        let all: Vec<LineId> = (0..9).map(PointId).collect();
        for u in 0..9u32 {
            for v in u + 1..9 {
                let c = Crossing::new(PointId(u), PointId(v));
                let gamma = gamma_traversal(&view, c);
                for k in [1usize, 4, 5, 9] {
                    for s in [Strategy::Randomized, Strategy::Deterministic] {
                        let q = RankQuery {
                            crossing: c,
                            subset: all.clone(),
                            k,
                        };
                        assert_eq!(select_rank(&view, &q, s, 3).unwrap(), gamma.order()[k - 1]);
                    }
                }
            }
        }
    }

    #[test]
    fn last_crossing_scans() {
        let ps = tri3();
        let view = tri3_view(&ps);
        let (a, b, c) = (PointId(0), PointId(1), PointId(2));
        // Singleton set.
        assert_eq!(last_crossing_on(&view, a, &[b]), b);
        // On line a the crossings are ab (x=1) then ac (x=3).
        assert_eq!(last_crossing_on(&view, a, &[b, c]), c);
        assert_eq!(first_crossing_on(&view, a, &[b, c]), b);
    }
}
