//! Wiring diagrams (abstract order types as sequences of adjacent
//! transpositions), the triple table derived from them, and an explicit
//! gamma walk on the diagram that serves as an oracle-free reference.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ChirotopeError, Orientation, PointId, RealizedPointSet, TripleOracle};

/// A simple pseudo-line arrangement drawn as `n` wires on horizontal tracks.
/// `swaps[t]` is the 1-based slot (from the top) of the adjacent
/// transposition performed at step `t`. Wire `i` is the one that starts on
/// track `i` (0 = topmost), which is also the `≺`-order of the arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WiringDiagram {
    n: usize,
    swaps: Vec<usize>,
}

impl WiringDiagram {
    /// Validates that the swaps realize the full reversal with every wire
    /// pair crossing exactly once.
    pub fn new(n: usize, swaps: Vec<usize>) -> Result<Self, ChirotopeError> {
        if n < 2 {
            return Err(ChirotopeError::InvalidWiring(format!(
                "need at least 2 wires, got {n}"
            )));
        }
        let expected = n * (n - 1) / 2;
        if swaps.len() != expected {
            return Err(ChirotopeError::InvalidWiring(format!(
                "expected {expected} swaps for {n} wires, got {}",
                swaps.len()
            )));
        }
        let mut perm: Vec<u32> = (0..n as u32).collect();
        for (step, &slot) in swaps.iter().enumerate() {
            if slot < 1 || slot > n - 1 {
                return Err(ChirotopeError::InvalidWiring(format!(
                    "swap {step} at slot {slot} is out of range 1..={}",
                    n - 1
                )));
            }
            let i = slot - 1;
            let (u, v) = (perm[i], perm[i + 1]);
            if u > v {
                return Err(ChirotopeError::InvalidWiring(format!(
                    "swap {step} at slot {slot} crosses wires {v} and {u} a second time"
                )));
            }
            perm.swap(i, i + 1);
        }
        // n(n-1)/2 swaps without a repeat cross every pair once, so the final
        // permutation is the reversal.
        debug_assert!(perm.windows(2).all(|w| w[0] > w[1]));
        Ok(WiringDiagram { n, swaps })
    }

    pub fn wires(&self) -> usize {
        self.n
    }

    pub fn swaps(&self) -> &[usize] {
        &self.swaps
    }

    /// Permutations (top-to-bottom wire ids) after each step; index 0 is the
    /// start order.
    pub fn permutations(&self) -> Vec<Vec<u32>> {
        let mut perms = Vec::with_capacity(self.swaps.len() + 1);
        let mut perm: Vec<u32> = (0..self.n as u32).collect();
        perms.push(perm.clone());
        for &slot in &self.swaps {
            perm.swap(slot - 1, slot);
            perms.push(perm.clone());
        }
        perms
    }

    /// 1-based step at which wires `a` and `b` cross.
    pub fn crossing_step(&self, a: PointId, b: PointId) -> usize {
        let mut perm: Vec<u32> = (0..self.n as u32).collect();
        for (step, &slot) in self.swaps.iter().enumerate() {
            let i = slot - 1;
            let (u, v) = (perm[i], perm[i + 1]);
            if (u == a.0 && v == b.0) || (u == b.0 && v == a.0) {
                return step + 1;
            }
            perm.swap(i, i + 1);
        }
        panic!("wires {a} and {b} never cross; invalid diagram");
    }
}

fn c3(m: usize) -> usize {
    if m < 3 {
        0
    } else {
        m * (m - 1) * (m - 2) / 6
    }
}

/// Chirotope stored as one canonical sign per 3-subset; other orderings are
/// derived by alternation. Has no coordinate accessor by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleTable {
    n: usize,
    /// `true` means ccw for the ascending triple.
    signs: Vec<bool>,
}

impl TripleTable {
    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < j && j < k && k < self.n);
        let mut idx = c3(self.n) - c3(self.n - i);
        for b in i + 1..j {
            idx += self.n - 1 - b;
        }
        idx + (k - j - 1)
    }

    fn from_signs(n: usize, signs: Vec<bool>) -> Self {
        assert_eq!(signs.len(), c3(n));
        TripleTable { n, signs }
    }

    /// Builds a table directly from an orientation predicate on ascending
    /// triples.
    pub fn from_fn(n: usize, mut ccw: impl FnMut(usize, usize, usize) -> bool) -> Self {
        let mut signs = Vec::with_capacity(c3(n));
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    signs.push(ccw(i, j, k));
                }
            }
        }
        TripleTable::from_signs(n, signs)
    }
}

impl TripleOracle for TripleTable {
    fn size(&self) -> usize {
        self.n
    }

    fn orient(&self, a: PointId, b: PointId, c: PointId) -> Orientation {
        let (a, b, c) = (a.idx(), b.idx(), c.idx());
        assert!(a != b && b != c && a != c, "triple must be distinct");
        // Sort the triple, tracking permutation parity.
        let mut t = [a, b, c];
        let mut odd = false;
        if t[0] > t[1] {
            t.swap(0, 1);
            odd = !odd;
        }
        if t[1] > t[2] {
            t.swap(1, 2);
            odd = !odd;
        }
        if t[0] > t[1] {
            t.swap(0, 1);
            odd = !odd;
        }
        let ccw = self.signs[self.index(t[0], t[1], t[2])];
        match ccw != odd {
            true => Orientation::Ccw,
            false => Orientation::Cw,
        }
    }
}

/// Simulates the diagram and records, for every crossing `pq` with `p ≺ q`,
/// which wires run below it. That fixes the chirotope: `P(p,q,r)` holds iff
/// `r` is below the crossing `pq`.
pub fn table_from_wiring(w: &WiringDiagram) -> Result<TripleTable, ChirotopeError> {
    let n = w.wires();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    let mut pos: Vec<usize> = (0..n).collect();
    let mut signs: Vec<Option<bool>> = vec![None; c3(n)];
    let table = TripleTable::from_signs(n, vec![false; c3(n)]);
    for &slot in w.swaps() {
        let i = slot - 1;
        let (u, v) = (perm[i] as usize, perm[i + 1] as usize);
        debug_assert!(u < v, "diagram validated on construction");
        for r in 0..n {
            if r == u || r == v {
                continue;
            }
            let below = pos[r] > i + 1;
            // P(u, v, r) = below with u ≺ v; normalize to the ascending
            // triple by alternation.
            let (sorted, parity_odd) = if r < u {
                ((r, u, v), false) // (u,v,r) -> (r,u,v) is a rotation
            } else if r < v {
                ((u, r, v), true)
            } else {
                ((u, v, r), false)
            };
            let canonical = below != parity_odd;
            let idx = table.index(sorted.0, sorted.1, sorted.2);
            match signs[idx] {
                None => signs[idx] = Some(canonical),
                Some(prev) => assert_eq!(
                    prev, canonical,
                    "inconsistent orientation for triple {sorted:?}"
                ),
            }
        }
        perm.swap(i, i + 1);
        pos.swap(u, v);
    }
    let signs = signs
        .into_iter()
        .map(|s| s.expect("every triple is covered by some crossing"))
        .collect();
    Ok(TripleTable::from_signs(n, signs))
}

/// Uniform-ish random maximal chain: repeatedly swap a random adjacent slot
/// whose wires have not crossed yet. Deterministic under `seed`.
pub fn random_wiring(n: usize, seed: u64) -> WiringDiagram {
    assert!(n >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<u32> = (0..n as u32).collect();
    let mut swaps = Vec::with_capacity(n * (n - 1) / 2);
    loop {
        let candidates: Vec<usize> = (0..n - 1).filter(|&i| perm[i] < perm[i + 1]).collect();
        if candidates.is_empty() {
            break;
        }
        let i = candidates[rng.random_range(0..candidates.len())];
        swaps.push(i + 1);
        perm.swap(i, i + 1);
    }
    WiringDiagram::new(n, swaps).expect("maximal chains are valid diagrams")
}

/// Gamma traversal traced directly on the diagram: crossing order plus the
/// cell path of both rays, computed without any oracle. Reference data for
/// the query-driven implementation and for rendering.
pub struct WiringGamma {
    /// All wires in the order the pseudo-vertical crosses them, rank 1 first.
    pub order: Vec<PointId>,
    /// Northbound cell path as (step boundary, gap) pairs, 0-based; the ray
    /// sits above track `gap` just left of `step`.
    pub north_path: Vec<(usize, usize)>,
    /// Southbound path; the ray sits below track `gap` just right of `step`.
    pub south_path: Vec<(usize, usize)>,
}

/// Walks the pseudo-vertical through the crossing of wires `a`, `b` in the
/// diagram, asserting the level arithmetic at every crossed wire: the level
/// along the traversal increases by exactly one per crossing and every wire
/// is crossed exactly once.
pub fn wiring_gamma(w: &WiringDiagram, a: PointId, b: PointId) -> WiringGamma {
    let n = w.wires();
    let perms = w.permutations();
    let step = w.crossing_step(a, b);
    let slot0 = w.swaps()[step - 1] - 1; // 0-based upper track of the crossing
    let p = perms[step - 1][slot0];
    let q = perms[step - 1][slot0 + 1];

    // Northbound: hug the upper wire leftward, slightly above it.
    let mut north = Vec::new();
    let mut g = slot0; // hugging the wire at track g from above
    let mut north_path = vec![(step - 1, g)];
    for s in (1..step).rev() {
        let k = w.swaps()[s - 1] - 1;
        if g > 0 && k == g - 1 {
            // The wire at track g-1 right of the step rose through us.
            let crossed = perms[s][g - 1];
            north.push((crossed, g - 1));
            g -= 1;
        }
        // k == g switches the hugged wire; the gap is unchanged either way.
        north_path.push((s - 1, g));
    }
    // Vertical end: cross everything still above, nearest first.
    let mut north_events: Vec<PointId> = north.iter().map(|&(w, _)| PointId(w)).collect();
    for t in (0..g).rev() {
        north_events.push(PointId(perms[0][t]));
    }

    // Southbound: hug the upper wire rightward, slightly below it.
    let mut south = Vec::new();
    let mut t = slot0 + 1; // hugging the wire at track t from below
    let mut south_path = vec![(step, t)];
    for s in step + 1..=w.swaps().len() {
        let k = w.swaps()[s - 1] - 1;
        if k == t {
            // The wire below us rose through the ray.
            let crossed = perms[s - 1][t + 1];
            south.push((crossed, t));
            t += 1;
        }
        south_path.push((s, t));
    }
    let mut south_events: Vec<PointId> = south.iter().map(|&(w, _)| PointId(w)).collect();
    let last = perms.last().unwrap();
    for track in t + 1..n {
        south_events.push(PointId(last[track]));
    }

    // Assemble north-to-south and check the level arithmetic.
    let mut order: Vec<PointId> = north_events.iter().rev().copied().collect();
    let crossing_rank = order.len();
    order.push(PointId(p));
    order.push(PointId(q));
    order.extend(south_events.iter().copied());
    assert_eq!(order.len(), n, "gamma must cross every wire");
    let mut seen = vec![false; n];
    for id in &order {
        assert!(!seen[id.idx()], "wire {id} crossed twice");
        seen[id.idx()] = true;
    }
    // Crossed at a vertex at 0-based slot k: exactly k wires run strictly
    // above it, and the rank within gamma must match.
    assert_eq!(crossing_rank, slot0, "lines above the defining crossing");
    for (i, &(wire, vertex_slot)) in north.iter().enumerate() {
        let rank = order.iter().position(|&x| x.0 == wire).unwrap();
        assert_eq!(rank, vertex_slot, "northbound level step for wire {wire}");
        let _ = i;
    }
    for &(wire, vertex_slot) in &south {
        let rank = order.iter().position(|&x| x.0 == wire).unwrap();
        // The followed wire passes through the vertex and is crossed further
        // north, hence the +1.
        assert_eq!(rank, vertex_slot + 1, "southbound level step for wire {wire}");
    }
    WiringGamma {
        order,
        north_path,
        south_path,
    }
}

/// Wiring diagram of the straight-line dual arrangement of a realized point
/// set (dual of `(a,b)` is `y = a·x − b`). Requires pairwise distinct
/// x-coordinates so that all dual slopes differ. Returns the diagram plus
/// the map from wire index (start order, top first) to point id.
pub fn dual_wiring_of_points(
    ps: &RealizedPointSet,
) -> Result<(WiringDiagram, Vec<PointId>), ChirotopeError> {
    let n = ps.len();
    let mut by_slope: Vec<u32> = (0..n as u32).collect();
    by_slope.sort_by_key(|&i| ps.point(PointId(i)).0);
    for w in by_slope.windows(2) {
        if ps.point(PointId(w[0])).0 == ps.point(PointId(w[1])).0 {
            return Err(ChirotopeError::InvalidWiring(format!(
                "points {} and {} share an x-coordinate; dual lines are parallel",
                w[0], w[1]
            )));
        }
    }
    // Crossing of duals of points p, q happens at X = (p.y - q.y)/(p.x - q.x).
    let frac = |i: u32, j: u32| -> (i128, i128) {
        let p = ps.point(PointId(i));
        let q = ps.point(PointId(j));
        let num = (p.1 - q.1) as i128;
        let den = (p.0 - q.0) as i128;
        if den < 0 {
            (-num, -den)
        } else {
            (num, den)
        }
    };
    let mut crossings: Vec<(u32, u32)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            crossings.push((i, j));
        }
    }
    crossings.sort_by(|&(a, b), &(c, d)| {
        let (n1, d1) = frac(a, b);
        let (n2, d2) = frac(c, d);
        (n1 * d2).cmp(&(n2 * d1))
    });
    // Wire index of a point: its rank in slope order.
    let mut wire_of = vec![0usize; n];
    for (w, &pt) in by_slope.iter().enumerate() {
        wire_of[pt as usize] = w;
    }
    let mut track_of: Vec<usize> = (0..n).collect();
    let mut swaps = Vec::with_capacity(crossings.len());
    for &(i, j) in &crossings {
        let (wi, wj) = (wire_of[i as usize], wire_of[j as usize]);
        let (ti, tj) = (track_of[wi], track_of[wj]);
        let top = ti.min(tj);
        assert_eq!(
            ti.max(tj),
            top + 1,
            "crossing of non-adjacent wires; input not in general position"
        );
        swaps.push(top + 1);
        track_of.swap(wi, wj);
    }
    let diagram = WiringDiagram::new(n, swaps)?;
    let wire_to_point = by_slope.into_iter().map(PointId).collect();
    Ok((diagram, wire_to_point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chirotope::orient_realized;

    #[test]
    fn two_wire_diagram() {
        let w = WiringDiagram::new(2, vec![1]).unwrap();
        let table = table_from_wiring(&w).unwrap();
        assert_eq!(table.size(), 2);
        let g = wiring_gamma(&w, PointId(0), PointId(1));
        assert_eq!(g.order, vec![PointId(0), PointId(1)]);
    }

    #[test]
    fn pair_crossing_twice_is_invalid() {
        let err = WiringDiagram::new(3, vec![1, 1, 2]).unwrap_err();
        assert!(matches!(err, ChirotopeError::InvalidWiring(_)));
    }

    #[test]
    fn wrong_swap_count_is_invalid() {
        assert!(WiringDiagram::new(3, vec![1, 2]).is_err());
        assert!(WiringDiagram::new(1, vec![]).is_err());
    }

    #[test]
    fn random_wirings_are_valid_and_deterministic() {
        for n in 2..=9 {
            for seed in 0..20 {
                let w = random_wiring(n, seed);
                assert_eq!(w.swaps().len(), n * (n - 1) / 2);
                assert_eq!(w, random_wiring(n, seed));
            }
        }
        assert_eq!(random_wiring(2, 123).swaps(), &[1]);
    }

    #[test]
    fn three_wire_table_matches_straight_line_realization() {
        // Wires 0,1,2 of [1,2,1] realize as lines of slopes -1, 1, 3 dual to
        // the tri3 points. Orientation must match the primal determinant.
        let w = WiringDiagram::new(3, vec![1, 2, 1]).unwrap();
        let table = table_from_wiring(&w).unwrap();
        // wire 0 = (-1,-2), wire 1 = (1,0), wire 2 = (3,6)
        let ps = RealizedPointSet::new(vec![(-1, -2), (1, 0), (3, 6)]).unwrap();
        for &(a, b, c) in &[(0u32, 1u32, 2u32), (1, 0, 2), (2, 1, 0), (0, 2, 1)] {
            assert_eq!(
                table.orient(PointId(a), PointId(b), PointId(c)),
                orient_realized(&ps, PointId(a), PointId(b), PointId(c)).unwrap(),
                "triple ({a},{b},{c})"
            );
        }
    }

    #[test]
    fn dual_wiring_round_trips_to_determinant_signs() {
        // Exhaustive triples for several small realized sets.
        let sets = vec![
            vec![(1, 0), (-1, -2), (3, 6)],
            vec![(0, 0), (3, 1), (1, 4), (4, 4)],
            vec![(0, 0), (4, 1), (1, 5), (6, 4), (3, 9)],
            vec![(-5, 2), (-2, -7), (1, 3), (4, -1), (7, 8), (11, 0), (13, 21), (17, 5)],
        ];
        for pts in sets {
            let ps = RealizedPointSet::new(pts).unwrap();
            assert!(crate::chirotope::validate_general_position(&ps).is_empty());
            let (diagram, wire_to_point) = dual_wiring_of_points(&ps).unwrap();
            let table = table_from_wiring(&diagram).unwrap();
            let n = ps.len() as u32;
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if a == b || b == c || a == c {
                            continue;
                        }
                        let expected = orient_realized(
                            &ps,
                            wire_to_point[a as usize],
                            wire_to_point[b as usize],
                            wire_to_point[c as usize],
                        )
                        .unwrap();
                        assert_eq!(
                            table.orient(PointId(a), PointId(b), PointId(c)),
                            expected
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_walk_covers_every_wire_once() {
        for seed in 0..10 {
            let w = random_wiring(7, seed);
            for a in 0..7u32 {
                for b in a + 1..7 {
                    // Construction asserts the level arithmetic internally.
                    let g = wiring_gamma(&w, PointId(a), PointId(b));
                    assert_eq!(g.order.len(), 7);
                }
            }
        }
    }
}
