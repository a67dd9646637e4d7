//! Range spaces over the lines of an arrangement (semispaces and
//! pseudo-segment separators), epsilon-approximations of them, and the
//! sample-then-verify construction used by the deterministic pruning and the
//! interval subdivision.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{Arrangement, Crossing, LineId};

/// Exact rational epsilon in (0, 1), at least 1/64.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Eps {
    pub num: u64,
    pub den: u64,
}

impl Eps {
    pub fn new(num: u64, den: u64) -> Eps {
        assert!(num > 0 && num < den, "epsilon must lie in (0,1)");
        assert!(64 * num >= den, "epsilon below the 1/64 floor");
        Eps { num, den }
    }

    /// |a/at - x/xt| <= eps, compared exactly over integers. An empty
    /// approximation only covers empty ranges.
    fn within(self, a: usize, at: usize, x: usize, xt: usize) -> bool {
        if at == 0 {
            return x == 0;
        }
        let lhs = ((a as i128) * (xt as i128) - (x as i128) * (at as i128)).abs()
            * (self.den as i128);
        let rhs = (self.num as i128) * (at as i128) * (xt as i128);
        lhs <= rhs
    }

    /// Size cap for sampled approximations: ceil(48 eps^-2 ln(1/eps)).
    pub fn size_cap(self) -> usize {
        let e = self.num as f64 / self.den as f64;
        (48.0 * e.powi(-2) * (1.0 / e).ln()).ceil() as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RangeKind {
    /// Lines above (plus one defining line of) a crossing, and the below
    /// counterparts.
    Semispace,
    /// Lines separating two positions of the arrangement.
    PseudoSegment,
}

/// A range space over a ground set of lines of `view`.
#[derive(Clone, Debug)]
pub struct RangeSpace {
    pub kind: RangeKind,
    pub ground: Vec<LineId>,
}

#[derive(Clone, Debug)]
pub struct EpsApproximation {
    pub subset: Vec<LineId>,
    pub eps: Eps,
}

/// Above-status of `line` at a crossing, with the crossing's own lines
/// counted as not-above (the position is perturbed into the cell directly
/// above the crossing, which leaves both defining lines underneath).
pub fn above_position<A: Arrangement + ?Sized>(view: &A, line: LineId, z: Crossing) -> bool {
    if z.contains(line) {
        false
    } else {
        !view.below_crossing(line, z)
    }
}

/// Semispace ranges of the sub-arrangement on `subset`: for each pair
/// `f ≺ g`, the members above the crossing plus `f`, and the members below
/// plus `g`. Deduplicated; cubic work in |subset|.
pub fn enumerate_semispace_ranges<A: Arrangement + ?Sized>(
    view: &A,
    subset: &[LineId],
) -> Vec<Vec<LineId>> {
    let mut ranges: Vec<Vec<LineId>> = Vec::new();
    for (i, &a) in subset.iter().enumerate() {
        for &b in &subset[i + 1..] {
            let c = Crossing::new(a, b);
            let (f, g) = view.oriented(c);
            let mut up = vec![f];
            let mut down = vec![g];
            for &r in subset {
                if c.contains(r) {
                    continue;
                }
                if view.below_crossing(r, c) {
                    down.push(r);
                } else {
                    up.push(r);
                }
            }
            up.sort_unstable();
            down.sort_unstable();
            ranges.push(up);
            ranges.push(down);
        }
    }
    ranges.sort();
    ranges.dedup();
    ranges
}

/// Separator ranges: for each pair of positions, the ground lines whose
/// above-status differs between the two crossings.
pub fn enumerate_pseudo_segment_ranges<A: Arrangement + ?Sized>(
    view: &A,
    ground: &[LineId],
    positions: &[Crossing],
) -> Vec<Vec<LineId>> {
    let mut ranges = Vec::new();
    for (i, &z1) in positions.iter().enumerate() {
        for &z2 in &positions[i + 1..] {
            let mut r: Vec<LineId> = ground
                .iter()
                .copied()
                .filter(|&l| above_position(view, l, z1) != above_position(view, l, z2))
                .collect();
            r.sort_unstable();
            ranges.push(r);
        }
    }
    ranges.sort();
    ranges.dedup();
    ranges
}

fn all_crossings(members: &[LineId]) -> Vec<Crossing> {
    let mut out = Vec::with_capacity(members.len() * (members.len().saturating_sub(1)) / 2);
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            out.push(Crossing::new(a, b));
        }
    }
    out
}

/// Bitset of above-status per ground line at one position.
fn above_mask<A: Arrangement + ?Sized>(view: &A, lines: &[LineId], z: Crossing) -> Vec<u64> {
    let mut mask = vec![0u64; lines.len().div_ceil(64)];
    for (i, &l) in lines.iter().enumerate() {
        if above_position(view, l, z) {
            mask[i / 64] |= 1 << (i % 64);
        }
    }
    mask
}

fn xor_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones() as usize).sum()
}

/// Exhaustively checks the approximation inequality over the enumerated
/// ranges. Semispace spaces check all pairs of the ground set; separator
/// spaces check all pairs of `positions` (callers pass every crossing at
/// desk scale and a documented subset beyond).
pub fn verify_eps_approx<A: Arrangement + ?Sized>(
    view: &A,
    space: &RangeSpace,
    approx: &EpsApproximation,
    positions: &[Crossing],
) -> bool {
    let ground = &space.ground;
    let in_approx: std::collections::HashSet<LineId> = approx.subset.iter().copied().collect();
    match space.kind {
        RangeKind::Semispace => {
            for range in enumerate_semispace_ranges(view, ground) {
                let x_cnt = range.len();
                let a_cnt = range.iter().filter(|l| in_approx.contains(l)).count();
                if !approx
                    .eps
                    .within(a_cnt, approx.subset.len(), x_cnt, ground.len())
                {
                    return false;
                }
            }
            true
        }
        RangeKind::PseudoSegment => {
            let masks: Vec<Vec<u64>> = positions
                .iter()
                .map(|&z| above_mask(view, ground, z))
                .collect();
            let approx_idx: Vec<usize> = ground
                .iter()
                .enumerate()
                .filter(|(_, l)| in_approx.contains(l))
                .map(|(i, _)| i)
                .collect();
            for i in 0..positions.len() {
                for j in i + 1..positions.len() {
                    let x_cnt = xor_count(&masks[i], &masks[j]);
                    let a_cnt = approx_idx
                        .iter()
                        .filter(|&&t| {
                            (masks[i][t / 64] >> (t % 64) & 1) != (masks[j][t / 64] >> (t % 64) & 1)
                        })
                        .count();
                    if !approx
                        .eps
                        .within(a_cnt, approx.subset.len(), x_cnt, ground.len())
                    {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// Position set used to verify sampled separator approximations when full
/// enumeration is out of reach: crossings of (a stride-capped part of) the
/// sample plus seeded random crossings of the ground set.
fn verification_positions<A: Arrangement + ?Sized>(
    _view: &A,
    ground: &[LineId],
    sample: &[LineId],
    rng: &mut ChaCha8Rng,
) -> Vec<Crossing> {
    const LINE_CAP: usize = 8;
    const RANDOM_POSITIONS: usize = 16;
    let stride = sample.len().div_ceil(LINE_CAP).max(1);
    let picked: Vec<LineId> = sample.iter().copied().step_by(stride).collect();
    let mut positions = all_crossings(&picked);
    for _ in 0..RANDOM_POSITIONS {
        let a = ground[rng.random_range(0..ground.len())];
        let mut b = ground[rng.random_range(0..ground.len())];
        while b == a {
            b = ground[rng.random_range(0..ground.len())];
        }
        positions.push(Crossing::new(a, b));
    }
    positions.sort_by_key(|c| (c.lines().0, c.lines().1));
    positions.dedup();
    positions
}

/// Builds a verified approximation. The whole ground set is itself an exact
/// approximation, so small spaces return it unchanged; larger separator
/// spaces sample with growing size until the verifier accepts (Las Vegas),
/// capped by `eps.size_cap()`.
pub fn build_eps_approx<A: Arrangement + ?Sized>(
    view: &A,
    space: &RangeSpace,
    eps: Eps,
    seed: u64,
) -> EpsApproximation {
    let ground = &space.ground;
    let cap = eps.size_cap();
    let identity = EpsApproximation {
        subset: ground.clone(),
        eps,
    };
    match space.kind {
        RangeKind::Semispace => {
            if ground.len() <= cap {
                // The identity approximation has error zero for every range.
                identity
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                loop {
                    let sample = sample_lines(ground, cap, &mut rng);
                    let approx = EpsApproximation {
                        subset: sample,
                        eps,
                    };
                    if verify_eps_approx(view, space, &approx, &[]) {
                        return approx;
                    }
                }
            }
        }
        RangeKind::PseudoSegment => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // Larger ground sets surface more diverse separator ranges, so
            // the sample that reliably verifies grows slowly with them.
            let base = 96 + ground.len() / 4;
            let stages = [base, 2 * base, usize::MAX];
            for stage in stages {
                let size = stage.min(cap).min(ground.len());
                if size == ground.len() {
                    return identity;
                }
                let sample = sample_lines(ground, size, &mut rng);
                let approx = EpsApproximation {
                    subset: sample,
                    eps,
                };
                let positions = if ground.len() <= 24 {
                    all_crossings(ground)
                } else {
                    verification_positions(view, ground, &approx.subset, &mut rng)
                };
                if verify_eps_approx(view, space, &approx, &positions) {
                    return approx;
                }
            }
            // Ground set larger than the cap and every staged sample failed:
            // keep drawing cap-sized samples until one verifies.
            loop {
                let sample = sample_lines(ground, cap, &mut rng);
                let approx = EpsApproximation {
                    subset: sample,
                    eps,
                };
                let positions = verification_positions(view, ground, &approx.subset, &mut rng);
                if verify_eps_approx(view, space, &approx, &positions) {
                    return approx;
                }
            }
        }
    }
}

fn sample_lines(ground: &[LineId], size: usize, rng: &mut ChaCha8Rng) -> Vec<LineId> {
    use rand::seq::SliceRandom;
    let mut pool = ground.to_vec();
    pool.shuffle(rng);
    pool.truncate(size);
    pool.sort_unstable();
    pool
}
