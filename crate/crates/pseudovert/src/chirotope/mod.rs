//! Triple-orientation oracles: exact determinant signs on integer point
//! sets, table-backed abstract order types built from wiring diagrams, and a
//! counting wrapper that meters sidedness queries.

mod fixtures;
mod realized;
mod wiring;

pub use fixtures::{non_pappus_base_points, non_pappus_table, non_pappus_wiring, square_with_center, tri3};
pub use realized::{orient_realized, validate_general_position, RealizedPointSet};
pub use wiring::{
    dual_wiring_of_points, random_wiring, table_from_wiring, wiring_gamma, TripleTable,
    WiringDiagram,
};

use std::cell::Cell;
use std::fmt;

use thiserror::Error;

/// Stable identifier of an element of the order type. A point and its dual
/// pseudo-line share the identifier.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PointId(pub u32);

impl PointId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Orientation of an ordered point triple. General position means there is
/// no third state.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    #[inline]
    pub fn flip(self) -> Orientation {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
        }
    }

    #[inline]
    pub fn is_ccw(self) -> bool {
        matches!(self, Orientation::Ccw)
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Ccw => write!(f, "ccw"),
            Orientation::Cw => write!(f, "cw"),
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ChirotopeError {
    #[error("degenerate triple ({0}, {1}, {2}): collinear points")]
    DegenerateTriple(PointId, PointId, PointId),
    #[error("coordinate {0} out of range: |x|,|y| must be at most 2^30")]
    CoordinateOutOfRange(i64),
    #[error("duplicate point at index {0} and {1}")]
    DuplicatePoint(usize, usize),
    #[error("invalid wiring diagram: {0}")]
    InvalidWiring(String),
}

/// The chirotope oracle. Everything in this crate is built on `orient`.
///
/// Implementations must be alternating (swapping two arguments flips the
/// answer) and are immutable after construction, so shared references can be
/// used concurrently.
pub trait TripleOracle {
    /// Number of elements; valid ids are `0..size`.
    fn size(&self) -> usize;

    /// Orientation of the ordered triple `(a, b, c)` of distinct ids.
    fn orient(&self, a: PointId, b: PointId, c: PointId) -> Orientation;
}

impl<T: TripleOracle + ?Sized> TripleOracle for &T {
    fn size(&self) -> usize {
        (**self).size()
    }
    fn orient(&self, a: PointId, b: PointId, c: PointId) -> Orientation {
        (**self).orient(a, b, c)
    }
}

/// Wrapper that counts `orient` calls. One instance serves one algorithm
/// execution; it is deliberately not `Sync`.
pub struct CountingOracle<'a> {
    inner: &'a dyn TripleOracle,
    count: Cell<u64>,
}

impl<'a> CountingOracle<'a> {
    pub fn new(inner: &'a dyn TripleOracle) -> Self {
        CountingOracle {
            inner,
            count: Cell::new(0),
        }
    }

    /// Queries since construction or the last `reset`.
    pub fn count(&self) -> u64 {
        self.count.get()
    }

    pub fn reset(&self) {
        self.count.set(0);
    }
}

impl TripleOracle for CountingOracle<'_> {
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn orient(&self, a: PointId, b: PointId, c: PointId) -> Orientation {
        self.count.set(self.count.get() + 1);
        self.inner.orient(a, b, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_oracle_meters_every_call() {
        let ps = RealizedPointSet::new(vec![(0, 0), (1, 0), (0, 1)]).unwrap();
        let counting = CountingOracle::new(&ps);
        assert_eq!(counting.count(), 0);
        counting.orient(PointId(0), PointId(1), PointId(2));
        assert_eq!(counting.count(), 1);
        counting.orient(PointId(1), PointId(0), PointId(2));
        counting.orient(PointId(2), PointId(0), PointId(1));
        assert_eq!(counting.count(), 3);
        counting.reset();
        assert_eq!(counting.count(), 0);
    }

    #[test]
    fn alternation_exhaustive_small_sets() {
        // Alternation must hold for realized sets and wiring tables alike.
        let ps = RealizedPointSet::new(vec![(0, 0), (7, 1), (3, 9), (11, 4), (5, 13)]).unwrap();
        check_alternation(&ps);
        let w = random_wiring(7, 42);
        let table = table_from_wiring(&w).unwrap();
        check_alternation(&table);
        check_alternation(&non_pappus_table());
    }

    fn check_alternation(oracle: &dyn TripleOracle) {
        let n = oracle.size() as u32;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    let (a, b, c) = (PointId(a), PointId(b), PointId(c));
                    let abc = oracle.orient(a, b, c);
                    assert_eq!(abc, oracle.orient(b, c, a));
                    assert_eq!(abc, oracle.orient(c, a, b));
                    assert_eq!(abc.flip(), oracle.orient(b, a, c));
                }
            }
        }
    }
}
