//! Exact integer point sets and the determinant-sign oracle.

use super::{ChirotopeError, Orientation, PointId, TripleOracle};

/// Coordinates are bounded so the 3x3 homogeneous determinant stays within a
/// 96-bit signed product; i128 arithmetic is then exact with lots of slack.
pub const COORD_BOUND: i64 = 1 << 30;

/// A point set with exact integer coordinates in general position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedPointSet {
    points: Vec<(i64, i64)>,
}

impl RealizedPointSet {
    /// Checks coordinate bounds and duplicates. Collinearity is a separate,
    /// cubic check; see [`validate_general_position`].
    pub fn new(points: Vec<(i64, i64)>) -> Result<Self, ChirotopeError> {
        for &(x, y) in &points {
            if x.abs() > COORD_BOUND {
                return Err(ChirotopeError::CoordinateOutOfRange(x));
            }
            if y.abs() > COORD_BOUND {
                return Err(ChirotopeError::CoordinateOutOfRange(y));
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(ChirotopeError::DuplicatePoint(i, j));
                }
            }
        }
        Ok(RealizedPointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, id: PointId) -> (i64, i64) {
        self.points[id.idx()]
    }

    pub fn points(&self) -> &[(i64, i64)] {
        &self.points
    }
}

fn det_sign(p: (i64, i64), q: (i64, i64), r: (i64, i64)) -> i128 {
    let ux = (q.0 - p.0) as i128;
    let uy = (q.1 - p.1) as i128;
    let vx = (r.0 - p.0) as i128;
    let vy = (r.1 - p.1) as i128;
    ux * vy - uy * vx
}

/// Sign of the homogeneous determinant of three points, exact over integers.
/// `Ccw` iff positive.
pub fn orient_realized(
    ps: &RealizedPointSet,
    a: PointId,
    b: PointId,
    c: PointId,
) -> Result<Orientation, ChirotopeError> {
    let d = det_sign(ps.point(a), ps.point(b), ps.point(c));
    match d.signum() {
        1 => Ok(Orientation::Ccw),
        -1 => Ok(Orientation::Cw),
        _ => Err(ChirotopeError::DegenerateTriple(a, b, c)),
    }
}

/// Exhaustive cubic collinearity scan. Returns the offending triples, empty
/// when the set is in general position.
pub fn validate_general_position(ps: &RealizedPointSet) -> Vec<(PointId, PointId, PointId)> {
    let n = ps.len();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (PointId(i as u32), PointId(j as u32), PointId(k as u32));
                if det_sign(ps.point(a), ps.point(b), ps.point(c)) == 0 {
                    bad.push((a, b, c));
                }
            }
        }
    }
    bad
}

impl TripleOracle for RealizedPointSet {
    fn size(&self) -> usize {
        self.points.len()
    }

    fn orient(&self, a: PointId, b: PointId, c: PointId) -> Orientation {
        match orient_realized(self, a, b, c) {
            Ok(o) => o,
            Err(e) => panic!("oracle invariant violated: {e}"),
        }
    }
}
