//! Case analysis on symmetric convex sets through the points
//! `(0, 15/2)`, `(x, -10)`, `(10, -y)` and `(t, 10 - t)`.

use std::fmt;

use num_traits::Zero;

use super::polygon::{check_certificate, convex_certificate, q, qf, Point, Q, RationalPolygon};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quadruple {
    First,
    Second,
}

impl Quadruple {
    pub fn points(self) -> [Point; 4] {
        match self {
            Quadruple::First => [Point::int(0, 4), Point::int(4, -4), Point::int(4, 0), Point::int(4, 4)],
            Quadruple::Second => [Point::int(0, -4), Point::int(4, -8), Point::int(4, -4), Point::int(4, 0)],
        }
    }
}

impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quadruple::First => "FIRST",
            Quadruple::Second => "SECOND",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadrupleChoice {
    pub tag: Quadruple,
    /// The eight witness points and their hull.
    pub witnesses: Vec<Point>,
    pub hull: Vec<Point>,
    /// For each point of the quadruple, a convex combination of hull
    /// vertices equal to it.
    pub certificates: Vec<(Point, Vec<(Q, Point)>)>,
    /// The branch of the case analysis that decided the tag.
    pub case: &'static str,
}

impl QuadrupleChoice {
    /// Re-check every certificate against the hull.
    pub fn verify(&self) -> bool {
        self.certificates.len() == 4
            && self.certificates.iter().zip(self.tag.points()).all(|((p, cert), want)| {
                *p == want && check_certificate(cert, p) && cert.iter().all(|(_, v)| self.hull.contains(v))
            })
    }
}

pub fn witness_points(x: Q, y: Q, t: Q) -> Vec<Point> {
    let base = [
        Point::new(q(0), qf(15, 2)),
        Point::new(x, q(-10)),
        Point::new(q(10), -y),
        Point::new(t, q(10) - t),
    ];
    base.iter().flat_map(|p| [*p, p.neg()]).collect()
}

/// A point with its convex combination of hull vertices.
pub type Certificate = (Point, Vec<(Q, Point)>);

/// Certificates for every point of `quad` inside the hull, if all fit.
pub fn certify(hull: &[Point], quad: Quadruple) -> Option<Vec<Certificate>> {
    quad.points().iter().map(|p| convex_certificate(hull, p).map(|c| (*p, c))).collect()
}

/// Branch of the case analysis on `(x, y, t)` and the quadruple it yields.
pub fn lemma1_case(y: Q, x: Q, t: Q) -> (Quadruple, &'static str) {
    use Quadruple::{First, Second};
    let x_split = (q(20) - q(4) * y) / (q(8) - y);
    if x <= q(0) {
        (First, "x <= 0")
    } else if x >= q(20) {
        (First, "x >= 20")
    } else if x >= x_split {
        (Second, "x in [(20-4y)/(8-y), 20]")
    } else if t >= qf(40, 3) {
        (Second, "t >= 40/3")
    } else if t >= q(5) {
        (First, "t in [5, 30]")
    } else if t >= q(0) {
        (First, "t in [0, 5]")
    } else if y <= q(2) {
        (First, "t <= 0 and y <= 2")
    } else if t <= q(-1) {
        (Second, "t <= -1")
    } else if y >= (q(20) + q(14) * t) / (q(4) + t) {
        (Second, "t in [-1, 0] and y >= (20+14t)/(4+t)")
    } else {
        (First, "t in [-1, 0] and y <= (20-2t)/(4-t)")
    }
}

/// Choose a quadruple contained in the convex hull of the eight
/// witness points by following the case analysis, and certify each of
/// its points as a convex combination of hull vertices.
pub fn lemma1_select(y: Q, x: Q, t: Q) -> Result<QuadrupleChoice> {
    if y < Q::zero() || y > q(5) {
        return Err(Error::Precondition(format!("y = {y} must lie in [0, 5]")));
    }
    let witnesses = witness_points(x, y, t);
    let hull = RationalPolygon::hull(&witnesses)?.vertices().to_vec();
    let (tag, case) = lemma1_case(y, x, t);
    match certify(&hull, tag) {
        Some(certificates) => Ok(QuadrupleChoice { tag, witnesses, hull, certificates, case }),
        None => Err(Error::Internal(format!(
            "case \"{case}\" claims {tag} but the hull does not contain it (x = {x}, y = {y}, t = {t})"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stated_cases() {
        assert_eq!(lemma1_select(q(1), q(-1), q(7)).unwrap().tag, Quadruple::First);
        assert_eq!(lemma1_select(q(3), q(1), q(-2)).unwrap().tag, Quadruple::Second);
        assert_eq!(lemma1_select(q(3), q(2), qf(-1, 2)).unwrap().tag, Quadruple::Second);
        assert!(lemma1_select(q(6), q(0), q(0)).is_err());
        assert_eq!(lemma1_select(q(3), q(2), qf(-1, 2)).unwrap().case, "x in [(20-4y)/(8-y), 20]");
    }

    #[test]
    fn coarse_grid_never_fails() {
        for yi in 0..=10 {
            for xi in -12..=12 {
                for ti in -12..=12 {
                    let (y, x, t) = (qf(yi, 2), q(2 * xi), q(2 * ti));
                    let c = lemma1_select(y, x, t).unwrap();
                    assert!(c.verify());
                }
            }
        }
    }

    #[test]
    fn always_present_points_are_certified() {
        let c = lemma1_select(q(2), q(3), q(4)).unwrap();
        assert!(c.verify());
        for p in [Point::int(0, 4), Point::int(0, -4), Point::int(4, 0), Point::int(4, -4)] {
            assert!(convex_certificate(&c.hull, &p).is_some(), "{p}");
        }
    }
}
