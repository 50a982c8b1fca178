//! Exact rational convex polygons.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::Vec2;

pub type Q = Ratio<i128>;

pub fn q(n: i128) -> Q {
    Q::from_integer(n)
}

pub fn qf(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

/// `p/q`, or `p` for integers.
pub fn fmt_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let d: i128 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(Q::new(n.trim().parse().ok()?, d));
    }
    if let Some((i, f)) = s.split_once('.') {
        let neg = i.trim_start().starts_with('-');
        let digits = f.len() as u32;
        let scale = 10i128.checked_pow(digits)?;
        let ip: i128 = if i.is_empty() || i == "-" { 0 } else { i.parse().ok()? };
        let fp: i128 = f.parse().ok()?;
        let frac = Q::new(fp, scale);
        return Some(if neg { q(ip) - frac } else { q(ip) + frac });
    }
    s.parse().ok().map(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn int(x: i128, y: i128) -> Self {
        Point { x: q(x), y: q(y) }
    }

    pub fn from_vec(v: Vec2) -> Self {
        Point::int(v.x as i128, v.y as i128)
    }

    pub fn dot(&self, m: i128, n: i128) -> Q {
        self.x * q(m) + self.y * q(n)
    }

    pub fn neg(&self) -> Point {
        Point { x: -self.x, y: -self.y }
    }

    pub fn scale(&self, t: Q) -> Point {
        Point { x: self.x * t, y: self.y * t }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", fmt_q(&self.x), fmt_q(&self.y))
    }
}

fn cross(o: &Point, a: &Point, b: &Point) -> Q {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// `a·x + b·y ≤ c` with coprime integer coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalfPlane {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

impl HalfPlane {
    pub fn new(a: i128, b: i128, c: i128) -> Self {
        let g = a.gcd(&b).gcd(&c);
        if g > 1 {
            HalfPlane { a: a / g, b: b / g, c: c / g }
        } else {
            HalfPlane { a, b, c }
        }
    }

    /// Scale rational coefficients to integers.
    pub fn from_rational(a: Q, b: Q, c: Q) -> Self {
        let l = a.denom().lcm(b.denom()).lcm(c.denom());
        let s = q(l);
        HalfPlane::new((a * s).to_integer(), (b * s).to_integer(), (c * s).to_integer())
    }

    pub fn eval(&self, p: &Point) -> Q {
        p.dot(self.a, self.b) - q(self.c)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.eval(p) <= Q::zero()
    }
}

impl fmt::Display for HalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y <= {}", self.a, self.b, self.c)
    }
}

/// A bounded convex polygon with non-empty interior, kept both as a
/// list of half-planes and as its counterclockwise vertex list starting
/// at the lexicographically smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolygon {
    halfplanes: Vec<HalfPlane>,
    vertices: Vec<Point>,
}

fn canonical_start(mut v: Vec<Point>) -> Vec<Point> {
    if let Some(i) = (0..v.len()).min_by_key(|&i| v[i]) {
        v.rotate_left(i);
    }
    v
}

/// Drop repeated and collinear vertices of a cyclic ccw list.
fn simplify(mut v: Vec<Point>) -> Vec<Point> {
    v.dedup();
    while v.len() > 1 && v.first() == v.last() {
        v.pop();
    }
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        match (0..n).find(|&i| cross(&v[(i + n - 1) % n], &v[i], &v[(i + 1) % n]).is_zero()) {
            Some(i) => {
                v.remove(i);
            }
            None => return v,
        }
    }
}

impl RationalPolygon {
    pub fn from_halfplanes(halfplanes: Vec<HalfPlane>) -> Result<Self> {
        if halfplanes.is_empty() {
            return Err(Error::Geometry("no half-planes".into()));
        }
        let max_ab = halfplanes.iter().map(|h| h.a.abs().max(h.b.abs())).max().unwrap_or(1).max(1);
        let max_c = halfplanes.iter().map(|h| h.c.abs()).max().unwrap_or(0).max(1);
        // every vertex of a bounded intersection lies strictly inside this box
        let m = q(2 * max_c * max_ab + 1);
        let mut poly = vec![Point::new(-m, -m), Point::new(m, -m), Point::new(m, m), Point::new(-m, m)];
        for h in &halfplanes {
            poly = clip(&poly, h);
            if poly.is_empty() {
                return Err(Error::Geometry("empty intersection".into()));
            }
        }
        let vertices = simplify(poly);
        if vertices.len() < 3 {
            return Err(Error::Geometry("polygon has empty interior".into()));
        }
        if vertices.iter().any(|p| p.x.abs() == m || p.y.abs() == m) {
            return Err(Error::Geometry("unbounded intersection".into()));
        }
        Ok(RationalPolygon { halfplanes, vertices: canonical_start(vertices) })
    }

    /// Convex hull of a point set.
    pub fn hull(points: &[Point]) -> Result<Self> {
        let vertices = convex_hull(points);
        if vertices.len() < 3 {
            return Err(Error::Geometry("points span no area".into()));
        }
        let n = vertices.len();
        let halfplanes = (0..n)
            .map(|i| {
                let (p, r) = (vertices[i], vertices[(i + 1) % n]);
                let (nx, ny) = (r.y - p.y, p.x - r.x);
                HalfPlane::from_rational(nx, ny, nx * p.x + ny * p.y)
            })
            .collect();
        Ok(RationalPolygon { halfplanes, vertices: canonical_start(vertices) })
    }

    pub fn halfplanes(&self) -> &[HalfPlane] {
        &self.halfplanes
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Half-planes tight at two vertices (the edges of the polygon).
    pub fn facets(&self) -> Vec<HalfPlane> {
        let mut out: Vec<HalfPlane> = self
            .halfplanes
            .iter()
            .filter(|h| self.vertices.iter().filter(|p| h.eval(p).is_zero()).count() >= 2)
            .copied()
            .collect();
        out.sort_by_key(|h| (h.a, h.b, h.c));
        out.dedup();
        out
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.halfplanes.iter().all(|h| h.contains(p))
    }

    pub fn is_symmetric(&self) -> bool {
        self.vertices.iter().all(|p| self.vertices.contains(&p.neg()))
    }

    pub fn support(&self, m: i128, n: i128) -> Q {
        self.vertices.iter().map(|p| p.dot(m, n)).max().expect("non-empty polygon")
    }

    /// A vertex attaining the support in direction `(m, n)`.
    pub fn support_point(&self, m: i128, n: i128) -> Point {
        *self.vertices.iter().max_by_key(|p| p.dot(m, n)).expect("non-empty polygon")
    }

    fn require_origin_interior(&self) -> Result<()> {
        if self.halfplanes.iter().any(|h| h.c <= 0) {
            return Err(Error::Geometry("origin is not an interior point".into()));
        }
        Ok(())
    }

    /// `{z : z·p ≤ 1 for all p ∈ P}`.
    pub fn polar(&self) -> Result<Self> {
        self.require_origin_interior()?;
        let pts: Vec<Point> = self.facets().iter().map(|h| Point::new(qf(h.a, h.c), qf(h.b, h.c))).collect();
        RationalPolygon::hull(&pts)
    }

    /// Smallest `t` with `z ∈ tP`, for `P` containing the origin in its interior.
    pub fn gauge(&self, z: Vec2) -> Q {
        self.halfplanes
            .iter()
            .map(|h| qf(h.a * z.x as i128 + h.b * z.y as i128, h.c))
            .max()
            .expect("non-empty polygon")
            .max(Q::zero())
    }

    /// `λ(P)`: the least `t ≥ 0` such that `tP` contains a non-zero
    /// integer point, with a witness point `z` (preferring the
    /// lexicographically positive one of `±z`).
    pub fn lattice_lambda(&self) -> Result<(Q, Vec2)> {
        self.require_origin_interior()?;
        let g0 = self.gauge(Vec2::new(1, 0)).min(self.gauge(Vec2::new(0, 1)));
        let radius = self
            .vertices
            .iter()
            .map(|p| p.x.abs().max(p.y.abs()))
            .max()
            .expect("non-empty polygon");
        // gauge(z) ≥ |z|∞ / radius
        let k = (g0 * radius).floor().to_integer().max(1) as i64;
        let mut best: Option<(Q, Vec2)> = None;
        for x in -k..=k {
            for y in -k..=k {
                let z = Vec2::new(x, y);
                if z.is_zero() {
                    continue;
                }
                let key = (self.gauge(z), direction_rank(z));
                if best.as_ref().is_none_or(|b| key < (b.0, direction_rank(b.1))) {
                    best = Some((key.0, z));
                }
            }
        }
        let (t, z) = best.expect("search box contains non-zero points");
        Ok((t, z))
    }

    /// Largest `s` with `[-s, s]² ⊆ P`.
    pub fn inner_box_radius(&self) -> Result<Q> {
        self.require_origin_interior()?;
        Ok(self
            .facets()
            .iter()
            .map(|h| qf(h.c, h.a.abs() + h.b.abs()))
            .min()
            .expect("polygon has facets"))
    }

    /// Minimum support over non-zero integer directions.
    pub fn support_min(&self, bound: i64) -> Result<SupportMin> {
        let s = self.inner_box_radius()?;
        if s <= Q::zero() {
            return Err(Error::Geometry("polygon has empty interior".into()));
        }
        let symmetric = self.is_symmetric();
        let mut b = bound.max(1);
        loop {
            let mut best: Option<(Q, Vec2)> = None;
            for x in -b..=b {
                for y in -b..=b {
                    let z = Vec2::new(x, y);
                    if z.is_zero() || (symmetric && !(x > 0 || (x == 0 && y > 0))) {
                        continue;
                    }
                    let v = self.support(x as i128, y as i128);
                    if best.as_ref().is_none_or(|bb| (v, direction_rank(z)) < (bb.0, direction_rank(bb.1))) {
                        best = Some((v, z));
                    }
                }
            }
            let (value, direction) = best.expect("non-empty direction set");
            // directions outside the box have |z|₁ ≥ b + 1, so support ≥ s(b+1)
            if s * q(b as i128 + 1) >= value {
                return Ok(SupportMin { value, direction, searched_bound: b, inner_radius: s });
            }
            b = (value / s).ceil().to_integer() as i64;
        }
    }

    /// Image under the linear map `p ↦ M·p` for an integer matrix `M`
    /// given by rows.
    pub fn transform(&self, m: [[i128; 2]; 2]) -> Result<Self> {
        let pts: Vec<Point> = self
            .vertices
            .iter()
            .map(|p| {
                Point::new(p.x * q(m[0][0]) + p.y * q(m[0][1]), p.x * q(m[1][0]) + p.y * q(m[1][1]))
            })
            .collect();
        RationalPolygon::hull(&pts)
    }

    pub fn area2(&self) -> Q {
        let n = self.vertices.len();
        let o = Point::int(0, 0);
        (0..n).map(|i| cross(&o, &self.vertices[i], &self.vertices[(i + 1) % n])).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportMin {
    pub value: Q,
    pub direction: Vec2,
    /// All directions with `|m|,|n| ≤ searched_bound` were evaluated.
    pub searched_bound: i64,
    /// `[-s,s]² ⊆ P`, so directions outside the searched box have
    /// support at least `s·(searched_bound + 1) ≥ value`.
    pub inner_radius: Q,
}

/// Tie-break among directions: lexicographically positive first, then
/// shorter, then closer to the x-axis.
fn direction_rank(z: Vec2) -> (bool, i64, i64, i64) {
    (!(z.x > 0 || (z.x == 0 && z.y > 0)), z.linf(), z.y.abs(), -z.x)
}

fn clip(poly: &[Point], h: &HalfPlane) -> Vec<Point> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let (p, r) = (poly[i], poly[(i + 1) % n]);
        let (fp, fr) = (h.eval(&p), h.eval(&r));
        if fp <= Q::zero() {
            out.push(p);
        }
        if (fp < Q::zero() && fr > Q::zero()) || (fp > Q::zero() && fr < Q::zero()) {
            let t = fp / (fp - fr);
            out.push(Point::new(p.x + (r.x - p.x) * t, p.y + (r.y - p.y) * t));
        }
    }
    out
}

/// Counterclockwise hull without collinear points (Andrew's monotone chain).
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= Q::zero() {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= Q::zero() {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Barycentric certificate that `p` lies in the hull of `vertices`
/// (ccw, convex): coefficients over three vertices of a fan triangle.
pub fn convex_certificate(vertices: &[Point], p: &Point) -> Option<Vec<(Q, Point)>> {
    let n = vertices.len();
    for i in 1..n.saturating_sub(1) {
        let (a, b, c) = (vertices[0], vertices[i], vertices[i + 1]);
        let area = cross(&a, &b, &c);
        if area.is_zero() {
            continue;
        }
        let la = cross(p, &b, &c) / area;
        let lb = cross(&a, p, &c) / area;
        let lc = cross(&a, &b, p) / area;
        if la >= Q::zero() && lb >= Q::zero() && lc >= Q::zero() {
            debug_assert!(la + lb + lc == Q::one());
            return Some(vec![(la, a), (lb, b), (lc, c)].into_iter().filter(|(l, _)| !l.is_zero()).collect());
        }
    }
    None
}

/// Check a certificate: non-negative coefficients summing to one whose
/// combination of the listed points is `p`.
pub fn check_certificate(cert: &[(Q, Point)], p: &Point) -> bool {
    let sum: Q = cert.iter().map(|(l, _)| *l).sum();
    let x: Q = cert.iter().map(|(l, v)| *l * v.x).sum();
    let y: Q = cert.iter().map(|(l, v)| *l * v.y).sum();
    sum == Q::one() && cert.iter().all(|(l, _)| *l >= Q::zero()) && x == p.x && y == p.y
}

/// The set `X` given by `4x + 3y ≤ 27`, `-2x + 3y ≤ 27` and their negations.
pub fn set_x() -> RationalPolygon {
    RationalPolygon::from_halfplanes(vec![
        HalfPlane::new(4, 3, 27),
        HalfPlane::new(-2, 3, 27),
        HalfPlane::new(-4, -3, 27),
        HalfPlane::new(2, -3, 27),
    ])
    .expect("X is a bounded quadrilateral")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> RationalPolygon {
        RationalPolygon::from_halfplanes(vec![
            HalfPlane::new(1, 0, 1),
            HalfPlane::new(-1, 0, 1),
            HalfPlane::new(0, 1, 1),
            HalfPlane::new(0, -1, 1),
        ])
        .unwrap()
    }

    #[test]
    fn set_x_vertices_and_support() {
        let x = set_x();
        let mut v = x.vertices().to_vec();
        v.sort();
        let mut want = vec![Point::int(0, 9), Point::int(9, -3), Point::int(0, -9), Point::int(-9, 3)];
        want.sort();
        assert_eq!(v, want);
        let s = x.support_min(2).unwrap();
        assert_eq!(s.value, q(9));
        assert_eq!(s.direction, Vec2::new(1, 0));
    }

    #[test]
    fn square_polar_is_diamond() {
        let p = square().polar().unwrap();
        let mut v = p.vertices().to_vec();
        v.sort();
        assert_eq!(v, vec![Point::int(-1, 0), Point::int(0, -1), Point::int(0, 1), Point::int(1, 0)]);
        assert_eq!(p.polar().unwrap().vertices(), square().vertices());
        assert_eq!(square().lattice_lambda().unwrap(), (q(1), Vec2::new(1, 0)));
        assert_eq!(square().support_min(1).unwrap().value, q(1));
    }

    #[test]
    fn unbounded_and_empty_are_rejected() {
        assert!(RationalPolygon::from_halfplanes(vec![HalfPlane::new(1, 0, 1), HalfPlane::new(-1, 0, 1)]).is_err());
        assert!(RationalPolygon::from_halfplanes(vec![
            HalfPlane::new(1, 0, 0),
            HalfPlane::new(-1, 0, 0),
            HalfPlane::new(0, 1, 1),
            HalfPlane::new(0, -1, 1)
        ])
        .is_err());
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_q("15/2"), Some(qf(15, 2)));
        assert_eq!(parse_q("-0.5"), Some(qf(-1, 2)));
        assert_eq!(parse_q("7.5"), Some(qf(15, 2)));
        assert_eq!(parse_q("-3"), Some(q(-3)));
        assert_eq!(fmt_q(&qf(-15, 2)), "-15/2");
        assert_eq!(parse_q("1/0"), None);
    }

    #[test]
    fn certificates() {
        let sq = square();
        let c = convex_certificate(sq.vertices(), &Point::new(qf(1, 2), qf(1, 3))).unwrap();
        assert!(check_certificate(&c, &Point::new(qf(1, 2), qf(1, 3))));
        assert!(convex_certificate(sq.vertices(), &Point::int(2, 0)).is_none());
    }
}
