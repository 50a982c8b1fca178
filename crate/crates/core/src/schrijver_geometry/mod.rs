//! The Schrijver polygon `P(G) = {(x,y) : mx + ny ≤ c_G(m,n)}` and the
//! exact planar geometry built around it.

mod lemma1;
mod polygon;
mod select;

pub use lemma1::{certify, lemma1_select, witness_points, Quadruple, QuadrupleChoice};
pub use polygon::{
    check_certificate, convex_certificate, convex_hull, fmt_q, parse_q, q, qf, set_x, HalfPlane, Point, RationalPolygon,
    SupportMin, Q,
};
pub use select::{four_class_select, quadruple_classes, ClassSelection, SelectionMode};

use crate::error::Result;
use crate::homotopy::{CrossingProfile, Homotopy};
use crate::lattice::Vec2;

/// A truncation `P_B ⊇ P(G)` together with the crossing numbers used.
#[derive(Clone, Debug)]
pub struct SchrijverPolygon {
    pub polygon: RationalPolygon,
    pub profile: CrossingProfile,
}

impl SchrijverPolygon {
    pub fn bound(&self) -> i64 {
        self.profile.bound
    }

    /// Whether `(k·n, -k·m)` satisfies every computed half-plane.
    pub fn admits(&self, h: Vec2, k: i64) -> bool {
        self.polygon.contains(&Point::int((k * h.y) as i128, (-k * h.x) as i128))
    }

    /// A computed half-plane violated by `(k·n, -k·m)`, if any.
    pub fn violation(&self, h: Vec2, k: i64) -> Option<HalfPlane> {
        let p = Point::int((k * h.y) as i128, (-k * h.x) as i128);
        self.polygon.halfplanes().iter().find(|hp| !hp.contains(&p)).copied()
    }
}

/// Half-planes `mx + ny ≤ c_G(m,n)` over non-zero `|m|,|n| ≤ bound`,
/// in the period-lattice coordinates of `hom`.
pub fn truncated_pg(hom: &Homotopy, bound: i64, jobs: usize) -> Result<SchrijverPolygon> {
    let profile = hom.crossing_profile(bound.max(1), jobs);
    let halfplanes = profile
        .iter()
        .filter(|(h, _)| !h.is_zero())
        .map(|(h, c)| HalfPlane::new(h.x as i128, h.y as i128, c as i128))
        .collect();
    Ok(SchrijverPolygon { polygon: RationalPolygon::from_halfplanes(halfplanes)?, profile })
}

/// `λ(P_B)` and `λ(P_B*)` with their witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaPair {
    pub lambda: Q,
    pub witness: Vec2,
    pub lambda_polar: Q,
    pub witness_polar: Vec2,
}

impl LambdaPair {
    pub fn product(&self) -> Q {
        self.lambda * self.lambda_polar
    }
}

pub fn lambda_pair(p: &RationalPolygon) -> Result<LambdaPair> {
    let (lambda, witness) = p.lattice_lambda()?;
    let (lambda_polar, witness_polar) = p.polar()?.lattice_lambda()?;
    Ok(LambdaPair { lambda, witness, lambda_polar, witness_polar })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::build_cayley;
    use crate::torus_map::TorusMap;

    #[test]
    fn gamma37_polygon() {
        let g = build_cayley(37, 1, 10).unwrap();
        let hom = Homotopy::new(&g).unwrap();
        let pg = truncated_pg(&hom, 3, 2).unwrap();
        assert!(pg.polygon.is_symmetric());
        for (h, c) in pg.profile.iter().filter(|(h, _)| !h.is_zero()) {
            assert_eq!(pg.polygon.support(h.x as i128, h.y as i128), q(c as i128), "direction {h}");
            assert!(c >= 7);
        }
        assert_eq!(pg.polygon.support_min(3).unwrap().value, q(7));
        let lp = lambda_pair(&pg.polygon).unwrap();
        assert_eq!(lp.lambda_polar, q(7));
        assert!(lp.product() <= qf(4, 3));
    }

    #[test]
    fn square_map_polygon() {
        let g = TorusMap::load("TORUSMAP 1\nV 1\n0 : 0/1/0 0/0/1 0/-1/0 0/0/-1\n").unwrap();
        let hom = Homotopy::new(&g).unwrap();
        let pg = truncated_pg(&hom, 2, 1).unwrap();
        assert_eq!(pg.polygon.support(1, 0), q(1));
        assert_eq!(pg.polygon.support(0, 1), q(1));
        assert!(pg.admits(Vec2::new(1, 0), 1));
        assert!(!pg.admits(Vec2::new(1, 0), 2));
    }
}
