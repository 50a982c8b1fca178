//! Choice of two classes `h₁, h₂` forming a basis such that each of
//! `h₁, h₂, h₁+h₂, h₁−h₂` carries four pairwise disjoint cycles.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use super::lemma1::{lemma1_select, Quadruple, QuadrupleChoice};
use super::polygon::{q, qf, Point, Q, RationalPolygon};
use super::truncated_pg;
use crate::disjoint_cycles::{find_disjoint, CycleFamily};
use crate::error::{Error, Result};
use crate::homotopy::{reparameterize, Homotopy};
use crate::lattice::{unimodular_complement, unimodular_matrices, HomotopyClass, Mat2, Vec2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SelectionMode {
    /// Follow the case analysis on the Schrijver polygon first.
    Auto,
    /// Only the case analysis; fail if its classes are not realized.
    Proof,
    /// Only the enumeration of unimodular pairs.
    Enumeration,
}

impl fmt::Display for SelectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SelectionMode::Auto => "auto",
            SelectionMode::Proof => "proof",
            SelectionMode::Enumeration => "enumeration",
        })
    }
}

/// Selected classes and one verified family of four disjoint cycles for
/// each of `h₁, h₂, h₁+h₂, h₁−h₂`, in that order.
#[derive(Clone, Debug)]
pub struct ClassSelection {
    pub h1: HomotopyClass,
    pub h2: HomotopyClass,
    pub families: Vec<CycleFamily>,
    /// The mode that produced the answer (`Proof` or `Enumeration`).
    pub mode: SelectionMode,
    pub lemma: Option<QuadrupleChoice>,
    pub pairs_tried: usize,
}

impl ClassSelection {
    pub fn classes(&self) -> [HomotopyClass; 4] {
        four_classes(self.h1, self.h2)
    }
}

fn four_classes(h1: Vec2, h2: Vec2) -> [Vec2; 4] {
    [h1, h2, h1 + h2, h1 - h2]
}

/// `(h₁, h₂)` for a quadruple, read off through the correspondence
/// between the class `(m,n)` with multiplicity `k` and the point `(kn, −km)`.
pub fn quadruple_classes(tag: Quadruple) -> (Vec2, Vec2) {
    match tag {
        Quadruple::First => (Vec2::new(0, 1), Vec2::new(1, 0)),
        Quadruple::Second => (Vec2::new(1, 0), Vec2::new(1, 1)),
    }
}

const FAMILY: usize = 4;
const PG_BOUND: i64 = 3;
const PAIR_ENTRY_BOUND: i64 = 3;

/// Find `h₁, h₂` with verified families. `budget` bounds each exhaustive
/// disjoint-cycle search.
pub fn four_class_select(hom: &Homotopy, mode: SelectionMode, budget: u64, jobs: usize) -> Result<ClassSelection> {
    let u = hom.reduced_frame()?;
    let u_inv = u.inverse_unimodular().ok_or(Error::NotUnimodular)?;
    let reduced = reparameterize(hom.map(), &u)?;
    let rhom = Homotopy::new(&reduced)?;
    let to_original = |h: Vec2| u_inv.apply(h);

    let mut tried = 0;
    if mode != SelectionMode::Enumeration {
        let pg = truncated_pg(&rhom, PG_BOUND, jobs)?;
        if let Some((h1, h2, choice)) = proof_classes(&pg.polygon)? {
            let (h1, h2) = (to_original(h1), to_original(h2));
            tried += 1;
            if let Some(families) = realize(hom, h1, h2, budget)? {
                return Ok(ClassSelection {
                    h1,
                    h2,
                    families,
                    mode: SelectionMode::Proof,
                    lemma: Some(choice),
                    pairs_tried: tried,
                });
            }
        }
        if mode == SelectionMode::Proof {
            return Err(Error::NotFound("the case analysis did not yield realizable classes".into()));
        }
    }

    for (h1, h2) in candidate_pairs(&rhom) {
        let (h1, h2) = (to_original(h1), to_original(h2));
        tried += 1;
        if let Some(families) = realize(hom, h1, h2, budget)? {
            return Ok(ClassSelection { h1, h2, families, mode: SelectionMode::Enumeration, lemma: None, pairs_tried: tried });
        }
    }
    Err(Error::BudgetExhausted {
        what: format!(
            "no unimodular pair with entries up to {PAIR_ENTRY_BOUND} realized four disjoint cycles ({tried} pairs tried)"
        ),
        budget,
    })
}

fn realize(hom: &Homotopy, h1: Vec2, h2: Vec2, budget: u64) -> Result<Option<Vec<CycleFamily>>> {
    let mut out = Vec::with_capacity(4);
    for h in four_classes(h1, h2) {
        match find_disjoint(hom, h, FAMILY, budget) {
            Ok(f) => out.push(f),
            Err(Error::NotFound(_)) | Err(Error::BudgetExhausted { .. }) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(Some(out))
}

/// Unimodular pairs ordered by total crossing number of the four
/// classes, then by their total size. Pairs spanning the same set of
/// four classes up to sign are tried once.
fn candidate_pairs(hom: &Homotopy) -> Vec<(Vec2, Vec2)> {
    let canon = |h: Vec2| if h.x < 0 || (h.x == 0 && h.y < 0) { -h } else { h };
    let mut seen = BTreeSet::new();
    let mut keyed = Vec::new();
    for m in unimodular_matrices(PAIR_ENTRY_BOUND) {
        let (h1, h2) = (Vec2::new(m.a, m.c), Vec2::new(m.b, m.d));
        let mut set: Vec<_> = four_classes(h1, h2).iter().map(|&h| canon(h)).collect();
        set.sort();
        if !seen.insert(set.clone()) {
            continue;
        }
        let c: usize = set.iter().map(|&h| hom.crossing_number(h)).sum();
        let size: i64 = set.iter().map(|h| h.linf()).sum();
        keyed.push(((c, size, set), (canon(h1), canon(h2))));
    }
    keyed.sort();
    keyed.into_iter().map(|(_, p)| p).collect()
}

/// Row-major integer matrix acting on points.
type PointMap = [[i128; 2]; 2];

fn compose(a: PointMap, b: PointMap) -> PointMap {
    let mut out = [[0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Scale the support point of `p` in direction `(m,n)` onto the line
/// `mx + ny = level`, or `None` if the polygon does not reach it.
fn point_at_level(p: &RationalPolygon, m: i128, n: i128, level: Q) -> Option<Point> {
    let s = p.support(m, n);
    (s >= level && s > Q::zero()).then(|| p.support_point(m, n).scale(level / s))
}

/// Classes prescribed by the case analysis: find a lattice direction
/// `z` with `7.5·z ∈ P`, move it to `(0,1)`, normalize the point on
/// `x = 10` by a shear and a reflection, extract the four witnesses and
/// translate the chosen quadruple back into classes.
fn proof_classes(p: &RationalPolygon) -> Result<Option<(Vec2, Vec2, QuadrupleChoice)>> {
    let (lambda, z) = p.lattice_lambda()?;
    if lambda * qf(15, 2) > q(1) {
        return Ok(None);
    }
    let w = unimodular_complement(z).ok_or(Error::NotPrimitive(z))?;
    // columns (w, z) send (0,1) to z; the inverse sends z to (0,1)
    let m = Mat2::from_cols(w, z).inverse_unimodular().ok_or(Error::NotUnimodular)?;
    let mut t: PointMap = [[m.a as i128, m.b as i128], [m.c as i128, m.d as i128]];

    let p1 = p.transform(t)?;
    let Some(right) = point_at_level(&p1, 1, 0, q(10)) else { return Ok(None) };
    let k = (-right.y / q(10)).round().to_integer();
    t = compose([[1, 0], [k, 1]], t);
    let mut y_level = right.y + q(10 * k);
    if y_level > Q::zero() {
        t = compose([[-1, 0], [0, 1]], t);
    } else {
        y_level = -y_level;
    }

    let p2 = p.transform(t)?;
    if !p2.contains(&Point::new(q(0), qf(15, 2))) {
        return Err(Error::Internal("normalizing transform moved (0, 15/2) out of the polygon".into()));
    }
    let Some(bottom) = point_at_level(&p2, 0, -1, q(10)) else { return Ok(None) };
    let Some(diag) = point_at_level(&p2, 1, 1, q(10)) else { return Ok(None) };
    let choice = lemma1_select(y_level, bottom.x, diag.x)?;

    // h·p is invariant, so classes pull back by the transpose
    let (h1, h2) = quadruple_classes(choice.tag);
    let back = |h: Vec2| {
        Vec2::new((t[0][0] * h.x as i128 + t[1][0] * h.y as i128) as i64, (t[0][1] * h.x as i128 + t[1][1] * h.y as i128) as i64)
    };
    Ok(Some((back(h1), back(h2), choice)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_cayley, lattice_quotient};
    use crate::disjoint_cycles::verify_family;

    fn check(hom: &Homotopy, s: &ClassSelection) {
        assert_eq!(s.h1.det(s.h2).abs(), 1);
        for (f, h) in s.families.iter().zip(s.classes()) {
            assert_eq!(f.class, h);
            assert_eq!(f.len(), 4);
            verify_family(hom, f).unwrap();
        }
    }

    #[test]
    fn quadruple_points_match_classes() {
        for tag in [Quadruple::First, Quadruple::Second] {
            let (h1, h2) = quadruple_classes(tag);
            let mut want: Vec<Point> = four_classes(h1, h2)
                .iter()
                .map(|h| {
                    let p = Point::int(4 * h.y as i128, -4 * h.x as i128);
                    if tag.points().contains(&p) { p } else { p.neg() }
                })
                .collect();
            want.sort();
            let mut got = tag.points().to_vec();
            got.sort();
            assert_eq!(want, got, "{tag}");
        }
    }

    #[test]
    fn enumeration_finds_the_standard_classes() {
        let g = lattice_quotient(&Mat2::new(9, 0, 0, 9)).unwrap();
        let hom = Homotopy::new(&g).unwrap();
        let s = four_class_select(&hom, SelectionMode::Enumeration, 1_000_000, 2).unwrap();
        check(&hom, &s);
        let canon = |h: Vec2| if h.x < 0 || (h.x == 0 && h.y < 0) { -h } else { h };
        let mut got: Vec<_> = s.classes().iter().map(|&h| canon(h)).collect();
        got.sort();
        let mut want = vec![Vec2::new(0, 1), Vec2::new(1, -1), Vec2::new(1, 0), Vec2::new(1, 1)];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn gamma111_selection() {
        let g = build_cayley(111, 1, 10).unwrap();
        let hom = Homotopy::new(&g).unwrap();
        let s = four_class_select(&hom, SelectionMode::Auto, 1_000_000, 2).unwrap();
        check(&hom, &s);
    }

    #[test]
    fn gamma37_may_fail_with_report() {
        let g = build_cayley(37, 1, 10).unwrap();
        let hom = Homotopy::new(&g).unwrap();
        match four_class_select(&hom, SelectionMode::Auto, 100_000, 2) {
            Ok(s) => check(&hom, &s),
            Err(e) => assert!(matches!(e, Error::BudgetExhausted { .. }), "{e}"),
        }
    }
}
