//! Bad vertices, the propagation function `φ_W`, walk types in `S₃`
//! and the class-level type map `τ`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use crate::embedding::Dart;
use crate::error::{Error, Result};
use crate::homotopy::Homotopy;
use crate::lattice::HomotopyClass;
use crate::torus_map::{CycleWalk, TorusMap};

/// A permutation of `{0,1,2}`, stored as the images of `0, 1, 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WalkType(pub [u8; 3]);

impl WalkType {
    pub const IDENTITY: WalkType = WalkType([0, 1, 2]);

    /// All six permutations, identity first.
    pub const ALL: [WalkType; 6] = [
        WalkType([0, 1, 2]),
        WalkType([1, 0, 2]),
        WalkType([0, 2, 1]),
        WalkType([2, 1, 0]),
        WalkType([1, 2, 0]),
        WalkType([2, 0, 1]),
    ];

    /// The permutation with `π(0) = a` and `π(1) = b`.
    pub fn from_pair(a: u8, b: u8) -> Option<Self> {
        (a < 3 && b < 3 && a != b).then(|| WalkType([a, b, 3 - a - b]))
    }

    pub fn apply(self, i: u8) -> u8 {
        self.0[i as usize]
    }

    /// `self ∘ other`.
    pub fn compose(self, other: WalkType) -> WalkType {
        WalkType(other.0.map(|i| self.apply(i)))
    }

    pub fn inverse(self) -> WalkType {
        let mut out = [0; 3];
        for (i, &p) in self.0.iter().enumerate() {
            out[p as usize] = i as u8;
        }
        WalkType(out)
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }

    pub fn order(self) -> usize {
        let mut p = self;
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }
}

impl fmt::Display for WalkType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "[{a} {b} {c}]")
    }
}

fn require_eulerian_triangulation(g: &TorusMap) -> Result<()> {
    if !g.is_triangulation() {
        return Err(Error::Precondition("map is not a triangulation".into()));
    }
    if !g.is_eulerian() {
        return Err(Error::Precondition("map is not Eulerian".into()));
    }
    Ok(())
}

/// For each position `i`, whether the vertex `tail(dᵢ)` is bad: the
/// fan on the left between the incoming dart `dᵢ₋₁` and `dᵢ` has an
/// even number of faces.
pub fn bad_vertices(g: &TorusMap, w: &CycleWalk) -> Result<Vec<bool>> {
    let e = g.embedding();
    w.check_closed(e)?;
    let l = w.len();
    Ok((0..l).map(|i| e.left_fan(w.darts[(i + l - 1) % l], w.darts[i]).is_multiple_of(2)).collect())
}

/// `φ_W(0), …, φ_W(ℓ+1)`, where position `k` refers to `tail(d_{k mod ℓ})`.
pub fn phi(g: &TorusMap, w: &CycleWalk) -> Result<Vec<u8>> {
    require_eulerian_triangulation(g)?;
    let bad = bad_vertices(g, w)?;
    Ok(phi_from_bad(&bad))
}

fn phi_from_bad(bad: &[bool]) -> Vec<u8> {
    let l = bad.len();
    let mut out = Vec::with_capacity(l + 2);
    out.extend([0u8, 1]);
    for k in 2..=l + 1 {
        let (p1, p2) = (out[k - 1], out[k - 2]);
        // v_{k-1} and its neighbours v_{k-2}, v_k on the walk
        out.push(if bad[(k - 1) % l] { p2 } else { 3 - p1 - p2 });
    }
    out
}

pub fn walk_type(g: &TorusMap, w: &CycleWalk) -> Result<WalkType> {
    let f = phi(g, w)?;
    let l = w.len();
    WalkType::from_pair(f[l], f[l + 1]).ok_or_else(|| Error::Internal("φ repeated a value on an edge".into()))
}

/// `τ` on one map, memoized per class. Every class is represented by a
/// shortest closed walk whose first dart is [`TypeMap::base`], so all
/// types are read in the same frame.
pub struct TypeMap<'h, 'a> {
    hom: &'h Homotopy<'a>,
    base: Dart,
    cache: Mutex<HashMap<HomotopyClass, WalkType>>,
}

impl<'h, 'a> TypeMap<'h, 'a> {
    pub fn new(hom: &'h Homotopy<'a>) -> Result<Self> {
        require_eulerian_triangulation(hom.map())?;
        Ok(TypeMap { hom, base: 0, cache: Mutex::new(HashMap::new()) })
    }

    pub fn base(&self) -> Dart {
        self.base
    }

    /// A closed walk of class `h` starting with the base dart.
    pub fn representative(&self, h: HomotopyClass) -> Result<CycleWalk> {
        let e = self.hom.map().embedding();
        if h.is_zero() {
            let d = self.base;
            let f1 = e.face_next(d);
            return Ok(CycleWalk::new(vec![d, f1, e.face_next(f1)]));
        }
        self.hom
            .shortest_cycle_via(self.base, h, usize::MAX)
            .ok_or_else(|| Error::NotFound(format!("no closed walk of class {h} through the base dart")))
    }

    pub fn tau(&self, h: HomotopyClass) -> Result<WalkType> {
        if let Some(&t) = self.cache.lock().expect("cache lock").get(&h) {
            return Ok(t);
        }
        let t = walk_type(self.hom.map(), &self.representative(h)?)?;
        self.cache.lock().expect("cache lock").insert(h, t);
        Ok(t)
    }

    /// `τ((1,0))` and `τ((0,1))`; these determine `τ` everywhere.
    pub fn generators(&self) -> Result<[WalkType; 2]> {
        Ok([self.tau(HomotopyClass::new(1, 0))?, self.tau(HomotopyClass::new(0, 1))?])
    }

    /// The image of `τ`, generated by the two basis types.
    pub fn image(&self) -> Result<Vec<WalkType>> {
        let gens = self.generators()?;
        let mut out = vec![WalkType::IDENTITY];
        let mut i = 0;
        while i < out.len() {
            for g in gens {
                let p = out[i].compose(g);
                if !out.contains(&p) {
                    out.push(p);
                }
            }
            i += 1;
        }
        out.sort();
        Ok(out)
    }
}

/// Elementary free homotopies of a closed walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomotopyMove {
    /// Insert `b, b⁻¹` before position `pos`, where `b` leaves `tail(d_pos)`.
    InsertSpike { pos: usize, dart: Dart },
    /// Remove `d_pos, d_{pos+1}` when the second reverses the first.
    RemoveSpike { pos: usize },
    /// Replace `d_pos = ab` by `acb` around the triangle on the left
    /// (or on the right).
    FaceSlide { pos: usize, left: bool },
    /// Replace `d_pos, d_{pos+1} = acb` by `ab` when `abc` is a face.
    FaceUnslide { pos: usize },
}

pub fn homotopy_move(g: &TorusMap, w: &CycleWalk, mv: HomotopyMove) -> Result<CycleWalk> {
    let e = g.embedding();
    w.check_closed(e)?;
    let l = w.len();
    let bad = |why: &str| Err(Error::InapplicableMove(format!("{mv:?}: {why}")));
    let mut darts = w.darts.clone();
    match mv {
        HomotopyMove::InsertSpike { pos, dart } => {
            if pos >= l || dart >= e.num_darts() || e.tail(dart) != e.tail(darts[pos]) {
                return bad("dart does not leave the vertex at this position");
            }
            darts.splice(pos..pos, [dart, e.partner(dart)]);
        }
        HomotopyMove::RemoveSpike { pos } => {
            if pos >= l || l <= 2 {
                return bad("walk too short");
            }
            let next = (pos + 1) % l;
            if darts[next] != e.partner(darts[pos]) {
                return bad("no spike at this position");
            }
            let (a, b) = (pos.min(next), pos.max(next));
            darts.remove(b);
            darts.remove(a);
        }
        HomotopyMove::FaceSlide { pos, left } => {
            if pos >= l {
                return bad("position out of range");
            }
            let d = darts[pos];
            let start = if left { d } else { e.partner(d) };
            let f1 = e.face_next(start);
            let f2 = e.face_next(f1);
            if e.face_next(f2) != start {
                return bad("face is not a triangle");
            }
            let pair = if left { [e.partner(f2), e.partner(f1)] } else { [f1, f2] };
            darts.splice(pos..=pos, pair);
        }
        HomotopyMove::FaceUnslide { pos } => {
            if pos >= l || l < 2 {
                return bad("walk too short");
            }
            let next = (pos + 1) % l;
            let (x, y) = (darts[pos], darts[next]);
            let third = if e.face_next(x) == y && e.face_next(e.face_next(y)) == x {
                e.partner(e.face_next(y))
            } else if e.face_next(e.partner(y)) == e.partner(x)
                && e.face_next(e.face_next(e.partner(x))) == e.partner(y)
            {
                e.face_next(e.partner(x))
            } else {
                return bad("the two darts do not span a triangle");
            };
            if next == 0 {
                darts.remove(pos);
                darts[0] = third;
            } else {
                darts.splice(pos..=next, [third]);
            }
        }
    }
    let out = CycleWalk::new(darts);
    out.check_closed(e)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::build_cayley;
    use crate::lattice::Vec2;

    #[test]
    fn permutation_algebra() {
        for a in WalkType::ALL {
            assert!(a.compose(a.inverse()).is_identity());
            for b in WalkType::ALL {
                for c in WalkType::ALL {
                    assert_eq!(a.compose(b).compose(c), a.compose(b.compose(c)));
                }
            }
        }
        assert_eq!(WalkType::from_pair(1, 0), Some(WalkType([1, 0, 2])));
        assert_eq!(WalkType([1, 2, 0]).order(), 3);
    }

    #[test]
    fn gamma37_fan_and_face_walk() {
        let g = build_cayley(37, 1, 10).unwrap();
        let e = g.embedding();
        let d01 = e.rotation(0).iter().copied().find(|&d| e.head(d) == 1).unwrap();
        let d12 = e.rotation(1).iter().copied().find(|&d| e.head(d) == 2).unwrap();
        assert_eq!(e.left_fan(d01, d12), 3);

        let d = 0;
        let f1 = e.face_next(d);
        let face = CycleWalk::new(vec![d, f1, e.face_next(f1)]);
        assert_eq!(bad_vertices(&g, &face).unwrap(), vec![false; 3]);
        assert_eq!(phi(&g, &face).unwrap(), vec![0, 1, 2, 0, 1]);
        assert!(walk_type(&g, &face).unwrap().is_identity());
    }

    #[test]
    fn all_bad_even_walk_alternates() {
        assert_eq!(phi_from_bad(&[true; 6]), vec![0, 1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn tau_is_a_homomorphism_on_gamma37() {
        let g = build_cayley(37, 1, 10).unwrap();
        let hom = Homotopy::new(&g).unwrap();
        let tm = TypeMap::new(&hom).unwrap();
        assert!(tm.tau(Vec2::ZERO).unwrap().is_identity());
        for a in [Vec2::new(1, 0), Vec2::new(0, 1), Vec2::new(1, -1), Vec2::new(2, 1)] {
            for b in [Vec2::new(1, 0), Vec2::new(0, 1), Vec2::new(-1, 2)] {
                let lhs = tm.tau(a + b).unwrap();
                assert_eq!(lhs, tm.tau(a).unwrap().compose(tm.tau(b).unwrap()), "{a} + {b}");
            }
        }
        assert!(tm.image().unwrap().len() <= 3);
    }

    #[test]
    fn moves_round_trip() {
        let g = build_cayley(37, 1, 10).unwrap();
        let hom = Homotopy::new(&g).unwrap();
        let w = hom.shortest_cycle_in_class(Vec2::new(1, 0)).unwrap();
        let e = g.embedding();
        let b = e.rotation(e.tail(w.darts[2]))[1];
        let spiked = homotopy_move(&g, &w, HomotopyMove::InsertSpike { pos: 2, dart: b }).unwrap();
        assert_eq!(homotopy_move(&g, &spiked, HomotopyMove::RemoveSpike { pos: 2 }).unwrap(), w);
        for left in [true, false] {
            let slid = homotopy_move(&g, &w, HomotopyMove::FaceSlide { pos: 1, left }).unwrap();
            assert_eq!(hom.class_of(&slid), hom.class_of(&w));
            assert_eq!(walk_type(&g, &slid).unwrap(), walk_type(&g, &w).unwrap());
            assert_eq!(homotopy_move(&g, &slid, HomotopyMove::FaceUnslide { pos: 1 }).unwrap(), w);
        }
        assert!(homotopy_move(&g, &w, HomotopyMove::RemoveSpike { pos: 0 }).is_err());
    }
}
