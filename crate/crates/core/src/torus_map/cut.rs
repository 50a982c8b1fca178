//! Cutting a torus map open along a simple non-contractible cycle, and
//! gluing colorings of the resulting cylinder back together.

use crate::embedding::{Dart, Embedding, Vertex};
use crate::error::{Error, Result};
use crate::lattice::Vec2;

use super::{CycleWalk, TorusMap};

/// A map on the cylinder obtained by cutting a [`TorusMap`] along a
/// cycle `C`.
///
/// Vertex ids below `|V(G)|` are the original vertices; the cycle
/// vertices keep their id as their *left* copy (the copy attached to
/// the faces on the left of `C`), and the right copy of the `i`-th cycle
/// vertex is `|V(G)| + i`. Original darts keep their ids; the right
/// copies of the cycle edges are appended. The two holes are faces of
/// the embedding.
#[derive(Clone, Debug)]
pub struct CylinderGraph {
    pub emb: Embedding,
    /// Original vertex of every cylinder vertex.
    pub origin_vertex: Vec<Vertex>,
    /// Original dart of every cylinder dart.
    pub origin_dart: Vec<Dart>,
    /// The cut cycle in the original map.
    pub cycle: CycleWalk,
    /// Left copy `C′` of the cycle, in the direction of `C`.
    pub left: Vec<Vertex>,
    /// Right copy `C″`, in the direction of `C`.
    pub right: Vec<Vertex>,
    /// Darts of `C′` in the direction of `C`.
    pub left_darts: Vec<Dart>,
    /// Darts of `C″` in the direction of `C`.
    pub right_darts: Vec<Dart>,
    /// Labels inherited from the torus map.
    pub labels: Vec<Vec2>,
    original_vertices: usize,
}

impl CylinderGraph {
    pub fn num_vertices(&self) -> usize {
        self.emb.num_vertices()
    }

    pub fn original_vertex_count(&self) -> usize {
        self.original_vertices
    }

    /// Face walk of the hole bounded by `C′` (traversed against `C`).
    pub fn left_hole(&self) -> Vec<Dart> {
        self.left_darts.iter().rev().map(|&d| self.emb.partner(d)).collect()
    }

    /// Face walk of the hole bounded by `C″` (traversed along `C`).
    pub fn right_hole(&self) -> Vec<Dart> {
        self.right_darts.clone()
    }

    /// Label sum of a closed walk of the cylinder, measured in the torus
    /// map; always an integer multiple of the class of the cut cycle.
    pub fn label_sum(&self, darts: &[Dart]) -> Vec2 {
        let mut s = Vec2::ZERO;
        for &d in darts {
            s += self.labels[d];
        }
        s
    }

    /// Undo the cut: identify both copies of every cycle vertex and edge.
    pub fn reglue(&self, g: &TorusMap) -> Result<TorusMap> {
        let n = self.original_vertices;
        let ge = g.embedding();
        let mut rot = Vec::with_capacity(n);
        let pos_in_cycle = |v: Vertex| self.left.iter().position(|&x| x == v);
        for v in 0..n {
            let r: Vec<Dart> = match pos_in_cycle(v) {
                None => self.emb.rotation(v).to_vec(),
                Some(i) => {
                    let mut r = self.emb.rotation(v).to_vec();
                    let right = self.emb.rotation(self.right[i]);
                    r.extend(&right[1..right.len() - 1]);
                    r
                }
            };
            rot.push(r.into_iter().map(|d| self.origin_dart[d]).collect());
        }
        let tails = (0..ge.num_darts()).map(|d| ge.tail(d)).collect();
        let partners = (0..ge.num_darts()).map(|d| ge.partner(d)).collect();
        let emb = Embedding::from_parts(tails, partners, rot)?;
        TorusMap::new(emb, g.labels().to_vec())
    }
}

pub fn cut_along(g: &TorusMap, c: &CycleWalk) -> Result<CylinderGraph> {
    let ge = g.embedding();
    c.check_closed(ge)?;
    if !c.is_simple(ge) {
        return Err(Error::NotSimple);
    }
    if c.label_sum(g).is_zero() {
        return Err(Error::Contractible);
    }
    let l = c.len();
    let n = ge.num_vertices();
    let nd = ge.num_darts();
    for i in 0..l {
        let prev = c.darts[(i + l - 1) % l];
        if c.darts[i] == ge.partner(prev) {
            return Err(Error::NotSimple);
        }
    }

    let cyc_vertices = c.vertices(ge);
    let mut index_on_cycle = vec![usize::MAX; n];
    for (i, &v) in cyc_vertices.iter().enumerate() {
        index_on_cycle[v] = i;
    }

    // Which side of C each non-cycle dart leaving a cycle vertex is on.
    const NONE: u8 = 0;
    const LEFT: u8 = 1;
    const RIGHT: u8 = 2;
    let mut side = vec![NONE; nd];
    let mut left_lists = Vec::with_capacity(l);
    let mut right_lists = Vec::with_capacity(l);
    for i in 0..l {
        let out = c.darts[i];
        let back = ge.partner(c.darts[(i + l - 1) % l]);
        let mut lefts = Vec::new();
        let mut d = ge.ccw(out);
        while d != back {
            side[d] = LEFT;
            lefts.push(d);
            d = ge.ccw(d);
        }
        let mut rights = Vec::new();
        let mut d = ge.ccw(back);
        while d != out {
            side[d] = RIGHT;
            rights.push(d);
            d = ge.ccw(d);
        }
        left_lists.push(lefts);
        right_lists.push(rights);
    }
    let mut tail: Vec<Vertex> = (0..nd).map(|d| ge.tail(d)).collect();
    let mut partner: Vec<Dart> = (0..nd).map(|d| ge.partner(d)).collect();
    let mut origin_dart: Vec<Dart> = (0..nd).collect();
    let mut labels: Vec<Vec2> = g.labels().to_vec();
    for (d, t) in tail.iter_mut().enumerate() {
        if side[d] == RIGHT {
            *t = n + index_on_cycle[ge.tail(d)];
        }
    }
    // Right copies of the cycle darts: c_i'' = nd + 2i, its reverse nd + 2i + 1.
    for i in 0..l {
        let ci = c.darts[i];
        tail.push(n + i);
        tail.push(n + (i + 1) % l);
        partner.push(nd + 2 * i + 1);
        partner.push(nd + 2 * i);
        origin_dart.push(ci);
        origin_dart.push(ge.partner(ci));
        labels.push(g.label(ci));
        labels.push(-g.label(ci));
    }

    let mut rot: Vec<Vec<Dart>> = (0..n).map(|v| ge.rotation(v).to_vec()).collect();
    for i in 0..l {
        let v = cyc_vertices[i];
        let out = c.darts[i];
        let back = ge.partner(c.darts[(i + l - 1) % l]);
        let mut left_rot = vec![out];
        left_rot.extend(&left_lists[i]);
        left_rot.push(back);
        rot[v] = left_rot;
    }
    for (i, right) in right_lists.iter().enumerate() {
        let back_copy = nd + 2 * ((i + l - 1) % l) + 1;
        let out_copy = nd + 2 * i;
        let mut r = vec![back_copy];
        r.extend(right);
        r.push(out_copy);
        rot.push(r);
    }

    let emb = Embedding::from_parts(tail, partner, rot)?;
    let mut origin_vertex: Vec<Vertex> = (0..n).collect();
    origin_vertex.extend(cyc_vertices.iter().copied());
    let right: Vec<Vertex> = (n..n + l).collect();
    Ok(CylinderGraph {
        emb,
        origin_vertex,
        origin_dart,
        cycle: c.clone(),
        left: cyc_vertices,
        right,
        left_darts: c.darts.clone(),
        right_darts: (0..l).map(|i| nd + 2 * i).collect(),
        labels,
        original_vertices: n,
    })
}

/// Merge a coloring of the cylinder vertices into a coloring of the
/// torus map. Corresponding boundary copies must agree.
pub fn glue(cyl: &CylinderGraph, coloring: &[u8]) -> Result<Vec<u8>> {
    if coloring.len() != cyl.num_vertices() {
        return Err(Error::Precondition("coloring must cover every cylinder vertex".into()));
    }
    for (&a, &b) in cyl.left.iter().zip(&cyl.right) {
        if coloring[a] != coloring[b] {
            return Err(Error::BoundaryColorMismatch { vertex: a });
        }
    }
    Ok(coloring[..cyl.original_vertices].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::build_cayley;

    #[test]
    fn cut_gamma37_along_seven_cycle() {
        let g = build_cayley(37, 1, 10).unwrap();
        let c = g.walk_from_vertices(&[0, 1, 2, 3, 4, 15, 26]).unwrap();
        let cyl = cut_along(&g, &c).unwrap();
        assert_eq!(cyl.num_vertices(), 44);
        assert_eq!(cyl.left.len(), 7);
        assert_eq!(cyl.right.len(), 7);
        // annulus plus two hole faces
        assert_eq!(cyl.emb.euler_characteristic(), 2);
        let faces = cyl.emb.faces();
        let hole_l = cyl.left_hole();
        assert_eq!(faces.walks[faces.face_of[hole_l[0]]].len(), 7);
        for v in 0..37 {
            if !c.vertices(g.embedding()).contains(&v) {
                assert_eq!(cyl.emb.degree(v), 6);
            }
        }
        // boundary degrees split the original degree plus the two cycle edges
        for (&a, &b) in cyl.left.iter().zip(&cyl.right) {
            assert_eq!(cyl.emb.degree(a) + cyl.emb.degree(b), 6 + 2);
        }
    }

    #[test]
    fn cut_along_face_is_contractible() {
        let g = build_cayley(37, 1, 10).unwrap();
        let face = CycleWalk::new(g.faces().walks[0].clone());
        assert_eq!(cut_along(&g, &face).unwrap_err(), Error::Contractible);
    }

    #[test]
    fn cut_rejects_non_simple() {
        let g = build_cayley(37, 1, 10).unwrap();
        let w = g.walk_from_vertices(&[0, 1, 0, 1]).unwrap();
        assert_eq!(cut_along(&g, &w).unwrap_err(), Error::NotSimple);
    }

    #[test]
    fn glue_checks_boundary() {
        let g = build_cayley(37, 1, 10).unwrap();
        let c = g.walk_from_vertices(&[0, 1, 2, 3, 4, 15, 26]).unwrap();
        let cyl = cut_along(&g, &c).unwrap();
        let mut coloring = vec![0u8; 44];
        for (i, v) in cyl.right.iter().enumerate() {
            coloring[*v] = coloring[cyl.left[i]];
        }
        assert_eq!(glue(&cyl, &coloring).unwrap().len(), 37);
        coloring[cyl.right[3]] = 2;
        assert_eq!(glue(&cyl, &coloring).unwrap_err(), Error::BoundaryColorMismatch { vertex: 3 });
    }
}
