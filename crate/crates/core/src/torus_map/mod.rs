//! Graphs cellularly embedded on the torus.
//!
//! A [`TorusMap`] is a rotation system together with a translation
//! label in ℤ² on every dart. The labels describe a lift of the graph to
//! the plane: following the darts of a closed walk and summing labels
//! gives its translation, which is `(0,0)` exactly for contractible
//! walks once the period lattice is known to have rank 2.

mod cut;
mod format;

pub use cut::{cut_along, glue, CylinderGraph};
pub use format::{parse_map, write_map, MapKind, RawMap};

use crate::embedding::{Dart, Embedding, Faces, Vertex};
use crate::error::{Error, Result};
use crate::lattice::{hnf_basis, Mat2, Vec2};

#[derive(Clone, Debug)]
pub struct TorusMap {
    emb: Embedding,
    labels: Vec<Vec2>,
    faces: Faces,
}

impl TorusMap {
    /// Validate and wrap an embedding with dart labels.
    pub fn new(emb: Embedding, labels: Vec<Vec2>) -> Result<Self> {
        if labels.len() != emb.num_darts() {
            return Err(Error::InvalidMap("label table has the wrong length".into()));
        }
        for d in 0..emb.num_darts() {
            if labels[emb.partner(d)] != -labels[d] {
                return Err(Error::LabelAntisymmetry { dart: d });
            }
        }
        if emb.num_vertices() == 0 {
            return Err(Error::InvalidMap("empty map".into()));
        }
        if !emb.is_connected() {
            return Err(Error::Disconnected);
        }
        let faces = emb.faces();
        for walk in &faces.walks {
            let mut sum = Vec2::ZERO;
            for &d in walk {
                sum += labels[d];
            }
            if !sum.is_zero() {
                return Err(Error::NonContractibleFace { dart: walk[0], sum });
            }
        }
        let chi = emb.num_vertices() as i64 - emb.num_edges() as i64 + faces.len() as i64;
        if chi != 0 {
            return Err(Error::EulerCharacteristic { chi, expected: 0 });
        }
        let map = TorusMap { emb, labels, faces };
        if map.period_lattice().is_none() {
            return Err(Error::DegenerateLattice);
        }
        Ok(map)
    }

    /// Parse and validate the `TORUSMAP 1` text format.
    pub fn load(text: &str) -> Result<Self> {
        let raw = parse_map(text)?;
        if raw.kind != MapKind::Torus {
            return Err(Error::Syntax { line: 1, column: 1, message: "expected header TORUSMAP 1".into() });
        }
        let (emb, labels) = raw.into_embedding()?;
        TorusMap::new(emb, labels)
    }

    /// Canonical text form; `load(to_text())` reproduces the map and
    /// writing it again is byte-identical.
    pub fn to_text(&self) -> String {
        format::write_map(MapKind::Torus, &self.emb, Some(&self.labels))
    }

    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }

    pub fn faces(&self) -> &Faces {
        &self.faces
    }

    pub fn label(&self, d: Dart) -> Vec2 {
        self.labels[d]
    }

    pub fn labels(&self) -> &[Vec2] {
        &self.labels
    }

    pub fn num_vertices(&self) -> usize {
        self.emb.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.emb.num_edges()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn is_triangulation(&self) -> bool {
        self.faces.walks.iter().all(|w| w.len() == 3)
    }

    pub fn is_eulerian(&self) -> bool {
        self.emb.is_eulerian()
    }

    /// Label sums of the fundamental cycles of a BFS spanning tree,
    /// one per non-tree edge. They generate the period lattice.
    pub fn fundamental_cycle_sums(&self) -> Vec<Vec2> {
        let potential = self.tree_potential();
        let mut out = Vec::new();
        for d in 0..self.emb.num_darts() {
            if d < self.emb.partner(d) {
                let w = potential[self.emb.tail(d)] + self.labels[d] - potential[self.emb.head(d)];
                if !w.is_zero() {
                    out.push(w);
                }
            }
        }
        out
    }

    /// Sum of labels along BFS tree paths from vertex 0.
    pub(crate) fn tree_potential(&self) -> Vec<Vec2> {
        let n = self.emb.num_vertices();
        let mut pot = vec![Vec2::ZERO; n];
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        while let Some(v) = queue.pop_front() {
            for &d in self.emb.rotation(v) {
                let w = self.emb.head(d);
                if !seen[w] {
                    seen[w] = true;
                    pot[w] = pot[v] + self.labels[d];
                    queue.push_back(w);
                }
            }
        }
        pot
    }

    /// Hermite normal form basis of the period lattice, or `None` when
    /// it has rank < 2.
    pub fn period_lattice(&self) -> Option<Mat2> {
        hnf_basis(self.fundamental_cycle_sums())
    }

    /// The same map with replaced labels. Labels are re-validated.
    pub fn with_labels(&self, labels: Vec<Vec2>) -> Result<TorusMap> {
        TorusMap::new(self.emb.clone(), labels)
    }

    /// Closed walk through the listed vertices (first vertex not
    /// repeated at the end), choosing the lowest-id dart between
    /// consecutive vertices.
    pub fn walk_from_vertices(&self, vs: &[Vertex]) -> Result<CycleWalk> {
        if vs.len() < 2 {
            return Err(Error::InvalidWalk("a closed walk needs at least two vertices".into()));
        }
        let mut darts = Vec::with_capacity(vs.len());
        for i in 0..vs.len() {
            let (u, v) = (vs[i], vs[(i + 1) % vs.len()]);
            if u >= self.num_vertices() || v >= self.num_vertices() {
                return Err(Error::InvalidWalk(format!("vertex {} out of range", u.max(v))));
            }
            let d = self
                .emb
                .rotation(u)
                .iter()
                .copied()
                .filter(|&d| self.emb.head(d) == v)
                .min()
                .ok_or_else(|| Error::InvalidWalk(format!("{u} and {v} are not adjacent")))?;
            darts.push(d);
        }
        Ok(CycleWalk { darts })
    }
}

/// A closed walk given by its darts; dart `i` ends where dart `i+1`
/// starts, and the last dart ends at the tail of the first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleWalk {
    pub darts: Vec<Dart>,
}

impl CycleWalk {
    pub fn new(darts: Vec<Dart>) -> Self {
        CycleWalk { darts }
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Tails of the darts, in order.
    pub fn vertices(&self, emb: &Embedding) -> Vec<Vertex> {
        self.darts.iter().map(|&d| emb.tail(d)).collect()
    }

    pub fn check_closed(&self, emb: &Embedding) -> Result<()> {
        if self.darts.is_empty() {
            return Err(Error::InvalidWalk("empty walk".into()));
        }
        if let Some(&d) = self.darts.iter().find(|&&d| d >= emb.num_darts()) {
            return Err(Error::InvalidWalk(format!("dart {d} does not exist")));
        }
        let n = self.darts.len();
        for i in 0..n {
            let (a, b) = (self.darts[i], self.darts[(i + 1) % n]);
            if emb.head(a) != emb.tail(b) {
                return Err(Error::InvalidWalk(format!("dart {a} does not continue with dart {b}")));
            }
        }
        Ok(())
    }

    pub fn is_simple(&self, emb: &Embedding) -> bool {
        let mut vs = self.vertices(emb);
        vs.sort_unstable();
        vs.windows(2).all(|w| w[0] != w[1])
    }

    pub fn reversed(&self, emb: &Embedding) -> CycleWalk {
        CycleWalk { darts: self.darts.iter().rev().map(|&d| emb.partner(d)).collect() }
    }

    /// Same closed walk starting at dart index `k`.
    pub fn rotated(&self, k: usize) -> CycleWalk {
        let n = self.darts.len();
        CycleWalk { darts: (0..n).map(|i| self.darts[(i + k) % n]).collect() }
    }

    pub fn label_sum(&self, map: &TorusMap) -> Vec2 {
        let mut s = Vec2::ZERO;
        for &d in &self.darts {
            s += map.label(d);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = "TORUSMAP 1\nV 1\n0 : 0/1/0 0/0/1 0/-1/0 0/0/-1\n";

    #[test]
    fn one_vertex_square() {
        let m = TorusMap::load(SQUARE).unwrap();
        assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces()), (1, 2, 1));
        assert_eq!(m.faces().walks[0].len(), 4);
        assert_eq!(m.period_lattice(), Some(Mat2::IDENTITY));
    }

    #[test]
    fn antisymmetry_is_reported() {
        let bad = "TORUSMAP 1\nV 1\n0 : 0/1/0 0/0/1 0/-1/0 0/0/2\n";
        assert!(matches!(TorusMap::load(bad), Err(Error::LabelAntisymmetry { .. })));
    }

    #[test]
    fn non_contractible_face_is_reported() {
        // square with loops swapped in the rotation: faces no longer close up
        let bad = "TORUSMAP 1\nV 1\n0 : 0/1/0 0/-1/0 0/0/1 0/0/-1\n";
        assert!(TorusMap::load(bad).is_err());
    }

    #[test]
    fn degenerate_lattice_is_reported() {
        let bad = "TORUSMAP 1\nV 1\n0 : 0/1/0 0/2/0 0/-1/0 0/-2/0\n";
        let err = TorusMap::load(bad).unwrap_err();
        assert!(matches!(err, Error::DegenerateLattice | Error::NonContractibleFace { .. } | Error::EulerCharacteristic { .. }), "{err}");
    }

    #[test]
    fn walk_helpers() {
        let m = TorusMap::load(SQUARE).unwrap();
        let w = CycleWalk::new(vec![0]);
        w.check_closed(m.embedding()).unwrap();
        assert_eq!(w.label_sum(&m), Vec2::new(1, 0));
        assert_eq!(w.reversed(m.embedding()).label_sum(&m), Vec2::new(-1, 0));
    }
}
