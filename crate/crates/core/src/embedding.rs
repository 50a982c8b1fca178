//! Rotation systems: the combinatorial part shared by torus maps,
//! cut-open cylinders and sphere maps.
//!
//! Darts are dense indices. Every dart has a tail vertex and a partner
//! (the reversed dart); the head of a dart is the tail of its partner.
//! `rot[v]` lists the darts leaving `v` in counterclockwise order. The
//! face to the left of a dart `d = u→v` continues with the dart that
//! precedes `partner(d)` in the counterclockwise order at `v`.

use crate::error::{Error, Result};

pub type Dart = usize;
pub type Vertex = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    tail: Vec<Vertex>,
    partner: Vec<Dart>,
    rot: Vec<Vec<Dart>>,
    pos: Vec<usize>,
}

/// The faces of an embedding, each as the cyclic list of darts that
/// have the face on their left.
#[derive(Clone, Debug)]
pub struct Faces {
    pub walks: Vec<Vec<Dart>>,
    /// Face containing each dart.
    pub face_of: Vec<usize>,
    /// Position of each dart inside its face walk.
    pub index_in_face: Vec<usize>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }
}

impl Embedding {
    /// Build from raw parts. `rot[v]` must list exactly the darts whose
    /// tail is `v`.
    pub fn from_parts(tail: Vec<Vertex>, partner: Vec<Dart>, rot: Vec<Vec<Dart>>) -> Result<Self> {
        let n = tail.len();
        if partner.len() != n {
            return Err(Error::BrokenInvolution("partner table has the wrong length".into()));
        }
        for (d, &p) in partner.iter().enumerate() {
            if p >= n || p == d || partner[p] != d {
                return Err(Error::BrokenInvolution(format!("dart {d} has partner {p}")));
            }
        }
        let mut pos = vec![usize::MAX; n];
        for (v, darts) in rot.iter().enumerate() {
            for (i, &d) in darts.iter().enumerate() {
                if d >= n || tail[d] != v || pos[d] != usize::MAX {
                    return Err(Error::InvalidMap(format!("rotation of vertex {v} is inconsistent at dart {d}")));
                }
                pos[d] = i;
            }
        }
        if let Some(d) = pos.iter().position(|&p| p == usize::MAX) {
            return Err(Error::InvalidMap(format!("dart {d} missing from its rotation")));
        }
        Ok(Embedding { tail, partner, rot, pos })
    }

    pub fn num_vertices(&self) -> usize {
        self.rot.len()
    }

    pub fn num_darts(&self) -> usize {
        self.tail.len()
    }

    pub fn num_edges(&self) -> usize {
        self.tail.len() / 2
    }

    pub fn tail(&self, d: Dart) -> Vertex {
        self.tail[d]
    }

    pub fn head(&self, d: Dart) -> Vertex {
        self.tail[self.partner[d]]
    }

    pub fn partner(&self, d: Dart) -> Dart {
        self.partner[d]
    }

    pub fn rotation(&self, v: Vertex) -> &[Dart] {
        &self.rot[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rot[v].len()
    }

    /// Position of `d` in the rotation of its tail.
    pub fn position(&self, d: Dart) -> usize {
        self.pos[d]
    }

    /// Next dart counterclockwise around the tail of `d`.
    pub fn ccw(&self, d: Dart) -> Dart {
        let r = &self.rot[self.tail[d]];
        r[(self.pos[d] + 1) % r.len()]
    }

    /// Next dart clockwise around the tail of `d`.
    pub fn cw(&self, d: Dart) -> Dart {
        let r = &self.rot[self.tail[d]];
        r[(self.pos[d] + r.len() - 1) % r.len()]
    }

    /// Successor of `d` along the face on its left.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.cw(self.partner[d])
    }

    /// Number of faces in the wedge to the left of the walk that enters
    /// a vertex by `d_in` and leaves it by `d_out`.
    pub fn left_fan(&self, d_in: Dart, d_out: Dart) -> usize {
        let back = self.partner[d_in];
        let v = self.tail[d_out];
        debug_assert_eq!(self.tail[back], v);
        let deg = self.rot[v].len();
        (self.pos[back] + deg - self.pos[d_out]) % deg
    }

    pub fn faces(&self) -> Faces {
        let n = self.num_darts();
        let mut face_of = vec![usize::MAX; n];
        let mut index_in_face = vec![0; n];
        let mut walks = Vec::new();
        for start in 0..n {
            if face_of[start] != usize::MAX {
                continue;
            }
            let f = walks.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = f;
                index_in_face[d] = walk.len();
                walk.push(d);
                d = self.face_next(d);
                if d == start {
                    break;
                }
            }
            walks.push(walk);
        }
        Faces { walks, face_of, index_in_face }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.faces().len() as i64
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &d in &self.rot[v] {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    pub fn is_eulerian(&self) -> bool {
        self.rot.iter().all(|r| r.len() % 2 == 0)
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.rot[v].iter().map(move |&d| self.head(d))
    }

    /// Simple adjacency lists (parallel edges collapsed, loops dropped).
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        (0..self.num_vertices())
            .map(|v| {
                let mut ns: Vec<Vertex> = self.neighbors(v).filter(|&w| w != v).collect();
                ns.sort_unstable();
                ns.dedup();
                ns
            })
            .collect()
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.rot.push(Vec::new());
        self.rot.len() - 1
    }

    /// Insert `d` into the rotation of its tail directly counterclockwise
    /// after `anchor` (or as the only dart when `anchor` is `None`).
    fn insert_dart_after(&mut self, v: Vertex, anchor: Option<Dart>, d: Dart) {
        let at = match anchor {
            Some(a) => {
                debug_assert_eq!(self.tail[a], v);
                self.pos[a] + 1
            }
            None => self.rot[v].len(),
        };
        self.rot[v].insert(at, d);
        for i in at..self.rot[v].len() {
            let x = self.rot[v][i];
            self.pos[x] = i;
        }
    }

    /// Add an edge `u→v` whose dart at `u` sits just counterclockwise
    /// after `anchor_u` and whose reverse at `v` sits just after
    /// `anchor_v`. `None` anchors are only allowed at isolated vertices.
    /// Returns the new dart `u→v`.
    pub fn add_edge_after(&mut self, u: Vertex, anchor_u: Option<Dart>, v: Vertex, anchor_v: Option<Dart>) -> Dart {
        let d = self.tail.len();
        let e = d + 1;
        self.tail.push(u);
        self.tail.push(v);
        self.partner.push(e);
        self.partner.push(d);
        self.pos.push(0);
        self.pos.push(0);
        self.insert_dart_after(u, anchor_u, d);
        self.insert_dart_after(v, anchor_v, e);
        d
    }

    /// Append a dart to the end of `v`'s rotation; used by builders that
    /// lay out a rotation in order.
    pub fn push_rotation(&mut self, v: Vertex, d: Dart) {
        self.insert_dart_after(v, None, d);
    }
}
