//! Completing a cut-open torus triangulation to an Eulerian
//! triangulation of the sphere, and 3-coloring such triangulations.

use std::collections::VecDeque;

use crate::embedding::{Dart, Embedding, Vertex};
use crate::error::{Error, Result};
use crate::torus_map::{parse_map, write_map, MapKind};
use crate::torus_map::{CylinderGraph, TorusMap};
use crate::walk_types::{phi, walk_type};

/// A connected map on the sphere.
#[derive(Clone, Debug)]
pub struct SphereMap {
    pub emb: Embedding,
}

impl SphereMap {
    pub fn new(emb: Embedding) -> Result<Self> {
        if !emb.is_connected() {
            return Err(Error::Disconnected);
        }
        let chi = emb.euler_characteristic();
        if chi != 2 {
            return Err(Error::EulerCharacteristic { chi, expected: 2 });
        }
        Ok(SphereMap { emb })
    }

    pub fn load(text: &str) -> Result<Self> {
        let raw = parse_map(text)?;
        if raw.kind != MapKind::Sphere {
            return Err(Error::InvalidMap("expected a SPHERE 1 header".into()));
        }
        let (emb, _) = raw.into_embedding()?;
        SphereMap::new(emb)
    }

    pub fn to_text(&self) -> String {
        write_map(MapKind::Sphere, &self.emb, None)
    }

    pub fn is_triangulation(&self) -> bool {
        self.emb.faces().walks.iter().all(|w| w.len() == 3)
    }

    pub fn is_eulerian(&self) -> bool {
        self.emb.is_eulerian()
    }
}

/// What was added inside one hole.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HoleFill {
    pub chords: Vec<(Vertex, Vertex)>,
    pub hub: Option<Vertex>,
}

#[derive(Clone, Debug)]
pub struct Completion {
    pub sphere: SphereMap,
    /// Vertices `0..cylinder_vertices` are those of the cylinder.
    pub cylinder_vertices: usize,
    pub left: HoleFill,
    pub right: HoleFill,
}

/// Fill both holes of `cyl` (cut from `g`) with chords or a hub so that
/// every vertex has even degree and every face is a triangle.
pub fn complete_cylinder(g: &TorusMap, cyl: &CylinderGraph) -> Result<Completion> {
    let ty = walk_type(g, &cyl.cycle)?;
    if !ty.is_identity() {
        return Err(Error::Precondition(format!("cut cycle has type {ty}, not the identity")));
    }
    let f = phi(g, &cyl.cycle)?;
    let mut color = vec![u8::MAX; cyl.num_vertices()];
    for (i, (&a, &b)) in cyl.left.iter().zip(&cyl.right).enumerate() {
        color[a] = f[i];
        color[b] = f[i];
    }
    let mut emb = cyl.emb.clone();
    let left = fill_hole(&mut emb, &cyl.left_hole(), &color)?;
    let right = fill_hole(&mut emb, &cyl.right_hole(), &color)?;
    let sphere = SphereMap::new(emb)?;
    validate_completion(&sphere)?;
    Ok(Completion { sphere, cylinder_vertices: cyl.num_vertices(), left, right })
}

fn validate_completion(s: &SphereMap) -> Result<()> {
    if let Some(v) = (0..s.emb.num_vertices()).find(|&v| s.emb.degree(v) % 2 == 1) {
        return Err(Error::Internal(format!("completion left vertex {v} with odd degree")));
    }
    if !s.is_triangulation() {
        return Err(Error::Internal("completion left a non-triangular face".into()));
    }
    Ok(())
}

/// One hole given by its face walk. Corners are `(vertex, outgoing
/// dart)`; chords go in directly counterclockwise after the outgoing dart.
fn fill_hole(emb: &mut Embedding, walk: &[Dart], color: &[u8]) -> Result<HoleFill> {
    let mut corners: Vec<(Vertex, Dart)> = walk.iter().map(|&d| (emb.tail(d), d)).collect();
    let mut fill = HoleFill::default();
    loop {
        let l = corners.len();
        let distinct = {
            let mut seen = [false; 3];
            for &(v, _) in &corners {
                seen[color[v] as usize] = true;
            }
            seen.iter().filter(|&&s| s).count()
        };
        if l == 3 && distinct == 3 {
            return Ok(fill);
        }
        if distinct == 2 {
            let w = emb.add_vertex();
            let mut prev: Option<Dart> = None;
            for &(v, out) in &corners {
                let d = emb.add_edge_after(v, Some(out), w, prev);
                prev = Some(emb.partner(d));
            }
            fill.hub = Some(w);
            return Ok(fill);
        }
        if l < 4 {
            return Err(Error::Internal(format!("hole of length {l} with {distinct} colors")));
        }
        // first v, v′, v″ with distinct colors, scanning from the lowest vertex
        let start = (0..l).min_by_key(|&i| corners[i].0).expect("non-empty hole");
        let i = (0..l)
            .map(|k| (start + k) % l)
            .find(|&i| {
                let (a, b, c) = (corners[i].0, corners[(i + 1) % l].0, corners[(i + 2) % l].0);
                color[a] != color[b] && color[b] != color[c] && color[a] != color[c]
            })
            .ok_or_else(|| Error::Internal("no three consecutive distinct colors on a 3-colored hole".into()))?;
        let (v, out_v) = corners[i];
        let (v2, out_v2) = corners[(i + 2) % l];
        let x = emb.add_edge_after(v, Some(out_v), v2, Some(out_v2));
        fill.chords.push((v, v2));
        corners[i] = (v, x);
        corners.remove((i + 1) % l);
    }
}

/// Proper 3-coloring of an Eulerian triangulation of the sphere,
/// normalized so that vertex 0 gets color 0 and its smallest neighbor
/// color 1.
pub fn three_color(s: &SphereMap) -> Result<Vec<u8>> {
    let seed = s.emb.rotation(0).first().copied().ok_or_else(|| Error::InvalidMap("vertex 0 is isolated".into()))?;
    let c = three_color_from(s, seed)?;
    let n0 = s.emb.neighbors(0).filter(|&w| w != 0).min().expect("vertex 0 has a neighbor");
    let mut sigma = [u8::MAX; 3];
    sigma[c[0] as usize] = 0;
    sigma[c[n0] as usize] = 1;
    sigma[(3 - c[0] - c[n0]) as usize] = 2;
    Ok(c.iter().map(|&x| sigma[x as usize]).collect())
}

/// Propagation from the face on the left of `seed`, whose corners get
/// colors 0, 1, 2 in face order.
pub fn three_color_from(s: &SphereMap, seed: Dart) -> Result<Vec<u8>> {
    let e = &s.emb;
    if !s.is_eulerian() {
        return Err(Error::Precondition("triangulation has a vertex of odd degree".into()));
    }
    if !s.is_triangulation() {
        return Err(Error::Precondition("map has a non-triangular face".into()));
    }
    let faces = e.faces();
    let n = e.num_vertices();
    let mut color = vec![u8::MAX; n];
    let mut done = vec![false; faces.len()];
    let f0 = faces.face_of[seed];
    let mut d = seed;
    for c in 0..3u8 {
        let v = e.tail(d);
        if color[v] != u8::MAX && color[v] != c {
            return Err(Error::PropagationConflict { u: v, v: e.head(d) });
        }
        color[v] = c;
        d = e.face_next(d);
    }
    done[f0] = true;
    let mut queue = VecDeque::from([f0]);
    while let Some(f) = queue.pop_front() {
        for &d in &faces.walks[f] {
            let back = e.partner(d);
            let g = faces.face_of[back];
            let (u, v) = (e.tail(d), e.head(d));
            if color[u] == color[v] {
                return Err(Error::PropagationConflict { u, v });
            }
            let w = e.head(e.face_next(back));
            let want = 3 - color[u] - color[v];
            if color[w] == u8::MAX {
                color[w] = want;
            } else if color[w] != want {
                return Err(Error::PropagationConflict { u, v: w });
            }
            if !done[g] {
                done[g] = true;
                queue.push_back(g);
            }
        }
    }
    if let Some(v) = color.iter().position(|&c| c == u8::MAX) {
        return Err(Error::InvalidMap(format!("vertex {v} was not reached")));
    }
    for d in 0..e.num_darts() {
        if color[e.tail(d)] == color[e.head(d)] {
            return Err(Error::PropagationConflict { u: e.tail(d), v: e.head(d) });
        }
    }
    Ok(color)
}
