//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use num_traits::Signed;
use rand::Rng;
use tcolor::cayley::{build_cayley, lattice_quotient};
use tcolor::embedding::Vertex;
use tcolor::homotopy::Homotopy;
use tcolor::lattice::{HomotopyClass, Mat2, Vec2};
use tcolor::planar_color::SphereMap;
use tcolor::schrijver_geometry::{qf, Point, RationalPolygon, Q};
use tcolor::torus_map::{CycleWalk, TorusMap};

/// Rotation lists of the octahedron.
pub fn octahedron() -> Vec<Vec<usize>> {
    vec![vec![1, 2, 3, 4], vec![0, 4, 5, 2], vec![0, 1, 5, 3], vec![0, 2, 5, 4], vec![0, 3, 5, 1], vec![1, 4, 3, 2]]
}

fn insert_after(list: &mut Vec<usize>, after: usize, new: &[usize]) {
    let i = list.iter().position(|&x| x == after).expect("neighbour present");
    for (k, &v) in new.iter().enumerate() {
        list.insert(i + 1 + k, v);
    }
}

/// Put a triangle inside the face `(a, b, c)`, where `c` follows `b`
/// in the rotation at `a`. Every old corner gains two edges and the
/// three new vertices have degree 4.
pub fn insert_triangle(rot: &mut Vec<Vec<usize>>, a: usize, i: usize) {
    let b = rot[a][i];
    let c = rot[a][(i + 1) % rot[a].len()];
    let (x, y, z) = (rot.len(), rot.len() + 1, rot.len() + 2);
    insert_after(&mut rot[a], b, &[z, y]);
    insert_after(&mut rot[b], c, &[x, z]);
    insert_after(&mut rot[c], a, &[y, x]);
    rot.push(vec![b, c, y, z]);
    rot.push(vec![a, z, x, c]);
    rot.push(vec![y, a, b, x]);
}

pub fn sphere_text(rot: &[Vec<usize>]) -> String {
    let mut s = format!("SPHERE 1\nV {}\n", rot.len());
    for (v, r) in rot.iter().enumerate() {
        let nbrs: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!("{v} : {}\n", nbrs.join(" ")));
    }
    s
}

/// A plane Eulerian triangulation grown from the octahedron by
/// `inserts` random triangle insertions.
pub fn random_sphere<R: Rng>(rng: &mut R, inserts: usize) -> SphereMap {
    let mut rot = octahedron();
    for _ in 0..inserts {
        let a = rng.gen_range(0..rot.len());
        let i = rng.gen_range(0..rot[a].len());
        insert_triangle(&mut rot, a, i);
    }
    SphereMap::load(&sphere_text(&rot)).expect("insertions keep a sphere")
}

/// Number of proper 3-colorings, by exhaustive backtracking.
pub fn count_3colorings(adj: &[Vec<Vertex>]) -> u64 {
    fn go(v: usize, adj: &[Vec<Vertex>], col: &mut [u8]) -> u64 {
        if v == adj.len() {
            return 1;
        }
        let mut total = 0;
        for c in 0..3 {
            if adj[v].iter().all(|&w| w >= v || col[w] != c) {
                col[v] = c;
                total += go(v + 1, adj, col);
            }
        }
        total
    }
    go(0, adj, &mut vec![u8::MAX; adj.len()])
}

/// Whether two colorings differ only by a renaming of the colors.
pub fn same_up_to_permutation(a: &[u8], b: &[u8]) -> bool {
    let mut fwd = HashMap::new();
    let mut back = HashMap::new();
    a.iter().zip(b).all(|(&x, &y)| *fwd.entry(x).or_insert(y) == y && *back.entry(y).or_insert(x) == x)
}

pub fn is_proper(adj: &[Vec<Vertex>], col: &[u8]) -> bool {
    adj.iter().enumerate().all(|(v, ns)| ns.iter().all(|&w| col[v] != col[w]))
}

/// Every simple cycle of a simple graph, once per orientation class,
/// as vertex lists starting at their smallest vertex.
pub fn all_simple_cycles(adj: &[Vec<Vertex>]) -> Vec<Vec<Vertex>> {
    fn dfs(s: usize, adj: &[Vec<Vertex>], path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<Vertex>>) {
        let v = *path.last().unwrap();
        for &w in &adj[v] {
            if w == s && path.len() >= 3 && path[1] < v {
                out.push(path.clone());
            } else if w > s && !on[w] {
                on[w] = true;
                path.push(w);
                dfs(s, adj, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; adj.len()];
    for s in 0..adj.len() {
        on[s] = true;
        dfs(s, adj, &mut vec![s], &mut on, &mut out);
        on[s] = false;
    }
    out
}

/// Simple cycles grouped by class, each oriented so its class has a
/// positive leading coordinate; the value holds vertex bitmasks.
pub fn cycles_by_class(g: &TorusMap, hom: &Homotopy) -> HashMap<HomotopyClass, Vec<u64>> {
    assert!(g.num_vertices() <= 64);
    let mut by: HashMap<HomotopyClass, Vec<u64>> = HashMap::new();
    for vs in all_simple_cycles(&g.embedding().adjacency()) {
        let w = g.walk_from_vertices(&vs).expect("cycle of a simple graph");
        let h = canonical_sign(hom.class_of(&w));
        if !h.is_zero() {
            by.entry(h).or_default().push(vs.iter().fold(0u64, |m, &v| m | 1 << v));
        }
    }
    by
}

pub fn canonical_sign(h: Vec2) -> Vec2 {
    if h.x < 0 || (h.x == 0 && h.y < 0) {
        -h
    } else {
        h
    }
}

/// Whether `k` of the given vertex sets are pairwise disjoint.
pub fn k_disjoint(sets: &[u64], k: usize) -> bool {
    fn go(sets: &[u64], from: usize, used: u64, k: usize) -> bool {
        k == 0 || (from..sets.len()).any(|i| sets[i] & used == 0 && go(sets, i + 1, used | sets[i], k - 1))
    }
    go(sets, 0, 0, k)
}

/// Torus triangulations with at most 12 vertices: circulants with
/// `s₁ = 1` and all lattice quotients in Hermite form.
pub fn small_corpus() -> Vec<(String, TorusMap)> {
    let mut out = Vec::new();
    for n in 7..=12usize {
        for s2 in 2..n as i64 {
            if let Ok(g) = build_cayley(n, 1, s2) {
                out.push((format!("cayley({n},1,{s2})"), g));
            }
        }
    }
    for d1 in 1..=12i64 {
        for d2 in 1..=12 / d1 {
            for a in 0..d1 {
                let m = Mat2::new(d1, 0, a, d2);
                if let Ok(g) = lattice_quotient(&m) {
                    out.push((format!("lattice[[{d1},0],[{a},{d2}]]"), g));
                }
            }
        }
    }
    out
}

/// A random lattice quotient with between 25 and 81 vertices.
pub fn random_quotient<R: Rng>(rng: &mut R) -> (Mat2, TorusMap) {
    loop {
        let (d1, d2) = (rng.gen_range(5..=9), rng.gen_range(5..=9));
        let m = Mat2::new(d1, 0, rng.gen_range(0..d1), d2);
        if let Ok(g) = lattice_quotient(&m) {
            return (m, g);
        }
    }
}

/// Convex hull of random rational points and their negations.
pub fn random_symmetric_polygon<R: Rng>(rng: &mut R) -> RationalPolygon {
    loop {
        let k = rng.gen_range(2..=5);
        let mut pts = Vec::new();
        for _ in 0..k {
            let p = Point::new(qf(rng.gen_range(-20..=20), rng.gen_range(1..=6)), qf(rng.gen_range(-20..=20), rng.gen_range(1..=6)));
            pts.push(p.neg());
            pts.push(p);
        }
        if let Ok(p) = RationalPolygon::hull(&pts) {
            return p;
        }
    }
}

/// `min` over nonzero integer points of the gauge of a symmetric
/// polygon, by scanning every point of the box that `upper·P` fits in.
pub fn brute_lambda(p: &RationalPolygon, upper: Q) -> Q {
    let gauge = |x: i128, y: i128| {
        p.halfplanes()
            .iter()
            .map(|h| Q::new(h.a * x + h.b * y, h.c))
            .max()
            .expect("bounded polygon has facets")
    };
    let reach = p.vertices().iter().map(|v| v.x.abs().max(v.y.abs())).max().unwrap() * upper;
    let r = reach.ceil().to_integer();
    let mut best = upper;
    for x in -r..=r {
        for y in -r..=r {
            if (x, y) != (0, 0) {
                best = best.min(gauge(x, y));
            }
        }
    }
    best
}

/// Closed walks of length at most `len` from every vertex, reporting
/// whether any has a non-zero label sum.
pub fn has_noncontractible_walk(g: &TorusMap, len: usize) -> bool {
    fn go(g: &TorusMap, start: usize, v: usize, sum: Vec2, left: usize) -> bool {
        if v == start && !sum.is_zero() {
            return true;
        }
        if left == 0 {
            return false;
        }
        let e = g.embedding();
        e.rotation(v).iter().any(|&d| go(g, start, e.head(d), sum + g.label(d), left - 1))
    }
    (0..g.num_vertices()).any(|s| {
        let e = g.embedding();
        e.rotation(s).iter().any(|&d| go(g, s, e.head(d), g.label(d), len - 1))
    })
}

pub fn walk_vertices(g: &TorusMap, w: &CycleWalk) -> Vec<Vertex> {
    w.vertices(g.embedding())
}
