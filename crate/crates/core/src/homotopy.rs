//! Homotopy classes of closed walks and searches in the ℤ²-cover.
//!
//! Classes are expressed in coordinates of the Hermite basis of the
//! period lattice Λ; after [`normalize_labels`] that basis is the
//! identity and classes are plain label sums.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rustc_hash::FxHashMap;
use std::sync::OnceLock;

use num_integer::Integer;

use crate::embedding::{Dart, Vertex};
use crate::error::{Error, Result};
use crate::lattice::{coords_in_basis, unimodular_complement, HomotopyClass, Mat2, Vec2};
use crate::torus_map::{CycleWalk, TorusMap};

#[derive(Clone, Copy, Debug)]
struct Step {
    to: Vertex,
    shift: Vec2,
    dart: Dart,
}

/// Step graph of a ℤ²-cover: node `(v, T)` moves to `(to, T + shift)`.
#[derive(Clone, Debug)]
struct Cover {
    steps: Vec<Vec<Step>>,
}

type Node = (Vertex, Vec2);

struct Tree {
    parent: FxHashMap<Node, (Node, Dart)>,
}

impl Tree {
    fn darts_to(&self, mut node: Node) -> Vec<Dart> {
        let mut out = Vec::new();
        while let Some(&(prev, d)) = self.parent.get(&node) {
            out.push(d);
            node = prev;
        }
        out.reverse();
        out
    }

    fn vertices_to(&self, mut node: Node) -> Vec<Vertex> {
        let mut out = vec![node.0];
        while let Some(&(prev, _)) = self.parent.get(&node) {
            out.push(prev.0);
            node = prev;
        }
        out.reverse();
        out
    }
}

impl Cover {
    fn graph(g: &TorusMap) -> Self {
        let e = g.embedding();
        let steps = (0..e.num_vertices())
            .map(|v| e.rotation(v).iter().map(|&d| Step { to: e.head(d), shift: g.label(d), dart: d }).collect())
            .collect();
        Cover { steps }
    }

    /// Vertices sharing a face, shifted by the label sum along the face
    /// boundary between the two corners.
    fn coface(g: &TorusMap) -> Self {
        let e = g.embedding();
        let mut steps: Vec<Vec<Step>> = vec![Vec::new(); e.num_vertices()];
        for walk in &g.faces().walks {
            let mut prefix = Vec::with_capacity(walk.len());
            let mut s = Vec2::ZERO;
            for &d in walk {
                prefix.push(s);
                s += g.label(d);
            }
            for (i, &di) in walk.iter().enumerate() {
                for (j, &dj) in walk.iter().enumerate() {
                    let shift = prefix[j] - prefix[i];
                    if i != j && !(e.tail(di) == e.tail(dj) && shift.is_zero()) {
                        steps[e.tail(di)].push(Step { to: e.tail(dj), shift, dart: usize::MAX });
                    }
                }
            }
        }
        for s in &mut steps {
            s.sort_by_key(|st| (st.to, st.shift.x, st.shift.y));
            s.dedup_by_key(|st| (st.to, st.shift));
        }
        Cover { steps }
    }

    /// Depths of all nodes within `limit` of `(src, 0)`.
    fn distances(&self, src: Vertex, limit: usize) -> FxHashMap<Node, usize> {
        let root = (src, Vec2::ZERO);
        let mut depth = FxHashMap::from_iter([(root, 0)]);
        let mut queue = VecDeque::from([(root, 0)]);
        while let Some((node, d)) = queue.pop_front() {
            if d >= limit {
                continue;
            }
            for st in &self.steps[node.0] {
                let next = (st.to, node.1 + st.shift);
                depth.entry(next).or_insert_with(|| {
                    queue.push_back((next, d + 1));
                    d + 1
                });
            }
        }
        depth
    }

    /// Breadth-first search from `(src, 0)` up to depth `limit`.
    /// `hit` is called on every newly reached node with its depth; the
    /// search stops at the first node for which it returns true.
    fn bfs(&self, src: Vertex, limit: usize, mut hit: impl FnMut(Node, usize) -> bool) -> (Tree, Option<(Node, usize)>) {
        let root = (src, Vec2::ZERO);
        let mut parent: FxHashMap<Node, (Node, Dart)> = FxHashMap::default();
        let mut queue = VecDeque::from([(root, 0)]);
        while let Some((node, d)) = queue.pop_front() {
            if d >= limit {
                break;
            }
            for st in &self.steps[node.0] {
                let next = (st.to, node.1 + st.shift);
                if next == root || parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next, (node, st.dart));
                if hit(next, d + 1) {
                    return (Tree { parent }, Some((next, d + 1)));
                }
                queue.push_back((next, d + 1));
            }
        }
        (Tree { parent }, None)
    }
}

/// Hermite basis of the period lattice.
pub fn lattice_basis(g: &TorusMap) -> Result<Mat2> {
    g.period_lattice().ok_or(Error::DegenerateLattice)
}

/// Rewrite labels so that the period lattice becomes ℤ². Returns the new
/// map and the Hermite basis of the original lattice.
pub fn normalize_labels(g: &TorusMap) -> Result<(TorusMap, Mat2)> {
    let basis = lattice_basis(g)?;
    let pot = g.tree_potential();
    let e = g.embedding();
    let labels = (0..e.num_darts())
        .map(|d| {
            let w = pot[e.tail(d)] + g.label(d) - pot[e.head(d)];
            coords_in_basis(&basis, w).ok_or_else(|| Error::Internal("cycle sum outside the period lattice".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((g.with_labels(labels)?, basis))
}

/// Rewrite the labels of the normalized map by `U`, so that every class
/// `h` becomes `U·h`.
pub fn reparameterize(g: &TorusMap, u: &Mat2) -> Result<TorusMap> {
    if !u.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    let (n, _) = normalize_labels(g)?;
    n.with_labels(n.labels().iter().map(|&l| u.apply(l)).collect())
}

/// Result of a representativity computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representativity {
    pub r: usize,
    /// Class of a minimizing curve.
    pub class: HomotopyClass,
    /// Vertices crossed by a minimizing curve, in order.
    pub crossed: Vec<Vertex>,
    /// Every class reached first from some base vertex, with the
    /// smallest depth at which it was reached. The minimum of these
    /// values is `r`, and every nonzero class was dominated by the
    /// exhaustive search up to depth `r`.
    pub certificate: Vec<(HomotopyClass, usize)>,
}

/// Table of crossing numbers over `|m|, |n| ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingProfile {
    pub bound: i64,
    values: Vec<usize>,
}

impl CrossingProfile {
    pub fn get(&self, h: HomotopyClass) -> Option<usize> {
        if h.linf() > self.bound {
            return None;
        }
        let w = (2 * self.bound + 1) as usize;
        Some(self.values[(h.y + self.bound) as usize * w + (h.x + self.bound) as usize])
    }

    pub fn iter(&self) -> impl Iterator<Item = (HomotopyClass, usize)> + '_ {
        let b = self.bound;
        (-b..=b).flat_map(move |y| (-b..=b).map(move |x| Vec2::new(x, y))).map(|h| (h, self.get(h).unwrap()))
    }
}

/// Homotopy queries on one map. Caches the period basis and both cover
/// step graphs.
#[derive(Clone, Debug)]
pub struct Homotopy<'a> {
    map: &'a TorusMap,
    basis: Mat2,
    graph: Cover,
    coface: Cover,
    transversals: OnceLock<[Transversal; 2]>,
}

/// Vertices of a closed walk together with its translation. A curve
/// through faces whose class is not parallel to the walk must cross
/// one of these vertices.
#[derive(Clone, Debug)]
struct Transversal {
    shift: Vec2,
    vertices: Vec<Vertex>,
}

impl<'a> Homotopy<'a> {
    pub fn new(map: &'a TorusMap) -> Result<Self> {
        Ok(Homotopy {
            map,
            basis: lattice_basis(map)?,
            graph: Cover::graph(map),
            coface: Cover::coface(map),
            transversals: OnceLock::new(),
        })
    }

    pub fn map(&self) -> &TorusMap {
        self.map
    }

    pub fn basis(&self) -> Mat2 {
        self.basis
    }

    /// Translation in label coordinates of the class `h`.
    pub fn ambient(&self, h: HomotopyClass) -> Vec2 {
        h.x * self.basis.row(0) + h.y * self.basis.row(1)
    }

    fn class_of_sum(&self, s: Vec2) -> HomotopyClass {
        coords_in_basis(&self.basis, s).expect("closed walk sums lie in the period lattice")
    }

    pub fn class_of(&self, w: &CycleWalk) -> HomotopyClass {
        self.class_of_sum(w.label_sum(self.map))
    }

    /// Minimum-length closed walk of class `h`; a simple cycle is
    /// preferred among walks of the same length.
    pub fn shortest_cycle_in_class(&self, h: HomotopyClass) -> Result<CycleWalk> {
        if h.is_zero() {
            return Err(Error::ZeroClass);
        }
        let target = self.ambient(h);
        let emb = self.map.embedding();
        let mut best: Option<(CycleWalk, bool)> = None;
        for &v in self.sources_for(target) {
            let limit = match &best {
                None => usize::MAX,
                Some((w, true)) => w.len() - 1,
                Some((w, false)) => w.len(),
            };
            let (tree, found) = self.graph.bfs(v, limit, |node, _| node == (v, target));
            if let Some((node, _)) = found {
                let w = CycleWalk::new(tree.darts_to(node));
                let simple = w.is_simple(emb);
                let better = match &best {
                    None => true,
                    Some((b, bs)) => w.len() < b.len() || (w.len() == b.len() && simple && !bs),
                };
                if better {
                    best = Some((w, simple));
                }
            }
        }
        best.map(|(w, _)| w).ok_or_else(|| Error::NotFound(format!("no closed walk of class {h}")))
    }

    /// Shortest closed walk of class `h` starting and ending at `v`,
    /// of length at most `limit`.
    pub fn shortest_cycle_from(&self, v: Vertex, h: HomotopyClass, limit: usize) -> Option<CycleWalk> {
        if h.is_zero() {
            return None;
        }
        let target = self.ambient(h);
        let (tree, found) = self.graph.bfs(v, limit, |node, _| node == (v, target));
        found.map(|(node, _)| CycleWalk::new(tree.darts_to(node)))
    }

    /// Shortest closed walk of class `h` whose first dart is `d`, of
    /// length at most `limit`.
    pub fn shortest_cycle_via(&self, d: Dart, h: HomotopyClass, limit: usize) -> Option<CycleWalk> {
        let e = self.map.embedding();
        let (u, v) = (e.tail(d), e.head(d));
        let rest = self.ambient(h) - self.map.label(d);
        if v == u && rest.is_zero() {
            return Some(CycleWalk::new(vec![d]));
        }
        let (tree, found) = self.graph.bfs(v, limit.saturating_sub(1), |node, _| node == (u, rest));
        found.map(|(node, _)| {
            let mut darts = vec![d];
            darts.extend(tree.darts_to(node));
            CycleWalk::new(darts)
        })
    }

    /// Shortest simple cycle of class `h` whose first dart is `d`, of
    /// length at most `limit`. Backtracking over walks that stay within
    /// the remaining distance, capped at `budget` extensions.
    pub fn simple_cycle_via(&self, d: Dart, h: HomotopyClass, limit: usize, budget: u64) -> Option<CycleWalk> {
        let e = self.map.embedding();
        let (u, v) = (e.tail(d), e.head(d));
        let rest = self.ambient(h) - self.map.label(d);
        if v == u {
            return rest.is_zero().then(|| CycleWalk::new(vec![d]));
        }
        let dist = self.graph.distances(u, limit.saturating_sub(1));
        // distance from (x, T) to (u, rest) equals that from (u, 0) to (x, T - rest)
        let remaining = |x: Vertex, t: Vec2| dist.get(&(x, t - rest)).copied();
        let d0 = remaining(v, Vec2::ZERO)?;
        let mut on_path = vec![false; e.num_vertices()];
        let mut nodes = 0u64;
        for len in d0 + 1..=limit {
            on_path.fill(false);
            on_path[u] = true;
            on_path[v] = true;
            let mut path = vec![d];
            if self.extend_simple(v, Vec2::ZERO, len - 1, (u, rest), &remaining, &mut on_path, &mut path, &mut nodes, budget) {
                return Some(CycleWalk::new(path));
            }
            if nodes >= budget {
                return None;
            }
        }
        None
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_simple(
        &self,
        x: Vertex,
        t: Vec2,
        left: usize,
        goal: Node,
        remaining: &impl Fn(Vertex, Vec2) -> Option<usize>,
        on_path: &mut [bool],
        path: &mut Vec<Dart>,
        nodes: &mut u64,
        budget: u64,
    ) -> bool {
        if left == 1 {
            return match self.graph.steps[x].iter().find(|st| (st.to, t + st.shift) == goal) {
                Some(st) => {
                    path.push(st.dart);
                    true
                }
                None => false,
            };
        }
        // prefer steps that stay close to the straight segment towards the goal
        let axis = goal.1 + self.map.label(path[0]);
        let mut steps: Vec<&Step> = self.graph.steps[x]
            .iter()
            .filter(|st| !on_path[st.to] && remaining(st.to, t + st.shift).is_some_and(|r| r < left))
            .collect();
        steps.sort_by_key(|st| (t + st.shift - goal.1).det(axis).abs());
        for st in steps {
            *nodes += 1;
            if *nodes >= budget {
                return false;
            }
            on_path[st.to] = true;
            path.push(st.dart);
            if self.extend_simple(st.to, t + st.shift, left - 1, goal, remaining, on_path, path, nodes, budget) {
                return true;
            }
            path.pop();
            on_path[st.to] = false;
        }
        false
    }

    /// `c_G(h)`: fewest vertex crossings of a closed curve of class `h`
    /// that runs through faces and meets the graph only at vertices.
    pub fn crossing_number(&self, h: HomotopyClass) -> usize {
        self.crossing_number_within(h, usize::MAX).expect("every class is realized")
    }

    /// `c_G(h)` if it is at most `limit`.
    pub fn crossing_number_within(&self, h: HomotopyClass, limit: usize) -> Option<usize> {
        if h.is_zero() {
            return Some(0);
        }
        let target = self.ambient(h);
        let mut best: Option<usize> = None;
        for &v in self.sources_for(target) {
            let bound = best.map_or(limit, |b| b - 1);
            if let (_, Some((_, d))) = self.coface.bfs(v, bound, |node, _| node == (v, target)) {
                best = Some(d);
            }
        }
        best
    }

    /// Two shortest closed walks with non-parallel translations.
    fn transversals(&self) -> &[Transversal; 2] {
        self.transversals.get_or_init(|| {
            let first = self.shortest_walk_where(|_| true);
            let a = first.shift;
            [first, self.shortest_walk_where(|t| t.det(a) != 0)]
        })
    }

    /// Vertices that every closed walk or curve of translation `target`
    /// passes through.
    fn sources_for(&self, target: Vec2) -> &[Vertex] {
        self.transversals()
            .iter()
            .filter(|t| t.shift.det(target) != 0)
            .min_by_key(|t| t.vertices.len())
            .map(|t| t.vertices.as_slice())
            .expect("transversals span the lattice")
    }

    fn shortest_walk_where(&self, accept: impl Fn(Vec2) -> bool) -> Transversal {
        let mut best: Option<(usize, Transversal)> = None;
        for v in 0..self.map.num_vertices() {
            let limit = best.as_ref().map_or(usize::MAX, |b| b.0 - 1);
            let (tree, found) = self.graph.bfs(v, limit, |node, _| node.0 == v && !node.1.is_zero() && accept(node.1));
            if let Some((node, d)) = found {
                let mut vertices = tree.vertices_to(node);
                vertices.sort_unstable();
                vertices.dedup();
                best = Some((d, Transversal { shift: node.1, vertices }));
            }
        }
        best.expect("the period lattice has rank two").1
    }

    pub fn representativity(&self) -> Representativity {
        let mut best: Option<(usize, HomotopyClass, Vec<Vertex>)> = None;
        let mut firsts: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        for v in 0..self.map.num_vertices() {
            let limit = best.as_ref().map_or(usize::MAX, |b| b.0);
            let (tree, found) = self.coface.bfs(v, limit, |node, _| node.0 == v && !node.1.is_zero());
            if let Some((node, d)) = found {
                let h = self.class_of_sum(node.1);
                let e = firsts.entry((h.x, h.y)).or_insert(d);
                *e = (*e).min(d);
                if best.as_ref().is_none_or(|b| d < b.0) {
                    let mut crossed = tree.vertices_to(node);
                    crossed.pop();
                    best = Some((d, h, crossed));
                }
            }
        }
        let (r, class, crossed) = best.expect("a torus map has non-contractible curves");
        let certificate = firsts.into_iter().map(|((x, y), d)| (Vec2::new(x, y), d)).collect();
        Representativity { r, class, crossed, certificate }
    }

    /// Crossing numbers of every class with `|m|, |n| ≤ bound`, using up
    /// to `jobs` worker threads.
    pub fn crossing_profile(&self, bound: i64, jobs: usize) -> CrossingProfile {
        let w = (2 * bound + 1) as usize;
        let mut targets: HashMap<Vec2, usize> = HashMap::new();
        for y in -bound..=bound {
            for x in -bound..=bound {
                let h = Vec2::new(x, y);
                if !h.is_zero() {
                    targets.insert(self.ambient(h), (y + bound) as usize * w + (x + bound) as usize);
                }
            }
        }
        // each source only answers the classes its transversal must meet
        let mut sources: Vec<(Vertex, Vec2)> = Vec::new();
        for t in self.transversals() {
            for &v in &t.vertices {
                if !sources.iter().any(|&(u, _)| u == v) {
                    sources.push((v, t.shift));
                }
            }
        }
        let search = |(v, shift): (Vertex, Vec2), values: &mut Vec<usize>| {
            let wanted: HashMap<Vec2, usize> = targets.iter().filter(|(t, _)| t.det(shift) != 0).map(|(&t, &i)| (t, i)).collect();
            let limit = wanted.values().map(|&i| values[i]).max().unwrap_or(0);
            let mut remaining = wanted.len();
            self.coface.bfs(v, limit, |node, d| {
                if node.0 != v {
                    return false;
                }
                if let Some(&idx) = wanted.get(&node.1) {
                    remaining -= 1;
                    if d < values[idx] {
                        values[idx] = d;
                    }
                }
                remaining == 0
            });
        };
        let mut values = vec![usize::MAX; w * w];
        values[bound as usize * w + bound as usize] = 0;
        search(sources[0], &mut values);
        let n = sources.len();
        let jobs = jobs.max(1).min(n);
        let seed = values.clone();
        let partials: Vec<Vec<usize>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs)
                .map(|j| {
                    let mut local = seed.clone();
                    let (search, sources) = (&search, &sources);
                    s.spawn(move || {
                        for k in (1..n).filter(|k| k % jobs == j) {
                            search(sources[k], &mut local);
                        }
                        local
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("profile worker panicked")).collect()
        });
        for p in partials {
            for (a, b) in values.iter_mut().zip(p) {
                *a = (*a).min(b);
            }
        }
        CrossingProfile { bound, values }
    }

    /// A unimodular `U` such that in coordinates `U·h` the class of a
    /// representativity witness is `(1,0)` and `(0,1)` has the smallest
    /// crossing number among classes completing it to a basis.
    pub fn reduced_frame(&self) -> Result<Mat2> {
        let rep = self.representativity();
        let g = rep.class.x.gcd(&rep.class.y).max(1);
        let mut h1 = Vec2::new(rep.class.x / g, rep.class.y / g);
        if h1.x < 0 || (h1.x == 0 && h1.y < 0) {
            h1 = -h1;
        }
        let k0 = unimodular_complement(h1).ok_or(Error::NotPrimitive(h1))?;
        let mut best: Option<((usize, i64, i64), Vec2)> = None;
        // the ambient norm is convex in t; centre the scan on its minimum
        let norm = |t: i64| self.ambient(k0 + t * h1).hex_norm();
        let mut centre = 0i64;
        for step in [1i64, -1] {
            while norm(centre + step) < norm(centre) {
                centre += step;
            }
        }
        let mut ts: Vec<i64> = (centre - 8..=centre + 8).collect();
        ts.sort_by_key(|&t| (norm(t), (t - centre).abs()));
        for t in ts {
            let h2 = k0 + t * h1;
            let limit = best.as_ref().map_or(usize::MAX, |(k, _)| k.0);
            let Some(c) = self.crossing_number_within(h2, limit) else { continue };
            let key = (c, h2.linf(), (t - centre).abs());
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, h2));
            }
        }
        let h2 = best.expect("non-empty scan").1;
        Mat2::from_cols(h1, h2).inverse_unimodular().ok_or(Error::NotUnimodular)
    }
}

pub fn class_of(g: &TorusMap, w: &CycleWalk) -> Result<HomotopyClass> {
    w.check_closed(g.embedding())?;
    Ok(Homotopy::new(g)?.class_of(w))
}

pub fn shortest_cycle_in_class(g: &TorusMap, h: HomotopyClass) -> Result<CycleWalk> {
    Homotopy::new(g)?.shortest_cycle_in_class(h)
}

pub fn crossing_number(g: &TorusMap, h: HomotopyClass) -> Result<usize> {
    Ok(Homotopy::new(g)?.crossing_number(h))
}

pub fn representativity(g: &TorusMap) -> Result<Representativity> {
    Ok(Homotopy::new(g)?.representativity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::build_cayley;

    const SQUARE: &str = "TORUSMAP 1\nV 1\n0 : 0/1/0 0/0/1 0/-1/0 0/0/-1\n";

    #[test]
    fn gamma37_basis_and_class() {
        let g = build_cayley(37, 1, 10).unwrap();
        let (n, basis) = normalize_labels(&g).unwrap();
        assert_eq!(basis, Mat2::new(37, 0, 27, 1));
        assert_eq!(n.period_lattice(), Some(Mat2::IDENTITY));
        let w = g.walk_from_vertices(&[0, 1, 2, 3, 4, 15, 26]).unwrap();
        assert_eq!(w.label_sum(&g), Vec2::new(7, 3));
        assert_eq!(class_of(&g, &w).unwrap(), Vec2::new(-2, 3));
        assert_eq!(class_of(&n, &w).unwrap(), Vec2::new(-2, 3));
    }

    #[test]
    fn gamma37_representativity_is_seven() {
        let g = build_cayley(37, 1, 10).unwrap();
        let h = Homotopy::new(&g).unwrap();
        let rep = h.representativity();
        assert_eq!(rep.r, 7);
        assert_eq!(rep.crossed.len(), 7);
        assert_eq!(h.crossing_number(rep.class), 7);
        let c = h.shortest_cycle_in_class(Vec2::new(-2, 3)).unwrap();
        assert_eq!(c.len(), 7);
        assert!(c.is_simple(g.embedding()));
        assert_eq!(h.crossing_number(Vec2::ZERO), 0);
    }

    #[test]
    fn square_map() {
        let g = TorusMap::load(SQUARE).unwrap();
        let h = Homotopy::new(&g).unwrap();
        assert_eq!(h.shortest_cycle_in_class(Vec2::new(1, 0)).unwrap().len(), 1);
        assert_eq!(h.representativity().r, 1);
        assert_eq!(h.crossing_number(Vec2::new(1, 1)), 1);
        assert_eq!(h.shortest_cycle_in_class(Vec2::ZERO).unwrap_err(), Error::ZeroClass);
    }

    #[test]
    fn profile_matches_single_queries() {
        let g = build_cayley(37, 1, 10).unwrap();
        let h = Homotopy::new(&g).unwrap();
        let p = h.crossing_profile(2, 3);
        for (cls, c) in p.iter() {
            assert_eq!(c, h.crossing_number(cls), "class {cls}");
            assert_eq!(p.get(-cls), Some(c));
        }
    }

    fn crossing_from_every_vertex(h: &Homotopy, cls: HomotopyClass) -> usize {
        let target = h.ambient(cls);
        (0..h.map.num_vertices())
            .filter_map(|v| h.coface.bfs(v, usize::MAX, |node, _| node == (v, target)).1.map(|(_, d)| d))
            .min()
            .unwrap()
    }

    #[test]
    fn transversal_sources_agree_with_all_sources() {
        for m in [Mat2::new(7, 0, 3, 6), Mat2::new(9, 0, 0, 5), Mat2::new(31, 0, 9, 1)] {
            let g = crate::cayley::lattice_quotient(&m).unwrap();
            let h = Homotopy::new(&g).unwrap();
            let p = h.crossing_profile(2, 2);
            for (cls, c) in p.iter().filter(|(c, _)| !c.is_zero()) {
                let brute = crossing_from_every_vertex(&h, cls);
                assert_eq!(c, brute, "{m:?} class {cls}");
                assert_eq!(h.crossing_number(cls), brute);
                let target = h.ambient(cls);
                let shortest = (0..g.num_vertices())
                    .filter_map(|v| h.graph.bfs(v, usize::MAX, |node, _| node == (v, target)).1.map(|(_, d)| d))
                    .min()
                    .unwrap();
                let w = h.shortest_cycle_in_class(cls).unwrap();
                assert_eq!((w.len(), h.class_of(&w)), (shortest, cls));
            }
        }
    }

    #[test]
    fn reparameterization_preserves_representativity() {
        let g = build_cayley(37, 1, 10).unwrap();
        let u = Mat2::new(2, 1, 1, 1);
        let g2 = reparameterize(&g, &u).unwrap();
        assert_eq!(representativity(&g2).unwrap().r, 7);
        assert!(reparameterize(&g, &Mat2::new(2, 0, 0, 1)).is_err());
    }

    #[test]
    fn reduced_frame_sends_witness_to_axis() {
        let g = build_cayley(37, 1, 10).unwrap();
        let h = Homotopy::new(&g).unwrap();
        let u = h.reduced_frame().unwrap();
        let g2 = reparameterize(&g, &u).unwrap();
        let h2 = Homotopy::new(&g2).unwrap();
        assert_eq!(h2.crossing_number(Vec2::new(1, 0)), 7);
    }
}
