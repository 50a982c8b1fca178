//! Families of pairwise vertex-disjoint cycles in one homotopy class.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::embedding::{Dart, Vertex};
use crate::error::{Error, Result};
use crate::homotopy::Homotopy;
use crate::lattice::{HomotopyClass, Vec2};
use crate::schrijver_geometry::{truncated_pg, HalfPlane, SchrijverPolygon};
use crate::torus_map::{cut_along, CycleWalk, CylinderGraph, TorusMap};

/// Exhaustive search is only attempted on maps this small.
pub const EXHAUSTIVE_VERTEX_CAP: usize = 60;

/// Peeling seeds may be this much longer than a shortest cycle.
const SEED_SLACK: usize = 2;
const SEED_BUDGET: u64 = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleFamily {
    pub class: HomotopyClass,
    pub cycles: Vec<CycleWalk>,
}

impl CycleFamily {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn vertex_lists(&self, g: &TorusMap) -> Vec<Vec<Vertex>> {
        self.cycles.iter().map(|c| c.vertices(g.embedding())).collect()
    }
}

/// Independent check: every member is a closed simple walk of class
/// `h`, and members are pairwise vertex-disjoint.
pub fn verify_family(hom: &Homotopy, family: &CycleFamily) -> Result<()> {
    let emb = hom.map().embedding();
    let mut seen: HashSet<Vertex> = HashSet::new();
    for (i, c) in family.cycles.iter().enumerate() {
        c.check_closed(emb)?;
        if !c.is_simple(emb) {
            return Err(Error::InvalidWalk(format!("member {i} is not simple")));
        }
        let cls = hom.class_of(c);
        if cls != family.class {
            return Err(Error::InvalidWalk(format!("member {i} has class {cls}, expected {}", family.class)));
        }
        for v in c.vertices(emb) {
            if !seen.insert(v) {
                return Err(Error::InvalidWalk(format!("vertex {v} is shared by two members")));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `(kn, -km)` satisfies every computed half-plane.
    Consistent,
    /// A computed half-plane is violated, so no such family exists.
    Inconsistent(HalfPlane),
    Inconclusive(String),
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Consistent => f.write_str("consistent"),
            Verdict::Inconsistent(h) => write!(f, "inconsistent (violates {h})"),
            Verdict::Inconclusive(why) => write!(f, "inconclusive ({why})"),
        }
    }
}

pub fn schrijver_verdict(pg: &SchrijverPolygon, h: HomotopyClass, k: i64) -> Verdict {
    match pg.violation(h, k) {
        Some(hp) => Verdict::Inconsistent(hp),
        None => Verdict::Consistent,
    }
}

/// Necessary condition for `k` disjoint cycles of class `h`, tested on
/// the truncation `P_B`.
pub fn schrijver_check(hom: &Homotopy, h: HomotopyClass, k: i64, bound: i64, jobs: usize) -> Verdict {
    match truncated_pg(hom, bound.max(h.linf()).max(2), jobs) {
        Ok(pg) => schrijver_verdict(&pg, h, k),
        Err(e) => Verdict::Inconclusive(e.to_string()),
    }
}

fn check_primitive(h: HomotopyClass, k: usize) -> Result<()> {
    if h.is_zero() {
        return Err(Error::ZeroClass);
    }
    if !h.is_primitive() {
        return Err(Error::NotPrimitive(h));
    }
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    Ok(())
}

/// Find `k` pairwise disjoint cycles of the primitive class `h`.
///
/// A shortest cycle `L₀` of class `h` is cut open; further members are
/// peeled off the resulting annulus from the left boundary inwards,
/// each time taking the innermost boundary of the region already used.
/// Several choices of `L₀` are tried. Small maps fall back to exhaustive
/// search within `budget` nodes.
pub fn find_disjoint(hom: &Homotopy, h: HomotopyClass, k: usize, budget: u64) -> Result<CycleFamily> {
    let found = match peel_disjoint(hom, h, k)? {
        Ok(fam) => return Ok(fam),
        Err(found) => found,
    };
    if hom.map().num_vertices() <= EXHAUSTIVE_VERTEX_CAP {
        return match exhaustive_disjoint(hom, h, k, budget)? {
            Some(fam) => {
                verify_family(hom, &fam)?;
                Ok(fam)
            }
            None => Err(Error::NotFound(format!("no {k} disjoint cycles of class {h} exist (exhaustive search)"))),
        };
    }
    Err(Error::NotFound(format!("peeling found at most {found} disjoint cycles of class {h}, {k} requested")))
}

/// The peeling stage alone: a verified family, or the largest family
/// size it reached.
pub fn peel_disjoint(hom: &Homotopy, h: HomotopyClass, k: usize) -> Result<std::result::Result<CycleFamily, usize>> {
    check_primitive(h, k)?;
    let g = hom.map();
    let emb = g.embedding();
    let mut tried: BTreeSet<Vec<Dart>> = BTreeSet::new();
    let mut found = 0;
    let limit = hom.shortest_cycle_in_class(h)?.len() + SEED_SLACK;
    for d in 0..emb.num_darts() {
        let Some(mut l0) = hom.simple_cycle_via(d, h, limit, SEED_BUDGET) else { continue };
        // re-seed with the first peeled loop, which hugs the previous seed
        for _ in 0..=k + 1 {
            let mut key = l0.darts.clone();
            key.sort_unstable();
            if !tried.insert(key) {
                break;
            }
            let fam = peel(hom, &l0, h, k)?;
            if fam.len() >= k {
                verify_family(hom, &fam)?;
                return Ok(Ok(fam));
            }
            found = found.max(fam.len());
            match fam.cycles.get(1) {
                Some(next) => l0 = next.clone(),
                None => break,
            }
        }
    }
    Ok(Err(found))
}

/// Greedy peeling in the annulus obtained by cutting along `l0`.
fn peel(hom: &Homotopy, l0: &CycleWalk, h: HomotopyClass, k: usize) -> Result<CycleFamily> {
    let g = hom.map();
    let mut family = CycleFamily { class: h, cycles: vec![l0.clone()] };
    if k == 1 {
        return Ok(family);
    }
    let cyl = cut_along(g, l0)?;
    let target = hom.ambient(h);
    let n = cyl.num_vertices();
    let boundary: HashSet<Vertex> = cyl.left.iter().chain(&cyl.right).copied().collect();
    let mut used = vec![false; n];
    for &v in &cyl.left {
        used[v] = true;
    }
    while family.len() < k {
        let in_h: Vec<bool> = (0..n).map(|v| !used[v] && !boundary.contains(&v)).collect();
        let Some(lp) = leftmost_loop(&cyl, &in_h, target) else { break };
        let mut on_loop = vec![false; n];
        for &d in &lp {
            on_loop[cyl.emb.tail(d)] = true;
        }
        // everything between the left boundary and the new loop is used up
        let mut stack: Vec<Vertex> = cyl.left.clone();
        let mut seen = vec![false; n];
        for &v in &stack {
            seen[v] = true;
        }
        while let Some(v) = stack.pop() {
            used[v] = true;
            for w in cyl.emb.neighbors(v) {
                if !seen[w] && !on_loop[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        for v in 0..n {
            if on_loop[v] {
                used[v] = true;
            }
        }
        family.cycles.push(CycleWalk::new(lp.iter().map(|&d| cyl.origin_dart[d]).collect()));
    }
    Ok(family)
}

fn winding(sum: Vec2, target: Vec2) -> Option<i64> {
    let w = if target.x != 0 { sum.x / target.x } else { sum.y / target.y };
    (w * target == sum).then_some(w)
}

/// The innermost essential loop of `in_h` bounding the region that
/// contains the left hole, oriented along the class.
fn leftmost_loop(cyl: &CylinderGraph, in_h: &[bool], target: Vec2) -> Option<Vec<Dart>> {
    let e = &cyl.emb;
    let faces = e.faces();
    let h_dart = |d: Dart| in_h[e.tail(d)] && in_h[e.head(d)];
    let hole = faces.face_of[cyl.left_hole()[0]];
    let mut in_region = vec![false; faces.len()];
    in_region[hole] = true;
    let mut queue = VecDeque::from([hole]);
    while let Some(f) = queue.pop_front() {
        for &d in &faces.walks[f] {
            if h_dart(d) {
                continue;
            }
            let g = faces.face_of[e.partner(d)];
            if !in_region[g] {
                in_region[g] = true;
                queue.push_back(g);
            }
        }
    }
    let next_h = |d: Dart| {
        let mut x = e.cw(e.partner(d));
        while !h_dart(x) {
            x = e.cw(x);
        }
        x
    };
    let mut visited = vec![false; e.num_darts()];
    for start in 0..e.num_darts() {
        if visited[start] || !h_dart(start) || !in_region[faces.face_of[start]] {
            continue;
        }
        let mut walk = Vec::new();
        let mut d = start;
        loop {
            visited[d] = true;
            walk.push(d);
            d = next_h(d);
            if d == start {
                break;
            }
        }
        let w = winding(cyl.label_sum(&walk), target)?;
        if w != 0 {
            let lp = simple_subloop(cyl, walk, target)?;
            return Some(if winding(cyl.label_sum(&lp), target)? > 0 {
                lp
            } else {
                lp.iter().rev().map(|&d| e.partner(d)).collect()
            });
        }
    }
    None
}

/// Split a closed walk at repeated vertices, keeping a piece that still
/// winds around the annulus, until it is simple.
fn simple_subloop(cyl: &CylinderGraph, mut walk: Vec<Dart>, target: Vec2) -> Option<Vec<Dart>> {
    let e = &cyl.emb;
    loop {
        let mut first_at: Vec<Option<usize>> = vec![None; e.num_vertices()];
        let mut split = None;
        for (j, &d) in walk.iter().enumerate() {
            let v = e.tail(d);
            match first_at[v] {
                Some(i) => {
                    split = Some((i, j));
                    break;
                }
                None => first_at[v] = Some(j),
            }
        }
        let Some((i, j)) = split else { return Some(walk) };
        let inner: Vec<Dart> = walk[i..j].to_vec();
        let outer: Vec<Dart> = walk[j..].iter().chain(&walk[..i]).copied().collect();
        let wi = winding(cyl.label_sum(&inner), target)?;
        walk = if wi != 0 { inner } else { outer };
    }
}

/// All simple cycles of class `h`, each once, oriented along `h`.
pub fn enumerate_class_cycles(hom: &Homotopy, h: HomotopyClass, budget: u64) -> Result<Vec<CycleWalk>> {
    let g = hom.map();
    let emb = g.embedding();
    let n = g.num_vertices();
    let target = hom.ambient(h);
    let mut out: BTreeSet<Vec<Dart>> = BTreeSet::new();
    let mut nodes = 0u64;
    for s in 0..n {
        let mut on_path = vec![false; n];
        on_path[s] = true;
        let mut path: Vec<Dart> = Vec::new();
        // iterative DFS over outgoing darts; vertices other than s must exceed s
        let mut stack: Vec<(Vertex, usize, Vec2)> = vec![(s, 0, Vec2::ZERO)];
        while let Some(top) = stack.last_mut() {
            nodes += 1;
            if nodes > budget {
                return Err(Error::BudgetExhausted { what: "cycle enumeration".into(), budget });
            }
            let (v, idx, sum) = *top;
            let rot = emb.rotation(v);
            if idx >= rot.len() {
                stack.pop();
                if let Some(d) = path.pop() {
                    on_path[emb.head(d)] = false;
                }
                continue;
            }
            top.1 += 1;
            let d = rot[idx];
            let w = emb.head(d);
            let s2 = sum + g.label(d);
            if w == s {
                if path.last().is_some_and(|&p| emb.partner(p) == d) {
                    continue;
                }
                if s2 == target {
                    let mut c = path.clone();
                    c.push(d);
                    out.insert(c);
                }
                continue;
            }
            if w < s || on_path[w] {
                continue;
            }
            on_path[w] = true;
            path.push(d);
            stack.push((w, 0, s2));
        }
    }
    Ok(out.into_iter().map(CycleWalk::new).collect())
}

/// Exhaustive search for `k` disjoint members among all simple cycles
/// of class `h`.
pub fn exhaustive_disjoint(hom: &Homotopy, h: HomotopyClass, k: usize, budget: u64) -> Result<Option<CycleFamily>> {
    check_primitive(h, k)?;
    let emb = hom.map().embedding();
    let cycles = enumerate_class_cycles(hom, h, budget)?;
    let sets: Vec<Vec<Vertex>> = cycles
        .iter()
        .map(|c| {
            let mut v = c.vertices(emb);
            v.sort_unstable();
            v
        })
        .collect();
    let mut order: Vec<usize> = (0..cycles.len()).collect();
    order.sort_by_key(|&i| (sets[i].len(), i));
    let mut chosen = Vec::new();
    let mut used = vec![false; emb.num_vertices()];
    let mut nodes = 0u64;
    if pick(&order, &sets, k, 0, &mut used, &mut chosen, &mut nodes, budget)? {
        return Ok(Some(CycleFamily { class: h, cycles: chosen.iter().map(|&i| cycles[i].clone()).collect() }));
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn pick(
    order: &[usize],
    sets: &[Vec<Vertex>],
    k: usize,
    from: usize,
    used: &mut [bool],
    chosen: &mut Vec<usize>,
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    if chosen.len() == k {
        return Ok(true);
    }
    let free = used.iter().filter(|&&u| !u).count();
    for (pos, &i) in order.iter().enumerate().skip(from) {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExhausted { what: "disjoint cycle search".into(), budget });
        }
        // members are taken in order of size, so the rest need at least this many vertices each
        if sets[i].len() * (k - chosen.len()) > free {
            break;
        }
        if sets[i].iter().any(|&v| used[v]) {
            continue;
        }
        for &v in &sets[i] {
            used[v] = true;
        }
        chosen.push(i);
        if pick(order, sets, k, pos + 1, used, chosen, nodes, budget)? {
            return Ok(true);
        }
        chosen.pop();
        for &v in &sets[i] {
            used[v] = false;
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_cayley, lattice_quotient};
    use crate::lattice::Mat2;

    #[test]
    fn gamma37_single_cycle() {
        let g = build_cayley(37, 1, 10).unwrap();
        let hom = Homotopy::new(&g).unwrap();
        let fam = find_disjoint(&hom, Vec2::new(-2, 3), 1, 1_000_000).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam.cycles[0].len(), 7);
    }

    #[test]
    fn grid_quotient_has_parallel_rows() {
        // 9×9 triangular torus: rows (1,0) are 9 disjoint cycles
        let g = lattice_quotient(&Mat2::new(9, 0, 0, 9)).unwrap();
        let hom = Homotopy::new(&g).unwrap();
        for k in [1, 4, 9] {
            let fam = find_disjoint(&hom, Vec2::new(1, 0), k, 1_000_000).unwrap();
            assert_eq!(fam.len(), k);
            verify_family(&hom, &fam).unwrap();
        }
        assert!(find_disjoint(&hom, Vec2::new(1, 0), 10, 1_000_000).is_err());
        assert!(matches!(schrijver_check(&hom, Vec2::new(1, 0), 10, 2, 1), Verdict::Inconsistent(_)));
        assert_eq!(schrijver_check(&hom, Vec2::new(1, 0), 9, 2, 1), Verdict::Consistent);
    }

    #[test]
    fn square_map() {
        let g = TorusMap::load("TORUSMAP 1\nV 1\n0 : 0/1/0 0/0/1 0/-1/0 0/0/-1\n").unwrap();
        let hom = Homotopy::new(&g).unwrap();
        assert_eq!(schrijver_check(&hom, Vec2::new(1, 0), 1, 2, 1), Verdict::Consistent);
        assert_eq!(find_disjoint(&hom, Vec2::new(1, 0), 1, 1000).unwrap().len(), 1);
        assert!(find_disjoint(&hom, Vec2::new(2, 0), 1, 1000).is_err());
    }

    #[test]
    fn finder_agrees_with_exhaustive_on_small_quotient() {
        let g = lattice_quotient(&Mat2::new(4, 0, 1, 3)).unwrap();
        let hom = Homotopy::new(&g).unwrap();
        for h in [Vec2::new(1, 0), Vec2::new(0, 1), Vec2::new(1, 1), Vec2::new(1, -1)] {
            for k in 1..=4 {
                let ex = exhaustive_disjoint(&hom, h, k, 10_000_000).unwrap().is_some();
                let peeled = peel_disjoint(&hom, h, k).unwrap().is_ok();
                let fd = find_disjoint(&hom, h, k, 10_000_000).is_ok();
                assert!(!peeled || ex, "class {h}, k = {k}");
                assert_eq!(ex, fd, "class {h}, k = {k}");
            }
        }
    }

    #[test]
    fn verifier_rejects_overlap() {
        let g = lattice_quotient(&Mat2::new(9, 0, 0, 9)).unwrap();
        let hom = Homotopy::new(&g).unwrap();
        let c = hom.shortest_cycle_in_class(Vec2::new(1, 0)).unwrap();
        let fam = CycleFamily { class: Vec2::new(1, 0), cycles: vec![c.clone(), c] };
        assert!(verify_family(&hom, &fam).is_err());
    }
}
