//! Circulant and triangular-lattice-quotient triangulations of the
//! torus, and exact independence / chromatic number solvers.

use std::collections::VecDeque;

use crate::embedding::{Embedding, Vertex};
use crate::error::{Error, Result};
use crate::lattice::{hnf_basis, Mat2, Vec2};
use crate::torus_map::TorusMap;

/// Counterclockwise step directions of the triangular lattice.
const HEX_STEPS: [Vec2; 6] = [
    Vec2::new(1, 0),
    Vec2::new(1, 1),
    Vec2::new(0, 1),
    Vec2::new(-1, 0),
    Vec2::new(-1, -1),
    Vec2::new(0, -1),
];

/// Γ(ℤₙ, {s₁, s₂, s₁+s₂}) with the labels `±s₁ ↦ ±(1,0)`,
/// `±s₂ ↦ ±(0,1)`, `±(s₁+s₂) ↦ ±(1,1)`.
pub fn build_cayley(n: usize, s1: i64, s2: i64) -> Result<TorusMap> {
    if n < 7 {
        return Err(Error::Precondition(format!("n = {n} must be at least 7")));
    }
    let ni = n as i64;
    let gens = [s1, s1 + s2, s2, -s1, -s1 - s2, -s2].map(|g| g.rem_euclid(ni));
    for i in 0..6 {
        if gens[i] == 0 {
            return Err(Error::Precondition("generators must be non-zero mod n".into()));
        }
        for j in 0..i {
            if gens[i] == gens[j] {
                return Err(Error::Precondition("generators and their negations must be distinct mod n".into()));
            }
        }
    }
    let step = |v: usize, k: usize| ((v as i64 + gens[k]).rem_euclid(ni)) as usize;
    build_hex(n, step)
}

/// The quotient of the triangular lattice (steps ±(1,0), ±(0,1),
/// ±(1,1)) by the sublattice spanned by the rows of `lattice`. Vertex
/// `(x, y)` with `0 ≤ x < d₁`, `0 ≤ y < d₂` of the Hermite basis
/// `[[d₁,0],[a,d₂]]` gets id `y·d₁ + x`.
pub fn lattice_quotient(lattice: &Mat2) -> Result<TorusMap> {
    let h = hnf_basis([lattice.row(0), lattice.row(1)]).ok_or(Error::DegenerateLattice)?;
    let (d1, a, d2) = (h.a, h.c, h.d);
    let n = (d1 * d2) as usize;
    let reduce = |p: Vec2| -> usize {
        let q = p.y.div_euclid(d2);
        let y = p.y - q * d2;
        let x = (p.x - q * a).rem_euclid(d1);
        (y * d1 + x) as usize
    };
    let coords = |v: usize| Vec2::new(v as i64 % d1, v as i64 / d1);
    for &s in &HEX_STEPS {
        let t = reduce(s);
        if t == 0 {
            return Err(Error::Precondition(format!("step {s} is a lattice vector (loop)")));
        }
        for &s2 in &HEX_STEPS {
            if s2 != s && reduce(s2) == t {
                return Err(Error::Precondition("two steps coincide modulo the lattice (parallel edges)".into()));
            }
        }
    }
    build_hex(n, |v, k| reduce(coords(v) + HEX_STEPS[k]))
}

fn build_hex(n: usize, step: impl Fn(usize, usize) -> usize) -> Result<TorusMap> {
    let mut tail = Vec::with_capacity(6 * n);
    let mut partner = Vec::with_capacity(6 * n);
    let mut labels = Vec::with_capacity(6 * n);
    let mut rot = Vec::with_capacity(n);
    for v in 0..n {
        let mut r = Vec::with_capacity(6);
        for (k, &lbl) in HEX_STEPS.iter().enumerate() {
            let d = 6 * v + k;
            tail.push(v);
            partner.push(6 * step(v, k) + (k + 3) % 6);
            labels.push(lbl);
            r.push(d);
        }
        rot.push(r);
    }
    let emb = Embedding::from_parts(tail, partner, rot)?;
    TorusMap::new(emb, labels)
}

/// The tetrakis square tiling of an `m × n` torus: grid vertices of
/// degree 8 and one degree-4 vertex at the centre of each square. Grid
/// vertex `(i, j)` gets id `j·m + i`; the centre of the square with
/// lower-left corner `(i, j)` gets id `m·n + j·m + i`. Labels are
/// displacements in half-units, so grid edges carry `(±2, 0)` or
/// `(0, ±2)` and spokes carry `(±1, ±1)`.
pub fn tetrakis(m: usize, n: usize) -> Result<TorusMap> {
    if m < 3 || n < 3 {
        return Err(Error::Precondition(format!("tetrakis {m} x {n} needs both sides at least 3")));
    }
    let cells = m * n;
    let grid = |i: usize, j: usize| (j % n) * m + (i % m);
    let (up, right) = (|j: usize| (j + n - 1) % n, |i: usize| (i + m - 1) % m);
    // Grid darts come first in ccw order E, NE, N, NW, W, SW, S, SE.
    const GRID_STEPS: [(i64, i64); 8] = [(2, 0), (1, 1), (0, 2), (-1, 1), (-2, 0), (-1, -1), (0, -2), (1, -1)];
    let centre_dart = |c: usize, k: usize| 8 * cells + 4 * c + k;
    let mut tail = Vec::with_capacity(12 * cells);
    let mut partner = Vec::with_capacity(12 * cells);
    let mut labels = Vec::with_capacity(12 * cells);
    let mut rot = Vec::with_capacity(2 * cells);
    for j in 0..n {
        for i in 0..m {
            let v = grid(i, j);
            let targets = [
                8 * grid(i + 1, j) + 4,
                centre_dart(grid(i, j), 2),
                8 * grid(i, j + 1) + 6,
                centre_dart(grid(right(i), j), 3),
                8 * grid(right(i), j),
                centre_dart(grid(right(i), up(j)), 0),
                8 * grid(i, up(j)) + 2,
                centre_dart(grid(i, up(j)), 1),
            ];
            for (k, &t) in targets.iter().enumerate() {
                tail.push(v);
                partner.push(t);
                labels.push(Vec2::new(GRID_STEPS[k].0, GRID_STEPS[k].1));
            }
            rot.push((8 * v..8 * v + 8).collect());
        }
    }
    // Centre darts in ccw order NE, NW, SW, SE.
    for j in 0..n {
        for i in 0..m {
            let c = grid(i, j);
            let corners = [8 * grid(i + 1, j + 1) + 5, 8 * grid(i, j + 1) + 7, 8 * grid(i, j) + 1, 8 * grid(i + 1, j) + 3];
            for (&t, (dx, dy)) in corners.iter().zip([(1, 1), (-1, 1), (-1, -1), (1, -1)]) {
                tail.push(cells + c);
                partner.push(t);
                labels.push(Vec2::new(dx, dy));
            }
            rot.push((centre_dart(c, 0)..centre_dart(c, 4)).collect());
        }
    }
    let emb = Embedding::from_parts(tail, partner, rot)?;
    TorusMap::new(emb, labels)
}

/// Dense bitset over at most `n` vertices.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn full(n: usize) -> Self {
        let mut b = Bits::empty(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn and_not(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentSet {
    pub size: usize,
    pub witness: Vec<Vertex>,
    pub nodes: u64,
}

/// Exact maximum independent set by branch and bound. Vertices are
/// branched in breadth-first order from vertex 0; the bound is a greedy
/// clique cover of the undecided vertices.
pub fn independence_number(adj: &[Vec<Vertex>], budget: u64) -> Result<IndependentSet> {
    let n = adj.len();
    if n > 256 {
        return Err(Error::Precondition("independence_number supports at most 256 vertices".into()));
    }
    let nbr: Vec<Bits> = adj
        .iter()
        .map(|ns| {
            let mut b = Bits::empty(n);
            for &w in ns {
                b.set(w);
            }
            b
        })
        .collect();
    let order = bfs_order(adj);
    let mut best: Vec<Vertex> = Vec::new();
    let mut chosen = Vec::new();
    let mut nodes = 0u64;
    mis_branch(&nbr, &order, Bits::full(n), &mut chosen, &mut best, &mut nodes, budget)?;
    best.sort_unstable();
    Ok(IndependentSet { size: best.len(), witness: best, nodes })
}

fn bfs_order(adj: &[Vec<Vertex>]) -> Vec<Vertex> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    order
}

fn clique_cover_bound(nbr: &[Bits], order: &[Vertex], cand: &Bits) -> usize {
    let mut cliques: Vec<Bits> = Vec::new();
    for &v in order {
        if !cand.has(v) {
            continue;
        }
        // a clique accepts v if v is adjacent to all its members
        match cliques.iter_mut().find(|c| c.and_not(&nbr[v]).is_empty()) {
            Some(c) => c.set(v),
            None => {
                let mut c = Bits::empty(nbr.len());
                c.set(v);
                cliques.push(c);
            }
        }
    }
    cliques.len()
}

fn mis_branch(
    nbr: &[Bits],
    order: &[Vertex],
    cand: Bits,
    chosen: &mut Vec<Vertex>,
    best: &mut Vec<Vertex>,
    nodes: &mut u64,
    budget: u64,
) -> Result<()> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExhausted { what: "independence number".into(), budget });
    }
    if cand.is_empty() {
        if chosen.len() > best.len() {
            *best = chosen.clone();
        }
        return Ok(());
    }
    if chosen.len() + clique_cover_bound(nbr, order, &cand) <= best.len() {
        return Ok(());
    }
    // branch on the undecided vertex with the most undecided neighbors
    let v = order
        .iter()
        .copied()
        .filter(|&v| cand.has(v))
        .max_by_key(|&v| (nbr[v].and(&cand).count(), std::cmp::Reverse(v)))
        .expect("non-empty candidate set");
    let deg = nbr[v].and(&cand).count();
    let mut with_v = cand.and_not(&nbr[v]);
    with_v.clear(v);
    chosen.push(v);
    mis_branch(nbr, order, with_v, chosen, best, nodes, budget)?;
    chosen.pop();
    if deg > 0 {
        let mut without = cand;
        without.clear(v);
        mis_branch(nbr, order, without, chosen, best, nodes, budget)?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticResult {
    /// Exact chromatic number when it is at most `kmax`.
    pub chi: Option<usize>,
    /// A proper coloring with `chi` colors.
    pub witness: Vec<u8>,
    /// Color counts shown impossible by exhaustive search.
    pub refuted: Vec<usize>,
    pub nodes: u64,
}

/// Exact chromatic number up to `kmax` by DSATUR backtracking. Colors are
/// introduced in increasing order only, so the first vertex gets color
/// 0 and its first colored neighbor color 1.
pub fn chromatic_number(adj: &[Vec<Vertex>], kmax: usize, budget: u64) -> Result<ChromaticResult> {
    let n = adj.len();
    if n == 0 {
        return Ok(ChromaticResult { chi: Some(0), witness: vec![], refuted: vec![], nodes: 0 });
    }
    if adj.iter().enumerate().any(|(v, ns)| ns.contains(&v)) {
        return Err(Error::Precondition("graph has a loop".into()));
    }
    let lower = greedy_clique(adj).max(1);
    let mut refuted: Vec<usize> = (1..lower).collect();
    let mut nodes = 0u64;
    for k in lower..=kmax.min(n).min(255) {
        let mut colors = vec![u8::MAX; n];
        if color_rec(adj, k, &mut colors, 0, 0, &mut nodes, budget)? {
            return Ok(ChromaticResult { chi: Some(k), witness: colors, refuted, nodes });
        }
        refuted.push(k);
    }
    Ok(ChromaticResult { chi: None, witness: vec![], refuted, nodes })
}

fn greedy_clique(adj: &[Vec<Vertex>]) -> usize {
    let mut best = 0;
    for s in 0..adj.len() {
        let mut clique = vec![s];
        let mut cands: Vec<Vertex> = adj[s].clone();
        cands.sort_by_key(|&w| std::cmp::Reverse(adj[w].len()));
        for w in cands {
            if clique.iter().all(|&c| adj[w].contains(&c)) {
                clique.push(w);
            }
        }
        best = best.max(clique.len());
    }
    best
}

fn color_rec(
    adj: &[Vec<Vertex>],
    k: usize,
    colors: &mut [u8],
    colored: usize,
    used: usize,
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExhausted { what: "chromatic number".into(), budget });
    }
    let n = adj.len();
    if colored == n {
        return Ok(true);
    }
    // DSATUR: most distinct neighbor colors, then most uncolored neighbors, then lowest id
    let mut pick = usize::MAX;
    let mut key = (0usize, 0usize);
    for v in 0..n {
        if colors[v] != u8::MAX {
            continue;
        }
        let mut mask = 0u64;
        let mut free = 0;
        for &w in &adj[v] {
            if colors[w] == u8::MAX {
                free += 1;
            } else {
                mask |= 1 << colors[w];
            }
        }
        let sat = mask.count_ones() as usize;
        if sat >= k {
            return Ok(false);
        }
        if pick == usize::MAX || (sat, free) > key {
            pick = v;
            key = (sat, free);
        }
    }
    let v = pick;
    let mut mask = 0u64;
    for &w in &adj[v] {
        if colors[w] != u8::MAX {
            mask |= 1 << colors[w];
        }
    }
    for c in 0..k.min(used + 1) {
        if mask >> c & 1 == 1 {
            continue;
        }
        colors[v] = c as u8;
        if color_rec(adj, k, colors, colored + 1, used.max(c + 1), nodes, budget)? {
            return Ok(true);
        }
    }
    colors[v] = u8::MAX;
    Ok(false)
}

/// Whether `i ↦ i + 1 (mod n)` is an automorphism of the rotation system
/// produced by [`build_cayley`] (it maps dart `6i + k` to `6(i+1) + k`).
pub fn is_shift_automorphism(g: &TorusMap) -> bool {
    let e = g.embedding();
    let n = e.num_vertices();
    if e.num_darts() != 6 * n {
        return false;
    }
    let shift = |d: usize| (6 * (d / 6 + 1) + d % 6) % (6 * n);
    (0..e.num_darts()).all(|d| {
        e.tail(shift(d)) == (e.tail(d) + 1) % n
            && e.partner(shift(d)) == shift(e.partner(d))
            && e.position(shift(d)) == e.position(d)
            && g.label(shift(d)) == g.label(d)
    })
}
