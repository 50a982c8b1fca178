//! Four-coloring Eulerian triangulations of the torus of
//! representativity at least ten.

use serde::{Deserialize, Serialize};

use crate::disjoint_cycles::{verify_family, CycleFamily};
use crate::embedding::Vertex;
use crate::error::{Error, Result};
use crate::homotopy::Homotopy;
use crate::lattice::HomotopyClass;
use crate::planar_color::{complete_cylinder, three_color, Completion, HoleFill};
use crate::schrijver_geometry::{four_class_select, ClassSelection, SelectionMode};
use crate::torus_map::{cut_along, glue, CycleWalk, CylinderGraph, TorusMap};
use crate::walk_types::{phi, walk_type, TypeMap, WalkType};

pub const MIN_REPRESENTATIVITY: usize = 10;

/// The three normal forms of `π` and the functions `f₁..f₄` for each.
pub const TABLE: [(WalkType, [[u8; 3]; 4]); 3] = [
    (WalkType([0, 1, 2]), [[0, 1, 2], [0, 1, 2], [0, 1, 2], [0, 1, 2]]),
    (WalkType([1, 0, 2]), [[0, 3, 2], [1, 3, 2], [1, 0, 2], [1, 0, 2]]),
    (WalkType([1, 2, 0]), [[3, 1, 2], [3, 1, 0], [3, 2, 0], [1, 2, 0]]),
];

/// `f₀ = inclusion` followed by the table's `f₁..f₄` for a normalized `π`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecolorTable {
    pub pi: WalkType,
    pub f: [[u8; 3]; 5],
}

impl RecolorTable {
    pub fn for_pi(pi: WalkType) -> Option<Self> {
        TABLE.iter().find(|(p, _)| *p == pi).map(|(p, fs)| {
            let mut f = [[0, 1, 2]; 5];
            f[1..].copy_from_slice(fs);
            RecolorTable { pi: *p, f }
        })
    }

    /// `{f_{i−1}(k), f_i(k)}` and `{f_{i−1}(ℓ), f_i(ℓ)}` are disjoint for
    /// all `i` and `k ≠ ℓ`, and `f₄ = π`.
    pub fn is_valid(&self) -> bool {
        let disjoint = (1..5).all(|i| {
            (0..3).all(|k| {
                (0..3).filter(|&l| l != k).all(|l| {
                    let a = [self.f[i - 1][k], self.f[i][k]];
                    let b = [self.f[i - 1][l], self.f[i][l]];
                    a.iter().all(|x| !b.contains(x))
                })
            })
        });
        disjoint && self.f[4] == self.pi.0
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub force: bool,
    /// Node budget of each exhaustive sub-search.
    pub budget: u64,
    pub jobs: usize,
    pub mode: SelectionMode,
}

impl Default for Options {
    fn default() -> Self {
        Options { force: false, budget: 2_000_000, jobs: 1, mode: SelectionMode::Auto }
    }
}

/// Everything needed to re-check a run step by step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub vertices: usize,
    pub representativity: usize,
    pub forced: bool,
    pub selection_mode: String,
    pub lemma_case: Option<String>,
    pub h1: HomotopyClass,
    pub h2: HomotopyClass,
    /// `(class, τ, c_G)` for `h₁, h₂, h₁+h₂, h₁−h₂`.
    pub class_types: Vec<(HomotopyClass, [u8; 3], usize)>,
    pub h0: HomotopyClass,
    /// Vertex lists of `C₁..C₄`, in the order of their regions.
    pub cycles: Vec<Vec<Vertex>>,
    pub left_fill: FillRecord,
    pub right_fill: FillRecord,
    /// 3-coloring of the completed sphere map.
    pub three_coloring: Vec<u8>,
    pub pi: [u8; 3],
    pub sigma: [u8; 3],
    /// Region index of every cylinder vertex.
    pub regions: Vec<u8>,
    pub coloring: Vec<u8>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillRecord {
    pub chords: Vec<(Vertex, Vertex)>,
    pub hub: Option<Vertex>,
}

impl From<&HoleFill> for FillRecord {
    fn from(h: &HoleFill) -> Self {
        FillRecord { chords: h.chords.clone(), hub: h.hub }
    }
}

#[derive(Clone, Debug)]
pub struct FourColoring {
    pub coloring: Vec<u8>,
    pub transcript: Transcript,
}

pub fn verify_coloring(g: &TorusMap, coloring: &[u8], k: u8) -> Result<bool> {
    if coloring.len() != g.num_vertices() {
        return Err(Error::Precondition(format!(
            "coloring has {} entries for {} vertices",
            coloring.len(),
            g.num_vertices()
        )));
    }
    let e = g.embedding();
    Ok(coloring.iter().all(|&c| c < k) && (0..e.num_darts()).all(|d| coloring[e.tail(d)] != coloring[e.head(d)]))
}

/// An identity-type class among the four selected ones, with its
/// family. Among several, the one of least crossing number is taken.
pub fn select_identity_class<'s>(
    hom: &Homotopy,
    types: &TypeMap,
    sel: &'s ClassSelection,
) -> Result<(HomotopyClass, &'s CycleFamily)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, h) in sel.classes().iter().enumerate() {
        if types.tau(*h)?.is_identity() {
            let c = hom.crossing_number(*h);
            if best.is_none_or(|(bc, _)| c < bc) {
                best = Some((c, i));
            }
        }
    }
    let (_, i) = best.ok_or_else(|| {
        Error::Internal(format!("none of the classes from {} and {} has identity type", sel.h1, sel.h2))
    })?;
    Ok((sel.classes()[i], &sel.families[i]))
}

/// Region of every cylinder vertex: 0 on `C′₁`, then `i` for the band
/// after region `i−1` up to and including the `i`-th cycle, the last
/// cycle being `C″₁`. Returns the regions and the inner cycles sorted
/// by band.
pub fn region_partition(cyl: &CylinderGraph, inner: &[Vec<Vertex>]) -> Result<(Vec<u8>, Vec<usize>)> {
    let n = cyl.num_vertices();
    let mut cycle_of = vec![usize::MAX; n];
    for (j, c) in inner.iter().enumerate() {
        for &v in c {
            if v >= n || cyl.origin_vertex[v] != v || cycle_of[v] != usize::MAX {
                return Err(Error::Precondition(format!("cycle vertex {v} is on the cut or shared")));
            }
            cycle_of[v] = j;
        }
    }
    let right_tag = inner.len();
    for &v in &cyl.right {
        cycle_of[v] = right_tag;
    }
    let unassigned = u8::MAX;
    let mut region = vec![unassigned; n];
    let mut frontier: Vec<Vertex> = cyl.left.clone();
    for &v in &frontier {
        region[v] = 0;
    }
    let mut order = Vec::with_capacity(inner.len());
    for r in 1..=inner.len() + 1 {
        let band = r as u8;
        let mut stack = frontier.clone();
        let mut hit: Option<usize> = None;
        while let Some(v) = stack.pop() {
            for w in cyl.emb.neighbors(v) {
                if region[w] != unassigned {
                    continue;
                }
                if cycle_of[w] == usize::MAX {
                    region[w] = band;
                    stack.push(w);
                    continue;
                }
                match hit {
                    None => hit = Some(cycle_of[w]),
                    Some(j) if j == cycle_of[w] => {}
                    Some(j) => {
                        return Err(Error::Precondition(format!(
                            "band {r} touches two cycles ({j} and {})",
                            cycle_of[w]
                        )))
                    }
                }
                // the band includes its whole closing cycle
                let members = if cycle_of[w] == right_tag { &cyl.right } else { &inner[cycle_of[w]] };
                for &u in members {
                    if region[u] != unassigned {
                        return Err(Error::Precondition(format!("cycle through {u} meets two bands")));
                    }
                    region[u] = band;
                }
            }
        }
        let j = hit.ok_or_else(|| Error::Precondition(format!("band {r} reaches no cycle")))?;
        if (j == right_tag) != (r == inner.len() + 1) {
            return Err(Error::Precondition(format!("band {r} reached the far boundary out of order")));
        }
        if j == right_tag {
            frontier = cyl.right.clone();
        } else {
            order.push(j);
            frontier = inner[j].clone();
        }
    }
    if let Some(v) = region.iter().position(|&r| r == unassigned) {
        return Err(Error::Precondition(format!("vertex {v} lies in no band")));
    }
    let e = &cyl.emb;
    if let Some(d) = (0..e.num_darts()).find(|&d| region[e.tail(d)].abs_diff(region[e.head(d)]) > 1) {
        return Err(Error::Internal(format!("edge {}-{} skips a band", e.tail(d), e.head(d))));
    }
    Ok((region, order))
}

/// `π` with `π(c(v″)) = c(v′)` over corresponding boundary vertices.
pub fn boundary_permutation(cyl: &CylinderGraph, c: &[u8]) -> Result<WalkType> {
    let mut p = [u8::MAX; 3];
    for (&a, &b) in cyl.left.iter().zip(&cyl.right) {
        let slot = &mut p[c[b] as usize];
        if *slot != u8::MAX && *slot != c[a] {
            return Err(Error::Internal(format!("boundary colorings are not related by a permutation at {a}")));
        }
        *slot = c[a];
    }
    // a boundary using two colors leaves one image free
    if let Some(i) = p.iter().position(|&x| x == u8::MAX) {
        let used: Vec<u8> = p.iter().copied().filter(|&x| x != u8::MAX).collect();
        p[i] = (0..3).find(|x| !used.contains(x)).expect("a free color");
    }
    WalkType::from_pair(p[0], p[1])
        .filter(|t| t.0 == p)
        .ok_or_else(|| Error::Internal(format!("boundary map {p:?} is not a permutation")))
}

/// `σ` with `σπσ⁻¹` in [`TABLE`].
pub fn normalize_pi(pi: WalkType) -> (WalkType, WalkType) {
    for sigma in WalkType::ALL {
        let conj = sigma.compose(pi).compose(sigma.inverse());
        if RecolorTable::for_pi(conj).is_some() {
            return (sigma, conj);
        }
    }
    unreachable!("every permutation is conjugate to a table entry")
}

/// Apply `σ`, the table, and glue back to `G`.
pub fn recolor_and_glue(cyl: &CylinderGraph, c: &[u8], regions: &[u8], sigma: WalkType, table: &RecolorTable) -> Result<Vec<u8>> {
    let cyl_colors: Vec<u8> = (0..cyl.num_vertices()).map(|v| table.f[regions[v] as usize][sigma.apply(c[v]) as usize]).collect();
    glue(cyl, &cyl_colors)
}

fn check_restriction(cyl: &CylinderGraph, f: &[u8], c: &[u8]) -> Result<()> {
    for copy in [&cyl.left, &cyl.right] {
        let mut s = [u8::MAX; 3];
        for (i, &v) in copy.iter().enumerate() {
            let slot = &mut s[f[i] as usize];
            if *slot != u8::MAX && *slot != c[v] {
                return Err(Error::Internal("3-coloring of a boundary copy is not φ up to permutation".into()));
            }
            *slot = c[v];
        }
    }
    Ok(())
}

struct Stages {
    cyl: CylinderGraph,
    completion: Completion,
    three: Vec<u8>,
    regions: Vec<u8>,
    order: Vec<usize>,
    pi: WalkType,
    sigma: WalkType,
    coloring: Vec<u8>,
}

/// Cut along `cycles[0]`, complete, 3-color, partition and recolor.
fn color_from_family(g: &TorusMap, cycles: &[CycleWalk]) -> Result<Stages> {
    let emb = g.embedding();
    let cyl = cut_along(g, &cycles[0])?;
    let completion = complete_cylinder(g, &cyl)?;
    let three = three_color(&completion.sphere)?;
    check_restriction(&cyl, &phi(g, &cycles[0])?, &three)?;
    let inner: Vec<Vec<Vertex>> = cycles[1..].iter().map(|c| c.vertices(emb)).collect();
    let (regions, order) = region_partition(&cyl, &inner)?;
    let pi = boundary_permutation(&cyl, &three)?;
    let (sigma, conj) = normalize_pi(pi);
    let table = RecolorTable::for_pi(conj).expect("normalized");
    let coloring = recolor_and_glue(&cyl, &three, &regions, sigma, &table)?;
    if !verify_coloring(g, &coloring, 4)? {
        return Err(Error::Internal("recolored map is not properly 4-colored".into()));
    }
    Ok(Stages { cyl, completion, three, regions, order, pi, sigma, coloring })
}

fn require_input(g: &TorusMap) -> Result<()> {
    if !g.is_triangulation() {
        return Err(Error::Precondition("map is not a triangulation".into()));
    }
    if !g.is_eulerian() {
        return Err(Error::Precondition("map is not Eulerian".into()));
    }
    Ok(())
}

pub fn four_color(g: &TorusMap, opts: &Options) -> Result<FourColoring> {
    require_input(g)?;
    let hom = Homotopy::new(g)?;
    let r = hom.representativity().r;
    if r < MIN_REPRESENTATIVITY && !opts.force {
        return Err(Error::LowRepresentativity { r: r as u64 });
    }
    let sel = four_class_select(&hom, opts.mode, opts.budget, opts.jobs)?;
    let types = TypeMap::new(&hom)?;
    let (h0, family) = select_identity_class(&hom, &types, &sel)?;
    let st = color_from_family(g, &family.cycles)?;

    let emb = g.embedding();
    let mut cycles = vec![family.cycles[0].vertices(emb)];
    cycles.extend(st.order.iter().map(|&j| family.cycles[1 + j].vertices(emb)));
    let class_types = sel
        .classes()
        .iter()
        .map(|&h| Ok((h, types.tau(h)?.0, hom.crossing_number(h))))
        .collect::<Result<Vec<_>>>()?;
    let transcript = Transcript {
        vertices: g.num_vertices(),
        representativity: r,
        forced: r < MIN_REPRESENTATIVITY,
        selection_mode: sel.mode.to_string(),
        lemma_case: sel.lemma.as_ref().map(|c| format!("{}: {}", c.tag, c.case)),
        h1: sel.h1,
        h2: sel.h2,
        class_types,
        h0,
        cycles,
        left_fill: (&st.completion.left).into(),
        right_fill: (&st.completion.right).into(),
        three_coloring: st.three.clone(),
        pi: st.pi.0,
        sigma: st.sigma.0,
        regions: st.regions.clone(),
        coloring: st.coloring.clone(),
    };
    debug_assert_eq!(st.cyl.num_vertices(), st.regions.len());
    Ok(FourColoring { coloring: st.coloring, transcript })
}

/// Re-check a transcript against `g`: the cycles form a disjoint family
/// of class `h₀` with identity type, and cutting, completing, coloring
/// and recoloring reproduce every recorded intermediate.
pub fn check_transcript(g: &TorusMap, t: &Transcript) -> Result<()> {
    require_input(g)?;
    let hom = Homotopy::new(g)?;
    let fail = |what: &str| Err(Error::Internal(format!("transcript check failed: {what}")));
    if t.vertices != g.num_vertices() || t.cycles.len() != 4 {
        return fail("shape");
    }
    let walks = t.cycles.iter().map(|vs| g.walk_from_vertices(vs)).collect::<Result<Vec<_>>>()?;
    let family = CycleFamily { class: t.h0, cycles: walks.clone() };
    let flipped = CycleFamily { class: -t.h0, cycles: walks.clone() };
    if verify_family(&hom, &family).is_err() && verify_family(&hom, &flipped).is_err() {
        return fail("cycles are not four disjoint cycles of class h0");
    }
    if !walk_type(g, &walks[0])?.is_identity() {
        return fail("the cut cycle does not have identity type");
    }
    let st = color_from_family(g, &walks)?;
    if st.order != [0, 1, 2] {
        return fail("cycles are not listed in band order");
    }
    let checks = [
        (FillRecord::from(&st.completion.left) == t.left_fill, "left completion"),
        (FillRecord::from(&st.completion.right) == t.right_fill, "right completion"),
        (st.three == t.three_coloring, "3-coloring"),
        (st.pi.0 == t.pi && st.sigma.0 == t.sigma, "boundary permutation"),
        (st.regions == t.regions, "regions"),
        (st.coloring == t.coloring, "final coloring"),
    ];
    if let Some((_, what)) = checks.iter().find(|(ok, _)| !ok) {
        return fail(what);
    }
    if !verify_coloring(g, &t.coloring, 4)? {
        return fail("coloring is not proper");
    }
    Ok(())
}
