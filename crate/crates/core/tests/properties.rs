mod common;

use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use tcolor::cayley::{build_cayley, lattice_quotient};
use tcolor::disjoint_cycles::find_disjoint;
use tcolor::four_color::{normalize_pi, RecolorTable, TABLE};
use tcolor::homotopy::Homotopy;
use tcolor::lattice::{coords_in_basis, hnf_basis, Mat2, Vec2};
use tcolor::planar_color::{complete_cylinder, three_color, three_color_from};
use tcolor::schrijver_geometry::lambda_pair;
use tcolor::torus_map::{cut_along, CycleWalk, TorusMap};
use tcolor::walk_types::{homotopy_move, phi, walk_type, HomotopyMove, TypeMap, WalkType};

fn gamma111() -> &'static TorusMap {
    static G: OnceLock<TorusMap> = OnceLock::new();
    G.get_or_init(|| build_cayley(111, 1, 10).unwrap())
}

fn corpus() -> &'static [(String, TorusMap)] {
    static C: OnceLock<Vec<(String, TorusMap)>> = OnceLock::new();
    C.get_or_init(small_corpus)
}

fn quotient(d1: i64, d2: i64, a: i64) -> Option<TorusMap> {
    lattice_quotient(&Mat2::new(d1, 0, a % d1, d2)).ok()
}

fn nonzero_class(r: i64) -> impl Strategy<Value = Vec2> {
    (-r..=r, -r..=r).prop_filter("nonzero", |&(x, y)| (x, y) != (0, 0)).prop_map(|(x, y)| Vec2::new(x, y))
}

fn walk_type_strategy() -> impl Strategy<Value = WalkType> {
    (0..6usize).prop_map(|i| WalkType::ALL[i])
}

fn mv(kind: u8, pos: usize, dart: usize, left: bool, g: &TorusMap, w: &CycleWalk) -> HomotopyMove {
    let pos = pos % w.len();
    match kind % 4 {
        0 => {
            let rot = g.embedding().rotation(g.embedding().tail(w.darts[pos]));
            HomotopyMove::InsertSpike { pos, dart: rot[dart % rot.len()] }
        }
        1 => HomotopyMove::RemoveSpike { pos },
        2 => HomotopyMove::FaceSlide { pos, left },
        _ => HomotopyMove::FaceUnslide { pos },
    }
}

fn rotated(w: &CycleWalk, j: usize) -> CycleWalk {
    let mut d = w.darts.clone();
    d.rotate_left(j);
    CycleWalk::new(d)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn group_laws(a in walk_type_strategy(), b in walk_type_strategy(), c in walk_type_strategy()) {
        prop_assert_eq!(a.compose(b).compose(c), a.compose(b.compose(c)));
        prop_assert!(a.compose(a.inverse()).is_identity());
        prop_assert_eq!(a.order() * (6 / a.order()), 6);
    }

    #[test]
    fn hermite_coordinates_round_trip(d1 in 1i64..20, d2 in 1i64..20, a in 0i64..20, x in -9i64..=9, y in -9i64..=9) {
        let m = Mat2::new(d1, 0, a % d1, d2);
        let v = Vec2::new(x, y);
        let amb = x * m.row(0) + y * m.row(1);
        prop_assert_eq!(coords_in_basis(&m, amb), Some(v));
        prop_assert_eq!(hnf_basis([m.row(1) + m.row(0), m.row(0)]), Some(m));
    }

    /// Re-rooting a walk conjugates its type by the renaming that sends
    /// the new first two values of φ to 0 and 1.
    #[test]
    fn rotation_conjugates_type(h in nonzero_class(2), j in 0usize..64, moves in prop::collection::vec((any::<u8>(), any::<usize>(), any::<usize>(), any::<bool>()), 0..4)) {
        let g = gamma111();
        let hom = Homotopy::new(g).unwrap();
        let mut w = hom.shortest_cycle_in_class(h).unwrap();
        for (k, p, d, l) in moves {
            if let Ok(n) = homotopy_move(g, &w, mv(k, p, d, l, g, &w)) {
                w = n;
            }
        }
        let j = j % w.len();
        let f = phi(g, &w).unwrap();
        let t = walk_type(g, &w).unwrap();
        let rho = WalkType::from_pair(f[j], f[j + 1]).unwrap().inverse();
        let t2 = walk_type(g, &rotated(&w, j)).unwrap();
        prop_assert_eq!(t2, rho.compose(t).compose(rho.inverse()));
    }

    #[test]
    fn moves_away_from_the_frame_keep_the_type(h in nonzero_class(2), kind in any::<u8>(), pos in 2usize..64, dart in any::<usize>(), left in any::<bool>()) {
        let g = gamma111();
        let hom = Homotopy::new(g).unwrap();
        let w = hom.shortest_cycle_in_class(h).unwrap();
        let l = w.len();
        let pos = 2 + pos % (l - 3);
        let m = mv(kind, pos, dart, left, g, &w);
        if let Ok(n) = homotopy_move(g, &w, m) {
            prop_assert_eq!(hom.class_of(&n), h);
            prop_assert_eq!(walk_type(g, &n).unwrap(), walk_type(g, &w).unwrap(), "{:?}", m);
        }
    }

    /// On a 3-colorable triangulation φ is the true coloring along the
    /// walk, renamed so that it starts with 0, 1.
    #[test]
    fn phi_follows_a_true_three_coloring(h in nonzero_class(3), moves in prop::collection::vec((any::<u8>(), any::<usize>(), any::<usize>(), any::<bool>()), 0..6)) {
        let g = gamma111();
        let col: Vec<u8> = (0..111).map(|i| (i % 3) as u8).collect();
        prop_assert!(is_proper(&g.embedding().adjacency(), &col));
        let hom = Homotopy::new(g).unwrap();
        let mut w = hom.shortest_cycle_in_class(h).unwrap();
        for (k, p, d, l) in moves {
            if let Ok(n) = homotopy_move(g, &w, mv(k, p, d, l, g, &w)) {
                w = n;
            }
        }
        let vs = walk_vertices(g, &w);
        let rho = WalkType::from_pair(col[vs[0]], col[vs[1 % vs.len()]]).unwrap().inverse();
        let f = phi(g, &w).unwrap();
        for (k, &fk) in f.iter().enumerate() {
            prop_assert_eq!(fk, rho.apply(col[vs[k % vs.len()]]), "position {}", k);
        }
        prop_assert!(walk_type(g, &w).unwrap().is_identity());
    }

    #[test]
    fn tau_is_a_homomorphism(d1 in 5i64..=9, d2 in 5i64..=9, a in 0i64..9, h1 in nonzero_class(3), h2 in nonzero_class(3)) {
        let Some(g) = quotient(d1, d2, a) else { return Ok(()) };
        let hom = Homotopy::new(&g).unwrap();
        let tm = TypeMap::new(&hom).unwrap();
        if (h1 + h2).is_zero() {
            prop_assert_eq!(tm.tau(h1).unwrap().inverse(), tm.tau(h2).unwrap());
        } else {
            prop_assert_eq!(tm.tau(h1 + h2).unwrap(), tm.tau(h2).unwrap().compose(tm.tau(h1).unwrap()));
        }
    }

    #[test]
    fn completions_are_eulerian_spheres(d1 in 5i64..=8, d2 in 5i64..=8, a in 0i64..8, h in nonzero_class(3), dart in any::<usize>()) {
        let Some(g) = quotient(d1, d2, a) else { return Ok(()) };
        let hom = Homotopy::new(&g).unwrap();
        let tm = TypeMap::new(&hom).unwrap();
        prop_assume!(h.is_primitive() && tm.tau(h).unwrap().is_identity());
        let d = dart % g.embedding().num_darts();
        let Some(w) = hom.simple_cycle_via(d, h, 4 * g.num_vertices(), 100_000) else { return Ok(()) };
        let comp = complete_cylinder(&g, &cut_along(&g, &w).unwrap()).unwrap();
        let e = &comp.sphere.emb;
        prop_assert!((0..e.num_vertices()).all(|v| e.degree(v).is_multiple_of(2)));
        prop_assert!(e.faces().walks.iter().all(|f| f.len() == 3));
        prop_assert_eq!(e.num_vertices() as i64 - e.num_edges() as i64 + e.faces().len() as i64, 2);
        prop_assert!(e.is_connected());
    }

    #[test]
    fn sphere_three_coloring_is_unique(seed in any::<u64>(), inserts in 0usize..8, start in any::<usize>()) {
        let s = random_sphere(&mut ChaCha8Rng::seed_from_u64(seed), inserts);
        let adj = s.emb.adjacency();
        let c = three_color(&s).unwrap();
        prop_assert!(is_proper(&adj, &c));
        let other = three_color_from(&s, start % s.emb.num_darts()).unwrap();
        prop_assert!(same_up_to_permutation(&c, &other));
        prop_assert_eq!(count_3colorings(&adj), 6);
    }

    #[test]
    fn finder_matches_brute_force(i in any::<usize>(), h in nonzero_class(2), k in 1usize..=4) {
        let (name, g) = &corpus()[i % corpus().len()];
        let hom = Homotopy::new(g).unwrap();
        let h = canonical_sign(h);
        let by = cycles_by_class(g, &hom);
        let oracle = k_disjoint(by.get(&h).map(Vec::as_slice).unwrap_or(&[]), k);
        let res = find_disjoint(&hom, h, k, 50_000_000);
        prop_assert_eq!(res.is_ok(), oracle, "{} class {} k={}", name, h, k);
    }

    #[test]
    fn lambda_matches_box_scan(seed in any::<u64>()) {
        let p = random_symmetric_polygon(&mut ChaCha8Rng::seed_from_u64(seed));
        let lp = lambda_pair(&p).unwrap();
        prop_assert_eq!(brute_lambda(&p, lp.lambda), lp.lambda);
        let polar = p.polar().unwrap();
        prop_assert_eq!(brute_lambda(&polar, lp.lambda_polar), lp.lambda_polar);
    }
}

#[test]
fn recolor_table_rows() {
    for (pi, _) in TABLE {
        let t = RecolorTable::for_pi(pi).unwrap();
        assert!(t.is_valid(), "{pi}");
        assert_eq!(t.f[4], pi.0);
    }
    for p in WalkType::ALL {
        let (sigma, conj) = normalize_pi(p);
        assert_eq!(sigma.compose(p).compose(sigma.inverse()), conj, "{p}");
        assert!(TABLE.iter().any(|(t, _)| *t == conj));
    }
}
