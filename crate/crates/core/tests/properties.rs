mod common;

use bsurf_core::algebra::cup::CupContext;
use bsurf_core::algebra::{cohomology, cohomology_direct, homology, smith_normal_form, CoefficientRing, Matrix};
use bsurf_core::branch::validate_branched_surface;
use bsurf_core::bsc;
use bsurf_core::fixtures;
use bsurf_core::pi1::{abelianization, edge_path_presentation, tietze_simplify};
use bsurf_core::reeb::{midlevel_reeb_graph, reeb_graph};
use bsurf_core::surgery::check_thm1;
use bsurf_core::SimplicialComplex;
use proptest::prelude::*;
use rand::seq::SliceRandom;

const RINGS: [CoefficientRing; 3] = [CoefficientRing::Integers, CoefficientRing::Mod2, CoefficientRing::Rationals];

fn library() -> Vec<SimplicialComplex> {
    vec![
        fixtures::octahedron(),
        fixtures::tetrahedron(),
        fixtures::torus7(),
        fixtures::projective_plane6(),
        fixtures::klein_bottle(),
        fixtures::genus2(),
        fixtures::tripod_bundle(3, [0, 1, 2]),
        fixtures::tripod_bundle(4, [1, 0, 2]),
        fixtures::capped_tripod_bundle(3, [1, 2, 0]),
        fixtures::annulus(4),
        fixtures::grid_disk(2, 3),
        fixtures::edge_in_four_triangles(),
    ]
}

fn relabel(k: &SimplicialComplex, perm: &[usize]) -> SimplicialComplex {
    let tris: Vec<[usize; 3]> = k
        .triangles()
        .iter()
        .map(|t| [perm[t[0]], perm[t[1]], perm[t[2]]])
        .collect();
    SimplicialComplex::new(k.vertex_count(), tris).unwrap()
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut common::rng(seed));
    p
}

fn wide(m: &Matrix<i64>) -> Vec<Vec<i128>> {
    m.to_i64_rows().iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

fn product(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| row.iter().zip(b).map(|(x, r)| x.checked_mul(r[c]).unwrap()).sum())
                .collect()
        })
        .collect()
}

fn matrix_strategy() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (0usize..6, 0usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-6i64..=6, r * c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subdivision_preserves_euler(i in 0usize..12) {
        let k = &library()[i];
        let sd = k.barycentric_subdivision();
        prop_assert_eq!(sd.euler_characteristic(), k.euler_characteristic());
        prop_assert_eq!(homology(&sd, CoefficientRing::Integers), homology(k, CoefficientRing::Integers));
    }

    #[test]
    fn betti_numbers_sum_to_euler(i in 0usize..12, r in 0usize..3) {
        let k = &library()[i];
        let ring = RINGS[r];
        prop_assert_eq!(homology(k, ring).euler_characteristic(), k.euler_characteristic());
        prop_assert_eq!(cohomology(k, ring), cohomology_direct(k, ring));
    }

    #[test]
    fn smith_contract((rows, cols, data) in matrix_strategy()) {
        let raw: Vec<Vec<i64>> = data.chunks(cols.max(1)).take(rows).map(|r| r.to_vec()).collect();
        let raw = if cols == 0 { vec![vec![]; rows] } else { raw };
        let m = Matrix::<i64>::from_i64_rows(cols, &raw);
        let s = smith_normal_form(&m);
        let d = s.d();
        prop_assert_eq!(product(&product(&wide(&s.u), &wide(&m)), &wide(&s.v)), wide(&d));
        prop_assert_eq!(product(&wide(&s.u), &wide(&s.u_inv)), wide(&Matrix::identity(rows)));
        prop_assert_eq!(product(&wide(&s.v), &wide(&s.v_inv)), wide(&Matrix::identity(cols)));
        let diag = &s.diagonal;
        for (i, &x) in diag.iter().enumerate() {
            prop_assert!(x >= 0);
            if i + 1 < diag.len() && x != 0 {
                prop_assert_eq!(diag[i + 1] % x, 0);
            }
        }
        for (r, row) in d.to_i64_rows().iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                if r != c {
                    prop_assert_eq!(x, 0);
                }
            }
        }
    }

    #[test]
    fn homology_invariant_under_relabeling(i in 0usize..12, seed in any::<u64>()) {
        let k = &library()[i];
        let r = relabel(k, &shuffled(k.vertex_count(), seed));
        for ring in RINGS {
            prop_assert_eq!(homology(&r, ring), homology(k, ring));
        }
    }

    #[test]
    fn abelianized_pi1_is_h1(i in 0usize..12, seed in any::<u64>()) {
        let k = &library()[i];
        prop_assume!(k.is_connected());
        let base = (seed as usize) % k.vertex_count();
        let g = edge_path_presentation(k, base).unwrap();
        let h1 = homology(k, CoefficientRing::Integers).degree(1).clone();
        prop_assert_eq!(abelianization(&g.presentation), h1.clone());
        let simple = tietze_simplify(&g.presentation, 10_000);
        prop_assert_eq!(abelianization(&simple), h1);
    }

    #[test]
    fn tripod_monodromy_survives_relabeling(p in 0usize..6, n in 3usize..6, seed in any::<u64>()) {
        let perms = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let k = fixtures::capped_tripod_bundle(n, perms[p]);
        let summary = |k: &SimplicialComplex| {
            validate_branched_surface(k)
                .map(|b| {
                    let mut m: Vec<String> = b.locus.circles.iter().map(|c| format!("{} {:?}", c.kind, c.monodromy)).collect();
                    m.sort();
                    m
                })
                .map_err(|e| std::mem::discriminant(&e))
        };
        let before = summary(&k);
        let after = summary(&relabel(&k, &shuffled(k.vertex_count(), seed)));
        prop_assert_eq!(before.is_err(), perms[p][perms[p][perms[p][0]]] == 0 && perms[p][0] != 0);
        prop_assert_eq!(before, after);
    }

    #[test]
    fn reeb_sweep_matches_midlevel_oracle(i in 0usize..4, seed in any::<u64>()) {
        let k = match i {
            0 => fixtures::octahedron(),
            1 => fixtures::torus7(),
            2 => fixtures::grid_torus(4, 3),
            _ => fixtures::genus2(),
        };
        let values: Vec<f64> = shuffled(k.vertex_count(), seed).into_iter().map(|x| x as f64 * 0.5 - 1.0).collect();
        let sweep = reeb_graph(&k, &values).unwrap();
        let oracle = midlevel_reeb_graph(&k, &values).unwrap();
        prop_assert!(sweep.equivalent(&oracle));
    }

    #[test]
    fn bsc_round_trip(i in 0usize..12, with_values in any::<bool>(), seed in any::<u64>()) {
        let k = library()[i].clone();
        let mut doc = bsc::BscDocument::new(k.clone());
        if with_values {
            let v: Vec<f64> = shuffled(k.vertex_count(), seed).into_iter().map(|x| x as f64 / 3.0).collect();
            doc = doc.with_function(&v);
        }
        if let Ok(b) = validate_branched_surface(&k) {
            doc = doc.with_locus(&b.locus);
        }
        let back = bsc::parse(&bsc::write(&doc)).unwrap();
        prop_assert_eq!(back, doc);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn cup_is_bilinear_and_class_level(i in 0usize..3, coeffs in prop::collection::vec(-3i64..=3, 12), f in prop::collection::vec(-4i64..=4, 16)) {
        let k = [fixtures::torus7(), fixtures::klein_bottle(), fixtures::genus2()][i].clone();
        let ctx = CupContext::<i64>::new(&k);
        let gens = ctx.h1.generators();
        let n = gens.len();
        let edges = ctx.complex.cells().edges().to_vec();
        let combo = |c: &[i64]| -> Vec<i64> {
            (0..edges.len()).map(|e| gens.iter().zip(c).map(|(g, &x)| g[e] * x).sum()).collect()
        };
        let a1 = combo(&coeffs[0..n.min(4)]);
        let a2 = combo(&coeffs[4..4 + n.min(4)]);
        let b = combo(&coeffs[8..8 + n.min(4)]);
        let sum: Vec<i64> = a1.iter().zip(&a2).map(|(x, y)| x + y).collect();
        let lhs = ctx.product_class(&sum, &b).unwrap();
        let p1 = ctx.product_class(&a1, &b).unwrap();
        let p2 = ctx.product_class(&a2, &b).unwrap();
        let orders = ctx.h2.orders();
        for (s, o) in orders.iter().enumerate() {
            let diff = lhs[s] - p1[s] - p2[s];
            match o {
                None => prop_assert_eq!(diff, 0),
                Some(d) => prop_assert_eq!(diff.rem_euclid(*d), 0),
            }
        }
        let shifted: Vec<i64> = edges
            .iter()
            .enumerate()
            .map(|(e, [u, v])| a1[e] + f[*v % f.len()] - f[*u % f.len()])
            .collect();
        let moved = ctx.product_class(&shifted, &b).unwrap();
        let moved_right = ctx.product_class(&b, &shifted).unwrap();
        let base_right = ctx.product_class(&b, &a1).unwrap();
        for (s, o) in orders.iter().enumerate() {
            let m = o.unwrap_or(0);
            let same = |x: i64, y: i64| if m == 0 { x == y } else { (x - y).rem_euclid(m) == 0 };
            prop_assert!(same(moved[s], p1[s]));
            prop_assert!(same(moved_right[s], base_right[s]));
        }
    }

    #[test]
    fn thm1_reports_are_deterministic_and_normality_consistent(seed in 0u64..10_000) {
        let inst = common::random_instance(seed);
        let a = check_thm1(&inst.spec, CoefficientRing::Integers).unwrap();
        let b = check_thm1(&inst.spec, CoefficientRing::Integers).unwrap();
        prop_assert!(a.normality_consistent(), "{}", inst.name);
        prop_assert!(a.euler_additive(), "{}", inst.name);
        prop_assert_eq!(a.to_string(), b.to_string());
    }
}
