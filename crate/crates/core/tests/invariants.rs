use proptest::prelude::*;

use psembed_core::book::{book_embed, gamma_sequence, validate_book, Event};
use psembed_core::chains::{
    alternating_runs, brute_force_cover, interior_extrema, interleave_empty, longest_decreasing_subsequence,
    min_common_chain_cover,
};
use psembed_core::geomcheck::{polyline_bends, segments_intersect};
use psembed_core::graph::{enumerate_planar_small, gen_planar, gen_points, planar_embed, relabel_random, Model, PlanarGraph, PointShape};
use psembed_core::route::PointConfig;
use psembed_core::rng;
use psembed_core::stats::{chain_scaling_experiment, runs_experiment};
use psembed_core::{draw_fixed, verify_drawing, RationalPoint, C_ROUTE};

fn model() -> impl Strategy<Value = Model> {
    prop_oneof![Just(Model::Triangulation), Just(Model::Subgraph)]
}

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn perms(max_n: usize, max_k: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    (0..=max_n, 1..=max_k).prop_flat_map(|(n, k)| proptest::collection::vec(perm(n), k))
}

fn point() -> impl Strategy<Value = RationalPoint> {
    (-4i64..=4, -4i64..=4).prop_map(|(x, y)| RationalPoint::from_ints(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_graphs_embed_with_euler(n in 1usize..40, m in model(), seed: u64) {
        let g = gen_planar(n, m, seed);
        prop_assert!(g.within_edge_bound());
        let rot = planar_embed(&g).unwrap();
        let faces = rot.plane_face_count(&g) as i64;
        let c = g.components().len() as i64;
        prop_assert_eq!(n as i64 - g.edge_count() as i64 + faces, 1 + c);
    }

    #[test]
    fn relabeling_inverts(n in 1usize..30, seed: u64) {
        let g = gen_planar(n, Model::Subgraph, seed);
        let (h, p) = relabel_random(&g, seed ^ 1);
        let mut inv = vec![0; n];
        for (old, &new) in p.iter().enumerate() {
            inv[new] = old;
        }
        prop_assert_eq!(h.relabeled(&inv), g);
    }

    #[test]
    fn book_embeddings_validate(n in 1usize..40, m in model(), seed: u64) {
        let g = gen_planar(n, m, seed);
        let be = book_embed(&g, seed).unwrap();
        prop_assert!(validate_book(&g, &be).is_ok());
        prop_assert!(be.crossings().len() <= g.edge_count());
        let gs = gamma_sequence(&be);
        let vertices = gs.events.iter().filter(|e| matches!(e, Event::Vertex { .. })).count();
        prop_assert_eq!(vertices, n);
        prop_assert_eq!(gs.len(), n + be.crossings().len());
        prop_assert!(gs.coords.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn runs_partition_alpha(p in (1usize..60).prop_flat_map(perm)) {
        let alpha: Vec<usize> = p.iter().map(|x| x + 1).collect();
        let runs = alternating_runs(&alpha).unwrap();
        let flat: Vec<usize> = runs.parts.iter().flatten().copied().collect();
        prop_assert_eq!(flat, (0..alpha.len()).collect::<Vec<_>>());
        for (i, part) in runs.parts.iter().enumerate() {
            let vals: Vec<usize> = part.iter().map(|&j| alpha[j]).collect();
            let ok = if i % 2 == 0 { vals.windows(2).all(|w| w[0] < w[1]) } else { vals.windows(2).all(|w| w[0] > w[1]) };
            prop_assert!(ok);
        }
        prop_assert!(runs.r() <= interior_extrema(&alpha) + 2);
    }

    #[test]
    fn cover_is_minimum_chain_partition(ps in perms(7, 3)) {
        let n = ps[0].len();
        let cover = min_common_chain_cover(&ps).unwrap();
        let mut seen: Vec<usize> = cover.iter().flatten().copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..n).collect::<Vec<_>>());
        let pos: Vec<Vec<usize>> = ps.iter().map(|p| {
            let mut q = vec![0; n];
            for (i, &x) in p.iter().enumerate() { q[x] = i; }
            q
        }).collect();
        for chain in &cover {
            for w in chain.windows(2) {
                prop_assert!(w[0] < w[1] && pos.iter().all(|q| q[w[0]] < q[w[1]]));
            }
        }
        prop_assert_eq!(cover.len(), brute_force_cover(&ps).unwrap().len());
        if ps.len() == 1 {
            prop_assert_eq!(cover.len(), longest_decreasing_subsequence(&ps[0]));
        }
    }

    #[test]
    fn more_permutations_never_shrink_the_cover(ps in perms(40, 3), extra in any::<u64>()) {
        let n = ps[0].len();
        let base = min_common_chain_cover(&ps).unwrap().len();
        let mut more = ps.clone();
        more.push(rng::permutation(n, &mut rng::rng(extra)));
        prop_assert!(min_common_chain_cover(&more).unwrap().len() >= base);
    }

    #[test]
    fn interleaving_doubles(parts in proptest::collection::vec(proptest::collection::vec(0usize..100, 0..4), 0..6)) {
        let r = parts.len();
        let out = interleave_empty(parts.clone());
        prop_assert_eq!(out.r(), 2 * r);
        for (i, p) in out.parts.iter().enumerate() {
            if i % 2 == 0 { prop_assert_eq!(p, &parts[i / 2]); } else { prop_assert!(p.is_empty()); }
        }
    }

    #[test]
    fn collinear_points_do_not_count_as_bends(
        pts in proptest::collection::vec(point(), 2..7),
        at in any::<prop::sample::Index>(),
        num in 1i64..8,
    ) {
        let mut poly = pts;
        poly.dedup();
        prop_assume!(poly.len() >= 2);
        let before = polyline_bends(&poly);
        let i = at.index(poly.len() - 1);
        let (a, b) = (&poly[i], &poly[i + 1]);
        let t = num_rational::BigRational::new(num.into(), 8.into());
        let mid = RationalPoint::new(&a.x + (&b.x - &a.x) * &t, &a.y + (&b.y - &a.y) * &t);
        prop_assume!(&mid != a && &mid != b);
        poly.insert(i + 1, mid);
        prop_assert_eq!(polyline_bends(&poly), before);
    }

    #[test]
    fn intersection_is_symmetric(a in point(), b in point(), c in point(), d in point()) {
        prop_assume!(a != b && c != d);
        let x = segments_intersect((&a, &b), (&c, &d), None);
        prop_assert_eq!(x, segments_intersect((&c, &d), (&a, &b), None));
        prop_assert_eq!(x, segments_intersect((&b, &a), (&d, &c), None));
        prop_assert!(segments_intersect((&a, &b), (&a, &d), None));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn drawings_verify_within_budget(
        n in 1usize..20,
        m in model(),
        shape in prop_oneof![Just(PointShape::Random), Just(PointShape::Grid), Just(PointShape::Convex)],
        seed: u64,
    ) {
        let g = gen_planar(n, m, seed);
        let gamma = rng::permutation(n, &mut rng::rng(seed ^ 2));
        let cfg = PointConfig::new(gen_points(n, shape, seed ^ 3), gamma).unwrap();
        let d = draw_fixed(&g, &cfg, seed).unwrap();
        let rep = verify_drawing(&d, &g, &cfg.vertex_points()).unwrap();
        prop_assert!(rep.ok());
        prop_assert!(rep.max_bends() <= 3 * d.meta.r + C_ROUTE);
        prop_assert_eq!(d.vertex_points, cfg.vertex_points());
        if let Some(layout) = &d.layout {
            prop_assert!(layout.check().is_ok());
        }
    }

    #[test]
    fn reports_are_reproducible(seed: u64) {
        let a = runs_experiment(20, 15, seed).unwrap();
        prop_assert_eq!(&a, &runs_experiment(20, 15, seed).unwrap());
        let mut b = chain_scaling_experiment(2, &[8, 16], 4, seed).unwrap();
        let stored = b.aggregates.clone();
        b.summarize();
        prop_assert_eq!(stored, b.aggregates);
    }
}

#[test]
fn small_graph_counts_match_brute_force() {
    let mut prev = 0;
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let brute = (0u32..1 << pairs.len())
            .filter(|mask| {
                let edges: Vec<(usize, usize)> =
                    pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
                planar_embed(&PlanarGraph::new_simple(n, &edges).unwrap()).is_ok()
            })
            .count();
        let count = enumerate_planar_small(n).unwrap().count();
        assert_eq!(count, brute);
        assert!(count >= prev);
        prev = count;
    }
}
