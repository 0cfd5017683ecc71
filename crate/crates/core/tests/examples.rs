use num_bigint::BigInt;
use num_rational::BigRational;
use psembed_core::book::{book_embed, gamma_sequence, validate_book, Arc, BookEmbedding, BookError, Event, Page, SpineCoord};
use psembed_core::chains::{
    alternating_runs, brute_force_cover, generic_direction, interleave_empty, min_common_chain_cover, ChainPartition,
};
use psembed_core::geomcheck::{count_bends, orient, polyline_bends, segments_intersect, verify_drawing, Orientation};
use psembed_core::graph::{
    enumerate_planar_small, gen_planar, gen_points, planar_embed, relabel_random, triangulate, GraphError, Model,
    PlanarGraph, PointSet, PointShape,
};
use psembed_core::route::{route, Drawing, DrawingMeta, DrawnEdge, PointConfig};
use psembed_core::rng::{self, derive_seed};
use psembed_core::stats::{bends_experiment, chain_scaling_experiment, lower_bound_eval, runs_exhaustive};
use psembed_core::{draw_fixed, simul_embed, RationalPoint, C_ROUTE};

fn p(x: i64, y: i64) -> RationalPoint {
    RationalPoint::from_ints(x, y)
}

fn graph(n: usize, edges: &[(usize, usize)]) -> PlanarGraph {
    PlanarGraph::new(n, edges).unwrap()
}

fn k4() -> PlanarGraph {
    graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

fn k5_edges() -> Vec<(usize, usize)> {
    (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect()
}

#[test]
fn graph_validation() {
    assert!(PlanarGraph::new(3, &[(0, 1), (1, 2), (0, 2)]).is_ok());
    assert_eq!(PlanarGraph::new(2, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
    assert_eq!(PlanarGraph::new(5, &k5_edges()), Err(GraphError::TooManyEdges { edges: 10, bound: 9 }));
}

#[test]
fn embeddings() {
    assert_eq!(planar_embed(&k4()).unwrap().faces().len(), 4);
    let k5 = PlanarGraph::new_simple(5, &k5_edges()).unwrap();
    assert_eq!(planar_embed(&k5), Err(GraphError::NonPlanar));
    let t = gen_planar(20, Model::Triangulation, 11);
    assert_eq!(planar_embed(&t).unwrap().faces().len(), 36);
}

#[test]
fn triangulation_examples() {
    let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    let (_, _, added) = triangulate(&tri, &planar_embed(&tri).unwrap()).unwrap();
    assert!(added.is_empty());

    let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
    let (g, rot, added) = triangulate(&c4, &planar_embed(&c4).unwrap()).unwrap();
    assert!(!added.is_empty());
    assert!(rot.is_planar_embedding_of(&g));
    assert!(rot.faces().iter().all(|f| f.len() == 3));

    let path = graph(3, &[(0, 1), (1, 2)]);
    let (g, _, added) = triangulate(&path, &planar_embed(&path).unwrap()).unwrap();
    assert_eq!(added, vec![(0, 2)]);
    assert_eq!(g.edge_count(), 3);
}

#[test]
fn generators() {
    for seed in 0..5 {
        assert_eq!(gen_planar(3, Model::Triangulation, seed).edge_count(), 3);
    }
    assert_eq!(gen_planar(50, Model::Triangulation, 7).edge_count(), 144);
    assert!(planar_embed(&gen_planar(6, Model::Subgraph, 1)).is_ok());

    let one = PlanarGraph::empty(1);
    assert_eq!(relabel_random(&one, 3).0, one);
    let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    assert_eq!(relabel_random(&tri, 9).0.edges(), tri.edges());

    let path = graph(4, &[(0, 1), (1, 2), (2, 3)]);
    for seed in 0..10 {
        let (h, perm) = relabel_random(&path, seed);
        let mut inv = vec![0; 4];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        assert_eq!(h.relabeled(&inv), path);
    }

    let counts: Vec<usize> = (1..=4).map(|n| enumerate_planar_small(n).unwrap().count()).collect();
    assert_eq!(counts, [1, 2, 8, 64]);
}

#[test]
fn point_shapes() {
    let c3 = gen_points(3, PointShape::Convex, 1);
    assert!(c3.is_convex() && c3.len() == 3);
    assert_eq!(psembed_core::graph::convex_hull_size(gen_points(4, PointShape::Convex, 2).points()), 4);
    let r = gen_points(100, PointShape::Random, 3);
    let mut pts = r.points().to_vec();
    pts.sort();
    pts.dedup();
    assert_eq!(pts.len(), 100);
    assert!(PointSet::new(vec![p(0, 0), p(0, 0)], false).is_err());
}

fn at(i: i64) -> SpineCoord {
    SpineCoord::from_integer(i)
}

#[test]
fn book_examples() {
    let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    let be = book_embed(&tri, 5).unwrap();
    validate_book(&tri, &be).unwrap();
    assert_eq!(be.arcs.len(), 3);
    assert!(be.arcs.iter().all(|a| a.page == be.arcs[0].page));

    let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
    for seed in 0..5 {
        let be = book_embed(&c4, seed).unwrap();
        validate_book(&c4, &be).unwrap();
        assert!(be.crossings().is_empty());
    }

    let be = book_embed(&k4(), 1).unwrap();
    validate_book(&k4(), &be).unwrap();
    assert!(be.crossings().len() <= 6);

    let arc = |u, v, a, b| Arc { edge: (u, v), page: Page::Top, from: at(a), to: at(b) };
    let path = graph(4, &[(0, 2), (1, 3)]);
    let crossing = BookEmbedding { spine: vec![0, 1, 2, 3], arcs: vec![arc(0, 2, 0, 2), arc(1, 3, 1, 3)] };
    assert!(matches!(validate_book(&path, &crossing), Err(BookError::CrossingArcsOnPage(..))));
    let missing = BookEmbedding { spine: vec![0, 1, 2, 3], arcs: vec![arc(0, 2, 0, 2)] };
    assert!(matches!(validate_book(&path, &missing), Err(BookError::EdgeCoverMismatch(_))));
}

#[test]
fn gamma_examples() {
    let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    let be = BookEmbedding {
        spine: vec![0, 1, 2],
        arcs: vec![
            Arc { edge: (0, 1), page: Page::Top, from: at(0), to: at(1) },
            Arc { edge: (0, 2), page: Page::Top, from: at(0), to: at(2) },
            Arc { edge: (1, 2), page: Page::Top, from: at(1), to: at(2) },
        ],
    };
    validate_book(&tri, &be).unwrap();
    let gs = gamma_sequence(&be);
    assert_eq!(gs.len(), 3);
    // (0,2) encloses (0,1), so (0,1) attaches on the inside, to the right.
    assert_eq!(gs.events[0], Event::Vertex { v: 0, top: vec![(0, 2), (0, 1)], bottom: vec![] });

    let empty = PlanarGraph::empty(5);
    let be = book_embed(&empty, 2).unwrap();
    let gs = gamma_sequence(&be);
    assert_eq!(gs.len(), 5);
    assert!(gs.events.iter().all(|e| matches!(e, Event::Vertex { top, bottom, .. } if top.is_empty() && bottom.is_empty())));

    for seed in 0..20 {
        let g = gen_planar(10, Model::Triangulation, seed);
        let be = book_embed(&g, seed).unwrap();
        let gs = gamma_sequence(&be);
        assert_eq!(gs.len(), 10 + be.crossings().len());
        assert!(gs.coords.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn direction_examples() {
    let ps = PointSet::new(vec![p(0, 5), p(1, 3), p(2, 9)], false).unwrap();
    assert_eq!(generic_direction(&ps).t, BigRational::from_integer(BigInt::from(0)));
    let ps = PointSet::new(vec![p(0, 0), p(0, 1)], false).unwrap();
    assert_ne!(generic_direction(&ps).t, BigRational::from_integer(BigInt::from(0)));
    let ps = gen_points(10, PointShape::Grid, 4);
    let d = generic_direction(&ps);
    let mut dots: Vec<BigRational> = ps.points().iter().map(|q| d.dot(q)).collect();
    dots.sort();
    dots.dedup();
    assert_eq!(dots.len(), 10);
}

#[test]
fn runs_examples() {
    assert_eq!(alternating_runs(&[1, 2, 3, 4]).unwrap().r(), 1);
    // Parts hold 0-based indices into α.
    assert_eq!(alternating_runs(&[3, 2, 1]).unwrap().parts, vec![vec![0], vec![1, 2]]);
    assert_eq!(alternating_runs(&[2, 4, 1, 3]).unwrap().parts, vec![vec![0, 1], vec![2], vec![3]]);
    assert!(alternating_runs(&[1, 1, 2]).is_err());
}

#[test]
fn cover_examples() {
    let id: Vec<usize> = (0..6).collect();
    let rev: Vec<usize> = (0..6).rev().collect();
    assert_eq!(min_common_chain_cover(std::slice::from_ref(&id)).unwrap().len(), 1);
    assert_eq!(min_common_chain_cover(&[vec![1, 0, 3, 2]]).unwrap().len(), 2);
    assert_eq!(min_common_chain_cover(&[id.clone(), rev]).unwrap().len(), 6);

    assert_eq!(brute_force_cover(&[(0..5).collect()]).unwrap().len(), 1);
    assert_eq!(brute_force_cover(&[vec![2, 0, 1]]).unwrap().len(), 2);
    assert!(brute_force_cover(&[(0..9).collect()]).is_err());
    let mut g = rng::rng(21);
    for _ in 0..20 {
        let perms = vec![rng::permutation(7, &mut g), rng::permutation(7, &mut g)];
        assert_eq!(min_common_chain_cover(&perms).unwrap().len(), brute_force_cover(&perms).unwrap().len());
    }

    assert_eq!(interleave_empty(vec![vec![0, 1]]).parts, vec![vec![0, 1], vec![]]);
    assert_eq!(interleave_empty(vec![vec![0], vec![1], vec![2]]).r(), 6);
    assert_eq!(interleave_empty(vec![]).r(), 0);
}

#[test]
fn predicate_examples() {
    assert_eq!(orient(&p(0, 0), &p(1, 0), &p(0, 1)), Orientation::Left);
    assert_eq!(orient(&p(0, 0), &p(1, 0), &p(2, 0)), Orientation::Collinear);
    assert_eq!(orient(&p(0, 0), &p(1, 1), &p(1, 0)), Orientation::Right);
    assert!(segments_intersect((&p(0, 0), &p(2, 2)), (&p(0, 2), &p(2, 0)), None));
    assert!(!segments_intersect((&p(0, 0), &p(1, 0)), (&p(2, 0), &p(3, 0)), None));
    assert!(!segments_intersect((&p(0, 0), &p(1, 1)), (&p(1, 1), &p(2, 0)), Some(&p(1, 1))));
}

/// Tangent, collinear and shared-endpoint cases with hand-derived answers.
#[test]
fn adversarial_predicates() {
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let r = |x: (i64, i64), y: (i64, i64)| RationalPoint::new(q(x.0, x.1), q(y.0, y.1));
    type Segment = (RationalPoint, RationalPoint);
    let cases: &[(Segment, Segment, Option<RationalPoint>, bool)] = &[
        // T-junction: an endpoint touching the interior.
        ((p(0, 0), p(2, 0)), (p(1, 0), p(1, 5)), None, true),
        // Collinear overlap.
        ((p(0, 0), p(3, 0)), (p(2, 0), p(5, 0)), None, true),
        // Collinear, touching at one endpoint only.
        ((p(0, 0), p(2, 0)), (p(2, 0), p(4, 0)), None, true),
        ((p(0, 0), p(2, 0)), (p(2, 0), p(4, 0)), Some(p(2, 0)), false),
        // Shared endpoint but collinear overlap beyond it.
        ((p(0, 0), p(4, 0)), (p(0, 0), p(2, 0)), Some(p(0, 0)), true),
        // Shared endpoint, folding back onto itself at a different angle.
        ((p(0, 0), p(4, 4)), (p(0, 0), p(4, 3)), Some(p(0, 0)), false),
        // Endpoint exactly on the other segment.
        ((p(0, 0), p(1, 1)), (r((1, 2), (1, 2)), r((1, 1), (1, 2))), None, true),
        // Endpoint 1/10^12 above, then below, the diagonal.
        ((p(0, 0), p(1, 1)), (r((1, 2), (500_000_000_001, 1_000_000_000_000)), p(1, 0)), None, true),
        ((p(0, 0), p(1, 1)), (r((1, 2), (499_999_999_999, 1_000_000_000_000)), p(1, 0)), None, false),
        // Passing 1/10^12 beside the other segment's endpoint.
        ((p(0, 0), p(1, 1)), (r((1, 1_000_000_000_000), (0, 1)), p(1, 0)), None, false),
        ((p(0, 0), p(1, 1)), (r((-1, 1_000_000_000_000), (1, 1_000_000_000_000)), r((1, 1_000_000_000_000), (-1, 1_000_000_000_000))), None, true),
        // Parallel, distinct.
        ((p(0, 0), p(1, 1)), (p(0, 1), p(1, 2)), None, false),
    ];
    for (i, (s1, s2, share, want)) in cases.iter().enumerate() {
        let got = segments_intersect((&s1.0, &s1.1), (&s2.0, &s2.1), share.as_ref());
        assert_eq!(got, *want, "case {i}");
        let got = segments_intersect((&s2.1, &s2.0), (&s1.1, &s1.0), share.as_ref());
        assert_eq!(got, *want, "case {i} reversed");
    }
}

fn drawing(vertex_points: Vec<RationalPoint>, edges: Vec<(usize, usize, Vec<RationalPoint>)>) -> Drawing {
    Drawing {
        vertex_points,
        edges: edges.into_iter().map(|(u, v, poly)| DrawnEdge { u, v, poly }).collect(),
        meta: DrawingMeta::default(),
        layout: None,
    }
}

#[test]
fn verify_examples() {
    let g = graph(4, &[(0, 1), (2, 3)]);
    let pts = vec![p(0, 0), p(1, 0), p(0, 1), p(1, 1)];
    let d = drawing(pts.clone(), vec![(0, 1, vec![p(0, 0), p(1, 0)]), (2, 3, vec![p(0, 1), p(1, 1)])]);
    let rep = verify_drawing(&d, &g, &pts).unwrap();
    assert!(rep.ok());
    assert_eq!(rep.beta, 0);

    let pts = vec![p(0, 0), p(2, 2), p(0, 2), p(2, 0)];
    let g = graph(4, &[(0, 1), (2, 3)]);
    let d = drawing(pts.clone(), vec![(0, 1, vec![p(0, 0), p(2, 2)]), (2, 3, vec![p(0, 2), p(2, 0)])]);
    let rep = verify_drawing(&d, &g, &pts).unwrap();
    assert!(!rep.planar);
    assert_eq!(rep.violations.len(), 1);

    let mut gamma = rng::permutation(4, &mut rng::rng(3));
    gamma.reverse();
    let cfg = PointConfig::new(gen_points(4, PointShape::Random, 8), gamma).unwrap();
    let d = draw_fixed(&k4(), &cfg, 4).unwrap();
    let rep = verify_drawing(&d, &k4(), &cfg.vertex_points()).unwrap();
    assert!(rep.ok());
    assert!(rep.max_bends() <= 3 * d.meta.r + C_ROUTE);
}

#[test]
fn bend_counting_examples() {
    assert_eq!(polyline_bends(&[p(0, 0), p(1, 1)]), 0);
    assert_eq!(polyline_bends(&[p(0, 0), p(1, 0), p(1, 1)]), 1);
    assert_eq!(polyline_bends(&[p(0, 0), p(1, 0), p(2, 0), p(2, 1)]), 1);
    let d = drawing(vec![], vec![(0, 1, vec![p(0, 0), p(1, 0), p(1, 1)]), (1, 2, vec![p(0, 0), p(1, 0), p(2, 0), p(2, 1)])]);
    assert_eq!(count_bends(&d), (vec![1, 1], 2));
}

#[test]
fn routing_examples() {
    let pts = PointSet::new(vec![p(0, 0), p(1, 0), p(2, 0)], false).unwrap();

    let edgeless = PlanarGraph::empty(3);
    let cfg = PointConfig::new(pts.clone(), vec![0, 1, 2]).unwrap();
    let d = draw_fixed(&edgeless, &cfg, 1).unwrap();
    assert!(d.edges.is_empty());

    // Triangle with the mapping following the spine: one increasing part.
    let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    let be = book_embed(&tri, 2).unwrap();
    let mut gamma = vec![0; 3];
    for (i, &v) in be.spine.iter().enumerate() {
        gamma[v] = i;
    }
    let cfg = PointConfig::new(pts.clone(), gamma.clone()).unwrap();
    let part = ChainPartition::new(vec![be.spine.clone()]);
    let d = route(&tri, &be, &cfg, &part).unwrap();
    let rep = verify_drawing(&d, &tri, &cfg.vertex_points()).unwrap();
    assert!(rep.ok());
    assert!(rep.max_bends() <= 3 + C_ROUTE);

    let path = graph(3, &[(0, 1), (1, 2)]);
    let be = book_embed(&path, 6).unwrap();
    for (i, &v) in be.spine.iter().enumerate() {
        gamma[v] = i;
    }
    let cfg = PointConfig::new(pts, gamma).unwrap();
    let d = draw_fixed(&path, &cfg, 6).unwrap();
    assert_eq!(d.meta.r, 1);
    assert!(d.max_bends() <= 3 + C_ROUTE);
}

#[test]
fn expected_runs_on_triangulations() {
    let mut total = 0;
    for seed in 0..20 {
        let s = derive_seed(404, seed);
        let g = gen_planar(32, Model::Triangulation, s);
        let gamma = rng::permutation(32, &mut rng::rng(derive_seed(s, 1)));
        let cfg = PointConfig::new(gen_points(32, PointShape::Random, derive_seed(s, 2)), gamma).unwrap();
        total += draw_fixed(&g, &cfg, s).unwrap().meta.r;
    }
    assert!(total as f64 / 20.0 <= 2.0 / 3.0 * 33.0 + 3.0);
}

#[test]
fn simultaneous_examples() {
    let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    let pts = gen_points(3, PointShape::Convex, 6);
    let sim = simul_embed(&[tri.clone(), tri.clone()], &pts, 2).unwrap();
    let gamma: Vec<RationalPoint> = sim.gamma.iter().map(|&i| pts.points()[i].clone()).collect();
    for d in &sim.drawings {
        assert!(verify_drawing(d, &tri, &gamma).unwrap().ok());
    }

    for seed in 0..10 {
        let s = derive_seed(99, seed);
        let gs = [gen_planar(64, Model::Triangulation, s), gen_planar(64, Model::Triangulation, s + 1)];
        let pts = gen_points(64, PointShape::Random, s);
        let sim = simul_embed(&gs, &pts, s).unwrap();
        let gamma: Vec<RationalPoint> = sim.gamma.iter().map(|&i| pts.points()[i].clone()).collect();
        let r = sim.cover.len();
        assert!(r <= 4 * 8, "cover {r}");
        for (d, g) in sim.drawings.iter().zip(&gs) {
            let rep = verify_drawing(d, g, &gamma).unwrap();
            assert!(rep.ok());
            assert!(rep.max_bends() <= 6 * r + C_ROUTE);
        }
    }
}

#[test]
fn stats_examples() {
    let e = runs_exhaustive(3).unwrap();
    assert_eq!(e.permutations, 6);
    assert_eq!(e.mean_extrema, num_rational::Ratio::new(2, 3));

    let rep = chain_scaling_experiment(1, &[8, 16, 32], 3, 1).unwrap();
    assert!(rep.trials.iter().all(|t| t.get("r") == Some(1.0)));
    assert_eq!(rep.fit.as_ref().map(|f| f.exponent), Some(0.0));

    let rep = bends_experiment(&[16], 20, 5).unwrap();
    assert!(rep.trials.iter().all(|t| t.get("max_bends").unwrap() <= (3 * 16 + C_ROUTE) as f64));

    assert_eq!(lower_bound_eval(100, 1, 3.0, 1.0), 0.0);
    assert_eq!(lower_bound_eval(10_000, 2, 0.0, 10.0), 0.0);
    assert_eq!(lower_bound_eval(10_000, 2, 0.0, 5.0), 21_250.0);
    let mut prev = 0.0;
    for e in 10..=20 {
        let v = lower_bound_eval(1 << e, 2, 0.0, 5.0);
        assert!(v >= prev);
        prev = v;
    }
}

#[test]
fn every_small_graph_draws() {
    let pts = gen_points(4, PointShape::Random, 12);
    let cfg = PointConfig::new(pts, vec![2, 0, 3, 1]).unwrap();
    for (i, g) in enumerate_planar_small(4).unwrap().enumerate() {
        let d = draw_fixed(&g, &cfg, i as u64).unwrap();
        assert!(verify_drawing(&d, &g, &cfg.vertex_points()).unwrap().ok(), "graph {i}");
    }
}
