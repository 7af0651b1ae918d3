//! Property tests for the library's structural invariants, driven by seeded
//! graph generation so failures reproduce from the printed seed.

use proptest::prelude::*;
use reeb_core::digraph::{PointSpec, ReebDigraph};
use reeb_core::gen::{self, Rng};
use reeb_core::io::{parse_graph, serialize_graph, ParseMode};
use reeb_core::iso::isomorphism;
use reeb_core::plmorse::census;
use reeb_core::rational::ratio;
use reeb_core::realize::realize;
use reeb_core::surgery::{
    glue_gs_counts, gs_check, insertion_count, insertion_count_excluding, wedge_connected_sum,
};
use std::collections::BTreeSet;

fn graph_from_seed(seed: u64, max_v: usize, max_d: usize) -> ReebDigraph {
    gen::good_digraph(&mut Rng::new(seed), max_v, max_d)
}

/// Copy of a graph with every id renamed, reversing the vertex order to
/// shuffle the internal maps.
fn relabel(g: &ReebDigraph, vstem: &str, estem: &str) -> ReebDigraph {
    use reeb_core::digraph::{EdgeId, VertexId};
    let verts: Vec<_> = g.vertices().cloned().collect();
    let name: std::collections::BTreeMap<_, _> = verts
        .iter()
        .rev()
        .enumerate()
        .map(|(i, v)| (v.clone(), VertexId(format!("{vstem}{i}"))))
        .collect();
    ReebDigraph::new(
        name.values().cloned().collect(),
        g.edges()
            .enumerate()
            .map(|(k, (_, e))| {
                (
                    EdgeId(format!("{estem}{k}")),
                    name[&e.src].clone(),
                    name[&e.dst].clone(),
                )
            })
            .collect(),
        None,
    )
    .unwrap()
}

proptest! {
    #[test]
    fn subdivision_preserves_goodness_and_betti(seed in any::<u64>(), t_num in 1i64..8) {
        let g = graph_from_seed(seed, 8, 5);
        let (eid, _) = g.edges().next().unwrap();
        let eid = eid.clone();
        let (g2, _) = g.subdivide_edge(&eid, &ratio(t_num, 8)).unwrap();
        prop_assert!(g2.validate_good_digraph().is_good);
        prop_assert_eq!(g2.first_betti().unwrap(), g.first_betti().unwrap());
        prop_assert_eq!(g2.vertex_count(), g.vertex_count() + 1);
        prop_assert_eq!(g2.edge_count(), g.edge_count() + 1);
    }

    #[test]
    fn isomorphism_is_reflexive(seed in any::<u64>()) {
        let g = graph_from_seed(seed, 9, 6);
        prop_assert!(isomorphism(&g, &g).is_some());
    }

    #[test]
    fn isomorphism_is_symmetric_and_transitive_on_relabelings(seed in any::<u64>()) {
        let g = graph_from_seed(seed, 8, 5);
        let h = relabel(&g, "x", "f");
        let k = relabel(&g, "zz", "qq");
        prop_assert!(isomorphism(&g, &h).is_some());
        prop_assert!(isomorphism(&h, &g).is_some());
        prop_assert!(isomorphism(&h, &k).is_some());
        prop_assert!(isomorphism(&g, &k).is_some());
    }

    #[test]
    fn wedge_is_symmetric(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let w1 = gen::good_digraph(&mut rng, 7, 5);
        let w2 = gen::good_digraph(&mut rng, 7, 5);
        let p1 = gen::wedge_point(&mut rng, &w1);
        let p2 = gen::wedge_point(&mut rng, &w2);
        let a = wedge_connected_sum(&w1, &p1, &w2, &p2).unwrap();
        let b = wedge_connected_sum(&w2, &p2, &w1, &p1).unwrap();
        prop_assert!(isomorphism(&a.graph.without_heights(), &b.graph.without_heights()).is_some());
    }

    #[test]
    fn glued_counts_always_pass(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let w1 = gen::good_digraph(&mut rng, 8, 5);
        let w2 = gen::good_digraph(&mut rng, 8, 5);
        let a1 = gen::gs_annotation(&mut rng, &w1);
        let a2 = gen::gs_annotation(&mut rng, &w2);
        let p1 = gen::wedge_point(&mut rng, &w1);
        let p2 = gen::wedge_point(&mut rng, &w2);
        let (res, ann) = glue_gs_counts(&w1, &a1, &w2, &a2, &p1, &p2).unwrap();
        prop_assert!(gs_check(&res.graph, &ann).unwrap().ok);
    }

    #[test]
    fn relaxed_count_never_exceeds_plain_count(seed in any::<u64>()) {
        let g = graph_from_seed(seed, 9, 5);
        let degree2: BTreeSet<_> = g
            .vertices()
            .filter(|v| g.degree(v) == 2)
            .cloned()
            .collect();
        let full = insertion_count(&g);
        let reduced = insertion_count_excluding(&g, &degree2).unwrap();
        prop_assert!(reduced <= full);
        prop_assert_eq!(reduced == full, degree2.is_empty());
    }

    #[test]
    fn graph_documents_round_trip(seed in any::<u64>()) {
        let g = graph_from_seed(seed, 10, 6);
        let with_heights = g.with_layer_heights().unwrap();
        for graph in [g, with_heights] {
            let text = serialize_graph(&graph);
            let parsed = parse_graph(&text, ParseMode::Strict).unwrap();
            prop_assert_eq!(&parsed, &graph);
            prop_assert_eq!(serialize_graph(&parsed), text);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Euler consistency: V - E + F equals the signed critical count on
    // every realization the engine accepts.
    #[test]
    fn euler_characteristic_matches_the_critical_census(seed in any::<u64>()) {
        let g = graph_from_seed(seed, 6, 4);
        let r = realize(&g).unwrap();
        let c = census(&r.surface, &r.heights).unwrap();
        prop_assert_eq!(
            r.surface.euler_characteristic(),
            (c.minima + c.maxima) as i64 - c.saddle_multiplicity_sum as i64
        );
    }

    // Wedging a pre-existing vertex reports it as the new vertex and the
    // in/out contributions add.
    #[test]
    fn wedge_vertex_degrees_add(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let w1 = gen::good_digraph(&mut rng, 7, 5);
        let w2 = gen::good_digraph(&mut rng, 7, 5);
        let p1 = gen::wedge_point(&mut rng, &w1);
        let p2 = gen::wedge_point(&mut rng, &w2);
        let res = wedge_connected_sum(&w1, &p1, &w2, &p2).unwrap();
        let contribution = |g: &ReebDigraph, p: &PointSpec| match p {
            PointSpec::Vertex(v) => (g.in_degree(v), g.out_degree(v)),
            PointSpec::EdgeInterior(_, _) => (1, 1),
        };
        let (i1, o1) = contribution(&w1, &p1);
        let (i2, o2) = contribution(&w2, &p2);
        prop_assert_eq!(res.graph.in_degree(&res.new_vertex), i1 + i2);
        prop_assert_eq!(res.graph.out_degree(&res.new_vertex), o1 + o2);
    }
}
