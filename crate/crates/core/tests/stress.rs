//! Wider-than-default batches: bigger graphs and degrees for the
//! realization round-trip, and connected sums at arbitrary non-extremum
//! points including degree-2 cross-cap vertices and reversed gluings.

use reeb_core::consum::{connected_sum_surfaces, find_regular_strip, tight_window, Gluing};
use reeb_core::gen::{self, Rng};
use reeb_core::iso::isomorphism;
use reeb_core::realize::realize;
use reeb_core::surgery::wedge_connected_sum;
use reeb_core::sweep::pl_reeb;

#[test]
fn roundtrip_with_wide_degrees() {
    let mut rng = Rng::new(12345);
    for i in 0..200 {
        let w = gen::good_digraph(&mut rng, 12, 7);
        let r = realize(&w).unwrap_or_else(|e| panic!("case {i}: realize failed: {e}"));
        let out = pl_reeb(&r.surface, &r.heights)
            .unwrap_or_else(|e| panic!("case {i}: sweep failed: {e}"));
        assert!(
            isomorphism(&out.graph.without_heights(), &w.without_heights()).is_some(),
            "case {i}: round-trip mismatch\nwant {w:?}\ngot {:?}",
            out.graph
        );
    }
}

#[test]
fn connected_sums_at_arbitrary_points() {
    let mut rng = Rng::new(777);
    for i in 0..60 {
        let w1 = gen::good_digraph(&mut rng, 7, 5);
        let w2 = gen::good_digraph(&mut rng, 7, 5);
        let r1 = realize(&w1).unwrap();
        let r2 = realize(&w2).unwrap();
        let s1 = pl_reeb(&r1.surface, &r1.heights).unwrap();
        let s2 = pl_reeb(&r2.surface, &r2.heights).unwrap();
        let p1 = gen::wedge_point(&mut rng, &s1.graph);
        let p2 = gen::wedge_point(&mut rng, &s2.graph);
        let v1 = s1.graph.value_at(&p1).unwrap();
        let v2 = s2.graph.value_at(&p2).unwrap();
        let f1 = find_regular_strip(&r1.surface, &r1.heights, &p1, tight_window(&r1.heights, &v1))
            .unwrap_or_else(|e| panic!("case {i}: strip1 {e}"));
        let f2 = find_regular_strip(&r2.surface, &r2.heights, &p2, tight_window(&r2.heights, &v2))
            .unwrap_or_else(|e| panic!("case {i}: strip2 {e}"));
        let gluing = if i % 2 == 0 {
            Gluing::Preserve
        } else {
            Gluing::Reverse
        };
        let glued = connected_sum_surfaces(
            &f1.surface,
            &f1.heights,
            &f1.strip,
            &f2.surface,
            &f2.heights,
            &f2.strip,
            gluing,
        )
        .unwrap_or_else(|e| panic!("case {i}: consum {e}"));
        assert_eq!(
            glued.surface.euler_characteristic(),
            f1.surface.euler_characteristic() + f2.surface.euler_characteristic() - 2,
            "case {i}: Euler characteristic"
        );
        let g1 = pl_reeb(&f1.surface, &f1.heights).unwrap();
        let g2 = pl_reeb(&f2.surface, &f2.heights).unwrap();
        let wedge = wedge_connected_sum(&g1.graph, &p1, &g2.graph, &p2).unwrap();
        let swept = pl_reeb(&glued.surface, &glued.heights)
            .unwrap_or_else(|e| panic!("case {i}: glued sweep {e}"));
        assert!(
            isomorphism(&swept.graph.without_heights(), &wedge.graph.without_heights()).is_some(),
            "case {i}: glued sweep is not the wedge"
        );
    }
}
