//! The batch verification suite: every numbered criterion as a seeded,
//! deterministic batch run with an explicit pass/fail verdict.

pub mod oracle;

use reeb_core::consum::{connected_sum_surfaces, find_regular_strip, tight_window, Gluing};
use reeb_core::digraph::{PointSpec, ReebDigraph};
use reeb_core::gen::{self, Rng};
use reeb_core::iso::isomorphism;
use reeb_core::mesh::{octahedron, projective_plane, standing_torus};
use reeb_core::realize::realize;
use reeb_core::surgery::{
    augment_host, critical_split, glue_gs_counts, gs_check, insertion_count,
    insertion_count_excluding, smooth_vertices, wedge_connected_sum,
};
use reeb_core::sweep::pl_reeb;
use std::fmt::Write as _;
use std::time::Instant;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub millis: u128,
}

impl CriterionResult {
    /// Stable report line (no timing, so identical seeds give identical
    /// reports).
    pub fn report_line(&self) -> String {
        format!(
            "{} criterion {}: {} — {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

fn run(id: usize, name: &'static str, f: impl FnOnce() -> (bool, String)) -> CriterionResult {
    let start = Instant::now();
    let (pass, detail) = f();
    CriterionResult {
        id,
        name,
        pass,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

/// Criterion 1: the validator agrees with the exhaustive labeling oracle on
/// every connected multidigraph with <= 5 vertices and <= 7 edges, one
/// representative per relabeling class.
pub fn criterion_1() -> CriterionResult {
    run(1, "validator agrees with the labeling oracle", || {
        let mut checked = 0usize;
        let mut disagreements = 0usize;
        oracle::enumerate_small_multidigraphs(5, 7, |g| {
            checked += 1;
            let expected = oracle::oracle_good(g);
            let got = g.to_digraph().validate_good_digraph().is_good;
            if expected != got {
                disagreements += 1;
            }
        });
        (
            disagreements == 0,
            format!("{checked} representatives, {disagreements} disagreements"),
        )
    })
}

/// Criterion 2: wedge invariants over seeded random pairs.
pub fn criterion_2(seed: u64) -> CriterionResult {
    run(2, "wedge connected-sum invariants", || {
        let mut rng = Rng::new(seed ^ 0x57ed9e);
        let mut failures = 0usize;
        let cases = 500usize;
        for _ in 0..cases {
            let w1 = gen::good_digraph(&mut rng, 10, 8);
            let w2 = gen::good_digraph(&mut rng, 10, 8);
            let p1 = gen::wedge_point(&mut rng, &w1);
            let p2 = gen::wedge_point(&mut rng, &w2);
            let Ok(res) = wedge_connected_sum(&w1, &p1, &w2, &p2) else {
                failures += 1;
                continue;
            };
            let d = |g: &ReebDigraph, p: &PointSpec| match p {
                PointSpec::Vertex(v) => g.degree(v),
                PointSpec::EdgeInterior(_, _) => 2,
            };
            let vertex_points = [&p1, &p2]
                .iter()
                .filter(|p| matches!(p, PointSpec::Vertex(_)))
                .count();
            let interior_points = 2 - vertex_points;
            let ok = res.graph.validate_good_digraph().is_good
                && res.graph.first_betti().unwrap()
                    == w1.first_betti().unwrap() + w2.first_betti().unwrap()
                && res.graph.degree(&res.new_vertex) == d(&w1, &p1) + d(&w2, &p2)
                && res.graph.vertex_count()
                    == w1.vertex_count() + w2.vertex_count() + 1 - vertex_points
                && res.graph.edge_count() == w1.edge_count() + w2.edge_count() + interior_points;
            if !ok {
                failures += 1;
            }
        }
        (failures == 0, format!("{cases} pairs, {failures} failures"))
    })
}

/// Criterion 3: count gluing preserves the degree-count rule.
pub fn criterion_3(seed: u64) -> CriterionResult {
    run(3, "count gluing stays valid", || {
        let mut rng = Rng::new(seed ^ 0x61e2);
        let mut failures = 0usize;
        let cases = 200usize;
        for _ in 0..cases {
            let w1 = gen::good_digraph(&mut rng, 10, 8);
            let w2 = gen::good_digraph(&mut rng, 10, 8);
            let a1 = gen::gs_annotation(&mut rng, &w1);
            let a2 = gen::gs_annotation(&mut rng, &w2);
            let p1 = gen::wedge_point(&mut rng, &w1);
            let p2 = gen::wedge_point(&mut rng, &w2);
            match glue_gs_counts(&w1, &a1, &w2, &a2, &p1, &p2) {
                Ok((res, ann)) => {
                    if !gs_check(&res.graph, &ann).map(|r| r.ok).unwrap_or(false) {
                        failures += 1;
                    }
                }
                Err(_) => failures += 1,
            }
        }
        (failures == 0, format!("{cases} pairs, {failures} failures"))
    })
}

/// Criterion 4: realization round-trip.
pub fn criterion_4(seed: u64) -> CriterionResult {
    run(4, "realization round-trip", || {
        let mut rng = Rng::new(seed ^ 0x4ea1);
        let mut failures = 0usize;
        let mut max_triangles = 0usize;
        let cases = 100usize;
        for _ in 0..cases {
            let w = gen::good_digraph(&mut rng, 8, 5);
            let Ok(r) = realize(&w) else {
                failures += 1;
                continue;
            };
            max_triangles = max_triangles.max(r.surface.triangle_count());
            if r.surface.triangle_count() > 5000 {
                failures += 1;
                continue;
            }
            match pl_reeb(&r.surface, &r.heights) {
                Ok(out) => {
                    if isomorphism(&out.graph.without_heights(), &w.without_heights()).is_none() {
                        failures += 1;
                    }
                }
                Err(_) => failures += 1,
            }
        }
        (
            failures == 0,
            format!("{cases} digraphs, {failures} failures, largest mesh {max_triangles} triangles"),
        )
    })
}

struct ConsumOutcome {
    cases: usize,
    failures: usize,
    cluster_failures: usize,
}

fn consum_batch(seed: u64) -> ConsumOutcome {
    let mut rng = Rng::new(seed ^ 0xc0257);
    let cases = 50usize;
    let mut failures = 0usize;
    let mut cluster_failures = 0usize;
    for case in 0..cases {
        let mut run_one = || -> Option<bool> {
            let w1 = gen::good_digraph(&mut rng, 5, 4);
            let w2 = gen::good_digraph(&mut rng, 5, 4);
            let r1 = realize(&w1).ok()?;
            let r2 = realize(&w2).ok()?;
            let s1 = pl_reeb(&r1.surface, &r1.heights).ok()?;
            let s2 = pl_reeb(&r2.surface, &r2.heights).ok()?;
            // Gluing at a degree-2 vertex keeps its cross-cap saddle at the
            // wedge level on top of the two new ones, so the result is not
            // G-simple there; pick points where exact counts are attainable.
            let p1 = gen::gs_wedge_point(&mut rng, &s1.graph);
            let p2 = gen::gs_wedge_point(&mut rng, &s2.graph);
            let v1 = s1.graph.value_at(&p1).ok()?;
            let v2 = s2.graph.value_at(&p2).ok()?;
            let f1 = find_regular_strip(&r1.surface, &r1.heights, &p1, tight_window(&r1.heights, &v1)).ok()?;
            let f2 = find_regular_strip(&r2.surface, &r2.heights, &p2, tight_window(&r2.heights, &v2)).ok()?;
            let gluing = if case % 2 == 0 { Gluing::Preserve } else { Gluing::Reverse };
            let glued = connected_sum_surfaces(
                &f1.surface,
                &f1.heights,
                &f1.strip,
                &f2.surface,
                &f2.heights,
                &f2.strip,
                gluing,
            )
            .ok()?;
            if glued.surface.euler_characteristic()
                != f1.surface.euler_characteristic() + f2.surface.euler_characteristic() - 2
            {
                return Some(false);
            }
            // Wedge on the (refined) swept digraphs.
            let g1 = pl_reeb(&f1.surface, &f1.heights).ok()?;
            let g2 = pl_reeb(&f2.surface, &f2.heights).ok()?;
            let wedge = wedge_connected_sum(&g1.graph, &p1, &g2.graph, &p2).ok()?;
            let swept = pl_reeb(&glued.surface, &glued.heights).ok()?;
            let iso = isomorphism(&swept.graph.without_heights(), &wedge.graph.without_heights())?;
            // Criterion 6: the wedge vertex's cluster carries deg - 2
            // critical points. The map runs swept -> wedge, so invert it.
            let image = iso
                .vertex_map
                .iter()
                .find(|(_, b)| **b == wedge.new_vertex)
                .map(|(a, _)| a.clone())?;
            let deg = wedge.graph.degree(&wedge.new_vertex);
            let cluster = swept.vertex_info[&image].critical_vertices.len();
            if cluster != deg - 2 {
                cluster_failures += 1;
            }
            Some(true)
        };
        match run_one() {
            Some(true) => {}
            _ => failures += 1,
        }
    }
    ConsumOutcome {
        cases,
        failures,
        cluster_failures,
    }
}

/// Criteria 5 and 6 share the same batch of surgeries.
pub fn criteria_5_and_6(seed: u64) -> (CriterionResult, CriterionResult) {
    let start = Instant::now();
    let outcome = consum_batch(seed);
    let millis = start.elapsed().as_millis();
    let c5 = CriterionResult {
        id: 5,
        name: "simplicial connected sum matches the wedge",
        pass: outcome.failures == 0,
        detail: format!("{} pairs, {} failures", outcome.cases, outcome.failures),
        millis,
    };
    let c6 = CriterionResult {
        id: 6,
        name: "wedge vertex carries exactly deg - 2 critical points",
        pass: outcome.failures == 0 && outcome.cluster_failures == 0,
        detail: format!(
            "{} pairs, {} cluster-size failures",
            outcome.cases, outcome.cluster_failures
        ),
        millis,
    };
    (c5, c6)
}

/// Criterion 7: augmentation counts, degrees, and invertibility.
pub fn criterion_7(seed: u64) -> CriterionResult {
    run(7, "host augmentation counts and recovery", || {
        let mut rng = Rng::new(seed ^ 0x7a3);
        let cases = 200usize;
        let mut failures = 0usize;
        for case in 0..cases {
            let relaxed = case % 2 == 1;
            let host = gen::tree_host(&mut rng, 5);
            let inst = gen::embedded_digraph(&mut rng, &host, relaxed);
            let expected = if relaxed {
                insertion_count_excluding(&inst.w, &inst.on_host_vertices).unwrap()
            } else {
                insertion_count(&inst.w)
            };
            let ok = (|| -> Option<bool> {
                let res = augment_host(&host, &inst.w, &inst.phi, relaxed).ok()?;
                if res.new_vertices.len() as u64 != expected {
                    return Some(false);
                }
                for v in &res.new_vertices {
                    if res.graph.degree(v) != 2
                        || res.graph.in_degree(v) != 1
                        || res.graph.out_degree(v) != 1
                    {
                        return Some(false);
                    }
                }
                let smoothed = smooth_vertices(&res.graph, &res.new_vertices).ok()?;
                Some(isomorphism(&smoothed, &host).is_some())
            })();
            if ok != Some(true) {
                failures += 1;
            }
        }
        (failures == 0, format!("{cases} instances, {failures} failures"))
    })
}

/// Criterion 8: fixtures and the dense-sampling oracle.
pub fn criterion_8() -> CriterionResult {
    run(8, "fixture sweeps equal the dense-sampling oracle", || {
        let mut detail = String::new();
        let mut pass = true;
        let single_edge = ReebDigraph::from_edges(&["u", "v"], &[("e", "u", "v")]).unwrap();
        let path3 =
            ReebDigraph::from_edges(&["u", "v", "w"], &[("e1", "u", "v"), ("e2", "v", "w")]).unwrap();
        let theta = ReebDigraph::from_edges(
            &["a", "b", "c", "d"],
            &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "b", "c"), ("e4", "c", "d")],
        )
        .unwrap();
        let x_graph = ReebDigraph::from_edges(
            &["a", "b", "w", "c", "d"],
            &[("e1", "a", "w"), ("e2", "b", "w"), ("e3", "w", "c"), ("e4", "w", "d")],
        )
        .unwrap();

        let mut corpus: Vec<(&str, reeb_core::mesh::TriSurface, reeb_core::mesh::PlHeights, Option<ReebDigraph>)> =
            Vec::new();
        let (s, h) = octahedron();
        corpus.push(("octahedron", s, h, Some(single_edge.clone())));
        let (s, h) = standing_torus(8);
        corpus.push(("torus", s, h, Some(theta.clone())));
        let (s, h) = projective_plane();
        corpus.push(("projective-plane", s, h, Some(path3.clone())));
        for (name, w) in [
            ("realized-edge", &single_edge),
            ("realized-path", &path3),
            ("realized-theta", &theta),
            ("realized-x", &x_graph),
        ] {
            let r = realize(w).unwrap();
            corpus.push((name, r.surface, r.heights, Some(w.clone())));
        }

        for (name, surface, heights, expected) in &corpus {
            if surface.triangle_count() > 1000 {
                pass = false;
                let _ = write!(detail, "{name}: over the corpus size bound; ");
                continue;
            }
            let swept = match pl_reeb(surface, heights) {
                Ok(out) => out.graph,
                Err(e) => {
                    pass = false;
                    let _ = write!(detail, "{name}: sweep failed ({e}); ");
                    continue;
                }
            };
            if let Some(exp) = expected {
                if isomorphism(&swept.without_heights(), &exp.without_heights()).is_none() {
                    pass = false;
                    let _ = write!(detail, "{name}: sweep does not match the fixture; ");
                }
            }
            let sampled = oracle::reeb_by_dense_sampling(surface, heights);
            if isomorphism(&swept.without_heights(), &sampled).is_none() {
                pass = false;
                let _ = write!(detail, "{name}: sweep differs from the sampling oracle; ");
            }
            // On orientable corpus members the cycle rank is bounded by the
            // genus.
            if let Some(genus) = surface.genus() {
                if swept.first_betti().unwrap() as u64 > genus {
                    pass = false;
                    let _ = write!(detail, "{name}: first Betti number exceeds the genus; ");
                }
            }
        }
        if pass {
            detail = format!("{} corpus meshes, all matched", corpus.len());
        }
        (pass, detail)
    })
}

/// Criterion 9: the below/above split sums to deg - 2, exhaustively.
pub fn criterion_9() -> CriterionResult {
    run(9, "critical split totals", || {
        let mut failures = 0usize;
        for p in 1u64..=6 {
            for q in 1u64..=6 {
                match critical_split(p, q) {
                    Ok(s) => {
                        if s.below + s.above != p + q - 2 || s.below != q - 1 || s.above != p - 1 {
                            failures += 1;
                        }
                    }
                    Err(_) => failures += 1,
                }
            }
        }
        (failures == 0, format!("36 pairs, {failures} failures"))
    })
}

/// Run the whole suite with one seed.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    let mut results = vec![criterion_1(), criterion_2(seed), criterion_3(seed), criterion_4(seed)];
    let (c5, c6) = criteria_5_and_6(seed);
    results.push(c5);
    results.push(c6);
    results.push(criterion_7(seed));
    results.push(criterion_8());
    results.push(criterion_9());
    results
}
