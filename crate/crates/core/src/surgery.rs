//! Graph-level surgeries on Reeb digraphs: the wedge connected sum,
//! critical-point count bookkeeping backing the G-simple condition,
//! topological embedding checks into a host digraph, and the augmentation
//! that inserts new degree-2 vertices into a tree host.

use crate::digraph::{check_parameter, EdgeId, PointSpec, ReebDigraph, ValidityReport, VertexId};
use crate::error::SurgeryError;
use crate::rational::{int, mid, ratio};
use num_rational::BigRational;
use std::collections::{BTreeMap, BTreeSet};

/// Per-vertex count of critical points mapped by the quotient map to that
/// vertex. Degree-1 vertices are local extremum preimages and may carry any
/// positive count; they are not constrained by [`gs_check`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GsAnnotation {
    pub counts: BTreeMap<VertexId, u64>,
}

impl GsAnnotation {
    pub fn new(counts: BTreeMap<VertexId, u64>) -> Self {
        GsAnnotation { counts }
    }

    pub fn of(pairs: &[(&str, u64)]) -> Self {
        GsAnnotation {
            counts: pairs
                .iter()
                .map(|(v, c)| (VertexId::from(*v), *c))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsVertexReport {
    pub vertex: VertexId,
    pub degree: usize,
    pub required: u64,
    pub actual: Option<u64>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsReport {
    pub ok: bool,
    pub per_vertex: Vec<GsVertexReport>,
}

/// Check the degree-count rule: a vertex of degree d >= 3 must carry exactly
/// d - 2 critical points and a vertex of degree 2 exactly 1. Degree-1
/// vertices are ignored.
pub fn gs_check(g: &ReebDigraph, ann: &GsAnnotation) -> Result<GsReport, SurgeryError> {
    for v in ann.counts.keys() {
        if !g.has_vertex(v) {
            return Err(SurgeryError::AnnotationUnknownVertex(v.clone()));
        }
    }
    let mut per_vertex = Vec::new();
    for v in g.vertices() {
        let d = g.degree(v);
        if d < 2 {
            continue;
        }
        let required = if d == 2 { 1 } else { (d as u64) - 2 };
        let actual = ann.counts.get(v).copied();
        per_vertex.push(GsVertexReport {
            vertex: v.clone(),
            degree: d,
            required,
            actual,
            ok: actual == Some(required),
        });
    }
    let ok = per_vertex.iter().all(|r| r.ok);
    Ok(GsReport { ok, per_vertex })
}

/// Result of a wedge connected sum, with enough bookkeeping to translate
/// annotations and to compare against the PL construction.
#[derive(Debug, Clone)]
pub struct WedgeResult {
    pub graph: ReebDigraph,
    pub new_vertex: VertexId,
    /// Renames applied to the two inputs (identity where ids were free).
    pub vertex_map_1: BTreeMap<VertexId, VertexId>,
    pub vertex_map_2: BTreeMap<VertexId, VertexId>,
    pub edge_map_1: BTreeMap<EdgeId, EdgeId>,
    pub edge_map_2: BTreeMap<EdgeId, EdgeId>,
}

fn identity_vmap(g: &ReebDigraph) -> BTreeMap<VertexId, VertexId> {
    g.vertices().map(|v| (v.clone(), v.clone())).collect()
}

fn identity_emap(g: &ReebDigraph) -> BTreeMap<EdgeId, EdgeId> {
    g.edges().map(|(e, _)| (e.clone(), e.clone())).collect()
}

fn require_good(g: &ReebDigraph) -> Result<ValidityReport, SurgeryError> {
    let report = g.validate_good_digraph();
    if !report.is_good {
        return Err(SurgeryError::InvalidInput(Box::new(report)));
    }
    Ok(report)
}

/// The attachment point of one side of a wedge: a non-extremum vertex, or an
/// edge-interior point (which is subdivided first).
#[allow(clippy::type_complexity)]
fn resolve_point(
    g: &ReebDigraph,
    p: &PointSpec,
) -> Result<(ReebDigraph, VertexId, Option<(EdgeId, EdgeId, EdgeId)>), SurgeryError> {
    match p {
        PointSpec::Vertex(v) => {
            if !g.has_vertex(v) {
                return Err(SurgeryError::Graph(crate::error::GraphError::UnknownVertex(
                    v.clone(),
                )));
            }
            if g.in_degree(v) == 0 || g.out_degree(v) == 0 {
                return Err(SurgeryError::ExtremumPoint(v.clone()));
            }
            Ok((g.clone(), v.clone(), None))
        }
        PointSpec::EdgeInterior(e, t) => {
            check_parameter(t).map_err(SurgeryError::Graph)?;
            if g.edge(e).is_none() {
                return Err(SurgeryError::Graph(crate::error::GraphError::UnknownEdge(
                    e.clone(),
                )));
            }
            let (g2, w) = g.subdivide_edge(e, t).map_err(SurgeryError::Graph)?;
            let ids = split_edge_ids(&g2, e, &w);
            Ok((g2, w, Some(ids)))
        }
    }
}

fn split_edge_ids(g: &ReebDigraph, original: &EdgeId, w: &VertexId) -> (EdgeId, EdgeId, EdgeId) {
    let mut before = None;
    let mut after = None;
    for (id, e) in g.edges() {
        if &e.dst == w {
            before = Some(id.clone());
        }
        if &e.src == w {
            after = Some(id.clone());
        }
    }
    (original.clone(), before.unwrap(), after.unwrap())
}

/// Wedge connected sum: identify one chosen non-extremum point of each good
/// digraph into a single fresh vertex `w`. Edge-interior points are
/// subdivided first. When both inputs carry heights, each is rescaled
/// piecewise-affinely onto [0, 1] with its chosen point at 1/2 before the
/// union, so the identification is value-preserving.
pub fn wedge_connected_sum(
    w1: &ReebDigraph,
    p1: &PointSpec,
    w2: &ReebDigraph,
    p2: &PointSpec,
) -> Result<WedgeResult, SurgeryError> {
    require_good(w1)?;
    require_good(w2)?;
    let (mut g1, c1, _) = resolve_point(w1, p1)?;
    let (mut g2, c2, _) = resolve_point(w2, p2)?;

    let both_heights = w1.heights().is_some() && w2.heights().is_some();
    if both_heights {
        let v1 = g1.height(&c1).cloned().expect("heights present");
        let v2 = g2.height(&c2).cloned().expect("heights present");
        g1 = g1
            .rescale_heights_around(&v1)
            .expect("non-extremum point has interior value");
        g2 = g2
            .rescale_heights_around(&v2)
            .expect("non-extremum point has interior value");
    } else {
        g1 = g1.without_heights();
        g2 = g2.without_heights();
    }

    let (union, vmap2, emap2) = g1.disjoint_union(&g2);
    let c2r = vmap2[&c2].clone();
    let (glued, w) = union.identify_vertices(&[c1.clone(), c2r], "w");

    // Rename maps for the ORIGINAL inputs (chosen points map to w).
    let mut vertex_map_1 = identity_vmap(w1);
    let mut edge_map_1 = identity_emap(w1);
    if let PointSpec::Vertex(v) = p1 {
        vertex_map_1.insert(v.clone(), w.clone());
    }
    let mut vertex_map_2: BTreeMap<VertexId, VertexId> = w2
        .vertices()
        .map(|v| (v.clone(), vmap2.get(v).cloned().unwrap_or_else(|| v.clone())))
        .collect();
    let mut edge_map_2: BTreeMap<EdgeId, EdgeId> = w2
        .edges()
        .map(|(e, _)| (e.clone(), emap2.get(e).cloned().unwrap_or_else(|| e.clone())))
        .collect();
    if let PointSpec::Vertex(v) = p2 {
        vertex_map_2.insert(v.clone(), w.clone());
    }
    // Subdivided edges disappear from the maps: their originals no longer
    // exist in the result.
    if let PointSpec::EdgeInterior(e, _) = p1 {
        edge_map_1.remove(e);
    }
    if let PointSpec::EdgeInterior(e, _) = p2 {
        edge_map_2.remove(e);
    }

    debug_assert!(glued.validate_good_digraph().is_good);
    Ok(WedgeResult {
        graph: glued,
        new_vertex: w,
        vertex_map_1,
        vertex_map_2,
        edge_map_1,
        edge_map_2,
    })
}

/// Wedge two annotated digraphs and carry the counts across: untouched
/// vertices keep their counts and the new wedge vertex receives
/// deg(w) - 2. Both inputs must pass `gs_check`; the output does too.
pub fn glue_gs_counts(
    w1: &ReebDigraph,
    ann1: &GsAnnotation,
    w2: &ReebDigraph,
    ann2: &GsAnnotation,
    p1: &PointSpec,
    p2: &PointSpec,
) -> Result<(WedgeResult, GsAnnotation), SurgeryError> {
    if !gs_check(w1, ann1)?.ok || !gs_check(w2, ann2)?.ok {
        return Err(SurgeryError::CountsInvalid);
    }
    let wedge = wedge_connected_sum(w1, p1, w2, p2)?;
    let mut counts = BTreeMap::new();
    for (src_ann, vmap) in [(ann1, &wedge.vertex_map_1), (ann2, &wedge.vertex_map_2)] {
        for (v, c) in &src_ann.counts {
            let nv = vmap[v].clone();
            if nv != wedge.new_vertex {
                counts.insert(nv, *c);
            }
        }
    }
    let d = wedge.graph.degree(&wedge.new_vertex) as u64;
    counts.insert(wedge.new_vertex.clone(), d - 2);
    let ann = GsAnnotation::new(counts);
    debug_assert!(gs_check(&wedge.graph, &ann)?.ok);
    Ok((wedge, ann))
}

/// Number of critical points at level p (below) and level q (above) of a
/// vertex with the given in- and out-degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriticalSplit {
    pub below: u64,
    pub above: u64,
}

/// Split deg - 2 critical points across the two levels flanking a vertex:
/// out_deg - 1 sit just below it and in_deg - 1 just above it.
pub fn critical_split(in_deg: u64, out_deg: u64) -> Result<CriticalSplit, SurgeryError> {
    if in_deg == 0 || out_deg == 0 {
        return Err(SurgeryError::ZeroDegreeSplit);
    }
    Ok(CriticalSplit {
        below: out_deg - 1,
        above: in_deg - 1,
    })
}

/// Number of new degree-2 vertices the augmentation inserts: the sum of
/// deg(v) - 2 over vertices of degree >= 3, plus 1 per degree-2 vertex.
pub fn insertion_count(w: &ReebDigraph) -> u64 {
    let mut n = 0u64;
    for v in w.vertices() {
        let d = w.degree(v);
        if d >= 3 {
            n += (d as u64) - 2;
        } else if d == 2 {
            n += 1;
        }
    }
    n
}

/// Variant of [`insertion_count`] when some degree-2 vertices are mapped
/// onto host vertices instead of edge interiors: those need no insertion.
pub fn insertion_count_excluding(
    w: &ReebDigraph,
    on_host_vertices: &BTreeSet<VertexId>,
) -> Result<u64, SurgeryError> {
    for v in on_host_vertices {
        if !w.has_vertex(v) {
            return Err(SurgeryError::Graph(crate::error::GraphError::UnknownVertex(
                v.clone(),
            )));
        }
        if w.degree(v) != 2 {
            return Err(SurgeryError::NotDegreeTwo(v.clone()));
        }
    }
    Ok(insertion_count(w) - on_host_vertices.len() as u64)
}

/// A topological embedding of `w` into a host digraph `g`: vertices map to
/// points of the host, edges to forward paths of host edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EmbeddingMap {
    pub vertex_image: BTreeMap<VertexId, PointSpec>,
    pub edge_image: BTreeMap<EdgeId, Vec<EdgeId>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingViolation {
    /// Degree-1 vertices must land on degree-1 host vertices.
    LeafNotOnLeaf(VertexId),
    /// Degree-2 vertices must land on edge interiors (unless relaxed).
    Degree2NotInterior(VertexId),
    /// Degree >= 3 vertices must land on host vertices of at least that degree.
    BranchDegreeTooSmall(VertexId),
    /// Two vertex images coincide.
    VertexImagesCollide(VertexId, VertexId),
    /// An edge path revisits a host vertex or edge.
    PathNotSimple(EdgeId),
    /// Two edge images overlap beyond a shared endpoint image.
    PathsOverlap(EdgeId, EdgeId),
    /// An edge image passes through another vertex's image.
    PathHitsVertexImage(EdgeId, VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub ok: bool,
    pub violations: Vec<EmbeddingViolation>,
    /// Degree-2 vertices of `w` mapped onto host vertices (relaxed mode).
    pub on_host_vertices: BTreeSet<VertexId>,
}

/// The closed image of one edge path in the host: visited host vertices and
/// per-host-edge closed parameter intervals.
#[derive(Debug, Clone, Default)]
struct PathImage {
    verts: Vec<VertexId>,
    intervals: Vec<(EdgeId, BigRational, BigRational)>,
}

fn endpoint_param(p: &PointSpec, host_edge: &EdgeId, at_src: bool) -> Option<BigRational> {
    match p {
        PointSpec::Vertex(_) => Some(if at_src { int(0) } else { int(1) }),
        PointSpec::EdgeInterior(e, t) => {
            if e == host_edge {
                Some(t.clone())
            } else {
                None
            }
        }
    }
}

/// Walk one edge path, checking endpoint consistency and forward
/// orientation, and build its closed image.
fn trace_path(
    g: &ReebDigraph,
    edge: &EdgeId,
    path: &[EdgeId],
    from: &PointSpec,
    to: &PointSpec,
) -> Result<PathImage, SurgeryError> {
    let structure = |msg: String| SurgeryError::EmbeddingStructure(format!("edge {edge}: {msg}"));
    if path.is_empty() {
        return Err(structure("empty path".into()));
    }
    for e in path {
        if g.edge(e).is_none() {
            return Err(structure(format!("unknown host edge {e}")));
        }
    }
    let first = &path[0];
    let last = &path[path.len() - 1];

    let start_param = match from {
        PointSpec::Vertex(v) => {
            if &g.edge(first).unwrap().src != v {
                return Err(structure(format!(
                    "path does not start at the image of its source ({v})"
                )));
            }
            int(0)
        }
        PointSpec::EdgeInterior(_, _) => endpoint_param(from, first, true).ok_or_else(|| {
            structure("path does not start on the edge carrying the source image".into())
        })?,
    };
    let end_param = match to {
        PointSpec::Vertex(v) => {
            if &g.edge(last).unwrap().dst != v {
                return Err(structure(format!(
                    "path does not end at the image of its destination ({v})"
                )));
            }
            int(1)
        }
        PointSpec::EdgeInterior(_, _) => endpoint_param(to, last, false).ok_or_else(|| {
            structure("path does not end on the edge carrying the destination image".into())
        })?,
    };

    for pair in path.windows(2) {
        let a = g.edge(&pair[0]).unwrap();
        let b = g.edge(&pair[1]).unwrap();
        if a.dst != b.src {
            return Err(structure(format!(
                "consecutive edges {} and {} do not chain forward",
                pair[0], pair[1]
            )));
        }
    }

    let mut image = PathImage::default();
    if path.len() == 1 {
        if start_param >= end_param {
            return Err(structure(
                "start parameter must precede end parameter on a single-edge path".into(),
            ));
        }
        image
            .intervals
            .push((first.clone(), start_param, end_param));
    } else {
        image.intervals.push((first.clone(), start_param, int(1)));
        for e in &path[1..path.len() - 1] {
            image.intervals.push((e.clone(), int(0), int(1)));
        }
        image.intervals.push((last.clone(), int(0), end_param));
        for pair in path.windows(2) {
            image.verts.push(g.edge(&pair[0]).unwrap().dst.clone());
        }
    }
    // Endpoint vertices are part of the closed image.
    for (p, host_edge, at_src) in [(from, first, true), (to, last, false)] {
        let _ = (host_edge, at_src);
        if let PointSpec::Vertex(v) = p {
            image.verts.push(v.clone());
        }
    }
    Ok(image)
}

fn point_on_interval(p: &PointSpec, iv: &(EdgeId, BigRational, BigRational)) -> bool {
    match p {
        PointSpec::Vertex(_) => false,
        PointSpec::EdgeInterior(e, t) => e == &iv.0 && &iv.1 <= t && t <= &iv.2,
    }
}

fn points_equal(a: &PointSpec, b: &PointSpec) -> bool {
    a == b
}

/// Check that `phi` embeds `w` into `g` topologically, preserving
/// orientation. With `relaxed_degree2` set, degree-2 vertices of `w` may map
/// onto host vertices; the set of vertices so mapped is reported.
pub fn check_embedding(
    w: &ReebDigraph,
    g: &ReebDigraph,
    phi: &EmbeddingMap,
    relaxed_degree2: bool,
) -> Result<EmbeddingReport, SurgeryError> {
    require_good(w)?;
    require_good(g)?;
    let structure = |msg: String| SurgeryError::EmbeddingStructure(msg);

    for v in w.vertices() {
        if !phi.vertex_image.contains_key(v) {
            return Err(structure(format!("no image for vertex {v}")));
        }
    }
    for (e, _) in w.edges() {
        if !phi.edge_image.contains_key(e) {
            return Err(structure(format!("no image for edge {e}")));
        }
    }
    for (v, p) in &phi.vertex_image {
        if !w.has_vertex(v) {
            return Err(structure(format!("image given for unknown vertex {v}")));
        }
        match p {
            PointSpec::Vertex(u) => {
                if !g.has_vertex(u) {
                    return Err(structure(format!("image of {v} names unknown host vertex {u}")));
                }
            }
            PointSpec::EdgeInterior(e, t) => {
                if g.edge(e).is_none() {
                    return Err(structure(format!("image of {v} names unknown host edge {e}")));
                }
                check_parameter(t).map_err(SurgeryError::Graph)?;
            }
        }
    }

    let mut violations = Vec::new();
    let mut on_host_vertices = BTreeSet::new();

    // Degree rules.
    for v in w.vertices() {
        let d = w.degree(v);
        let img = &phi.vertex_image[v];
        match (d, img) {
            (1, PointSpec::Vertex(u)) => {
                if g.degree(u) != 1 {
                    violations.push(EmbeddingViolation::LeafNotOnLeaf(v.clone()));
                }
            }
            (1, PointSpec::EdgeInterior(_, _)) => {
                violations.push(EmbeddingViolation::LeafNotOnLeaf(v.clone()));
            }
            (2, PointSpec::EdgeInterior(_, _)) => {}
            (2, PointSpec::Vertex(_)) => {
                if relaxed_degree2 {
                    on_host_vertices.insert(v.clone());
                } else {
                    violations.push(EmbeddingViolation::Degree2NotInterior(v.clone()));
                }
            }
            (_, PointSpec::Vertex(u)) => {
                if g.degree(u) < d {
                    violations.push(EmbeddingViolation::BranchDegreeTooSmall(v.clone()));
                }
            }
            (_, PointSpec::EdgeInterior(_, _)) => {
                violations.push(EmbeddingViolation::BranchDegreeTooSmall(v.clone()));
            }
        }
    }

    // Distinct vertex images.
    let vs: Vec<&VertexId> = w.vertices().collect();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if points_equal(&phi.vertex_image[vs[i]], &phi.vertex_image[vs[j]]) {
                violations.push(EmbeddingViolation::VertexImagesCollide(
                    vs[i].clone(),
                    vs[j].clone(),
                ));
            }
        }
    }

    // Trace all edge paths (structural errors abort).
    let mut images: BTreeMap<EdgeId, PathImage> = BTreeMap::new();
    for (eid, e) in w.edges() {
        let img = trace_path(
            g,
            eid,
            &phi.edge_image[eid],
            &phi.vertex_image[&e.src],
            &phi.vertex_image[&e.dst],
        )?;
        // Simplicity within one path.
        let mut seen_v = BTreeSet::new();
        for v in &img.verts {
            if !seen_v.insert(v.clone()) {
                violations.push(EmbeddingViolation::PathNotSimple(eid.clone()));
            }
        }
        let mut seen_e = BTreeSet::new();
        for (he, _, _) in &img.intervals {
            if !seen_e.insert(he.clone()) {
                violations.push(EmbeddingViolation::PathNotSimple(eid.clone()));
            }
        }
        images.insert(eid.clone(), img);
    }

    // Paths may meet each other and vertex images only at shared endpoints.
    let eids: Vec<&EdgeId> = w.edges().map(|(e, _)| e).collect();
    for i in 0..eids.len() {
        for j in i + 1..eids.len() {
            let (e1, e2) = (eids[i], eids[j]);
            let shared: Vec<PointSpec> = {
                let a = w.edge(e1).unwrap();
                let b = w.edge(e2).unwrap();
                [&a.src, &a.dst]
                    .iter()
                    .filter(|v| b.src == ***v || b.dst == ***v)
                    .map(|v| phi.vertex_image[*v].clone())
                    .collect()
            };
            if paths_overlap(&images[e1], &images[e2], &shared) {
                violations.push(EmbeddingViolation::PathsOverlap(e1.clone(), e2.clone()));
            }
        }
    }
    for (eid, we) in w.edges() {
        let img = &images[eid];
        for v in w.vertices() {
            if v == &we.src || v == &we.dst {
                continue;
            }
            let p = &phi.vertex_image[v];
            let hit = match p {
                PointSpec::Vertex(u) => img.verts.contains(u),
                PointSpec::EdgeInterior(_, _) => img.intervals.iter().any(|iv| point_on_interval(p, iv)),
            };
            if hit {
                violations.push(EmbeddingViolation::PathHitsVertexImage(
                    eid.clone(),
                    v.clone(),
                ));
            }
        }
    }

    let ok = violations.is_empty();
    Ok(EmbeddingReport {
        ok,
        violations,
        on_host_vertices,
    })
}

/// Overlap of two closed path images beyond the allowed shared endpoint
/// images.
fn paths_overlap(a: &PathImage, b: &PathImage, shared: &[PointSpec]) -> bool {
    let allowed_vertex = |v: &VertexId| {
        shared
            .iter()
            .any(|p| matches!(p, PointSpec::Vertex(u) if u == v))
    };
    for v in &a.verts {
        if b.verts.contains(v) && !allowed_vertex(v) {
            return true;
        }
    }
    for (e1, lo1, hi1) in &a.intervals {
        for (e2, lo2, hi2) in &b.intervals {
            if e1 != e2 {
                continue;
            }
            let lo = lo1.max(lo2);
            let hi = hi1.min(hi2);
            if lo > hi {
                continue;
            }
            if lo < hi {
                return true; // a whole segment overlaps
            }
            // Single point: must be a shared endpoint image. Host-vertex
            // contacts at parameters 0/1 show up in `verts`, handled above.
            let touch = PointSpec::EdgeInterior(e1.clone(), lo.clone());
            let zero = int(0);
            let one = int(1);
            if *lo == zero || *lo == one {
                continue;
            }
            if !shared.iter().any(|p| points_equal(p, &touch)) {
                return true;
            }
        }
    }
    false
}

#[derive(Debug, Clone)]
pub struct AugmentResult {
    pub graph: ReebDigraph,
    pub new_vertices: Vec<VertexId>,
}

fn host_preconditions(g: &ReebDigraph) -> Result<(), SurgeryError> {
    require_good(g)?;
    if g.first_betti().map_err(SurgeryError::Graph)? != 0 {
        return Err(SurgeryError::HostPrecondition(
            "host must have first Betti number 0".into(),
        ));
    }
    if let Some(v) = g.vertices().find(|v| g.degree(v) == 2) {
        return Err(SurgeryError::HostPrecondition(format!(
            "host must have no degree-2 vertex, found {v}"
        )));
    }
    Ok(())
}

/// Planned subdivisions of one host edge: exact interior-image parameters
/// plus stack requests near the source (above it) and target (below it).
#[derive(Debug, Clone, Default)]
struct EdgeCuts {
    exact: Vec<BigRational>,
    near_src: u64,
    near_dst: u64,
}

fn plan_cuts(
    w: &ReebDigraph,
    g: &ReebDigraph,
    phi: &EmbeddingMap,
    on_host_vertices: &BTreeSet<VertexId>,
    plan: &mut BTreeMap<EdgeId, EdgeCuts>,
) {
    for v in w.vertices() {
        let d = w.degree(v);
        match (d, &phi.vertex_image[v]) {
            (2, PointSpec::EdgeInterior(e, t)) => {
                plan.entry(e.clone()).or_default().exact.push(t.clone());
            }
            (2, PointSpec::Vertex(_)) => {
                debug_assert!(on_host_vertices.contains(v));
            }
            (d, PointSpec::Vertex(u)) if d >= 3 => {
                let p = w.in_degree(v) as u64;
                let q = w.out_degree(v) as u64;
                // q-1 new vertices immediately below the image, on the
                // incoming host edge with the smallest id; p-1 above, on the
                // smallest outgoing edge.
                if q > 1 {
                    let below_edge = g
                        .edges()
                        .filter(|(_, e)| &e.dst == u)
                        .map(|(id, _)| id.clone())
                        .min()
                        .expect("image vertex has an incoming edge");
                    plan.entry(below_edge).or_default().near_dst += q - 1;
                }
                if p > 1 {
                    let above_edge = g
                        .edges()
                        .filter(|(_, e)| &e.src == u)
                        .map(|(id, _)| id.clone())
                        .min()
                        .expect("image vertex has an outgoing edge");
                    plan.entry(above_edge).or_default().near_src += p - 1;
                }
            }
            _ => {}
        }
    }
}

fn apply_cuts(
    g: &ReebDigraph,
    plan: &BTreeMap<EdgeId, EdgeCuts>,
) -> Result<AugmentResult, SurgeryError> {
    let mut out = g.clone();
    let mut new_vertices = Vec::new();
    for (edge, cuts) in plan {
        let mut params = cuts.exact.clone();
        params.sort();
        params.dedup();
        debug_assert_eq!(params.len(), cuts.exact.len(), "interior images collide");
        // Stacked cuts go strictly beyond the exact ones: below the smallest
        // (towards the source) and above the largest (towards the target),
        // shrinking geometrically so everything stays distinct.
        let lo = params.first().cloned().unwrap_or_else(|| int(1));
        let hi = params.last().cloned().unwrap_or_else(|| int(0));
        let third = ratio(1, 3);
        let mut step = lo.clone() * &third;
        for _ in 0..cuts.near_src {
            params.push(step.clone());
            step *= &third;
        }
        let mut gap = (int(1) - hi.clone()) * &third;
        for _ in 0..cuts.near_dst {
            params.push(int(1) - gap.clone());
            gap *= &third;
        }
        params.sort();
        // Subdivide repeatedly, tracking the tail edge and remaining span.
        let mut current = edge.clone();
        let mut span_lo = int(0);
        for t in params {
            let local = (&t - &span_lo) / (int(1) - &span_lo);
            let (g2, v) = out.subdivide_edge(&current, &local).map_err(SurgeryError::Graph)?;
            out = g2;
            // The tail piece keeps going to the original destination.
            current = out
                .edges()
                .find(|(_, e)| e.src == v)
                .map(|(id, _)| id.clone())
                .expect("subdivision created an outgoing piece");
            span_lo = t;
            new_vertices.push(v);
        }
    }
    new_vertices.sort();
    Ok(AugmentResult {
        graph: out,
        new_vertices,
    })
}

/// Insert the new degree-2 vertices an embedded digraph forces on a tree
/// host with no degree-2 vertices. The number of insertions is
/// [`insertion_count`] (or the reduced count in relaxed mode); removal
/// of the new vertices recovers the host up to isomorphism.
pub fn augment_host(
    g: &ReebDigraph,
    w: &ReebDigraph,
    phi: &EmbeddingMap,
    relaxed_degree2: bool,
) -> Result<AugmentResult, SurgeryError> {
    host_preconditions(g)?;
    let report = check_embedding(w, g, phi, relaxed_degree2)?;
    if !report.ok {
        return Err(SurgeryError::EmbeddingInvalid);
    }
    let mut plan = BTreeMap::new();
    plan_cuts(w, g, phi, &report.on_host_vertices, &mut plan);
    let result = apply_cuts(g, &plan)?;
    debug_assert_eq!(
        result.new_vertices.len() as u64,
        insertion_count_excluding(w, &report.on_host_vertices)?
    );
    Ok(result)
}

/// Occupied host elements of an embedding, for the disjointness check:
/// host vertices and exact edge intervals of the closed image.
#[allow(clippy::type_complexity)]
fn occupied(
    w: &ReebDigraph,
    g: &ReebDigraph,
    phi: &EmbeddingMap,
) -> Result<(BTreeSet<VertexId>, Vec<(EdgeId, BigRational, BigRational)>), SurgeryError> {
    let mut verts = BTreeSet::new();
    let mut intervals = Vec::new();
    for p in phi.vertex_image.values() {
        match p {
            PointSpec::Vertex(u) => {
                verts.insert(u.clone());
            }
            PointSpec::EdgeInterior(e, t) => intervals.push((e.clone(), t.clone(), t.clone())),
        }
    }
    for (eid, e) in w.edges() {
        let img = trace_path(
            g,
            eid,
            &phi.edge_image[eid],
            &phi.vertex_image[&e.src],
            &phi.vertex_image[&e.dst],
        )?;
        verts.extend(img.verts);
        intervals.extend(img.intervals);
    }
    Ok((verts, intervals))
}

/// Augment a host for two disjointly embedded digraphs at once; insertions
/// are the sum of the two individual counts.
pub fn augment_host_pair(
    g: &ReebDigraph,
    w1: &ReebDigraph,
    phi1: &EmbeddingMap,
    w2: &ReebDigraph,
    phi2: &EmbeddingMap,
    relaxed_degree2: bool,
) -> Result<AugmentResult, SurgeryError> {
    host_preconditions(g)?;
    let r1 = check_embedding(w1, g, phi1, relaxed_degree2)?;
    let r2 = check_embedding(w2, g, phi2, relaxed_degree2)?;
    if !r1.ok || !r2.ok {
        return Err(SurgeryError::EmbeddingInvalid);
    }
    let (v1, iv1) = occupied(w1, g, phi1)?;
    let (v2, iv2) = occupied(w2, g, phi2)?;
    if v1.intersection(&v2).next().is_some() {
        return Err(SurgeryError::NotDisjoint);
    }
    for (e1, lo1, hi1) in &iv1 {
        for (e2, lo2, hi2) in &iv2 {
            if e1 == e2 && lo1.max(lo2) <= hi1.min(hi2) {
                return Err(SurgeryError::NotDisjoint);
            }
        }
    }
    let mut plan = BTreeMap::new();
    plan_cuts(w1, g, phi1, &r1.on_host_vertices, &mut plan);
    plan_cuts(w2, g, phi2, &r2.on_host_vertices, &mut plan);
    apply_cuts(g, &plan)
}

/// Fuse away every vertex in `new_vertices` (all degree-2, in 1 / out 1);
/// used to confirm augmentation is invertible.
pub fn smooth_vertices(
    g: &ReebDigraph,
    new_vertices: &[VertexId],
) -> Result<ReebDigraph, SurgeryError> {
    let mut out = g.clone();
    for v in new_vertices {
        out = out.smooth_degree2_vertex(v).map_err(SurgeryError::Graph)?;
    }
    Ok(out)
}

/// Midpoint point spec on an edge, common in tests and the CLI.
pub fn edge_midpoint(e: &str) -> PointSpec {
    PointSpec::EdgeInterior(EdgeId::from(e), mid(&int(0), &int(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::ReebDigraph;
    use crate::iso::isomorphism;
    use crate::rational::ratio;

    fn single_edge(u: &str, v: &str, e: &str) -> ReebDigraph {
        ReebDigraph::from_edges(&[u, v], &[(e, u, v)]).unwrap()
    }

    fn x_graph() -> ReebDigraph {
        ReebDigraph::from_edges(
            &["a", "b", "w", "c", "d"],
            &[("e1", "a", "w"), ("e2", "b", "w"), ("e3", "w", "c"), ("e4", "w", "d")],
        )
        .unwrap()
    }

    fn path3() -> ReebDigraph {
        ReebDigraph::from_edges(&["u", "v", "x"], &[("e1", "u", "v"), ("e2", "v", "x")]).unwrap()
    }

    #[test]
    fn wedge_of_midpoints_is_x_graph() {
        let w1 = single_edge("u1", "v1", "e1");
        let w2 = single_edge("u2", "v2", "e1");
        let res = wedge_connected_sum(&w1, &edge_midpoint("e1"), &w2, &edge_midpoint("e1")).unwrap();
        assert_eq!(res.graph.vertex_count(), 5);
        assert_eq!(res.graph.edge_count(), 4);
        assert_eq!(res.graph.degree(&res.new_vertex), 4);
        assert_eq!(res.graph.in_degree(&res.new_vertex), 2);
        assert_eq!(res.graph.first_betti().unwrap(), 0);
        assert!(isomorphism(&res.graph, &x_graph()).is_some());
    }

    #[test]
    fn wedge_at_center_vertex_gets_degree_six() {
        let res = wedge_connected_sum(
            &x_graph(),
            &PointSpec::vertex("w"),
            &single_edge("u", "v", "e"),
            &edge_midpoint("e"),
        )
        .unwrap();
        assert_eq!(res.graph.vertex_count(), 7);
        assert_eq!(res.graph.edge_count(), 6);
        assert_eq!(res.graph.degree(&res.new_vertex), 6);
        assert_eq!(res.graph.in_degree(&res.new_vertex), 3);
        assert_eq!(res.graph.out_degree(&res.new_vertex), 3);
        assert_eq!(res.graph.first_betti().unwrap(), 0);
        assert!(res.graph.validate_good_digraph().is_good);
    }

    #[test]
    fn wedge_rejects_extremum_points() {
        let w1 = single_edge("u1", "v1", "e1");
        let w2 = single_edge("u2", "v2", "e2");
        let err = wedge_connected_sum(&w1, &PointSpec::vertex("v1"), &w2, &edge_midpoint("e2"));
        assert!(matches!(err, Err(SurgeryError::ExtremumPoint(_))));
    }

    #[test]
    fn wedge_rescales_heights_to_unit_interval() {
        let w1 = single_edge("u1", "v1", "e1").with_layer_heights().unwrap();
        let w2 = path3().with_layer_heights().unwrap();
        let res = wedge_connected_sum(&w1, &edge_midpoint("e1"), &w2, &PointSpec::vertex("v")).unwrap();
        let h = res.graph.heights().unwrap();
        assert_eq!(h[&res.new_vertex], ratio(1, 2));
        let min = h.values().min().unwrap();
        let max = h.values().max().unwrap();
        assert_eq!(min, &int(0));
        assert_eq!(max, &int(1));
    }

    #[test]
    fn wedge_betti_additivity() {
        let theta = ReebDigraph::from_edges(
            &["a", "b", "c", "d"],
            &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "b", "c"), ("e4", "c", "d")],
        )
        .unwrap();
        let res =
            wedge_connected_sum(&theta, &edge_midpoint("e2"), &theta, &edge_midpoint("e4")).unwrap();
        assert_eq!(res.graph.first_betti().unwrap(), 2);
    }

    #[test]
    fn gs_check_examples() {
        let report = gs_check(&x_graph(), &GsAnnotation::of(&[("w", 2)])).unwrap();
        assert!(report.ok);

        let report = gs_check(&path3(), &GsAnnotation::of(&[("v", 1)])).unwrap();
        assert!(report.ok);

        let theta = ReebDigraph::from_edges(
            &["a", "b", "c", "d"],
            &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "b", "c"), ("e4", "c", "d")],
        )
        .unwrap();
        let report = gs_check(&theta, &GsAnnotation::of(&[("b", 2), ("c", 1)])).unwrap();
        assert!(!report.ok);
        let bad: Vec<_> = report.per_vertex.iter().filter(|r| !r.ok).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].vertex, VertexId::from("b"));
        assert_eq!(bad[0].required, 1);
    }

    #[test]
    fn gs_check_rejects_unknown_vertices() {
        assert!(matches!(
            gs_check(&x_graph(), &GsAnnotation::of(&[("zz", 1)])),
            Err(SurgeryError::AnnotationUnknownVertex(_))
        ));
    }

    #[test]
    fn glue_counts_examples() {
        // Two single edges at midpoints: X-graph with count 2.
        let w1 = single_edge("u1", "v1", "e1");
        let w2 = single_edge("u2", "v2", "e2");
        let (res, ann) = glue_gs_counts(
            &w1,
            &GsAnnotation::of(&[("u1", 1), ("v1", 1)]),
            &w2,
            &GsAnnotation::of(&[("u2", 1), ("v2", 1)]),
            &edge_midpoint("e1"),
            &edge_midpoint("e2"),
        )
        .unwrap();
        assert_eq!(ann.counts[&res.new_vertex], 2);
        assert!(gs_check(&res.graph, &ann).unwrap().ok);

        // X-graph at its centre with a single edge: degree 6, count 4.
        let (res, ann) = glue_gs_counts(
            &x_graph(),
            &GsAnnotation::of(&[("w", 2)]),
            &single_edge("u", "v", "e"),
            &GsAnnotation::default(),
            &PointSpec::vertex("w"),
            &edge_midpoint("e"),
        )
        .unwrap();
        assert_eq!(res.graph.degree(&res.new_vertex), 6);
        assert_eq!(ann.counts[&res.new_vertex], 4);
        assert!(gs_check(&res.graph, &ann).unwrap().ok);

        // Path glued at its middle vertex with a single edge: degree 4, count 2.
        let (res, ann) = glue_gs_counts(
            &path3(),
            &GsAnnotation::of(&[("v", 1)]),
            &single_edge("u2", "v2", "e"),
            &GsAnnotation::default(),
            &PointSpec::vertex("v"),
            &edge_midpoint("e"),
        )
        .unwrap();
        assert_eq!(res.graph.degree(&res.new_vertex), 4);
        assert_eq!(ann.counts[&res.new_vertex], 2);
    }

    #[test]
    fn glue_rejects_invalid_counts() {
        let err = glue_gs_counts(
            &x_graph(),
            &GsAnnotation::of(&[("w", 3)]),
            &single_edge("u", "v", "e"),
            &GsAnnotation::default(),
            &PointSpec::vertex("w"),
            &edge_midpoint("e"),
        );
        assert!(matches!(err, Err(SurgeryError::CountsInvalid)));
    }

    #[test]
    fn critical_split_examples() {
        assert_eq!(critical_split(1, 1).unwrap(), CriticalSplit { below: 0, above: 0 });
        assert_eq!(critical_split(1, 2).unwrap(), CriticalSplit { below: 1, above: 0 });
        assert_eq!(critical_split(2, 2).unwrap(), CriticalSplit { below: 1, above: 1 });
        assert!(critical_split(0, 1).is_err());
        for p in 1..=6u64 {
            for q in 1..=6u64 {
                let s = critical_split(p, q).unwrap();
                assert_eq!(s.below + s.above, p + q - 2);
            }
        }
    }

    #[test]
    fn insertion_count_examples() {
        assert_eq!(insertion_count(&single_edge("u", "v", "e")), 0);
        assert_eq!(insertion_count(&path3()), 1);
        assert_eq!(insertion_count(&x_graph()), 2);
        let theta = ReebDigraph::from_edges(
            &["a", "b", "c", "d"],
            &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "b", "c"), ("e4", "c", "d")],
        )
        .unwrap();
        assert_eq!(insertion_count(&theta), 2);
    }

    #[test]
    fn relaxed_count_examples() {
        let w = path3();
        let only_v: BTreeSet<_> = [VertexId::from("v")].into_iter().collect();
        assert_eq!(insertion_count_excluding(&w, &only_v).unwrap(), 0);
        assert_eq!(insertion_count_excluding(&w, &BTreeSet::new()).unwrap(), 1);
        assert_eq!(
            insertion_count_excluding(&x_graph(), &BTreeSet::new()).unwrap(),
            2
        );
        let bad: BTreeSet<_> = [VertexId::from("u")].into_iter().collect();
        assert!(matches!(
            insertion_count_excluding(&w, &bad),
            Err(SurgeryError::NotDegreeTwo(_))
        ));
    }

    fn identity_embedding(w: &ReebDigraph) -> EmbeddingMap {
        EmbeddingMap {
            vertex_image: w
                .vertices()
                .map(|v| (v.clone(), PointSpec::Vertex(v.clone())))
                .collect(),
            edge_image: w.edges().map(|(e, _)| (e.clone(), vec![e.clone()])).collect(),
        }
    }

    #[test]
    fn identity_like_embedding_is_valid() {
        let w = single_edge("u", "v", "e");
        let g = single_edge("u", "v", "e");
        let report = check_embedding(&w, &g, &identity_embedding(&w), false).unwrap();
        assert!(report.ok, "{:?}", report.violations);
    }

    #[test]
    fn degree2_vertex_maps_to_edge_interior() {
        let w = path3();
        let g = single_edge("a", "b", "f");
        let phi = EmbeddingMap {
            vertex_image: [
                (VertexId::from("u"), PointSpec::vertex("a")),
                (VertexId::from("v"), PointSpec::edge_interior("f", ratio(1, 2))),
                (VertexId::from("x"), PointSpec::vertex("b")),
            ]
            .into_iter()
            .collect(),
            edge_image: [
                (EdgeId::from("e1"), vec![EdgeId::from("f")]),
                (EdgeId::from("e2"), vec![EdgeId::from("f")]),
            ]
            .into_iter()
            .collect(),
        };
        let report = check_embedding(&w, &g, &phi, false).unwrap();
        assert!(report.ok, "{:?}", report.violations);
    }

    #[test]
    fn degree2_on_host_vertex_needs_relaxation() {
        let w = path3();
        // Host: a -> m -> b, with the middle vertex as the image of v.
        let g = ReebDigraph::from_edges(&["a", "m", "b"], &[("f1", "a", "m"), ("f2", "m", "b")]).unwrap();
        let phi = EmbeddingMap {
            vertex_image: [
                (VertexId::from("u"), PointSpec::vertex("a")),
                (VertexId::from("v"), PointSpec::vertex("m")),
                (VertexId::from("x"), PointSpec::vertex("b")),
            ]
            .into_iter()
            .collect(),
            edge_image: [
                (EdgeId::from("e1"), vec![EdgeId::from("f1")]),
                (EdgeId::from("e2"), vec![EdgeId::from("f2")]),
            ]
            .into_iter()
            .collect(),
        };
        let strict = check_embedding(&w, &g, &phi, false).unwrap();
        assert!(!strict.ok);
        assert!(strict
            .violations
            .contains(&EmbeddingViolation::Degree2NotInterior(VertexId::from("v"))));
        let relaxed = check_embedding(&w, &g, &phi, true).unwrap();
        assert!(relaxed.ok);
        assert_eq!(
            relaxed.on_host_vertices,
            [VertexId::from("v")].into_iter().collect()
        );
    }

    #[test]
    fn overlapping_paths_are_rejected() {
        // Two w-edges forced through the same host edge segment.
        let w = ReebDigraph::from_edges(
            &["a", "b", "m"],
            &[("e1", "a", "m"), ("e2", "m", "b")],
        )
        .unwrap();
        // Host is a 3-edge path; both images traverse the middle edge fully.
        let g = ReebDigraph::from_edges(
            &["p", "q", "r", "s"],
            &[("f1", "p", "q"), ("f2", "q", "r"), ("f3", "r", "s")],
        )
        .unwrap();
        let phi = EmbeddingMap {
            vertex_image: [
                (VertexId::from("a"), PointSpec::vertex("p")),
                (VertexId::from("m"), PointSpec::edge_interior("f2", ratio(1, 2))),
                (VertexId::from("b"), PointSpec::vertex("s")),
            ]
            .into_iter()
            .collect(),
            edge_image: [
                (EdgeId::from("e1"), vec![EdgeId::from("f1"), EdgeId::from("f2")]),
                (EdgeId::from("e2"), vec![EdgeId::from("f2"), EdgeId::from("f3")]),
            ]
            .into_iter()
            .collect(),
        };
        let report = check_embedding(&w, &g, &phi, false).unwrap();
        assert!(report.ok, "{:?}", report.violations);

        // Moving m to f1's interior makes both paths cover part of f2... no:
        // making e1 end inside f1 and e2 start there forces e2 through f2 and
        // f3 while e1 ends early; instead send both paths through all of f2.
        let phi_bad = EmbeddingMap {
            vertex_image: [
                (VertexId::from("a"), PointSpec::vertex("p")),
                (VertexId::from("m"), PointSpec::edge_interior("f1", ratio(1, 2))),
                (VertexId::from("b"), PointSpec::vertex("s")),
            ]
            .into_iter()
            .collect(),
            edge_image: [
                (EdgeId::from("e1"), vec![EdgeId::from("f1")]),
                (
                    EdgeId::from("e2"),
                    vec![EdgeId::from("f1"), EdgeId::from("f2"), EdgeId::from("f3")],
                ),
            ]
            .into_iter()
            .collect(),
        };
        // e1 occupies f1[1/2,1]... wait, e1 ends at m inside f1, so e1 is
        // f1[0,1/2] and e2 is f1[1/2,1] + f2 + f3: they share only the point.
        let report = check_embedding(&w, &g, &phi_bad, false).unwrap();
        assert!(report.ok);

        // Genuine overlap: e1 runs the whole of f1 and e2 starts at its
        // interior point, so f1[1/2,1] is covered twice.
        let w2 = ReebDigraph::from_edges(
            &["a", "b", "m"],
            &[("e1", "a", "b"), ("e2", "m", "b")],
        )
        .unwrap();
        let report = check_embedding(
            &w2,
            &g,
            &EmbeddingMap {
                vertex_image: [
                    (VertexId::from("a"), PointSpec::vertex("p")),
                    (VertexId::from("m"), PointSpec::edge_interior("f1", ratio(1, 2))),
                    (VertexId::from("b"), PointSpec::vertex("s")),
                ]
                .into_iter()
                .collect(),
                edge_image: [
                    (
                        EdgeId::from("e1"),
                        vec![EdgeId::from("f1"), EdgeId::from("f2"), EdgeId::from("f3")],
                    ),
                    (
                        EdgeId::from("e2"),
                        vec![EdgeId::from("f1"), EdgeId::from("f2"), EdgeId::from("f3")],
                    ),
                ]
                .into_iter()
                .collect(),
            },
            false,
        );
        // Structurally inconsistent (w2 has parallel-ish shape) or overlap:
        // either way it must not pass.
        if let Ok(r) = report {
            assert!(!r.ok);
        }
    }

    #[test]
    fn augment_path_into_single_edge_host() {
        let g = single_edge("a", "b", "f");
        let w = path3();
        let phi = EmbeddingMap {
            vertex_image: [
                (VertexId::from("u"), PointSpec::vertex("a")),
                (VertexId::from("v"), PointSpec::edge_interior("f", ratio(1, 2))),
                (VertexId::from("x"), PointSpec::vertex("b")),
            ]
            .into_iter()
            .collect(),
            edge_image: [
                (EdgeId::from("e1"), vec![EdgeId::from("f")]),
                (EdgeId::from("e2"), vec![EdgeId::from("f")]),
            ]
            .into_iter()
            .collect(),
        };
        let res = augment_host(&g, &w, &phi, false).unwrap();
        assert_eq!(res.new_vertices.len(), 1);
        assert!(isomorphism(&res.graph, &path3()).is_some());
        // Smoothing the new vertices recovers the host.
        let smoothed = smooth_vertices(&res.graph, &res.new_vertices).unwrap();
        assert!(isomorphism(&smoothed, &g).is_some());
    }

    #[test]
    fn augment_x_graph_onto_star() {
        // Host: degree-4 centre, two in-leaves, two out-leaves.
        let g = ReebDigraph::from_edges(
            &["a", "b", "z", "c", "d"],
            &[("f1", "a", "z"), ("f2", "b", "z"), ("f3", "z", "c"), ("f4", "z", "d")],
        )
        .unwrap();
        let w = x_graph();
        let phi = EmbeddingMap {
            vertex_image: [
                (VertexId::from("a"), PointSpec::vertex("a")),
                (VertexId::from("b"), PointSpec::vertex("b")),
                (VertexId::from("w"), PointSpec::vertex("z")),
                (VertexId::from("c"), PointSpec::vertex("c")),
                (VertexId::from("d"), PointSpec::vertex("d")),
            ]
            .into_iter()
            .collect(),
            edge_image: [
                (EdgeId::from("e1"), vec![EdgeId::from("f1")]),
                (EdgeId::from("e2"), vec![EdgeId::from("f2")]),
                (EdgeId::from("e3"), vec![EdgeId::from("f3")]),
                (EdgeId::from("e4"), vec![EdgeId::from("f4")]),
            ]
            .into_iter()
            .collect(),
        };
        let res = augment_host(&g, &w, &phi, false).unwrap();
        assert_eq!(res.new_vertices.len(), 2);
        for v in &res.new_vertices {
            assert_eq!(res.graph.degree(v), 2);
            assert_eq!(res.graph.in_degree(v), 1);
        }
        // One below the centre (on f1, the smallest incoming id) and one
        // above (on f3).
        let below_host = res
            .new_vertices
            .iter()
            .filter(|v| {
                res.graph
                    .edges()
                    .any(|(_, e)| &e.src == *v && e.dst == VertexId::from("z"))
            })
            .count();
        let above_host = res
            .new_vertices
            .iter()
            .filter(|v| {
                res.graph
                    .edges()
                    .any(|(_, e)| &e.dst == *v && e.src == VertexId::from("z"))
            })
            .count();
        assert_eq!((below_host, above_host), (1, 1));
        let smoothed = smooth_vertices(&res.graph, &res.new_vertices).unwrap();
        assert!(isomorphism(&smoothed, &g).is_some());
    }

    #[test]
    fn augment_single_edge_is_identity() {
        let g = single_edge("a", "b", "f");
        let w = single_edge("u", "v", "e");
        let phi = EmbeddingMap {
            vertex_image: [
                (VertexId::from("u"), PointSpec::vertex("a")),
                (VertexId::from("v"), PointSpec::vertex("b")),
            ]
            .into_iter()
            .collect(),
            edge_image: [(EdgeId::from("e"), vec![EdgeId::from("f")])].into_iter().collect(),
        };
        let res = augment_host(&g, &w, &phi, false).unwrap();
        assert!(res.new_vertices.is_empty());
        assert!(isomorphism(&res.graph, &g).is_some());
    }

    #[test]
    fn augment_rejects_degree2_host() {
        let g = path3(); // has a degree-2 vertex
        let w = single_edge("p", "q", "e");
        let phi = EmbeddingMap {
            vertex_image: [
                (VertexId::from("p"), PointSpec::vertex("u")),
                (VertexId::from("q"), PointSpec::vertex("x")),
            ]
            .into_iter()
            .collect(),
            edge_image: [(EdgeId::from("e"), vec![EdgeId::from("e1"), EdgeId::from("e2")])]
                .into_iter()
                .collect(),
        };
        assert!(matches!(
            augment_host(&g, &w, &phi, false),
            Err(SurgeryError::HostPrecondition(_))
        ));
        assert!(matches!(
            augment_host_pair(&g, &w, &phi, &w, &phi, false),
            Err(SurgeryError::HostPrecondition(_))
        ));
    }

    #[test]
    fn pair_augmentation_on_h_tree() {
        // H-shaped host: two degree-3 centres, four leaves.
        let g = ReebDigraph::from_edges(
            &["a", "b", "c1", "c2", "d", "e"],
            &[
                ("f1", "a", "c1"),
                ("f2", "c1", "b"),
                ("f3", "c1", "c2"),
                ("f4", "d", "c2"),
                ("f5", "c2", "e"),
            ],
        )
        .unwrap();
        let w1 = single_edge("u", "v", "g1");
        let w2 = single_edge("x", "y", "g2");
        let phi1 = EmbeddingMap {
            vertex_image: [
                (VertexId::from("u"), PointSpec::vertex("a")),
                (VertexId::from("v"), PointSpec::vertex("b")),
            ]
            .into_iter()
            .collect(),
            edge_image: [(EdgeId::from("g1"), vec![EdgeId::from("f1"), EdgeId::from("f2")])]
                .into_iter()
                .collect(),
        };
        let phi2 = EmbeddingMap {
            vertex_image: [
                (VertexId::from("x"), PointSpec::vertex("d")),
                (VertexId::from("y"), PointSpec::vertex("e")),
            ]
            .into_iter()
            .collect(),
            edge_image: [(EdgeId::from("g2"), vec![EdgeId::from("f4"), EdgeId::from("f5")])]
                .into_iter()
                .collect(),
        };
        let res = augment_host_pair(&g, &w1, &phi1, &w2, &phi2, false).unwrap();
        assert!(res.new_vertices.is_empty());
        assert!(isomorphism(&res.graph, &g).is_some());
    }

    #[test]
    fn pair_augmentation_rejects_overlap() {
        let g = ReebDigraph::from_edges(
            &["a", "b", "c1", "c2", "d", "e"],
            &[
                ("f1", "a", "c1"),
                ("f2", "c1", "b"),
                ("f3", "c1", "c2"),
                ("f4", "d", "c2"),
                ("f5", "c2", "e"),
            ],
        )
        .unwrap();
        let w = single_edge("u", "v", "g1");
        let phi = EmbeddingMap {
            vertex_image: [
                (VertexId::from("u"), PointSpec::vertex("a")),
                (VertexId::from("v"), PointSpec::vertex("b")),
            ]
            .into_iter()
            .collect(),
            edge_image: [(EdgeId::from("g1"), vec![EdgeId::from("f1"), EdgeId::from("f2")])]
                .into_iter()
                .collect(),
        };
        assert!(matches!(
            augment_host_pair(&g, &w, &phi, &w, &phi, false),
            Err(SurgeryError::NotDisjoint)
        ));
    }

    #[test]
    fn pair_augmentation_on_double_star() {
        // Two degree-5 centres joined by a bridge, four leaves each; an
        // X-graph embeds on each star using only its own leaves.
        let mut verts = vec!["x", "y"];
        let mut edges = Vec::new();
        for (i, leaf) in ["a1", "a2"].iter().enumerate() {
            verts.push(leaf);
            edges.push((format!("fx{i}"), leaf.to_string(), "x".to_string()));
        }
        for (i, leaf) in ["a3", "a4"].iter().enumerate() {
            verts.push(leaf);
            edges.push((format!("gx{i}"), "x".to_string(), leaf.to_string()));
        }
        for (i, leaf) in ["b1", "b2"].iter().enumerate() {
            verts.push(leaf);
            edges.push((format!("fy{i}"), leaf.to_string(), "y".to_string()));
        }
        for (i, leaf) in ["b3", "b4"].iter().enumerate() {
            verts.push(leaf);
            edges.push((format!("gy{i}"), "y".to_string(), leaf.to_string()));
        }
        edges.push(("bridge".to_string(), "x".to_string(), "y".to_string()));
        let edge_refs: Vec<(&str, &str, &str)> = edges
            .iter()
            .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
            .collect();
        let g = ReebDigraph::from_edges(&verts, &edge_refs).unwrap();
        assert!(g.validate_good_digraph().is_good);

        let w1 = x_graph();
        let phi1 = EmbeddingMap {
            vertex_image: [
                (VertexId::from("a"), PointSpec::vertex("a1")),
                (VertexId::from("b"), PointSpec::vertex("a2")),
                (VertexId::from("w"), PointSpec::vertex("x")),
                (VertexId::from("c"), PointSpec::vertex("a3")),
                (VertexId::from("d"), PointSpec::vertex("a4")),
            ]
            .into_iter()
            .collect(),
            edge_image: [
                (EdgeId::from("e1"), vec![EdgeId::from("fx0")]),
                (EdgeId::from("e2"), vec![EdgeId::from("fx1")]),
                (EdgeId::from("e3"), vec![EdgeId::from("gx0")]),
                (EdgeId::from("e4"), vec![EdgeId::from("gx1")]),
            ]
            .into_iter()
            .collect(),
        };
        let phi2 = EmbeddingMap {
            vertex_image: [
                (VertexId::from("a"), PointSpec::vertex("b1")),
                (VertexId::from("b"), PointSpec::vertex("b2")),
                (VertexId::from("w"), PointSpec::vertex("y")),
                (VertexId::from("c"), PointSpec::vertex("b3")),
                (VertexId::from("d"), PointSpec::vertex("b4")),
            ]
            .into_iter()
            .collect(),
            edge_image: [
                (EdgeId::from("e1"), vec![EdgeId::from("fy0")]),
                (EdgeId::from("e2"), vec![EdgeId::from("fy1")]),
                (EdgeId::from("e3"), vec![EdgeId::from("gy0")]),
                (EdgeId::from("e4"), vec![EdgeId::from("gy1")]),
            ]
            .into_iter()
            .collect(),
        };
        let res = augment_host_pair(&g, &w1, &phi1, &w1, &phi2, false).unwrap();
        assert_eq!(res.new_vertices.len(), 4);
        let smoothed = smooth_vertices(&res.graph, &res.new_vertices).unwrap();
        assert!(isomorphism(&smoothed, &g).is_some());
    }
}
