//! Finite connected directed multigraphs with optional exact rational
//! heights. These are the combinatorial stand-ins for Reeb digraphs of
//! height functions on closed surfaces: parallel edges are allowed,
//! self-loops are not (a height function cannot increase around one).

use crate::error::GraphError;
use crate::rational::{int, mid};
use num_rational::BigRational;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub String);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub String);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_string())
    }
}

impl From<&str> for EdgeId {
    fn from(s: &str) -> Self {
        EdgeId(s.to_string())
    }
}

/// A location on a digraph: a vertex, or an interior point of an edge at
/// parameter `t` with `0 < t < 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointSpec {
    Vertex(VertexId),
    EdgeInterior(EdgeId, BigRational),
}

impl PointSpec {
    pub fn vertex(id: &str) -> Self {
        PointSpec::Vertex(VertexId::from(id))
    }

    pub fn edge_interior(id: &str, t: BigRational) -> Self {
        PointSpec::EdgeInterior(EdgeId::from(id), t)
    }
}

impl fmt::Display for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSpec::Vertex(v) => write!(f, "v:{v}"),
            PointSpec::EdgeInterior(e, t) => {
                write!(f, "e:{e}@{}", crate::rational::format_rational(t))
            }
        }
    }
}

/// Why a candidate fails to be a good digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SelfLoop(EdgeId),
    DirectedCycle(Vec<VertexId>),
    /// A vertex of degree >= 2 with in-degree 0 or out-degree 0: it would be
    /// a local extremum in the interior of the graph.
    InteriorExtremum(VertexId),
    Disconnected,
}

/// Verdict of [`ReebDigraph::validate_good_digraph`]. When the digraph is
/// good, `certificate` carries a longest-path layering that strictly
/// increases along every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub is_good: bool,
    pub violations: Vec<Violation>,
    pub certificate: Option<BTreeMap<VertexId, usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
}

/// A well-formed multidigraph candidate. Construction checks that ids are
/// unique, endpoints resolve, and heights (when present) cover every vertex
/// and strictly increase along every edge. Connectivity, acyclicity and the
/// extremum rule are checked by `validate_good_digraph`, not here, so that
/// invalid candidates can still be represented and diagnosed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReebDigraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Edge>,
    heights: Option<BTreeMap<VertexId, BigRational>>,
}

impl ReebDigraph {
    pub fn new(
        vertices: Vec<VertexId>,
        edges: Vec<(EdgeId, VertexId, VertexId)>,
        heights: Option<BTreeMap<VertexId, BigRational>>,
    ) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut vset = BTreeSet::new();
        for v in vertices {
            if !vset.insert(v.clone()) {
                return Err(GraphError::DuplicateVertex(v));
            }
        }
        let mut eset = BTreeMap::new();
        for (id, src, dst) in edges {
            for end in [&src, &dst] {
                if !vset.contains(end) {
                    return Err(GraphError::DanglingEndpoint {
                        edge: id.clone(),
                        vertex: end.clone(),
                    });
                }
            }
            if eset.insert(id.clone(), Edge { src, dst }).is_some() {
                return Err(GraphError::DuplicateEdge(id));
            }
        }
        if let Some(h) = &heights {
            for v in h.keys() {
                if !vset.contains(v) {
                    return Err(GraphError::HeightForUnknownVertex(v.clone()));
                }
            }
            for v in &vset {
                if !h.contains_key(v) {
                    return Err(GraphError::MissingHeight(v.clone()));
                }
            }
            for (id, e) in &eset {
                if h[&e.src] >= h[&e.dst] {
                    return Err(GraphError::NonMonotoneHeights {
                        edge: id.clone(),
                        src: e.src.clone(),
                        dst: e.dst.clone(),
                    });
                }
            }
        }
        Ok(ReebDigraph {
            vertices: vset,
            edges: eset,
            heights,
        })
    }

    /// Convenience constructor from string ids, without heights.
    pub fn from_edges(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self, GraphError> {
        Self::new(
            vertices.iter().map(|v| VertexId::from(*v)).collect(),
            edges
                .iter()
                .map(|(id, s, d)| (EdgeId::from(*id), VertexId::from(*s), VertexId::from(*d)))
                .collect(),
            None,
        )
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&EdgeId, &Edge)> {
        self.edges.iter()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn edge(&self, e: &EdgeId) -> Option<&Edge> {
        self.edges.get(e)
    }

    pub fn heights(&self) -> Option<&BTreeMap<VertexId, BigRational>> {
        self.heights.as_ref()
    }

    pub fn height(&self, v: &VertexId) -> Option<&BigRational> {
        self.heights.as_ref().and_then(|h| h.get(v))
    }

    pub fn in_degree(&self, v: &VertexId) -> usize {
        self.edges.values().filter(|e| &e.dst == v).count()
    }

    pub fn out_degree(&self, v: &VertexId) -> usize {
        self.edges.values().filter(|e| &e.src == v).count()
    }

    /// Total degree: incident edge-ends. A self-loop contributes 2.
    pub fn degree(&self, v: &VertexId) -> usize {
        self.in_degree(v) + self.out_degree(v)
    }

    /// All vertices of degree at least `j`.
    pub fn degree_at_least(&self, j: usize) -> BTreeSet<VertexId> {
        self.vertices
            .iter()
            .filter(|v| self.degree(v) >= j)
            .cloned()
            .collect()
    }

    fn is_connected(&self) -> bool {
        let start = match self.vertices.iter().next() {
            Some(v) => v,
            None => return false,
        };
        let mut seen: BTreeSet<&VertexId> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for e in self.edges.values() {
                for (a, b) in [(&e.src, &e.dst), (&e.dst, &e.src)] {
                    if a == v && seen.insert(b) {
                        queue.push_back(b);
                    }
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Find a directed cycle, ignoring self-loop edges (those are reported
    /// separately). Returns the cycle's vertices, rotated so the smallest id
    /// comes first.
    fn find_directed_cycle(&self) -> Option<Vec<VertexId>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            White,
            Grey,
            Black,
        }
        let verts: Vec<&VertexId> = self.vertices.iter().collect();
        let index: BTreeMap<&VertexId, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
        for e in self.edges.values() {
            if e.src != e.dst {
                succ[index[&e.src]].push(index[&e.dst]);
            }
        }
        for s in &mut succ {
            s.sort_unstable();
        }
        let mut mark = vec![Mark::White; verts.len()];
        let mut parent = vec![usize::MAX; verts.len()];
        for root in 0..verts.len() {
            if mark[root] != Mark::White {
                continue;
            }
            // Iterative DFS keeping an explicit stack of (vertex, next child).
            let mut stack = vec![(root, 0usize)];
            mark[root] = Mark::Grey;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < succ[v].len() {
                    let w = succ[v][*next];
                    *next += 1;
                    match mark[w] {
                        Mark::White => {
                            mark[w] = Mark::Grey;
                            parent[w] = v;
                            stack.push((w, 0));
                        }
                        Mark::Grey => {
                            // Found a cycle w -> ... -> v -> w.
                            let mut cycle = vec![verts[v].clone()];
                            let mut cur = v;
                            while cur != w {
                                cur = parent[cur];
                                cycle.push(verts[cur].clone());
                            }
                            cycle.reverse();
                            let min_pos = cycle
                                .iter()
                                .enumerate()
                                .min_by_key(|(_, v)| (*v).clone())
                                .map(|(i, _)| i)
                                .unwrap();
                            cycle.rotate_left(min_pos);
                            return Some(cycle);
                        }
                        Mark::Black => {}
                    }
                } else {
                    mark[v] = Mark::Black;
                    stack.pop();
                }
            }
        }
        None
    }

    /// Longest-path layering: layer(v) = length of the longest directed path
    /// ending at v. Strictly increases along every edge of an acyclic graph.
    fn longest_path_layers(&self) -> Option<BTreeMap<VertexId, usize>> {
        let verts: Vec<&VertexId> = self.vertices.iter().collect();
        let index: BTreeMap<&VertexId, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut indeg = vec![0usize; verts.len()];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
        for e in self.edges.values() {
            if e.src == e.dst {
                return None;
            }
            succ[index[&e.src]].push(index[&e.dst]);
            indeg[index[&e.dst]] += 1;
        }
        let mut layer = vec![0usize; verts.len()];
        let mut queue: VecDeque<usize> = (0..verts.len()).filter(|i| indeg[*i] == 0).collect();
        let mut emitted = 0;
        while let Some(v) = queue.pop_front() {
            emitted += 1;
            for &w in &succ[v] {
                layer[w] = layer[w].max(layer[v] + 1);
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if emitted != verts.len() {
            return None; // cyclic
        }
        Some(
            verts
                .iter()
                .enumerate()
                .map(|(i, v)| ((*v).clone(), layer[i]))
                .collect(),
        )
    }

    /// Decide whether this candidate is a good digraph: connected, no
    /// self-loops, acyclic, and every vertex of degree >= 2 has both an
    /// incoming and an outgoing edge. All violations are collected; the
    /// certificate is present exactly when the verdict is positive.
    pub fn validate_good_digraph(&self) -> ValidityReport {
        let mut violations = Vec::new();
        for (id, e) in &self.edges {
            if e.src == e.dst {
                violations.push(Violation::SelfLoop(id.clone()));
            }
        }
        if !self.is_connected() {
            violations.push(Violation::Disconnected);
        }
        if let Some(cycle) = self.find_directed_cycle() {
            violations.push(Violation::DirectedCycle(cycle));
        }
        for v in &self.vertices {
            if self.degree(v) >= 2 && (self.in_degree(v) == 0 || self.out_degree(v) == 0) {
                violations.push(Violation::InteriorExtremum(v.clone()));
            }
        }
        let is_good = violations.is_empty();
        let certificate = if is_good { self.longest_path_layers() } else { None };
        ValidityReport {
            is_good,
            violations,
            certificate,
        }
    }

    /// Deterministic height assignment for a valid good digraph: the
    /// longest-path layer index as a rational.
    pub fn height_assignment(&self) -> Result<BTreeMap<VertexId, BigRational>, GraphError> {
        let report = self.validate_good_digraph();
        if !report.is_good {
            return Err(GraphError::NotGood(Box::new(report)));
        }
        Ok(report
            .certificate
            .expect("good digraph has a layering")
            .into_iter()
            .map(|(v, layer)| (v, int(layer as i64)))
            .collect())
    }

    /// Copy of this graph with heights set from `height_assignment`.
    pub fn with_layer_heights(&self) -> Result<ReebDigraph, GraphError> {
        let heights = self.height_assignment()?;
        let mut g = self.clone();
        g.heights = Some(heights);
        Ok(g)
    }

    /// Drop all heights.
    pub fn without_heights(&self) -> ReebDigraph {
        let mut g = self.clone();
        g.heights = None;
        g
    }

    /// First Betti number |E| - |V| + 1 of a connected graph.
    pub fn first_betti(&self) -> Result<usize, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(self.edge_count() + 1 - self.vertex_count())
    }

    /// Value of the height function at a point (vertex height, or affine
    /// interpolation at parameter t on an edge). Requires heights.
    pub fn value_at(&self, p: &PointSpec) -> Result<BigRational, GraphError> {
        let h = self.heights.as_ref().ok_or(GraphError::Disconnected)?;
        match p {
            PointSpec::Vertex(v) => h
                .get(v)
                .cloned()
                .ok_or_else(|| GraphError::UnknownVertex(v.clone())),
            PointSpec::EdgeInterior(e, t) => {
                let edge = self
                    .edges
                    .get(e)
                    .ok_or_else(|| GraphError::UnknownEdge(e.clone()))?;
                check_parameter(t)?;
                let a = &h[&edge.src];
                let b = &h[&edge.dst];
                Ok(a + t * (b - a))
            }
        }
    }

    /// A vertex id not in use, derived from `stem`.
    pub fn fresh_vertex_id(&self, stem: &str) -> VertexId {
        fresh(stem, |c| !self.vertices.contains(&VertexId(c.to_string())))
    }

    /// An edge id not in use, derived from `stem`.
    pub fn fresh_edge_id(&self, stem: &str) -> EdgeId {
        EdgeId(fresh_name(stem, |c| {
            !self.edges.contains_key(&EdgeId(c.to_string()))
        }))
    }

    /// Replace edge `(u -> v)` by `u -> w -> v` with `w` fresh, interpolating
    /// heights affinely at parameter `t` when heights are present.
    pub fn subdivide_edge(
        &self,
        e: &EdgeId,
        t: &BigRational,
    ) -> Result<(ReebDigraph, VertexId), GraphError> {
        check_parameter(t)?;
        let edge = self
            .edges
            .get(e)
            .ok_or_else(|| GraphError::UnknownEdge(e.clone()))?
            .clone();
        let w = self.fresh_vertex_id("q");
        let mut g = self.clone();
        g.vertices.insert(w.clone());
        g.edges.remove(e);
        let ea = g.fresh_edge_id(&format!("{e}a"));
        g.edges.insert(
            ea,
            Edge {
                src: edge.src.clone(),
                dst: w.clone(),
            },
        );
        let eb = g.fresh_edge_id(&format!("{e}b"));
        g.edges.insert(
            eb,
            Edge {
                src: w.clone(),
                dst: edge.dst.clone(),
            },
        );
        if let Some(h) = &mut g.heights {
            let a = h[&edge.src].clone();
            let b = h[&edge.dst].clone();
            let val = &a + t * (&b - &a);
            h.insert(w.clone(), val);
        }
        Ok((g, w))
    }

    /// Remove a degree-2 vertex with in-degree 1 and out-degree 1, fusing its
    /// two incident edges into one. Inverse of `subdivide_edge` up to ids.
    pub fn smooth_degree2_vertex(&self, v: &VertexId) -> Result<ReebDigraph, GraphError> {
        if !self.vertices.contains(v) {
            return Err(GraphError::UnknownVertex(v.clone()));
        }
        let mut incoming = self.edges.iter().filter(|(_, e)| &e.dst == v);
        let mut outgoing = self.edges.iter().filter(|(_, e)| &e.src == v);
        let (in_id, in_e) = incoming.next().ok_or(GraphError::ParameterOutOfRange)?;
        let (out_id, out_e) = outgoing.next().ok_or(GraphError::ParameterOutOfRange)?;
        if self.in_degree(v) != 1 || self.out_degree(v) != 1 {
            return Err(GraphError::ParameterOutOfRange);
        }
        let (in_id, out_id) = (in_id.clone(), out_id.clone());
        let (src, dst) = (in_e.src.clone(), out_e.dst.clone());
        let mut g = self.clone();
        g.vertices.remove(v);
        g.edges.remove(&in_id);
        g.edges.remove(&out_id);
        if let Some(h) = &mut g.heights {
            h.remove(v);
        }
        let id = g.fresh_edge_id(&in_id.0);
        g.edges.insert(id, Edge { src, dst });
        Ok(g)
    }

    /// Disjoint union, renaming the other graph's colliding ids with a
    /// numeric suffix. Returns the union together with the rename maps for
    /// the second graph.
    #[allow(clippy::type_complexity)]
    pub fn disjoint_union(
        &self,
        other: &ReebDigraph,
    ) -> (
        ReebDigraph,
        BTreeMap<VertexId, VertexId>,
        BTreeMap<EdgeId, EdgeId>,
    ) {
        let mut vertices = self.vertices.clone();
        let mut vmap = BTreeMap::new();
        for v in &other.vertices {
            let nv = if vertices.contains(v) {
                VertexId(fresh_name(&v.0, |c| {
                    !vertices.contains(&VertexId(c.to_string()))
                }))
            } else {
                v.clone()
            };
            vertices.insert(nv.clone());
            vmap.insert(v.clone(), nv);
        }
        let mut edges = self.edges.clone();
        let mut emap = BTreeMap::new();
        for (id, e) in &other.edges {
            let nid = if edges.contains_key(id) {
                EdgeId(fresh_name(&id.0, |c| {
                    !edges.contains_key(&EdgeId(c.to_string()))
                }))
            } else {
                id.clone()
            };
            edges.insert(
                nid.clone(),
                Edge {
                    src: vmap[&e.src].clone(),
                    dst: vmap[&e.dst].clone(),
                },
            );
            emap.insert(id.clone(), nid);
        }
        let heights = match (&self.heights, &other.heights) {
            (Some(a), Some(b)) => {
                let mut h = a.clone();
                for (v, val) in b {
                    h.insert(vmap[v].clone(), val.clone());
                }
                Some(h)
            }
            _ => None,
        };
        (
            ReebDigraph {
                vertices,
                edges,
                heights,
            },
            vmap,
            emap,
        )
    }

    /// Identify a set of vertices into a single fresh vertex. Edges keep
    /// their ids; heights for the identified vertices must agree if present.
    pub(crate) fn identify_vertices(&self, group: &[VertexId], stem: &str) -> (ReebDigraph, VertexId) {
        let w = self.fresh_vertex_id(stem);
        let in_group: BTreeSet<&VertexId> = group.iter().collect();
        let mut vertices: BTreeSet<VertexId> = self
            .vertices
            .iter()
            .filter(|v| !in_group.contains(v))
            .cloned()
            .collect();
        vertices.insert(w.clone());
        let rename = |v: &VertexId| {
            if in_group.contains(v) {
                w.clone()
            } else {
                v.clone()
            }
        };
        let edges = self
            .edges
            .iter()
            .map(|(id, e)| {
                (
                    id.clone(),
                    Edge {
                        src: rename(&e.src),
                        dst: rename(&e.dst),
                    },
                )
            })
            .collect();
        let heights = self.heights.as_ref().map(|h| {
            let mut nh: BTreeMap<VertexId, BigRational> = h
                .iter()
                .filter(|(v, _)| !in_group.contains(v))
                .map(|(v, x)| (v.clone(), x.clone()))
                .collect();
            if let Some(first) = group.first() {
                nh.insert(w.clone(), h[first].clone());
            }
            nh
        });
        (
            ReebDigraph {
                vertices,
                edges,
                heights,
            },
            w,
        )
    }

    /// Rescale heights piecewise-affinely onto [0, 1] with `pivot` sent to
    /// 1/2: [min, pivot] -> [0, 1/2] and [pivot, max] -> [1/2, 1]. The pivot
    /// must lie strictly between the extremes.
    pub fn rescale_heights_around(&self, pivot: &BigRational) -> Option<ReebDigraph> {
        let h = self.heights.as_ref()?;
        let min = h.values().min()?.clone();
        let max = h.values().max()?.clone();
        if !(min < *pivot && *pivot < max) {
            return None;
        }
        let rescaled = h
            .iter()
            .map(|(v, x)| (v.clone(), rescale_value(x, &min, pivot, &max)))
            .collect();
        let mut g = self.clone();
        g.heights = Some(rescaled);
        Some(g)
    }
}

/// The piecewise-affine map sending (min, pivot, max) to (0, 1/2, 1).
pub fn rescale_value(
    x: &BigRational,
    min: &BigRational,
    pivot: &BigRational,
    max: &BigRational,
) -> BigRational {
    let half = crate::rational::half();
    if x <= pivot {
        (x - min) / ((pivot - min) * int(2))
    } else {
        &half + (x - pivot) / ((max - pivot) * int(2))
    }
}

pub(crate) fn check_parameter(t: &BigRational) -> Result<(), GraphError> {
    use num_traits::{One, Zero};
    if t <= &BigRational::zero() || t >= &BigRational::one() {
        return Err(GraphError::ParameterOutOfRange);
    }
    Ok(())
}

fn fresh(stem: &str, free: impl Fn(&str) -> bool) -> VertexId {
    VertexId(fresh_name(stem, free))
}

pub(crate) fn fresh_name(stem: &str, free: impl Fn(&str) -> bool) -> String {
    if free(stem) {
        return stem.to_string();
    }
    for k in 1.. {
        let cand = format!("{stem}{k}");
        if free(&cand) {
            return cand;
        }
    }
    unreachable!()
}

/// Midpoint parameter 1/2, handy for tests and the CLI.
pub fn midpoint() -> BigRational {
    mid(&int(0), &int(1))
}
