//! Seeded generators for randomized batch runs. All randomness flows from
//! one 64-bit seed through a splitmix generator, so identical seeds give
//! byte-identical corpora on every platform.

use crate::digraph::{EdgeId, PointSpec, ReebDigraph, VertexId};
use crate::rational::ratio;
use crate::surgery::{EmbeddingMap, GsAnnotation};
use std::collections::{BTreeMap, BTreeSet};

/// splitmix64; tiny, fast, reproducible.
#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in 0..n (n > 0).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.next_u64() % den < num
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }
}

/// Random connected good digraph with at most `max_vertices` vertices and
/// vertex degrees at most `max_degree`. Parallel edges occur; layer order is
/// the vertex index order.
pub fn good_digraph(rng: &mut Rng, max_vertices: usize, max_degree: usize) -> ReebDigraph {
    assert!(max_vertices >= 2 && max_degree >= 2);
    'attempt: for _ in 0..200 {
        let n = 2 + rng.below(max_vertices - 1);
        let mut deg = vec![0usize; n];
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let add = |edges: &mut Vec<(usize, usize)>,
                       deg: &mut Vec<usize>,
                       indeg: &mut Vec<usize>,
                       outdeg: &mut Vec<usize>,
                       a: usize,
                       b: usize|
         -> bool {
            if deg[a] >= max_degree || deg[b] >= max_degree {
                return false;
            }
            edges.push((a, b));
            deg[a] += 1;
            deg[b] += 1;
            outdeg[a] += 1;
            indeg[b] += 1;
            true
        };
        // Spanning connectivity first.
        for j in 1..n {
            let i = rng.below(j);
            if !add(&mut edges, &mut deg, &mut indeg, &mut outdeg, i, j) {
                continue 'attempt;
            }
        }
        // Extra edges, possibly parallel.
        let extra = rng.below(n);
        for _ in 0..extra {
            let i = rng.below(n - 1);
            let j = i + 1 + rng.below(n - i - 1);
            let _ = add(&mut edges, &mut deg, &mut indeg, &mut outdeg, i, j);
        }
        // Repair interior extrema where possible.
        for v in 0..n {
            if deg[v] >= 2 && indeg[v] == 0 && v > 0 {
                let i = rng.below(v);
                if !add(&mut edges, &mut deg, &mut indeg, &mut outdeg, i, v) {
                    continue 'attempt;
                }
            }
            if deg[v] >= 2 && outdeg[v] == 0 && v + 1 < n {
                let j = v + 1 + rng.below(n - v - 1);
                if !add(&mut edges, &mut deg, &mut indeg, &mut outdeg, v, j) {
                    continue 'attempt;
                }
            }
        }
        let g = ReebDigraph::new(
            (0..n).map(|i| VertexId(format!("v{i}"))).collect(),
            edges
                .iter()
                .enumerate()
                .map(|(k, (a, b))| {
                    (
                        EdgeId(format!("e{k}")),
                        VertexId(format!("v{a}")),
                        VertexId(format!("v{b}")),
                    )
                })
                .collect(),
            None,
        )
        .expect("construction is well-formed");
        if g.validate_good_digraph().is_good
            && g.vertices().all(|v| g.degree(v) <= max_degree)
        {
            return g;
        }
    }
    // Deterministic fallback: a path, always good.
    ReebDigraph::new(
        vec![VertexId::from("v0"), VertexId::from("v1"), VertexId::from("v2")],
        vec![
            (EdgeId::from("e0"), VertexId::from("v0"), VertexId::from("v1")),
            (EdgeId::from("e1"), VertexId::from("v1"), VertexId::from("v2")),
        ],
        None,
    )
    .unwrap()
}

/// A random non-extremum point of a good digraph: an interior vertex or an
/// edge-interior point at a small-denominator parameter.
pub fn wedge_point(rng: &mut Rng, g: &ReebDigraph) -> PointSpec {
    let interior: Vec<&VertexId> = g
        .vertices()
        .filter(|v| g.in_degree(v) >= 1 && g.out_degree(v) >= 1)
        .collect();
    if !interior.is_empty() && rng.chance(1, 3) {
        return PointSpec::Vertex((*rng.pick(&interior)).clone());
    }
    let edges: Vec<&EdgeId> = g.edges().map(|(e, _)| e).collect();
    let e = (*rng.pick(&edges)).clone();
    let t = ratio(1 + rng.below(7) as i64, 8);
    PointSpec::EdgeInterior(e, t)
}

/// Like [`wedge_point`], but never a degree-2 vertex: gluing there cannot
/// stay exactly G-simple (the degree-2 vertex's own critical point joins
/// the wedge cluster).
pub fn gs_wedge_point(rng: &mut Rng, g: &ReebDigraph) -> PointSpec {
    let branch: Vec<&VertexId> = g
        .vertices()
        .filter(|v| g.degree(v) >= 3 && g.in_degree(v) >= 1 && g.out_degree(v) >= 1)
        .collect();
    if !branch.is_empty() && rng.chance(1, 3) {
        return PointSpec::Vertex((*rng.pick(&branch)).clone());
    }
    let edges: Vec<&EdgeId> = g.edges().map(|(e, _)| e).collect();
    let e = (*rng.pick(&edges)).clone();
    let t = ratio(1 + rng.below(7) as i64, 8);
    PointSpec::EdgeInterior(e, t)
}

/// The unique count annotation satisfying the degree rules, with free
/// positive counts at the leaves.
pub fn gs_annotation(rng: &mut Rng, g: &ReebDigraph) -> GsAnnotation {
    let mut counts = BTreeMap::new();
    for v in g.vertices() {
        let d = g.degree(v);
        let c = match d {
            0 | 1 => 1 + rng.below(3) as u64,
            2 => 1,
            d => (d as u64) - 2,
        };
        counts.insert(v.clone(), c);
    }
    GsAnnotation::new(counts)
}

/// Random directed tree host with no degree-2 vertex: internal vertices have
/// degree >= 3, orientation admits a height function.
pub fn tree_host(rng: &mut Rng, max_internal: usize) -> ReebDigraph {
    'attempt: loop {
        // Undirected tree: grow by expanding leaves into branch vertices.
        let internal_target = 1 + rng.below(max_internal.max(1));
        let mut adj: Vec<Vec<usize>> = vec![vec![1], vec![0]];
        let mut internal = 0usize;
        while internal < internal_target {
            let leaves: Vec<usize> = (0..adj.len()).filter(|&v| adj[v].len() == 1).collect();
            let v = *rng.pick(&leaves);
            let children = 2 + rng.below(2);
            for _ in 0..children {
                let w = adj.len();
                adj.push(vec![v]);
                adj[v].push(w);
            }
            internal += 1;
        }
        let n = adj.len();
        // Random orientation via a random height permutation, retried until
        // every internal vertex has both directions.
        'orient: for _ in 0..200 {
            let mut order: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                order.swap(i, rng.below(i + 1));
            }
            let mut rank = vec![0usize; n];
            for (r, &v) in order.iter().enumerate() {
                rank[v] = r;
            }
            for v in 0..n {
                if adj[v].len() >= 2 {
                    let has_in = adj[v].iter().any(|&u| rank[u] < rank[v]);
                    let has_out = adj[v].iter().any(|&u| rank[u] > rank[v]);
                    if !has_in || !has_out {
                        continue 'orient;
                    }
                }
            }
            let mut edges = Vec::new();
            let mut k = 0usize;
            for v in 0..n {
                for &u in &adj[v] {
                    if rank[v] < rank[u] {
                        edges.push((
                            EdgeId(format!("h{k}")),
                            VertexId(format!("g{v}")),
                            VertexId(format!("g{u}")),
                        ));
                        k += 1;
                    }
                }
            }
            let g = ReebDigraph::new(
                (0..n).map(|v| VertexId(format!("g{v}"))).collect(),
                edges,
                None,
            )
            .unwrap();
            debug_assert!(g.validate_good_digraph().is_good);
            debug_assert!(g.vertices().all(|v| g.degree(v) != 2));
            return g;
        }
        continue 'attempt;
    }
}

/// A digraph embedded into a tree host: the union of forward leaf-to-leaf
/// walks with degree-2 chain vertices suppressed, plus optional subdivision
/// vertices mapped to edge interiors (and, in relaxed mode, some chain
/// vertices kept and mapped onto host vertices).
pub struct EmbeddedInstance {
    pub w: ReebDigraph,
    pub phi: EmbeddingMap,
    /// Degree-2 vertices of `w` mapped onto host vertices (relaxed mode).
    pub on_host_vertices: BTreeSet<VertexId>,
}

pub fn embedded_digraph(rng: &mut Rng, host: &ReebDigraph, relaxed: bool) -> EmbeddedInstance {
    let sources: Vec<VertexId> = host
        .vertices()
        .filter(|v| host.in_degree(v) == 0)
        .cloned()
        .collect();
    // Forward walks from random sources to sinks.
    let walk = |rng: &mut Rng| -> Vec<EdgeId> {
        let mut at = rng.pick(&sources).clone();
        let mut path = Vec::new();
        loop {
            let outs: Vec<(EdgeId, VertexId)> = host
                .edges()
                .filter(|(_, e)| e.src == at)
                .map(|(id, e)| (id.clone(), e.dst.clone()))
                .collect();
            if outs.is_empty() {
                return path;
            }
            let (eid, next) = rng.pick(&outs).clone();
            path.push(eid);
            at = next;
        }
    };
    // Take 1..=3 walks whose union is connected; retry a few times, then
    // settle for a single walk.
    let mut edge_set: BTreeSet<EdgeId> = BTreeSet::new();
    let want = 1 + rng.below(3);
    for _ in 0..20 {
        let mut ws: Vec<Vec<EdgeId>> = (0..want).map(|_| walk(rng)).collect();
        ws.sort();
        ws.dedup();
        let vs: Vec<BTreeSet<VertexId>> = ws
            .iter()
            .map(|p| {
                p.iter()
                    .flat_map(|e| {
                        let edge = host.edge(e).unwrap();
                        [edge.src.clone(), edge.dst.clone()]
                    })
                    .collect()
            })
            .collect();
        // Connected union: merge overlapping walks greedily.
        let mut merged = vec![false; ws.len()];
        let mut frontier = vec![0usize];
        merged[0] = true;
        while let Some(i) = frontier.pop() {
            for j in 0..ws.len() {
                if !merged[j] && !vs[i].is_disjoint(&vs[j]) {
                    merged[j] = true;
                    frontier.push(j);
                }
            }
        }
        if merged.iter().all(|&m| m) {
            edge_set = ws.iter().flatten().cloned().collect();
            break;
        }
    }
    if edge_set.is_empty() {
        edge_set = walk(rng).into_iter().collect();
    }

    // The union subgraph S of the host.
    let mut s_vertices: BTreeSet<VertexId> = BTreeSet::new();
    for e in &edge_set {
        let edge = host.edge(e).unwrap();
        s_vertices.insert(edge.src.clone());
        s_vertices.insert(edge.dst.clone());
    }
    let s_deg = |v: &VertexId| -> usize {
        edge_set
            .iter()
            .filter(|e| {
                let edge = host.edge(e).unwrap();
                &edge.src == v || &edge.dst == v
            })
            .count()
    };

    // Core vertices survive; chain vertices are suppressed unless kept for
    // the relaxed variant.
    let mut kept_chain: BTreeSet<VertexId> = BTreeSet::new();
    if relaxed {
        for v in &s_vertices {
            if s_deg(v) == 2 && rng.chance(1, 3) {
                kept_chain.insert(v.clone());
            }
        }
    }
    let is_node = |v: &VertexId| s_deg(v) != 2 || kept_chain.contains(v);

    // Walk chains forward from each node along S-edges.
    let mut w_vertices: Vec<VertexId> = Vec::new();
    let mut name_of: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for v in &s_vertices {
        if is_node(v) {
            let name = VertexId(format!("w{}", w_vertices.len()));
            name_of.insert(v.clone(), name.clone());
            w_vertices.push(name);
        }
    }
    let mut w_edges: Vec<(EdgeId, VertexId, VertexId)> = Vec::new();
    let mut edge_image: BTreeMap<EdgeId, Vec<EdgeId>> = BTreeMap::new();
    let mut vertex_image: BTreeMap<VertexId, PointSpec> = BTreeMap::new();
    for (host_v, w_v) in &name_of {
        vertex_image.insert(w_v.clone(), PointSpec::Vertex(host_v.clone()));
    }
    let mut used: BTreeSet<EdgeId> = BTreeSet::new();
    let mut next_w_vertex = w_vertices.len();
    let mut next_w_edge = 0usize;
    for start in s_vertices.iter().filter(|v| is_node(v)) {
        let outs: Vec<EdgeId> = edge_set
            .iter()
            .filter(|e| &host.edge(e).unwrap().src == start)
            .cloned()
            .collect();
        for first in outs {
            if used.contains(&first) {
                continue;
            }
            let mut chain = vec![first.clone()];
            used.insert(first.clone());
            let mut at = host.edge(&first).unwrap().dst.clone();
            while !is_node(&at) {
                let next = edge_set
                    .iter()
                    .find(|e| host.edge(e).unwrap().src == at)
                    .expect("chain continues to a node")
                    .clone();
                used.insert(next.clone());
                at = host.edge(&next).unwrap().dst.clone();
                chain.push(next);
            }
            // Optional subdivision vertices mapped to interior points of
            // distinct chain edges.
            let mut cuts: Vec<usize> = Vec::new();
            for (i, _) in chain.iter().enumerate() {
                if rng.chance(1, 4) {
                    cuts.push(i);
                }
            }
            let mut prev_w = name_of[start].clone();
            let mut seg_start = 0usize;
            for &cut in &cuts {
                let mid = VertexId(format!("w{next_w_vertex}"));
                next_w_vertex += 1;
                vertex_image.insert(
                    mid.clone(),
                    PointSpec::EdgeInterior(chain[cut].clone(), ratio(1, 2)),
                );
                let wid = EdgeId(format!("f{next_w_edge}"));
                next_w_edge += 1;
                edge_image.insert(wid.clone(), chain[seg_start..=cut].to_vec());
                w_edges.push((wid, prev_w.clone(), mid.clone()));
                w_vertices.push(mid.clone());
                prev_w = mid;
                seg_start = cut;
            }
            let wid = EdgeId(format!("f{next_w_edge}"));
            next_w_edge += 1;
            edge_image.insert(wid.clone(), chain[seg_start..].to_vec());
            w_edges.push((wid, prev_w, name_of[&at].clone()));
        }
    }

    let w = ReebDigraph::new(w_vertices, w_edges, None).expect("well-formed");
    debug_assert!(w.validate_good_digraph().is_good);
    let on_host_vertices = kept_chain.iter().map(|v| name_of[v].clone()).collect();
    EmbeddedInstance {
        w,
        phi: EmbeddingMap {
            vertex_image,
            edge_image,
        },
        on_host_vertices,
    }
}
