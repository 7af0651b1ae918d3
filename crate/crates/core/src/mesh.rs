//! Triangulated closed surfaces with exact rational vertex heights.
//!
//! A `TriSurface` is a simplicial complex whose every edge lies in exactly
//! two triangles and whose vertex links are single cycles. Orientability is
//! not assumed. `PlHeights` adds one rational per mesh vertex plus declared
//! critical clusters: sets of equal-height vertices realizing one Reeb
//! vertex. Adjacent vertices must have distinct heights unless they share a
//! cluster.

use crate::error::MeshError;
use num_rational::BigRational;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeshVertexId(pub String);

impl fmt::Display for MeshVertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<&str> for MeshVertexId {
    fn from(s: &str) -> Self {
        MeshVertexId(s.to_string())
    }
}

/// Index-based triangle surface. Vertex indices are stable positions into
/// `ids`; triangles store vertex index triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriSurface {
    ids: Vec<MeshVertexId>,
    index: BTreeMap<MeshVertexId, usize>,
    tris: Vec<[usize; 3]>,
}

pub type EdgeKey = (usize, usize);

pub fn edge_key(a: usize, b: usize) -> EdgeKey {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl TriSurface {
    /// Build and validate a closed surface.
    pub fn new(ids: Vec<MeshVertexId>, triangles: Vec<[MeshVertexId; 3]>) -> Result<Self, MeshError> {
        let mut index = BTreeMap::new();
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(MeshError::DuplicateVertex(id.0.clone()));
            }
        }
        let mut tris = Vec::with_capacity(triangles.len());
        let mut seen = BTreeSet::new();
        for t in &triangles {
            let mut idx = [0usize; 3];
            for (k, v) in t.iter().enumerate() {
                idx[k] = *index
                    .get(v)
                    .ok_or_else(|| MeshError::UnknownVertex(v.0.clone()))?;
            }
            if idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2] {
                return Err(MeshError::DegenerateTriangle([
                    t[0].0.clone(),
                    t[1].0.clone(),
                    t[2].0.clone(),
                ]));
            }
            let mut key = idx;
            key.sort_unstable();
            if !seen.insert(key) {
                return Err(MeshError::DuplicateTriangle([
                    t[0].0.clone(),
                    t[1].0.clone(),
                    t[2].0.clone(),
                ]));
            }
            tris.push(idx);
        }
        let surface = TriSurface { ids, index, tris };
        surface.validate_closed()?;
        Ok(surface)
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.tris.len()
    }

    pub fn ids(&self) -> &[MeshVertexId] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &MeshVertexId {
        &self.ids[v]
    }

    pub fn lookup(&self, id: &MeshVertexId) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.tris
    }

    /// Map each undirected edge to the triangles containing it.
    pub fn edge_triangles(&self) -> BTreeMap<EdgeKey, Vec<usize>> {
        let mut map: BTreeMap<EdgeKey, Vec<usize>> = BTreeMap::new();
        for (ti, t) in self.tris.iter().enumerate() {
            for k in 0..3 {
                map.entry(edge_key(t[k], t[(k + 1) % 3])).or_default().push(ti);
            }
        }
        map
    }

    pub fn edge_count(&self) -> usize {
        self.edge_triangles().len()
    }

    /// chi = V - E + F.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.triangle_count() as i64
    }

    /// Neighbours of a vertex in the 1-skeleton.
    pub fn neighbours(&self, v: usize) -> BTreeSet<usize> {
        let mut nb = BTreeSet::new();
        for t in &self.tris {
            if t.contains(&v) {
                for &u in t {
                    if u != v {
                        nb.insert(u);
                    }
                }
            }
        }
        nb
    }

    /// The link of a vertex as a single closed cycle of neighbour indices.
    pub fn link_cycle(&self, v: usize) -> Result<Vec<usize>, MeshError> {
        // Arcs of the link: for each triangle at v, its opposite edge.
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        for t in &self.tris {
            if let Some(pos) = t.iter().position(|&u| u == v) {
                arcs.push((t[(pos + 1) % 3], t[(pos + 2) % 3]));
            }
        }
        if arcs.is_empty() {
            return Err(MeshError::BadLink(self.ids[v].0.clone()));
        }
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(a, b) in &arcs {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        for nb in adj.values() {
            if nb.len() != 2 {
                return Err(MeshError::BadLink(self.ids[v].0.clone()));
            }
        }
        let start = *adj.keys().next().unwrap();
        let mut cycle = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let nbs = &adj[&cur];
            let next = if nbs[0] != prev { nbs[0] } else { nbs[1] };
            if next == start {
                break;
            }
            cycle.push(next);
            prev = cur;
            cur = next;
            if cycle.len() > arcs.len() + 1 {
                return Err(MeshError::BadLink(self.ids[v].0.clone()));
            }
        }
        if cycle.len() != adj.len() {
            return Err(MeshError::BadLink(self.ids[v].0.clone()));
        }
        Ok(cycle)
    }

    fn validate_closed(&self) -> Result<(), MeshError> {
        if self.tris.is_empty() {
            return Err(MeshError::Empty);
        }
        let edges = self.edge_triangles();
        for ((a, b), ts) in &edges {
            if ts.len() != 2 {
                return Err(MeshError::EdgeNotInTwoTriangles(
                    self.ids[*a].0.clone(),
                    self.ids[*b].0.clone(),
                    ts.len(),
                ));
            }
        }
        for v in 0..self.ids.len() {
            self.link_cycle(v)?;
        }
        // Triangle adjacency connectivity.
        let mut seen = vec![false; self.tris.len()];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0usize);
        let mut count = 1;
        while let Some(t) = queue.pop_front() {
            let tri = self.tris[t];
            for k in 0..3 {
                let key = edge_key(tri[k], tri[(k + 1) % 3]);
                for &other in &edges[&key] {
                    if !seen[other] {
                        seen[other] = true;
                        count += 1;
                        queue.push_back(other);
                    }
                }
            }
        }
        if count != self.tris.len() {
            return Err(MeshError::Disconnected);
        }
        Ok(())
    }

    /// Orientability via triangle orientation propagation.
    pub fn is_orientable(&self) -> bool {
        let edges = self.edge_triangles();
        let mut sign: Vec<Option<bool>> = vec![None; self.tris.len()];
        sign[0] = Some(true);
        let mut queue = VecDeque::from([0usize]);
        let oriented_edges = |t: &[usize; 3], flip: bool| -> Vec<(usize, usize)> {
            let mut es = vec![(t[0], t[1]), (t[1], t[2]), (t[2], t[0])];
            if flip {
                es = es.into_iter().map(|(a, b)| (b, a)).collect();
            }
            es
        };
        while let Some(t) = queue.pop_front() {
            let flip = !sign[t].unwrap();
            let mine = oriented_edges(&self.tris[t], flip);
            for (a, b) in mine {
                for &other in &edges[&edge_key(a, b)] {
                    if other == t {
                        continue;
                    }
                    // Consistent orientation: the shared edge must appear in
                    // opposite directions.
                    let needs_flip_false = oriented_edges(&self.tris[other], false).contains(&(b, a));
                    let required = !needs_flip_false;
                    match sign[other] {
                        None => {
                            sign[other] = Some(!required);
                            queue.push_back(other);
                        }
                        Some(s) => {
                            if s != !required {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Genus of an orientable closed surface.
    pub fn genus(&self) -> Option<u64> {
        if !self.is_orientable() {
            return None;
        }
        let chi = self.euler_characteristic();
        Some(((2 - chi) / 2) as u64)
    }
}

/// Heights plus declared critical clusters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlHeights {
    pub values: Vec<BigRational>,
    pub clusters: Vec<BTreeSet<usize>>,
}

impl PlHeights {
    pub fn new(
        surface: &TriSurface,
        values: BTreeMap<MeshVertexId, BigRational>,
        clusters: Vec<BTreeSet<MeshVertexId>>,
    ) -> Result<Self, MeshError> {
        for id in values.keys() {
            if surface.lookup(id).is_none() {
                return Err(MeshError::HeightForUnknownVertex(id.0.clone()));
            }
        }
        let mut vals = Vec::with_capacity(surface.vertex_count());
        for id in surface.ids() {
            match values.get(id) {
                Some(v) => vals.push(v.clone()),
                None => return Err(MeshError::MissingHeight(id.0.clone())),
            }
        }
        let mut cl = Vec::new();
        for cluster in clusters {
            let mut set = BTreeSet::new();
            for id in cluster {
                let i = surface
                    .lookup(&id)
                    .ok_or_else(|| MeshError::ClusterUnknownVertex(id.0.clone()))?;
                set.insert(i);
            }
            cl.push(set);
        }
        let h = PlHeights {
            values: vals,
            clusters: cl,
        };
        h.validate(surface)?;
        Ok(h)
    }

    pub(crate) fn from_parts_unchecked(values: Vec<BigRational>, clusters: Vec<BTreeSet<usize>>) -> Self {
        PlHeights { values, clusters }
    }

    pub fn value(&self, v: usize) -> &BigRational {
        &self.values[v]
    }

    fn same_cluster(&self, a: usize, b: usize) -> bool {
        self.clusters
            .iter()
            .any(|c| c.contains(&a) && c.contains(&b))
    }

    /// Genericity: adjacent vertices have distinct heights unless they share
    /// a cluster; within a cluster all heights agree.
    pub fn validate(&self, surface: &TriSurface) -> Result<(), MeshError> {
        for cluster in &self.clusters {
            let mut iter = cluster.iter();
            if let Some(&first) = iter.next() {
                for &v in iter {
                    if self.values[v] != self.values[first] {
                        return Err(MeshError::ClusterHeightMismatch(
                            surface.id(first).0.clone(),
                            surface.id(v).0.clone(),
                        ));
                    }
                }
            }
        }
        for (a, b) in surface.edge_triangles().keys() {
            if self.values[*a] == self.values[*b] && !self.same_cluster(*a, *b) {
                return Err(MeshError::Genericity(
                    surface.id(*a).0.clone(),
                    surface.id(*b).0.clone(),
                ));
            }
        }
        Ok(())
    }
}

/// Octahedron with its apexes at heights 0 and 2 and staggered equator
/// heights; the simplest closed-surface fixture.
pub fn octahedron() -> (TriSurface, PlHeights) {
    use crate::rational::{int, ratio};
    let ids: Vec<MeshVertexId> = ["bot", "eq0", "eq1", "eq2", "eq3", "top"]
        .iter()
        .map(|s| MeshVertexId::from(*s))
        .collect();
    let tri = |a: &str, b: &str, c: &str| [MeshVertexId::from(a), MeshVertexId::from(b), MeshVertexId::from(c)];
    let tris = vec![
        tri("bot", "eq0", "eq1"),
        tri("bot", "eq1", "eq2"),
        tri("bot", "eq2", "eq3"),
        tri("bot", "eq3", "eq0"),
        tri("top", "eq1", "eq0"),
        tri("top", "eq2", "eq1"),
        tri("top", "eq3", "eq2"),
        tri("top", "eq0", "eq3"),
    ];
    let surface = TriSurface::new(ids, tris).unwrap();
    let mut values = BTreeMap::new();
    values.insert(MeshVertexId::from("bot"), int(0));
    values.insert(MeshVertexId::from("top"), int(2));
    for (i, eq) in ["eq0", "eq1", "eq2", "eq3"].iter().enumerate() {
        values.insert(MeshVertexId::from(*eq), int(1) + ratio(i as i64, 16));
    }
    let heights = PlHeights::new(&surface, values, Vec::new()).unwrap();
    (surface, heights)
}

/// Grid torus standing on end: an n x n wrapped grid with tent-function
/// heights in both directions, giving one minimum, one maximum and two
/// saddles at distinct levels.
pub fn standing_torus(n: usize) -> (TriSurface, PlHeights) {
    use crate::rational::ratio;
    assert!(n >= 6 && n.is_multiple_of(2));
    let tent = |i: usize| -> i64 {
        let half = n as i64 / 2;
        let i = i as i64;
        if i <= half {
            i
        } else {
            n as i64 - i
        }
    };
    let id = |i: usize, j: usize| MeshVertexId(format!("g{}x{}", i, j));
    let mut ids = Vec::new();
    let mut values = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            ids.push(id(i, j));
            values.insert(id(i, j), ratio(tent(i) * 16 + tent(j), 16));
        }
    }
    let mut tris = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let i1 = (i + 1) % n;
            let j1 = (j + 1) % n;
            tris.push([id(i, j), id(i1, j), id(i1, j1)]);
            tris.push([id(i, j), id(i1, j1), id(i, j1)]);
        }
    }
    let surface = TriSurface::new(ids, tris).unwrap();
    let heights = PlHeights::new(&surface, values, Vec::new()).unwrap();
    (surface, heights)
}

/// The 6-vertex projective plane (antipodal icosahedron quotient) with
/// distinct heights: one minimum, one maximum, and exactly one saddle, a
/// cross-cap saddle taking one level circle to one level circle.
pub fn projective_plane() -> (TriSurface, PlHeights) {
    use crate::rational::int;
    let names = ["p0", "p1", "p2", "p3", "p4", "p5"];
    let ids: Vec<MeshVertexId> = names.iter().map(|s| MeshVertexId::from(*s)).collect();
    // Faces of RP^2_6: complement pairs of the icosahedron under the
    // antipodal map. Every pair of vertices is an edge (K6).
    let faces = [
        [0, 1, 2],
        [0, 1, 3],
        [0, 2, 4],
        [0, 3, 5],
        [0, 4, 5],
        [1, 2, 5],
        [1, 3, 4],
        [1, 4, 5],
        [2, 3, 4],
        [2, 3, 5],
    ];
    let tris: Vec<[MeshVertexId; 3]> = faces
        .iter()
        .map(|f| {
            [
                MeshVertexId::from(names[f[0]]),
                MeshVertexId::from(names[f[1]]),
                MeshVertexId::from(names[f[2]]),
            ]
        })
        .collect();
    let surface = TriSurface::new(ids, tris).unwrap();
    let values = names
        .iter()
        .enumerate()
        .map(|(i, s)| (MeshVertexId::from(*s), int(i as i64)))
        .collect();
    let heights = PlHeights::new(&surface, values, Vec::new()).unwrap();
    (surface, heights)
}
