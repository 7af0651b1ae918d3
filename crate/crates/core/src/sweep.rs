//! Level-set sweep: compute the Reeb digraph of a PL height function on a
//! triangulated closed surface.
//!
//! Events are the distinct vertex heights. Between consecutive events every
//! spanning triangle crosses the whole open slab, so slab components (level
//! circles) come from a union-find over spanning triangles glued along
//! spanning edges. At an event, level components are a union-find over
//! items (vertices at the value, edges crossing it); a triangle's level
//! intersection is connected, so all its items merge. Event components that
//! pass through with one circle below and one above and carry no critical
//! vertex are contracted into edges.

use crate::digraph::{EdgeId, PointSpec, ReebDigraph, VertexId};
use crate::error::MeshError;
use crate::mesh::{edge_key, EdgeKey, MeshVertexId, PlHeights, TriSurface};
use crate::plmorse::{census, Census};
use num_rational::BigRational;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Item {
    Vertex(usize),
    Crossing(EdgeKey),
}

#[derive(Debug, Clone)]
pub struct EventData {
    pub value: BigRational,
    /// Connected components of the level set at this value, as items.
    pub comps: Vec<Vec<Item>>,
}

#[derive(Debug, Clone)]
pub struct SlabData {
    pub lo: BigRational,
    pub hi: BigRational,
    /// Connected components of the open slab, as triangle indices.
    pub comps: Vec<Vec<usize>>,
}

/// One piece of the region a Reeb edge sweeps through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainPart {
    /// (event index, component index) of a contracted regular event.
    Event(usize, usize),
    /// (slab index, component index).
    Slab(usize, usize),
}

#[derive(Debug, Clone)]
pub struct ReebVertexInfo {
    pub event: usize,
    pub comp: usize,
    /// Mesh vertices lying on this level component.
    pub mesh_vertices: Vec<usize>,
    /// The critical ones among them.
    pub critical_vertices: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub graph: ReebDigraph,
    pub events: Vec<EventData>,
    pub slabs: Vec<SlabData>,
    pub vertex_info: BTreeMap<VertexId, ReebVertexInfo>,
    pub edge_chains: BTreeMap<EdgeId, Vec<ChainPart>>,
    pub census: Census,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }
    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Compute the Reeb digraph together with the quotient bookkeeping needed by
/// the strip search and the tests. Rejects height data violating the
/// genericity rules.
pub fn pl_reeb(surface: &TriSurface, heights: &PlHeights) -> Result<SweepOutput, MeshError> {
    heights.validate(surface)?;
    let cls = census(surface, heights)?;

    // Distinct values, and each vertex's level index (computed once).
    let mut values: Vec<BigRational> = heights.values.to_vec();
    values.sort();
    values.dedup();
    let vertex_level: Vec<usize> = heights
        .values
        .iter()
        .map(|h| values.binary_search(h).expect("present"))
        .collect();
    let level_of = |v: usize| -> usize { vertex_level[v] };
    let nlevels = values.len();

    let tris = surface.triangles();
    let mut tri_levels = Vec::with_capacity(tris.len());
    for t in tris {
        let ls = [level_of(t[0]), level_of(t[1]), level_of(t[2])];
        tri_levels.push((*ls.iter().min().unwrap(), *ls.iter().max().unwrap()));
    }
    let mut tris_at_level: Vec<Vec<usize>> = vec![Vec::new(); nlevels];
    for (ti, (lo, hi)) in tri_levels.iter().enumerate() {
        for slot in tris_at_level.iter_mut().take(*hi + 1).skip(*lo) {
            slot.push(ti);
        }
    }

    // Events: components of each level set.
    let mut events = Vec::with_capacity(nlevels);
    let mut event_comp_of_item: Vec<BTreeMap<Item, usize>> = Vec::with_capacity(nlevels);
    for (j, value) in values.iter().enumerate() {
        let mut item_index: BTreeMap<Item, usize> = BTreeMap::new();
        let mut items: Vec<Item> = Vec::new();
        let mut tri_items: Vec<(usize, Vec<usize>)> = Vec::new();
        for &ti in &tris_at_level[j] {
            let t = tris[ti];
            let mut mine = Vec::new();
            for k in 0..3 {
                let v = t[k];
                if level_of(v) == j {
                    let it = Item::Vertex(v);
                    let id = *item_index.entry(it.clone()).or_insert_with(|| {
                        items.push(it.clone());
                        items.len() - 1
                    });
                    mine.push(id);
                }
                let (a, b) = (t[k], t[(k + 1) % 3]);
                let (la, lb) = (level_of(a), level_of(b));
                if la.min(lb) < j && la.max(lb) > j {
                    let it = Item::Crossing(edge_key(a, b));
                    let id = *item_index.entry(it.clone()).or_insert_with(|| {
                        items.push(it.clone());
                        items.len() - 1
                    });
                    mine.push(id);
                }
            }
            tri_items.push((ti, mine));
        }
        let mut uf = UnionFind::new(items.len());
        for (_, mine) in &tri_items {
            for pair in mine.windows(2) {
                uf.union(pair[0], pair[1]);
            }
        }
        let mut comp_index: BTreeMap<usize, usize> = BTreeMap::new();
        let mut comps: Vec<Vec<Item>> = Vec::new();
        let mut by_item: BTreeMap<Item, usize> = BTreeMap::new();
        for (i, item) in items.iter().enumerate() {
            let root = uf.find(i);
            let c = *comp_index.entry(root).or_insert_with(|| {
                comps.push(Vec::new());
                comps.len() - 1
            });
            comps[c].push(item.clone());
            by_item.insert(item.clone(), c);
        }
        for comp in &mut comps {
            comp.sort();
        }
        events.push(EventData {
            value: value.clone(),
            comps,
        });
        event_comp_of_item.push(by_item);
    }

    // Slabs: components of spanning triangles between consecutive levels.
    let nslabs = nlevels.saturating_sub(1);
    let mut slabs = Vec::with_capacity(nslabs);
    let mut slab_comp_of_tri: Vec<BTreeMap<usize, usize>> = Vec::with_capacity(nslabs);
    let edge_tris = surface.edge_triangles();
    for j in 0..nslabs {
        let spanning: Vec<usize> = tris_at_level[j]
            .iter()
            .copied()
            .filter(|&ti| tri_levels[ti].0 <= j && tri_levels[ti].1 > j)
            .collect();
        let pos: BTreeMap<usize, usize> = spanning.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let mut uf = UnionFind::new(spanning.len());
        for (&ti, &i) in &pos {
            let t = tris[ti];
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                let (la, lb) = (level_of(a), level_of(b));
                if la.min(lb) <= j && la.max(lb) > j {
                    for &other in &edge_tris[&edge_key(a, b)] {
                        if let Some(&oi) = pos.get(&other) {
                            uf.union(i, oi);
                        }
                    }
                }
            }
        }
        let mut comp_index: BTreeMap<usize, usize> = BTreeMap::new();
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut by_tri: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, &ti) in spanning.iter().enumerate() {
            let root = uf.find(i);
            let c = *comp_index.entry(root).or_insert_with(|| {
                comps.push(Vec::new());
                comps.len() - 1
            });
            comps[c].push(ti);
            by_tri.insert(ti, c);
        }
        slabs.push(SlabData {
            lo: values[j].clone(),
            hi: values[j + 1].clone(),
            comps,
        });
        slab_comp_of_tri.push(by_tri);
    }

    // A slab component meets exactly one event component at each end.
    let event_comp_of_tri = |j: usize, ti: usize| -> usize {
        let t = tris[ti];
        for k in 0..3 {
            let v = t[k];
            if level_of(v) == j {
                return event_comp_of_item[j][&Item::Vertex(v)];
            }
            let (a, b) = (t[k], t[(k + 1) % 3]);
            let (la, lb) = (level_of(a), level_of(b));
            if la.min(lb) < j && la.max(lb) > j {
                return event_comp_of_item[j][&Item::Crossing(edge_key(a, b))];
            }
        }
        unreachable!("triangle touching a level has an item there")
    };
    let mut slab_down: Vec<Vec<usize>> = Vec::with_capacity(nslabs);
    let mut slab_up: Vec<Vec<usize>> = Vec::with_capacity(nslabs);
    for (j, slab) in slabs.iter().enumerate() {
        let mut down = Vec::new();
        let mut up = Vec::new();
        for comp in &slab.comps {
            let d: BTreeSet<usize> = comp.iter().map(|&ti| event_comp_of_tri(j, ti)).collect();
            let u: BTreeSet<usize> = comp.iter().map(|&ti| event_comp_of_tri(j + 1, ti)).collect();
            debug_assert_eq!(d.len(), 1);
            debug_assert_eq!(u.len(), 1);
            down.push(*d.iter().next().unwrap());
            up.push(*u.iter().next().unwrap());
        }
        slab_down.push(down);
        slab_up.push(up);
    }

    // Event components: slabs below and above, and critical contents.
    let mut below: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    let mut above: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for j in 0..nslabs {
        for c in 0..slabs[j].comps.len() {
            above.entry((j, slab_down[j][c])).or_default().push((j, c));
            below.entry((j + 1, slab_up[j][c])).or_default().push((j, c));
        }
    }
    let comp_vertices = |j: usize, c: usize| -> Vec<usize> {
        events[j].comps[c]
            .iter()
            .filter_map(|it| match it {
                Item::Vertex(v) => Some(*v),
                _ => None,
            })
            .collect()
    };
    let keep = |j: usize, c: usize, below: &BTreeMap<(usize, usize), Vec<(usize, usize)>>, above: &BTreeMap<(usize, usize), Vec<(usize, usize)>>| -> bool {
        let nb = below.get(&(j, c)).map_or(0, |v| v.len());
        let na = above.get(&(j, c)).map_or(0, |v| v.len());
        if nb != 1 || na != 1 {
            return true;
        }
        comp_vertices(j, c)
            .iter()
            .any(|&v| cls.classes[v].is_critical())
    };

    // Name kept components in (level, comp) order.
    let mut kept: Vec<(usize, usize)> = Vec::new();
    for (j, ev) in events.iter().enumerate() {
        for c in 0..ev.comps.len() {
            if keep(j, c, &below, &above) {
                kept.push((j, c));
            }
        }
    }
    let name_of: BTreeMap<(usize, usize), VertexId> = kept
        .iter()
        .enumerate()
        .map(|(i, key)| (*key, VertexId(format!("n{i}"))))
        .collect();

    let mut vertex_info = BTreeMap::new();
    let mut graph_heights = BTreeMap::new();
    for &(j, c) in &kept {
        let vid = name_of[&(j, c)].clone();
        let mesh_vertices = comp_vertices(j, c);
        let critical_vertices = mesh_vertices
            .iter()
            .copied()
            .filter(|&v| cls.classes[v].is_critical())
            .collect();
        graph_heights.insert(vid.clone(), values[j].clone());
        vertex_info.insert(
            vid.clone(),
            ReebVertexInfo {
                event: j,
                comp: c,
                mesh_vertices,
                critical_vertices,
            },
        );
    }

    // Trace edges upward from every kept component.
    let mut edges = Vec::new();
    let mut edge_chains = BTreeMap::new();
    let mut eidx = 0usize;
    for &(j, c) in &kept {
        let starts = above.get(&(j, c)).cloned().unwrap_or_default();
        for (mut sj, mut sc) in starts {
            let mut chain = vec![ChainPart::Slab(sj, sc)];
            let (tj, tc) = loop {
                let up = (sj + 1, slab_up[sj][sc]);
                if name_of.contains_key(&up) {
                    break up;
                }
                chain.push(ChainPart::Event(up.0, up.1));
                let next = above[&up][0];
                chain.push(ChainPart::Slab(next.0, next.1));
                sj = next.0;
                sc = next.1;
            };
            let eid = EdgeId(format!("a{eidx}"));
            eidx += 1;
            edges.push((eid.clone(), name_of[&(j, c)].clone(), name_of[&(tj, tc)].clone()));
            edge_chains.insert(eid, chain);
        }
    }

    let graph = ReebDigraph::new(
        kept.iter().map(|k| name_of[k].clone()).collect(),
        edges,
        Some(graph_heights),
    )
    .map_err(|e| MeshError::BadLink(format!("sweep produced an invalid graph: {e}")))?;

    Ok(SweepOutput {
        graph,
        events,
        slabs,
        vertex_info,
        edge_chains,
        census: cls,
    })
}

impl SweepOutput {
    /// Mesh edges crossed by the level set at the location of a Reeb point,
    /// restricted to that point's level-set component.
    pub fn crossing_edges_at(
        &self,
        surface: &TriSurface,
        heights: &PlHeights,
        point: &PointSpec,
    ) -> Option<(BigRational, Vec<EdgeKey>)> {
        match point {
            PointSpec::Vertex(v) => {
                let info = self.vertex_info.get(v)?;
                let value = self.events[info.event].value.clone();
                let mut out = Vec::new();
                for item in &self.events[info.event].comps[info.comp] {
                    if let Item::Crossing(e) = item {
                        out.push(*e);
                    }
                }
                Some((value, out))
            }
            PointSpec::EdgeInterior(e, _t) => {
                let value = self.graph.value_at(point).ok()?;
                let chain = self.edge_chains.get(e)?;
                for part in chain {
                    match part {
                        ChainPart::Slab(j, c) => {
                            let slab = &self.slabs[*j];
                            if slab.lo < value && value < slab.hi {
                                let mut out = BTreeSet::new();
                                for &ti in &slab.comps[*c] {
                                    let t = surface.triangles()[ti];
                                    for k in 0..3 {
                                        let (a, b) = (t[k], t[(k + 1) % 3]);
                                        let (ha, hb) = (heights.value(a), heights.value(b));
                                        if ha.min(hb) < &value && &value < ha.max(hb) {
                                            out.insert(edge_key(a, b));
                                        }
                                    }
                                }
                                return Some((value, out.into_iter().collect()));
                            }
                        }
                        ChainPart::Event(j, c) => {
                            if self.events[*j].value == value {
                                let mut out = Vec::new();
                                for item in &self.events[*j].comps[*c] {
                                    if let Item::Crossing(e) = item {
                                        out.push(*e);
                                    }
                                }
                                return Some((value, out));
                            }
                        }
                    }
                }
                None
            }
        }
    }

    /// Critical mesh vertex ids mapped to a Reeb vertex.
    pub fn critical_cluster(&self, surface: &TriSurface, v: &VertexId) -> Option<Vec<MeshVertexId>> {
        let info = self.vertex_info.get(v)?;
        Some(
            info.critical_vertices
                .iter()
                .map(|&i| surface.id(i).clone())
                .collect(),
        )
    }
}
