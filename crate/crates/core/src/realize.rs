//! Realize a good digraph as a PL height function on a triangulated closed
//! surface whose Reeb digraph is the given graph.
//!
//! Per graph element:
//! * degree-1 vertices become cone caps (a minimum or maximum apex);
//! * degree-2 vertices become a cross-cap block: one saddle taking one
//!   level circle to one level circle (non-orientable);
//! * vertices of degree d >= 3 become a junction: a sphere-with-holes piece
//!   carrying d - 2 simple saddles, all at the vertex height, inside one
//!   level component (the critical cluster);
//! * edges become prism tubes between interface rings.
//!
//! Interface rings are 8-gons (larger only when a junction needs more
//! contact points than an 8-gon offers). All heights are exact rationals,
//! staggered so that adjacent vertices differ except within saddle
//! clusters.

use crate::digraph::{EdgeId, ReebDigraph, ValidityReport, VertexId};
use crate::error::MeshError;
use crate::mesh::{MeshVertexId, PlHeights, TriSurface};
use crate::rational::{int, ratio};
use num_rational::BigRational;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RealizeError {
    #[error("input is not a valid good digraph")]
    NotGood(Box<ValidityReport>),
    #[error("a digraph without edges has no closed-surface realization")]
    NoEdges,
    #[error("construction produced an invalid mesh: {0}")]
    Mesh(#[from] MeshError),
}

/// Where the graph elements ended up in the mesh.
#[derive(Debug, Clone, Default)]
pub struct Placement {
    /// Critical mesh vertices realizing each Reeb vertex (the cluster).
    pub vertex_criticals: BTreeMap<VertexId, Vec<MeshVertexId>>,
    /// For each edge, the interface ring at its lower end.
    pub edge_rings: BTreeMap<EdgeId, Vec<MeshVertexId>>,
}

#[derive(Debug, Clone)]
pub struct Realization {
    pub surface: TriSurface,
    pub heights: PlHeights,
    pub placement: Placement,
}

struct MeshBuilder {
    ids: Vec<MeshVertexId>,
    heights: Vec<BigRational>,
    tris: Vec<[usize; 3]>,
    clusters: Vec<BTreeSet<usize>>,
}

impl MeshBuilder {
    fn new() -> Self {
        MeshBuilder {
            ids: Vec::new(),
            heights: Vec::new(),
            tris: Vec::new(),
            clusters: Vec::new(),
        }
    }

    fn vertex(&mut self, id: String, h: BigRational) -> usize {
        self.ids.push(MeshVertexId(id));
        self.heights.push(h);
        self.ids.len() - 1
    }

    fn tri(&mut self, a: usize, b: usize, c: usize) {
        self.tris.push([a, b, c]);
    }

    fn finish(self) -> Result<(TriSurface, PlHeights), MeshError> {
        let surface = TriSurface::new(
            self.ids.clone(),
            self.tris
                .iter()
                .map(|t| {
                    [
                        self.ids[t[0]].clone(),
                        self.ids[t[1]].clone(),
                        self.ids[t[2]].clone(),
                    ]
                })
                .collect(),
        )?;
        let heights = PlHeights::from_parts_unchecked(self.heights, self.clusters);
        heights.validate(&surface)?;
        Ok((surface, heights))
    }
}

/// Zig-zag triangulation between two vertex paths sharing their height gap.
/// The first and last rungs (a[0], b[0]) and (a[last], b[last]) are edges of
/// the result.
fn ladder(builder: &mut MeshBuilder, a: &[usize], b: &[usize]) {
    let (na, nb) = (a.len() - 1, b.len() - 1);
    let (mut i, mut j) = (0usize, 0usize);
    while i < na || j < nb {
        let advance_a = if j == nb {
            true
        } else if i == na {
            false
        } else {
            // Midpoint comparison keeps the zig-zag balanced; this matters
            // for wrapped chains whose two ends are the same vertex.
            (2 * i + 1) * nb <= (2 * j + 1) * na
        };
        if advance_a {
            builder.tri(a[i], a[i + 1], b[j]);
            i += 1;
        } else {
            builder.tri(a[i], b[j + 1], b[j]);
            j += 1;
        }
    }
}

/// Cyclic ladder: a prism tube between two rings.
fn tube(builder: &mut MeshBuilder, a: &[usize], b: &[usize]) {
    let (na, nb) = (a.len(), b.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < na || j < nb {
        let advance_a = if j == nb {
            true
        } else if i == na {
            false
        } else {
            (2 * i + 1) * nb <= (2 * j + 1) * na
        };
        if advance_a {
            builder.tri(a[i % na], a[(i + 1) % na], b[j % nb]);
            i += 1;
        } else {
            builder.tri(a[i % na], b[(j + 1) % nb], b[j % nb]);
            j += 1;
        }
    }
}

fn mu() -> BigRational {
    ratio(1, 4096)
}

/// Stagger step keeping all ring offsets of a block inside (0, 1/8), so
/// bottom rings stay below h - 1/8 and top rings above h + 1/8 no matter how
/// many rings and contacts a junction needs.
fn mu_for(rings: usize, ring_size: usize) -> BigRational {
    let max_code = (rings * 32 + ring_size) as i64;
    ratio(1, 4096 * (1 + max_code / 512))
}

fn quarter() -> BigRational {
    ratio(1, 4)
}

/// An interface ring: vertex indices in cyclic order.
type Ring = Vec<usize>;

fn bottom_ring(
    builder: &mut MeshBuilder,
    prefix: &str,
    r: usize,
    n: usize,
    h: &BigRational,
    step: &BigRational,
) -> Ring {
    (0..n)
        .map(|i| {
            let off = step * int((r * 32 + i) as i64);
            builder.vertex(format!("{prefix}.b{r}.{i}"), h - quarter() + off)
        })
        .collect()
}

fn top_ring(
    builder: &mut MeshBuilder,
    prefix: &str,
    r: usize,
    n: usize,
    h: &BigRational,
    step: &BigRational,
) -> Ring {
    (0..n)
        .map(|i| {
            let off = step * int((r * 32 + i) as i64);
            builder.vertex(format!("{prefix}.t{r}.{i}"), h + quarter() - off)
        })
        .collect()
}

/// Cone cap: an apex joined to its ring; realizes a degree-1 vertex.
fn cone(builder: &mut MeshBuilder, prefix: &str, h: &BigRational, minimum: bool) -> (usize, Ring) {
    let apex = builder.vertex(format!("{prefix}.apex"), h.clone());
    let step = mu();
    let ring = if minimum {
        top_ring(builder, prefix, 0, 8, h, &step)
    } else {
        bottom_ring(builder, prefix, 0, 8, h, &step)
    };
    for i in 0..8 {
        builder.tri(apex, ring[i], ring[(i + 1) % 8]);
    }
    (apex, ring)
}

/// Cross-cap block: one saddle taking one circle to one circle; realizes a
/// degree-2 vertex. The twisted second ladder makes it a Moebius-band-minus-
/// disk cobordism.
fn crosscap(builder: &mut MeshBuilder, prefix: &str, h: &BigRational) -> (usize, Ring, Ring) {
    let step = mu();
    let b = bottom_ring(builder, prefix, 0, 8, h, &step);
    let t = top_ring(builder, prefix, 0, 8, h, &step);
    let s = builder.vertex(format!("{prefix}.s"), h.clone());
    builder.clusters.push([s].into_iter().collect());
    builder.tri(s, b[0], t[0]);
    builder.tri(s, t[0], b[4]);
    builder.tri(s, b[4], t[4]);
    builder.tri(s, t[4], b[0]);
    ladder(builder, &[b[0], b[1], b[2], b[3], b[4]], &[t[0], t[1], t[2], t[3], t[4]]);
    ladder(builder, &[b[4], b[5], b[6], b[7], b[0]], &[t[0], t[7], t[6], t[5], t[4]]);
    (s, b, t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    X,
    Xp,
    Y,
    Yp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Contact {
    saddle: usize, // 1-based
    slot: Slot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Rung {
    bottom: Contact,
    top: Contact,
}

#[derive(Debug, Clone)]
struct LadderSpec {
    /// End rungs, in necklace order.
    ends: [Rung; 2],
}

/// Junction block for a vertex with in-degree p >= 1, out-degree q >= 1 and
/// p + q >= 3. Carries k = p + q - 2 simple saddles at height h, all inside
/// one level component; p bottom rings and q top rings.
///
/// Built from the necklace picture: the level set at h is a chain of k + 1
/// circles joined at the saddles. Consecutive circles share a bottom ring
/// (merge below) or a top ring (merge above); the surface between rings and
/// necklace decomposes into quadrilateral sheets triangulated as ladders.
fn junction(
    builder: &mut MeshBuilder,
    prefix: &str,
    h: &BigRational,
    p: usize,
    q: usize,
) -> (Vec<usize>, Vec<Ring>, Vec<Ring>) {
    let k = p + q - 2;
    assert!(k >= 1);
    let type_a = |i: usize| i < p; // saddle index, 1-based
    // Ring a contact lies on.
    let bottom_ring_of = |c: Contact| -> usize {
        match c.slot {
            Slot::X => {
                if type_a(c.saddle) {
                    c.saddle - 1
                } else {
                    p - 1
                }
            }
            Slot::Xp => {
                if type_a(c.saddle) {
                    c.saddle
                } else {
                    p - 1
                }
            }
            _ => unreachable!(),
        }
    };
    let top_ring_of = |c: Contact| -> usize {
        match c.slot {
            Slot::Y => {
                if type_a(c.saddle) {
                    0
                } else {
                    c.saddle - p
                }
            }
            Slot::Yp => {
                if type_a(c.saddle) {
                    0
                } else {
                    c.saddle - p + 1
                }
            }
            _ => unreachable!(),
        }
    };

    let contact = |i: usize, slot: Slot| Contact { saddle: i, slot };
    // Rungs owned by the lobe left/right of a saddle, split front/back.
    let left_front = |i: usize| -> Rung {
        if type_a(i) {
            Rung { bottom: contact(i, Slot::X), top: contact(i, Slot::Y) }
        } else {
            Rung { bottom: contact(i, Slot::Xp), top: contact(i, Slot::Y) }
        }
    };
    let left_back = |i: usize| -> Rung {
        if type_a(i) {
            Rung { bottom: contact(i, Slot::X), top: contact(i, Slot::Yp) }
        } else {
            Rung { bottom: contact(i, Slot::X), top: contact(i, Slot::Y) }
        }
    };
    let right_front = |i: usize| -> Rung {
        if type_a(i) {
            Rung { bottom: contact(i, Slot::Xp), top: contact(i, Slot::Y) }
        } else {
            Rung { bottom: contact(i, Slot::Xp), top: contact(i, Slot::Yp) }
        }
    };
    let right_back = |i: usize| -> Rung {
        if type_a(i) {
            Rung { bottom: contact(i, Slot::Xp), top: contact(i, Slot::Yp) }
        } else {
            Rung { bottom: contact(i, Slot::X), top: contact(i, Slot::Yp) }
        }
    };

    let mut ladders: Vec<LadderSpec> = Vec::new();
    for m in 0..=k {
        let sl = m; // left saddle s_m (if m >= 1)
        let sr = m + 1; // right saddle (if m <= k-1)
        if m == 0 {
            ladders.push(LadderSpec { ends: [left_front(sr), left_back(sr)] });
        } else if m == k {
            ladders.push(LadderSpec { ends: [right_front(sl), right_back(sl)] });
        } else {
            ladders.push(LadderSpec { ends: [right_front(sl), left_front(sr)] });
            ladders.push(LadderSpec { ends: [right_back(sl), left_back(sr)] });
        }
    }

    // Ring walks: at each contact exactly two ladder ends dock; alternating
    // contact -> ladder -> contact traces the ring's cyclic layout.
    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    struct Dock {
        ladder: usize,
        end: usize,
    }
    let walk_ring = |is_bottom: bool, ring: usize| -> Vec<(Contact, Dock)> {
        let mut docks: BTreeMap<Contact, Vec<Dock>> = BTreeMap::new();
        for (li, l) in ladders.iter().enumerate() {
            for (ei, rung) in l.ends.iter().enumerate() {
                let (c, on_ring) = if is_bottom {
                    (rung.bottom, bottom_ring_of(rung.bottom) == ring)
                } else {
                    (rung.top, top_ring_of(rung.top) == ring)
                };
                if on_ring {
                    docks.entry(c).or_default().push(Dock { ladder: li, end: ei });
                }
            }
        }
        for d in docks.values() {
            assert_eq!(d.len(), 2, "each contact carries two sheet ends");
        }
        let start = *docks.keys().next().expect("ring has contacts");
        let mut seq = Vec::new();
        let mut at = start;
        let mut via = docks[&at][0];
        loop {
            seq.push((at, via));
            // Cross the ladder to its other end on the same side.
            let other_end = 1 - via.end;
            let rung = &ladders[via.ladder].ends[other_end];
            let next = if is_bottom { rung.bottom } else { rung.top };
            let next_via_candidates = &docks[&next];
            let arrived = Dock { ladder: via.ladder, end: other_end };
            let leave = if next_via_candidates[0] == arrived {
                next_via_candidates[1]
            } else {
                next_via_candidates[0]
            };
            if next == start && leave == docks[&start][0] {
                break;
            }
            at = next;
            via = leave;
        }
        assert_eq!(seq.len(), docks.len(), "ring walk closes through all contacts");
        seq
    };

    // Materialize rings and the chains each ladder side gets.
    let mut bottom_rings: Vec<Ring> = Vec::new();
    let mut top_rings: Vec<Ring> = Vec::new();
    let mut contact_vertex: BTreeMap<Contact, usize> = BTreeMap::new();
    // (ladder, side 0=bottom 1=top) -> (path, from-contact)
    let mut chains: BTreeMap<(usize, usize), (Vec<usize>, Contact)> = BTreeMap::new();
    for is_bottom in [true, false] {
        let rings = if is_bottom { p } else { q };
        for r in 0..rings {
            let seq = walk_ring(is_bottom, r);
            let c = seq.len();
            let n = 8usize.max(c);
            let step = mu_for(p.max(q), n);
            let ring = if is_bottom {
                bottom_ring(builder, prefix, r, n, h, &step)
            } else {
                top_ring(builder, prefix, r, n, h, &step)
            };
            let pos: Vec<usize> = (0..c).map(|i| i * n / c).collect();
            for (i, (contact, _)) in seq.iter().enumerate() {
                contact_vertex.insert(*contact, ring[pos[i]]);
            }
            for (i, (_, dock)) in seq.iter().enumerate() {
                let from = pos[i];
                let to = pos[(i + 1) % c];
                let mut path = Vec::new();
                let mut idx = from;
                loop {
                    path.push(ring[idx % n]);
                    if idx % n == to && (path.len() > 1 || c > 1) {
                        break;
                    }
                    idx += 1;
                    if path.len() > n + 1 {
                        break;
                    }
                }
                if c == 1 {
                    // Full wrap back to the single contact.
                    path = (0..=n).map(|i| ring[(from + i) % n]).collect();
                }
                let side = if is_bottom { 0 } else { 1 };
                chains.insert((dock.ladder, side), (path, seq[i].0));
            }
            if is_bottom {
                bottom_rings.push(ring);
            } else {
                top_rings.push(ring);
            }
        }
    }

    // Saddles and their stars.
    let mut saddles = Vec::new();
    let mut cluster = BTreeSet::new();
    for i in 1..=k {
        let s = builder.vertex(format!("{prefix}.s{i}"), h.clone());
        cluster.insert(s);
        saddles.push(s);
        let x = contact_vertex[&contact(i, Slot::X)];
        let y = contact_vertex[&contact(i, Slot::Y)];
        let xp = contact_vertex[&contact(i, Slot::Xp)];
        let yp = contact_vertex[&contact(i, Slot::Yp)];
        builder.tri(s, x, y);
        builder.tri(s, y, xp);
        builder.tri(s, xp, yp);
        builder.tri(s, yp, x);
    }
    builder.clusters.push(cluster);

    // Sheet ladders.
    for (li, l) in ladders.iter().enumerate() {
        let (bpath, bfrom) = chains[&(li, 0)].clone();
        let (tpath, tfrom) = chains[&(li, 1)].clone();
        // Orient both chains from end 0 to end 1.
        let want_b = l.ends[0].bottom;
        let want_t = l.ends[0].top;
        let mut bp = bpath;
        if bfrom != want_b && l.ends[0].bottom != l.ends[1].bottom {
            bp.reverse();
        }
        let mut tp = tpath;
        if tfrom != want_t && l.ends[0].top != l.ends[1].top {
            tp.reverse();
        }
        ladder(builder, &bp, &tp);
    }

    (saddles, bottom_rings, top_rings)
}

/// Realize a good digraph as a surface-with-heights whose Reeb digraph is
/// isomorphic to it.
pub fn realize(w: &ReebDigraph) -> Result<Realization, RealizeError> {
    let report = w.validate_good_digraph();
    if !report.is_good {
        return Err(RealizeError::NotGood(Box::new(report)));
    }
    if w.edge_count() == 0 {
        return Err(RealizeError::NoEdges);
    }
    let layer = w.height_assignment().expect("validated above");

    let mut builder = MeshBuilder::new();
    let mut placement = Placement::default();
    // Ring made available by each block for each incident edge.
    let mut lower_ring: BTreeMap<EdgeId, Ring> = BTreeMap::new();
    let mut upper_ring: BTreeMap<EdgeId, Ring> = BTreeMap::new();

    for v in w.vertices() {
        let h = &layer[v];
        let prefix = format!("{v}");
        let ins: Vec<EdgeId> = w
            .edges()
            .filter(|(_, e)| &e.dst == v)
            .map(|(id, _)| id.clone())
            .collect();
        let outs: Vec<EdgeId> = w
            .edges()
            .filter(|(_, e)| &e.src == v)
            .map(|(id, _)| id.clone())
            .collect();
        let (p, q) = (ins.len(), outs.len());
        match (p, q) {
            (0, 1) => {
                let (apex, ring) = cone(&mut builder, &prefix, h, true);
                upper_ring.insert(outs[0].clone(), ring);
                placement
                    .vertex_criticals
                    .insert(v.clone(), vec![builder.ids[apex].clone()]);
            }
            (1, 0) => {
                let (apex, ring) = cone(&mut builder, &prefix, h, false);
                lower_ring.insert(ins[0].clone(), ring);
                placement
                    .vertex_criticals
                    .insert(v.clone(), vec![builder.ids[apex].clone()]);
            }
            (1, 1) => {
                let (s, b, t) = crosscap(&mut builder, &prefix, h);
                lower_ring.insert(ins[0].clone(), b);
                upper_ring.insert(outs[0].clone(), t);
                placement
                    .vertex_criticals
                    .insert(v.clone(), vec![builder.ids[s].clone()]);
            }
            (p, q) => {
                let (saddles, brings, trings) = junction(&mut builder, &prefix, h, p, q);
                for (r, e) in ins.iter().enumerate() {
                    lower_ring.insert(e.clone(), brings[r].clone());
                }
                for (r, e) in outs.iter().enumerate() {
                    upper_ring.insert(e.clone(), trings[r].clone());
                }
                placement.vertex_criticals.insert(
                    v.clone(),
                    saddles.iter().map(|&s| builder.ids[s].clone()).collect(),
                );
            }
        }
    }

    for (eid, _) in w.edges() {
        let lo = upper_ring
            .remove(eid)
            .expect("every edge leaves its source block");
        let hi = lower_ring
            .remove(eid)
            .expect("every edge enters its target block");
        placement
            .edge_rings
            .insert(eid.clone(), lo.iter().map(|&i| builder.ids[i].clone()).collect());
        tube(&mut builder, &lo, &hi);
    }

    let (surface, heights) = builder.finish()?;
    Ok(Realization {
        surface,
        heights,
        placement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::isomorphism;
    use crate::plmorse::census;
    use crate::sweep::pl_reeb;

    fn check_roundtrip(w: &ReebDigraph) -> Realization {
        let r = realize(w).unwrap();
        let out = pl_reeb(&r.surface, &r.heights).unwrap();
        assert!(
            isomorphism(&out.graph.without_heights(), &w.without_heights()).is_some(),
            "round-trip failed: swept {:?} from {:?}",
            out.graph,
            w
        );
        r
    }

    #[test]
    fn single_edge_realizes_as_a_sphere() {
        let w = ReebDigraph::from_edges(&["u", "v"], &[("e", "u", "v")]).unwrap();
        let r = check_roundtrip(&w);
        assert_eq!(r.surface.euler_characteristic(), 2);
        assert!(r.surface.is_orientable());
    }

    #[test]
    fn theta_chain_realizes_as_a_torus() {
        let w = ReebDigraph::from_edges(
            &["a", "b", "c", "d"],
            &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "b", "c"), ("e4", "c", "d")],
        )
        .unwrap();
        let r = check_roundtrip(&w);
        assert_eq!(r.surface.euler_characteristic(), 0);
        assert!(r.surface.is_orientable());
        assert_eq!(r.placement.vertex_criticals[&VertexId::from("b")].len(), 1);
        assert_eq!(r.placement.vertex_criticals[&VertexId::from("c")].len(), 1);
    }

    #[test]
    fn x_graph_realizes_as_a_sphere_with_a_two_saddle_cluster() {
        let w = ReebDigraph::from_edges(
            &["a", "b", "w", "c", "d"],
            &[("e1", "a", "w"), ("e2", "b", "w"), ("e3", "w", "c"), ("e4", "w", "d")],
        )
        .unwrap();
        let r = check_roundtrip(&w);
        assert_eq!(r.surface.euler_characteristic(), 2);
        assert_eq!(r.placement.vertex_criticals[&VertexId::from("w")].len(), 2);
        let c = census(&r.surface, &r.heights).unwrap();
        assert_eq!(c.minima, 2);
        assert_eq!(c.maxima, 2);
        assert_eq!(c.saddle_multiplicity_sum, 2);
    }

    #[test]
    fn degree2_vertex_realizes_nonorientably() {
        let w = ReebDigraph::from_edges(&["u", "v", "x"], &[("e1", "u", "v"), ("e2", "v", "x")]).unwrap();
        let r = check_roundtrip(&w);
        assert!(!r.surface.is_orientable());
        assert_eq!(r.surface.euler_characteristic(), 1);
        assert_eq!(r.placement.vertex_criticals[&VertexId::from("v")].len(), 1);
    }

    #[test]
    fn gs_counts_hold_on_realizations() {
        // Each degree-d vertex carries exactly d - 2 saddles (d >= 3), each
        // degree-2 vertex exactly 1.
        let w = ReebDigraph::from_edges(
            &["a", "b", "m", "c", "d", "e"],
            &[
                ("e1", "a", "m"),
                ("e2", "b", "m"),
                ("e3", "m", "c"),
                ("e4", "m", "d"),
                ("e5", "m", "e"),
            ],
        )
        .unwrap();
        let r = check_roundtrip(&w);
        assert_eq!(r.placement.vertex_criticals[&VertexId::from("m")].len(), 3);
        // All three saddles at one level in one cluster.
        let out = pl_reeb(&r.surface, &r.heights).unwrap();
        let big = out
            .graph
            .vertices()
            .find(|v| out.graph.degree(v) == 5)
            .unwrap()
            .clone();
        assert_eq!(out.vertex_info[&big].critical_vertices.len(), 3);
    }

    #[test]
    fn wide_junction_realizes() {
        // Degree 8: (4, 4) junction, 6 saddles in one cluster.
        let mut verts = vec!["m"];
        let mut edges = Vec::new();
        for i in 0..4 {
            verts.push(Box::leak(format!("i{i}").into_boxed_str()));
            verts.push(Box::leak(format!("o{i}").into_boxed_str()));
        }
        for i in 0..4 {
            edges.push((
                Box::leak(format!("a{i}").into_boxed_str()) as &str,
                Box::leak(format!("i{i}").into_boxed_str()) as &str,
                "m",
            ));
            edges.push((
                Box::leak(format!("b{i}").into_boxed_str()) as &str,
                "m",
                Box::leak(format!("o{i}").into_boxed_str()) as &str,
            ));
        }
        let w = ReebDigraph::from_edges(&verts, &edges).unwrap();
        let r = check_roundtrip(&w);
        assert_eq!(r.placement.vertex_criticals[&VertexId::from("m")].len(), 6);
    }

    #[test]
    fn junction_rings_grow_past_eight_when_needed() {
        // A (1, 9) vertex forces 16 saddle contacts onto one bottom ring.
        let mut verts = vec!["m".to_string(), "src".to_string()];
        let mut edges = vec![("a".to_string(), "src".to_string(), "m".to_string())];
        for i in 0..9 {
            verts.push(format!("o{i}"));
            edges.push((format!("b{i}"), "m".to_string(), format!("o{i}")));
        }
        let vrefs: Vec<&str> = verts.iter().map(|s| s.as_str()).collect();
        let erefs: Vec<(&str, &str, &str)> = edges
            .iter()
            .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
            .collect();
        let w = ReebDigraph::from_edges(&vrefs, &erefs).unwrap();
        let r = check_roundtrip(&w);
        assert_eq!(r.placement.vertex_criticals[&VertexId::from("m")].len(), 8);
    }

    #[test]
    fn realize_rejects_bad_inputs() {
        let cyclic =
            ReebDigraph::from_edges(&["u", "v"], &[("e1", "u", "v"), ("e2", "v", "u")]).unwrap();
        assert!(matches!(realize(&cyclic), Err(RealizeError::NotGood(_))));
        let point = ReebDigraph::new(vec![VertexId::from("u")], vec![], None).unwrap();
        assert!(matches!(realize(&point), Err(RealizeError::NoEdges)));
    }
}
