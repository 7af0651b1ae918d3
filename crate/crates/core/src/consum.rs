//! Simplicial connected sum of two surfaces-with-heights.
//!
//! The surgery removes a two-triangle regular strip around a crossing edge
//! on each side (after value-preserving rescaling that puts the chosen Reeb
//! points at 1/2) and bridges the two quad holes with twelve fresh
//! triangles containing two new saddles, both at exactly 1/2. The result's
//! levels strictly below (or above) 1/2 keep the two sides separate, so the
//! swept Reeb digraph of the output is the wedge of the inputs' digraphs at
//! the chosen points, with the pair of new saddles joining any critical
//! points already at the chosen levels to form the wedge vertex's cluster.

use crate::digraph::{rescale_value, PointSpec};
use crate::error::ConsumError;
use crate::mesh::{edge_key, MeshVertexId, PlHeights, TriSurface};
use crate::plmorse::census;
use crate::rational::{int, mid, ratio};
use crate::sweep::pl_reeb;
use num_rational::BigRational;
use std::collections::BTreeSet;

/// A minimal regular strip: one crossing mesh edge together with its two
/// flanking triangles, an embedded band crossing the selected Reeb point's
/// level component and projecting over the window.
#[derive(Debug, Clone)]
pub struct RegularStrip {
    /// Crossing edge endpoints (low, high), as mesh vertex indices.
    pub core: (usize, usize),
    /// Apexes of the two flanking triangles.
    pub apexes: (usize, usize),
    /// Height window the strip serves, containing the point value.
    pub window: (BigRational, BigRational),
    /// The Reeb point the strip crosses, on the swept digraph of the mesh.
    pub point: PointSpec,
    /// Height of the chosen point.
    pub value: BigRational,
}

/// Strip search result: the (possibly refined) mesh and the strip on it.
#[derive(Debug, Clone)]
pub struct StripSearch {
    pub surface: TriSurface,
    pub heights: PlHeights,
    pub strip: RegularStrip,
    pub refinement_rounds: usize,
}

const MAX_REFINEMENT_ROUNDS: usize = 3;

/// Editable mesh for the surgery steps.
#[derive(Debug, Clone)]
struct EditMesh {
    ids: Vec<MeshVertexId>,
    heights: Vec<BigRational>,
    tris: Vec<[usize; 3]>,
    clusters: Vec<BTreeSet<usize>>,
}

impl EditMesh {
    fn from(surface: &TriSurface, heights: &PlHeights) -> Self {
        EditMesh {
            ids: surface.ids().to_vec(),
            heights: heights.values.to_vec(),
            tris: surface.triangles().to_vec(),
            clusters: heights.clusters.clone(),
        }
    }

    fn fresh_id(&self, stem: &str) -> MeshVertexId {
        let taken: BTreeSet<&str> = self.ids.iter().map(|i| i.0.as_str()).collect();
        if !taken.contains(stem) {
            return MeshVertexId(stem.to_string());
        }
        for k in 1.. {
            let cand = format!("{stem}{k}");
            if !taken.contains(cand.as_str()) {
                return MeshVertexId(cand);
            }
        }
        unreachable!()
    }

    fn add_vertex(&mut self, stem: &str, h: BigRational) -> usize {
        let id = self.fresh_id(stem);
        self.ids.push(id);
        self.heights.push(h);
        self.ids.len() - 1
    }

    fn flanks_of(&self, a: usize, b: usize) -> Vec<usize> {
        self.tris
            .iter()
            .enumerate()
            .filter(|(_, t)| t.contains(&a) && t.contains(&b))
            .map(|(i, _)| i)
            .collect()
    }

    /// Split edge (a, b) at the point of height `h`, retriangulating both
    /// flanking triangles. Returns the new vertex.
    fn subdivide_edge(&mut self, a: usize, b: usize, h: BigRational, stem: &str) -> usize {
        let w = self.add_vertex(stem, h);
        let flanks = self.flanks_of(a, b);
        assert_eq!(flanks.len(), 2);
        // Remove in reverse index order.
        let mut new_tris = Vec::new();
        for &fi in &flanks {
            let t = self.tris[fi];
            let c = *t.iter().find(|&&v| v != a && v != b).unwrap();
            new_tris.push([a, w, c]);
            new_tris.push([w, b, c]);
        }
        let drop: BTreeSet<usize> = flanks.into_iter().collect();
        self.tris = self
            .tris
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, t)| *t)
            .collect();
        self.tris.extend(new_tris);
        w
    }

    /// Insert an interior vertex into a triangle at height `h`.
    fn insert_into_triangle(&mut self, tri_idx: usize, h: BigRational, stem: &str) -> usize {
        let m = self.add_vertex(stem, h);
        let [a, b, c] = self.tris[tri_idx];
        self.tris.swap_remove(tri_idx);
        self.tris.push([a, b, m]);
        self.tris.push([b, c, m]);
        self.tris.push([c, a, m]);
        m
    }

    fn remove_triangle(&mut self, a: usize, b: usize, c: usize) {
        let want: BTreeSet<usize> = [a, b, c].into_iter().collect();
        let pos = self
            .tris
            .iter()
            .position(|t| t.iter().copied().collect::<BTreeSet<_>>() == want)
            .expect("triangle present");
        self.tris.swap_remove(pos);
    }

    fn finish(self) -> Result<(TriSurface, PlHeights), ConsumError> {
        let surface = TriSurface::from_parts_checked(self.ids, self.tris)?;
        let heights = PlHeights::from_parts_unchecked(self.heights, self.clusters);
        heights.validate(&surface)?;
        Ok((surface, heights))
    }
}

/// Find a two-triangle regular strip crossing the given Reeb point of the
/// swept digraph of (surface, heights), spanning the window. Refines the
/// mesh (interior insertions displacing critical flank apexes) up to a
/// bounded number of rounds.
pub fn find_regular_strip(
    surface: &TriSurface,
    heights: &PlHeights,
    point: &PointSpec,
    window: (BigRational, BigRational),
) -> Result<StripSearch, ConsumError> {
    let (l, u) = window;
    if l >= u {
        return Err(ConsumError::BadWindow(
            crate::rational::format_rational(&l),
            crate::rational::format_rational(&u),
        ));
    }
    let mut surface = surface.clone();
    let mut heights = heights.clone();
    let mut last_reason = String::from("no crossing edge spans the window");
    for round in 0..=MAX_REFINEMENT_ROUNDS {
        let sweep = pl_reeb(&surface, &heights).map_err(ConsumError::Mesh)?;
        let (value, crossings) = sweep
            .crossing_edges_at(&surface, &heights, point)
            .ok_or(ConsumError::UnknownReebPoint)?;
        if !(l < value && value < u) {
            return Err(ConsumError::BadWindow(
                crate::rational::format_rational(&l),
                crate::rational::format_rational(&u),
            ));
        }
        let cls = census(&surface, &heights).map_err(ConsumError::Mesh)?;
        let spanning: Vec<(usize, usize)> = crossings
            .iter()
            .copied()
            .map(|(x, y)| {
                if heights.value(x) < heights.value(y) {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .filter(|(a, b)| heights.value(*a) < &l && &u < heights.value(*b))
            .collect();
        if spanning.is_empty() {
            last_reason = "no crossing edge spans the window".into();
        }
        // Prefer a strip whose four corners are all regular.
        let edge_tris = surface.edge_triangles();
        let mut fix_candidate: Option<(usize, usize)> = None;
        for (a, b) in &spanning {
            let flank_tris = &edge_tris[&edge_key(*a, *b)];
            let apexes: Vec<usize> = flank_tris
                .iter()
                .map(|&ti| {
                    *surface.triangles()[ti]
                        .iter()
                        .find(|&&v| v != *a && v != *b)
                        .unwrap()
                })
                .collect();
            let clean = apexes.iter().all(|&c| !cls.classes[c].is_critical())
                && !cls.classes[*a].is_critical()
                && !cls.classes[*b].is_critical();
            if clean {
                return Ok(StripSearch {
                    strip: RegularStrip {
                        core: (*a, *b),
                        apexes: (apexes[0], apexes[1]),
                        window: (l, u),
                        point: point.clone(),
                        value,
                    },
                    surface,
                    heights,
                    refinement_rounds: round,
                });
            }
            fix_candidate = Some((*a, *b));
            last_reason = "every spanning edge touches a critical vertex".into();
        }
        // Refinement: critical endpoints are cut off the core edge by
        // subdividing it inside the regular range; critical apexes are
        // displaced by an interior insertion into the offending flank.
        if round == MAX_REFINEMENT_ROUNDS {
            break;
        }
        let Some((a, b)) = fix_candidate else { break };
        let mut edit = EditMesh::from(&surface, &heights);
        let (mut a, mut b) = (a, b);
        if cls.classes[a].is_critical() {
            let forbidden: Vec<BigRational> = edit
                .flanks_of(a, b)
                .iter()
                .map(|&fi| {
                    let t = edit.tris[fi];
                    let c = *t.iter().find(|&&v| v != a && v != b).unwrap();
                    edit.heights[c].clone()
                })
                .collect();
            let mut hm = mid(&edit.heights[a], &l);
            while forbidden.contains(&hm) {
                hm = mid(&hm, &l);
            }
            a = edit.subdivide_edge(a, b, hm, "cut");
        }
        if cls.classes[b].is_critical() {
            let forbidden: Vec<BigRational> = edit
                .flanks_of(a, b)
                .iter()
                .map(|&fi| {
                    let t = edit.tris[fi];
                    let c = *t.iter().find(|&&v| v != a && v != b).unwrap();
                    edit.heights[c].clone()
                })
                .collect();
            let mut hm = mid(&u, &edit.heights[b]);
            while forbidden.contains(&hm) {
                hm = mid(&u, &hm);
            }
            b = edit.subdivide_edge(a, b, hm, "cut");
        }
        let flanks = edit.flanks_of(a, b);
        for fi in flanks.into_iter().rev() {
            let t = edit.tris[fi];
            let c = *t.iter().find(|&&v| v != a && v != b).unwrap();
            if !cls.classes.get(c).is_some_and(|cl| cl.is_critical()) {
                continue;
            }
            // Height strictly between the edge endpoints, distinct from the
            // apex and everything else relevant.
            let (ha, hb) = (edit.heights[a].clone(), edit.heights[b].clone());
            let mut hm = mid(&ha, &hb);
            let hc = edit.heights[c].clone();
            while hm == hc || hm == l || hm == u || hm == value {
                hm = mid(&ha, &hm);
            }
            edit.insert_into_triangle(fi, hm, "fix");
        }
        let (s2, h2) = edit.finish()?;
        surface = s2;
        heights = h2;
    }
    Err(ConsumError::NoStrip(MAX_REFINEMENT_ROUNDS, last_reason))
}

impl TriSurface {
    pub(crate) fn from_parts_checked(
        ids: Vec<MeshVertexId>,
        tris: Vec<[usize; 3]>,
    ) -> Result<Self, crate::error::MeshError> {
        let id_clones: Vec<[MeshVertexId; 3]> = tris
            .iter()
            .map(|t| [ids[t[0]].clone(), ids[t[1]].clone(), ids[t[2]].clone()])
            .collect();
        TriSurface::new(ids, id_clones)
    }
}

/// Gluing orientation: which corner of the second hole pairs with the first
/// hole's lower-apex corner. Exchanging it reglues the same surfaces with
/// the opposite identification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Gluing {
    #[default]
    Preserve,
    Reverse,
}

#[derive(Debug, Clone)]
pub struct ConsumResult {
    pub surface: TriSurface,
    pub heights: PlHeights,
    /// The two new saddles at the gluing level 1/2.
    pub new_saddles: (MeshVertexId, MeshVertexId),
}

struct SidePrep {
    edit: EditMesh,
    u: usize,
    v: usize,
    m_low: usize,
    m_high: usize,
}

/// Rescale one side onto [0, 1] with the strip point at 1/2 and carve out
/// the strip, leaving a quad hole (u, m_low, v, m_high).
fn prepare_side(
    surface: &TriSurface,
    heights: &PlHeights,
    strip: &RegularStrip,
    delta: &BigRational,
) -> SidePrep {
    let min = heights.values.iter().min().unwrap().clone();
    let max = heights.values.iter().max().unwrap().clone();
    let mut edit = EditMesh::from(surface, heights);
    for h in edit.heights.iter_mut() {
        *h = rescale_value(h, &min, &strip.value, &max);
    }
    let (a, b) = strip.core;
    let half = ratio(1, 2);
    let u = edit.subdivide_edge(a, b, &half - delta, "cu");
    let v = edit.subdivide_edge(u, b, &half + delta, "cv");
    // Flanks of (u, v) still have the original apexes.
    let flanks = edit.flanks_of(u, v);
    assert_eq!(flanks.len(), 2);
    let apex_of = |edit: &EditMesh, fi: usize| -> usize {
        *edit.tris[fi].iter().find(|&&x| x != u && x != v).unwrap()
    };
    let half_delta = delta / int(2);
    // Insert into one flank, then re-find the other by its surviving apex
    // (insertion renumbers triangles).
    let other_apex = apex_of(&edit, flanks[0].min(flanks[1]));
    let m_low = edit.insert_into_triangle(flanks[0].max(flanks[1]), &half - &half_delta, "cm");
    let second = edit
        .flanks_of(u, v)
        .into_iter()
        .find(|&fi| apex_of(&edit, fi) == other_apex)
        .expect("second flank");
    let m_high = edit.insert_into_triangle(second, &half + &half_delta, "cn");
    edit.remove_triangle(u, v, m_low);
    edit.remove_triangle(u, v, m_high);
    SidePrep {
        edit,
        u,
        v,
        m_low,
        m_high,
    }
}

/// Glue two prepared sides along their quad holes, inserting the two new
/// saddles s and t at exactly 1/2.
pub fn connected_sum_surfaces(
    surface1: &TriSurface,
    heights1: &PlHeights,
    strip1: &RegularStrip,
    surface2: &TriSurface,
    heights2: &PlHeights,
    strip2: &RegularStrip,
    gluing: Gluing,
) -> Result<ConsumResult, ConsumError> {
    let half = ratio(1, 2);
    // Rescaled windows and core spans must overlap around 1/2.
    let resc = |heights: &PlHeights, strip: &RegularStrip, x: &BigRational| -> BigRational {
        let min = heights.values.iter().min().unwrap();
        let max = heights.values.iter().max().unwrap();
        rescale_value(x, min, &strip.value, max)
    };
    let mut lo = int(0);
    let mut hi = int(1);
    for (surface, heights, strip) in [
        (surface1, heights1, strip1),
        (surface2, heights2, strip2),
    ] {
        let _ = surface;
        let (a, b) = strip.core;
        let cand_lo = resc(heights, strip, &strip.window.0)
            .max(resc(heights, strip, heights.value(a)));
        let cand_hi = resc(heights, strip, &strip.window.1)
            .min(resc(heights, strip, heights.value(b)));
        lo = lo.max(cand_lo);
        hi = hi.min(cand_hi);
    }
    if !(lo < half && half < hi) {
        return Err(ConsumError::WindowMismatch);
    }
    let mut delta = (&hi - &lo).min((&half - &lo).min(&hi - &half)) / int(2);
    // Dodge collisions between the four surgery levels and the strip apexes.
    let apex_levels: Vec<BigRational> = [
        (heights1, strip1, strip1.apexes.0),
        (heights1, strip1, strip1.apexes.1),
        (heights2, strip2, strip2.apexes.0),
        (heights2, strip2, strip2.apexes.1),
    ]
    .into_iter()
    .map(|(h, s, c)| resc(h, s, h.value(c)))
    .collect();
    for _ in 0..128 {
        let levels = [
            &half - &delta,
            &half - &delta / int(2),
            &half + &delta / int(2),
            &half + &delta,
        ];
        if levels.iter().all(|lv| !apex_levels.contains(lv)) {
            break;
        }
        delta /= int(2);
    }

    let prep1 = prepare_side(surface1, heights1, strip1, &delta);
    let prep2 = prepare_side(surface2, heights2, strip2, &delta);

    // Union: append side 2 with renamed ids where they collide.
    let mut edit = prep1.edit;
    let offset = edit.ids.len();
    let taken: BTreeSet<String> = edit.ids.iter().map(|i| i.0.clone()).collect();
    for id in &prep2.edit.ids {
        let name = if taken.contains(&id.0) {
            let mut k = 2;
            loop {
                let cand = format!("{}_{k}", id.0);
                if !taken.contains(&cand) && !edit.ids.iter().any(|i| i.0 == cand) {
                    break cand;
                }
                k += 1;
            }
        } else {
            id.0.clone()
        };
        edit.ids.push(MeshVertexId(name));
    }
    edit.heights.extend(prep2.edit.heights.iter().cloned());
    for t in &prep2.edit.tris {
        edit.tris.push([t[0] + offset, t[1] + offset, t[2] + offset]);
    }
    for cl in &prep2.edit.clusters {
        edit.clusters.push(cl.iter().map(|&v| v + offset).collect());
    }

    let (u1, v1, m1, n1) = (prep1.u, prep1.v, prep1.m_low, prep1.m_high);
    let (u2, v2) = (prep2.u + offset, prep2.v + offset);
    let (mut m2, mut n2) = (prep2.m_low + offset, prep2.m_high + offset);
    if gluing == Gluing::Reverse {
        std::mem::swap(&mut m2, &mut n2);
    }

    let s = edit.add_vertex("cs", half.clone());
    let t = edit.add_vertex("ct", half.clone());
    edit.clusters.push([s, t].into_iter().collect());
    // Bridge: s sees the low corners, t the high ones.
    for (x, a, b, c, d, e, f) in [(s, u1, m1, v1, u2, m2, v2), (t, u1, n1, v1, u2, n2, v2)] {
        edit.tri(x, a, b);
        edit.tri(x, b, c);
        edit.tri(x, c, d);
        edit.tri(x, d, e);
        edit.tri(x, e, f);
        edit.tri(x, f, a);
    }

    let chi_expected =
        surface1.euler_characteristic() + surface2.euler_characteristic() - 2;
    let s_id = edit.ids[s].clone();
    let t_id = edit.ids[t].clone();
    let (surface, heights) = edit.finish()?;
    debug_assert_eq!(surface.euler_characteristic(), chi_expected);
    Ok(ConsumResult {
        surface,
        heights,
        new_saddles: (s_id, t_id),
    })
}

impl EditMesh {
    fn tri(&mut self, a: usize, b: usize, c: usize) {
        self.tris.push([a, b, c]);
    }
}

/// A window around the point value that stays clear of every other vertex
/// height on the mesh: convenient default for strip searches.
pub fn tight_window(
    heights: &PlHeights,
    value: &BigRational,
) -> (BigRational, BigRational) {
    let mut below: Option<&BigRational> = None;
    let mut above: Option<&BigRational> = None;
    for h in &heights.values {
        if h < value && below.is_none_or(|b| h > b) {
            below = Some(h);
        }
        if h > value && above.is_none_or(|a| h < a) {
            above = Some(h);
        }
    }
    let lo = match below {
        Some(b) => mid(&mid(b, value), value),
        None => value - ratio(1, 16),
    };
    let hi = match above {
        Some(a) => mid(value, &mid(value, a)),
        None => value + ratio(1, 16),
    };
    (lo, hi)
}
