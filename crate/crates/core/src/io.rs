//! Canonical serialization: graph, embedding, mesh and annotation documents
//! as versioned JSON, plus DOT export.
//!
//! Parsing is strict by default (unknown fields are errors); a lax mode
//! tolerates them. Serialization is canonical: elements sorted by id,
//! rationals in lowest terms, byte-stable output.

use crate::digraph::{EdgeId, PointSpec, ReebDigraph, VertexId};
use crate::mesh::{MeshVertexId, PlHeights, TriSurface};
use crate::rational::{format_rational, parse_rational};
use crate::surgery::{EmbeddingMap, GsAnnotation};
use num_rational::BigRational;
use serde_json::{Map, Value};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("syntax error at line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("unknown field {field:?} in {context}")]
    UnknownField { field: String, context: String },
    #[error("{context}: expected {expected}")]
    Shape { context: String, expected: String },
    #[error("document kind is {found:?}, expected {expected:?}")]
    WrongKind { expected: String, found: String },
    #[error("unsupported document version {0}")]
    Version(i64),
    #[error("{element}: {msg}")]
    Semantic { element: String, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    #[default]
    Strict,
    Lax,
}

fn semantic(element: impl Into<String>, msg: impl Into<String>) -> IoError {
    IoError::Semantic {
        element: element.into(),
        msg: msg.into(),
    }
}

fn parse_value(text: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Syntax {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })
}

fn as_object<'a>(v: &'a Value, context: &str) -> Result<&'a Map<String, Value>, IoError> {
    v.as_object().ok_or_else(|| IoError::Shape {
        context: context.into(),
        expected: "an object".into(),
    })
}

fn as_array<'a>(v: &'a Value, context: &str) -> Result<&'a Vec<Value>, IoError> {
    v.as_array().ok_or_else(|| IoError::Shape {
        context: context.into(),
        expected: "an array".into(),
    })
}

fn as_str<'a>(v: &'a Value, context: &str) -> Result<&'a str, IoError> {
    v.as_str().ok_or_else(|| IoError::Shape {
        context: context.into(),
        expected: "a string".into(),
    })
}

fn check_fields(
    obj: &Map<String, Value>,
    allowed: &[&str],
    context: &str,
    mode: ParseMode,
) -> Result<(), IoError> {
    if mode == ParseMode::Lax {
        return Ok(());
    }
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(IoError::UnknownField {
                field: key.clone(),
                context: context.into(),
            });
        }
    }
    Ok(())
}

fn check_header(obj: &Map<String, Value>, kind: &str) -> Result<(), IoError> {
    let found = obj.get("kind").and_then(|v| v.as_str()).unwrap_or("");
    if found != kind {
        return Err(IoError::WrongKind {
            expected: kind.into(),
            found: found.into(),
        });
    }
    let version = obj.get("version").and_then(|v| v.as_i64()).unwrap_or(0);
    if version != 1 {
        return Err(IoError::Version(version));
    }
    Ok(())
}

fn rational_field(v: &Value, context: &str) -> Result<BigRational, IoError> {
    let s = as_str(v, context)?;
    parse_rational(s).map_err(|msg| semantic(context, msg))
}

// ---------------------------------------------------------------------------
// Graph documents (.reeb.json)
// ---------------------------------------------------------------------------

pub fn parse_graph(text: &str, mode: ParseMode) -> Result<ReebDigraph, IoError> {
    let value = parse_value(text)?;
    let obj = as_object(&value, "graph document")?;
    check_header(obj, "graph")?;
    check_fields(obj, &["kind", "version", "vertices", "edges"], "graph document", mode)?;

    let mut vertices = Vec::new();
    let mut heights: BTreeMap<VertexId, BigRational> = BTreeMap::new();
    let mut any_height = false;
    for v in as_array(
        obj.get("vertices")
            .ok_or_else(|| semantic("graph document", "missing \"vertices\""))?,
        "vertices",
    )? {
        let vo = as_object(v, "vertex")?;
        check_fields(vo, &["id", "height"], "vertex", mode)?;
        let id = VertexId(
            as_str(
                vo.get("id").ok_or_else(|| semantic("vertex", "missing \"id\""))?,
                "vertex id",
            )?
            .to_string(),
        );
        if let Some(h) = vo.get("height") {
            heights.insert(id.clone(), rational_field(h, &format!("height of {id}"))?);
            any_height = true;
        }
        vertices.push(id);
    }
    let mut edges = Vec::new();
    for e in as_array(
        obj.get("edges")
            .ok_or_else(|| semantic("graph document", "missing \"edges\""))?,
        "edges",
    )? {
        let eo = as_object(e, "edge")?;
        check_fields(eo, &["id", "src", "dst"], "edge", mode)?;
        let get = |k: &str| -> Result<String, IoError> {
            Ok(as_str(
                eo.get(k)
                    .ok_or_else(|| semantic("edge", format!("missing {k:?}")))?,
                k,
            )?
            .to_string())
        };
        edges.push((
            EdgeId(get("id")?),
            VertexId(get("src")?),
            VertexId(get("dst")?),
        ));
    }
    let heights = if any_height { Some(heights) } else { None };
    ReebDigraph::new(vertices, edges, heights)
        .map_err(|e| semantic("graph document", e.to_string()))
}

pub fn serialize_graph(g: &ReebDigraph) -> String {
    let mut out = String::new();
    out.push_str("{\n  \"kind\": \"graph\",\n  \"version\": 1,\n  \"vertices\": [\n");
    let verts: Vec<&VertexId> = g.vertices().collect();
    for (i, v) in verts.iter().enumerate() {
        out.push_str("    {\"id\": ");
        out.push_str(&json_string(&v.0));
        if let Some(h) = g.height(v) {
            out.push_str(", \"height\": ");
            out.push_str(&json_string(&format_rational(h)));
        }
        out.push('}');
        if i + 1 < verts.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  ],\n  \"edges\": [\n");
    let edges: Vec<_> = g.edges().collect();
    for (i, (id, e)) in edges.iter().enumerate() {
        out.push_str("    {\"id\": ");
        out.push_str(&json_string(&id.0));
        out.push_str(", \"src\": ");
        out.push_str(&json_string(&e.src.0));
        out.push_str(", \"dst\": ");
        out.push_str(&json_string(&e.dst.0));
        out.push('}');
        if i + 1 < edges.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  ]\n}\n");
    out
}

// ---------------------------------------------------------------------------
// Point specs: "v:<vertexId>" or "e:<edgeId>@<rational>"
// ---------------------------------------------------------------------------

pub fn parse_point(text: &str) -> Result<PointSpec, IoError> {
    let s = text.trim();
    if let Some(rest) = s.strip_prefix("v:") {
        if rest.is_empty() {
            return Err(semantic(s, "empty vertex id"));
        }
        return Ok(PointSpec::Vertex(VertexId(rest.to_string())));
    }
    if let Some(rest) = s.strip_prefix("e:") {
        let (id, t) = rest
            .rsplit_once('@')
            .ok_or_else(|| semantic(s, "edge point must be e:<edgeId>@<rational>"))?;
        if id.is_empty() {
            return Err(semantic(s, "empty edge id"));
        }
        let t = parse_rational(t).map_err(|m| semantic(s, m))?;
        return Ok(PointSpec::EdgeInterior(EdgeId(id.to_string()), t));
    }
    Err(semantic(s, "point must start with v: or e:"))
}

pub fn format_point(p: &PointSpec) -> String {
    p.to_string()
}

// ---------------------------------------------------------------------------
// Embedding documents (.emb.json)
// ---------------------------------------------------------------------------

pub fn parse_embedding(text: &str, mode: ParseMode) -> Result<EmbeddingMap, IoError> {
    let value = parse_value(text)?;
    let obj = as_object(&value, "embedding document")?;
    check_header(obj, "embedding")?;
    check_fields(
        obj,
        &["kind", "version", "vertex_image", "edge_image"],
        "embedding document",
        mode,
    )?;
    let mut vertex_image = BTreeMap::new();
    for (k, v) in as_object(
        obj.get("vertex_image")
            .ok_or_else(|| semantic("embedding", "missing \"vertex_image\""))?,
        "vertex_image",
    )? {
        vertex_image.insert(VertexId(k.clone()), parse_point(as_str(v, "point")?)?);
    }
    let mut edge_image = BTreeMap::new();
    for (k, v) in as_object(
        obj.get("edge_image")
            .ok_or_else(|| semantic("embedding", "missing \"edge_image\""))?,
        "edge_image",
    )? {
        let path = as_array(v, "edge path")?
            .iter()
            .map(|e| Ok(EdgeId(as_str(e, "edge id")?.to_string())))
            .collect::<Result<Vec<_>, IoError>>()?;
        edge_image.insert(EdgeId(k.clone()), path);
    }
    Ok(EmbeddingMap {
        vertex_image,
        edge_image,
    })
}

pub fn serialize_embedding(phi: &EmbeddingMap) -> String {
    let mut out = String::new();
    out.push_str("{\n  \"kind\": \"embedding\",\n  \"version\": 1,\n  \"vertex_image\": {\n");
    let vs: Vec<_> = phi.vertex_image.iter().collect();
    for (i, (v, p)) in vs.iter().enumerate() {
        out.push_str("    ");
        out.push_str(&json_string(&v.0));
        out.push_str(": ");
        out.push_str(&json_string(&format_point(p)));
        if i + 1 < vs.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  },\n  \"edge_image\": {\n");
    let es: Vec<_> = phi.edge_image.iter().collect();
    for (i, (e, path)) in es.iter().enumerate() {
        out.push_str("    ");
        out.push_str(&json_string(&e.0));
        out.push_str(": [");
        for (j, h) in path.iter().enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            out.push_str(&json_string(&h.0));
        }
        out.push(']');
        if i + 1 < es.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  }\n}\n");
    out
}

// ---------------------------------------------------------------------------
// Mesh documents (.mesh.json)
// ---------------------------------------------------------------------------

pub fn parse_mesh(text: &str, mode: ParseMode) -> Result<(TriSurface, PlHeights), IoError> {
    let value = parse_value(text)?;
    let obj = as_object(&value, "mesh document")?;
    check_header(obj, "mesh")?;
    check_fields(
        obj,
        &["kind", "version", "vertices", "triangles", "clusters"],
        "mesh document",
        mode,
    )?;
    let mut ids = Vec::new();
    let mut values_map = BTreeMap::new();
    for v in as_array(
        obj.get("vertices")
            .ok_or_else(|| semantic("mesh", "missing \"vertices\""))?,
        "vertices",
    )? {
        let vo = as_object(v, "mesh vertex")?;
        check_fields(vo, &["id", "height"], "mesh vertex", mode)?;
        let id = MeshVertexId(
            as_str(
                vo.get("id").ok_or_else(|| semantic("mesh vertex", "missing \"id\""))?,
                "mesh vertex id",
            )?
            .to_string(),
        );
        let h = rational_field(
            vo.get("height")
                .ok_or_else(|| semantic(&id.0, "missing \"height\""))?,
            &format!("height of {id}"),
        )?;
        values_map.insert(id.clone(), h);
        ids.push(id);
    }
    let mut triangles = Vec::new();
    for t in as_array(
        obj.get("triangles")
            .ok_or_else(|| semantic("mesh", "missing \"triangles\""))?,
        "triangles",
    )? {
        let arr = as_array(t, "triangle")?;
        if arr.len() != 3 {
            return Err(IoError::Shape {
                context: "triangle".into(),
                expected: "an array of three vertex ids".into(),
            });
        }
        triangles.push([
            MeshVertexId(as_str(&arr[0], "triangle vertex")?.to_string()),
            MeshVertexId(as_str(&arr[1], "triangle vertex")?.to_string()),
            MeshVertexId(as_str(&arr[2], "triangle vertex")?.to_string()),
        ]);
    }
    let mut clusters = Vec::new();
    if let Some(cl) = obj.get("clusters") {
        for c in as_array(cl, "clusters")? {
            let set: BTreeSet<MeshVertexId> = as_array(c, "cluster")?
                .iter()
                .map(|v| Ok(MeshVertexId(as_str(v, "cluster member")?.to_string())))
                .collect::<Result<_, IoError>>()?;
            clusters.push(set);
        }
    }
    let surface =
        TriSurface::new(ids, triangles).map_err(|e| semantic("mesh", e.to_string()))?;
    let heights = PlHeights::new(&surface, values_map, clusters)
        .map_err(|e| semantic("mesh", e.to_string()))?;
    Ok((surface, heights))
}

pub fn serialize_mesh(surface: &TriSurface, heights: &PlHeights) -> String {
    let mut out = String::new();
    out.push_str("{\n  \"kind\": \"mesh\",\n  \"version\": 1,\n  \"vertices\": [\n");
    let n = surface.vertex_count();
    for v in 0..n {
        out.push_str("    {\"id\": ");
        out.push_str(&json_string(&surface.id(v).0));
        out.push_str(", \"height\": ");
        out.push_str(&json_string(&format_rational(heights.value(v))));
        out.push('}');
        if v + 1 < n {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  ],\n  \"triangles\": [\n");
    // Canonical triangle form: rotated so the smallest id leads, then the
    // list sorted.
    let mut tris: Vec<[String; 3]> = surface
        .triangles()
        .iter()
        .map(|t| {
            let names = [
                surface.id(t[0]).0.clone(),
                surface.id(t[1]).0.clone(),
                surface.id(t[2]).0.clone(),
            ];
            let min = (0..3).min_by_key(|&i| &names[i]).unwrap();
            [
                names[min].clone(),
                names[(min + 1) % 3].clone(),
                names[(min + 2) % 3].clone(),
            ]
        })
        .collect();
    tris.sort();
    for (i, t) in tris.iter().enumerate() {
        out.push_str("    [");
        for (j, v) in t.iter().enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            out.push_str(&json_string(v));
        }
        out.push(']');
        if i + 1 < tris.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  ],\n  \"clusters\": [\n");
    let mut clusters: Vec<Vec<String>> = heights
        .clusters
        .iter()
        .filter(|c| !c.is_empty())
        .map(|c| c.iter().map(|&v| surface.id(v).0.clone()).collect())
        .collect();
    clusters.sort();
    for (i, c) in clusters.iter().enumerate() {
        out.push_str("    [");
        for (j, v) in c.iter().enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            out.push_str(&json_string(v));
        }
        out.push(']');
        if i + 1 < clusters.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  ]\n}\n");
    out
}

// ---------------------------------------------------------------------------
// Critical-count annotation documents (.gs.json)
// ---------------------------------------------------------------------------

pub fn parse_gs(text: &str, mode: ParseMode) -> Result<GsAnnotation, IoError> {
    let value = parse_value(text)?;
    let obj = as_object(&value, "annotation document")?;
    check_header(obj, "gs")?;
    check_fields(obj, &["kind", "version", "counts"], "annotation document", mode)?;
    let mut counts = BTreeMap::new();
    for (k, v) in as_object(
        obj.get("counts")
            .ok_or_else(|| semantic("annotation", "missing \"counts\""))?,
        "counts",
    )? {
        let n = v.as_u64().ok_or_else(|| IoError::Shape {
            context: format!("count of {k}"),
            expected: "a nonnegative integer".into(),
        })?;
        counts.insert(VertexId(k.clone()), n);
    }
    Ok(GsAnnotation::new(counts))
}

pub fn serialize_gs(ann: &GsAnnotation) -> String {
    let mut out = String::new();
    out.push_str("{\n  \"kind\": \"gs\",\n  \"version\": 1,\n  \"counts\": {\n");
    let cs: Vec<_> = ann.counts.iter().collect();
    for (i, (v, c)) in cs.iter().enumerate() {
        out.push_str("    ");
        out.push_str(&json_string(&v.0));
        out.push_str(": ");
        out.push_str(&c.to_string());
        if i + 1 < cs.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  }\n}\n");
    out
}

// ---------------------------------------------------------------------------
// DOT export
// ---------------------------------------------------------------------------

/// Directed DOT with one rank group per distinct height when heights are
/// present. Output is stable for equal inputs.
pub fn export_dot(g: &ReebDigraph) -> String {
    let mut out = String::new();
    out.push_str("digraph reeb {\n  rankdir=BT;\n");
    for v in g.vertices() {
        out.push_str("  ");
        out.push_str(&dot_id(&v.0));
        out.push_str(";\n");
    }
    if g.heights().is_some() {
        let mut by_height: BTreeMap<BigRational, Vec<&VertexId>> = BTreeMap::new();
        for v in g.vertices() {
            by_height.entry(g.height(v).unwrap().clone()).or_default().push(v);
        }
        for (_, group) in by_height {
            out.push_str("  { rank=same;");
            for v in group {
                out.push(' ');
                out.push_str(&dot_id(&v.0));
                out.push(';');
            }
            out.push_str(" }\n");
        }
    }
    for (id, e) in g.edges() {
        out.push_str("  ");
        out.push_str(&dot_id(&e.src.0));
        out.push_str(" -> ");
        out.push_str(&dot_id(&e.dst.0));
        out.push_str(" [label=");
        out.push_str(&dot_id(&id.0));
        out.push_str("];\n");
    }
    out.push_str("}\n");
    out
}

fn dot_id(s: &str) -> String {
    json_string(s)
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Plain-text export with the height as a third coordinate, for external
/// viewers. Vertices get synthetic x/y from their index.
pub fn export_obj(surface: &TriSurface, heights: &PlHeights) -> String {
    let mut out = String::new();
    let n = surface.vertex_count();
    for v in 0..n {
        let angle = v as f64 / n as f64 * std::f64::consts::TAU;
        let numer = heights.value(v).numer();
        let denom = heights.value(v).denom();
        let z = to_f64(numer) / to_f64(denom);
        out.push_str(&format!(
            "v {:.6} {:.6} {:.6}\n",
            angle.cos(),
            angle.sin(),
            z
        ));
    }
    for t in surface.triangles() {
        out.push_str(&format!("f {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1));
    }
    out
}

fn to_f64(x: &num_bigint::BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::ReebDigraph;

    fn x_graph_with_heights() -> ReebDigraph {
        ReebDigraph::from_edges(
            &["a", "b", "w", "c", "d"],
            &[("e1", "a", "w"), ("e2", "b", "w"), ("e3", "w", "c"), ("e4", "w", "d")],
        )
        .unwrap()
        .with_layer_heights()
        .unwrap()
    }

    #[test]
    fn graph_roundtrip_is_canonical() {
        let g = x_graph_with_heights();
        let text = serialize_graph(&g);
        let parsed = parse_graph(&text, ParseMode::Strict).unwrap();
        assert_eq!(parsed, g);
        assert_eq!(serialize_graph(&parsed), text);
    }

    #[test]
    fn heights_reserialize_in_lowest_terms() {
        let text = r#"{"kind":"graph","version":1,
            "vertices":[{"id":"u","height":"0/2"},{"id":"v","height":"2/4"}],
            "edges":[{"id":"e","src":"u","dst":"v"}]}"#;
        let g = parse_graph(text, ParseMode::Strict).unwrap();
        let out = serialize_graph(&g);
        assert!(out.contains("\"1/2\""));
        assert!(out.contains("\"0/1\""));
    }

    #[test]
    fn unknown_src_is_a_semantic_error() {
        let text = r#"{"kind":"graph","version":1,
            "vertices":[{"id":"u"}],
            "edges":[{"id":"e","src":"u","dst":"zz"}]}"#;
        let err = parse_graph(text, ParseMode::Strict).unwrap_err();
        assert!(err.to_string().contains("zz"), "{err}");
    }

    #[test]
    fn strict_rejects_unknown_fields_lax_allows() {
        let text = r#"{"kind":"graph","version":1,"flavour":"red",
            "vertices":[{"id":"u"},{"id":"v"}],
            "edges":[{"id":"e","src":"u","dst":"v"}]}"#;
        assert!(matches!(
            parse_graph(text, ParseMode::Strict),
            Err(IoError::UnknownField { .. })
        ));
        assert!(parse_graph(text, ParseMode::Lax).is_ok());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_graph("{\n  \"kind\": \"graph\",,\n}", ParseMode::Strict).unwrap_err();
        match err {
            IoError::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("expected syntax error, got {other}"),
        }
    }

    #[test]
    fn dot_export_examples() {
        let single = ReebDigraph::from_edges(&["u", "v"], &[("e", "u", "v")]).unwrap();
        let dot = export_dot(&single);
        assert_eq!(dot.matches(" -> ").count(), 1);
        assert!(!dot.contains("rank=same"));

        let x = x_graph_with_heights();
        let dot = export_dot(&x);
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert_eq!(dot.matches("rank=same").count(), 3);

        let bare = x.without_heights();
        assert!(!export_dot(&bare).contains("rank=same"));
    }

    #[test]
    fn point_spec_roundtrip() {
        for s in ["v:u", "e:e1@1/2", "e:x@3/7"] {
            let p = parse_point(s).unwrap();
            assert_eq!(format_point(&p), s);
        }
        assert!(parse_point("w:u").is_err());
        assert!(parse_point("e:e1").is_err());
    }

    #[test]
    fn mesh_roundtrip() {
        let (s, h) = crate::mesh::octahedron();
        let text = serialize_mesh(&s, &h);
        let (s2, h2) = parse_mesh(&text, ParseMode::Strict).unwrap();
        assert_eq!(serialize_mesh(&s2, &h2), text);
        assert_eq!(s2.euler_characteristic(), 2);
    }

    #[test]
    fn embedding_roundtrip() {
        use crate::digraph::PointSpec;
        let phi = EmbeddingMap {
            vertex_image: [
                (VertexId::from("u"), PointSpec::vertex("a")),
                (
                    VertexId::from("v"),
                    PointSpec::edge_interior("f", crate::rational::ratio(1, 2)),
                ),
            ]
            .into_iter()
            .collect(),
            edge_image: [(EdgeId::from("e"), vec![EdgeId::from("f")])].into_iter().collect(),
        };
        let text = serialize_embedding(&phi);
        let parsed = parse_embedding(&text, ParseMode::Strict).unwrap();
        assert_eq!(parsed, phi);
        assert_eq!(serialize_embedding(&parsed), text);
    }

    #[test]
    fn obj_export_lists_vertices_and_faces() {
        let (s, h) = crate::mesh::octahedron();
        let obj = export_obj(&s, &h);
        assert_eq!(obj.matches("\nf ").count() + usize::from(obj.starts_with("f ")), 8);
        assert_eq!(obj.matches("v ").count(), 6);
    }

    #[test]
    fn gs_roundtrip() {
        let ann = GsAnnotation::of(&[("w", 2), ("v", 1)]);
        let text = serialize_gs(&ann);
        let parsed = parse_gs(&text, ParseMode::Strict).unwrap();
        assert_eq!(parsed, ann);
        assert_eq!(serialize_gs(&parsed), text);
    }
}
