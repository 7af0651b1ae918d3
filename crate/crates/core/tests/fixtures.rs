//! Canonical fixture files must reserialize byte-identically.

use reeb_core::io::{
    parse_embedding, parse_graph, parse_mesh, serialize_embedding, serialize_graph,
    serialize_mesh, ParseMode,
};
use std::path::PathBuf;

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

#[test]
fn graph_fixtures_are_canonical() {
    for name in ["edge.reeb.json", "path3.reeb.json", "x.reeb.json", "theta.reeb.json"] {
        let text = fixture(name);
        let g = parse_graph(&text, ParseMode::Strict).unwrap();
        assert_eq!(serialize_graph(&g), text, "{name} is not canonical");
    }
}

#[test]
fn mesh_fixture_is_canonical_and_closed() {
    let text = fixture("torus.mesh.json");
    let (surface, heights) = parse_mesh(&text, ParseMode::Strict).unwrap();
    assert_eq!(serialize_mesh(&surface, &heights), text);
    assert_eq!(surface.euler_characteristic(), 0);
}

#[test]
fn embedding_fixture_is_canonical() {
    let text = fixture("path3-into-edge.emb.json");
    let phi = parse_embedding(&text, ParseMode::Strict).unwrap();
    assert_eq!(serialize_embedding(&phi), text);
}
