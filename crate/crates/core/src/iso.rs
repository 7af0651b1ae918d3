//! Direction-preserving multigraph isomorphism for small instances.
//!
//! Backtracking over vertex assignments, pruned by (in-degree, out-degree)
//! and a one-round neighbourhood refinement. Heights are ignored: two Reeb
//! digraphs are considered the same when their directed multigraph structure
//! matches. Intended scale is a few dozen vertices.

use crate::digraph::{EdgeId, ReebDigraph, VertexId};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    pub edge_map: BTreeMap<EdgeId, EdgeId>,
}

struct Side {
    verts: Vec<VertexId>,
    /// Parallel edge multiplicity: adj[u][v] = number of edges u -> v.
    adj: Vec<Vec<usize>>,
    sig: Vec<u64>,
}

fn build_side(g: &ReebDigraph) -> Side {
    let verts: Vec<VertexId> = g.vertices().cloned().collect();
    let index: BTreeMap<&VertexId, usize> = verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let n = verts.len();
    let mut adj = vec![vec![0usize; n]; n];
    for (_, e) in g.edges() {
        adj[index[&e.src]][index[&e.dst]] += 1;
    }
    // Signature: degrees refined once by sorted neighbour degree multisets.
    let deg = |i: usize| -> (usize, usize) {
        let out: usize = adj[i].iter().sum();
        let inn: usize = (0..n).map(|j| adj[j][i]).sum();
        (inn, out)
    };
    let base: Vec<(usize, usize)> = (0..n).map(deg).collect();
    let mut sig = Vec::with_capacity(n);
    for i in 0..n {
        let mut out_nb: Vec<(usize, usize, usize)> = (0..n)
            .filter(|&j| adj[i][j] > 0)
            .map(|j| (adj[i][j], base[j].0, base[j].1))
            .collect();
        out_nb.sort_unstable();
        let mut in_nb: Vec<(usize, usize, usize)> = (0..n)
            .filter(|&j| adj[j][i] > 0)
            .map(|j| (adj[j][i], base[j].0, base[j].1))
            .collect();
        in_nb.sort_unstable();
        let mut h: u64 = 1469598103934665603;
        let mut mix = |x: u64| {
            h ^= x;
            h = h.wrapping_mul(1099511628211);
        };
        mix(base[i].0 as u64);
        mix(base[i].1 as u64);
        for (m, a, b) in out_nb.iter().chain(in_nb.iter()) {
            mix(*m as u64);
            mix(*a as u64);
            mix(*b as u64);
        }
        sig.push(h);
    }
    Side { verts, adj, sig }
}

/// Search for a direction-preserving multigraph isomorphism. Parallel edges
/// are matched bijectively in id order. Returns `None` when the graphs are
/// not isomorphic.
pub fn isomorphism(g1: &ReebDigraph, g2: &ReebDigraph) -> Option<Isomorphism> {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let a = build_side(g1);
    let b = build_side(g2);
    let mut sig_a = a.sig.clone();
    let mut sig_b = b.sig.clone();
    sig_a.sort_unstable();
    sig_b.sort_unstable();
    if sig_a != sig_b {
        return None;
    }

    let n = a.verts.len();
    // Order the search by rarest signature first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| {
        let count = a.sig.iter().filter(|&&s| s == a.sig[i]).count();
        (count, std::cmp::Reverse(a.adj[i].iter().sum::<usize>()))
    });

    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used: Vec<bool> = vec![false; n];

    fn consistent(a: &Side, b: &Side, assign: &[Option<usize>], i: usize, j: usize) -> bool {
        for (x, mapped) in assign.iter().enumerate() {
            if let Some(y) = mapped {
                if a.adj[i][x] != b.adj[j][*y] || a.adj[x][i] != b.adj[*y][j] {
                    return false;
                }
            }
        }
        a.adj[i][i] == b.adj[j][j]
    }

    fn search(
        a: &Side,
        b: &Side,
        order: &[usize],
        depth: usize,
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let i = order[depth];
        for j in 0..b.verts.len() {
            if used[j] || a.sig[i] != b.sig[j] {
                continue;
            }
            if !consistent(a, b, assign, i, j) {
                continue;
            }
            assign[i] = Some(j);
            used[j] = true;
            if search(a, b, order, depth + 1, assign, used) {
                return true;
            }
            assign[i] = None;
            used[j] = false;
        }
        false
    }

    if !search(&a, &b, &order, 0, &mut assign, &mut used) {
        return None;
    }

    let vertex_map: BTreeMap<VertexId, VertexId> = assign
        .iter()
        .enumerate()
        .map(|(i, j)| (a.verts[i].clone(), b.verts[j.unwrap()].clone()))
        .collect();

    // Pair up parallel edges between matched vertex pairs in id order.
    let mut edge_map = BTreeMap::new();
    let mut pool: BTreeMap<(VertexId, VertexId), Vec<EdgeId>> = BTreeMap::new();
    for (id, e) in g2.edges() {
        pool.entry((e.src.clone(), e.dst.clone()))
            .or_default()
            .push(id.clone());
    }
    for v in pool.values_mut() {
        v.sort();
        v.reverse(); // pop from the back yields id order
    }
    for (id, e) in g1.edges() {
        let key = (vertex_map[&e.src].clone(), vertex_map[&e.dst].clone());
        let target = pool.get_mut(&key)?.pop()?;
        edge_map.insert(id.clone(), target);
    }

    Some(Isomorphism { vertex_map, edge_map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::ReebDigraph;

    fn x_graph(ids: [&str; 5], eids: [&str; 4]) -> ReebDigraph {
        ReebDigraph::from_edges(
            &[ids[0], ids[1], ids[2], ids[3], ids[4]],
            &[
                (eids[0], ids[0], ids[2]),
                (eids[1], ids[1], ids[2]),
                (eids[2], ids[2], ids[3]),
                (eids[3], ids[2], ids[4]),
            ],
        )
        .unwrap()
    }

    /// Oracle: check all vertex permutations for a multigraph isomorphism.
    fn oracle_isomorphic(g1: &ReebDigraph, g2: &ReebDigraph) -> bool {
        if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
            return false;
        }
        let v1: Vec<_> = g1.vertices().cloned().collect();
        let v2: Vec<_> = g2.vertices().cloned().collect();
        let mut perm: Vec<usize> = (0..v2.len()).collect();
        let count = |g: &ReebDigraph, s: &VertexId, d: &VertexId| {
            g.edges().filter(|(_, e)| &e.src == s && &e.dst == d).count()
        };
        loop {
            let ok = v1.iter().enumerate().all(|(i, u)| {
                v1.iter().enumerate().all(|(j, w)| {
                    count(g1, u, w) == count(g2, &v2[perm[i]], &v2[perm[j]])
                })
            });
            if ok {
                return true;
            }
            // next_permutation
            let mut i = perm.len();
            if i < 2 {
                return false;
            }
            i -= 1;
            while i > 0 && perm[i - 1] >= perm[i] {
                i -= 1;
            }
            if i == 0 {
                return false;
            }
            let mut j = perm.len() - 1;
            while perm[j] <= perm[i - 1] {
                j -= 1;
            }
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
    }

    #[test]
    fn single_edges_match() {
        let g1 = ReebDigraph::from_edges(&["u", "v"], &[("e", "u", "v")]).unwrap();
        let g2 = ReebDigraph::from_edges(&["a", "b"], &[("f", "a", "b")]).unwrap();
        let iso = isomorphism(&g1, &g2).unwrap();
        assert_eq!(iso.vertex_map[&VertexId::from("u")], VertexId::from("a"));
        assert_eq!(iso.edge_map[&EdgeId::from("e")], EdgeId::from("f"));
    }

    #[test]
    fn different_vertex_counts_do_not_match() {
        let g1 =
            ReebDigraph::from_edges(&["u", "v", "w"], &[("e1", "u", "v"), ("e2", "v", "w")]).unwrap();
        let g2 = ReebDigraph::from_edges(&["a", "b"], &[("f", "a", "b")]).unwrap();
        assert!(isomorphism(&g1, &g2).is_none());
    }

    #[test]
    fn x_graphs_with_shuffled_ids_match_and_agree_with_oracle() {
        let g1 = x_graph(["a", "b", "w", "c", "d"], ["e1", "e2", "e3", "e4"]);
        let g2 = x_graph(["p4", "p1", "p0", "p3", "p2"], ["z3", "z0", "z2", "z1"]);
        assert!(oracle_isomorphic(&g1, &g2));
        let iso = isomorphism(&g1, &g2).unwrap();
        assert_eq!(iso.vertex_map[&VertexId::from("w")], VertexId::from("p0"));
        // The edge bijection must respect endpoints.
        for (e1, e2) in &iso.edge_map {
            let a = g1.edge(e1).unwrap();
            let b = g2.edge(e2).unwrap();
            assert_eq!(iso.vertex_map[&a.src], b.src);
            assert_eq!(iso.vertex_map[&a.dst], b.dst);
        }
    }

    #[test]
    fn direction_matters() {
        let g1 = ReebDigraph::from_edges(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "b", "c")]).unwrap();
        let g2 = ReebDigraph::from_edges(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "c", "b")]).unwrap();
        assert!(isomorphism(&g1, &g2).is_none());
        assert!(!oracle_isomorphic(&g1, &g2));
    }

    #[test]
    fn parallel_edge_multiplicity_matters() {
        let g1 = ReebDigraph::from_edges(
            &["a", "b", "c", "d"],
            &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "b", "c"), ("e4", "c", "d")],
        )
        .unwrap();
        let g2 = ReebDigraph::from_edges(
            &["a", "b", "c", "d"],
            &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "b", "d"), ("e4", "c", "d")],
        )
        .unwrap();
        assert_eq!(isomorphism(&g1, &g2).is_some(), oracle_isomorphic(&g1, &g2));
        assert!(isomorphism(&g1, &g2).is_none());
    }
}
