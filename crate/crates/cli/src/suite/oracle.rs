//! Independent oracles the batch suite checks the library against.
//!
//! These deliberately avoid the code paths they verify: the validator
//! oracle is a brute-force labeling search over a compact edge-list
//! encoding, and the Reeb oracle rebuilds the quotient graph from densely
//! sampled level sets instead of the sweep's slab decomposition.

use reeb_core::digraph::{EdgeId, ReebDigraph, VertexId};
use reeb_core::mesh::{PlHeights, TriSurface};
use reeb_core::plmorse::census;
use reeb_core::rational::int;
use num_rational::BigRational;
use std::collections::{BTreeMap, BTreeSet};

/// Compact multidigraph: n vertices, edges as (src, dst) pairs, self-loops
/// allowed.
#[derive(Debug, Clone)]
pub struct SmallGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SmallGraph {
    pub fn to_digraph(&self) -> ReebDigraph {
        ReebDigraph::new(
            (0..self.n).map(|i| VertexId(format!("v{i}"))).collect(),
            self.edges
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
        .expect("well-formed")
    }

    fn connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
        }
        count == self.n
    }
}

/// Exhaustive labeling oracle: is there a map V -> {0..n-1} strictly
/// increasing along every edge, with every degree->=2 vertex having both an
/// incoming and an outgoing edge, the graph connected, and no self-loop?
pub fn oracle_good(g: &SmallGraph) -> bool {
    if g.edges.iter().any(|(a, b)| a == b) {
        return false;
    }
    if !g.connected() {
        return false;
    }
    let mut indeg = vec![0usize; g.n];
    let mut outdeg = vec![0usize; g.n];
    for &(a, b) in &g.edges {
        outdeg[a] += 1;
        indeg[b] += 1;
    }
    for v in 0..g.n {
        if indeg[v] + outdeg[v] >= 2 && (indeg[v] == 0 || outdeg[v] == 0) {
            return false;
        }
    }
    // Depth-first labeling with early edge checks.
    fn assign(g: &SmallGraph, labels: &mut Vec<usize>, v: usize) -> bool {
        if v == g.n {
            return true;
        }
        'label: for l in 0..g.n {
            labels[v] = l;
            for &(a, b) in &g.edges {
                if a < v + 1 && b < v + 1 && (a == v || b == v) && labels[a] >= labels[b] {
                    continue 'label;
                }
            }
            if assign(g, labels, v + 1) {
                return true;
            }
        }
        false
    }
    let mut labels = vec![0usize; g.n];
    assign(g, &mut labels, 0)
}

/// Enumerate connected multidigraphs with at most `max_n` vertices and at
/// most `max_m` edges, one representative per relabeling class, feeding each
/// to `visit`. Returns the number of representatives.
pub fn enumerate_small_multidigraphs(
    max_n: usize,
    max_m: usize,
    mut visit: impl FnMut(&SmallGraph),
) -> usize {
    let mut count = 0usize;
    for n in 1..=max_n {
        // All permutations of 0..n for the canonicity test.
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut base: Vec<usize> = (0..n).collect();
        loop {
            perms.push(base.clone());
            // next_permutation
            let mut i = n;
            if i < 2 {
                break;
            }
            i -= 1;
            while i > 0 && base[i - 1] >= base[i] {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            let mut j = n - 1;
            while base[j] <= base[i - 1] {
                j -= 1;
            }
            base.swap(i - 1, j);
            base[i..].reverse();
        }
        let npairs = n * n;
        // Multisets of edge codes as non-decreasing sequences.
        let mut codes: Vec<usize> = Vec::new();
        enumerate_multisets(npairs, max_m, &mut codes, &mut |codes: &[usize]| {
            let edges: Vec<(usize, usize)> = codes.iter().map(|&c| (c / n, c % n)).collect();
            let g = SmallGraph { n, edges };
            if !g.connected() {
                return;
            }
            if !is_canonical(codes, n, &perms) {
                return;
            }
            count += 1;
            visit(&g);
        });
    }
    count
}

fn enumerate_multisets(
    alphabet: usize,
    max_len: usize,
    prefix: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    visit(prefix);
    if prefix.len() == max_len {
        return;
    }
    let start = prefix.last().copied().unwrap_or(0);
    for c in start..alphabet {
        prefix.push(c);
        enumerate_multisets(alphabet, max_len, prefix, visit);
        prefix.pop();
    }
}

/// A code multiset is canonical when no relabeling yields a smaller one.
fn is_canonical(codes: &[usize], n: usize, perms: &[Vec<usize>]) -> bool {
    let mut mapped = [0usize; 8];
    let m = codes.len();
    for p in perms {
        for (k, &c) in codes.iter().enumerate() {
            mapped[k] = p[c / n] * n + p[c % n];
        }
        mapped[..m].sort_unstable();
        if mapped[..m] < *codes {
            return false;
        }
    }
    true
}

/// Reeb digraph by dense level sampling: 4k + 1 levels for k distinct
/// heights (every height, three between consecutive ones, one below and one
/// above), components per level by union-find over level items, linked
/// between consecutive samples through shared triangles, then regular runs
/// contracted.
pub fn reeb_by_dense_sampling(surface: &TriSurface, heights: &PlHeights) -> ReebDigraph {
    let cls = census(surface, heights).expect("admissible heights");
    let mut values: Vec<BigRational> = heights.values.to_vec();
    values.sort();
    values.dedup();
    let mut samples: Vec<BigRational> = Vec::new();
    samples.push(values[0].clone() - int(1));
    for (i, v) in values.iter().enumerate() {
        samples.push(v.clone());
        if i + 1 < values.len() {
            let gap = &values[i + 1] - v;
            for k in 1..4 {
                samples.push(v + &gap * int(k) / int(4));
            }
        }
    }
    samples.push(values.last().unwrap().clone() + int(1));

    #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
    enum Item {
        Vertex(usize),
        Edge(usize, usize),
    }
    // Components per sample: map item -> component id, plus contents.
    let mut level_comps: Vec<Vec<Vec<Item>>> = Vec::new();
    let mut level_of_item: Vec<BTreeMap<Item, usize>> = Vec::new();
    for lambda in &samples {
        let mut parent: BTreeMap<Item, Item> = BTreeMap::new();
        fn find(parent: &mut BTreeMap<Item, Item>, x: Item) -> Item {
            let p = parent.get(&x).cloned().unwrap_or_else(|| x.clone());
            if p == x {
                return x;
            }
            let r = find(parent, p);
            parent.insert(x, r.clone());
            r
        }
        let mut all_items: BTreeSet<Item> = BTreeSet::new();
        for t in surface.triangles() {
            let mut items = Vec::new();
            for k in 0..3 {
                let v = t[k];
                if heights.value(v) == lambda {
                    items.push(Item::Vertex(v));
                }
                let (a, b) = (t[k], t[(k + 1) % 3]);
                let (ha, hb) = (heights.value(a), heights.value(b));
                if ha.min(hb) < lambda && lambda < ha.max(hb) {
                    items.push(Item::Edge(a.min(b), a.max(b)));
                }
            }
            for pair in items.windows(2) {
                let ra = find(&mut parent, pair[0].clone());
                let rb = find(&mut parent, pair[1].clone());
                if ra != rb {
                    parent.insert(ra, rb);
                }
            }
            all_items.extend(items);
        }
        let mut comp_of_root: BTreeMap<Item, usize> = BTreeMap::new();
        let mut comps: Vec<Vec<Item>> = Vec::new();
        let mut item_map: BTreeMap<Item, usize> = BTreeMap::new();
        let keys: Vec<Item> = all_items.into_iter().collect();
        for it in keys {
            let root = find(&mut parent, it.clone());
            let c = *comp_of_root.entry(root).or_insert_with(|| {
                comps.push(Vec::new());
                comps.len() - 1
            });
            comps[c].push(it.clone());
            item_map.insert(it, c);
        }
        level_comps.push(comps);
        level_of_item.push(item_map);
    }

    // Links between consecutive samples via shared triangles.
    let mut down_links: Vec<Vec<BTreeSet<usize>>> = level_comps
        .iter()
        .map(|comps| vec![BTreeSet::new(); comps.len()])
        .collect();
    let mut up_links: Vec<Vec<BTreeSet<usize>>> = down_links.clone();
    let item_of_triangle_at = |ti: usize, s: usize| -> Option<Item> {
        let t = surface.triangles()[ti];
        let lambda = &samples[s];
        for k in 0..3 {
            let v = t[k];
            if heights.value(v) == lambda {
                return Some(Item::Vertex(v));
            }
            let (a, b) = (t[k], t[(k + 1) % 3]);
            let (ha, hb) = (heights.value(a), heights.value(b));
            if ha.min(hb) < lambda && lambda < ha.max(hb) {
                return Some(Item::Edge(a.min(b), a.max(b)));
            }
        }
        None
    };
    for s in 0..samples.len() - 1 {
        for ti in 0..surface.triangle_count() {
            if let (Some(lo), Some(hi)) = (item_of_triangle_at(ti, s), item_of_triangle_at(ti, s + 1)) {
                let c_lo = level_of_item[s][&lo];
                let c_hi = level_of_item[s + 1][&hi];
                up_links[s][c_lo].insert(c_hi);
                down_links[s + 1][c_hi].insert(c_lo);
            }
        }
    }

    // Keep branch points, critical levels and extremes; contract the rest.
    let mut keep: BTreeMap<(usize, usize), String> = BTreeMap::new();
    for (s, comps) in level_comps.iter().enumerate() {
        for (c, items) in comps.iter().enumerate() {
            let nd = down_links[s][c].len();
            let nu = up_links[s][c].len();
            let has_critical = items.iter().any(|it| match it {
                Item::Vertex(v) => cls.classes[*v].is_critical(),
                Item::Edge(_, _) => false,
            });
            if nd != 1 || nu != 1 || has_critical {
                let name = format!("o{}", keep.len());
                keep.insert((s, c), name);
            }
        }
    }
    let mut edges = Vec::new();
    let mut k = 0usize;
    for (&(s, c), name) in &keep {
        for &start in &up_links[s][c] {
            let (mut cs, mut cc) = (s + 1, start);
            loop {
                if let Some(target) = keep.get(&(cs, cc)) {
                    edges.push((
                        EdgeId(format!("p{k}")),
                        VertexId(name.clone()),
                        VertexId(target.clone()),
                    ));
                    k += 1;
                    break;
                }
                let next = *up_links[cs][cc].iter().next().expect("pass-through");
                cs += 1;
                cc = next;
            }
        }
    }
    ReebDigraph::new(
        keep.values().map(|n| VertexId(n.clone())).collect(),
        edges,
        None,
    )
    .expect("oracle graph is well-formed")
}
