//! Brute-force graph oracles: exhaustive enumeration of small labelled
//! graphs, 2-colorability by trying every sign assignment, and structural
//! validation of odd-cycle witnesses.

use integrability::dual_graph::DualGraph;

/// All edges of the complete graph on `v` labelled vertices.
pub fn complete_edges(v: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 0..v {
        for k in j + 1..v {
            out.push((j, k));
        }
    }
    out
}

fn is_connected(v: usize, edges: &[(usize, usize)]) -> bool {
    if v == 0 {
        return false;
    }
    let mut adj = vec![Vec::new(); v];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; v];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Every connected labelled simple graph on 1..=max_vertices vertices.
pub fn connected_graphs(max_vertices: usize) -> Vec<DualGraph> {
    let mut out = Vec::new();
    for v in 1..=max_vertices {
        let all = complete_edges(v);
        for mask in 0u32..(1 << all.len()) {
            let edges: Vec<(usize, usize)> = all
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            if is_connected(v, &edges) {
                out.push(DualGraph::new(v, edges).expect("simple graph is valid"));
            }
        }
    }
    out
}

/// Brute-force alternation oracle: tries all 2^v sign assignments.
pub fn two_colorable(g: &DualGraph) -> bool {
    let v = g.vertex_count();
    assert!(v <= 20, "exhaustive oracle is exponential in vertices");
    (0u32..(1 << v)).any(|mask| {
        g.edges()
            .iter()
            .all(|&(a, b)| (mask >> a & 1) != (mask >> b & 1))
    })
}

/// Checks that a witness is a genuine odd cycle of the graph: odd length
/// of at least three, distinct vertices, and every consecutive pair
/// (including the closing pair) joined by an edge.
pub fn is_genuine_odd_cycle(g: &DualGraph, cycle: &[usize]) -> bool {
    if cycle.len() < 3 || cycle.len().is_multiple_of(2) {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != cycle.len() {
        return false;
    }
    let has_edge = |a: usize, b: usize| {
        g.edges()
            .iter()
            .any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b))
    };
    (0..cycle.len()).all(|i| has_edge(cycle[i], cycle[(i + 1) % cycle.len()]))
}
