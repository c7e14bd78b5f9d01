//! Dual graphs of complement tilings and the alternating-orientation
//! procedure: assign ±1 to the tiles so that the sign flips across every
//! wall, or exhibit the odd cycle that makes this impossible.

use std::collections::VecDeque;

/// Errors constructing or parsing a dual graph.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    /// A wall with the same tile on both sides is rejected as input.
    #[error("self-loop at vertex {vertex}: a wall must separate two distinct tiles")]
    SelfLoop { vertex: usize },
    #[error("vertex {vertex} out of range: the graph has {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An undirected graph: vertices are complement tiles, edges are the walls
/// between them. Self-loops are rejected; parallel edges are permitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for &(a, b) in &edges {
            if a == b {
                return Err(GraphError::SelfLoop { vertex: a });
            }
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        count: vertex_count,
                    });
                }
            }
        }
        Ok(DualGraph {
            vertex_count,
            edges,
        })
    }

    /// Parses the edge-list text format: the first non-blank line is the
    /// vertex count, each following non-blank line one `j k` edge with
    /// 0-based endpoints.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut vertex_count: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            let parse_usize = |token: &str| -> Result<usize, GraphError> {
                token.parse().map_err(|_| GraphError::Parse {
                    line,
                    message: format!("expected a non-negative integer, found {token:?}"),
                })
            };
            match vertex_count {
                None => vertex_count = Some(parse_usize(trimmed)?),
                Some(_) => {
                    let mut parts = trimmed.split_whitespace();
                    let a = parse_usize(parts.next().unwrap())?;
                    let b = parse_usize(parts.next().ok_or_else(|| GraphError::Parse {
                        line,
                        message: "expected two endpoints per edge line".to_string(),
                    })?)?;
                    if parts.next().is_some() {
                        return Err(GraphError::Parse {
                            line,
                            message: "expected exactly two endpoints per edge line".to_string(),
                        });
                    }
                    edges.push((a, b));
                }
            }
        }
        let vertex_count = vertex_count.ok_or_else(|| GraphError::Parse {
            line: 1,
            message: "missing vertex count".to_string(),
        })?;
        DualGraph::new(vertex_count, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

/// Outcome of the alternating-orientation procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlternationOutcome {
    /// One sign per vertex, flipping across every edge; the first vertex of
    /// every connected component gets +1.
    Alternating(Vec<i8>),
    /// A cyclic vertex sequence of odd length along which no alternating
    /// assignment can exist (consecutive entries, and the last and first,
    /// are joined by edges).
    OddCycle(Vec<usize>),
}

/// Tries to orient the tiles alternately: breadth-first sign propagation
/// from the lowest-numbered unvisited vertex of each component. On a
/// conflict, the two tree paths from the offending edge's endpoints to
/// their deepest common ancestor close up into an odd cycle, which is
/// returned as the obstruction witness.
pub fn alternating_orientation(g: &DualGraph) -> AlternationOutcome {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut sign: Vec<Option<i8>> = vec![None; n];
    let mut parent: Vec<usize> = vec![usize::MAX; n];
    let mut depth: Vec<usize> = vec![0; n];
    let mut queue = VecDeque::new();

    for root in 0..n {
        if sign[root].is_some() {
            continue;
        }
        sign[root] = Some(1);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match sign[v] {
                    None => {
                        sign[v] = Some(-sign[u].unwrap());
                        parent[v] = u;
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                    Some(s) if s == sign[u].unwrap() => {
                        return AlternationOutcome::OddCycle(odd_cycle(u, v, &parent, &depth));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    AlternationOutcome::Alternating(sign.into_iter().map(Option::unwrap).collect())
}

/// Closes the non-tree edge (u,v) into a cycle through the BFS tree:
/// u → … → common ancestor → … → v, with the edge v–u implicit.
fn odd_cycle(u: usize, v: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut up_from_u = vec![a];
    let mut up_from_v = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        up_from_u.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        up_from_v.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        up_from_u.push(a);
        up_from_v.push(b);
    }
    // up_from_u ends at the common ancestor, which up_from_v also contains;
    // drop the duplicate and reverse the v-side to run ancestor → v.
    up_from_v.pop();
    up_from_v.reverse();
    up_from_u.extend(up_from_v);
    up_from_u
}
