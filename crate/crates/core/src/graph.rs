//! Simple connected graphs with a canonical arc (directed-edge) indexing.
//!
//! Every graph in this crate is finite, simple (no self-loops, no parallel
//! edges), undirected, and connected. Vertices are relabeled `0..n` in order
//! of first appearance in the input edge list; edges are stored as ordered
//! pairs `(u, v)` with `u < v`, sorted lexicographically. Each undirected
//! edge contributes two arcs, so arc `2j` traverses edge `j` forward and
//! arc `2j + 1` traverses it backward. All operator matrices in this crate
//! are indexed against this fixed ordering.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

/// Errors from graph construction, family generators, and edge-list parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("self-loop at vertex {label}")]
    SelfLoop { label: usize },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("graph is disconnected: vertex {label} is unreachable from the first listed vertex")]
    Disconnected { label: usize },
    #[error("{family} graph requires n >= {min}, got n = {n}")]
    InvalidOrder {
        family: &'static str,
        n: usize,
        min: usize,
    },
    #[error("edge list is empty")]
    EmptyEdgeList,
    #[error("edge list line {line}: expected two vertex labels, got {content:?}")]
    ParseEdgeList { line: usize, content: String },
}

/// A simple connected undirected graph with canonical vertex and edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Sorted list of `(u, v)` with `u < v`.
    edges: Vec<(usize, usize)>,
    /// Sorted neighbor lists.
    adjacency: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct GraphJson<'a> {
    n: usize,
    m: usize,
    edges: &'a [(usize, usize)],
}

impl Graph {
    /// Builds a graph from a list of undirected edges over arbitrary
    /// non-negative vertex labels. Labels are compacted to `0..n` in order
    /// of first appearance; edges are normalized to `(min, max)` and sorted.
    pub fn from_edge_list(pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        if pairs.is_empty() {
            return Err(GraphError::EmptyEdgeList);
        }

        let mut relabel: HashMap<usize, usize> = HashMap::new();
        let mut original: Vec<usize> = Vec::new();
        let mut id = |label: usize, relabel: &mut HashMap<usize, usize>| -> usize {
            *relabel.entry(label).or_insert_with(|| {
                original.push(label);
                original.len() - 1
            })
        };

        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            if u == v {
                return Err(GraphError::SelfLoop { label: u });
            }
            let a = id(u, &mut relabel);
            let b = id(v, &mut relabel);
            edges.push((a.min(b), a.max(b)));
        }

        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge {
                    u: original[w[0].0],
                    v: original[w[0].1],
                });
            }
        }

        let n = original.len();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        // Connectivity check: BFS from vertex 0 must reach everything.
        let mut seen = vec![false; n];
        let mut queue = vec![0usize];
        seen[0] = true;
        while let Some(u) = queue.pop() {
            for &v in &adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push(v);
                }
            }
        }
        if let Some(w) = seen.iter().position(|&s| !s) {
            return Err(GraphError::Disconnected { label: original[w] });
        }

        Ok(Graph {
            n,
            edges,
            adjacency,
        })
    }

    /// Complete graph `K_n` on `n >= 2` vertices.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::InvalidOrder {
                family: "complete",
                n,
                min: 2,
            });
        }
        let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n {
            for v in (u + 1)..n {
                pairs.push((u, v));
            }
        }
        Self::from_edge_list(&pairs)
    }

    /// Cycle graph `C_n` on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::InvalidOrder {
                family: "cycle",
                n,
                min: 3,
            });
        }
        let pairs: Vec<_> = (0..n).map(|u| (u, (u + 1) % n)).collect();
        Self::from_edge_list(&pairs)
    }

    /// Star graph `S_n`: one hub joined to `n - 1` leaves, `n >= 2`.
    pub fn star(n: usize) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::InvalidOrder {
                family: "star",
                n,
                min: 2,
            });
        }
        let pairs: Vec<_> = (1..n).map(|v| (0, v)).collect();
        Self::from_edge_list(&pairs)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// First Betti number `m - n + 1`: the number of independent cycles.
    /// Zero exactly for trees.
    pub fn betti_number(&self) -> usize {
        self.edges.len() + 1 - self.n
    }

    /// Two-colorability check by BFS.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        color[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return false;
                }
            }
        }
        true
    }

    /// `Some(d)` when every vertex has degree `d`, else `None`.
    pub fn regularity(&self) -> Option<usize> {
        let d = self.degree(0);
        self.adjacency.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Parses the whitespace edge-list text format: one `u v` pair per line,
    /// blank lines and `#` comment lines ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let (u, v) = match (it.next(), it.next(), it.next()) {
                (Some(u), Some(v), None) => (u, v),
                _ => {
                    return Err(GraphError::ParseEdgeList {
                        line: idx + 1,
                        content: raw.to_string(),
                    })
                }
            };
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| GraphError::ParseEdgeList {
                    line: idx + 1,
                    content: raw.to_string(),
                })
            };
            pairs.push((parse(u)?, parse(v)?));
        }
        Self::from_edge_list(&pairs)
    }

    /// Renders the canonical edge list in the text format accepted by
    /// [`Graph::parse_edge_list`].
    pub fn to_edge_list_text(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// JSON form `{"n": .., "m": .., "edges": [[u, v], ..]}`.
    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            n: self.n,
            m: self.edges.len(),
            edges: &self.edges,
        };
        serde_json::to_string(&doc).expect("graph serialization cannot fail")
    }
}

/// Canonical indexing of the `2m` arcs of a graph.
///
/// Edge `j = (u, v)` (with `u < v`) yields arc `2j = u -> v` and arc
/// `2j + 1 = v -> u`, so the inverse of arc `i` is always `i ^ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcIndex {
    arcs: Vec<(usize, usize)>,
    lookup: HashMap<(usize, usize), usize>,
}

impl ArcIndex {
    pub fn new(g: &Graph) -> Self {
        let mut arcs = Vec::with_capacity(2 * g.edge_count());
        for &(u, v) in g.edges() {
            arcs.push((u, v));
            arcs.push((v, u));
        }
        let lookup = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        ArcIndex { arcs, lookup }
    }

    /// Number of arcs, `2m`.
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// The `(origin, terminus)` pair of arc `i`.
    pub fn arc(&self, i: usize) -> (usize, usize) {
        self.arcs[i]
    }

    pub fn origin(&self, i: usize) -> usize {
        self.arcs[i].0
    }

    pub fn terminus(&self, i: usize) -> usize {
        self.arcs[i].1
    }

    /// Index of the reversed arc. Involutive: `inverse(inverse(i)) == i`.
    pub fn inverse(&self, i: usize) -> usize {
        i ^ 1
    }

    /// Index of the arc `origin -> terminus`, if that edge exists.
    pub fn index_of(&self, origin: usize, terminus: usize) -> Option<usize> {
        self.lookup.get(&(origin, terminus)).copied()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }
}
