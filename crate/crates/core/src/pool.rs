//! A labelled pool of test graphs: every tree up to 7 vertices, the
//! classical families at desk scale, and a seeded batch of random
//! connected graphs. Identity checks that claim "holds for all graphs"
//! are exercised against this pool in the integration suite.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::par::map_slice;

/// One pool member: a graph and a stable human-readable label for
/// reporting which member broke an identity.
#[derive(Debug, Clone)]
pub struct PoolEntry {
    pub label: String,
    pub graph: Graph,
}

/// Decodes a Prüfer sequence over `{0, .., n-1}` into the edge list of a
/// labelled tree on `n` vertices.
fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len(), n - 2);
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = *leaves.iter().next().expect("a tree always has a leaf");
        leaves.remove(&leaf);
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let mut last = leaves.into_iter();
    let (a, b) = (last.next().unwrap(), last.next().unwrap());
    edges.push((a, b));
    edges
}

/// Canonical encoding of a rooted tree: children encodings sorted and
/// concatenated inside parentheses, so two rooted trees get equal strings
/// iff they are isomorphic.
fn rooted_encoding(adj: &[Vec<usize>], v: usize, parent: Option<usize>) -> String {
    let mut parts: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| Some(w) != parent)
        .map(|&w| rooted_encoding(adj, w, Some(v)))
        .collect();
    parts.sort();
    format!("({})", parts.concat())
}

/// Isomorphism key of an unrooted tree: the minimum rooted encoding over
/// all choices of root. Quadratic in the worst case, which is irrelevant
/// at 7 vertices.
fn tree_canonical_form(edges: &[(usize, usize)], n: usize) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    (0..n)
        .map(|root| rooted_encoding(&adj, root, None))
        .min()
        .expect("nonempty tree")
}

/// Every tree on 2 through 7 vertices, one representative per isomorphism
/// class, enumerated by Prüfer sequence and deduplicated by canonical
/// form. Yields 1, 1, 2, 3, 6, 11 trees per order — 24 in all.
pub fn all_trees_up_to_seven() -> Vec<PoolEntry> {
    let mut out = Vec::new();
    for n in 2..=7usize {
        let mut seen: HashSet<String> = HashSet::new();
        let mut index = 0usize;
        // Iterate the n^(n-2) sequences in counting order for determinism.
        let len = n - 2;
        let total = n.pow(len as u32);
        for code in 0..total {
            let mut seq = Vec::with_capacity(len);
            let mut rest = code;
            for _ in 0..len {
                seq.push(rest % n);
                rest /= n;
            }
            let edges = prufer_decode(&seq, n);
            if seen.insert(tree_canonical_form(&edges, n)) {
                let graph = Graph::from_edge_list(&edges)
                    .expect("Prüfer decoding always yields a connected tree");
                out.push(PoolEntry {
                    label: format!("tree-n{n}-{index}"),
                    graph,
                });
                index += 1;
            }
        }
    }
    out
}

/// The Petersen graph: 3-regular on 10 vertices, girth 5.
pub fn petersen() -> Graph {
    Graph::from_edge_list(&[
        // outer 5-cycle
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 0),
        // inner pentagram
        (5, 7),
        (7, 9),
        (9, 6),
        (6, 8),
        (8, 5),
        // spokes
        (0, 5),
        (1, 6),
        (2, 7),
        (3, 8),
        (4, 9),
    ])
    .expect("the Petersen graph is connected")
}

/// A random connected graph: order drawn from `2..=max_n`, then
/// Erdős–Rényi edges at a density drawn from `[0.15, 0.95)`, redrawn
/// until the result is connected on the full vertex set.
fn random_connected(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    loop {
        let n = rng.random_range(2..=max_n);
        let p = rng.random_range(0.15..0.95);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        if edges.is_empty() {
            continue;
        }
        // Isolated vertices never reach the edge list, so a successful
        // parse with fewer than n vertices is a silently shrunken draw —
        // reject it along with the disconnected ones.
        if let Ok(g) = Graph::from_edge_list(&edges) {
            if g.vertex_count() == n {
                return g;
            }
        }
    }
}

/// The standard verification pool: all 24 trees up to 7 vertices, cycles
/// `C_3..C_10`, complete graphs `K_2..K_6`, stars `S_2..S_10`, the
/// Petersen graph, and 100 seeded random connected graphs on up to 12
/// vertices. Equal seeds produce identical pools.
pub fn standard_pool(seed: u64) -> Vec<PoolEntry> {
    let mut pool = all_trees_up_to_seven();
    for n in 3..=10 {
        pool.push(PoolEntry {
            label: format!("cycle-{n}"),
            graph: Graph::cycle(n).expect("n >= 3"),
        });
    }
    for n in 2..=6 {
        pool.push(PoolEntry {
            label: format!("complete-{n}"),
            graph: Graph::complete(n).expect("n >= 2"),
        });
    }
    for n in 2..=10 {
        pool.push(PoolEntry {
            label: format!("star-{n}"),
            graph: Graph::star(n).expect("n >= 2"),
        });
    }
    pool.push(PoolEntry {
        label: "petersen".into(),
        graph: petersen(),
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..100 {
        pool.push(PoolEntry {
            label: format!("random-{i}"),
            graph: random_connected(&mut rng, 12),
        });
    }
    pool
}

/// Applies `f` to every pool entry, in order, through the crate's
/// parallel seam. The output index matches the pool index, so failures
/// can be attributed by label.
pub fn sweep<T, F>(pool: &[PoolEntry], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&PoolEntry) -> T + Sync + Send,
{
    map_slice(pool, f)
}
