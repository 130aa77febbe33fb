//! Dense operator matrices attached to a graph: the Grover coin-walk
//! operator on arcs, its positive support, and the vertex-space random-walk,
//! adjacency, degree, and Laplacian matrices.
//!
//! All matrices are real dense `f64` and indexed by the canonical vertex and
//! arc orders from [`crate::graph`]. Dense storage is deliberate: the graphs
//! this crate targets are desk-scale (hundreds of arcs), and dense
//! eigensolves keep the spectral routines simple and predictable.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::graph::{ArcIndex, Graph};

/// Entries of a support matrix strictly above this threshold count as
/// positive. The Grover matrix has no entries in `(0, 2/d_max)` other than
/// exact zeros, so any cutoff well below `2/d_max` is safe; this one leaves
/// twelve orders of magnitude of headroom.
pub const SUPPORT_THRESHOLD: f64 = 1e-12;

/// The Grover walk operator on the `2m` arcs of `g`.
///
/// Row `e`, column `f` is nonzero only when arc `f` flows into arc `e`
/// (the terminus of `f` is the origin of `e`): the weight is `2/d - 1` on
/// the back-tracking transition `f = inverse(e)` and `2/d` otherwise, where
/// `d` is the degree of the shared vertex. The matrix is orthogonal and
/// every row sums to 1.
pub fn grover_matrix(g: &Graph) -> DMatrix<f64> {
    let arcs = ArcIndex::new(g);
    let k = arcs.arc_count();
    DMatrix::from_fn(k, k, |e, f| {
        if arcs.terminus(f) != arcs.origin(e) {
            return 0.0;
        }
        let d = g.degree(arcs.origin(e)) as f64;
        if f == arcs.inverse(e) {
            2.0 / d - 1.0
        } else {
            2.0 / d
        }
    })
}

/// The 0/1 positive support of a matrix: 1 where the entry exceeds
/// [`SUPPORT_THRESHOLD`], 0 elsewhere. Applied to the Grover matrix this
/// yields the non-backtracking arc-transition matrix (degree-1 vertices are
/// the one case where the back-tracking weight `2/d - 1 = 1` stays positive).
pub fn positive_support(m: &DMatrix<f64>) -> DMatrix<f64> {
    m.map(|x| if x > SUPPORT_THRESHOLD { 1.0 } else { 0.0 })
}

/// The non-backtracking edge matrix on arcs: entry `(e, f)` is 1 exactly
/// when arc `f` continues arc `e` (origin of `f` = terminus of `e`) without
/// reversing it. Its transpose shares the support of the Grover matrix
/// except at degree-1 vertices: there the Grover reversal weight
/// `2/1 - 1 = 1` stays positive even though the step backtracks, so
/// [`positive_support`] of the (transposed) Grover matrix picks up
/// bounce-back entries at leaves that this matrix must not contain. The
/// two coincide exactly on graphs of minimum degree 2; the combinatorial
/// definition here is the one under which the vertex-determinant and
/// arc-determinant zeta evaluations agree on every connected graph, trees
/// included, and under which `tr(E^r)` counts backtrack-free closed paths.
pub fn edge_matrix(g: &Graph) -> DMatrix<f64> {
    let arcs = ArcIndex::new(g);
    let k = arcs.arc_count();
    DMatrix::from_fn(k, k, |e, f| {
        if arcs.origin(f) == arcs.terminus(e) && f != arcs.inverse(e) {
            1.0
        } else {
            0.0
        }
    })
}

/// Simple random-walk transition matrix: `P[u][v] = 1/deg(u)` when `u ~ v`.
pub fn transition_matrix(g: &Graph) -> DMatrix<f64> {
    let n = g.vertex_count();
    let mut p = DMatrix::zeros(n, n);
    for u in 0..n {
        let w = 1.0 / g.degree(u) as f64;
        for &v in g.neighbors(u) {
            p[(u, v)] = w;
        }
    }
    p
}

/// Symmetric 0/1 adjacency matrix.
pub fn adjacency_matrix(g: &Graph) -> DMatrix<f64> {
    let n = g.vertex_count();
    let mut a = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a
}

/// Diagonal degree matrix.
pub fn degree_matrix(g: &Graph) -> DMatrix<f64> {
    let n = g.vertex_count();
    DMatrix::from_fn(n, n, |i, j| if i == j { g.degree(i) as f64 } else { 0.0 })
}

/// Combinatorial Laplacian `D - A`.
pub fn laplacian_matrix(g: &Graph) -> DMatrix<f64> {
    degree_matrix(g) - adjacency_matrix(g)
}

/// The full operator bundle for one graph, built once and shared by the
/// verification routines so repeated identity checks do not rebuild
/// matrices per sample point.
#[derive(Debug, Clone)]
pub struct WalkOperators {
    pub graph: Graph,
    pub arcs: ArcIndex,
    /// Grover walk operator on arcs (`2m x 2m`).
    pub grover: DMatrix<f64>,
    /// Positive support of `grover` (`2m x 2m`, entries 0/1).
    pub support: DMatrix<f64>,
    /// Non-backtracking edge matrix (`2m x 2m`, entries 0/1).
    pub edge: DMatrix<f64>,
    /// Random-walk transition matrix (`n x n`).
    pub transition: DMatrix<f64>,
    pub adjacency: DMatrix<f64>,
    pub degree: DMatrix<f64>,
    pub laplacian: DMatrix<f64>,
}

impl WalkOperators {
    pub fn build(g: &Graph) -> Self {
        let grover = grover_matrix(g);
        let support = positive_support(&grover);
        let adjacency = adjacency_matrix(g);
        let degree = degree_matrix(g);
        WalkOperators {
            arcs: ArcIndex::new(g),
            grover,
            support,
            edge: edge_matrix(g),
            transition: transition_matrix(g),
            laplacian: &degree - &adjacency,
            adjacency,
            degree,
            graph: g.clone(),
        }
    }
}

#[derive(Serialize)]
struct MatrixJson<'a> {
    rows: usize,
    cols: usize,
    data: &'a [f64],
}

/// JSON form `{"rows": r, "cols": c, "data": [row-major entries]}`.
pub fn matrix_to_json(m: &DMatrix<f64>) -> String {
    // nalgebra stores column-major; emit row-major as documented.
    let data: Vec<f64> = (0..m.nrows())
        .flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
        .map(|ij| m[ij])
        .collect();
    serde_json::to_string(&MatrixJson {
        rows: m.nrows(),
        cols: m.ncols(),
        data: &data,
    })
    .expect("matrix serialization cannot fail")
}

/// CSV form: one row per line, full shortest-round-trip precision.
pub fn matrix_to_csv(m: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format!("{}", m[(i, j)])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // ── Grover operator structure ────────────────────────────────────────

    #[test]
    fn k2_grover_is_the_swap() {
        // Both vertices have degree 1, so the back-tracking weight is
        // 2/1 - 1 = 1 and the operator swaps the two arcs.
        let g = Graph::complete(2).unwrap();
        let u = grover_matrix(&g);
        assert_eq!(u, DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]));
    }

    #[test]
    fn triangle_grover_entries() {
        let g = Graph::cycle(3).unwrap();
        let u = grover_matrix(&g);
        let arcs = ArcIndex::new(&g);
        for e in 0..6 {
            for f in 0..6 {
                // Coin weight 2/2 on a continuing arc; off-path entries
                // and the reversal (2/2 - 1) both vanish at degree 2.
                let continues = arcs.terminus(f) == arcs.origin(e) && f != arcs.inverse(e);
                let expect = if continues { 1.0 } else { 0.0 };
                assert_eq!(u[(e, f)], expect, "entry ({e}, {f})");
            }
        }
    }

    #[test]
    fn grover_rows_sum_to_one() {
        for g in [
            Graph::complete(5).unwrap(),
            Graph::cycle(7).unwrap(),
            Graph::star(6).unwrap(),
        ] {
            let u = grover_matrix(&g);
            for e in 0..u.nrows() {
                let s: f64 = u.row(e).iter().sum();
                assert_abs_diff_eq!(s, 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn grover_is_orthogonal() {
        for g in [
            Graph::complete(4).unwrap(),
            Graph::cycle(5).unwrap(),
            Graph::star(9).unwrap(),
        ] {
            let u = grover_matrix(&g);
            let k = u.nrows();
            let prod = &u * u.transpose();
            let err = (&prod - DMatrix::<f64>::identity(k, k)).abs().max();
            assert!(err < 1e-12, "U U^T deviates from identity by {err}");
        }
    }

    // ── positive support ─────────────────────────────────────────────────

    #[test]
    fn support_thresholds_entries() {
        let m = DMatrix::from_row_slice(2, 2, &[0.5, -0.5, 0.0, 1.0]);
        let s = positive_support(&m);
        assert_eq!(s, DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]));
    }

    #[test]
    fn support_of_triangle_grover_drops_backtracking() {
        let g = Graph::cycle(3).unwrap();
        let s = positive_support(&grover_matrix(&g));
        let arcs = ArcIndex::new(&g);
        // Row sums of the support: continuations that are not reversals.
        // Every degree-2 vertex leaves exactly one of them per arc.
        for e in 0..6 {
            let row: f64 = s.row(e).iter().sum();
            assert_eq!(row, 1.0);
            assert_eq!(s[(e, arcs.inverse(e))], 0.0);
        }
    }

    #[test]
    fn support_keeps_pendant_backtracking() {
        // The only continuation of an arc into a leaf is its own reversal,
        // with weight 2/1 - 1 = 1; into the hub the reversal weight is
        // negative and the support drops it.
        let g = Graph::star(4).unwrap();
        let arcs = ArcIndex::new(&g);
        let s = positive_support(&grover_matrix(&g));
        for e in 0..arcs.arc_count() {
            let into_leaf = g.degree(arcs.terminus(e)) == 1;
            let expect = if into_leaf { 1.0 } else { 0.0 };
            assert_eq!(s[(arcs.inverse(e), e)], expect, "reversal after arc {e}");
        }
    }

    #[test]
    fn edge_matrix_is_transposed_support_without_leaves() {
        // Minimum degree 2: the supports coincide exactly.
        for g in [Graph::cycle(5).unwrap(), Graph::complete(4).unwrap()] {
            let e = edge_matrix(&g);
            let s = positive_support(&grover_matrix(&g).transpose());
            assert_eq!(e, s, "mismatch on md2 graph");
        }
        // With leaves they differ exactly at the bounce-back entries.
        let g = Graph::star(4).unwrap();
        let e = edge_matrix(&g);
        let s = positive_support(&grover_matrix(&g).transpose());
        let arcs = ArcIndex::new(&g);
        let mut diffs = 0;
        for a in 0..arcs.arc_count() {
            for b in 0..arcs.arc_count() {
                if e[(a, b)] != s[(a, b)] {
                    assert_eq!(b, arcs.inverse(a), "difference must be a reversal");
                    assert_eq!(g.degree(arcs.terminus(a)), 1, "only at a leaf");
                    diffs += 1;
                }
            }
        }
        assert_eq!(diffs, 3, "one bounce-back entry per leaf");
    }

    // ── vertex-space matrices ────────────────────────────────────────────

    #[test]
    fn transition_rows_are_stochastic() {
        let g = Graph::star(7).unwrap();
        let p = transition_matrix(&g);
        for u in 0..7 {
            let s: f64 = p.row(u).iter().sum();
            assert_abs_diff_eq!(s, 1.0, epsilon = 1e-15);
        }
        assert_eq!(p[(0, 3)], 1.0 / 6.0);
        assert_eq!(p[(3, 0)], 1.0);
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let g = Graph::complete(4).unwrap();
        let l = laplacian_matrix(&g);
        for i in 0..4 {
            let s: f64 = l.row(i).iter().sum();
            assert_eq!(s, 0.0);
        }
        assert_eq!(l[(0, 0)], 3.0);
        assert_eq!(l[(0, 1)], -1.0);
    }

    #[test]
    fn operator_bundle_dimensions() {
        let g = Graph::cycle(4).unwrap();
        let ops = WalkOperators::build(&g);
        assert_eq!(ops.grover.nrows(), 8);
        assert_eq!(ops.support.nrows(), 8);
        assert_eq!(ops.transition.nrows(), 4);
        assert_eq!(ops.laplacian, &ops.degree - &ops.adjacency);
    }

    // ── export formats ───────────────────────────────────────────────────

    #[test]
    fn matrix_json_is_row_major() {
        let m = DMatrix::from_row_slice(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(
            matrix_to_json(&m),
            r#"{"rows":2,"cols":3,"data":[1.0,2.0,3.0,4.0,5.0,6.0]}"#
        );
    }

    #[test]
    fn matrix_csv_round_trips_values() {
        let m = DMatrix::from_row_slice(2, 2, &[0.5, -1.0 / 3.0, 0.0, 2.0]);
        let csv = matrix_to_csv(&m);
        let mut vals = Vec::new();
        for line in csv.lines() {
            for field in line.split(',') {
                vals.push(field.parse::<f64>().unwrap());
            }
        }
        assert_eq!(vals, vec![0.5, -1.0 / 3.0, 0.0, 2.0]);
    }
}
