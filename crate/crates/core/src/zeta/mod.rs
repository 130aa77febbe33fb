//! Zeta-type determinant evaluations on a graph and the reduced
//! (backtrack-free) cycle counts behind them.
//!
//! Four reciprocals are computed, all as complex LU determinants:
//!
//! * the vertex route `(1 - u^2)^(m-n) * det(I - uA + u^2(D - I))`;
//! * the arc route `det(I - uE)` over the non-backtracking edge matrix —
//!   the same function evaluated on a `2m x 2m` determinant instead;
//! * the walk zeta `det(I - uU)` of the Grover operator itself;
//! * the right-hand side `(1 - u^2)^(m-n) * det((1 + u^2)I - 2uP)` of the
//!   determinant identity that reduces the `2m x 2m` walk determinant to
//!   the `n x n` random-walk matrix.
//!
//! The first two agree identically (same zeta function through two
//! independent determinants); the last two agree identically (the walk
//! determinant factors through the transition matrix). Both equalities are
//! exercised by sampled verification in [`verify`].
//!
//! [`reduced_cycle_count`] ties the linear algebra back to combinatorics:
//! the trace of the r-th power of the edge matrix must equal a brute-force
//! enumeration of closed backtrack-free arc sequences, exactly, as
//! integers. The count is checked internally on every call at small sizes.

pub mod verify;
pub mod zeros;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::graph::{ArcIndex, Graph};
use crate::operators::{edge_matrix, grover_matrix, transition_matrix};
use crate::spectral::SpectralError;

pub use verify::{
    verify_all, verify_functional_equation, verify_identity, verify_ihara_bass, verify_konno_sato,
    verify_riemann_hypothesis, verify_spectral_map, Identity, SampleCheck, VerificationReport,
    VerifyParams,
};
pub use zeros::{
    completed_zeta, critical_line_ordinate, fundamental_spectrum, zero_set, CompletedZeta,
    FundamentalSpectrum, Gamma, ZeroSet, ZeroSetCase,
};

/// Points closer than this to `u^2 = 1` are treated as poles of the
/// reciprocal when the exponent `m - n` is negative.
pub const POLE_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ZetaError {
    #[error("u = {u} is a pole of the evaluation (u^2 = 1 with m < n)")]
    PoleAtU { u: Complex64 },
    #[error(
        "cycle-count mismatch at length {r}: trace formula gives {trace}, \
         enumeration gives {enumerated} (arc indexing is inconsistent)"
    )]
    OracleMismatch {
        r: usize,
        trace: u64,
        enumerated: u64,
    },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// `det(I - u*M)` of a real matrix at a complex point, by complex LU.
pub(crate) fn det_i_minus_u(mat: &DMatrix<f64>, u: Complex64) -> Complex64 {
    let k = mat.nrows();
    let shifted = DMatrix::from_fn(k, k, |i, j| {
        let delta = if i == j {
            Complex64::ONE
        } else {
            Complex64::ZERO
        };
        delta - u * mat[(i, j)]
    });
    shifted.lu().determinant()
}

fn unit_power(u: Complex64, exp: i32) -> Complex64 {
    if exp == 0 {
        Complex64::ONE
    } else {
        (Complex64::ONE - u * u).powi(exp)
    }
}

/// Reciprocal of the vertex zeta via the `n x n` determinant:
/// `(1 - u^2)^(m - n) * det(I - uA + u^2(D - I))`.
pub fn ihara_reciprocal_bass(g: &Graph, u: Complex64) -> Complex64 {
    let n = g.vertex_count();
    let u2 = u * u;
    let mat = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::ONE + u2 * (g.degree(i) as f64 - 1.0)
        } else if g.has_edge(i, j) {
            -u
        } else {
            Complex64::ZERO
        }
    });
    unit_power(u, g.edge_count() as i32 - n as i32) * mat.lu().determinant()
}

/// Reciprocal of the same zeta via the `2m x 2m` arc determinant
/// `det(I - uE)`, with `E` the non-backtracking edge matrix.
pub fn ihara_reciprocal_edge(g: &Graph, u: Complex64) -> Complex64 {
    det_i_minus_u(&edge_matrix(g), u)
}

/// Reciprocal of the walk zeta: `det(I - uU)` over the Grover operator.
pub fn grover_zeta_reciprocal(g: &Graph, u: Complex64) -> Complex64 {
    det_i_minus_u(&grover_matrix(g), u)
}

pub(crate) fn konno_sato_rhs_with(
    p: &DMatrix<f64>,
    n: usize,
    m: usize,
    u: Complex64,
) -> Result<Complex64, ZetaError> {
    let u2 = u * u;
    if m < n && (u2 - Complex64::ONE).norm() < POLE_GUARD {
        return Err(ZetaError::PoleAtU { u });
    }
    let mat = DMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j {
            Complex64::ONE + u2
        } else {
            Complex64::ZERO
        };
        delta - 2.0 * u * p[(i, j)]
    });
    Ok(unit_power(u, m as i32 - n as i32) * mat.lu().determinant())
}

/// The `n x n` reduction of the walk determinant:
/// `(1 - u^2)^(m - n) * det((1 + u^2)I - 2uP)`. Identically equal to
/// [`grover_zeta_reciprocal`], but evaluated on the transition matrix —
/// the independent side of the determinant identity.
///
/// For trees (`m < n`) the `(1 - u^2)` factor sits in the denominator, so
/// `u^2 = 1` (within [`POLE_GUARD`]) is rejected as a pole.
pub fn konno_sato_rhs(g: &Graph, u: Complex64) -> Result<Complex64, ZetaError> {
    konno_sato_rhs_with(&transition_matrix(g), g.vertex_count(), g.edge_count(), u)
}

/// Counts closed backtrack-free arc sequences of length `r` as the trace
/// of the r-th power of the edge matrix, cross-checked against exhaustive
/// enumeration whenever that is cheap (`r <= 6` and `2m <= 60`). The two
/// routes must agree exactly as integers; disagreement means the arc
/// indexing is broken and is reported as [`ZetaError::OracleMismatch`].
pub fn reduced_cycle_count(g: &Graph, r: usize) -> Result<u64, ZetaError> {
    assert!(r >= 1, "cycle length must be at least 1");
    let e = edge_matrix(g);
    let mut power = e.clone();
    for _ in 1..r {
        power = &power * &e;
    }
    let trace = power.trace();
    debug_assert!(
        (trace - trace.round()).abs() < 1e-6,
        "trace of an integer matrix power must be an integer, got {trace}"
    );
    let count = trace.round() as u64;

    if r <= 6 && 2 * g.edge_count() <= 60 {
        let enumerated = enumerate_closed_non_backtracking(g, r);
        if enumerated != count {
            return Err(ZetaError::OracleMismatch {
                r,
                trace: count,
                enumerated,
            });
        }
    }
    Ok(count)
}

/// Exhaustive depth-first enumeration of arc sequences `e_1, .., e_r` with
/// each arc continuing the previous one without reversal, cyclically
/// (including the wrap-around step `e_r -> e_1`).
fn enumerate_closed_non_backtracking(g: &Graph, r: usize) -> u64 {
    let arcs = ArcIndex::new(g);
    let k = arcs.arc_count();
    let successors: Vec<Vec<usize>> = (0..k)
        .map(|e| {
            (0..k)
                .filter(|&f| arcs.origin(f) == arcs.terminus(e) && f != arcs.inverse(e))
                .collect()
        })
        .collect();

    fn extend(
        successors: &[Vec<usize>],
        arcs: &ArcIndex,
        start: usize,
        last: usize,
        depth: usize,
        r: usize,
    ) -> u64 {
        if depth == r {
            let closes = arcs.origin(start) == arcs.terminus(last) && start != arcs.inverse(last);
            return closes as u64;
        }
        successors[last]
            .iter()
            .map(|&f| extend(successors, arcs, start, f, depth + 1, r))
            .sum()
    }

    (0..k)
        .map(|start| extend(&successors, &arcs, start, start, 1, r))
        .sum()
}
