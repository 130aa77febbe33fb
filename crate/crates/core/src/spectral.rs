//! Eigenvalue multisets of walk operators and the exact correspondence
//! between the random-walk spectrum on vertices and the Grover walk
//! spectrum on arcs.
//!
//! Both spectra are represented as [`Spectrum`]: a sorted list of distinct
//! eigenvalues with integer multiplicities, produced by single-linkage
//! clustering of the raw solver output at an absolute tolerance. The
//! correspondence maps each random-walk eigenvalue `lambda` to the
//! conjugate pair `lambda +- i*sqrt(1 - lambda^2)` on the unit circle and
//! then corrects for the dimension gap between the `n`-vertex and
//! `2m`-arc spaces: surplus `+-1` eigenvalues are appended when `m > n`
//! and removed when `m < n` (trees).

use std::collections::HashMap;

use nalgebra::linalg::{Schur, SymmetricEigen};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::graph::Graph;
use crate::operators::{adjacency_matrix, grover_matrix, laplacian_matrix, positive_support};

/// Default absolute tolerance for grouping raw eigenvalues into
/// multiplicity classes.
pub const DEFAULT_GROUPING_TOL: f64 = 1e-9;

/// Random-walk eigenvalues may drift this far outside `[-1, 1]` before the
/// clamp refuses and reports an out-of-range error.
pub const UNIT_CLAMP_TOL: f64 = 1e-9;

/// Default radius used when matching two spectra as multisets.
pub const MATCH_RADIUS: f64 = 1e-8;

/// Iteration cap for the QR-type eigensolvers; generous for the dense
/// desk-scale matrices this crate targets, but finite so a pathological
/// input fails loudly instead of spinning.
const EIG_MAX_NITER: usize = 100_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectralError {
    #[error("eigensolver did not converge on the {what} ({dim} x {dim})")]
    EigensolveFailure { what: &'static str, dim: usize },
    #[error("eigenvalue {value} lies outside [-1, 1] by more than {tol}")]
    OutOfRange { value: f64, tol: f64 },
    #[error(
        "ambiguous clustering: group means {a} and {b} are within the grouping tolerance {tol}"
    )]
    AmbiguousClustering {
        a: Complex64,
        b: Complex64,
        tol: f64,
    },
    #[error("cannot remove {needed} copies of {value}: only {available} present")]
    RemovalUnderflow {
        value: f64,
        needed: usize,
        available: usize,
    },
}

/// A multiset of eigenvalues: distinct representatives (cluster means)
/// with multiplicities, sorted by real part then imaginary part.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    entries: Vec<(Complex64, usize)>,
    grouping_tol: f64,
}

#[derive(Serialize)]
struct SpectrumEntryJson {
    re: f64,
    im: f64,
    mult: usize,
}

#[derive(Serialize)]
struct SpectrumJson {
    entries: Vec<SpectrumEntryJson>,
    tol: f64,
}

impl Spectrum {
    /// Sorts entries, merging any that share bit-identical values.
    fn new(entries: Vec<(Complex64, usize)>, grouping_tol: f64) -> Self {
        let mut entries: Vec<(Complex64, usize)> =
            entries.into_iter().filter(|&(_, c)| c > 0).collect();
        entries.sort_by(|a, b| {
            a.0.re
                .total_cmp(&b.0.re)
                .then_with(|| a.0.im.total_cmp(&b.0.im))
        });
        entries.dedup_by(|next, prev| {
            if next.0 == prev.0 {
                prev.1 += next.1;
                true
            } else {
                false
            }
        });
        Spectrum {
            entries,
            grouping_tol,
        }
    }

    /// Distinct eigenvalues with multiplicities, sorted by `(re, im)`.
    pub fn entries(&self) -> &[(Complex64, usize)] {
        &self.entries
    }

    pub fn grouping_tol(&self) -> f64 {
        self.grouping_tol
    }

    /// Sum of multiplicities; equals the operator dimension.
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|&(_, c)| c).sum()
    }

    /// Flattens to one value per multiplicity, in sorted order.
    pub fn expand(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.total_multiplicity());
        for &(z, c) in &self.entries {
            out.extend(std::iter::repeat_n(z, c));
        }
        out
    }

    /// Total multiplicity within `tol` of `value`.
    pub fn multiplicity_at(&self, value: Complex64, tol: f64) -> usize {
        self.entries
            .iter()
            .filter(|&&(z, _)| (z - value).norm() <= tol)
            .map(|&(_, c)| c)
            .sum()
    }

    /// JSON form `{"entries": [{"re", "im", "mult"}, ..], "tol": ..}`.
    pub fn to_json(&self) -> String {
        let doc = SpectrumJson {
            entries: self
                .entries
                .iter()
                .map(|&(z, c)| SpectrumEntryJson {
                    re: z.re,
                    im: z.im,
                    mult: c,
                })
                .collect(),
            tol: self.grouping_tol,
        };
        serde_json::to_string(&doc).expect("spectrum serialization cannot fail")
    }

    /// Snaps real entries within `tol` of `+-1` to exactly `+-1`.
    /// Connected graphs always carry the eigenvalue 1 (and bipartite ones
    /// -1); downstream case analysis branches on these values exactly, so
    /// they must not be left at `1 - 1e-15`.
    fn snap_real_units(&mut self, tol: f64) {
        for (z, _) in &mut self.entries {
            if z.im == 0.0 {
                if (z.re - 1.0).abs() <= tol {
                    z.re = 1.0;
                } else if (z.re + 1.0).abs() <= tol {
                    z.re = -1.0;
                }
            }
        }
        *self = Spectrum::new(std::mem::take(&mut self.entries), self.grouping_tol);
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Groups raw eigenvalues into multiplicity classes by single-linkage
/// clustering at absolute tolerance `tol`; representatives are cluster
/// means. Errors if two representatives end up within `tol` of each other
/// (chained clusters), since multiplicities would then depend on
/// tie-breaking.
pub fn group_multiplicities(raw: &[Complex64], tol: f64) -> Result<Spectrum, SpectralError> {
    assert!(tol > 0.0, "grouping tolerance must be positive, got {tol}");
    let k = raw.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| raw[i].re.total_cmp(&raw[j].re));

    let mut parent: Vec<usize> = (0..k).collect();
    for a in 0..k {
        for b in (a + 1)..k {
            let (i, j) = (order[a], order[b]);
            // Sorted by real part: once that gap alone exceeds tol, no
            // later point can link to i.
            if raw[j].re - raw[i].re > tol {
                break;
            }
            if (raw[i] - raw[j]).norm() <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }

    let mut clusters: HashMap<usize, (Complex64, usize)> = HashMap::new();
    for (i, &z) in raw.iter().enumerate() {
        let root = find(&mut parent, i);
        let slot = clusters.entry(root).or_insert((Complex64::ZERO, 0));
        slot.0 += z;
        slot.1 += 1;
    }
    let entries: Vec<(Complex64, usize)> = clusters
        .into_values()
        .map(|(sum, count)| (sum / count as f64, count))
        .collect();

    let spectrum = Spectrum::new(entries, tol);
    for (idx, &(a, _)) in spectrum.entries.iter().enumerate() {
        for &(b, _) in &spectrum.entries[idx + 1..] {
            if (a - b).norm() <= tol {
                return Err(SpectralError::AmbiguousClustering { a, b, tol });
            }
        }
    }
    Ok(spectrum)
}

fn symmetric_eigenvalues(mat: DMatrix<f64>, what: &'static str) -> Result<Vec<f64>, SpectralError> {
    let dim = mat.nrows();
    let eig = SymmetricEigen::try_new(mat, f64::EPSILON, EIG_MAX_NITER)
        .ok_or(SpectralError::EigensolveFailure { what, dim })?;
    Ok(eig.eigenvalues.iter().copied().collect())
}

fn schur_eigenvalues(
    mat: DMatrix<f64>,
    what: &'static str,
) -> Result<Vec<Complex64>, SpectralError> {
    let dim = mat.nrows();
    let schur = Schur::try_new(mat, f64::EPSILON, EIG_MAX_NITER)
        .ok_or(SpectralError::EigensolveFailure { what, dim })?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

fn clamp_unit(x: f64) -> Result<f64, SpectralError> {
    if x.abs() > 1.0 + UNIT_CLAMP_TOL {
        return Err(SpectralError::OutOfRange {
            value: x,
            tol: UNIT_CLAMP_TOL,
        });
    }
    Ok(x.clamp(-1.0, 1.0))
}

/// Eigenvalue multiset of the random-walk transition matrix `P`.
///
/// `P = D^{-1} A` is similar to the symmetric `D^{-1/2} A D^{-1/2}`, so the
/// spectrum is real and lives in `[-1, 1]`; a symmetric eigensolver on the
/// similar matrix keeps it that way numerically. Values are clamped to
/// `[-1, 1]` (error beyond [`UNIT_CLAMP_TOL`]) and entries within the
/// grouping tolerance of `+-1` are snapped exactly, so callers can branch
/// on `lambda == 1.0` / `lambda == -1.0`. Total multiplicity is `n`; all
/// imaginary parts are exactly zero.
pub fn rw_spectrum(g: &Graph, tol: f64) -> Result<Spectrum, SpectralError> {
    let n = g.vertex_count();
    let mut sym = adjacency_matrix(g);
    let inv_sqrt: Vec<f64> = (0..n).map(|v| 1.0 / (g.degree(v) as f64).sqrt()).collect();
    for i in 0..n {
        for j in 0..n {
            sym[(i, j)] *= inv_sqrt[i] * inv_sqrt[j];
        }
    }
    let vals = symmetric_eigenvalues(sym, "random-walk transition matrix")?;
    let mut raw = Vec::with_capacity(n);
    for v in vals {
        raw.push(Complex64::new(clamp_unit(v)?, 0.0));
    }
    let mut spec = group_multiplicities(&raw, tol)?;
    spec.snap_real_units(tol);
    Ok(spec)
}

/// Eigenvalue multiset of the combinatorial Laplacian `D - A`
/// (real, non-negative, smallest eigenvalue 0).
pub fn laplacian_spectrum(g: &Graph, tol: f64) -> Result<Spectrum, SpectralError> {
    let vals = symmetric_eigenvalues(laplacian_matrix(g), "Laplacian")?;
    let raw: Vec<Complex64> = vals.into_iter().map(|v| Complex64::new(v, 0.0)).collect();
    group_multiplicities(&raw, tol)
}

/// Maps a random-walk eigenvalue onto its conjugate pair
/// `lambda +- i*sqrt(1 - lambda^2)` on the unit circle. At `lambda = +-1`
/// the two members coincide.
pub fn spectral_map(lambda: f64) -> Result<(Complex64, Complex64), SpectralError> {
    let l = clamp_unit(lambda)?;
    let s = (1.0 - l * l).max(0.0).sqrt();
    Ok((Complex64::new(l, s), Complex64::new(l, -s)))
}

/// The angle `theta = arccos(lambda)` in `[0, pi]` under which a
/// random-walk eigenvalue appears on the unit circle.
pub fn joukowsky_angle(lambda: f64) -> Result<f64, SpectralError> {
    Ok(clamp_unit(lambda)?.acos())
}

/// Angles `arccos(lambda)` for every random-walk eigenvalue, ascending,
/// with the multiplicities carried over (total `n`).
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSpectrum {
    entries: Vec<(f64, usize)>,
}

impl AngleSpectrum {
    pub fn entries(&self) -> &[(f64, usize)] {
        &self.entries
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|&(_, c)| c).sum()
    }
}

/// Converts a random-walk spectrum to its angle form.
pub fn angle_spectrum(rw: &Spectrum) -> Result<AngleSpectrum, SpectralError> {
    let mut entries = Vec::with_capacity(rw.entries().len());
    for &(z, c) in rw.entries() {
        debug_assert_eq!(z.im, 0.0, "random-walk spectrum must be real");
        entries.push((joukowsky_angle(z.re)?, c));
    }
    entries.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(AngleSpectrum { entries })
}

fn remove_copies(
    acc: &mut Vec<(Complex64, usize)>,
    value: f64,
    needed: usize,
) -> Result<(), SpectralError> {
    let target = Complex64::new(value, 0.0);
    let available: usize = acc
        .iter()
        .filter(|&&(z, _)| z == target)
        .map(|&(_, c)| c)
        .sum();
    if available < needed {
        return Err(SpectralError::RemovalUnderflow {
            value,
            needed,
            available,
        });
    }
    let mut left = needed;
    acc.retain_mut(|(z, c)| {
        if *z == target && left > 0 {
            let take = left.min(*c);
            *c -= take;
            left -= take;
            *c > 0
        } else {
            true
        }
    });
    Ok(())
}

/// Grover walk spectrum computed from the random-walk spectrum alone.
///
/// Each random-walk eigenvalue `lambda` contributes the conjugate pair
/// `lambda +- i*sqrt(1 - lambda^2)` (a single point of doubled multiplicity
/// at `lambda = +-1`). The arc space has dimension `2m` against the `2n`
/// values produced so far, so the count is corrected with eigenvalues
/// `+-1`: appended with multiplicity `m - n` each when the graph has more
/// edges than vertices, untouched when `m = n`, and removed `n - m` times
/// each when `m < n` (trees). Total multiplicity is always `2m`.
pub fn grover_spectrum_via_mapping(g: &Graph, tol: f64) -> Result<Spectrum, SpectralError> {
    let rw = rw_spectrum(g, tol)?;
    let (n, m) = (g.vertex_count(), g.edge_count());
    let mut acc: Vec<(Complex64, usize)> = Vec::new();
    for &(z, mult) in rw.entries() {
        let l = z.re;
        if l == 1.0 || l == -1.0 {
            acc.push((Complex64::new(l, 0.0), 2 * mult));
        } else {
            let (up, down) = spectral_map(l)?;
            acc.push((up, mult));
            acc.push((down, mult));
        }
    }
    match m.cmp(&n) {
        std::cmp::Ordering::Greater => {
            acc.push((Complex64::new(1.0, 0.0), m - n));
            acc.push((Complex64::new(-1.0, 0.0), m - n));
        }
        std::cmp::Ordering::Equal => {}
        std::cmp::Ordering::Less => {
            remove_copies(&mut acc, 1.0, n - m)?;
            remove_copies(&mut acc, -1.0, n - m)?;
        }
    }
    Ok(Spectrum::new(acc, tol))
}

/// Grover walk spectrum computed directly: real Schur decomposition of the
/// `2m x 2m` arc operator. This is the independent route against which the
/// mapping route is verified.
pub fn grover_spectrum_direct(g: &Graph, tol: f64) -> Result<Spectrum, SpectralError> {
    let u = grover_matrix(g);
    match schur_eigenvalues(u.clone(), "Grover walk operator") {
        Ok(raw) => group_multiplicities(&raw, tol),
        // The real Schur iteration can fail to converge on tightly
        // clustered unit-circle spectra (a few hundred arcs suffice);
        // recover through the operator's symmetric part instead.
        Err(SpectralError::EigensolveFailure { .. }) => {
            grover_spectrum_from_symmetric_part(&u, tol)
        }
        Err(other) => Err(other),
    }
}

/// Walk spectrum recovered from the symmetric part `(U + U^T)/2`.
///
/// The walk operator is orthogonal (pinned by direct multiplication in
/// the operator tests), hence normal with a conjugate-symmetric spectrum
/// on the unit circle. Each interior eigenvalue `cos(theta)` of the
/// symmetric part therefore lifts to the conjugate pair
/// `cos(theta) +- i*sin(theta)` splitting its (necessarily even)
/// multiplicity, while the `+-1` cosines keep theirs. Symmetric
/// tridiagonal QR always converges, so this route has no iteration-budget
/// failure mode; it exists as the fallback for [`grover_spectrum_direct`].
fn grover_spectrum_from_symmetric_part(
    u: &DMatrix<f64>,
    tol: f64,
) -> Result<Spectrum, SpectralError> {
    let k = u.nrows();
    let sym = DMatrix::from_fn(k, k, |i, j| 0.5 * (u[(i, j)] + u[(j, i)]));
    let cosines = symmetric_eigenvalues(sym, "symmetric part of the walk operator")?;
    let raw: Vec<Complex64> = cosines
        .into_iter()
        .map(|x| Complex64::new(x, 0.0))
        .collect();
    let mut grouped = group_multiplicities(&raw, tol)?;
    grouped.snap_real_units(tol);
    let mut lifted: Vec<(Complex64, usize)> = Vec::new();
    for &(z, mult) in grouped.entries() {
        let x = clamp_unit(z.re)?;
        if x == 1.0 || x == -1.0 {
            lifted.push((Complex64::new(x, 0.0), mult));
        } else {
            if mult % 2 != 0 {
                // An odd interior multiplicity contradicts conjugate
                // symmetry: the matrix is not the normal operator this
                // route assumes.
                return Err(SpectralError::EigensolveFailure {
                    what: "conjugate-pair lift of the walk spectrum",
                    dim: k,
                });
            }
            let s = (1.0 - x * x).sqrt();
            lifted.push((Complex64::new(x, s), mult / 2));
            lifted.push((Complex64::new(x, -s), mult / 2));
        }
    }
    Ok(Spectrum::new(lifted, tol))
}

/// Spectrum of the positive support of the Grover operator (generally not
/// normal; eigenvalues may lie anywhere in the disk of its spectral radius).
pub fn support_spectrum(g: &Graph, tol: f64) -> Result<Spectrum, SpectralError> {
    let raw = schur_eigenvalues(
        positive_support(&grover_matrix(g)),
        "positive support matrix",
    )?;
    group_multiplicities(&raw, tol)
}

/// Outcome of greedily matching two spectra as flat multisets: nearest
/// available pairs within `radius` first, leftovers reported unmatched.
#[derive(Debug, Clone)]
pub struct MultisetMatch {
    /// Matched `(left, right, distance)` triples.
    pub pairs: Vec<(Complex64, Complex64, f64)>,
    pub unmatched_left: Vec<Complex64>,
    pub unmatched_right: Vec<Complex64>,
}

impl MultisetMatch {
    /// True when every value on both sides found a partner.
    pub fn is_complete(&self) -> bool {
        self.unmatched_left.is_empty() && self.unmatched_right.is_empty()
    }

    /// Largest matched distance (0 when nothing matched).
    pub fn max_distance(&self) -> f64 {
        self.pairs.iter().map(|p| p.2).fold(0.0, f64::max)
    }
}

/// Greedy nearest-first matching of two spectra expanded to flat multisets.
/// Complete matching within a small radius is how "equal as multisets up to
/// numerical error" is decided; a multiplicity disagreement always leaves
/// values unmatched.
pub fn match_multisets(a: &Spectrum, b: &Spectrum, radius: f64) -> MultisetMatch {
    let left = a.expand();
    let right = b.expand();
    let mut cands: Vec<(f64, usize, usize)> = Vec::new();
    for (i, &x) in left.iter().enumerate() {
        for (j, &y) in right.iter().enumerate() {
            let d = (x - y).norm();
            if d <= radius {
                cands.push((d, i, j));
            }
        }
    }
    cands.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)).then(p.2.cmp(&q.2)));

    let mut used_left = vec![false; left.len()];
    let mut used_right = vec![false; right.len()];
    let mut pairs = Vec::new();
    for (d, i, j) in cands {
        if !used_left[i] && !used_right[j] {
            used_left[i] = true;
            used_right[j] = true;
            pairs.push((left[i], right[j], d));
        }
    }
    let unmatched_left = left
        .iter()
        .zip(&used_left)
        .filter(|&(_, &u)| !u)
        .map(|(&z, _)| z)
        .collect();
    let unmatched_right = right
        .iter()
        .zip(&used_right)
        .filter(|&(_, &u)| !u)
        .map(|(&z, _)| z)
        .collect();
    MultisetMatch {
        pairs,
        unmatched_left,
        unmatched_right,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // ── grouping ─────────────────────────────────────────────────────────

    #[test]
    fn grouping_merges_within_tolerance() {
        let raw = [c(1.0, 0.0), c(1.0 + 5e-10, 0.0), c(0.5, 0.0)];
        let spec = group_multiplicities(&raw, 1e-9).unwrap();
        assert_eq!(spec.entries().len(), 2);
        assert_eq!(spec.entries()[0], (c(0.5, 0.0), 1));
        let (rep, mult) = spec.entries()[1];
        assert_eq!(mult, 2);
        assert_abs_diff_eq!(rep.re, 1.0 + 2.5e-10, epsilon = 1e-15);
        assert_eq!(spec.total_multiplicity(), 3);
    }

    #[test]
    fn grouping_uses_single_linkage_chains() {
        // 0.0 .. 0.8e-9 .. 1.6e-9: consecutive gaps under tol, ends apart.
        let raw = [c(0.0, 0.0), c(0.8e-9, 0.0), c(1.6e-9, 0.0)];
        let spec = group_multiplicities(&raw, 1e-9).unwrap();
        assert_eq!(spec.entries().len(), 1);
        assert_eq!(spec.entries()[0].1, 3);
    }

    #[test]
    fn grouping_rejects_ambiguous_means() {
        // 0 and i link (distance 1 = tol) into a cluster with mean i/2;
        // 0.9 + i/2 stays a singleton (distance ~1.03 from both members)
        // yet sits only 0.9 from that mean.
        let raw = [c(0.0, 0.0), c(0.0, 1.0), c(0.9, 0.5)];
        let err = group_multiplicities(&raw, 1.0).unwrap_err();
        assert!(
            matches!(err, SpectralError::AmbiguousClustering { .. }),
            "got {err:?}"
        );
    }

    #[test]
    fn grouping_of_empty_input() {
        let spec = group_multiplicities(&[], 1e-9).unwrap();
        assert!(spec.entries().is_empty());
        assert_eq!(spec.total_multiplicity(), 0);
    }

    // ── random-walk spectra (closed forms) ───────────────────────────────

    #[test]
    fn complete_graph_rw_spectrum() {
        // K_n: eigenvalue 1 once, -1/(n-1) with multiplicity n-1.
        let spec = rw_spectrum(&Graph::complete(4).unwrap(), 1e-9).unwrap();
        assert_eq!(spec.entries().len(), 2);
        let (low, high) = (spec.entries()[0], spec.entries()[1]);
        assert_eq!(high, (c(1.0, 0.0), 1));
        assert_eq!(low.1, 3);
        assert_abs_diff_eq!(low.0.re, -1.0 / 3.0, epsilon = 1e-12);
        assert_eq!(spec.total_multiplicity(), 4);
    }

    #[test]
    fn cycle_rw_spectrum_is_cosines() {
        // C_4: cos(2*pi*k/4) for k = 0..3 -> {1, 0, 0, -1}.
        let spec = rw_spectrum(&Graph::cycle(4).unwrap(), 1e-9).unwrap();
        let expect = [(-1.0, 1usize), (0.0, 2), (1.0, 1)];
        assert_eq!(spec.entries().len(), 3);
        for ((z, c), (val, mult)) in spec.entries().iter().zip(expect) {
            assert_abs_diff_eq!(z.re, val, epsilon = 1e-12);
            assert_eq!(z.im, 0.0);
            assert_eq!(*c, mult);
        }
    }

    #[test]
    fn star_rw_spectrum() {
        // Stars are bipartite with a flat middle: {1, 0^(n-2), -1}.
        let spec = rw_spectrum(&Graph::star(5).unwrap(), 1e-9).unwrap();
        assert_eq!(spec.entries()[0], (c(-1.0, 0.0), 1));
        assert_eq!(spec.entries()[2], (c(1.0, 0.0), 1));
        assert_eq!(spec.entries()[1].1, 3);
        assert_abs_diff_eq!(spec.entries()[1].0.re, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn rw_units_are_snapped_exactly() {
        let spec = rw_spectrum(&Graph::cycle(6).unwrap(), 1e-9).unwrap();
        let top = spec.entries().last().unwrap();
        let bottom = spec.entries().first().unwrap();
        assert_eq!(top.0.re.to_bits(), 1.0f64.to_bits());
        assert_eq!(bottom.0.re.to_bits(), (-1.0f64).to_bits());
    }

    #[test]
    fn laplacian_spectrum_of_complete_graph() {
        // K_n Laplacian: {0, n^(n-1)}.
        let spec = laplacian_spectrum(&Graph::complete(5).unwrap(), 1e-9).unwrap();
        assert_eq!(spec.entries().len(), 2);
        assert_abs_diff_eq!(spec.entries()[0].0.re, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(spec.entries()[1].0.re, 5.0, epsilon = 1e-10);
        assert_eq!(spec.entries()[1].1, 4);
    }

    // ── unit-circle map and angles ───────────────────────────────────────

    #[test]
    fn map_lands_on_unit_circle() {
        let (up, down) = spectral_map(0.5).unwrap();
        assert_abs_diff_eq!(up.re, 0.5);
        assert_abs_diff_eq!(up.im, 3f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_eq!(down, up.conj());
        assert_abs_diff_eq!(up.norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn map_degenerates_at_units() {
        assert_eq!(spectral_map(1.0).unwrap(), (c(1.0, 0.0), c(1.0, 0.0)));
        assert_eq!(spectral_map(-1.0).unwrap(), (c(-1.0, 0.0), c(-1.0, 0.0)));
    }

    #[test]
    fn map_clamps_drift_but_rejects_garbage() {
        let (up, _) = spectral_map(1.0 + 1e-12).unwrap();
        assert_eq!(up, c(1.0, 0.0));
        assert!(matches!(
            spectral_map(1.1),
            Err(SpectralError::OutOfRange { .. })
        ));
    }

    #[test]
    fn angles_of_the_endpoints() {
        assert_eq!(joukowsky_angle(1.0).unwrap(), 0.0);
        assert_eq!(joukowsky_angle(-1.0).unwrap(), std::f64::consts::PI);
        assert_abs_diff_eq!(
            joukowsky_angle(0.0).unwrap(),
            std::f64::consts::FRAC_PI_2,
            epsilon = 1e-15
        );
    }

    #[test]
    fn angle_spectrum_total_is_n() {
        let rw = rw_spectrum(&Graph::star(6).unwrap(), 1e-9).unwrap();
        let ang = angle_spectrum(&rw).unwrap();
        assert_eq!(ang.total_multiplicity(), 6);
        let angles: Vec<f64> = ang.entries().iter().map(|&(a, _)| a).collect();
        assert!(angles.windows(2).all(|w| w[0] <= w[1]), "angles sorted");
    }

    // ── Grover spectra: both routes ──────────────────────────────────────

    #[test]
    fn cycle4_grover_spectrum_direct() {
        // C_4: fourth roots of unity, each twice.
        let spec = grover_spectrum_direct(&Graph::cycle(4).unwrap(), 1e-9).unwrap();
        assert_eq!(spec.total_multiplicity(), 8);
        for target in [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)] {
            assert_eq!(
                spec.multiplicity_at(target, 1e-8),
                2,
                "multiplicity at {target}"
            );
        }
    }

    #[test]
    fn complete4_grover_spectrum_via_mapping() {
        // K_4 (m=6, n=4): {1^4, -1^2, ((-1 +- i*sqrt(8))/3)^3}.
        let spec = grover_spectrum_via_mapping(&Graph::complete(4).unwrap(), 1e-9).unwrap();
        assert_eq!(spec.total_multiplicity(), 12);
        assert_eq!(spec.multiplicity_at(c(1.0, 0.0), 1e-8), 4);
        assert_eq!(spec.multiplicity_at(c(-1.0, 0.0), 1e-8), 2);
        let s8 = 8f64.sqrt() / 3.0;
        assert_eq!(spec.multiplicity_at(c(-1.0 / 3.0, s8), 1e-8), 3);
        assert_eq!(spec.multiplicity_at(c(-1.0 / 3.0, -s8), 1e-8), 3);
    }

    #[test]
    fn star_grover_spectrum_removes_units() {
        // S_5 is a tree (m=4 < n=5): one copy of each of +-1 is removed,
        // leaving {1, -1, (+-i)^3}.
        let spec = grover_spectrum_via_mapping(&Graph::star(5).unwrap(), 1e-9).unwrap();
        assert_eq!(spec.total_multiplicity(), 8);
        assert_eq!(spec.multiplicity_at(c(1.0, 0.0), 1e-8), 1);
        assert_eq!(spec.multiplicity_at(c(-1.0, 0.0), 1e-8), 1);
        assert_eq!(spec.multiplicity_at(c(0.0, 1.0), 1e-8), 3);
        assert_eq!(spec.multiplicity_at(c(0.0, -1.0), 1e-8), 3);
    }

    #[test]
    fn mapping_agrees_with_direct_on_small_families() {
        for g in [
            Graph::cycle(3).unwrap(),
            Graph::cycle(4).unwrap(),
            Graph::complete(4).unwrap(),
            Graph::star(5).unwrap(),
            Graph::from_edge_list(&[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap(),
        ] {
            let via = grover_spectrum_via_mapping(&g, 1e-9).unwrap();
            let direct = grover_spectrum_direct(&g, 1e-9).unwrap();
            let m = match_multisets(&via, &direct, MATCH_RADIUS);
            assert!(
                m.is_complete(),
                "unmatched: {:?} / {:?}",
                m.unmatched_left,
                m.unmatched_right
            );
        }
    }

    #[test]
    fn symmetric_part_route_matches_schur_route() {
        // Where the Schur iteration converges, the fallback must produce
        // the identical multiset (it is exact for orthogonal operators).
        for g in [
            Graph::complete(5).unwrap(),
            Graph::cycle(6).unwrap(),
            Graph::star(6).unwrap(),
            Graph::from_edge_list(&[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap(),
        ] {
            let schur = grover_spectrum_direct(&g, 1e-9).unwrap();
            let lifted = grover_spectrum_from_symmetric_part(&grover_matrix(&g), 1e-9).unwrap();
            assert_eq!(lifted.total_multiplicity(), schur.total_multiplicity());
            let m = match_multisets(&schur, &lifted, MATCH_RADIUS);
            assert!(
                m.is_complete(),
                "unmatched: {:?} / {:?}",
                m.unmatched_left,
                m.unmatched_right
            );
        }
    }

    #[test]
    fn removal_underflow_is_reported() {
        let mut acc = vec![(c(1.0, 0.0), 1), (c(0.0, 0.0), 4)];
        let err = remove_copies(&mut acc, 1.0, 2).unwrap_err();
        assert_eq!(
            err,
            SpectralError::RemovalUnderflow {
                value: 1.0,
                needed: 2,
                available: 1
            }
        );
        remove_copies(&mut acc, 0.0, 4).unwrap();
        assert_eq!(acc, vec![(c(1.0, 0.0), 1)]);
    }

    // ── multiset matching ────────────────────────────────────────────────

    #[test]
    fn matching_detects_multiplicity_mismatch() {
        let a = Spectrum::new(vec![(c(1.0, 0.0), 2), (c(0.0, 0.0), 1)], 1e-9);
        let b = Spectrum::new(vec![(c(1.0, 0.0), 1), (c(0.0, 0.0), 2)], 1e-9);
        let m = match_multisets(&a, &b, 1e-8);
        assert!(!m.is_complete());
        assert_eq!(m.unmatched_left, vec![c(1.0, 0.0)]);
        assert_eq!(m.unmatched_right, vec![c(0.0, 0.0)]);
    }

    #[test]
    fn matching_reports_max_distance() {
        let a = Spectrum::new(vec![(c(1.0, 0.0), 1)], 1e-9);
        let b = Spectrum::new(vec![(c(1.0 + 3e-9, 0.0), 1)], 1e-9);
        let m = match_multisets(&a, &b, 1e-8);
        assert!(m.is_complete());
        assert_abs_diff_eq!(m.max_distance(), 3e-9, epsilon = 1e-15);
    }

    #[test]
    fn spectrum_json_shape() {
        let spec = Spectrum::new(vec![(c(0.5, -0.25), 2)], 1e-9);
        assert_eq!(
            spec.to_json(),
            r#"{"entries":[{"re":0.5,"im":-0.25,"mult":2}],"tol":1e-9}"#
        );
    }

    // ── properties ───────────────────────────────────────────────────────

    proptest::proptest! {
        #[test]
        fn map_output_is_unimodular(lambda in -1.0f64..=1.0) {
            let (up, down) = spectral_map(lambda).unwrap();
            proptest::prop_assert!((up.norm() - 1.0).abs() < 1e-12);
            proptest::prop_assert_eq!(down, up.conj());
        }

        #[test]
        fn grouping_preserves_total_multiplicity(
            values in proptest::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 0..40)
        ) {
            let raw: Vec<Complex64> = values.iter().map(|&(re, im)| c(re, im)).collect();
            // Tiny tolerance: clusters are almost surely singletons, and
            // ambiguity is almost surely absent.
            if let Ok(spec) = group_multiplicities(&raw, 1e-12) {
                proptest::prop_assert_eq!(spec.total_multiplicity(), raw.len());
            }
        }
    }
}
