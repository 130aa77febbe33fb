//! Sampled numerical verification of the crate's structural claims.
//!
//! Each identity gets a report built the same way: draw seeded
//! pseudo-random sample points (or walk the relevant spectrum), evaluate
//! both sides independently, record a scale-free residual per sample, and
//! pass iff the worst residual clears the identity's tolerance. Residuals
//! are relative to `max(1, |lhs|)` so that huge determinant values don't
//! manufacture failures and tiny ones don't hide them.
//!
//! The point samplers are deterministic in the seed, so a report is
//! reproducible byte-for-byte; sample evaluation fans out through the
//! crate's parallel seam and results are reassembled in draw order.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::Graph;
use crate::operators::{edge_matrix, grover_matrix, transition_matrix};
use crate::par::map_slice;
use crate::spectral::{
    grover_spectrum_direct, grover_spectrum_via_mapping, match_multisets, DEFAULT_GROUPING_TOL,
    MATCH_RADIUS,
};
use crate::zeta::zeros::fundamental_spectrum;
use crate::zeta::{det_i_minus_u, ihara_reciprocal_bass, konno_sato_rhs_with, ZetaError};

/// Tolerance on relative residuals of the two determinant identities.
pub const IDENTITY_RTOL: f64 = 1e-8;

/// Tolerance on the functional-equation residual
/// `|Z(s) - Z(1-s)| / max(1, |Z(s)|)`.
pub const FUNCTIONAL_EQ_RTOL: f64 = 1e-10;

/// How far a zero's real part may sit from `1/2`.
pub const ZERO_LINE_TOL: f64 = 1e-10;

/// How far below `1/4` a factor eigenvalue may dip.
pub const SPECTRUM_FLOOR_TOL: f64 = 1e-12;

/// Sample points this close to `u^2 = 1` are redrawn when the evaluation
/// has a pole there (trees under the determinant reduction).
pub const POLE_SKIP_RADIUS: f64 = 1e-6;

/// Which structural claim to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// `det(I - uU) = (1 - u^2)^(m-n) det((1+u^2)I - 2uP)`.
    KonnoSato,
    /// `(1 - u^2)^(m-n) det(I - uA + u^2(D - I)) = det(I - uE)`.
    IharaBass,
    /// Arc spectrum from the vertex spectrum matches the direct eigensolve.
    SpectralMap,
    /// `Z(s) = Z(1 - s)` for the completed walk zeta.
    FunctionalEquation,
    /// Factor spectrum `>= 1/4` and every finite zero on `Re(s) = 1/2`.
    RiemannHypothesis,
}

impl Identity {
    /// Every identity, in verification order.
    pub const ALL: [Identity; 5] = [
        Identity::KonnoSato,
        Identity::IharaBass,
        Identity::SpectralMap,
        Identity::FunctionalEquation,
        Identity::RiemannHypothesis,
    ];

    /// Stable machine-readable name (doubles as the CLI argument).
    pub fn name(self) -> &'static str {
        match self {
            Identity::KonnoSato => "konno-sato",
            Identity::IharaBass => "ihara-bass",
            Identity::SpectralMap => "spectral-map",
            Identity::FunctionalEquation => "functional-eq",
            Identity::RiemannHypothesis => "rh",
        }
    }
}

/// Sampling knobs shared by all verifications.
#[derive(Debug, Clone, Copy)]
pub struct VerifyParams {
    /// Number of sample points for the sampled identities.
    pub samples: usize,
    /// Radius of the centered disk the determinant identities sample from.
    pub radius: f64,
    /// RNG seed; equal seeds give equal reports.
    pub seed: u64,
    /// Eigenvalue grouping tolerance passed through to the spectral layer.
    pub grouping_tol: f64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            samples: 20,
            radius: 0.5,
            seed: 42,
            grouping_tol: DEFAULT_GROUPING_TOL,
        }
    }
}

#[derive(Serialize)]
struct ComplexJson {
    re: f64,
    im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

/// One evaluated sample: where it was taken, what each side produced, and
/// the scale-free residual between them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleCheck {
    /// Sample point (`u`, `s`, a mapped eigenvalue, or a factor eigenvalue
    /// on the real axis, depending on the identity).
    pub location: Complex64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// `|lhs - rhs| / max(1, |lhs|)` for value identities; a normalized
    /// bound residual for the spectral claims. Infinite when a spectrum
    /// value found no partner at all.
    pub rel_residual: f64,
}

impl SampleCheck {
    fn of_pair(location: Complex64, lhs: Complex64, rhs: Complex64) -> SampleCheck {
        SampleCheck {
            location,
            lhs,
            rhs,
            rel_residual: (lhs - rhs).norm() / 1f64.max(lhs.norm()),
        }
    }
}

#[derive(Serialize)]
struct SampleCheckJson {
    location: ComplexJson,
    lhs: ComplexJson,
    rhs: ComplexJson,
    rel_residual: f64,
}

/// Outcome of verifying one identity on one graph.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub identity: Identity,
    /// Vertex and edge counts of the graph the report is about.
    pub n: usize,
    pub m: usize,
    pub tolerance: f64,
    pub samples: Vec<SampleCheck>,
    pub max_rel_residual: f64,
    pub passed: bool,
}

#[derive(Serialize)]
struct VerificationReportJson<'a> {
    identity: &'a str,
    n: usize,
    m: usize,
    tolerance: f64,
    max_rel_residual: f64,
    passed: bool,
    samples: Vec<SampleCheckJson>,
}

impl VerificationReport {
    /// The single constructor: `passed` is always derived from the worst
    /// residual against the tolerance, never set independently.
    fn from_samples(
        identity: Identity,
        g: &Graph,
        tolerance: f64,
        samples: Vec<SampleCheck>,
    ) -> VerificationReport {
        let max_rel_residual = samples.iter().map(|s| s.rel_residual).fold(0.0, f64::max);
        VerificationReport {
            identity,
            n: g.vertex_count(),
            m: g.edge_count(),
            tolerance,
            max_rel_residual,
            passed: max_rel_residual <= tolerance,
            samples,
        }
    }

    pub fn to_json(&self) -> String {
        let doc = VerificationReportJson {
            identity: self.identity.name(),
            n: self.n,
            m: self.m,
            tolerance: self.tolerance,
            max_rel_residual: self.max_rel_residual,
            passed: self.passed,
            samples: self
                .samples
                .iter()
                .map(|s| SampleCheckJson {
                    location: s.location.into(),
                    lhs: s.lhs.into(),
                    rhs: s.rhs.into(),
                    rel_residual: s.rel_residual,
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("report serialization cannot fail")
    }
}

/// Uniform draw from the centered disk of the given radius; `r = R*sqrt(t)`
/// keeps the density uniform in area rather than piling up at the center.
fn draw_disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    let phi = std::f64::consts::TAU * rng.random::<f64>();
    Complex64::from_polar(r, phi)
}

/// Disk samples, redrawing any point that lands within
/// [`POLE_SKIP_RADIUS`] of `u^2 = 1` when `avoid_unit` is set.
fn disk_samples(params: &VerifyParams, avoid_unit: bool) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut points = Vec::with_capacity(params.samples);
    while points.len() < params.samples {
        let u = draw_disk(&mut rng, params.radius);
        if avoid_unit && (u * u - Complex64::ONE).norm() < POLE_SKIP_RADIUS {
            continue;
        }
        points.push(u);
    }
    points
}

/// Uniform draw from the rectangle `[-2, 3] x [-3, 3]`, centered (in the
/// real direction) on the symmetry axis `Re(s) = 1/2`.
fn square_samples(params: &VerifyParams) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    (0..params.samples)
        .map(|_| Complex64::new(rng.random_range(-2.0..3.0), rng.random_range(-3.0..3.0)))
        .collect()
}

/// Checks `det(I - uU) = (1 - u^2)^(m-n) det((1+u^2)I - 2uP)` at sampled
/// points. For trees the right side has poles at `u^2 = 1`; such points
/// are excluded at draw time, so the evaluation below cannot fail.
pub fn verify_konno_sato(g: &Graph, params: &VerifyParams) -> VerificationReport {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let u_op = grover_matrix(g);
    let p = transition_matrix(g);
    let points = disk_samples(params, m < n);
    let samples = map_slice(&points, |&u| {
        let lhs = det_i_minus_u(&u_op, u);
        let rhs = konno_sato_rhs_with(&p, n, m, u)
            .expect("pole-adjacent points were excluded at draw time");
        SampleCheck::of_pair(u, lhs, rhs)
    });
    VerificationReport::from_samples(Identity::KonnoSato, g, IDENTITY_RTOL, samples)
}

/// Checks the vertex determinant against the arc determinant
/// `det(I - uE)` at sampled points. Both sides are polynomials in `u`, so
/// no points need excluding.
pub fn verify_ihara_bass(g: &Graph, params: &VerifyParams) -> VerificationReport {
    let e = edge_matrix(g);
    let points = disk_samples(params, false);
    let samples = map_slice(&points, |&u| {
        let lhs = ihara_reciprocal_bass(g, u);
        let rhs = det_i_minus_u(&e, u);
        SampleCheck::of_pair(u, lhs, rhs)
    });
    VerificationReport::from_samples(Identity::IharaBass, g, IDENTITY_RTOL, samples)
}

/// Checks that the walk spectrum predicted from the random-walk spectrum
/// matches a direct eigensolve of the walk operator, value by value as
/// multisets. One sample per matched pair (residual = distance, on
/// unit-circle scale); an unmatched value on either side contributes an
/// infinite residual, so multiplicity disagreements can never pass.
pub fn verify_spectral_map(
    g: &Graph,
    params: &VerifyParams,
) -> Result<VerificationReport, ZetaError> {
    let predicted = grover_spectrum_via_mapping(g, params.grouping_tol)?;
    let direct = grover_spectrum_direct(g, params.grouping_tol)?;
    let matching = match_multisets(&predicted, &direct, MATCH_RADIUS);
    let mut samples: Vec<SampleCheck> = matching
        .pairs
        .iter()
        .map(|&(a, b, d)| SampleCheck {
            location: a,
            lhs: a,
            rhs: b,
            rel_residual: d,
        })
        .collect();
    for &orphan in matching
        .unmatched_left
        .iter()
        .chain(&matching.unmatched_right)
    {
        samples.push(SampleCheck {
            location: orphan,
            lhs: orphan,
            rhs: Complex64::new(f64::NAN, f64::NAN),
            rel_residual: f64::INFINITY,
        });
    }
    Ok(VerificationReport::from_samples(
        Identity::SpectralMap,
        g,
        MATCH_RADIUS,
        samples,
    ))
}

/// Checks `Z(s) = Z(1 - s)` for the completed walk zeta at points drawn
/// from a rectangle straddling the symmetry axis.
pub fn verify_functional_equation(
    g: &Graph,
    params: &VerifyParams,
) -> Result<VerificationReport, ZetaError> {
    // One spectral factorization, reused at every sample point.
    let factors = fundamental_spectrum(g, params.grouping_tol)?;
    let eval = |s: Complex64| -> Complex64 {
        let w = s * (Complex64::ONE - s);
        factors
            .finite()
            .iter()
            .map(|&(lambda, mult)| (Complex64::new(lambda, 0.0) - w).powu(mult as u32))
            .product()
    };
    let points = square_samples(params);
    let samples = map_slice(&points, |&s| {
        let lhs = eval(s);
        let rhs = eval(Complex64::ONE - s);
        SampleCheck::of_pair(s, lhs, rhs)
    });
    Ok(VerificationReport::from_samples(
        Identity::FunctionalEquation,
        g,
        FUNCTIONAL_EQ_RTOL,
        samples,
    ))
}

/// Checks the critical-line statement in both of its equivalent forms:
/// every factor eigenvalue sits at or above `1/4` (up to
/// [`SPECTRUM_FLOOR_TOL`]), and the corresponding zeta zero
/// `s = (1 + sqrt(1 - 4*lambda))/2` has real part `1/2` (up to
/// [`ZERO_LINE_TOL`]). One sample per distinct finite factor eigenvalue;
/// residuals are pre-normalized by their tolerance, so the report's
/// tolerance is 1.
pub fn verify_riemann_hypothesis(
    g: &Graph,
    params: &VerifyParams,
) -> Result<VerificationReport, ZetaError> {
    let factors = fundamental_spectrum(g, params.grouping_tol)?;
    let samples: Vec<SampleCheck> = factors
        .finite()
        .iter()
        .map(|&(lambda, _)| {
            let floor_defect = (0.25 - lambda).max(0.0) / SPECTRUM_FLOOR_TOL;
            let root = (Complex64::ONE + Complex64::new(1.0 - 4.0 * lambda, 0.0).sqrt()) / 2.0;
            let line_defect = (root.re - 0.5).abs() / ZERO_LINE_TOL;
            SampleCheck {
                location: Complex64::new(lambda, 0.0),
                lhs: root,
                rhs: Complex64::new(0.5, root.im),
                rel_residual: floor_defect.max(line_defect),
            }
        })
        .collect();
    Ok(VerificationReport::from_samples(
        Identity::RiemannHypothesis,
        g,
        1.0,
        samples,
    ))
}

/// Runs one identity's verification.
pub fn verify_identity(
    identity: Identity,
    g: &Graph,
    params: &VerifyParams,
) -> Result<VerificationReport, ZetaError> {
    match identity {
        Identity::KonnoSato => Ok(verify_konno_sato(g, params)),
        Identity::IharaBass => Ok(verify_ihara_bass(g, params)),
        Identity::SpectralMap => verify_spectral_map(g, params),
        Identity::FunctionalEquation => verify_functional_equation(g, params),
        Identity::RiemannHypothesis => verify_riemann_hypothesis(g, params),
    }
}

/// Runs every identity on the graph, in [`Identity::ALL`] order.
pub fn verify_all(g: &Graph, params: &VerifyParams) -> Result<Vec<VerificationReport>, ZetaError> {
    map_slice(&Identity::ALL, |&identity| {
        verify_identity(identity, g, params)
    })
    .into_iter()
    .collect()
}
