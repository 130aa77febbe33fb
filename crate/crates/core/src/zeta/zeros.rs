//! The completed walk zeta, its factor spectrum, and critical-line zeros.
//!
//! Every random-walk eigenvalue `lambda != 1` contributes a factor
//! eigenvalue `1/(2(1 - lambda))`, always `>= 1/4`; the stationary
//! eigenvalue `lambda = 1` contributes a formally infinite factor whose
//! multiplicity is tracked separately and never stored as a float. The
//! completed zeta is the product of `(factor - s(1 - s))` over the finite
//! factors; it is symmetric under `s <-> 1 - s` by construction and its
//! zeros are `s = 1/2 +- i*gamma` with `gamma^2 = factor - 1/4 >= 0` — all
//! finite zeros sit on the vertical line `Re(s) = 1/2`.
//!
//! Zeros are bookkept in two buckets: those inherited from the random-walk
//! spectrum, and a complementary bucket of `|m - n|` copies each of the
//! infinite ordinate and of 0, reflecting the `+-1` eigenvalues of the arc
//! operator that the vertex walk does not see. For `m > n` the buckets are
//! united; for `m = n` the complementary bucket is empty; for trees
//! (`m < n`) `n - m` copies are removed from the infinite and 0 ordinates
//! instead. The effective total multiplicity is `2m` in every case.
//!
//! Family behaviour at scale (no operation attached, but handy context):
//! for complete graphs the finite ordinate `(1/2)sqrt(1 - 2/n)` climbs
//! toward `1/2` as `n` grows, while for cycles the ordinates
//! `(1/2)cot(pi k/n)` fill the whole critical line ever more densely.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::graph::Graph;
use crate::spectral::{rw_spectrum, SpectralError};

/// `|lambda - 1| <= this` sends a random-walk eigenvalue to the infinite
/// factor bucket. Matches the default grouping tolerance; `rw_spectrum`
/// additionally snaps such eigenvalues exactly, so the comparison is exact
/// in practice.
pub const INFINITE_FACTOR_TOL: f64 = 1e-9;

/// Angles at most this far from 0 map to the infinite ordinate sentinel.
pub const INFINITE_ANGLE_TOL: f64 = 1e-12;

/// A critical-line ordinate: the imaginary part `gamma` of a zero
/// `1/2 + i*gamma`, with the point at infinity kept symbolic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gamma {
    Finite(f64),
    Infinity,
}

impl Gamma {
    pub fn is_infinite(self) -> bool {
        matches!(self, Gamma::Infinity)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Gamma::Finite(v) => Some(v),
            Gamma::Infinity => None,
        }
    }

    /// Sort key: infinity first, then finite ordinates descending.
    fn order_key(self) -> (u8, f64) {
        match self {
            Gamma::Infinity => (0, 0.0),
            Gamma::Finite(v) => (1, -v),
        }
    }
}

impl Serialize for Gamma {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Gamma::Finite(v) => serializer.serialize_f64(*v),
            Gamma::Infinity => serializer.serialize_str("inf"),
        }
    }
}

/// Eigenvalues `1/(2(1 - lambda))` of the completed zeta's factor matrix,
/// finite part sorted ascending, with the infinite multiplicity tracked
/// separately. Total multiplicity (finite + infinite) is `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalSpectrum {
    finite: Vec<(f64, usize)>,
    infinite_multiplicity: usize,
}

impl FundamentalSpectrum {
    /// Finite factor eigenvalues with multiplicities, ascending. Every
    /// value is `>= 1/4` up to eigensolver error.
    pub fn finite(&self) -> &[(f64, usize)] {
        &self.finite
    }

    pub fn infinite_multiplicity(&self) -> usize {
        self.infinite_multiplicity
    }

    pub fn total_multiplicity(&self) -> usize {
        self.infinite_multiplicity + self.finite.iter().map(|&(_, c)| c).sum::<usize>()
    }

    /// Smallest finite factor eigenvalue, if any. Exactly `1/4` (up to
    /// eigensolver error) iff the graph is bipartite.
    pub fn min_finite(&self) -> Option<f64> {
        self.finite.first().map(|&(v, _)| v)
    }
}

/// Factor spectrum of the completed zeta: each random-walk eigenvalue
/// `lambda` within [`INFINITE_FACTOR_TOL`] of 1 adds its multiplicity to
/// the infinite bucket; every other contributes `1/(2(1 - lambda))`.
pub fn fundamental_spectrum(g: &Graph, tol: f64) -> Result<FundamentalSpectrum, SpectralError> {
    let rw = rw_spectrum(g, tol)?;
    let mut finite = Vec::new();
    let mut infinite_multiplicity = 0;
    for &(z, mult) in rw.entries() {
        let lambda = z.re;
        if (lambda - 1.0).abs() <= INFINITE_FACTOR_TOL {
            infinite_multiplicity += mult;
        } else {
            finite.push((0.5 / (1.0 - lambda), mult));
        }
    }
    finite.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(FundamentalSpectrum {
        finite,
        infinite_multiplicity,
    })
}

/// The ordinate of the zero attached to a unit-circle angle:
/// `gamma = (1/2)cot(theta/2)` for `theta` in `(0, 2*pi)`, with the
/// sentinel [`Gamma::Infinity`] at `theta = 0`.
pub fn critical_line_ordinate(theta: f64) -> Result<Gamma, SpectralError> {
    if !(0.0..std::f64::consts::TAU).contains(&theta) {
        return Err(SpectralError::OutOfRange {
            value: theta,
            tol: 0.0,
        });
    }
    if theta.abs() <= INFINITE_ANGLE_TOL {
        return Ok(Gamma::Infinity);
    }
    let half = theta / 2.0;
    Ok(Gamma::Finite(0.5 * half.cos() / half.sin()))
}

/// Which side of `m = n` the graph falls on; decides how the two zero
/// buckets combine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ZeroSetCase {
    #[serde(rename = "M_GT_N")]
    MGtN,
    #[serde(rename = "M_EQ_N")]
    MEqN,
    #[serde(rename = "M_LT_N")]
    MLtN,
}

impl ZeroSetCase {
    pub fn as_str(self) -> &'static str {
        match self {
            ZeroSetCase::MGtN => "M_GT_N",
            ZeroSetCase::MEqN => "M_EQ_N",
            ZeroSetCase::MLtN => "M_LT_N",
        }
    }
}

/// The zeros `1/2 + i*gamma` of the completed walk zeta, split into the
/// random-walk bucket (total multiplicity `2n`) and the complementary
/// bucket (total `2|m - n|`), plus the case tag controlling how
/// [`ZeroSet::zeros`] combines them.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    rw_zeros: Vec<(Gamma, usize)>,
    rwc_zeros: Vec<(Gamma, usize)>,
    case: ZeroSetCase,
    /// Copies removed from each of the infinite and 0 ordinates in the
    /// tree case (`n - m`; zero otherwise).
    removed_per_bucket: usize,
}

struct ZeroRow {
    gamma: Gamma,
    mult: usize,
}

impl Serialize for ZeroRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut row = serializer.serialize_struct("ZeroRow", 2)?;
        row.serialize_field("gamma", &self.gamma)?;
        row.serialize_field("mult", &self.mult)?;
        row.end()
    }
}

#[derive(Serialize)]
struct ZeroSetJson {
    case: ZeroSetCase,
    zeros: Vec<ZeroRow>,
}

fn sort_and_merge(mut entries: Vec<(Gamma, usize)>) -> Vec<(Gamma, usize)> {
    entries.retain(|&(_, c)| c > 0);
    entries.sort_by(|a, b| {
        let (ka, kb) = (a.0.order_key(), b.0.order_key());
        ka.0.cmp(&kb.0).then_with(|| ka.1.total_cmp(&kb.1))
    });
    entries.dedup_by(|next, prev| {
        if next.0 == prev.0 {
            prev.1 += next.1;
            true
        } else {
            false
        }
    });
    entries
}

impl ZeroSet {
    pub fn case(&self) -> ZeroSetCase {
        self.case
    }

    /// Zeros inherited from the random-walk spectrum (total `2n`),
    /// before any tree-case removal.
    pub fn rw_zeros(&self) -> &[(Gamma, usize)] {
        &self.rw_zeros
    }

    /// The complementary bucket: `|m - n|` copies each of the infinite
    /// and 0 ordinates (empty when `m = n`).
    pub fn rwc_zeros(&self) -> &[(Gamma, usize)] {
        &self.rwc_zeros
    }

    pub fn removed_per_bucket(&self) -> usize {
        self.removed_per_bucket
    }

    /// The effective zero multiset: union of the buckets for `m > n`, the
    /// random-walk bucket alone for `m = n`, and the random-walk bucket
    /// with `n - m` copies removed from each of the infinite and 0
    /// ordinates for trees. Ordered infinity first, then descending.
    /// Total multiplicity is always `2m`.
    pub fn zeros(&self) -> Vec<(Gamma, usize)> {
        match self.case {
            ZeroSetCase::MGtN => {
                let mut all = self.rw_zeros.clone();
                all.extend_from_slice(&self.rwc_zeros);
                sort_and_merge(all)
            }
            ZeroSetCase::MEqN => self.rw_zeros.clone(),
            ZeroSetCase::MLtN => {
                let mut all = Vec::with_capacity(self.rw_zeros.len());
                for &(gamma, mult) in &self.rw_zeros {
                    let removed = match gamma {
                        Gamma::Infinity => self.removed_per_bucket,
                        Gamma::Finite(0.0) => self.removed_per_bucket,
                        Gamma::Finite(_) => 0,
                    };
                    // Construction guarantees the buckets are deep enough.
                    all.push((gamma, mult - removed));
                }
                sort_and_merge(all)
            }
        }
    }

    /// Total multiplicity of [`ZeroSet::zeros`].
    pub fn total_multiplicity(&self) -> usize {
        self.zeros().iter().map(|&(_, c)| c).sum()
    }

    /// Multiplicity at a given finite ordinate, within `tol`.
    pub fn multiplicity_at_finite(&self, gamma: f64, tol: f64) -> usize {
        self.zeros()
            .iter()
            .filter_map(|&(g, c)| match g {
                Gamma::Finite(v) if (v - gamma).abs() <= tol => Some(c),
                _ => None,
            })
            .sum()
    }

    /// Multiplicity of the infinite ordinate in the effective zero list.
    pub fn infinite_multiplicity(&self) -> usize {
        self.zeros()
            .iter()
            .filter(|&&(g, _)| g.is_infinite())
            .map(|&(_, c)| c)
            .sum()
    }

    /// JSON form `{"case": "M_EQ_N", "zeros": [{"gamma": .., "mult": ..}]}`
    /// with `"inf"` as the sentinel encoding for the infinite ordinate.
    pub fn to_json(&self) -> String {
        let doc = ZeroSetJson {
            case: self.case,
            zeros: self
                .zeros()
                .into_iter()
                .map(|(gamma, mult)| ZeroRow { gamma, mult })
                .collect(),
        };
        serde_json::to_string(&doc).expect("zero set serialization cannot fail")
    }

    /// CSV of the finite zeros only (`re` is constantly `0.5`), one row
    /// per distinct ordinate: `re,gamma,mult`.
    pub fn finite_zeros_csv(&self) -> String {
        let mut out = String::from("re,gamma,mult\n");
        for (gamma, mult) in self.zeros() {
            if let Gamma::Finite(v) = gamma {
                out.push_str(&format!("0.5,{v},{mult}\n"));
            }
        }
        out
    }
}

/// Assembles the zero set of the completed walk zeta from the random-walk
/// spectrum. Each eigenvalue `lambda` with angle `theta = arccos(lambda)`
/// contributes the conjugate ordinates `+-(1/2)cot(theta/2)`; the
/// endpoints collapse, `lambda = 1` contributing the infinite ordinate
/// and `lambda = -1` the ordinate 0, each with doubled multiplicity.
pub fn zero_set(g: &Graph, tol: f64) -> Result<ZeroSet, SpectralError> {
    let rw = rw_spectrum(g, tol)?;
    let (n, m) = (g.vertex_count(), g.edge_count());

    let mut rw_zeros: Vec<(Gamma, usize)> = Vec::new();
    for &(z, mult) in rw.entries() {
        let lambda = z.re;
        if lambda == 1.0 {
            rw_zeros.push((Gamma::Infinity, 2 * mult));
        } else if lambda == -1.0 {
            rw_zeros.push((Gamma::Finite(0.0), 2 * mult));
        } else {
            // cot(arccos(lambda)/2) = sqrt(1 - lambda^2) / (1 - lambda),
            // the algebraic form of the half-angle without a trig round
            // trip.
            let gamma = (1.0 - lambda * lambda).max(0.0).sqrt() / (2.0 * (1.0 - lambda));
            rw_zeros.push((Gamma::Finite(gamma), mult));
            rw_zeros.push((Gamma::Finite(-gamma), mult));
        }
    }
    let rw_zeros = sort_and_merge(rw_zeros);
    debug_assert_eq!(
        rw_zeros.iter().map(|&(_, c)| c).sum::<usize>(),
        2 * n,
        "random-walk bucket must hold 2n zeros before removal"
    );

    let gap = m.abs_diff(n);
    let rwc_zeros = if gap > 0 {
        vec![(Gamma::Infinity, gap), (Gamma::Finite(0.0), gap)]
    } else {
        Vec::new()
    };

    let (case, removed_per_bucket) = match m.cmp(&n) {
        std::cmp::Ordering::Greater => (ZeroSetCase::MGtN, 0),
        std::cmp::Ordering::Equal => (ZeroSetCase::MEqN, 0),
        std::cmp::Ordering::Less => (ZeroSetCase::MLtN, n - m),
    };

    if removed_per_bucket > 0 {
        for target in [Gamma::Infinity, Gamma::Finite(0.0)] {
            let available: usize = rw_zeros
                .iter()
                .filter(|&&(g, _)| g == target)
                .map(|&(_, c)| c)
                .sum();
            if available < removed_per_bucket {
                return Err(SpectralError::RemovalUnderflow {
                    value: target.finite().unwrap_or(f64::INFINITY),
                    needed: removed_per_bucket,
                    available,
                });
            }
        }
    }

    Ok(ZeroSet {
        rw_zeros,
        rwc_zeros,
        case,
        removed_per_bucket,
    })
}

/// Value of the completed walk zeta at `s`: the product of
/// `(factor - s(1 - s))` over finite factor eigenvalues, with the count
/// of left-out infinite factors reported alongside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompletedZeta {
    pub finite_part: Complex64,
    pub infinite_factor_multiplicity: usize,
}

/// Evaluates the completed walk zeta's finite part at `s`.
pub fn completed_zeta(g: &Graph, s: Complex64, tol: f64) -> Result<CompletedZeta, SpectralError> {
    let factors = fundamental_spectrum(g, tol)?;
    let w = s * (Complex64::ONE - s);
    let mut value = Complex64::ONE;
    for &(lambda, mult) in factors.finite() {
        value *= (Complex64::new(lambda, 0.0) - w).powu(mult as u32);
    }
    Ok(CompletedZeta {
        finite_part: value,
        infinite_factor_multiplicity: factors.infinite_multiplicity(),
    })
}
