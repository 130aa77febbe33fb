//! Command-line front end for the walk-zeta library: build or load a
//! graph, compute operator spectra and critical-line zero sets, evaluate
//! the zeta determinants at a point, run identity verifications, and
//! export operator matrices — as text, JSON, or CSV.
//!
//! Exit codes: 0 on success (and all verifications passed), 1 when a
//! verification ran but failed (reports are still emitted), 2 on usage or
//! input errors. Output is deterministic: equal argv (including the seed)
//! gives byte-identical bytes.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use walk_zeta::graph::Graph;
use walk_zeta::operators;
use walk_zeta::spectral::{self, Spectrum};
use walk_zeta::zeta::{self, Gamma, Identity, VerificationReport, VerifyParams};
use walk_zeta::Complex64;

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args()))
}

#[derive(Parser)]
#[command(
    name = "walk-zeta",
    version,
    about = "Graph zeta determinants, walk spectra, and critical-line zero sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from a family spec, or load and normalize one.
    Gen(CommonArgs),
    /// Eigenvalue multiset of an operator on the graph.
    Spectrum {
        #[command(flatten)]
        common: CommonArgs,
        /// Operator whose spectrum to compute.
        #[arg(long, value_enum, default_value_t = Operator::Rw)]
        operator: Operator,
    },
    /// Zeros of the completed walk zeta on the critical line.
    Zeros(CommonArgs),
    /// Evaluate the zeta determinants at --u, or the completed zeta at --s.
    Zeta {
        #[command(flatten)]
        common: CommonArgs,
        /// Point for the determinant reciprocals, as `re,im`.
        #[arg(long, value_parser = parse_complex)]
        u: Option<Complex64>,
        /// Point for the completed zeta, as `re,im`.
        #[arg(long, value_parser = parse_complex)]
        s: Option<Complex64>,
    },
    /// Check the determinant identities and critical-line statements.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Which identity to verify.
        #[arg(long, value_enum, default_value_t = IdentityArg::All)]
        identity: IdentityArg,
        /// Sample points per sampled identity.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Radius of the sampling disk for the determinant identities.
        #[arg(long, default_value_t = 0.5)]
        radius: f64,
        /// RNG seed; equal seeds give byte-identical reports.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Write an operator matrix entrywise.
    Export {
        #[command(flatten)]
        common: CommonArgs,
        /// Operator whose matrix to export.
        #[arg(long, value_enum, default_value_t = Operator::Grover)]
        operator: Operator,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// Graph: `complete:N`, `cycle:N`, `star:N`, or a path to an
    /// edge-list file (one `u v` pair per line, `#` comments).
    #[arg(long)]
    graph: String,
    /// Eigenvalue grouping tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Operator {
    /// Random-walk transition matrix.
    Rw,
    /// Grover walk operator on arcs.
    Grover,
    /// Positive support of the Grover operator.
    GroverSupport,
    /// Combinatorial Laplacian.
    Laplacian,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IdentityArg {
    KonnoSato,
    IharaBass,
    SpectralMap,
    FunctionalEq,
    Rh,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            // clap routes help to stdout and errors to stderr.
            let _ = err.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(Outcome::Clean) => 0,
        Ok(Outcome::VerificationFailed) => 1,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

enum Outcome {
    Clean,
    VerificationFailed,
}

fn execute(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Gen(common) => {
            let g = prepare(&common)?;
            let content = match common.format {
                Format::Text => g.to_edge_list_text(),
                Format::Json => g.to_json(),
                Format::Csv => graph_csv(&g),
            };
            emit(&common, content)?;
            Ok(Outcome::Clean)
        }
        Command::Spectrum { common, operator } => {
            let g = prepare(&common)?;
            let spectrum = match operator {
                Operator::Rw => spectral::rw_spectrum(&g, common.tol),
                Operator::Grover => spectral::grover_spectrum_direct(&g, common.tol),
                Operator::GroverSupport => spectral::support_spectrum(&g, common.tol),
                Operator::Laplacian => spectral::laplacian_spectrum(&g, common.tol),
            }
            .map_err(|e| e.to_string())?;
            let content = match common.format {
                Format::Text => spectrum_text(&spectrum),
                Format::Json => spectrum.to_json(),
                Format::Csv => spectrum_csv(&spectrum),
            };
            emit(&common, content)?;
            Ok(Outcome::Clean)
        }
        Command::Zeros(common) => {
            let g = prepare(&common)?;
            let zeros = zeta::zero_set(&g, common.tol).map_err(|e| e.to_string())?;
            let content = match common.format {
                Format::Text => {
                    let mut out = format!("case {}\n", zeros.case().as_str());
                    for (gamma, mult) in zeros.zeros() {
                        out.push_str(&fmt_zero(gamma, mult));
                        out.push('\n');
                    }
                    out
                }
                Format::Json => zeros.to_json(),
                Format::Csv => zeros.finite_zeros_csv(),
            };
            emit(&common, content)?;
            Ok(Outcome::Clean)
        }
        Command::Zeta { common, u, s } => {
            let g = prepare(&common)?;
            let content = match (u, s) {
                (Some(u), None) => {
                    let bass = zeta::ihara_reciprocal_bass(&g, u);
                    let edge = zeta::ihara_reciprocal_edge(&g, u);
                    let walk = zeta::grover_zeta_reciprocal(&g, u);
                    let reduction = zeta::konno_sato_rhs(&g, u).map_err(|e| e.to_string())?;
                    match common.format {
                        Format::Text => format!(
                            "u = {}\nvertex-bass = {}\nvertex-edge = {}\nwalk = {}\nwalk-reduction = {}\n",
                            fmt_complex(u),
                            fmt_complex(bass),
                            fmt_complex(edge),
                            fmt_complex(walk),
                            fmt_complex(reduction),
                        ),
                        Format::Json => format!(
                            r#"{{"u":{},"vertex_bass":{},"vertex_edge":{},"walk":{},"walk_reduction":{}}}"#,
                            complex_json(u),
                            complex_json(bass),
                            complex_json(edge),
                            complex_json(walk),
                            complex_json(reduction),
                        ),
                        Format::Csv => format!(
                            "quantity,re,im\nu,{},{}\nvertex_bass,{},{}\nvertex_edge,{},{}\nwalk,{},{}\nwalk_reduction,{},{}\n",
                            u.re, u.im, bass.re, bass.im, edge.re, edge.im,
                            walk.re, walk.im, reduction.re, reduction.im,
                        ),
                    }
                }
                (None, Some(s)) => {
                    let value =
                        zeta::completed_zeta(&g, s, common.tol).map_err(|e| e.to_string())?;
                    match common.format {
                        Format::Text => format!(
                            "s = {}\ncompleted = {}\ninfinite-factors = {}\n",
                            fmt_complex(s),
                            fmt_complex(value.finite_part),
                            value.infinite_factor_multiplicity,
                        ),
                        Format::Json => format!(
                            r#"{{"s":{},"completed":{},"infinite_factor_multiplicity":{}}}"#,
                            complex_json(s),
                            complex_json(value.finite_part),
                            value.infinite_factor_multiplicity,
                        ),
                        Format::Csv => format!(
                            "quantity,re,im\ns,{},{}\ncompleted,{},{}\n",
                            s.re, s.im, value.finite_part.re, value.finite_part.im,
                        ),
                    }
                }
                _ => {
                    return Err(
                        "exactly one of --u (determinant reciprocals) or --s (completed zeta) \
                         is required"
                            .into(),
                    )
                }
            };
            emit(&common, content)?;
            Ok(Outcome::Clean)
        }
        Command::Verify {
            common,
            identity,
            samples,
            radius,
            seed,
        } => {
            if samples < 1 {
                return Err("--samples must be at least 1".into());
            }
            if radius <= 0.0 {
                return Err("--radius must be positive".into());
            }
            let g = prepare(&common)?;
            let params = VerifyParams {
                samples,
                radius,
                seed,
                grouping_tol: common.tol,
            };
            let reports = match identity_list(identity) {
                None => zeta::verify_all(&g, &params).map_err(|e| e.to_string())?,
                Some(single) => {
                    vec![zeta::verify_identity(single, &g, &params).map_err(|e| e.to_string())?]
                }
            };
            let content = match common.format {
                Format::Text => verify_text(&reports),
                Format::Json => {
                    let body: Vec<String> = reports.iter().map(|r| r.to_json()).collect();
                    format!("[{}]", body.join(","))
                }
                Format::Csv => verify_csv(&reports),
            };
            emit(&common, content)?;
            if reports.iter().all(|r| r.passed) {
                Ok(Outcome::Clean)
            } else {
                Ok(Outcome::VerificationFailed)
            }
        }
        Command::Export { common, operator } => {
            let g = prepare(&common)?;
            let matrix = match operator {
                Operator::Rw => operators::transition_matrix(&g),
                Operator::Grover => operators::grover_matrix(&g),
                Operator::GroverSupport => {
                    operators::positive_support(&operators::grover_matrix(&g))
                }
                Operator::Laplacian => operators::laplacian_matrix(&g),
            };
            let content = match common.format {
                Format::Text => matrix_text(&matrix),
                Format::Json => operators::matrix_to_json(&matrix),
                Format::Csv => operators::matrix_to_csv(&matrix),
            };
            emit(&common, content)?;
            Ok(Outcome::Clean)
        }
    }
}

/// Validates the shared flags and loads the graph.
fn prepare(common: &CommonArgs) -> Result<Graph, String> {
    if common.tol <= 0.0 {
        return Err("--tol must be positive".into());
    }
    load_graph(&common.graph)
}

fn load_graph(spec: &str) -> Result<Graph, String> {
    if let Some((family, order)) = spec.split_once(':') {
        if matches!(family, "complete" | "cycle" | "star") {
            let n: usize = order
                .parse()
                .map_err(|_| format!("invalid order `{order}` in graph spec `{spec}`"))?;
            return match family {
                "complete" => Graph::complete(n),
                "cycle" => Graph::cycle(n),
                _ => Graph::star(n),
            }
            .map_err(|e| e.to_string());
        }
        return Err(format!(
            "unknown graph family `{family}` (expected complete, cycle, or star)"
        ));
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| format!("cannot read edge list `{spec}`: {e}"))?;
    Graph::parse_edge_list(&text).map_err(|e| e.to_string())
}

fn identity_list(arg: IdentityArg) -> Option<Identity> {
    match arg {
        IdentityArg::KonnoSato => Some(Identity::KonnoSato),
        IdentityArg::IharaBass => Some(Identity::IharaBass),
        IdentityArg::SpectralMap => Some(Identity::SpectralMap),
        IdentityArg::FunctionalEq => Some(Identity::FunctionalEquation),
        IdentityArg::Rh => Some(Identity::RiemannHypothesis),
        IdentityArg::All => None,
    }
}

fn emit(common: &CommonArgs, content: String) -> Result<(), String> {
    match &common.out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("cannot write `{}`: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let (re, im) = text
        .split_once(',')
        .ok_or_else(|| format!("expected `re,im`, got `{text}`"))?;
    let re: f64 = re
        .trim()
        .parse()
        .map_err(|_| format!("invalid real part `{re}`"))?;
    let im: f64 = im
        .trim()
        .parse()
        .map_err(|_| format!("invalid imaginary part `{im}`"))?;
    Ok(Complex64::new(re, im))
}

// ── deterministic text rendering ─────────────────────────────────────────

/// Fixed 12-significant-digit rendering; exact zero stays `0`.
fn fmt12(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.11e}")
    }
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        fmt12(z.re)
    } else if z.im > 0.0 {
        format!("{} + i*{}", fmt12(z.re), fmt12(z.im))
    } else {
        format!("{} - i*{}", fmt12(z.re), fmt12(-z.im))
    }
}

/// One zero line: ordinates render against the fixed real part `1/2`,
/// with the point at infinity as the literal `1/2 + i*inf`.
fn fmt_zero(gamma: Gamma, mult: usize) -> String {
    match gamma {
        Gamma::Infinity => format!("1/2 + i*inf (x{mult})"),
        Gamma::Finite(0.0) => format!("1/2 (x{mult})"),
        Gamma::Finite(v) if v > 0.0 => format!("1/2 + i*{} (x{mult})", fmt12(v)),
        Gamma::Finite(v) => format!("1/2 - i*{} (x{mult})", fmt12(-v)),
    }
}

fn complex_json(z: Complex64) -> String {
    format!(r#"{{"re":{},"im":{}}}"#, z.re, z.im)
}

fn graph_csv(g: &Graph) -> String {
    let mut out = String::from("u,v\n");
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u},{v}");
    }
    out
}

fn spectrum_text(spectrum: &Spectrum) -> String {
    let mut out = String::new();
    for &(z, mult) in spectrum.entries() {
        let _ = writeln!(out, "{} (x{mult})", fmt_complex(z));
    }
    out
}

fn spectrum_csv(spectrum: &Spectrum) -> String {
    let mut out = String::from("re,im,mult\n");
    for &(z, mult) in spectrum.entries() {
        let _ = writeln!(out, "{},{},{mult}", z.re, z.im);
    }
    out
}

fn verify_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(
            out,
            "{}: {} max_rel_residual={} tolerance={} samples={}",
            r.identity.name(),
            if r.passed { "PASS" } else { "FAIL" },
            fmt12(r.max_rel_residual),
            fmt12(r.tolerance),
            r.samples.len(),
        );
    }
    out
}

fn verify_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from("identity,n,m,tolerance,max_rel_residual,passed\n");
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.identity.name(),
            r.n,
            r.m,
            r.tolerance,
            r.max_rel_residual,
            r.passed,
        );
    }
    out
}

fn matrix_text(m: &nalgebra::DMatrix<f64>) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| fmt12(m[(i, j)])).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
