//! Zeta functions of finite graphs through the lens of quantum walks.
//!
//! The crate computes, for a simple connected graph:
//!
//! * the Grover walk operator on arcs, its positive support, and the
//!   classical random-walk, adjacency, and Laplacian matrices
//!   ([`operators`]);
//! * eigenvalue multisets of those operators, including the exact
//!   correspondence that maps each random-walk eigenvalue onto a conjugate
//!   pair on the unit circle ([`spectral`]);
//! * reciprocals of the vertex and edge zeta functions, the determinant
//!   identity connecting the arc operator to the `n x n` random-walk
//!   matrix, counts of reduced closed paths, and the completed walk zeta
//!   whose zeros line up on the critical line `Re(s) = 1/2` ([`zeta`]);
//! * a pool of standard graphs (trees, cycles, complete graphs, stars,
//!   seeded random connected graphs) for sweep-style verification
//!   ([`pool`]).
//!
//! Verification sweeps and sample batches run data-parallel under the
//! default `parallel` feature (rayon) and fall back to plain iterators when
//! built with `--no-default-features`. Results are deterministic either way.

pub mod graph;
pub mod operators;
mod par;
pub mod pool;
pub mod spectral;
pub mod zeta;

pub use graph::{ArcIndex, Graph, GraphError};
pub use num_complex::Complex64;
pub use operators::WalkOperators;
pub use pool::{standard_pool, sweep, PoolEntry};
pub use spectral::{AngleSpectrum, SpectralError, Spectrum};
pub use zeta::{VerificationReport, ZeroSet, ZetaError};
