//! Multiqubit entanglement measures averaged over bipartitions, and
//! stochastic hill-climbing searches for highly entangled pure states.
//!
//! The crate is organized bottom-up:
//!
//! - [`qstate`]: pure states, reference states, Haar sampling, perturbation,
//!   and the JSON state file format.
//! - [`partitions`]: nonequivalent bipartitions of `N` qubits.
//! - [`entropy`]: partial trace, purity, normalized linear and von Neumann
//!   entropies, and a Jacobi eigensolver for Hermitian matrices.
//! - [`measures`]: the per-size averages `E^(m)` and the global measures
//!   `E_L` and `E_vN`.
//! - [`search`]: greedy hill climbing over state amplitudes.
//! - [`landscape`]: overlap-neighborhood curves and the distribution of
//!   `E_vN` among `E_L` maximizers.
//!
//! Qubit 0 is the most significant bit of an amplitude index throughout, so
//! the ket `|1100⟩` on four qubits is index 12.

// Negated comparisons are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod entropy;
pub mod error;
pub mod landscape;
pub mod measures;
pub mod partitions;
pub mod qstate;
pub mod search;

pub use entropy::{
    hermitian_eigenvalues, linear_entropy, partial_trace, purity, von_neumann_entropy,
    DensityMatrix, PartialTracer,
};
pub use error::{Error, Result};
pub use landscape::{
    maximizer_distribution, neighborhood_curve, sample_with_overlap, BinnedCurve, CurveBin,
    Histogram, MaximizerDistribution, NeighborhoodSample,
};
pub use measures::{e_balanced, e_m, e_total, EntanglementReport, MeasureEngine, MeasureKind};
pub use partitions::{count_bipartitions, enumerate_bipartitions, Bipartition};
pub use qstate::{inner_product, PureState, StateFile};
pub use search::{
    compare_scopes, hill_climb, mix_seed, multi_start, Objective, Scope, ScopeComparison,
    SearchConfig, SearchResult, StartState,
};

/// Complex amplitude type used throughout the crate.
pub type Complex = num_complex::Complex64;
