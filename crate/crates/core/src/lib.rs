//! Continuous-time quantum walks on graph Laplacians, evaluated through
//! fully interconnected graph decompositions and checked against a direct
//! spectral oracle.
//!
//! ```
//! use ctqw_core::{generate, dominating_split, FidWalk, Family, Tolerances};
//!
//! let g = generate(&Family::Star(10)).unwrap();
//! let p = dominating_split(&g).unwrap();
//! let walk = FidWalk::new(&g, &p, Tolerances::default().eigen).unwrap();
//! let report = walk.at(0.5).report(1, 1).unwrap();
//! let closed = ctqw_core::dominating_return_probability(10, 0.5);
//! assert!((report.probability - closed).abs() < 1e-12);
//! ```

pub mod decomposition;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod matrix;
pub mod scan;
pub mod spectral;
pub mod walk;

pub use decomposition::{
    clique_gateway_split, dominating_split, gateway_vertices, reduced_matrix, tilde_matrix,
    twin_coarsen, verify_fid, FidPartition, FidViolation,
};
pub use error::{Error, Result};
pub use graph::{
    disjoint_union, generate, join, parse_edge_list, serialize_edge_list, Family, Graph,
};
pub use invariants::{run_invariants, InvariantCheck, InvariantReport};
pub use matrix::{SquareMatrix, SymmetricMatrix};
pub use scan::{localization_scan, scan_rows, DominatingFamily, ScanFamily, ScanInstance, ScanRow};
pub use spectral::{
    block_spectrum, eigh, reduced_spectrum, BlockSpectrum, EigenDecomposition, ReducedSpectrum,
};
pub use walk::{
    amplitude_direct, amplitude_fid, dominating_cross_probability, dominating_return_probability,
    probability_direct, probability_fid_terms, subgraph_gap, Amplitude, DirectWalk, FidWalk,
    ProbabilityReport, ProbabilityTerms, SubgraphGap, SubgraphGapProbe,
};

/// Numerical tolerances used across the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative off-diagonal threshold for the Jacobi eigensolver.
    pub eigen: f64,
    /// Agreement between the decomposition route and the direct route, and
    /// for unitarity, symmetry and bound checks.
    pub equivalence: f64,
    /// Closed-form probabilities and spectral identities.
    pub exact: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eigen: 1e-12,
            equivalence: 1e-9,
            exact: 1e-10,
        }
    }
}
