//! Polarization calculus for Mueller-Stokes optics.
//!
//! The crate decides whether a real 4x4 matrix is a physical Mueller matrix
//! through the Hermitian matrix associated with it, decomposes physical
//! matrices into convex sums of Jones systems, separates cone-preserving
//! ("pre-Mueller") maps from physical ones, and implements the two-mode
//! entangled beam whose output state exposes the difference.

pub mod cone;
pub mod error;
mod linalg;
pub mod mueller;
pub mod polarization;
pub mod two_mode;

pub use cone::{
    classify, diag_region_scan, diagonal_region, h_diagonal, is_pre_mueller,
    ClassificationResult, ConeScan, ConeScanConfig, DiagScanRecord, DiagonalParams,
    DiagonalRegion, MuellerClass,
};
pub use error::{Error, Result};
pub use mueller::{
    apply_mueller, decompose_convex, h_from_mueller, is_mueller_jones, mueller_from_h,
    mueller_jones_from_jones, HMatrix, JonesDecomposition, MuellerMatrix,
};
pub use polarization::{
    coherency_from_ensemble, coherency_from_stokes, jones_apply, jones_apply_coherency,
    stokes_from_coherency, validate_stokes, CoherencyMatrix, JonesMatrix, JonesVector,
    StokesClass, StokesVector, DEFAULT_TOL,
};
pub use two_mode::{
    apply_mueller_to_bcp, bcp_from_ensemble, bcp_from_pure, bell_state, concurrence,
    is_separable, witness_negativity, TwoModeBcp, TwoModeJonesVector,
};
