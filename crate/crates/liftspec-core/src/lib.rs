//! Spectra and eigenspace bases of universal adjacency matrices
//! (`c1·A + c2·D + c3·I + c4·J`) of arbitrary lifts of voltage graphs,
//! computed from small base matrices over the group algebra via irreducible
//! representations and cross-checkable against a direct eigensolve of the
//! explicitly constructed lift.

pub mod coeffs;
pub mod error;
pub mod group_algebra;
pub mod group_core;
pub mod representations;
pub mod spectral_engine;
pub mod voltage_graph;

pub use coeffs::Coeffs;
pub use error::{Error, Result};
pub use group_algebra::{
    base_components, universal_base_matrix, AlgebraElement, BaseComponents, BaseMatrix,
};
pub use group_core::{core, CosetTable, FiniteGroup, Permutation, Subgroup};
pub use representations::{numerical_rank, rho_image, subgroup_sum, IrrepSet, Representation};
pub use spectral_engine::{
    compare_spectra, hermitian_eigen, lift_eigenvectors, seidel_relation_check, spectrum_direct,
    spectrum_via_reps, ComparisonReport, EngineOptions, IrrepContribution, LiftedEigenvector,
    Provenance, SeidelReport, Spectrum,
};
pub use voltage_graph::{
    build_lift, connectivity_check, local_group, parse_vg, Arc, BaseGraph, ConnectivityReport,
    LiftArc, LiftGraph, ValidationReport, VoltageAssignment, VoltageGraphFile,
};
