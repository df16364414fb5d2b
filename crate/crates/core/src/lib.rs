//! Spectral invariants of finite-group actions on finite-dimensional C*-algebras.
//!
//! The library builds concrete dynamical systems (a finite group with a unitary
//! irrep table, a block-decomposed matrix algebra, and an inner action), computes
//! their Arveson and Connes-type spectra by two independent routes, and verifies
//! a battery of structural identities relating the spectra to simplicity and
//! primeness of the associated fixed-point algebras.

pub mod algebra;
pub mod document;
pub mod dynamics;
pub mod error;
pub mod fuzz;
pub mod group;
pub mod mat;
pub mod spectra;
pub mod subspace;
pub mod tol;
pub mod verify;

pub use algebra::{check_projection, AlgebraClass, CentralData, FdAlgebra, Ideal};
pub use document::{
    builtin, ActionDoc, AlgebraDoc, GroupDoc, IrrepDoc, SystemDocument, BUILTIN_NAMES,
};
pub use dynamics::{conjugate, DynamicalSystem};
pub use error::{Error, Result};
pub use fuzz::{generate, FuzzBounds, FuzzCase};
pub use group::{
    preset_group, validate_group, validate_irrep_table, FiniteGroup, Irrep, IrrepTable,
    ValidationFailure, ValidationReport, PRESET_NAMES,
};
pub use mat::{eig_hermitian, Mat, C64};
pub use spectra::{
    arveson_spectra, connes_oracle, connes_spectra, invariant_structure, irrep_artifacts,
    irrep_spectral_data, ArvesonData, ConnesData, CornerCoverage, InvariantStructure,
    IrrepArtifacts, IrrepSpectralData, OracleData, SpectrumSet,
};
pub use subspace::{intertwiners, nullspace_within, MatrixSubspace, SubspaceOrder};
pub use tol::Tolerances;
pub use verify::{
    verify, verify_with_retries, CheckResult, TheoremSelection, Verdict, VerificationReport,
};
