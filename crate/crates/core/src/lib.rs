//! Chern-Simons-Witten partition functions of mapping tori of the 2-torus.
//!
//! Three independent evaluation routes are provided:
//!
//! * the symplectic quantum mechanics (SQM) fixed-point sum over flat
//!   connections, [`partition::z_sqm_su2`] and [`partition::z_sqm_general`];
//! * the Gauss-sum trace formulas, [`partition::z_trace_su2`],
//!   [`partition::z_trace_general_weights`] and
//!   [`partition::z_trace_general_cosets`];
//! * the trace of the level-k SU(2) modular representation,
//!   [`partition::rt_trace_su2`].
//!
//! The [`framing`] module predicts the unit phase relating them, and
//! [`fixedpoints`] exposes the flat connections themselves together with
//! their Chern-Simons invariants as exact rationals mod 1.
//!
//! All lattice and phase arithmetic is exact (arbitrary precision integers
//! and rationals); floating point only enters when a phase `q` is turned into
//! `e^{2πi q}`.

pub mod error;
pub mod fixedpoints;
pub mod framing;
pub mod gauss;
pub mod intlinalg;
pub mod modular;
pub mod partition;
pub mod roots;
pub mod verify;

pub mod cmatrix;

pub use error::{Error, Result};
pub use fixedpoints::{cs_invariant, fixed_points, theta_char, FixedPointDatum};
pub use framing::{
    general_phase_check, general_phase_prediction, psi, su2_phase_check, GeneralPhasePrediction,
    PhaseComparison,
};
pub use gauss::{lattice_gauss_sum, reciprocity_1d, ComplexVal, PhaseExact};
pub use intlinalg::{
    column_hermite_form, coset_representatives, in_lattice, smith_normal_form, solve_rational, IntMatrix, QVector,
    SnfDecomposition, ZVector,
};
pub use modular::{
    classify, dedekind_sum, rademacher_phi, word_decompose, word_evaluate, Generator,
    GeneratorWord, MonodromyClass, PhiConvention, SL2Element,
};
pub use partition::{
    b_operator, g_lambda, rt_modular_data_su2, rt_trace_su2, z_sqm_general, z_sqm_su2,
    z_trace_general_cosets, z_trace_general_weights, z_trace_su2, Formula, LevelData,
    PartitionResult,
};
pub use roots::{Family, RootSystem, WeylElement};

/// Default relative tolerance for comparing floating-point partition values.
pub const DEFAULT_TOL: f64 = 1e-9;
