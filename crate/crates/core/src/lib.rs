//! Bernstein-polynomial shock capturing for scalar 1D conservation laws in
//! a nodal discontinuous-Galerkin spectral-element solver.
//!
//! In troubled elements the DG polynomial is replaced by a convex blend of
//! itself and its Bernstein reconstruction, `alpha u + (1 - alpha) B_N[u]`.
//! The reconstruction takes the polynomial's values at equispaced points as
//! Bernstein coefficients, which makes it total-variation diminishing,
//! monotonicity preserving and free of Gibbs overshoots; a modified variant
//! clips the coefficients to enforce solution bounds such as positivity.
//! The blend parameter comes from a polynomial-annihilation discontinuity
//! sensor comparing jump estimates of orders 1 and 3 over the element.
//!
//! The crate ships:
//! - [`bernstein`]: the Bernstein basis, the (bound-enforcing)
//!   reconstruction, basis transforms and total-variation / entropy
//!   diagnostics;
//! - [`sensor`]: polynomial-annihilation operators and the ramp function;
//! - [`solver`]: the collocation DG discretisation on Gauss–Lobatto nodes
//!   with Rusanov fluxes and SSPRK(3,3) stepping;
//! - [`capture`]: the Bernstein procedure and a mean-value filter baseline;
//! - [`run`]: the time loop with per-step diagnostics;
//! - [`problems`]: four benchmark problems with closed-form,
//!   characteristic and finite-volume reference solutions;
//! - [`experiment`]: CSV-emitting experiment driver and parameter sweeps
//!   (also exposed through the `bernstein-dg` binary).
//!
//! The `examples/` directory contains one runnable example per capability;
//! see the README for a tour.

// Validation tests are written as `!(x >= 0.0)` etc. so that NaN inputs
// fail them too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bernstein;
pub mod capture;
mod error;
pub mod experiment;
pub mod problems;
mod quadrature;
pub mod run;
pub mod sensor;
pub mod solver;

pub use bernstein::{
    basis_eval, blend, build_transform, reconstruct, reconstruct_bounded, BernsteinPoly,
    BoundsSpec, EntropyFunctional, Interval, TargetBasis, TransformMatrix,
};
pub use capture::{
    apply_bernstein_capture, apply_mean_filter, ApplyPoint, CaptureConfig, CaptureMode,
};
pub use error::{Error, Result};
pub use experiment::{
    parse_config, run_experiment, serialize_config, sweep, ExperimentConfig, FilterKind,
    ReferenceChoice, RunSummary,
};
pub use problems::{
    burgers_characteristic, default_kappa, error_norms, exact_advection, fv_reference,
    make_problem, FVOracleConfig, FvProfile, Norm, ProblemId, ProblemSpec, RefSolution,
    ReferenceKind,
};
pub use run::{run, run_observed, DiagnosticsSeries, StepDiagnostics};
pub use sensor::{
    annihilation_coefficients, element_sensor, element_sensor_with_neighbors,
    normalization_factor, pa_apply, ramp, SensorConfig, SensorReading, Stencil,
};
pub use solver::{
    compute_dt, dg_rhs, diff_matrix, lgl_nodes_weights, rusanov_flux, ssprk33_step, ElementBasis,
    FluxSpec, Mesh, RunConfig, SolutionState,
};
