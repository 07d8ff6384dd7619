//! Numerical tolerances shared across the crate.
//!
//! Values are grouped by what they guard. Tests and the acceptance suite
//! import these rather than repeating literals.

/// Hermiticity flag threshold for [`ComplexOperator`](crate::ComplexOperator).
pub const HERMITIAN: f64 = 1e-12;

/// Default validation tolerance for generated density matrices.
pub const DENSITY_STRICT: f64 = 1e-9;

/// Validation tolerance for density matrices transcribed from rounded
/// tables (two significant figures give a trace error near 1e-2).
pub const DENSITY_LENIENT: f64 = 2.5e-2;

/// Norm tolerance for pure states.
pub const PURE_NORM: f64 = 1e-12;

/// Certification tolerance for constructed POVMs.
pub const POVM_CERTIFY: f64 = 1e-10;

/// POVM tolerance accepted when building a witness.
pub const POVM_FOR_WITNESS: f64 = 1e-8;

/// Orthogonality and axis-fixing tolerance for generated rotations.
pub const ROTATION: f64 = 1e-10;

/// Tolerance for rotations transcribed from a three-decimal table.
pub const ROTATION_PRINTED: f64 = 5e-3;

/// Imaginary residual allowed in Tr(W rho).
pub const REAL_RESIDUAL: f64 = 1e-10;

/// Block-positivity slack for the see-saw minimum.
pub const BLOCK_POSITIVE: f64 = 1e-8;

/// Eigenvalue threshold below which the partial transpose is called negative.
pub const PPT: f64 = 1e-10;

/// Margin by which a G-criterion value must exceed its bound.
pub const G_MARGIN: f64 = 1e-10;

/// See-saw convergence: stop when successive values differ by less.
pub const SEESAW_STEP: f64 = 1e-12;

/// See-saw iteration cap.
pub const SEESAW_MAX_ITERS: usize = 500;

/// Default number of see-saw restarts.
pub const SEESAW_RESTARTS: usize = 100;

/// Bisection stopping width.
pub const BISECTION: f64 = 1e-12;
