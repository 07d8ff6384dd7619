//! Entanglement witnesses for two-qudit states built from symmetric
//! informationally complete measurements.
//!
//! The crate covers SIC and GSIC POVM construction and certification,
//! axis-fixing rotations of the probability simplex, the positive map and
//! its witness, and baseline separability criteria for comparison.

pub mod error;
pub mod exec;
pub mod operator;
pub mod tolerances;

pub use error::{Error, Result};
pub use exec::Execution;
pub use operator::{
    eig_hermitian, parse_operator, partial_transpose, random_density_matrix, random_pure_state,
    serialize_operator, tensor, ComplexOperator, DensityMatrix, PureState, Subsystem, C64,
};
pub mod povm;

pub use povm::{
    build_gsic, build_sic, index_of_coincidence, validate_povm, Povm, PovmKind, PovmReport,
};
pub mod rotation;

pub use rotation::AxisRotation;
pub mod criteria;
pub mod fixtures;
pub mod states;
pub mod witness;

pub use criteria::{compare, g_criterion, ppt_check, CriterionReport, GConvention};
pub use witness::{build_witness, evaluate, min_eigenvalue, Verdict, WitnessOperator};
