//! Rounded two-qutrit example data shipped with the crate.

use crate::error::Result;
use crate::operator::{parse_operator, parse_real_matrix, DensityMatrix, Repair};
use crate::povm::{parse_povm, Povm};
use crate::rotation::AxisRotation;

pub const EXAMPLE3_RHO: &str = include_str!("../fixtures/example3_rho.txt");
pub const APPENDIX_ROTATION: &str = include_str!("../fixtures/appendix_rotation.txt");
pub const APPENDIX_SIC: &str = include_str!("../fixtures/appendix_sic.txt");

/// Reference values for the example state with the rotation above.
pub const EXAMPLE3_WITNESS: f64 = -0.0152221;
pub const EXAMPLE3_G_OFFSET: f64 = -0.011341;

/// The 9×9 state projected onto the nearest density matrix.
pub fn example3_state() -> Result<(DensityMatrix, Repair)> {
    DensityMatrix::repaired(&parse_operator(EXAMPLE3_RHO)?)
}

/// The 9×9 rotation made exactly orthogonal; also returns the largest
/// entry change.
pub fn appendix_rotation() -> Result<(AxisRotation, f64)> {
    AxisRotation::repaired(3, &parse_real_matrix(APPENDIX_ROTATION)?)
}

/// The printed operators, unvalidated.
pub fn appendix_povm() -> Result<Povm> {
    parse_povm(APPENDIX_SIC)
}
