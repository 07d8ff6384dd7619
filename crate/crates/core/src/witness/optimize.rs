//! Closed-form choice of the rotation for a given state.
//!
//! `Tr(W(O)ρ) = c − Σ_{kl} O_{kl} M_{kl}` is linear in `O`, so the best
//! axis-fixing rotation solves an orthogonal Procrustes problem on the
//! complement of `n`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::operator::{product_expectation, DensityMatrix};
use crate::povm::{validate_povm, Povm};
use crate::rotation::{axis_basis, AxisRotation};
use crate::tolerances;

use super::witness_constant;

/// `M_{kl} = Tr((conj(P_l) ⊗ P_k) ρ)`; real for Hermitian `ρ`.
pub fn correlation_matrix(povm: &Povm, rho: &DensityMatrix) -> Result<DMatrix<f64>> {
    let d = povm.dim();
    if rho.dim() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: rho.dim(),
        });
    }
    let conj: Vec<_> = povm.elements().iter().map(|p| p.conj()).collect();
    let n = povm.len();
    let mut m = DMatrix::zeros(n, n);
    for (l, pl) in conj.iter().enumerate() {
        for (k, pk) in povm.elements().iter().enumerate() {
            let z = product_expectation(pl, pk, rho.op());
            if z.im.abs() > tolerances::REAL_RESIDUAL {
                return Err(Error::Validation(format!(
                    "correlation entry ({k}, {l}) has imaginary part {:.3e}",
                    z.im
                )));
            }
            m[(k, l)] = z.re;
        }
    }
    Ok(m)
}

/// `c − Σ_{kl} O_{kl} M_{kl}`, the witness value without forming `W`.
pub fn linear_value(constant: f64, rotation: &AxisRotation, m: &DMatrix<f64>) -> f64 {
    constant - rotation.matrix().component_mul(m).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RotationOptimum {
    pub rotation: AxisRotation,
    pub value: f64,
    /// Witness value at `O = I`, for comparison.
    pub identity_value: f64,
    pub singular_values: Vec<f64>,
}

pub fn optimize_rotation(povm: &Povm, rho: &DensityMatrix) -> Result<RotationOptimum> {
    let report = validate_povm(povm, tolerances::POVM_FOR_WITNESS);
    if report.kind_confirmed.is_none() {
        return Err(Error::Validation(format!(
            "POVM fails {} certification (max violation {:.3e})",
            povm.kind(),
            report.max_violation
        )));
    }
    let d = povm.dim();
    let size = d * d;
    let m = correlation_matrix(povm, rho)?;
    let v = axis_basis(d);
    let full = v.transpose() * &m * &v;
    let axis_term = full[(0, 0)];
    let sign = if axis_term >= 0.0 { 1.0 } else { -1.0 };
    let block = full.view((1, 1), (size - 1, size - 1)).into_owned();
    let svd = block.svd(true, true);
    let r = svd.u.as_ref().expect("u requested") * svd.v_t.as_ref().expect("v_t requested");
    let rotation = AxisRotation::from_complement(d, &r, sign)?;
    let constant = witness_constant(povm.kind(), d);
    let sigma: f64 = svd.singular_values.iter().sum();
    Ok(RotationOptimum {
        value: constant - sign * axis_term - sigma,
        identity_value: constant - m.trace(),
        singular_values: svd.singular_values.iter().copied().collect(),
        rotation,
    })
}
