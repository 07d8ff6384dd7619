use super::{build_sic, validate_povm, Povm, PovmKind};
use crate::error::{Error, Result};
use crate::operator::ComplexOperator;
use crate::tolerances;

/// Purity parameter `a` and the depolarizing weight that realizes it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GsicParams {
    pub dim: usize,
    pub a: f64,
    pub mu: f64,
}

impl GsicParams {
    /// Requires `1/d³ < a ≤ 1/d²`.
    pub fn new(dim: usize, a: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParameter(
                "GSIC dimension must be at least 2".into(),
            ));
        }
        let d = dim as f64;
        let (lo, hi) = (d.powi(-3), d.powi(-2));
        // Allow a = 1/d² computed with rounding, e.g. 1.0/9.0.
        if !(a > lo && a <= hi * (1.0 + 1e-14)) {
            return Err(Error::InvalidParameter(format!(
                "GSIC purity a={a} must satisfy 1/d³ < a ≤ 1/d² ({lo} < a ≤ {hi})"
            )));
        }
        let mu = ((a * d.powi(3) - 1.0) / (d - 1.0)).sqrt().min(1.0);
        Ok(Self { dim, a, mu })
    }

    /// `a = μ²/d² + (1 − μ²)/d³`.
    pub fn from_mu(dim: usize, mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu <= 1.0) {
            return Err(Error::InvalidParameter(format!("mu={mu} outside (0, 1]")));
        }
        let d = dim as f64;
        let a = mu * mu / (d * d) + (1.0 - mu * mu) / d.powi(3);
        Ok(Self { dim, a, mu })
    }
}

/// GSIC(a) by depolarizing the built-in SIC: `P'_j = μ P_j + (1 − μ) I/d²`.
pub fn build_gsic(dim: usize, a: f64) -> Result<Povm> {
    let params = GsicParams::new(dim, a)?;
    let sic = build_sic(dim)?;
    if params.mu == 1.0 {
        return Povm::new(dim, sic.elements().to_vec(), PovmKind::Gsic { a });
    }
    let noise = ComplexOperator::identity(dim).scale_real((1.0 - params.mu) / (dim * dim) as f64);
    let elements = sic
        .elements()
        .iter()
        .map(|p| &p.scale_real(params.mu) + &noise)
        .collect();
    let povm = Povm::new(dim, elements, PovmKind::Gsic { a })?;
    let report = validate_povm(&povm, tolerances::POVM_CERTIFY);
    if report.kind_confirmed.is_none() {
        return Err(Error::Validation(format!(
            "GSIC(a={a}) for d={dim} failed certification: {:.3e}",
            report.max_violation
        )));
    }
    Ok(povm)
}
