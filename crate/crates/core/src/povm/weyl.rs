//! Weyl–Heisenberg orbits.
//!
//! Shift `X|m⟩ = |m+1 mod d⟩`, clock `Z|m⟩ = ω^m|m⟩` with `ω = e^{2πi/d}`.
//! Displacements are `D_{jk} = X^j Z^k` and orbit element `j·d + k` is
//! `D_{jk}|f⟩⟨f|D_{jk}† / d`.

use std::f64::consts::PI;

use super::{validate_povm, Povm, PovmKind};
use crate::error::{Error, Result};
use crate::operator::{ComplexOperator, C64};
use crate::tolerances;

/// `X^shift Z^clock |v⟩`.
pub fn displace(v: &[C64], shift: usize, clock: usize) -> Vec<C64> {
    let d = v.len();
    let omega = 2.0 * PI / d as f64;
    (0..d)
        .map(|m| {
            let src = (m + d - shift % d) % d;
            v[src] * C64::from_polar(1.0, omega * ((clock * src) % d) as f64)
        })
        .collect()
}

/// Unit-norm SIC fiducials for `d = 2` and `d = 3`.
pub fn builtin_fiducial(dim: usize) -> Option<Vec<C64>> {
    match dim {
        2 => {
            // Tetrahedral fiducial: Bloch vector (1, 1, 1)/√3.
            let theta = (1.0 / 3.0f64.sqrt()).acos();
            Some(vec![
                C64::new((theta / 2.0).cos(), 0.0),
                C64::from_polar((theta / 2.0).sin(), PI / 4.0),
            ])
        }
        3 => {
            let s = 0.5f64.sqrt();
            Some(vec![
                C64::new(0.0, 0.0),
                C64::new(s, 0.0),
                C64::new(-s, 0.0),
            ])
        }
        _ => None,
    }
}

/// The `d²` subnormalized projectors generated from `fiducial`.
pub fn weyl_heisenberg_orbit(fiducial: &[C64]) -> Vec<ComplexOperator> {
    let d = fiducial.len();
    let mut out = Vec::with_capacity(d * d);
    for shift in 0..d {
        for clock in 0..d {
            let v = displace(fiducial, shift, clock);
            out.push(ComplexOperator::projector(&v).scale_real(1.0 / d as f64));
        }
    }
    out
}

/// Built-in SIC for `d ∈ {2, 3}`, certified before it is returned.
pub fn build_sic(dim: usize) -> Result<Povm> {
    let fiducial = builtin_fiducial(dim).ok_or(Error::UnsupportedDimension(dim))?;
    let povm = Povm::new(dim, weyl_heisenberg_orbit(&fiducial), PovmKind::Sic)?;
    let report = validate_povm(&povm, tolerances::POVM_CERTIFY);
    if report.kind_confirmed.is_none() {
        return Err(Error::Validation(format!(
            "built-in SIC for d={dim} failed certification: {:.3e}",
            report.max_violation
        )));
    }
    Ok(povm)
}
