//! Named two-qudit state families.

use crate::error::{Error, Result};
use crate::exec::rng_for;
use crate::operator::{random_unit_vector, ComplexOperator, DensityMatrix, PureState, C64};
use crate::povm::displace;

/// `|φ⁺⟩ = Σ_i |ii⟩ / √d`.
pub fn maximally_entangled(dim: usize) -> PureState {
    let amp = 1.0 / (dim as f64).sqrt();
    let v = (0..dim * dim)
        .map(|idx| {
            if idx / dim == idx % dim {
                C64::new(amp, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect();
    PureState::new(v).expect("normalized by construction")
}

/// `α |φ⁺⟩⟨φ⁺| + (1 − α) I/d²`.
pub fn isotropic(dim: usize, alpha: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha={alpha} outside [0, 1]"
        )));
    }
    let phi = maximally_entangled(dim).density();
    let noise = DensityMatrix::maximally_mixed(dim * dim);
    DensityMatrix::mixture(&[(alpha, &phi), (1.0 - alpha, &noise)])
}

/// Weyl–Heisenberg Bell state `(X^j Z^k ⊗ I)|φ⁺⟩` with index `j·d + k`.
pub fn bell_state(dim: usize, index: usize) -> PureState {
    let (shift, clock) = (index / dim, index % dim);
    let phi = maximally_entangled(dim);
    let amps = phi.amplitudes();
    // Apply the displacement to the first factor, one column of B at a time.
    let mut out = vec![C64::new(0.0, 0.0); dim * dim];
    for b in 0..dim {
        let column: Vec<C64> = (0..dim).map(|a| amps[a * dim + b]).collect();
        let moved = displace(&column, shift, clock);
        for a in 0..dim {
            out[a * dim + b] = moved[a];
        }
    }
    PureState::new(out).expect("unitary image of a unit vector")
}

/// `p |B₀⟩⟨B₀| + (1 − p)/(d² − 1) Σ_{j≠0} |B_j⟩⟨B_j|`.
pub fn bell_diagonal(dim: usize, p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("p={p} outside [0, 1]")));
    }
    let size = dim * dim;
    let rest = (1.0 - p) / (size as f64 - 1.0);
    let mut acc = ComplexOperator::zeros(size);
    for j in 0..size {
        let w = if j == 0 { p } else { rest };
        acc.add_scaled(C64::new(w, 0.0), &bell_state(dim, j).projector());
    }
    DensityMatrix::strict(acc.hermitian_part())
}

/// `ρ_A ⊗ ρ_B` with independent random pure factors.
pub fn random_product_state(dim: usize, seed: u64) -> DensityMatrix {
    let mut rng = rng_for(seed, 11);
    let a = PureState::new(random_unit_vector(dim, &mut rng)).expect("unit vector");
    let b = PureState::new(random_unit_vector(dim, &mut rng)).expect("unit vector");
    DensityMatrix::product(&a.density(), &b.density())
}

/// Product of two random mixed states.
pub fn random_mixed_product_state(dim: usize, seed: u64) -> DensityMatrix {
    let a = crate::operator::random_density_matrix(dim, 2, seed.wrapping_mul(2));
    let b = crate::operator::random_density_matrix(dim, 2, seed.wrapping_mul(2) + 1);
    DensityMatrix::product(&a, &b)
}
