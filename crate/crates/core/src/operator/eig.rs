use nalgebra::SymmetricEigen;

use super::{ComplexOperator, C64};
use crate::error::{Error, Result};

/// Spectral decomposition of a Hermitian operator, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// `vectors[i]` is the unit eigenvector for `values[i]`.
    pub vectors: Vec<Vec<C64>>,
}

impl HermitianEigen {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn min_vector(&self) -> &[C64] {
        &self.vectors[0]
    }

    /// `Σ f(λ_i) |v_i⟩⟨v_i|`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexOperator {
        let n = self.values.len();
        let mut out = ComplexOperator::zeros(n);
        for (lambda, v) in self.values.iter().zip(&self.vectors) {
            let w = f(*lambda);
            if w == 0.0 {
                continue;
            }
            out.add_scaled(C64::new(w, 0.0), &ComplexOperator::projector(v));
        }
        out
    }
}

pub fn eig_hermitian(a: &ComplexOperator) -> Result<HermitianEigen> {
    if !a.is_hermitian() {
        return Err(Error::NotHermitian {
            deviation: a.hermitian_deviation(),
        });
    }
    let n = a.dim();
    let eig = SymmetricEigen::new(a.to_nalgebra());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = order
        .iter()
        .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
        .collect();
    Ok(HermitianEigen { values, vectors })
}
