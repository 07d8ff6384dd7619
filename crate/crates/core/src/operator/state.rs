use rand::Rng;
use rand_distr::StandardNormal;

use super::{eig_hermitian, ComplexOperator, C64};
use crate::error::{Error, Result};
use crate::exec::rng_for;
use crate::tolerances;

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidParameter("empty state vector".into()));
        }
        let norm = norm_sqr(&amplitudes);
        if (norm - 1.0).abs() > tolerances::PURE_NORM {
            return Err(Error::InvalidParameter(format!(
                "state vector has squared norm {norm}"
            )));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(mut amplitudes: Vec<C64>) -> Result<Self> {
        let norm = norm_sqr(&amplitudes).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidParameter(
                "cannot normalize a zero vector".into(),
            ));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn projector(&self) -> ComplexOperator {
        ComplexOperator::projector(&self.amplitudes)
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix {
            op: self.projector(),
            validation_tol: tolerances::DENSITY_STRICT,
        }
    }
}

fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// A unit-trace positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    op: ComplexOperator,
    validation_tol: f64,
}

/// How far [`DensityMatrix::repaired`] moved its input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Repair {
    /// Frobenius distance between the input and the repaired matrix.
    pub distance: f64,
    pub clipped_weight: f64,
    pub input_trace: f64,
}

impl DensityMatrix {
    /// Validates trace and spectrum within `tol`.
    pub fn new(op: ComplexOperator, tol: f64) -> Result<Self> {
        if tol.is_nan() || tol < 0.0 {
            return Err(Error::InvalidParameter(
                "tolerance must be nonnegative".into(),
            ));
        }
        if !op.is_hermitian() {
            return Err(Error::NotHermitian {
                deviation: op.hermitian_deviation(),
            });
        }
        let tr = op.trace().re;
        if (tr - 1.0).abs() > tol {
            return Err(Error::InvalidDensity(format!("trace {tr} differs from 1")));
        }
        let lowest = eig_hermitian(&op)?.min();
        if lowest < -tol {
            return Err(Error::InvalidDensity(format!(
                "smallest eigenvalue {lowest:.3e} is negative"
            )));
        }
        Ok(Self {
            op,
            validation_tol: tol,
        })
    }

    pub fn strict(op: ComplexOperator) -> Result<Self> {
        Self::new(op, tolerances::DENSITY_STRICT)
    }

    pub fn lenient(op: ComplexOperator) -> Result<Self> {
        Self::new(op, tolerances::DENSITY_LENIENT)
    }

    /// Nearest unit-trace PSD matrix: Hermitian part, negative eigenvalues
    /// clipped, trace renormalized.
    pub fn repaired(op: &ComplexOperator) -> Result<(Self, Repair)> {
        let herm = op.hermitian_part();
        let eig = eig_hermitian(&herm)?;
        let kept: f64 = eig.values.iter().map(|&x| x.max(0.0)).sum();
        if kept <= 0.0 {
            return Err(Error::InvalidDensity("no positive spectrum to keep".into()));
        }
        let clipped_weight = eig.values.iter().map(|&x| (-x).max(0.0)).sum();
        let fixed = eig.reconstruct_with(|x| x.max(0.0) / kept).hermitian_part();
        let repair = Repair {
            distance: (&fixed - op).frobenius_norm(),
            clipped_weight,
            input_trace: op.trace().re,
        };
        Ok((Self::strict(fixed)?, repair))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            op: ComplexOperator::identity(dim).scale_real(1.0 / dim as f64),
            validation_tol: tolerances::DENSITY_STRICT,
        }
    }

    pub fn op(&self) -> &ComplexOperator {
        &self.op
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn validation_tol(&self) -> f64 {
        self.validation_tol
    }

    pub fn purity(&self) -> f64 {
        self.op.trace_product(&self.op).re
    }

    /// Convex combination `Σ w_i ρ_i`; weights must be nonnegative and sum to 1.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let Some((_, first)) = parts.first() else {
            return Err(Error::InvalidParameter("empty mixture".into()));
        };
        let mut acc = ComplexOperator::zeros(first.dim());
        for (w, rho) in parts {
            if rho.dim() != first.dim() {
                return Err(Error::DimensionMismatch {
                    expected: first.dim(),
                    found: rho.dim(),
                });
            }
            if *w < 0.0 {
                return Err(Error::InvalidParameter("negative mixture weight".into()));
            }
            acc.add_scaled(C64::new(*w, 0.0), rho.op());
        }
        Self::strict(acc.hermitian_part())
    }

    /// `ρ_A ⊗ ρ_B`.
    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Self {
        Self {
            op: super::tensor(&a.op, &b.op),
            validation_tol: tolerances::DENSITY_STRICT,
        }
    }
}

/// A Haar-random unit vector drawn from `rng`.
pub fn random_unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..dim)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = norm_sqr(&v).sqrt();
        if norm > 1e-300 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Normalized vector of independent standard complex Gaussians.
pub fn random_pure_state(dim: usize, seed: u64) -> PureState {
    assert!(dim >= 1, "dimension must be at least 1");
    let mut rng = rng_for(seed, 0);
    PureState {
        amplitudes: random_unit_vector(dim, &mut rng),
    }
}

/// Induced-measure random state `GG†/Tr(GG†)` with `G` a `dim × rank`
/// Ginibre matrix.
pub fn random_density_matrix(dim: usize, rank: usize, seed: u64) -> DensityMatrix {
    assert!(dim >= 1 && rank >= 1, "dimension and rank must be positive");
    let mut rng = rng_for(seed, 1);
    let mut acc = ComplexOperator::zeros(dim);
    for _ in 0..rank {
        let g: Vec<C64> = (0..dim)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        acc.add_scaled(C64::new(1.0, 0.0), &ComplexOperator::projector(&g));
    }
    let tr = acc.trace().re;
    DensityMatrix {
        op: acc.scale_real(1.0 / tr).hermitian_part(),
        validation_tol: tolerances::DENSITY_STRICT,
    }
}
