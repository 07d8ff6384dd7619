//! SIC and GSIC POVMs: construction, certification and the index of
//! coincidence.

mod fiducial;
mod gsic;
mod io;
mod weyl;

pub use fiducial::{fiducial_objective, fiducial_search, FiducialSearch};
pub use gsic::{build_gsic, GsicParams};
pub use io::{load_povm, parse_povm, save_povm, serialize_povm};
pub use weyl::{build_sic, builtin_fiducial, displace, weyl_heisenberg_orbit};

use std::fmt;

use crate::error::{Error, Result};
use crate::operator::{eig_hermitian, ComplexOperator, DensityMatrix, C64};

/// Which symmetric family a POVM claims to belong to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PovmKind {
    Sic,
    /// General SIC with common element purity `a`.
    Gsic {
        a: f64,
    },
}

impl PovmKind {
    /// Element purity `Tr(P_j²)` implied by the kind.
    pub fn purity(&self, dim: usize) -> f64 {
        match *self {
            PovmKind::Sic => 1.0 / (dim * dim) as f64,
            PovmKind::Gsic { a } => a,
        }
    }
}

impl fmt::Display for PovmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PovmKind::Sic => write!(f, "SIC"),
            PovmKind::Gsic { a } => write!(f, "GSIC:a={a}"),
        }
    }
}

/// An ordered list of `d²` positive operators on `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    dim: usize,
    elements: Vec<ComplexOperator>,
    kind: PovmKind,
}

impl Povm {
    /// Checks element count and dimensions; the algebraic conditions are
    /// left to [`validate_povm`].
    pub fn new(dim: usize, elements: Vec<ComplexOperator>, kind: PovmKind) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParameter(
                "POVM dimension must be at least 2".into(),
            ));
        }
        if elements.len() != dim * dim {
            return Err(Error::Format(format!(
                "expected d²={} elements, found {}",
                dim * dim,
                elements.len()
            )));
        }
        if let Some(bad) = elements.iter().find(|e| e.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Self {
            dim,
            elements,
            kind,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[ComplexOperator] {
        &self.elements
    }

    pub fn kind(&self) -> PovmKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Gram matrix `Tr(P_j P_k)` (real part).
    pub fn gram(&self) -> Vec<Vec<f64>> {
        self.elements
            .iter()
            .map(|a| {
                self.elements
                    .iter()
                    .map(|b| a.trace_product(b).re)
                    .collect()
            })
            .collect()
    }

    /// Outcome probabilities `Tr(P_i ρ)` for an operator on `C^d`.
    pub fn probabilities_of(&self, rho: &ComplexOperator) -> Result<Vec<f64>> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rho.dim(),
            });
        }
        Ok(self
            .elements
            .iter()
            .map(|p| p.trace_product(rho).re)
            .collect())
    }

    pub fn probabilities(&self, rho: &DensityMatrix) -> Result<Vec<f64>> {
        self.probabilities_of(rho.op())
    }
}

/// Outcome of [`validate_povm`]. Each field is the worst absolute
/// deviation for that check.
#[derive(Debug, Clone, PartialEq)]
pub struct PovmReport {
    pub declared: PovmKind,
    /// The declared kind (with measured `a` for GSIC) when every check
    /// passes at the requested tolerance.
    pub kind_confirmed: Option<PovmKind>,
    /// Mean of `Tr(P_j²)`.
    pub measured_a: f64,
    pub completeness: f64,
    pub element_trace: f64,
    /// Largest negative eigenvalue magnitude over all elements.
    pub positivity: f64,
    pub hermiticity: f64,
    pub gram: f64,
    pub max_violation: f64,
}

impl fmt::Display for PovmReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "declared       {}", self.declared)?;
        match &self.kind_confirmed {
            Some(k) => writeln!(f, "confirmed      {k}")?,
            None => writeln!(f, "confirmed      no")?,
        }
        writeln!(f, "measured_a     {:.12}", self.measured_a)?;
        writeln!(f, "completeness   {:.3e}", self.completeness)?;
        writeln!(f, "element_trace  {:.3e}", self.element_trace)?;
        writeln!(f, "positivity     {:.3e}", self.positivity)?;
        writeln!(f, "hermiticity    {:.3e}", self.hermiticity)?;
        writeln!(f, "gram           {:.3e}", self.gram)?;
        write!(f, "max_violation  {:.3e}", self.max_violation)
    }
}

/// Checks completeness, traces, positivity and the symmetric Gram pattern.
/// Violations are reported, never raised.
pub fn validate_povm(p: &Povm, tol: f64) -> PovmReport {
    let d = p.dim;
    let df = d as f64;
    let n = p.elements.len();

    let mut sum = ComplexOperator::zeros(d);
    for e in &p.elements {
        sum.add_scaled(C64::new(1.0, 0.0), e);
    }
    let completeness = sum.max_abs_diff(&ComplexOperator::identity(d));

    let element_trace = p
        .elements
        .iter()
        .map(|e| (e.trace() - C64::new(1.0 / df, 0.0)).norm())
        .fold(0.0, f64::max);

    let hermiticity = p
        .elements
        .iter()
        .map(|e| e.hermitian_deviation())
        .fold(0.0, f64::max);

    let positivity = p
        .elements
        .iter()
        .map(|e| {
            let lowest = eig_hermitian(&e.hermitian_part())
                .map(|eig| eig.min())
                .unwrap_or(f64::NEG_INFINITY);
            (-lowest).max(0.0)
        })
        .fold(0.0, f64::max);

    let gram = p.gram();
    let measured_a = (0..n).map(|j| gram[j][j]).sum::<f64>() / n as f64;
    let a = p.kind.purity(d);
    let off = (1.0 - df * a) / (df * (df * df - 1.0));
    let mut gram_dev = 0.0f64;
    for (j, row) in gram.iter().enumerate() {
        for (k, &g) in row.iter().enumerate() {
            let target = if j == k { a } else { off };
            gram_dev = gram_dev.max((g - target).abs());
        }
    }

    let max_violation = [
        completeness,
        element_trace,
        positivity,
        hermiticity,
        gram_dev,
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let kind_confirmed = (max_violation <= tol).then_some(match p.kind {
        PovmKind::Sic => PovmKind::Sic,
        PovmKind::Gsic { .. } => PovmKind::Gsic { a: measured_a },
    });

    PovmReport {
        declared: p.kind,
        kind_confirmed,
        measured_a,
        completeness,
        element_trace,
        positivity,
        hermiticity,
        gram: gram_dev,
        max_violation,
    }
}

/// `Σ_i [Tr(P_i ρ)]²`.
pub fn index_of_coincidence(p: &Povm, rho: &DensityMatrix) -> Result<f64> {
    Ok(p.probabilities(rho)?.iter().map(|x| x * x).sum())
}

/// Closed-form index of coincidence for a state of purity `Tr(ρ²)`.
///
/// For a SIC this is `(Tr(ρ²) + 1) / (d(d+1))`; for GSIC(a) it is
/// `((a·d³ − 1)·Tr(ρ²) + d(1 − a·d)) / (d(d² − 1))`, which coincides with
/// the SIC form at `a = 1/d²`.
pub fn coincidence_closed_form(kind: PovmKind, dim: usize, purity: f64) -> f64 {
    let d = dim as f64;
    match kind {
        PovmKind::Sic => (purity + 1.0) / (d * (d + 1.0)),
        PovmKind::Gsic { a } => {
            ((a * d.powi(3) - 1.0) * purity + d * (1.0 - a * d)) / (d * (d * d - 1.0))
        }
    }
}

/// Largest index of coincidence over pure states, `(a·d² + 1)/(d(d+1))`.
pub fn pure_state_coincidence(kind: PovmKind, dim: usize) -> f64 {
    let d = dim as f64;
    (kind.purity(dim) * d * d + 1.0) / (d * (d + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{random_density_matrix, random_pure_state};

    #[test]
    fn rejects_wrong_element_count() {
        let p = build_sic(3).unwrap();
        let err = Povm::new(3, p.elements()[..8].to_vec(), PovmKind::Sic).unwrap_err();
        assert!(err.to_string().contains("expected d²=9 elements"));
    }

    #[test]
    fn sic_coincidence_matches_closed_form() {
        for d in [2, 3] {
            let p = build_sic(d).unwrap();
            for seed in 0..200u64 {
                let rho = if seed % 2 == 0 {
                    random_pure_state(d, seed).density()
                } else {
                    random_density_matrix(d, 1 + (seed as usize % d), seed)
                };
                let ic = index_of_coincidence(&p, &rho).unwrap();
                let expected = coincidence_closed_form(PovmKind::Sic, d, rho.purity());
                assert!((ic - expected).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn qutrit_sic_special_values() {
        let p = build_sic(3).unwrap();
        let pure = random_pure_state(3, 5).density();
        assert!((index_of_coincidence(&p, &pure).unwrap() - 1.0 / 6.0).abs() < 1e-12);
        // Brute force over the nine elements: each Tr(P_i I/3) = 1/9.
        let mixed = DensityMatrix::maximally_mixed(3);
        let brute: f64 = p
            .elements()
            .iter()
            .map(|e| (e.trace().re / 3.0).powi(2))
            .sum();
        assert!((brute - 1.0 / 9.0).abs() < 1e-12);
        assert!((index_of_coincidence(&p, &mixed).unwrap() - 1.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn gsic_closed_form_reduces_to_sic() {
        for d in [2usize, 3, 4] {
            for purity in [1.0 / d as f64, 0.5, 1.0] {
                let a = 1.0 / (d * d) as f64;
                let g = coincidence_closed_form(PovmKind::Gsic { a }, d, purity);
                let s = coincidence_closed_form(PovmKind::Sic, d, purity);
                assert!((g - s).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn probabilities_form_a_distribution() {
        let p = build_sic(3).unwrap();
        for seed in 0..50 {
            let rho = random_density_matrix(3, 2, seed);
            let probs = p.probabilities(&rho).unwrap();
            assert!(probs.iter().all(|&x| x >= -1e-12));
            assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let p = build_sic(2).unwrap();
        let rho = DensityMatrix::maximally_mixed(3);
        assert!(matches!(
            index_of_coincidence(&p, &rho),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
