use crate::error::{Error, Result};
use crate::exec::{rng_for, Execution};
use crate::operator::{eig_hermitian, random_unit_vector, tensor, ComplexOperator, PureState, C64};
use crate::povm::Povm;
use crate::rotation::AxisRotation;

use super::{correlation_operator, witness_constant};

/// A POVM paired with an axis-fixing rotation of matching dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveMapSpec {
    povm: Povm,
    rotation: AxisRotation,
}

impl PositiveMapSpec {
    pub fn new(povm: Povm, rotation: AxisRotation) -> Result<Self> {
        if povm.dim() != rotation.dim() {
            return Err(Error::DimensionMismatch {
                expected: povm.dim(),
                found: rotation.dim(),
            });
        }
        Ok(Self { povm, rotation })
    }

    pub fn povm(&self) -> &Povm {
        &self.povm
    }

    pub fn rotation(&self) -> &AxisRotation {
        &self.rotation
    }

    pub fn dim(&self) -> usize {
        self.povm.dim()
    }
}

/// `Φ(X) = Tr(X)·I/d − ((d+1)/(d−1)) Σ_{k,l} O_{kl} [Tr(X P_l) − Tr(X)/d²] P_k`.
pub fn apply_map(spec: &PositiveMapSpec, x: &ComplexOperator) -> Result<ComplexOperator> {
    let d = spec.dim();
    if x.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: x.dim(),
        });
    }
    let df = d as f64;
    let tr = x.trace();
    let elements = spec.povm.elements();
    let brackets: Vec<C64> = elements
        .iter()
        .map(|p| x.trace_product(p) - tr / (df * df))
        .collect();
    let factor = (df + 1.0) / (df - 1.0);
    let mut out = ComplexOperator::identity(d).scale(tr / df);
    for (k, p_k) in elements.iter().enumerate() {
        let weight: C64 = brackets
            .iter()
            .enumerate()
            .map(|(l, b)| b * spec.rotation.entry(k, l))
            .sum();
        out.add_scaled(-weight * factor, p_k);
    }
    Ok(out)
}

/// Purity statistics of `Φ(P)` over random rank-1 projectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallReport {
    pub samples: usize,
    pub max_purity: f64,
    pub min_purity: f64,
    /// `1/(d−1)`, the squared radius bound that certifies positivity.
    pub bound: f64,
    pub max_trace_deviation: f64,
    pub max_hermitian_deviation: f64,
    pub min_eigenvalue: f64,
}

impl BallReport {
    pub fn spread(&self) -> f64 {
        self.max_purity - self.min_purity
    }

    /// Every image lies strictly inside the ball, has unit trace and is
    /// Hermitian within `tol`.
    pub fn inside_ball(&self, tol: f64) -> bool {
        self.max_purity < self.bound
            && self.max_trace_deviation <= tol
            && self.max_hermitian_deviation <= tol
    }
}

struct BallSample {
    purity: f64,
    trace_dev: f64,
    herm_dev: f64,
    min_eig: f64,
}

pub fn ball_check(spec: &PositiveMapSpec, samples: usize, seed: u64) -> BallReport {
    ball_check_with(spec, samples, seed, Execution::default())
}

pub fn ball_check_with(
    spec: &PositiveMapSpec,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> BallReport {
    let d = spec.dim();
    let results = exec.map(samples, |i| {
        let mut rng = rng_for(seed, i as u64);
        let psi = PureState::new(random_unit_vector(d, &mut rng)).expect("unit vector");
        let image = apply_map(spec, &psi.projector()).expect("dimension checked");
        let herm_dev = image.hermitian_deviation();
        let image = image.hermitian_part();
        BallSample {
            purity: image.trace_product(&image).re,
            trace_dev: (image.trace() - 1.0).norm(),
            herm_dev,
            min_eig: eig_hermitian(&image).expect("Hermitian part").min(),
        }
    });
    let mut report = BallReport {
        samples,
        max_purity: f64::NEG_INFINITY,
        min_purity: f64::INFINITY,
        bound: 1.0 / (d as f64 - 1.0),
        max_trace_deviation: 0.0,
        max_hermitian_deviation: 0.0,
        min_eigenvalue: f64::INFINITY,
    };
    for s in results {
        report.max_purity = report.max_purity.max(s.purity);
        report.min_purity = report.min_purity.min(s.purity);
        report.max_trace_deviation = report.max_trace_deviation.max(s.trace_dev);
        report.max_hermitian_deviation = report.max_hermitian_deviation.max(s.herm_dev);
        report.min_eigenvalue = report.min_eigenvalue.min(s.min_eig);
    }
    report
}

/// Comparison of the Choi-type operator `((d−1)/(d+1)) Σ |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)`
/// with the witness matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChoiReport {
    /// Identity coefficient of the Choi-type operator.
    pub choi_constant: f64,
    /// Identity coefficient of the witness.
    pub eq3_constant: f64,
    /// Measured `C − W` identity shift (mean of the diagonal).
    pub kappa: f64,
    /// `choi_constant − eq3_constant`.
    pub expected_kappa: f64,
    /// `max |(C − κI) − W|`.
    pub residual: f64,
}

pub fn choi_consistency(spec: &PositiveMapSpec) -> Result<ChoiReport> {
    let d = spec.dim();
    let df = d as f64;
    let prefactor = (df - 1.0) / (df + 1.0);
    let mut choi = ComplexOperator::zeros(d * d);
    for i in 0..d {
        for j in 0..d {
            let unit = ComplexOperator::from_fn(d, |r, c| {
                if r == i && c == j {
                    C64::new(1.0, 0.0)
                } else {
                    C64::new(0.0, 0.0)
                }
            });
            let image = apply_map(spec, &unit)?;
            choi.add_scaled(C64::new(prefactor, 0.0), &tensor(&unit, &image));
        }
    }

    // The witness with the same correlation term; the POVM itself is not
    // re-certified here.
    let eq3_constant = witness_constant(spec.povm().kind(), d);
    let mut w = ComplexOperator::identity(d * d).scale_real(eq3_constant);
    w.add_scaled(
        C64::new(-1.0, 0.0),
        &correlation_operator(spec.povm(), spec.rotation()),
    );

    let diff = &choi - &w;
    let n = d * d;
    let kappa = (0..n).map(|i| diff[(i, i)].re).sum::<f64>() / n as f64;
    let shifted = &diff - &ComplexOperator::identity(n).scale_real(kappa);
    let residual = shifted
        .entries()
        .iter()
        .fold(0.0f64, |m, z| m.max(z.norm()));
    let choi_constant = (df - 1.0) / (df * (df + 1.0)) + spec.rotation().sign() / (df * df);
    Ok(ChoiReport {
        choi_constant,
        eq3_constant,
        kappa,
        expected_kappa: choi_constant - eq3_constant,
        residual,
    })
}
