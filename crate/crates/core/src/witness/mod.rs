//! The positive map built from a POVM and an axis-fixing rotation, and the
//! entanglement witness
//!
//! `W = c·I⊗I − Σ_{k,l} O_{kl} · conj(P_l) ⊗ P_k`
//!
//! with `c = 2/(d(d+1))` for a SIC and `c = (a·d² + 1)/(d(d+1))` for a
//! GSIC of element purity `a`. The constant is the largest index of
//! coincidence over pure states, so Cauchy–Schwarz makes `W` block
//! positive for every orthogonal `O` that fixes `n`.

mod map;
mod optimize;
mod scan;
mod seesaw;

pub use map::{
    apply_map, ball_check, ball_check_with, choi_consistency, BallReport, ChoiReport,
    PositiveMapSpec,
};
pub use optimize::{correlation_matrix, linear_value, optimize_rotation, RotationOptimum};
pub use scan::{
    scan_bell_diagonal, scan_bell_diagonal_with, scan_isotropic, scan_isotropic_with, BellScan,
    IsotropicScan, ScanRow,
};
pub use seesaw::{min_product_expectation, ProductMinimum, SeeSaw};

use std::fmt;

use crate::error::{Error, Result};
use crate::exec::rng_for;
use crate::operator::format::{content_lines, format_real, parse_block};
use crate::operator::{
    eig_hermitian, random_unit_vector, serialize_operator, tensor, ComplexOperator, DensityMatrix,
    PureState, C64,
};
use crate::povm::{index_of_coincidence, pure_state_coincidence, validate_povm, Povm, PovmKind};
use crate::rotation::AxisRotation;
use crate::tolerances;

/// Outcome of a single test on a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Entangled,
    Inconclusive,
}

impl Verdict {
    /// Witness convention: a negative expectation certifies entanglement.
    pub fn from_witness_value(value: f64) -> Self {
        if value < 0.0 {
            Verdict::Entangled
        } else {
            Verdict::Inconclusive
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Entangled => "entangled",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Constant `c` for the witness built from a POVM of the given kind.
pub fn witness_constant(kind: PovmKind, dim: usize) -> f64 {
    pure_state_coincidence(kind, dim)
}

#[derive(Debug, Clone)]
pub struct WitnessOperator {
    spec: PositiveMapSpec,
    constant: f64,
    matrix: ComplexOperator,
}

/// `Σ_{k,l} O_{kl} conj(P_l) ⊗ P_k`.
pub(crate) fn correlation_operator(povm: &Povm, rotation: &AxisRotation) -> ComplexOperator {
    let d = povm.dim();
    let elements = povm.elements();
    let mut acc = ComplexOperator::zeros(d * d);
    for (l, p_l) in elements.iter().enumerate() {
        let mut mixed = ComplexOperator::zeros(d);
        for (k, p_k) in elements.iter().enumerate() {
            let o = rotation.entry(k, l);
            if o != 0.0 {
                mixed.add_scaled(C64::new(o, 0.0), p_k);
            }
        }
        acc.add_scaled(C64::new(1.0, 0.0), &tensor(&p_l.conj(), &mixed));
    }
    acc
}

/// Builds the witness after validating the POVM at
/// [`tolerances::POVM_FOR_WITNESS`].
pub fn build_witness(povm: &Povm, rotation: &AxisRotation) -> Result<WitnessOperator> {
    build_witness_with_tol(povm, rotation, tolerances::POVM_FOR_WITNESS)
}

pub fn build_witness_with_tol(
    povm: &Povm,
    rotation: &AxisRotation,
    tol: f64,
) -> Result<WitnessOperator> {
    let spec = PositiveMapSpec::new(povm.clone(), rotation.clone())?;
    let report = validate_povm(povm, tol);
    if report.kind_confirmed.is_none() {
        return Err(Error::Validation(format!(
            "POVM fails {} certification at {tol:.1e} (max violation {:.3e})",
            povm.kind(),
            report.max_violation
        )));
    }
    if let PovmKind::Gsic { a } = povm.kind() {
        if (report.measured_a - a).abs() > tol {
            return Err(Error::Validation(format!(
                "declared a={a} but measured a={}",
                report.measured_a
            )));
        }
    }
    let d = povm.dim();
    let constant = witness_constant(povm.kind(), d);
    certify_constant(povm, constant, tol)?;

    let mut matrix = ComplexOperator::identity(d * d).scale_real(constant);
    matrix.add_scaled(C64::new(-1.0, 0.0), &correlation_operator(povm, rotation));
    Ok(WitnessOperator {
        spec,
        constant,
        matrix: matrix.hermitian_part(),
    })
}

/// The pure-state index of coincidence is constant; spot-check it against
/// `c` on a few seeded states.
fn certify_constant(povm: &Povm, constant: f64, tol: f64) -> Result<()> {
    let mut rng = rng_for(0x5eed, 0);
    for _ in 0..8 {
        let psi = PureState::new(random_unit_vector(povm.dim(), &mut rng))?;
        let ic = index_of_coincidence(povm, &psi.density())?;
        if (ic - constant).abs() > tol.max(1e-9) {
            return Err(Error::Validation(format!(
                "pure-state coincidence {ic} differs from witness constant {constant}"
            )));
        }
    }
    Ok(())
}

impl WitnessOperator {
    pub fn spec(&self) -> &PositiveMapSpec {
        &self.spec
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn matrix(&self) -> &ComplexOperator {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    /// Same correlation term with a different constant.
    pub fn with_constant(&self, constant: f64) -> Self {
        let d2 = self.matrix.dim();
        let mut matrix = self.matrix.clone();
        matrix.add_scaled(
            C64::new(constant - self.constant, 0.0),
            &ComplexOperator::identity(d2),
        );
        Self {
            spec: self.spec.clone(),
            constant,
            matrix,
        }
    }
}

/// `Tr(W ρ)`. A negative value certifies entanglement.
pub fn evaluate(w: &WitnessOperator, rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != w.matrix.dim() {
        return Err(Error::DimensionMismatch {
            expected: w.matrix.dim(),
            found: rho.dim(),
        });
    }
    let z = w.matrix.trace_product(rho.op());
    if z.im.abs() > tolerances::REAL_RESIDUAL {
        return Err(Error::Validation(format!(
            "Tr(Wρ) has imaginary part {:.3e}",
            z.im
        )));
    }
    Ok(z.re)
}

pub fn min_eigenvalue(w: &WitnessOperator) -> f64 {
    eig_hermitian(&w.matrix)
        .expect("witness matrix is Hermitian")
        .min()
}

/// Contents of a witness file.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessFile {
    pub dim: usize,
    pub constant: f64,
    pub matrix: ComplexOperator,
}

/// `witness d=<d> c=<c>` followed by the `d²×d²` matrix.
pub fn serialize_witness(w: &WitnessOperator) -> String {
    format!(
        "witness d={} c={}\n{}",
        w.dim(),
        format_real(w.constant),
        serialize_operator(&w.matrix)
    )
}

pub fn parse_witness(text: &str) -> Result<WitnessFile> {
    let mut lines = content_lines(text).filter(|(_, l)| !l.is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Format("empty witness file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.first() != Some(&"witness") {
        return Err(Error::Format(format!(
            "expected `witness` header, found `{header}`"
        )));
    }
    let field = |key: &str| {
        fields
            .iter()
            .find_map(|f| f.strip_prefix(key).and_then(|v| v.strip_prefix('=')))
            .ok_or_else(|| Error::Format(format!("witness header is missing `{key}=`")))
    };
    let dim: usize = field("d")?
        .parse()
        .map_err(|_| Error::Format("bad `d` in witness header".into()))?;
    let constant: f64 = field("c")?
        .parse()
        .map_err(|_| Error::Format("bad `c` in witness header".into()))?;
    let body: Vec<(usize, &str)> = lines.collect();
    let matrix = parse_block(&body)?;
    if matrix.dim() != dim * dim {
        return Err(Error::DimensionMismatch {
            expected: dim * dim,
            found: matrix.dim(),
        });
    }
    Ok(WitnessFile {
        dim,
        constant,
        matrix,
    })
}
