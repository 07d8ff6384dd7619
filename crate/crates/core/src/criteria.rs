//! Baseline separability tests reported side by side with the witness.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::operator::{
    eig_hermitian, partial_transpose, product_expectation, DensityMatrix, Subsystem,
};
use crate::povm::{pure_state_coincidence, Povm};
use crate::rotation::AxisRotation;
use crate::tolerances;
use crate::witness::{build_witness, evaluate, optimize_rotation, Verdict};

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub verdict: Verdict,
}

impl CriterionReport {
    pub fn csv_header() -> &'static str {
        "name,value,threshold,verdict"
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{:.12},{:.12},{}",
            self.name, self.value, self.threshold, self.verdict
        )
    }
}

/// `name value threshold verdict`.
impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:.10} {:.10} {}",
            self.name, self.value, self.threshold, self.verdict
        )
    }
}

/// How the joint probability `P(j, j)` pairs the two local measurements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GConvention {
    /// `Tr((P_j ⊗ P_j) ρ)`.
    Plain,
    /// `Tr((conj(P_j) ⊗ P_j) ρ)`. Pinned as the default because it
    /// reproduces the reference value for the 9×9 example state
    /// (`G − 1/6 = −0.01169` against `−0.011341`), while the plain pairing
    /// gives `−0.0907`.
    #[default]
    Conjugated,
}

impl fmt::Display for GConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GConvention::Plain => "plain",
            GConvention::Conjugated => "conjugated",
        })
    }
}

impl FromStr for GConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(GConvention::Plain),
            "conjugated" => Ok(GConvention::Conjugated),
            other => Err(Error::InvalidParameter(format!(
                "unknown G convention `{other}` (expected plain or conjugated)"
            ))),
        }
    }
}

fn check_bipartite(povm: &Povm, rho: &DensityMatrix) -> Result<()> {
    let d = povm.dim();
    if rho.dim() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: rho.dim(),
        });
    }
    Ok(())
}

/// `G = Σ_j P(j, j)`; entangled when `G` exceeds the pure-state index of
/// coincidence (`2/(d(d+1))` for a SIC).
pub fn g_criterion(
    povm: &Povm,
    rho: &DensityMatrix,
    convention: GConvention,
) -> Result<CriterionReport> {
    check_bipartite(povm, rho)?;
    let value: f64 = povm
        .elements()
        .iter()
        .map(|p| {
            let first = match convention {
                GConvention::Plain => p.clone(),
                GConvention::Conjugated => p.conj(),
            };
            product_expectation(&first, p, rho.op()).re
        })
        .sum();
    let threshold = pure_state_coincidence(povm.kind(), povm.dim());
    Ok(CriterionReport {
        name: "g-criterion".into(),
        value,
        threshold,
        verdict: if value > threshold + tolerances::G_MARGIN {
            Verdict::Entangled
        } else {
            Verdict::Inconclusive
        },
    })
}

/// Smallest eigenvalue of `ρ^{T_B}`.
pub fn ppt_check(rho: &DensityMatrix, dim_a: usize, dim_b: usize) -> Result<CriterionReport> {
    let pt = partial_transpose(rho.op(), dim_a, dim_b, Subsystem::B)?;
    let value = eig_hermitian(&pt.hermitian_part())?.min();
    Ok(CriterionReport {
        name: "ppt".into(),
        value,
        threshold: 0.0,
        verdict: if value < -tolerances::PPT {
            Verdict::Entangled
        } else {
            Verdict::Inconclusive
        },
    })
}

fn witness_report(name: &str, value: f64) -> CriterionReport {
    CriterionReport {
        name: name.into(),
        value,
        threshold: 0.0,
        verdict: Verdict::from_witness_value(value),
    }
}

/// Witness at the given rotation, witness at the optimal rotation, the G
/// criterion under the default convention, and PPT.
pub fn compare(
    povm: &Povm,
    rotation: &AxisRotation,
    rho: &DensityMatrix,
) -> Result<Vec<CriterionReport>> {
    compare_with(povm, rotation, rho, GConvention::default())
}

pub fn compare_with(
    povm: &Povm,
    rotation: &AxisRotation,
    rho: &DensityMatrix,
    convention: GConvention,
) -> Result<Vec<CriterionReport>> {
    check_bipartite(povm, rho)?;
    let w = build_witness(povm, rotation)?;
    let d = povm.dim();
    Ok(vec![
        witness_report("witness", evaluate(&w, rho)?),
        witness_report("witness-optimized", optimize_rotation(povm, rho)?.value),
        g_criterion(povm, rho, convention)?,
        ppt_check(rho, d, d)?,
    ])
}
