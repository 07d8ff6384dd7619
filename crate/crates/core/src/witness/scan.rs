//! Witness values along one-parameter state families.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::operator::DensityMatrix;
use crate::povm::Povm;
use crate::rotation::AxisRotation;
use crate::states::{bell_diagonal, isotropic};
use crate::tolerances;

use super::{build_witness, evaluate, Verdict, WitnessOperator};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub parameter: f64,
    pub value: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsotropicScan {
    pub rows: Vec<ScanRow>,
    /// Root of `α ↦ Tr(W ρ_iso(α))` on `[0, 1]`, when the sign changes.
    pub threshold: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BellScan {
    pub rows: Vec<ScanRow>,
    /// `|f(1/2) − (f(0) + f(1))/2|`.
    pub affinity_residual: f64,
    /// `f(0)/(f(0) − f(1))` when it falls in `[0, 1]`.
    pub analytic_root: Option<f64>,
    pub bisection_root: Option<f64>,
    /// `(a·d² + 1)/(a·d²·(d+1))` with `a` the POVM element purity.
    pub caption_threshold: f64,
    /// `analytic_root − caption_threshold`.
    pub difference: Option<f64>,
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.12}")).unwrap_or_default()
}

impl IsotropicScan {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,value,verdict,threshold\n");
        let t = fmt_opt(self.threshold);
        for r in &self.rows {
            let _ = writeln!(out, "{},{:.12},{},{t}", r.parameter, r.value, r.verdict);
        }
        out
    }
}

impl BellScan {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "p,value,verdict,analytic_root,bisection_root,caption_threshold,difference\n",
        );
        let tail = format!(
            "{},{},{:.12},{}",
            fmt_opt(self.analytic_root),
            fmt_opt(self.bisection_root),
            self.caption_threshold,
            fmt_opt(self.difference)
        );
        for r in &self.rows {
            let _ = writeln!(out, "{},{:.12},{},{tail}", r.parameter, r.value, r.verdict);
        }
        out
    }
}

fn check_grid(grid: &[f64], name: &str) -> Result<()> {
    match grid.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        Some(bad) => Err(Error::InvalidParameter(format!(
            "{name}={bad} outside [0, 1]"
        ))),
        None => Ok(()),
    }
}

fn rows<F>(w: &WitnessOperator, grid: &[f64], family: F, exec: Execution) -> Result<Vec<ScanRow>>
where
    F: Fn(f64) -> Result<DensityMatrix> + Sync + Send,
{
    exec.map(grid.len(), |i| {
        let value = evaluate(w, &family(grid[i])?)?;
        Ok(ScanRow {
            parameter: grid[i],
            value,
            verdict: Verdict::from_witness_value(value),
        })
    })
    .into_iter()
    .collect()
}

/// Root of `f` on `[0, 1]` by bisection, if `f(0)` and `f(1)` differ in sign.
fn bisect<F: Fn(f64) -> Result<f64>>(f: F) -> Result<Option<f64>> {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let (flo, fhi) = (f(lo)?, f(hi)?);
    if flo == 0.0 {
        return Ok(Some(lo));
    }
    if fhi == 0.0 {
        return Ok(Some(hi));
    }
    if flo.signum() == fhi.signum() {
        return Ok(None);
    }
    while hi - lo > tolerances::BISECTION {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(Some(mid));
        }
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

pub fn scan_isotropic(
    povm: &Povm,
    rotation: &AxisRotation,
    alphas: &[f64],
) -> Result<IsotropicScan> {
    scan_isotropic_with(povm, rotation, alphas, Execution::default())
}

pub fn scan_isotropic_with(
    povm: &Povm,
    rotation: &AxisRotation,
    alphas: &[f64],
    exec: Execution,
) -> Result<IsotropicScan> {
    check_grid(alphas, "alpha")?;
    let d = povm.dim();
    let w = build_witness(povm, rotation)?;
    let rows = rows(&w, alphas, |a| isotropic(d, a), exec)?;
    let threshold = bisect(|a| evaluate(&w, &isotropic(d, a)?))?;
    Ok(IsotropicScan { rows, threshold })
}

pub fn scan_bell_diagonal(povm: &Povm, rotation: &AxisRotation, ps: &[f64]) -> Result<BellScan> {
    scan_bell_diagonal_with(povm, rotation, ps, Execution::default())
}

pub fn scan_bell_diagonal_with(
    povm: &Povm,
    rotation: &AxisRotation,
    ps: &[f64],
    exec: Execution,
) -> Result<BellScan> {
    check_grid(ps, "p")?;
    let d = povm.dim();
    let w = build_witness(povm, rotation)?;
    let f = |p: f64| evaluate(&w, &bell_diagonal(d, p)?);
    let rows = rows(&w, ps, |p| bell_diagonal(d, p), exec)?;

    let (f0, fh, f1) = (f(0.0)?, f(0.5)?, f(1.0)?);
    let affinity_residual = (fh - 0.5 * (f0 + f1)).abs();
    let analytic_root = if f0 != f1 {
        Some(f0 / (f0 - f1)).filter(|r| (0.0..=1.0).contains(r))
    } else {
        None
    };
    let bisection_root = bisect(f)?;
    let ad2 = povm.kind().purity(d) * (d * d) as f64;
    let caption_threshold = (ad2 + 1.0) / (ad2 * (d as f64 + 1.0));
    Ok(BellScan {
        rows,
        affinity_residual,
        analytic_root,
        bisection_root,
        caption_threshold,
        difference: analytic_root.map(|r| r - caption_threshold),
    })
}
