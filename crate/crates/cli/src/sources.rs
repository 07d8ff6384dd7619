//! Resolution of `--povm`, `--rotation` and `--state` arguments.

use std::fs;
use std::path::Path;

use sicwitness::fixtures;
use sicwitness::operator::{parse_operator, parse_real_matrix, DensityMatrix};
use sicwitness::povm::{build_gsic, build_sic, fiducial_search, load_povm, Povm};
use sicwitness::rotation::AxisRotation;
use sicwitness::states::{bell_diagonal, isotropic, maximally_entangled};
use sicwitness::{tolerances, Error};

use crate::CliError;

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(Path::new(path))
        .map_err(|e| CliError::io(format!("cannot read {path}: {e}")))
}

fn keyed(spec: &str, prefix: &str, key: &str) -> Option<Result<f64, CliError>> {
    let rest = spec.strip_prefix(prefix)?;
    let value = rest.strip_prefix(key).and_then(|r| r.strip_prefix('='));
    Some(
        value.and_then(|v| v.parse::<f64>().ok()).ok_or_else(|| {
            CliError::usage(format!("expected `{prefix}{key}=<number>`, got `{spec}`"))
        }),
    )
}

pub fn povm(spec: &str, d: usize, seed: u64) -> Result<Povm, CliError> {
    if spec == "builtin" {
        return match build_sic(d) {
            Err(Error::UnsupportedDimension(_)) => {
                eprintln!(
                    "note: no built-in fiducial for d={d}; searching numerically (seed {seed})"
                );
                Ok(fiducial_search(d, seed, 1e-12)?)
            }
            other => Ok(other?),
        };
    }
    if let Some(a) = keyed(spec, "gsic:", "a") {
        return Ok(build_gsic(d, a?)?);
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let p = load_povm(path, tolerances::POVM_FOR_WITNESS)?;
        check_dim(p.dim(), d)?;
        return Ok(p);
    }
    Err(CliError::usage(format!(
        "unknown POVM `{spec}` (expected builtin, gsic:a=<a> or file:<path>)"
    )))
}

fn check_dim(found: usize, expected: usize) -> Result<(), CliError> {
    if found != expected {
        return Err(Error::DimensionMismatch { expected, found }.into());
    }
    Ok(())
}

/// A rotation argument other than `optimize`.
pub fn rotation(spec: &str, d: usize, repair: bool, tol: f64) -> Result<AxisRotation, CliError> {
    if spec == "identity" {
        return Ok(AxisRotation::identity(d));
    }
    if let Some(seed) = spec.strip_prefix("random:") {
        let seed = seed
            .parse()
            .map_err(|_| CliError::usage(format!("bad seed in `{spec}`")))?;
        return Ok(AxisRotation::random(d, seed));
    }
    let text = if spec == "appendix" {
        check_dim(3, d)?;
        fixtures::APPENDIX_ROTATION.to_string()
    } else if let Some(path) = spec.strip_prefix("file:") {
        read(path)?
    } else {
        return Err(CliError::usage(format!(
            "unknown rotation `{spec}` (expected identity, random:<seed>, file:<path>, appendix or optimize)"
        )));
    };
    let m = parse_real_matrix(&text)?;
    check_dim(m.nrows(), d * d)?;
    if repair {
        let (r, change) = AxisRotation::repaired(d, &m)?;
        eprintln!("repaired rotation: largest entry change {change:.3e}");
        Ok(r)
    } else {
        Ok(AxisRotation::from_matrix(d, m, tol).map_err(|e| {
            CliError::validation(format!(
                "{e}; pass --repair to use the nearest exact rotation"
            ))
        })?)
    }
}

pub fn state(spec: &str, d: usize, repair: bool, tol: f64) -> Result<DensityMatrix, CliError> {
    match spec {
        "maxent" => return Ok(maximally_entangled(d).density()),
        "maxmixed" => return Ok(DensityMatrix::maximally_mixed(d * d)),
        _ => {}
    }
    if let Some(alpha) = keyed(spec, "isotropic:", "alpha") {
        return Ok(isotropic(d, alpha?)?);
    }
    if let Some(p) = keyed(spec, "bell-diagonal:", "p") {
        return Ok(bell_diagonal(d, p?)?);
    }
    let text = if spec == "example3" {
        check_dim(3, d)?;
        fixtures::EXAMPLE3_RHO.to_string()
    } else if let Some(path) = spec.strip_prefix("file:") {
        read(path)?
    } else {
        return Err(CliError::usage(format!(
            "unknown state `{spec}` (expected maxent, maxmixed, isotropic:alpha=<x>, bell-diagonal:p=<x>, example3 or file:<path>)"
        )));
    };
    let op = parse_operator(&text)?;
    check_dim(op.dim(), d * d)?;
    if repair {
        let (rho, r) = DensityMatrix::repaired(&op)?;
        eprintln!(
            "repaired state: input trace {:.6}, clipped weight {:.3e}, distance {:.3e}",
            r.input_trace, r.clipped_weight, r.distance
        );
        Ok(rho)
    } else {
        DensityMatrix::new(op, tol).map_err(|e| {
            CliError::validation(format!(
                "{e}; pass --repair or a looser --state-tol (e.g. {})",
                tolerances::DENSITY_LENIENT
            ))
        })
    }
}

/// Inclusive `start:end:step` grid, rounded to 12 decimals so printed
/// parameters stay clean.
pub fn grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<f64> = spec
        .split(':')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::usage(format!("bad grid `{spec}` (expected start:end:step)")))?;
    let [start, end, step] = parts[..] else {
        return Err(CliError::usage(format!(
            "bad grid `{spec}` (expected start:end:step)"
        )));
    };
    if step.is_nan() || step <= 0.0 || end < start {
        return Err(CliError::usage(format!(
            "bad grid `{spec}`: need step > 0 and end ≥ start"
        )));
    }
    let n = ((end - start) / step + 1e-9).floor() as usize;
    Ok((0..=n)
        .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}
