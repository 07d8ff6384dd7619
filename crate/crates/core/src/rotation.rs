//! Orthogonal maps of `R^{d²}` that fix the axis `n = (1, …, 1)/d` up to sign.
//!
//! Every such map is `O = V · diag(s, R) · Vᵀ` where `V` is a fixed
//! orthonormal basis whose first column is `n`, `s = ±1`, and `R` is an
//! arbitrary orthogonal matrix on the `(d² − 1)`-dimensional complement.

use std::fmt;
use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::exec::rng_for;
use crate::operator::format::format_real;
use crate::operator::parse_real_matrix;
use crate::tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct AxisRotation {
    dim: usize,
    matrix: DMatrix<f64>,
    sign: f64,
}

/// Worst deviations from the axis-fixing orthogonal invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationReport {
    /// `max |OᵀO − I|`.
    pub orthogonality: f64,
    /// `max |O n − s n|`.
    pub axis: f64,
    pub row_sum: f64,
    pub worst_row: usize,
    pub col_sum: f64,
    pub worst_col: usize,
}

impl RotationReport {
    pub fn max_violation(&self) -> f64 {
        self.orthogonality
            .max(self.axis)
            .max(self.row_sum)
            .max(self.col_sum)
    }
}

impl fmt::Display for RotationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "orthogonality {:.3e}, axis {:.3e}, row sum {:.3e} (row {}), column sum {:.3e} (column {})",
            self.orthogonality,
            self.axis,
            self.row_sum,
            self.worst_row + 1,
            self.col_sum,
            self.worst_col + 1
        )
    }
}

/// Orthonormal basis of `R^{d²}` with `n` as its first column, completed by
/// Gram–Schmidt over the standard basis (the dependent vector is skipped).
pub fn axis_basis(dim: usize) -> DMatrix<f64> {
    let size = dim * dim;
    let mut cols: Vec<Vec<f64>> = vec![vec![1.0 / dim as f64; size]];
    for e in 0..size {
        if cols.len() == size {
            break;
        }
        let mut v = vec![0.0; size];
        v[e] = 1.0;
        // Two passes keep the basis orthogonal to machine precision.
        for _ in 0..2 {
            for c in &cols {
                let dot: f64 = c.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(c).for_each(|(x, y)| *x -= dot * y);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    DMatrix::from_fn(size, size, |i, j| cols[j][i])
}

fn axis(dim: usize) -> nalgebra::DVector<f64> {
    nalgebra::DVector::from_element(dim * dim, 1.0 / dim as f64)
}

/// Haar-random orthogonal matrix: QR of a Gaussian matrix with the signs
/// of `diag(R)` folded into `Q`.
pub fn haar_orthogonal<R: Rng + ?Sized>(size: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::from_fn(size, size, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..size {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Orthogonal factor of the polar decomposition.
pub fn polar_orthogonal(m: &DMatrix<f64>) -> DMatrix<f64> {
    let svd = m.clone().svd(true, true);
    svd.u.expect("u requested") * svd.v_t.expect("v_t requested")
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

fn vec_max_abs(v: &nalgebra::DVector<f64>) -> f64 {
    v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

fn check_sign(s: f64) -> Result<()> {
    if s == 1.0 || s == -1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "axis sign must be ±1, got {s}"
        )))
    }
}

impl AxisRotation {
    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 2, "rotation dimension must be at least 2");
        Self {
            dim,
            matrix: DMatrix::identity(dim * dim, dim * dim),
            sign: 1.0,
        }
    }

    /// Embeds an orthogonal `(d²−1)×(d²−1)` block on the complement of `n`.
    pub fn from_complement(dim: usize, r: &DMatrix<f64>, sign: f64) -> Result<Self> {
        check_sign(sign)?;
        let size = dim * dim;
        if r.nrows() != size - 1 || r.ncols() != size - 1 {
            return Err(Error::DimensionMismatch {
                expected: size - 1,
                found: r.nrows(),
            });
        }
        let dev = max_abs(&(r.transpose() * r - DMatrix::identity(size - 1, size - 1)));
        if dev > tolerances::ROTATION {
            return Err(Error::Validation(format!(
                "complement block is not orthogonal (deviation {dev:.3e})"
            )));
        }
        let v = axis_basis(dim);
        let mut block = DMatrix::zeros(size, size);
        block[(0, 0)] = sign;
        block.view_mut((1, 1), (size - 1, size - 1)).copy_from(r);
        Ok(Self {
            dim,
            matrix: &v * block * v.transpose(),
            sign,
        })
    }

    /// The complement block `V⊥ᵀ O V⊥`.
    pub fn complement(&self) -> DMatrix<f64> {
        let size = self.dim * self.dim;
        let v = axis_basis(self.dim);
        let full = v.transpose() * &self.matrix * v;
        full.view((1, 1), (size - 1, size - 1)).into_owned()
    }

    pub fn random(dim: usize, seed: u64) -> Self {
        let mut rng = rng_for(seed, 0);
        let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
        Self::random_inner(dim, sign, &mut rng)
    }

    pub fn random_with_sign(dim: usize, seed: u64, sign: f64) -> Result<Self> {
        check_sign(sign)?;
        let mut rng = rng_for(seed, 0);
        let _ = rng.random::<bool>();
        Ok(Self::random_inner(dim, sign, &mut rng))
    }

    fn random_inner<R: Rng + ?Sized>(dim: usize, sign: f64, rng: &mut R) -> Self {
        assert!(dim >= 2, "rotation dimension must be at least 2");
        let r = haar_orthogonal(dim * dim - 1, rng);
        Self::from_complement(dim, &r, sign).expect("Haar sample is orthogonal")
    }

    /// Accepts `matrix` when it satisfies the invariants within `tol`.
    pub fn from_matrix(dim: usize, matrix: DMatrix<f64>, tol: f64) -> Result<Self> {
        let size = dim * dim;
        if dim < 2 || matrix.nrows() != size || matrix.ncols() != size {
            return Err(Error::DimensionMismatch {
                expected: size,
                found: matrix.nrows(),
            });
        }
        let n = axis(dim);
        let sign = if n.dot(&(&matrix * &n)) >= 0.0 {
            1.0
        } else {
            -1.0
        };
        let candidate = Self { dim, matrix, sign };
        let report = candidate.validate();
        if report.max_violation() > tol {
            return Err(Error::Validation(format!(
                "not an axis-fixing orthogonal matrix within {tol:.1e}: {report}"
            )));
        }
        Ok(candidate)
    }

    /// Nearest exact axis-fixing rotation: keeps the sign of `nᵀMn` and
    /// replaces the complement block by its polar factor. Returns the
    /// repaired rotation and the largest entry change.
    pub fn repaired(dim: usize, matrix: &DMatrix<f64>) -> Result<(Self, f64)> {
        let size = dim * dim;
        if dim < 2 || matrix.nrows() != size || matrix.ncols() != size {
            return Err(Error::DimensionMismatch {
                expected: size,
                found: matrix.nrows(),
            });
        }
        let v = axis_basis(dim);
        let full = v.transpose() * matrix * &v;
        let sign = if full[(0, 0)] >= 0.0 { 1.0 } else { -1.0 };
        let block = polar_orthogonal(&full.view((1, 1), (size - 1, size - 1)).into_owned());
        let fixed = Self::from_complement(dim, &block, sign)?;
        let change = max_abs(&(&fixed.matrix - matrix));
        Ok((fixed, change))
    }

    pub fn validate(&self) -> RotationReport {
        let size = self.dim * self.dim;
        let m = &self.matrix;
        let n = axis(self.dim);
        let orthogonality = max_abs(&(m.transpose() * m - DMatrix::identity(size, size)));
        let axis_dev = vec_max_abs(&(m * &n - &n * self.sign));
        let (mut row_sum, mut worst_row) = (0.0f64, 0);
        let (mut col_sum, mut worst_col) = (0.0f64, 0);
        for i in 0..size {
            let r = (m.row(i).sum() - self.sign).abs();
            if r > row_sum {
                row_sum = r;
                worst_row = i;
            }
            let c = (m.column(i).sum() - self.sign).abs();
            if c > col_sum {
                col_sum = c;
                worst_col = i;
            }
        }
        RotationReport {
            orthogonality,
            axis: axis_dev,
            row_sum,
            worst_row,
            col_sum,
            worst_col,
        }
    }

    /// Product `self · other`, sign `s₁·s₂`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(Self {
            dim: self.dim,
            matrix: &self.matrix * &other.matrix,
            sign: self.sign * other.sign,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn sign(&self) -> f64 {
        self.sign
    }

    pub fn entry(&self, k: usize, l: usize) -> f64 {
        self.matrix[(k, l)]
    }
}

/// Text form: one row per line, 17 significant digits.
pub fn serialize_rotation(r: &AxisRotation) -> String {
    let mut out = String::new();
    for row in r.matrix.row_iter() {
        let cells: Vec<String> = row.iter().map(|&x| format_real(x)).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a `d²×d²` real matrix. With `repair` the matrix only needs to be
/// within `tol` before it is projected onto an exact rotation.
pub fn parse_rotation(text: &str, dim: usize, tol: f64, repair: bool) -> Result<AxisRotation> {
    let m = parse_real_matrix(text)?;
    let checked = AxisRotation::from_matrix(dim, m.clone(), tol)?;
    if repair {
        Ok(AxisRotation::repaired(dim, &m)?.0)
    } else {
        Ok(checked)
    }
}

pub fn load_rotation(
    path: impl AsRef<Path>,
    dim: usize,
    tol: f64,
    repair: bool,
) -> Result<AxisRotation> {
    parse_rotation(&fs::read_to_string(path)?, dim, tol, repair)
}

pub fn save_rotation(r: &AxisRotation, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, serialize_rotation(r))?;
    Ok(())
}
