//! Dense complex operators and the states built on them.

mod eig;
pub(crate) mod format;
mod state;

pub use eig::{eig_hermitian, HermitianEigen};
pub use format::{parse_operator, parse_real_matrix, serialize_operator};
pub use state::{
    random_density_matrix, random_pure_state, random_unit_vector, DensityMatrix, PureState, Repair,
};

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerances;

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// A square complex matrix stored row-major.
///
/// The Hermitian flag is computed whenever an operator is constructed,
/// using [`tolerances::HERMITIAN`].
#[derive(Clone, PartialEq)]
pub struct ComplexOperator {
    dim: usize,
    data: Vec<C64>,
    hermitian: bool,
}

/// Which tensor factor a partial operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

impl ComplexOperator {
    /// Builds an operator from `dim²` row-major entries.
    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "dimension must be at least 1".into(),
            ));
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self::assemble(dim, data))
    }

    fn assemble(dim: usize, data: Vec<C64>) -> Self {
        let mut op = Self {
            dim,
            data,
            hermitian: false,
        };
        op.hermitian = op.hermitian_deviation() <= tolerances::HERMITIAN;
        op
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        let data = (0..dim * dim).map(|idx| f(idx / dim, idx % dim)).collect();
        Self::assemble(dim, data)
    }

    pub fn from_real_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        Self::from_fn(dim, |i, j| C64::new(f(i, j), 0.0))
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| ZERO)
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let dim = entries.len();
        Self::from_real_fn(dim, |i, j| if i == j { entries[i] } else { 0.0 })
    }

    /// `|v⟩⟨v|`.
    pub fn projector(v: &[C64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.data[i * n + j] - self.data[j * n + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// `(A + A†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j| {
            (self.data[i * n + j] + self.data[j * n + i].conj()) * 0.5
        })
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn dagger(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j| self.data[j * n + i].conj())
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j| self.data[j * n + i])
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::assemble(self.dim, self.data.iter().map(|z| z.conj()).collect())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::assemble(self.dim, self.data.iter().map(|z| z * s).collect())
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self::assemble(self.dim, self.data.iter().map(|z| z * s).collect())
    }

    /// `Tr(A·B)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> C64 {
        assert_eq!(self.dim, other.dim, "trace_product: dimension mismatch");
        let n = self.dim;
        let mut acc = ZERO;
        for i in 0..n {
            for k in 0..n {
                acc += self.data[i * n + k] * other.data[k * n + i];
            }
        }
        acc
    }

    /// `⟨v|A|v⟩`.
    pub fn expectation(&self, v: &[C64]) -> C64 {
        assert_eq!(v.len(), self.dim, "expectation: dimension mismatch");
        let av = self.apply(v);
        v.iter().zip(&av).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).map(|j| self.data[i * n + j] * v[j]).sum())
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff: dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Accumulates `s·other` into `self`.
    pub fn add_scaled(&mut self, s: C64, other: &Self) {
        assert_eq!(self.dim, other.dim, "add_scaled: dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
        self.hermitian = self.hermitian_deviation() <= tolerances::HERMITIAN;
    }

    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<C64> {
        nalgebra::DMatrix::from_row_slice(self.dim, self.dim, &self.data)
    }

    pub fn from_nalgebra(m: &nalgebra::DMatrix<C64>) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "operator must be square");
        Self::from_fn(m.nrows(), |i, j| m[(i, j)])
    }

    /// The real parts as a nalgebra matrix.
    pub fn real_part(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.dim, self.dim, |i, j| self.data[i * self.dim + j].re)
    }

    pub fn max_imaginary(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for ComplexOperator {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexOperator {
    /// Callers writing entries directly must not rely on the Hermitian flag
    /// until the operator is rebuilt.
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        self.hermitian = false;
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexOperator {
    type Output = ComplexOperator;

    fn add(self, rhs: &ComplexOperator) -> ComplexOperator {
        assert_eq!(self.dim, rhs.dim, "add: dimension mismatch");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        ComplexOperator::assemble(self.dim, data)
    }
}

impl Sub for &ComplexOperator {
    type Output = ComplexOperator;

    fn sub(self, rhs: &ComplexOperator) -> ComplexOperator {
        assert_eq!(self.dim, rhs.dim, "sub: dimension mismatch");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        ComplexOperator::assemble(self.dim, data)
    }
}

impl Mul for &ComplexOperator {
    type Output = ComplexOperator;

    fn mul(self, rhs: &ComplexOperator) -> ComplexOperator {
        assert_eq!(self.dim, rhs.dim, "mul: dimension mismatch");
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        ComplexOperator::assemble(n, data)
    }
}

impl fmt::Debug for ComplexOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ComplexOperator(dim={}, hermitian={})",
            self.dim, self.hermitian
        )?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Kronecker product; the first factor indexes the outer blocks.
pub fn tensor(a: &ComplexOperator, b: &ComplexOperator) -> ComplexOperator {
    let (na, nb) = (a.dim, b.dim);
    let n = na * nb;
    let mut data = vec![ZERO; n * n];
    for i in 0..na {
        for j in 0..na {
            let aij = a.data[i * na + j];
            if aij == ZERO {
                continue;
            }
            for k in 0..nb {
                for l in 0..nb {
                    data[(i * nb + k) * n + (j * nb + l)] = aij * b.data[k * nb + l];
                }
            }
        }
    }
    ComplexOperator::assemble(n, data)
}

/// `Tr((A ⊗ B)·ρ)` without forming the Kronecker product.
pub fn product_expectation(a: &ComplexOperator, b: &ComplexOperator, rho: &ComplexOperator) -> C64 {
    let (na, nb) = (a.dim, b.dim);
    let n = na * nb;
    assert_eq!(rho.dim, n, "product_expectation: dimension mismatch");
    let mut acc = ZERO;
    for i in 0..na {
        for j in 0..na {
            let aij = a.data[i * na + j];
            if aij == ZERO {
                continue;
            }
            let mut inner = ZERO;
            for k in 0..nb {
                for l in 0..nb {
                    inner += b.data[k * nb + l] * rho.data[(j * nb + l) * n + (i * nb + k)];
                }
            }
            acc += aij * inner;
        }
    }
    acc
}

/// Partial transpose of a bipartite operator on `C^dim_a ⊗ C^dim_b`.
pub fn partial_transpose(
    w: &ComplexOperator,
    dim_a: usize,
    dim_b: usize,
    subsystem: Subsystem,
) -> Result<ComplexOperator> {
    if w.dim != dim_a * dim_b {
        return Err(Error::DimensionMismatch {
            expected: dim_a * dim_b,
            found: w.dim,
        });
    }
    let n = w.dim;
    let mut data = vec![ZERO; n * n];
    for i in 0..dim_a {
        for j in 0..dim_a {
            for k in 0..dim_b {
                for l in 0..dim_b {
                    let src = (i * dim_b + k) * n + (j * dim_b + l);
                    let dst = match subsystem {
                        Subsystem::B => (i * dim_b + l) * n + (j * dim_b + k),
                        Subsystem::A => (j * dim_b + k) * n + (i * dim_b + l),
                    };
                    data[dst] = w.data[src];
                }
            }
        }
    }
    Ok(ComplexOperator::assemble(n, data))
}
