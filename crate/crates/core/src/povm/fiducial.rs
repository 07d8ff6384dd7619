//! Numerical search for Weyl–Heisenberg SIC fiducials.
//!
//! Minimizes `Σ_{(j,k)≠(0,0)} (|⟨f|D_{jk} f⟩|² − 1/(d+1))²` over unit
//! vectors with Levenberg–Marquardt from random starting points.

use nalgebra::{DMatrix, DVector};

use super::weyl::displace;
use super::{validate_povm, weyl_heisenberg_orbit, Povm, PovmKind};
use crate::error::{Error, Result};
use crate::exec::rng_for;
use crate::operator::{random_unit_vector, C64};

#[derive(Debug, Clone, Copy)]
pub struct FiducialSearch {
    pub restarts: usize,
    pub max_iters: usize,
}

impl Default for FiducialSearch {
    fn default() -> Self {
        Self {
            restarts: 200,
            max_iters: 400,
        }
    }
}

fn overlap_residuals(f: &[C64]) -> Vec<f64> {
    let d = f.len();
    let norm: f64 = f.iter().map(|z| z.norm_sqr()).sum();
    let target = 1.0 / (d as f64 + 1.0);
    let mut out = Vec::with_capacity(d * d - 1);
    for shift in 0..d {
        for clock in 0..d {
            if shift == 0 && clock == 0 {
                continue;
            }
            let g = displace(f, shift, clock);
            let ip: C64 = f.iter().zip(&g).map(|(a, b)| a.conj() * b).sum();
            out.push(ip.norm_sqr() / (norm * norm) - target);
        }
    }
    out
}

/// Sum of squared overlap deviations; zero exactly at a SIC fiducial.
pub fn fiducial_objective(f: &[C64]) -> f64 {
    overlap_residuals(f).iter().map(|r| r * r).sum()
}

fn to_vector(x: &DVector<f64>) -> Vec<C64> {
    let d = x.len() / 2;
    (0..d).map(|i| C64::new(x[2 * i], x[2 * i + 1])).collect()
}

fn jacobian(x: &DVector<f64>, m: usize) -> DMatrix<f64> {
    let h = 1e-7;
    let mut jac = DMatrix::zeros(m, x.len());
    for p in 0..x.len() {
        let mut plus = x.clone();
        let mut minus = x.clone();
        plus[p] += h;
        minus[p] -= h;
        let rp = overlap_residuals(&to_vector(&plus));
        let rm = overlap_residuals(&to_vector(&minus));
        for i in 0..m {
            jac[(i, p)] = (rp[i] - rm[i]) / (2.0 * h);
        }
    }
    jac
}

/// Returns (unit fiducial, max |residual|).
fn levenberg_marquardt(start: Vec<C64>, max_iters: usize, tol: f64) -> (Vec<C64>, f64) {
    let n = 2 * start.len();
    let mut x = DVector::from_iterator(n, start.iter().flat_map(|z| [z.re, z.im]));
    let mut r = DVector::from_vec(overlap_residuals(&start));
    let m = r.len();
    let mut cost = r.norm_squared();
    let mut lambda = 1e-3;
    for _ in 0..max_iters {
        if r.amax() <= tol * 1e-3 {
            break;
        }
        let jac = jacobian(&x, m);
        let jtj = jac.transpose() * &jac;
        let grad = jac.transpose() * &r;
        let mut improved = false;
        for _ in 0..20 {
            let mut lhs = jtj.clone();
            for i in 0..n {
                lhs[(i, i)] += lambda * (1.0 + jtj[(i, i)]);
            }
            let Some(step) = lhs.lu().solve(&(-&grad)) else {
                lambda *= 10.0;
                continue;
            };
            let trial = &x + step;
            let tr = DVector::from_vec(overlap_residuals(&to_vector(&trial)));
            let tc = tr.norm_squared();
            if tc < cost {
                let scale = trial.norm();
                x = trial / scale;
                r = tr;
                cost = tc;
                lambda = (lambda * 0.3).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    let f = to_vector(&x);
    let norm = f.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let f: Vec<C64> = f.into_iter().map(|z| z / norm).collect();
    let residual = overlap_residuals(&f)
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    (f, residual)
}

/// Random-restart search with the default budget.
pub fn fiducial_search(dim: usize, seed: u64, tol: f64) -> Result<Povm> {
    FiducialSearch::default().run(dim, seed, tol)
}

impl FiducialSearch {
    /// Returns the Weyl–Heisenberg orbit of the first fiducial whose largest
    /// overlap deviation is at most `tol` and whose orbit validates at `tol`.
    pub fn run(&self, dim: usize, seed: u64, tol: f64) -> Result<Povm> {
        if dim < 2 {
            return Err(Error::InvalidParameter(
                "fiducial search needs d ≥ 2".into(),
            ));
        }
        let mut best = f64::INFINITY;
        for restart in 0..self.restarts {
            let mut rng = rng_for(seed, restart as u64);
            let start = random_unit_vector(dim, &mut rng);
            let (f, residual) = levenberg_marquardt(start, self.max_iters, tol);
            best = best.min(residual);
            if residual <= tol {
                let povm = Povm::new(dim, weyl_heisenberg_orbit(&f), PovmKind::Sic)?;
                if validate_povm(&povm, tol).kind_confirmed.is_some() {
                    return Ok(povm);
                }
            }
        }
        Err(Error::Convergence {
            best_residual: best,
        })
    }
}
