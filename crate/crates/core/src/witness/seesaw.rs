//! Alternating minimization of `⟨a⊗b|W|a⊗b⟩` over product vectors.

use crate::exec::{rng_for, Execution};
use crate::operator::{eig_hermitian, random_unit_vector, ComplexOperator, C64};
use crate::tolerances;

use super::WitnessOperator;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeeSaw {
    pub restarts: usize,
    pub max_iters: usize,
    /// Stop once one full sweep lowers the value by less than this.
    pub step_tol: f64,
    pub exec: Execution,
}

impl Default for SeeSaw {
    fn default() -> Self {
        Self {
            restarts: tolerances::SEESAW_RESTARTS,
            max_iters: tolerances::SEESAW_MAX_ITERS,
            step_tol: tolerances::SEESAW_STEP,
            exec: Execution::default(),
        }
    }
}

/// Best product vector found.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductMinimum {
    pub value: f64,
    pub a: Vec<C64>,
    pub b: Vec<C64>,
    /// Sweeps used by the winning restart.
    pub iterations: usize,
}

/// `(I ⊗ ⟨b|) W (I ⊗ |b⟩)`.
fn contract_b(w: &ComplexOperator, d: usize, b: &[C64]) -> ComplexOperator {
    ComplexOperator::from_fn(d, |i, j| {
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..d {
            for l in 0..d {
                acc += b[k].conj() * w[(i * d + k, j * d + l)] * b[l];
            }
        }
        acc
    })
    .hermitian_part()
}

/// `(⟨a| ⊗ I) W (|a⟩ ⊗ I)`.
fn contract_a(w: &ComplexOperator, d: usize, a: &[C64]) -> ComplexOperator {
    ComplexOperator::from_fn(d, |k, l| {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                acc += a[i].conj() * w[(i * d + k, j * d + l)] * a[j];
            }
        }
        acc
    })
    .hermitian_part()
}

fn lowest(op: &ComplexOperator) -> (f64, Vec<C64>) {
    let eig = eig_hermitian(op).expect("contracted operator is Hermitian");
    (eig.min(), eig.min_vector().to_vec())
}

impl SeeSaw {
    pub fn with_restarts(restarts: usize) -> Self {
        Self {
            restarts,
            ..Self::default()
        }
    }

    pub fn run(&self, w: &WitnessOperator, seed: u64) -> ProductMinimum {
        let d = w.dim();
        let m = w.matrix();
        let runs = self.exec.map(self.restarts.max(1), |r| {
            let mut rng = rng_for(seed, r as u64);
            let mut b = random_unit_vector(d, &mut rng);
            let (mut value, mut a) = lowest(&contract_b(m, d, &b));
            let mut iterations = 1;
            while iterations < self.max_iters {
                let (_, nb) = lowest(&contract_a(m, d, &a));
                b = nb;
                let (next, na) = lowest(&contract_b(m, d, &b));
                a = na;
                iterations += 1;
                let gain = value - next;
                value = value.min(next);
                if gain <= self.step_tol {
                    break;
                }
            }
            ProductMinimum {
                value,
                a,
                b,
                iterations,
            }
        });
        runs.into_iter()
            .min_by(|x, y| x.value.total_cmp(&y.value))
            .expect("at least one restart")
    }
}

/// Minimum of `⟨a⊗b|W|a⊗b⟩` over `restarts` Haar-random starting `|b⟩`.
pub fn min_product_expectation(w: &WitnessOperator, restarts: usize, seed: u64) -> ProductMinimum {
    SeeSaw::with_restarts(restarts).run(w, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{tensor, PureState};
    use crate::povm::build_sic;
    use crate::rotation::AxisRotation;
    use crate::witness::build_witness;

    fn witness(d: usize, rot: AxisRotation) -> WitnessOperator {
        build_witness(&build_sic(d).unwrap(), &rot).unwrap()
    }

    #[test]
    fn reported_value_matches_vectors() {
        let w = witness(3, AxisRotation::random(3, 6));
        let best = min_product_expectation(&w, 10, 1);
        let a = PureState::new(best.a.clone()).unwrap().projector();
        let b = PureState::new(best.b.clone()).unwrap().projector();
        let direct = w.matrix().trace_product(&tensor(&a, &b)).re;
        assert!((direct - best.value).abs() < 1e-10);
    }

    #[test]
    fn identity_rotation_is_tight() {
        for d in [2, 3] {
            let v = min_product_expectation(&witness(d, AxisRotation::identity(d)), 20, 2).value;
            assert!((-1e-8..=1e-6).contains(&v), "d={d}: {v}");
        }
    }

    #[test]
    fn shifted_witness_goes_negative() {
        let w = witness(3, AxisRotation::identity(3));
        let shifted = w.with_constant(w.constant() - 0.01);
        let v = min_product_expectation(&shifted, 20, 3).value;
        assert!((v + 0.01).abs() < 1e-6, "{v}");
    }

    #[test]
    fn policies_agree() {
        let w = witness(2, AxisRotation::random(2, 9));
        let mut cfg = SeeSaw::with_restarts(8);
        cfg.exec = Execution::Sequential;
        let a = cfg.run(&w, 4);
        cfg.exec = Execution::Parallel;
        assert_eq!(a, cfg.run(&w, 4));
    }
}
