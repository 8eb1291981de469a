//! Generic torus quadrature for log|P|: tensor-product trapezoid with grid
//! doubling when P provably does not vanish on T^n (geometric convergence),
//! and a low-discrepancy Kronecker-sequence fallback with a batched
//! statistical error estimate when it may vanish.

use super::laurent::LaurentPolynomial;
use super::{Method, QuadratureResult};
use crate::numeric::parallel_sum_by_index;

/// Guard against log(0) at a measure-zero set: clamp |P|^2 away from zero.
const NORM_SQR_FLOOR: f64 = 1e-280;

fn log_abs(p: &LaurentPolynomial, theta: &[f64]) -> f64 {
    0.5 * p.eval_torus(theta).norm_sqr().max(NORM_SQR_FLOOR).ln()
}

/// Certify that P has no zero on T^n: if the minimum of |P| over a uniform
/// midpoint grid exceeds the Lipschitz bound times the cell half-diameter,
/// no zero fits anywhere. Returns the certified lower bound, or None.
pub fn nonvanishing_certificate(p: &LaurentPolynomial, grid: usize) -> Option<f64> {
    let n = p.nvars().max(1);
    let total = grid.pow(n as u32);
    // min over grid, computed as -max(-|P|) through a parallel fold; the
    // min itself is order-independent.
    let chunk = 8192;
    let nchunks = total.div_ceil(chunk);
    use rayon::prelude::*;
    let min = (0..nchunks)
        .into_par_iter()
        .map(|c| {
            let mut theta = vec![0.0; n];
            let mut m = f64::INFINITY;
            for i in c * chunk..((c + 1) * chunk).min(total) {
                let mut ix = i;
                for t in theta.iter_mut() {
                    *t = (ix % grid) as f64 / grid as f64 + 0.5 / grid as f64;
                    ix /= grid;
                }
                m = m.min(p.eval_torus(&theta).norm());
            }
            m
        })
        .reduce(|| f64::INFINITY, f64::min);
    let lipschitz: f64 = (0..n)
        .map(|j| std::f64::consts::TAU * p.lipschitz_weight(j))
        .sum();
    let slack = lipschitz * 0.5 / grid as f64;
    if min > slack {
        Some(min - slack)
    } else {
        None
    }
}

/// Tensor trapezoid (midpoint phase) with grid doubling; spectrally accurate
/// for nonvanishing P. Returns None if the doubling budget runs out first.
pub fn tensor_trapezoid(p: &LaurentPolynomial, tol: f64) -> QuadratureResult {
    let n = p.nvars().max(1);
    let max_side = match n {
        1 => 1 << 16,
        2 => 1 << 11,
        3 => 1 << 8,
        _ => 1 << 6,
    };
    let mut side = 8usize;
    let mut prev = f64::NAN;
    let mut evals = 0u64;
    let mut value;
    let mut err = f64::INFINITY;
    loop {
        let total = side.pow(n as u32);
        let sum = parallel_sum_by_index(total, 8192, |i| {
            let mut theta = [0.0f64; 8];
            let mut ix = i;
            for t in theta.iter_mut().take(n) {
                *t = (ix % side) as f64 / side as f64 + 0.5 / side as f64;
                ix /= side;
            }
            log_abs(p, &theta[..n])
        });
        evals += total as u64;
        value = sum / total as f64;
        if !prev.is_nan() {
            err = (value - prev).abs();
            if err <= tol {
                return QuadratureResult {
                    value,
                    error_estimate: err,
                    evaluations: evals,
                    method: Method::TensorTrapezoid,
                    converged: true,
                };
            }
        }
        prev = value;
        if side >= max_side {
            return QuadratureResult {
                value,
                error_estimate: err,
                evaluations: evals,
                method: Method::TensorTrapezoid,
                converged: false,
            };
        }
        side *= 2;
    }
}

/// Per-dimension Kronecker shifts from the generalized golden ratio: the
/// unique real root of x^{n+1} = x + 1 gives the R-sequence alphas.
fn kronecker_alphas(n: usize) -> Vec<f64> {
    let mut phi = 1.5f64;
    for _ in 0..64 {
        phi = (1.0 + phi).powf(1.0 / (n as f64 + 1.0));
    }
    (0..n)
        .map(|j| (1.0 / phi.powi(j as i32 + 1)).fract())
        .collect()
}

/// Quasi-Monte-Carlo fallback for P with (possible) zeros on T^n. The error
/// estimate is statistical: 2x the standard error over 64 consecutive
/// batches of the low-discrepancy stream.
pub fn quasi_monte_carlo(p: &LaurentPolynomial, tol: f64) -> QuadratureResult {
    let n = p.nvars().max(1);
    let alphas = kronecker_alphas(n);
    const BATCHES: usize = 64;
    let mut evals = 0u64;
    let mut value = 0.0;
    let mut err = f64::INFINITY;
    for total_pow in [20u32, 22] {
        let total = 1usize << total_pow;
        let per_batch = total / BATCHES;
        use rayon::prelude::*;
        let batch_means: Vec<f64> = (0..BATCHES)
            .into_par_iter()
            .map(|b| {
                let mut acc = crate::numeric::Kahan::new();
                let mut theta = vec![0.0f64; n];
                for i in b * per_batch..(b + 1) * per_batch {
                    let k = (i + 1) as f64;
                    for (t, a) in theta.iter_mut().zip(&alphas) {
                        *t = (0.5 + k * a).fract();
                    }
                    acc.add(log_abs(p, &theta));
                }
                acc.value() / per_batch as f64
            })
            .collect();
        evals += total as u64;
        let mean = batch_means.iter().sum::<f64>() / BATCHES as f64;
        let var = batch_means
            .iter()
            .map(|m| (m - mean) * (m - mean))
            .sum::<f64>()
            / (BATCHES as f64 - 1.0);
        value = mean;
        err = 2.0 * (var / BATCHES as f64).sqrt();
        if err <= tol {
            return QuadratureResult {
                value,
                error_estimate: err,
                evaluations: evals,
                method: Method::QuasiMonteCarlo,
                converged: true,
            };
        }
    }
    QuadratureResult {
        value,
        error_estimate: err,
        evaluations: evals,
        method: Method::QuasiMonteCarlo,
        converged: false,
    }
}
