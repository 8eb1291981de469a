//! Mahler measure of the family P_k = X + 1/X + Y + 1/Y + Z + 1/Z - k via
//! the one-variable Jensen reduction.
//!
//! Write c = 2cos(a) + 2cos(b) - k for the sum of the first four terms minus
//! k. The Z-integral of log|Z + 1/Z + c| is log of the larger root modulus of
//! Z^2 + cZ + 1 by Jensen's formula; the two roots have product 1, so the
//! integral is g(c) = log((|c| + sqrt(c^2 - 4))/2) when |c| >= 2 and 0
//! otherwise. Hence
//!
//!   m(P_k) = (1/pi^2) * int_0^pi int_0^pi g(2cos a + 2cos b - k) da db.
//!
//! g has square-root kinks along |c| = 2; the integrator splits both axes at
//! those curves and uses tanh-sinh nodes, which also absorb the endpoint
//! derivative blow-up.

use super::{Method, QuadratureResult};
use crate::error::Error;
use crate::numeric::Kahan;
use crate::Result;
use std::f64::consts::PI;

/// Jensen factor: log of the dominant root modulus of Z^2 + cZ + 1.
pub fn jensen_g(c: f64) -> f64 {
    let a = c.abs();
    if a <= 2.0 {
        0.0
    } else {
        ((a + (a * a - 4.0).sqrt()) / 2.0).ln()
    }
}

/// Tanh-sinh node table for one refinement level: h = 0.3 / 2^level.
fn tanh_sinh_nodes(level: u32) -> Vec<(f64, f64)> {
    let h = 0.3 / f64::powi(2.0, level as i32);
    let jmax = (4.0 / h).ceil() as i64;
    let mut nodes = Vec::with_capacity((2 * jmax + 1) as usize);
    for j in -jmax..=jmax {
        let t = j as f64 * h;
        let u = 0.5 * PI * t.sinh();
        let x = u.tanh();
        let w = h * 0.5 * PI * t.cosh() / (u.cosh() * u.cosh());
        if w > 1e-300 && x.abs() < 1.0 {
            nodes.push((x, w));
        }
    }
    nodes
}

/// Integrate f on [lo, hi] by tanh-sinh with successive level refinement;
/// returns (value, error estimate, evaluations).
fn tanh_sinh<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> (f64, f64, u64) {
    if hi <= lo {
        return (0.0, 0.0, 0);
    }
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut prev = f64::NAN;
    let mut best = 0.0;
    let mut err = f64::INFINITY;
    let mut evals = 0u64;
    for level in 0..=4u32 {
        let mut acc = Kahan::new();
        for (x, w) in tanh_sinh_nodes(level) {
            acc.add(w * f(mid + half * x));
            evals += 1;
        }
        best = half * acc.value();
        if !prev.is_nan() {
            err = (best - prev).abs();
            if err <= tol {
                break;
            }
        }
        prev = best;
    }
    (best, err, evals)
}

/// Points in (lo, hi) where cos(angle) equals one of the given values.
fn acos_splits(values: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let mut cuts = vec![lo];
    for &v in values {
        if v.abs() < 1.0 {
            let a = v.acos();
            if a > lo + 1e-13 && a < hi - 1e-13 {
                cuts.push(a);
            }
        }
    }
    cuts.push(hi);
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    cuts
}

/// m(P_k) by the family reduction.
pub fn mahler_family(k: f64, tol: f64) -> Result<QuadratureResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let evals = std::sync::atomic::AtomicU64::new(0);
    let inner = |b: f64| -> f64 {
        // kinks of a -> g(2cos a + 2cos b - k) at cos a = (k - 2cos b +- 2)/2
        let cb = b.cos();
        let splits = acos_splits(
            &[(k - 2.0 * cb - 2.0) / 2.0, (k - 2.0 * cb + 2.0) / 2.0],
            0.0,
            PI,
        );
        let f = |a: f64| jensen_g(2.0 * a.cos() + 2.0 * cb - k);
        let mut total = 0.0;
        for w in splits.windows(2) {
            let (v, _, n) = tanh_sinh(&f, w[0], w[1], tol / 64.0);
            total += v;
            evals.fetch_add(n, std::sync::atomic::Ordering::Relaxed);
        }
        total
    };
    // The inner integral is smooth in b except where a kink curve enters or
    // leaves the a-range, i.e. where (k - 2cos b +- 2)/2 = +-1.
    let outer_splits = acos_splits(
        &[(k - 4.0) / 2.0, k / 2.0, (k + 4.0) / 2.0],
        0.0,
        PI,
    );
    let mut value = Kahan::new();
    let mut err_total = 0.0;
    for w in outer_splits.windows(2) {
        let (v, e, _) = tanh_sinh(&inner, w[0], w[1], tol / 8.0);
        value.add(v);
        err_total += e;
    }
    let value = value.value() / (PI * PI);
    let err_total = err_total / (PI * PI);
    Ok(QuadratureResult {
        value,
        error_estimate: err_total.max(1e-12),
        evaluations: evals.load(std::sync::atomic::Ordering::Relaxed).max(1),
        method: Method::FamilyReduction,
        converged: err_total <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jensen_g_basics() {
        assert_eq!(jensen_g(1.5), 0.0);
        assert_eq!(jensen_g(-2.0), 0.0);
        // g(c) = log c asymptotically; at c = 2.5 root is 2
        assert!((jensen_g(2.5) - 2.0f64.ln()).abs() < 1e-14);
        assert_eq!(jensen_g(3.0), jensen_g(-3.0));
    }

    #[test]
    fn symmetric_in_k() {
        let a = mahler_family(7.0, 1e-9).unwrap();
        let b = mahler_family(-7.0, 1e-9).unwrap();
        assert!((a.value - b.value).abs() < 1e-10);
    }

    #[test]
    fn k_zero_matches_k_sign_flip() {
        let a = mahler_family(0.0, 1e-9).unwrap();
        assert!(a.value.is_finite());
        assert!(a.value >= 0.0);
    }

    #[test]
    fn large_k_asymptotic() {
        // m(P_k) -> log k as k -> infinity
        let r = mahler_family(1000.0, 1e-9).unwrap();
        assert!((r.value - 1000.0f64.ln()).abs() < 1e-2);
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(mahler_family(10.0, 0.0).is_err());
    }
}
