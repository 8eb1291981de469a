//! q-series machinery: Dedekind eta products, the weight-3 level-8 CM
//! newform f = eta(z)^2 eta(2z) eta(4z) eta(8z)^2, the CM trace dichotomy
//! for its prime coefficients, the Hauptmodul t with k = t + 1/t, and
//! partial sums of L(f, 3).

use crate::error::Error;
use crate::Result;
use num::rational::Ratio;
use num_complex::Complex64;

/// Truncated q-expansion: coefficient `i` belongs to
/// q^{leading_exponent + i}. The leading exponent may be fractional (eta has
/// q^{N/24}); products add exponents and convolve coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct QExpansion {
    pub leading_exponent: Ratio<i64>,
    pub coeffs: Vec<i64>,
}

impl QExpansion {
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Product, truncated to the shorter precision. Convolves against the
    /// nonzero support of `other`, so multiplying by a sparse eta factor is
    /// O(precision * sqrt(precision)).
    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.precision().min(other.precision());
        let other_nz: Vec<(usize, i64)> = other
            .coeffs
            .iter()
            .enumerate()
            .take(prec)
            .filter(|&(_, &b)| b != 0)
            .map(|(j, &b)| (j, b))
            .collect();
        let mut coeffs = vec![0i64; prec];
        for (i, &a) in self.coeffs.iter().enumerate().take(prec) {
            if a == 0 {
                continue;
            }
            for &(j, b) in &other_nz {
                if i + j >= prec {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        QExpansion {
            leading_exponent: self.leading_exponent + other.leading_exponent,
            coeffs,
        }
    }
}

/// q-expansion of eta(N tau) to the given number of coefficients: leading
/// exponent N/24, and the pentagonal-number series
/// prod (1 - q^{Nn}) = sum_k (-1)^k q^{N k(3k-1)/2}.
pub fn eta_q(n: u32, precision: usize) -> QExpansion {
    let mut coeffs = vec![0i64; precision];
    let n = n as i64;
    let mut k = 0i64;
    loop {
        let mut placed = false;
        for kk in [k, -k] {
            let e = n * kk * (3 * kk - 1) / 2;
            if e >= 0 && (e as usize) < precision {
                let sign = if kk.rem_euclid(2) == 0 { 1 } else { -1 };
                coeffs[e as usize] += sign;
                placed = true;
            }
            if kk == 0 {
                break;
            }
        }
        if !placed && k > 0 {
            break;
        }
        k += 1;
    }
    QExpansion {
        leading_exponent: Ratio::new(n, 24),
        coeffs,
    }
}

/// Coefficients a_1..a_{n_max} of f = eta(z)^2 eta(2z) eta(4z) eta(8z)^2.
pub fn newform_coeffs(n_max: usize) -> Vec<i64> {
    // leading exponent (2*1 + 2 + 4 + 2*8)/24 = 1, so a_n sits at offset n-1.
    let prec = n_max;
    let f = eta_q(1, prec)
        .mul(&eta_q(1, prec))
        .mul(&eta_q(2, prec))
        .mul(&eta_q(4, prec))
        .mul(&eta_q(8, prec))
        .mul(&eta_q(8, prec));
    assert_eq!(f.leading_exponent, Ratio::new(1, 1));
    f.coeffs
}

/// Frobenius trace data for an odd prime, from the CM dichotomy: for
/// p = a^2 + 2b^2 (p = 1, 3 mod 8) the trace is 2(a^2 - 2b^2) and the
/// middle zeta factor has lambda1*lambda2 = +p^2; otherwise the trace is 0
/// and lambda1*lambda2 = -p^2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceRecord {
    pub p: u32,
    pub a_p: i64,
    /// Sign of lambda1*lambda2 / p^2.
    pub middle_sign: i32,
    /// (a, b) with p = a^2 + 2b^2, when it exists.
    pub representation: Option<(u32, u32)>,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn cm_trace(p: u32) -> Result<TraceRecord> {
    if p == 2 || !is_prime(p) {
        return Err(Error::BadPrime { p });
    }
    match p % 8 {
        1 | 3 => {
            let mut b = 0u32;
            while 2 * b * b <= p {
                let rest = p - 2 * b * b;
                let a = (rest as f64).sqrt().round() as u32;
                if a * a == rest {
                    let a2 = a as i64 * a as i64;
                    let b2 = b as i64 * b as i64;
                    return Ok(TraceRecord {
                        p,
                        a_p: 2 * (a2 - 2 * b2),
                        middle_sign: 1,
                        representation: Some((a, b)),
                    });
                }
                b += 1;
            }
            Err(Error::NoRepresentation { p })
        }
        _ => Ok(TraceRecord {
            p,
            a_p: 0,
            middle_sign: -1,
            representation: None,
        }),
    }
}

/// Numeric eta(tau) by the truncated Euler product.
pub fn eta_numeric(tau: Complex64, terms: u32) -> Result<Complex64> {
    if tau.im <= 0.0 {
        return Err(Error::TauNotInUpperHalfPlane { im: tau.im });
    }
    let q = (Complex64::new(0.0, std::f64::consts::TAU) * tau).exp();
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 0..terms {
        qn *= q;
        prod *= Complex64::new(1.0, 0.0) - qn;
    }
    // q^{1/24} = exp(2 pi i tau / 24)
    let lead = (Complex64::new(0.0, std::f64::consts::TAU) * tau / 24.0).exp();
    Ok(lead * prod)
}

/// The Hauptmodul t(tau) = (eta(tau) eta(6tau) / (eta(2tau) eta(3tau)))^6.
pub fn eval_t(tau: Complex64, terms: u32) -> Result<Complex64> {
    let e1 = eta_numeric(tau, terms)?;
    let e6 = eta_numeric(tau * 6.0, terms)?;
    let e2 = eta_numeric(tau * 2.0, terms)?;
    let e3 = eta_numeric(tau * 3.0, terms)?;
    Ok((e1 * e6 / (e2 * e3)).powi(6))
}

/// k(tau) = t + 1/t on the imaginary axis.
fn k_of_y(y: f64) -> f64 {
    let t = eval_t(Complex64::new(0.0, y), 64).expect("upper half plane");
    let k = t + t.inv();
    k.re
}

/// Invert k = t(tau) + 1/t(tau) for k > 6 on the imaginary axis. k(iy) has
/// its minimum 6 at y = 1/sqrt(6) and increases monotonically for larger y;
/// bisection runs on that increasing branch [1/sqrt(6), 3].
pub fn invert_k(k: f64, tol: f64) -> Result<Complex64> {
    if !(k > 6.0) {
        return Err(Error::KOutOfRange { k });
    }
    let mut lo = 1.0 / 6.0f64.sqrt();
    let mut hi = 3.0;
    if k_of_y(hi) < k {
        return Err(Error::KOutOfRange { k });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if k_of_y(mid) < k {
            lo = mid;
        } else {
            hi = mid;
        }
        if (k_of_y(0.5 * (lo + hi)) - k).abs() <= tol {
            break;
        }
    }
    Ok(Complex64::new(0.0, 0.5 * (lo + hi)))
}

/// Partial Dirichlet sum sum_{n <= n_max} a_n / n^3 for L(f, 3). The tail is
/// O(log(n_max)/n_max) since |a_n| = O(n log n) on average for weight 3.
pub fn lf3_partial(n_max: usize) -> f64 {
    let coeffs = newform_coeffs(n_max);
    let mut acc = crate::numeric::Kahan::new();
    for (i, &a) in coeffs.iter().enumerate() {
        if a != 0 {
            let n = (i + 1) as f64;
            acc.add(a as f64 / (n * n * n));
        }
    }
    acc.value()
}
