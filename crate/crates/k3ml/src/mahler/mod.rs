//! Logarithmic Mahler measure over the unit torus: general Laurent
//! polynomials by quadrature, and the family P_k by a fast one-variable
//! Jensen reduction (see `family` for the derivation).

pub mod family;
pub mod laurent;
pub mod quadrature;

pub use family::{jensen_g, mahler_family};
pub use laurent::{parse_laurent, LaurentPolynomial};
pub use quadrature::{nonvanishing_certificate, quasi_monte_carlo, tensor_trapezoid};

use crate::error::Error;
use crate::Result;
use num::Signed;
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Method {
    #[serde(rename = "tensor-trapezoid")]
    TensorTrapezoid,
    #[serde(rename = "quasi-monte-carlo")]
    QuasiMonteCarlo,
    #[serde(rename = "family-reduction")]
    FamilyReduction,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
    pub method: Method,
    /// False when the evaluation budget ran out before the requested
    /// tolerance; `value` is still the best estimate.
    pub converged: bool,
}

/// m(P) for a general Laurent polynomial. Monomials are dispatched by
/// Jensen's formula; provably nonvanishing P by spectral tensor quadrature;
/// everything else by quasi-Monte-Carlo with a statistical error bar.
pub fn mahler_measure(p: &LaurentPolynomial, tol: f64) -> Result<QuadratureResult> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    if p.is_monomial() {
        // m(c * x^e) = log|c|: the monomial part integrates to zero.
        let c = &p.terms[0].0;
        let value = laurent::bigint_to_f64(&c.abs()).ln();
        return Ok(QuadratureResult {
            value,
            error_estimate: 0.0,
            evaluations: 1,
            method: Method::TensorTrapezoid,
            converged: true,
        });
    }
    if nonvanishing_certificate(p, 64).is_some() {
        Ok(tensor_trapezoid(p, tol))
    } else {
        Ok(quasi_monte_carlo(p, tol))
    }
}

/// |m(quartic homogeneous form) - m(Laurent family form)| at the same k.
/// The two agree because the quartic is x*y*z*t times the Laurent form after
/// the t-substitution, and monomials have Mahler measure zero.
pub fn verify_homogeneous_equivalence(k: i64, tol: f64) -> Result<f64> {
    let laurent = parse_laurent(&format!("x + 1/x + y + 1/y + z + 1/z - {k}"))?;
    let quartic = parse_laurent(&format!(
        "x^2*y*z + x*y^2*z + x*y*z^2 + t^2*(x*y+x*z+y*z) - {k}*x*y*z*t"
    ))?;
    let m_laurent = mahler_measure(&laurent, tol)?;
    let m_quartic = mahler_measure(&quartic, tol)?;
    Ok((m_laurent.value - m_quartic.value).abs())
}
