//! Lattice sums and Dirichlet L-values: the Eisenstein-Kronecker series of
//! the family formula, its rational specialization at k = 10, the central
//! sum S = L(f, 3), the constant d_3, and the Zagier-style identities for
//! A(s), B(s) and r_n.
//!
//! Truncation convention: `lattice_sum` truncates by the level set of its own
//! quadratic form, Q(k, m) <= radius^2 ("form ball"). Square-box truncation
//! of a sum whose numerator changes sign leaves an O(R^{-2}) boundary residue
//! that never meets the 1e-8 targets; the form ball kills that residue by
//! pairing complete level sets. The Eisenstein series keeps classic square
//! shells, which is what its tail-cancellation argument is stated for.

use crate::error::Error;
use crate::exact::kronecker_symbol;
use crate::numeric::{parallel_sum_by_index, Kahan};
use crate::Result;
use num::BigInt;
use num_complex::Complex64;
use std::f64::consts::PI;

// ---------------------------------------------------------------------------
// Dirichlet characters and L-values

/// A real Dirichlet character stored as one period of values.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletChar {
    pub modulus: u32,
    pub values: Vec<i8>,
}

impl DirichletChar {
    /// The real character n -> (d/n) for a fundamental discriminant d.
    pub fn from_discriminant(d: i64) -> Self {
        let modulus = d.unsigned_abs() as u32;
        let values = (0..modulus)
            .map(|n| kronecker_symbol(d, n as i64).map_or(0, |v| v as i8))
            .collect();
        DirichletChar { modulus, values }
    }

    pub fn chi_m3() -> Self {
        Self::from_discriminant(-3)
    }

    pub fn chi_m8() -> Self {
        Self::from_discriminant(-8)
    }

    pub fn chi_24() -> Self {
        Self::from_discriminant(24)
    }

    /// The trivial character mod 1 (every value 1), so that dirichlet_l
    /// reduces to the Riemann zeta function.
    pub fn trivial() -> Self {
        DirichletChar {
            modulus: 1,
            values: vec![1],
        }
    }

    pub fn eval(&self, n: u64) -> i64 {
        self.values[(n % self.modulus as u64) as usize] as i64
    }
}

/// L(chi, s) = sum chi(n)/n^s by period-block summation: full periods are
/// added until the Abel tail bound M * N^{-s} (M = max partial character sum
/// within a period) drops below tol.
pub fn dirichlet_l(chi: &DirichletChar, s: f64, tol: f64) -> Result<f64> {
    if s <= 1.0 {
        return Err(Error::InvalidArgument(
            "dirichlet_l requires s > 1".into(),
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    if chi.modulus == 1 {
        // zeta(s): the Abel bound below needs bounded character partial sums,
        // which the principal character lacks; use an Euler-Maclaurin tail.
        let n = 100_000u64;
        let mut acc = Kahan::new();
        for i in 1..=n {
            acc.add((i as f64).powf(-s));
        }
        let x = (n + 1) as f64;
        acc.add(x.powf(1.0 - s) / (s - 1.0));
        acc.add(0.5 * x.powf(-s));
        acc.add(s / 12.0 * x.powf(-s - 1.0));
        return Ok(acc.value());
    }
    let period = chi.modulus as u64;
    let mut partial_max = 0i64;
    let mut run = 0i64;
    for n in 0..period {
        run += chi.eval(n + 1);
        partial_max = partial_max.max(run.abs());
    }
    let m = (partial_max.max(1)) as f64;
    let mut acc = Kahan::new();
    let mut n = 0u64;
    loop {
        for _ in 0..period {
            n += 1;
            let c = chi.eval(n);
            if c != 0 {
                acc.add(c as f64 / (n as f64).powf(s));
            }
        }
        if m * (n as f64).powf(-s) <= tol {
            return Ok(acc.value());
        }
        if n > 100_000_000 {
            return Err(Error::InternalDisagreement {
                context: format!("dirichlet_l(s={s}) budget exhausted"),
                diff: m * (n as f64).powf(-s),
                allowed: tol,
            });
        }
    }
}

// ---------------------------------------------------------------------------
// Generic positive-definite lattice sums

/// Sum' over (k, m) != (0, 0) of numerator(k, m) / Q(k, m)^s where
/// Q = A k^2 + B k m + C m^2, truncated on the form ball Q <= radius^2.
#[derive(Clone, Debug)]
pub struct LatticeSumSpec {
    /// (A, B, C) of the positive definite form A k^2 + B k m + C m^2.
    pub form: (i64, i64, i64),
    /// Sparse numerator: (coefficient, k-degree, m-degree) monomials.
    pub numerator: Vec<(i64, u32, u32)>,
    pub s: f64,
    pub radius: u32,
}

impl LatticeSumSpec {
    pub fn new(form: (i64, i64, i64), numerator: Vec<(i64, u32, u32)>, s: f64, radius: u32) -> Self {
        LatticeSumSpec {
            form,
            numerator,
            s,
            radius,
        }
    }

    fn degree(&self) -> u32 {
        self.numerator.iter().map(|&(_, a, b)| a + b).max().unwrap_or(0)
    }

    fn eval_num(&self, k: f64, m: f64) -> f64 {
        self.numerator
            .iter()
            .map(|&(c, a, b)| c as f64 * k.powi(a as i32) * m.powi(b as i32))
            .sum()
    }
}

/// Evaluate the sum; returns (value, tail_bound). The tail bound integrates
/// |numerator| / Q^s over Q > radius^2 using the form's smaller eigenvalue
/// and the level-set area element.
pub fn lattice_sum(spec: &LatticeSumSpec) -> Result<(f64, f64)> {
    let (a, b, c) = spec.form;
    let det4 = 4 * a * c - b * b;
    if a <= 0 || det4 <= 0 {
        return Err(Error::InvalidArgument(format!(
            "form ({a},{b},{c}) is not positive definite"
        )));
    }
    let deg = spec.degree();
    if deg as f64 - 2.0 * spec.s >= -2.0 {
        return Err(Error::DivergentLatticeSum {
            num_degree: deg,
            s: spec.s,
        });
    }
    let (af, bf, cf) = (a as f64, b as f64, c as f64);
    let lambda = spec.radius as f64 * spec.radius as f64;
    // k range on the ellipse Q <= lambda: k^2 <= lambda * 4C / det4.
    let kmax = (lambda * 4.0 * cf / det4 as f64).sqrt().floor() as i64;
    let s = spec.s;
    let rows = (2 * kmax + 1) as usize;
    let value = parallel_sum_by_index(rows, 4, |i| {
        let k = i as i64 - kmax;
        let kf = k as f64;
        // C m^2 + B k m + (A k^2 - lambda) <= 0
        let disc = bf * bf * kf * kf - 4.0 * cf * (af * kf * kf - lambda);
        if disc < 0.0 {
            return 0.0;
        }
        let root = disc.sqrt();
        let mlo = ((-bf * kf - root) / (2.0 * cf)).ceil() as i64;
        let mhi = ((-bf * kf + root) / (2.0 * cf)).floor() as i64;
        let mut acc = Kahan::new();
        for m in mlo..=mhi {
            if k == 0 && m == 0 {
                continue;
            }
            let mf = m as f64;
            let q = af * kf * kf + bf * kf * mf + cf * mf * mf;
            acc.add(spec.eval_num(kf, mf) / q.powf(s));
        }
        acc.value()
    });
    // Tail: sum over monomials of |coef| lambda_min^{-d/2} times
    // (pi / sqrt(det/4)) * Lambda^{d/2 - s + 1} / (s - d/2 - 1).
    let tr = af + cf;
    let dsc = ((af - cf) * (af - cf) + bf * bf).sqrt();
    let eig_min = 0.5 * (tr - dsc);
    let area = PI / (det4 as f64 / 4.0).sqrt();
    let mut tail = 0.0;
    for &(coef, da, db) in &spec.numerator {
        let d = (da + db) as f64;
        tail += coef.unsigned_abs() as f64 / eig_min.powf(d / 2.0) * area
            * lambda.powf(d / 2.0 - s + 1.0)
            / (s - d / 2.0 - 1.0);
    }
    Ok((value, tail))
}

/// The central sum S = L(Y_10, 3) = (1/2) sum' (k^2 - 2m^2)/(k^2 + 2m^2)^3.
pub fn central_sum_s(radius: u32) -> Result<(f64, f64)> {
    let spec = LatticeSumSpec::new((1, 0, 2), vec![(1, 2, 0), (-2, 0, 2)], 3.0, radius);
    let (v, t) = lattice_sum(&spec)?;
    Ok((0.5 * v, 0.5 * t))
}

// ---------------------------------------------------------------------------
// d_3

#[derive(Clone, Copy, Debug)]
pub struct D3 {
    pub value: f64,
    pub character_route: f64,
    pub lattice_route: f64,
}

/// d_3 = (3 sqrt 3 / 4 pi) L(chi_{-3}, 2) = (2 sqrt 3 / pi^3) sum' 1/(m^2+3k^2)^2,
/// computed both ways; the two routes must agree to 1e-8.
pub fn d3() -> Result<D3> {
    let character_route =
        3.0 * 3.0f64.sqrt() / (4.0 * PI) * dirichlet_l(&DirichletChar::chi_m3(), 2.0, 1e-13)?;
    let spec = LatticeSumSpec::new((3, 0, 1), vec![(1, 0, 0)], 2.0, 8192);
    let (sum, _) = lattice_sum(&spec)?;
    let lattice_route = 2.0 * 3.0f64.sqrt() / PI.powi(3) * sum;
    let diff = (character_route - lattice_route).abs();
    if diff > 1e-8 {
        return Err(Error::InternalDisagreement {
            context: "d3 character route vs lattice route".into(),
            diff,
            allowed: 1e-8,
        });
    }
    Ok(D3 {
        value: character_route,
        character_route,
        lattice_route,
    })
}

// ---------------------------------------------------------------------------
// Zagier identities

/// A(s) = sum' ( -1/(9m^2+2k^2)^s + 1/(k^2+18m^2)^s ).
pub fn zagier_a(s: f64, radius: u32) -> Result<f64> {
    let first = lattice_sum(&LatticeSumSpec::new(
        (2, 0, 9),
        vec![(1, 0, 0)],
        s,
        radius,
    ))?;
    let second = lattice_sum(&LatticeSumSpec::new(
        (1, 0, 18),
        vec![(1, 0, 0)],
        s,
        radius,
    ))?;
    Ok(second.0 - first.0)
}

/// Representation counts: #{(k,m) : 2k^2 + 9m^2 = n} - style tables for the
/// coefficient-level form of A(s). Returns, for each n <= n_max, the value
/// -#{9m^2+2k^2 = n} + #{k^2+18m^2 = n}, which must equal 2 (-3/n) r_n.
pub fn zagier_a_coefficients(n_max: usize) -> Vec<i64> {
    let mut coeffs = vec![0i64; n_max + 1];
    let count = |coeffs: &mut Vec<i64>, qa: i64, qc: i64, sign: i64| {
        let mut k = 0i64;
        while (qa * k * k) as usize <= n_max {
            let mut m = 0i64;
            while (qa * k * k + qc * m * m) as usize <= n_max {
                let n = (qa * k * k + qc * m * m) as usize;
                if n > 0 {
                    let mult = (if k == 0 { 1 } else { 2 }) * (if m == 0 { 1 } else { 2 });
                    coeffs[n] += sign * mult;
                }
                m += 1;
            }
            k += 1;
        }
    };
    count(&mut coeffs, 2, 9, -1); // 2k^2 + 9m^2
    count(&mut coeffs, 1, 18, 1); // k^2 + 18m^2
    coeffs
}

/// Both sides of the B-identity
/// sum'(k^2-18m^2)/(k^2+18m^2)^s + sum'(9m^2-2k^2)/(9m^2+2k^2)^s
///   = (1 + 2/3^s + 27/3^{2s}) sum'(m^2-2k^2)/(m^2+2k^2)^s.
pub fn zagier_b_identity(s: f64, radius: u32) -> Result<(f64, f64)> {
    let lhs1 = lattice_sum(&LatticeSumSpec::new(
        (1, 0, 18),
        vec![(1, 2, 0), (-18, 0, 2)],
        s,
        radius,
    ))?;
    let lhs2 = lattice_sum(&LatticeSumSpec::new(
        (2, 0, 9),
        vec![(9, 0, 2), (-2, 2, 0)],
        s,
        radius,
    ))?;
    let rhs_sum = lattice_sum(&LatticeSumSpec::new(
        (2, 0, 1),
        vec![(1, 0, 2), (-2, 2, 0)],
        s,
        radius,
    ))?;
    let factor = 1.0 + 2.0 / 3.0f64.powf(s) + 27.0 / 3.0f64.powf(2.0 * s);
    Ok((lhs1.0 + lhs2.0, factor * rhs_sum.0))
}

/// r_n = (1/2) #{(k, m) : k^2 + 2m^2 = n} for n >= 1.
pub fn r_n(n: u64) -> u64 {
    let mut count = 0u64;
    let mut m = 0i64;
    while 2 * m * m <= n as i64 {
        let rest = n as i64 - 2 * m * m;
        let k = (rest as f64).sqrt().round() as i64;
        for kk in [k - 1, k, k + 1] {
            if kk >= 0 && kk * kk == rest {
                count += (if kk == 0 { 1 } else { 2 }) * (if m == 0 { 1 } else { 2 });
            }
        }
        m += 1;
    }
    count / 2
}

/// Sieve of r_n for all 1 <= n <= n_max.
pub fn r_sieve(n_max: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n_max + 1];
    let mut k = 0i64;
    while (k * k) as usize <= n_max {
        let mut m = 0i64;
        while (k * k + 2 * m * m) as usize <= n_max {
            let n = (k * k + 2 * m * m) as usize;
            if n > 0 {
                counts[n] += (if k == 0 { 1 } else { 2 }) * (if m == 0 { 1 } else { 2 });
            }
            m += 1;
        }
        k += 1;
    }
    counts.iter().map(|c| c / 2).collect()
}

// ---------------------------------------------------------------------------
// Eisenstein-Kronecker series

/// The fixed dilation/weight table of the family formula.
pub const DILATION_WEIGHTS: [(i64, i64); 4] = [(1, -4), (2, 16), (3, -36), (6, 144)];

#[derive(Clone, Copy, Debug)]
pub struct EisensteinSpec {
    pub tau: Complex64,
    pub radius: u32,
}

/// m(P_k) = (Im tau / 8 pi^3) * sum' over (m, n) and dilations (j, w) of
/// w * ( 2 Re 1/((jm tau + n)^3 (jm tau-bar + n)) + 1/((jm tau + n)^2 (jm tau-bar + n)^2) ),
/// summed over square shells max(|m|, |n|) <= radius. The accumulated
/// imaginary part must vanish to 1e-12 (each term is real by conjugation).
pub fn eisenstein_mahler(spec: &EisensteinSpec) -> Result<f64> {
    if spec.tau.im <= 0.0 {
        return Err(Error::TauNotInUpperHalfPlane { im: spec.tau.im });
    }
    let tau = spec.tau;
    let taub = tau.conj();
    let radius = spec.radius as i64;
    let term = |m: i64, n: i64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, w) in DILATION_WEIGHTS {
            let z = tau * (j * m) as f64 + Complex64::new(n as f64, 0.0);
            let zb = taub * (j * m) as f64 + Complex64::new(n as f64, 0.0);
            let z2 = z * z;
            let zb2 = zb * zb;
            let a = (z2 * z * zb).inv();
            let b = (z2 * zb2).inv();
            acc += (a + a.conj() + b) * w as f64;
        }
        acc
    };
    // Shell-parallel with ordered reduction; within a shell, a fixed
    // clockwise walk over the boundary of the square.
    use rayon::prelude::*;
    let partials: Vec<(f64, f64)> = (1..=radius)
        .into_par_iter()
        .map(|r| {
            let mut re = Kahan::new();
            let mut im = Kahan::new();
            let mut push = |v: Complex64| {
                re.add(v.re);
                im.add(v.im);
            };
            for n in -r..=r {
                push(term(r, n));
                push(term(-r, n));
            }
            for m in (-r + 1)..r {
                push(term(m, r));
                push(term(m, -r));
            }
            (re.value(), im.value())
        })
        .collect();
    let mut re = Kahan::new();
    let mut im = Kahan::new();
    for (r, i) in partials {
        re.add(r);
        im.add(i);
    }
    let scale = tau.im / (8.0 * PI.powi(3));
    let residue = (im.value() * scale).abs();
    if residue > 1e-12 {
        return Err(Error::NonRealEisensteinSum { residue });
    }
    Ok(re.value() * scale)
}

/// The k = 10 specialization at tau = i/sqrt(2): every Eisenstein term
/// collapses to the rational expression w * (4n^2 / D^3 - 1 / D^2) with
/// D = j^2 m^2 / 2 + n^2, so the whole sum is real arithmetic. Termwise
/// equal to `eisenstein_mahler` at the same radius.
pub fn specialized_m10(radius: u32) -> f64 {
    let im_tau = 0.5f64.sqrt();
    let radius = radius as i64;
    let shell = |r: i64| -> f64 {
        let mut acc = Kahan::new();
        let mut push = |m: i64, n: i64| {
            let mut t = 0.0;
            for (j, w) in DILATION_WEIGHTS {
                let d = (j * j * m * m) as f64 * 0.5 + (n * n) as f64;
                let x2 = (4 * n * n) as f64;
                t += w as f64 * (x2 / (d * d * d) - 1.0 / (d * d));
            }
            acc.add(t);
        };
        for n in -r..=r {
            push(r, n);
            push(-r, n);
        }
        for m in (-r + 1)..r {
            push(m, r);
            push(m, -r);
        }
        acc.value()
    };
    use rayon::prelude::*;
    let partials: Vec<f64> = (1..=radius).into_par_iter().map(shell).collect();
    let mut total = Kahan::new();
    for p in partials {
        total.add(p);
    }
    total.value() * im_tau / (8.0 * PI.powi(3))
}

/// Exact check of the constant identity (1/9) * 72^{3/2} = 48 sqrt(2),
/// i.e. 72^3 = (9 * 48)^2 * 2, in integer arithmetic.
pub fn det_t_constant_identity() -> bool {
    let lhs = BigInt::from(72).pow(3);
    let rhs = BigInt::from(9 * 48).pow(2) * 2;
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_two() {
        let v = dirichlet_l(&DirichletChar::trivial(), 2.0, 1e-10).unwrap();
        assert!((v - PI * PI / 6.0).abs() < 1e-9);
    }

    #[test]
    fn l_chi_m3_at_2() {
        let v = dirichlet_l(&DirichletChar::chi_m3(), 2.0, 1e-12).unwrap();
        assert!((v - 0.781302412896486).abs() < 1e-11, "got {v}");
    }

    #[test]
    fn l_chi24_at_2_closed_form() {
        let v = dirichlet_l(&DirichletChar::chi_24(), 2.0, 1e-12).unwrap();
        assert!((2.0 * v - PI * PI / (2.0 * 6.0f64.sqrt())).abs() < 1e-10);
    }

    #[test]
    fn divergent_spec_rejected() {
        let spec = LatticeSumSpec::new((1, 0, 2), vec![(1, 2, 0)], 2.0, 64);
        assert!(matches!(
            lattice_sum(&spec),
            Err(Error::DivergentLatticeSum { .. })
        ));
        let bad_form = LatticeSumSpec::new((1, 5, 1), vec![(1, 0, 0)], 3.0, 64);
        assert!(lattice_sum(&bad_form).is_err());
    }

    #[test]
    fn index_renaming_symmetry() {
        let a = lattice_sum(&LatticeSumSpec::new(
            (1, 0, 2),
            vec![(1, 2, 0), (-2, 0, 2)],
            3.0,
            512,
        ))
        .unwrap();
        let b = lattice_sum(&LatticeSumSpec::new(
            (2, 0, 1),
            vec![(1, 0, 2), (-2, 2, 0)],
            3.0,
            512,
        ))
        .unwrap();
        assert!((a.0 - b.0).abs() < 1e-14);
    }

    #[test]
    fn radius_doubling_within_tail_bound() {
        for radius in [512u32, 1024] {
            let coarse = lattice_sum(&LatticeSumSpec::new(
                (1, 0, 2),
                vec![(1, 2, 0), (-2, 0, 2)],
                3.0,
                radius,
            ))
            .unwrap();
            let fine = lattice_sum(&LatticeSumSpec::new(
                (1, 0, 2),
                vec![(1, 2, 0), (-2, 0, 2)],
                3.0,
                radius * 2,
            ))
            .unwrap();
            assert!(
                (coarse.0 - fine.0).abs() <= coarse.1,
                "radius {radius}: moved {} > bound {}",
                (coarse.0 - fine.0).abs(),
                coarse.1
            );
        }
    }

    #[test]
    fn d3_routes_agree() {
        let d = d3().unwrap();
        assert!((d.value - 0.32306594727586).abs() < 1e-10, "{}", d.value);
        assert!((d.character_route - d.lattice_route).abs() < 1e-8);
    }

    #[test]
    fn zagier_a_at_2() {
        let a = zagier_a(2.0, 4096).unwrap();
        let rhs = PI * PI / (2.0 * 6.0f64.sqrt())
            * dirichlet_l(&DirichletChar::chi_m3(), 2.0, 1e-13).unwrap();
        assert!((a - rhs).abs() < 1e-6, "A(2) = {a}, rhs = {rhs}");
    }

    #[test]
    fn zagier_a_coefficient_identity() {
        let chi3 = DirichletChar::chi_m3();
        let coeffs = zagier_a_coefficients(10_000);
        let r = r_sieve(10_000);
        for n in 1..=10_000usize {
            assert_eq!(
                coeffs[n],
                2 * chi3.eval(n as u64) * r[n] as i64,
                "n = {n}"
            );
        }
    }

    #[test]
    fn zagier_b_at_3_and_4() {
        for s in [3.0, 4.0] {
            let (lhs, rhs) = zagier_b_identity(s, 2048).unwrap();
            assert!((lhs - rhs).abs() < 1e-8, "s={s}: lhs {lhs} rhs {rhs}");
        }
    }

    #[test]
    fn r_n_small_values_and_divisor_identity() {
        assert_eq!(r_n(1), 1);
        assert_eq!(r_n(2), 1);
        assert_eq!(r_n(3), 2);
        let chi8 = DirichletChar::chi_m8();
        let r = r_sieve(2000);
        for n in 1..=2000u64 {
            let divisor_sum: i64 = (1..=n).filter(|d| n % d == 0).map(|d| chi8.eval(d)).sum();
            assert_eq!(r[n as usize] as i64, divisor_sum, "n = {n}");
        }
    }

    #[test]
    fn specialization_matches_complex_route() {
        let spec = EisensteinSpec {
            tau: Complex64::new(0.0, 0.5f64.sqrt()),
            radius: 512,
        };
        let complex_route = eisenstein_mahler(&spec).unwrap();
        let rational_route = specialized_m10(512);
        assert!(
            (complex_route - rational_route).abs() < 1e-12,
            "{complex_route} vs {rational_route}"
        );
    }

    #[test]
    fn eisenstein_rejects_lower_half_plane() {
        let spec = EisensteinSpec {
            tau: Complex64::new(0.0, -0.7),
            radius: 64,
        };
        assert!(matches!(
            eisenstein_mahler(&spec),
            Err(Error::TauNotInUpperHalfPlane { .. })
        ));
    }

    #[test]
    fn constant_identity_exact() {
        assert!(det_t_constant_identity());
    }

    #[test]
    fn central_sum_positive() {
        let (s, _) = central_sum_s(1024).unwrap();
        assert!(s > 0.0);
    }
}
