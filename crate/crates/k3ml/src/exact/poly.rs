use super::field::{Field, Rat};
use crate::error::Error;
use crate::Result;
use num::{BigInt, One, Signed, Zero};
use std::fmt;

/// Univariate polynomial over an exact field, coefficients in ascending
/// degree order. The zero polynomial is the empty coefficient vector; every
/// constructor trims trailing zeros so equality is structural.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F: Field> {
    pub coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![F::zero(), F::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division: `self = q*div + r` with `deg r < deg div`.
    pub fn div_rem(&self, div: &Self) -> Result<(Self, Self)> {
        if div.is_zero() {
            return Err(Error::PolyDivisionByZero);
        }
        let dlead_inv = div.leading().inv();
        let dd = div.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].mul(&dlead_inv);
            for (j, d) in div.coeffs.iter().enumerate() {
                let t = q.mul(d);
                rem[i - dd + j] = rem[i - dd + j].sub(&t);
            }
            quot[i - dd] = q;
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading().inv())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&F::from_i64(i as i64)))
                .collect(),
        )
    }

    /// Order of vanishing at the place given by a monic irreducible `place`:
    /// the largest e with place^e | self. Returns `None` for self = 0.
    pub fn valuation(&self, place: &Self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.clone();
        let mut v = 0;
        loop {
            let (q, r) = p.div_rem(place).expect("nonzero place");
            if !r.is_zero() {
                return Some(v);
            }
            v += 1;
            p = q;
        }
    }

    /// Substitute `self(x) -> self(arg)` for a polynomial argument.
    pub fn compose(&self, arg: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(arg).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Reverse coefficients against a target degree `n >= deg self`:
    /// returns `x^n * self(1/x)`. Used for the place at infinity.
    pub fn reverse(&self, n: usize) -> Self {
        let mut coeffs = vec![F::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Poly::new(coeffs)
    }

    /// Exact polynomial square root, if one exists.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let d = self.degree().unwrap();
        if d % 2 != 0 {
            return None;
        }
        let m = d / 2;
        // Descending-order recursion: r[0] = sqrt(lead), each next coefficient
        // is pinned by matching one coefficient of r^2 against self.
        let lead_root = self.leading().sqrt()?;
        let two_lead_inv = lead_root.add(&lead_root).inv();
        let mut r = vec![F::zero(); m + 1]; // descending
        r[0] = lead_root;
        for i in 1..=m {
            let mut s = self.coeff(d - i);
            for j in 1..i {
                s = s.sub(&r[j].mul(&r[i - j]));
            }
            r[i] = s.mul(&two_lead_inv);
        }
        r.reverse();
        let root = Poly::new(r);
        if root.mul(&root) == *self {
            Some(root)
        } else {
            None
        }
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*s")?,
                _ => write!(f, "({c})*s^{i}")?,
            }
        }
        Ok(())
    }
}

/// One factor of a squarefree factorization.
#[derive(Clone, PartialEq, Debug)]
pub struct Factor {
    /// Monic factor.
    pub poly: Poly<Rat>,
    pub multiplicity: u32,
    /// False for a squarefree block of degree > 2 that was not split further.
    pub irreducible: bool,
}

/// `constant * prod(factor^multiplicity)` equals the input.
#[derive(Clone, PartialEq, Debug)]
pub struct Factorization {
    pub constant: Rat,
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn product(&self) -> Poly<Rat> {
        let mut p = Poly::constant(self.constant.clone());
        for f in &self.factors {
            p = p.mul(&f.poly.pow(f.multiplicity));
        }
        p
    }
}

fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    // All positive divisors, found by trial division. The constant and
    // leading coefficients met here are small, so this is never a bottleneck;
    // bail out (returning what was found) past a fixed trial bound.
    let n = n.abs();
    let mut divs = Vec::new();
    let mut d = BigInt::one();
    let limit = BigInt::from(1_000_000u64);
    while &d * &d <= n && d <= limit {
        if (&n % &d).is_zero() {
            divs.push(d.clone());
            let q = &n / &d;
            if q != d {
                divs.push(q);
            }
        }
        d += 1;
    }
    divs
}

/// All rational roots of a nonzero polynomial over Q, via the rational root
/// theorem on the denominator-cleared integer model.
pub fn rational_roots(p: &Poly<Rat>) -> Vec<Rat> {
    let mut p = p.clone();
    let mut roots = Vec::new();
    if p.is_zero() || p.is_constant() {
        return roots;
    }
    if Field::is_zero(&p.coeff(0)) {
        roots.push(<Rat as Field>::zero());
        while Field::is_zero(&p.coeff(0)) && !p.is_constant() {
            p = p.div_rem(&Poly::x()).unwrap().0;
        }
    }
    // Clear denominators.
    let mut den = BigInt::one();
    for c in &p.coeffs {
        den = num::integer::lcm(den, c.denom().clone());
    }
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| c.numer() * &den / c.denom())
        .collect();
    let a0 = &ints[0];
    let an = &ints[ints.len() - 1];
    for num_d in small_divisors(a0) {
        for den_d in small_divisors(an) {
            for sign in [1i64, -1] {
                let cand = Rat::new(&num_d * BigInt::from(sign), den_d.clone());
                if Field::is_zero(&p.eval(&cand)) && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

/// Split a monic squarefree polynomial over Q into monic irreducible factors
/// of degree <= 2, plus at most one unsplit higher-degree block.
fn split_squarefree(g: &Poly<Rat>) -> Vec<Factor> {
    let mut rem = g.clone();
    let mut out = Vec::new();
    for r in rational_roots(g) {
        let lin = Poly::new(vec![-r, <Rat as Field>::one()]);
        let (q, rr) = rem.div_rem(&lin).unwrap();
        assert!(rr.is_zero(), "root must divide");
        rem = q;
        out.push(Factor {
            poly: lin,
            multiplicity: 1,
            irreducible: true,
        });
    }
    match rem.degree() {
        Some(0) | None => {}
        Some(1) => out.push(Factor {
            poly: rem.monic(),
            multiplicity: 1,
            irreducible: true,
        }),
        Some(2) => {
            let m = rem.monic();
            // x^2 + bx + c with no rational root: split only if the
            // discriminant is a rational square (it is not, by construction),
            // so the quadratic is irreducible over Q.
            out.push(Factor {
                poly: m,
                multiplicity: 1,
                irreducible: true,
            });
        }
        Some(_) => out.push(Factor {
            poly: rem.monic(),
            multiplicity: 1,
            irreducible: false,
        }),
    }
    out
}

/// Yun's squarefree factorization over Q followed by degree-<=2 splitting.
/// Factors come out monic, sorted by (degree, coefficients); the unit is
/// carried in `constant`.
pub fn squarefree_factor(p: &Poly<Rat>) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let constant = p.leading();
    let p = p.monic();
    let mut factors: Vec<Factor> = Vec::new();
    if !p.is_constant() {
        // Yun: peel off the squarefree part of each multiplicity level.
        let dp = p.derivative();
        let mut c = p.gcd(&dp);
        let mut w = p.div_rem(&c).unwrap().0;
        let mut mult = 0u32;
        while !w.is_constant() {
            mult += 1;
            let y = w.gcd(&c);
            let level = w.div_rem(&y).unwrap().0; // squarefree, multiplicity = mult
            if !level.is_constant() {
                for mut f in split_squarefree(&level.monic()) {
                    f.multiplicity = mult;
                    factors.push(f);
                }
            }
            c = c.div_rem(&y).unwrap().0;
            w = y;
        }
    }
    factors.sort_by(|a, b| {
        a.poly
            .coeffs
            .len()
            .cmp(&b.poly.coeffs.len())
            .then_with(|| {
                for (x, y) in a.poly.coeffs.iter().zip(b.poly.coeffs.iter()).rev() {
                    let c = x.cmp(y);
                    if c != std::cmp::Ordering::Equal {
                        return c;
                    }
                }
                std::cmp::Ordering::Equal
            })
            .then(a.multiplicity.cmp(&b.multiplicity))
    });
    let fact = Factorization { constant, factors };
    debug_assert_eq!(fact.product(), p.scale(&fact.constant));
    Ok(fact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rint};

    type P = Poly<Rat>;

    fn pi(coeffs: &[i64]) -> P {
        P::from_ints(coeffs)
    }

    #[test]
    fn zero_is_empty() {
        assert!(pi(&[0, 0]).is_zero());
        assert_eq!(pi(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn div_rem_exact_factor() {
        // (s^2 - 1) / (s - 1) = s + 1 rem 0
        let (q, r) = pi(&[-1, 0, 1]).div_rem(&pi(&[-1, 1])).unwrap();
        assert_eq!(q, pi(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn div_by_zero_rejected() {
        assert!(matches!(
            pi(&[1]).div_rem(&P::zero()),
            Err(Error::PolyDivisionByZero)
        ));
    }

    #[test]
    fn gcd_coprime_is_one() {
        // gcd(s^2 - 10s + 1, s - 1) = 1
        assert_eq!(pi(&[1, -10, 1]).gcd(&pi(&[-1, 1])), P::one());
    }

    #[test]
    fn gcd_common_factor_monic() {
        let g = pi(&[-1, 3]); // 3s - 1
        let a = g.mul(&pi(&[1, 1]));
        let b = g.mul(&pi(&[2, 0, 1]));
        assert_eq!(a.gcd(&b), g.monic());
    }

    #[test]
    fn mul_by_zero() {
        assert!(pi(&[1, 2, 3]).mul(&P::zero()).is_zero());
    }

    #[test]
    fn sqrt_exact_roundtrip() {
        let r = pi(&[3, -2, 0, 5]);
        let sq = r.mul(&r);
        let back = sq.sqrt_exact().unwrap();
        assert!(back == r || back == r.neg());
        assert_eq!(pi(&[1, 1]).sqrt_exact(), None);
        assert_eq!(pi(&[0, 1]).mul(&pi(&[0, 1])).sqrt_exact(), Some(pi(&[0, 1])));
        assert_eq!(pi(&[1, 2, 2]).sqrt_exact(), None); // right degree, not a square
    }

    #[test]
    fn valuation_counts_multiplicity() {
        let place = pi(&[1, -10, 1]);
        let p = place.pow(3).mul(&pi(&[7, 1]));
        assert_eq!(p.valuation(&place), Some(3));
        assert_eq!(pi(&[1]).valuation(&place), Some(0));
    }

    #[test]
    fn factor_paper_discriminant_shape() {
        // s^12 (10s-1)^2 (s^2-10s+1)^3 (s-1)(9s-1)
        let p = pi(&[0, 1])
            .pow(12)
            .mul(&pi(&[-1, 10]).pow(2))
            .mul(&pi(&[1, -10, 1]).pow(3))
            .mul(&pi(&[-1, 1]))
            .mul(&pi(&[-1, 9]));
        let f = squarefree_factor(&p).unwrap();
        let got: Vec<(P, u32)> = f.factors.iter().map(|x| (x.poly.clone(), x.multiplicity)).collect();
        assert!(got.contains(&(pi(&[0, 1]), 12)));
        assert!(got.contains(&(P::new(vec![rat(-1, 10), rint(1)]), 2)));
        assert!(got.contains(&(pi(&[1, -10, 1]), 3)));
        assert!(got.contains(&(pi(&[-1, 1]), 1)));
        assert!(got.contains(&(P::new(vec![rat(-1, 9), rint(1)]), 1)));
        assert_eq!(f.factors.len(), 5);
        assert!(f.factors.iter().all(|x| x.irreducible));
        assert_eq!(f.product(), p);
    }

    #[test]
    fn factor_trivial_cases() {
        let f = squarefree_factor(&pi(&[0, 0, 0, 1])).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].poly, pi(&[0, 1]));
        assert_eq!(f.factors[0].multiplicity, 3);

        let f = squarefree_factor(&pi(&[5])).unwrap();
        assert!(f.factors.is_empty());
        assert_eq!(f.constant, rint(5));

        assert!(matches!(squarefree_factor(&P::zero()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn factor_remultiplies_random_products() {
        // Deterministic pseudo-random products of degree-<=2 irreducibles.
        let irreducibles = [
            pi(&[1, 1]),
            pi(&[-2, 1]),
            pi(&[1, 0, 1]),
            pi(&[1, 1, 1]),
            pi(&[3, -1, 1]),
            pi(&[0, 1]),
        ];
        let mut state = 0x243f6a88u64;
        for _ in 0..100 {
            let mut p = P::one();
            for _ in 0..4 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let pick = &irreducibles[(state >> 33) as usize % irreducibles.len()];
                let e = 1 + ((state >> 20) % 3) as u32;
                p = p.mul(&pick.pow(e));
            }
            let f = squarefree_factor(&p).unwrap();
            assert_eq!(f.product(), p);
        }
    }

    #[test]
    fn compose_and_reverse() {
        let p = pi(&[1, 2, 3]); // 3s^2 + 2s + 1
        assert_eq!(p.compose(&pi(&[0, 0, 1])), pi(&[1, 0, 2, 0, 3]));
        // s^3 * p(1/s) = s^3 + 2 s^2 + 3 s
        assert_eq!(p.reverse(3), pi(&[0, 3, 2, 1]));
    }
}
