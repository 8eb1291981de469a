use super::field::Field;
use super::poly::Poly;
use std::fmt;

/// Rational function num/den over an exact field, kept in lowest terms with
/// a monic denominator. Zero is 0/1.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<F: Field> {
    pub num: Poly<F>,
    pub den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).unwrap().0;
        let den = den.div_rem(&g).unwrap().0;
        let lead_inv = den.leading().inv();
        RatFunc {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn constant(c: F) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den == Poly::one()
    }

    pub fn add(&self, other: &Self) -> Self {
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc::new(self.num.pow(e), self.den.pow(e))
    }

    /// Exact square root, if one exists in F(s).
    pub fn sqrt_exact(&self) -> Option<Self> {
        Some(RatFunc {
            num: self.num.sqrt_exact()?,
            den: self.den.sqrt_exact()?,
        })
    }

    /// Order of vanishing at a monic irreducible place (negative for poles).
    /// `None` for the zero function.
    pub fn valuation(&self, place: &Poly<F>) -> Option<i64> {
        let vn = self.num.valuation(place)?;
        let vd = self.den.valuation(place).expect("nonzero denominator");
        Some(vn as i64 - vd as i64)
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rat;

    type R = RatFunc<Rat>;
    type P = Poly<Rat>;

    fn pi(coeffs: &[i64]) -> P {
        P::from_ints(coeffs)
    }

    #[test]
    fn reduction_to_lowest_terms() {
        // (s^2 - 1) / (2s - 2) = (s + 1) / 2
        let r = R::new(pi(&[-1, 0, 1]), pi(&[-2, 2]));
        assert_eq!(r.num, P::from_ints(&[1, 1]).scale(&crate::exact::rat(1, 2)));
        assert_eq!(r.den, P::one());
    }

    #[test]
    fn den_kept_monic() {
        let r = R::new(pi(&[1]), pi(&[0, 3]));
        assert_eq!(r.den, pi(&[0, 1]));
        assert_eq!(r.num, P::constant(crate::exact::rat(1, 3)));
    }

    #[test]
    fn field_axioms_spotcheck() {
        let a = R::new(pi(&[1, 2]), pi(&[3, 0, 1]));
        let b = R::new(pi(&[-1, 1]), pi(&[0, 1]));
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&b).div(&b), a);
        assert_eq!(a.mul(&a.inv()), R::one());
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn sqrt_and_valuation() {
        let a = R::new(pi(&[0, 1, 1]), pi(&[-1, 1])); // s(s+1)/(s-1)
        let sq = a.mul(&a);
        assert_eq!(sq.sqrt_exact(), Some(a.clone()));
        assert_eq!(sq.valuation(&pi(&[0, 1])), Some(2));
        assert_eq!(sq.valuation(&pi(&[-1, 1])), Some(-2));
        assert_eq!(R::zero().valuation(&pi(&[0, 1])), None);
    }
}
