use super::field::{rat_sqrt_exact, Field, Rat};
use crate::exact::rint;
use std::fmt;

fn rzero() -> Rat {
    num::Zero::zero()
}

/// An element `a + b*sqrt(D)` of the quadratic field Q(sqrt(D)).
///
/// `D` is a square-free integer fixed at the type level, so elements of
/// different quadratic fields cannot be mixed by construction. The curve
/// sections of interest live in `Quad<-3>`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quad<const D: i64> {
    pub a: Rat,
    pub b: Rat,
}

impl<const D: i64> Quad<D> {
    pub fn new(a: Rat, b: Rat) -> Self {
        Quad { a, b }
    }

    pub fn from_rat(a: Rat) -> Self {
        Quad {
            a,
            b: rzero(),
        }
    }

    /// Galois conjugate `a - b*sqrt(D)`.
    pub fn conjugate(&self) -> Self {
        Quad {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// Field norm `a^2 - D b^2`, a rational.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - rint(D) * &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        num::Zero::is_zero(&self.b)
    }
}

impl<const D: i64> fmt::Display for Quad<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if num::Zero::is_zero(&self.b) {
            write!(f, "{}", self.a)
        } else if num::Zero::is_zero(&self.a) {
            write!(f, "{}*sqrt({})", self.b, D)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, D)
        }
    }
}

impl<const D: i64> Field for Quad<D> {
    fn zero() -> Self {
        Quad::from_rat(rzero())
    }
    fn one() -> Self {
        Quad::from_rat(rint(1))
    }
    fn is_zero(&self) -> bool {
        num::Zero::is_zero(&self.a) && num::Zero::is_zero(&self.b)
    }
    fn add(&self, other: &Self) -> Self {
        Quad::new(&self.a + &other.a, &self.b + &other.b)
    }
    fn sub(&self, other: &Self) -> Self {
        Quad::new(&self.a - &other.a, &self.b - &other.b)
    }
    fn mul(&self, other: &Self) -> Self {
        // (a + b r)(c + d r) = ac + D bd + (ad + bc) r
        Quad::new(
            &self.a * &other.a + rint(D) * &self.b * &other.b,
            &self.a * &other.b + &self.b * &other.a,
        )
    }
    fn neg(&self) -> Self {
        Quad::new(-self.a.clone(), -self.b.clone())
    }
    fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!num::Zero::is_zero(&n), "inverse of zero in Q(sqrt({D}))");
        let ninv = Field::inv(&n);
        Quad::new(&self.a * &ninv, -&self.b * &ninv)
    }
    fn from_i64(n: i64) -> Self {
        Quad::from_rat(rint(n))
    }
    fn sqrt(&self) -> Option<Self> {
        // (u + v r)^2 = u^2 + D v^2 + 2uv r
        if num::Zero::is_zero(&self.b) {
            if let Some(u) = rat_sqrt_exact(&self.a) {
                return Some(Quad::new(u, rzero()));
            }
            // a = D v^2
            let v2 = &self.a / rint(D);
            if let Some(v) = rat_sqrt_exact(&v2) {
                return Some(Quad::new(rzero(), v));
            }
            return None;
        }
        // u^2 = (a +- sqrt(a^2 - D b^2)) / 2, v = b / (2u)
        let disc = rat_sqrt_exact(&self.norm())?;
        for root in [disc.clone(), -disc] {
            let u2 = (&self.a + &root) / rint(2);
            if let Some(u) = rat_sqrt_exact(&u2) {
                if !num::Zero::is_zero(&u) {
                    let v = &self.b / (rint(2) * &u);
                    return Some(Quad::new(u, v));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    type Q3 = Quad<-3>;

    #[test]
    fn norm_is_rational() {
        let x = Q3::new(rat(3, 2), rat(-5, 7));
        let p = x.mul(&x.conjugate());
        assert!(p.is_rational());
        assert_eq!(p.a, x.norm());
    }

    #[test]
    fn sqrt_of_minus_three_times_square() {
        // -20155392 = (2592)^2 * (-3) has square root 2592*sqrt(-3)
        let x = Q3::from_rat(rint(-20155392));
        let r = x.sqrt().unwrap();
        assert_eq!(r.mul(&r), x);
        assert_eq!(r.b.numer().magnitude(), &num::BigUint::from(2592u32));
    }

    #[test]
    fn sqrt_of_generic_square() {
        let x = Q3::new(rat(1, 3), rat(-4, 5));
        let sq = x.mul(&x);
        let r = sq.sqrt().unwrap();
        assert!(r == x || r == x.neg());
        assert_eq!(Q3::new(rint(2), rint(1)).sqrt(), None);
    }

    #[test]
    fn inverse() {
        let x = Q3::new(rat(2, 3), rat(5, 1));
        assert_eq!(x.mul(&x.inv()), Q3::one());
    }
}
