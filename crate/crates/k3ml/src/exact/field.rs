use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact coefficient field. Implemented by `Rat` (= `BigRational`) and by
/// `Quad<D>` for the quadratic extension Q(sqrt(D)).
pub trait Field: Clone + PartialEq + std::fmt::Debug + std::fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_i64(n: i64) -> Self;
    /// Exact square root in the field, if one exists.
    fn sqrt(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

/// The rationals, as arbitrary-precision fractions.
pub type Rat = BigRational;

/// Integer square root test: `Some(r)` with `r*r == n` for `n >= 0`.
pub fn bigint_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact rational square root, if the argument is a perfect square.
pub fn rat_sqrt_exact(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let n = bigint_sqrt_exact(x.numer())?;
    let d = bigint_sqrt_exact(x.denom())?;
    Some(BigRational::new(n, d))
}

impl Field for Rat {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        BigRational::new(
            self.denom() * BigInt::from(if self.numer().sign() == Sign::Minus { -1 } else { 1 }),
            self.numer().abs(),
        )
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from(BigInt::from(n))
    }
    fn sqrt(&self) -> Option<Self> {
        rat_sqrt_exact(self)
    }
}
