//! Elliptic curves in long Weierstrass form over function fields F(s):
//! standard invariants, singular-fiber classification (including the place
//! at infinity), the exact group law, section verification, and Shioda's
//! rank formula.

use crate::error::Error;
use crate::exact::poly::squarefree_factor;
use crate::exact::{Field, Poly, Quad, Rat, RatFunc};
use crate::Result;
use std::fmt;

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` with polynomial
/// coefficients in one variable over an exact field.
#[derive(Clone, PartialEq, Debug)]
pub struct Curve<F: Field> {
    pub a1: Poly<F>,
    pub a2: Poly<F>,
    pub a3: Poly<F>,
    pub a4: Poly<F>,
    pub a6: Poly<F>,
}

/// The b- and c-invariants, discriminant and j-invariant of a curve.
#[derive(Clone, PartialEq, Debug)]
pub struct Invariants<F: Field> {
    pub b2: Poly<F>,
    pub b4: Poly<F>,
    pub b6: Poly<F>,
    pub b8: Poly<F>,
    pub c4: Poly<F>,
    pub c6: Poly<F>,
    pub delta: Poly<F>,
    pub j: RatFunc<F>,
}

impl<F: Field> Curve<F> {
    pub fn new(a1: Poly<F>, a2: Poly<F>, a3: Poly<F>, a4: Poly<F>, a6: Poly<F>) -> Self {
        Curve { a1, a2, a3, a4, a6 }
    }

    pub fn invariants(&self) -> Result<Invariants<F>> {
        let two = Poly::constant(F::from_i64(2));
        let four = Poly::constant(F::from_i64(4));
        let b2 = self.a1.mul(&self.a1).add(&four.mul(&self.a2));
        let b4 = two.mul(&self.a4).add(&self.a1.mul(&self.a3));
        let b6 = self.a3.mul(&self.a3).add(&four.mul(&self.a6));
        let b8 = self
            .a1
            .mul(&self.a1)
            .mul(&self.a6)
            .add(&four.mul(&self.a2).mul(&self.a6))
            .sub(&self.a1.mul(&self.a3).mul(&self.a4))
            .add(&self.a2.mul(&self.a3).mul(&self.a3))
            .sub(&self.a4.mul(&self.a4));
        let c4 = b2.mul(&b2).sub(&b4.scale(&F::from_i64(24)));
        let c6 = b2
            .mul(&b2)
            .mul(&b2)
            .neg()
            .add(&b2.mul(&b4).scale(&F::from_i64(36)))
            .sub(&b6.scale(&F::from_i64(216)));
        let delta = b2
            .mul(&b2)
            .mul(&b8)
            .neg()
            .sub(&b4.mul(&b4).mul(&b4).scale(&F::from_i64(8)))
            .sub(&b6.mul(&b6).scale(&F::from_i64(27)))
            .add(&b2.mul(&b4).mul(&b6).scale(&F::from_i64(9)));
        if delta.is_zero() {
            return Err(Error::DegenerateCurve);
        }
        let j = RatFunc::new(c4.mul(&c4).mul(&c4), delta.clone());
        Ok(Invariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            delta,
            j,
        })
    }

    /// The model at s = infinity: substitute s = 1/sigma and rescale
    /// `a_i <- sigma^{i*weight} a_i(1/sigma)`. Errors if some deg a_i
    /// exceeds i*weight.
    pub fn infinity_model(&self, weight: u32) -> Result<Curve<F>> {
        let rescale = |a: &Poly<F>, i: u32| -> Result<Poly<F>> {
            let target = (i * weight) as usize;
            if let Some(d) = a.degree() {
                if d > target {
                    return Err(Error::WeightTooSmall {
                        weight,
                        index: i,
                        degree: d,
                    });
                }
            }
            Ok(a.reverse(target))
        };
        Ok(Curve {
            a1: rescale(&self.a1, 1)?,
            a2: rescale(&self.a2, 2)?,
            a3: rescale(&self.a3, 3)?,
            a4: rescale(&self.a4, 4)?,
            a6: rescale(&self.a6, 6)?,
        })
    }

    /// Left side minus right side of the projective curve equation
    /// `Y^2 Z + a1 XYZ + a3 Y Z^2 - X^3 - a2 X^2 Z - a4 X Z^2 - a6 Z^3`
    /// for polynomial coordinates. Zero iff (X:Y:Z) lies on the curve
    /// identically.
    pub fn residual_proj(&self, x: &Poly<F>, y: &Poly<F>, z: &Poly<F>) -> Poly<F> {
        y.mul(y)
            .mul(z)
            .add(&self.a1.mul(x).mul(y).mul(z))
            .add(&self.a3.mul(y).mul(z).mul(z))
            .sub(&x.mul(x).mul(x))
            .sub(&self.a2.mul(x).mul(x).mul(z))
            .sub(&self.a4.mul(x).mul(z).mul(z))
            .sub(&self.a6.mul(z).mul(z).mul(z))
    }

    /// Same residual for affine rational-function coordinates.
    pub fn residual_affine(&self, x: &RatFunc<F>, y: &RatFunc<F>) -> RatFunc<F> {
        let a1 = RatFunc::from_poly(self.a1.clone());
        let a2 = RatFunc::from_poly(self.a2.clone());
        let a3 = RatFunc::from_poly(self.a3.clone());
        let a4 = RatFunc::from_poly(self.a4.clone());
        let a6 = RatFunc::from_poly(self.a6.clone());
        y.mul(y)
            .add(&a1.mul(x).mul(y))
            .add(&a3.mul(y))
            .sub(&x.mul(x).mul(x))
            .sub(&a2.mul(x).mul(x))
            .sub(&a4.mul(x))
            .sub(&a6)
    }

    pub fn contains(&self, p: &CurvePoint<F>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => self.residual_affine(x, y).is_zero(),
        }
    }
}

/// A point of the generic fiber: the zero section or an affine point with
/// rational-function coordinates.
#[derive(Clone, PartialEq, Debug)]
pub enum CurvePoint<F: Field> {
    Infinity,
    Affine { x: RatFunc<F>, y: RatFunc<F> },
}

impl<F: Field> CurvePoint<F> {
    pub fn affine(x: RatFunc<F>, y: RatFunc<F>) -> Self {
        CurvePoint::Affine { x, y }
    }

    /// From projective polynomial coordinates; (0:1:0) is the zero section.
    pub fn from_projective(x: Poly<F>, y: Poly<F>, z: Poly<F>) -> Result<Self> {
        if z.is_zero() {
            if x.is_zero() && !y.is_zero() {
                return Ok(CurvePoint::Infinity);
            }
            return Err(Error::InvalidArgument(
                "projective point with Z = 0 must be (0:1:0)".into(),
            ));
        }
        Ok(CurvePoint::Affine {
            x: RatFunc::new(x, z.clone()),
            y: RatFunc::new(y, z),
        })
    }
}

impl<F: Field> fmt::Display for CurvePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "(0 : 1 : 0)"),
            CurvePoint::Affine { x, y } => write!(f, "({x} : {y} : 1)"),
        }
    }
}

/// Negation on a long Weierstrass curve: (x, -y - a1 x - a3).
pub fn group_neg<F: Field>(curve: &Curve<F>, p: &CurvePoint<F>) -> CurvePoint<F> {
    match p {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine { x, y } => {
            let a1 = RatFunc::from_poly(curve.a1.clone());
            let a3 = RatFunc::from_poly(curve.a3.clone());
            CurvePoint::Affine {
                x: x.clone(),
                y: y.neg().sub(&a1.mul(x)).sub(&a3),
            }
        }
    }
}

/// Chord-tangent addition over the exact function field.
pub fn group_add<F: Field>(
    curve: &Curve<F>,
    p: &CurvePoint<F>,
    q: &CurvePoint<F>,
) -> Result<CurvePoint<F>> {
    if !curve.contains(p) || !curve.contains(q) {
        return Err(Error::PointNotOnCurve);
    }
    let (x1, y1) = match p {
        CurvePoint::Infinity => return Ok(q.clone()),
        CurvePoint::Affine { x, y } => (x, y),
    };
    let (x2, y2) = match q {
        CurvePoint::Infinity => return Ok(p.clone()),
        CurvePoint::Affine { x, y } => (x, y),
    };
    let a1 = RatFunc::from_poly(curve.a1.clone());
    let a2 = RatFunc::from_poly(curve.a2.clone());
    let a3 = RatFunc::from_poly(curve.a3.clone());
    let a4 = RatFunc::from_poly(curve.a4.clone());
    let a6 = RatFunc::from_poly(curve.a6.clone());

    let (lambda, nu) = if x1 == x2 {
        // Q = -P exactly when y2 = -y1 - a1 x1 - a3.
        if *y2 == y1.neg().sub(&a1.mul(x1)).sub(&a3) {
            return Ok(CurvePoint::Infinity);
        }
        // Tangent line at P (= doubling).
        let den = y1.add(y1).add(&a1.mul(x1)).add(&a3);
        let lambda = x1
            .mul(x1)
            .mul(&RatFunc::constant(F::from_i64(3)))
            .add(&a2.mul(x1).mul(&RatFunc::constant(F::from_i64(2))))
            .add(&a4)
            .sub(&a1.mul(y1))
            .div(&den);
        let nu = x1
            .mul(x1)
            .mul(x1)
            .neg()
            .add(&a4.mul(x1))
            .add(&a6.add(&a6))
            .sub(&a3.mul(y1))
            .div(&den);
        (lambda, nu)
    } else {
        let den = x2.sub(x1);
        let lambda = y2.sub(y1).div(&den);
        let nu = y1.mul(x2).sub(&y2.mul(x1)).div(&den);
        (lambda, nu)
    };
    let x3 = lambda
        .mul(&lambda)
        .add(&a1.mul(&lambda))
        .sub(&a2)
        .sub(x1)
        .sub(x2);
    let y3 = lambda.add(&a1).mul(&x3).add(&nu).add(&a3).neg();
    Ok(CurvePoint::Affine { x: x3, y: y3 })
}

/// k-fold sum of a point (k >= 0) by repeated addition.
pub fn group_mul<F: Field>(curve: &Curve<F>, k: u32, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
    let mut acc = CurvePoint::Infinity;
    for _ in 0..k {
        acc = group_add(curve, &acc, p)?;
    }
    Ok(acc)
}

/// Treat the curve equation as a quadratic in Y at abscissa x = X/Z and
/// report whether its discriminant `(a1 x + a3)^2 + 4(x^3 + a2 x^2 + a4 x +
/// a6)` is a perfect square in F(s), which certifies that a point with this
/// abscissa exists over F(s).
pub fn recover_y<F: Field>(
    curve: &Curve<F>,
    x_num: &Poly<F>,
    z_den: &Poly<F>,
) -> Result<(bool, RatFunc<F>)> {
    if z_den.is_zero() {
        return Err(Error::InvalidArgument("recover_y needs Z != 0".into()));
    }
    let x = RatFunc::new(x_num.clone(), z_den.clone());
    let a1 = RatFunc::from_poly(curve.a1.clone());
    let a2 = RatFunc::from_poly(curve.a2.clone());
    let a3 = RatFunc::from_poly(curve.a3.clone());
    let a4 = RatFunc::from_poly(curve.a4.clone());
    let a6 = RatFunc::from_poly(curve.a6.clone());
    let lin = a1.mul(&x).add(&a3);
    let cubic = x
        .mul(&x)
        .mul(&x)
        .add(&a2.mul(&x).mul(&x))
        .add(&a4.mul(&x))
        .add(&a6);
    let disc = lin
        .mul(&lin)
        .add(&cubic.mul(&RatFunc::constant(F::from_i64(4))));
    let exists = disc.sqrt_exact().is_some();
    Ok((exists, disc))
}

/// Where a singular fiber sits: a monic irreducible polynomial place, or
/// s = infinity.
#[derive(Clone, PartialEq, Debug)]
pub enum Place {
    Finite(Poly<Rat>),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "infinity"),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum Kodaira {
    In(u32),
    AdditiveUnclassified,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::In(n) => write!(f, "I_{n}"),
            Kodaira::AdditiveUnclassified => write!(f, "additive - not classified"),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct FiberReport {
    pub place: Place,
    pub delta_valuation: u32,
    /// `None` encodes ord(c4) = +infinity (c4 identically zero).
    pub c4_valuation: Option<u32>,
    pub kodaira: Kodaira,
}

/// Classify singular fibers of a curve over Q(s), homogenized with the given
/// weight (deg a_i <= i*weight; weight 2 for a K3 model). One report per
/// irreducible factor of the discriminant, plus s = infinity when singular
/// there. Finite places come out sorted by (degree, coefficients), infinity
/// last, independent of any computation order.
pub fn classify_fibers(curve: &Curve<Rat>, weight: u32) -> Result<Vec<FiberReport>> {
    let inv = curve.invariants()?;
    let mut reports = Vec::new();
    let fact = squarefree_factor(&inv.delta)?;
    for f in &fact.factors {
        let c4v = if inv.c4.is_zero() {
            None
        } else {
            Some(inv.c4.valuation(&f.poly).unwrap())
        };
        let kodaira = match c4v {
            Some(0) => Kodaira::In(f.multiplicity),
            _ => Kodaira::AdditiveUnclassified,
        };
        reports.push(FiberReport {
            place: Place::Finite(f.poly.clone()),
            delta_valuation: f.multiplicity,
            c4_valuation: c4v,
            kodaira,
        });
    }
    // Place at infinity via the sigma = 1/s model.
    let inf = curve.infinity_model(weight)?;
    let inv_inf = inf.invariants()?;
    let sigma = Poly::<Rat>::x();
    let dv = inv_inf.delta.valuation(&sigma).unwrap();
    if dv >= 1 {
        let c4v = if inv_inf.c4.is_zero() {
            None
        } else {
            Some(inv_inf.c4.valuation(&sigma).unwrap())
        };
        let kodaira = match c4v {
            Some(0) => Kodaira::In(dv),
            _ => Kodaira::AdditiveUnclassified,
        };
        reports.push(FiberReport {
            place: Place::Infinity,
            delta_valuation: dv,
            c4_valuation: c4v,
            kodaira,
        });
    }
    Ok(reports)
}

/// Shioda's formula: Mordell-Weil rank r = rho - 2 - sum(m_nu - 1).
pub fn shioda_rank(rho: i64, fiber_component_counts: &[i64]) -> Result<i64> {
    let correction: i64 = fiber_component_counts.iter().map(|m| m - 1).sum();
    let r = rho - 2 - correction;
    if r < 0 {
        return Err(Error::NegativeRank { rho, correction });
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// Fixture parsing

/// Coefficient parsing for the curve/section fixture format.
pub trait CoeffParse: Field + Sized {
    /// The token after `field` identifying this coefficient field.
    fn field_tag() -> String;
    fn parse_coeff(tok: &str) -> Result<Self>;
}

fn parse_rat(tok: &str) -> Result<Rat> {
    tok.parse::<Rat>()
        .map_err(|e| Error::Fixture(format!("bad rational '{tok}': {e}")))
}

impl CoeffParse for Rat {
    fn field_tag() -> String {
        "q".into()
    }
    fn parse_coeff(tok: &str) -> Result<Self> {
        parse_rat(tok)
    }
}

impl<const D: i64> CoeffParse for Quad<D> {
    fn field_tag() -> String {
        format!("qsqrt {D}")
    }
    fn parse_coeff(tok: &str) -> Result<Self> {
        let (a, b) = tok
            .split_once(',')
            .ok_or_else(|| Error::Fixture(format!("expected 'a,b' pair, got '{tok}'")))?;
        Ok(Quad::new(parse_rat(a)?, parse_rat(b)?))
    }
}

/// Parse the keyed-line fixture format: `# comment` lines, one `field <tag>`
/// line, then `<key> <coeff> <coeff> ...` lines with ascending coefficients.
fn parse_keyed<F: CoeffParse>(text: &str, keys: &[&str]) -> Result<Vec<Poly<F>>> {
    let mut out: Vec<Option<Poly<F>>> = vec![None; keys.len()];
    let mut saw_field = false;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("field ") {
            let want = F::field_tag();
            if rest.trim() != want {
                return Err(Error::Fixture(format!(
                    "fixture is over field '{}', expected '{}'",
                    rest.trim(),
                    want
                )));
            }
            saw_field = true;
            continue;
        }
        let mut toks = line.split_whitespace();
        let key = toks.next().unwrap();
        let Some(slot) = keys.iter().position(|k| *k == key) else {
            return Err(Error::Fixture(format!("unknown key '{key}'")));
        };
        let coeffs: Result<Vec<F>> = toks.map(F::parse_coeff).collect();
        out[slot] = Some(Poly::new(coeffs?));
    }
    if !saw_field {
        return Err(Error::Fixture("missing 'field' line".into()));
    }
    Ok(out
        .into_iter()
        .map(|p| p.unwrap_or_else(Poly::zero))
        .collect())
}

pub fn parse_curve<F: CoeffParse>(text: &str) -> Result<Curve<F>> {
    let mut polys = parse_keyed::<F>(text, &["a1", "a2", "a3", "a4", "a6"])?;
    let a6 = polys.pop().unwrap();
    let a4 = polys.pop().unwrap();
    let a3 = polys.pop().unwrap();
    let a2 = polys.pop().unwrap();
    let a1 = polys.pop().unwrap();
    Ok(Curve::new(a1, a2, a3, a4, a6))
}

/// Parse a section fixture into projective polynomial coordinates (X, Y, Z).
pub fn parse_section<F: CoeffParse>(text: &str) -> Result<(Poly<F>, Poly<F>, Poly<F>)> {
    let mut polys = parse_keyed::<F>(text, &["X", "Y", "Z"])?;
    let z = polys.pop().unwrap();
    let y = polys.pop().unwrap();
    let x = polys.pop().unwrap();
    Ok((x, y, z))
}

/// Lift a curve over Q into the quadratic extension Q(sqrt(D)).
pub fn lift_curve<const D: i64>(curve: &Curve<Rat>) -> Curve<Quad<D>> {
    fn lift<const D: i64>(p: &Poly<Rat>) -> Poly<Quad<D>> {
        Poly::new(
            p.coeffs
                .iter()
                .map(|c| Quad::new(c.clone(), num::Zero::zero()))
                .collect(),
        )
    }
    Curve::new(
        lift(&curve.a1),
        lift(&curve.a2),
        lift(&curve.a3),
        lift(&curve.a4),
        lift(&curve.a6),
    )
}

pub fn load_curve<F: CoeffParse>(path: &std::path::Path) -> Result<Curve<F>> {
    parse_curve(&std::fs::read_to_string(path)?)
}

pub fn load_section<F: CoeffParse>(
    path: &std::path::Path,
) -> Result<(Poly<F>, Poly<F>, Poly<F>)> {
    parse_section(&std::fs::read_to_string(path)?)
}
