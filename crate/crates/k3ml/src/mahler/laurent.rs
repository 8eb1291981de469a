use crate::error::Error;
use crate::Result;
use num::{BigInt, One, Signed, Zero};
use num_complex::Complex64;
use std::fmt;

/// Integer-coefficient multivariate Laurent polynomial in canonical form:
/// terms sorted by exponent vector, no duplicates, no zero coefficients.
/// Variables are remembered by name in order of first appearance.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentPolynomial {
    pub vars: Vec<String>,
    /// (coefficient, exponent vector aligned with `vars`)
    pub terms: Vec<(BigInt, Vec<i32>)>,
}

impl LaurentPolynomial {
    pub fn zero(vars: Vec<String>) -> Self {
        LaurentPolynomial {
            vars,
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: Vec<String>, c: BigInt) -> Self {
        let n = vars.len();
        let mut p = LaurentPolynomial { vars, terms: vec![(c, vec![0; n])] };
        p.canonicalize();
        p
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn canonicalize(&mut self) {
        self.terms.sort_by(|a, b| a.1.cmp(&b.1));
        let mut out: Vec<(BigInt, Vec<i32>)> = Vec::with_capacity(self.terms.len());
        for (c, e) in self.terms.drain(..) {
            match out.last_mut() {
                Some((lc, le)) if *le == e => *lc += c,
                _ => out.push((c, e)),
            }
        }
        out.retain(|(c, _)| !c.is_zero());
        self.terms = out;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable mismatch");
        let mut p = self.clone();
        p.terms.extend(other.terms.iter().cloned());
        p.canonicalize();
        p
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(c, e)| (-c, e.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable mismatch");
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (c1, e1) in &self.terms {
            for (c2, e2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                terms.push((c1 * c2, e));
            }
        }
        let mut p = LaurentPolynomial {
            vars: self.vars.clone(),
            terms,
        };
        p.canonicalize();
        p
    }

    /// Evaluate at the torus point `(e^{2*pi*i*theta_1}, ...)`.
    pub fn eval_torus(&self, theta: &[f64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, e) in &self.terms {
            let mut phase = 0.0;
            for (ej, tj) in e.iter().zip(theta) {
                phase += *ej as f64 * tj;
            }
            let c = bigint_to_f64(c);
            let ang = std::f64::consts::TAU * phase;
            acc += Complex64::new(c * ang.cos(), c * ang.sin());
        }
        acc
    }

    /// Sum over terms of |coefficient| * |exponent in variable j|: a bound on
    /// the theta_j-derivative of P on the torus is 2*pi times this.
    pub fn lipschitz_weight(&self, j: usize) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| bigint_to_f64(&c.abs()) * e[j].abs() as f64)
            .sum()
    }

    /// Rename/permute variables to the given list (a superset is allowed:
    /// missing variables get exponent zero).
    pub fn align_vars(&self, vars: &[String]) -> Result<Self> {
        let map: Result<Vec<usize>> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter().position(|w| w == v).ok_or_else(|| {
                    Error::InvalidArgument(format!("variable {v} missing from target list"))
                })
            })
            .collect();
        let map = map?;
        let mut p = LaurentPolynomial {
            vars: vars.to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(c, e)| {
                    let mut ne = vec![0; vars.len()];
                    for (j, &ej) in e.iter().enumerate() {
                        ne[map[j]] = ej;
                    }
                    (c.clone(), ne)
                })
                .collect(),
        };
        p.canonicalize();
        Ok(p)
    }
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    use num::ToPrimitive;
    c.to_f64().expect("coefficient out of f64 range")
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (c, e)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let mut wrote = false;
            if !mag.is_one() || e.iter().all(|&x| x == 0) {
                write!(f, "{mag}")?;
                wrote = true;
            }
            for (j, &ej) in e.iter().enumerate() {
                if ej == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                wrote = true;
                if ej == 1 {
                    write!(f, "{}", self.vars[j])?;
                } else if ej < 0 {
                    write!(f, "{}^({})", self.vars[j], ej)?;
                } else {
                    write!(f, "{}^{}", self.vars[j], ej)?;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parser
//
// expression := ['+'|'-'] term (('+'|'-') term)*
// term       := factor ('*' factor)*
// factor     := integer ['/' variable]
//             | variable ['^' signed-integer]
//             | '(' expression ')'
// signed-integer may be parenthesized: x^-1, x^(-1), x^2.

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    vars: Vec<String>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => self.err(format!("expected '{}', found '{}'", c as char, got as char)),
            None => self.err(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse {
                pos: start,
                msg: format!("bad integer: {e}"),
            })
    }

    fn identifier(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len()
            && (self.text[self.pos].is_ascii_alphanumeric() || self.text[self.pos] == b'_')
            && !(self.pos == start && self.text[self.pos].is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a variable name");
        }
        let name = std::str::from_utf8(&self.text[start..self.pos]).unwrap().to_string();
        Ok(match self.vars.iter().position(|v| *v == name) {
            Some(i) => i,
            None => {
                self.vars.push(name);
                self.vars.len() - 1
            }
        })
    }

    fn signed_integer(&mut self) -> Result<i32> {
        self.skip_ws();
        let parens = self.peek() == Some(b'(');
        if parens {
            self.bump();
        }
        let mut sign = 1i64;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.bump();
            }
            Some(b'+') => {
                self.bump();
            }
            _ => {}
        }
        let start = self.pos;
        let mag = self.integer()?;
        let mag: i64 = num::ToPrimitive::to_i64(&mag)
            .filter(|&m| m.unsigned_abs() <= i32::MAX as u64)
            .ok_or(Error::Parse {
                pos: start,
                msg: "exponent overflow".into(),
            })?;
        if parens {
            self.expect(b')')?;
        }
        i32::try_from(sign * mag).map_err(|_| Error::Parse {
            pos: start,
            msg: "exponent overflow".into(),
        })
    }

    /// A monomial `c * prod x_j^{e_j}` in sparse form, before var alignment.
    fn factor(&mut self) -> Result<(BigInt, Vec<(usize, i32)>)> {
        match self.peek() {
            Some(b'(') => {
                // handled by caller (term): parenthesized subexpression
                unreachable!("factor() is not called on '('")
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if self.peek() == Some(b'/') {
                    self.bump();
                    let v = self.identifier()?;
                    Ok((n, vec![(v, -1)]))
                } else {
                    Ok((n, Vec::new()))
                }
            }
            Some(_) => {
                let v = self.identifier()?;
                let e = if self.peek() == Some(b'^') {
                    self.bump();
                    self.signed_integer()?
                } else {
                    1
                };
                Ok((BigInt::one(), vec![(v, e)]))
            }
            None => self.err("expected a factor, found end of input"),
        }
    }

    fn finish_poly(&self, coeff: BigInt, exps: Vec<(usize, i32)>) -> LaurentPolynomial {
        let mut e = vec![0i32; self.vars.len()];
        for (v, k) in exps {
            e[v] += k;
        }
        let mut p = LaurentPolynomial {
            vars: self.vars.clone(),
            terms: vec![(coeff, e)],
        };
        p.canonicalize();
        p
    }

    fn term(&mut self) -> Result<LaurentPolynomial> {
        let mut acc: Option<LaurentPolynomial> = None;
        let mut coeff = BigInt::one();
        let mut exps: Vec<(usize, i32)> = Vec::new();
        loop {
            if self.peek() == Some(b'(') {
                self.bump();
                let inner = self.expression()?;
                self.expect(b')')?;
                let so_far = self.finish_poly(std::mem::replace(&mut coeff, BigInt::one()),
                                              std::mem::take(&mut exps));
                let inner = inner.align_vars(&self.vars)?;
                let so_far = so_far.align_vars(&self.vars)?;
                let prod = so_far.mul(&inner);
                acc = Some(match acc {
                    None => prod,
                    Some(a) => a.align_vars(&self.vars)?.mul(&prod),
                });
            } else {
                let (c, e) = self.factor()?;
                coeff *= c;
                exps.extend(e);
            }
            if self.peek() == Some(b'*') {
                self.bump();
            } else {
                break;
            }
        }
        let tail = self.finish_poly(coeff, exps);
        Ok(match acc {
            None => tail,
            Some(a) => a.align_vars(&self.vars)?.mul(&tail),
        })
    }

    fn expression(&mut self) -> Result<LaurentPolynomial> {
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.bump();
            }
            Some(b'+') => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.align_vars(&self.vars)?.add(&t.align_vars(&self.vars)?);
                }
                Some(b'-') => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.align_vars(&self.vars)?.sub(&t.align_vars(&self.vars)?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }
}

/// Parse the Laurent-polynomial grammar; see module docs for the syntax.
pub fn parse_laurent(text: &str) -> Result<LaurentPolynomial> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        vars: Vec::new(),
    };
    let poly = p.expression()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return p.err("unexpected trailing input");
    }
    poly.align_vars(&p.vars)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_family_k10() {
        let p = parse_laurent("x + 1/x + y + 1/y + z + 1/z - 10").unwrap();
        assert_eq!(p.terms.len(), 7);
        assert_eq!(p.nvars(), 3);
    }

    #[test]
    fn parse_quartic_p10() {
        let p =
            parse_laurent("x^2*y*z + x*y^2*z + x*y*z^2 + t^2*(x*y+x*z+y*z) - 10*x*y*z*t").unwrap();
        assert_eq!(p.terms.len(), 7);
        assert_eq!(p.nvars(), 4);
    }

    #[test]
    fn inverse_notations_agree() {
        let a = parse_laurent("x^(-1)").unwrap();
        let b = parse_laurent("1/x").unwrap();
        let c = parse_laurent("x^-1").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn roundtrips_through_display() {
        for text in [
            "x + 1/x + y + 1/y + z + 1/z - 10",
            "x^2*y*z + x*y^2*z + x*y*z^2 + t^2*(x*y+x*z+y*z) - 10*x*y*z*t",
            "3*x*y^-2",
            "-5",
        ] {
            let p = parse_laurent(text).unwrap();
            let q = parse_laurent(&p.to_string()).unwrap();
            let q = q.align_vars(&p.vars).unwrap();
            assert_eq!(p, q, "failed on {text}");
        }
    }

    #[test]
    fn cancellation_produces_canonical_zero() {
        let p = parse_laurent("x*y - y*x").unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn syntax_errors_carry_position() {
        for bad in ["x +", "x^", "(x + y", "x^(2", "^2", "x**y"] {
            match parse_laurent(bad) {
                Err(Error::Parse { .. }) => {}
                other => panic!("expected parse error for '{bad}', got {other:?}"),
            }
        }
    }

    #[test]
    fn exponent_overflow_rejected() {
        assert!(matches!(
            parse_laurent("x^99999999999"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn eval_on_torus() {
        let p = parse_laurent("x + 1/x").unwrap();
        // at theta = 0: 1 + 1 = 2
        let v = p.eval_torus(&[0.0]);
        assert!((v.re - 2.0).abs() < 1e-14 && v.im.abs() < 1e-14);
        // at theta = 1/4: i + 1/i = 0
        let v = p.eval_torus(&[0.25]);
        assert!(v.norm() < 1e-14);
    }
}
