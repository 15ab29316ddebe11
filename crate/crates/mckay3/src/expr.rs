//! Parser for polynomial expressions in `t` and `u` with cyclotomic
//! coefficients.
//!
//! Grammar (whitespace ignored, `*` optional between factors):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'? | '/') factor)*
//! factor := atom ('^' integer)?
//! atom   := integer | 't' | 'u' | 'i' | 'z' integer | '(' expr ')'
//! ```
//!
//! A divisor must be a nonzero constant. `zN` is the root of unity e^{2πi/N} and `i` is `z4`. The Unicode minus
//! sign and `ζ` are accepted as aliases of `-` and `z`.

use std::collections::BTreeMap;

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::poly::{ZBiPoly, ZPoly};

/// Sparse bivariate polynomial with cyclotomic coefficients.
pub type CPoly = BTreeMap<(u32, u32), CycloNum>;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn c_add(a: &CPoly, b: &CPoly, sign: i64) -> CPoly {
    let mut out = a.clone();
    for (k, v) in b {
        let e = out.entry(*k).or_default();
        *e = if sign > 0 { e.add(v) } else { e.sub(v) };
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn c_mul(a: &CPoly, b: &CPoly) -> CPoly {
    let mut out: CPoly = BTreeMap::new();
    for (&(p, q), x) in a {
        for (&(r, s), y) in b {
            let e = out.entry((p + r, q + s)).or_default();
            *e = e.add(&x.mul(y));
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn constant(c: CycloNum) -> CPoly {
    let mut m = BTreeMap::new();
    if !c.is_zero() {
        m.insert((0, 0), c);
    }
    m
}

struct Parser<'a> {
    s: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let s = src
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '−' => '-',
                'ζ' => 'z',
                '·' => '*',
                c => c,
            })
            .collect();
        Parser { s, pos: 0, src }
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(perr(format!("expected integer at {} in {:?}", start, self.src)));
        }
        let text: String = self.s[start..self.pos].iter().collect();
        text.parse().map_err(|_| perr(format!("integer out of range in {:?}", self.src)))
    }

    fn expr(&mut self) -> Result<CPoly> {
        let mut acc = CPoly::new();
        let mut sign = 1;
        match self.peek() {
            Some('-') => {
                sign = -1;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = c_add(&acc, &t, sign);
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<CPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = c_mul(&acc, &self.factor()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    let inv = match (d.len(), d.get(&(0, 0))) {
                        (1, Some(c)) => c.inv()?,
                        _ => return Err(perr("divisor is not a nonzero constant")),
                    };
                    acc = c_mul(&acc, &constant(inv));
                }
                Some(c) if c.is_ascii_digit() || matches!(c, 't' | 'u' | 'i' | 'z' | '(') => {
                    acc = c_mul(&acc, &self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<CPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let mut r = constant(CycloNum::one());
            for _ in 0..e {
                r = c_mul(&r, &base);
            }
            return Ok(r);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<CPoly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(constant(CycloNum::from_int(v as i64)))
            }
            Some('t') => {
                self.pos += 1;
                Ok([((1, 0), CycloNum::one())].into_iter().collect())
            }
            Some('u') => {
                self.pos += 1;
                Ok([((0, 1), CycloNum::one())].into_iter().collect())
            }
            Some('i') => {
                self.pos += 1;
                Ok(constant(CycloNum::root_of_unity(4, 1)))
            }
            Some('z') => {
                self.pos += 1;
                let n = self.integer()?;
                if n == 0 {
                    return Err(perr("z0 is not a root of unity"));
                }
                Ok(constant(CycloNum::root_of_unity(n, 1)))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(perr(format!("missing ')' in {:?}", self.src)));
                }
                self.pos += 1;
                Ok(e)
            }
            other => Err(perr(format!("unexpected {:?} at {} in {:?}", other, self.pos, self.src))),
        }
    }
}

/// Parse an expression into a sparse polynomial with cyclotomic coefficients.
pub fn parse(src: &str) -> Result<CPoly> {
    let mut p = Parser::new(src);
    let e = p.expr()?;
    if p.pos != p.s.len() {
        return Err(perr(format!("trailing input at {} in {:?}", p.pos, src)));
    }
    Ok(e)
}

/// Parse a constant expression such as `-z9^2 - 2*z9^5`.
pub fn parse_cyclo(src: &str) -> Result<CycloNum> {
    let e = parse(src)?;
    if e.keys().any(|&k| k != (0, 0)) {
        return Err(perr(format!("{src:?} is not a constant")));
    }
    Ok(e.get(&(0, 0)).cloned().unwrap_or_default())
}

/// Parse a polynomial in `t` and `u` with rational integer coefficients.
pub fn parse_zbipoly(src: &str) -> Result<ZBiPoly> {
    let e = parse(src)?;
    let mut terms = Vec::with_capacity(e.len());
    for (k, v) in e {
        let r = v
            .to_rational()
            .filter(|r| r.is_integer())
            .ok_or_else(|| perr(format!("non-integer coefficient in {src:?}")))?;
        terms.push((k, r.to_integer()));
    }
    Ok(ZBiPoly::from_terms(terms))
}

/// Parse a polynomial in `t` alone with rational integer coefficients.
pub fn parse_zpoly(src: &str) -> Result<ZPoly> {
    let b = parse_zbipoly(src)?;
    if b.degree_u().is_some_and(|d| d > 0) {
        return Err(perr(format!("{src:?} depends on u")));
    }
    Ok(b.at_u0())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn constants() {
        assert_eq!(parse_cyclo("z8 + z8^7").unwrap().pow(2).unwrap(), CycloNum::from_int(2));
        assert_eq!(parse_cyclo("−ζ3 − ζ3^2").unwrap(), CycloNum::one());
        assert_eq!(
            parse_cyclo("3z3").unwrap(),
            CycloNum::root_of_unity(3, 1).scale(&num_rational::BigRational::from_integer(int(3)))
        );
        assert_eq!(parse_cyclo("i^2").unwrap(), CycloNum::from_int(-1));
    }

    #[test]
    fn division_by_constants() {
        assert_eq!(parse_cyclo("1/2").unwrap(), CycloNum::from_frac(1, 2));
        assert_eq!(
            parse_cyclo("-3/4*z5^2").unwrap(),
            CycloNum::root_of_unity(5, 2).scale(&BigRational::new((-3).into(), 4.into()))
        );
        assert!(parse_zpoly("1/t").is_err());
    }

    #[test]
    fn polynomials() {
        let p = parse_zpoly("-t^8-t^7+t^5+t^4+t^3-t-1").unwrap();
        assert_eq!(p, ZPoly::from_i64(&[-1, -1, 0, 1, 1, 1, 0, -1, -1]));
        let q = parse_zbipoly("2t^2u + (t-1)(u+1)").unwrap();
        assert_eq!(q.coeff(2, 1), int(2));
        assert_eq!(q.coeff(1, 1), int(1));
        assert_eq!(q.coeff(0, 1), int(-1));
        assert!(parse_zbipoly("z3*t").is_err());
        assert!(parse("t +").is_err());
    }
}
