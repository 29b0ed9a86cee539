//! Commutative polynomials over the integers.
//!
//! In the action `u.f` the variables are the generators; the same type with a
//! single variable carries the polynomials `p(λ)` of the merging maps.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::lie::ParseError;

/// Exponent vector; trailing zeros are insignificant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AssocMonomial(Vec<u32>);

impl AssocMonomial {
    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        AssocMonomial(exponents)
    }

    pub fn one() -> Self {
        AssocMonomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        AssocMonomial(e)
    }

    /// Builds the monomial from a list of letters, with repetition.
    pub fn from_letters(letters: &[usize]) -> Self {
        let mut e = Vec::new();
        for &l in letters {
            if e.len() <= l {
                e.resize(l + 1, 0);
            }
            e[l] += 1;
        }
        AssocMonomial::new(e)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Letters with repetition, ascending by index.
    pub fn letters(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        for (i, &e) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat_n(i, e as usize));
        }
        out
    }

    pub fn mul(&self, other: &AssocMonomial) -> AssocMonomial {
        let len = self.0.len().max(other.0.len());
        let e = (0..len).map(|i| self.exponent(i) + other.exponent(i)).collect();
        AssocMonomial::new(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AssocPoly {
    terms: BTreeMap<AssocMonomial, BigInt>,
}

impl AssocPoly {
    pub fn zero() -> Self {
        AssocPoly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = AssocPoly::zero();
        p.add_term(AssocMonomial::one(), c.into());
        p
    }

    pub fn var(i: usize) -> Self {
        AssocPoly::monomial(AssocMonomial::var(i), BigInt::one())
    }

    pub fn monomial(m: AssocMonomial, c: impl Into<BigInt>) -> Self {
        let mut p = AssocPoly::zero();
        p.add_term(m, c.into());
        p
    }

    /// Univariate polynomial `Σ coeffs[j] λ^j`.
    pub fn univariate(coeffs: &[BigInt]) -> Self {
        let mut p = AssocPoly::zero();
        for (j, c) in coeffs.iter().enumerate() {
            p.add_term(AssocMonomial::new(vec![j as u32]), c.clone());
        }
        p
    }

    pub fn add_term(&mut self, m: AssocMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AssocMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest variable index occurring plus one.
    pub fn variable_bound(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    /// Coefficients of a univariate polynomial in its only variable.
    pub fn univariate_coefficients(&self) -> Option<Vec<BigInt>> {
        if self.variable_bound() > 1 {
            return None;
        }
        let deg = self.terms.keys().map(|m| m.exponent(0)).max().unwrap_or(0);
        let mut out = vec![BigInt::zero(); deg as usize + 1];
        for (m, c) in &self.terms {
            out[m.exponent(0) as usize] = c.clone();
        }
        Some(out)
    }

    pub fn eval_univariate(&self, x: &BigInt) -> Option<BigInt> {
        let coeffs = self.univariate_coefficients()?;
        Some(horner(&coeffs, x))
    }

    /// Parses sums of terms like `2*x1^2*x3`, `-x0x2`, `5`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        PolyParser {
            s: text.as_bytes(),
            pos: 0,
        }
        .parse()
    }
}

pub(crate) fn horner(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

impl Add for &AssocPoly {
    type Output = AssocPoly;
    fn add(self, rhs: &AssocPoly) -> AssocPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &AssocPoly {
    type Output = AssocPoly;
    fn sub(self, rhs: &AssocPoly) -> AssocPoly {
        self + &(-rhs)
    }
}

impl Neg for &AssocPoly {
    type Output = AssocPoly;
    fn neg(self) -> AssocPoly {
        AssocPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &AssocPoly {
    type Output = AssocPoly;
    fn mul(self, rhs: &AssocPoly) -> AssocPoly {
        let mut out = AssocPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for AssocPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let abs = c.abs();
            let letters: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                    .collect();
            if letters.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", letters.join("*"))?;
            } else {
                write!(f, "{abs}*{}", letters.join("*"))?;
            }
        }
        Ok(())
    }
}

struct PolyParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl PolyParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> ParseError {
        ParseError::new(self.pos, msg)
    }

    fn number(&mut self) -> Option<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn big_number(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn parse(mut self) -> Result<AssocPoly, ParseError> {
        let mut out = AssocPoly::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if !first => break,
                None => return Err(self.err("empty polynomial")),
                Some(b'+') => {
                    self.pos += 1;
                    BigInt::one()
                }
                Some(b'-') => {
                    self.pos += 1;
                    -BigInt::one()
                }
                Some(_) if first => BigInt::one(),
                Some(_) => return Err(self.err("expected '+' or '-'")),
            };
            first = false;
            let (m, c) = self.term()?;
            out.add_term(m, sign * c);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(AssocMonomial, BigInt), ParseError> {
        let mut coeff = BigInt::one();
        let mut mono = AssocMonomial::one();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    coeff *= self.big_number().ok_or_else(|| self.err("bad number"))?;
                }
                Some(b'x') => {
                    self.pos += 1;
                    let i = self.number().ok_or_else(|| self.err("expected generator index"))?;
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        e = self.number().ok_or_else(|| self.err("expected exponent"))? as u32;
                    }
                    let mut v = vec![0; i as usize + 1];
                    v[i as usize] = e;
                    mono = mono.mul(&AssocMonomial::new(v));
                }
                _ => return Err(self.err("expected a factor")),
            }
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(b'x') => {}
                _ => break,
            }
        }
        Ok((mono, coeff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = AssocPoly::parse("x2*x3 + 2*x1^2 - 3").unwrap();
        let q = AssocPoly::parse("x3x2").unwrap();
        assert_eq!((&p - &q).to_string(), "-3 + 2*x1^2".to_string());
        let sq = &q * &q;
        assert_eq!(sq.to_string(), "x2^2*x3^2");
        assert!(AssocPoly::parse("x2 +").is_err());
    }

    #[test]
    fn univariate_eval() {
        let c: Vec<BigInt> = [0, -2, 1].iter().map(|&v| BigInt::from(v)).collect();
        let p = AssocPoly::univariate(&c);
        assert_eq!(p.eval_univariate(&BigInt::from(2)), Some(BigInt::zero()));
        assert_eq!(p.eval_univariate(&BigInt::from(3)), Some(BigInt::from(3)));
        assert_eq!(p.univariate_coefficients().unwrap(), c);
    }
}
