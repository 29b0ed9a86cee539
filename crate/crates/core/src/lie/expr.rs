//! Unreduced Lie expressions and their text syntax.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := INT ['*'] factor | factor | '0'
//! factor  := 'x' INT | '[' expr (',' expr)+ [';' expr (',' expr)*] ']' | '(' expr ')'
//! ```
//!
//! A bracket list is left-normed: `[a,b;c,d]` is `[[[a,b],c],d]`, and the
//! `;` separating head from tail is interchangeable with `,`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: &str) -> Self {
        ParseError {
            offset,
            message: message.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawExpr {
    Zero,
    Gen(usize),
    Sum(Vec<RawExpr>),
    Scale(BigInt, Box<RawExpr>),
    Bracket(Box<RawExpr>, Box<RawExpr>),
}

impl RawExpr {
    pub fn gen(i: usize) -> Self {
        RawExpr::Gen(i)
    }

    pub fn bracket(a: RawExpr, b: RawExpr) -> Self {
        RawExpr::Bracket(Box::new(a), Box::new(b))
    }

    pub fn scale(c: impl Into<BigInt>, e: RawExpr) -> Self {
        RawExpr::Scale(c.into(), Box::new(e))
    }

    pub fn sum(terms: Vec<RawExpr>) -> Self {
        RawExpr::Sum(terms)
    }

    /// `[...[[x_l0, x_l1], x_l2], ..., x_lk]`; a single letter is the
    /// generator itself.
    pub fn left_normed(letters: &[usize]) -> Self {
        let mut it = letters.iter();
        let Some(&first) = it.next() else {
            return RawExpr::Zero;
        };
        it.fold(RawExpr::Gen(first), |acc, &l| RawExpr::bracket(acc, RawExpr::Gen(l)))
    }

    pub fn negated(self) -> Self {
        RawExpr::scale(-1, self)
    }

    /// Largest generator index mentioned, if any.
    pub fn max_generator(&self) -> Option<usize> {
        match self {
            RawExpr::Zero => None,
            RawExpr::Gen(i) => Some(*i),
            RawExpr::Sum(ts) => ts.iter().filter_map(|t| t.max_generator()).max(),
            RawExpr::Scale(_, e) => e.max_generator(),
            RawExpr::Bracket(a, b) => a.max_generator().max(b.max_generator()),
        }
    }
}

impl fmt::Display for RawExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RawExpr::Zero => f.write_str("0"),
            RawExpr::Gen(i) => write!(f, "x{i}"),
            RawExpr::Sum(ts) if ts.is_empty() => f.write_str("0"),
            RawExpr::Sum(ts) => {
                for (k, t) in ts.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
            RawExpr::Scale(c, e) => write!(f, "{c}*({e})"),
            RawExpr::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<RawExpr, ParseError> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
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

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
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

    fn expr(&mut self) -> Result<RawExpr, ParseError> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            terms.push(if negative { t.negated() } else { t });
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            RawExpr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<RawExpr, ParseError> {
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let at = self.pos;
            let c = self.integer().ok_or_else(|| self.err("bad integer"))?;
            let has_star = self.peek() == Some(b'*');
            if has_star {
                self.pos += 1;
            }
            if has_star || matches!(self.peek(), Some(b'x' | b'[' | b'(')) {
                let f = self.factor()?;
                return Ok(if c.is_one() { f } else { RawExpr::scale(c, f) });
            }
            if c.is_zero() {
                return Ok(RawExpr::Zero);
            }
            return Err(ParseError::new(at, "a nonzero constant is not a Lie element"));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<RawExpr, ParseError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                if self.s.get(self.pos) == Some(&b'_') {
                    self.pos += 1;
                }
                let i = self.integer().ok_or_else(|| self.err("expected generator index"))?;
                let i: usize = i.try_into().map_err(|_| self.err("generator index too large"))?;
                Ok(RawExpr::Gen(i))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'[') => {
                let open = self.pos;
                self.pos += 1;
                let mut items = vec![self.expr()?];
                let mut seen_tail = false;
                loop {
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                        }
                        Some(b';') if !seen_tail => {
                            if items.len() != 2 {
                                return Err(self.err("';' must follow exactly two head entries"));
                            }
                            seen_tail = true;
                            self.pos += 1;
                        }
                        Some(b']') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.err("expected ',', ';' or ']'")),
                    }
                    items.push(self.expr()?);
                }
                if items.len() < 2 {
                    return Err(ParseError::new(open, "a bracket needs at least two entries"));
                }
                let mut it = items.into_iter();
                let head = it.next().expect("two items");
                Ok(it.fold(head, RawExpr::bracket))
            }
            _ => Err(self.err("expected a generator, '[' or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_terms() {
        let e = parse_expr("2*[x2,x0;x1] - x3").unwrap();
        let expected = RawExpr::Sum(vec![
            RawExpr::scale(2, RawExpr::left_normed(&[2, 0, 1])),
            RawExpr::Gen(3).negated(),
        ]);
        assert_eq!(e, expected);
        assert_eq!(parse_expr("[[x1,x2],x0]").unwrap(), RawExpr::left_normed(&[1, 2, 0]));
        assert_eq!(parse_expr("[x1,x2,x0]").unwrap(), RawExpr::left_normed(&[1, 2, 0]));
        assert_eq!(parse_expr(" 0 ").unwrap(), RawExpr::Zero);
        assert_eq!(parse_expr("x_4").unwrap(), RawExpr::Gen(4));
    }

    #[test]
    fn reports_offsets() {
        let err = parse_expr("[x1 x2]").unwrap_err();
        assert_eq!(err.offset, 4);
        assert!(parse_expr("3").is_err());
        assert!(parse_expr("[x1]").is_err());
        assert!(parse_expr("[x1,x2,x3;x4]").is_err());
        assert_eq!(parse_expr("x1 +").unwrap_err().offset, 4);
    }
}
