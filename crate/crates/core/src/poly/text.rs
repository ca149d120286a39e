//! Parser for the canonical polynomial text form.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! poly   := ['-'] term (('+' | '-') term)*
//! term   := coeff ['*' mono] | mono
//! coeff  := INT ['/' INT]
//! mono   := factor ('*' factor)*
//! factor := ('x[' INT ',' INT ']' | 't') ['^' INT]
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::Rational;
use super::monomial::{Grid, Monomial};
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Cursor {
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}")))
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos + 1,
            message: msg.into(),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn small(&mut self) -> Result<usize> {
        let v = self.integer()?;
        usize::try_from(v).map_err(|_| self.error("integer too large"))
    }
}

/// Parses a polynomial over `grid` with rational coefficients.
pub fn parse_polynomial(grid: Grid, src: &str) -> Result<Polynomial<Rational>> {
    let mut cur = Cursor::new(src);
    let mut terms = Vec::new();
    let mut negative = cur.eat('-');
    loop {
        let mut coeff = BigRational::from_integer(BigInt::from(1));
        let mut mono = grid.one();
        let mut have_factor = false;
        if matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
            let num = cur.integer()?;
            let den = if cur.eat('/') { cur.integer()? } else { BigInt::from(1) };
            if den == BigInt::from(0) {
                return Err(cur.error("zero denominator"));
            }
            coeff = BigRational::new(num, den);
            have_factor = true;
            if !cur.eat('*') {
                terms.push((mono, if negative { -coeff } else { coeff }));
                match next_sign(&mut cur)? {
                    Some(neg) => {
                        negative = neg;
                        continue;
                    }
                    None => break,
                }
            }
        }
        loop {
            let slot = match cur.peek() {
                Some('x') => {
                    cur.pos += 1;
                    cur.expect('[')?;
                    let i = cur.small()?;
                    cur.expect(',')?;
                    let j = cur.small()?;
                    cur.expect(']')?;
                    if !grid.contains(i, j) {
                        return Err(cur.error(format!("x[{i},{j}] outside the {}x{} grid", grid.rows, grid.cols)));
                    }
                    grid.index(i, j)
                }
                Some('t') => {
                    cur.pos += 1;
                    0
                }
                _ if have_factor => return Err(cur.error("expected a variable after '*'")),
                _ => return Err(cur.error("expected a coefficient or variable")),
            };
            let e = if cur.eat('^') { cur.small()? } else { 1 };
            let e = u8::try_from(e).map_err(|_| cur.error("exponent too large"))?;
            let mut exps = mono.exponents().to_vec();
            exps[slot] = exps[slot]
                .checked_add(e)
                .ok_or_else(|| cur.error("exponent too large"))?;
            mono = Monomial::from_exponents(exps);
            have_factor = true;
            if !cur.eat('*') {
                break;
            }
        }
        terms.push((mono, if negative { -coeff } else { coeff }));
        match next_sign(&mut cur)? {
            Some(neg) => negative = neg,
            None => break,
        }
    }
    if cur.peek().is_some() {
        return Err(cur.error("trailing input"));
    }
    Ok(Polynomial::from_terms(grid, terms))
}

fn next_sign(cur: &mut Cursor) -> Result<Option<bool>> {
    if cur.eat('+') {
        Ok(Some(false))
    } else if cur.eat('-') {
        Ok(Some(true))
    } else if cur.peek().is_none() {
        Ok(None)
    } else {
        Err(cur.error("expected '+' or '-'"))
    }
}
