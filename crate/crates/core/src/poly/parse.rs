//! Parser for the canonical polynomial text form.
//!
//! Accepted grammar (whitespace is free between tokens):
//!
//! ```text
//! poly   := ['-'] term { ('+' | '-') term }
//! term   := integer [ '*' factors ] | factors
//! factors := factor { '*' factor }
//! factor := variable [ '^' integer ]
//! variable := 'd_' nat '_' nat | 't_' nat
//! ```

use num_bigint::BigInt;
use thiserror::Error;

use super::{Monomial, Polynomial, VarId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected `{found}` at byte {at}")]
    Unexpected { at: usize, found: char },
    #[error("invalid variable at byte {at}: {reason}")]
    InvalidVariable { at: usize, reason: &'static str },
    #[error("number at byte {at} does not fit an index or exponent")]
    NumberTooLarge { at: usize },
}

pub(crate) fn parse_polynomial(input: &str) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        bytes: input.as_bytes(),
        pos: 0,
    };
    let poly = p.polynomial()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(poly),
        Some(b) => Err(ParseError::Unexpected {
            at: p.pos,
            found: b as char,
        }),
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, want: u8) -> Result<(), ParseError> {
        match self.bump() {
            Some(b) if b == want => Ok(()),
            Some(b) => Err(ParseError::Unexpected {
                at: self.pos - 1,
                found: b as char,
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    fn polynomial(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        let mut negative = false;
        if self.peek() == Some(b'-') {
            self.bump();
            negative = true;
        }
        let mut poly = self.term(negative)?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let t = self.term(false)?;
                    poly += &t;
                }
                Some(b'-') => {
                    self.bump();
                    let t = self.term(true)?;
                    poly += &t;
                }
                _ => return Ok(poly),
            }
        }
    }

    fn term(&mut self, negative: bool) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        let mut need_factor;
        let mut coeff = match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let n = self.natural()?;
                self.skip_ws();
                need_factor = false;
                if self.peek() == Some(b'*') {
                    self.bump();
                    need_factor = true;
                }
                n
            }
            Some(b'd') | Some(b't') => {
                need_factor = true;
                BigInt::from(1)
            }
            Some(b) => {
                return Err(ParseError::Unexpected {
                    at: self.pos,
                    found: b as char,
                })
            }
            None => return Err(ParseError::UnexpectedEnd),
        };
        if negative {
            coeff = -coeff;
        }
        let mut exponents: Vec<(VarId, u32)> = Vec::new();
        while need_factor {
            self.skip_ws();
            match self.peek() {
                Some(b'd') | Some(b't') => {}
                Some(b) => {
                    return Err(ParseError::Unexpected {
                        at: self.pos,
                        found: b as char,
                    })
                }
                None => return Err(ParseError::UnexpectedEnd),
            }
            let var = self.variable()?;
            self.skip_ws();
            let exp = if self.peek() == Some(b'^') {
                self.bump();
                self.skip_ws();
                self.small_natural()?
            } else {
                1
            };
            exponents.push((var, exp));
            self.skip_ws();
            need_factor = self.peek() == Some(b'*');
            if need_factor {
                self.bump();
            }
        }
        Ok(Polynomial::monomial(
            Monomial::from_exponents(exponents),
            coeff,
        ))
    }

    fn variable(&mut self) -> Result<VarId, ParseError> {
        let at = self.pos;
        match self.bump() {
            Some(b'd') => {
                self.expect(b'_')?;
                let i = self.small_natural()?;
                self.expect(b'_')?;
                let j = self.small_natural()?;
                if i >= j {
                    return Err(ParseError::InvalidVariable {
                        at,
                        reason: "distance variable requires i < j",
                    });
                }
                Ok(VarId::Dist(i, j))
            }
            Some(b't') => {
                self.expect(b'_')?;
                let k = self.small_natural()?;
                if k < 2 {
                    return Err(ParseError::InvalidVariable {
                        at,
                        reason: "tau variable requires k >= 2",
                    });
                }
                Ok(VarId::Tau(k))
            }
            Some(b) => Err(ParseError::Unexpected {
                at,
                found: b as char,
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    fn natural(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return match self.peek() {
                Some(b) => Err(ParseError::Unexpected {
                    at: self.pos,
                    found: b as char,
                }),
                None => Err(ParseError::UnexpectedEnd),
            };
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit string"))
    }

    fn small_natural(&mut self) -> Result<u32, ParseError> {
        let at = self.pos;
        let n = self.natural()?;
        u32::try_from(&n).map_err(|_| ParseError::NumberTooLarge { at })
    }
}
