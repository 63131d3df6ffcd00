//! Text and JSON forms of [`UPolynomial`].
//!
//! Text: terms in ascending monomial order, e.g. `x1*z + z^2` or
//! `2*x1^3*x2 - x4*y^2`. Unit coefficients and unit exponents are elided and
//! the zero polynomial prints as `0`. The parser also accepts the Unicode
//! minus sign and arbitrary whitespace.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Coeff, Monomial, Partition, UPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {position}: {message}")]
pub struct ParseError {
    /// Byte offset for text input, `line:column` for JSON input.
    pub position: String,
    pub message: String,
}

impl ParseError {
    fn at(pos: usize, message: impl Into<String>) -> Self {
        Self {
            position: format!("byte {pos}"),
            message: message.into(),
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, coeff: Coeff, xname: &str) -> fmt::Result {
    let abs = coeff.unsigned_abs();
    let mut factors: Vec<String> = Vec::new();
    if m.is_one() || abs != 1 {
        factors.push(abs.to_string());
    }
    for (part, mult) in m.parts().blocks().collect::<Vec<_>>().into_iter().rev() {
        factors.push(power(xname, Some(part), mult));
    }
    if m.y_exp() > 0 {
        factors.push(power("y", None, m.y_exp()));
    }
    if m.z_exp() > 0 {
        factors.push(power("z", None, m.z_exp()));
    }
    f.write_str(&factors.join("*"))
}

fn power(var: &str, index: Option<u32>, exp: u32) -> String {
    let base = match index {
        Some(i) => format!("{var}{i}"),
        None => var.to_string(),
    };
    if exp == 1 {
        base
    } else {
        format!("{base}^{exp}")
    }
}

/// Text form with the partition-indexed variables renamed.
pub struct Renamed<'a> {
    poly: &'a UPolynomial,
    xname: &'a str,
}

impl fmt::Display for Renamed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.write_text(f, self.xname)
    }
}

impl fmt::Display for UPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_text(f, "x")
    }
}

impl UPolynomial {
    /// Displays with `xname` in place of `x`, e.g. `p` for power sums.
    pub fn display_with<'a>(&'a self, xname: &'a str) -> Renamed<'a> {
        Renamed { poly: self, xname }
    }

    fn write_text(&self, f: &mut fmt::Formatter<'_>, xname: &str) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_monomial(f, m, c, xname)?;
        }
        Ok(())
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    /// Consumes `-` or U+2212 and returns true, or `+` and returns false.
    fn sign(&mut self) -> Option<bool> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if rest.starts_with("\u{2212}".as_bytes()) {
            self.pos += 3;
            Some(true)
        } else if rest.first() == Some(&b'-') {
            self.pos += 1;
            Some(true)
        } else if rest.first() == Some(&b'+') {
            self.pos += 1;
            Some(false)
        } else {
            None
        }
    }

    fn number(&mut self) -> Result<u128, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::at(start, "expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError::at(start, "number out of range"))
    }

    fn small_number(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let n = self.number()?;
        u32::try_from(n).map_err(|_| ParseError::at(start, "exponent or index out of range"))
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.small_number()
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<(Monomial, u128), ParseError> {
        let mut coeff: u128 = 1;
        let mut parts = Vec::new();
        let (mut y, mut z) = (0u32, 0u32);
        loop {
            let start = self.pos;
            match self.peek() {
                Some(b'0'..=b'9') => {
                    let n = self.number()?;
                    coeff = coeff
                        .checked_mul(n)
                        .ok_or_else(|| ParseError::at(start, "coefficient overflow"))?;
                }
                Some(b'x') => {
                    self.pos += 1;
                    let at = self.pos;
                    let i = self.small_number()?;
                    if i == 0 {
                        return Err(ParseError::at(at, "x index must be positive"));
                    }
                    let e = self.exponent()?;
                    if parts.len() + e as usize > u16::MAX as usize {
                        return Err(ParseError::at(start, "too many x factors"));
                    }
                    parts.extend(std::iter::repeat_n(i, e as usize));
                }
                Some(b'y') => {
                    self.pos += 1;
                    y = y
                        .checked_add(self.exponent()?)
                        .ok_or_else(|| ParseError::at(start, "exponent overflow"))?;
                }
                Some(b'z') => {
                    self.pos += 1;
                    z = z
                        .checked_add(self.exponent()?)
                        .ok_or_else(|| ParseError::at(start, "exponent overflow"))?;
                }
                _ => return Err(ParseError::at(self.pos, "expected a factor")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        let parts = Partition::new(parts).map_err(|e| ParseError::at(self.pos, e.to_string()))?;
        Ok((Monomial::new(parts, y, z), coeff))
    }
}

impl FromStr for UPolynomial {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut lx = Lexer {
            src: s.as_bytes(),
            pos: 0,
        };
        let mut terms = Vec::new();
        let mut negative = lx.sign().unwrap_or(false);
        loop {
            let (m, c) = lx.term()?;
            let c = Coeff::try_from(c).map_err(|_| ParseError::at(lx.pos, "coefficient overflow"))?;
            terms.push((m, if negative { -c } else { c }));
            if lx.peek().is_none() {
                break;
            }
            negative = lx
                .sign()
                .ok_or_else(|| ParseError::at(lx.pos, "expected '+' or '-'"))?;
        }
        Ok(Self::from_terms(terms))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub y: u32,
    pub z: u32,
    pub parts: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<TermJson>,
}

impl From<&UPolynomial> for PolyJson {
    fn from(p: &UPolynomial) -> Self {
        Self {
            terms: p
                .terms()
                .map(|(m, c)| TermJson {
                    c: c.to_string(),
                    y: m.y_exp(),
                    z: m.z_exp(),
                    parts: m.parts().to_vec(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for UPolynomial {
    type Error = ParseError;

    fn try_from(json: PolyJson) -> Result<Self, ParseError> {
        let mut terms = Vec::with_capacity(json.terms.len());
        for (i, t) in json.terms.into_iter().enumerate() {
            let bad = |msg: String| ParseError {
                position: format!("term {i}"),
                message: msg,
            };
            let c: Coeff = t
                .c
                .parse()
                .map_err(|_| bad(format!("invalid coefficient {:?}", t.c)))?;
            if t.parts.windows(2).any(|w| w[0] < w[1]) {
                return Err(bad("parts must be non-increasing".into()));
            }
            let parts = Partition::new(t.parts).map_err(|e| bad(e.to_string()))?;
            terms.push((Monomial::new(parts, t.y, t.z), c));
        }
        Ok(Self::from_terms(terms))
    }
}

impl UPolynomial {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from(self)).expect("polynomial serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, ParseError> {
        let json: PolyJson = serde_json::from_str(s).map_err(|e| ParseError {
            position: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        Self::try_from(json)
    }
}
