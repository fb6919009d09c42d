use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("integer overflow in trace polynomial arithmetic")]
pub struct OverflowError;

/// `Σ c · αⁱ βʲ γᵏ` with integer coefficients, keyed by `(i, j, k)`.
///
/// Text form: terms in descending `(i, j, k)` order, e.g.
/// `a^2 - a*b*g + b^2 + g^2 - 2`; `0` for the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TracePolynomial {
    terms: BTreeMap<(u32, u32, u32), i64>,
}

type Exps = (u32, u32, u32);

fn add_exps(x: Exps, y: Exps) -> Result<Exps, OverflowError> {
    Ok((
        x.0.checked_add(y.0).ok_or(OverflowError)?,
        x.1.checked_add(y.1).ok_or(OverflowError)?,
        x.2.checked_add(y.2).ok_or(OverflowError)?,
    ))
}

impl TracePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0, 0, 0)
    }

    pub fn monomial(c: i64, i: u32, j: u32, k: u32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((i, j, k), c);
        }
        TracePolynomial { terms }
    }

    /// `α = tr A`
    pub fn alpha() -> Self {
        Self::monomial(1, 1, 0, 0)
    }

    /// `β = tr B`
    pub fn beta() -> Self {
        Self::monomial(1, 0, 1, 0)
    }

    /// `γ = tr AB`
    pub fn gamma() -> Self {
        Self::monomial(1, 0, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, i: u32, j: u32, k: u32) -> i64 {
        self.terms.get(&(i, j, k)).copied().unwrap_or(0)
    }

    /// `((i, j, k), c)` in descending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32, u32), i64)> + '_ {
        self.terms.iter().rev().map(|(&e, &c)| (e, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j, k)| i.saturating_add(j).saturating_add(k)).max()
    }

    fn accumulate(&mut self, e: Exps, c: i64) -> Result<(), OverflowError> {
        if c == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry = entry.checked_add(c).ok_or(OverflowError)?;
        if *entry == 0 {
            self.terms.remove(&e);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, OverflowError> {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.accumulate(e, c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, OverflowError> {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.accumulate(e, c.checked_neg().ok_or(OverflowError)?)?;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, OverflowError> {
        let mut out = Self::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                out.accumulate(add_exps(e1, e2)?, c1.checked_mul(c2).ok_or(OverflowError)?)?;
            }
        }
        Ok(out)
    }

    pub fn eval(&self, alpha: Complex64, beta: Complex64, gamma: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(i, j, k), &c)| alpha.powu(i) * beta.powu(j) * gamma.powu(k) * c as f64)
            .sum()
    }
}

impl fmt::Display for TracePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, ((i, j, k), c)) in self.terms().enumerate() {
            match (n, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.unsigned_abs();
            let mut factors: Vec<String> = Vec::new();
            if mag != 1 || (i, j, k) == (0, 0, 0) {
                factors.push(mag.to_string());
            }
            for (name, e) in [("a", i), ("b", j), ("g", k)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {offset}")]
pub struct ParsePolynomialError {
    pub offset: usize,
    pub message: &'static str,
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &'static str) -> ParsePolynomialError {
        ParsePolynomialError {
            offset: self.pos,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn number<T: FromStr>(&mut self) -> Result<T, ParsePolynomialError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| ParsePolynomialError {
                offset: start,
                message: "number out of range",
            })
    }

    /// `factor ('*' factor)*` with factors `n`, `a`, `b`, `g`, optionally `^n`.
    fn term(&mut self) -> Result<(Exps, u64), ParsePolynomialError> {
        let mut e: Exps = (0, 0, 0);
        let mut c: u64 = 1;
        loop {
            match self.peek() {
                Some(d) if d.is_ascii_digit() => {
                    let n: u64 = self.number()?;
                    c = c.checked_mul(n).ok_or_else(|| self.err("coefficient out of range"))?;
                }
                Some(v @ (b'a' | b'b' | b'g')) => {
                    self.pos += 1;
                    let mut p = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        p = self.number()?;
                    }
                    let add = match v {
                        b'a' => (p, 0, 0),
                        b'b' => (0, p, 0),
                        _ => (0, 0, p),
                    };
                    e = add_exps(e, add).map_err(|_| self.err("exponent out of range"))?;
                }
                _ => return Err(self.err("expected a number or one of a, b, g")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((e, c));
            }
        }
    }
}

impl FromStr for TracePolynomial {
    type Err = ParsePolynomialError;

    fn from_str(s: &str) -> Result<Self, ParsePolynomialError> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let mut out = TracePolynomial::zero();
        let mut negative = false;
        if p.peek() == Some(b'-') {
            p.pos += 1;
            negative = true;
        }
        loop {
            let (e, mag) = p.term()?;
            let signed = if negative { -(mag as i128) } else { mag as i128 };
            let c = i64::try_from(signed).map_err(|_| p.err("coefficient out of range"))?;
            out.accumulate(e, c).map_err(|_| p.err("coefficient out of range"))?;
            match p.peek() {
                None => return Ok(out),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return Err(p.err("expected + or -")),
            }
            p.pos += 1;
        }
    }
}
