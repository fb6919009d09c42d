//! Complex-number expressions for command-line input.
//!
//! ```text
//! list   := '(' items ')' | items
//! items  := expr (',' expr)*
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' unary)?
//! atom   := number ['i'] | 'i' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
//! func   := sqrt | exp | log | sin | cos | conj
//! ```
//!
//! Functions use principal branches.

use num_complex::Complex64;
use thiserror::Error;

/// Deepest nesting accepted before giving up.
pub const MAX_DEPTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {offset}")]
pub struct ExprError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> ExprError {
        ExprError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn descend(&mut self) -> Result<(), ExprError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err("expression nested too deeply"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Complex64, ExprError> {
        self.descend()?;
        let mut v = self.term()?;
        loop {
            if self.eat(b'+') {
                v += self.term()?;
            } else if self.eat(b'-') {
                v -= self.term()?;
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(v)
    }

    fn term(&mut self) -> Result<Complex64, ExprError> {
        let mut v = self.unary()?;
        loop {
            if self.eat(b'*') {
                v *= self.unary()?;
            } else if self.eat(b'/') {
                v /= self.unary()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<Complex64, ExprError> {
        self.descend()?;
        let v = if self.eat(b'-') {
            -self.unary()?
        } else if self.eat(b'+') {
            self.unary()?
        } else {
            self.power()?
        };
        self.depth -= 1;
        Ok(v)
    }

    fn power(&mut self) -> Result<Complex64, ExprError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.unary()?;
            if e.im == 0.0 && e.re.fract() == 0.0 && e.re.abs() <= 64.0 {
                return Ok(base.powi(e.re as i32));
            }
            return Ok(base.powc(e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<f64, ExprError> {
        let start = self.pos;
        let s = self.s;
        let digits = |p: &mut usize| {
            while *p < s.len() && s[*p].is_ascii_digit() {
                *p += 1;
            }
        };
        let mut p = self.pos;
        digits(&mut p);
        if p < s.len() && s[p] == b'.' {
            p += 1;
            digits(&mut p);
        }
        if p < s.len() && (s[p] == b'e' || s[p] == b'E') {
            let mut q = p + 1;
            if q < s.len() && (s[q] == b'+' || s[q] == b'-') {
                q += 1;
            }
            if q < s.len() && s[q].is_ascii_digit() {
                digits(&mut q);
                p = q;
            }
        }
        self.pos = p;
        std::str::from_utf8(&s[start..p])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or(ExprError {
                offset: start,
                message: "malformed number".into(),
            })
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).expect("ascii letters")
    }

    fn atom(&mut self) -> Result<Complex64, ExprError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let x = self.number()?;
                if self.s.get(self.pos) == Some(&b'i') && !self.s.get(self.pos + 1).is_some_and(|c| c.is_ascii_alphabetic()) {
                    self.pos += 1;
                    return Ok(Complex64::new(0.0, x));
                }
                Ok(Complex64::new(x, 0.0))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident().to_string();
                let f: fn(Complex64) -> Complex64 = match name.as_str() {
                    "i" => return Ok(Complex64::i()),
                    "pi" => return Ok(Complex64::new(std::f64::consts::PI, 0.0)),
                    "e" => return Ok(Complex64::new(std::f64::consts::E, 0.0)),
                    "sqrt" => |z| z.sqrt(),
                    "exp" => |z| z.exp(),
                    "log" => |z| z.ln(),
                    "sin" => |z| z.sin(),
                    "cos" => |z| z.cos(),
                    "conj" => |z| z.conj(),
                    _ => {
                        return Err(ExprError {
                            offset: start,
                            message: format!("unknown name {name:?}"),
                        })
                    }
                };
                self.expect(b'(')?;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(f(v))
            }
            Some(c) => Err(self.err(format!("unexpected {:?}", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn finish(&mut self) -> Result<(), ExprError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("unexpected {:?}", c as char))),
        }
    }
}

fn check_finite(v: Complex64, offset: usize) -> Result<Complex64, ExprError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ExprError {
            offset,
            message: format!("value {v} is not finite"),
        })
    }
}

pub fn parse_complex(s: &str) -> Result<Complex64, ExprError> {
    let mut p = Parser { s: s.as_bytes(), pos: 0, depth: 0 };
    let v = p.expr()?;
    p.finish()?;
    check_finite(v, 0)
}

impl Parser<'_> {
    fn items(&mut self) -> Result<Vec<Complex64>, ExprError> {
        let mut out = Vec::new();
        loop {
            let start = self.pos;
            out.push(check_finite(self.expr()?, start)?);
            if !self.eat(b',') {
                return Ok(out);
            }
        }
    }
}

/// A comma-separated list, optionally wrapped in one pair of parentheses.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>, ExprError> {
    let mut p = Parser { s: s.as_bytes(), pos: 0, depth: 0 };
    let plain = p.items().and_then(|v| p.finish().map(|_| v));
    if plain.is_ok() || !s.trim_start().starts_with('(') {
        return plain;
    }
    let mut p = Parser { s: s.as_bytes(), pos: 0, depth: 0 };
    let wrapped = p.expect(b'(').and_then(|_| p.items()).and_then(|v| {
        p.expect(b')')?;
        p.finish()?;
        Ok(v)
    });
    wrapped.or(plain)
}
