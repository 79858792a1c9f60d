//! A small infix grammar for free-algebra elements.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' exp]
//! atom   := integer | 'q' | 'f' label | '(' expr ')' | '[' n ']' ['_' d] | '{' name '}'
//! ```
//! `f1^(2)` is a divided power, `f1^2` an ordinary power, `[3]_1` a quantum
//! integer, `{name}` an element bound by the caller, and juxtaposition
//! multiplies.

use std::sync::Arc;

use super::FreeElt;
use crate::cartan::CartanDatum;
use crate::error::{Error, Result};
use crate::qarith::{q_integer, BaseRing, LaurentPoly, RationalFn};

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    datum: &'a Arc<CartanDatum>,
    ring: BaseRing,
    names: &'a [(&'a str, &'a FreeElt)],
}

pub(super) fn parse(
    datum: &Arc<CartanDatum>,
    ring: BaseRing,
    s: &str,
    names: &[(&str, &FreeElt)],
) -> Result<FreeElt> {
    let chars = s.replace('\u{2212}', "-").chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { chars, pos: 0, datum, ring, names };
    let e = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, msg: &str) -> Error {
        let rest: String = self.chars[self.pos.min(self.chars.len())..].iter().collect();
        Error::Parse(format!("{msg} at '{rest}'"))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn scalar(&self, p: LaurentPoly) -> Result<FreeElt> {
        let p = match self.ring {
            BaseRing::Integers => p,
            BaseRing::ModEps(e) => p.reduce_mod(e as i64)?,
        };
        Ok(FreeElt::scalar(self.datum, RationalFn::from_laurent(p)))
    }

    fn expr(&mut self) -> Result<FreeElt> {
        let mut acc = FreeElt::zero(self.datum, self.ring);
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if neg { acc.checked_sub(&t)? } else { acc.checked_add(&t)? };
        }
        Ok(acc)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == 'q' || c == 'f' || c == '(' || c == '[' || c == '{')
    }

    fn term(&mut self) -> Result<FreeElt> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some('*') {
                self.pos += 1;
            } else if !self.starts_atom() {
                break;
            }
            let f = self.factor()?;
            acc = acc.multiply(&f)?;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("expected integer"))
    }

    /// Exponent after '^': returns (value, parenthesized).
    fn exponent(&mut self) -> Result<(i64, bool)> {
        if self.peek() == Some('(') {
            self.pos += 1;
            let n = self.integer()?;
            self.expect(')')?;
            Ok((n, true))
        } else {
            Ok((self.integer()?, false))
        }
    }

    fn factor(&mut self) -> Result<FreeElt> {
        match self.peek() {
            Some('q') => {
                self.pos += 1;
                let mut e = 1;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    e = self.exponent()?.0;
                }
                self.scalar(LaurentPoly::monomial(1, e as i32, BaseRing::Integers))
            }
            Some('f') => {
                self.pos += 1;
                let i = self.label()?;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    let (n, divided) = self.exponent()?;
                    if n < 0 {
                        return Err(self.error("negative power"));
                    }
                    if divided {
                        Ok(FreeElt::generator(self.datum, self.ring, i, n as u32))
                    } else {
                        Ok(FreeElt::generator(self.datum, self.ring, i, 1).pow(n as u32))
                    }
                } else {
                    Ok(FreeElt::generator(self.datum, self.ring, i, 1))
                }
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                self.power_suffix(e)
            }
            Some('[') => {
                self.pos += 1;
                let n = self.integer()?;
                self.expect(']')?;
                let mut d = 1;
                if self.peek() == Some('_') {
                    self.pos += 1;
                    d = self.integer()?;
                    if d < 1 {
                        return Err(self.error("quantum integer needs d >= 1"));
                    }
                }
                let s = self.scalar(q_integer(n, d as u32))?;
                self.power_suffix(s)
            }
            Some('{') => {
                self.pos += 1;
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c != '}') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                self.expect('}')?;
                let e = match self.names.iter().find(|(n, _)| *n == name) {
                    Some((_, e)) => (*e).clone(),
                    None => return Err(self.error(&format!("unbound name {name}"))),
                };
                if *e.datum() != *self.datum || e.ring() != self.ring {
                    return Err(Error::DatumMismatch);
                }
                self.power_suffix(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let s = self.scalar(LaurentPoly::constant(n, BaseRing::Integers))?;
                self.power_suffix(s)
            }
            _ => Err(self.error("expected a factor")),
        }
    }

    fn power_suffix(&mut self, e: FreeElt) -> Result<FreeElt> {
        if self.peek() == Some('^') {
            self.pos += 1;
            let (n, _) = self.exponent()?;
            if n < 0 {
                return Err(self.error("negative power"));
            }
            return Ok(e.pow(n as u32));
        }
        Ok(e)
    }

    fn label(&mut self) -> Result<usize> {
        if self.peek() == Some('_') {
            self.pos += 1;
        }
        let braced = self.peek() == Some('{');
        if braced {
            self.pos += 1;
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a vertex label"));
        }
        while matches!(self.peek(), Some('p' | '\'' | '\u{2032}' | '\u{2033}')) {
            self.pos += 1;
        }
        let l: String = self.chars[start..self.pos].iter().collect();
        if braced {
            self.expect('}')?;
        }
        self.datum.index_of(&l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::builtin;

    #[test]
    fn grammar() {
        let x = Arc::new(builtin("D4").unwrap().0);
        let z = BaseRing::Integers;
        let p = |s: &str| parse(&x, z, s, &[]);
        let a = p("f1 f2 - q f2 f1").unwrap();
        let b = p("f_1*f_{2} - q^(1)*f2*f1").unwrap();
        assert_eq!(a, b);
        let c = p("[2]_1 f2^(2)").unwrap();
        assert_eq!(c, p("f2^2").unwrap());
        assert_eq!(p("f2'*f2″").unwrap(), p("f2p f2pp").unwrap());
        assert!(p("f7").is_err());
        assert!(p("f1 +").is_err());
        assert!(p("(f1").is_err());
    }

    #[test]
    fn named_atoms() {
        let x = Arc::new(builtin("A2").unwrap().0);
        let z = BaseRing::Integers;
        let r = parse(&x, z, "f1 f2 - q f2 f1", &[]).unwrap();
        let names = [("12", &r)];
        let a = parse(&x, z, "{12} f1 - q^-1 f1 {12}", &names).unwrap();
        let b = parse(&x, z, "(f1 f2 - q f2 f1) f1 - q^-1 f1 (f1 f2 - q f2 f1)", &[]).unwrap();
        assert_eq!(a, b);
        assert!(parse(&x, z, "{21}", &names).is_err());
    }
}
