//! Text form of polynomials.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ['^' integer]
//! atom   := integer | 'x' integer | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants.

use std::sync::Arc;

use num_bigint::BigInt;

use super::field::Field;
use super::poly::{Polynomial, Ring, RingExt};
use crate::error::{Error, Result};

pub fn parse_polynomial<F: Field>(ring: &Arc<Ring<F>>, text: &str) -> Result<Polynomial<F>> {
    let mut p = Parser { ring, src: text.as_bytes(), pos: 0 };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(value)
}

struct Parser<'a, F: Field> {
    ring: &'a Arc<Ring<F>>,
    src: &'a [u8],
    pos: usize,
}

impl<F: Field> Parser<'_, F> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut negate = false;
        match self.peek() {
            Some(b'+') => self.pos += 1,
            Some(b'-') => {
                self.pos += 1;
                negate = true;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let f = self.factor()?;
                    if !f.is_constant() || f.is_zero() {
                        self.pos = at;
                        return Err(self.error("can only divide by a nonzero constant"));
                    }
                    let c = self.ring.field().inv(&f.terms()[0].1);
                    acc = acc.scale(&c);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                let v: BigInt = digits.parse().expect("digits parse");
                Ok(self.ring.constant(self.ring.field().from_bigint(&v)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii name");
                let index = name
                    .strip_prefix('x')
                    .filter(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
                    .and_then(|rest| rest.parse::<usize>().ok())
                    .filter(|&i| i < self.ring.nvars());
                match index {
                    Some(i) => Ok(self.ring.var(i)),
                    None => Err(Error::UnknownVariable { name: name.to_string(), offset: start }),
                }
            }
            Some(c) => Err(self.error(format!("unexpected '{}'", c as char))),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::Syntax { offset: start, message: "integer too large".into() })
    }
}

/// Prints terms in descending grevlex order, e.g. `x0^3 + 2*x1*x2^2 - x3^3`.
pub fn format_polynomial<F: Field>(p: &Polynomial<F>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let field = p.field();
    let ring = p.ring();
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().iter().enumerate() {
        let coeff = field.format(c);
        let (negative, magnitude) = match coeff.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, coeff),
        };
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        if magnitude != "1" || m.is_one() {
            factors.push(magnitude);
        }
        for i in 0..ring.nvars() {
            match m.exp(i) {
                0 => {}
                1 => factors.push(ring.var_name(i)),
                e => factors.push(format!("{}^{e}", ring.var_name(i))),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::field::{PrimeField, Rationals};
    use crate::polyring::monomial::Monomial;
    use proptest::prelude::*;

    #[test]
    fn parses_and_prints() {
        let r = Ring::new(Rationals, 4);
        let p = parse_polynomial(&r, "x0^3 + 2*x1*x2^2 - x3^3").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.to_string(), "x0^3 + 2*x1*x2^2 - x3^3");
        let v3 = parse_polynomial(&r, "x3*(x0^2+x1^2+x2^2)").unwrap();
        assert_eq!(v3.to_string(), "x0^2*x3 + x1^2*x3 + x2^2*x3");
        let half = parse_polynomial(&r, "-x0/2 + 3").unwrap();
        assert_eq!(half.to_string(), "-1/2*x0 + 3");
        assert_eq!(parse_polynomial(&r, &half.to_string()).unwrap(), half);
    }

    #[test]
    fn syntax_errors() {
        let r = Ring::new(Rationals, 4);
        assert_eq!(
            parse_polynomial(&r, "x0^2 +"),
            Err(Error::Syntax { offset: 6, message: "unexpected end of input".into() })
        );
        assert_eq!(
            parse_polynomial(&r, "x0 + y1"),
            Err(Error::UnknownVariable { name: "y1".into(), offset: 5 })
        );
        assert!(matches!(parse_polynomial(&r, "x4"), Err(Error::UnknownVariable { .. })));
        assert!(matches!(parse_polynomial(&r, "x0 x1"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_polynomial(&r, "x0/x1"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn prime_field_prints_symmetric() {
        let r = Ring::new(PrimeField::default(), 4);
        let p = parse_polynomial(&r, "32002*x0 + 5").unwrap();
        assert_eq!(p.to_string(), "-x0 + 5");
    }

    proptest! {
        #[test]
        fn round_trip(t in proptest::collection::vec((-50i64..50, proptest::collection::vec(0u16..4, 4)), 0..8)) {
            let r = Ring::new(PrimeField::default(), 4);
            let f = r.field();
            let p = r.from_terms(t.iter().map(|(c, e)| (Monomial::new(e), f.from_i64(*c))).collect());
            prop_assert_eq!(parse_polynomial(&r, &p.to_string()).unwrap(), p);
        }
    }
}
