//! Recursive-descent parser for slant expressions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := primary ('^' integer)*
//! primary:= integer | slant | '(' expr ')' | 'u' index | 'v' index
//!         | 'G' '[' index ',' index ']'
//! slant  := '<' cup '|' base '>'
//! cup    := atom ('.' atom)*
//! atom   := 'c' index | 'k0' '[' ident ']'
//! base   := 'pt' | 'S' | 'g' index
//! ```
//!
//! `u<i>`, `v<i>` and `G[i,j]` are the normal-form names of `<ci|pt>`,
//! `<ci|S>` and `<ci|gj>`, so printed normal forms parse back.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ast::{Atom, Base, SlantExpr};
use super::AlgebraContext;
use crate::error::{Error, Result};

pub fn parse_expr(text: &str, ctx: &AlgebraContext) -> Result<SlantExpr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ctx };
    let expr = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a AlgebraContext,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.peek();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digits"))
    }

    /// Index in `1..=max`.
    fn index(&mut self, what: &str, max: u32) -> Result<u32> {
        self.peek();
        let at = self.pos;
        let n = self.integer()?;
        match n.to_u32() {
            Some(i) if (1..=max).contains(&i) => Ok(i),
            _ => Err(Error::Syntax {
                pos: at,
                msg: format!("{what} index {n} out of range 1..={max}"),
            }),
        }
    }

    fn chern_index(&mut self) -> Result<u32> {
        self.index("Chern class", self.ctx.r())
    }

    fn loop_index(&mut self) -> Result<u32> {
        self.index("loop", 2 * self.ctx.genus())
    }

    fn ident(&mut self) -> Result<String> {
        self.peek();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos || self.src[start].is_ascii_digit() {
            self.pos = start;
            return self.err("expected identifier");
        }
        Ok(String::from_utf8(self.src[start..self.pos].to_vec()).expect("ascii"))
    }

    fn expr(&mut self) -> Result<SlantExpr> {
        let negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(b'+') {
                acc = acc.add(self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SlantExpr> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SlantExpr> {
        let mut acc = self.primary()?;
        while self.eat(b'^') {
            self.peek();
            let at = self.pos;
            let exp = self.integer()?;
            let exp = exp.to_u32().ok_or(Error::Syntax {
                pos: at,
                msg: format!("exponent {exp} too large"),
            })?;
            acc = acc.pow(exp);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<SlantExpr> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(SlantExpr::Int(self.integer()?)),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'<') => {
                self.pos += 1;
                self.slant()
            }
            Some(b'u') => {
                self.pos += 1;
                let i = self.chern_index()?;
                Ok(SlantExpr::slant(vec![Atom::Chern(i)], Base::Point))
            }
            Some(b'v') => {
                self.pos += 1;
                let i = self.chern_index()?;
                Ok(SlantExpr::slant(vec![Atom::Chern(i)], Base::Surface))
            }
            Some(b'G') => {
                self.pos += 1;
                self.expect(b'[')?;
                let i = self.chern_index()?;
                self.expect(b',')?;
                let j = self.loop_index()?;
                self.expect(b']')?;
                Ok(SlantExpr::slant(vec![Atom::Chern(i)], Base::Loop(j)))
            }
            Some(_) => self.err("expected integer, '(', '<', u<i>, v<i> or G[i,j]"),
            None => self.err("unexpected end of input"),
        }
    }

    fn slant(&mut self) -> Result<SlantExpr> {
        let mut cup = vec![self.atom()?];
        while self.eat(b'.') {
            cup.push(self.atom()?);
        }
        self.expect(b'|')?;
        let base = self.base()?;
        self.expect(b'>')?;
        Ok(SlantExpr::slant(cup, base))
    }

    fn atom(&mut self) -> Result<Atom> {
        self.peek();
        if self.src[self.pos..].starts_with(b"k0") {
            self.pos += 2;
            self.expect(b'[')?;
            let name = self.ident()?;
            self.expect(b']')?;
            return Ok(Atom::BaseClass(name));
        }
        if self.eat(b'c') {
            return Ok(Atom::Chern(self.chern_index()?));
        }
        self.err("expected atom c<i> or k0[name]")
    }

    fn base(&mut self) -> Result<Base> {
        self.peek();
        let rest = &self.src[self.pos..];
        if rest.starts_with(b"pt") {
            self.pos += 2;
            return Ok(Base::Point);
        }
        match rest.first() {
            Some(b'S') => {
                self.pos += 1;
                Ok(Base::Surface)
            }
            Some(b'g') => {
                self.pos += 1;
                Ok(Base::Loop(self.loop_index()?))
            }
            _ => self.err("expected base pt, S or g<j>"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(r: u32, g: u32) -> AlgebraContext {
        AlgebraContext::new(r, g, 0).unwrap()
    }

    #[test]
    fn parses_single_generator() {
        let e = parse_expr("<c1|pt>", &ctx(1, 1)).unwrap();
        assert_eq!(e, SlantExpr::slant(vec![Atom::Chern(1)], Base::Point));
    }

    #[test]
    fn parses_sum_of_products() {
        let e = parse_expr("2*<c1|g1>*<c1|g2> - <c1.c1|S>", &ctx(1, 1)).unwrap();
        let g1 = SlantExpr::slant(vec![Atom::Chern(1)], Base::Loop(1));
        let g2 = SlantExpr::slant(vec![Atom::Chern(1)], Base::Loop(2));
        let s = SlantExpr::slant(vec![Atom::Chern(1), Atom::Chern(1)], Base::Surface);
        assert_eq!(e, SlantExpr::int(2).mul(g1).mul(g2).sub(s));
    }

    #[test]
    fn whitespace_is_ignored() {
        let a = parse_expr(" < c1 . k0[ e0 ] | S > ^ 2 ", &ctx(1, 1)).unwrap();
        let b = parse_expr("<c1.k0[e0]|S>^2", &ctx(1, 1)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_invalid_base() {
        let err = parse_expr("<c1|x>", &ctx(1, 1)).unwrap_err();
        assert_eq!(err, Error::Syntax { pos: 4, msg: "expected base pt, S or g<j>".into() });
    }

    #[test]
    fn rejects_out_of_range_indices() {
        assert!(matches!(parse_expr("<c2|pt>", &ctx(1, 1)), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expr("<c1|g3>", &ctx(1, 1)), Err(Error::Syntax { pos: 5, .. })));
        assert!(parse_expr("G[1,0]", &ctx(1, 1)).is_err());
        assert!(parse_expr("<c1|g4>", &ctx(1, 2)).is_ok());
    }

    #[test]
    fn rejects_trailing_and_truncated_input() {
        assert!(parse_expr("<c1|pt> <c1|pt>", &ctx(1, 0)).is_err());
        assert!(parse_expr("(<c1|pt>", &ctx(1, 0)).is_err());
        assert!(parse_expr("", &ctx(1, 0)).is_err());
        assert!(parse_expr("2*", &ctx(1, 0)).is_err());
    }

    #[test]
    fn normal_form_names_parse() {
        let c = ctx(2, 1);
        assert_eq!(parse_expr("u2", &c).unwrap(), parse_expr("<c2|pt>", &c).unwrap());
        assert_eq!(parse_expr("v2", &c).unwrap(), parse_expr("<c2|S>", &c).unwrap());
        assert_eq!(parse_expr("G[2,1]", &c).unwrap(), parse_expr("<c2|g1>", &c).unwrap());
        assert!(parse_expr("-2*G[1,1]*G[1,2]", &c).is_ok());
    }
}
