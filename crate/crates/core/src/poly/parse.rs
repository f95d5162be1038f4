use super::{Poly, PolyError, PolyRing};
use crate::arith::Ring;

pub(super) struct Parser<'a, R: Ring> {
    ring: &'a PolyRing<R>,
    src: &'a [u8],
    pos: usize,
}

impl<'a, R: Ring> Parser<'a, R> {
    pub(super) fn new(ring: &'a PolyRing<R>, s: &'a str) -> Self {
        Self { ring, src: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: &str) -> Result<T, PolyError> {
        Err(PolyError::Parse { pos: self.pos, msg: msg.to_string() })
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(super) fn parse(mut self) -> Result<Poly<R::Elem>, PolyError> {
        let f = self.expr()?;
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(f)
    }

    fn expr(&mut self) -> Result<Poly<R::Elem>, PolyError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'+') {
                let t = self.unary()?;
                acc = self.ring.add(&acc, &t);
            } else if self.eat(b'-') {
                let t = self.unary()?;
                acc = self.ring.sub(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly<R::Elem>, PolyError> {
        if self.eat(b'-') {
            let f = self.unary()?;
            return Ok(self.ring.neg(&f));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.term()
    }

    fn term(&mut self) -> Result<Poly<R::Elem>, PolyError> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                let f = self.power()?;
                acc = self.ring.mul(&acc, &f);
            } else if self.eat(b'/') {
                let d = self.integer()?;
                let k = self.ring.coeffs();
                let Some(inv) = k.inv(&k.from_i64(d)) else {
                    return self.err("divisor is not invertible in the coefficient ring");
                };
                acc = self.ring.scale(&acc, &inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Poly<R::Elem>, PolyError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            if !(0..=1000).contains(&e) {
                return self.err("exponent out of range");
            }
            return Ok(self.ring.pow(&base, e as u32));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse::<i64>().or_else(|_| self.err("integer too large"))
    }

    fn atom(&mut self) -> Result<Poly<R::Elem>, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let f = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(f)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.ring.from_int(n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                self.ring.var_named(name)
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}
