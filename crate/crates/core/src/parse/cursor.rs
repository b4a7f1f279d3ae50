use num_bigint::BigInt;

use super::ParseError;

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    /// Consumes `c` after optional whitespace.
    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    /// Consumes `c` with no whitespace skipping.
    pub fn eat_tight(&mut self, c: char) -> bool {
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char, name: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    pub fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    pub fn count_primes(&mut self) -> usize {
        let mut n = 0;
        while self.eat_tight('\'') {
            n += 1;
        }
        n
    }

    pub fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        self.integer_tight()
    }

    pub fn integer_tight(&mut self) -> Result<BigInt, ParseError> {
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error(&["integer"]));
        }
        self.pos += len;
        Ok(rest[..len].parse().expect("ascii digits"))
    }

    pub fn at_digit(&mut self) -> bool {
        self.peek().is_some_and(|c| c.is_ascii_digit())
    }

    pub fn finish(&mut self) -> Result<(), ParseError> {
        if self.peek().is_none() {
            Ok(())
        } else {
            Err(self.error(&["end of input"]))
        }
    }

    pub fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError {
            position: self.pos,
            expected: expected.to_vec(),
        }
    }

    pub fn error_at(&self, position: usize, expected: &[&'static str]) -> ParseError {
        ParseError {
            position,
            expected: expected.to_vec(),
        }
    }
}
