//! Recursive-descent parser for the `c*x^e*y + ...` expression syntax shared
//! by scalars and Ore-tower elements.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Target of [`parse_expression`]: how literals, variables and operators map
/// into some ring.
pub trait Builder {
    type Out;
    fn number(&self, n: &BigRational) -> Result<Self::Out>;
    fn variable(&self, name: &str) -> Result<Self::Out>;
    fn add(&self, a: Self::Out, b: Self::Out) -> Result<Self::Out>;
    fn neg(&self, a: Self::Out) -> Result<Self::Out>;
    fn mul(&self, a: Self::Out, b: Self::Out) -> Result<Self::Out>;
    fn div(&self, a: Self::Out, b: Self::Out) -> Result<Self::Out>;
    fn pow(&self, a: Self::Out, e: u32) -> Result<Self::Out>;
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Num(s.parse().unwrap()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(syntax(input, &format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

fn syntax(input: &str, message: &str) -> Error {
    Error::Syntax {
        input: input.to_string(),
        message: message.to_string(),
    }
}

struct Parser<'a, B: Builder> {
    input: &'a str,
    tokens: Vec<Token>,
    pos: usize,
    builder: &'a B,
}

impl<B: Builder> Parser<'_, B> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<B::Out> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = self.builder.neg(acc)?;
        }
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.builder.add(acc, t)?;
            } else if self.eat('-') {
                let t = self.term()?;
                let t = self.builder.neg(t)?;
                acc = self.builder.add(acc, t)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<B::Out> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                let f = self.power()?;
                acc = self.builder.mul(acc, f)?;
            } else if self.eat('/') {
                let f = self.power()?;
                acc = self.builder.div(acc, f)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<B::Out> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| syntax(self.input, "exponent too large"))?;
                    self.builder.pow(base, e)
                }
                _ => Err(syntax(self.input, "expected an exponent after `^`")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<B::Out> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                self.builder.number(&BigRational::from_integer(n))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                self.builder.variable(&name)
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(syntax(self.input, "missing `)`"));
                }
                Ok(inner)
            }
            Some(Token::Op('-')) => {
                self.pos += 1;
                let inner = self.power()?;
                self.builder.neg(inner)
            }
            Some(t) => Err(syntax(self.input, &format!("unexpected token {t:?}"))),
            None => Err(syntax(self.input, "unexpected end of input")),
        }
    }
}

/// Parse `input` into the ring described by `builder`.
pub fn parse_expression<B: Builder>(builder: &B, input: &str) -> Result<B::Out> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(syntax(input, "empty expression"));
    }
    let mut parser = Parser {
        input,
        tokens,
        pos: 0,
        builder,
    };
    let out = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(syntax(input, "trailing input"));
    }
    Ok(out)
}
