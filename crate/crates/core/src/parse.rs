//! String forms of polynomials and exterior elements.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' integer]
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exterior::{indices, ExtAlgebra, ExtElement};
use crate::field::{Coeff, FieldSpec};
use crate::poly::{PolyRing, Polynomial};

trait Algebra {
    type Elem: Clone;
    fn field(&self) -> &FieldSpec;
    fn constant(&self, c: Coeff) -> Self::Elem;
    fn variable(&self, name: &str) -> Option<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn as_constant(&self, a: &Self::Elem) -> Option<Coeff>;
}

impl Algebra for PolyRing {
    type Elem = Polynomial;
    fn field(&self) -> &FieldSpec {
        PolyRing::field(self)
    }
    fn constant(&self, c: Coeff) -> Polynomial {
        PolyRing::constant(self, c)
    }
    fn variable(&self, name: &str) -> Option<Polynomial> {
        self.var_index(name).map(|i| self.var(i))
    }
    fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a + b
    }
    fn neg(&self, a: &Polynomial) -> Polynomial {
        -a
    }
    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a * b
    }
    fn as_constant(&self, a: &Polynomial) -> Option<Coeff> {
        if a.is_zero() {
            return Some(self.field().zero());
        }
        a.as_constant().cloned()
    }
}

impl Algebra for ExtAlgebra {
    type Elem = ExtElement;
    fn field(&self) -> &FieldSpec {
        ExtAlgebra::field(self)
    }
    fn constant(&self, c: Coeff) -> ExtElement {
        ExtElement::monomial(0, c)
    }
    fn variable(&self, name: &str) -> Option<ExtElement> {
        self.var_names()
            .iter()
            .position(|n| n == name)
            .map(|i| self.var(i))
    }
    fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        a + b
    }
    fn neg(&self, a: &ExtElement) -> ExtElement {
        -a
    }
    fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        a.mul(b)
    }
    fn as_constant(&self, a: &ExtElement) -> Option<Coeff> {
        if a.is_zero() {
            return Some(self.field().zero());
        }
        let mut it = a.terms();
        match (it.next(), it.next()) {
            (Some((0, c)), None) => Some(c.clone()),
            _ => None,
        }
    }
}

struct Parser<'a, A: Algebra> {
    alg: &'a A,
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a, A: Algebra> Parser<'a, A> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            input: self.src.to_string(),
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.src[start..self.pos].parse().ok()
    }

    fn expr(&mut self) -> Result<A::Elem> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = self.alg.neg(&acc);
        }
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc = self.alg.add(&acc, &t);
            } else if self.eat(b'-') {
                let t = self.term()?;
                acc = self.alg.add(&acc, &self.alg.neg(&t));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<A::Elem> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                let f = self.unary()?;
                acc = self.alg.mul(&acc, &f);
            } else if self.eat(b'/') {
                let at = self.pos;
                let f = self.unary()?;
                let c = self
                    .alg
                    .as_constant(&f)
                    .and_then(|c| c.inv())
                    .ok_or_else(|| Error::Parse {
                        input: self.src.to_string(),
                        offset: at,
                        message: "division by a non-constant or zero".into(),
                    })?;
                acc = self.alg.mul(&acc, &self.alg.constant(c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<A::Elem> {
        if self.eat(b'-') {
            let u = self.unary()?;
            return Ok(self.alg.neg(&u));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let k = self
                .integer()
                .ok_or_else(|| self.error("expected a nonnegative exponent"))?;
            let k: u32 = k
                .try_into()
                .map_err(|_| self.error("exponent out of range"))?;
            let mut acc = self.alg.constant(self.alg.field().one());
            for _ in 0..k {
                acc = self.alg.mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<A::Elem> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer().expect("digit present");
                Ok(self.alg.constant(self.alg.field().from_bigint(&n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                self.alg.variable(name).ok_or_else(|| Error::Parse {
                    input: self.src.to_string(),
                    offset: start,
                    message: format!("unknown variable {name:?}"),
                })
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

fn parse_with<A: Algebra>(alg: &A, src: &str) -> Result<A::Elem> {
    let mut p = Parser {
        alg,
        src,
        bytes: src.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

impl PolyRing {
    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        parse_with(self, src)
    }

    /// Descending order used for printing: theta-weight first (total degree
    /// without a theta), then reverse lexicographic.
    pub fn display_cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        let weight = |e: &[u32]| -> i64 {
            match self.grading().weights() {
                Ok(w) => e.iter().zip(&w).map(|(&x, &y)| x as i64 * y).sum(),
                Err(_) => e.iter().map(|&x| x as i64).sum(),
            }
        };
        weight(b).cmp(&weight(a)).then_with(|| {
            for i in (0..a.len()).rev() {
                if a[i] != b[i] {
                    return a[i].cmp(&b[i]);
                }
            }
            Ordering::Equal
        })
    }

    /// Parseable form, e.g. `x_0^2*x_1 - 3*x_3`.
    pub fn format(&self, f: &Polynomial) -> String {
        self.render(f, false)
    }

    /// Transcript form: juxtaposed factors, `x2y` for single-letter names.
    pub fn format_compact(&self, f: &Polynomial) -> String {
        self.render(f, true)
    }

    fn render(&self, f: &Polynomial, compact: bool) -> String {
        let mut terms: Vec<_> = f.terms().collect();
        terms.sort_by(|a, b| self.display_cmp(a.0, b.0));
        let pieces = terms.into_iter().map(|(e, c)| {
            let mono = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let name = &self.var_names()[i];
                    match (k, compact && name.chars().count() == 1) {
                        (1, _) => name.clone(),
                        (_, true) => format!("{name}{k}"),
                        _ => format!("{name}^{k}"),
                    }
                })
                .collect::<Vec<_>>()
                .join(if compact { "" } else { "*" });
            (c.clone(), mono)
        });
        join_terms(pieces, compact)
    }
}

fn join_terms(pieces: impl Iterator<Item = (Coeff, String)>, compact: bool) -> String {
    let mut out = String::new();
    for (i, (c, mono)) in pieces.enumerate() {
        let neg = c.is_negative_repr();
        let abs = if neg { -c } else { c };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let (n, d) = abs.to_ratio();
        let unit = n.is_one() && d.is_one();
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if unit {
            out.push_str(&mono);
        } else if compact {
            out.push_str(&format!("{abs}{mono}"));
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl ExtAlgebra {
    pub fn parse(&self, src: &str) -> Result<ExtElement> {
        parse_with(self, src)
    }

    pub fn format(&self, f: &ExtElement) -> String {
        self.render(f, false)
    }

    pub fn format_compact(&self, f: &ExtElement) -> String {
        self.render(f, true)
    }

    fn render(&self, f: &ExtElement, compact: bool) -> String {
        let mut terms: Vec<_> = f.terms().map(|(&m, c)| (m, c.clone())).collect();
        terms.sort_by_key(|(m, _)| (std::cmp::Reverse(m.count_ones()), *m));
        let pieces = terms.into_iter().map(|(m, c)| {
            let mono = indices(m)
                .map(|i| self.var_names()[i].clone())
                .collect::<Vec<_>>()
                .join(if compact { "" } else { "*" });
            (c, mono)
        });
        join_terms(pieces, compact)
    }
}
