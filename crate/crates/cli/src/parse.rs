//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*'? factor)*
//! factor := base ('^' nat)?
//! base   := rational | symbol | '(' expr ')'
//! ```
//! A leading sign is accepted at the start of an expression.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;
use zariski_core::afield::{Field, Quad, Rational};
use zariski_core::poly::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("symbol `{symbol}` at offset {offset} is not the generator of {field}")]
    FieldSymbolMismatch { symbol: String, field: String, offset: usize },
}

/// Symbols reserved for the generators of Q(w) and Q(i).
pub const FIELD_SYMBOLS: [&str; 2] = ["w", "i"];

fn field_symbol(field: &Field) -> Option<&'static str> {
    if field.is_eisenstein() {
        Some("w")
    } else if field.is_gaussian() {
        Some("i")
    } else {
        None
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    like: MultiPoly,
    params: &'a BTreeMap<String, Quad>,
}

impl Parser<'_> {
    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn starts_base(c: char) -> bool {
        c.is_ascii_digit() || c.is_alphabetic() || c == '_' || c == '('
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if Self::starts_base(c) => acc = &acc * &self.factor()?,
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.nat()?;
            let e: u32 = e.try_into().map_err(|_| self.syntax("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<&str> {
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.text[start..self.pos])
    }

    fn nat(&mut self) -> Result<BigInt, ParseError> {
        match self.digits() {
            Some(d) => Ok(d.parse().expect("ascii digits")),
            None => Err(self.syntax("expected a natural number")),
        }
    }

    fn base(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.nat()?;
                let mut value = Rational::from_integer(num);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let den = self.nat()?;
                    if den == BigInt::from(0) {
                        return Err(ParseError::Syntax { offset: at, message: "zero denominator".into() });
                    }
                    value /= Rational::from_integer(den);
                }
                Ok(self.like.constant_like(Quad::from_rational(value)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => self.symbol(),
            Some(c) => Err(self.syntax(format!("unexpected `{c}`"))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn symbol(&mut self) -> Result<MultiPoly, ParseError> {
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.pos += self.peek_raw().map_or(1, char::len_utf8);
        }
        let name = &self.text[start..self.pos];
        if let Some(i) = self.like.var_index(name) {
            return Ok(self.like.var_like(i));
        }
        if let Some(v) = self.params.get(name) {
            return Ok(self.like.constant_like(v.clone()));
        }
        let field = self.like.field().clone();
        if FIELD_SYMBOLS.contains(&name) {
            if field_symbol(&field) == Some(name) {
                return Ok(self.like.constant_like(Quad::theta()));
            }
            return Err(ParseError::FieldSymbolMismatch { symbol: name.into(), field: field.name(), offset: start });
        }
        Err(ParseError::UnknownVariable { name: name.into(), offset: start })
    }
}

/// Parses `text` in the ring with the given variables over `field`; `params`
/// are symbols bound to constants.
pub fn parse_with_params(
    text: &str,
    variables: &[String],
    field: &Field,
    params: &BTreeMap<String, Quad>,
) -> Result<MultiPoly, ParseError> {
    let vars: Arc<[String]> = variables.to_vec().into();
    let mut p = Parser { text, pos: 0, like: MultiPoly::zero(vars, field.clone()), params };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(out)
}

pub fn parse_poly_expr(text: &str, variables: &[String], field: &Field) -> Result<MultiPoly, ParseError> {
    parse_with_params(text, variables, field, &BTreeMap::new())
}

/// Identifiers of `text` in order of first appearance, minus parameters and field symbols.
pub fn infer_variables(text: &str, params: &BTreeMap<String, Quad>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((start, c)) = chars.next() {
        if c.is_ascii_digit() {
            while chars.peek().is_some_and(|(_, d)| d.is_ascii_digit()) {
                chars.next();
            }
            continue;
        }
        if !(c.is_alphabetic() || c == '_') {
            continue;
        }
        let mut end = start + c.len_utf8();
        while let Some(&(i, d)) = chars.peek() {
            if !(d.is_alphanumeric() || d == '_') {
                break;
            }
            end = i + d.len_utf8();
            chars.next();
        }
        let name = &text[start..end];
        if !FIELD_SYMBOLS.contains(&name) && !params.contains_key(name) && !out.iter().any(|v| v == name) {
            out.push(name.to_string());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use zariski_core::series::quartic_f0;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn quartic_from_text() {
        let text = "(x1^2+x2^2)^2 + 2*x3*x4*(x1^2-x2^2) + x3^2*x4^2";
        let vars = infer_variables(text, &BTreeMap::new());
        assert_eq!(vars, names(&["x1", "x2", "x3", "x4"]));
        assert_eq!(parse_poly_expr(text, &vars, &Field::rationals()).unwrap(), quartic_f0());
    }

    #[test]
    fn dangling_caret() {
        let err = parse_poly_expr("X^", &names(&["X"]), &Field::rationals()).unwrap_err();
        assert_eq!(err, ParseError::Syntax { offset: 2, message: "expected a natural number".into() });
    }

    #[test]
    fn implicit_products_and_rationals() {
        let v = names(&["x", "y"]);
        let q = Field::rationals();
        let a = parse_poly_expr("2x(y+1) - 1/2 y^2", &v, &q).unwrap();
        let b = parse_poly_expr("2*x*y + 2*x - (1/2)*y^2", &v, &q).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly_expr("-x + y", &v, &q).unwrap().to_canonical_string(), "-x + y");
    }

    #[test]
    fn field_symbols() {
        let v = names(&["X"]);
        let w = Field::eisenstein();
        let p = parse_poly_expr("w*X + w^2", &v, &w).unwrap();
        assert_eq!(p.to_canonical_string(), "w*X + (-1 - w)");
        let err = parse_poly_expr("i*X", &v, &w).unwrap_err();
        assert!(matches!(err, ParseError::FieldSymbolMismatch { offset: 0, .. }));
        let err = parse_poly_expr("X + z", &v, &w).unwrap_err();
        assert_eq!(err, ParseError::UnknownVariable { name: "z".into(), offset: 4 });
    }

    #[test]
    fn parameters_bind_constants() {
        let mut params = BTreeMap::new();
        params.insert("a".to_string(), Quad::from_int(7));
        let text = "(X+Y+Z)^3 + (a-6)*X*Y*Z";
        let vars = infer_variables(text, &params);
        assert_eq!(vars, names(&["X", "Y", "Z"]));
        let f = parse_with_params(text, &vars, &Field::rationals(), &params).unwrap();
        let g = parse_poly_expr("(X+Y+Z)^3 + X*Y*Z", &vars, &Field::rationals()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn zero_denominator() {
        let err = parse_poly_expr("1/0", &[], &Field::rationals()).unwrap_err();
        assert_eq!(err, ParseError::Syntax { offset: 2, message: "zero denominator".into() });
    }
}
