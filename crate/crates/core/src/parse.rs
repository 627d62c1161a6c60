//! Text grammar for expressions.
//!
//! ```text
//! expr    := ['+'|'-'] term { ('+'|'-') term }
//! term    := unary { ('*'|'/') unary }          division by constants only
//! unary   := ('-'|'+') unary | postfix
//! postfix := primary [ '_{' word '}' ] [ '^' digits ]
//! primary := digits | 'i' | 's3' | symbol ['#' digits]
//!          | '(' expr ')' | 'INT[' expr ']' | 'Re[' expr ']' | 'Im[' expr ']'
//!          | 'conj[' expr ']' | '|' expr '|' '^2'
//! word    := { '1' | 'b' | '0' }                 b is 1̄, applied left to right
//! ```
//!
//! Symbols: `f R A11 Ab1b1 E11 Eb1b1 Q11 Qb1b1 g gb`. `Re[..]`, `Im[..]` and
//! `|..|^2` are expanded on the spot, so `2*Re[X]` becomes `X + conj(X)`.

use crate::calculus::differentiate_word;
use crate::error::{ParseError, ParseErrorKind};
use crate::expr::Expression;
use crate::scalar::ScalarExact;
use crate::symbol::{parse_word, Factor, Symbol};

pub fn parse(text: &str) -> Result<Expression, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err(ParseErrorKind::UnexpectedChar(p.src[p.pos] as char)));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            pos: self.pos,
            kind,
        }
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

    fn expect(&mut self, c: u8, what: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else if self.peek().is_none() {
            Err(self.err(ParseErrorKind::UnexpectedEnd))
        } else {
            Err(self.err(ParseErrorKind::Expected(what)))
        }
    }

    fn expr(&mut self) -> Result<Expression, ParseError> {
        let mut acc = Expression::zero();
        let mut sign = 1i64;
        if self.eat(b'-') {
            sign = -1;
        } else {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            acc = acc + t.scale(&ScalarExact::from_int(sign));
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expression, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                let at = self.pos;
                let rhs = self.unary()?;
                acc = acc.try_mul(&rhs).map_err(|e| ParseError {
                    pos: at,
                    kind: e.into(),
                })?;
            } else if self.peek() == Some(b'/') {
                self.pos += 1;
                let at = self.pos;
                let rhs = self.unary()?;
                let c = constant_value(&rhs)
                    .and_then(|c| c.inv())
                    .ok_or(ParseError {
                        pos: at,
                        kind: ParseErrorKind::BadDivision,
                    })?;
                acc = acc.scale(&c);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expression, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expression, ParseError> {
        let start = self.pos;
        let (mut e, is_abs) = self.primary()?;
        if self.peek() == Some(b'_') {
            self.pos += 1;
            self.expect(b'{', "'{' after '_'")?;
            let wstart = self.pos;
            while self.pos < self.src.len() && self.src[self.pos] != b'}' {
                self.pos += 1;
            }
            let raw = std::str::from_utf8(&self.src[wstart..self.pos]).unwrap_or("");
            let word: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            let word = parse_word(&word).ok_or(ParseError {
                pos: wstart,
                kind: ParseErrorKind::BadDerivative(raw.to_string()),
            })?;
            self.expect(b'}', "'}'")?;
            e = differentiate_word(&e, &word).map_err(|_| ParseError {
                pos: start,
                kind: ParseErrorKind::DerivativeOfIntegral,
            })?;
        }
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.digits()?;
            if is_abs {
                if n != 2 {
                    return Err(self.err(ParseErrorKind::AbsWithoutSquare));
                }
                let c = e.conjugate();
                return e.try_mul(&c).map_err(|k| self.err(k.into()));
            }
            let mut out = Expression::one();
            for _ in 0..n {
                out = out.try_mul(&e).map_err(|k| self.err(k.into()))?;
            }
            return Ok(out);
        }
        if is_abs {
            return Err(self.err(ParseErrorKind::AbsWithoutSquare));
        }
        Ok(e)
    }

    fn digits(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(ParseErrorKind::Expected("digits")));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(ParseError {
                pos: start,
                kind: ParseErrorKind::Expected("small integer"),
            })
    }

    fn bracketed(&mut self) -> Result<Expression, ParseError> {
        self.expect(b'[', "'['")?;
        let e = self.expr()?;
        self.expect(b']', "']'")?;
        Ok(e)
    }

    /// Returns the parsed primary and whether it was an `|..|` group.
    fn primary(&mut self) -> Result<(Expression, bool), ParseError> {
        let c = match self.peek() {
            Some(c) => c,
            None => return Err(self.err(ParseErrorKind::UnexpectedEnd)),
        };
        if c.is_ascii_digit() {
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let n: num_bigint::BigInt = s.parse().unwrap();
            let r = crate::scalar::Rational::from_integer(n);
            return Ok((Expression::constant(ScalarExact::from_rational(r)), false));
        }
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(b')', "')'")?;
            return Ok((e, false));
        }
        if c == b'|' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(b'|', "closing '|'")?;
            return Ok((e, true));
        }
        if c.is_ascii_alphabetic() {
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            let ident = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .to_string();
            let followed_by_bracket = self.src.get(self.pos) == Some(&b'[');
            match (ident.as_str(), followed_by_bracket) {
                ("i", _) => return Ok((Expression::constant(ScalarExact::i()), false)),
                ("s3", _) => return Ok((Expression::constant(ScalarExact::sqrt3()), false)),
                ("INT", true) => {
                    let at = self.pos;
                    let inner = self.bracketed()?;
                    let e = inner.integrate().map_err(|k| ParseError {
                        pos: at,
                        kind: k.into(),
                    })?;
                    return Ok((e, false));
                }
                ("Re", true) => {
                    let inner = self.bracketed()?;
                    return Ok((inner.two_re().scale(&ScalarExact::from_frac(1, 2)), false));
                }
                ("Im", true) => {
                    let inner = self.bracketed()?;
                    // (X - conj X) / 2i
                    let k = ScalarExact::i() * ScalarExact::from_frac(-1, 2);
                    return Ok(((inner.clone() - inner.conjugate()).scale(&k), false));
                }
                ("conj", true) => {
                    let inner = self.bracketed()?;
                    return Ok((inner.conjugate(), false));
                }
                _ => {}
            }
            let sym = Symbol::from_name(&ident).ok_or(ParseError {
                pos: start,
                kind: ParseErrorKind::UnknownSymbol(ident.clone()),
            })?;
            let mut factor = Factor::bare(sym);
            if self.src.get(self.pos) == Some(&b'#') {
                self.pos += 1;
                let tag = self.digits()?;
                factor.tag = u8::try_from(tag)
                    .map_err(|_| self.err(ParseErrorKind::Expected("tag below 256")))?;
            }
            return Ok((Expression::from_factor(factor), false));
        }
        Err(self.err(ParseErrorKind::UnexpectedChar(c as char)))
    }
}

/// The value of an expression that is a pure constant.
fn constant_value(e: &Expression) -> Option<ScalarExact> {
    if e.is_zero() {
        return Some(ScalarExact::zero());
    }
    if e.len() != 1 {
        return None;
    }
    let (m, c) = e.iter().next()?;
    if m.factors.is_empty() && !m.integrated {
        Some(c.clone())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_term_expression() {
        let e = parse("f_{11} + i*A11*f").unwrap();
        assert_eq!(e.len(), 2);
        let coeffs: Vec<_> = e.terms().into_iter().map(|t| t.coeff).collect();
        assert!(coeffs.contains(&ScalarExact::one()));
        assert!(coeffs.contains(&ScalarExact::i()));
    }

    #[test]
    fn zero_is_empty() {
        assert!(parse("0").unwrap().is_zero());
        assert!(parse(" 0 ").unwrap().is_zero());
    }

    #[test]
    fn unknown_symbol_reports_position() {
        let err = parse("f + X11").unwrap_err();
        assert_eq!(err.pos, 4);
        assert!(matches!(err.kind, ParseErrorKind::UnknownSymbol(_)));
    }

    #[test]
    fn syntax_error_position() {
        let err = parse("f + * R").unwrap_err();
        assert_eq!(err.pos, 4);
    }

    #[test]
    fn two_re_expands() {
        let e = parse("2*Re[i*A11*f]").unwrap();
        assert_eq!(e, parse("i*A11*f - i*Ab1b1*f").unwrap());
        assert!(parse("Im[A11_{bb}]").unwrap().is_self_conjugate());
    }

    #[test]
    fn grouped_derivative_uses_leibniz() {
        let e = parse("(A11*Eb1b1)_{1}").unwrap();
        assert_eq!(e, parse("A11_{1}*Eb1b1 + A11*Eb1b1_{1}").unwrap());
    }

    #[test]
    fn abs_squared_and_powers() {
        assert_eq!(parse("|A11|^2").unwrap(), parse("A11*Ab1b1").unwrap());
        assert_eq!(parse("f^2").unwrap(), parse("f*f").unwrap());
        assert!(parse("|A11|").is_err());
    }

    #[test]
    fn rational_and_surd_literals() {
        let e = parse("(s3+i)/2*A11").unwrap();
        let t = &e.terms()[0];
        assert_eq!(t.coeff.to_string(), "(1/2*s3 + 1/2*i)");
        assert!(parse("f/R").is_err());
        assert!(parse("f/0").is_err());
    }

    #[test]
    fn integrals() {
        let e = parse("-1/6*INT[R*E11_{1}*Eb1b1]").unwrap();
        assert!(e.has_integrated());
        assert!(parse("INT[INT[f]]").is_err());
        assert!(parse("INT[f]*R").is_err());
        assert!(parse("INT[f]_{1}").is_err());
    }

    #[test]
    fn print_round_trip_on_canonical_text() {
        for s in [
            "A11*f + f_{11}",
            "-1/6*INT[R*E11_{1}*Eb1b1]",
            "(1/2*s3 + 1/2*i)*A11_{bb}*f - 3",
            "f#1_{1}*f#2",
        ] {
            let e = parse(s).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
    }
}
