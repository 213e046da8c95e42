use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use super::{grevlex_cmp, ArithError, MultiPoly, Rational, VarContext};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a str,
    line: usize,
    col0: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, col: usize, message: impl Into<String>) -> ArithError {
        ArithError::Parse { line: self.line, column: self.col0 + col, message: message.into() }
    }

    fn tokens(&self) -> Result<Vec<(Tok, usize)>, ArithError> {
        let chars: Vec<char> = self.src.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let start = i;
            match c {
                ' ' | '\t' | '\r' | '\n' => {
                    i += 1;
                    continue;
                }
                '+' => out.push((Tok::Plus, start)),
                '-' => out.push((Tok::Minus, start)),
                '*' => {
                    if chars.get(i + 1) == Some(&'*') {
                        i += 1;
                        out.push((Tok::Caret, start));
                    } else {
                        out.push((Tok::Star, start));
                    }
                }
                '/' => out.push((Tok::Slash, start)),
                '^' => out.push((Tok::Caret, start)),
                '(' => out.push((Tok::LParen, start)),
                ')' => out.push((Tok::RParen, start)),
                d if d.is_ascii_digit() => {
                    let mut j = i;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    let int_part: String = chars[i..j].iter().collect();
                    let mut value = Rational::from_integer(int_part.parse::<BigInt>().unwrap());
                    if j < chars.len() && chars[j] == '.' {
                        let mut k = j + 1;
                        while k < chars.len() && chars[k].is_ascii_digit() {
                            k += 1;
                        }
                        let frac: String = chars[j + 1..k].iter().collect();
                        if !frac.is_empty() {
                            let num = frac.parse::<BigInt>().unwrap();
                            let den = BigInt::from(10).pow(frac.len() as u32);
                            value += Rational::new(num, den);
                        }
                        j = k;
                    }
                    out.push((Tok::Num(value), start));
                    i = j;
                    continue;
                }
                a if a.is_ascii_alphabetic() || a == '_' => {
                    let mut j = i;
                    while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                        j += 1;
                    }
                    out.push((Tok::Ident(chars[i..j].iter().collect()), start));
                    i = j;
                    continue;
                }
                other => return Err(self.err(start + 1, format!("unexpected character `{other}`"))),
            }
            i += 1;
        }
        Ok(out)
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ctx: &'a Arc<VarContext>,
    lex: &'a Lexer<'a>,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1) + 1
    }

    fn expr(&mut self) -> Result<MultiPoly, ArithError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ArithError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let col = self.col();
                    let d = self.unary()?;
                    match d.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&(Rational::one() / c)),
                        Some(_) => return Err(self.lex.err(col, "division by zero")),
                        None => return Err(self.lex.err(col, "only division by a nonzero constant is allowed")),
                    }
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly, ArithError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly, ArithError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let col = self.col();
            let e = match self.peek() {
                Some(Tok::Num(n)) if n.is_integer() && !n.is_negative() => n.to_integer(),
                _ => return Err(self.lex.err(col, "exponent must be a nonnegative integer")),
            };
            self.pos += 1;
            let e: u32 = e.try_into().map_err(|_| self.lex.err(col, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, ArithError> {
        let col = self.col();
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Num(n), _)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.ctx, n))
            }
            Some((Tok::Ident(name), _)) => {
                self.pos += 1;
                match self.ctx.index_of(&name) {
                    Some(i) => Ok(MultiPoly::var(self.ctx, i)),
                    None => Err(ArithError::UndeclaredIdentifier { name, line: self.lex.line, column: self.lex.col0 + col }),
                }
            }
            Some((Tok::LParen, _)) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.lex.err(self.col(), "expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(_) => Err(self.lex.err(col, "unexpected token")),
            None => Err(self.lex.err(col, "unexpected end of input")),
        }
    }
}

/// Parses an infix polynomial over `ctx`, reporting positions relative to
/// the given line and starting column.
pub fn parse_poly_at(src: &str, ctx: &Arc<VarContext>, line: usize, col0: usize) -> Result<MultiPoly, ArithError> {
    let lex = Lexer { src, line, col0 };
    let toks = lex.tokens()?;
    let end_col = src.chars().count();
    let mut p = Parser { toks, pos: 0, ctx, lex: &lex, end_col };
    if p.toks.is_empty() {
        return Err(lex.err(1, "empty expression"));
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(lex.err(p.col(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Parses a polynomial written in conventional infix form, such as
/// `x1^2 + x2^2 - y1` or `2x1 x2 - 3/4*y1`.
pub fn parse_poly(src: &str, ctx: &Arc<VarContext>) -> Result<MultiPoly, ArithError> {
    parse_poly_at(src, ctx, 1, 0)
}

/// Parses `a`, `-a`, `a/b` or a decimal like `0.25`.
pub fn parse_rational(src: &str) -> Result<Rational, ArithError> {
    let ctx = VarContext::new(&[], &[])?;
    parse_poly(src, &ctx)?.as_constant().ok_or_else(|| ArithError::Parse {
        line: 1,
        column: 1,
        message: "not a rational constant".into(),
    })
}

fn fmt_monomial(p: &MultiPoly, exps: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(p.ctx().name(i).to_string()),
            _ => parts.push(format!("{}^{}", p.ctx().name(i), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by(|a, b| match grevlex_cmp(b.0.exps(), a.0.exps()) {
            Ordering::Equal => Ordering::Equal,
            o => o,
        });
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = fmt_monomial(self, m.exps());
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}
