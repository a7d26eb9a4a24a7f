use std::fmt;

use num_bigint::BigInt;

use super::ast::{Algebra, AlgebraKind, Elem, ElemKind, Group, GroupKind, Input, Span};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DslErrorKind {
    Syntax,
    Semantic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DslError {
    pub kind: DslErrorKind,
    pub span: Span,
    pub message: String,
}

impl DslError {
    pub(crate) fn syntax(span: Span, message: impl Into<String>) -> Self {
        DslError { kind: DslErrorKind::Syntax, span, message: message.into() }
    }

    pub(crate) fn semantic(span: Span, message: impl Into<String>) -> Self {
        DslError { kind: DslErrorKind::Semantic, span, message: message.into() }
    }
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            DslErrorKind::Syntax => "syntax error",
            DslErrorKind::Semantic => "error",
        };
        write!(f, "{}: {kind}: {}", self.span, self.message)
    }
}

impl std::error::Error for DslError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Punct(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Punct(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, DslError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let span = Span { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push((Tok::Ident(s), span));
        } else if c.is_ascii_digit() || c == '-' {
            let mut s = String::new();
            s.push(c);
            chars.next();
            col += 1;
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            let n = s.parse::<BigInt>().map_err(|_| DslError::syntax(span, format!("`{s}` is not a number")))?;
            out.push((Tok::Int(n), span));
        } else if "(),;/".contains(c) {
            chars.next();
            col += 1;
            out.push((Tok::Punct(c), span));
        } else {
            return Err(DslError::syntax(span, format!("unexpected character `{c}`")));
        }
    }
    out.push((Tok::End, Span { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, DslError> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &(Tok, Span) {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<Span, DslError> {
        match self.bump() {
            (Tok::Punct(d), s) if d == c => Ok(s),
            (t, s) => Err(DslError::syntax(s, format!("expected `{c}`, found {t}"))),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().0 == Tok::Punct(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn finish(&mut self) -> Result<(), DslError> {
        match self.peek() {
            (Tok::End, _) => Ok(()),
            (t, s) => Err(DslError::syntax(*s, format!("unexpected {t} after the expression"))),
        }
    }

    /// `item ("," item)+` inside parentheses, folded to the right.
    fn tuple<T>(
        &mut self,
        mut item: impl FnMut(&mut Self) -> Result<T, DslError>,
        pair: impl Fn(T, T, Span) -> T,
        span: Span,
    ) -> Result<T, DslError> {
        let mut items = vec![item(self)?];
        while self.eat(',') {
            items.push(item(self)?);
        }
        self.expect(')')?;
        if items.len() < 2 {
            return Err(DslError::syntax(span, "expected at least two components"));
        }
        let mut acc = items.pop().expect("nonempty");
        while let Some(x) = items.pop() {
            acc = pair(x, acc, span);
        }
        Ok(acc)
    }

    fn group(&mut self) -> Result<Group, DslError> {
        let (t, span) = self.bump();
        let kind = match &t {
            Tok::Ident(s) if s == "Z" => GroupKind::Z,
            Tok::Ident(s) if s == "Q" => GroupKind::Q,
            Tok::Ident(s) if s == "O" => GroupKind::O,
            Tok::Ident(s) if s == "Aff" => GroupKind::Aff,
            Tok::Ident(s) if s == "lex" => {
                self.expect('(')?;
                return self.tuple(
                    Self::group,
                    |h, g, span| Group { kind: GroupKind::Lex(Box::new(h), Box::new(g)), span },
                    span,
                );
            }
            _ => return Err(DslError::syntax(span, format!("expected a group (Z, Q, O, Aff, lex), found {t}"))),
        };
        Ok(Group { kind, span })
    }

    fn integer(&mut self) -> Result<(BigInt, Span), DslError> {
        match self.bump() {
            (Tok::Int(n), s) => Ok((n, s)),
            (t, s) => Err(DslError::syntax(s, format!("expected an integer, found {t}"))),
        }
    }

    fn rational(&mut self) -> Result<Rational, DslError> {
        let (p, span) = self.integer()?;
        if !self.eat('/') {
            return Ok(Rational::from(p));
        }
        let (q, qs) = self.integer()?;
        if q.sign() != num_bigint::Sign::Plus {
            return Err(DslError::syntax(qs, "denominators must be positive"));
        }
        Rational::checked_new(p, q).ok_or_else(|| DslError::syntax(span, "invalid rational"))
    }

    fn elem(&mut self) -> Result<Elem, DslError> {
        let span = self.peek().1;
        match self.peek().0.clone() {
            Tok::Int(_) => Ok(Elem { kind: ElemKind::Num(self.rational()?), span }),
            Tok::Punct('(') => {
                self.bump();
                self.tuple(Self::elem, |a, b, span| Elem { kind: ElemKind::Pair(Box::new(a), Box::new(b)), span }, span)
            }
            Tok::Ident(s) if s == "aff" => {
                self.bump();
                self.expect('(')?;
                let a = self.rational()?;
                self.expect(',')?;
                let b = self.rational()?;
                self.expect(')')?;
                Ok(Elem { kind: ElemKind::Aff(a, b), span })
            }
            t => Err(DslError::syntax(span, format!("expected an element, found {t}"))),
        }
    }

    fn algebra(&mut self) -> Result<Algebra, DslError> {
        let (t, span) = self.bump();
        let kind = match &t {
            Tok::Ident(s) if s == "gamma" => {
                self.expect('(')?;
                let g = self.group()?;
                self.expect(',')?;
                let u = self.elem()?;
                self.expect(')')?;
                AlgebraKind::Gamma(g, u)
            }
            Tok::Ident(s) if s == "chain" => {
                self.expect('(')?;
                let (n, _) = self.integer()?;
                self.expect(')')?;
                AlgebraKind::Chain(n)
            }
            Tok::Ident(s) if s == "prod" => {
                self.expect('(')?;
                return self.tuple(
                    Self::algebra,
                    |a, b, span| Algebra { kind: AlgebraKind::Prod(Box::new(a), Box::new(b)), span },
                    span,
                );
            }
            Tok::Ident(s) if s == "table" => AlgebraKind::Table,
            _ => return Err(DslError::syntax(span, format!("expected an algebra (gamma, chain, prod, table), found {t}"))),
        };
        Ok(Algebra { kind, span })
    }
}

pub fn parse_group(text: &str) -> Result<Group, DslError> {
    let mut p = Parser::new(text)?;
    let g = p.group()?;
    p.finish()?;
    Ok(g)
}

pub fn parse_elem(text: &str) -> Result<Elem, DslError> {
    let mut p = Parser::new(text)?;
    let e = p.elem()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_algebra(text: &str) -> Result<Algebra, DslError> {
    let mut p = Parser::new(text)?;
    let a = p.algebra()?;
    p.finish()?;
    Ok(a)
}

/// `algebra (";" algebra)*`.
pub fn parse_input(text: &str) -> Result<Input, DslError> {
    let mut p = Parser::new(text)?;
    let mut algebras = vec![p.algebra()?];
    while p.eat(';') {
        algebras.push(p.algebra()?);
    }
    p.finish()?;
    Ok(Input { algebras })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nary_sugar_nests_right() {
        let a = parse_algebra("gamma(lex(Z,Z,Z),(1,0,0))").unwrap();
        assert_eq!(a.to_string(), "gamma(lex(Z,lex(Z,Z)),(1,(0,0)))");
        assert_eq!(parse_algebra(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn literals() {
        assert_eq!(parse_elem("(0, aff(2, -3/6))").unwrap().to_string(), "(0,aff(2,-1/2))");
        assert_eq!(parse_elem("4/2").unwrap(), parse_elem("2").unwrap());
        assert_eq!(parse_input("chain(2) ; prod(chain(1),chain(1))").unwrap().algebras.len(), 2);
    }

    #[test]
    fn syntax_errors_carry_spans() {
        let e = parse_algebra("gamma(lex(Z,Z),\n  (1,))").unwrap_err();
        assert_eq!((e.span.line, e.span.col, e.kind), (2, 6, DslErrorKind::Syntax));
        assert!(parse_algebra("gamma(Z,1) x").is_err());
        assert!(parse_elem("1/0").is_err());
        assert!(parse_group("lex(Z)").is_err());
        assert!(parse_algebra("chain(2").unwrap_err().to_string().contains("end of input"));
    }
}
