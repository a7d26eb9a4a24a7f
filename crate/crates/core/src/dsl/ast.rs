use std::fmt;

use num_bigint::BigInt;

use crate::rational::Rational;

/// 1-based source position.  Spans never take part in equality, so a
/// reparsed printout compares equal to the original tree.
#[derive(Clone, Copy, Debug, Default, Hash)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Span {}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub kind: GroupKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Z,
    Q,
    O,
    Aff,
    Lex(Box<Group>, Box<Group>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elem {
    pub kind: ElemKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElemKind {
    Num(Rational),
    Pair(Box<Elem>, Box<Elem>),
    Aff(Rational, Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub kind: AlgebraKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Gamma(Group, Elem),
    Chain(BigInt),
    Prod(Box<Algebra>, Box<Algebra>),
    /// The algebra loaded with `--table`.
    Table,
}

/// One algebra, or two separated by `;` for comparisons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Input {
    pub algebras: Vec<Algebra>,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GroupKind::Z => write!(f, "Z"),
            GroupKind::Q => write!(f, "Q"),
            GroupKind::O => write!(f, "O"),
            GroupKind::Aff => write!(f, "Aff"),
            GroupKind::Lex(h, g) => write!(f, "lex({h},{g})"),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ElemKind::Num(q) => write!(f, "{q}"),
            ElemKind::Pair(a, b) => write!(f, "({a},{b})"),
            ElemKind::Aff(a, b) => write!(f, "aff({a},{b})"),
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            AlgebraKind::Gamma(g, u) => write!(f, "gamma({g},{u})"),
            AlgebraKind::Chain(n) => write!(f, "chain({n})"),
            AlgebraKind::Prod(a, b) => write!(f, "prod({a},{b})"),
            AlgebraKind::Table => write!(f, "table"),
        }
    }
}

impl fmt::Display for Input {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.algebras.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(" ; "))
    }
}
