use num_traits::ToPrimitive;

use super::ast::{Algebra, AlgebraKind, Elem, ElemKind, Group, GroupKind};
use super::parse::DslError;
use crate::finite::{make_chain, make_product, FiniteMv, MAX_ELEMENTS};
use crate::group::{GroupElem, GroupSpec, UnitalGroup};
use crate::pmv::{PmvAlgebra, PmvElem};

/// An algebra after semantic checks.
#[derive(Clone, Debug)]
pub enum Realized {
    Interval(PmvAlgebra),
    Finite(FiniteMv),
}

impl Realized {
    /// The finite table of the algebra; `Γ(Z, n)` counts as `chain(n)`.
    pub fn as_finite(&self) -> Option<FiniteMv> {
        match self {
            Realized::Finite(a) => Some(a.clone()),
            Realized::Interval(alg) => match (alg.spec(), alg.unit()) {
                (GroupSpec::Integers, GroupElem::Int(n)) => n.to_usize().and_then(|n| make_chain(n).ok()),
                _ => None,
            },
        }
    }
}

pub fn realize_group(g: &Group) -> Result<GroupSpec, DslError> {
    Ok(match &g.kind {
        GroupKind::Z => GroupSpec::Integers,
        GroupKind::Q => GroupSpec::Rationals,
        GroupKind::O => GroupSpec::Trivial,
        GroupKind::Aff => GroupSpec::AffinePos,
        GroupKind::Lex(h, t) => GroupSpec::lex(realize_group(h)?, realize_group(t)?)
            .map_err(|e| DslError::semantic(h.span, e.to_string()))?,
    })
}

/// The literal as a group element, before it is matched to a group.
pub fn raw_elem(e: &Elem) -> GroupElem {
    match &e.kind {
        ElemKind::Num(q) => match q.to_integer() {
            Some(n) => GroupElem::Int(n),
            None => GroupElem::Rat(q.clone()),
        },
        ElemKind::Pair(a, b) => GroupElem::pair(raw_elem(a), raw_elem(b)),
        ElemKind::Aff(a, b) => GroupElem::aff(a.clone(), b.clone()),
    }
}

pub fn realize_elem(spec: &GroupSpec, e: &Elem) -> Result<GroupElem, DslError> {
    spec.conform(&raw_elem(e)).map_err(|err| DslError::semantic(e.span, err.to_string()))
}

/// An element literal of an interval algebra.
pub fn realize_member(alg: &PmvAlgebra, e: &Elem) -> Result<PmvElem, DslError> {
    let g = realize_elem(alg.spec(), e)?;
    alg.elem(g).map_err(|err| DslError::semantic(e.span, err.to_string()))
}

pub fn realize_algebra(a: &Algebra, table: Option<&FiniteMv>) -> Result<Realized, DslError> {
    Ok(match &a.kind {
        AlgebraKind::Gamma(g, u) => {
            let spec = realize_group(g)?;
            let unit = realize_elem(&spec, u)?;
            let group = UnitalGroup::new(spec, unit).map_err(|e| DslError::semantic(u.span, e.to_string()))?;
            Realized::Interval(PmvAlgebra::new(group))
        }
        AlgebraKind::Chain(n) => {
            let n = n.to_usize().filter(|&n| n >= 1).ok_or_else(|| DslError::semantic(a.span, "chain(n) needs n ≥ 1"))?;
            if n >= MAX_ELEMENTS {
                return Err(DslError::semantic(a.span, format!("chain({n}) has more than {MAX_ELEMENTS} elements")));
            }
            Realized::Finite(make_chain(n).map_err(|e| DslError::semantic(a.span, e.to_string()))?)
        }
        AlgebraKind::Prod(x, y) => {
            let finite = |b: &Algebra| -> Result<FiniteMv, DslError> {
                realize_algebra(b, table)?
                    .as_finite()
                    .ok_or_else(|| DslError::semantic(b.span, format!("{b} is not finite; products take finite factors")))
            };
            let p = make_product(&finite(x)?, &finite(y)?).map_err(|e| DslError::semantic(a.span, e.to_string()))?;
            Realized::Finite(p)
        }
        AlgebraKind::Table => match table {
            Some(t) => Realized::Finite(t.clone()),
            None => return Err(DslError::semantic(a.span, "`table` needs --table FILE")),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::super::parse::{parse_algebra, DslErrorKind};
    use super::*;

    fn err(text: &str) -> DslError {
        realize_algebra(&parse_algebra(text).unwrap(), None).unwrap_err()
    }

    #[test]
    fn semantic_errors() {
        assert_eq!(err("chain(0)").kind, DslErrorKind::Semantic);
        assert!(err("gamma(lex(lex(Z,Z),Z),(1,0))").message.contains("shape"));
        assert!(err("gamma(Z,-1)").message.contains("strong unit"));
        assert!(err("gamma(lex(Z,Z),(0,1))").message.contains("strong unit"));
        assert!(err("prod(gamma(Q,1),chain(1))").message.contains("not finite"));
    }

    #[test]
    fn accepted_forms() {
        let ok = |t: &str| realize_algebra(&parse_algebra(t).unwrap(), None).unwrap();
        assert!(matches!(ok("gamma(lex(Aff,Z),(aff(2,0),0))"), Realized::Interval(_)));
        assert_eq!(ok("gamma(Z,3)").as_finite().unwrap().size(), 4);
        assert_eq!(ok("prod(chain(2),gamma(Z,1))").as_finite().unwrap().size(), 6);
    }
}
