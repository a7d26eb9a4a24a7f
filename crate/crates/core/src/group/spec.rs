use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::GroupElem;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Descriptor of a catalog ℓ-group.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum GroupSpec {
    Trivial,
    Integers,
    Rationals,
    /// `lex(H, G)`: `H × G` ordered by the head first.  Only built through
    /// [`GroupSpec::lex`], which rejects a non-linear head.
    Lex(Box<GroupSpec>, Box<GroupSpec>),
    AffinePos,
}

impl GroupSpec {
    /// The lexicographic product is a lattice only when the head is linear.
    pub fn lex(head: GroupSpec, tail: GroupSpec) -> Result<Self> {
        if !head.is_linear() {
            return Err(Error::InvalidGroup(format!(
                "lex({head},{tail}): the left factor must be linearly ordered"
            )));
        }
        Ok(GroupSpec::Lex(Box::new(head), Box::new(tail)))
    }

    /// Right-nested `lex(g0, lex(g1, ...))`.
    pub fn lex_chain(factors: impl IntoIterator<Item = GroupSpec>) -> Result<Self> {
        let mut factors: Vec<_> = factors.into_iter().collect();
        let mut acc = factors
            .pop()
            .ok_or_else(|| Error::InvalidGroup("empty lex chain".into()))?;
        while let Some(head) = factors.pop() {
            acc = GroupSpec::lex(head, acc)?;
        }
        Ok(acc)
    }

    pub fn is_linear(&self) -> bool {
        match self {
            GroupSpec::Lex(h, g) => h.is_linear() && g.is_linear(),
            _ => true,
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            GroupSpec::AffinePos => false,
            GroupSpec::Lex(h, g) => h.is_abelian() && g.is_abelian(),
            _ => true,
        }
    }

    pub fn zero(&self) -> GroupElem {
        match self {
            GroupSpec::Trivial => GroupElem::Zero,
            GroupSpec::Integers => GroupElem::Int(BigInt::zero()),
            GroupSpec::Rationals => GroupElem::Rat(Rational::zero()),
            GroupSpec::Lex(h, g) => GroupElem::pair(h.zero(), g.zero()),
            GroupSpec::AffinePos => GroupElem::aff(Rational::one(), Rational::zero()),
        }
    }

    pub fn head(&self) -> Option<&GroupSpec> {
        match self {
            GroupSpec::Lex(h, _) => Some(h),
            _ => None,
        }
    }

    pub fn tail(&self) -> Option<&GroupSpec> {
        match self {
            GroupSpec::Lex(_, g) => Some(g),
            _ => None,
        }
    }

    /// Structural membership, including `slope > 0` for affine maps.
    pub fn contains(&self, a: &GroupElem) -> bool {
        match (self, a) {
            (GroupSpec::Trivial, GroupElem::Zero)
            | (GroupSpec::Integers, GroupElem::Int(_))
            | (GroupSpec::Rationals, GroupElem::Rat(_)) => true,
            (GroupSpec::AffinePos, GroupElem::Aff { slope, .. }) => slope.is_positive(),
            (GroupSpec::Lex(hs, gs), GroupElem::Pair(h, g)) => hs.contains(h) && gs.contains(g),
            _ => false,
        }
    }

    pub fn check(&self, a: &GroupElem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::shape(self, a))
        }
    }

    /// Coerce a literal parsed without type information into this group.
    /// Integers widen to rationals, `0` becomes the trivial element and
    /// integral rationals narrow to integers.
    pub fn conform(&self, a: &GroupElem) -> Result<GroupElem> {
        let out = match (self, a) {
            (GroupSpec::Trivial, GroupElem::Zero) => GroupElem::Zero,
            (GroupSpec::Trivial, GroupElem::Int(n)) if n.is_zero() => GroupElem::Zero,
            (GroupSpec::Integers, GroupElem::Int(n)) => GroupElem::Int(n.clone()),
            (GroupSpec::Integers, GroupElem::Rat(q)) if q.is_integer() => {
                GroupElem::Int(q.to_integer().expect("integral"))
            }
            (GroupSpec::Rationals, GroupElem::Int(n)) => GroupElem::Rat(Rational::from(n.clone())),
            (GroupSpec::Rationals, GroupElem::Rat(q)) => GroupElem::Rat(q.clone()),
            (GroupSpec::AffinePos, GroupElem::Aff { slope, shift }) if slope.is_positive() => {
                GroupElem::aff(slope.clone(), shift.clone())
            }
            (GroupSpec::Lex(hs, gs), GroupElem::Pair(h, g)) => {
                GroupElem::pair(hs.conform(h)?, gs.conform(g)?)
            }
            _ => return Err(Error::shape(self, a)),
        };
        Ok(out)
    }

    /// Closed-form strong-unit test.
    ///
    /// * `Z`, `Q`: any `u > 0` (Archimedean).
    /// * `Aff`: `u = aff(a, β)` with `a > 1`.  Then `n·u` has slope `aⁿ`,
    ///   which eventually exceeds any slope, and `-n·u` has slope `a⁻ⁿ`,
    ///   which eventually drops below any slope; the order compares slopes
    ///   first.  With `a = 1` every multiple has slope 1, so `aff(2,0)` is
    ///   never dominated.
    /// * `lex(H, G)`: `(h, g)` is a strong unit iff `h` is one in `H`; if
    ///   `x ≤ n·h` then `(x, y) < (n+1)·(h, g)` for every `y` because the
    ///   heads already differ.  A trivial head defers to the tail.
    /// * `O`: only `0`.
    pub fn is_strong_unit(&self, u: &GroupElem) -> bool {
        match (self, u) {
            (GroupSpec::Trivial, GroupElem::Zero) => true,
            (GroupSpec::Integers, GroupElem::Int(n)) => n.is_positive(),
            (GroupSpec::Rationals, GroupElem::Rat(q)) => q.is_positive(),
            (GroupSpec::AffinePos, GroupElem::Aff { slope, .. }) => slope > &Rational::one(),
            (GroupSpec::Lex(hs, gs), GroupElem::Pair(h, g)) => {
                if **hs == GroupSpec::Trivial {
                    gs.is_strong_unit(g)
                } else {
                    hs.is_strong_unit(h) && gs.contains(g)
                }
            }
            _ => false,
        }
    }

    /// True when the group has no element other than `0`.
    pub fn is_trivial(&self) -> bool {
        match self {
            GroupSpec::Trivial => true,
            GroupSpec::Lex(h, g) => h.is_trivial() && g.is_trivial(),
            _ => false,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Trivial => write!(f, "O"),
            GroupSpec::Integers => write!(f, "Z"),
            GroupSpec::Rationals => write!(f, "Q"),
            GroupSpec::AffinePos => write!(f, "Aff"),
            GroupSpec::Lex(h, g) => write!(f, "lex({h},{g})"),
        }
    }
}

/// A group with a fixed strong unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UnitalGroup {
    spec: GroupSpec,
    unit: GroupElem,
}

impl UnitalGroup {
    pub fn new(spec: GroupSpec, unit: GroupElem) -> Result<Self> {
        spec.check(&unit)?;
        if !spec.is_strong_unit(&unit) {
            return Err(Error::InvalidUnit(format!(
                "{unit} is not a strong unit of {spec}"
            )));
        }
        Ok(UnitalGroup { spec, unit })
    }

    /// `(Z, n)`.
    pub fn integers(n: i64) -> Result<Self> {
        UnitalGroup::new(GroupSpec::Integers, GroupElem::int(n))
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn unit(&self) -> &GroupElem {
        &self.unit
    }
}

impl fmt::Display for UnitalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.spec, self.unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zz() -> GroupSpec {
        GroupSpec::lex(GroupSpec::Integers, GroupSpec::Integers).unwrap()
    }

    #[test]
    fn derived_flags() {
        assert!(zz().is_linear());
        assert!(zz().is_abelian());
        let za = GroupSpec::lex(GroupSpec::Integers, GroupSpec::AffinePos).unwrap();
        assert!(za.is_linear());
        assert!(!za.is_abelian());
        assert!(GroupSpec::Trivial.is_abelian());
    }

    #[test]
    fn strong_units() {
        assert!(UnitalGroup::new(zz(), GroupElem::pair(GroupElem::int(1), GroupElem::int(0))).is_ok());
        assert!(UnitalGroup::new(zz(), GroupElem::pair(GroupElem::int(2), GroupElem::int(-7))).is_ok());
        // (0, 5) never dominates (1, 0)
        assert!(UnitalGroup::new(zz(), GroupElem::pair(GroupElem::int(0), GroupElem::int(5))).is_err());
        assert!(UnitalGroup::integers(0).is_err());
        assert!(UnitalGroup::new(GroupSpec::AffinePos, GroupElem::aff_int(2, 0)).is_ok());
        assert!(UnitalGroup::new(GroupSpec::AffinePos, GroupElem::aff_int(1, 3)).is_err());
        assert!(UnitalGroup::new(GroupSpec::Trivial, GroupElem::Zero).is_ok());
    }

    #[test]
    fn shape_checks() {
        assert!(zz().check(&GroupElem::int(3)).is_err());
        assert!(GroupSpec::AffinePos
            .check(&GroupElem::aff(Rational::from(-1), Rational::zero()))
            .is_err());
        let q = GroupSpec::Rationals.conform(&GroupElem::int(3)).unwrap();
        assert_eq!(q, GroupElem::Rat(Rational::from(3)));
        assert!(GroupSpec::Integers.conform(&GroupElem::rat(1, 2)).is_err());
    }
}
