use std::fmt;

use num_bigint::BigInt;

use crate::rational::Rational;

/// A value of one of the catalog groups.  The shape must match the
/// owning [`GroupSpec`](super::GroupSpec); every operation re-checks it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum GroupElem {
    /// The single element of the trivial group.
    Zero,
    Int(BigInt),
    Rat(Rational),
    /// An element `(h, g)` of a lexicographic product.
    Pair(Box<GroupElem>, Box<GroupElem>),
    /// The increasing affine map `t ↦ slope·t + shift`, `slope > 0`.
    Aff { slope: Rational, shift: Rational },
}

impl GroupElem {
    pub fn int(n: impl Into<BigInt>) -> Self {
        GroupElem::Int(n.into())
    }

    pub fn rat(num: i64, den: i64) -> Self {
        GroupElem::Rat(Rational::new(num, den))
    }

    pub fn pair(head: GroupElem, tail: GroupElem) -> Self {
        GroupElem::Pair(Box::new(head), Box::new(tail))
    }

    pub fn aff(slope: Rational, shift: Rational) -> Self {
        GroupElem::Aff { slope, shift }
    }

    /// `aff(a, b)` from machine integers, for tests and examples.
    pub fn aff_int(slope: i64, shift: i64) -> Self {
        GroupElem::Aff {
            slope: Rational::from(slope),
            shift: Rational::from(shift),
        }
    }

    pub fn head(&self) -> Option<&GroupElem> {
        match self {
            GroupElem::Pair(h, _) => Some(h),
            _ => None,
        }
    }

    pub fn tail(&self) -> Option<&GroupElem> {
        match self {
            GroupElem::Pair(_, t) => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElem::Zero => write!(f, "0"),
            GroupElem::Int(n) => write!(f, "{n}"),
            GroupElem::Rat(q) => write!(f, "{q}"),
            GroupElem::Pair(h, t) => write!(f, "({h},{t})"),
            GroupElem::Aff { slope, shift } => write!(f, "aff({slope},{shift})"),
        }
    }
}
