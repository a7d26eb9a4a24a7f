use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{GroupElem, GroupSpec};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Result of comparing two group elements.  Catalog groups are all linear,
/// so `Incomparable` only arises for hypothetical non-linear factors.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupOrdering {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl From<Ordering> for GroupOrdering {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => GroupOrdering::Less,
            Ordering::Equal => GroupOrdering::Equal,
            Ordering::Greater => GroupOrdering::Greater,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LatticeOp {
    Join,
    Meet,
}

fn slope_ok(slope: &Rational, spec: &GroupSpec, a: &GroupElem) -> Result<()> {
    if slope.is_positive() {
        Ok(())
    } else {
        Err(Error::shape(spec, a))
    }
}

impl GroupSpec {
    pub fn add(&self, a: &GroupElem, b: &GroupElem) -> Result<GroupElem> {
        use GroupElem as E;
        let out = match (self, a, b) {
            (GroupSpec::Trivial, E::Zero, E::Zero) => E::Zero,
            (GroupSpec::Integers, E::Int(x), E::Int(y)) => E::Int(x + y),
            (GroupSpec::Rationals, E::Rat(x), E::Rat(y)) => E::Rat(x + y),
            (GroupSpec::Lex(hs, gs), E::Pair(h1, g1), E::Pair(h2, g2)) => {
                E::pair(hs.add(h1, h2)?, gs.add(g1, g2)?)
            }
            (
                GroupSpec::AffinePos,
                E::Aff { slope: a1, shift: b1 },
                E::Aff { slope: a2, shift: b2 },
            ) => {
                slope_ok(a1, self, a)?;
                slope_ok(a2, self, b)?;
                // (f + g)(t) = f(g(t))
                E::aff(a1 * a2, a1 * b2 + b1)
            }
            _ => return Err(self.mismatch(a, b)),
        };
        Ok(out)
    }

    pub fn neg(&self, a: &GroupElem) -> Result<GroupElem> {
        use GroupElem as E;
        let out = match (self, a) {
            (GroupSpec::Trivial, E::Zero) => E::Zero,
            (GroupSpec::Integers, E::Int(x)) => E::Int(-x),
            (GroupSpec::Rationals, E::Rat(x)) => E::Rat(-x),
            (GroupSpec::Lex(hs, gs), E::Pair(h, g)) => E::pair(hs.neg(h)?, gs.neg(g)?),
            (GroupSpec::AffinePos, E::Aff { slope, shift }) => {
                slope_ok(slope, self, a)?;
                let inv = slope.recip();
                let shift = -(shift * &inv);
                E::aff(inv, shift)
            }
            _ => return Err(Error::shape(self, a)),
        };
        Ok(out)
    }

    /// `a - b`, that is `a + (-b)`.
    pub fn sub(&self, a: &GroupElem, b: &GroupElem) -> Result<GroupElem> {
        self.add(a, &self.neg(b)?)
    }

    /// `-b + a`.
    pub fn sub_left(&self, b: &GroupElem, a: &GroupElem) -> Result<GroupElem> {
        self.add(&self.neg(b)?, a)
    }

    pub fn cmp(&self, a: &GroupElem, b: &GroupElem) -> Result<GroupOrdering> {
        use GroupElem as E;
        let out = match (self, a, b) {
            (GroupSpec::Trivial, E::Zero, E::Zero) => GroupOrdering::Equal,
            (GroupSpec::Integers, E::Int(x), E::Int(y)) => x.cmp(y).into(),
            (GroupSpec::Rationals, E::Rat(x), E::Rat(y)) => x.cmp(y).into(),
            (GroupSpec::Lex(hs, gs), E::Pair(h1, g1), E::Pair(h2, g2)) => {
                match hs.cmp(h1, h2)? {
                    GroupOrdering::Equal => gs.cmp(g1, g2)?,
                    // a linear head never reports Incomparable
                    other => {
                        gs.check(g1)?;
                        gs.check(g2)?;
                        other
                    }
                }
            }
            (
                GroupSpec::AffinePos,
                E::Aff { slope: a1, shift: b1 },
                E::Aff { slope: a2, shift: b2 },
            ) => {
                slope_ok(a1, self, a)?;
                slope_ok(a2, self, b)?;
                a1.cmp(a2).then_with(|| b1.cmp(b2)).into()
            }
            _ => return Err(self.mismatch(a, b)),
        };
        Ok(out)
    }

    pub fn le(&self, a: &GroupElem, b: &GroupElem) -> Result<bool> {
        Ok(matches!(
            self.cmp(a, b)?,
            GroupOrdering::Less | GroupOrdering::Equal
        ))
    }

    pub fn lt(&self, a: &GroupElem, b: &GroupElem) -> Result<bool> {
        Ok(self.cmp(a, b)? == GroupOrdering::Less)
    }

    pub fn lattice(&self, a: &GroupElem, b: &GroupElem, which: LatticeOp) -> Result<GroupElem> {
        match (self, a, b) {
            (GroupSpec::Lex(hs, gs), GroupElem::Pair(h1, g1), GroupElem::Pair(h2, g2)) => {
                match (hs.cmp(h1, h2)?, which) {
                    (GroupOrdering::Equal, _) => {
                        Ok(GroupElem::pair((**h1).clone(), gs.lattice(g1, g2, which)?))
                    }
                    (GroupOrdering::Greater, LatticeOp::Join)
                    | (GroupOrdering::Less, LatticeOp::Meet) => {
                        gs.check(g2)?;
                        Ok(a.clone())
                    }
                    (GroupOrdering::Less, LatticeOp::Join)
                    | (GroupOrdering::Greater, LatticeOp::Meet) => {
                        gs.check(g1)?;
                        Ok(b.clone())
                    }
                    (GroupOrdering::Incomparable, _) => Err(Error::InvalidGroup(format!(
                        "{self}: head factor is not linearly ordered"
                    ))),
                }
            }
            _ => match (self.cmp(a, b)?, which) {
                (GroupOrdering::Incomparable, _) => Err(Error::InvalidGroup(format!(
                    "{self}: no lattice rule for incomparable {a}, {b}"
                ))),
                (GroupOrdering::Greater, LatticeOp::Join)
                | (GroupOrdering::Less, LatticeOp::Meet)
                | (GroupOrdering::Equal, _) => Ok(a.clone()),
                _ => Ok(b.clone()),
            },
        }
    }

    pub fn join(&self, a: &GroupElem, b: &GroupElem) -> Result<GroupElem> {
        self.lattice(a, b, LatticeOp::Join)
    }

    pub fn meet(&self, a: &GroupElem, b: &GroupElem) -> Result<GroupElem> {
        self.lattice(a, b, LatticeOp::Meet)
    }

    /// Membership in the commutative center, decided per variant.  The
    /// center of `Aff` is trivial: `aff(a,β)` commutes with every
    /// `aff(c,δ)` iff `(a-1)δ = (c-1)β` for all `c, δ`, forcing `a = 1`
    /// and `β = 0`.
    pub fn center_contains(&self, a: &GroupElem) -> Result<bool> {
        self.check(a)?;
        Ok(match (self, a) {
            (GroupSpec::AffinePos, GroupElem::Aff { slope, shift }) => {
                slope.is_one() && shift.is_zero()
            }
            (GroupSpec::Lex(hs, gs), GroupElem::Pair(h, g)) => {
                hs.center_contains(h)? && gs.center_contains(g)?
            }
            _ => true,
        })
    }

    /// `n·a = a + ... + a` (`n` copies).
    pub fn multiple(&self, n: u64, a: &GroupElem) -> Result<GroupElem> {
        self.check(a)?;
        let mut acc = self.zero();
        let mut base = a.clone();
        let mut k = n;
        // powers of one element commute, so square-and-multiply is exact
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            base = self.add(&base, &base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// `a⁺ = a ∨ 0`.
    pub fn positive_part(&self, a: &GroupElem) -> Result<GroupElem> {
        self.join(a, &self.zero())
    }

    /// `a⁻ = -(a ∧ 0)`, so `a = a⁺ - a⁻`.
    pub fn negative_part(&self, a: &GroupElem) -> Result<GroupElem> {
        self.neg(&self.meet(a, &self.zero())?)
    }

    pub fn is_positive(&self, a: &GroupElem) -> Result<bool> {
        self.le(&self.zero(), a)
    }

    /// Least `n ≥ 1` with `n·x ≥ target`, or `None` when no multiple
    /// reaches it.  Requires `x ≥ 0` and `target ≥ 0`.
    pub fn least_multiple_reaching(&self, x: &GroupElem, target: &GroupElem) -> Result<Option<u64>> {
        if !self.is_positive(x)? || !self.is_positive(target)? {
            return Err(Error::Precondition(format!(
                "least multiple needs x ≥ 0 and target ≥ 0 in {self}, got {x}, {target}"
            )));
        }
        if self.le(target, x)? {
            return Ok(Some(1));
        }
        use GroupElem as E;
        match (self, x, target) {
            (GroupSpec::Trivial, ..) => Ok(Some(1)),
            (GroupSpec::Integers, E::Int(a), E::Int(t)) => {
                if a.is_zero() {
                    Ok(None)
                } else {
                    Ok(to_u64(&ceil_div(t, a)))
                }
            }
            (GroupSpec::Rationals, E::Rat(a), E::Rat(t)) => {
                if a.is_zero() {
                    Ok(None)
                } else {
                    Ok(to_u64(&(t / a).ceil()))
                }
            }
            (GroupSpec::Lex(hs, gs), E::Pair(h, g), E::Pair(th, tg)) => {
                if hs.is_trivial() {
                    return gs.least_multiple_reaching(g, tg);
                }
                if hs.cmp(h, &hs.zero())? == GroupOrdering::Equal {
                    // head stays 0 while the target head is positive, or
                    // both heads are 0 and the tails decide
                    if hs.cmp(th, &hs.zero())? == GroupOrdering::Equal {
                        return gs.least_multiple_reaching(g, tg);
                    }
                    return Ok(None);
                }
                let Some(m) = hs.least_multiple_reaching(h, th)? else {
                    return Ok(None);
                };
                let mh = hs.multiple(m, h)?;
                if hs.lt(th, &mh)? {
                    return Ok(Some(m));
                }
                // heads tie at m; the next multiple has a strictly larger head
                let mg = gs.multiple(m, g)?;
                if gs.le(tg, &mg)? {
                    Ok(Some(m))
                } else {
                    Ok(Some(m + 1))
                }
            }
            (
                GroupSpec::AffinePos,
                E::Aff { slope: a, shift: b },
                E::Aff { slope: ta, shift: tb },
            ) => {
                let one = Rational::one();
                if a.is_one() {
                    // n·(1,b) = (1, n b)
                    if ta > &one {
                        return Ok(None);
                    }
                    if ta < &one {
                        return Ok(Some(1));
                    }
                    if b.is_zero() {
                        return Ok(None);
                    }
                    return Ok(to_u64(&(tb / b).ceil()).map(|n| n.max(1)));
                }
                // a > 1: the slope aⁿ grows geometrically, so this loop is
                // bounded by log_a(ta) + 2 iterations
                let mut n = 1u64;
                let mut acc = x.clone();
                loop {
                    if self.le(target, &acc)? {
                        return Ok(Some(n));
                    }
                    acc = self.add(&acc, x)?;
                    n += 1;
                }
            }
            _ => Err(self.mismatch(x, target)),
        }
    }

    fn mismatch(&self, a: &GroupElem, b: &GroupElem) -> Error {
        if self.contains(a) {
            Error::shape(self, b)
        } else {
            Error::shape(self, a)
        }
    }
}

fn ceil_div(t: &BigInt, a: &BigInt) -> BigInt {
    Rational::new(t.clone(), a.clone()).ceil()
}

fn to_u64(n: &BigInt) -> Option<u64> {
    use num_traits::ToPrimitive;
    let n = if n < &BigInt::one() { BigInt::one() } else { n.clone() };
    n.to_u64()
}
