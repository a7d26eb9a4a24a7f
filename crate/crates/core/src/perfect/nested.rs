//! The two decompositions of `Γ(Z lex Z lex Z, (1,0,0))`: over `(Z, 1)`
//! with fiber `Z lex Z`, and over `(Z lex Z, (1,0))` with fiber `Z`.

use super::{canonical_witness, state_on_lex, LexAlgebra, WitnessKind};
use crate::error::Result;
use crate::group::{GroupElem, GroupSpec, UnitalGroup};
use crate::pmv::{IterKind, Order, PmvElem};
use crate::report::{Check, Report};

/// Multiples tried by the direct infinitesimal test.
const MULTIPLES: u64 = 8;

fn zz() -> GroupSpec {
    GroupSpec::lex(GroupSpec::Integers, GroupSpec::Integers).expect("Z is linear")
}

/// `Γ(Z lex (Z lex Z), (1,(0,0)))`, elements `(a,(b,c))`.
pub fn head_z() -> Result<LexAlgebra> {
    LexAlgebra::strong(UnitalGroup::integers(1)?, zz())
}

/// `Γ((Z lex Z) lex Z, ((1,0),0))`, elements `((a,b),c)`.
pub fn head_zz() -> Result<LexAlgebra> {
    let u = GroupElem::pair(GroupElem::int(1), GroupElem::int(0));
    LexAlgebra::strong(UnitalGroup::new(zz(), u)?, GroupSpec::Integers)
}

/// `m·x` is defined for `m ≤ MULTIPLES`, compared against `ord(x) = ∞`.
fn infinitesimal(x: &PmvElem) -> Result<Option<bool>> {
    let direct = x.iterate(MULTIPLES, IterKind::GroupMultiple)?.is_some();
    let by_order = x.ord() == Order::Infinite;
    Ok((direct == by_order).then_some(direct))
}

/// Classifies every element with coordinates in `[-bound, bound]` under
/// both decompositions and compares the zero slice, the state kernel and
/// the infinitesimals with their closed descriptions.
pub fn nested_classification(bound: i64) -> Result<Report> {
    let mut r = Report::new(format!("nested lex classification, coordinates in [-{bound},{bound}]"));
    let range = || -bound..=bound;
    let triples = || range().flat_map(move |a| range().flat_map(move |b| range().map(move |c| (a, b, c))));

    let m1 = head_z()?;
    let w1 = canonical_witness(&m1, WitnessKind::Strong)?;
    let s1 = state_on_lex(&m1)?;
    let mut in1 = 0usize;
    let mut zero1 = 0usize;
    r.push(Check::exhaustive("M1: zero slice = {(0,(0,m)): m ≥ 0} ∪ {(0,(n,m)): n > 0} = Ker(s) = Infinit", triples(), |(a, b, c)| {
        let v = GroupElem::pair(GroupElem::int(a), GroupElem::pair(GroupElem::int(b), GroupElem::int(c)));
        if !m1.algebra().contains(&v)? {
            return Ok(None);
        }
        in1 += 1;
        let x = m1.algebra().elem(v)?;
        let slice0 = w1.classify(&x)? == GroupElem::int(0);
        let printed = a == 0 && ((b == 0 && c >= 0) || b > 0);
        let s = s1.eval(&x)?;
        let Some(inf) = infinitesimal(&x)? else {
            return Ok(Some(format!("multiples and order disagree at {x}")));
        };
        zero1 += slice0 as usize;
        Ok((slice0 != printed || slice0 != s.is_zero() || slice0 != inf || !(s.is_zero() || s.is_one()))
            .then(|| format!("{x}: slice0={slice0} printed={printed} s={s} infinitesimal={inf}")))
    })?);
    r.fact("M1 elements", in1).fact("M1 zero slice", zero1);

    let m2 = head_zz()?;
    let w2 = canonical_witness(&m2, WitnessKind::Strong)?;
    let s2 = state_on_lex(&m2)?;
    let h0 = zz().zero();
    let mut in2 = 0usize;
    let mut zero2 = 0usize;
    let mut kernel2 = 0usize;
    r.push(Check::exhaustive("M2: zero slice = {((0,0),m): m ≥ 0} and Ker(s) = Infinit", triples(), |(a, b, c)| {
        let v = GroupElem::pair(GroupElem::pair(GroupElem::int(a), GroupElem::int(b)), GroupElem::int(c));
        if !m2.algebra().contains(&v)? {
            return Ok(None);
        }
        in2 += 1;
        let x = m2.algebra().elem(v)?;
        let slice0 = w2.classify(&x)? == h0;
        let printed = a == 0 && b == 0 && c >= 0;
        let s = s2.eval(&x)?;
        let Some(inf) = infinitesimal(&x)? else {
            return Ok(Some(format!("multiples and order disagree at {x}")));
        };
        zero2 += slice0 as usize;
        kernel2 += s.is_zero() as usize;
        Ok((slice0 != printed || s.is_zero() != inf || (slice0 && !inf) || !(s.is_zero() || s.is_one()))
            .then(|| format!("{x}: slice0={slice0} printed={printed} s={s} infinitesimal={inf}")))
    })?);
    r.push(Check::single("M2: zero slice is strictly inside Ker(s)", zero2 < kernel2, || {
        format!("zero slice {zero2}, kernel {kernel2}")
    }));
    r.fact("M2 elements", in2).fact("M2 zero slice", zero2).fact("M2 kernel", kernel2);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_range() {
        let r = nested_classification(4).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn views_of_the_same_point() {
        let m1 = head_z().unwrap();
        let x = m1.pair(GroupElem::int(0), GroupElem::pair(GroupElem::int(3), GroupElem::int(-2))).unwrap();
        assert!(state_on_lex(&m1).unwrap().eval(&x).unwrap().is_zero());
        let m2 = head_zz().unwrap();
        let y = m2.pair(GroupElem::pair(GroupElem::int(0), GroupElem::int(3)), GroupElem::int(-2)).unwrap();
        let w = canonical_witness(&m2, WitnessKind::Strong).unwrap();
        assert_eq!(w.classify(&y).unwrap(), GroupElem::pair(GroupElem::int(0), GroupElem::int(3)));
    }
}
