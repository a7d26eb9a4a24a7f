use std::sync::Arc;

use super::mapping::{compose, verify_hom, MapFn, MapKind, Mapping};
use super::LexAlgebra;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::group::{GroupElem, GroupHom, GroupSpec, UnitalGroup};
use crate::report::{Check, Report};

/// `(t, g) ↦ (t, h(g))` between the strong lex algebras over `base`.
pub fn lift_morphism(h: &GroupHom, base: &UnitalGroup) -> Result<Mapping> {
    let src = LexAlgebra::strong(base.clone(), h.source().clone())?;
    let tgt = LexAlgebra::strong(base.clone(), h.target().clone())?;
    let hf = h.clone();
    let forward: MapFn = Arc::new(move |x| {
        let (t, g) = split(x.value())?;
        Ok(GroupElem::pair(t.clone(), hf.apply(g)?))
    });
    Ok(Mapping::new(
        format!("lift({h})"),
        src.algebra().clone(),
        tgt.algebra().clone(),
        MapKind::Homomorphism,
        forward,
        None,
    ))
}

fn split(x: &GroupElem) -> Result<(&GroupElem, &GroupElem)> {
    match (x.head(), x.tail()) {
        (Some(t), Some(g)) => Ok((t, g)),
        _ => Err(Error::Shape { spec: "pair".into(), elem: x.to_string() }),
    }
}

/// Recovers the fiber hom of a map between strong lex algebras over the
/// same base.  Only `M_0 → M'_0` is read: a fiber element `g` is split as
/// `g⁺ − g⁻` and sent to `tail f(0, g⁺) − tail f(0, g⁻)`.
pub fn extract_morphism(f: &Mapping) -> Result<GroupHom> {
    let src = LexAlgebra::from_algebra(f.source())?;
    let tgt = LexAlgebra::from_algebra(f.target())?;
    if src.base() != tgt.base() {
        return Err(Error::Precondition(format!(
            "source base {} differs from target base {}",
            src.base_spec(),
            tgt.base_spec()
        )));
    }
    if !src.is_strong() || !tgt.is_strong() {
        return Err(Error::Precondition("extraction needs zero offsets on both sides".into()));
    }
    let (h, g1, g2) = (src.base_spec().clone(), src.fiber().clone(), tgt.fiber().clone());
    let h0 = h.zero();
    let on_slice = |g: GroupElem| -> Result<GroupElem> {
        let x = src.pair(h0.clone(), g)?;
        let y = f.apply(&x)?;
        if *tgt.head(&y) != h0 {
            return Err(Error::InvalidHom(format!(
                "{} sends {x} ∈ M_0 to {y}, outside the target's M_0",
                f.name
            )));
        }
        Ok(tgt.tail(&y).clone())
    };
    let map = |g: &GroupElem| -> Result<GroupElem> {
        let plus = on_slice(g1.positive_part(g)?)?;
        let minus = on_slice(g1.negative_part(g)?)?;
        g2.sub(&plus, &minus)
    };
    GroupHom::recognize(&g1, &g2, &map)
}

/// Functor laws over the catalog of fiber homs: each lift is a
/// homomorphism, the identity lifts to the identity, lifts compose, and
/// extraction inverts lifting.
pub fn functor_laws(base: &UnitalGroup, homs: &[GroupHom], cfg: &Config) -> Result<Report> {
    let mut r = Report::new(format!("functor over base {}", base.spec()));
    let samples = cfg.samples;
    for h in homs {
        let lifted = lift_morphism(h, base)?;
        let hom = verify_hom(&lifted, cfg)?;
        r.push(Check::single(format!("lift({h}) is a homomorphism"), hom.passed(), || {
            hom.failures().map(|c| format!("{}: {}", c.name, c.counterexample.clone().unwrap_or_default())).collect::<Vec<_>>().join("; ")
        }));
        if h.is_identity() || h.source() == h.target() && is_identity_map(h, cfg)? {
            let src = LexAlgebra::from_algebra(lifted.source())?;
            r.push(Check::sampled_n(format!("lift({h}) = id"), cfg, samples, |s| {
                let x = src.sample(s)?;
                let y = lifted.apply(&x)?;
                Ok((y.value() != x.value()).then(|| format!("{x} ↦ {y}")))
            })?);
        }
        let name = format!("extract(lift({h})) = {h}");
        match extract_morphism(&lifted) {
            Ok(back) => {
                let diff = back.disagreement(h, cfg.seed, samples, cfg.bound)?;
                r.push(Check::single(name, diff.is_none(), || {
                    let a = diff.clone().unwrap();
                    format!("recovered {back} differs at {a}")
                }));
            }
            Err(e) => {
                r.push(Check::fail(name, 1, e.to_string()));
            }
        }
    }
    for h2 in homs {
        for h1 in homs.iter().filter(|h1| h1.target() == h2.source()) {
            let whole = lift_morphism(&GroupHom::compose(h2.clone(), h1.clone())?, base)?;
            let parts = compose(&lift_morphism(h2, base)?, &lift_morphism(h1, base)?)?;
            let src = LexAlgebra::from_algebra(whole.source())?;
            r.push(Check::sampled_n(format!("lift({h2} ∘ {h1}) = lift({h2}) ∘ lift({h1})"), cfg, samples, |s| {
                let x = src.sample(s)?;
                let (a, b) = (whole.apply(&x)?, parts.apply(&x)?);
                Ok((a != b).then(|| format!("at {x}: {a} vs {b}")))
            })?);
        }
    }
    Ok(r)
}

fn is_identity_map(h: &GroupHom, cfg: &Config) -> Result<bool> {
    Ok(h.disagreement(&GroupHom::identity(h.source().clone()), cfg.seed, 64, cfg.bound)?.is_none())
}

/// Catalog used by the functor checks: endomorphisms of `fiber` plus the
/// right injection into `lex(Z, fiber)`.
pub fn hom_catalog(fiber: &GroupSpec) -> Result<Vec<GroupHom>> {
    let mut out = GroupHom::endo_catalog(fiber);
    out.push(GroupHom::inject_right(GroupSpec::Integers, fiber.clone())?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_scale_two() {
        let base = UnitalGroup::integers(1).unwrap();
        let h = GroupHom::scale(GroupSpec::Integers, 2.into()).unwrap();
        let m = lift_morphism(&h, &base).unwrap();
        let x = m.source().elem(GroupElem::pair(GroupElem::int(1), GroupElem::int(-3))).unwrap();
        assert_eq!(m.apply(&x).unwrap().value(), &GroupElem::pair(GroupElem::int(1), GroupElem::int(-6)));
        let back = extract_morphism(&m).unwrap();
        assert_eq!(back.apply(&GroupElem::int(7)).unwrap(), GroupElem::int(14));
    }

    #[test]
    fn laws_over_catalogs() {
        let cfg = Config::default().with_samples(100);
        let base = UnitalGroup::integers(2).unwrap();
        for fiber in [GroupSpec::Integers, GroupSpec::Rationals, GroupSpec::lex(GroupSpec::Integers, GroupSpec::Integers).unwrap()] {
            let r = functor_laws(&base, &hom_catalog(&fiber).unwrap(), &cfg).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn extraction_rejects_head_moving_maps() {
        let base = UnitalGroup::integers(1).unwrap();
        let lex = LexAlgebra::strong(base, GroupSpec::Integers).unwrap();
        let one = lex.algebra().one().into_value();
        let forward: MapFn = Arc::new(move |x| Ok(if x.is_zero() { x.value().clone() } else { one.clone() }));
        let m = Mapping::new("bad", lex.algebra().clone(), lex.algebra().clone(), MapKind::Homomorphism, forward, None);
        assert!(matches!(extract_morphism(&m), Err(Error::InvalidHom(_))));
    }
}
