use std::fmt;


use super::{GroupElem, GroupSpec};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sample::Sampler;

/// Number of sampled checks a hom must pass before it is accepted.
pub const HOM_VALIDATION_SAMPLES: usize = 500;

const VALIDATION_SEED: u64 = 0x6c65_786d_762d_686f;

/// A finitely presented ℓ-group homomorphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum HomPresentation {
    Zero,
    Identity,
    /// Multiplication by `k ≥ 0` on `Z` (integral `k`) or `Q`.
    Scale(Rational),
    /// `(h, g) ↦ (h₁(h), h₂(g))`.
    Pairwise(Box<GroupHom>, Box<GroupHom>),
    /// `g ↦ (0, g)` into a lexicographic product.
    InjectRight,
    /// `Compose(h₂, h₁)` is `h₂ ∘ h₁`.
    Compose(Box<GroupHom>, Box<GroupHom>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupHom {
    source: GroupSpec,
    target: GroupSpec,
    presentation: HomPresentation,
}

impl GroupHom {
    fn validated(source: GroupSpec, target: GroupSpec, presentation: HomPresentation) -> Result<Self> {
        let h = GroupHom { source, target, presentation };
        h.validate()?;
        Ok(h)
    }

    pub fn zero(source: GroupSpec, target: GroupSpec) -> Result<Self> {
        GroupHom::validated(source, target, HomPresentation::Zero)
    }

    pub fn identity(spec: GroupSpec) -> Self {
        GroupHom {
            source: spec.clone(),
            target: spec,
            presentation: HomPresentation::Identity,
        }
    }

    pub fn scale(spec: GroupSpec, k: Rational) -> Result<Self> {
        match spec {
            GroupSpec::Integers if !k.is_integer() => {
                return Err(Error::InvalidHom(format!("scale({k}) on Z needs an integer factor")))
            }
            GroupSpec::Integers | GroupSpec::Rationals => {}
            _ => return Err(Error::InvalidHom(format!("scale is only defined on Z and Q, not {spec}"))),
        }
        if k.is_negative() {
            return Err(Error::InvalidHom(format!("scale({k}) reverses the order")));
        }
        GroupHom::validated(spec.clone(), spec, HomPresentation::Scale(k))
    }

    pub fn pairwise(head: GroupHom, tail: GroupHom) -> Result<Self> {
        let source = GroupSpec::lex(head.source.clone(), tail.source.clone())?;
        let target = GroupSpec::lex(head.target.clone(), tail.target.clone())?;
        GroupHom::validated(
            source,
            target,
            HomPresentation::Pairwise(Box::new(head), Box::new(tail)),
        )
    }

    /// `G → lex(head, G)`, `g ↦ (0, g)`.
    pub fn inject_right(head: GroupSpec, tail: GroupSpec) -> Result<Self> {
        let target = GroupSpec::lex(head, tail.clone())?;
        GroupHom::validated(tail, target, HomPresentation::InjectRight)
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: GroupHom, inner: GroupHom) -> Result<Self> {
        if inner.target != outer.source {
            return Err(Error::InvalidHom(format!(
                "cannot compose {outer} after {inner}: {} ≠ {}",
                inner.target, outer.source
            )));
        }
        GroupHom::validated(
            inner.source.clone(),
            outer.target.clone(),
            HomPresentation::Compose(Box::new(outer), Box::new(inner)),
        )
    }

    pub fn source(&self) -> &GroupSpec {
        &self.source
    }

    pub fn target(&self) -> &GroupSpec {
        &self.target
    }

    pub fn presentation(&self) -> &HomPresentation {
        &self.presentation
    }

    pub fn apply(&self, a: &GroupElem) -> Result<GroupElem> {
        self.source.check(a)?;
        let out = match (&self.presentation, a) {
            (HomPresentation::Zero, _) => self.target.zero(),
            (HomPresentation::Identity, _) => a.clone(),
            (HomPresentation::Scale(k), GroupElem::Int(n)) => {
                GroupElem::Int(n * k.to_integer().expect("integral factor on Z"))
            }
            (HomPresentation::Scale(k), GroupElem::Rat(q)) => GroupElem::Rat(q * k),
            (HomPresentation::Pairwise(h1, h2), GroupElem::Pair(h, g)) => {
                GroupElem::pair(h1.apply(h)?, h2.apply(g)?)
            }
            (HomPresentation::InjectRight, _) => {
                let head = self.target.head().expect("lex target");
                GroupElem::pair(head.zero(), a.clone())
            }
            (HomPresentation::Compose(outer, inner), _) => outer.apply(&inner.apply(a)?)?,
            _ => return Err(Error::shape(&self.source, a)),
        };
        Ok(out)
    }

    /// Sampled check that the map lands in the target and preserves
    /// `+`, `0`, `∨` and `∧`.
    fn validate(&self) -> Result<()> {
        let zero = self.apply(&self.source.zero())?;
        if zero != self.target.zero() {
            return Err(Error::InvalidHom(format!("{self} sends 0 to {zero}")));
        }
        for i in 0..HOM_VALIDATION_SAMPLES {
            let mut s = Sampler::for_index(VALIDATION_SEED, 0, i, 12);
            let a = s.free(&self.source);
            let b = s.free(&self.source);
            let (ha, hb) = (self.apply(&a)?, self.apply(&b)?);
            if !self.target.contains(&ha) {
                return Err(Error::InvalidHom(format!("{self} sends {a} outside {}", self.target)));
            }
            let checks = [
                ("+", self.apply(&self.source.add(&a, &b)?)?, self.target.add(&ha, &hb)?),
                ("∨", self.apply(&self.source.join(&a, &b)?)?, self.target.join(&ha, &hb)?),
                ("∧", self.apply(&self.source.meet(&a, &b)?)?, self.target.meet(&ha, &hb)?),
            ];
            for (op, lhs, rhs) in checks {
                if lhs != rhs {
                    return Err(Error::InvalidHom(format!(
                        "{self} does not preserve {op} at ({a}, {b}): {lhs} ≠ {rhs}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// First sampled element where the two maps differ, if any.
    pub fn disagreement(&self, other: &GroupHom, seed: u64, samples: usize, bound: i64) -> Result<Option<GroupElem>> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::InvalidHom(format!("{self} and {other} have different types")));
        }
        for i in 0..samples {
            let a = Sampler::for_index(seed, 1, i, bound).free(&self.source);
            if self.apply(&a)? != other.apply(&a)? {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }

    /// Match an arbitrary map `source → target` against the catalog by
    /// probing it, then confirm the match on samples.
    pub fn recognize(
        source: &GroupSpec,
        target: &GroupSpec,
        f: &dyn Fn(&GroupElem) -> Result<GroupElem>,
    ) -> Result<Self> {
        let candidate = GroupHom::guess(source, target, f)?;
        for i in 0..HOM_VALIDATION_SAMPLES {
            let a = Sampler::for_index(VALIDATION_SEED, 2, i, 12).free(source);
            let (want, got) = (f(&a)?, candidate.apply(&a)?);
            if want != got {
                return Err(Error::InvalidHom(format!(
                    "map is not in the catalog: guessed {candidate}, but it sends {a} to {want} instead of {got}"
                )));
            }
        }
        Ok(candidate)
    }

    fn guess(
        source: &GroupSpec,
        target: &GroupSpec,
        f: &dyn Fn(&GroupElem) -> Result<GroupElem>,
    ) -> Result<Self> {
        if source.is_trivial() {
            return GroupHom::zero(source.clone(), target.clone());
        }
        if let GroupSpec::Lex(ht, gt) = target {
            if **gt == *source {
                let probe = Sampler::for_index(VALIDATION_SEED, 3, 1, 12).strictly_positive(source);
                if f(&probe)? == GroupElem::pair(ht.zero(), probe) {
                    return GroupHom::inject_right((**ht).clone(), source.clone());
                }
            }
        }
        match (source, target) {
            (GroupSpec::Integers, GroupSpec::Integers) => match f(&GroupElem::int(1))? {
                GroupElem::Int(k) => GroupHom::simplest_scale(source, Rational::from(k)),
                other => Err(Error::shape(target, &other)),
            },
            (GroupSpec::Rationals, GroupSpec::Rationals) => match f(&GroupElem::rat(1, 1))? {
                GroupElem::Rat(k) => GroupHom::simplest_scale(source, k),
                other => Err(Error::shape(target, &other)),
            },
            (GroupSpec::Lex(hs, gs), GroupSpec::Lex(ht, gt)) => {
                let head = |h: &GroupElem| -> Result<GroupElem> {
                    let img = f(&GroupElem::pair(h.clone(), gs.zero()))?;
                    img.head().cloned().ok_or_else(|| Error::shape(target, &img))
                };
                let tail = |g: &GroupElem| -> Result<GroupElem> {
                    let img = f(&GroupElem::pair(hs.zero(), g.clone()))?;
                    img.tail().cloned().ok_or_else(|| Error::shape(target, &img))
                };
                let h1 = GroupHom::recognize(hs, ht, &head)?;
                let h2 = GroupHom::recognize(gs, gt, &tail)?;
                if h1.is_identity() && h2.is_identity() {
                    return Ok(GroupHom::identity(source.clone()));
                }
                GroupHom::pairwise(h1, h2)
            }
            _ => {
                let probe = Sampler::for_index(VALIDATION_SEED, 3, 2, 12).strictly_positive(source);
                if f(&probe)? == target.zero() {
                    GroupHom::zero(source.clone(), target.clone())
                } else if source == target {
                    Ok(GroupHom::identity(source.clone()))
                } else {
                    Err(Error::Unsupported(format!("no catalog hom {source} → {target} matches")))
                }
            }
        }
    }

    fn simplest_scale(spec: &GroupSpec, k: Rational) -> Result<Self> {
        if k.is_zero() {
            GroupHom::zero(spec.clone(), spec.clone())
        } else if k.is_one() {
            Ok(GroupHom::identity(spec.clone()))
        } else {
            GroupHom::scale(spec.clone(), k)
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.presentation, HomPresentation::Identity)
    }

    /// Small catalog of homs from `spec` to itself, used by the functor
    /// checks and the CLI.
    pub fn endo_catalog(spec: &GroupSpec) -> Vec<GroupHom> {
        let mut out = vec![GroupHom::identity(spec.clone())];
        out.extend(GroupHom::zero(spec.clone(), spec.clone()));
        match spec {
            GroupSpec::Integers => {
                for k in [2, 3] {
                    out.extend(GroupHom::scale(spec.clone(), Rational::from(k)));
                }
            }
            GroupSpec::Rationals => {
                out.extend(GroupHom::scale(spec.clone(), Rational::new(1, 2)));
                out.extend(GroupHom::scale(spec.clone(), Rational::from(3)));
            }
            GroupSpec::Lex(h, g) => {
                let heads = GroupHom::endo_catalog(h);
                let tails = GroupHom::endo_catalog(g);
                for h1 in heads.iter().filter(|x| !x.is_zero_map()).take(2) {
                    for h2 in tails.iter().take(3) {
                        if let Ok(p) = GroupHom::pairwise(h1.clone(), h2.clone()) {
                            if !(p.is_pairwise_identity()) {
                                out.push(p);
                            }
                        }
                    }
                }
            }
            _ => {}
        }
        out
    }

    fn is_zero_map(&self) -> bool {
        matches!(self.presentation, HomPresentation::Zero)
    }

    fn is_pairwise_identity(&self) -> bool {
        match &self.presentation {
            HomPresentation::Pairwise(a, b) => a.is_identity() && b.is_identity(),
            _ => false,
        }
    }
}

impl fmt::Display for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.presentation {
            HomPresentation::Zero => write!(f, "zero"),
            HomPresentation::Identity => write!(f, "id"),
            HomPresentation::Scale(k) => write!(f, "scale({k})"),
            HomPresentation::Pairwise(a, b) => write!(f, "pairwise({a},{b})"),
            HomPresentation::InjectRight => write!(f, "inject"),
            HomPresentation::Compose(a, b) => write!(f, "{a}∘{b}"),
        }
    }
}
