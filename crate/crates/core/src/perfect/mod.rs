//! Decompositions of `M = Γ(H lex G, (u, b))` into slices indexed by
//! `[0, u]_H`, cyclic families, and the maps between such algebras.

mod decomp;
mod functor;
mod ideal;
mod mapping;
pub mod nested;

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{GroupElem, GroupHom, GroupOrdering, GroupSpec, UnitalGroup};
use crate::pmv::{PmvAlgebra, PmvElem};
use crate::rational::Rational;
use crate::sample::Sampler;

pub use decomp::{check_cyclic, check_decomposition, check_uniqueness, theorem_suite};
pub use functor::{extract_morphism, functor_laws, hom_catalog, lift_morphism};
pub use ideal::{
    base_is_archimedean, base_maximality, canonical_lex_ideal, check_state, midpoint_certificate, state_on_lex,
    Midpoint, StateFn, SymbolicIdeal,
};
pub use mapping::{build_phi, compose, quotient_to_base, theta, verify_hom, MapFn, MapKind, Mapping};

/// `Γ(H lex G, (u, b))` with `H` linear and abelian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexAlgebra {
    base: UnitalGroup,
    fiber: GroupSpec,
    offset: GroupElem,
    realized: PmvAlgebra,
}

impl LexAlgebra {
    pub fn new(base: UnitalGroup, fiber: GroupSpec, offset: GroupElem) -> Result<Self> {
        let h = base.spec();
        if !(h.is_linear() && h.is_abelian()) {
            return Err(Error::InvalidGroup(format!("base {h} must be linear and abelian")));
        }
        if h.is_trivial() {
            return Err(Error::InvalidGroup("base must be nontrivial".into()));
        }
        fiber.check(&offset)?;
        let spec = GroupSpec::lex(h.clone(), fiber.clone())?;
        let unit = GroupElem::pair(base.unit().clone(), offset.clone());
        let realized = PmvAlgebra::gamma(spec, unit)?;
        Ok(LexAlgebra { base, fiber, offset, realized })
    }

    /// `Γ(H lex G, (u, 0))`.
    pub fn strong(base: UnitalGroup, fiber: GroupSpec) -> Result<Self> {
        let zero = fiber.zero();
        LexAlgebra::new(base, fiber, zero)
    }

    /// `Γ(H lex O, (u, 0))`, a copy of `Γ(H, u)`.
    pub fn trivial_fiber(base: UnitalGroup) -> Result<Self> {
        LexAlgebra::strong(base, GroupSpec::Trivial)
    }

    /// Reads `Γ(lex(H, G), (u, b))` with the outermost head as base.
    pub fn from_algebra(alg: &PmvAlgebra) -> Result<Self> {
        match (alg.spec(), alg.unit()) {
            (GroupSpec::Lex(h, g), GroupElem::Pair(u, b)) => {
                let base = UnitalGroup::new((**h).clone(), (**u).clone())?;
                LexAlgebra::new(base, (**g).clone(), (**b).clone())
            }
            _ => Err(Error::Unsupported(format!("{alg} is not an interval of a lexicographic product"))),
        }
    }

    pub fn base(&self) -> &UnitalGroup {
        &self.base
    }

    pub fn base_spec(&self) -> &GroupSpec {
        self.base.spec()
    }

    pub fn u(&self) -> &GroupElem {
        self.base.unit()
    }

    pub fn fiber(&self) -> &GroupSpec {
        &self.fiber
    }

    pub fn offset(&self) -> &GroupElem {
        &self.offset
    }

    pub fn algebra(&self) -> &PmvAlgebra {
        &self.realized
    }

    pub fn is_strong(&self) -> bool {
        self.offset == self.fiber.zero()
    }

    pub fn pair(&self, t: GroupElem, g: GroupElem) -> Result<PmvElem> {
        self.realized.elem(GroupElem::pair(t, g))
    }

    pub fn head<'a>(&self, x: &'a PmvElem) -> &'a GroupElem {
        x.value().head().expect("lex element")
    }

    pub fn tail<'a>(&self, x: &'a PmvElem) -> &'a GroupElem {
        x.value().tail().expect("lex element")
    }

    /// Index in `[0, u]_H`, biased toward the endpoints.
    pub fn sample_index(&self, s: &mut Sampler) -> Result<GroupElem> {
        let h = self.base_spec();
        s.between(h, &h.zero(), self.u())
    }

    /// Index in `[0, hi]_H`.
    pub fn sample_index_below(&self, s: &mut Sampler, hi: &GroupElem) -> Result<GroupElem> {
        let h = self.base_spec();
        s.between(h, &h.zero(), hi)
    }

    /// Element with head `t`: tails are `≥ 0` at `t = 0`, `≤ b` at `t = u`
    /// and free in between.
    pub fn sample_in_slice(&self, s: &mut Sampler, t: &GroupElem) -> Result<PmvElem> {
        let h = self.base_spec();
        let g = &self.fiber;
        let tail = if *t == h.zero() {
            s.positive(g)
        } else if t == self.u() {
            s.below(g, &self.offset)?
        } else {
            s.free(g)
        };
        self.pair(t.clone(), tail)
    }

    pub fn sample(&self, s: &mut Sampler) -> Result<PmvElem> {
        let t = self.sample_index(s)?;
        self.sample_in_slice(s, &t)
    }

    /// `(v + t) ∧ u` in `H`.
    pub fn truncated_sum(&self, v: &GroupElem, t: &GroupElem) -> Result<GroupElem> {
        let h = self.base_spec();
        h.meet(&h.add(v, t)?, self.u())
    }

    pub fn cmp_index(&self, v: &GroupElem, t: &GroupElem) -> Result<GroupOrdering> {
        self.base_spec().cmp(v, t)
    }

    /// A fixed element `> 0` of the fiber, if the fiber is nontrivial.
    pub fn fiber_probe(&self) -> Option<GroupElem> {
        positive_probe(&self.fiber)
    }
}

impl fmt::Display for LexAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.realized)
    }
}

fn positive_probe(spec: &GroupSpec) -> Option<GroupElem> {
    match spec {
        GroupSpec::Trivial => None,
        GroupSpec::Integers => Some(GroupElem::int(1)),
        GroupSpec::Rationals => Some(GroupElem::rat(1, 1)),
        GroupSpec::AffinePos => Some(GroupElem::aff_int(1, 1)),
        GroupSpec::Lex(h, g) => match positive_probe(h) {
            Some(p) => Some(GroupElem::pair(p, g.zero())),
            None => positive_probe(g).map(|p| GroupElem::pair(h.zero(), p)),
        },
    }
}

/// Strong witnesses need `c_u = 1`; weak ones only `c_0 = 0` and additivity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    Strong,
    Weak,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::Strong => "strong",
            WitnessKind::Weak => "weak",
        })
    }
}

/// How a witness assigns slice indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Indexer {
    /// The head coordinate.
    Head,
    /// `u − head(x⁻)`.
    MinusMirror,
    /// `u − head(x~)`.
    TildeMirror,
}

/// Deliberate corruptions of a witness.  Every one of them must be caught
/// by the decomposition, cyclic or theorem checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Index `t ↦ min(t + step, u)`.
    ShiftUp,
    /// Every index becomes `0`.
    Collapse,
    /// Index `t ↦ u − t`.
    Reverse,
    /// Strictly positive infinitesimals `(0, g)` are sent to slice `u`.
    TailLeak,
    /// `c_t = (t, σ(t) − p)` for `t ≠ 0`.
    FamilyOffset,
    /// `c_0 = (0, p)`.
    FamilyDriftZero,
}

impl Mutation {
    pub const ALL: [Mutation; 6] = [
        Mutation::ShiftUp,
        Mutation::Collapse,
        Mutation::Reverse,
        Mutation::TailLeak,
        Mutation::FamilyOffset,
        Mutation::FamilyDriftZero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::ShiftUp => "shift-up",
            Mutation::Collapse => "collapse",
            Mutation::Reverse => "reverse",
            Mutation::TailLeak => "tail-leak",
            Mutation::FamilyOffset => "family-offset",
            Mutation::FamilyDriftZero => "family-drift-zero",
        }
    }

    fn touches_indexer(self) -> bool {
        matches!(self, Mutation::ShiftUp | Mutation::Collapse | Mutation::Reverse | Mutation::TailLeak)
    }
}

/// An algebra with a slice indexer and a cyclic family
/// `c_t = (t, σ(t))` for an ℓ-hom `σ: H → G`.
#[derive(Clone, Debug)]
pub struct PerfectWitness {
    lex: LexAlgebra,
    indexer: Indexer,
    section: GroupHom,
    kind: WitnessKind,
    mutation: Option<Mutation>,
}

/// The canonical witness: head indexer and `c_t = (t, 0)`.
pub fn canonical_witness(lex: &LexAlgebra, kind: WitnessKind) -> Result<PerfectWitness> {
    let section = GroupHom::zero(lex.base_spec().clone(), lex.fiber().clone())?;
    PerfectWitness::with_section(lex, section, kind)
}

impl PerfectWitness {
    /// Witness with family `c_t = (t, σ(t))`.  A strong witness needs
    /// `σ(u) = b`; a weak one needs `c_u ∈ M`, i.e. `σ(u) ≤ b`.
    pub fn with_section(lex: &LexAlgebra, section: GroupHom, kind: WitnessKind) -> Result<Self> {
        if section.source() != lex.base_spec() || section.target() != lex.fiber() {
            return Err(Error::InvalidHom(format!(
                "section must map {} to {}",
                lex.base_spec(),
                lex.fiber()
            )));
        }
        let top = section.apply(lex.u())?;
        match kind {
            WitnessKind::Strong if top != *lex.offset() => {
                return Err(Error::Invariant(format!(
                    "a strong witness needs c_u = 1, but c_u = ({},{}) and 1 = ({},{})",
                    lex.u(),
                    top,
                    lex.u(),
                    lex.offset()
                )))
            }
            WitnessKind::Weak if !lex.fiber().le(&top, lex.offset())? => {
                return Err(Error::Invariant(format!(
                    "c_u = ({},{}) lies above the unit",
                    lex.u(),
                    top
                )))
            }
            _ => {}
        }
        Ok(PerfectWitness {
            lex: lex.clone(),
            indexer: Indexer::Head,
            section,
            kind,
            mutation: None,
        })
    }

    /// Same data judged under different rules.  Not validated.
    pub fn with_kind(&self, kind: WitnessKind) -> Self {
        PerfectWitness { kind, ..self.clone() }
    }

    pub fn with_indexer(&self, indexer: Indexer) -> Self {
        PerfectWitness { indexer, ..self.clone() }
    }

    pub fn mutated(&self, m: Mutation) -> Self {
        PerfectWitness { mutation: Some(m), ..self.clone() }
    }

    pub fn lex(&self) -> &LexAlgebra {
        &self.lex
    }

    pub fn algebra(&self) -> &PmvAlgebra {
        self.lex.algebra()
    }

    pub fn kind(&self) -> WitnessKind {
        self.kind
    }

    pub fn section(&self) -> &GroupHom {
        &self.section
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    fn raw_index(&self, x: &PmvElem) -> Result<GroupElem> {
        let h = self.lex.base_spec();
        let u = self.lex.u();
        Ok(match self.indexer {
            Indexer::Head => self.lex.head(x).clone(),
            Indexer::MinusMirror => h.sub(u, self.lex.head(&x.minus()))?,
            Indexer::TildeMirror => h.sub(u, self.lex.head(&x.tilde()))?,
        })
    }

    /// The slice index `t` with `x ∈ M_t`.
    pub fn classify(&self, x: &PmvElem) -> Result<GroupElem> {
        let t = self.raw_index(x)?;
        let h = self.lex.base_spec();
        let u = self.lex.u();
        let Some(m) = self.mutation.filter(|m| m.touches_indexer()) else {
            return Ok(t);
        };
        Ok(match m {
            Mutation::ShiftUp => self.lex.truncated_sum(&t, &shift_step(h, u))?,
            Mutation::Collapse => h.zero(),
            Mutation::Reverse => h.sub(u, &t)?,
            Mutation::TailLeak => {
                let g = self.lex.fiber();
                let tail = self.lex.tail(x);
                if t == h.zero() && g.lt(&g.zero(), tail)? {
                    u.clone()
                } else {
                    t
                }
            }
            _ => unreachable!(),
        })
    }

    /// `c_t` as a group element of `H lex G`; it lies in `M` for the
    /// unmutated family.
    pub fn family_value(&self, t: &GroupElem) -> Result<GroupElem> {
        let h = self.lex.base_spec();
        let g = self.lex.fiber();
        let mut tail = self.section.apply(t)?;
        let p = self.lex.fiber_probe();
        match (self.mutation, p) {
            (Some(Mutation::FamilyOffset), Some(p)) if *t != h.zero() => tail = g.sub(&tail, &p)?,
            (Some(Mutation::FamilyDriftZero), Some(p)) if *t == h.zero() => tail = p,
            _ => {}
        }
        Ok(GroupElem::pair(t.clone(), tail))
    }

    pub fn family(&self, t: &GroupElem) -> Result<PmvElem> {
        self.algebra().elem(self.family_value(t)?)
    }

    /// `1 − c_u`, a group element with head `0` when the family is valid.
    pub fn offset_element(&self) -> Result<GroupElem> {
        let spec = self.algebra().spec();
        spec.sub(self.algebra().unit(), &self.family_value(self.lex.u())?)
    }
}

fn shift_step(h: &GroupSpec, u: &GroupElem) -> GroupElem {
    match (h, u) {
        (GroupSpec::Integers, _) => GroupElem::int(1),
        (GroupSpec::Rationals, GroupElem::Rat(q)) => GroupElem::Rat(q * &Rational::new(1, 2)),
        _ => u.clone(),
    }
}
