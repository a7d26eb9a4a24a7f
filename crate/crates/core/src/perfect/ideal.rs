use super::{LexAlgebra, PerfectWitness};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::group::{GroupElem, GroupSpec};
use crate::pmv::PmvElem;
use crate::rational::Rational;
use crate::report::{Check, Report};

/// A state `s = s₀ ∘ head` where `s₀` is the state of the base interval.
#[derive(Clone, Debug)]
pub struct StateFn {
    lex: LexAlgebra,
}

impl StateFn {
    pub fn eval(&self, x: &PmvElem) -> Result<Rational> {
        base_state(self.lex.base_spec(), self.lex.u(), self.lex.head(x))
    }

    /// Whether every value lies in `{0, 1}`.
    pub fn is_two_valued(&self) -> bool {
        two_valued(self.lex.base_spec(), self.lex.u())
    }
}

/// The state of `Γ(H, u)` for the linear abelian catalog: `t/u` on `Z`
/// and `Q`, and on `lex(H₁, H₂)` the state of the head (the tail being
/// infinitesimal), or of the tail when the head is trivial.
fn base_state(spec: &GroupSpec, u: &GroupElem, t: &GroupElem) -> Result<Rational> {
    match (spec, u, t) {
        (GroupSpec::Integers, GroupElem::Int(n), GroupElem::Int(k)) => {
            Ok(Rational::new(k.clone(), n.clone()))
        }
        (GroupSpec::Rationals, GroupElem::Rat(q), GroupElem::Rat(r)) => Ok(r / q),
        (GroupSpec::Lex(h, g), GroupElem::Pair(uh, ug), GroupElem::Pair(th, tg)) => {
            if h.is_trivial() {
                base_state(g, ug, tg)
            } else {
                base_state(h, uh, th)
            }
        }
        _ => Err(Error::Unsupported(format!("no state formula for base {spec}"))),
    }
}

fn two_valued(spec: &GroupSpec, u: &GroupElem) -> bool {
    match (spec, u) {
        (GroupSpec::Integers, GroupElem::Int(n)) => *n == 1.into(),
        (GroupSpec::Lex(h, g), GroupElem::Pair(uh, ug)) => {
            if h.is_trivial() {
                two_valued(g, ug)
            } else {
                two_valued(h, uh)
            }
        }
        _ => false,
    }
}

pub fn state_on_lex(lex: &LexAlgebra) -> Result<StateFn> {
    if !lex.is_strong() {
        return Err(Error::Unsupported(format!("{lex} has a nonzero offset")));
    }
    base_state(lex.base_spec(), lex.u(), lex.u())?;
    Ok(StateFn { lex: lex.clone() })
}

/// Normalization, range, additivity on sampled defined sums, and vanishing
/// on the canonical ideal.
pub fn check_state(lex: &LexAlgebra, cfg: &Config) -> Result<Report> {
    let s0 = state_on_lex(lex)?;
    let alg = lex.algebra();
    let mut r = Report::new(format!("state on {lex}"));
    let (z, o) = (s0.eval(&alg.zero())?, s0.eval(&alg.one())?);
    r.push(Check::single("s(0) = 0", z.is_zero(), || format!("s(0) = {z}")));
    r.push(Check::single("s(1) = 1", o.is_one(), || format!("s(1) = {o}")));
    r.push(Check::sampled("values in [0,1]", cfg, |s| {
        let x = lex.sample(s)?;
        let v = s0.eval(&x)?;
        Ok((v.is_negative() || v > Rational::one()).then(|| format!("s({x}) = {v}")))
    })?);
    r.push(Check::sampled("additive on defined sums", cfg, |s| {
        let h = lex.base_spec();
        let v = lex.sample_index(s)?;
        let t = lex.sample_index_below(s, &h.sub(lex.u(), &v)?)?;
        let (x, y) = (lex.sample_in_slice(s, &v)?, lex.sample_in_slice(s, &t)?);
        let Some(sum) = x.partial_add(&y)? else { return Ok(None) };
        let (a, b, c) = (s0.eval(&x)?, s0.eval(&y)?, s0.eval(&sum)?);
        Ok((&a + &b != c).then(|| format!("s({x}) + s({y}) = {} but s({sum}) = {c}", &a + &b)))
    })?);
    r.push(Check::sampled("vanishes on the canonical ideal", cfg, |s| {
        let x = lex.sample_in_slice(s, &lex.base_spec().zero())?;
        let v = s0.eval(&x)?;
        Ok((!v.is_zero()).then(|| format!("s({x}) = {v}")))
    })?);
    if s0.is_two_valued() {
        r.push(Check::sampled("two-valued", cfg, |s| {
            let x = lex.sample(s)?;
            let v = s0.eval(&x)?;
            Ok((!(v.is_zero() || v.is_one())).then(|| format!("s({x}) = {v}")))
        })?);
    }
    r.fact("two_valued", s0.is_two_valued());
    Ok(r)
}

/// `I = {(0, g) : g ≥ 0}` of a strong lex algebra.
#[derive(Clone, Debug)]
pub struct SymbolicIdeal {
    lex: LexAlgebra,
}

impl SymbolicIdeal {
    pub fn contains(&self, x: &PmvElem) -> bool {
        *self.lex.head(x) == self.lex.base_spec().zero()
    }

    /// `x/I ≤ y/I`, i.e. `x ⊙ y⁻ ∈ I`.
    pub fn quotient_le(&self, x: &PmvElem, y: &PmvElem) -> Result<bool> {
        Ok(self.contains(&x.odot(&y.minus())?))
    }

    /// `x/I = y/I`, i.e. `(x ⊙ y⁻) ⊕ (y ⊙ x⁻) ∈ I`.
    pub fn congruent(&self, x: &PmvElem, y: &PmvElem) -> Result<bool> {
        Ok(self.contains(&x.odot(&y.minus())?.oplus(&y.odot(&x.minus())?)?))
    }
}

/// The canonical ideal together with sampled evidence for each defining
/// property of a lexicographic ideal.
pub fn canonical_lex_ideal(lex: &LexAlgebra, cfg: &Config) -> Result<(SymbolicIdeal, Report)> {
    if !lex.is_strong() {
        return Err(Error::Unsupported(format!(
            "the canonical ideal is analysed for zero offset only; {lex} has offset {}",
            lex.offset()
        )));
    }
    let ideal = SymbolicIdeal { lex: lex.clone() };
    let i = &ideal;
    let alg = lex.algebra();
    let spec = alg.spec();
    let h = lex.base_spec();
    let h0 = h.zero();
    let mut r = Report::new(format!("canonical ideal of {lex}"));

    r.push(Check::single("contains 0", i.contains(&alg.zero()), String::new));
    r.push(Check::single("proper", !i.contains(&alg.one()), || "1 ∈ I".into()));
    let nontrivial = match lex.fiber_probe() {
        Some(p) => i.contains(&lex.pair(h0.clone(), p)?),
        None => false,
    };
    r.push(Check::single("nontrivial", nontrivial, || "the fiber is trivial, so I = {0}".into()));
    r.push(Check::sampled("downward closed", cfg, |s| {
        let x = lex.sample_in_slice(s, &h0)?;
        let y = alg.elem(s.between(spec, &spec.zero(), x.value())?)?;
        Ok((!i.contains(&y)).then(|| format!("{y} ≤ {x} ∈ I")))
    })?);
    r.push(Check::sampled("oplus closed", cfg, |s| {
        let (x, y) = (lex.sample_in_slice(s, &h0)?, lex.sample_in_slice(s, &h0)?);
        let z = x.oplus(&y)?;
        Ok((!i.contains(&z)).then(|| format!("{x} ⊕ {y} = {z} ∉ I")))
    })?);
    r.push(Check::sampled("normal", cfg, |s| {
        let x = lex.sample(s)?;
        let a = lex.sample_in_slice(s, &h0)?;
        let xa = x.oplus(&a)?;
        let j = alg.elem(spec.sub(xa.value(), x.value())?)?;
        let ax = a.oplus(&x)?;
        let k = alg.elem(spec.sub_left(x.value(), ax.value())?)?;
        let ok = i.contains(&j) && j.oplus(&x)? == xa && i.contains(&k) && x.oplus(&k)? == ax;
        Ok((!ok).then(|| format!("x ⊕ I ≠ I ⊕ x at x = {x}, i = {a}")))
    })?);
    r.push(Check::sampled("prime", cfg, |s| {
        let (x, y) = (lex.sample(s)?, lex.sample(s)?);
        let m = x.meet(&y)?;
        Ok((i.contains(&m) && !i.contains(&x) && !i.contains(&y)).then(|| format!("{x} ∧ {y} ∈ I")))
    })?);
    r.push(Check::sampled("strict", cfg, |s| {
        let (x, y) = (lex.sample(s)?, lex.sample(s)?);
        let below = i.quotient_le(&x, &y)? && !i.quotient_le(&y, &x)?;
        Ok((below && !(x.cmp(&y)? == crate::group::GroupOrdering::Less))
            .then(|| format!("{x}/I < {y}/I but not {x} < {y}")))
    })?);
    r.push(Check::sampled("commutative quotient", cfg, |s| {
        let (x, y) = (lex.sample(s)?, lex.sample(s)?);
        let (a, b) = (x.oplus(&y)?, y.oplus(&x)?);
        Ok((!i.congruent(&a, &b)?).then(|| format!("{x} ⊕ {y} and {y} ⊕ {x} differ mod I")))
    })?);
    r.push(Check::sampled("retractive through t ↦ (t,0)", cfg, |s| {
        let g0 = lex.fiber().zero();
        let delta = |t: &GroupElem| lex.pair(t.clone(), g0.clone());
        let (t, v) = (lex.sample_index(s)?, lex.sample_index(s)?);
        let (dt, dv) = (delta(&t)?, delta(&v)?);
        let sum = delta(&lex.truncated_sum(&t, &v)?)?;
        let neg = delta(&h.sub(lex.u(), &t)?)?;
        let ok = *lex.head(&dt) == t && dt.oplus(&dv)? == sum && dt.minus() == neg && dt.tilde() == neg;
        Ok((!ok).then(|| format!("section fails at t = {t}, v = {v}")))
    })?);
    Ok((ideal, r))
}

/// Whether `M_0` is maximal, decided from the base: exactly when `(H, u)`
/// is Archimedean, i.e. a copy of a subgroup of the reals.
pub fn base_maximality(w: &PerfectWitness) -> bool {
    base_is_archimedean(w.lex().base_spec())
}

pub fn base_is_archimedean(spec: &GroupSpec) -> bool {
    match spec {
        GroupSpec::Trivial | GroupSpec::Integers | GroupSpec::Rationals => true,
        GroupSpec::AffinePos => false,
        GroupSpec::Lex(h, g) => {
            (h.is_trivial() && base_is_archimedean(g)) || (g.is_trivial() && base_is_archimedean(h))
        }
    }
}

/// Result of solving `c = c⁻` (equivalently `2c = 1`) in closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Midpoint {
    pub witness: Option<GroupElem>,
    pub reason: String,
}

impl Midpoint {
    pub fn exists(&self) -> bool {
        self.witness.is_some()
    }
}

/// `x/2` when it exists in the group.
fn halve(spec: &GroupSpec, x: &GroupElem) -> Result<Option<GroupElem>> {
    use num_integer::Integer;
    Ok(match (spec, x) {
        (GroupSpec::Trivial, _) => Some(GroupElem::Zero),
        (GroupSpec::Integers, GroupElem::Int(n)) => {
            let (q, r) = n.div_rem(&2.into());
            r.is_zero_int().then_some(GroupElem::Int(q))
        }
        (GroupSpec::Rationals, GroupElem::Rat(q)) => Some(GroupElem::Rat(q * &Rational::new(1, 2))),
        (GroupSpec::Lex(hs, gs), GroupElem::Pair(h, g)) => match (halve(hs, h)?, halve(gs, g)?) {
            (Some(a), Some(b)) => Some(GroupElem::pair(a, b)),
            _ => None,
        },
        _ => return Err(Error::Unsupported(format!("halving in {spec}"))),
    })
}

trait IsZeroInt {
    fn is_zero_int(&self) -> bool;
}

impl IsZeroInt for num_bigint::BigInt {
    fn is_zero_int(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// Searches for `c` with `c = c⁻`: such `c` has head `u/2` and tail `b/2`,
/// so it exists iff both halves exist.  The witness is re-checked in the
/// algebra.
pub fn midpoint_certificate(lex: &LexAlgebra) -> Result<Midpoint> {
    let head = halve(lex.base_spec(), lex.u())?;
    let tail = halve(lex.fiber(), lex.offset())?;
    let reason = match (&head, &tail) {
        (None, _) => format!("2t = {} has no solution in {}", lex.u(), lex.base_spec()),
        (_, None) => format!("2g = {} has no solution in {}", lex.offset(), lex.fiber()),
        (Some(t), Some(g)) => format!("c = ({t},{g})"),
    };
    let witness = match (head, tail) {
        (Some(t), Some(g)) => {
            let c = lex.pair(t, g)?;
            if c.minus() != c {
                return Err(Error::Invariant(format!("{c} solves 2c = 1 but c⁻ = {}", c.minus())));
            }
            Some(c.into_value())
        }
        _ => None,
    };
    Ok(Midpoint { witness, reason })
}
