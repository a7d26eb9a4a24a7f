//! The interval algebra `Γ(G, u) = [0, u]` of a unital ℓ-group.

mod laws;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{GroupElem, GroupOrdering, GroupSpec, UnitalGroup};
use crate::sample::Sampler;

pub use laws::{check_axioms, check_laws, pea_equivalence_exhaustive};

/// `Γ(G, u)`.  Cloning is cheap; two handles are the same algebra when
/// their unital groups are equal.
#[derive(Clone, Debug)]
pub struct PmvAlgebra(Arc<UnitalGroup>);

impl PartialEq for PmvAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for PmvAlgebra {}

/// An element of a [`PmvAlgebra`]; `0 ≤ x ≤ u` holds by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmvElem {
    alg: PmvAlgebra,
    x: GroupElem,
}

/// Which iterate [`PmvElem::iterate`] computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IterKind {
    /// `n.x`, with `(n+1).x = n.x ⊕ x`.
    Truncated,
    /// `nx`, with `(n+1)x = nx + x` (partial sum).
    GroupMultiple,
    /// `xⁿ`, with `x^{n+1} = xⁿ ⊙ x`.
    Power,
}

/// Order of an element: least `n` with `n.x = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

impl PmvAlgebra {
    pub fn new(group: UnitalGroup) -> Self {
        PmvAlgebra(Arc::new(group))
    }

    pub fn gamma(spec: GroupSpec, unit: GroupElem) -> Result<Self> {
        Ok(PmvAlgebra::new(UnitalGroup::new(spec, unit)?))
    }

    pub fn group(&self) -> &UnitalGroup {
        &self.0
    }

    pub fn spec(&self) -> &GroupSpec {
        self.0.spec()
    }

    pub fn unit(&self) -> &GroupElem {
        self.0.unit()
    }

    pub fn contains(&self, g: &GroupElem) -> Result<bool> {
        let spec = self.spec();
        spec.check(g)?;
        Ok(spec.le(&spec.zero(), g)? && spec.le(g, self.unit())?)
    }

    pub fn elem(&self, g: GroupElem) -> Result<PmvElem> {
        if !self.contains(&g)? {
            return Err(Error::OutsideInterval {
                elem: g.to_string(),
                unit: self.unit().to_string(),
            });
        }
        Ok(PmvElem { alg: self.clone(), x: g })
    }

    /// Wraps a value already known to lie in the interval.
    fn wrap(&self, x: GroupElem) -> PmvElem {
        PmvElem { alg: self.clone(), x }
    }

    pub fn zero(&self) -> PmvElem {
        self.wrap(self.spec().zero())
    }

    pub fn one(&self) -> PmvElem {
        self.wrap(self.unit().clone())
    }

    /// `x⁻ = x~` for all `x`, equivalently `u` is central.
    pub fn is_symmetric(&self) -> bool {
        self.spec()
            .center_contains(self.unit())
            .expect("unit has the group's shape")
    }

    /// Seeded element of `[0, u]`, with heads biased toward the endpoints.
    pub fn sample(&self, s: &mut Sampler) -> Result<PmvElem> {
        let g = s.between(self.spec(), &self.spec().zero(), self.unit())?;
        Ok(self.wrap(g))
    }
}

impl fmt::Display for PmvAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gamma({},{})", self.spec(), self.unit())
    }
}

impl PmvElem {
    pub fn algebra(&self) -> &PmvAlgebra {
        &self.alg
    }

    pub fn value(&self) -> &GroupElem {
        &self.x
    }

    pub fn into_value(self) -> GroupElem {
        self.x
    }

    fn spec(&self) -> &GroupSpec {
        self.alg.spec()
    }

    fn unit(&self) -> &GroupElem {
        self.alg.unit()
    }

    fn same(&self, y: &PmvElem) -> Result<()> {
        if self.alg == y.alg {
            Ok(())
        } else {
            Err(Error::CrossAlgebra {
                left: self.alg.to_string(),
                right: y.alg.to_string(),
            })
        }
    }

    /// `(x + y) ∧ u`.
    pub fn oplus(&self, y: &PmvElem) -> Result<PmvElem> {
        self.same(y)?;
        let g = self.spec();
        let s = g.add(&self.x, &y.x)?;
        Ok(self.alg.wrap(g.meet(&s, self.unit())?))
    }

    /// `(x − u + y) ∨ 0`.
    pub fn odot(&self, y: &PmvElem) -> Result<PmvElem> {
        self.same(y)?;
        let g = self.spec();
        let d = g.add(&g.sub(&self.x, self.unit())?, &y.x)?;
        Ok(self.alg.wrap(g.join(&d, &g.zero())?))
    }

    /// `x⁻ = u − x`.
    pub fn minus(&self) -> PmvElem {
        let g = self.spec().sub(self.unit(), &self.x).expect("shape checked");
        self.alg.wrap(g)
    }

    /// `x~ = −x + u`.
    pub fn tilde(&self) -> PmvElem {
        let g = self.spec().sub_left(&self.x, self.unit()).expect("shape checked");
        self.alg.wrap(g)
    }

    pub fn negations(&self) -> (PmvElem, PmvElem) {
        (self.minus(), self.tilde())
    }

    pub fn le(&self, y: &PmvElem) -> Result<bool> {
        self.same(y)?;
        self.spec().le(&self.x, &y.x)
    }

    pub fn cmp(&self, y: &PmvElem) -> Result<GroupOrdering> {
        self.same(y)?;
        self.spec().cmp(&self.x, &y.x)
    }

    pub fn is_zero(&self) -> bool {
        self.x == self.spec().zero()
    }

    pub fn is_one(&self) -> bool {
        &self.x == self.unit()
    }

    /// The partial sum: the group sum `x + y` when it stays below `u`.
    /// The test is `y ⊙ x = 0`, i.e. `x ≤ y⁻`; the mirrored `x ⊙ y = 0`
    /// only says `y ≤ x⁻` and differs from it when `u` is not central.
    pub fn partial_add(&self, y: &PmvElem) -> Result<Option<PmvElem>> {
        if y.odot(self)?.is_zero() {
            Ok(Some(self.alg.wrap(self.spec().add(&self.x, &y.x)?)))
        } else {
            Ok(None)
        }
    }

    /// For `y ≤ x`: `(x − y, −y + x)`, the unique `l`, `r` with
    /// `l + y = x = y + r`.
    pub fn residuals(&self, y: &PmvElem) -> Result<(PmvElem, PmvElem)> {
        if !y.le(self)? {
            return Err(Error::Precondition(format!("residuals need {y} ≤ {self}")));
        }
        let g = self.spec();
        Ok((
            self.alg.wrap(g.sub(&self.x, &y.x)?),
            self.alg.wrap(g.sub_left(&y.x, &self.x)?),
        ))
    }

    /// `⊕` recovered from the partial structure: `(y⁻ ⊖ (x ∧ y⁻))~`,
    /// where `⊖` is the left residual.
    pub fn oplus_via_pea(&self, y: &PmvElem) -> Result<PmvElem> {
        self.same(y)?;
        let ym = y.minus();
        let m = self.meet(&ym)?;
        let (left, _) = ym.residuals(&m)?;
        Ok(left.tilde())
    }

    /// Group lattice join inside the interval.
    pub fn join(&self, y: &PmvElem) -> Result<PmvElem> {
        self.same(y)?;
        Ok(self.alg.wrap(self.spec().join(&self.x, &y.x)?))
    }

    pub fn meet(&self, y: &PmvElem) -> Result<PmvElem> {
        self.same(y)?;
        Ok(self.alg.wrap(self.spec().meet(&self.x, &y.x)?))
    }

    /// `x ⊕ (x~ ⊙ y)`.
    pub fn join_a6(&self, y: &PmvElem) -> Result<PmvElem> {
        self.oplus(&self.tilde().odot(y)?)
    }

    /// `x ⊙ (x⁻ ⊕ y)`.
    pub fn meet_a7(&self, y: &PmvElem) -> Result<PmvElem> {
        self.odot(&self.minus().oplus(y)?)
    }

    /// `n.x`, `nx` or `xⁿ` by literal iteration.  Only the group multiple
    /// can be undefined.
    pub fn iterate(&self, n: u64, kind: IterKind) -> Result<Option<PmvElem>> {
        let mut acc = match kind {
            IterKind::Power => self.alg.one(),
            _ => self.alg.zero(),
        };
        for _ in 0..n {
            acc = match kind {
                IterKind::Truncated => acc.oplus(self)?,
                IterKind::Power => acc.odot(self)?,
                IterKind::GroupMultiple => match acc.partial_add(self)? {
                    Some(s) => s,
                    None => return Ok(None),
                },
            };
        }
        Ok(Some(acc))
    }

    /// `n.x = (n·x) ∧ u`, so the order is the least `n` with `n·x ≥ u`.
    pub fn ord(&self) -> Order {
        match self
            .spec()
            .least_multiple_reaching(&self.x, self.unit())
            .expect("shape checked")
        {
            Some(n) => Order::Finite(n.max(1)),
            None => Order::Infinite,
        }
    }
}

impl fmt::Display for PmvElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.x)
    }
}
