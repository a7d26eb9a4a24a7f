use std::fmt;

use super::{FiniteMv, MvTable};
use crate::config::Caps;
use crate::error::{Error, Result};

/// A subset of the elements as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IdealMask(pub u64);

impl IdealMask {
    pub fn empty() -> Self {
        IdealMask(0)
    }

    pub fn full(a: &FiniteMv) -> Self {
        IdealMask(if a.size() == 64 { u64::MAX } else { (1u64 << a.size()) - 1 })
    }

    pub fn of(elems: impl IntoIterator<Item = usize>) -> Self {
        IdealMask(elems.into_iter().fold(0, |m, i| m | 1 << i))
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn with(self, x: usize) -> Self {
        IdealMask(self.0 | 1 << x)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: IdealMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersect(self, other: IdealMask) -> Self {
        IdealMask(self.0 & other.0)
    }

    pub fn union(self, other: IdealMask) -> Self {
        IdealMask(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// `{a, b, …}` with the algebra's labels.
    pub fn describe(self, a: &FiniteMv) -> String {
        let items: Vec<&str> = self.iter().map(|i| a.label(i)).collect();
        format!("{{{}}}", items.join(","))
    }
}

impl fmt::Display for IdealMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

pub fn is_ideal(a: &FiniteMv, i: IdealMask) -> bool {
    i.contains(a.zero())
        && i.iter().all(|x| a.elements().all(|y| !a.le(y, x) || i.contains(y)))
        && i.iter().all(|x| i.iter().all(|y| i.contains(a.oplus(x, y))))
}

/// All ideals by brute force over subsets containing `0`.
pub fn ideals_by_subsets(a: &FiniteMv, caps: &Caps) -> Result<Vec<IdealMask>> {
    let m = a.size();
    if m > caps.subset_enumeration {
        return Err(Error::CapExceeded(format!(
            "subset enumeration over {m} elements exceeds the cap {}",
            caps.subset_enumeration
        )));
    }
    let z = a.zero();
    let others: Vec<usize> = a.elements().filter(|&x| x != z).collect();
    let mut out: Vec<IdealMask> = (0u64..1 << others.len())
        .map(|bits| IdealMask::of(others.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, &x)| x)).with(z))
        .filter(|&i| is_ideal(a, i))
        .collect();
    out.sort();
    Ok(out)
}

/// `{y : y ≤ m.x for some m}`, iterating `s ↦ s ⊕ x` from `0` to a fixpoint.
pub fn generated_normal_ideal(a: &FiniteMv, x: usize) -> IdealMask {
    let mut s = a.zero();
    loop {
        let next = a.oplus(s, x);
        if next == s {
            break;
        }
        s = next;
    }
    IdealMask::of(a.elements().filter(|&y| a.le(y, s)))
}

/// An ideal and its properties, each evaluated from its definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealInfo {
    pub mask: IdealMask,
    pub proper: bool,
    pub normal: bool,
    pub maximal: bool,
    pub prime: bool,
    pub commutative: bool,
    pub strict: bool,
}

/// `(x ⊙ ¬y) ⊕ (y ⊙ ¬x) ∈ I`.
pub(crate) fn congruent(a: &FiniteMv, i: IdealMask, x: usize, y: usize) -> bool {
    i.contains(a.oplus(a.odot(x, a.neg(y)), a.odot(y, a.neg(x))))
}

/// `x/I ≤ y/I`, i.e. `x ⊙ ¬y ∈ I`.
pub(crate) fn quotient_le(a: &FiniteMv, i: IdealMask, x: usize, y: usize) -> bool {
    i.contains(a.odot(x, a.neg(y)))
}

fn is_normal(a: &FiniteMv, i: IdealMask) -> bool {
    a.elements().all(|x| {
        let left = IdealMask::of(i.iter().map(|j| a.oplus(x, j)));
        let right = IdealMask::of(i.iter().map(|j| a.oplus(j, x)));
        left == right
    })
}

fn is_prime(a: &FiniteMv, i: IdealMask) -> bool {
    a.elements().all(|x| a.elements().all(|y| !i.contains(a.meet(x, y)) || i.contains(x) || i.contains(y)))
}

fn is_strict(a: &FiniteMv, i: IdealMask) -> bool {
    a.elements().all(|x| {
        a.elements().all(|y| {
            let below = quotient_le(a, i, x, y) && !quotient_le(a, i, y, x);
            !below || a.lt(x, y)
        })
    })
}

fn has_commutative_quotient(a: &FiniteMv, i: IdealMask) -> bool {
    a.elements().all(|x| a.elements().all(|y| congruent(a, i, a.oplus(x, y), a.oplus(y, x))))
}

/// Every ideal of a finite algebra is generated by the sum of its elements,
/// so the ideals are exactly the `I(x)`; the list is sorted by mask.
pub fn enumerate_ideals(a: &FiniteMv) -> Vec<IdealInfo> {
    let mut masks: Vec<IdealMask> = a.elements().map(|x| generated_normal_ideal(a, x)).collect();
    masks.sort();
    masks.dedup();
    let proper: Vec<IdealMask> = masks.iter().copied().filter(|i| !i.contains(a.one())).collect();
    masks
        .iter()
        .map(|&mask| {
            let is_proper = !mask.contains(a.one());
            IdealInfo {
                mask,
                proper: is_proper,
                normal: is_normal(a, mask),
                maximal: is_proper && !proper.iter().any(|&j| j != mask && mask.is_subset(j)),
                prime: is_proper && is_prime(a, mask),
                commutative: has_commutative_quotient(a, mask),
                strict: is_strict(a, mask),
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Radicals {
    pub rad: IdealMask,
    pub rad_n: IdealMask,
    pub infinit: IdealMask,
}

/// Intersections of the maximal and of the normal maximal ideals, and the
/// elements all of whose multiples `m·x` are defined.  Testing `m ≤ |A|`
/// suffices: if `|A|·x` exists the partial multiples repeat, and
/// cancellation then forces `x = 0`.
pub fn radical_suite(a: &FiniteMv) -> Radicals {
    let ideals = enumerate_ideals(a);
    let meet = |pick: &dyn Fn(&IdealInfo) -> bool| {
        ideals.iter().filter(|i| pick(i)).fold(IdealMask::full(a), |acc, i| acc.intersect(i.mask))
    };
    let infinit = IdealMask::of(a.elements().filter(|&x| {
        let mut acc = a.zero();
        (0..a.size()).all(|_| match a.partial_sum(acc, x) {
            Some(s) => {
                acc = s;
                true
            }
            None => false,
        })
    }));
    Radicals { rad: meet(&|i| i.maximal), rad_n: meet(&|i| i.maximal && i.normal), infinit }
}

/// `A/I` with classes numbered by their least element, and the projection.
pub fn quotient(a: &FiniteMv, i: IdealMask) -> Result<(FiniteMv, Vec<usize>)> {
    if !is_ideal(a, i) {
        return Err(Error::Precondition(format!("{} is not an ideal", i.describe(a))));
    }
    if !is_normal(a, i) {
        return Err(Error::Precondition(format!("{} is not normal", i.describe(a))));
    }
    let mut reps: Vec<usize> = Vec::new();
    let mut proj = vec![0; a.size()];
    for x in a.elements() {
        match reps.iter().position(|&r| congruent(a, i, x, r)) {
            Some(k) => proj[x] = k,
            None => {
                proj[x] = reps.len();
                reps.push(x);
            }
        }
    }
    for x in a.elements() {
        for y in a.elements() {
            if proj[x] == proj[y] && !congruent(a, i, x, y) {
                return Err(Error::Invariant(format!("congruence modulo {} is not transitive", i.describe(a))));
            }
            if proj[x] == proj[y] {
                for z in a.elements() {
                    if proj[a.oplus(x, z)] != proj[a.oplus(y, z)] {
                        return Err(Error::Invariant(format!("⊕ is not compatible with {}", i.describe(a))));
                    }
                }
            }
        }
    }
    let q = FiniteMv::new(MvTable {
        labels: reps.iter().map(|&r| format!("[{}]", a.label(r))).collect(),
        oplus: reps.iter().map(|&x| reps.iter().map(|&y| proj[a.oplus(x, y)]).collect()).collect(),
        neg: reps.iter().map(|&x| proj[a.neg(x)]).collect(),
        zero: proj[a.zero()],
        one: proj[a.one()],
    })?;
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::super::{make_chain, make_product};
    use super::*;

    fn c2sq() -> FiniteMv {
        make_product(&make_chain(2).unwrap(), &make_chain(2).unwrap()).unwrap()
    }

    fn first_factor(a: &FiniteMv) -> IdealMask {
        IdealMask::of((0..3).map(|k| a.index_of(&format!("({k},0)")).unwrap()))
    }

    #[test]
    fn chain_ideals() {
        let c = make_chain(4).unwrap();
        let ideals = enumerate_ideals(&c);
        assert_eq!(ideals.len(), 2);
        assert_eq!(ideals[0].mask, IdealMask::of([0]));
        assert!(ideals[0].maximal && !ideals[1].proper);
        assert_eq!(generated_normal_ideal(&c, 1), IdealMask::full(&c));
        assert_eq!(generated_normal_ideal(&c, 0), IdealMask::of([0]));
    }

    #[test]
    fn square_ideals() {
        let a = c2sq();
        let ideals = enumerate_ideals(&a);
        assert_eq!(ideals.len(), 4);
        assert_eq!(ideals.iter().filter(|i| i.maximal).count(), 2);
        let i = first_factor(&a);
        let info = ideals.iter().find(|x| x.mask == i).unwrap();
        assert!(info.maximal && !info.strict && info.normal && info.prime);
        assert_eq!(generated_normal_ideal(&a, a.index_of("(1,0)").unwrap()), i);
        let r = radical_suite(&a);
        assert_eq!(r.rad, IdealMask::of([a.zero()]));
    }

    #[test]
    fn two_enumerations_agree() {
        let caps = Caps::default();
        for a in [make_chain(5).unwrap(), c2sq(), make_product(&make_chain(1).unwrap(), &make_chain(3).unwrap()).unwrap()] {
            let by_gen: Vec<IdealMask> = enumerate_ideals(&a).into_iter().map(|i| i.mask).collect();
            assert_eq!(by_gen, ideals_by_subsets(&a, &caps).unwrap());
        }
    }

    #[test]
    fn quotients() {
        let a = c2sq();
        let (q, proj) = quotient(&a, first_factor(&a)).unwrap();
        assert_eq!(q.size(), 3);
        assert!(q.is_chain());
        assert_eq!(proj[a.index_of("(2,1)").unwrap()], proj[a.index_of("(0,1)").unwrap()]);
        let c6 = make_chain(6).unwrap();
        let (q6, _) = quotient(&c6, IdealMask::of([0])).unwrap();
        assert_eq!(q6.size(), 7);
    }
}
