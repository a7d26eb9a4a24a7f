//! Seeded element generators and the deterministic sample loop.
//!
//! Every sample index gets its own ChaCha stream derived from
//! `(seed, tag, index)`, so the value drawn for index `i` is independent of
//! how indices are split across workers.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{GroupElem, GroupOrdering, GroupSpec};
use crate::rational::Rational;

pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    pub fn new(seed: u64, stream: u64, bound: i64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng, bound: bound.max(1) }
    }

    /// Stream for sample `index` of the clause family `tag`.
    pub fn for_index(seed: u64, tag: u32, index: usize, bound: i64) -> Self {
        Sampler::new(seed, ((tag as u64) << 40) ^ index as u64, bound)
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn small_int(&mut self) -> BigInt {
        BigInt::from(self.rng.gen_range(-self.bound..=self.bound))
    }

    fn nonneg_int(&mut self) -> BigInt {
        BigInt::from(self.rng.gen_range(0..=self.bound))
    }

    fn denominator(&mut self) -> i64 {
        self.rng.gen_range(1..=6)
    }

    fn small_rational(&mut self) -> Rational {
        let d = self.denominator();
        Rational::new(self.rng.gen_range(-self.bound * d..=self.bound * d), d)
    }

    fn nonneg_rational(&mut self) -> Rational {
        let d = self.denominator();
        Rational::new(self.rng.gen_range(0..=self.bound * d), d)
    }

    /// Fraction in `[0, 1]`, endpoints included.
    fn fraction(&mut self) -> Rational {
        let d = self.denominator();
        Rational::new(self.rng.gen_range(0..=d), d)
    }

    fn slope(&mut self) -> Rational {
        const SLOPES: [(i64, i64); 9] = [(1, 4), (1, 3), (1, 2), (2, 3), (1, 1), (3, 2), (2, 1), (3, 1), (4, 1)];
        let (n, d) = SLOPES[self.rng.gen_range(0..SLOPES.len())];
        Rational::new(n, d)
    }

    fn slope_above_one(&mut self) -> Rational {
        const SLOPES: [(i64, i64); 4] = [(3, 2), (2, 1), (3, 1), (4, 1)];
        let (n, d) = SLOPES[self.rng.gen_range(0..SLOPES.len())];
        Rational::new(n, d)
    }

    /// Integer in `[lo, hi]`, with each endpoint drawn a quarter of the time.
    pub fn int_between(&mut self, lo: &BigInt, hi: &BigInt) -> BigInt {
        if lo >= hi {
            return lo.clone();
        }
        let r: f64 = self.rng.gen();
        if r < 0.25 {
            return lo.clone();
        }
        if r < 0.5 {
            return hi.clone();
        }
        let width = (hi - lo).to_u64().unwrap_or(1_000_000).min(1_000_000);
        lo + BigInt::from(self.rng.gen_range(0..=width))
    }

    /// Unconstrained element, tails in `[-bound, bound]`.
    pub fn free(&mut self, spec: &GroupSpec) -> GroupElem {
        match spec {
            GroupSpec::Trivial => GroupElem::Zero,
            GroupSpec::Integers => GroupElem::Int(self.small_int()),
            GroupSpec::Rationals => GroupElem::Rat(self.small_rational()),
            GroupSpec::AffinePos => GroupElem::aff(self.slope(), self.small_rational()),
            GroupSpec::Lex(h, g) => GroupElem::pair(self.free(h), self.free(g)),
        }
    }

    /// Element `≥ 0`.
    pub fn positive(&mut self, spec: &GroupSpec) -> GroupElem {
        match spec {
            GroupSpec::Trivial => GroupElem::Zero,
            GroupSpec::Integers => GroupElem::Int(self.nonneg_int()),
            GroupSpec::Rationals => GroupElem::Rat(self.nonneg_rational()),
            GroupSpec::AffinePos => {
                if self.coin(0.4) {
                    GroupElem::aff(Rational::one(), self.nonneg_rational())
                } else {
                    GroupElem::aff(self.slope_above_one(), self.small_rational())
                }
            }
            GroupSpec::Lex(h, g) => {
                if h.is_trivial() || self.coin(0.5) {
                    GroupElem::pair(h.zero(), self.positive(g))
                } else {
                    GroupElem::pair(self.strictly_positive(h), self.free(g))
                }
            }
        }
    }

    /// Element `> 0`; the trivial group only has `0`.
    pub fn strictly_positive(&mut self, spec: &GroupSpec) -> GroupElem {
        match spec {
            GroupSpec::Trivial => GroupElem::Zero,
            GroupSpec::Integers => GroupElem::int(self.rng.gen_range(1..=self.bound)),
            GroupSpec::Rationals => {
                let d = self.denominator();
                GroupElem::Rat(Rational::new(self.rng.gen_range(1..=self.bound * d), d))
            }
            GroupSpec::AffinePos => {
                if self.coin(0.4) {
                    let d = self.denominator();
                    GroupElem::aff(Rational::one(), Rational::new(self.rng.gen_range(1..=self.bound * d), d))
                } else {
                    GroupElem::aff(self.slope_above_one(), self.small_rational())
                }
            }
            GroupSpec::Lex(h, g) => {
                if h.is_trivial() || self.coin(0.5) {
                    GroupElem::pair(h.zero(), self.strictly_positive(g))
                } else {
                    GroupElem::pair(self.strictly_positive(h), self.free(g))
                }
            }
        }
    }

    /// `lo + p` with `p ≥ 0`; bi-invariance keeps it above `lo`.
    pub fn above(&mut self, spec: &GroupSpec, lo: &GroupElem) -> Result<GroupElem> {
        let p = self.positive(spec);
        spec.add(lo, &p)
    }

    /// `hi - p` with `p ≥ 0`.
    pub fn below(&mut self, spec: &GroupSpec, hi: &GroupElem) -> Result<GroupElem> {
        let p = self.positive(spec);
        spec.sub(hi, &p)
    }

    /// Element of the closed interval `[lo, hi]` of a linear group.  Heads of
    /// lexicographic pairs hit the endpoints often so that the boundary
    /// slices are exercised.
    pub fn between(&mut self, spec: &GroupSpec, lo: &GroupElem, hi: &GroupElem) -> Result<GroupElem> {
        if !spec.le(lo, hi)? {
            return Err(Error::Precondition(format!("empty interval [{lo}, {hi}] in {spec}")));
        }
        use GroupElem as E;
        let out = match (spec, lo, hi) {
            (GroupSpec::Trivial, ..) => E::Zero,
            (GroupSpec::Integers, E::Int(l), E::Int(h)) => E::Int(self.int_between(l, h)),
            (GroupSpec::Rationals, E::Rat(l), E::Rat(h)) => {
                let r: f64 = self.rng.gen();
                if r < 0.25 {
                    E::Rat(l.clone())
                } else if r < 0.5 {
                    E::Rat(h.clone())
                } else {
                    let f = self.fraction();
                    E::Rat(l + &((h - l) * f))
                }
            }
            (
                GroupSpec::AffinePos,
                E::Aff { slope: ls, shift: lb },
                E::Aff { slope: hs, shift: hb },
            ) => {
                let slope = if ls == hs {
                    ls.clone()
                } else {
                    let r: f64 = self.rng.gen();
                    if r < 0.25 {
                        ls.clone()
                    } else if r < 0.5 {
                        hs.clone()
                    } else {
                        let f = self.fraction();
                        ls + &((hs - ls) * f)
                    }
                };
                let shift = if ls == hs {
                    let f = self.fraction();
                    lb + &((hb - lb) * f)
                } else if &slope == ls {
                    lb + &self.nonneg_rational()
                } else if &slope == hs {
                    hb - &self.nonneg_rational()
                } else {
                    self.small_rational()
                };
                E::aff(slope, shift)
            }
            (GroupSpec::Lex(hs, gs), E::Pair(lh, lg), E::Pair(hh, hg)) => {
                let head = self.between(hs, lh, hh)?;
                let at_lo = hs.cmp(&head, lh)? == GroupOrdering::Equal;
                let at_hi = hs.cmp(&head, hh)? == GroupOrdering::Equal;
                let tail = match (at_lo, at_hi) {
                    (true, true) => self.between(gs, lg, hg)?,
                    (true, false) => self.above(gs, lg)?,
                    (false, true) => self.below(gs, hg)?,
                    (false, false) => self.free(gs),
                };
                E::pair(head, tail)
            }
            _ => return Err(Error::shape(spec, lo)),
        };
        Ok(out)
    }
}

/// Runs `check` on indices `0..n`, split into contiguous chunks over
/// `workers` threads, and returns the failure with the smallest index.
/// The result is the same for every worker count.
pub fn first_failure<T, F>(n: usize, workers: usize, check: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync,
{
    let workers = workers.clamp(1, n.max(1));
    if workers == 1 {
        return (0..n).find_map(|i| check(i).map(|t| (i, t)));
    }
    let chunk = n.div_ceil(workers);
    let check = &check;
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let start = w * chunk;
                let end = ((w + 1) * chunk).min(n);
                scope.spawn(move || (start..end).find_map(|i| check(i).map(|t| (i, t))))
            })
            .collect();
        // chunks are in index order, so the first hit over chunks is minimal
        let mut found = None;
        for h in handles {
            let r = h.join().expect("sample worker panicked");
            if found.is_none() {
                found = r;
            }
        }
        found
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zz() -> GroupSpec {
        GroupSpec::lex(GroupSpec::Integers, GroupSpec::Integers).unwrap()
    }

    #[test]
    fn between_respects_interval() {
        for spec in [
            zz(),
            GroupSpec::lex(GroupSpec::Rationals, GroupSpec::AffinePos).unwrap(),
            GroupSpec::lex(GroupSpec::Integers, zz()).unwrap(),
        ] {
            let lo = spec.zero();
            let hi = match &spec {
                GroupSpec::Lex(h, g) => GroupElem::pair(
                    match &**h {
                        GroupSpec::Integers => GroupElem::int(2),
                        _ => GroupElem::rat(1, 1),
                    },
                    g.zero(),
                ),
                _ => unreachable!(),
            };
            for i in 0..300 {
                let mut s = Sampler::for_index(9, 0, i, 25);
                let x = s.between(&spec, &lo, &hi).unwrap();
                assert!(spec.le(&lo, &x).unwrap() && spec.le(&x, &hi).unwrap(), "{x}");
            }
        }
    }

    #[test]
    fn positive_is_positive() {
        for spec in [GroupSpec::AffinePos, zz(), GroupSpec::Rationals] {
            for i in 0..200 {
                let mut s = Sampler::for_index(3, 1, i, 10);
                assert!(spec.is_positive(&s.positive(&spec)).unwrap());
                let sp = s.strictly_positive(&spec);
                assert!(spec.lt(&spec.zero(), &sp).unwrap());
            }
        }
    }

    #[test]
    fn streams_are_reproducible() {
        let a = Sampler::for_index(5, 2, 17, 25).free(&zz());
        let b = Sampler::for_index(5, 2, 17, 25).free(&zz());
        assert_eq!(a, b);
    }

    #[test]
    fn first_failure_is_worker_independent() {
        let check = |i: usize| (i % 37 == 36 || i == 500).then_some(i * 2);
        let one = first_failure(1000, 1, check);
        for w in [2, 3, 8] {
            assert_eq!(first_failure(1000, w, check), one);
        }
        assert_eq!(one, Some((36, 72)));
        assert_eq!(first_failure(10, 4, |_| None::<()>), None);
    }
}
