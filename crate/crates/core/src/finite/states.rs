use super::ideals::{enumerate_ideals, quotient};
use super::FiniteMv;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Values indexed by element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FiniteState(pub Vec<Rational>);

impl FiniteState {
    pub fn value(&self, x: usize) -> &Rational {
        &self.0[x]
    }

    /// Elements where the state vanishes.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&x| self.0[x].is_zero()).collect()
    }
}

/// `s(1) = 1` and `s(x + y) = s(x) + s(y)` whenever the sum is defined.
pub fn is_state(a: &FiniteMv, s: &FiniteState) -> bool {
    s.0.len() == a.size()
        && s.value(a.one()).is_one()
        && a.elements().all(|x| {
            a.elements().all(|y| match a.partial_sum(x, y) {
                Some(z) => s.value(z) == &(s.value(x) + s.value(y)),
                None => true,
            })
        })
}

/// One state per maximal ideal `I`: `A/I` is an `n`-chain, and `x` gets
/// `k/n` where `x/I` is the `k`-th element of the chain.  Sorted.
pub fn extremal_states(a: &FiniteMv) -> Result<Vec<FiniteState>> {
    let mut out = Vec::new();
    for info in enumerate_ideals(a).into_iter().filter(|i| i.maximal) {
        let (q, proj) = quotient(a, info.mask)?;
        if !q.is_chain() {
            return Err(Error::Invariant(format!("quotient by {} is not a chain", info.mask.describe(a))));
        }
        let n = q.size() as i64 - 1;
        let rank = |c: usize| q.elements().filter(|&d| q.lt(d, c)).count() as i64;
        let s = FiniteState(a.elements().map(|x| Rational::new(rank(proj[x]), n)).collect());
        if !is_state(a, &s) {
            return Err(Error::Invariant(format!("the map through {} is not additive", info.mask.describe(a))));
        }
        out.push(s);
    }
    out.sort();
    Ok(out)
}

/// Exactly one maximal ideal, and it is normal.
pub fn is_local(a: &FiniteMv) -> bool {
    let maximal: Vec<_> = enumerate_ideals(a).into_iter().filter(|i| i.maximal).collect();
    maximal.len() == 1 && maximal[0].normal
}

/// Least `n` with `n.x = 1`, or `None` when the truncated multiples stop
/// short of `1`.
pub fn ord(a: &FiniteMv, x: usize) -> Option<usize> {
    let mut s = a.zero();
    for n in 1..=a.size() {
        s = a.oplus(s, x);
        if s == a.one() {
            return Some(n);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::{make_chain, make_product};
    use super::*;

    #[test]
    fn square_states() {
        let a = make_product(&make_chain(2).unwrap(), &make_chain(2).unwrap()).unwrap();
        let states = extremal_states(&a).unwrap();
        assert_eq!(states.len(), 2);
        let x = a.index_of("(1,2)").unwrap();
        let mut vals: Vec<Rational> = states.iter().map(|s| s.value(x).clone()).collect();
        vals.sort();
        assert_eq!(vals, [Rational::new(1, 2), Rational::one()]);
        assert!(!is_local(&a));
    }

    #[test]
    fn chain_state() {
        let c = make_chain(5).unwrap();
        let states = extremal_states(&c).unwrap();
        assert_eq!(states.len(), 1);
        assert_eq!(states[0].value(3), &Rational::new(3, 5));
        assert!(is_local(&c));
        assert_eq!(ord(&c, 2), Some(3));
        assert_eq!(ord(&c, 0), None);
    }
}
