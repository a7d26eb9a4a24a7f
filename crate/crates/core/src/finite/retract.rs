use super::ideals::{enumerate_ideals, is_ideal, quotient, IdealMask};
use super::FiniteMv;
use crate::config::Caps;
use crate::error::{Error, Result};

/// Closure of `seed ∪ {0, 1}` under `⊕` and `¬`.
pub fn generated_subalgebra(a: &FiniteMv, seed: IdealMask) -> IdealMask {
    let mut s = seed.with(a.zero()).with(a.one());
    loop {
        let mut next = s;
        for x in s.iter() {
            next = next.with(a.neg(x));
            for y in s.iter() {
                next = next.with(a.oplus(x, y));
            }
        }
        if next == s {
            return s;
        }
        s = next;
    }
}

/// A homomorphic section `δ : A/I → A` of the projection, as a vector
/// indexed by quotient elements.  Candidates for `δ(q)` are the members of
/// the class `q`; `δ(0) = 0`, `δ(1) = 1` and `δ(¬q) = ¬δ(q)` are imposed
/// while assigning.
pub fn is_retractive(a: &FiniteMv, i: IdealMask) -> Result<Option<Vec<usize>>> {
    let (q, proj) = quotient(a, i)?;
    if q.zero() == q.one() {
        return Ok(None);
    }
    let classes: Vec<Vec<usize>> = q.elements().map(|c| a.elements().filter(|&x| proj[x] == c).collect()).collect();
    let mut delta: Vec<Option<usize>> = vec![None; q.size()];
    delta[q.zero()] = Some(a.zero());
    delta[q.one()] = Some(a.one());
    if !consistent(a, &q, &delta) {
        return Ok(None);
    }

    fn consistent(a: &FiniteMv, q: &FiniteMv, d: &[Option<usize>]) -> bool {
        q.elements().all(|x| {
            let Some(dx) = d[x] else { return true };
            if d[q.neg(x)].is_some_and(|n| n != a.neg(dx)) {
                return false;
            }
            q.elements().all(|y| match (d[y], d[q.oplus(x, y)]) {
                (Some(dy), Some(dz)) => a.oplus(dx, dy) == dz,
                _ => true,
            })
        })
    }

    fn search(a: &FiniteMv, q: &FiniteMv, classes: &[Vec<usize>], d: &mut Vec<Option<usize>>) -> bool {
        let Some(c) = d.iter().position(|v| v.is_none()) else { return true };
        let nc = q.neg(c);
        for &x in &classes[c] {
            if nc == c && a.neg(x) != x {
                continue;
            }
            d[c] = Some(x);
            d[nc] = Some(a.neg(x));
            if consistent(a, q, d) && search(a, q, classes, d) {
                return true;
            }
            d[c] = None;
            d[nc] = None;
        }
        false
    }

    if !search(a, &q, &classes, &mut delta) {
        return Ok(None);
    }
    let section: Vec<usize> = delta.into_iter().map(|v| v.expect("assigned")).collect();
    debug_assert!(section.iter().enumerate().all(|(c, &x)| proj[x] == c));
    Ok(Some(section))
}

/// A subalgebra `S` with `S ∩ ⟨I⟩ = {0, 1}` whose union with `⟨I⟩`
/// generates `A`, where `⟨I⟩` is the subalgebra generated by `I`.
pub fn has_complement(a: &FiniteMv, i: IdealMask, caps: &Caps) -> Result<Option<IdealMask>> {
    let m = a.size();
    if m > caps.complement_size {
        return Err(Error::CapExceeded(format!(
            "complement search over {m} elements exceeds the cap {}",
            caps.complement_size
        )));
    }
    if !is_ideal(a, i) {
        return Err(Error::Precondition(format!("{} is not an ideal", i.describe(a))));
    }
    let gen = generated_subalgebra(a, i);
    let bounds = IdealMask::of([a.zero(), a.one()]);
    let full = IdealMask::full(a);
    let others: Vec<usize> = a.elements().filter(|&x| !bounds.contains(x)).collect();
    for bits in 0u64..1 << others.len() {
        let s = IdealMask::of(others.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, &x)| x)).union(bounds);
        if generated_subalgebra(a, s) != s {
            continue;
        }
        if s.intersect(gen) == bounds && generated_subalgebra(a, s.union(gen)) == full {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Clause-by-clause verdict for the lexicographic ideal definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexIdVerdict {
    pub proper_nontrivial: bool,
    pub normal: bool,
    pub commutative: bool,
    pub strict: bool,
    pub retractive: bool,
    pub prime: bool,
}

impl LexIdVerdict {
    pub fn holds(&self) -> bool {
        self.proper_nontrivial && self.normal && self.commutative && self.strict && self.retractive && self.prime
    }

    pub fn clauses(&self) -> [(&'static str, bool); 6] {
        [
            ("proper_nontrivial", self.proper_nontrivial),
            ("normal", self.normal),
            ("commutative", self.commutative),
            ("strict", self.strict),
            ("retractive", self.retractive),
            ("prime", self.prime),
        ]
    }
}

pub fn is_lexicographic_ideal(a: &FiniteMv, i: IdealMask) -> Result<LexIdVerdict> {
    let info = enumerate_ideals(a)
        .into_iter()
        .find(|x| x.mask == i)
        .ok_or_else(|| Error::Precondition(format!("{} is not an ideal", i.describe(a))))?;
    let retractive = info.normal && is_retractive(a, i)?.is_some();
    Ok(LexIdVerdict {
        proper_nontrivial: info.proper && i != IdealMask::of([a.zero()]),
        normal: info.normal,
        commutative: info.commutative,
        strict: info.strict,
        retractive,
        prime: info.prime,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{make_chain, make_product};
    use super::*;

    #[test]
    fn diagonal_section() {
        let a = make_product(&make_chain(2).unwrap(), &make_chain(2).unwrap()).unwrap();
        let i = IdealMask::of((0..3).map(|k| a.index_of(&format!("({k},0)")).unwrap()));
        let s = is_retractive(&a, i).unwrap().unwrap();
        let labels: Vec<&str> = s.iter().map(|&x| a.label(x)).collect();
        assert_eq!(labels, ["(0,0)", "(1,1)", "(2,2)"]);
        assert!(has_complement(&a, i, &Caps::default()).unwrap().is_some());
        let v = is_lexicographic_ideal(&a, i).unwrap();
        assert!(!v.strict && !v.holds());
    }

    #[test]
    fn trivial_and_full_ideals() {
        let a = make_chain(4).unwrap();
        let zero = IdealMask::of([0]);
        assert_eq!(is_retractive(&a, zero).unwrap(), Some(vec![0, 1, 2, 3, 4]));
        assert!(!is_lexicographic_ideal(&a, zero).unwrap().proper_nontrivial);
        let full = IdealMask::full(&a);
        assert_eq!(is_retractive(&a, full).unwrap(), None);
        assert!(has_complement(&a, full, &Caps::default()).unwrap().is_some());
    }
}
