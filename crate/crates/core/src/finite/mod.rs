//! Finite MV-algebras stored as explicit tables.  Nothing here goes through
//! the interval construction, so results can be compared against it.

mod ideals;
mod iso;
mod retract;
mod states;
pub mod table;
mod theorems;

use std::fmt;

use crate::error::{Error, Result};
use crate::report::{Check, Report};

pub use ideals::{
    enumerate_ideals, generated_normal_ideal, ideals_by_subsets, is_ideal, quotient, radical_suite, IdealInfo,
    IdealMask, Radicals,
};
pub use iso::{brute_isomorphic, check_rdp2, rdp2_failure};
pub use retract::{generated_subalgebra, has_complement, is_lexicographic_ideal, is_retractive, LexIdVerdict};
pub use states::{extremal_states, is_local, is_state, ord, FiniteState};
pub use theorems::{
    finite_theorem_suite, locality_criterion, no_lexicographic_ideals, order_meet_lemma, product_retractiveness,
    radical_chain, rdp2_suite, retractive_complement_agreement, SuiteSizes,
};

/// Masks are `u64`, so this is a hard limit independent of the caps.
pub const MAX_ELEMENTS: usize = 64;

/// Raw tables, not yet validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvTable {
    pub labels: Vec<String>,
    pub oplus: Vec<Vec<usize>>,
    pub neg: Vec<usize>,
    pub zero: usize,
    pub one: usize,
}

impl MvTable {
    pub fn size(&self) -> usize {
        self.neg.len()
    }

    fn check_shape(&self) -> Result<()> {
        let m = self.size();
        if m == 0 {
            return Err(Error::Table("no elements".into()));
        }
        if m > MAX_ELEMENTS {
            return Err(Error::CapExceeded(format!("{m} elements, at most {MAX_ELEMENTS} supported")));
        }
        if self.labels.len() != m || self.oplus.len() != m || self.oplus.iter().any(|r| r.len() != m) {
            return Err(Error::Table(format!("tables are not {m}×{m}")));
        }
        let bad = |i: usize| i >= m;
        if self.oplus.iter().flatten().any(|&i| bad(i)) || self.neg.iter().any(|&i| bad(i)) || bad(self.zero) || bad(self.one) {
            return Err(Error::Table(format!("index out of range 0..{m}")));
        }
        Ok(())
    }

    fn odot(&self, x: usize, y: usize) -> usize {
        let n = &self.neg;
        n[self.oplus[n[y]][n[x]]]
    }

    fn le(&self, x: usize, y: usize) -> bool {
        self.oplus[self.neg[x]][y] == self.one
    }
}

/// Exhaustive check of the axioms on a raw table.  With a single negation
/// the two negations of the general axioms coincide, so commutativity of
/// `⊕` is checked separately, together with the lattice property of the
/// induced order.
pub fn check_axioms(t: &MvTable) -> Result<Report> {
    t.check_shape()?;
    let m = t.size();
    let (o, n, z, one) = (&t.oplus, &t.neg, t.zero, t.one);
    let l = |i: usize| t.labels[i].as_str();
    let pairs = || (0..m).flat_map(move |x| (0..m).map(move |y| (x, y)));
    let mut r = Report::new(format!("axioms of a {m}-element table"));

    r.push(Check::exhaustive(
        "A1 associativity",
        pairs().flat_map(|(x, y)| (0..m).map(move |w| (x, y, w))),
        |(x, y, w)| {
            let (a, b) = (o[x][o[y][w]], o[o[x][y]][w]);
            Ok((a != b).then(|| format!("x⊕(y⊕z) = {} but (x⊕y)⊕z = {} at ({}, {}, {})", l(a), l(b), l(x), l(y), l(w))))
        },
    )?);
    r.push(Check::exhaustive("A2 zero", 0..m, |x| {
        Ok((o[x][z] != x || o[z][x] != x).then(|| format!("x⊕0 ≠ x at {}", l(x))))
    })?);
    r.push(Check::exhaustive("A3 one", 0..m, |x| {
        Ok((o[x][one] != one || o[one][x] != one).then(|| format!("x⊕1 ≠ 1 at {}", l(x))))
    })?);
    r.push(Check::single("A4 negation of one", n[one] == z, || format!("¬1 = {}", l(n[one]))));
    r.push(Check::exhaustive("A5 negation exchange", pairs(), |(x, y)| {
        let (a, b) = (n[o[n[x]][n[y]]], n[o[n[y]][n[x]]]);
        Ok((a != b).then(|| format!("¬(¬x⊕¬y) ≠ ¬(¬y⊕¬x) at ({}, {})", l(x), l(y))))
    })?);
    r.push(Check::exhaustive("A6 join forms", pairs(), |(x, y)| {
        let a = o[x][t.odot(n[x], y)];
        let b = o[y][t.odot(n[y], x)];
        let c = o[t.odot(x, n[y])][y];
        let d = o[t.odot(y, n[x])][x];
        Ok((a != b || a != c || a != d).then(|| format!("join forms differ at ({}, {})", l(x), l(y))))
    })?);
    r.push(Check::exhaustive("A7 meet forms", pairs(), |(x, y)| {
        let (a, b) = (t.odot(x, o[n[x]][y]), t.odot(o[x][n[y]], y));
        Ok((a != b).then(|| format!("x⊙(¬x⊕y) ≠ (x⊕¬y)⊙y at ({}, {})", l(x), l(y))))
    })?);
    r.push(Check::exhaustive("A8 double negation", 0..m, |x| {
        Ok((n[n[x]] != x).then(|| format!("¬¬x ≠ x at {}", l(x))))
    })?);
    r.push(Check::exhaustive("commutativity", pairs(), |(x, y)| {
        Ok((o[x][y] != o[y][x]).then(|| format!("x⊕y ≠ y⊕x at ({}, {})", l(x), l(y))))
    })?);
    r.push(Check::exhaustive("order is a lattice with the join forms", pairs(), |(x, y)| {
        let j = o[x][t.odot(n[x], y)];
        let upper: Vec<usize> = (0..m).filter(|&w| t.le(x, w) && t.le(y, w)).collect();
        let least = upper.iter().all(|&w| t.le(j, w)) && upper.contains(&j);
        Ok((!least).then(|| format!("{} is not the least upper bound of ({}, {})", l(j), l(x), l(y))))
    })?);
    Ok(r)
}

/// A validated finite MV-algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteMv {
    table: MvTable,
    m: usize,
    oplus: Vec<usize>,
    odot: Vec<usize>,
    le: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
}

impl fmt::Debug for FiniteMv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteMv({} elements)", self.m)
    }
}

impl FiniteMv {
    pub fn new(table: MvTable) -> Result<Self> {
        let r = check_axioms(&table)?;
        if let Some(c) = r.failures().next() {
            return Err(Error::Table(format!("{} fails: {}", c.name, c.counterexample.clone().unwrap_or_default())));
        }
        let m = table.size();
        let mut oplus = vec![0; m * m];
        let mut odot = vec![0; m * m];
        let mut le = vec![false; m * m];
        for x in 0..m {
            for y in 0..m {
                oplus[x * m + y] = table.oplus[x][y];
                odot[x * m + y] = table.odot(x, y);
                le[x * m + y] = table.le(x, y);
            }
        }
        let mut a = FiniteMv { table, m, oplus, odot, le, meet: vec![0; m * m], join: vec![0; m * m] };
        for x in 0..m {
            for y in 0..m {
                a.meet[x * m + y] = a.bound(x, y, false);
                a.join[x * m + y] = a.bound(x, y, true);
            }
        }
        Ok(a)
    }

    /// Least upper or greatest lower bound, searched in the order.
    fn bound(&self, x: usize, y: usize, upper: bool) -> usize {
        let rel = |a: usize, b: usize| if upper { self.le(a, b) } else { self.le(b, a) };
        let cands: Vec<usize> = (0..self.m).filter(|&w| rel(x, w) && rel(y, w)).collect();
        *cands
            .iter()
            .find(|&&w| cands.iter().all(|&v| rel(w, v)))
            .expect("validated tables form a lattice")
    }

    pub fn table(&self) -> &MvTable {
        &self.table
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.m
    }

    pub fn label(&self, x: usize) -> &str {
        &self.table.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.table.labels.iter().position(|l| l == label)
    }

    pub fn zero(&self) -> usize {
        self.table.zero
    }

    pub fn one(&self) -> usize {
        self.table.one
    }

    pub fn oplus(&self, x: usize, y: usize) -> usize {
        self.oplus[x * self.m + y]
    }

    pub fn odot(&self, x: usize, y: usize) -> usize {
        self.odot[x * self.m + y]
    }

    pub fn neg(&self, x: usize) -> usize {
        self.table.neg[x]
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.le[x * self.m + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.le(x, y)
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.m + y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.m + y]
    }

    /// `x + y`, defined when `x ≤ ¬y`.
    pub fn partial_sum(&self, x: usize, y: usize) -> Option<usize> {
        self.le(x, self.neg(y)).then(|| self.oplus(x, y))
    }

    /// `z` with `y + z = x`, when `y ≤ x`.
    pub fn difference(&self, x: usize, y: usize) -> Option<usize> {
        self.elements().find(|&z| self.partial_sum(y, z) == Some(x))
    }

    pub fn is_chain(&self) -> bool {
        self.elements().all(|x| self.elements().all(|y| self.le(x, y) || self.le(y, x)))
    }
}

/// `{0, 1, …, n}` with truncated addition.
pub fn make_chain(n: usize) -> Result<FiniteMv> {
    if n == 0 {
        return Err(Error::Precondition("chain(n) needs n ≥ 1".into()));
    }
    if n >= MAX_ELEMENTS {
        return Err(Error::CapExceeded(format!("chain({n}) has more than {MAX_ELEMENTS} elements")));
    }
    FiniteMv::new(MvTable {
        labels: (0..=n).map(|k| k.to_string()).collect(),
        oplus: (0..=n).map(|a| (0..=n).map(|b| (a + b).min(n)).collect()).collect(),
        neg: (0..=n).map(|a| n - a).collect(),
        zero: 0,
        one: n,
    })
}

/// Componentwise product; `(a, b)` has index `a·|B| + b`.
pub fn make_product(a: &FiniteMv, b: &FiniteMv) -> Result<FiniteMv> {
    let (p, q) = (a.size(), b.size());
    if p * q > MAX_ELEMENTS {
        return Err(Error::CapExceeded(format!("product has {} elements, at most {MAX_ELEMENTS}", p * q)));
    }
    let idx = |x: usize, y: usize| x * q + y;
    let pairs: Vec<(usize, usize)> = (0..p).flat_map(|x| (0..q).map(move |y| (x, y))).collect();
    FiniteMv::new(MvTable {
        labels: pairs.iter().map(|&(x, y)| format!("({},{})", a.label(x), b.label(y))).collect(),
        oplus: pairs
            .iter()
            .map(|&(x1, y1)| pairs.iter().map(|&(x2, y2)| idx(a.oplus(x1, x2), b.oplus(y1, y2))).collect())
            .collect(),
        neg: pairs.iter().map(|&(x, y)| idx(a.neg(x), b.neg(y))).collect(),
        zero: idx(a.zero(), b.zero()),
        one: idx(a.one(), b.one()),
    })
}

/// The subset as an algebra, elements renumbered in increasing index order.
pub fn make_subalgebra(a: &FiniteMv, subset: &[usize]) -> Result<FiniteMv> {
    let mut s: Vec<usize> = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&x) = s.iter().find(|&&x| x >= a.size()) {
        return Err(Error::Precondition(format!("index {x} is not an element")));
    }
    for (c, name) in [(a.zero(), "0"), (a.one(), "1")] {
        if !s.contains(&c) {
            return Err(Error::Precondition(format!("subset misses {name} = {}", a.label(c))));
        }
    }
    for &x in &s {
        if !s.contains(&a.neg(x)) {
            return Err(Error::Precondition(format!("¬{} = {} is not in the subset", a.label(x), a.label(a.neg(x)))));
        }
        for &y in &s {
            let z = a.oplus(x, y);
            if !s.contains(&z) {
                return Err(Error::Precondition(format!(
                    "{} ⊕ {} = {} is not in the subset",
                    a.label(x),
                    a.label(y),
                    a.label(z)
                )));
            }
        }
    }
    let pos = |x: usize| s.binary_search(&x).expect("closed");
    FiniteMv::new(MvTable {
        labels: s.iter().map(|&x| a.label(x).to_string()).collect(),
        oplus: s.iter().map(|&x| s.iter().map(|&y| pos(a.oplus(x, y))).collect()).collect(),
        neg: s.iter().map(|&x| pos(a.neg(x))).collect(),
        zero: pos(a.zero()),
        one: pos(a.one()),
    })
}

/// Every product of chains with at most `max_size` elements, each listed
/// once with factors in non-increasing order, named in the algebra syntax.
pub fn catalog(max_size: usize) -> Result<Vec<(String, FiniteMv)>> {
    fn factorings(max: usize, largest: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !acc.is_empty() {
            out.push(acc.clone());
        }
        for n in (1..=largest).rev() {
            let size: usize = acc.iter().map(|k| k + 1).product::<usize>() * (n + 1);
            if size <= max {
                acc.push(n);
                factorings(max, n, acc, out);
                acc.pop();
            }
        }
    }
    let mut shapes = Vec::new();
    factorings(max_size, max_size.saturating_sub(1), &mut Vec::new(), &mut shapes);
    shapes.sort_by_key(|f| (f.iter().map(|k| k + 1).product::<usize>(), f.len(), f.clone()));
    shapes
        .into_iter()
        .map(|f| {
            let name = f.iter().rev().fold(String::new(), |acc, n| {
                if acc.is_empty() {
                    format!("chain({n})")
                } else {
                    format!("prod(chain({n}),{acc})")
                }
            });
            let mut it = f.iter().rev();
            let mut alg = make_chain(*it.next().expect("nonempty"))?;
            for &n in it {
                alg = make_product(&make_chain(n)?, &alg)?;
            }
            Ok((name, alg))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        let c2 = make_chain(2).unwrap();
        assert_eq!(c2.size(), 3);
        assert_eq!(c2.oplus(1, 1), 2);
        let p = make_product(&c2, &c2).unwrap();
        assert_eq!(p.size(), 9);
        let diag: Vec<usize> = (0..3).map(|k| k * 3 + k).collect();
        let d = make_subalgebra(&p, &diag).unwrap();
        assert_eq!(d.size(), 3);
        assert!(d.is_chain());
        let bad = make_subalgebra(&p, &[0, 3, 5, 8]).unwrap_err();
        assert!(bad.to_string().contains("⊕"), "{bad}");
        assert!(make_chain(0).is_err());
    }

    #[test]
    fn corrupted_table_fails_associativity() {
        let mut t = make_chain(4).unwrap().table().clone();
        t.oplus[1][2] = 2;
        t.oplus[2][1] = 2;
        let r = check_axioms(&t).unwrap();
        let a1 = r.check("A1 associativity").unwrap();
        assert!(!a1.passed && a1.counterexample.is_some());
        assert!(FiniteMv::new(t).is_err());
    }

    #[test]
    fn catalog_shapes() {
        let names: Vec<String> = catalog(9).unwrap().into_iter().map(|(n, _)| n).collect();
        assert!(names.contains(&"prod(chain(2),chain(2))".to_string()));
        assert!(names.contains(&"prod(chain(1),prod(chain(1),chain(1)))".to_string()));
        assert!(names.contains(&"chain(8)".to_string()));
        assert!(!names.contains(&"prod(chain(1),chain(2))".to_string()));
        for (name, a) in catalog(12).unwrap() {
            assert!(a.size() <= 12, "{name}");
        }
    }

    #[test]
    fn lattice_operations() {
        let p = make_product(&make_chain(2).unwrap(), &make_chain(2).unwrap()).unwrap();
        let (x, y) = (p.index_of("(2,0)").unwrap(), p.index_of("(0,1)").unwrap());
        assert_eq!(p.label(p.meet(x, y)), "(0,0)");
        assert_eq!(p.label(p.join(x, y)), "(2,1)");
        assert_eq!(p.partial_sum(x, y).map(|z| p.label(z).to_string()), Some("(2,1)".into()));
        assert_eq!(p.partial_sum(x, x), None);
    }
}
