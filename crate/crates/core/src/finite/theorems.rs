use super::ideals::{enumerate_ideals, radical_suite, IdealMask};
use super::iso::rdp2_failure;
use super::retract::{has_complement, is_lexicographic_ideal, is_retractive};
use super::states::{is_local, ord};
use super::{catalog, make_chain, make_product, FiniteMv};
use crate::config::Caps;
use crate::error::Result;
use crate::report::{Check, Report};

/// Algebra sizes used by [`finite_theorem_suite`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteSizes {
    pub complement: usize,
    pub catalog: usize,
    pub product_factor: usize,
    pub rdp_chain: usize,
}

impl Default for SuiteSizes {
    fn default() -> Self {
        SuiteSizes { complement: 9, catalog: 12, product_factor: 5, rdp_chain: 6 }
    }
}

fn proper_normal(a: &FiniteMv) -> Vec<IdealMask> {
    enumerate_ideals(a).into_iter().filter(|i| i.proper && i.normal).map(|i| i.mask).collect()
}

/// A section exists exactly when the generated subalgebra has a
/// complement, over proper ideals.  For `I = A` the quotient is trivial, so
/// no section with `δ(0) = 0 ≠ 1 = δ(1)` exists, while `{0, 1}` complements
/// `⟨A⟩ = A`; that case is checked separately.
pub fn retractive_complement_agreement(max_size: usize, caps: &Caps) -> Result<Report> {
    let mut r = Report::new(format!("sections and complements, |A| ≤ {max_size}"));
    let algs = catalog(max_size)?;
    let mut cases = Vec::new();
    for (name, a) in &algs {
        for i in proper_normal(a) {
            cases.push((name, a, i));
        }
    }
    let mut retractive = 0;
    r.push(Check::exhaustive("retractive iff complemented (proper ideals)", cases.iter(), |&(name, a, i)| {
        let s = is_retractive(a, i)?;
        let c = has_complement(a, i, caps)?;
        retractive += s.is_some() as usize;
        Ok((s.is_some() != c.is_some()).then(|| {
            format!("{name}, I = {}: section {:?}, complement {:?}", i.describe(a), s.is_some(), c.map(|m| m.describe(a)))
        }))
    })?);
    r.push(Check::exhaustive("projection after section is the identity", cases.iter(), |&(name, a, i)| {
        let Some(s) = is_retractive(a, i)? else { return Ok(None) };
        let (q, proj) = super::quotient(a, i)?;
        let ok = q.elements().all(|c| proj[s[c]] == c)
            && q.elements().all(|c| q.elements().all(|d| a.oplus(s[c], s[d]) == s[q.oplus(c, d)]));
        Ok((!ok).then(|| format!("{name}, I = {}", i.describe(a))))
    })?);
    r.push(Check::exhaustive("whole algebra: no section, complement {0,1}", algs.iter(), |(name, a)| {
        let full = IdealMask::full(a);
        let s = is_retractive(a, full)?;
        let c = has_complement(a, full, caps)?;
        let bounds = IdealMask::of([a.zero(), a.one()]);
        Ok((s.is_some() || c != Some(bounds)).then(|| format!("{name}")))
    })?);
    r.fact("algebras", algs.len()).fact("proper ideals", cases.len()).fact("retractive", retractive);
    Ok(r)
}

/// `Rad ⊆ Infinit ⊆ Rad_n` on every catalog algebra.
pub fn radical_chain(max_size: usize) -> Result<Check> {
    let algs = catalog(max_size)?;
    Check::exhaustive(format!("Rad ⊆ Infinit ⊆ Rad_n, |A| ≤ {max_size}"), algs.iter(), |(name, a)| {
        let r = radical_suite(a);
        Ok((!(r.rad.is_subset(r.infinit) && r.infinit.is_subset(r.rad_n))).then(|| {
            format!("{name}: Rad {}, Infinit {}, Rad_n {}", r.rad.describe(a), r.infinit.describe(a), r.rad_n.describe(a))
        }))
    })
}

/// `ord(x ⊙ y) < ∞` forces `x ⊕ y = 1`, i.e. `¬y ≤ x`.  The variant with
/// conclusion `x ≤ ¬y` is refuted by `x = y = 1`.
pub fn order_meet_lemma(max_size: usize) -> Result<Report> {
    let mut r = Report::new(format!("finite order of x ⊙ y, |A| ≤ {max_size}"));
    let algs = catalog(max_size)?;
    let cases = || algs.iter().flat_map(|(n, a)| a.elements().flat_map(move |x| a.elements().map(move |y| (n, a, x, y))));
    r.push(Check::exhaustive("ord(x ⊙ y) finite implies x ⊕ y = 1", cases(), |(name, a, x, y)| {
        let finite = ord(a, a.odot(x, y)).is_some();
        Ok((finite && a.oplus(x, y) != a.one()).then(|| format!("{name}: x = {}, y = {}", a.label(x), a.label(y))))
    })?);
    let literal = cases().find(|&(_, a, x, y)| ord(a, a.odot(x, y)).is_some() && !a.le(x, a.neg(y)));
    r.push(Check::single("conclusion x ≤ ¬y is refuted", literal.is_some(), || "no counterexample found".into()));
    if let Some((name, a, x, y)) = literal {
        r.fact("refutation", format!("{name}: x = {}, y = {}", a.label(x), a.label(y)));
    }
    Ok(r)
}

/// `ord(x) < ∞ or ord(¬x) < ∞` for all `x` holds exactly for the local
/// algebras, which in the catalog are the chains.
pub fn locality_criterion(max_size: usize) -> Result<Report> {
    let mut r = Report::new(format!("locality by orders, |A| ≤ {max_size}"));
    let algs = catalog(max_size)?;
    r.push(Check::exhaustive("order criterion iff local", algs.iter(), |(name, a)| {
        let criterion = a.elements().all(|x| ord(a, x).is_some() || ord(a, a.neg(x)).is_some());
        let local = is_local(a);
        Ok((criterion != local).then(|| format!("{name}: criterion {criterion}, local {local}")))
    })?);
    r.push(Check::exhaustive("local iff chain", algs.iter(), |(name, a)| {
        Ok((is_local(a) != a.is_chain()).then(|| name.clone()))
    })?);
    Ok(r)
}

/// `I_A × I_B` is retractive in `A × B` iff both factors are, over proper
/// normal ideals.
pub fn product_retractiveness(max_factor: usize) -> Result<Check> {
    let algs = catalog(max_factor)?;
    let mut cases = Vec::new();
    for (na, a) in &algs {
        for (nb, b) in &algs {
            for ia in proper_normal(a) {
                for ib in proper_normal(b) {
                    cases.push((na, a, ia, nb, b, ib));
                }
            }
        }
    }
    Check::exhaustive(format!("product of retractive ideals, factors ≤ {max_factor}"), cases, |(na, a, ia, nb, b, ib)| {
        let p = make_product(a, b)?;
        let ip = IdealMask::of(ia.iter().flat_map(|x| ib.iter().map(move |y| x * b.size() + y)));
        let whole = is_retractive(&p, ip)?.is_some();
        let parts = is_retractive(a, ia)?.is_some() && is_retractive(b, ib)?.is_some();
        Ok((whole != parts).then(|| {
            format!("{na} × {nb}, I = {} × {}: product {whole}, factors {parts}", ia.describe(a), ib.describe(b))
        }))
    })
}

/// RDP₂ on `chain(n)` for `n ≤ max_chain` and on `chain(2)²`.
pub fn rdp2_suite(max_chain: usize, caps: &Caps) -> Result<Check> {
    let mut algs = Vec::new();
    for n in 1..=max_chain {
        algs.push((format!("chain({n})"), make_chain(n)?));
    }
    let c2 = make_chain(2)?;
    algs.push(("prod(chain(2),chain(2))".into(), make_product(&c2, &c2)?));
    Check::exhaustive(format!("RDP₂ on chains ≤ {max_chain} and chain(2)²"), algs, |(name, a)| {
        Ok(rdp2_failure(&a, caps)?.map(|f| format!("{name}: {f}")))
    })
}

/// No ideal of a finite algebra is lexicographic; algebras with two or more
/// maximal ideals are reported separately.
pub fn no_lexicographic_ideals(max_size: usize) -> Result<Report> {
    let mut r = Report::new(format!("lexicographic ideals, |A| ≤ {max_size}"));
    let algs = catalog(max_size)?;
    let cases: Vec<_> =
        algs.iter().flat_map(|(n, a)| enumerate_ideals(a).into_iter().map(move |i| (n, a, i.mask))).collect();
    r.push(Check::exhaustive("no ideal is lexicographic", cases.iter(), |&(name, a, i)| {
        Ok(is_lexicographic_ideal(a, i)?.holds().then(|| format!("{name}: {}", i.describe(a))))
    })?);
    r.push(Check::exhaustive("several maximal ideals exclude lexicographic ones", cases.iter(), |&(name, a, i)| {
        let several = enumerate_ideals(a).iter().filter(|x| x.maximal).count() >= 2;
        Ok((several && is_lexicographic_ideal(a, i)?.holds()).then(|| format!("{name}: {}", i.describe(a))))
    })?);
    r.fact("ideals", cases.len());
    Ok(r)
}

pub fn finite_theorem_suite(caps: &Caps, sizes: &SuiteSizes) -> Result<Report> {
    let mut r = Report::new("finite theorems");
    r.absorb("", retractive_complement_agreement(sizes.complement, caps)?);
    r.push(radical_chain(sizes.catalog)?);
    r.absorb("", order_meet_lemma(sizes.catalog)?);
    r.absorb("", locality_criterion(sizes.catalog)?);
    r.push(product_retractiveness(sizes.product_factor)?);
    r.push(rdp2_suite(sizes.rdp_chain, caps)?);
    r.absorb("", no_lexicographic_ideals(sizes.catalog)?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite() {
        let sizes = SuiteSizes { complement: 6, catalog: 8, product_factor: 3, rdp_chain: 4 };
        let r = finite_theorem_suite(&Caps::default(), &sizes).unwrap();
        assert!(r.passed(), "{r}");
    }
}
