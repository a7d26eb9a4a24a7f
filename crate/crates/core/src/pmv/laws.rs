use super::{IterKind, Order, PmvAlgebra, PmvElem};
use crate::config::Config;
use crate::error::Result;
use crate::report::{Check, Report};
use crate::sample::Sampler;

fn triple(alg: &PmvAlgebra, s: &mut Sampler) -> Result<(PmvElem, PmvElem, PmvElem)> {
    Ok((alg.sample(s)?, alg.sample(s)?, alg.sample(s)?))
}

fn differ(what: &str, args: &[&PmvElem], lhs: &PmvElem, rhs: &PmvElem) -> Option<String> {
    (lhs != rhs).then(|| {
        let args: Vec<_> = args.iter().map(|a| a.to_string()).collect();
        format!("{what} at ({}): {lhs} ≠ {rhs}", args.join(", "))
    })
}

/// The eight pseudo MV-algebra axioms on sampled triples, plus the
/// definition of `⊙` from `⊕` and the negations.
pub fn check_axioms(alg: &PmvAlgebra, cfg: &Config) -> Result<Report> {
    let mut r = Report::new(format!("axioms {alg}"));
    r.fact("symmetric", alg.is_symmetric());
    let one = alg.one();
    let zero = alg.zero();

    r.push(Check::sampled("A1 associativity", cfg, |s| {
        let (x, y, z) = triple(alg, s)?;
        let lhs = x.oplus(&y.oplus(&z)?)?;
        let rhs = x.oplus(&y)?.oplus(&z)?;
        Ok(differ("x⊕(y⊕z) vs (x⊕y)⊕z", &[&x, &y, &z], &lhs, &rhs))
    })?);
    r.push(Check::sampled("A2 zero", cfg, |s| {
        let x = alg.sample(s)?;
        Ok(differ("x⊕0", &[&x], &x.oplus(&zero)?, &x).or(differ("0⊕x", &[&x], &zero.oplus(&x)?, &x)))
    })?);
    r.push(Check::sampled("A3 one", cfg, |s| {
        let x = alg.sample(s)?;
        Ok(differ("x⊕1", &[&x], &x.oplus(&one)?, &one).or(differ("1⊕x", &[&x], &one.oplus(&x)?, &one)))
    })?);
    r.push(Check::single("A4 negations of one", one.tilde().is_zero() && one.minus().is_zero(), || {
        format!("1~ = {}, 1⁻ = {}", one.tilde(), one.minus())
    }));
    r.push(Check::sampled("A5 negation exchange", cfg, |s| {
        let (x, y) = (alg.sample(s)?, alg.sample(s)?);
        let lhs = x.minus().oplus(&y.minus())?.tilde();
        let rhs = x.tilde().oplus(&y.tilde())?.minus();
        Ok(differ("(x⁻⊕y⁻)~ vs (x~⊕y~)⁻", &[&x, &y], &lhs, &rhs))
    })?);
    r.push(Check::sampled("A6 join forms", cfg, |s| {
        let (x, y) = (alg.sample(s)?, alg.sample(s)?);
        let a = x.oplus(&x.tilde().odot(&y)?)?;
        let b = y.oplus(&y.tilde().odot(&x)?)?;
        let c = x.odot(&y.minus())?.oplus(&y)?;
        let d = y.odot(&x.minus())?.oplus(&x)?;
        Ok(differ("x⊕(x~⊙y) vs y⊕(y~⊙x)", &[&x, &y], &a, &b)
            .or(differ("x⊕(x~⊙y) vs (x⊙y⁻)⊕y", &[&x, &y], &a, &c))
            .or(differ("x⊕(x~⊙y) vs (y⊙x⁻)⊕x", &[&x, &y], &a, &d)))
    })?);
    r.push(Check::sampled("A7 meet forms", cfg, |s| {
        let (x, y) = (alg.sample(s)?, alg.sample(s)?);
        let lhs = x.odot(&x.minus().oplus(&y)?)?;
        let rhs = x.oplus(&y.tilde())?.odot(&y)?;
        Ok(differ("x⊙(x⁻⊕y) vs (x⊕y~)⊙y", &[&x, &y], &lhs, &rhs))
    })?);
    r.push(Check::sampled("A8 double negation", cfg, |s| {
        let x = alg.sample(s)?;
        Ok(differ("(x⁻)~", &[&x], &x.minus().tilde(), &x))
    })?);
    r.push(Check::sampled("odot from oplus", cfg, |s| {
        let (x, y) = (alg.sample(s)?, alg.sample(s)?);
        let lhs = y.odot(&x)?;
        let rhs = x.minus().oplus(&y.minus())?.tilde();
        Ok(differ("y⊙x vs (x⁻⊕y⁻)~", &[&x, &y], &lhs, &rhs))
    })?);
    Ok(r)
}

/// Derived laws: the partial-structure recovery of `⊕`, lattice agreement,
/// both double negations, the partial-sum contract, the closed form of
/// truncated multiples, and the pseudo effect algebra axioms.
pub fn check_laws(alg: &PmvAlgebra, cfg: &Config) -> Result<Report> {
    let mut r = Report::new(format!("laws {alg}"));
    let one = alg.one();
    let spec = alg.spec();

    r.push(Check::sampled("oplus via partial structure", cfg, |s| {
        let (x, y) = (alg.sample(s)?, alg.sample(s)?);
        Ok(differ("oplus_via_pea vs oplus", &[&x, &y], &x.oplus_via_pea(&y)?, &x.oplus(&y)?))
    })?);
    r.push(Check::sampled("lattice agreement", cfg, |s| {
        let (x, y) = (alg.sample(s)?, alg.sample(s)?);
        Ok(differ("x⊕(x~⊙y) vs x∨y", &[&x, &y], &x.join_a6(&y)?, &x.join(&y)?)
            .or(differ("x⊙(x⁻⊕y) vs x∧y", &[&x, &y], &x.meet_a7(&y)?, &x.meet(&y)?)))
    })?);
    r.push(Check::sampled("double negations", cfg, |s| {
        let x = alg.sample(s)?;
        Ok(differ("(x⁻)~", &[&x], &x.minus().tilde(), &x).or(differ("(x~)⁻", &[&x], &x.tilde().minus(), &x)))
    })?);
    r.push(Check::sampled("partial sum is the group sum", cfg, |s| {
        let (x, y) = (alg.sample(s)?, alg.sample(s)?);
        Ok(match x.partial_add(&y)? {
            None => None,
            Some(sum) => {
                let raw = spec.add(x.value(), y.value())?;
                if sum.value() != &raw || sum != x.oplus(&y)? {
                    Some(format!("{x} + {y}: partial {sum}, raw {raw}"))
                } else {
                    None
                }
            }
        })
    })?);
    r.push(Check::sampled("truncated multiples closed form", cfg, |s| {
        let x = alg.sample(s)?;
        let n = s.index(21) as u64;
        let lit = x.iterate(n, IterKind::Truncated)?.expect("always defined");
        let closed = spec.meet(&spec.multiple(n, x.value())?, alg.unit())?;
        if lit.value() != &closed {
            return Ok(Some(format!("{n}.{x}: iterated {lit}, closed form {closed}")));
        }
        let ord = x.ord();
        let reached = |k: u64| -> Result<bool> { Ok(x.iterate(k, IterKind::Truncated)?.expect("defined").is_one()) };
        let ok = match ord {
            Order::Finite(k) => reached(k)? && (k == 1 || !reached(k - 1)?),
            Order::Infinite => !reached(20)?,
        };
        Ok((!ok).then(|| format!("ord({x}) = {ord} disagrees with iteration")))
    })?);
    r.push(Check::sampled("PE1 associativity of the partial sum", cfg, |s| {
        let (a, b, c) = triple(alg, s)?;
        let lhs = match a.partial_add(&b)? {
            Some(ab) => ab.partial_add(&c)?,
            None => None,
        };
        let rhs = match b.partial_add(&c)? {
            Some(bc) => a.partial_add(&bc)?,
            None => None,
        };
        Ok((lhs != rhs).then(|| {
            let show = |o: &Option<PmvElem>| o.as_ref().map_or("undefined".to_string(), |e| e.to_string());
            format!("({a}+{b})+{c} = {} but {a}+({b}+{c}) = {}", show(&lhs), show(&rhs))
        }))
    })?);
    r.push(Check::sampled("PE2 conjugate summands", cfg, |s| {
        let (a, b) = (alg.sample(s)?, alg.sample(s)?);
        let Some(ab) = a.partial_add(&b)? else { return Ok(None) };
        // d + a = a + b = b + e
        let d = alg.elem(spec.sub(ab.value(), a.value())?)?;
        let e = alg.elem(spec.sub_left(b.value(), ab.value())?)?;
        let da = d.partial_add(&a)?;
        let be = b.partial_add(&e)?;
        Ok((da.as_ref() != Some(&ab) || be.as_ref() != Some(&ab))
            .then(|| format!("{a}+{b} = {ab}: d = {d}, e = {e}")))
    })?);
    r.push(Check::sampled("PE3 complements", cfg, |s| {
        let a = alg.sample(s)?;
        let right = a.partial_add(&a.tilde())?;
        let left = a.minus().partial_add(&a)?;
        Ok((right.as_ref() != Some(&one) || left.as_ref() != Some(&one))
            .then(|| format!("{a} + {a}~ or {a}⁻ + {a} is not 1")))
    })?);
    r.push(Check::sampled("PE4 only zero adds to one", cfg, |s| {
        let a = alg.sample(s)?;
        let defined = a.partial_add(&one)?.is_some() || one.partial_add(&a)?.is_some();
        Ok((defined && !a.is_zero()).then(|| format!("{a} + 1 is defined")))
    })?);
    Ok(r)
}

/// `oplus_via_pea = oplus` on every pair of `Γ(Z, n)`.
pub fn pea_equivalence_exhaustive(n: i64) -> Result<Check> {
    use crate::group::{GroupElem, GroupSpec};
    let alg = PmvAlgebra::gamma(GroupSpec::Integers, GroupElem::int(n))?;
    let elems: Vec<_> = (0..=n).map(|k| alg.elem(GroupElem::int(k))).collect::<Result<_>>()?;
    let pairs = elems.iter().flat_map(|x| elems.iter().map(move |y| (x, y)));
    Check::exhaustive(format!("oplus via partial structure on gamma(Z,{n})"), pairs, |(x, y)| {
        Ok(differ("oplus_via_pea vs oplus", &[x, y], &x.oplus_via_pea(y)?, &x.oplus(y)?))
    })
}
