use super::{state_on_lex, Indexer, PerfectWitness, WitnessKind};
use crate::config::Config;
use crate::error::Result;
use crate::group::{GroupElem, GroupOrdering};
use crate::pmv::PmvElem;
use crate::report::{Check, Report};
use crate::sample::Sampler;

fn slice_elem(w: &PerfectWitness, s: &mut Sampler) -> Result<PmvElem> {
    w.lex().sample(s)
}

fn index_pair(w: &PerfectWitness, s: &mut Sampler) -> Result<(GroupElem, GroupElem)> {
    let lex = w.lex();
    let h = lex.base_spec();
    let v = lex.sample_index(s)?;
    let room = h.sub(lex.u(), &v)?;
    let t = lex.sample_index_below(s, &room)?;
    Ok((v, t))
}

/// Slice laws of the decomposition plus the partial-sum and lattice
/// consequences that only involve the indexer.
pub fn check_decomposition(w: &PerfectWitness, cfg: &Config) -> Result<Report> {
    let mut r = Report::new(format!("decomposition of {}", w.lex()));
    let lex = w.lex();
    let h = lex.base_spec();
    let u = lex.u();
    let in_range = |t: &GroupElem| -> Result<bool> { Ok(h.le(&h.zero(), t)? && h.le(t, u)?) };

    r.push(Check::sampled("slices cover the algebra", cfg, |s| {
        let x = slice_elem(w, s)?;
        let t = w.classify(&x)?;
        Ok((!in_range(&t)?).then(|| format!("{x} gets index {t} outside [0,{u}]")))
    })?);
    r.push(Check::sampled("(a) slices are ordered", cfg, |s| {
        let (x, y) = (slice_elem(w, s)?, slice_elem(w, s)?);
        let (v, t) = (w.classify(&x)?, w.classify(&y)?);
        let bad = match h.cmp(&v, &t)? {
            GroupOrdering::Less => !x.cmp(&y)?.eq(&GroupOrdering::Less),
            GroupOrdering::Greater => !x.cmp(&y)?.eq(&GroupOrdering::Greater),
            _ => false,
        };
        Ok(bad.then(|| format!("{x} ∈ M_{v} and {y} ∈ M_{t} are not ordered like their slices")))
    })?);
    r.push(Check::sampled("(b) negations swap slices", cfg, |s| {
        let x = slice_elem(w, s)?;
        let t = w.classify(&x)?;
        let want = h.sub(u, &t)?;
        let (m, n) = (w.classify(&x.minus())?, w.classify(&x.tilde())?);
        Ok((m != want || n != want).then(|| format!("{x} ∈ M_{t}: x⁻ ∈ M_{m}, x~ ∈ M_{n}, expected M_{want}")))
    })?);
    r.push(Check::sampled("(c) oplus adds indices", cfg, |s| {
        let (x, y) = (slice_elem(w, s)?, slice_elem(w, s)?);
        let (v, t) = (w.classify(&x)?, w.classify(&y)?);
        let want = lex.truncated_sum(&v, &t)?;
        let got = w.classify(&x.oplus(&y)?)?;
        Ok((got != want).then(|| format!("{x} ∈ M_{v}, {y} ∈ M_{t}: x⊕y ∈ M_{got}, expected M_{want}")))
    })?);
    r.push(clause_partial_sum_lands(w, cfg)?);
    r.push(clause_slices_generate(w, cfg)?);
    r.push(clause_overflow_undefined(w, cfg)?);
    r.push(clause_lattice(w, cfg)?);
    Ok(r)
}

/// (i): `x ∈ M_v`, `y ∈ M_t`, `v + t < u` gives a defined sum in `M_{v+t}`;
/// a defined sum forces `v + t ≤ u`, and lands in `M_u` when `v + t = u`.
fn clause_partial_sum_lands(w: &PerfectWitness, cfg: &Config) -> Result<Check> {
    let lex = w.lex();
    let h = lex.base_spec();
    let u = lex.u();
    Check::sampled("(i) partial sums land in the sum slice", cfg, |s| {
        let (v0, t0) = index_pair(w, s)?;
        let x = lex.sample_in_slice(s, &v0)?;
        let y = lex.sample_in_slice(s, &t0)?;
        let (v, t) = (w.classify(&x)?, w.classify(&y)?);
        let vt = h.add(&v, &t)?;
        let sum = x.partial_add(&y)?;
        Ok(match (h.cmp(&vt, u)?, sum) {
            (GroupOrdering::Less, None) => Some(format!("{x} ∈ M_{v}, {y} ∈ M_{t}: sum undefined")),
            (GroupOrdering::Less | GroupOrdering::Equal, Some(z)) => {
                let got = w.classify(&z)?;
                (got != vt).then(|| format!("{x} + {y} = {z} ∈ M_{got}, expected M_{vt}"))
            }
            (GroupOrdering::Greater, Some(z)) => Some(format!("{x} + {y} = {z} defined with {vt} > {u}")),
            _ => None,
        })
    })
}

/// (ii): every `z ∈ M_{v+t}` with `v + t < u` splits as `x + y` with
/// `x ∈ M_v`, `y ∈ M_t`.
fn clause_slices_generate(w: &PerfectWitness, cfg: &Config) -> Result<Check> {
    let lex = w.lex();
    let h = lex.base_spec();
    let zero = h.zero();
    Check::sampled("(ii) slices generate the sum slice", cfg, |s| {
        let (v, mut t) = index_pair(w, s)?;
        let mut vt = h.add(&v, &t)?;
        if &vt == lex.u() {
            t = zero.clone();
            vt = v.clone();
            if &vt == lex.u() {
                return Ok(None);
            }
        }
        let z = lex.sample_in_slice(s, &vt)?;
        let gz = lex.tail(&z).clone();
        let g0 = lex.fiber().zero();
        let (xv, yv) = if t == zero {
            (z.value().clone(), GroupElem::pair(zero.clone(), g0))
        } else if v == zero {
            (GroupElem::pair(zero.clone(), g0), z.value().clone())
        } else {
            (GroupElem::pair(v.clone(), gz), GroupElem::pair(t.clone(), g0))
        };
        let alg = lex.algebra();
        let (x, y) = (alg.elem(xv)?, alg.elem(yv)?);
        let (cx, cy) = (w.classify(&x)?, w.classify(&y)?);
        if cx != v || cy != t {
            return Ok(Some(format!("{z} ∈ M_{vt}: summands {x} ∈ M_{cx}, {y} ∈ M_{cy}, expected M_{v}, M_{t}")));
        }
        let cz = w.classify(&z)?;
        if cz != vt {
            return Ok(Some(format!("{z} was drawn from slice {vt} but indexes as {cz}")));
        }
        Ok((x.partial_add(&y)?.as_ref() != Some(&z)).then(|| format!("{x} + {y} ≠ {z}")))
    })
}

/// (iii): `v + t > u` makes `x + y` undefined.
fn clause_overflow_undefined(w: &PerfectWitness, cfg: &Config) -> Result<Check> {
    let lex = w.lex();
    let h = lex.base_spec();
    let u = lex.u();
    Check::sampled("(iii) overflowing sums are undefined", cfg, |s| {
        let mut v = lex.sample_index(s)?;
        if v == h.zero() {
            v = u.clone();
        }
        let lo = h.sub(u, &v)?;
        let mut t = s.between(h, &lo, u)?;
        if h.add(&v, &t)? == *u {
            t = u.clone();
        }
        let x = lex.sample_in_slice(s, &v)?;
        let y = lex.sample_in_slice(s, &t)?;
        let (cv, ct) = (w.classify(&x)?, w.classify(&y)?);
        if !h.lt(u, &h.add(&cv, &ct)?)? {
            return Ok(None);
        }
        Ok(x.partial_add(&y)?.map(|z| format!("{x} ∈ M_{cv}, {y} ∈ M_{ct}: {x} + {y} = {z}")))
    })
}

/// (iv): `x ∨ y ∈ M_{v∨t}` and `x ∧ y ∈ M_{v∧t}`.
fn clause_lattice(w: &PerfectWitness, cfg: &Config) -> Result<Check> {
    let h = w.lex().base_spec();
    Check::sampled("(iv) join and meet follow the indices", cfg, |s| {
        let (x, y) = (slice_elem(w, s)?, slice_elem(w, s)?);
        let (v, t) = (w.classify(&x)?, w.classify(&y)?);
        let (j, m) = (w.classify(&x.join(&y)?)?, w.classify(&x.meet(&y)?)?);
        let (wj, wm) = (h.join(&v, &t)?, h.meet(&v, &t)?);
        Ok((j != wj || m != wm).then(|| format!("{x} ∈ M_{v}, {y} ∈ M_{t}: ∨ in M_{j}, ∧ in M_{m}")))
    })
}

fn zero_slice_elem(w: &PerfectWitness, s: &mut Sampler) -> Result<PmvElem> {
    let zero = w.lex().base_spec().zero();
    w.lex().sample_in_slice(s, &zero)
}

/// The full list of slice theorems: decomposition clauses, a vanishing
/// state, `M_0` as a normal prime ideal closed under `+`, the quotient by
/// `M_0`, and uniqueness against the mirrored indexers.
pub fn theorem_suite(w: &PerfectWitness, cfg: &Config) -> Result<Report> {
    let mut r = check_decomposition(w, cfg)?;
    r.title = format!("slice theorems for {}", w.lex());
    let lex = w.lex();
    let h = lex.base_spec();
    let zero = h.zero();
    let alg = lex.algebra();
    let in_zero = |x: &PmvElem| -> Result<bool> { Ok(w.classify(x)? == zero) };

    if lex.is_strong() {
        let state = state_on_lex(lex)?;
        r.push(Check::sampled("(v) a state vanishes on M_0", cfg, |s| {
            let x = slice_elem(w, s)?;
            if !in_zero(&x)? {
                return Ok(None);
            }
            let v = state.eval(&x)?;
            Ok((!v.is_zero()).then(|| format!("s({x}) = {v} on M_0")))
        })?);
    }
    r.push(Check::sampled("(vi) M_0 is downward closed", cfg, |s| {
        let x = zero_slice_elem(w, s)?;
        if !in_zero(&x)? {
            return Ok(None);
        }
        let y = alg.elem(s.between(alg.spec(), &alg.spec().zero(), x.value())?)?;
        Ok((!in_zero(&y)?).then(|| format!("{y} ≤ {x} ∈ M_0 but {y} ∉ M_0")))
    })?);
    r.push(Check::sampled("(vi) M_0 is closed under oplus and sums", cfg, |s| {
        let (x, y) = (zero_slice_elem(w, s)?, zero_slice_elem(w, s)?);
        if !(in_zero(&x)? && in_zero(&y)?) {
            return Ok(None);
        }
        let o = x.oplus(&y)?;
        if !in_zero(&o)? {
            return Ok(Some(format!("{x} ⊕ {y} = {o} ∉ M_0")));
        }
        Ok(match x.partial_add(&y)? {
            None => Some(format!("{x} + {y} undefined inside M_0")),
            Some(z) => (!in_zero(&z)?).then(|| format!("{x} + {y} = {z} ∉ M_0")),
        })
    })?);
    r.push(Check::sampled("(vi) M_0 is normal", cfg, |s| {
        let x = slice_elem(w, s)?;
        let i = zero_slice_elem(w, s)?;
        if !in_zero(&i)? {
            return Ok(None);
        }
        let spec = alg.spec();
        // x ⊕ i = j ⊕ x and i ⊕ x = x ⊕ j'
        let xi = x.oplus(&i)?;
        let j = alg.elem(spec.sub(xi.value(), x.value())?)?;
        if !in_zero(&j)? || j.oplus(&x)? != xi {
            return Ok(Some(format!("x⊕I ⊄ I⊕x at x = {x}, i = {i}")));
        }
        let ix = i.oplus(&x)?;
        let j2 = alg.elem(spec.sub_left(x.value(), ix.value())?)?;
        Ok((!in_zero(&j2)? || x.oplus(&j2)? != ix).then(|| format!("I⊕x ⊄ x⊕I at x = {x}, i = {i}")))
    })?);
    r.push(Check::sampled("(vii) quotient by M_0 is the base interval", cfg, |s| {
        let x = slice_elem(w, s)?;
        let y = if s.coin(0.5) {
            let t = w.classify(&x)?;
            lex.sample_in_slice(s, &t)?
        } else {
            slice_elem(w, s)?
        };
        let d = x.odot(&y.minus())?.oplus(&y.odot(&x.minus())?)?;
        let same_class = in_zero(&d)?;
        let same_index = w.classify(&x)? == w.classify(&y)?;
        if same_class != same_index {
            return Ok(Some(format!("{x}, {y}: congruent mod M_0 = {same_class}, same slice = {same_index}")));
        }
        let t = lex.sample_index(s)?;
        let c = w.family(&t)?;
        let ct = w.classify(&c)?;
        Ok((ct != t).then(|| format!("index {t} has no preimage: c_t = {c} ∈ M_{ct}")))
    })?);
    r.absorb("(viii) ", check_uniqueness(w, cfg)?);
    r.push(Check::sampled("(ix) M_0 is prime", cfg, |s| {
        let (x, y) = (slice_elem(w, s)?, slice_elem(w, s)?);
        let m = x.meet(&y)?;
        Ok((in_zero(&m)? && !in_zero(&x)? && !in_zero(&y)?).then(|| format!("{x} ∧ {y} ∈ M_0, neither factor is")))
    })?);
    Ok(r)
}

/// Any other indexer that passes the decomposition checks agrees with this
/// one.  The candidates are the two mirrored forms `u − t(x⁻)` and `u − t(x~)`.
pub fn check_uniqueness(w: &PerfectWitness, cfg: &Config) -> Result<Report> {
    let mut r = Report::new("uniqueness of the decomposition");
    for ix in [Indexer::MinusMirror, Indexer::TildeMirror] {
        let other = w.with_indexer(ix);
        let name = format!("{ix:?} agrees");
        if !check_decomposition(&other, cfg)?.passed() {
            r.push(Check::pass(format!("{ix:?} is not a decomposition"), 1));
            continue;
        }
        r.push(Check::sampled(name, cfg, |s| {
            let x = slice_elem(w, s)?;
            let (a, b) = (w.classify(&x)?, other.classify(&x)?);
            Ok((a != b).then(|| format!("{x}: M_{a} vs M_{b}")))
        })?);
    }
    Ok(r)
}

/// `c_0 = 0`, `c_t ∈ M_t ∩ C(G)`, `c_v + c_t = c_{v+t}` for `v + t ≤ u`,
/// and for strong witnesses `c_u = 1`.
pub fn check_cyclic(w: &PerfectWitness, cfg: &Config) -> Result<Report> {
    let mut r = Report::new(format!("{} cyclic family of {}", w.kind(), w.lex()));
    let lex = w.lex();
    let h = lex.base_spec();
    let alg = lex.algebra();
    let spec = alg.spec();
    let member = |t: &GroupElem| -> Result<std::result::Result<PmvElem, String>> {
        let c = w.family_value(t)?;
        if alg.contains(&c)? {
            Ok(Ok(alg.elem(c)?))
        } else {
            Ok(Err(format!("c_{t} = {c} lies outside the algebra")))
        }
    };

    let c0 = w.family_value(&h.zero())?;
    r.push(Check::single("c_0 = 0", c0 == spec.zero(), || format!("c_0 = {c0}")));
    r.push(Check::sampled("(i) c_t is a central element of M_t", cfg, |s| {
        let t = lex.sample_index(s)?;
        let c = match member(&t)? {
            Ok(c) => c,
            Err(e) => return Ok(Some(e)),
        };
        let ct = w.classify(&c)?;
        if ct != t {
            return Ok(Some(format!("c_{t} = {c} ∈ M_{ct}")));
        }
        Ok((!spec.center_contains(c.value())?).then(|| format!("c_{t} = {c} is not central")))
    })?);
    r.push(Check::sampled("(ii) c_v + c_t = c_(v+t)", cfg, |s| {
        let (v, t) = index_pair(w, s)?;
        let (cv, ct) = match (member(&v)?, member(&t)?) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return Ok(Some(e)),
        };
        let want = w.family_value(&h.add(&v, &t)?)?;
        Ok(match cv.partial_add(&ct)? {
            None => Some(format!("c_{v} + c_{t} undefined")),
            Some(z) => (z.value() != &want).then(|| format!("c_{v} + c_{t} = {z} ≠ c_(v+t) = {want}")),
        })
    })?);
    if w.kind() == WitnessKind::Strong {
        let cu = w.family_value(lex.u())?;
        r.push(Check::single("(iii) c_u = 1", &cu == alg.unit(), || {
            format!("c_u = {cu} but 1 = {}", alg.unit())
        }));
    }
    r.fact("kind", w.kind());
    r.fact("b", w.offset_element()?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::super::tests::zlexz;
    use super::super::{canonical_witness, Mutation};
    use super::*;
    use crate::group::{GroupHom, GroupSpec, UnitalGroup};
    use crate::perfect::LexAlgebra;

    fn cfg() -> Config {
        Config::default().with_samples(300)
    }

    #[test]
    fn canonical_strong_passes_everything() {
        for lex in [zlexz(1, 0), zlexz(2, 0), zlexz(3, 0)] {
            let w = canonical_witness(&lex, WitnessKind::Strong).unwrap();
            let r = theorem_suite(&w, &cfg()).unwrap();
            assert!(r.passed(), "{r}");
            let r = check_cyclic(&w, &cfg()).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn weak_family_fails_strong_rules() {
        let w = canonical_witness(&zlexz(2, 1), WitnessKind::Weak).unwrap();
        let r = check_cyclic(&w, &cfg()).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.facts["b"], "(0,1)");
        let strong = check_cyclic(&w.with_kind(WitnessKind::Strong), &cfg()).unwrap();
        let fails: Vec<_> = strong.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(fails, ["(iii) c_u = 1"]);
        assert!(check_decomposition(&w, &cfg()).unwrap().passed());
    }

    #[test]
    fn shifted_indexer_breaks_negation_law() {
        let w = canonical_witness(&zlexz(1, 0), WitnessKind::Strong).unwrap().mutated(Mutation::ShiftUp);
        let r = check_decomposition(&w, &cfg()).unwrap();
        assert!(!r.check("(b) negations swap slices").unwrap().passed);
    }

    #[test]
    fn every_mutation_is_caught() {
        for lex in [zlexz(1, 0), zlexz(2, 0)] {
            let w = canonical_witness(&lex, WitnessKind::Strong).unwrap();
            for m in Mutation::ALL {
                let bad = w.mutated(m);
                let caught = !theorem_suite(&bad, &cfg()).unwrap().passed() || !check_cyclic(&bad, &cfg()).unwrap().passed();
                assert!(caught, "{} survived on {lex}", m.name());
            }
        }
    }

    #[test]
    fn diagonal_family() {
        let lex = zlexz(2, 2);
        let w = PerfectWitness::with_section(&lex, GroupHom::identity(GroupSpec::Integers), WitnessKind::Strong).unwrap();
        assert!(check_cyclic(&w, &cfg()).unwrap().passed());
        assert!(theorem_suite(&w, &cfg()).unwrap().passed());
    }

    #[test]
    fn dense_base_with_affine_fiber() {
        let base = UnitalGroup::new(GroupSpec::Rationals, GroupElem::rat(1, 1)).unwrap();
        let lex = LexAlgebra::strong(base, GroupSpec::AffinePos).unwrap();
        let w = canonical_witness(&lex, WitnessKind::Strong).unwrap();
        let r = theorem_suite(&w, &cfg()).unwrap();
        assert!(r.passed(), "{r}");
    }
}
