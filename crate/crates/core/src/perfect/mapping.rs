use std::fmt;
use std::sync::Arc;

use super::{check_cyclic, check_decomposition, LexAlgebra, PerfectWitness};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::group::{GroupElem, GroupSpec, UnitalGroup};
use crate::pmv::{PmvAlgebra, PmvElem};
use crate::report::{Check, Report};

pub type MapFn = Arc<dyn Fn(&PmvElem) -> Result<GroupElem> + Send + Sync>;

/// What [`verify_hom`] should establish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Homomorphism,
    /// Also injective, and surjective through the preimage recipe.
    Isomorphism,
}

/// A map between interval algebras, given by its action on group values.
/// Images are checked against the target when applied.
#[derive(Clone)]
pub struct Mapping {
    pub name: String,
    source: PmvAlgebra,
    target: PmvAlgebra,
    forward: MapFn,
    preimage: Option<MapFn>,
    kind: MapKind,
}

impl fmt::Debug for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mapping({}: {} → {})", self.name, self.source, self.target)
    }
}

impl Mapping {
    pub fn new(
        name: impl Into<String>,
        source: PmvAlgebra,
        target: PmvAlgebra,
        kind: MapKind,
        forward: MapFn,
        preimage: Option<MapFn>,
    ) -> Self {
        Mapping { name: name.into(), source, target, forward, preimage, kind }
    }

    pub fn source(&self) -> &PmvAlgebra {
        &self.source
    }

    pub fn target(&self) -> &PmvAlgebra {
        &self.target
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn has_preimage(&self) -> bool {
        self.preimage.is_some()
    }

    /// The raw image, which may fall outside the target.
    pub fn image_value(&self, x: &PmvElem) -> Result<GroupElem> {
        if x.algebra() != &self.source {
            return Err(Error::CrossAlgebra {
                left: x.algebra().to_string(),
                right: self.source.to_string(),
            });
        }
        (self.forward)(x)
    }

    pub fn apply(&self, x: &PmvElem) -> Result<PmvElem> {
        self.target.elem(self.image_value(x)?)
    }

    pub fn preimage(&self, z: &PmvElem) -> Result<Option<PmvElem>> {
        match &self.preimage {
            None => Ok(None),
            Some(p) => Ok(Some(self.source.elem(p(z)?)?)),
        }
    }

    /// Image as a target element, or a description of why there is none.
    fn image_or_reason(&self, x: &PmvElem) -> Result<std::result::Result<PmvElem, String>> {
        let g = match self.image_value(x) {
            Ok(g) => g,
            Err(Error::Shape { .. }) => return Ok(Err(format!("{} cannot map {x}", self.name))),
            Err(Error::OutsideInterval { elem, .. }) => {
                return Ok(Err(format!("{} leaves its algebras at {x}: {elem}", self.name)))
            }
            Err(e) => return Err(e),
        };
        if self.target.spec().contains(&g) && self.target.contains(&g)? {
            Ok(Ok(self.target.elem(g)?))
        } else {
            Ok(Err(format!("image of {x} is {g}, outside {}", self.target)))
        }
    }
}

/// `m2 ∘ m1`.
pub fn compose(m2: &Mapping, m1: &Mapping) -> Result<Mapping> {
    if m1.target != m2.source {
        return Err(Error::Precondition(format!(
            "cannot compose {} after {}: {} ≠ {}",
            m2.name, m1.name, m1.target, m2.source
        )));
    }
    let (f1, f2) = (m1.clone(), m2.clone());
    let forward: MapFn = Arc::new(move |x| f2.image_value(&f1.apply(x)?));
    let kind = if m1.kind == MapKind::Isomorphism && m2.kind == MapKind::Isomorphism {
        MapKind::Isomorphism
    } else {
        MapKind::Homomorphism
    };
    let preimage: Option<MapFn> = match (&m1.preimage, &m2.preimage) {
        (Some(_), Some(_)) => {
            let (g1, g2) = (m1.clone(), m2.clone());
            Some(Arc::new(move |z| {
                let mid = g2.preimage(z)?.expect("preimage present");
                Ok(g1.preimage(&mid)?.expect("preimage present").into_value())
            }))
        }
        _ => None,
    };
    Ok(Mapping::new(
        format!("{}∘{}", m2.name, m1.name),
        m1.source.clone(),
        m2.target.clone(),
        kind,
        forward,
        preimage,
    ))
}

/// Sampled preservation of `0`, `1`, `⊕`, `⊙`, both negations, `∨`, `∧`;
/// for isomorphisms also injectivity and surjectivity through the
/// preimage recipe.
pub fn verify_hom(m: &Mapping, cfg: &Config) -> Result<Report> {
    let mut r = Report::new(format!("{}: {} → {}", m.name, m.source, m.target));
    let src = &m.source;

    for (name, x, want) in [("zero", src.zero(), m.target.zero()), ("unit", src.one(), m.target.one())] {
        let check = match m.image_or_reason(&x)? {
            Ok(img) => Check::single(name, img == want, || format!("{x} ↦ {img}, expected {want}")),
            Err(e) => Check::fail(name, 1, e),
        };
        r.push(check);
    }

    type Bin = fn(&PmvElem, &PmvElem) -> Result<PmvElem>;
    let binary: [(&str, Bin); 4] = [
        ("oplus", |a, b| a.oplus(b)),
        ("odot", |a, b| a.odot(b)),
        ("join", |a, b| a.join(b)),
        ("meet", |a, b| a.meet(b)),
    ];
    for (name, op) in binary {
        r.push(Check::sampled(name, cfg, |s| {
            let (x, y) = (src.sample(s)?, src.sample(s)?);
            let lhs = match m.image_or_reason(&op(&x, &y)?)? {
                Ok(v) => v,
                Err(e) => return Ok(Some(e)),
            };
            let (fx, fy) = match (m.image_or_reason(&x)?, m.image_or_reason(&y)?) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return Ok(Some(e)),
            };
            let rhs = op(&fx, &fy)?;
            Ok((lhs != rhs).then(|| format!("f({x} {name} {y}) = {lhs} but f(x) {name} f(y) = {rhs}")))
        })?);
    }
    type Un = fn(&PmvElem) -> PmvElem;
    let unary: [(&str, Un); 2] = [("minus", |a| a.minus()), ("tilde", |a| a.tilde())];
    for (name, op) in unary {
        r.push(Check::sampled(name, cfg, |s| {
            let x = src.sample(s)?;
            let (lhs, fx) = match (m.image_or_reason(&op(&x))?, m.image_or_reason(&x)?) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return Ok(Some(e)),
            };
            let rhs = op(&fx);
            Ok((lhs != rhs).then(|| format!("f({name} {x}) = {lhs} but {name} f(x) = {rhs}")))
        })?);
    }
    if m.kind == MapKind::Isomorphism {
        r.push(Check::sampled("injective", cfg, |s| {
            let x = src.sample(s)?;
            let y = if s.coin(0.5) { x.oplus(&src.sample(s)?)? } else { src.sample(s)? };
            if x == y {
                return Ok(None);
            }
            Ok(match (m.image_or_reason(&x)?, m.image_or_reason(&y)?) {
                (Ok(a), Ok(b)) => (a == b).then(|| format!("{x} and {y} both map to {a}")),
                (Err(e), _) | (_, Err(e)) => Some(e),
            })
        })?);
    }
    if m.preimage.is_some() {
        r.push(Check::sampled("surjective", cfg, |s| {
            let z = m.target.sample(s)?;
            let p = match m.preimage(&z) {
                Ok(p) => p.expect("preimage present"),
                Err(Error::OutsideInterval { elem, .. }) => {
                    return Ok(Some(format!("preimage {elem} of {z} lies outside {}", m.source)))
                }
                Err(e) => return Err(e),
            };
            Ok(match m.image_or_reason(&p)? {
                Ok(img) => (img != z).then(|| format!("{p} ↦ {img}, expected {z}")),
                Err(e) => Some(e),
            })
        })?);
    } else if m.kind == MapKind::Isomorphism {
        r.push(Check::fail("surjective", 0, "no preimage recipe"));
    }
    Ok(r)
}

/// `φ(x) = (t, x − c_t)` into `Γ(H lex G, (u, b))` where `1 − c_u = (0, b)`.
/// Runs the decomposition and family checks first.
pub fn build_phi(w: &PerfectWitness, cfg: &Config) -> Result<Mapping> {
    for report in [check_decomposition(w, cfg)?, check_cyclic(w, cfg)?] {
        if let Some(c) = report.failures().next() {
            return Err(Error::Precondition(format!(
                "witness fails {}: {}",
                c.name,
                c.counterexample.clone().unwrap_or_default()
            )));
        }
    }
    let lex = w.lex();
    let offset = w.offset_element()?;
    let b = match &offset {
        GroupElem::Pair(h, b) if **h == lex.base_spec().zero() => (**b).clone(),
        _ => return Err(Error::Invariant(format!("1 − c_u = {offset} has a nonzero head"))),
    };
    let target = LexAlgebra::new(lex.base().clone(), lex.fiber().clone(), b)?;
    let spec = lex.algebra().spec().clone();

    let (wf, sf) = (w.clone(), spec.clone());
    let forward: MapFn = Arc::new(move |x| {
        let t = wf.classify(x)?;
        let d = sf.sub(x.value(), &wf.family_value(&t)?)?;
        match d {
            GroupElem::Pair(_, g) => Ok(GroupElem::pair(t, *g)),
            other => Err(Error::shape(&sf, &other)),
        }
    });
    let (wp, sp) = (w.clone(), spec);
    let preimage: MapFn = Arc::new(move |z| {
        let (t, g) = match z.value() {
            GroupElem::Pair(t, g) => ((**t).clone(), (**g).clone()),
            other => return Err(Error::shape(&sp, other)),
        };
        let h0 = wp.lex().base_spec().zero();
        sp.add(&GroupElem::pair(h0, g), &wp.family_value(&t)?)
    });
    Ok(Mapping::new(
        "phi",
        lex.algebra().clone(),
        target.algebra().clone(),
        MapKind::Isomorphism,
        forward,
        Some(preimage),
    ))
}

fn zz() -> GroupSpec {
    GroupSpec::lex(GroupSpec::Integers, GroupSpec::Integers).expect("Z is linear")
}

fn int_pair(x: &GroupElem) -> Result<(GroupElem, GroupElem)> {
    match x {
        GroupElem::Pair(k, n) => Ok(((**k).clone(), (**n).clone())),
        other => Err(Error::shape(&zz(), other)),
    }
}

/// `θ(k, n) = (k, n + k)` from `Γ(Z lex Z, (2, 0))` to `Γ(Z lex Z, (2, 2))`.
pub fn theta() -> Result<Mapping> {
    let spec = zz();
    let pair = |a, b| GroupElem::pair(GroupElem::int(a), GroupElem::int(b));
    let source = PmvAlgebra::gamma(spec.clone(), pair(2, 0))?;
    let target = PmvAlgebra::gamma(spec.clone(), pair(2, 2))?;
    let z = GroupSpec::Integers;
    let zf = z.clone();
    let forward: MapFn = Arc::new(move |x| {
        let (k, n) = int_pair(x.value())?;
        Ok(GroupElem::pair(k.clone(), zf.add(&n, &k)?))
    });
    let preimage: MapFn = Arc::new(move |x| {
        let (k, n) = int_pair(x.value())?;
        Ok(GroupElem::pair(k.clone(), z.sub(&n, &k)?))
    });
    Ok(Mapping::new("theta", source, target, MapKind::Isomorphism, forward, Some(preimage)))
}

/// The projection `(t, g) ↦ t` onto `Γ(H, u)`, with section `t ↦ (t, 0)`.
pub fn quotient_to_base(lex: &LexAlgebra) -> Result<Mapping> {
    if !lex.is_strong() {
        return Err(Error::Unsupported(format!("{lex} has a nonzero offset")));
    }
    let base: UnitalGroup = lex.base().clone();
    let target = PmvAlgebra::new(base);
    let fiber = lex.fiber().clone();
    let l1 = lex.clone();
    let forward: MapFn = Arc::new(move |x| Ok(l1.head(x).clone()));
    let preimage: MapFn = Arc::new(move |t| Ok(GroupElem::pair(t.value().clone(), fiber.zero())));
    Ok(Mapping::new(
        "quotient",
        lex.algebra().clone(),
        target,
        MapKind::Homomorphism,
        forward,
        Some(preimage),
    ))
}

#[cfg(test)]
mod tests {
    use super::super::tests::zlexz;
    use super::super::{canonical_witness, WitnessKind};
    use super::*;
    use crate::group::GroupHom;

    fn cfg() -> Config {
        Config::default().with_samples(300)
    }

    fn p(a: i64, b: i64) -> GroupElem {
        GroupElem::pair(GroupElem::int(a), GroupElem::int(b))
    }

    #[test]
    fn phi_is_identity_on_canonical_witness() {
        let lex = zlexz(1, 0);
        let w = canonical_witness(&lex, WitnessKind::Strong).unwrap();
        let phi = build_phi(&w, &cfg()).unwrap();
        let x = lex.pair(GroupElem::int(1), GroupElem::int(-5)).unwrap();
        assert_eq!(phi.apply(&x).unwrap().value(), &p(1, -5));
        assert!(verify_hom(&phi, &cfg()).unwrap().passed());
    }

    #[test]
    fn phi_inverts_theta_through_the_diagonal() {
        let lex = zlexz(2, 2);
        let w = PerfectWitness::with_section(&lex, GroupHom::identity(GroupSpec::Integers), WitnessKind::Strong).unwrap();
        let phi = build_phi(&w, &cfg()).unwrap();
        assert_eq!(phi.target().unit(), &p(2, 0));
        for n in -6..=6 {
            let x = lex.pair(GroupElem::int(1), GroupElem::int(n)).unwrap();
            assert_eq!(phi.apply(&x).unwrap().value(), &p(1, n - 1));
        }
        let r = verify_hom(&phi, &cfg()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn weak_phi_target() {
        let w = canonical_witness(&zlexz(2, 1), WitnessKind::Weak).unwrap();
        let phi = build_phi(&w, &cfg()).unwrap();
        assert_eq!(phi.target().unit(), &p(2, 1));
        assert!(verify_hom(&phi, &cfg()).unwrap().passed());
    }

    #[test]
    fn theta_is_an_isomorphism() {
        let t = theta().unwrap();
        let r = verify_hom(&t, &cfg()).unwrap();
        assert!(r.passed(), "{r}");
        let x = t.source().elem(p(1, 4)).unwrap();
        assert_eq!(t.apply(&x).unwrap().value(), &p(1, 5));
    }

    #[test]
    fn dropping_the_offset_breaks_the_unit() {
        let lex = zlexz(2, 2);
        let target = zlexz(2, 0);
        let l = lex.clone();
        let naive = Mapping::new(
            "naive",
            lex.algebra().clone(),
            target.algebra().clone(),
            MapKind::Isomorphism,
            Arc::new(move |x| Ok(GroupElem::pair(l.head(x).clone(), l.tail(x).clone()))),
            None,
        );
        let r = verify_hom(&naive, &cfg()).unwrap();
        assert!(!r.check("unit").unwrap().passed);
    }

    #[test]
    fn quotient_projection() {
        let lex = zlexz(1, 0);
        let q = quotient_to_base(&lex).unwrap();
        let x = lex.pair(GroupElem::int(1), GroupElem::int(-5)).unwrap();
        assert_eq!(q.apply(&x).unwrap().value(), &GroupElem::int(1));
        assert!(verify_hom(&q, &cfg()).unwrap().passed());
        assert!(quotient_to_base(&zlexz(2, 1)).is_err());
    }

    #[test]
    fn composition_of_maps() {
        let t = theta().unwrap();
        let lex = zlexz(2, 2);
        let w = PerfectWitness::with_section(&lex, GroupHom::identity(GroupSpec::Integers), WitnessKind::Strong).unwrap();
        let phi = build_phi(&w, &cfg()).unwrap();
        let round = compose(&phi, &t).unwrap();
        for k in 0..=2 {
            for n in -3..=3 {
                let Ok(x) = round.source().elem(p(k, n)) else { continue };
                assert_eq!(round.apply(&x).unwrap(), x);
            }
        }
    }
}
