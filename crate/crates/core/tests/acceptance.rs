use std::process::ExitCode;
use std::time::{Duration, Instant};

use lexmv::dsl::{parse_algebra, parse_input, realize_algebra, run, Realized, RunOptions};
use lexmv::finite::{finite_theorem_suite, SuiteSizes};
use lexmv::group::{GroupElem, GroupHom, GroupSpec, UnitalGroup};
use lexmv::perfect::nested::{head_z, head_zz, nested_classification};
use lexmv::perfect::{
    build_phi, canonical_witness, check_cyclic, check_decomposition, check_state, functor_laws, hom_catalog,
    midpoint_certificate, theorem_suite, theta, verify_hom, LexAlgebra, Mutation, PerfectWitness, WitnessKind,
};
use lexmv::pmv::{check_axioms, check_laws, pea_equivalence_exhaustive, PmvAlgebra};
use lexmv::sample::Sampler;
use lexmv::{Caps, Config, Report};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240601;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn cfg(samples: usize) -> Config {
    Config::default().with_seed(SEED).with_samples(samples)
}

fn interval(text: &str) -> PmvAlgebra {
    match realize_algebra(&parse_algebra(text).unwrap(), None).unwrap() {
        Realized::Interval(a) => a,
        Realized::Finite(_) => panic!("{text} is finite"),
    }
}

fn first_failure(r: &Report) -> String {
    r.failures().next().map(|c| format!("{}: {}", c.name, c.counterexample.clone().unwrap_or_default())).unwrap_or_default()
}

const AXIOM_CATALOG: [&str; 11] = [
    "gamma(Z,1)",
    "gamma(Z,2)",
    "gamma(Z,3)",
    "gamma(Z,4)",
    "gamma(Z,5)",
    "gamma(Z,6)",
    "gamma(lex(Z,Z),(1,0))",
    "gamma(lex(Z,Z),(2,1))",
    "gamma(lex(Z,Z,Z),(1,0,0))",
    "gamma(lex(Q,Z),(1,0))",
    "gamma(lex(Z,Aff),(1,aff(2,0)))",
];

fn axioms() -> Outcome {
    let start = Instant::now();
    for text in AXIOM_CATALOG {
        let r = check_axioms(&interval(text), &cfg(1000)).unwrap();
        let axioms = r.checks.iter().filter(|c| c.name.starts_with('A')).count();
        if !r.passed() || axioms != 8 {
            return outcome(false, format!("{text}: {} ({axioms} axiom checks)", first_failure(&r)));
        }
    }
    let t = start.elapsed();
    outcome(t < Duration::from_secs(5), format!("11 algebras × 1000 samples, A1–A8 clean, {t:.2?} (limit 5s)"))
}

fn pea() -> Outcome {
    for n in 1..=6 {
        let c = pea_equivalence_exhaustive(n).unwrap();
        if !c.passed {
            return outcome(false, format!("gamma(Z,{n}): {:?}", c.counterexample));
        }
    }
    for text in &AXIOM_CATALOG[6..] {
        let r = check_laws(&interval(text), &cfg(1000)).unwrap();
        let c = r.check("oplus via partial structure").expect("check present");
        if !c.passed || c.checked != 1000 {
            return outcome(false, format!("{text}: {:?}", c.counterexample));
        }
    }
    outcome(true, "exhaustive on gamma(Z,1..6), 1000 samples on each of 5 lex algebras")
}

fn strong_lexes() -> Vec<LexAlgebra> {
    let z = |n| UnitalGroup::integers(n).unwrap();
    let q1 = UnitalGroup::new(GroupSpec::Rationals, GroupElem::rat(1, 1)).unwrap();
    let zz = GroupSpec::lex(GroupSpec::Integers, GroupSpec::Integers).unwrap();
    vec![
        LexAlgebra::strong(z(1), GroupSpec::Integers).unwrap(),
        LexAlgebra::strong(z(2), GroupSpec::Integers).unwrap(),
        LexAlgebra::strong(z(3), GroupSpec::Rationals).unwrap(),
        LexAlgebra::strong(z(1), GroupSpec::AffinePos).unwrap(),
        LexAlgebra::strong(z(1), zz).unwrap(),
        LexAlgebra::strong(q1.clone(), GroupSpec::Integers).unwrap(),
        LexAlgebra::strong(q1, GroupSpec::AffinePos).unwrap(),
    ]
}

fn theorem_clauses() -> Outcome {
    let c = cfg(300);
    let (mut killed, mut total) = (0, 0);
    for lex in strong_lexes() {
        let w = canonical_witness(&lex, WitnessKind::Strong).unwrap();
        let r = theorem_suite(&w, &c).unwrap();
        if !r.passed() {
            return outcome(false, format!("{lex}: {}", first_failure(&r)));
        }
        for m in Mutation::ALL {
            let bad = w.mutated(m);
            total += 1;
            if !theorem_suite(&bad, &c).unwrap().passed() || !check_cyclic(&bad, &c).unwrap().passed() {
                killed += 1;
            }
        }
    }
    outcome(killed == total, format!("7 canonical witnesses pass; mutation kill rate {killed}/{total}"))
}

fn nested() -> Outcome {
    let r = nested_classification(25).unwrap();
    if !r.passed() {
        return outcome(false, first_failure(&r));
    }
    let c = cfg(500);
    for (name, lex) in [("M1", head_z().unwrap()), ("M2", head_zz().unwrap())] {
        let s = check_state(&lex, &c).unwrap();
        if !s.passed() || s.check("two-valued").is_none() {
            return outcome(false, format!("{name} state: {}", first_failure(&s)));
        }
    }
    outcome(true, format!("zero slices match on [-25,25]^3 ({} checks); both states two-valued", r.checks.len()))
}

fn weak_examples() -> Outcome {
    let c = cfg(1000);
    let lex = LexAlgebra::new(UnitalGroup::integers(2).unwrap(), GroupSpec::Integers, GroupElem::int(1)).unwrap();
    let weak = canonical_witness(&lex, WitnessKind::Weak).unwrap();
    let ok_weak = check_decomposition(&weak, &c).unwrap().passed() && check_cyclic(&weak, &c).unwrap().passed();
    let strong = check_cyclic(&weak.with_kind(WitnessKind::Strong), &c).unwrap();
    let failed: Vec<&str> = strong.failures().map(|f| f.name.as_str()).collect();
    let a = ok_weak && failed == ["(iii) c_u = 1"];
    let b = !midpoint_certificate(&lex).unwrap().exists();
    let th = verify_hom(&theta().unwrap(), &c).unwrap();
    let sampled = th.checks.iter().filter(|k| k.checked == 1000).count();
    let ok = a && b && th.passed() && sampled > 0;
    outcome(ok, format!("(a) weak ok, strong fails {failed:?}; (b) no midpoint: {b}; (c) theta clean on 1000 samples: {}", th.passed()))
}

fn representation() -> Outcome {
    let c = cfg(1000);
    for lex in strong_lexes() {
        let w = canonical_witness(&lex, WitnessKind::Strong).unwrap();
        let phi = build_phi(&w, &c).unwrap();
        let r = verify_hom(&phi, &c).unwrap();
        if !r.passed() {
            return outcome(false, format!("{lex}: {}", first_failure(&r)));
        }
        let mut s = Sampler::new(SEED, 61, c.bound);
        for _ in 0..200 {
            let x = lex.sample(&mut s).unwrap();
            if phi.apply(&x).unwrap().value() != x.value() {
                return outcome(false, format!("{lex}: phi moves {x}"));
            }
        }
    }
    let lex = LexAlgebra::new(UnitalGroup::integers(2).unwrap(), GroupSpec::Integers, GroupElem::int(2)).unwrap();
    let w = PerfectWitness::with_section(&lex, GroupHom::identity(GroupSpec::Integers), WitnessKind::Strong).unwrap();
    let phi = build_phi(&w, &c).unwrap();
    let th = theta().unwrap();
    if !verify_hom(&phi, &c).unwrap().passed() {
        return outcome(false, "diagonal phi is not a homomorphism");
    }
    let mut s = Sampler::new(SEED, 62, c.bound);
    for _ in 0..1000 {
        let x = lex.sample(&mut s).unwrap();
        let back = phi.apply(&x).unwrap();
        let y = th.source().elem(back.value().clone()).unwrap();
        if th.apply(&y).unwrap().value() != x.value() {
            return outcome(false, format!("theta(phi({x})) = {}", th.apply(&y).unwrap()));
        }
    }
    outcome(true, "7 canonical witnesses: hom and identity; diagonal witness gives theta inverse on 1000 samples")
}

fn finite() -> Outcome {
    let start = Instant::now();
    let r = finite_theorem_suite(&Caps::default(), &SuiteSizes::default()).unwrap();
    let t = start.elapsed();
    if !r.passed() {
        return outcome(false, first_failure(&r));
    }
    outcome(t < Duration::from_secs(30), format!("{} exhaustive checks clean in {t:.2?} (limit 30s)", r.checks.len()))
}

fn functor() -> Outcome {
    let c = cfg(500);
    let zz = GroupSpec::lex(GroupSpec::Integers, GroupSpec::Integers).unwrap();
    let bases = [UnitalGroup::integers(1).unwrap(), UnitalGroup::integers(3).unwrap()];
    let mut homs_total = 0;
    for base in &bases {
        for fiber in [GroupSpec::Integers, GroupSpec::Rationals, GroupSpec::AffinePos, zz.clone()] {
            let homs = hom_catalog(&fiber).unwrap();
            homs_total += homs.len();
            let r = functor_laws(base, &homs, &c).unwrap();
            if !r.passed() {
                return outcome(false, format!("base {base}, fiber {fiber}: {}", first_failure(&r)));
            }
        }
    }
    outcome(true, format!("{homs_total} lifted homs over 2 bases × 4 fibers, 500 samples each"))
}

fn suite_runs(workers: usize) -> Vec<String> {
    let base = Config::default().with_seed(SEED).with_samples(300).with_workers(workers);
    let mk = |kind: Option<WitnessKind>, elem: Option<&str>| RunOptions {
        cfg: base.clone(),
        kind,
        elem: elem.map(str::to_string),
        ..Default::default()
    };
    let cases: Vec<(&str, &str, RunOptions)> = vec![
        ("check-axioms", "gamma(lex(Z,Aff),(1,aff(2,0)))", mk(None, None)),
        ("check-axioms", "prod(chain(2),chain(3))", mk(None, None)),
        ("classify", "gamma(lex(Z,Z,Z),(1,0,0))", mk(None, Some("(0,(1,-4))"))),
        ("witness", "gamma(lex(Z,Z),(2,1))", mk(Some(WitnessKind::Weak), None)),
        ("witness", "gamma(lex(Z,Z),(2,1))", mk(Some(WitnessKind::Strong), None)),
        ("lexify", "gamma(lex(Z,Z),(2,1))", mk(Some(WitnessKind::Weak), None)),
        ("lexify", "gamma(lex(Q,Aff),(1,aff(1,0)))", mk(None, None)),
        ("ideals", "prod(chain(1),chain(2),chain(1))", mk(None, None)),
        ("radical", "prod(chain(3),chain(1))", mk(None, None)),
        ("states", "prod(chain(2),chain(2))", mk(None, None)),
        ("states", "gamma(lex(Z,Z),(3,0))", mk(None, Some("(2,-7)"))),
        ("retractive", "prod(chain(1),chain(3))", mk(None, None)),
        ("lexid", "gamma(lex(Z,Z),(1,0))", mk(None, None)),
        ("lexid", "prod(chain(2),chain(2))", mk(None, None)),
        ("rdp2", "prod(chain(2),chain(2))", mk(None, None)),
        ("isomorphic", "prod(chain(1),chain(2)) ; prod(chain(2),chain(1))", mk(None, None)),
    ];
    cases.iter().map(|(cmd, text, o)| run(cmd, text, o).unwrap().json).collect()
}

/// A random expression text, with n-ary sugar and irregular whitespace.
fn random_group(r: &mut ChaCha8Rng, depth: u32) -> String {
    let atoms = ["Z", "Q", "O", "Aff"];
    if depth == 0 || r.gen_bool(0.4) {
        return atoms[r.gen_range(0..4)].into();
    }
    let n = r.gen_range(2..=3);
    let parts: Vec<String> = (0..n).map(|_| random_group(r, depth - 1)).collect();
    format!("lex( {} )", parts.join(" ,"))
}

fn random_rat(r: &mut ChaCha8Rng) -> String {
    let p = r.gen_range(-9i32..=9);
    if r.gen_bool(0.3) {
        format!("{p}/{}", r.gen_range(1..=6))
    } else {
        p.to_string()
    }
}

fn random_elem(r: &mut ChaCha8Rng, depth: u32) -> String {
    match r.gen_range(0..if depth == 0 { 2 } else { 3 }) {
        0 => random_rat(r),
        1 => format!("aff({},{})", random_rat(r), random_rat(r)),
        _ => {
            let n = r.gen_range(2..=3);
            let parts: Vec<String> = (0..n).map(|_| random_elem(r, depth - 1)).collect();
            format!("({})", parts.join(", "))
        }
    }
}

fn random_algebra(r: &mut ChaCha8Rng, depth: u32) -> String {
    match r.gen_range(0..if depth == 0 { 3 } else { 4 }) {
        0 => format!("gamma({},\n {})", random_group(r, 2), random_elem(r, 2)),
        1 => format!("chain({})", r.gen_range(0..9)),
        2 => "table".into(),
        _ => {
            let n = r.gen_range(2..=3);
            let parts: Vec<String> = (0..n).map(|_| random_algebra(r, depth - 1)).collect();
            format!("prod({})", parts.join(","))
        }
    }
}

fn determinism() -> Outcome {
    let (a, b, c) = (suite_runs(1), suite_runs(1), suite_runs(4));
    if a != b {
        return outcome(false, "two runs differ");
    }
    if a != c {
        return outcome(false, "runs with 1 and 4 workers differ");
    }
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    for k in 0..200 {
        let text = if r.gen_bool(0.2) {
            format!("{} ; {}", random_algebra(&mut r, 2), random_algebra(&mut r, 2))
        } else {
            random_algebra(&mut r, 2)
        };
        let first = parse_input(&text).unwrap();
        let printed = first.to_string();
        let second = parse_input(&printed).unwrap();
        if first != second || second.to_string() != printed {
            return outcome(false, format!("string {k}: {text:?} reprints as {printed:?}"));
        }
    }
    let passes = a.iter().filter(|j| j.contains("\"verdict\": \"pass\"")).count();
    outcome(true, format!("{} reports byte-identical across runs and worker counts ({passes} pass); 200 round trips", a.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("axiom suite", axioms),
        ("partial-sum route to oplus", pea),
        ("decomposition theorem and mutation kills", theorem_clauses),
        ("nested lexicographic classification", nested),
        ("weak witness, midpoint, shift isomorphism", weak_examples),
        ("lexicographic representation", representation),
        ("finite oracle theorems", finite),
        ("functor laws", functor),
        ("determinism and round trip", determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let verdict = if o.ok { "PASS" } else { "FAIL" };
        println!("criterion {} {verdict} {name}: {} [{:.2?}]", k + 1, o.detail, start.elapsed());
        failed += usize::from(!o.ok);
    }
    println!("{} of 9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
