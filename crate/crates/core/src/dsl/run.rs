use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde_json::{json, Map, Value};

use super::ast::Input;
use super::eval::{realize_algebra, realize_member, Realized};
use super::parse::{parse_elem, parse_input, DslError};
use crate::config::Config;
use crate::error::Error;
use crate::finite::{self, table::load_table, FiniteMv, IdealMask};
use crate::perfect::{
    build_phi, canonical_lex_ideal, canonical_witness, check_cyclic, check_decomposition, check_state, state_on_lex,
    theorem_suite, verify_hom, LexAlgebra, PerfectWitness, WitnessKind,
};
use crate::pmv::{self, PmvAlgebra};
use crate::report::{Check, Report};

pub const COMMANDS: [&str; 11] = [
    "check-axioms",
    "classify",
    "witness",
    "lexify",
    "ideals",
    "radical",
    "states",
    "retractive",
    "lexid",
    "rdp2",
    "isomorphic",
];

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub cfg: Config,
    pub kind: Option<WitnessKind>,
    pub elem: Option<String>,
    /// Contents of the `--table` file.
    pub table: Option<String>,
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Violation,
    CapExceeded,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Violation => 1,
            Verdict::CapExceeded => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Violation => "violation",
            Verdict::CapExceeded => "cap-exceeded",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub verdict: Verdict,
    /// Canonical JSON with a trailing newline.
    pub json: String,
}

#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Dsl(DslError),
    Failed(Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Usage(m) => write!(f, "usage: {m}"),
            RunError::Dsl(e) => write!(f, "{e}"),
            RunError::Failed(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<DslError> for RunError {
    fn from(e: DslError) -> Self {
        RunError::Dsl(e)
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Failed(e)
    }
}

/// Accumulated checks, facts and command-specific output.
#[derive(Default)]
struct Out {
    checks: Vec<Check>,
    facts: BTreeMap<String, String>,
    result: Map<String, Value>,
}

impl Out {
    fn report(&mut self, prefix: &str, r: Report) {
        let mut tmp = Report::new("");
        tmp.absorb(prefix, r);
        self.checks.extend(tmp.checks);
        self.facts.extend(tmp.facts);
    }

    fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    fn put(&mut self, key: &str, v: Value) {
        self.result.insert(key.to_string(), v);
    }
}

fn check_json(c: &Check) -> Value {
    json!({
        "name": c.name,
        "passed": c.passed,
        "checked": c.checked.to_string(),
        "counterexample": c.counterexample,
    })
}

/// Pretty JSON with sorted keys and a final newline.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn run(command: &str, text: &str, opts: &RunOptions) -> Result<Outcome, RunError> {
    if !COMMANDS.contains(&command) {
        return Err(RunError::Usage(format!("unknown command `{command}`; expected one of {}", COMMANDS.join(", "))));
    }
    let input = parse_input(text)?;
    let table = match &opts.table {
        Some(t) => Some(load_table(t)?),
        None => None,
    };
    let algs: Vec<Realized> =
        input.algebras.iter().map(|a| realize_algebra(a, table.as_ref())).collect::<Result<_, _>>()?;
    let expected = if command == "isomorphic" { 2 } else { 1 };
    if algs.len() != expected {
        return Err(RunError::Usage(format!("`{command}` takes {expected} algebra(s), got {}", algs.len())));
    }
    let start = Instant::now();
    let mut out = Out::default();
    let verdict = match dispatch(command, &input, &algs, opts, &mut out) {
        Ok(()) if out.checks.iter().all(|c| c.passed) => Verdict::Pass,
        Ok(()) => Verdict::Violation,
        Err(RunError::Failed(Error::CapExceeded(m))) => {
            out.put("cap_exceeded", Value::String(m));
            Verdict::CapExceeded
        }
        Err(e) => return Err(e),
    };
    let cfg = &opts.cfg;
    let mut doc = json!({
        "command": command,
        "input": input.to_string(),
        "verdict": verdict.as_str(),
        "config": {
            "seed": cfg.seed.to_string(),
            "samples": cfg.samples.to_string(),
            "bound": cfg.bound.to_string(),
        },
        "checks": out.checks.iter().map(check_json).collect::<Vec<_>>(),
        "facts": out.facts,
        "result": Value::Object(out.result),
    });
    if opts.timing {
        doc["timing_ms"] = Value::String(start.elapsed().as_millis().to_string());
    }
    Ok(Outcome { verdict, json: canonical_json(&doc) })
}

fn interval<'a>(command: &str, a: &'a Realized) -> Result<&'a PmvAlgebra, RunError> {
    match a {
        Realized::Interval(alg) => Ok(alg),
        Realized::Finite(_) => Err(RunError::Usage(format!("`{command}` needs a gamma(...) algebra"))),
    }
}

fn finite_of(a: &Realized, opts: &RunOptions) -> Result<FiniteMv, RunError> {
    let f = a.as_finite().ok_or_else(|| RunError::Usage("this command needs a finite algebra".into()))?;
    if f.size() > opts.cfg.caps.finite_size {
        return Err(Error::CapExceeded(format!("{} elements exceed the cap {}", f.size(), opts.cfg.caps.finite_size)).into());
    }
    Ok(f)
}

/// The canonical witness of the requested kind; without `--kind` it is
/// strong exactly when the offset vanishes.
fn witness(alg: &PmvAlgebra, opts: &RunOptions) -> Result<PerfectWitness, RunError> {
    let lex = LexAlgebra::from_algebra(alg)?;
    let natural = if lex.is_strong() { WitnessKind::Strong } else { WitnessKind::Weak };
    let w = canonical_witness(&lex, natural)?;
    Ok(match opts.kind {
        Some(k) if k != natural => w.with_kind(k),
        _ => w,
    })
}

fn witness_checks(w: &PerfectWitness, cfg: &Config, out: &mut Out) -> Result<(), RunError> {
    match w.kind() {
        WitnessKind::Strong => out.report("", theorem_suite(w, cfg)?),
        WitnessKind::Weak => out.report("", check_decomposition(w, cfg)?),
    }
    out.report("cyclic ", check_cyclic(w, cfg)?);
    Ok(())
}

fn mask_json(a: &FiniteMv, m: IdealMask) -> Value {
    Value::String(m.describe(a))
}

fn dispatch(command: &str, input: &Input, algs: &[Realized], opts: &RunOptions, out: &mut Out) -> Result<(), RunError> {
    let cfg = &opts.cfg;
    let a = &algs[0];
    match command {
        "check-axioms" => match a {
            Realized::Interval(alg) => out.report("", pmv::check_axioms(alg, cfg)?),
            Realized::Finite(f) => out.report("", finite::check_axioms(f.table())?),
        },
        "classify" => {
            let alg = interval(command, a)?;
            let w = witness(alg, opts)?;
            out.report("", check_decomposition(&w, cfg)?);
            if let Some(e) = &opts.elem {
                let x = realize_member(alg, &parse_elem(e)?)?;
                out.put("element", Value::String(x.to_string()));
                out.put("index", Value::String(w.classify(&x)?.to_string()));
            }
        }
        "witness" => {
            let w = witness(interval(command, a)?, opts)?;
            out.put("kind", Value::String(w.kind().to_string()));
            witness_checks(&w, cfg, out)?;
        }
        "lexify" => {
            let w = witness(interval(command, a)?, opts)?;
            out.put("kind", Value::String(w.kind().to_string()));
            out.put("b", Value::String(w.offset_element()?.to_string()));
            match build_phi(&w, cfg) {
                Ok(phi) => {
                    out.put("target", Value::String(phi.target().to_string()));
                    out.report("phi ", verify_hom(&phi, cfg)?);
                }
                Err(Error::Precondition(m)) => {
                    witness_checks(&w, cfg, out)?;
                    out.check(Check::fail("phi is defined", 1, m));
                }
                Err(e) => return Err(e.into()),
            }
        }
        "ideals" => {
            let f = finite_of(a, opts)?;
            let ideals = finite::enumerate_ideals(&f);
            let list: Vec<Value> = ideals
                .iter()
                .map(|i| {
                    json!({
                        "elements": mask_json(&f, i.mask),
                        "proper": i.proper,
                        "normal": i.normal,
                        "maximal": i.maximal,
                        "prime": i.prime,
                        "commutative": i.commutative,
                        "strict": i.strict,
                    })
                })
                .collect();
            out.put("ideals", Value::Array(list));
            if f.size() <= cfg.caps.subset_enumeration {
                let brute = finite::ideals_by_subsets(&f, &cfg.caps)?;
                let gen: Vec<IdealMask> = ideals.iter().map(|i| i.mask).collect();
                out.check(Check::single("generated ideals match subset enumeration", brute == gen, || {
                    format!("{} generated, {} by subsets", gen.len(), brute.len())
                }));
            }
        }
        "radical" => {
            let f = finite_of(a, opts)?;
            let r = finite::radical_suite(&f);
            out.put("rad", mask_json(&f, r.rad));
            out.put("rad_n", mask_json(&f, r.rad_n));
            out.put("infinit", mask_json(&f, r.infinit));
            out.check(Check::single("Rad ⊆ Infinit ⊆ Rad_n", r.rad.is_subset(r.infinit) && r.infinit.is_subset(r.rad_n), || {
                "inclusion fails".into()
            }));
        }
        "states" => match a {
            Realized::Interval(alg) => {
                let lex = LexAlgebra::from_algebra(alg)?;
                out.report("", check_state(&lex, cfg)?);
                if let Some(e) = &opts.elem {
                    let x = realize_member(alg, &parse_elem(e)?)?;
                    out.put("element", Value::String(x.to_string()));
                    out.put("value", Value::String(state_on_lex(&lex)?.eval(&x)?.to_string()));
                }
            }
            Realized::Finite(_) => {
                let f = finite_of(a, opts)?;
                let states = finite::extremal_states(&f)?;
                let list: Vec<Value> = states
                    .iter()
                    .map(|s| {
                        let m: Map<String, Value> =
                            f.elements().map(|x| (f.label(x).to_string(), Value::String(s.value(x).to_string()))).collect();
                        Value::Object(m)
                    })
                    .collect();
                out.check(Check::exhaustive("each is a state", states.iter().enumerate(), |(k, s)| {
                    Ok((!finite::is_state(&f, s)).then(|| format!("state {k}")))
                })?);
                out.put("local", Value::Bool(finite::is_local(&f)));
                out.put("states", Value::Array(list));
            }
        },
        "retractive" => {
            let f = finite_of(a, opts)?;
            let mut list = Vec::new();
            let mut rows = Vec::new();
            for i in finite::enumerate_ideals(&f).into_iter().filter(|i| i.proper && i.normal) {
                let section = finite::is_retractive(&f, i.mask)?;
                let complement = finite::has_complement(&f, i.mask, &cfg.caps)?;
                rows.push((i.mask, section.is_some(), complement.is_some()));
                list.push(json!({
                    "ideal": mask_json(&f, i.mask),
                    "section": section.map(|s| s.iter().map(|&x| f.label(x).to_string()).collect::<Vec<_>>()),
                    "complement": complement.map(|c| c.describe(&f)),
                }));
            }
            out.check(Check::exhaustive("retractive iff complemented", rows, |(m, s, c)| {
                Ok((s != c).then(|| format!("{}: section {s}, complement {c}", m.describe(&f))))
            })?);
            out.put("ideals", Value::Array(list));
        }
        "lexid" => match a {
            Realized::Interval(alg) => {
                let lex = LexAlgebra::from_algebra(alg)?;
                let (_, r) = canonical_lex_ideal(&lex, cfg)?;
                out.report("", r);
            }
            Realized::Finite(_) => {
                let f = finite_of(a, opts)?;
                let mut list = Vec::new();
                let mut found = Vec::new();
                for i in finite::enumerate_ideals(&f) {
                    let v = finite::is_lexicographic_ideal(&f, i.mask)?;
                    let mut row = Map::new();
                    row.insert("ideal".into(), mask_json(&f, i.mask));
                    for (k, b) in v.clauses() {
                        row.insert(k.into(), Value::Bool(b));
                    }
                    row.insert("lexicographic".into(), Value::Bool(v.holds()));
                    if v.holds() {
                        found.push(i.mask.describe(&f));
                    }
                    list.push(Value::Object(row));
                }
                out.check(Check::single("no lexicographic ideal in a finite algebra", found.is_empty(), || found.join(", ")));
                out.put("ideals", Value::Array(list));
            }
        },
        "rdp2" => {
            let f = finite_of(a, opts)?;
            let fail = finite::rdp2_failure(&f, &cfg.caps)?;
            out.check(Check::single("RDP₂", fail.is_none(), || fail.clone().unwrap_or_default()));
        }
        "isomorphic" => {
            let (f, g) = (finite_of(a, opts)?, finite_of(&algs[1], opts)?);
            let iso = finite::brute_isomorphic(&f, &g);
            out.check(Check::single(format!("{} ≅ {}", input.algebras[0], input.algebras[1]), iso.is_some(), || {
                "no structure-preserving bijection".into()
            }));
            if let Some(map) = iso {
                let m: Map<String, Value> =
                    f.elements().map(|x| (f.label(x).to_string(), Value::String(g.label(map[x]).to_string()))).collect();
                out.put("bijection", Value::Object(m));
            }
        }
        _ => unreachable!("command list checked"),
    }
    Ok(())
}
