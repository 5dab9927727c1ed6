use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use gentle::complex::Complex;
use gentle::cone::{cone, report, ConeSummand};
use gentle::hom::{standard_basis, BasisMap};
use gentle::oracle::{hom_dimension, is_isomorphic};
use gentle::quiver::parse_candidate;
use gentle::render::{map_rows, unfolded};
use gentle::verify::{check_cone, sweep, Summary};
use gentle::{corpus, Algebra, Error, Field, Object, Quiver, Rat, F32003};

const VERSION: &str = env!("CARGO_PKG_VERSION");

const OK: u8 = 0;
const VIOLATION: u8 = 1;
const BAD_INPUT: u8 = 2;
const OUT_OF_RANGE: u8 = 3;
const MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(name = "gentle", version, about = "Standard bases and mapping cones over gentle algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct Common {
    /// Coefficient field: `rat` or `fp:<p>` (p = 101 or 32003)
    #[arg(long, default_value = "rat")]
    field: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that a presentation is gentle
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Standard basis of Hom(σ, τ[n]) for every shift n in the window
    Hom {
        /// Presentation file, or the name of a bundled algebra
        #[arg(long)]
        algebra: String,
        sigma: String,
        tau: String,
        #[arg(long, default_value_t = 6)]
        window: i32,
        /// Compare each basis size with the oracle's Hom dimension
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Mapping cone of one basis map
    Cone {
        #[arg(long)]
        algebra: String,
        sigma: String,
        tau: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i32,
        /// Index into the basis at this shift, in report order
        #[arg(long = "map", default_value_t = 0)]
        map: usize,
        /// Rebuild the cone literally and compare with the oracle
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep every algebra in a corpus directory against the oracle
    VerifyCorpus {
        /// Directory of `.alg` files; the bundled corpus when omitted
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        max_string: usize,
        #[arg(long, default_value_t = 4)]
        max_band: usize,
        #[arg(long, default_value_t = 3)]
        max_path: usize,
        #[arg(long, default_value_t = 6)]
        window: i32,
        /// Worker threads (0: all cores)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Run the goldens with one deliberately corrupted expectation
        #[arg(long)]
        self_test: bool,
        #[command(flatten)]
        common: Common,
    },
}

struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(BAD_INPUT, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Validate { file, format } => validate(file, *format),
        Cmd::Hom { common, .. } | Cmd::Cone { common, .. } | Cmd::VerifyCorpus { common, .. } => match common.field.as_str() {
            "rat" => run::<Rat>(&cli.cmd, common),
            "fp:32003" => run::<F32003>(&cli.cmd, common),
            "fp:101" => run::<gentle::Fp<101>>(&cli.cmd, common),
            other => Err(Error::UnsupportedField(other.to_string()).into()),
        },
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn header(q: Option<&Quiver>, seed: u64, field: &str) -> Value {
    json!({
        "tool": "gentle",
        "version": VERSION,
        "algebra": q.map(|q| q.name.clone()),
        "algebra_hash": q.map(|q| q.content_hash()),
        "seed": seed,
        "field": field,
    })
}

fn emit(format: Format, mut head: Value, body: Value, text: &[String]) {
    match format {
        Format::Json => {
            if let (Value::Object(h), Value::Object(b)) = (&mut head, body) {
                h.extend(b);
            }
            println!("{}", serde_json::to_string_pretty(&head).unwrap());
        }
        Format::Text => {
            let h = &head;
            let mut line = format!("gentle {}", VERSION);
            if let Some(name) = h["algebra"].as_str() {
                line += &format!(" | algebra {name} #{}", h["algebra_hash"].as_str().unwrap_or(""));
            }
            line += &format!(" | field {} | seed {}", h["field"].as_str().unwrap_or(""), h["seed"]);
            println!("{line}");
            for l in text {
                println!("{l}");
            }
        }
    }
}

fn validate(file: &Path, format: Format) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure(BAD_INPUT, format!("{}: {e}", file.display())))?;
    let q = parse_candidate(&text)?;
    let violations = q.check_gentle();
    let lines: Vec<String> = if violations.is_empty() {
        vec!["gentle: yes".into()]
    } else {
        std::iter::once("gentle: no".to_string()).chain(violations.iter().map(|v| format!("  {v}"))).collect()
    };
    let body = json!({ "gentle": violations.is_empty(), "violations": violations });
    emit(format, header(Some(&q), 0, "-"), body, &lines);
    Ok(if violations.is_empty() { OK } else { VIOLATION })
}

fn load_algebra(arg: &str) -> Result<Quiver, Failure> {
    let p = Path::new(arg);
    if p.exists() {
        let text = std::fs::read_to_string(p).map_err(|e| Failure(BAD_INPUT, format!("{arg}: {e}")))?;
        return Ok(gentle::parse_presentation(&text)?);
    }
    Ok(corpus::algebra(arg)?)
}

#[derive(Serialize)]
struct MapReport {
    index: usize,
    kind: String,
    conditions: Vec<String>,
    p: i64,
    q: i64,
    len: i64,
    components: Vec<String>,
}

fn map_report<F: Field>(alg: &Algebra, s: &Complex<F>, t: &Complex<F>, k: usize, m: &BasisMap<F>) -> MapReport {
    MapReport {
        index: k,
        kind: m.kind.name().into(),
        conditions: m.conditions(),
        p: m.p,
        q: m.q,
        len: m.len,
        components: map_rows(alg, s, t, &m.rep),
    }
}

fn run<F: Field>(cmd: &Cmd, common: &Common) -> Result<u8, Failure> {
    match cmd {
        Cmd::Validate { .. } => unreachable!(),
        Cmd::Hom { algebra, sigma, tau, window, check, .. } => hom::<F>(algebra, sigma, tau, *window, *check, common),
        Cmd::Cone { algebra, sigma, tau, shift, map, verify, .. } => cone_cmd::<F>(algebra, sigma, tau, *shift, *map, *verify, common),
        Cmd::VerifyCorpus { corpus, max_string, max_band, max_path, window, jobs, self_test, .. } => {
            let limits = (*max_string, *max_band, *max_path);
            with_jobs(*jobs, || verify_corpus::<F>(corpus.as_deref(), limits, *window, *self_test, common))
        }
    }
}

#[cfg(feature = "parallel")]
fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
fn with_jobs<T: Send>(_jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    f()
}

fn hom<F: Field>(algebra: &str, sigma: &str, tau: &str, window: i32, check: bool, common: &Common) -> Result<u8, Failure> {
    let q = load_algebra(algebra)?;
    let alg = Algebra::new(q.clone())?;
    let s: Object<F> = Object::parse(&q, sigma)?;
    let t: Object<F> = Object::parse(&q, tau)?;
    let sc = Complex::build(&alg, &s);
    let mut text = vec![format!("σ = {}", unfolded(&q, &s)), format!("τ = {}", unfolded(&q, &t))];
    let mut shifts = Vec::new();
    let mut code = OK;
    for n in -window..=window {
        let tn = t.shift(n);
        let basis = standard_basis(&alg, &s, &tn)?;
        let tc = Complex::build(&alg, &tn);
        let oracle = check.then(|| hom_dimension(&alg, &sc, &tc));
        if basis.is_empty() && oracle.unwrap_or(0) == 0 {
            continue;
        }
        let maps: Vec<MapReport> = basis.iter().enumerate().map(|(k, m)| map_report(&alg, &sc, &tc, k, m)).collect();
        let agrees = oracle.map(|h| h == basis.len());
        if agrees == Some(false) {
            code = MISMATCH;
        }
        text.push(format!("shift {n}: {} basis map(s){}", basis.len(), match oracle {
            Some(h) => format!(", oracle dimension {h} ({})", if h == basis.len() { "ok" } else { "MISMATCH" }),
            None => String::new(),
        }));
        for m in &maps {
            let conds = if m.conditions.is_empty() { String::new() } else { format!(" [{}]", m.conditions.join(", ")) };
            text.push(format!("  #{} {}{conds}", m.index, m.kind));
            text.extend(m.components.iter().map(|c| format!("      {c}")));
        }
        shifts.push(json!({ "shift": n, "maps": maps, "oracle_dimension": oracle, "agrees": agrees }));
    }
    let body = json!({ "command": "hom", "sigma": sigma, "tau": tau, "window": window, "shifts": shifts });
    emit(common.format, header(Some(&q), common.seed, &F::label()), body, &text);
    Ok(code)
}

fn summand_lines<F: Field>(q: &Quiver, v: &[ConeSummand<F>]) -> Vec<String> {
    if v.iter().all(|c| c.is_zero()) {
        return vec!["0 (contractible)".into()];
    }
    let mut out = Vec::new();
    for c in v {
        match c.object() {
            Some(o) => {
                out.push(format!("{}  ({})", c.expr(q), c.note));
                out.push(format!("    {}", unfolded(q, &o)));
            }
            None => out.push(format!("0  ({})", c.note)),
        }
    }
    out
}

fn cone_cmd<F: Field>(algebra: &str, sigma: &str, tau: &str, shift: i32, k: usize, verify: bool, common: &Common) -> Result<u8, Failure> {
    let q = load_algebra(algebra)?;
    let alg = Algebra::new(q.clone())?;
    let s: Object<F> = Object::parse(&q, sigma)?;
    let t: Object<F> = Object::parse(&q, tau)?.shift(shift);
    let basis = standard_basis(&alg, &s, &t)?;
    let m = basis.get(k).ok_or_else(|| Failure(OUT_OF_RANGE, format!("map {k} out of range: the basis at shift {shift} has {} element(s)", basis.len())))?;
    let (sc, tc) = (Complex::build(&alg, &s), Complex::build(&alg, &t));
    let summands = cone(&alg, &s, &t, m)?;
    let mut text = vec![format!("σ = {}", unfolded(&q, &s)), format!("τ = {}", unfolded(&q, &t)), format!("map #{k}: {}", m.kind.name())];
    text.extend(map_rows(&alg, &sc, &tc, &m.rep).into_iter().map(|r| format!("    {r}")));
    text.push("cone:".into());
    text.extend(summand_lines(&q, &summands).into_iter().map(|l| format!("  {l}")));
    let mut code = OK;
    let mut verdict = Value::Null;
    if verify {
        let c = check_cone(&alg, &s, &t, m, common.seed)?;
        let oracle: Option<Vec<String>> = c.oracle.as_ref().map(|o| o.iter().map(|x| x.canonical().to_expr(&q)).collect());
        text.push(format!("oracle: {}", if c.isomorphic { "agrees" } else { "MISMATCH" }));
        if let Some(o) = &oracle {
            text.push(format!("  minimized cone decomposes as [{}]", o.join(", ")));
        }
        if !c.isomorphic {
            code = MISMATCH;
        }
        verdict = json!({ "isomorphic": c.isomorphic, "oracle": oracle });
    }
    let body = json!({
        "command": "cone",
        "sigma": sigma,
        "tau": tau,
        "shift": shift,
        "map": map_report(&alg, &sc, &tc, k, m),
        "summands": report(&q, &summands),
        "contractible": summands.iter().all(|c| c.is_zero()),
        "verify": verdict,
    });
    emit(common.format, header(Some(&q), common.seed, &F::label()), body, &text);
    Ok(code)
}

/// A fixed cone the harness checks before sweeping.
struct Golden {
    algebra: &'static str,
    sigma: &'static str,
    tau: &'static str,
    shift: i32,
    map: usize,
    expect: &'static [&'static str],
}

const GOLDENS: &[Golden] = &[
    Golden { algebra: "A", sigma: "e (d*c) b a ~d", tau: "~e ~f c b (a*f) e", shift: -3, map: 0, expect: &["d f e @anchor=2", "e d f e @anchor=-1"] },
    Golden { algebra: "A", sigma: "b a c b", tau: "~f c b a", shift: -2, map: 0, expect: &["b a c b a @anchor=-1", "~b ~c f @anchor=3"] },
    Golden {
        algebra: "B",
        sigma: "~e ~d c b @scalar=2",
        tau: "~j ~i ~g f c (b*a) @scalar=3",
        shift: 0,
        map: 0,
        expect: &["a ~j ~i ~g (f*d) e @scalar=-3/2 @pos=0 @anchor=-1"],
    },
];

/// Flip the sign of the first scalar in an expression.
fn corrupt(expr: &str) -> String {
    match expr.find("@scalar=") {
        Some(i) => {
            let at = i + "@scalar=".len();
            let rest = &expr[at..];
            match rest.strip_prefix('-') {
                Some(r) => format!("{}{r}", &expr[..at]),
                None => format!("{}-{rest}", &expr[..at]),
            }
        }
        None => expr.to_string(),
    }
}

fn check_golden<F: Field>(g: &Golden, corrupted: bool, seed: u64) -> Result<(bool, String), Error> {
    let q = corpus::algebra(g.algebra)?;
    let alg = Algebra::new(q.clone())?;
    let s: Object<F> = Object::parse(&q, g.sigma)?;
    let t: Object<F> = Object::parse(&q, g.tau)?.shift(g.shift);
    let basis = standard_basis(&alg, &s, &t)?;
    let Some(m) = basis.get(g.map) else { return Ok((false, "selector out of range".into())) };
    let got: Vec<String> = cone(&alg, &s, &t, m)?.iter().filter(|c| !c.is_zero()).map(|c| c.expr(&q)).collect();
    let mut expect: Vec<String> = g.expect.iter().map(|e| e.to_string()).collect();
    if corrupted {
        expect = expect.iter().map(|e| corrupt(e)).collect();
    }
    let objs: Vec<Object<F>> = expect.iter().map(|e| Object::parse(&q, e)).collect::<Result<_, _>>()?;
    let lit = gentle::verify::oracle_cone(&alg, &s, &t, m)?;
    let parts: Vec<Complex<F>> = objs.iter().map(|o| Complex::build(&alg, o)).collect();
    let iso = is_isomorphic(&alg, &lit, &Complex::direct_sum(&parts), seed);
    let ok = got == expect && iso;
    Ok((ok, format!("{}: {} vs [{}]", g.algebra, got.join(", "), expect.join(", "))))
}

fn read_corpus(dir: Option<&Path>) -> Result<Vec<(String, Quiver)>, Failure> {
    let Some(dir) = dir else {
        return corpus::NAMES.iter().map(|n| Ok((n.to_string(), corpus::algebra(n)?))).collect();
    };
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Failure(BAD_INPUT, format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "alg"))
        .collect();
    files.sort();
    files
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p).map_err(|e| Failure(BAD_INPUT, format!("{}: {e}", p.display())))?;
            let q = gentle::parse_presentation(&text).map_err(|e| Failure(BAD_INPUT, format!("{}: {e}", p.display())))?;
            Ok((p.file_stem().unwrap().to_string_lossy().into_owned(), q))
        })
        .collect()
}

fn verify_corpus<F: Field>(dir: Option<&Path>, limits: (usize, usize, usize), window: i32, self_test: bool, common: &Common) -> Result<u8, Failure> {
    let algebras = read_corpus(dir)?;
    let mut text = Vec::new();
    let mut code = OK;
    let mut goldens = Vec::new();
    // goldens live in the bundled algebras
    let golden_set: &[Golden] = if dir.is_none() || self_test { GOLDENS } else { &[] };
    for (i, g) in golden_set.iter().enumerate() {
        // the self-test corrupts the band golden, which must then fail
        let corrupted = self_test && g.algebra == "B";
        let (ok, detail) = check_golden::<F>(g, corrupted, common.seed)?;
        if !ok {
            code = MISMATCH;
        }
        text.push(format!("golden {i}{}: {} {detail}", if corrupted { " (corrupted)" } else { "" }, if ok { "pass" } else { "FAIL" }));
        goldens.push(json!({ "index": i, "corrupted": corrupted, "pass": ok, "detail": detail }));
    }
    if algebras.is_empty() {
        eprintln!("warning: corpus is empty, nothing to verify");
    }
    let lambdas = [F::from_i64(2), F::from_i64(-3)];
    let (ms, mb, mp) = limits;
    let mut per = Vec::new();
    let mut total = 0usize;
    for (name, q) in &algebras {
        let alg = Algebra::new(q.clone())?;
        let objs = corpus::objects::<F>(q, ms, mb, mp, &lambdas);
        let start = std::time::Instant::now();
        let sum: Summary = sweep(&alg, name, &objs, window, common.seed);
        let secs = start.elapsed().as_secs_f64();
        total += sum.cones + sum.count_checks;
        if !sum.ok() {
            code = MISMATCH;
        }
        text.push(format!(
            "{name} #{}: {} objects, {} basis checks ({} failed), {} cones ({} failed), {secs:.1}s",
            q.content_hash(),
            objs.len(),
            sum.count_checks,
            sum.count_failures.len(),
            sum.cones,
            sum.cone_failures.len()
        ));
        for f in &sum.count_failures {
            text.push(format!("  basis mismatch {}: {} maps, Hom dimension {}, rank {} {:?}", f.case_id, f.basis, f.hom_dim, f.independent, f.error));
        }
        for f in &sum.cone_failures {
            text.push(format!("  cone mismatch {} ({}): {:?} vs oracle {:?} {:?}", f.case_id, f.kind, f.symbolic, f.oracle, f.error));
        }
        per.push(json!({ "algebra": name, "hash": q.content_hash(), "objects": objs.len(), "seconds": secs, "summary": sum }));
    }
    text.push(format!("{} check(s), {}", total, if code == OK { "all pass" } else { "FAILURES" }));
    let body = json!({
        "command": "verify-corpus",
        "limits": { "max_string": ms, "max_band": mb, "max_path": mp, "window": window },
        "goldens": goldens,
        "algebras": per,
        "cases": total,
        "pass": code == OK,
    });
    emit(common.format, header(None, common.seed, &F::label()), body, &text);
    Ok(code)
}
