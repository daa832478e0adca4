//! Command-line front end. [`run`] produces the full report without touching
//! stdout, so it can be tested directly.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::basis::basis_generators;
use crate::config::{ConfigError, Job, JobConfig, Overrides, TensorJob};
use crate::free::{
    parse, parse_degree_list, render_word, GradedPolynomial, Notation, ParseContext,
};
use crate::generic::{brute_force_witness, canonical_form, is_graded_identity};
use crate::grading::GradedSubalgebra;
use crate::group::GroupElement;
use crate::monomial::{
    certificate_is_sound, classify_grading, enumerate_monomial_identities, minimal_monomial_basis,
    reduce_monomial, strongness_witness, Classification, DegreeSequence, Reduction, ReductionStep,
};
use crate::omega::CoeffMode;
use crate::tensor::{
    tensor_evaluate, ColorModel, GrassmannModel, Model, TensorError, TransformedIdentity,
};
use crate::verify::{run_suite, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "gradpi",
    version,
    about = "Graded identities of matrix-unit subalgebras"
)]
pub struct Cli {
    /// Job configuration (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Emit line-delimited JSON records instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Work over GF(p) instead of the rationals.
    #[arg(long, global = true, value_name = "P")]
    pub mod_p: Option<u64>,
    /// Worker threads for enumeration and verification.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Degrees for the zero-component identities, e.g. "0,1,2".
    #[arg(long, global = true, value_name = "LIST")]
    pub degree_universe: Option<String>,
    /// Generators of the Grassmann or color model.
    #[arg(long, global = true, value_name = "K")]
    pub truncation: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Support, component dimensions and the maps ĝ.
    Analyze,
    /// Monomial identities with reduction certificates.
    Monomials {
        /// Length bound; defaults to 2n-1.
        #[arg(long, value_name = "N")]
        max_deg: Option<usize>,
    },
    /// Generators of the ideal of graded identities.
    Basis,
    /// Decide whether a polynomial is a graded identity.
    Check(CheckArgs),
    /// Degeneracy and strongness of the grading.
    Classify,
    /// Transport the basis to the tensor product with E or C.
    Tensor,
    /// Run the invariant suite against the configured algebra.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cases per randomized check.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Length bound for the certificate check; defaults to 2n+2.
        #[arg(long, value_name = "N")]
        max_deg: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Polynomial, e.g. "x[0,1]x[0,2] - x[0,2]x[0,1]".
    #[arg(short = 'e', value_name = "EXPR", conflicts_with = "file")]
    pub expr: Option<String>,
    /// Read the polynomial from a file.
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,
    /// Reduce integer degree literals modulo the order of cyclic groups.
    #[arg(long)]
    pub modular_literals: bool,
}

/// Output of one command: text lines and the matching JSON records.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Report {
    pub lines: Vec<String>,
    pub records: Vec<Value>,
    pub exit_code: i32,
}

impl Report {
    fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    fn record(&mut self, value: Value) {
        self.records.push(value);
    }

    fn fail(code: i32, message: String) -> Report {
        Report {
            lines: Vec::new(),
            records: vec![json!({"kind": "error", "message": message})],
            exit_code: code,
        }
    }

    /// What goes to stdout.
    pub fn render(&self, as_json: bool) -> String {
        let mut out = String::new();
        if as_json {
            for r in &self.records {
                let _ = writeln!(out, "{r}");
            }
        } else {
            for l in &self.lines {
                let _ = writeln!(out, "{l}");
            }
        }
        out
    }

    /// Diagnostic for stderr, if the command failed before producing output.
    pub fn error_message(&self) -> Option<&str> {
        self.records
            .iter()
            .find(|r| r["kind"] == "error")
            .and_then(|r| r["message"].as_str())
    }
}

/// Runs a parsed command line inside a pool of the requested size.
pub fn run(cli: &Cli) -> Report {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        builder = builder.num_threads(n.max(1));
    }
    match builder.build() {
        Ok(pool) => pool.install(|| run_in_pool(cli)),
        Err(e) => Report::fail(EXIT_INTERNAL, format!("cannot start workers: {e}")),
    }
}

fn load_job(cli: &Cli) -> Result<Job, String> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| "missing --config FILE".to_string())?;
    let cfg = JobConfig::load(path).map_err(|e| e.to_string())?;
    let degree_universe = match &cli.degree_universe {
        Some(text) => Some(parse_degree_list(text).map_err(|e| format!("--degree-universe: {e}"))?),
        None => None,
    };
    let overrides = Overrides {
        mod_p: cli.mod_p,
        degree_universe,
        truncation: cli.truncation,
    };
    cfg.build(&overrides, path.parent())
        .map_err(|e: ConfigError| e.to_string())
}

fn run_in_pool(cli: &Cli) -> Report {
    let job = match load_job(cli) {
        Ok(job) => job,
        Err(e) => return Report::fail(EXIT_CONFIG, e),
    };
    match &cli.command {
        Command::Analyze => analyze(&job),
        Command::Monomials { max_deg } => monomials(&job, *max_deg),
        Command::Basis => basis(&job),
        Command::Check(args) => check(&job, args),
        Command::Classify => classify(&job),
        Command::Tensor => tensor(&job),
        Command::Verify {
            seed,
            samples,
            max_deg,
        } => {
            let b = &job.algebra;
            let opts = VerifyOptions {
                seed: *seed,
                samples: *samples,
                max_deg: max_deg.unwrap_or(2 * b.n() + 2),
            };
            verify(&job, &opts)
        }
    }
}

fn names(b: &GradedSubalgebra, elements: &[GroupElement]) -> Vec<String> {
    elements.iter().map(|g| b.display(g)).collect()
}

fn mode_text(mode: CoeffMode) -> String {
    match mode {
        CoeffMode::Rational => "rational".into(),
        CoeffMode::ModPrime(p) => format!("mod {p}"),
    }
}

fn analyze(job: &Job) -> Report {
    let b = &job.algebra;
    let mut r = Report::default();
    let tuple = names(b, b.tuple());
    let support = names(b, b.support());
    r.line(format!("n: {}", b.n()));
    r.line(format!("tuple: ({})", tuple.join(",")));
    r.line(format!("units: {}", b.units().len()));
    r.line(format!("coefficients: {}", mode_text(job.mode)));
    r.line(format!("support: {}", support.join(", ")));
    r.record(json!({
        "kind": "algebra",
        "n": b.n(),
        "tuple": tuple,
        "units": b.units().len(),
        "coefficients": mode_text(job.mode),
        "support": support,
    }));
    for g in b.support() {
        let hat = b.hat(g).expect("support element");
        r.line(format!(
            "component {}: dim {}, map {hat}",
            b.display(g),
            b.component_dim(g)
        ));
        let pairs: Vec<[usize; 2]> = hat.iter().map(|(i, j)| [i, j]).collect();
        r.record(json!({
            "kind": "component",
            "degree": b.display(g),
            "dim": b.component_dim(g),
            "map": pairs,
        }));
    }
    let zeros: Vec<String> = job
        .universe
        .iter()
        .filter(|g| !b.in_support(g))
        .map(|g| b.display(g))
        .collect();
    r.line(format!("zero components: {}", list_or_none(&zeros)));
    r.record(json!({"kind": "zero_components", "degrees": zeros}));
    r
}

fn list_or_none(items: &[String]) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join(", ")
    }
}

fn step_text(b: &GradedSubalgebra, step: &ReductionStep, produced: &DegreeSequence) -> String {
    let target = produced.display(b.group());
    match step {
        ReductionStep::Subword { start, end } => format!("R1 {start}..{end} -> {target}"),
        ReductionStep::Merge { at, merged } => {
            format!("R2 {at} as {} -> {target}", b.display(merged))
        }
    }
}

fn monomials(job: &Job, max_deg: Option<usize>) -> Report {
    let b = &job.algebra;
    let group = b.group();
    let bound = max_deg.unwrap_or(2 * b.n() - 1);
    let basis = minimal_monomial_basis(b);
    let words = enumerate_monomial_identities(b, bound);
    let mut r = Report::default();
    for w in &words {
        let reduction = match reduce_monomial(b, w) {
            Ok(x) => x,
            Err(e) => return Report::fail(EXIT_INTERNAL, format!("{}: {e}", w.display(group))),
        };
        let (steps, target) = match &reduction {
            Reduction::Irreducible => (Vec::new(), w.clone()),
            Reduction::Certificate(cert) => {
                if !certificate_is_sound(b, cert) {
                    return Report::fail(
                        EXIT_INTERNAL,
                        format!("unsound certificate for {}", w.display(group)),
                    );
                }
                (cert.steps.clone(), cert.target().clone())
            }
        };
        let minimal = basis.contains(&target);
        if !minimal && target.len() < 2 * b.n() {
            return Report::fail(
                EXIT_INTERNAL,
                format!("{} reduces outside the minimal basis", w.display(group)),
            );
        }
        let text = if steps.is_empty() {
            "irreducible".to_string()
        } else {
            steps
                .iter()
                .map(|(s, p)| step_text(b, s, p))
                .collect::<Vec<_>>()
                .join("; ")
        };
        r.line(format!(
            "{} {}: {text}",
            w.display(group),
            w.display_monomial(group)
        ));
        let certificate = match &reduction {
            Reduction::Irreducible => Value::Null,
            Reduction::Certificate(cert) => cert.to_json(group),
        };
        r.record(json!({
            "kind": "identity_word",
            "word": names(b, w.as_slice()),
            "monomial": w.display_monomial(group),
            "certificate": certificate,
            "target": names(b, target.as_slice()),
        }));
    }
    let minimal: Vec<String> = basis
        .iter()
        .filter(|s| s.len() <= bound)
        .map(|s| s.display(group))
        .collect();
    if words.is_empty() {
        r.line("nondegenerate up to bound");
    } else {
        r.line(format!(
            "{} identity words up to degree {bound}; minimal: {}",
            words.len(),
            minimal.join(", ")
        ));
    }
    r.record(json!({
        "kind": "summary",
        "max_deg": bound,
        "count": words.len(),
        "minimal": minimal,
        "nondegenerate_up_to_bound": words.is_empty(),
    }));
    r
}

fn basis(job: &Job) -> Report {
    let b = &job.algebra;
    let generators = match basis_generators(b, &job.universe) {
        Ok(g) => g,
        Err(e) => return Report::fail(EXIT_CONFIG, e.to_string()),
    };
    let mut r = Report::default();
    for g in &generators {
        let text = g.polynomial.pretty(b.group(), Notation::Plain);
        r.line(format!("{} {text}", g.tag(b)));
        r.record(json!({"kind": "generator", "tag": g.tag(b), "polynomial": text}));
    }
    r.line(format!("{} generators", generators.len()));
    r.record(json!({"kind": "summary", "count": generators.len()}));
    r
}

fn read_expression(args: &CheckArgs) -> Result<String, String> {
    match (&args.expr, &args.file) {
        (Some(e), _) => Ok(e.clone()),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display())),
        (None, None) => Err("check needs -e EXPR or --file PATH".into()),
    }
}

fn check(job: &Job, args: &CheckArgs) -> Report {
    let b = &job.algebra;
    let group = b.group();
    let text = match read_expression(args) {
        Ok(t) => t,
        Err(e) => return Report::fail(EXIT_CONFIG, e),
    };
    let ctx = ParseContext::new(group).with_modular_literals(args.modular_literals);
    let f = match parse(&text, &ctx) {
        Ok(f) => f,
        Err(e) => return Report::fail(EXIT_CONFIG, format!("cannot parse expression: {e}")),
    };
    let verdict = match is_graded_identity(b, &f, job.mode) {
        Ok(v) => v,
        Err(e) => return Report::fail(EXIT_CONFIG, e.to_string()),
    };
    let mut r = Report::default();
    let pretty = f.pretty(group, Notation::Plain);
    r.line(format!("identity: {verdict}"));
    r.line(format!(
        "polynomial: {}",
        if f.is_zero() {
            "0".into()
        } else {
            pretty.clone()
        }
    ));
    r.line(format!("coefficients: {}", mode_text(job.mode)));
    r.record(json!({
        "kind": "verdict",
        "identity": verdict,
        "polynomial": pretty,
        "coefficients": mode_text(job.mode),
    }));
    let components = f.multihomogeneous_components();
    for (pos, comp) in components.iter().enumerate() {
        summarize_component(&mut r, b, job.mode, pos + 1, comp);
    }
    if !verdict && f.is_multilinear() {
        if let Ok(Some(w)) = brute_force_witness(b, &f, job.mode) {
            let parts: Vec<String> = w
                .iter()
                .map(|(v, (i, j))| {
                    format!(
                        "{} = e{i}{j}",
                        render_word(std::slice::from_ref(v), group, Notation::Plain)
                    )
                })
                .collect();
            r.line(format!("witness: {}", parts.join(", ")));
            r.record(json!({"kind": "witness", "substitution": parts}));
        }
    }
    if !verdict {
        r.exit_code = EXIT_NEGATIVE;
    }
    r
}

fn summarize_component(
    r: &mut Report,
    b: &GradedSubalgebra,
    mode: CoeffMode,
    index: usize,
    comp: &GradedPolynomial,
) {
    let group = b.group();
    let Ok(form) = canonical_form(b, comp, mode) else {
        return;
    };
    let word = |w: &Vec<_>| render_word(w, group, Notation::Plain);
    r.line(format!(
        "component {index}: {} classes, identity {}",
        form.classes.len(),
        form.is_identity()
    ));
    for class in &form.classes {
        let entries: Vec<String> = class
            .fingerprint
            .entries()
            .iter()
            .map(|(i, j, m)| format!("({i},{j}) {m}"))
            .collect();
        let members: Vec<String> = class.members.iter().map(word).collect();
        r.line(format!(
            "  class [{}] sum {}: {}",
            entries.join("; "),
            class.coefficient_sum,
            members.join(", ")
        ));
        r.record(json!({
            "kind": "class",
            "component": index,
            "fingerprint": entries,
            "coefficient_sum": class.coefficient_sum.to_string(),
            "members": members,
            "vanishes": class.coefficient_sum.is_zero(),
        }));
    }
    if !form.identity_monomials.is_empty() {
        let members: Vec<String> = form.identity_monomials.iter().map(word).collect();
        r.line(format!("  identity monomials: {}", members.join(", ")));
        r.record(json!({
            "kind": "identity_monomials",
            "component": index,
            "members": members,
        }));
    }
}

fn classify(job: &Job) -> Report {
    let b = &job.algebra;
    let group = b.group();
    let mut r = Report::default();
    let classification = classify_grading(b);
    // With an infinite group and finite support some component is zero
    // while its product with a nonzero one is not.
    let strong_witness = if group.is_finite() {
        match strongness_witness(b) {
            Ok(w) => w,
            Err(e) => return Report::fail(EXIT_INTERNAL, e.to_string()),
        }
    } else {
        None
    };
    let strong = group.is_finite() && strong_witness.is_none();
    let (head, witness) = match &classification {
        Classification::Nondegenerate => ("nondegenerate".to_string(), None),
        Classification::Degenerate(w) => (
            format!("degenerate, witness {}", w.display_monomial(group)),
            Some(w),
        ),
    };
    let tail = if strong { "strong" } else { "not strong" };
    r.line(format!("{head}; {tail}"));
    r.record(json!({
        "kind": "classification",
        "degenerate": witness.is_some(),
        "witness": witness.map(|w| w.display_monomial(group)),
        "witness_degrees": witness.map(|w| names(b, w.as_slice())),
        "strong": strong,
        "strongness_witness": strong_witness.as_ref().map(|(g, h)| [b.display(g), b.display(h)]),
    }));
    r
}

enum Verification {
    Verified,
    Failed,
    Skipped(String),
}

fn verify_with<M: Model>(
    b: &GradedSubalgebra,
    model: &M,
    items: &[TransformedIdentity],
) -> Vec<Verification> {
    items
        .iter()
        .map(|t| match tensor_evaluate(b, model, &t.polynomial) {
            Ok(true) => Verification::Verified,
            Ok(false) => Verification::Failed,
            Err(e @ TensorError::TruncationTooSmall { .. }) => Verification::Skipped(e.to_string()),
            Err(e) => Verification::Skipped(e.to_string()),
        })
        .collect()
}

fn tensor(job: &Job) -> Report {
    let b = &job.algebra;
    let Some(TensorJob { beta, truncation }) = &job.tensor else {
        return Report::fail(EXIT_CONFIG, "configuration has no tensor section".into());
    };
    let items = match crate::tensor::transform_basis(b, beta, &job.universe) {
        Ok(items) => items,
        Err(e) => return Report::fail(EXIT_CONFIG, e.to_string()),
    };
    let (model_name, results) = if beta.is_grassmann() {
        let k = match u32::try_from(*truncation) {
            Ok(k) if k <= 16 => k,
            _ => return Report::fail(EXIT_CONFIG, "Grassmann truncation above 16".into()),
        };
        (
            format!("E_{k}"),
            verify_with(b, &GrassmannModel::new(k), &items),
        )
    } else {
        match ColorModel::new(beta.clone(), *truncation, 2) {
            Ok(model) => (format!("C_{truncation}"), verify_with(b, &model, &items)),
            Err(e) => return Report::fail(EXIT_CONFIG, e.to_string()),
        }
    };
    let hg = beta.h();
    let mut r = Report::default();
    let (mut verified, mut failed, mut skipped) = (0, 0, 0);
    for (t, v) in items.iter().zip(&results) {
        let text = t.polynomial.pretty();
        let hs: Vec<String> = t.h.iter().map(|x| hg.display(x)).collect();
        let status = match v {
            Verification::Verified => {
                verified += 1;
                "verified".to_string()
            }
            Verification::Failed => {
                failed += 1;
                "FAILED".to_string()
            }
            Verification::Skipped(why) => {
                skipped += 1;
                format!("skipped: {why}")
            }
        };
        r.line(format!("{} {text}  [{}; {status}]", t.tag, t.source));
        r.record(json!({
            "kind": "transformed",
            "tag": t.tag,
            "source": t.source,
            "h": hs,
            "polynomial": text,
            "status": status,
        }));
    }
    r.line(format!(
        "model {model_name}: {verified} verified, {failed} failed, {skipped} skipped"
    ));
    r.record(json!({
        "kind": "summary",
        "model": model_name,
        "count": items.len(),
        "verified": verified,
        "failed": failed,
        "skipped": skipped,
    }));
    if failed > 0 {
        r.exit_code = EXIT_INTERNAL;
    }
    r
}

fn verify(job: &Job, opts: &VerifyOptions) -> Report {
    let b = &job.algebra;
    let mut r = Report::default();
    let outcomes = run_suite(b, &job.universe, job.mode, opts);
    for o in &outcomes {
        if o.passed() {
            r.line(format!("{}: ok ({} cases)", o.name, o.cases));
        } else {
            r.line(format!(
                "{}: FAILED ({} of {} cases); first: {}",
                o.name,
                o.failures.len(),
                o.cases,
                o.failures[0]
            ));
        }
        r.record(json!({
            "kind": "check",
            "name": o.name,
            "cases": o.cases,
            "failures": o.failures,
        }));
    }
    if outcomes.iter().any(|o| !o.passed()) {
        r.exit_code = EXIT_INTERNAL;
    }
    r
}
