//! `cpa`: command-line driver for CPA-structure computations.
//!
//! Exit codes: 0 definite success, 1 mismatch against an expectation,
//! 2 invalid input, 3 inconclusive or resource-limited.

mod input;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cpa_core::bilinear::{space_to_json, windowed_dcomm_space, BilinearMap};
use cpa_core::constructions::{
    central_extension, current_algebra, euler_derivation, semidirect_by_derivation, truncated_polynomial_algebra,
};
use cpa_core::cpa::{cpa_solve, cpa_solve_window, default_degree_bound, report_to_json, verify_cpa, CpaReport, SolveOptions};
use cpa_core::error::{CpaError, PolyError};
use cpa_core::format::{algebra_to_json, map_from_json, window_to_json, ParsedAlgebra};
use cpa_core::lie::{Cocycle2, LinearMap};
use cpa_core::linalg::{format_scalar, parse_scalar, Matrix, Scalar};
use cpa_core::poly::Budget;
use cpa_core::structure::PartialAlgebra;
use cpa_core::theorems::{run_suite, DEFAULT_SEED, SUITE_IDS};

use input::{load, load_algebra, resolve, Resolved};

#[derive(Parser)]
#[command(name = "cpa", version, about = "Exact CPA-structure computations on Lie algebras and graded windows")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Window half-width N for loop, Kac-Moody and Witt windows.
    #[arg(long, global = true, value_name = "N")]
    window: Option<usize>,
    /// Largest |degree| of admitted homogeneous components on windows.
    #[arg(long, global = true, value_name = "B")]
    degree_bound: Option<i64>,
    /// Maximum number of S-pair reductions per Gröbner computation.
    #[arg(long, global = true, value_name = "STEPS")]
    budget: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, value_name = "S")]
    seed: Option<u64>,
    /// Write the JSON result to OUT ("-" for stdout only).
    #[arg(long, global = true, value_name = "OUT")]
    json: Option<PathBuf>,
    /// Include wall-clock timing in JSON output.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra and print its basic invariants.
    Algebra {
        #[command(subcommand)]
        command: AlgebraCommand,
    },
    /// D_comm spaces, CPA solving and map verification.
    Cpa {
        #[command(subcommand)]
        command: CpaCommand,
    },
    /// Lie algebra cohomology.
    Cohomology {
        #[command(subcommand)]
        command: CohomologyCommand,
    },
    /// Build algebras and windows, printed as JSON.
    Construct {
        #[command(subcommand)]
        command: ConstructCommand,
    },
    /// Run a verification suite (or "all").
    Verify {
        /// One of th2, prop-p, witt, prop1, prop2, lemma1, lemma2, th22, prop33, all.
        id: String,
    },
}

#[derive(Subcommand)]
enum AlgebraCommand {
    Check { algebra: String },
}

#[derive(Args, Clone, Default)]
pub struct Target {
    /// Built-in name (sl2, sl3, heisenberg, r2, abelian<n>, sl2_z1, sl3_z1, sl2_z2, sl2_root) or JSON file.
    pub algebra: Option<String>,
    /// Use the loop window of the (graded) algebra.
    #[arg(long = "loop")]
    pub loop_window: bool,
    /// Use the Kac-Moody window of the (graded) algebra.
    #[arg(long)]
    pub kac_moody: bool,
    /// Use the Witt window with half-width N.
    #[arg(long, value_name = "N")]
    pub witt: Option<usize>,
    /// One-sided Witt window (indices >= -1).
    #[arg(long)]
    pub one_sided: bool,
}

#[derive(Subcommand)]
enum CpaCommand {
    /// Basis of D_comm (windowed on windows).
    Dcomm(Target),
    /// Full CPA pipeline with certificate.
    Solve(Target),
    /// Check a map given as {"entries": [[i, j, k, "p/q"], ...]}.
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
    },
}

#[derive(Subcommand)]
enum CohomologyCommand {
    H2 { algebra: String },
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// Loop window of a graded algebra.
    Loop { algebra: String },
    /// Witt window.
    Witt {
        #[arg(long)]
        one_sided: bool,
    },
    /// Kac-Moody window of a graded algebra.
    KacMoody { algebra: String },
    /// `L + K D`: either `(L (x) Q[t]/(t^n)) + K t d/dt` via --truncation, or
    /// a derivation of L read from --derivation (JSON {"images": [[[k, "p/q"], ...], ...]}).
    Semidirect {
        algebra: String,
        #[arg(long, value_name = "n")]
        truncation: Option<usize>,
        #[arg(long, value_name = "FILE")]
        derivation: Option<PathBuf>,
    },
    /// Central extension by a 2-cocycle read from --cocycle
    /// (JSON {"values": [[i, j, "p/q"], ...]}, i < j), or the first
    /// nontrivial basis cocycle.
    CentralExt {
        algebra: String,
        #[arg(long, value_name = "FILE")]
        cocycle: Option<PathBuf>,
    },
}

/// Terminating condition with its exit code.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn mismatch(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<CpaError> for Failure {
    fn from(e: CpaError) -> Self {
        let code = match &e {
            CpaError::ResourceLimit(PolyError::ResourceLimit { .. }) => 3,
            CpaError::Unverified(_) | CpaError::HypothesisViolated(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

struct Context {
    window: Option<usize>,
    degree_bound: Option<i64>,
    budget: Budget,
    seed: u64,
    json: Option<PathBuf>,
    timing: bool,
    command: String,
}

impl Context {
    fn options(&self) -> SolveOptions {
        SolveOptions {
            degree_bound: self.degree_bound,
            budget: self.budget.clone(),
            candidate: None,
        }
    }

    fn manifest(&self, input: Option<&str>) -> Value {
        json!({
            "command": self.command,
            "input": input,
            "window": self.window,
            "degree_bound": self.degree_bound,
            "budget": self.budget.max_pair_reductions,
            "seed": self.seed,
            "output": self.json.as_ref().map(|p| p.display().to_string()),
        })
    }

    fn quiet(&self) -> bool {
        self.json.as_deref().is_some_and(|p| p.as_os_str() == "-")
    }

    fn say(&self, line: impl AsRef<str>) {
        if !self.quiet() {
            println!("{}", line.as_ref());
        }
    }

    fn emit(&self, value: Value) -> Result<(), Failure> {
        let Some(path) = &self.json else { return Ok(()) };
        let text = serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n";
        if path.as_os_str() == "-" {
            print!("{text}");
            Ok(())
        } else {
            std::fs::write(path, text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
        }
    }
}

fn describe_map<A: PartialAlgebra + ?Sized>(alg: &A, m: &BilinearMap) -> String {
    let mut rows: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for (i, j, k, x) in m.entries() {
        rows.entry((i, j)).or_default().push(format!("{}*{}", format_scalar(&x), alg.label(k)));
    }
    rows.into_iter()
        .map(|((i, j), terms)| format!("({}, {}) -> {}", alg.label(i), alg.label(j), terms.join(" + ")))
        .collect::<Vec<_>>()
        .join("; ")
}

fn target_descriptor(t: &Target) -> String {
    match (t.witt, &t.algebra) {
        (Some(n), _) => format!("witt({n}{})", if t.one_sided { ", one-sided" } else { "" }),
        (None, Some(a)) if t.kac_moody => format!("kac-moody({a})"),
        (None, Some(a)) if t.loop_window => format!("loop({a})"),
        (None, Some(a)) => a.clone(),
        (None, None) => String::new(),
    }
}

fn algebra_check(ctx: &Context, descriptor: &str) -> Result<(), Failure> {
    let parsed = load(descriptor)?;
    let l = parsed.algebra();
    let center = l.center().dim();
    let derived = l.derived_subalgebra().dim();
    ctx.say(format!("{descriptor}: valid Lie algebra of dimension {}", l.dim()));
    ctx.say(format!("  labels: {}", l.labels().join(", ")));
    ctx.say(format!("  center dim {center}, derived subalgebra dim {derived}"));
    ctx.say(format!("  perfect: {}, centerless: {}", l.is_perfect(), l.is_centerless()));
    let grading = match &parsed {
        ParsedAlgebra::Graded(g) => {
            ctx.say(format!("  grading: {:?} degrees {:?}", g.grading.group, g.grading.degrees));
            Some(serde_json::to_value(&g.grading).expect("grading serializes"))
        }
        ParsedAlgebra::Plain(_) => None,
    };
    ctx.emit(json!({
        "manifest": ctx.manifest(Some(descriptor)),
        "valid": true,
        "dim": l.dim(),
        "center_dim": center,
        "derived_dim": derived,
        "perfect": l.is_perfect(),
        "centerless": l.is_centerless(),
        "grading": grading,
    }))
}

fn print_report<A: PartialAlgebra + ?Sized>(ctx: &Context, alg: &A, rep: &CpaReport) {
    ctx.say(format!("verdict: {}", rep.verdict.tag()));
    if let Some((n, b)) = rep.window {
        ctx.say(format!("window N = {n}, degree bound B = {b}"));
    }
    ctx.say(format!("dcomm_dim: {}", rep.dcomm_dim()));
    if rep.window.is_some() {
        ctx.say(format!("dcomm per degree: {:?}", rep.dcomm.per_degree()));
    }
    ctx.say(format!("equations: {}", rep.ideal.generators().len()));
    if let cpa_core::Verdict::LinearSpace(basis) = &rep.verdict {
        ctx.say(format!("solution space dim {}:", basis.len()));
        for m in basis {
            ctx.say(format!("  {}", describe_map(alg, m)));
        }
    } else if !rep.witnesses.is_empty() {
        ctx.say(format!("{} rational witnesses found:", rep.witnesses.len()));
        for m in &rep.witnesses {
            ctx.say(format!("  {}", describe_map(alg, m)));
        }
    }
    ctx.say(format!("elapsed: {:.3} s", rep.elapsed.as_secs_f64()));
}

fn cpa_command(ctx: &Context, command: &CpaCommand) -> Result<u8, Failure> {
    let (target, map) = match command {
        CpaCommand::Dcomm(t) | CpaCommand::Solve(t) => (t, None),
        CpaCommand::Verify { target, map } => (target, Some(map)),
    };
    let descriptor = target_descriptor(target);
    let window = target.witt.or(ctx.window);
    let resolved = resolve(target, window)?;
    match command {
        CpaCommand::Dcomm(_) => {
            let space = match &resolved {
                Resolved::Finite(l) => cpa_core::bilinear::dcomm_space(l),
                Resolved::Window(w) => {
                    let b = ctx.degree_bound.unwrap_or_else(|| default_degree_bound(w.bound));
                    windowed_dcomm_space(w, w.bound, b).map_err(|e| Failure::invalid(e.to_string()))?
                }
            };
            ctx.say(format!("dcomm_dim: {}", space.len()));
            if let Resolved::Window(_) = &resolved {
                ctx.say(format!("per degree: {:?}", space.per_degree()));
            }
            let mut value = serde_json::to_value(space_to_json(&space)).expect("space serializes");
            value["manifest"] = ctx.manifest(Some(&descriptor));
            ctx.emit(value)?;
            Ok(0)
        }
        CpaCommand::Solve(_) => {
            let opts = ctx.options();
            let (rep, mut value) = match &resolved {
                Resolved::Finite(l) => {
                    let rep = cpa_solve(l, &opts)?;
                    print_report(ctx, l, &rep);
                    let v = serde_json::to_value(report_to_json(l, &rep, ctx.timing)).expect("report serializes");
                    (rep, v)
                }
                Resolved::Window(w) => {
                    let rep = cpa_solve_window(w, &opts)?;
                    print_report(ctx, w, &rep);
                    let v = serde_json::to_value(report_to_json(w, &rep, ctx.timing)).expect("report serializes");
                    (rep, v)
                }
            };
            value["manifest"] = ctx.manifest(Some(&descriptor));
            ctx.emit(value)?;
            Ok(if rep.verdict == cpa_core::Verdict::Inconclusive { 3 } else { 0 })
        }
        CpaCommand::Verify { .. } => {
            let path = map.expect("verify has a map");
            let text = std::fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
            let result = match &resolved {
                Resolved::Finite(l) => {
                    let m = map_from_json(&text, l.dim()).map_err(|e| Failure::invalid(e.to_string()))?;
                    verify_cpa(l, &m, None)
                }
                Resolved::Window(w) => {
                    let m = map_from_json(&text, w.dim()).map_err(|e| Failure::invalid(e.to_string()))?;
                    verify_cpa(w, &m, None)
                }
            };
            ctx.emit(json!({
                "manifest": ctx.manifest(Some(&descriptor)),
                "is_cpa": result.is_ok(),
                "violation": result.as_ref().err().map(ToString::to_string),
            }))?;
            match result {
                Ok(()) => {
                    ctx.say("map is a CPA structure");
                    Ok(0)
                }
                Err(v) => Err(Failure::mismatch(format!("not a CPA structure: {v}"))),
            }
        }
    }
}

fn cohomology_h2(ctx: &Context, descriptor: &str) -> Result<(), Failure> {
    let l = load_algebra(descriptor)?;
    let z = l.two_cocycles().len();
    let b = l.coboundaries().len();
    let h2 = l.h2_dim();
    ctx.say(format!("{descriptor}: dim Z^2 = {z}, dim B^2 = {b}, dim H^2 = {h2}"));
    ctx.emit(json!({
        "manifest": ctx.manifest(Some(descriptor)),
        "cocycles_dim": z,
        "coboundaries_dim": b,
        "h2_dim": h2,
    }))
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn scalar_of(v: &Value) -> Result<Scalar, Failure> {
    let s = v.as_str().ok_or_else(|| Failure::invalid("scalars are strings \"p/q\""))?;
    parse_scalar(s).map_err(|e| Failure::invalid(e.to_string()))
}

fn index_of(v: &Value, dim: usize) -> Result<usize, Failure> {
    v.as_u64()
        .map(|i| i as usize)
        .filter(|i| *i < dim)
        .ok_or_else(|| Failure::invalid(format!("basis index out of range 0..{dim}")))
}

fn derivation_from_json(path: &PathBuf, dim: usize) -> Result<LinearMap, Failure> {
    let value = read_json(path)?;
    let images = value["images"]
        .as_array()
        .filter(|a| a.len() == dim)
        .ok_or_else(|| Failure::invalid(format!("\"images\" must list {dim} sparse vectors")))?;
    let mut m = Matrix::zeros(dim, dim);
    for (i, image) in images.iter().enumerate() {
        for entry in image.as_array().ok_or_else(|| Failure::invalid("image must be an array"))? {
            let pair = entry.as_array().filter(|p| p.len() == 2).ok_or_else(|| Failure::invalid("image entries are [k, \"p/q\"]"))?;
            m[(index_of(&pair[0], dim)?, i)] = scalar_of(&pair[1])?;
        }
    }
    Ok(LinearMap::new(m))
}

fn cocycle_from_json(path: &PathBuf, dim: usize) -> Result<Cocycle2, Failure> {
    let value = read_json(path)?;
    let values = value["values"].as_array().ok_or_else(|| Failure::invalid("\"values\" must be an array"))?;
    let mut m = Matrix::zeros(dim, dim);
    for entry in values {
        let t = entry.as_array().filter(|t| t.len() == 3).ok_or_else(|| Failure::invalid("values are [i, j, \"p/q\"]"))?;
        let (i, j, x) = (index_of(&t[0], dim)?, index_of(&t[1], dim)?, scalar_of(&t[2])?);
        if i >= j {
            return Err(Failure::invalid("cocycle entries need i < j"));
        }
        m[(j, i)] = -x.clone();
        m[(i, j)] = x;
    }
    Ok(Cocycle2 { coefficients: m })
}

fn construct(ctx: &Context, command: &ConstructCommand) -> Result<(), Failure> {
    let invalid = |e: cpa_core::error::ConstructionError| Failure::invalid(e.to_string());
    let n = ctx.window.unwrap_or(input::DEFAULT_LOOP_WINDOW);
    let value = match command {
        ConstructCommand::Loop { algebra } => {
            let w = cpa_core::constructions::loop_window(&input::load_graded(algebra)?, n).map_err(invalid)?;
            ctx.say(format!("loop window of {algebra}, N = {n}: dimension {}", w.dim()));
            serde_json::to_value(window_to_json(&w))
        }
        ConstructCommand::Witt { one_sided } => {
            let n = ctx.window.unwrap_or(4);
            let w = cpa_core::constructions::witt_window(n, *one_sided).map_err(invalid)?;
            ctx.say(format!("Witt window N = {n}: dimension {}", w.dim()));
            serde_json::to_value(window_to_json(&w))
        }
        ConstructCommand::KacMoody { algebra } => {
            let w = cpa_core::constructions::kac_moody_window(&input::load_graded(algebra)?, n).map_err(invalid)?;
            ctx.say(format!("Kac-Moody window of {algebra}, N = {n}: dimension {}", w.dim()));
            serde_json::to_value(window_to_json(&w))
        }
        ConstructCommand::Semidirect {
            algebra,
            truncation,
            derivation,
        } => {
            let l = load_algebra(algebra)?;
            let ext = match (truncation, derivation) {
                (Some(k), None) => {
                    let a = truncated_polynomial_algebra(*k).map_err(invalid)?;
                    let cur = current_algebra(&l, &a).map_err(invalid)?;
                    semidirect_by_derivation(&cur, &euler_derivation(l.dim(), *k), "d").map_err(invalid)?
                }
                (None, Some(path)) => {
                    let d = derivation_from_json(path, l.dim())?;
                    semidirect_by_derivation(&l, &d, "D").map_err(invalid)?
                }
                _ => return Err(Failure::invalid("give exactly one of --truncation and --derivation")),
            };
            ctx.say(format!(
                "semidirect extension of dimension {}; derivation {}",
                ext.algebra.dim(),
                if ext.nontrivial { "outer" } else { "inner" }
            ));
            serde_json::to_value(algebra_to_json(&ext.algebra, None))
        }
        ConstructCommand::CentralExt { algebra, cocycle } => {
            let l = load_algebra(algebra)?;
            let xi = match cocycle {
                Some(path) => cocycle_from_json(path, l.dim())?,
                None => l
                    .pick_nontrivial_cocycle()
                    .ok_or_else(|| Failure::invalid(format!("H^2({algebra}) = 0: no nontrivial central extension")))?,
            };
            let ext = central_extension(&l, &xi, "z").map_err(invalid)?;
            ctx.say(format!(
                "central extension of dimension {}; cocycle {}",
                ext.algebra.dim(),
                if ext.nontrivial { "nontrivial" } else { "a coboundary" }
            ));
            serde_json::to_value(algebra_to_json(&ext.algebra, None))
        }
    }
    .expect("construction serializes");
    if ctx.json.is_none() {
        println!("{}", serde_json::to_string_pretty(&value).expect("JSON values serialize"));
        Ok(())
    } else {
        ctx.emit(value)
    }
}

fn verify(ctx: &Context, id: &str) -> Result<u8, Failure> {
    let ids: Vec<&str> = if id == "all" {
        SUITE_IDS.to_vec()
    } else if SUITE_IDS.contains(&id) {
        vec![id]
    } else {
        return Err(Failure::invalid(format!("unknown suite {id:?}; expected one of {} or all", SUITE_IDS.join(", "))));
    };
    let mut all_pass = true;
    let mut suites = Vec::new();
    for id in ids {
        let report = run_suite(id, &ctx.options(), ctx.seed)?;
        ctx.say(format!("== {id}: {}", if report.passed() { "pass" } else { "FAIL" }));
        for c in &report.checks {
            ctx.say(format!("  {c}"));
        }
        all_pass &= report.passed();
        suites.push(json!({
            "id": id,
            "passed": report.passed(),
            "checks": report.checks.iter().map(|c| json!({
                "name": c.name,
                "expected": c.expected,
                "computed": c.computed,
                "pass": c.pass,
            })).collect::<Vec<_>>(),
        }));
    }
    ctx.emit(json!({"manifest": ctx.manifest(None), "suites": suites}))?;
    Ok(if all_pass { 0 } else { 1 })
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Algebra { .. } => "algebra check".into(),
        Command::Cpa { command } => match command {
            CpaCommand::Dcomm(_) => "cpa dcomm".into(),
            CpaCommand::Solve(_) => "cpa solve".into(),
            CpaCommand::Verify { .. } => "cpa verify".into(),
        },
        Command::Cohomology { .. } => "cohomology h2".into(),
        Command::Construct { command } => match command {
            ConstructCommand::Loop { .. } => "construct loop".into(),
            ConstructCommand::Witt { .. } => "construct witt".into(),
            ConstructCommand::KacMoody { .. } => "construct kac-moody".into(),
            ConstructCommand::Semidirect { .. } => "construct semidirect".into(),
            ConstructCommand::CentralExt { .. } => "construct central-ext".into(),
        },
        Command::Verify { id } => format!("verify {id}"),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let mut budget = Budget::default();
    if let Some(steps) = cli.budget {
        budget.max_pair_reductions = steps;
    }
    let ctx = Context {
        window: cli.window,
        degree_bound: cli.degree_bound,
        budget,
        seed: cli.seed.unwrap_or(DEFAULT_SEED),
        json: cli.json,
        timing: cli.timing,
        command: command_name(&cli.command),
    };
    match &cli.command {
        Command::Algebra {
            command: AlgebraCommand::Check { algebra },
        } => algebra_check(&ctx, algebra).map(|_| 0),
        Command::Cpa { command } => cpa_command(&ctx, command),
        Command::Cohomology {
            command: CohomologyCommand::H2 { algebra },
        } => cohomology_h2(&ctx, algebra).map(|_| 0),
        Command::Construct { command } => construct(&ctx, command).map(|_| 0),
        Command::Verify { id } => verify(&ctx, id),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
