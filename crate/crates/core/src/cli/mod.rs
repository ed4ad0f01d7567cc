//! The `qcrel` command line. [`run`] parses arguments, writes to stdout and
//! returns the process exit code: 0 success, 1 property failure, 2 bad
//! input, 3 search cap exceeded.

mod report;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use report::{fmt_complex, fmt_real, CheckLine, Report, Timing, SCHEMA};

use crate::classrel::{enumerate_classical_relations, ClassicalRelation, DEFAULT_CAP};
use crate::comp::{build_pair, ComplementaryPair};
use crate::error::QcrelError;
use crate::fourier::{
    character_orthogonality_check, convolution_theorem_error, fourier_matrix, fourier_transform, inverse_fourier,
    GroupFunction, TOL,
};
use crate::group::{FiniteAbelianGroup, GroupHomTable};
use crate::qcalg::{dj_run, grouphomid_run, grover_run, is_balanced_rel, is_constant_rel};
use crate::relcore::Rel;
use crate::text::{parse_group, parse_groupoid, parse_rel, parse_uniform, parse_vector};
use crate::verify::{run_suites, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qcrel", version, about = "Quantum algorithms in sets and relations, and abelian Fourier checks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every classical relation between two groupoids.
    Enumerate {
        /// Domain groupoid, e.g. Z2+Z2.
        domain: String,
        /// Codomain groupoid.
        codomain: String,
        /// Largest search space, as a number of candidate pairs (2^cap relations).
        #[arg(long, env = "QCREL_CAP", default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Deutsch-Jozsa on a classical relation.
    Dj(AlgArgs),
    /// Single-shot Grover search.
    Grover {
        #[command(flatten)]
        alg: AlgArgs,
        /// Measurement state of the target used as input.
        #[arg(long, default_value_t = 1)]
        sigma: usize,
    },
    /// Group homomorphism identification in relations.
    Homid {
        #[command(flatten)]
        alg: AlgArgs,
        /// Measurement state of the source; all when omitted.
        #[arg(long)]
        rho: Option<usize>,
        /// Input state of the target; all when omitted.
        #[arg(long)]
        sigma: Option<usize>,
    },
    /// Fourier matrix, transform or numeric checks for a finite abelian group.
    Fourier {
        /// Group, e.g. Z2xZ4.
        group: String,
        #[command(flatten)]
        mode: FourierMode,
    },
    /// Run the built-in verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Corrupt one input per suite; the run must then fail.
        #[arg(long, hide = true)]
        inject_mutation: bool,
    },
}

#[derive(Args, Debug)]
struct AlgArgs {
    /// Source system as copies of one group, e.g. Z2+Z2.
    #[arg(long, default_value = "Z2+Z2")]
    system: String,
    /// Target system; defaults to the source.
    #[arg(long)]
    target: Option<String>,
    /// Relation literal such as {(0,0),(1,1)}.
    #[arg(long, conflicts_with = "index")]
    relation: Option<String>,
    /// Position in the sorted list of classical relations.
    #[arg(long)]
    index: Option<usize>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct FourierMode {
    /// Print the Fourier matrix.
    #[arg(long)]
    matrix: bool,
    /// Transform a comma-separated vector of values.
    #[arg(long, allow_hyphen_values = true)]
    transform: Option<String>,
    /// Run the numeric invariants.
    #[arg(long)]
    check_all: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Rel,
    Groupoid,
    Comp,
    Classrel,
    Qcalg,
    Fourier,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Rel => vec![Suite::Rel],
            SuiteArg::Groupoid => vec![Suite::Groupoid],
            SuiteArg::Comp => vec![Suite::Comp],
            SuiteArg::Classrel => vec![Suite::Classrel],
            SuiteArg::Qcalg => vec![Suite::Qcalg],
            SuiteArg::Fourier => vec![Suite::Fourier],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

/// A finished command: its report, the table rendering and the exit code.
pub struct Output {
    pub report: Report,
    pub table: String,
    pub code: i32,
}

pub fn exit_code(e: &QcrelError) -> i32 {
    match e {
        QcrelError::CapExceeded { .. } => EXIT_CAP,
        QcrelError::PromiseViolation(_) => EXIT_FAILURE,
        _ => EXIT_INPUT,
    }
}

/// Runs the command line and prints to stdout and stderr.
pub fn run(args: impl IntoIterator<Item = OsString>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with(args: impl IntoIterator<Item = OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let start = Instant::now();
    match execute(&cli.command) {
        Ok(mut o) => {
            o.report.timing.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            let text = match cli.format {
                Format::Table => o.table,
                Format::Json => o.report.to_json() + "\n",
            };
            let _ = out.write_all(text.as_bytes());
            o.code
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.format == Format::Json {
                let mut r = Report::new(command_name(&cli.command));
                r.ok = false;
                r.results = json!({ "error": e.to_string(), "exit_code": code });
                r.timing.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
                let _ = out.write_all((r.to_json() + "\n").as_bytes());
            }
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

/// Convenience for tests and examples: `(exit code, stdout, stderr)`.
pub fn run_capture<I, S>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<OsString>,
{
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(args.into_iter().map(Into::into), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Enumerate { .. } => "enumerate",
        Command::Dj(_) => "dj",
        Command::Grover { .. } => "grover",
        Command::Homid { .. } => "homid",
        Command::Fourier { .. } => "fourier",
        Command::Verify { .. } => "verify",
    }
}

fn execute(c: &Command) -> crate::Result<Output> {
    match c {
        Command::Enumerate { domain, codomain, cap } => cmd_enumerate(domain, codomain, *cap),
        Command::Dj(a) => cmd_dj(a),
        Command::Grover { alg, sigma } => cmd_grover(alg, *sigma),
        Command::Homid { alg, rho, sigma } => cmd_homid(alg, *rho, *sigma),
        Command::Fourier { group, mode } => cmd_fourier(group, mode),
        Command::Verify { suite, inject_mutation } => Ok(cmd_verify(*suite, *inject_mutation)),
    }
}

fn finish(report: Report, table: String) -> Output {
    let code = if report.ok { EXIT_OK } else { EXIT_FAILURE };
    Output { report, table, code }
}

fn cmd_enumerate(domain: &str, codomain: &str, cap: usize) -> crate::Result<Output> {
    let (za, zb) = (parse_groupoid(domain)?, parse_groupoid(codomain)?);
    let rels = enumerate_classical_relations(&za, &zb, cap)?;
    let lines: Vec<String> = rels.iter().map(|f| f.rel().to_string()).collect();
    let mut r = Report::new("enumerate");
    r.input("domain", za.to_string());
    r.input("codomain", zb.to_string());
    r.input("cap", cap);
    r.results = json!({ "count": lines.len(), "relations": lines });
    let table = lines.iter().map(|l| format!("{l}\n")).collect();
    Ok(finish(r, table))
}

struct Systems {
    a: ComplementaryPair,
    b: ComplementaryPair,
}

fn systems(args: &AlgArgs) -> crate::Result<Systems> {
    let pair = |spec: &str| -> crate::Result<ComplementaryPair> {
        let (g, k) = parse_uniform(spec)?;
        Ok(build_pair(&g, &FiniteAbelianGroup::cyclic(k)))
    };
    let a = pair(&args.system)?;
    let b = pair(args.target.as_deref().unwrap_or(&args.system))?;
    Ok(Systems { a, b })
}

/// The relation named by `--relation` or `--index`, without a classicality check.
fn chosen_rel(args: &AlgArgs, s: &Systems) -> crate::Result<Rel> {
    match (&args.relation, args.index) {
        (Some(lit), _) => parse_rel(lit, s.a.carrier_size(), s.b.carrier_size()),
        (None, Some(i)) => {
            let all = enumerate_classical_relations(&s.a.x, &s.b.x, DEFAULT_CAP)?;
            let n = all.len();
            all.into_iter()
                .nth(i)
                .map(|f| f.rel().clone())
                .ok_or_else(|| QcrelError::Parse(format!("index {i} out of range: {n} classical relations")))
        }
        (None, None) => Err(QcrelError::Parse("give --relation or --index".into())),
    }
}

fn classical(args: &AlgArgs, s: &Systems) -> crate::Result<ClassicalRelation> {
    ClassicalRelation::new(chosen_rel(args, s)?, &s.a.x, &s.b.x)
}

fn alg_inputs(r: &mut Report, args: &AlgArgs, s: &Systems, f: &Rel) {
    r.input("system", s.a.x.to_string());
    r.input("target", s.b.x.to_string());
    r.input("relation", f.to_string());
    if let Some(i) = args.index {
        r.input("index", i);
    }
}

fn states_of(p: &ComplementaryPair) -> Vec<String> {
    p.z.classical_states().iter().map(|s| s.to_string()).collect()
}

fn cmd_dj(args: &AlgArgs) -> crate::Result<Output> {
    let s = systems(args)?;
    let f = classical(args, &s)?;
    let out = dj_run(&f, &s.a, &s.b)?;
    let constant = is_constant_rel(&f);
    let balanced = is_balanced_rel(&f, &s.a, &s.b)?;
    let class = match (constant, balanced) {
        (true, false) => "CONSTANT",
        (false, true) => "BALANCED",
        (true, true) => "CONSTANT+BALANCED",
        (false, false) => "NEITHER",
    };
    let scalar = out.scalar.is_one() as u8;
    let mut r = Report::new("dj");
    alg_inputs(&mut r, args, &s, f.rel());
    r.results = json!({
        "class": class,
        "scalar": scalar,
        "output_state": out.output_state.to_string(),
        "composite": out.composite.to_string(),
    });
    if constant != balanced {
        r.check("scalar matches the class", out.scalar.is_one() == constant, false, format!("scalar={scalar}"));
    }
    let table = report::kv_table(&[
        ("result".into(), format!("{class}, scalar={scalar}")),
        ("relation".into(), f.rel().to_string()),
        ("output state".into(), out.output_state.to_string()),
        ("composite".into(), out.composite.to_string()),
    ]) + &check_lines(&r);
    Ok(finish(r, table))
}

fn cmd_grover(args: &AlgArgs, sigma: usize) -> crate::Result<Output> {
    let s = systems(args)?;
    let f = chosen_rel(args, &s)?;
    let out = grover_run(&f, &s.a, &s.b, sigma)?;
    let states = states_of(&s.a);
    let possible: Vec<String> = out.possible_states().iter().map(|&k| states[k].clone()).collect();
    let mut r = Report::new("grover");
    alg_inputs(&mut r, args, &s, &f);
    r.input("sigma", sigma);
    r.results = json!({
        "possible_outcomes": possible,
        "output_state": out.outcome.output_state.to_string(),
        "diffusion": out.diffusion.to_string(),
        "diffusion_is_bijection": out.diffusion_is_bijection,
        "f_is_classical": out.f_is_classical,
        "zero_condition": out.zero_condition.iter().map(|z| json!({
            "state": states[z.rho],
            "possible": z.possible,
            "condition_equal": z.condition_holds,
        })).collect::<Vec<_>>(),
    });
    for z in &out.zero_condition {
        r.check(
            format!("zero condition for {}", states[z.rho]),
            z.agrees(),
            true,
            format!("possible={} condition_equal={}", z.possible, z.condition_holds),
        );
    }
    let mut rows = vec![
        ("possible outcomes".to_string(), if possible.is_empty() { "none".into() } else { possible.join(" ") }),
        ("relation".into(), f.to_string()),
        ("diffusion".into(), out.diffusion.to_string()),
    ];
    if !out.diffusion_is_bijection {
        rows.push(("warning".into(), "diffusion is not a bijection".into()));
    }
    if !out.f_is_classical {
        rows.push(("note".into(), "relation is not classical".into()));
    }
    let table = report::kv_table(&rows) + &check_lines(&r);
    Ok(finish(r, table))
}

fn cmd_homid(args: &AlgArgs, rho: Option<usize>, sigma: Option<usize>) -> crate::Result<Output> {
    let s = systems(args)?;
    let f = classical(args, &s)?;
    let (ns, nt) = (s.a.z.num_components(), s.b.z.num_components());
    let rhos: Vec<usize> = rho.map_or((0..ns).collect(), |r| vec![r]);
    let sigmas: Vec<usize> = sigma.map_or((0..nt).collect(), |x| vec![x]);
    let (src, tgt) = (states_of(&s.a), states_of(&s.b));
    let mut r = Report::new("homid");
    alg_inputs(&mut r, args, &s, f.rel());
    let mut rows = Vec::new();
    let mut runs = Vec::new();
    let mut reached = vec![false; ns];
    for &x in &rhos {
        for &y in &sigmas {
            let out = grouphomid_run(&f, &s.a, &s.b, x, y)?;
            reached[x] |= out.outcome.scalar.is_one();
            r.check(format!("full = simplified for rho={x} sigma={y}"), out.agrees, false, "");
            rows.push((
                format!("rho={} sigma={}", src[x], tgt[y]),
                if out.outcome.scalar.is_one() { "possible".to_string() } else { "impossible".to_string() },
            ));
            runs.push(json!({
                "rho": src[x],
                "sigma": tgt[y],
                "possible": out.outcome.scalar.is_one(),
                "composite": out.outcome.composite.to_string(),
                "agrees_with_simplified": out.agrees,
            }));
        }
    }
    let all = rhos.iter().all(|&x| reached[x]);
    r.results = json!({ "runs": runs, "all_states_possible": all });
    if all {
        rows.push(("summary".into(), "all classical states possible".into()));
    }
    let table = report::kv_table(&rows) + &check_lines(&r);
    Ok(finish(r, table))
}

fn cmd_fourier(group: &str, mode: &FourierMode) -> crate::Result<Output> {
    let g = parse_group(group)?;
    let n = g.order();
    let mut r = Report::new("fourier");
    r.input("group", g.to_string());
    let table;
    if mode.matrix {
        r.input("mode", "matrix");
        let m = fourier_matrix(&g, &GroupHomTable::identity(&g))?;
        let rows: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| fmt_complex(m[(i, j)])).collect()).collect();
        let values: Vec<Vec<Value>> =
            (0..n).map(|i| (0..n).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect()).collect();
        r.results = json!({ "matrix": values });
        table = rows.iter().map(|row| row.join(" ") + "\n").collect();
    } else if let Some(v) = &mode.transform {
        r.input("mode", "transform");
        r.input("vector", v.as_str());
        let f = GroupFunction::new(&g, parse_vector(v)?)?;
        let t = fourier_transform(&f);
        r.results = json!({ "transform": t.values.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>() });
        table = t.values.iter().map(|&z| fmt_complex(z) + "\n").collect();
    } else {
        r.input("mode", "check-all");
        let errors = fourier_checks(&g);
        for (name, e) in &errors {
            r.check(*name, *e < TOL, false, format!("{e:.3e}"));
        }
        r.results = Value::Object(errors.iter().map(|(k, e)| (k.to_string(), json!(e))).collect());
        table = r
            .checks
            .iter()
            .map(|c| format!("{} {:<28} max error {}\n", report::status(c), c.name, c.detail))
            .collect();
    }
    Ok(finish(r, table))
}

/// Worst errors of the numeric invariants on deterministic inputs.
fn fourier_checks(g: &FiniteAbelianGroup) -> Vec<(&'static str, f64)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let n = g.order();
    let mut random = || {
        let v = (0..n).map(|_| num_complex::Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        GroupFunction::new(g, v).expect("length matches")
    };
    let (mut inv, mut conv) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let (f, h) = (random(), random());
        inv = inv.max(inverse_fourier(&fourier_transform(&f)).max_abs_diff(&f));
        conv = conv.max(convolution_theorem_error(&f, &h).expect("same group"));
    }
    let m = fourier_matrix(g, &GroupHomTable::identity(g)).expect("identity is an isomorphism");
    vec![
        ("inversion", inv),
        ("convolution", conv),
        ("orthogonality", character_orthogonality_check(g)),
        ("unitarity", m.scale(1.0 / (n as f64).sqrt()).unitarity_error()),
    ]
}

fn cmd_verify(suite: SuiteArg, mutate: bool) -> Output {
    let reports = run_suites(&suite.suites(), mutate);
    let mut r = Report::new("verify");
    r.input("suite", format!("{suite:?}").to_lowercase());
    let mut table = String::new();
    let mut summary = Vec::new();
    for s in &reports {
        for c in &s.checks {
            r.check(format!("{}: {}", s.suite, c.name), c.passed, c.informational, c.detail.clone());
        }
        let (p, f, i) = s.counts();
        summary.push(json!({ "suite": s.suite.name(), "passed": p, "failed": f, "informational": i, "elapsed_ms": s.elapsed_ms }));
        table += &format!("[{}] {p} passed, {f} failed, {i} informational\n", s.suite);
        for c in &s.checks {
            let line = CheckLine { name: c.name.clone(), passed: c.passed, informational: c.informational, detail: String::new() };
            table += &format!("  {} {}\n", report::status(&line), c.name);
        }
    }
    r.results = json!({ "suites": summary });
    finish(r, table)
}

fn check_lines(r: &Report) -> String {
    r.checks
        .iter()
        .map(|c| {
            if c.detail.is_empty() {
                format!("{} {}\n", report::status(c), c.name)
            } else {
                format!("{} {} ({})\n", report::status(c), c.name, c.detail)
            }
        })
        .collect()
}
