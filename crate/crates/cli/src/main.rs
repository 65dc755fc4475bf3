use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qbic_core::cohom::{self, direct_table};
use qbic_core::fano::{self, Line};
use qbic_core::gf::{prime_power, Field};
use qbic_core::invariants::surface_invariants;
use qbic_core::io::{matrix_codes, parse_form, FormDescriptor};
use qbic_core::qbic::{QBicForm, QBicType};
use qbic_core::repro::{self, lines_json, points_json, BudgetLevel, ReproOptions, Suite};
use qbic_core::reps::{lambda_split, simple_dim, theorem_dims};

#[derive(Parser)]
#[command(name = "qbic", version, about = "Computations with q-bic forms, their lines and cohomology tables")]
struct Cli {
    /// Order of the base field (default q^2).
    #[arg(long, global = true)]
    field: Option<u64>,
    /// The power q of the characteristic defining the form.
    #[arg(long, global = true)]
    q: Option<u64>,
    /// Write JSON output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct FormArgs {
    /// JSON form file: {"q": {p, e}, "field": {p, e, modulus}, "gram": [[codes]]}.
    #[arg(long, conflicts_with = "type_spec")]
    gram: Option<PathBuf>,
    /// Normal form type such as "1^3+N2".
    #[arg(long = "type", value_name = "SPEC")]
    type_spec: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BudgetArg {
    Small,
    Large,
}

impl From<BudgetArg> for BudgetLevel {
    fn from(b: BudgetArg) -> Self {
        match b {
            BudgetArg::Small => BudgetLevel::Small,
            BudgetArg::Large => BudgetLevel::Large,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Counts,
    Invariants,
    Cohomology,
    Reps,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Counts => Suite::Counts,
            SuiteArg::Invariants => Suite::Invariants,
            SuiteArg::Cohomology => Suite::Cohomology,
            SuiteArg::Reps => Suite::Reps,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TableModeArg {
    Direct,
    Formula,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a form given as a Gram file or a normal-form type.
    Classify(FormArgs),
    /// Print the normal form of a type as a form file.
    NormalForm {
        #[arg(long = "type", value_name = "SPEC")]
        type_spec: String,
    },
    /// Numerical invariants of the Fano surface.
    Invariants,
    /// Lines on the hypersurface of a form.
    Lines {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, value_enum, default_value = "small")]
        budget: BudgetArg,
    },
    /// Hermitian points of a nonsingular form.
    Hermitian(FormArgs),
    /// Intersection divisor of a line with a plane curve.
    Divisor {
        /// JSON curve file; defaults to x0^q x1 + x0 x1^q + x2^(q+1).
        #[arg(long)]
        gram: Option<PathBuf>,
        /// Two points spanning the line, as codes: "u0,u1,u2;w0,w1,w2".
        #[arg(long)]
        line: String,
    },
    /// Graded dimensions of H^0(C, F).
    FTable {
        #[arg(long, value_enum, default_value = "direct")]
        mode: TableModeArg,
    },
    /// Representation-theoretic tables.
    Reps {
        #[command(subcommand)]
        command: RepsCommand,
    },
    /// Matrix of the Frobenius action on H^(n-1)(X, O_X).
    FrobeniusAction(FormArgs),
    /// Recompute the recorded values and compare.
    Reproduce {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value = "small")]
        budget: BudgetArg,
        /// Omit runtimes so that reports are byte-identical across runs.
        #[arg(long)]
        no_timing: bool,
        /// Print a plain-text summary to stderr as well.
        #[arg(long)]
        summary: bool,
    },
}

#[derive(Subcommand)]
enum RepsCommand {
    /// Simple module dimensions and the graded table for a prime p.
    Table {
        #[arg(long)]
        p: u64,
    },
}

// Input and usage errors exit with 2, mismatches in a report with 1.
fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring thread pool")?;
    }
    let (value, ok) = dispatch(cli)?;
    let text = serde_json::to_string_pretty(&value)?;
    match &cli.out {
        Some(path) => fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = writeln!(out, "{text}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn require_q(cli: &Cli) -> Result<u64> {
    let q = cli.q.ok_or_else(|| anyhow!("--q is required"))?;
    prime_power(q).ok_or_else(|| anyhow!("q = {q} is not a prime power"))?;
    Ok(q)
}

fn field_for(cli: &Cli, q: u64) -> Result<Field> {
    let order = cli.field.unwrap_or(q * q);
    Ok(Field::of_order(order)?)
}

fn load_form(cli: &Cli, args: &FormArgs) -> Result<QBicForm> {
    match (&args.gram, &args.type_spec) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok(parse_form(&text)?)
        }
        (None, Some(spec)) => {
            let t: QBicType = spec.parse().map_err(|e| anyhow!("{e}"))?;
            let q = require_q(cli)?;
            Ok(QBicForm::normal_form(&t, q, &field_for(cli, q)?)?)
        }
        (None, None) => bail!("one of --gram or --type is required"),
    }
}

fn type_json(t: &QBicType) -> Value {
    let b: serde_json::Map<String, Value> = t.b.iter().map(|(m, k)| (m.to_string(), json!(k))).collect();
    json!({
        "type": t.to_string(),
        "a": t.a,
        "b": b,
        "corank": t.corank(),
        "radical_dim": t.radical_dim(),
        "nonsingular": t.is_nonsingular(),
    })
}

fn parse_codes(field: &Field, s: &str) -> Result<Vec<qbic_core::gf::FieldElement>> {
    s.split(',')
        .map(|c| {
            let code: u32 = c.trim().parse().with_context(|| format!("bad element code `{c}`"))?;
            field.from_code(code).ok_or_else(|| anyhow!("code {code} is not in {field:?}"))
        })
        .collect()
}

fn dispatch(cli: &Cli) -> Result<(Value, bool)> {
    Ok(match &cli.command {
        Command::Classify(args) => {
            let form = load_form(cli, args)?;
            (type_json(&form.classify()?), true)
        }
        Command::NormalForm { type_spec } => {
            let t: QBicType = type_spec.parse().map_err(|e| anyhow!("{e}"))?;
            let q = require_q(cli)?;
            let form = QBicForm::normal_form(&t, q, &field_for(cli, q)?)?;
            (serde_json::to_value(FormDescriptor::of(&form))?, true)
        }
        Command::Invariants => (serde_json::to_value(surface_invariants(require_q(cli)?)?)?, true),
        Command::Lines { form, budget } => {
            let form = load_form(cli, form)?;
            let lines = fano::fano_lines(&form, &BudgetLevel::from(*budget).budget())?;
            (json!({"count": lines.len(), "lines": lines_json(&lines)}), true)
        }
        Command::Hermitian(args) => {
            let form = load_form(cli, args)?;
            let pts = form.hermitian_points()?;
            (json!({"count": pts.len(), "points": points_json(&pts)}), true)
        }
        Command::Divisor { gram, line } => {
            let curve = match gram {
                Some(path) => parse_form(&fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)?,
                None => {
                    let q = require_q(cli)?;
                    fano::nodal_curve_form(q, &field_for(cli, q)?)?
                }
            };
            let f = curve.field().clone();
            let (u, w) = line.split_once(';').ok_or_else(|| anyhow!("--line needs two points separated by `;`"))?;
            let l = Line::through(&f, &parse_codes(&f, u)?, &parse_codes(&f, w)?)
                .ok_or_else(|| anyhow!("the two points do not span a line"))?;
            let div = fano::line_curve_divisor(&curve, &l)?;
            let pts: Vec<Value> = div
                .points
                .iter()
                .map(|(p, m)| json!({"point": p.coords().iter().map(|x| x.code()).collect::<Vec<_>>(), "multiplicity": m}))
                .collect();
            (json!({"degree": div.degree(), "points": pts, "residual_degree": div.residual_degree}), true)
        }
        Command::FTable { mode } => {
            let q = require_q(cli)?;
            let table = match mode {
                TableModeArg::Direct => direct_table(q)?,
                TableModeArg::Formula => theorem_dims(q)?,
            };
            (serde_json::to_value(table)?, true)
        }
        Command::Reps { command: RepsCommand::Table { p } } => {
            let p = *p;
            let table = theorem_dims(p)?;
            let mut simples = Vec::new();
            for a in 0..p as i64 {
                for b in 0..p as i64 {
                    simples.push(json!({"a": a, "b": b, "dim": simple_dim(a, b, p)?}));
                }
            }
            let (l1, l2) = lambda_split(p)?;
            let f_table: Vec<u64> = table.entries.iter().map(|e| e.1).collect();
            (json!({"p": p, "simples": simples, "f_table": f_table, "lambda": [l1, l2], "total": table.total()}), true)
        }
        Command::FrobeniusAction(args) => {
            let form = load_form(cli, args)?;
            let m = cohom::frobenius_action_on_x(&form)?;
            (json!({"rows": m.rows(), "cols": m.cols(), "zero": m.is_zero(), "entries": matrix_codes(&m)}), true)
        }
        Command::Reproduce { suite, budget, no_timing, summary } => {
            let opts = ReproOptions { suite: (*suite).into(), budget: (*budget).into(), seed: cli.seed, timing: !no_timing };
            let report = repro::reproduce(&opts);
            if *summary {
                eprint!("{}", report.summary());
            }
            let ok = report.is_ok();
            (serde_json::to_value(&report)?, ok)
        }
    })
}
