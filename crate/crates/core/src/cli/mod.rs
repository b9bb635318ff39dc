//! Command-line front end.

mod cache;
mod input;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cayley::{check_even_coeff_props, delta_power, omega_power, PowerExpansion};
use crate::coeff::{coeff_a, coeff_b, Method};
use crate::combinatorics::{enumerate_tables, fundamental_table, Form, Kind, WeightTuple};
use crate::duality::{check_duality, check_isomorphism, coeff_matrix_with, MatrixKind};
use crate::expansion::{Expansion, Space};
use crate::hwv::{delta_expansion_with, eval_unit, nabla_expansion_with, tensor_oracle, DEFAULT_DENSE_BUDGET};
use crate::kronecker::kron;
use crate::latin::{alon_tarsi, count_latin, latin_csv};
use crate::relations::{check_relations, kernel_dimension, RelationForm, RelationOptions, Side};
use crate::report::Report;
use crate::Error;

pub use cache::{cache_key, Cache, CacheEntry, VERSION_TAG};
pub use input::{parse_table, parse_weight};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Budget(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget { .. } => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

const INPUT_HELP: &str = "\
Weights: --weight takes a file, inline JSON such as {\"m\":4,\"partitions\":[[2,2],[2,2],[2,2]]},
or the shorthand 2,2|2,2|2,2 (rows separated by '|').
Tables: --table takes a file, inline JSON such as {\"d\":2,\"m\":2,\"rows\":[[1,2],[1,2]]},
or the shorthand 12/12 (rows separated by '/', letters separated by commas when any exceeds 9).
Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget exceeded.
The KRONHWV_CACHE environment variable overrides --cache-dir.";

#[derive(Parser, Debug)]
#[command(name = "kronhwv", version, about = "Highest weight vectors, Kronecker coefficients and Alon-Tarsi numbers", after_help = INPUT_HELP)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Weight tuple: file, inline JSON or shorthand
    #[arg(long, global = true)]
    weight: Option<String>,
    /// Table: file, inline JSON or shorthand
    #[arg(long, global = true)]
    table: Option<String>,
    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// On a cache hit, recompute and compare
    #[arg(long, global = true)]
    verify_cache: bool,
    /// oracle|fillings|auto for coefficients, char|rank for kron
    #[arg(long, global = true)]
    method: Option<String>,
    /// Size cap for the dense tensor oracle
    #[arg(long, global = true, default_value_t = DEFAULT_DENSE_BUDGET)]
    budget: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormArg {
    Lex,
    Lattice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Natural,
    ZeroOne,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the tables of a weight
    Tables {
        #[arg(long, value_enum, default_value_t = FormArg::Lex)]
        form: FormArg,
        #[arg(long, value_enum, default_value_t = KindArg::Natural)]
        kind: KindArg,
    },
    /// a(T,S) with T = --table, S = --with; or b(S,T) with S = --table, T = --with
    Coeff {
        #[arg(value_enum)]
        which: Which,
        #[arg(long)]
        with: String,
    },
    /// Expansion of Δ_T for T = --table
    Delta {
        /// Use the dense tensor oracle over n letters
        #[arg(long)]
        dense: Option<usize>,
    },
    /// Expansion of ∇_S for S = --table
    Nabla {
        #[arg(long)]
        dense: Option<usize>,
    },
    /// Kronecker coefficient of --weight
    Kron,
    /// Rank of a coefficient matrix; --format csv exports the matrix
    Rank {
        #[arg(long, value_enum, default_value_t = Which::A)]
        matrix: Which,
    },
    /// Alon-Tarsi number of --table, or of [k]^d
    At {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Latin hypercube counts on --table with --n values, or on [k]^d
    Latin {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Δ_T evaluated at the unit tensor of size n
    EvalUnit {
        #[arg(long)]
        n: usize,
    },
    /// Run a verification report
    #[command(subcommand)]
    Verify(Verify),
    /// Powers of the Cayley form and the first hyperdeterminant
    #[command(subcommand)]
    Cayley(Cayley),
}

#[derive(Args, Debug, Clone)]
struct Sweep {
    /// Sweep all weight tuples with this many rows
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 1)]
    min_m: usize,
    #[arg(long)]
    max_m: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Verify {
    Duality(Sweep),
    Relations {
        #[command(flatten)]
        sweep: Sweep,
        /// All raising indices i < j instead of adjacent ones
        #[arg(long)]
        all_pairs: bool,
        /// Unweighted sum over the boundary tables
        #[arg(long)]
        unit: bool,
    },
    Kernel {
        #[command(flatten)]
        sweep: Sweep,
        #[arg(long)]
        all_pairs: bool,
    },
    Isomorphism(Sweep),
    Omega {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        /// Default: every power up to k^(d-1)
        #[arg(long)]
        power: Option<usize>,
    },
    Hyperdet {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        power: Option<usize>,
    },
    Evenprops {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Cayley {
    Omega {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        power: usize,
    },
    Delta {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        power: usize,
    },
}

/// Result of a command: the text to print and whether it is a pass.
#[derive(Debug)]
struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, pass: true }
    }

    fn scalar(x: impl std::fmt::Display) -> Outcome {
        Outcome::ok(format!("{x}\n"))
    }

    fn json(v: &Value, pass: bool) -> Outcome {
        Outcome { text: format!("{v}\n"), pass }
    }

    fn report(r: &Report) -> Outcome {
        Outcome { text: format!("{}\n", serde_json::to_string_pretty(&r.to_json()).expect("json")), pass: r.pass }
    }
}

type Run = Box<dyn FnOnce() -> Result<Outcome, CliError>>;

struct Job {
    op: String,
    inputs: Value,
    run: Run,
}

fn csv_field(s: &str) -> String {
    if s.contains(',') {
        format!("\"{s}\"")
    } else {
        s.to_string()
    }
}

fn expansion_outcome(e: &Expansion, format: Format) -> Outcome {
    match format {
        Format::Json => Outcome::json(&e.to_json(), true),
        Format::Csv => {
            let mut s = String::from("index,coeff\n");
            for (x, c) in e.terms() {
                s += &format!("{},{c}\n", csv_field(&x.to_string()));
            }
            Outcome::ok(s)
        }
    }
}

fn power_outcome(p: PowerExpansion, format: Format) -> Outcome {
    if p.report.pass {
        expansion_outcome(&p.expansion, format)
    } else {
        Outcome::report(&p.report)
    }
}

fn coeff_method(m: &Option<String>) -> Result<Method, CliError> {
    match m {
        None => Ok(Method::Auto),
        Some(s) => s.parse().map_err(|_| CliError::Usage(format!("unknown coefficient method {s:?}"))),
    }
}

fn need<T>(x: Option<T>, flag: &str) -> Result<T, CliError> {
    x.ok_or_else(|| CliError::Usage(format!("missing {flag}")))
}

fn weights(g: &Global, s: &Sweep) -> Result<Vec<WeightTuple>, CliError> {
    match (&g.weight, s.d) {
        (Some(w), None) => Ok(vec![parse_weight(w)?]),
        (None, Some(d)) => {
            if d == 0 {
                return Err(CliError::Usage("--d must be positive".into()));
            }
            let max = need(s.max_m, "--max-m")?;
            Ok((s.min_m..=max).flat_map(|m| WeightTuple::all(d, m)).collect())
        }
        _ => Err(CliError::Usage("give exactly one of --weight or --d/--max-m".into())),
    }
}

fn sweep_inputs(ws: &[WeightTuple]) -> Value {
    Value::Array(ws.iter().map(|w| json!(w)).collect())
}

fn sweep_report(claim: &str, ws: Vec<WeightTuple>, check: impl Fn(&WeightTuple) -> Report) -> Report {
    let mut r = Report::new(claim);
    for w in &ws {
        r.absorb(check(w));
    }
    r.finish()
}

fn reject_csv(format: Format, what: &str) -> Result<(), CliError> {
    match format {
        Format::Csv => Err(CliError::Usage(format!("{what} has no CSV form"))),
        Format::Json => Ok(()),
    }
}

fn plan(g: &Global, command: Command) -> Result<Job, CliError> {
    let format = g.format;
    let fmt = match format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    let job = |op: &str, inputs: Value, run: Run| Job { op: op.to_string(), inputs, run };
    Ok(match command {
        Command::Tables { form, kind } => {
            let w = parse_weight(&need(g.weight.clone(), "--weight")?)?;
            let form = match form {
                FormArg::Lex => Form::Lex,
                FormArg::Lattice => Form::Lattice,
            };
            let kind = match kind {
                KindArg::Natural => Kind::Natural,
                KindArg::ZeroOne => Kind::ZeroOne,
            };
            let inputs = json!({"weight": w, "form": format!("{form:?}"), "kind": format!("{kind:?}"), "format": fmt});
            job("tables", inputs, Box::new(move || {
                let ts = enumerate_tables(&w, kind, form);
                Ok(match format {
                    Format::Json => Outcome::json(&json!(ts), true),
                    Format::Csv => {
                        let mut s = String::from("index\n");
                        for t in &ts {
                            s += &format!("{}\n", csv_field(&t.to_string()));
                        }
                        Outcome::ok(s)
                    }
                })
            }))
        }
        Command::Coeff { which, with } => {
            let x = parse_table(&need(g.table.clone(), "--table")?)?;
            let y = parse_table(&with)?;
            let method = coeff_method(&g.method)?;
            let inputs = json!({"which": format!("{which:?}"), "table": x, "with": y});
            job("coeff", inputs, Box::new(move || {
                let v = match which {
                    Which::A => {
                        if x.d() != y.d() || x.m() != y.m() {
                            return Err(CliError::Usage("tables must have the same shape".into()));
                        }
                        coeff_a(&x, &y, method)
                    }
                    Which::B => coeff_b(&x, &y, method)?,
                };
                Ok(Outcome::scalar(v))
            }))
        }
        Command::Delta { dense } => expansion_job(g, Space::Sym, dense)?,
        Command::Nabla { dense } => expansion_job(g, Space::Alt, dense)?,
        Command::Kron => {
            let w = parse_weight(&need(g.weight.clone(), "--weight")?)?;
            let by_rank = match g.method.as_deref() {
                None | Some("char") => false,
                Some("rank") => true,
                Some(other) => return Err(CliError::Usage(format!("kron method must be char or rank, not {other:?}"))),
            };
            if by_rank && !w.is_partition_tuple() {
                return Err(CliError::Usage("the rank method needs a tuple of partitions".into()));
            }
            let inputs = json!({"weight": w, "rank": by_rank});
            job("kron", inputs, Box::new(move || {
                Ok(if by_rank {
                    Outcome::scalar(coeff_matrix_with(&w, MatrixKind::A, Method::Auto).rank())
                } else {
                    Outcome::scalar(kron(&w))
                })
            }))
        }
        Command::Rank { matrix } => {
            let w = parse_weight(&need(g.weight.clone(), "--weight")?)?;
            if !w.is_partition_tuple() {
                return Err(CliError::Usage("coefficient matrices need a tuple of partitions".into()));
            }
            let method = coeff_method(&g.method)?;
            let kind = match matrix {
                Which::A => MatrixKind::A,
                Which::B => MatrixKind::B,
            };
            let inputs = json!({"weight": w, "matrix": format!("{matrix:?}"), "format": fmt});
            job("rank", inputs, Box::new(move || {
                let m = coeff_matrix_with(&w, kind, method);
                Ok(match format {
                    Format::Json => Outcome::scalar(m.rank()),
                    Format::Csv => Outcome::ok(m.to_csv()),
                })
            }))
        }
        Command::At { d, k } => {
            let t = match (&g.table, d, k) {
                (Some(t), None, None) => parse_table(t)?,
                (None, Some(d), Some(k)) if d > 0 && k > 0 => fundamental_table(d, k),
                _ => return Err(CliError::Usage("give --table, or positive --d and --k".into())),
            };
            let inputs = json!({"table": t});
            job("at", inputs, Box::new(move || {
                if t.d() == 0 || t.m() == 0 {
                    return Err(CliError::Usage("empty table".into()));
                }
                Ok(Outcome::scalar(alon_tarsi(&t)?))
            }))
        }
        Command::Latin { d, k, n } => {
            let (t, n) = match (&g.table, d, k, n) {
                (Some(t), None, None, Some(n)) => (parse_table(t)?, n),
                (None, Some(d), Some(k), None) if d > 0 && k > 0 => (fundamental_table(d, k), k.pow(d as u32 - 1)),
                _ => return Err(CliError::Usage("give --table with --n, or positive --d and --k".into())),
            };
            let inputs = json!({"table": t, "n": n, "format": fmt});
            job("latin", inputs, Box::new(move || {
                Ok(match format {
                    Format::Json => {
                        let (count, signed) = count_latin(&t, n)?;
                        Outcome::json(&json!({"count": count.to_string(), "signed": signed.to_string()}), true)
                    }
                    Format::Csv => Outcome::ok(latin_csv(&t, n)?),
                })
            }))
        }
        Command::EvalUnit { n } => {
            let t = parse_table(&need(g.table.clone(), "--table")?)?;
            let inputs = json!({"table": t, "n": n});
            job("eval-unit", inputs, Box::new(move || Ok(Outcome::scalar(eval_unit(&t, n)))))
        }
        Command::Verify(v) => {
            reject_csv(format, "a report")?;
            verify_job(g, v)?
        }
        Command::Cayley(c) => {
            let (op, d, k, n) = match c {
                Cayley::Omega { d, k, power } => ("cayley-omega", d, k, power),
                Cayley::Delta { d, k, power } => ("cayley-delta", d, k, power),
            };
            let inputs = json!({"d": d, "k": k, "power": n, "format": fmt});
            let omega = op == "cayley-omega";
            job(op, inputs, Box::new(move || {
                let p = if omega { omega_power(d, k, n)? } else { delta_power(d, k, n)? };
                Ok(power_outcome(p, format))
            }))
        }
    })
}

fn expansion_job(g: &Global, space: Space, dense: Option<usize>) -> Result<Job, CliError> {
    let t = parse_table(&need(g.table.clone(), "--table")?)?;
    let method = coeff_method(&g.method)?;
    let format = g.format;
    let budget = g.budget;
    let op = match space {
        Space::Sym => "delta",
        Space::Alt => "nabla",
    };
    let fmt = if format == Format::Csv { "csv" } else { "json" };
    let inputs = json!({"table": t, "dense": dense, "format": fmt});
    let run: Run = Box::new(move || {
        let e = match (dense, space) {
            (Some(n), _) => tensor_oracle(&t, space, n, budget)?,
            (None, Space::Sym) => delta_expansion_with(&t, method),
            (None, Space::Alt) => nabla_expansion_with(&t, method),
        };
        Ok(expansion_outcome(&e, format))
    });
    Ok(Job { op: op.to_string(), inputs, run })
}

fn verify_job(g: &Global, v: Verify) -> Result<Job, CliError> {
    let job = |op: &str, inputs: Value, run: Run| Ok(Job { op: op.to_string(), inputs, run });
    match v {
        Verify::Duality(s) => {
            let ws = weights(g, &s)?;
            let inputs = sweep_inputs(&ws);
            job("verify-duality", inputs, Box::new(move || {
                Ok(Outcome::report(&sweep_report("duality", ws, check_duality)))
            }))
        }
        Verify::Isomorphism(s) => {
            let ws = weights(g, &s)?;
            let inputs = sweep_inputs(&ws);
            job("verify-isomorphism", inputs, Box::new(move || {
                Ok(Outcome::report(&sweep_report("isomorphism", ws, check_isomorphism)))
            }))
        }
        Verify::Relations { sweep, all_pairs, unit } => {
            let ws = weights(g, &sweep)?;
            let form = if unit { RelationForm::Unit } else { RelationForm::Weighted };
            let opts = RelationOptions { all_pairs, form };
            let inputs = json!({"weights": sweep_inputs(&ws), "all_pairs": all_pairs, "unit": unit});
            job("verify-relations", inputs, Box::new(move || {
                Ok(Outcome::report(&sweep_report("relations", ws, |w| check_relations(w, opts))))
            }))
        }
        Verify::Kernel { sweep, all_pairs } => {
            let ws = weights(g, &sweep)?;
            let opts = RelationOptions { all_pairs, ..Default::default() };
            let inputs = json!({"weights": sweep_inputs(&ws), "all_pairs": all_pairs});
            job("verify-kernel", inputs, Box::new(move || {
                Ok(Outcome::report(&sweep_report("kernel dimension", ws, |w| {
                    let mut r = Report::new(format!("{w}"));
                    r.absorb(kernel_dimension(w, Side::Sym, opts));
                    r.absorb(kernel_dimension(w, Side::Alt, opts));
                    r.finish()
                })))
            }))
        }
        Verify::Omega { d, k, power } => {
            let powers = power_range(d, k, power)?;
            let inputs = json!({"d": d, "k": k, "powers": powers});
            job("verify-omega", inputs, Box::new(move || {
                let mut r = Report::new(format!("omega powers d={d} k={k}"));
                for n in powers {
                    r.absorb(omega_power(d, k, n)?.report);
                }
                Ok(Outcome::report(&r.finish()))
            }))
        }
        Verify::Hyperdet { d, k, power } => {
            let powers = power_range(d, k, power)?;
            let inputs = json!({"d": d, "k": k, "powers": powers});
            job("verify-hyperdet", inputs, Box::new(move || {
                let mut r = Report::new(format!("hyperdeterminant powers d={d} k={k}"));
                for n in powers {
                    r.absorb(delta_power(d, k, n)?.report);
                }
                Ok(Outcome::report(&r.finish()))
            }))
        }
        Verify::Evenprops { d, c, k } => {
            let inputs = json!({"d": d, "c": c, "k": k});
            job("verify-evenprops", inputs, Box::new(move || Ok(Outcome::report(&check_even_coeff_props(d, c, k)?))))
        }
    }
}

fn power_range(d: usize, k: usize, power: Option<usize>) -> Result<Vec<usize>, CliError> {
    if d == 0 || k == 0 {
        return Err(CliError::Usage("--d and --k must be positive".into()));
    }
    Ok(match power {
        Some(n) => vec![n],
        None => (1..=k.pow(d as u32 - 1)).collect(),
    })
}

fn cache_dir(g: &Global) -> Option<PathBuf> {
    match std::env::var_os("KRONHWV_CACHE") {
        Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
        _ => g.cache_dir.clone(),
    }
}

fn execute(g: &Global, job: Job) -> Result<Outcome, CliError> {
    let cache = match cache_dir(g) {
        Some(dir) => match Cache::open(&dir) {
            Ok(c) => Some(c),
            Err(e) => {
                eprintln!("warning: cache disabled, cannot open {}: {e}", dir.display());
                None
            }
        },
        None => None,
    };
    let key = cache_key(&job.op, &job.inputs);
    if let Some(hit) = cache.as_ref().and_then(|c| c.get(&key)) {
        if !g.verify_cache {
            return Ok(Outcome { text: hit.output, pass: hit.pass });
        }
        let fresh = (job.run)()?;
        if fresh.text != hit.output || fresh.pass != hit.pass {
            eprintln!("cache entry {key} differs from recomputation");
            return Ok(Outcome { text: fresh.text, pass: false });
        }
        return Ok(fresh);
    }
    let out = (job.run)()?;
    if let Some(c) = &cache {
        if let Err(e) = c.put(&key, &out.text, out.pass) {
            eprintln!("warning: cache write failed: {e}");
        }
    }
    Ok(out)
}

/// Runs the command line and returns the process exit code.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.global.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return EXIT_USAGE;
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let start = Instant::now();
    let result = plan(&cli.global, cli.command).and_then(|job| execute(&cli.global, job));
    let code = match result {
        Ok(out) => {
            let written = match &cli.global.out {
                Some(p) => std::fs::write(p, &out.text).map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => {
                    let mut stdout = std::io::stdout().lock();
                    match stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()) {
                        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(format!("cannot write output: {e}")),
                        _ => Ok(()),
                    }
                }
            };
            match written {
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_USAGE
                }
                Ok(()) if out.pass => EXIT_OK,
                Ok(()) => EXIT_VIOLATION,
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("error: {msg}");
            EXIT_BUDGET
        }
    };
    eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    code
}
