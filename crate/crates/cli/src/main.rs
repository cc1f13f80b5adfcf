//! Batch front end for the containment toolkit: deciders, reduction steps,
//! instance generators, and the randomized verification suites.
//!
//! Exit status is the interface: 0 means YES (or: every suite passed),
//! 1 means NO (or: a suite failed), 2 means a usage or input problem, and
//! 3 means a decision gave up because it would exceed its budget. Witnesses
//! of non-containment are printed when a decider finds a concrete one, so
//! reductions can be audited by tracing a witness across stages.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use linset_core::error::{Error, Result};
use linset_core::expr::UnionSumExpr;
use linset_core::harness::{self, SuiteReport};
use linset_core::limits::Limits;
use linset_core::linsets::{self, LinearSetDesc, PromiseContainmentInstance};
use linset_core::onedim::{self, OneDimLinearSet};
use linset_core::parse;
use linset_core::qbf::DnfFormula;
use linset_core::reduce;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "linset",
    version,
    about = "Containment deciders, reductions, and verification suites for linear sets and unary expressions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide containment between two described sets
    #[command(subcommand)]
    Decide(DecideCmd),
    /// Apply a reduction step (or the whole chain) and write its artifacts
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Generate a random instance file, deterministic in the seed
    #[command(subcommand)]
    Gen(GenCmd),
    /// Run a randomized verification suite and report pass/fail counts
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Encoding {
    /// Numbers cost their value
    Unary,
    /// Numbers cost their bit length
    Binary,
}

#[derive(Subcommand)]
enum DecideCmd {
    /// Language containment of two expression files
    Expr {
        lhs: PathBuf,
        rhs: PathBuf,
        /// Also print the instance size under this encoding
        #[arg(long)]
        encoding: Option<Encoding>,
    },
    /// Polynomial containment of two one-dimensional set files
    OnedimPoly {
        lhs: PathBuf,
        rhs: PathBuf,
        /// Also print the instance size under this encoding
        #[arg(long)]
        encoding: Option<Encoding>,
    },
    /// Reference oracle: check every value up to --bound directly
    OnedimBounded {
        lhs: PathBuf,
        rhs: PathBuf,
        /// Largest value to check
        #[arg(long, default_value_t = 200)]
        bound: u64,
        /// Also print the instance size under this encoding
        #[arg(long)]
        encoding: Option<Encoding>,
    },
    /// Bounded containment of the two sets in an instance file
    /// (coefficients up to --bound; an 's' line is read but not used here)
    MultidimBounded {
        instance: PathBuf,
        /// Largest coefficient tried on the left-hand side
        #[arg(long, default_value_t = 3)]
        bound: u64,
        /// Also print the instance size under this encoding
        #[arg(long)]
        encoding: Option<Encoding>,
    },
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Formula file -> two expression files plus a trace
    Qbf2expr {
        formula: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Expression pair -> promise containment instance plus a trace
    Expr2lin {
        lhs: PathBuf,
        rhs: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Promise instance -> two one-dimensional set files plus a trace
    Lin21d {
        instance: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Formula -> every stage's artifacts and a per-stage verdict report
    Chain {
        formula: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Coefficient bound for the linear-set stage's decision
        #[arg(long, default_value_t = 2)]
        coeff_bound: u64,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Random formula in two blocks of --n variables with --m monomials
    Dnf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Largest number of literals per monomial
        #[arg(long, default_value_t = 3)]
        max_literals: usize,
        #[arg(long)]
        seed: u64,
        /// Write here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random expression with --terms terms over dimension --dim
    Expr {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        terms: usize,
        #[arg(long)]
        seed: u64,
        /// Write here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random one-dimensional set with --k distinct periods up to --max-period
    Onedim {
        #[arg(long)]
        max_period: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        /// Write here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Which suite to run
    suite: SuiteKind,
    /// Number of random cases, or 'exhaustive' (onedim-oracle only)
    #[arg(long, default_value = "100")]
    count: String,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteKind {
    /// Aggregated diophantine systems keep their solution sets (2- and 3-row)
    Aggregation,
    /// Formula oracle vs containment of the encoded expressions
    #[value(name = "qbf-expr")]
    QbfExpr,
    /// Expression containment vs the linear-set encoding
    #[value(name = "expr-lin")]
    ExprLin,
    /// Promise instances vs their one-dimensional collapse
    #[value(name = "lin-1d")]
    Lin1d,
    /// Polynomial one-dimensional decider vs the bounded oracle
    #[value(name = "onedim-oracle")]
    OnedimOracle,
}

fn main() -> ExitCode {
    // Die quietly when the consumer hangs up (| head, | less), the way
    // other line-oriented tools do, instead of panicking on the write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 3 } else { 2 })
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Decide(kind) => cmd_decide(kind),
        Command::Reduce(step) => cmd_reduce(step),
        Command::Gen(kind) => cmd_gen(kind),
        Command::Verify(args) => cmd_verify(args),
    }
}

// ------------------------------------------------------------------- decide

fn cmd_decide(kind: DecideCmd) -> Result<ExitCode> {
    let limits = Limits::default();
    match kind {
        DecideCmd::Expr { lhs, rhs, encoding } => {
            let a = parse::parse_expr(&read(&lhs)?)?;
            let b = parse::parse_expr(&read(&rhs)?)?;
            print_size(encoding, expr_numbers(&a).chain(expr_numbers(&b)));
            match linset_core::expr::containment_counterexample(&a, &b, &limits)? {
                None => yes(),
                Some(w) => no(&format!("witness: {w}")),
            }
        }
        DecideCmd::OnedimPoly { lhs, rhs, encoding } => {
            let a = parse::parse_onedim(&read(&lhs)?)?;
            let b = parse::parse_onedim(&read(&rhs)?)?;
            print_size(encoding, onedim_numbers(&a).chain(onedim_numbers(&b)));
            match onedim::containment_1d_poly_witness(&a, &b, &limits)? {
                None => yes(),
                Some(w) => no(&format!("witness: {w}")),
            }
        }
        DecideCmd::OnedimBounded { lhs, rhs, bound, encoding } => {
            let a = parse::parse_onedim(&read(&lhs)?)?;
            let b = parse::parse_onedim(&read(&rhs)?)?;
            print_size(encoding, onedim_numbers(&a).chain(onedim_numbers(&b)));
            match onedim::containment_1d_bounded_witness(&a, &b, bound, &limits)? {
                None => yes(),
                Some(w) => no(&format!("witness: {w}")),
            }
        }
        DecideCmd::MultidimBounded { instance, bound, encoding } => {
            let (a, b, _s) = parse::parse_linset_instance(&read(&instance)?)?;
            print_size(encoding, linset_numbers(&a).chain(linset_numbers(&b)));
            match linsets::containment_bounded_witness(&a, &b, bound, &limits)? {
                None => yes(),
                Some(w) => {
                    let coeffs: Vec<String> =
                        w.coefficients.iter().map(|c| c.to_string()).collect();
                    println!("NO");
                    println!("witness coefficients: {}", coeffs.join(","));
                    println!("witness point: {}", w.point);
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}

fn yes() -> Result<ExitCode> {
    println!("YES");
    Ok(ExitCode::SUCCESS)
}

fn no(witness_line: &str) -> Result<ExitCode> {
    println!("NO");
    println!("{witness_line}");
    Ok(ExitCode::from(1))
}

fn print_size<'a>(encoding: Option<Encoding>, numbers: impl Iterator<Item = &'a BigUint>) {
    let Some(encoding) = encoding else { return };
    let (name, unary) = match encoding {
        Encoding::Unary => ("unary", true),
        Encoding::Binary => ("binary", false),
    };
    println!("instance size ({name}): {}", parse::encoded_size(numbers, unary));
}

fn expr_numbers(e: &UnionSumExpr) -> impl Iterator<Item = &BigUint> {
    e.terms()
        .iter()
        .flat_map(|(a, b)| a.entries().iter().chain(b.entries()))
}

fn onedim_numbers(s: &OneDimLinearSet) -> impl Iterator<Item = &BigUint> {
    std::iter::once(s.constant()).chain(s.periods())
}

fn linset_numbers(s: &LinearSetDesc) -> impl Iterator<Item = &BigUint> {
    s.constant()
        .entries()
        .iter()
        .chain(s.periods().iter().flat_map(|p| p.entries()))
}

// ------------------------------------------------------------------- reduce

fn cmd_reduce(step: ReduceCmd) -> Result<ExitCode> {
    match step {
        ReduceCmd::Qbf2expr { formula, out_dir } => {
            let f = parse::parse_dnf(&read(&formula)?)?;
            let (e1, e2) = reduce::reduce_qbf_to_expr(&f)?;
            let trace = format!(
                "formula: {} variables per block, {} monomials\n\
                 lhs expression: {} terms, dimension {}\n\
                 rhs expression: {} terms, dimension {}\n",
                f.vars_per_block(),
                f.monomials().len(),
                e1.term_count(),
                e1.dim(),
                e2.term_count(),
                e2.dim(),
            );
            write_artifact(&out_dir, "e1.expr", &parse::serialize_expr(&e1))?;
            write_artifact(&out_dir, "e2.expr", &parse::serialize_expr(&e2))?;
            write_artifact(&out_dir, "trace.txt", &trace)?;
            Ok(ExitCode::SUCCESS)
        }
        ReduceCmd::Expr2lin { lhs, rhs, out_dir } => {
            let a = parse::parse_expr(&read(&lhs)?)?;
            let b = parse::parse_expr(&read(&rhs)?)?;
            let red = reduce::reduce_expr_to_linear(&a, &b)?;
            let inst = &red.instance;
            let trace = format!(
                "instance dimension: {}\n\
                 terms after padding: {}\n\
                 lhs periods (choices): {}\n\
                 rhs periods (matches): {}\n\
                 rhs periods (slack): {}\n\
                 counter bound: {}\n",
                inst.lhs().dim(),
                red.padded_terms,
                red.choice_periods.len(),
                red.match_periods.len(),
                red.slack_periods.len(),
                red.counter_bound,
            );
            write_artifact(
                &out_dir,
                "instance.linset",
                &parse::serialize_linset_instance(inst.lhs(), inst.rhs(), Some(inst.s())),
            )?;
            write_artifact(&out_dir, "trace.txt", &trace)?;
            Ok(ExitCode::SUCCESS)
        }
        ReduceCmd::Lin21d { instance, out_dir } => {
            let (a, b, s) = parse::parse_linset_instance(&read(&instance)?)?;
            let Some(s) = s else {
                return Err(Error::invalid(
                    "this reduction needs the instance file to end with an 's <k>' line",
                ));
            };
            let inst = PromiseContainmentInstance::new(a, b, s)?;
            let red = reduce::reduce_multidim_to_1d(&inst)?;
            let trace = format!(
                "multipliers: {}\n\
                 aggregated rhs: {}\n\
                 scalar constant: {}\n\
                 lhs coefficients (zeros kept): {}\n\
                 rhs coefficients (zeros kept): {}\n",
                join_big(&red.multipliers),
                red.aggregated_rhs,
                red.scalar_constant,
                join_big(&red.lhs_coefficients),
                join_big(&red.rhs_coefficients),
            );
            write_artifact(&out_dir, "lhs.1d", &parse::serialize_onedim(&red.lhs))?;
            write_artifact(&out_dir, "rhs.1d", &parse::serialize_onedim(&red.rhs))?;
            write_artifact(&out_dir, "trace.txt", &trace)?;
            Ok(ExitCode::SUCCESS)
        }
        ReduceCmd::Chain { formula, out_dir, coeff_bound } => {
            let f = parse::parse_dnf(&read(&formula)?)?;
            let report = reduce::run_full_chain(&f, coeff_bound, &Limits::default())?;
            let (e1, e2) = &report.exprs;
            let inst = &report.to_linear.instance;
            write_artifact(&out_dir, "e1.expr", &parse::serialize_expr(e1))?;
            write_artifact(&out_dir, "e2.expr", &parse::serialize_expr(e2))?;
            write_artifact(
                &out_dir,
                "instance.linset",
                &parse::serialize_linset_instance(inst.lhs(), inst.rhs(), Some(inst.s())),
            )?;
            write_artifact(&out_dir, "lhs.1d", &parse::serialize_onedim(&report.to_onedim.lhs))?;
            write_artifact(&out_dir, "rhs.1d", &parse::serialize_onedim(&report.to_onedim.rhs))?;
            write_artifact(&out_dir, "report.txt", &report.render())?;
            print!("{}", report.render());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn join_big(values: &[BigUint]) -> String {
    let rendered: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    rendered.join(",")
}

// ---------------------------------------------------------------------- gen

fn cmd_gen(kind: GenCmd) -> Result<ExitCode> {
    match kind {
        GenCmd::Dnf { n, m, max_literals, seed, out } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = DnfFormula::random(n, m, max_literals, &mut rng)?;
            emit(out.as_deref(), &parse::serialize_dnf(&f))
        }
        GenCmd::Expr { dim, terms, seed, out } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let e = UnionSumExpr::random(dim, terms, &mut rng)?;
            emit(out.as_deref(), &parse::serialize_expr(&e))
        }
        GenCmd::Onedim { max_period, k, seed, out } => {
            if max_period == 0 || k == 0 {
                return Err(Error::invalid("--max-period and --k must be at least 1"));
            }
            if k as u64 > max_period {
                return Err(Error::invalid(format!(
                    "cannot pick {k} distinct periods from 1..={max_period}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let constant = rng.random_range(0..=max_period);
            let mut periods = BTreeSet::new();
            while periods.len() < k {
                periods.insert(rng.random_range(1..=max_period));
            }
            let set = OneDimLinearSet::from_u64s(
                constant,
                &periods.into_iter().collect::<Vec<u64>>(),
            )?;
            emit(out.as_deref(), &parse::serialize_onedim(&set))
        }
    }
}

fn emit(out: Option<&Path>, content: &str) -> Result<ExitCode> {
    match out {
        None => print!("{content}"),
        Some(path) => {
            fs::write(path, content)
                .map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
            println!("wrote {}", path.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ------------------------------------------------------------------- verify

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let reports = match (args.suite, parse_count(&args.count)?) {
        (SuiteKind::Aggregation, CountArg::N(n)) => vec![
            harness::suite_aggregation(n, args.seed, 2),
            harness::suite_aggregation((n / 2).max(1), args.seed.wrapping_add(1), 3),
        ],
        (SuiteKind::QbfExpr, CountArg::N(n)) => vec![harness::suite_qbf_expr(n, args.seed)],
        (SuiteKind::ExprLin, CountArg::N(n)) => vec![harness::suite_expr_lin(n, args.seed)],
        (SuiteKind::Lin1d, CountArg::N(n)) => vec![
            harness::suite_lin_1d(n, args.seed),
            harness::suite_aggregation_soundness(n, args.seed.wrapping_add(1)),
        ],
        (SuiteKind::OnedimOracle, CountArg::N(n)) => {
            vec![harness::suite_onedim_oracle_random(n, args.seed)]
        }
        (SuiteKind::OnedimOracle, CountArg::Exhaustive) => {
            vec![harness::suite_onedim_oracle_exhaustive()]
        }
        (_, CountArg::Exhaustive) => {
            return Err(Error::invalid(
                "only the onedim-oracle suite supports --count exhaustive",
            ))
        }
    };
    for report in &reports {
        println!("{}", report.summary());
    }
    Ok(if reports.iter().all(SuiteReport::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

enum CountArg {
    Exhaustive,
    N(usize),
}

fn parse_count(raw: &str) -> Result<CountArg> {
    if raw == "exhaustive" {
        return Ok(CountArg::Exhaustive);
    }
    match raw.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(CountArg::N(n)),
        _ => Err(Error::invalid(format!(
            "--count must be a positive integer or 'exhaustive', got '{raw}'"
        ))),
    }
}

// ------------------------------------------------------------------ file io

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
}

fn write_artifact(dir: &Path, name: &str, content: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| Error::invalid(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, content).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(path)
}
