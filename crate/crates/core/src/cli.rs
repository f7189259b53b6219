//! The `lyu` command line.
//!
//! Exit status: 0 success, 1 usage or parse error, 2 budget exceeded,
//! 3 a property check or verification failed.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::compose::{verify_composition, CompositionMode};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::io::{read_input, Input, Parsed};
use crate::lyubeznik::{check_lambda_consecutiveness, check_lambda_invariants, lyubeznik_table};
use crate::monomial::MonomialIdeal;
use crate::report::Violation;
use crate::resolution::{betti_table, hochster_betti, koszul_betti, BettiTable, Engine};
use crate::simplicial::SimplicialComplex;
use crate::strands::{check_nu_consecutiveness, check_nu_invariants, nu_and_betti, NuOptions, NuTable, RankMode};
use crate::verify::{run_corpus, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "lyu", version, about = "Betti, ν- and Lyubeznik tables of monomial ideals")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Field characteristic: 0 for QQ or a prime p.
    #[arg(long = "char", global = true, default_value_t = 0, value_name = "0|p")]
    pub characteristic: u64,
    #[arg(long, global = true, value_enum, default_value_t = RankModeArg::Exact)]
    pub rank_mode: RankModeArg,
    /// Seed for randomized rank mode (required there, rejected otherwise).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Evaluation trials per matrix in randomized mode.
    #[arg(long, global = true, default_value_t = 3)]
    pub trials: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Append the structural checks; exit 3 if any fails.
    #[arg(long, global = true)]
    pub check: bool,
    /// Compute (betti) or cross-check (nu, lyubeznik) Betti numbers with an oracle.
    #[arg(long, global = true, value_enum, default_value_t = Oracle::None)]
    pub oracle: Oracle,
    /// Replace the complex by its k-fold barycentric subdivision.
    #[arg(long, global = true, default_value_t = 0, value_name = "k")]
    pub subdivide: usize,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = EngineArg::Auto)]
    pub engine: EngineArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graded Betti table of an ideal (or of the Stanley-Reisner ideal of a complex).
    Betti {
        /// Path, or inline JSON / multi-line text.
        input: String,
        /// Include multigraded Betti numbers in JSON output.
        #[arg(long)]
        multigraded: bool,
    },
    /// ν-table of an ideal.
    Nu {
        input: String,
        /// Use the Alexander dual of the (squarefree) input instead.
        #[arg(long)]
        dual: bool,
    },
    /// Lyubeznik table of R/I, or of R/I_Δ for a complex.
    Lyubeznik { input: String },
    /// Run the property battery over a built-in corpus.
    Verify {
        /// n5-exhaustive, paper-examples or random-compositions.
        corpus: String,
        /// Corrupt one table entry to confirm the harness reports it.
        #[arg(long)]
        inject_fault: bool,
        /// Also compare exact and randomized ν-tables (uses --seed, default 1).
        #[arg(long)]
        rank_modes: bool,
        /// Also compare tables of each complex and its subdivision.
        #[arg(long)]
        subdivision: bool,
        /// Random pairs per kind in random-compositions.
        #[arg(long, default_value_t = 100)]
        pairs: usize,
    },
    /// Compare a composition's table with its prediction from the factors.
    Compose {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value_t = ComposeMode::Intersection)]
        mode: ComposeMode,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RankModeArg {
    Exact,
    Randomized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Hochster,
    Koszul,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Auto,
    Taylor,
    Lattice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComposeMode {
    /// ν-table of IT + JT.
    Sum,
    /// Lyubeznik table of T/(IT ∩ JT).
    Intersection,
}

/// What a run produced: the exit status and the two output streams.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse `args` (including the program name) and run.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code, stderr: text, ..Default::default() }
            } else {
                Outcome { code, stdout: text, ..Default::default() }
            }
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Internal(_) => EXIT_VIOLATION,
        _ => EXIT_USAGE,
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let mut out = Outcome::default();
    if let Err(e) = dispatch(cli, &mut out) {
        out.code = exit_code(&e);
        let _ = writeln!(out.stderr, "error: {e}");
    }
    out
}

struct Context {
    field: FieldSpec,
    opts: NuOptions,
}

/// `verify` also uses the seed for its random corpus, so it may be given in
/// exact mode there.
fn context(c: &Common, seed_drives_corpus: bool) -> Result<Context> {
    let field = FieldSpec::from_characteristic(c.characteristic)?;
    let rank_mode = match (c.rank_mode, c.seed) {
        (RankModeArg::Exact, None) => RankMode::Exact,
        (RankModeArg::Exact, Some(_)) if seed_drives_corpus => RankMode::Exact,
        (RankModeArg::Randomized, Some(seed)) => RankMode::Randomized { seed, trials: c.trials },
        (RankModeArg::Exact, Some(_)) => {
            return Err(Error::InvalidInput("--seed only applies to --rank-mode randomized".into()))
        }
        (RankModeArg::Randomized, None) => {
            return Err(Error::InvalidInput("--rank-mode randomized requires --seed".into()))
        }
    };
    if c.trials == 0 {
        return Err(Error::InvalidInput("--trials must be at least 1".into()));
    }
    if let Some(t) = c.threads {
        // a second initialization (only possible in-process) keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let engine = match c.engine {
        EngineArg::Auto => Engine::Auto,
        EngineArg::Taylor => Engine::Taylor,
        EngineArg::Lattice => Engine::Lattice,
    };
    Ok(Context {
        field,
        opts: NuOptions {
            rank_mode,
            engine,
            budget: Budget::from_env()?,
        },
    })
}

fn load(arg: &str, out: &mut Outcome) -> Result<Input> {
    let Parsed { input, warnings } = read_input(arg)?;
    for w in warnings {
        let _ = writeln!(out.stderr, "warning: {w}");
    }
    Ok(input)
}

fn subdivide(c: SimplicialComplex, k: usize, budget: &Budget) -> Result<SimplicialComplex> {
    (0..k).try_fold(c, |c, _| c.barycentric_subdivision(budget.subdivision_vertices))
}

/// The ideal a command works on, after any requested subdivision.
fn ideal_of(input: Input, k: usize, budget: &Budget) -> Result<MonomialIdeal> {
    match input {
        Input::Ideal(i) if k == 0 => Ok(i),
        Input::Ideal(i) => MonomialIdeal::from_complex(&subdivide(i.to_complex()?, k, budget)?),
        Input::Complex(c) => MonomialIdeal::from_complex(&subdivide(c, k, budget)?),
    }
}

fn oracle_betti(o: Oracle, ideal: &MonomialIdeal, field: FieldSpec, budget: &Budget) -> Result<Option<BettiTable>> {
    match o {
        Oracle::None => Ok(None),
        Oracle::Hochster => hochster_betti(ideal, field, budget).map(Some),
        Oracle::Koszul => koszul_betti(ideal, field, budget).map(Some),
    }
}

fn oracle_violation(o: Oracle, oracle: &Option<BettiTable>, engine: &BettiTable) -> Vec<Violation> {
    match oracle {
        Some(t) if t != engine => vec![Violation::new(
            "oracle",
            format!("{o:?} oracle and resolution engine disagree"),
        )],
        _ => Vec::new(),
    }
}

fn emit(
    out: &mut Outcome,
    format: Format,
    check: Option<&[Violation]>,
    text: String,
    csv: String,
    mut json: Value,
) {
    match format {
        Format::Text => {
            out.stdout.push_str(&text);
            if let Some(vs) = check {
                if vs.is_empty() {
                    out.stdout.push_str("check: ok\n");
                }
                for v in vs {
                    let _ = writeln!(out.stdout, "violation: {v}");
                }
            }
        }
        Format::Csv => {
            out.stdout.push_str(&csv);
            if let Some(vs) = check {
                for v in vs {
                    let _ = writeln!(out.stderr, "violation: {v}");
                }
            }
        }
        Format::Json => {
            if let (Some(vs), Some(obj)) = (check, json.as_object_mut()) {
                obj.insert("check".into(), json!({ "ok": vs.is_empty(), "violations": vs }));
            }
            out.stdout.push_str(&json.to_string());
            out.stdout.push('\n');
        }
    }
    if check.is_some_and(|v| !v.is_empty()) {
        out.code = EXIT_VIOLATION;
    }
}

fn rank_summary(nu: &NuTable) -> Option<String> {
    if nu.rank_reports.is_empty() {
        return None;
    }
    let random: Vec<_> = nu.rank_reports.iter().filter(|r| r.failure_bound > 0.0).collect();
    let worst = random.iter().map(|r| r.failure_bound).fold(0.0, f64::max);
    let smallest = random.iter().map(|r| r.sample_size).fold(f64::INFINITY, f64::min);
    let mut s = format!(
        "# randomized ranks: {} matrices, {} with variable entries",
        nu.rank_reports.len(),
        random.len()
    );
    if !random.is_empty() {
        let _ = write!(s, ", sample size >= {smallest:.3e}, failure bound <= {worst:.3e} per matrix");
    }
    s.push('\n');
    Some(s)
}

fn with_rank_reports(mut json: Value, nu: &NuTable) -> Value {
    if !nu.rank_reports.is_empty() {
        if let Some(obj) = json.as_object_mut() {
            obj.insert("rank_reports".into(), serde_json::to_value(&nu.rank_reports).expect("serializable"));
        }
    }
    json
}

fn dispatch(cli: &Cli, out: &mut Outcome) -> Result<()> {
    let c = &cli.common;
    let ctx = context(c, matches!(cli.command, Command::Verify { .. }))?;
    let budget = ctx.opts.budget;
    match &cli.command {
        Command::Betti { input, multigraded } => {
            let ideal = ideal_of(load(input, out)?, c.subdivide, &budget)?;
            let oracle = oracle_betti(c.oracle, &ideal, ctx.field, &budget)?;
            let (table, violations) = match oracle {
                Some(t) if !c.check => (t, Vec::new()),
                oracle => {
                    let engine = betti_table(&ideal, ctx.field, ctx.opts.engine, &budget)?;
                    let mut vs = oracle_violation(c.oracle, &oracle, &engine);
                    if c.check && oracle.is_none() && ideal.is_squarefree() {
                        let h = hochster_betti(&ideal, ctx.field, &budget)?;
                        vs.extend(oracle_violation(Oracle::Hochster, &Some(h), &engine));
                    }
                    (engine, vs)
                }
            };
            emit(
                out,
                c.format,
                c.check.then_some(&violations[..]),
                table.render_text(),
                table.render_csv(),
                table.to_json(*multigraded),
            );
        }
        Command::Nu { input, dual } => {
            let mut ideal = ideal_of(load(input, out)?, c.subdivide, &budget)?;
            if *dual {
                ideal = ideal.dual_ideal()?;
            }
            let (nu, betti) = nu_and_betti(&ideal, ctx.field, &ctx.opts)?;
            let mut vs = Vec::new();
            if c.check {
                vs.extend(check_nu_invariants(&nu, &betti));
                vs.extend(check_nu_consecutiveness(&nu));
            }
            let oracle = oracle_betti(c.oracle, &ideal, ctx.field, &budget)?;
            vs.extend(oracle_violation(c.oracle, &oracle, &betti));
            let checked = c.check || oracle.is_some();
            let text = nu.render_text() + &rank_summary(&nu).unwrap_or_default();
            emit(out, c.format, checked.then_some(&vs[..]), text, nu.render_csv(), with_rank_reports(nu.to_json(), &nu));
        }
        Command::Lyubeznik { input } => {
            let input = load(input, out)?;
            let ideal = ideal_of(input, c.subdivide, &budget)?;
            let table = lyubeznik_table(&ideal, ctx.field, &ctx.opts)?;
            if table.radical_substituted {
                let _ = writeln!(out.stderr, "warning: input is not squarefree; using its radical");
            }
            let mut vs = Vec::new();
            if c.check {
                vs.extend(check_lambda_invariants(&table));
                vs.extend(check_lambda_consecutiveness(&table));
            }
            if c.oracle != Oracle::None {
                let dual = ideal.radical().dual_ideal()?;
                let engine = betti_table(&dual, ctx.field, ctx.opts.engine, &budget)?;
                let oracle = oracle_betti(c.oracle, &dual, ctx.field, &budget)?;
                vs.extend(oracle_violation(c.oracle, &oracle, &engine));
            }
            let checked = c.check || c.oracle != Oracle::None;
            emit(out, c.format, checked.then_some(&vs[..]), table.render_text(), table.render_csv(), table.to_json());
        }
        Command::Verify {
            corpus,
            inject_fault,
            rank_modes,
            subdivision,
            pairs,
        } => {
            let opts = VerifyOptions {
                nu: ctx.opts,
                oracles: true,
                rank_modes: rank_modes.then_some((c.seed.unwrap_or(1), c.trials)),
                subdivision: *subdivision,
                inject_fault: *inject_fault,
                random_pairs: *pairs,
                seed: c.seed.unwrap_or(1),
            };
            let report = run_corpus(corpus, &[ctx.field], &opts)?;
            match c.format {
                Format::Json => {
                    let mut v = serde_json::to_value(&report).expect("serializable");
                    v["status"] = json!(if report.passed() { "pass" } else { "fail" });
                    out.stdout = v.to_string() + "\n";
                }
                Format::Text | Format::Csv => out.stdout = report.render_text(),
            }
            if !report.passed() {
                out.code = EXIT_VIOLATION;
            }
        }
        Command::Compose { left, right, mode } => {
            let i = ideal_of(load(left, out)?, 0, &budget)?;
            let j = ideal_of(load(right, out)?, 0, &budget)?;
            let mode = match mode {
                ComposeMode::Sum => CompositionMode::SumNu,
                ComposeMode::Intersection => CompositionMode::IntersectionLambda,
            };
            let report = verify_composition(&i, &j, ctx.field, mode, &ctx.opts)?;
            let json = report.to_json();
            match c.format {
                Format::Json => out.stdout = json.to_string() + "\n",
                Format::Text | Format::Csv => {
                    let _ = writeln!(out.stdout, "{} ({:?} clause)", json["status"].as_str().unwrap_or(""), report.clause);
                    for m in &report.mismatches {
                        let _ = writeln!(out.stdout, "mismatch at ({}, {}): expected {}, actual {}", m.a, m.b, m.expected, m.actual);
                    }
                }
            }
            if !(report.matches && report.paths_agree) {
                out.code = EXIT_VIOLATION;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lyu(args: &[&str]) -> Outcome {
        run(std::iter::once("lyu").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(lyu(&["betti"]).code, EXIT_USAGE);
        assert_eq!(lyu(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(lyu(&["--char", "4", "betti", "{\"n\":2,\"gens\":[\"x1\"]}"]).code, EXIT_USAGE);
        assert_eq!(lyu(&["--rank-mode", "randomized", "nu", "{\"gens\":[\"x1\"]}"]).code, EXIT_USAGE);
        assert_eq!(lyu(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn koszul_table_of_two_variables() {
        let o = lyu(&["betti", "{\"n\":2,\"gens\":[\"x1\",\"x2\"]}"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(o.stdout, "       0 1\ntotal: 2 1\n    1: 2 1\n");
    }

    #[test]
    fn check_flag_reports() {
        let o = lyu(&["--check", "nu", "{\"gens\":[\"x1*x2\"]}"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.ends_with("check: ok\n"), "{}", o.stdout);
    }
}
