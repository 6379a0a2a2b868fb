//! The `nekbound` command line.
//!
//! Exit codes: 0 success, 2 input or usage error, 3 unknown built-in name,
//! 4 a bound fell below the exact norm.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::best_bound;
use crate::classify::{Classification, DEFAULT_GUDKOV_LIMIT};
use crate::io::{builtin, read_matrix_file, Format, InputError, NamedMatrix};
use crate::report::{bounds_text, classification_text, paper_table, paper_table_text, Report};
use crate::sweep::{run_sweep, SOUNDNESS_REL_SLACK};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNKNOWN_BUILTIN: i32 = 3;
pub const EXIT_UNSOUND: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "nekbound",
    version,
    about = "Classify matrices by diagonal dominance and bound the infinity norm of their inverse"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// SDD / Nekrasov / H-matrix / Gudkov verdicts with per-row margins
    Classify(InputArgs),
    /// Varah and Nekrasov bounds on the inverse's infinity norm
    Bound(InputArgs),
    /// Classification, bounds and the exact norm together
    Report(InputArgs),
    /// Bounds and exact norms for the built-in matrices A1..A6
    PaperTable {
        #[arg(long, value_enum, default_value_t = Output::Table)]
        output: Output,
    },
    /// Check both Nekrasov bounds on random Nekrasov matrices
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Matrix file (.mtx or .csv) or built-in name A1..A6
    input: String,
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    format: FormatArg,
    #[arg(long, value_enum, default_value_t = Output::Table)]
    output: Output,
    /// Also compute the exact norm with the LU oracle
    #[arg(long)]
    exact: bool,
    /// Largest order for which every permutation is tried
    #[arg(long, default_value_t = DEFAULT_GUDKOV_LIMIT,
          value_parser = positive)]
    gudkov_limit: usize,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 100,
          value_parser = positive)]
    count: usize,
    #[arg(long, default_value_t = 6,
          value_parser = positive)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Output::Table)]
    output: Output,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".to_string()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Auto,
    #[value(alias = "matrix-market")]
    Mm,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Auto => Format::Auto,
            FormatArg::Mm => Format::MatrixMarket,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Table,
    Json,
}

/// A path that exists is read as a file. Otherwise anything that looks like
/// a path (has an extension or a separator) is a missing file, and the rest
/// is looked up among the built-ins.
pub fn resolve_input(input: &str, format: Format) -> Result<NamedMatrix, InputError> {
    let path = Path::new(input);
    let looks_like_path = path.extension().is_some() || input.contains(['/', '\\']);
    if path.exists() || looks_like_path {
        read_matrix_file(path, format)
    } else {
        builtin(input)
    }
}

fn input_exit_code(e: &InputError) -> i32 {
    match e {
        InputError::UnknownName(_) => EXIT_UNKNOWN_BUILTIN,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Classify(args) => cmd_input(&args, Mode::Classify, out, err),
        Command::Bound(args) => cmd_input(&args, Mode::Bound, out, err),
        Command::Report(args) => cmd_input(&args, Mode::Report, out, err),
        Command::PaperTable { output } => cmd_paper_table(output, out),
        Command::Sweep(args) => cmd_sweep(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "nekbound: {e}");
            EXIT_INPUT
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Classify,
    Bound,
    Report,
}

fn cmd_input(
    args: &InputArgs,
    mode: Mode,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let input = match resolve_input(&args.input, args.format.into()) {
        Ok(m) => m,
        Err(e) => {
            writeln!(err, "nekbound: {e}")?;
            return Ok(input_exit_code(&e));
        }
    };
    let a = &input.matrix;
    let class = Classification::of(a, args.gudkov_limit);
    let mut bounds = best_bound(a);
    let mut code = EXIT_OK;
    if args.exact || mode == Mode::Report {
        match bounds.with_exact(a) {
            Ok(b) => bounds = b,
            Err(e) => writeln!(err, "nekbound: exact norm unavailable: {e}")?,
        }
        let bad = bounds.violations(SOUNDNESS_REL_SLACK);
        if !bad.is_empty() {
            writeln!(
                err,
                "nekbound: soundness violation: {} below exact norm",
                bad.join(", ")
            )?;
            code = EXIT_UNSOUND;
        }
    }

    match args.output {
        Output::Json => {
            let report = Report::new(&input, &class, &bounds, mode != Mode::Bound);
            writeln!(out, "{}", report.to_json())?;
        }
        Output::Table => {
            let n = a.order();
            match mode {
                Mode::Classify => {
                    write!(out, "{}", classification_text(&input.name, &class))?;
                }
                Mode::Bound => write!(out, "{}", bounds_text(&input.name, n, &bounds))?,
                Mode::Report => {
                    write!(out, "{}", classification_text(&input.name, &class))?;
                    writeln!(out)?;
                    write!(out, "{}", bounds_text(&input.name, n, &bounds))?;
                }
            }
        }
    }
    Ok(code)
}

fn cmd_paper_table(output: Output, out: &mut dyn Write) -> std::io::Result<i32> {
    let rows = paper_table();
    match output {
        Output::Table => write!(out, "{}", paper_table_text(&rows))?,
        Output::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&rows).expect("rows serialize")
        )?,
    }
    Ok(EXIT_OK)
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> std::io::Result<i32> {
    let summary = run_sweep(args.count, args.n, args.seed);
    match args.output {
        Output::Table => write!(out, "{}", summary.to_text())?,
        Output::Json => writeln!(out, "{}", summary.to_json())?,
    }
    Ok(if summary.violations > 0 {
        EXIT_UNSOUND
    } else {
        EXIT_OK
    })
}
