//! Command-line interface: `gb`, `check` and `reduce`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::algebra::{Polynomial, RingContext};
use crate::engine::{f45, EngineError, RunConfig, Termination};
use crate::io::{format_polynomial, parse_system, stats_to_json, SystemDocument};
use crate::oracle::{dehomogenize, homogenize, interreduce, is_groebner};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DEGREE_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "f45", version, about = "Gröbner bases over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a Gröbner basis of the system in FILE.
    Gb(GbArgs),
    /// Exit 0 iff the polynomials in FILE form a Gröbner basis.
    Check { file: PathBuf },
    /// Print the interreduction of the polynomials in FILE.
    Reduce { file: PathBuf },
}

#[derive(Debug, Args)]
struct GbArgs {
    file: PathBuf,
    /// Interreduce the output.
    #[arg(long)]
    reduce: bool,
    /// Check the output with the reference implementation.
    #[arg(long)]
    verify: bool,
    /// Track module representations and check admissibility.
    #[arg(long)]
    certify: bool,
    /// Stop before any degree above D.
    #[arg(long, value_name = "D")]
    max_degree: Option<u32>,
    /// Homogenize inputs with a fresh trailing variable.
    #[arg(long)]
    homogenize: bool,
    /// Write statistics as JSON.
    #[arg(long, value_name = "PATH")]
    stats: Option<PathBuf>,
    /// Write the event trace.
    #[arg(long, value_name = "PATH")]
    trace: Option<PathBuf>,
}

struct Failure(i32);

type Outcome = Result<i32, Failure>;

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Gb(args) => gb(&args, out, err),
        Command::Check { file } => check(&file, out, err),
        Command::Reduce { file } => reduce(&file, out, err),
    };
    result.unwrap_or_else(|Failure(code)| code)
}

macro_rules! fail {
    ($err:expr, $code:expr, $($fmt:tt)*) => {{
        let _ = writeln!($err, $($fmt)*);
        return Err(Failure($code));
    }};
}

fn load(path: &Path, err: &mut dyn Write) -> Result<(SystemDocument, Vec<usize>), Failure> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => fail!(
            err,
            EXIT_INPUT,
            "error: cannot read {}: {e}",
            path.display()
        ),
    };
    let mut doc = match parse_system(&text) {
        Ok(d) => d,
        Err(e) => fail!(err, EXIT_INPUT, "error: {}:{e}", path.display()),
    };
    let mut dropped = Vec::new();
    let mut kept = Vec::new();
    let mut lines = Vec::new();
    for (f, line) in doc.polynomials.drain(..).zip(&doc.lines) {
        if f.is_zero() {
            dropped.push(*line);
        } else {
            kept.push(f);
            lines.push(*line);
        }
    }
    for line in &dropped {
        let _ = writeln!(
            err,
            "warning: {}:{line}: dropping zero polynomial",
            path.display()
        );
    }
    doc.polynomials = kept;
    doc.lines = lines.clone();
    Ok((doc, lines))
}

fn write_lines(
    out: &mut dyn Write,
    polys: &[Polynomial],
    ctx: &RingContext,
) -> Result<(), Failure> {
    for f in polys {
        if writeln!(out, "{}", format_polynomial(f, ctx)).is_err() {
            return Err(Failure(EXIT_INPUT));
        }
    }
    Ok(())
}

fn fresh_variable(ctx: &RingContext) -> String {
    std::iter::once("h".to_string())
        .chain((0..).map(|i| format!("h{i}")))
        .find(|name| ctx.variable_index(name).is_none())
        .expect("unbounded candidates")
}

fn gb(args: &GbArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (doc, lines) = load(&args.file, err)?;
    let path = args.file.display();
    if doc.polynomials.is_empty() {
        fail!(err, EXIT_INPUT, "error: {path}: no nonzero polynomials");
    }
    let (ring, inputs) = if args.homogenize {
        let ring = doc
            .ring
            .with_extra_variable(&fresh_variable(&doc.ring))
            .expect("fresh name");
        let inputs: Vec<Polynomial> = doc
            .polynomials
            .iter()
            .map(|f| homogenize(f, &ring))
            .collect();
        (ring, inputs)
    } else {
        if let Some(i) = doc.polynomials.iter().position(|f| !f.is_homogeneous()) {
            fail!(
                err,
                EXIT_INPUT,
                "error: {path}:{}: polynomial is not homogeneous (try --homogenize)",
                lines[i]
            );
        }
        (doc.ring.clone(), doc.polynomials.clone())
    };
    let cfg = RunConfig {
        max_degree: args.max_degree,
        certify: args.certify,
        emit_trace: args.trace.is_some(),
    };
    let result = match f45(&inputs, &ring, cfg) {
        Ok(r) => r,
        Err(EngineError::NotHomogeneous(i)) => {
            fail!(
                err,
                EXIT_INPUT,
                "error: {path}:{}: polynomial is not homogeneous",
                lines[i]
            )
        }
        Err(e) => fail!(err, EXIT_INPUT, "error: {e}"),
    };

    if let Some(stats_path) = &args.stats {
        if let Err(e) = fs::write(stats_path, stats_to_json(&result.stats) + "\n") {
            fail!(
                err,
                EXIT_INPUT,
                "error: cannot write {}: {e}",
                stats_path.display()
            );
        }
    }
    if let Some(trace_path) = &args.trace {
        let mut text = String::new();
        for event in &result.trace {
            text.push_str(&event.render(&ring));
            text.push('\n');
        }
        if let Err(e) = fs::write(trace_path, text) {
            fail!(
                err,
                EXIT_INPUT,
                "error: cannot write {}: {e}",
                trace_path.display()
            );
        }
    }

    let mut basis = result.basis.clone();
    if args.reduce {
        basis = interreduce(&basis, &ring).into_vec();
    }
    if args.homogenize {
        let _ = writeln!(
            out,
            "# dehomogenized output; not necessarily a Gröbner basis"
        );
        let shown: Vec<Polynomial> = basis.iter().map(|f| dehomogenize(f, &doc.ring)).collect();
        write_lines(out, &shown, &doc.ring)?;
    } else {
        write_lines(out, &basis, &ring)?;
    }

    let mut code = EXIT_OK;
    if let Termination::DegreeCap(d) = result.terminated_by {
        let _ = writeln!(err, "warning: stopped before degree {d}; output is partial");
        code = EXIT_DEGREE_CAP;
    }
    if let Some(violations) = &result.violations {
        if !violations.is_empty() {
            for v in violations {
                let _ = writeln!(err, "certify: entry {}: {:?}", v.entry, v.kind);
            }
            code = EXIT_FALSE;
        }
    }
    if args.verify {
        if code == EXIT_DEGREE_CAP {
            let _ = writeln!(err, "verify: skipped for a partial basis");
        } else if !is_groebner(&result.basis, &ring) {
            let _ = writeln!(err, "verify: output is not a Gröbner basis");
            code = EXIT_FALSE;
        }
    }
    Ok(code)
}

fn check(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (doc, _) = load(path, err)?;
    let ok = is_groebner(&doc.polynomials, &doc.ring);
    let _ = writeln!(out, "{ok}");
    Ok(if ok { EXIT_OK } else { EXIT_FALSE })
}

fn reduce(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (doc, _) = load(path, err)?;
    write_lines(
        out,
        interreduce(&doc.polynomials, &doc.ring).polynomials(),
        &doc.ring,
    )?;
    Ok(EXIT_OK)
}
