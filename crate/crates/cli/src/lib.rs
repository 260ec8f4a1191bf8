//! `fermat-modsym`: modular symbols and homology of Fermat curves from the
//! command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 internal verification
//! failure. Documents go to stdout, diagnostics to stderr.

mod document;
mod symbol;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use fermat_core::homology::{action_on_homology, action_on_symbols, homology, Generator};
use fermat_core::lattice::IntMatrix;
use fermat_core::manin::{boundary, cusp_set, ManinError, Presentation, SymbolVector};
use fermat_core::verify::{verify, Fault};

pub use document::{Convention, OutputDocument};
pub use symbol::parse_symbol;

#[derive(Parser, Debug)]
#[command(name = "fermat-modsym", version, about = "Modular symbols for the Fermat groups Φ(n) and the homology of xⁿ + yⁿ = zⁿ")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Space {
    /// Manin symbols, free of rank n²+1
    Ms,
    /// Integral homology H₁ in the s-basis
    H1,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Gen {
    E0,
    E1,
    E0e1,
    Phi,
}

impl From<Gen> for Generator {
    fn from(g: Gen) -> Self {
        match g {
            Gen::E0 => Generator::E0,
            Gen::E1 => Generator::E1,
            Gen::E0e1 => Generator::E0E1,
            Gen::Phi => Generator::Phi,
        }
    }
}

fn level(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List a basis: the free symbol basis or the s-basis of H₁
    Basis {
        #[arg(long, value_parser = level)]
        n: usize,
        #[arg(long, value_enum, default_value = "ms")]
        space: Space,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Reduce a Manin symbol "i,j,k" (or x[i,j], y[i,j]) onto the free basis
    Reduce {
        #[arg(long, value_parser = level)]
        n: usize,
        #[arg(long)]
        symbol: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Boundary of a Manin symbol as a divisor on the 3n cusps
    Boundary {
        #[arg(long, value_parser = level)]
        n: usize,
        #[arg(long)]
        symbol: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The gamma-basis of H₁ as vectors on the free symbol basis
    Homology {
        #[arg(long, value_parser = level)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Matrix of an automorphism (e0, e1, e0e1 on H₁; phi on symbols)
    Action {
        #[arg(long, value_parser = level)]
        n: usize,
        #[arg(long, value_enum)]
        gen: Gen,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Monodromy of the Fermat-surface fibration, e0e1 on H₁
    Monodromy {
        #[arg(long, value_parser = level)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the invariant suite for n = 1…N
    Verify {
        #[arg(long = "n-max", value_parser = level)]
        n_max: usize,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<ManinError> for Failure {
    fn from(e: ManinError) -> Self {
        match e {
            ManinError::InvalidLevel(_) => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

impl From<fermat_core::homology::HomologyError> for Failure {
    fn from(e: fermat_core::homology::HomologyError) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(format!("write failed: {e}"))
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_fault(args, out, err, None)
}

/// As [`run`], with `verify` seeing a corrupted relation row.
pub fn run_with_fault<I, T>(
    args: I,
    out: &mut dyn Write,
    err: &mut dyn Write,
    fault: Option<Fault>,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(cli.command, out, fault) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            2
        }
    }
}

fn emit(doc: &OutputDocument, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    match format {
        Format::Json => out.write_all(doc.to_json().as_bytes())?,
        Format::Csv => out.write_all(doc.to_csv().as_bytes())?,
    }
    Ok(0)
}

fn matrix_payload(m: &IntMatrix) -> Vec<Vec<String>> {
    m.rows_iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn cusp_labels(n: usize) -> Vec<String> {
    cusp_set(n).iter().map(ToString::to_string).collect()
}

fn execute(cmd: Command, out: &mut dyn Write, fault: Option<Fault>) -> Result<i32, Failure> {
    match cmd {
        Command::Basis { n, space: Space::Ms, format } => {
            let p = Presentation::new(n)?;
            let doc = OutputDocument::new(n, "basis", Convention::RowVectors)
                .rows(p.basis_labels())
                .payload(vec![Vec::new(); p.rank()])
                .note(format!("free basis of the symbol module, rank {}", p.rank()));
            emit(&doc, format, out)
        }
        Command::Basis { n, space: Space::H1, format } => {
            let h = homology(n)?;
            let doc = OutputDocument::new(n, "basis", Convention::RowVectors)
                .rows(h.s_labels())
                .columns(h.presentation().basis_labels())
                .payload(matrix_payload(h.s_basis()))
                .note(format!("s-basis of H1, rank {}", h.rank()));
            emit(&doc, format, out)
        }
        Command::Reduce { n, symbol, format } => {
            let label = parse_symbol(&symbol, n).map_err(Failure::Usage)?;
            let p = Presentation::new(n)?;
            let v = p.reduce_label(&label);
            let doc = OutputDocument::new(n, "reduce", Convention::RowVectors)
                .rows(vec![format!("[{label}]")])
                .columns(p.basis_labels())
                .payload(vec![v.coords().iter().map(ToString::to_string).collect()]);
            emit(&doc, format, out)
        }
        Command::Boundary { n, symbol, format } => {
            let label = parse_symbol(&symbol, n).map_err(Failure::Usage)?;
            let d = boundary(&SymbolVector::symbol(n, label));
            let doc = OutputDocument::new(n, "boundary", Convention::RowVectors)
                .rows(vec![format!("[{label}]")])
                .columns(cusp_labels(n))
                .payload(vec![d.to_vector(n).iter().map(ToString::to_string).collect()]);
            emit(&doc, format, out)
        }
        Command::Homology { n, format } => {
            let h = homology(n)?;
            let doc = OutputDocument::new(n, "homology", Convention::RowVectors)
                .rows(h.gamma_labels())
                .columns(h.presentation().basis_labels())
                .payload(matrix_payload(h.gamma_basis()))
                .note(format!("gamma-basis of H1, rank {}", h.rank()));
            emit(&doc, format, out)
        }
        Command::Action { n, gen, format } => {
            let gen = Generator::from(gen);
            let doc = if gen == Generator::Phi {
                let p = Presentation::new(n)?;
                let labels = p.basis_labels();
                OutputDocument::new(n, "action", Convention::ColumnsAreImages)
                    .rows(labels.clone())
                    .columns(labels)
                    .payload(matrix_payload(&action_on_symbols(gen, &p)))
                    .note("phi on the symbol space: phi is not an element of the group ring, so it is reported on symbols".to_string())
            } else {
                let h = homology(n)?;
                let m = action_on_homology(gen, &h)?;
                OutputDocument::new(n, "action", Convention::ColumnsAreImages)
                    .rows(h.s_labels())
                    .columns(h.s_labels())
                    .payload(matrix_payload(&m))
                    .note(format!("{gen} on H1 in the s-basis"))
            };
            emit(&doc, format, out)
        }
        Command::Monodromy { n, format } => {
            let h = homology(n)?;
            let m = action_on_homology(Generator::E0E1, &h)?;
            let poly: Vec<String> =
                m.characteristic_polynomial().iter().map(ToString::to_string).collect();
            let doc = OutputDocument::new(n, "monodromy", Convention::ColumnsAreImages)
                .rows(h.s_labels())
                .columns(h.s_labels())
                .payload(matrix_payload(&m))
                .note(format!(
                    "e0e1 on H1; characteristic polynomial coefficients, constant term first: [{}]",
                    poly.join(",")
                ));
            emit(&doc, format, out)
        }
        Command::Verify { n_max } => {
            let report = verify(n_max, fault);
            for r in &report.results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                write!(out, "{status} n={} {}", r.n, r.name)?;
                match &r.detail {
                    Some(d) => writeln!(out, " ({d})")?,
                    None => writeln!(out)?,
                }
            }
            let failed = report.failures().count();
            writeln!(out, "{} checks, {failed} failed", report.results.len())?;
            Ok(if report.all_pass() { 0 } else { 2 })
        }
    }
}
