use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use lemnis_core::separated::build_real_form;
use lemnis_core::tracer::{component_count_numeric, emit_csv, emit_svg, trace_lemniscate};
use lemnis_core::{decide_reducibility, lemniscate_irreducible, UniPoly};
use serde::Serialize;

use crate::doc::{parse_poly_str, BiPolyDocument, PowerDocument, TraceDocument};
use crate::error::CliError;
use crate::verify::{oracle, require_distinct_variables, verdict_document, verify};

/// Seed used by `oracle` and `verify` when none is given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(
    name = "lemnis",
    version,
    about = "Reducibility of P(z)Q(w) - 1 and polynomial lemniscates |P| = 1",
    after_help = "Exit codes: 0 success, 1 usage, 2 input, 3 disagreement, 4 numerical failure."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximal power exponent and power form of P.
    Power { file: PathBuf },
    /// Exact reducibility verdict for P(z)Q(w) - 1.
    Decide {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
    },
    /// Real polynomial f(x, y) with f = |P(x+iy)|^2 - 1 on the real plane.
    Realform { file: PathBuf },
    /// Numerical monodromy certificate.
    Oracle {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Decision, oracle and factor checks; exit 0 iff all agree.
    Verify {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Trace the lemniscate |P| = 1 to an SVG or CSV file.
    Trace {
        file: PathBuf,
        #[arg(long, default_value_t = 256)]
        resolution: usize,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Svg,
    Csv,
}

pub fn parse_poly(path: &Path) -> Result<UniPoly, CliError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{name}: {e}")))?;
    parse_poly_str(&text).map_err(|e| e.in_file(&name))
}

fn parse_nonconstant(path: &Path) -> Result<UniPoly, CliError> {
    let p = parse_poly(path)?;
    if p.is_constant() {
        return Err(CliError::Input(format!("{}: polynomial must be non-constant", path.display())));
    }
    Ok(p)
}

fn render<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

/// The stdout document and exit code of a successfully dispatched command.
pub fn execute(cmd: &Command) -> Result<(String, i32), CliError> {
    match cmd {
        Command::Power { file } => {
            let p = parse_nonconstant(file)?;
            let (irreducible, form) = lemniscate_irreducible(&p)?;
            let doc = PowerDocument { d_max: form.exponent, irreducible_lemniscate: irreducible, form: (&form).into() };
            Ok((render(&doc), 0))
        }
        Command::Decide { p, q } => {
            let (p, q) = (parse_nonconstant(p)?, parse_nonconstant(q)?);
            require_distinct_variables(&p, &q)?;
            Ok((render(&verdict_document(&decide_reducibility(&p, &q)?)), 0))
        }
        Command::Realform { file } => {
            let p = parse_nonconstant(file)?;
            Ok((render(&BiPolyDocument::from(&build_real_form(&p)?)), 0))
        }
        Command::Oracle { p, q, seed } => {
            let (p, q) = (parse_nonconstant(p)?, parse_nonconstant(q)?);
            Ok((render(&oracle(&p, &q, *seed)?), 0))
        }
        Command::Verify { p, q, seed } => {
            let (p, q) = (parse_nonconstant(p)?, parse_nonconstant(q)?);
            let a = verify(&p, &q, *seed)?;
            let code = if a.agree() { 0 } else { 3 };
            Ok((render(&a.document), code))
        }
        Command::Trace { file, resolution, format, out } => {
            let p = parse_nonconstant(file)?;
            let curves = trace_lemniscate(&p, *resolution).map_err(|e| match e {
                lemnis_core::Error::IndexOutOfRange { len, .. } => {
                    CliError::Input(format!("resolution must be at least {len}"))
                }
                e => e.into(),
            })?;
            let written = match format {
                Format::Svg => emit_svg(&curves, out),
                Format::Csv => emit_csv(&curves, out),
            };
            written.map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
            let b = &curves.bbox;
            let doc = TraceDocument {
                out: out.display().to_string(),
                format: match format {
                    Format::Svg => "svg",
                    Format::Csv => "csv",
                }
                .to_string(),
                resolution: *resolution,
                bbox: [b.xmin, b.xmax, b.ymin, b.ymax],
                polylines: curves.polylines.len(),
                components: component_count_numeric(&curves),
            };
            Ok((render(&doc), 0))
        }
    }
}

/// Parse `args` (including the program name), run the command, write the
/// document to `out` and diagnostics to `err`, and return the exit code.
pub fn run<I, S>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok((doc, code)) => {
            let _ = out.write_all(doc.as_bytes());
            if code == 3 {
                let _ = writeln!(err, "verification disagreement");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
