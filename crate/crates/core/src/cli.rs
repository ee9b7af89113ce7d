//! Command-line front end.
//!
//! Exit codes: 0 success or pass, 1 usage or I/O error, 2 verification fail.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::catalog::{self, ConstructionParams, Variant};
use crate::dissection::{
    read_plan, verify_plan, write_plan, DissectionPlan, VerificationReport, REPORT_DIGITS,
};
use crate::exactnum::{parse_rational, rat, QSqrt2};
use crate::geom::{Point, Triangle};
use crate::render::{render_panel, render_plan, RenderStyle};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "dustboard",
    version,
    about = "Construct, verify and draw exact square and triangle dissections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a catalog plan.
    Construct(ConstructArgs),
    /// Verify a plan file.
    Verify {
        plan: PathBuf,
        /// Also write the report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Exact analysis of the flawed three-squares assembly.
    AnalyzeFlawed,
    /// Draw a plan's target repeated in a grid.
    Panel {
        plan: PathBuf,
        #[arg(long)]
        rows: u32,
        #[arg(long)]
        cols: u32,
        #[arg(long)]
        out: PathBuf,
        /// Keep every tile in the same orientation.
        #[arg(long)]
        no_mirror: bool,
    },
    /// List catalog variants and their parameters.
    List,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    variant: String,
    /// Small-triangle ratio, as p/q.
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    m: Option<String>,
    /// Base triangle as x1,y1,x2,y2,x3,y3.
    #[arg(long)]
    base: Option<String>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    verify: bool,
}

/// Usage problem or I/O failure; always exit code 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs one invocation, writing data to `out` and diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{text}");
            return EXIT_OK;
        }
    };
    let result = match cli.command {
        Command::Construct(a) => construct(a, out),
        Command::Verify { plan, report } => verify(&plan, report.as_deref(), out),
        Command::AnalyzeFlawed => analyze(out),
        Command::Panel {
            plan,
            rows,
            cols,
            out: path,
            no_mirror,
        } => panel(&plan, rows, cols, &path, !no_mirror),
        Command::List => list(out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn default_base() -> Triangle {
    Triangle::new(Point::int(0, 0), Point::int(1, 0), Point::int(0, 1)).expect("counterclockwise")
}

fn params(a: &ConstructArgs) -> Result<ConstructionParams, Failure> {
    let variant = Variant::parse(&a.variant).ok_or_else(|| {
        let names: Vec<_> = Variant::ALL.iter().map(|v| v.name()).collect();
        Failure(format!(
            "unknown variant {:?}; expected one of {}",
            a.variant,
            names.join(", ")
        ))
    })?;
    let allowed: &[&str] = match variant {
        Variant::TrickyTriangle => &["s", "base"],
        Variant::ThreeSquares | Variant::ThreeSquaresFlawed => &[],
        Variant::Pythagoras | Variant::Case2 => &["a", "b"],
        Variant::Case1 => &["m"],
    };
    let given = [
        ("s", a.s.is_some()),
        ("a", a.a.is_some()),
        ("b", a.b.is_some()),
        ("m", a.m.is_some()),
        ("base", a.base.is_some()),
    ];
    for (name, present) in given {
        if present && !allowed.contains(&name) {
            return Err(Failure(format!("--{name} does not apply to {variant}")));
        }
    }
    let rational = |v: &Option<String>, name: &str, default: i64| match v {
        Some(s) => parse_rational(s).map_err(|e| Failure(format!("--{name}: {e}"))),
        None => Ok(rat(default, 1)),
    };
    let mut p = ConstructionParams::new(variant);
    match variant {
        Variant::TrickyTriangle => {
            p.ratio_s = Some(match &a.s {
                Some(s) => parse_rational(s).map_err(|e| Failure(format!("--s: {e}")))?,
                None => rat(1, 2),
            });
            p.base_triangle = Some(match &a.base {
                Some(b) => catalog::parse_base(b)?,
                None => default_base(),
            });
        }
        Variant::Pythagoras | Variant::Case2 => {
            p.a = Some(rational(&a.a, "a", 2)?);
            p.b = Some(rational(&a.b, "b", 1)?);
        }
        Variant::Case1 => {
            p.m = Some(match &a.m {
                Some(m) => m
                    .parse::<u32>()
                    .map_err(|_| Failure(format!("--m: expected a positive integer, got {m:?}")))?,
                None => 1,
            });
        }
        Variant::ThreeSquares | Variant::ThreeSquaresFlawed => {}
    }
    Ok(p)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(format!("cannot write {}: {e}", path.display())))
}

fn print_report(out: &mut dyn Write, report: &VerificationReport) -> Result<(), Failure> {
    write!(out, "{report}")?;
    let excess = report.excess();
    if !excess.is_zero() {
        writeln!(out, "excess {excess} ≈ {}", excess.approx(REPORT_DIGITS))?;
    }
    Ok(())
}

fn verdict_code(report: &VerificationReport) -> i32 {
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn construct(a: ConstructArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let p = params(&a)?;
    let plan = catalog::construct(&p)?;
    write_file(&a.out, &write_plan(&plan))?;
    if let Some(svg) = &a.svg {
        write_file(svg, &render_plan(&plan, &RenderStyle::default())?.text)?;
    }
    if !a.verify {
        return Ok(EXIT_OK);
    }
    let report = verify_plan(&plan)?;
    print_report(out, &report)?;
    Ok(verdict_code(&report))
}

fn load(path: &Path) -> Result<DissectionPlan, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
    read_plan(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn verify(path: &Path, report_path: Option<&Path>, out: &mut dyn Write) -> Result<i32, Failure> {
    let plan = load(path)?;
    let report = verify_plan(&plan)?;
    if let Some(rp) = report_path {
        let mut text = serde_json::to_string_pretty(&report.to_json())?;
        text.push('\n');
        write_file(rp, &text)?;
    }
    print_report(out, &report)?;
    Ok(verdict_code(&report))
}

fn analyze(out: &mut dyn Write) -> Result<i32, Failure> {
    let f = catalog::flawed_analysis();
    let line = |out: &mut dyn Write, name: &str, v: &QSqrt2| {
        writeln!(out, "{name}: {v} ≈ {}", v.approx(REPORT_DIGITS))
    };
    line(out, "assembled_side", &f.assembled_side)?;
    line(out, "assembled_side_squared", &f.assembled_side_squared)?;
    line(out, "required_area", &f.required_area)?;
    line(out, "excess_piece_area", &f.excess_piece_area)?;
    writeln!(out, "side_is_rational: {}", f.side_is_rational)?;
    writeln!(out, "diagonal_is_rational: {}", f.diagonal_is_rational)?;
    writeln!(
        out,
        "side_squared_equals_required: {}",
        f.assembled_side_squared == f.required_area
    )?;
    Ok(EXIT_OK)
}

fn panel(path: &Path, rows: u32, cols: u32, out_path: &Path, mirror: bool) -> Result<i32, Failure> {
    let plan = load(path)?;
    let doc = render_panel(&plan, rows, cols, &RenderStyle::default(), mirror)?;
    write_file(out_path, &doc.text)?;
    Ok(EXIT_OK)
}

fn list(out: &mut dyn Write) -> Result<i32, Failure> {
    for v in Variant::ALL {
        writeln!(out, "{:<22}{}", v.name(), v.signature())?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(
            std::iter::once("dustboard").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_one() {
        let (code, out, err) = run_capture(&["frobnicate"]);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        assert!(err.contains("Usage"), "{err}");
        assert_eq!(run_capture(&["list", "--bogus"]).0, 1);
    }

    #[test]
    fn list_and_analyze() {
        let (code, out, _) = run_capture(&["list"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 6);
        let (code, out, _) = run_capture(&["analyze-flawed"]);
        assert_eq!(code, 0);
        assert!(
            out.contains("excess_piece_area: 3/2-1/1√2 ≈ 0.085786"),
            "{out}"
        );
        assert!(out.contains("side_is_rational: false"));
    }
}
