//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a check fails or a computation does not
//! converge, 2 on usage or domain errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{
    ball_volume, bound_table, capital_c, gradient_bound, halfspace_constant,
    khavinson_sharp_constant_3d, schwarz_pick_constant, BoundRow,
};
use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::harmonic::{
    default_probe_grid, extremal_gradient_at_origin, probe_conjecture, probe_schwarz_pick,
    verify_theorem_b, ProbeRow,
};
use crate::phi::{
    default_truncation, phi3_closed, phi_first_fd, phi_quad, phi_second_closed, phi_second_series,
    phi_series, verify_concavity, verify_monotone, verify_technical, SECOND_CLOSED_RHO_MIN,
};
use crate::quadrature::QuadratureSpec;
use crate::report::{MarginTracker, VerificationReport};
use crate::specfun::{verify_identities, IdentityGrids};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Monotone,
    Concavity,
    Technical,
    Identities,
    #[value(name = "theoremB", alias = "theorem-b")]
    TheoremB,
}

/// Route for the Φ column of `phi-table`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableMethod {
    Quad,
    Series,
    Closed3,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Sharp constants for dimension n.
    Constants {
        #[arg(long)]
        n: u32,
    },
    /// Φ, Φ' and Φ'' on a uniform grid of [0, 0.99].
    PhiTable {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = TableMethod::Quad)]
        method: TableMethod,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 1001)]
        grid: usize,
    },
    /// Gradient of the hemisphere datum at the origin against 2m_{n-1}/m_n.
    Extremal {
        #[arg(long)]
        n: u32,
    },
    /// Random-data probes of the gradient bound and the refined bound.
    Probe {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Every bound at one radius.
    Bound {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        rho: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Parser)]
#[command(
    name = "harmonic-schwarz",
    version,
    about = "Sharp gradient bounds for bounded harmonic functions"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

/// A rendered result together with its exit status.
struct Rendered {
    text: String,
    ok: bool,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Shortest round-trip decimal; empty for non-finite values.
fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:?}")
    } else {
        String::new()
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn report_csv(r: &VerificationReport) -> String {
    let mut s = String::from("suite,n,name,passed,expected,worst_margin,at\n");
    for c in &r.checks {
        let expected = serde_json::to_value(c.expected).expect("enum serializes");
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.suite,
            r.n,
            c.name,
            c.passed,
            expected.as_str().unwrap_or_default(),
            num(c.worst_margin),
            opt(c.at)
        ));
    }
    s
}

fn render_report(r: &VerificationReport, format: Format) -> Rendered {
    let text = match format {
        Format::Json => json(r),
        Format::Csv => report_csv(r),
    };
    Rendered { text, ok: r.passed }
}

#[derive(Serialize)]
struct Constants {
    n: Dimension,
    ball_volume: f64,
    ball_volume_lower: f64,
    schwarz_pick_constant: f64,
    gradient_constant: f64,
    khavinson_sharp_constant_3d: Option<f64>,
    halfspace_constant: f64,
    capital_c_at_origin: f64,
}

fn constants(n: Dimension, format: Format) -> Result<Rendered> {
    let c = Constants {
        n,
        ball_volume: ball_volume(n.get()),
        ball_volume_lower: ball_volume(n.get() - 1),
        schwarz_pick_constant: schwarz_pick_constant(n),
        gradient_constant: gradient_bound(n, 0.0)?,
        khavinson_sharp_constant_3d: (n.get() == 3).then(khavinson_sharp_constant_3d),
        halfspace_constant: halfspace_constant(n),
        capital_c_at_origin: capital_c(n, 0.0, &QuadratureSpec::default())?,
    };
    let text = match format {
        Format::Json => json(&c),
        Format::Csv => format!(
            "name,value\nn,{}\nball_volume,{}\nball_volume_lower,{}\nschwarz_pick_constant,{}\ngradient_constant,{}\n\
             khavinson_sharp_constant_3d,{}\nhalfspace_constant,{}\ncapital_c_at_origin,{}\n",
            n,
            num(c.ball_volume),
            num(c.ball_volume_lower),
            num(c.schwarz_pick_constant),
            num(c.gradient_constant),
            opt(c.khavinson_sharp_constant_3d),
            num(c.halfspace_constant),
            num(c.capital_c_at_origin)
        ),
    };
    Ok(Rendered { text, ok: true })
}

#[derive(Serialize)]
struct PhiRow {
    rho: f64,
    phi: f64,
    phi_prime_fd: f64,
    phi_second_closed: Option<f64>,
    phi_second_series: f64,
}

#[derive(Serialize)]
struct PhiTable {
    n: Dimension,
    method: &'static str,
    rows: Vec<PhiRow>,
}

fn phi_table(n: Dimension, steps: usize, method: TableMethod, format: Format) -> Result<Rendered> {
    n.require_at_least(3, "phi-table")?;
    if steps < 2 {
        return Err(Error::domain("phi-table needs --steps >= 2"));
    }
    if method == TableMethod::Closed3 && n.get() != 3 {
        return Err(Error::domain("method closed3 needs n = 3"));
    }
    let spec = QuadratureSpec::default();
    let rows = (0..steps)
        .map(|i| {
            let rho = 0.99 * i as f64 / (steps - 1) as f64;
            let phi = match method {
                TableMethod::Quad => phi_quad(n, rho, &spec)?.value,
                TableMethod::Series => phi_series(n, rho, default_truncation(n, rho))?.value,
                TableMethod::Closed3 => phi3_closed(rho),
            };
            Ok(PhiRow {
                rho,
                phi,
                phi_prime_fd: phi_first_fd(n, rho, &spec)?,
                phi_second_closed: if rho >= SECOND_CLOSED_RHO_MIN {
                    Some(phi_second_closed(n, rho)?.value)
                } else {
                    None
                },
                phi_second_series: phi_second_series(n, rho, default_truncation(n, rho))?.value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let method = match method {
        TableMethod::Quad => "quad",
        TableMethod::Series => "series",
        TableMethod::Closed3 => "closed3",
    };
    let text = match format {
        Format::Json => json(&PhiTable { n, method, rows }),
        Format::Csv => {
            let mut s = String::from("rho,phi,phi_prime_fd,phi_second_closed,phi_second_series\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    num(r.rho),
                    num(r.phi),
                    num(r.phi_prime_fd),
                    opt(r.phi_second_closed),
                    num(r.phi_second_series)
                ));
            }
            s
        }
    };
    Ok(Rendered { text, ok: true })
}

/// Radii for the pointwise-constant suite.
fn theorem_b_grid() -> Vec<f64> {
    (0..10).map(|i| f64::from(i) / 10.0).collect()
}

/// Runs one suite, or every suite applicable to `n`.
pub fn run_suite(n: Dimension, suite: Suite, grid: usize) -> Result<VerificationReport> {
    let spec = QuadratureSpec::default();
    match suite {
        Suite::Monotone => verify_monotone(n, grid),
        Suite::Concavity => verify_concavity(n, grid),
        Suite::Technical => verify_technical(n, grid),
        Suite::Identities => {
            let mut r = verify_identities(&IdentityGrids::default())?;
            r.n = n.get();
            Ok(r)
        }
        Suite::TheoremB => verify_theorem_b(n, &theorem_b_grid(), &spec),
        Suite::All => {
            let mut all = VerificationReport::new("all", n.get());
            let mut suites = vec![Suite::Identities, Suite::TheoremB];
            if n.get() >= 3 {
                suites.extend([Suite::Monotone, Suite::Concavity, Suite::Technical]);
            }
            for s in suites {
                all.merge(run_suite(n, s, grid)?);
            }
            Ok(all)
        }
    }
}

#[derive(Serialize)]
struct Extremal {
    n: Dimension,
    extremal_gradient: f64,
    schwarz_pick_constant: f64,
    report: VerificationReport,
}

fn extremal(n: Dimension, format: Format) -> Result<Rendered> {
    let g = extremal_gradient_at_origin(n, &QuadratureSpec::default())?;
    let k = schwarz_pick_constant(n);
    let mut report = VerificationReport::new("extremal", n.get());
    let mut t = MarginTracker::new("gradient_equals_schwarz_pick_constant");
    t.record(0.0, 1e-8 - (g - k).abs());
    report.push(t.finish());
    let ok = report.passed;
    let text = match format {
        Format::Json => json(&Extremal {
            n,
            extremal_gradient: g,
            schwarz_pick_constant: k,
            report,
        }),
        Format::Csv => format!(
            "n,extremal_gradient,schwarz_pick_constant,passed\n{},{},{},{}\n",
            n,
            num(g),
            num(k),
            ok
        ),
    };
    Ok(Rendered { text, ok })
}

#[derive(Serialize)]
struct Probe {
    report: VerificationReport,
    schwarz_pick: Vec<ProbeRow>,
    conjecture: Option<Vec<ProbeRow>>,
}

fn probe(n: Dimension, samples: usize, seed: u64, format: Format) -> Result<Rendered> {
    if samples == 0 {
        return Err(Error::domain("probe needs --samples >= 1"));
    }
    let spec = QuadratureSpec::default();
    let grid = default_probe_grid();
    let sp = probe_schwarz_pick(n, samples, &grid, seed, &spec)?;
    let mut report = VerificationReport::new("probe", n.get());
    report.merge(sp.report);
    let conjecture = if n.get() == 3 {
        None
    } else {
        let c = probe_conjecture(n, samples, &grid, seed, &spec)?;
        report.merge(c.report);
        Some(c.rows)
    };
    let ok = report.passed;
    let text = match format {
        Format::Json => json(&Probe {
            report,
            schwarz_pick: sp.rows,
            conjecture,
        }),
        Format::Csv => {
            let mut s = String::from(
                "rho,max_ratio_bound,argmax_bound,max_ratio_conjecture,argmax_conjecture\n",
            );
            for (i, r) in sp.rows.iter().enumerate() {
                let c = conjecture.as_ref().map(|c| c[i]);
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    num(r.rho),
                    num(r.max_ratio),
                    r.argmax,
                    opt(c.map(|c| c.max_ratio)),
                    c.map(|c| c.argmax.to_string()).unwrap_or_default()
                ));
            }
            s
        }
    };
    Ok(Rendered { text, ok })
}

fn bound(n: Dimension, rho: f64, format: Format) -> Result<Rendered> {
    let table = bound_table(n, &[rho], &QuadratureSpec::default())?;
    let row: &BoundRow = &table.rows[0];
    let text = match format {
        Format::Json => json(&table),
        Format::Csv => format!(
            "n,rho,capital_c,gradient_bound,schwarz_pick_over_1mr2,pw_over_1mr,khavinson_radial\n{},{},{},{},{},{},{}\n",
            n,
            num(row.rho),
            num(row.capital_c),
            num(row.gradient_bound),
            num(row.schwarz_pick_over_1mr2),
            num(row.pw_over_1mr),
            opt(row.khavinson_radial)
        ),
    };
    Ok(Rendered { text, ok: true })
}

fn render(config: &RunConfig) -> Result<Rendered> {
    let format = config.format;
    match config.command {
        Command::Constants { n } => constants(Dimension::new(n)?, format),
        Command::PhiTable { n, steps, method } => {
            phi_table(Dimension::new(n)?, steps, method, format)
        }
        Command::Verify { n, suite, grid } => Ok(render_report(
            &run_suite(Dimension::new(n)?, suite, grid)?,
            format,
        )),
        Command::Extremal { n } => extremal(Dimension::new(n)?, format),
        Command::Probe { n, samples, seed } => probe(Dimension::new(n)?, samples, seed, format),
        Command::Bound { n, rho } => bound(Dimension::new(n)?, rho, format),
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Divergent { .. } | Error::Pole { .. } => 2,
        Error::SeriesNonConvergence { .. } | Error::QuadratureNonConvergence { .. } => 1,
    }
}

/// Executes `config`, writing the result to its output file or to `out`
/// and diagnostics to `err`. Returns the process exit code.
pub fn run(config: &RunConfig, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let rendered = match render(config) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code_for(&e);
        }
    };
    let written = match &config.output {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(rendered.text.as_bytes())),
        None => out.write_all(rendered.text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return 2;
    }
    if rendered.ok {
        0
    } else {
        1
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn main_with_args<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config, out, err),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            code
        }
    }
}

/// Entry point of the binary.
pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    main_with_args(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
