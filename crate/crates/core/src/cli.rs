//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::catalog::{
    ade_graph, bundled_catalog, default_catalog, dimer_graph, load_catalog, quiver_graph,
    verify_catalog, AdeSpec, DimerSpec,
};
use crate::census::{enumerate_primes, MAX_HORIZON};
use crate::error::Error;
use crate::graph::PartiallyDirectedGraph;
use crate::roots::{ComplexRootSet, RootOptions, DEFAULT_MERGE, DEFAULT_TOL};
use crate::series::{log_derivative_series, mobius_invert, prime_length_gcd};
use crate::zeta::{analyze, spectrum, zeta_inverse, AnalysisOptions, ZetaReport};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "zetaforge", version, about = "Ihara zeta functions of partially directed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the coefficients of the reciprocal zeta polynomial.
    Zeta {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Locate poles and classify against the graph Riemann Hypothesis.
    Rh {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        numeric: Numeric,
        #[command(flatten)]
        output: Output,
    },
    /// Closed geodesic and prime counts up to a length horizon.
    Primes {
        #[command(flatten)]
        input: Input,
        /// Largest path length.
        #[arg(short = 'L', default_value_t = 8, value_parser = clap::value_parser!(u16).range(1..=MAX_HORIZON as i64))]
        horizon: u16,
        /// Also enumerate paths by brute force and compare.
        #[arg(long)]
        census: bool,
        #[command(flatten)]
        numeric: Numeric,
        #[command(flatten)]
        output: Output,
    },
    /// Eigenvalues of the adjacency matrix.
    Spectrum {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        numeric: Numeric,
        #[command(flatten)]
        output: Output,
    },
    /// Write the graph file of an affine ADE diagram, e.g. `A2`, `D5`, `E8`.
    Ade {
        label: String,
        /// Add two loops at every node.
        #[arg(long)]
        loops: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the graph file of a dimer with the given valencies, e.g. `3,4`.
    Dimer {
        valencies: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute every row of the tiling catalog and compare.
    CatalogVerify {
        /// Catalog file; defaults to $ZETAFORGE_CATALOG or the bundled one.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[command(flatten)]
        numeric: Numeric,
        #[command(flatten)]
        output: Output,
    },
    /// Write poles and eigenvalues as `re,im,kind` CSV.
    ExportPlot {
        /// A graph file, or `-` for standard input.
        graph: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["graph", "family"])]
        ade: Option<String>,
        #[arg(long, conflicts_with_all = ["graph", "ade", "family"])]
        dimer: Option<String>,
        #[arg(long, value_enum, conflicts_with = "graph")]
        family: Option<Family>,
        /// Largest series index for the `ade-a` and `ade-d` families.
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Add two loops per node to ADE graphs.
        #[arg(long)]
        loops: bool,
        #[command(flatten)]
        numeric: Numeric,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// A graph file, or `-` for standard input.
    graph: Option<PathBuf>,
    /// Affine ADE diagram label.
    #[arg(long)]
    ade: Option<String>,
    /// Dimer valency list.
    #[arg(long)]
    dimer: Option<String>,
}

#[derive(Args, Debug)]
struct Input {
    #[command(flatten)]
    source: Source,
    /// With `--ade`: add two loops at every node.
    #[arg(long, conflicts_with_all = ["graph", "dimer"])]
    loops: bool,
}

#[derive(Args, Debug, Clone, Copy)]
struct Numeric {
    /// Root finder convergence tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL, value_parser = positive_float)]
    tol: f64,
    /// Distance below which roots are merged.
    #[arg(long, default_value_t = DEFAULT_MERGE, value_parser = positive_float)]
    merge: f64,
}

impl Numeric {
    fn options(self) -> AnalysisOptions {
        AnalysisOptions {
            roots: RootOptions {
                tol: self.tol,
                merge: self.merge,
            },
        }
    }
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    AdeA,
    AdeD,
    AdeE,
    TilingDimers,
    TilingQuivers,
}

fn positive_float(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

enum Failure {
    Lib(Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult<T = ()> = std::result::Result<T, Failure>;

/// Runs the command line `args` (program name first) and returns the exit
/// status. Documents go to `stdout` unless `--out` is given.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_NUMERICAL
            }
        }
        Err(Failure::Mismatch(msg)) => {
            let _ = writeln!(stderr, "verification failed: {msg}");
            EXIT_MISMATCH
        }
    }
}

fn emit(doc: &str, out: Option<&Path>, stdout: &mut dyn Write) -> CmdResult {
    match out {
        Some(path) => std::fs::write(path, doc).map_err(Error::from)?,
        None => stdout.write_all(doc.as_bytes()).map_err(Error::from)?,
    }
    Ok(())
}

fn read_graph(path: &Path) -> Result<PartiallyDirectedGraph, Error> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    PartiallyDirectedGraph::from_json(&text)
}

fn ade_from_label(label: &str, loops: bool) -> Result<PartiallyDirectedGraph, Error> {
    let spec: AdeSpec = label.parse()?;
    ade_graph(AdeSpec { with_loops: loops, ..spec })
}

fn resolve(
    graph: Option<&Path>,
    ade: Option<&str>,
    dimer: Option<&str>,
    loops: bool,
) -> Result<PartiallyDirectedGraph, Error> {
    let g = match (graph, ade, dimer) {
        (Some(path), _, _) => read_graph(path)?,
        (_, Some(label), _) => ade_from_label(label, loops)?,
        (_, _, Some(v)) => dimer_graph(&v.parse::<DimerSpec>()?),
        _ => return Err(Error::InvalidGraph("no input graph given".into())),
    };
    Ok(g.normalize())
}

impl Input {
    fn graph(&self) -> Result<PartiallyDirectedGraph, Error> {
        let s = &self.source;
        resolve(s.graph.as_deref(), s.ade.as_deref(), s.dimer.as_deref(), self.loops)
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> CmdResult {
    match command {
        Command::Zeta { input, output } => {
            let p = zeta_inverse(&input.graph()?)?;
            let coeffs: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
            let doc = match output.format {
                Format::Text => format!("{}\n", coeffs.join(", ")),
                Format::Json => pretty(&json!({ "zeta_inverse": p, "polynomial": p.to_string() })),
                Format::Csv => {
                    let mut s = String::from("power,coefficient\n");
                    for (k, c) in coeffs.iter().enumerate() {
                        let _ = writeln!(s, "{k},{c}");
                    }
                    s
                }
            };
            emit(&doc, output.out.as_deref(), stdout)
        }
        Command::Rh { input, numeric, output } => {
            let report = analyze(&input.graph()?, numeric.options())?;
            let doc = match output.format {
                Format::Text => report_text(&report),
                Format::Json => pretty(&report),
                Format::Csv => roots_csv(&report.poles),
            };
            emit(&doc, output.out.as_deref(), stdout)
        }
        Command::Primes { input, horizon, census, numeric, output } => {
            primes(&input.graph()?, horizon as usize, census, numeric, &output, stdout)
        }
        Command::Spectrum { input, numeric, output } => {
            let spec = spectrum(&input.graph()?, numeric.options().roots)?;
            let doc = match output.format {
                Format::Text => {
                    let mut s = String::from("re im multiplicity\n");
                    for r in &spec.roots {
                        let _ = writeln!(s, "{:.12} {:.12} {}", r.re, r.im, r.multiplicity);
                    }
                    s
                }
                Format::Json => pretty(&spec),
                Format::Csv => roots_csv(&spec),
            };
            emit(&doc, output.out.as_deref(), stdout)
        }
        Command::Ade { label, loops, out } => {
            let g = ade_from_label(&label, loops)?;
            emit(&format!("{}\n", g.to_json()), out.as_deref(), stdout)
        }
        Command::Dimer { valencies, out } => {
            let g = dimer_graph(&valencies.parse::<DimerSpec>()?);
            emit(&format!("{}\n", g.to_json()), out.as_deref(), stdout)
        }
        Command::CatalogVerify { catalog, numeric, output } => {
            let records = match catalog {
                Some(path) => load_catalog(&path)?,
                None => default_catalog()?,
            };
            let report = verify_catalog(&records, numeric.options());
            let doc = match output.format {
                Format::Json => pretty(&report),
                Format::Text | Format::Csv => report.to_text(),
            };
            emit(&doc, output.out.as_deref(), stdout)?;
            if report.passed() {
                Ok(())
            } else {
                let n = report.mismatches().filter(|m| !m.known_erratum).count();
                Err(Failure::Mismatch(format!("{n} catalog mismatches")))
            }
        }
        Command::ExportPlot { graph, ade, dimer, family, max_n, loops, numeric, out } => {
            let graphs = match family {
                Some(f) => family_graphs(f, max_n, loops)?,
                None => vec![resolve(graph.as_deref(), ade.as_deref(), dimer.as_deref(), loops)?],
            };
            let opts = numeric.options().roots;
            let mut doc = String::from("re,im,kind\n");
            for g in &graphs {
                let poles = crate::roots::roots(&zeta_inverse(g)?, opts)?;
                for r in &poles.roots {
                    let _ = writeln!(doc, "{},{},pole", r.re, r.im);
                }
                for r in &spectrum(g, opts)?.roots {
                    let _ = writeln!(doc, "{},{},eigenvalue", r.re, r.im);
                }
            }
            emit(&doc, out.as_deref(), stdout)
        }
    }
}

fn family_graphs(family: Family, max_n: usize, loops: bool) -> Result<Vec<PartiallyDirectedGraph>, Error> {
    use crate::catalog::AdeFamily;
    let ade = |f: AdeFamily, i: usize| ade_graph(AdeSpec::new(f, i, loops)?);
    match family {
        Family::AdeA => (0..=max_n).map(|n| ade(AdeFamily::A, n)).collect(),
        Family::AdeD => (1..=max_n).map(|n| ade(AdeFamily::D, n + 3)).collect(),
        Family::AdeE => (6..=8).map(|n| ade(AdeFamily::E, n)).collect(),
        Family::TilingDimers => Ok(bundled_or_env()?.iter().map(|r| dimer_graph(&r.valencies)).collect()),
        Family::TilingQuivers => bundled_or_env()?.iter().map(|r| quiver_graph(&r.quiver)).collect(),
    }
}

fn bundled_or_env() -> Result<Vec<crate::catalog::CatalogRecord>, Error> {
    match std::env::var_os(crate::catalog::CATALOG_ENV) {
        Some(_) => default_catalog(),
        None => Ok(bundled_catalog()),
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn roots_csv(set: &ComplexRootSet) -> String {
    let mut s = String::from("re,im,multiplicity\n");
    for r in &set.roots {
        let _ = writeln!(s, "{},{},{}", r.re, r.im, r.multiplicity);
    }
    s
}

fn yes_no(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    }
}

fn report_text(r: &ZetaReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "zeta^-1: {}", r.zeta_inverse);
    let _ = writeln!(s, "degree: {}", r.zeta_inverse.degree().unwrap_or(0));
    match r.radius {
        Some(radius) => {
            let _ = writeln!(s, "radius R_G: {radius:.12}");
        }
        None => {
            let _ = writeln!(s, "radius R_G: inf");
        }
    }
    let _ = writeln!(
        s,
        "classification: {:?} ({})",
        r.classification,
        r.classification.flag()
    );
    let d = r.degrees;
    let _ = writeln!(
        s,
        "total degree: min {} max {}{}",
        d.min,
        d.max,
        if d.regular { " (regular)" } else { "" }
    );
    let _ = writeln!(s, "weak-annulus q (max out-valency - 1): {}", r.weak_q);
    match r.branching {
        Some(b) => {
            let _ = writeln!(s, "non-backtracking branching: min {} max {}", b.min, b.max);
        }
        None => {
            let _ = writeln!(s, "non-backtracking branching: none");
        }
    }
    let _ = writeln!(s, "kotani-sunada bounds: {}", if r.kotani_sunada_ok { "ok" } else { "violated" });
    let _ = writeln!(s, "ramanujan: {}", yes_no(r.ramanujan));
    let _ = writeln!(s, "xi functional equation: {}", yes_no(r.xi_functional_ok));
    let _ = writeln!(s, "connected: {}", yes_no(Some(r.connected)));
    let _ = writeln!(s, "poles ({} distinct, residual bound {:.3e}):", r.poles.roots.len(), r.poles.residual_bound);
    for p in &r.poles.roots {
        let _ = writeln!(
            s,
            "  {:.12} {:+.12}i  |z|={:.12}  x{}",
            p.re,
            p.im,
            p.modulus(),
            p.multiplicity
        );
    }
    s
}

#[derive(Serialize)]
struct PrimeRow {
    m: usize,
    closed: String,
    primes: String,
    ratio: Option<f64>,
}

fn primes(
    g: &PartiallyDirectedGraph,
    horizon: usize,
    census: bool,
    numeric: Numeric,
    output: &Output,
    stdout: &mut dyn Write,
) -> CmdResult {
    let zinv = zeta_inverse(g)?;
    let series = log_derivative_series(&zinv, horizon)?;
    let pi = mobius_invert(&series)?;
    let delta = prime_length_gcd(&pi);
    let radius = crate::roots::roots(&zinv, numeric.options().roots)?.min_modulus();

    let ratios: Vec<Option<f64>> = (1..=horizon)
        .map(|m| match (radius, delta) {
            (Some(r), d) if d > 0 && m % d == 0 => {
                let p: f64 = pi[m - 1].to_string().parse().unwrap_or(f64::NAN);
                Some(p * m as f64 * r.powi(m as i32) / d as f64)
            }
            _ => None,
        })
        .collect();

    if census {
        let brute = enumerate_primes(g, horizon)?;
        for m in 1..=horizon {
            let (n_brute, p_brute) = (brute.closed[m - 1].to_string(), brute.primes[m - 1].to_string());
            let (n_series, p_series) = (series.get(m).to_string(), pi[m - 1].to_string());
            if n_brute != n_series || p_brute != p_series {
                return Err(Failure::Mismatch(format!(
                    "length {m}: series gives N={n_series} pi={p_series}, enumeration N={n_brute} pi={p_brute}"
                )));
            }
        }
    }

    let rows: Vec<PrimeRow> = (1..=horizon)
        .map(|m| PrimeRow {
            m,
            closed: series.get(m).to_string(),
            primes: pi[m - 1].to_string(),
            ratio: ratios[m - 1],
        })
        .collect();
    let fmt_ratio = |r: Option<f64>| r.map_or("-".to_string(), |v| format!("{v:.6}"));
    let doc = match output.format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "delta: {delta}");
            let _ = writeln!(s, "{:>3} {:>20} {:>20} {:>12}", "m", "N_m", "pi(m)", "ratio");
            for r in &rows {
                let _ = writeln!(s, "{:>3} {:>20} {:>20} {:>12}", r.m, r.closed, r.primes, fmt_ratio(r.ratio));
            }
            if census {
                let _ = writeln!(s, "brute-force census: agrees");
            }
            s
        }
        Format::Json => pretty(&json!({ "delta": delta, "census_checked": census, "rows": rows })),
        Format::Csv => {
            let mut s = String::from("m,N,pi,ratio\n");
            for r in &rows {
                let ratio = r.ratio.map_or(String::new(), |v| v.to_string());
                let _ = writeln!(s, "{},{},{},{}", r.m, r.closed, r.primes, ratio);
            }
            s
        }
    };
    emit(&doc, output.out.as_deref(), stdout)
}
