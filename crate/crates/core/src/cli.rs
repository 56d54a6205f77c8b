//! Command-line front end. Every command produces a table which is written
//! as CSV (with `#`-prefixed metadata lines) or as JSON.

use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::family::TreeFamily;
use crate::genfun::{MomentTable, ProfileCorrelation};
use crate::grand::{grand_number, limit_moment, Kind};
use crate::numerics::{density_mgf, mean_density_quadrature, mean_density_series, QuadratureConfig};
use crate::partition::ExtendedPartition;
use crate::sampler::stats::dyck_empirical_moment;
use crate::sampler::{profile_grid, RNG_NAME};
use crate::verify::{run_level, Level, DEFAULT_SEED};

/// Version of the CSV/JSON layout, written into every header.
pub const SCHEMA_VERSION: &str = "iselab-table/1";

pub mod exit {
    pub const PASS: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const NUMERIC: i32 = 3;
}

#[derive(Parser, Debug)]
#[command(name = "iselab", version, about = "Exact moments, limit constants and simulations of labelled trees and ISE")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact finite-size moments E m_{λ,n} with the ISE limit.
    MomentsExact {
        #[arg(long, default_value = "binary")]
        family: TreeFamily,
        /// Partition as a comma list, e.g. 1,1,2.
        #[arg(long)]
        lambda: ExtendedPartition,
        /// Sizes as a comma list.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
    /// Grand-moment numbers c_λ or d_λ with their limit moments.
    GrandMoments {
        #[arg(long, value_enum, default_value_t = KindArg::Ise)]
        kind: KindArg,
        /// Partition as a comma list; repeat the flag for several.
        #[arg(long, required = true)]
        lambda: Vec<ExtendedPartition>,
    },
    /// Monte Carlo mean of the rescaled vertical profile next to the mean
    /// ISE density.
    Profile {
        #[arg(long, default_value = "binary")]
        family: TreeFamily,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of equally spaced grid points on [-x-max, x-max].
        #[arg(long, default_value_t = 61)]
        grid: usize,
        #[arg(long, default_value_t = 3.0)]
        x_max: f64,
    },
    /// E exp(a f_ISE(x)) by contour integration.
    Mgf {
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        x: f64,
        /// Values of a as a comma list.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', required = true)]
        a: Vec<f64>,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Mean ISE density E f_ISE(x) on a grid.
    MeanDensity {
        #[arg(long, default_value_t = 61)]
        grid: usize,
        #[arg(long, default_value_t = 3.0)]
        x_max: f64,
        #[arg(long, value_enum, default_value_t = DensityMethod::Quadrature)]
        method: DensityMethod,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Exact E|X̂_n(u)|² and the ratio (1 + N u⁴) E|X̂_n(u)/N|² on [0, π].
    FourierBound {
        #[arg(long, default_value = "binary")]
        family: TreeFamily,
        /// Sizes as a comma list.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
    /// Monte Carlo moments of uniform Dyck paths with the excursion limit.
    DyckMoments {
        /// Half length of the paths.
        #[arg(long)]
        n: usize,
        #[arg(long, required = true)]
        lambda: Vec<ExtendedPartition>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Runs the acceptance checks; exit code 1 if any fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Ise,
    Exc,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Ise => Kind::Ise,
            KindArg::Exc => Kind::Exc,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DensityMethod {
    Quadrature,
    /// Power series in x, valid for |x| ≤ 4.5.
    Series,
}

#[derive(Args, Debug, Clone)]
pub struct QuadArgs {
    /// Relative tolerance of the adaptive quadrature.
    #[arg(long, default_value_t = QuadratureConfig::default().rel_tol)]
    pub tol: f64,
}

impl QuadArgs {
    fn config(&self) -> Result<QuadratureConfig, Error> {
        let cfg = QuadratureConfig { rel_tol: self.tol, ..QuadratureConfig::default() };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// A table cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// Result of one command: metadata plus named columns.
#[derive(Clone, Debug)]
pub struct Table {
    pub meta: Map<String, Value>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(command: &str, columns: &[&'static str]) -> Self {
        let mut meta = Map::new();
        meta.insert("schema".into(), json!(SCHEMA_VERSION));
        meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        meta.insert("command".into(), json!(command));
        Table { meta, columns: columns.to_vec(), rows: Vec::new() }
    }

    fn param(mut self, key: &str, value: impl serde::Serialize) -> Self {
        self.meta.insert(key.into(), json!(value));
        self
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// First non-finite float cell, if any.
    pub fn non_finite(&self) -> Option<(usize, &'static str)> {
        self.rows.iter().enumerate().find_map(|(i, r)| {
            r.iter()
                .zip(&self.columns)
                .find(|(c, _)| matches!(c, Cell::Float(v) if !v.is_finite()))
                .map(|(_, name)| (i, *name))
        })
    }

    /// CSV body: `#` metadata lines, then the header and the rows.
    pub fn write_csv(&self, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "# schema: {SCHEMA_VERSION}")?;
        for (k, v) in self.meta.iter().filter(|(k, _)| *k != "schema") {
            match v {
                Value::String(s) => writeln!(out, "# {k}: {s}")?,
                _ => writeln!(out, "# {k}: {v}")?,
            }
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::csv))?;
        }
        w.flush()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().map(|c| c.to_string()).zip(r.iter().map(Cell::json)).collect()))
            .collect();
        json!({ "metadata": self.meta, "rows": rows })
    }
}

/// Outcome of a command before it is written out.
pub struct Outcome {
    pub table: Table,
    /// `false` only for a failing `verify`.
    pub pass: bool,
}

fn grid(points: usize, x_max: f64) -> Result<Vec<f64>, Error> {
    if points < 2 || !(x_max.is_finite() && x_max > 0.0) {
        return Err(Error::OutOfRange("the grid needs at least 2 points and a positive finite x-max".into()));
    }
    Ok((0..points).map(|i| -x_max + 2.0 * x_max * i as f64 / (points - 1) as f64).collect())
}

/// Executes a parsed command.
pub fn execute(command: &Command) -> Result<Outcome, Error> {
    let table = match command {
        Command::MomentsExact { family, lambda, n } => {
            let t = MomentTable::build(*family, lambda, n)?;
            let mut table = Table::new("moments-exact", &["n", "exact", "normalized", "limit", "rel_gap"])
                .param("family", family)
                .param("lambda", lambda.to_string());
            for r in t.rows {
                table.push(vec![r.n.into(), r.exact.into(), r.normalized.into(), r.limit.into(), r.rel_gap.into()]);
            }
            table
        }
        Command::GrandMoments { kind, lambda } => {
            let kind = Kind::from(*kind);
            let mut table = Table::new("grand-moments", &["lambda", "number", "limit"]).param("kind", kind);
            for l in lambda {
                table.push(vec![
                    l.to_string().into(),
                    grand_number(kind, l).to_string().into(),
                    limit_moment(kind, l).into(),
                ]);
            }
            table
        }
        Command::Profile { family, n, samples, seed, grid: points, x_max } => {
            if *n < 16 {
                return Err(Error::OutOfRange(format!(
                    "n = {n} is too small for a meaningful rescaling (need n >= 16)"
                )));
            }
            let xs = grid(*points, *x_max)?;
            let rows = profile_grid(*family, *n, *samples, *seed, &xs)?;
            let mut table = Table::new("profile", &["x", "mean_g", "se_g", "mean_density"])
                .param("family", family)
                .param("n", n)
                .param("samples", samples)
                .param("seed", seed)
                .param("rng", RNG_NAME);
            for r in rows {
                table.push(vec![
                    r.x.into(),
                    r.mean_g.into(),
                    r.se_g.into(),
                    mean_density_quadrature(r.x, &QuadratureConfig::default())?.into(),
                ]);
            }
            table
        }
        Command::Mgf { x, a, quad } => {
            let cfg = quad.config()?;
            let mut table = Table::new("mgf", &["x", "a", "value"]).param("tol", cfg.rel_tol);
            for &a in a {
                table.push(vec![(*x).into(), a.into(), density_mgf(*x, a, &cfg)?.into()]);
            }
            table
        }
        Command::MeanDensity { grid: points, x_max, method, quad } => {
            let cfg = quad.config()?;
            let xs = grid(*points, *x_max)?;
            let name = match method {
                DensityMethod::Quadrature => "quadrature",
                DensityMethod::Series => "series",
            };
            let mut table =
                Table::new("mean-density", &["x", "density"]).param("method", name).param("tol", cfg.rel_tol);
            for x in xs {
                let v = match method {
                    DensityMethod::Quadrature => mean_density_quadrature(x, &cfg)?,
                    DensityMethod::Series => mean_density_series(x)?,
                };
                table.push(vec![x.into(), v.into()]);
            }
            table
        }
        Command::FourierBound { family, n, grid: points } => {
            if *points < 2 {
                return Err(Error::OutOfRange("the grid needs at least 2 points".into()));
            }
            let order = n.iter().copied().max().unwrap_or(1);
            let pc = ProfileCorrelation::new(*family, order);
            let mut table = Table::new("fourier-bound", &["n", "u", "second_moment", "ratio"]).param("family", family);
            for &m in n {
                for j in 0..*points {
                    let u = PI * j as f64 / (points - 1) as f64;
                    table.push(vec![
                        m.into(),
                        u.into(),
                        pc.fourier_second_moment(m, u)?.into(),
                        pc.lemma_l3_ratio(m, u)?.into(),
                    ]);
                }
            }
            table
        }
        Command::DyckMoments { n, lambda, samples, seed } => {
            let mut table = Table::new("dyck-moments", &["lambda", "mean", "se", "limit"])
                .param("n", n)
                .param("samples", samples)
                .param("seed", seed)
                .param("rng", RNG_NAME);
            for l in lambda {
                let est = dyck_empirical_moment(*n, l, *samples, *seed)?;
                table.push(vec![
                    l.to_string().into(),
                    est.mean.into(),
                    est.se.into(),
                    limit_moment(Kind::Exc, l).into(),
                ]);
            }
            table
        }
        Command::Verify { level, seed } => {
            let reports = run_level(*level, *seed);
            let pass = reports.iter().all(|r| r.pass);
            let mut table = Table::new("verify", &["id", "criterion", "pass", "details", "seconds"])
                .param("level", level)
                .param("seed", seed);
            for r in reports {
                table.push(vec![
                    Cell::Int(r.id as i64),
                    r.name.to_string().into(),
                    Cell::Bool(r.pass),
                    r.details.into(),
                    r.seconds.into(),
                ]);
            }
            return Ok(Outcome { table, pass });
        }
    };
    Ok(Outcome { table, pass: true })
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidPartition(_)
        | Error::UnknownFamily(_)
        | Error::OutOfRange(_)
        | Error::SizeCapExceeded { .. }
        | Error::TruncationTooSmall { .. }
        | Error::TooFewSamples { .. } => exit::USAGE,
        _ => exit::NUMERIC,
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::USAGE } else { exit::PASS };
        }
    };
    let start = Instant::now();
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let mut table = outcome.table;
    if let Some((row, col)) = table.non_finite() {
        eprintln!("error: non-finite value in row {row}, column {col}");
        return exit::NUMERIC;
    }
    table.meta.insert("wall_time_s".into(), json!(start.elapsed().as_secs_f64()));
    let written = match &cli.output.out {
        Some(path) => {
            std::fs::File::create(path).and_then(|f| write_table(&table, cli.output.format, std::io::BufWriter::new(f)))
        }
        None => write_table(&table, cli.output.format, std::io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return exit::NUMERIC;
    }
    if outcome.pass {
        exit::PASS
    } else {
        exit::VERIFY_FAILED
    }
}

fn write_table(table: &Table, format: Format, mut out: impl Write) -> std::io::Result<()> {
    match format {
        Format::Csv => table.write_csv(&mut out)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &table.to_json())?;
            writeln!(out)?;
        }
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(args: &[&str]) -> Table {
        let cli = Cli::try_parse_from(std::iter::once("iselab").chain(args.iter().copied())).unwrap();
        execute(&cli.command).unwrap().table
    }

    #[test]
    fn moments_exact_two_node_binary() {
        let t = table(&["moments-exact", "--family", "binary", "--lambda", "2", "--n", "2"]);
        assert_eq!(t.rows[0][1], Cell::Text("1".into()));
        assert_eq!(t.rows[0][2], Cell::Float(0.25));
        let Cell::Float(limit) = t.rows[0][3] else { panic!() };
        assert!((limit - 1.2533141).abs() < 1e-7);
        let t = table(&["moments-exact", "--lambda", "1", "--n", "1,2,5"]);
        assert!(t.rows.iter().all(|r| r[1] == Cell::Text("0".into())));
    }

    #[test]
    fn grand_moments_rows() {
        let t = table(&["grand-moments", "--kind", "ise", "--lambda", "2", "--lambda", "4", "--lambda", "3"]);
        assert_eq!(t.rows[0][1], Cell::Text("1".into()));
        assert_eq!(t.rows[1][1], Cell::Text("6".into()));
        assert_eq!(t.rows[2][1], Cell::Text("0".into()));
        let t = table(&["grand-moments", "--kind", "exc", "--lambda", "1"]);
        assert_eq!(t.rows[0][1], Cell::Text("1".into()));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["iselab", "profile", "--n", "8"]), exit::USAGE);
        assert_eq!(run(["iselab", "moments-exact", "--lambda", "x", "--n", "2"]), exit::USAGE);
        assert_eq!(run(["iselab", "no-such-command"]), exit::USAGE);
    }

    #[test]
    fn csv_has_versioned_header() {
        let t = table(&["grand-moments", "--lambda", "1,1"]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# schema: iselab-table/1\n"));
        assert!(text.contains("lambda,number,limit\n\"(1,1)\",1/2,"));
    }

    #[test]
    fn non_finite_cells_are_detected() {
        let mut t = Table::new("test", &["v"]);
        t.push(vec![Cell::Float(1.0)]);
        assert!(t.non_finite().is_none());
        t.push(vec![Cell::Float(f64::NAN)]);
        assert_eq!(t.non_finite(), Some((1, "v")));
    }
}
