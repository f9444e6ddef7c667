use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use unruh_cv::analysis::{DoubleObserverReport, SingleObserverReport};
use unruh_cv::figures::{plot_script, preset};
use unruh_cv::rindler::accel_to_squeezing;
use unruh_cv::selftest::run_selftest;
use unruh_cv::sweep::{self, parse_fixed, run_sweep, Axis, Param, SweepScenario, SweepSpec, Table};
use unruh_cv::Error;

#[derive(Parser)]
#[command(
    name = "unruh-cv",
    version,
    about = "Entanglement of Gaussian field modes seen by accelerated observers"
)]
struct Cli {
    /// Output format. Sweeps default to csv, points to plain text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file (sweep, point, selftest) or directory (figure).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Tolerance for consistency checks. Overrides every selftest default.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads for sweeps and the selftest.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Coarse grids for figure and selftest.
    #[arg(long, global = true)]
    quick: bool,
    /// Also write a gnuplot script next to each figure data file.
    #[arg(long, global = true)]
    plot_script: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every closed-form quantity at one parameter point.
    Point {
        #[command(subcommand)]
        which: PointCmd,
    },
    /// Evaluate quantities over a one- or two-axis grid.
    Sweep(SweepArgs),
    /// Write the data for a named figure preset.
    Figure {
        /// Preset id, e.g. fig3 or mi-double.
        id: String,
    },
    /// Cross-check closed forms against the numeric route.
    Selftest,
}

#[derive(Subcommand)]
enum PointCmd {
    /// Inertial Alice and accelerated Rob.
    Single {
        #[arg(long)]
        s: f64,
        /// Rob's acceleration parameter; alternatively give --aleph and --omega.
        #[arg(long, conflicts_with_all = ["aleph", "omega"])]
        r: Option<f64>,
        #[arg(long, requires = "omega")]
        aleph: Option<f64>,
        #[arg(long, requires = "aleph")]
        omega: Option<f64>,
    },
    /// Two accelerated observers, Leo and Nadia.
    Double {
        #[arg(long)]
        s: f64,
        /// Common acceleration parameter, sets l = n.
        #[arg(long, conflicts_with_all = ["l", "n"])]
        a: Option<f64>,
        #[arg(long, requires = "n")]
        l: Option<f64>,
        #[arg(long, requires = "l")]
        n: Option<f64>,
    },
    /// Separability of two frequency modes at infinite squeezing.
    Frequency {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        nu: f64,
        #[arg(long)]
        aleph: f64,
    },
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_parser = ["single", "double", "frequency"])]
    scenario: String,
    /// `name=min:max:steps` or `name=v1,v2,...`; at most two.
    #[arg(long = "axis", required = true)]
    axes: Vec<String>,
    /// `name=value`.
    #[arg(long = "fix")]
    fixed: Vec<String>,
    /// Quantities to output; all of the scenario's when omitted.
    #[arg(long = "quantity", value_delimiter = ',')]
    quantities: Vec<String>,
}

enum Failure {
    Usage(String),
    Inconsistent(String),
    Io(String),
    Selftest(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Inconsistent(_) => 3,
            Failure::Io(_) => 4,
            Failure::Selftest(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m)
            | Failure::Inconsistent(m)
            | Failure::Io(m)
            | Failure::Selftest(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain { .. }
            | Error::InvalidPartition(_)
            | Error::InvalidArgument(_)
            | Error::NoModes
            | Error::BadShape { .. }
            | Error::DimensionMismatch { .. }
            | Error::ModeOutOfRange { .. }
            | Error::UnorderedModes
            | Error::EmptyModeSet
            | Error::SameMode(_) => Failure::Usage(e.to_string()),
            _ => Failure::Inconsistent(e.to_string()),
        }
    }
}

fn io_err(path: &Path) -> impl Fn(io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Point { which } => cmd_point(cli, which),
        Command::Sweep(args) => cmd_sweep(cli, args),
        Command::Figure { id } => cmd_figure(cli, id),
        Command::Selftest => cmd_selftest(cli),
    }
}

/// Stdout, or the `--out` file.
fn sink(out: Option<&PathBuf>) -> Result<Box<dyn Write>, Failure> {
    match out {
        Some(p) => Ok(Box::new(BufWriter::new(
            File::create(p).map_err(io_err(p))?,
        ))),
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

fn write_table(table: &Table, format: Format, w: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Csv => table.write_csv(&mut *w),
        Format::Json => table.write_jsonl(&mut *w),
    }
}

fn check_monogamy(slack: &[f64], tol: f64) -> Result<(), Failure> {
    if let Some(x) = slack.iter().find(|&&x| x < -tol) {
        return Err(Failure::Inconsistent(format!(
            "monogamy violated by {:.3e} (tolerance {tol:.1e})",
            -x
        )));
    }
    Ok(())
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        Value::Null => out.push((prefix.to_owned(), "n/a".to_owned())),
        other => out.push((
            prefix.to_owned(),
            other.to_string().trim_matches('"').to_owned(),
        )),
    }
}

fn cmd_point(cli: &Cli, which: &PointCmd) -> Result<(), Failure> {
    let tol = cli.tol.unwrap_or(1e-9);
    let (value, point, scenario) = match *which {
        PointCmd::Single { s, r, aleph, omega } => {
            let r = match (r, aleph, omega) {
                (Some(r), _, _) => r,
                (None, Some(a), Some(w)) => accel_to_squeezing(a, w)?,
                _ => return Err(Failure::Usage("give --r, or --aleph with --omega".into())),
            };
            let rep = SingleObserverReport::compute(s, r)?;
            check_monogamy(&rep.monogamy, tol)?;
            let v = serde_json::to_value(&rep).map_err(|e| Failure::Inconsistent(e.to_string()))?;
            (v, vec![(Param::S, s), (Param::R, r)], SweepScenario::Single)
        }
        PointCmd::Double { s, a, l, n } => {
            let (l, n) = match (a, l, n) {
                (Some(a), _, _) => (a, a),
                (None, Some(l), Some(n)) => (l, n),
                _ => return Err(Failure::Usage("give --a, or both --l and --n".into())),
            };
            let rep = DoubleObserverReport::compute(s, l, n)?;
            check_monogamy(&rep.monogamy, tol)?;
            let v = serde_json::to_value(&rep).map_err(|e| Failure::Inconsistent(e.to_string()))?;
            (
                v,
                vec![(Param::S, s), (Param::L, l), (Param::N, n)],
                SweepScenario::Double,
            )
        }
        PointCmd::Frequency { lambda, nu, aleph } => {
            let point = vec![
                (Param::Lambda, lambda),
                (Param::Nu, nu),
                (Param::Aleph, aleph),
            ];
            let names = SweepScenario::Frequency.quantities();
            let cells = sweep::evaluate(SweepScenario::Frequency, &point, names)?;
            let mut m = Map::new();
            for (p, v) in &point {
                m.insert(p.to_string(), Value::from(*v));
            }
            for (name, c) in names.iter().zip(cells) {
                let v = match c {
                    sweep::Cell::Flag(b) => Value::from(b),
                    other => other.as_f64().map_or(Value::Null, Value::from),
                };
                m.insert(name.to_string(), v);
            }
            (Value::Object(m), point, SweepScenario::Frequency)
        }
    };
    let mut w = sink(cli.out.as_ref())?;
    let target = cli.out.clone().unwrap_or_else(|| PathBuf::from("<stdout>"));
    let res = match cli.format {
        Some(Format::Json) => writeln!(w, "{value}"),
        Some(Format::Csv) => {
            let names = scenario.quantities();
            let mut row: Vec<sweep::Cell> =
                point.iter().map(|&(_, v)| sweep::Cell::Num(v)).collect();
            row.extend(sweep::evaluate(scenario, &point, names)?);
            let mut columns: Vec<String> = point.iter().map(|(p, _)| p.to_string()).collect();
            columns.extend(names.iter().map(|s| s.to_string()));
            let table = Table {
                meta: vec![],
                columns,
                rows: vec![row],
            };
            table.write_csv(&mut w)
        }
        None => {
            let mut lines = Vec::new();
            flatten("", &value, &mut lines);
            let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            lines
                .iter()
                .try_for_each(|(k, v)| writeln!(w, "{k:<width$}  {v}"))
        }
    };
    res.and_then(|_| w.flush()).map_err(io_err(&target))
}

fn cmd_sweep(cli: &Cli, args: &SweepArgs) -> Result<(), Failure> {
    let axes = args
        .axes
        .iter()
        .map(|a| a.parse::<Axis>())
        .collect::<Result<Vec<_>, _>>()?;
    let fixed = args
        .fixed
        .iter()
        .map(|f| parse_fixed(f))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = SweepSpec {
        scenario: args.scenario.parse()?,
        axes,
        fixed,
        quantities: args.quantities.clone(),
    };
    spec.validate()?;
    let table = run_sweep(&spec)?;
    let target = cli.out.clone().unwrap_or_else(|| PathBuf::from("<stdout>"));
    let mut w = sink(cli.out.as_ref())?;
    write_table(&table, cli.format.unwrap_or(Format::Csv), &mut w)
        .and_then(|_| w.flush())
        .map_err(io_err(&target))
}

fn cmd_figure(cli: &Cli, id: &str) -> Result<(), Failure> {
    let format = cli.format.unwrap_or(Format::Csv);
    if cli.plot_script && format != Format::Csv {
        return Err(Failure::Usage("--plot-script needs csv output".into()));
    }
    let p = preset(id, cli.quick)?;
    let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).map_err(io_err(&dir))?;
    for panel in &p.panels {
        let table = run_sweep(&panel.spec)?;
        let ext = match format {
            Format::Csv => "csv",
            Format::Json => "jsonl",
        };
        let file = format!("{}.{ext}", panel.stem);
        let path = dir.join(&file);
        let mut w = BufWriter::new(File::create(&path).map_err(io_err(&path))?);
        write_table(&table, format, &mut w)
            .and_then(|_| w.flush())
            .map_err(io_err(&path))?;
        log::info!("wrote {}", path.display());
        if cli.plot_script {
            let gp = dir.join(format!("{}.gp", panel.stem));
            fs::write(&gp, plot_script(panel, &file)).map_err(io_err(&gp))?;
        }
    }
    Ok(())
}

fn cmd_selftest(cli: &Cli) -> Result<(), Failure> {
    let report = run_selftest(cli.quick, cli.tol)?;
    let target = cli.out.clone().unwrap_or_else(|| PathBuf::from("<stdout>"));
    let mut w = sink(cli.out.as_ref())?;
    let res = match cli.format {
        Some(Format::Json) => serde_json::to_writer(&mut w, &report)
            .map_err(io::Error::from)
            .and_then(|_| writeln!(w)),
        _ => report.checks.iter().try_for_each(|c| writeln!(w, "{c}")),
    };
    res.and_then(|_| w.flush()).map_err(io_err(&target))?;
    match report.worst_failure() {
        None => Ok(()),
        Some(c) => Err(Failure::Selftest(format!(
            "selftest failed: {} deviates by {:.3e} at {}",
            c.name, c.max_deviation, c.worst
        ))),
    }
}
