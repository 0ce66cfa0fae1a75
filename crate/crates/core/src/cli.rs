//! The `asz` command line.
//!
//! Exit codes: 0 success, 1 invalid instance, 2 I/O or parse failure,
//! 3 internal invariant breach, 4 oracle limit exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::asz::{asz_color, Strategy};
use crate::biclique::{bitvector_coloring, BicliquePartition};
use crate::bounds::{
    build_table, closed_form_exponent, compare_mubayi_vishwanathan, mv_exponent, strategy_bound,
    verify_bound_chain, BoundKind,
};
use crate::bp::bp_exact;
use crate::error::Error;
use crate::gen::{gen_matching, gen_random_partition, gen_star_partition};
use crate::graph::{chromatic_number_exact, is_proper};
use crate::instance::{ColorReport, InstanceFile};
use crate::limits::OracleLimits;
use crate::sweep::Sweep;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_ORACLE_LIMIT: i32 = 4;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        Error::OracleLimit(_) => EXIT_ORACLE_LIMIT,
        Error::Internal(_) | Error::EmptyPartition => EXIT_INTERNAL,
        Error::MalformedInput(_)
        | Error::PreconditionViolation(_)
        | Error::InvalidPartition(_)
        | Error::EdgeCollision { .. }
        | Error::Capacity(_)
        | Error::Domain(_) => EXIT_INVALID,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "asz",
    version,
    about = "Certified coloring of biclique-partitioned graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Thm1,
    Prop2,
    Greedy,
    Bitvector,
}

impl StrategyArg {
    fn strategy(self) -> Option<Strategy> {
        match self {
            StrategyArg::Thm1 => Some(Strategy::Thm1),
            StrategyArg::Prop2 => Some(Strategy::Prop2),
            StrategyArg::Greedy => Some(Strategy::Greedy),
            StrategyArg::Bitvector => None,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that an instance file is an edge-disjoint biclique partition.
    Validate { path: PathBuf },
    /// Color an instance and report the certified bound.
    Color {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "thm1")]
        strategy: StrategyArg,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the recurrence bound tables.
    Bounds {
        #[arg(long = "max", default_value_t = 20)]
        max_k: u64,
        /// Verify the full inequality chain up to max(K, 4).
        #[arg(long)]
        check: bool,
        /// Compare against the ((log k)^2 + log k)/2 exponent.
        #[arg(long)]
        mv: bool,
        #[arg(long)]
        json: bool,
        /// Print only the summaries of --check and --mv.
        #[arg(long)]
        no_table: bool,
    },
    /// Exact chromatic number of an instance's graph.
    Chi {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Exact biclique partition number of an instance's graph.
    Bp {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write a generated instance file.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Check chi <= bp + 1 on every labeled graph with at most N vertices.
    Sweep {
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Checkpoint file for resuming an interrupted sweep.
        #[arg(long)]
        progress: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum GenFamily {
    /// K_n as n-1 stars.
    Star {
        #[arg(long)]
        n: usize,
    },
    /// m disjoint edges.
    Matching {
        #[arg(long)]
        m: usize,
    },
    /// Random edge-disjoint bicliques (SplitMix64).
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Runs the CLI with explicit arguments and output streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_IO } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

type CmdResult = Result<i32, Error>;

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match command {
        Command::Validate { path } => cmd_validate(&path, out),
        Command::Color {
            path,
            strategy,
            trace,
            json,
        } => cmd_color(&path, strategy, trace, json, out, err),
        Command::Bounds {
            max_k,
            check,
            mv,
            json,
            no_table,
        } => cmd_bounds(max_k, check, mv, json, no_table, out, err),
        Command::Chi { path, json } => cmd_chi(&path, json, out),
        Command::Bp { path, json } => cmd_bp(&path, json, out),
        Command::Gen { family, out: path } => cmd_gen(family, path.as_deref(), out),
        Command::Sweep {
            n_max,
            jobs,
            out: path,
            progress,
        } => cmd_sweep(n_max, jobs, path.as_deref(), progress.as_deref(), out),
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    writeln!(out, "{text}").map_err(io_err)
}

/// Loads an instance; `Ok(Err(code))` means the instance was invalid and the
/// violations have been printed.
fn load_valid(path: &Path, out: &mut dyn Write) -> Result<Result<BicliquePartition, i32>, Error> {
    let p = InstanceFile::read(path)?.to_partition()?;
    let report = p.validate();
    if report.ok() {
        return Ok(Ok(p));
    }
    for v in &report.violations {
        writeln!(out, "{v}").map_err(io_err)?;
    }
    Ok(Err(EXIT_INVALID))
}

fn cmd_validate(path: &Path, out: &mut dyn Write) -> CmdResult {
    match load_valid(path, out)? {
        Ok(_) => {
            writeln!(out, "OK").map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Err(code) => Ok(code),
    }
}

fn cmd_color(
    path: &Path,
    strategy: StrategyArg,
    trace: bool,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let p = match load_valid(path, out)? {
        Ok(p) => p,
        Err(code) => return Ok(code),
    };
    let (coloring, rows, bound) = match strategy.strategy() {
        Some(s) => {
            let (c, t) = asz_color(&p, s)?;
            (c, Some(t), strategy_bound(s, p.m()))
        }
        None => (bitvector_coloring(&p)?, None, BigUint::one() << p.m()),
    };
    let proper = is_proper(p.graph(), &coloring)?;
    let within_bound = BigUint::from(coloring.num_colors()) <= bound;
    let report = ColorReport {
        strategy: ColorReport::strategy_name(strategy.strategy()),
        n: p.n(),
        m: p.m(),
        num_colors: coloring.num_colors(),
        colors: coloring.into_assignment(),
        bound: bound.to_string(),
        proper,
        within_bound,
        trace: if trace { rows } else { None },
    };

    if json {
        write_json(out, &report)?;
    } else {
        print_color_report(&report, out).map_err(io_err)?;
    }
    if proper && within_bound {
        Ok(EXIT_OK)
    } else {
        writeln!(
            err,
            "internal error: coloring proper = {proper}, {} colors against bound {}",
            report.num_colors, report.bound
        )
        .map_err(io_err)?;
        Ok(EXIT_INTERNAL)
    }
}

fn print_color_report(r: &ColorReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "strategy: {}", r.strategy)?;
    writeln!(out, "n: {}  m: {}", r.n, r.m)?;
    writeln!(out, "num_colors: {}", r.num_colors)?;
    writeln!(out, "bound: {}", r.bound)?;
    let colors: Vec<String> = r.colors.iter().map(u64::to_string).collect();
    writeln!(out, "colors: {}", colors.join(" "))?;
    if let Some(trace) = &r.trace {
        writeln!(out, "trace:")?;
        writeln!(
            out,
            "  depth  m  pivot  side  indegree  contributing  inside  outside  colors"
        )?;
        for row in &trace.rows {
            writeln!(
                out,
                "  {}  {}  {}  {}  {}  {}  {}  {}  {}",
                row.depth,
                row.m,
                row.pivot,
                row.side,
                row.indegree,
                row.contributing,
                row.inside_size,
                row.outside_size,
                row.colors
            )?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct BoundRow {
    k: u64,
    rec4: String,
    rec2: String,
    pow2: String,
    closed_form: Option<String>,
    mv: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    improved: Option<bool>,
}

fn pow2_text(k: u64) -> String {
    if k <= 64 {
        (BigUint::one() << k).to_string()
    } else {
        format!("2^{k}")
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_bounds(
    max_k: u64,
    check: bool,
    mv: bool,
    json: bool,
    no_table: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    if max_k == 0 {
        return Err(Error::Domain("--max must be at least 1".into()));
    }
    let len = usize::try_from(max_k).map_err(|_| Error::Domain("--max too large".into()))?;
    let mut code = EXIT_OK;

    if !no_table {
        let rec4 = build_table(BoundKind::Rec4, len);
        let rec2 = build_table(BoundKind::Rec2, len);
        let rows: Vec<BoundRow> = (0..=max_k)
            .map(|k| {
                let exps = (k >= 1).then(|| {
                    let c = closed_form_exponent(k).expect("k >= 1");
                    let m = mv_exponent(k).expect("k >= 1");
                    (c, m)
                });
                BoundRow {
                    k,
                    rec4: rec4.get(k as usize).to_string(),
                    rec2: rec2.get(k as usize).to_string(),
                    pow2: pow2_text(k),
                    closed_form: exps.map(|(c, _)| format!("{c:.6}")),
                    mv: exps.map(|(_, m)| format!("{m:.6}")),
                    improved: mv.then(|| {
                        exps.is_some_and(|(c, m)| m - c > crate::bounds::COMPARISON_MARGIN)
                    }),
                }
            })
            .collect();
        if json {
            write_json(out, &rows)?;
        } else {
            let mut header = String::from("k\trec4\trec2\t2^k\tclosed_form\tmv");
            if mv {
                header.push_str("\timproved");
            }
            writeln!(out, "{header}").map_err(io_err)?;
            for r in &rows {
                let mut line = format!(
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    r.k,
                    r.rec4,
                    r.rec2,
                    r.pow2,
                    r.closed_form.as_deref().unwrap_or("-"),
                    r.mv.as_deref().unwrap_or("-")
                );
                if let Some(flag) = r.improved {
                    line.push_str(if flag { "\tyes" } else { "\tno" });
                }
                writeln!(out, "{line}").map_err(io_err)?;
            }
        }
    }

    if check {
        let report = verify_bound_chain(max_k.max(4))?;
        if report.ok() {
            writeln!(out, "check: OK for 1 <= k <= {}", report.max_k).map_err(io_err)?;
        } else {
            for f in &report.failures {
                writeln!(err, "check failed: {:?} at k = {}", f.check, f.k).map_err(io_err)?;
            }
            code = EXIT_INTERNAL;
        }
    }
    if mv {
        let cmp = compare_mubayi_vishwanathan(1, max_k)?;
        match cmp.improved_from {
            Some(k) => writeln!(
                out,
                "mv: closed form is smaller for every {k} <= k <= {max_k}; ratio at k = {max_k} is {:.6}",
                cmp.ratio_at_hi
            ),
            None => writeln!(out, "mv: closed form is not smaller at k = {max_k}"),
        }
        .map_err(io_err)?;
    }
    Ok(code)
}

fn cmd_chi(path: &Path, json: bool, out: &mut dyn Write) -> CmdResult {
    let p = match load_valid(path, out)? {
        Ok(p) => p,
        Err(code) => return Ok(code),
    };
    let limits = OracleLimits::from_env()?;
    let (chi, witness) = chromatic_number_exact(p.graph(), &limits)?;
    if json {
        #[derive(Serialize)]
        struct ChiReport<'a> {
            chi: usize,
            coloring: &'a [u64],
        }
        write_json(
            out,
            &ChiReport {
                chi,
                coloring: witness.assignment(),
            },
        )?;
    } else {
        let colors: Vec<String> = witness.assignment().iter().map(u64::to_string).collect();
        writeln!(out, "chi: {chi}\ncoloring: {}", colors.join(" ")).map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

fn cmd_bp(path: &Path, json: bool, out: &mut dyn Write) -> CmdResult {
    let p = match load_valid(path, out)? {
        Ok(p) => p,
        Err(code) => return Ok(code),
    };
    let limits = OracleLimits::from_env()?;
    let (bp, witness) = bp_exact(p.graph(), &limits)?;
    if json {
        #[derive(Serialize)]
        struct BpReport {
            bp: usize,
            witness: InstanceFile,
        }
        write_json(
            out,
            &BpReport {
                bp,
                witness: InstanceFile::from_partition(&witness),
            },
        )?;
    } else {
        writeln!(out, "bp: {bp}").map_err(io_err)?;
        for h in witness.bicliques() {
            writeln!(out, "  {:?} x {:?}", h.part_a.members(), h.part_b.members())
                .map_err(io_err)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_gen(family: GenFamily, path: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    let p = match family {
        GenFamily::Star { n } => gen_star_partition(n),
        GenFamily::Matching { m } => gen_matching(m),
        GenFamily::Random { n, m, seed } => {
            if n < 2 {
                return Err(Error::Domain("random instances need n >= 2".into()));
            }
            gen_random_partition(n, m, seed)
        }
    };
    let text = InstanceFile::from_partition(&p).to_json();
    match path {
        Some(path) => {
            fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?
        }
        None => out.write_all(text.as_bytes()).map_err(io_err)?,
    }
    Ok(EXIT_OK)
}

fn cmd_sweep(
    n_max: usize,
    jobs: Option<usize>,
    path: Option<&Path>,
    progress: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let mut sweep = Sweep::new(n_max);
    if let Some(j) = jobs {
        sweep = sweep.jobs(j);
    }
    if let Some(p) = progress {
        sweep = sweep.progress_file(p);
    }
    let report = sweep.run()?;
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    match path {
        Some(path) => {
            fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            writeln!(
                out,
                "checked {} graphs on up to {n_max} vertices: {} violations, max chi - bp = {}",
                report.graphs_checked,
                report.violations.len(),
                report.max_gap
            )
            .map_err(io_err)?;
        }
        None => out.write_all(text.as_bytes()).map_err(io_err)?,
    }
    Ok(if report.ok() { EXIT_OK } else { EXIT_INTERNAL })
}
