//! The `covmat` command line.
//!
//! Exit codes: 0 on success, 1 when a checked claim or criterion fails,
//! 2 on bad input (unreadable or invalid files, unmet preconditions, guard
//! violations).

pub mod render;
pub mod report;

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use covmat::approx::apply;
use covmat::oracle::OracleBudget;
use covmat::relations::{check_all, Outcome};
use covmat::{
    enumerate_lattice, independent_iff_flat_bound, induced_partition_matroid, induced_rank,
    matroid_from_lattice, verify_covering, Covering, Error, InstanceGenerator, Limits, Matroid,
    OperatorKind, RelationReport, SetFamily, SubmodularSystem, TransversalMatroid, VerifyReport,
};
use serde::{Deserialize, Serialize};

use crate::render::LatticeDoc;
use crate::report::{labels, partition_stats, transversal_stats, AnalysisReport, Labels};

/// Environment variable holding the default lattice size guard.
pub const MAX_LATTICE_SIZE_VAR: &str = "COVMAT_MAX_LATTICE_SIZE";

#[derive(Debug, Parser)]
#[command(
    name = "covmat",
    version,
    about = "Matroids and lattices induced by finite coverings"
)]
pub struct Cli {
    /// Largest flat lattice to enumerate. Overrides COVMAT_MAX_LATTICE_SIZE.
    #[arg(long, global = true)]
    pub max_lattice_size: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Property report: partition test, TRA/EQU, closure verdicts, reducible and immured blocks.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Rank, bases, circuits, loops and parallel classes of one matroid.
    Matroid {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Transversal)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The flat lattice of one matroid.
    Lattice {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Transversal)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Image of a set under SH, XH or VH.
    Closure {
        file: PathBuf,
        #[arg(long, value_enum)]
        operator: Operator,
        /// Space-separated element labels.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Containment and preservation claims between the induced matroids.
    Compare {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Remove reducible or immured blocks and print the resulting covering.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Reduct)]
        mode: Mode,
        /// Write the covering here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the invariant suites on a file or on seeded random coverings.
    Verify {
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        file: Option<PathBuf>,
        /// Only the lattice round trip checks.
        #[arg(long)]
        round_trip: bool,
        /// Number of random coverings to check.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest universe for random coverings.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Transversal,
    Sh,
    Xh,
    Vh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Operator {
    Sh,
    Xh,
    Vh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Reduct,
    Exclusion,
}

impl Operator {
    fn kind(self) -> OperatorKind {
        match self {
            Operator::Sh => OperatorKind::SH,
            Operator::Xh => OperatorKind::XH,
            Operator::Vh => OperatorKind::VH,
        }
    }
}

impl Kind {
    fn operator(self) -> Option<OperatorKind> {
        match self {
            Kind::Transversal => None,
            Kind::Sh => Some(OperatorKind::SH),
            Kind::Xh => Some(OperatorKind::XH),
            Kind::Vh => Some(OperatorKind::VH),
        }
    }
}

/// Bad input; maps to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<std::io::Error> for InputError {
    fn from(e: std::io::Error) -> Self {
        InputError(format!("write failed: {e}"))
    }
}

/// Whether every checked claim held.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    Failure,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Failure => 1,
        }
    }

    fn from_passed(passed: bool) -> Self {
        if passed {
            Status::Success
        } else {
            Status::Failure
        }
    }
}

/// Guard from the flag, else the environment variable, else the library default.
pub fn resolve_limits(flag: Option<usize>, env: Option<&str>) -> Result<Limits, InputError> {
    let mut limits = Limits::default();
    let value = match (flag, env) {
        (Some(v), _) => v,
        (None, Some(raw)) => raw.trim().parse().map_err(|_| {
            InputError(format!(
                "{MAX_LATTICE_SIZE_VAR} must be a positive integer, got `{raw}`"
            ))
        })?,
        (None, None) => return Ok(limits),
    };
    if value == 0 {
        return Err(InputError("the lattice size guard must be positive".into()));
    }
    limits.max_lattice_size = value;
    Ok(limits)
}

fn read_family(path: &Path) -> Result<SetFamily, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    SetFamily::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_covering(path: &Path) -> Result<Covering, InputError> {
    Covering::new(read_family(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn no_dot(format: Format) -> Result<(), InputError> {
    if format == Format::Dot {
        Err(InputError(
            "--format dot is only available for `lattice`".into(),
        ))
    } else {
        Ok(())
    }
}

/// Runs one parsed invocation, writing its output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Status, InputError> {
    let env = std::env::var(MAX_LATTICE_SIZE_VAR).ok();
    let limits = resolve_limits(cli.max_lattice_size, env.as_deref())?;
    match cli.command {
        Command::Check { file, format } => {
            no_dot(format)?;
            let c = read_covering(&file)?;
            let report = AnalysisReport::new(&c, &limits);
            match format {
                Format::Json => out.write_all(json(&report).as_bytes())?,
                _ => out.write_all(report.to_text().as_bytes())?,
            }
            Ok(Status::Success)
        }
        Command::Matroid { file, kind, format } => {
            no_dot(format)?;
            let stats = match kind.operator() {
                None => {
                    let f = read_family(&file)?;
                    let c = Covering::new(f.clone()).ok();
                    transversal_stats(&f, c.as_ref(), &limits)?
                }
                Some(op) => {
                    let c = read_covering(&file)?;
                    partition_stats(&c, op, &induced_partition_matroid(&c, op)?)
                }
            };
            match format {
                Format::Json => out.write_all(json(&stats).as_bytes())?,
                _ => out.write_all(stats.to_text().as_bytes())?,
            }
            Ok(Status::Success)
        }
        Command::Lattice { file, kind, format } => {
            let (f, l) = match kind.operator() {
                None => {
                    let f = read_family(&file)?;
                    let l = enumerate_lattice(&TransversalMatroid::new(f.clone()), &limits)?;
                    (f, l)
                }
                Some(op) => {
                    let c = read_covering(&file)?;
                    let l = enumerate_lattice(&induced_partition_matroid(&c, op)?, &limits)?;
                    (c.into_family(), l)
                }
            };
            let name = match kind.operator() {
                None => "transversal".to_string(),
                Some(op) => op.name().to_string(),
            };
            let doc = LatticeDoc::new(&name, &f, &l);
            let body = match format {
                Format::Text => render::text(&doc),
                Format::Json => json(&doc),
                Format::Dot => render::dot(&doc),
            };
            out.write_all(body.as_bytes())?;
            Ok(Status::Success)
        }
        Command::Closure {
            file,
            operator,
            set,
            format,
        } => {
            no_dot(format)?;
            let c = read_covering(&file)?;
            let x = c.universe().parse_set(&set)?;
            let image = apply(&c, operator.kind(), x);
            match format {
                Format::Json => out.write_all(
                    json(&ClosureOutput {
                        operator: operator.kind(),
                        set: labels(&c, x),
                        image: labels(&c, image),
                    })
                    .as_bytes(),
                )?,
                _ => writeln!(out, "{}", c.format_set(image))?,
            }
            Ok(Status::Success)
        }
        Command::Compare { file, format } => {
            no_dot(format)?;
            let c = read_covering(&file)?;
            let report = check_all(&c, &limits)?;
            match format {
                Format::Json => out.write_all(json(&report).as_bytes())?,
                _ => out.write_all(relation_text(&report).as_bytes())?,
            }
            Ok(Status::from_passed(report.all_hold()))
        }
        Command::Reduce { file, mode, output } => {
            let c = read_covering(&file)?;
            let reduced = match mode {
                Mode::Reduct => covmat::reduct(&c)?,
                Mode::Exclusion => covmat::exclusion(&c)?,
            };
            let text = reduced.to_text();
            match output {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(Status::Success)
        }
        Command::Verify {
            file,
            round_trip,
            random,
            seed,
            max_n,
            format,
        } => {
            no_dot(format)?;
            match (file, random) {
                (Some(path), _) => {
                    let c = read_covering(&path)?;
                    let report = if round_trip {
                        round_trip_report(&c, &limits)?
                    } else {
                        verify_covering(&c, &limits, &OracleBudget::default())?
                    };
                    match format {
                        Format::Json => out.write_all(json(&report).as_bytes())?,
                        _ => out.write_all(verify_text(&report).as_bytes())?,
                    }
                    Ok(Status::from_passed(report.passed()))
                }
                (None, Some(count)) => {
                    if !(1..=64).contains(&max_n) {
                        return Err(InputError("--max-n must be between 1 and 64".into()));
                    }
                    let run = random_run(count, seed, max_n, round_trip, &limits)?;
                    match format {
                        Format::Json => out.write_all(json(&run).as_bytes())?,
                        _ => out.write_all(run.to_text().as_bytes())?,
                    }
                    Ok(Status::from_passed(run.failures.is_empty()))
                }
                (None, None) => Err(InputError(
                    "give a covering file or --random <count>".into(),
                )),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureOutput {
    pub operator: OperatorKind,
    pub set: Labels,
    pub image: Labels,
}

/// The lattice round trip and the flat-bound independence test.
pub fn round_trip_report(c: &Covering, limits: &Limits) -> Result<VerifyReport, InputError> {
    let tm = TransversalMatroid::of_covering(c);
    let l = enumerate_lattice(&tm, limits)?;
    let system = SubmodularSystem::from_lattice(&l, &tm)?;
    let rt = matroid_from_lattice(system.clone());
    let first =
        |pred: &dyn Fn(covmat::ElementSet) -> bool| c.ground().subsets().find(|&x| !pred(x));
    let mut report = VerifyReport::default();
    let checks: [(&str, Option<covmat::ElementSet>); 3] = [
        (
            "lattice bounds give the transversal independent sets",
            first(&|x| rt.is_independent(x) == tm.is_independent(x)),
        ),
        (
            "induced rank equals transversal rank",
            first(&|x| induced_rank(&system, x) == tm.rank(x)),
        ),
        (
            "independent iff every flat bounds it",
            first(&|x| independent_iff_flat_bound(&tm, &l, x) == tm.is_independent(x)),
        ),
    ];
    for (name, bad) in checks {
        report.checks.push(covmat::CheckResult {
            name: name.into(),
            passed: bad.is_none(),
            detail: bad.map(|x| format!("differs at {}", c.format_set(x))),
        });
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomFailure {
    pub index: usize,
    pub covering: String,
    pub failed: Vec<covmat::CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomRun {
    pub count: usize,
    pub seed: u64,
    pub max_n: usize,
    pub failures: Vec<RandomFailure>,
}

impl RandomRun {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.failures {
            let _ = writeln!(out, "FAIL covering #{}", f.index);
            for line in f.covering.lines() {
                let _ = writeln!(out, "    {line}");
            }
            for c in &f.failed {
                let _ = writeln!(out, "  {}: {}", c.name, c.detail.as_deref().unwrap_or(""));
            }
        }
        let verdict = if self.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        let _ = writeln!(
            out,
            "{verdict} {} of {} random coverings (seed {}, n ≤ {})",
            self.count - self.failures.len(),
            self.count,
            self.seed,
            self.max_n
        );
        out
    }
}

fn random_run(
    count: usize,
    seed: u64,
    max_n: usize,
    round_trip: bool,
    limits: &Limits,
) -> Result<RandomRun, InputError> {
    let mut g = InstanceGenerator::new(seed);
    let mut failures = Vec::new();
    for index in 0..count {
        let n = g.size(1, max_n);
        let c = g.covering(n, max_n);
        let report = if round_trip {
            round_trip_report(&c, limits)?
        } else {
            verify_covering(&c, limits, &OracleBudget::default())?
        };
        if !report.passed() {
            failures.push(RandomFailure {
                index,
                covering: c.to_text(),
                failed: report.failures().cloned().collect(),
            });
        }
    }
    Ok(RandomRun {
        count,
        seed,
        max_n,
        failures,
    })
}

pub fn verify_text(report: &VerifyReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        match &c.detail {
            Some(d) => {
                let _ = writeln!(out, "{verdict} {}: {d}", c.name);
            }
            None => {
                let _ = writeln!(out, "{verdict} {}", c.name);
            }
        }
    }
    out
}

pub fn relation_text(report: &RelationReport) -> String {
    let mut out = String::new();
    for v in &report.claims {
        let _ = match &v.outcome {
            Outcome::Holds => writeln!(out, "HOLDS     {}", v.claim),
            Outcome::Violated { witness } => writeln!(out, "VIOLATED  {}: {witness}", v.claim),
            Outcome::Inapplicable { precondition } => {
                writeln!(out, "N/A       {} (needs {precondition})", v.claim)
            }
            Outcome::Observation { broken, detail } => {
                let what = if *broken { "broken" } else { "kept" };
                writeln!(out, "OBSERVED  {} ({what}): {detail}", v.claim)
            }
        };
    }
    out
}
