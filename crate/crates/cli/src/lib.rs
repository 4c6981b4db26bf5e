//! Batch driver for `maxab`: verification runs, group summaries, lattice
//! export and corpus runs.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use maxab_core::corpus::{
    builtin_corpus, parse_group_file, write_report, BuildOptions, GroupSpec, ReportFormat,
};
use maxab_core::{
    run_all, AssocCheck, GroupTable, LatticeCaps, LatticeError, SubgroupLattice,
    VerificationReport, VerifyOptions, DEFAULT_ORDER_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Environment variable holding the seed for random lattice functions.
pub const SEED_VAR: &str = "MAXAB_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "maxab",
    version,
    about = "Count maximal abelian subgroups of finite p-groups and check the 1 (mod p) congruence"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run every check on the groups in a file or directory of .grp files.
    Verify {
        path: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print order, prime power, center and subgroup count.
    Info {
        path: PathBuf,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Print the subgroup lattice; with --dot as a Graphviz digraph.
    Lattice {
        path: PathBuf,
        #[arg(long)]
        dot: bool,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Work with the builtin corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CorpusAction {
    /// Verify the builtin corpus, plus any .grp files in --extra.
    Run {
        #[arg(long)]
        extra: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print the builtin corpus in the group file format.
    List,
}

#[derive(Args, Debug, Clone)]
pub struct CapArgs {
    /// Largest group order to construct.
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    pub max_order: usize,
    /// Largest group order whose subgroups are enumerated.
    #[arg(long, default_value_t = maxab_core::lattice::DEFAULT_ENUM_CAP)]
    pub enum_cap: usize,
    /// Check associativity of Cayley tables exhaustively at every size.
    #[arg(long)]
    pub full_assoc: bool,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    #[command(flatten)]
    pub caps: CapArgs,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, default_value_t = ReportFormat::Tsv)]
    pub format: ReportFormat,
    /// Compare both Moebius routes and run inversion round trips at every order.
    #[arg(long)]
    pub cross_check_moebius: bool,
    /// Check g(H) for every abelian H at every order.
    #[arg(long)]
    pub all_abelian_h: bool,
}

/// Resolved settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub build: BuildOptions,
    pub verify: VerifyOptions,
    pub jobs: usize,
    pub format: ReportFormat,
}

impl RunConfig {
    pub fn from_args(args: &RunArgs, seed: u64) -> Result<Self, String> {
        if args.jobs == 0 {
            return Err("--jobs must be at least 1".into());
        }
        let (build, caps) = caps_from(&args.caps)?;
        Ok(RunConfig {
            build,
            verify: VerifyOptions {
                caps,
                cross_check_moebius: args.cross_check_moebius,
                all_abelian_h: args.all_abelian_h.then_some(true),
                seed,
                ..VerifyOptions::default()
            },
            jobs: args.jobs,
            format: args.format,
        })
    }
}

fn caps_from(args: &CapArgs) -> Result<(BuildOptions, LatticeCaps), String> {
    if args.max_order == 0 || args.enum_cap == 0 {
        return Err("caps must be positive".into());
    }
    let assoc = if args.full_assoc {
        AssocCheck::Full
    } else {
        AssocCheck::Auto
    };
    Ok((
        BuildOptions {
            order_cap: args.max_order,
            assoc,
        },
        LatticeCaps {
            enum_cap: args.enum_cap,
            ..LatticeCaps::default()
        },
    ))
}

pub fn seed_from_env() -> Result<u64, String> {
    match std::env::var(SEED_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{SEED_VAR} must be an unsigned integer, got {v:?}")),
        Err(_) => Ok(1),
    }
}

/// Reads one group file, or every `.grp` file of a directory in name order.
pub fn load_specs(path: &Path) -> Result<Vec<GroupSpec>, String> {
    let files: Vec<PathBuf> = if path.is_dir() {
        let mut files: Vec<PathBuf> = fs::read_dir(path)
            .map_err(|e| format!("{}: {e}", path.display()))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "grp"))
            .collect();
        files.sort();
        files
    } else {
        vec![path.to_path_buf()]
    };
    let mut specs: Vec<GroupSpec> = Vec::new();
    for file in files {
        let text = fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
        for spec in parse_group_file(&text).map_err(|e| format!("{}: {e}", file.display()))? {
            if specs.iter().any(|s| s.name == spec.name) {
                return Err(format!(
                    "{}: line {}: duplicate group name {:?}",
                    file.display(),
                    spec.line,
                    spec.name
                ));
            }
            specs.push(spec);
        }
    }
    Ok(specs)
}

enum Built {
    Group(GroupTable),
    Capped(String),
}

fn build_all(specs: &[GroupSpec], opts: &BuildOptions) -> Result<Vec<(String, Built)>, String> {
    specs
        .iter()
        .map(|spec| match spec.build(opts) {
            Ok(g) => Ok((spec.name.clone(), Built::Group(g))),
            Err(e) if e.is_cap() => Ok((spec.name.clone(), Built::Capped(e.to_string()))),
            Err(e) => Err(e.to_string()),
        })
        .collect()
}

/// Verifies every spec with group-level parallelism; output order follows
/// `specs` whatever the completion order.
pub fn verify_specs(
    specs: &[GroupSpec],
    config: &RunConfig,
) -> Result<Vec<VerificationReport>, String> {
    let built = build_all(specs, &config.build)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| e.to_string())?;
    Ok(pool.install(|| {
        built
            .par_iter()
            .map(|(name, b)| match b {
                Built::Group(g) => run_all(g, &config.verify),
                Built::Capped(reason) => VerificationReport::skipped(name, None, reason.clone()),
            })
            .collect()
    }))
}

fn emit(reports: &[VerificationReport], format: ReportFormat, out: &mut dyn Write) -> i32 {
    if let Err(e) = write_report(reports, format, out) {
        eprintln!("error: {e}");
        return EXIT_INPUT;
    }
    let failed = reports
        .iter()
        .any(|r| r.status == maxab_core::ReportStatus::Fail);
    if failed {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// `order=8 p=2 k=3 abelian=no center=2 subgroups=6`
pub fn info_line(g: &GroupTable, caps: LatticeCaps) -> String {
    let (p, k) = match g.prime_power() {
        Some(pp) => (pp.p.to_string(), pp.k.to_string()),
        None if g.is_trivial() => ("-".into(), "0".into()),
        None => ("-".into(), "-".into()),
    };
    let subgroups = match SubgroupLattice::build(g, caps) {
        Ok(l) => l.len().to_string(),
        Err(_) => "-".into(),
    };
    format!(
        "order={} p={p} k={k} abelian={} center={} subgroups={subgroups}",
        g.order(),
        yes_no(g.is_abelian()),
        g.center().size()
    )
}

fn cmd_info(path: &Path, caps: &CapArgs, out: &mut dyn Write) -> Result<i32, String> {
    let (build, lattice_caps) = caps_from(caps)?;
    for spec in load_specs(path)? {
        match spec.build(&build) {
            Ok(g) => writeln!(out, "{}: {}", spec.name, info_line(&g, lattice_caps)),
            Err(e) if e.is_cap() => writeln!(out, "{}: skipped ({e})", spec.name),
            Err(e) => return Err(e.to_string()),
        }
        .map_err(|e| e.to_string())?;
    }
    Ok(EXIT_OK)
}

fn cmd_lattice(path: &Path, dot: bool, caps: &CapArgs, out: &mut dyn Write) -> Result<i32, String> {
    let (build, lattice_caps) = caps_from(caps)?;
    for spec in load_specs(path)? {
        let g = match spec.build(&build) {
            Ok(g) => g,
            Err(e) if e.is_cap() => {
                eprintln!("error: {e}");
                return Ok(EXIT_CAP);
            }
            Err(e) => return Err(e.to_string()),
        };
        let lattice = match SubgroupLattice::build(&g, lattice_caps) {
            Ok(l) => l,
            Err(
                e @ (LatticeError::EnumerationCapExceeded { .. }
                | LatticeError::TooManySubgroups { .. }),
            ) => {
                eprintln!("error: {}: {e}", spec.name);
                return Ok(EXIT_CAP);
            }
            Err(e) => return Err(format!("{}: {e}", spec.name)),
        };
        let text = if dot {
            lattice.to_dot(&spec.name)
        } else {
            let mut s = format!("{}: {} subgroups\n", spec.name, lattice.len());
            for (i, sub) in lattice.subgroups().iter().enumerate() {
                let above: Vec<String> = lattice
                    .covers()
                    .iter()
                    .filter(|c| c.0 == i)
                    .map(|c| c.1.to_string())
                    .collect();
                s.push_str(&format!(
                    "{i}\torder={}\tabelian={}\tmaxab={}\tcovered_by=[{}]\n",
                    sub.size(),
                    lattice.is_abelian(i) as u8,
                    lattice.is_maximal_abelian(i) as u8,
                    above.join(",")
                ));
            }
            s
        };
        out.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(specs: Vec<GroupSpec>, run: &RunArgs, out: &mut dyn Write) -> Result<i32, String> {
    let config = RunConfig::from_args(run, seed_from_env()?)?;
    let reports = verify_specs(&specs, &config)?;
    Ok(emit(&reports, config.format, out))
}

/// Runs a parsed command line, writing results to `out`. Diagnostics go to
/// standard error.
pub fn run(cli: Cli, out: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Verify { path, run } => load_specs(path).and_then(|s| cmd_verify(s, run, out)),
        Command::Info { path, caps } => cmd_info(path, caps, out),
        Command::Lattice { path, dot, caps } => cmd_lattice(path, *dot, caps, out),
        Command::Corpus {
            action: CorpusAction::List,
        } => {
            let text = maxab_core::corpus::render_manifest(&builtin_corpus());
            out.write_all(text.as_bytes())
                .map(|_| EXIT_OK)
                .map_err(|e| e.to_string())
        }
        Command::Corpus {
            action: CorpusAction::Run { extra, run },
        } => {
            let mut specs = builtin_corpus().specs;
            let extra_specs = match extra {
                Some(dir) => load_specs(dir),
                None => Ok(Vec::new()),
            };
            extra_specs.and_then(|more| {
                for spec in more {
                    if specs.iter().any(|s| s.name == spec.name) {
                        return Err(format!("duplicate group name {:?}", spec.name));
                    }
                    specs.push(spec);
                }
                cmd_verify(specs, run, out)
            })
        }
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
    }
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let code = run(cli, &mut lock);
    let _ = lock.flush();
    code
}
