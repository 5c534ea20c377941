//! `sckit`: character tables, normal-subgroup lattices and supercharacter
//! theories from the command line.
//!
//! Exit codes: 0 success, 1 partition checked and rejected by `verify`,
//! 2 parse or input error, 3 order cap exceeded, 4 internal verification
//! failure, 5 a selector names a non-normal subgroup, 6 the partition file
//! is not a partition of the group.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use sckit::constructions::{separation_report, DEFAULT_AUT_CAP};
use sckit::export::{self, SCHEMA_VERSION};
use sckit::group::{GroupConfig, DEFAULT_ORDER_CAP};
use sckit::io::{parse_partition, read_cayley, read_permutations, resolve_subgroup};
use sckit::theory::{dual_partition, finest_nsct, nsct_from_normals, verify_superclass_theory};
use sckit::{catalog, Error, Group, GroupData, GroupPartition, SupercharacterTheory};

#[derive(Parser)]
#[command(name = "sckit", version, about = "Supercharacter theories of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact character table.
    Chartab(Common),
    /// List the normal subgroups with their cover relation and Möbius function.
    Normals(Common),
    /// Build the normal supercharacter theory generated by the seeds.
    Nsct {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        theory: TheoryArgs,
    },
    /// Decide membership of a theory in AutSup, Sup* and NSup.
    Separate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        theory: TheoryArgs,
        /// Use the conjugacy-class theory instead of a normal theory.
        #[arg(long, conflicts_with_all = ["seed", "all_normals"])]
        classes: bool,
    },
    /// Check whether a partition file describes a superclass theory.
    Verify {
        #[command(flatten)]
        common: Common,
        /// One part per line, element names separated by commas.
        partition_file: PathBuf,
    },
}

#[derive(Args)]
struct Common {
    /// Catalog name such as S5, C3xC4, D6 or Q8.
    #[arg(long, group = "source")]
    group: Option<String>,
    /// Cayley table file: order, rows of 0-based indices, optional names.
    #[arg(long, group = "source")]
    cayley: Option<PathBuf>,
    /// One permutation generator per line in cycle notation.
    #[arg(long, group = "source")]
    perm_file: Option<PathBuf>,
    /// Direct product of two catalog groups, written `A,B`.
    #[arg(long, group = "source")]
    product: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for parallel searches.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Seed for randomized fallbacks.
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
    /// Largest accepted group order (default 5000, or SCKIT_ORDER_CAP).
    #[arg(long)]
    order_cap: Option<usize>,
    /// Largest automorphism group scanned for AutSup membership.
    #[arg(long, default_value_t = DEFAULT_AUT_CAP)]
    aut_cap: usize,
}

#[derive(Args)]
struct TheoryArgs {
    /// A normal subgroup: generator names separated by commas, or a factor such as `C3x1`.
    #[arg(long)]
    seed: Vec<String>,
    /// Use every normal subgroup (the finest normal theory).
    #[arg(long, conflicts_with = "seed")]
    all_normals: bool,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Parse(_) => (2, "parse"),
            Error::NotAGroup(_) => (2, "not_a_group"),
            Error::NotASubgroup(_) => (2, "not_a_subgroup"),
            Error::OrderCapExceeded { .. } => (3, "order_cap_exceeded"),
            Error::NotNormal(_) => (5, "not_normal"),
            Error::NotAPartition(_) => (6, "not_a_partition"),
            Error::NotAutomorphism(_)
            | Error::LiftFailure(_)
            | Error::SizeMismatch { .. }
            | Error::VerificationFailed(_)
            | Error::MismatchBug(_)
            | Error::InvalidFactors(_) => (4, "verification_failed"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

fn input_failure(message: String) -> Failure {
    Failure { code: 2, kind: "input", message }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    schema_version: u32,
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: &'a str,
    exit_code: u8,
}

/// Rendered output plus the exit code to finish with.
struct Output {
    text: String,
    code: u8,
}

fn order_cap(common: &Common) -> Result<usize, Failure> {
    if let Some(cap) = common.order_cap {
        return Ok(cap);
    }
    match std::env::var("SCKIT_ORDER_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| input_failure(format!("SCKIT_ORDER_CAP is not a number: {v:?}"))),
        Err(_) => Ok(DEFAULT_ORDER_CAP),
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_failure(format!("{}: {e}", path.display())))
}

fn load_group(common: &Common) -> Result<Group, Failure> {
    let cap = order_cap(common)?;
    if cap == 0 {
        return Err(input_failure("order cap must be positive".into()));
    }
    let g = if let Some(name) = &common.group {
        catalog::group(name)?
    } else if let Some(path) = &common.cayley {
        let config = GroupConfig { order_cap: cap, seed: common.rng_seed, ..GroupConfig::default() };
        read_cayley(&read(path)?, &config)?
    } else if let Some(path) = &common.perm_file {
        read_permutations(&read(path)?, cap)?
    } else if let Some(pair) = &common.product {
        let (a, b) = pair
            .split_once(',')
            .ok_or_else(|| input_failure(format!("--product expects A,B, got {pair:?}")))?;
        catalog::group(&format!("{}x{}", a.trim(), b.trim()))?
    } else {
        return Err(input_failure("one of --group, --cayley, --perm-file or --product is required".into()));
    };
    if g.order() > cap {
        return Err(Error::OrderCapExceeded { what: format!("group of order {}", g.order()), cap }.into());
    }
    Ok(g)
}

fn render<T: Serialize>(json: bool, report: &T, text: impl FnOnce(&T) -> String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
        s.push('\n');
        s
    } else {
        text(report)
    }
}

fn build_theory(data: &GroupData, args: &TheoryArgs) -> Result<SupercharacterTheory, Failure> {
    if args.all_normals {
        return Ok(finest_nsct(data)?);
    }
    let seeds = args.seed.iter().map(|s| resolve_subgroup(data.group(), s)).collect::<Result<Vec<_>, _>>()?;
    Ok(nsct_from_normals(data, &seeds)?)
}

fn run(command: &Command) -> Result<Output, Failure> {
    let common = match command {
        Command::Chartab(c) | Command::Normals(c) => c,
        Command::Nsct { common, .. } | Command::Separate { common, .. } | Command::Verify { common, .. } => common,
    };
    let data = GroupData::with_seed(load_group(common)?, common.rng_seed)?;
    let json = common.json;
    let text = match command {
        Command::Chartab(_) => render(json, &export::chartab_report(&data), export::render_chartab),
        Command::Normals(_) => {
            render(json, &export::lattice_report(data.group(), &data.normal_subgroups()), export::render_lattice)
        }
        Command::Nsct { theory, .. } => {
            let t = build_theory(&data, theory)?;
            render(json, &export::theory_report(&data, &t), export::render_theory)
        }
        Command::Separate { theory, classes, .. } => {
            let t = if *classes {
                SupercharacterTheory::from_superclasses(&data, GroupPartition::classes(data.group()))?
            } else {
                build_theory(&data, theory)?
            };
            let r = separation_report(&data, &t, common.aut_cap)?;
            render(json, &export::separation_json(&data, &t, &r), export::render_separation)
        }
        Command::Verify { partition_file, .. } => {
            let g = data.group();
            let p = parse_partition(g, &read(partition_file)?)?;
            let mut report = export::VerifyReport {
                schema_version: SCHEMA_VERSION,
                group: g.label().to_string(),
                verified: false,
                parts: p.parts().iter().map(|part| part.ones().map(|x| g.name(x).to_string()).collect()).collect(),
                certificate: None,
                character_parts: None,
                witness: None,
                reason: None,
            };
            match verify_superclass_theory(g, data.classes(), data.structure_constants(), &p) {
                Ok(cert) => match dual_partition(data.table(), data.classes(), &p) {
                    Ok(x) => {
                        report.verified = true;
                        report.certificate = Some(cert);
                        report.character_parts = Some(x.parts().to_vec());
                    }
                    Err(e) => report.reason = Some(e.to_string()),
                },
                Err(w) => report.witness = Some(w),
            }
            let code = if report.verified { 0 } else { 1 };
            return Ok(Output { text: render(json, &report, export::render_verify), code });
        }
    };
    Ok(Output { text, code: 0 })
}

fn emit(common_out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match common_out {
        Some(path) => fs::write(path, text).map_err(|e| input_failure(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| input_failure(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Chartab(c) | Command::Normals(c) => c,
        Command::Nsct { common, .. } | Command::Separate { common, .. } | Command::Verify { common, .. } => common,
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(common.threads.max(1)).build();
    let result = match pool {
        Ok(pool) => pool.install(|| run(&cli.command)),
        Err(e) => Err(input_failure(format!("thread pool: {e}"))),
    };
    let outcome = result.and_then(|out| emit(common.out.as_ref(), &out.text).map(|()| out.code));
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if common.json {
                let report = ErrorReport {
                    schema_version: SCHEMA_VERSION,
                    error: ErrorBody { kind: f.kind, message: &f.message, exit_code: f.code },
                };
                println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
