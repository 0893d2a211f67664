//! Command-line front end for the local-repair code library: distance
//! bounds, bound-comparison tables, parity-design construction, randomized
//! completion, and verification of codes stored as matrix files.
//!
//! Exit codes: 0 success or verified-true, 1 verified-false, 2 usage or
//! input error, 3 enumeration limit exceeded, 4 completion retries
//! exhausted.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use seqloc::bounds::{
    bound_sequence, gopalan_bound, r_delta_bound, single_erasure_dmin_bound,
    two_erasure_dmin_bound, DistanceBound,
};
use seqloc::completion::{complete, verify_dmin_gap_formula, verify_dual_ghw_pattern, CompletionConfig};
use seqloc::locality::RepairStructure;
use seqloc::turan::{ghw_from_supports, subset_ghw_applicable, TuranDesign};
use seqloc::{code, Error, FieldMatrix, LinearCode, Limits, PrimeField};

#[derive(Parser)]
#[command(
    name = "seqloc",
    version,
    about = "Bounds, constructions, and checks for codes repairing two erasures sequentially"
)]
struct Cli {
    /// Longest code for which full weight hierarchies are enumerated.
    #[arg(long, global = true, default_value_t = Limits::default().ghw_max_len)]
    ghw_limit: usize,
    /// Cap on coordinate subsets visited by any single scan.
    #[arg(long, global = true, default_value_t = Limits::default().subset_budget)]
    subset_budget: u64,
    /// Cap on directly enumerated codewords.
    #[arg(long, global = true, default_value_t = Limits::default().word_budget)]
    word_budget: u64,
    /// Random subsets drawn when a completion cannot check cores exhaustively.
    #[arg(long, global = true, default_value_t = Limits::default().core_sample)]
    core_sample: usize,
    #[command(subcommand)]
    command: Command,
}

impl Cli {
    fn limits(&self) -> Limits {
        Limits {
            ghw_max_len: self.ghw_limit,
            subset_budget: self.subset_budget,
            word_budget: self.word_budget,
            core_sample: self.core_sample,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Upper bounds on the minimum distance of locally repairable codes.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// CSV comparison of the bounds for every feasible dimension.
    Table(TableArgs),
    /// Build parity designs.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Complete a parity span to a full code over a prime field.
    Complete(CompleteArgs),
    /// Check properties of codes stored in matrix files.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand)]
enum BoundCommand {
    /// Codes repairing any two erasures by sequential local computations.
    Seq(BoundArgs),
    /// Codes repairing any single erasure locally.
    Single(BoundArgs),
    /// The classical locality bound, optionally with group strength delta.
    Classic(ClassicArgs),
}

#[derive(Args)]
struct BoundArgs {
    /// Block length.
    #[arg(long)]
    n: usize,
    /// Locality: each repair reads at most r symbols.
    #[arg(long)]
    r: usize,
    /// Code dimension.
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct ClassicArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    k: usize,
    /// Erasures each repair group absorbs on its own, plus one.
    #[arg(long)]
    delta: Option<usize>,
}

#[derive(Args)]
struct TableArgs {
    /// Block length.
    #[arg(long)]
    n: usize,
    /// Locality.
    #[arg(long)]
    r: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// Parity design on a complete multipartite graph.
    Turan(TuranArgs),
}

#[derive(Args)]
struct TuranArgs {
    /// Locality of every parity.
    #[arg(long)]
    r: usize,
    /// Vertices per graph part; must divide r.
    #[arg(long)]
    beta: usize,
    /// Write the generator matrix here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// List the parity supports, one per line.
    #[arg(long)]
    print_supports: bool,
}

#[derive(Args)]
struct CompleteArgs {
    /// Matrix file with the parity span to build on.
    #[arg(long)]
    b0: PathBuf,
    /// Dimension of the completed code.
    #[arg(long)]
    k: usize,
    /// Prime modulus of the completion field.
    #[arg(long)]
    q: u64,
    /// Seed for the deterministic candidate stream.
    #[arg(long)]
    seed: u64,
    /// Candidates to try before giving up.
    #[arg(long, default_value_t = 50)]
    max_tries: u32,
    /// Write the completed generator matrix here.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Weight hierarchy and gap numbers of a code.
    Ghw(CodeArg),
    /// Sequential two-erasure repairability of a code.
    Locality(CodeLocalityArgs),
    /// The hierarchy of a code against the gaps of its dual's hierarchy.
    Duality(CodeArg),
    /// Minimum distance of a completed code against its parity-gap formula.
    #[command(name = "theorem3")]
    Theorem3(PairArgs),
    /// Dual hierarchy of a completed code against the two-regime pattern.
    #[command(name = "theorem4")]
    Theorem4(PairArgs),
    /// Whether a parity design meets the footprint bounds exactly.
    #[command(name = "turan-optimality")]
    TuranOptimality(CodeLocalityArgs),
}

#[derive(Args)]
struct CodeArg {
    /// Matrix file with the code's generator.
    #[arg(long)]
    code: PathBuf,
}

#[derive(Args)]
struct CodeLocalityArgs {
    /// Matrix file with the code's generator.
    #[arg(long)]
    code: PathBuf,
    /// Locality to check against.
    #[arg(long)]
    r: usize,
}

#[derive(Args)]
struct PairArgs {
    /// Matrix file with the parity span the code was built on.
    #[arg(long)]
    b0: PathBuf,
    /// Matrix file with the completed code's generator.
    #[arg(long)]
    code: PathBuf,
}

enum CliError {
    Lib(Error),
    Io(PathBuf, std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => e.fmt(f),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Lib(Error::ResourceLimit { .. }) => ExitCode::from(3),
            CliError::Lib(Error::RetryExhausted { .. }) => ExitCode::from(4),
            _ => ExitCode::from(2),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = cli.limits();
    match run(cli.command, &limits) {
        Ok(verified) => {
            if verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run(command: Command, limits: &Limits) -> Result<bool, CliError> {
    match command {
        Command::Bound(b) => run_bound(b),
        Command::Table(args) => run_table(args),
        Command::Construct(ConstructCommand::Turan(args)) => run_turan(args),
        Command::Complete(args) => run_complete(args, limits),
        Command::Verify(v) => run_verify(v, limits),
    }
}

fn print_bound(bound: &DistanceBound) {
    println!("groups: {}", bound.groups);
    println!("gap: {}", bound.gap);
    println!("slack: {}", bound.slack);
    println!("d_min <= {}", bound.value);
}

fn domain_error(n: usize, k: usize) -> CliError {
    CliError::Lib(Error::InvalidParameters(format!(
        "dimension {k} leaves no room for the repair groups in length {n}"
    )))
}

fn run_bound(command: BoundCommand) -> Result<bool, CliError> {
    match command {
        BoundCommand::Seq(a) => {
            let bound =
                two_erasure_dmin_bound(a.n, a.k, a.r)?.ok_or_else(|| domain_error(a.n, a.k))?;
            print_bound(&bound);
        }
        BoundCommand::Single(a) => {
            let bound =
                single_erasure_dmin_bound(a.n, a.k, a.r)?.ok_or_else(|| domain_error(a.n, a.k))?;
            print_bound(&bound);
        }
        BoundCommand::Classic(a) => {
            let value = match a.delta {
                None => gopalan_bound(a.n, a.k, a.r)?,
                Some(delta) => r_delta_bound(a.n, a.k, a.r, delta)?,
            };
            println!("d_min <= {value}");
        }
    }
    Ok(true)
}

fn table_csv(n: usize, r: usize) -> Result<String, CliError> {
    let mut out = String::from("k,bound_eq1,bound_single,bound_seq\n");
    let k_max = n.saturating_sub(n.div_ceil(r + 1));
    for k in 1..=k_max {
        let classic = match gopalan_bound(n, k, r) {
            Ok(v) => v.to_string(),
            Err(_) => String::new(),
        };
        let single = match single_erasure_dmin_bound(n, k, r) {
            Ok(Some(b)) => b.value.to_string(),
            _ => String::new(),
        };
        let seq = match two_erasure_dmin_bound(n, k, r) {
            Ok(Some(b)) => b.value.to_string(),
            _ => String::new(),
        };
        out.push_str(&format!("{k},{classic},{single},{seq}\n"));
    }
    Ok(out)
}

fn run_table(args: TableArgs) -> Result<bool, CliError> {
    if args.r == 0 {
        return Err(CliError::Lib(Error::InvalidParameters(
            "locality r must be positive".into(),
        )));
    }
    let csv = table_csv(args.n, args.r)?;
    match args.out {
        Some(path) => write_file(&path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(true)
}

fn run_turan(args: TuranArgs) -> Result<bool, CliError> {
    let design = TuranDesign::new(args.r, args.beta)?;
    let parity = design.parity_code(PrimeField::new(2)?)?;
    let text = parity.generator().to_text();
    match args.out {
        Some(path) => write_file(&path, &text)?,
        None => print!("{text}"),
    }
    if args.print_supports {
        for s in design.supports() {
            let coords: Vec<String> = s.iter().map(|c| c.to_string()).collect();
            println!("{}", coords.join(" "));
        }
    }
    Ok(true)
}

fn run_complete(args: CompleteArgs, limits: &Limits) -> Result<bool, CliError> {
    let parity = LinearCode::from_span(read_matrix(&args.b0)?)?;
    let config = CompletionConfig {
        field: PrimeField::new(args.q)?,
        dimension: args.k,
        attempts: args.max_tries,
        seed: args.seed,
    };
    let done = complete(&parity, &config, limits)?;
    write_file(&args.out, &done.code.generator().to_text())?;
    println!("attempts: {}", done.attempts_used);
    println!(
        "cores checked: {} ({})",
        done.cores_checked,
        if done.exhaustive { "exhaustive" } else { "sampled" }
    );
    Ok(true)
}

fn run_verify(command: VerifyCommand, limits: &Limits) -> Result<bool, CliError> {
    match command {
        VerifyCommand::Ghw(a) => {
            let code = LinearCode::from_span(read_matrix(&a.code)?)?;
            let profile = code.ghw(limits)?;
            println!("weights: {}", join(profile.weights()));
            println!("gaps: {}", join(&profile.gaps()));
            Ok(true)
        }
        VerifyCommand::Locality(a) => {
            let code = LinearCode::from_span(read_matrix(&a.code)?)?;
            let structure = RepairStructure::from_code(&code, a.r, limits)?;
            let report = structure.sequential_recovery_check();
            println!(
                "reconstructible: {}",
                if report.recoverable { "yes" } else { "no" }
            );
            let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
            for c in 1..=structure.block_length() {
                *sizes
                    .entry(structure.covering_supports(c)?.len())
                    .or_default() += 1;
            }
            let cells: Vec<String> = sizes
                .iter()
                .map(|(size, count)| format!("{size}:{count}"))
                .collect();
            println!("cover sizes: {}", cells.join(" "));
            if !report.failing_pairs.is_empty() {
                let shown: Vec<String> = report
                    .failing_pairs
                    .iter()
                    .take(100)
                    .map(|(a, b)| format!("({a},{b})"))
                    .collect();
                let suffix = if report.failing_pairs.len() > 100 {
                    format!(" and {} more", report.failing_pairs.len() - 100)
                } else {
                    String::new()
                };
                println!("failing pairs: {}{suffix}", shown.join(" "));
            }
            Ok(report.recoverable)
        }
        VerifyCommand::Duality(a) => {
            let code = LinearCode::from_span(read_matrix(&a.code)?)?;
            let holds = code::wei_duality_check(&code, limits)?;
            println!("duality: {holds}");
            Ok(holds)
        }
        VerifyCommand::Theorem3(a) => {
            let (parity, code) = read_pair(&a)?;
            let holds = verify_dmin_gap_formula(&parity, &code, limits)?;
            println!("d_min: {}", code.d_min(limits)?);
            println!("theorem3: {holds}");
            Ok(holds)
        }
        VerifyCommand::Theorem4(a) => {
            let (parity, code) = read_pair(&a)?;
            let holds = verify_dual_ghw_pattern(&parity, &code, limits)?;
            println!("dual weights: {}", join(code.dual().ghw(limits)?.weights()));
            println!("theorem4: {holds}");
            Ok(holds)
        }
        VerifyCommand::TuranOptimality(a) => {
            let code = LinearCode::from_generator(read_matrix(&a.code)?)?;
            let n = code.length();
            let b = code.dimension();
            let supports = code.row_supports();
            let profile = if subset_ghw_applicable(&supports) {
                ghw_from_supports(n, &supports, limits)?
            } else {
                code.ghw(limits)?
            };
            let target = bound_sequence(n, a.r, b)?;
            let tight = profile.weights() == target;
            let minimal = b == (2 * n).div_ceil(a.r + 2);
            println!("profile: {}", join(profile.weights()));
            println!("bound sequence: {}", join(&target));
            println!(
                "optimal: {}",
                if tight && minimal { "yes" } else { "no" }
            );
            Ok(tight && minimal)
        }
    }
}

fn read_pair(args: &PairArgs) -> Result<(LinearCode, LinearCode), CliError> {
    let code = LinearCode::from_span(read_matrix(&args.code)?)?;
    let parity = LinearCode::from_span(read_matrix(&args.b0)?)?;
    let lifted = parity.lift_to(code.field())?;
    Ok((lifted, code))
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn read_matrix(path: &Path) -> Result<FieldMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    Ok(FieldMatrix::parse_text(&text)?)
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    fs::write(path, content).map_err(|e| CliError::Io(path.to_path_buf(), e))
}
