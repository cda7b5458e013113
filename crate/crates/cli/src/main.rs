use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use bailey_core::catalog::{self, VerificationConfig, VerificationReport};
use clap::{Args, Parser, Subcommand};

/// Machine verification of Bailey type transforms and the Rogers-Ramanujan
/// type identities built from them.
#[derive(Debug, Parser)]
#[command(name = "bailey", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every registered identity id, one per line.
    List {
        /// Print the full records as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Verify one identity, one family member (`FAM-4.17[2]`), a whole family, or `all`.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct VerifyArgs {
    target: String,
    /// Series truncation order for coefficient checks.
    #[arg(long)]
    order: Option<usize>,
    /// Random points per exact check.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    trials: Option<u32>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Largest termination index drawn for exact checks.
    #[arg(long)]
    cap: Option<usize>,
    /// Largest k for the two-index families.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    max_k: u32,
    /// Largest s for the three-index families.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    max_s: u32,
    #[arg(long)]
    json: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    /// Include wall-clock times (reports stop being byte-for-byte reproducible).
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List { json } => list(json),
        Command::Verify(args) => verify(args),
    }
}

fn list(json: bool) -> ExitCode {
    let records = catalog::list_identities();
    if json {
        println!("{}", serde_json::to_string_pretty(&records).expect("records serialize"));
    } else {
        for r in records {
            println!("{}", r.id);
        }
    }
    ExitCode::SUCCESS
}

fn verify(args: VerifyArgs) -> ExitCode {
    let config = VerificationConfig {
        order: args.order,
        trials: args.trials,
        seed: args.seed,
        cap: args.cap,
        max_k: args.max_k,
        max_s: args.max_s,
        timing: args.timing,
    };
    let targets = match catalog::expand_targets(&args.target, &config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = args.jobs {
        pool = pool.num_threads(j as usize);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    };
    let results = pool.install(|| catalog::verify_many(&targets, &config));
    let mut reports = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    }

    let text = if args.json {
        let mut s = serde_json::to_string_pretty(&reports).expect("reports serialize");
        s.push('\n');
        s
    } else {
        human(&reports)
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }

    match reports.iter().find(|r| !r.passed()) {
        None => ExitCode::SUCCESS,
        Some(r) => {
            eprintln!("{} {}: {}", r.id, r.status.as_str(), describe_failure(r));
            ExitCode::from(1)
        }
    }
}

fn describe_failure(r: &VerificationReport) -> String {
    let mut s = r.detail.clone().unwrap_or_default();
    if let Some(m) = &r.first_mismatch {
        let _ = write!(s, " (index {}: lhs {} rhs {})", m.index, m.lhs, m.rhs);
    }
    s
}

fn human(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = write!(out, "{:<18} {:<18} engine={:?} seed={}", r.id, r.status.as_str(), r.engine, r.seed);
        if let Some(o) = r.order {
            let _ = write!(out, " order={o}");
        }
        if let Some(t) = r.trials {
            let _ = write!(out, " trials={t}");
        }
        if let Some(c) = r.cap {
            let _ = write!(out, " cap={c}");
        }
        if let Some(ms) = r.elapsed_ms {
            let _ = write!(out, " elapsed_ms={ms}");
        }
        out.push('\n');
        if let Some(m) = &r.first_mismatch {
            let _ = writeln!(out, "    first_mismatch: index={} lhs={} rhs={}", m.index, m.lhs, m.rhs);
        }
        if let Some(d) = &r.detail {
            let _ = writeln!(out, "    detail: {d}");
        }
        for w in &r.warnings {
            let _ = writeln!(out, "    warning: {w}");
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    let _ = writeln!(out, "{passed}/{} passed", reports.len());
    out
}
