use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use ppn_core::corpus::{default_corpus, CorpusCaps, CorpusEntry};
use ppn_core::crosscheck::cross_validate;
use ppn_core::harness::{
    falsify, CheckReport, ClaimId, DroppedHypothesis, Harness, HarnessConfig, Tally, Verdict,
};
use ppn_core::powerful::{self, upper_powerfully_central_series};
use ppn_core::{Error, PcPresentation, Subgroup};

const DEFAULT_PRIMES: [u32; 2] = [3, 5];

#[derive(Parser)]
#[command(
    name = "ppn",
    version,
    about = "Powerful and powerfully nilpotent p-groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, exponent, centre and powerful data of a presented group.
    Info { file: PathBuf },
    /// Upper powerfully central series as JSON.
    Series { file: PathBuf },
    /// Run the theorem checks on one group or on the corpus.
    Verify(VerifyArgs),
    /// Cross-validate the subgroup algebra against the Cayley-table oracle.
    Oracle { file: PathBuf },
    /// Drop one hypothesis of the main theorem and search for a counterexample.
    Falsify(FalsifyArgs),
}

#[derive(Args)]
struct CorpusArgs {
    /// Use the 2-group corpus instead of the odd-prime corpus.
    #[arg(long)]
    p2: bool,
    /// Only corpus groups of at most this order.
    #[arg(long)]
    max_order: Option<u128>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
    file: Option<PathBuf>,
    #[arg(long)]
    corpus: bool,
    /// Comma-separated claim ids; all claims by default.
    #[arg(long, value_delimiter = ',')]
    claims: Vec<ClaimId>,
    #[command(flatten)]
    corpus_args: CorpusArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FalsifyArgs {
    /// One of subset_gp, powerful, normal.
    #[arg(long)]
    drop_hypothesis: DroppedHypothesis,
    #[arg(long, required = true)]
    corpus: bool,
    #[command(flatten)]
    corpus_args: CorpusArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Info { file } => info(&file),
        Command::Series { file } => series(&file),
        Command::Verify(args) => verify(args),
        Command::Oracle { file } => oracle(&file),
        Command::Falsify(args) => run_falsify(args),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(file: &Path) -> Result<PcPresentation, String> {
    let text = fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    PcPresentation::parse(&text).map_err(|e| format!("{}: {e}", file.display()))
}

fn group_name(file: &Path) -> String {
    file.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| file.display().to_string())
}

fn corpus(args: &CorpusArgs) -> Result<Vec<CorpusEntry>, String> {
    let mut caps = CorpusCaps::default();
    if let Some(m) = args.max_order {
        caps = caps.with_max_order(m);
    }
    let primes: &[u32] = if args.p2 { &[2] } else { &DEFAULT_PRIMES };
    default_corpus(primes, &caps).map_err(|e| e.to_string())
}

fn info(file: &Path) -> Result<ExitCode, String> {
    let pres = load(file)?;
    let g = Subgroup::full(&pres);
    let err = |e: Error| e.to_string();
    let s = upper_powerfully_central_series(&g).map_err(err)?;
    let class = match s.powerful_class {
        Some(c) => c.to_string(),
        None => "-".into(),
    };
    println!(
        "order={} powerful={} powerfully_nilpotent={} class={}",
        pres.order(),
        s.powerful,
        s.powerful_class.is_some(),
        class
    );
    println!("exponent={}", g.exponent().map_err(err)?);
    let z = g.center().map_err(err)?;
    println!("center order={} igs={}", z.order(), igs(&z));
    let orders: Vec<String> = s.terms.iter().map(|t| t.order().to_string()).collect();
    println!(
        "series orders={} reaches_group={}",
        orders.join(","),
        s.reaches_group
    );
    Ok(ExitCode::SUCCESS)
}

fn igs(s: &Subgroup<'_>) -> String {
    let parts: Vec<String> = s.igs().iter().map(|e| e.to_string()).collect();
    format!("[{}]", parts.join(" "))
}

fn series(file: &Path) -> Result<ExitCode, String> {
    let pres = load(file)?;
    let g = Subgroup::full(&pres);
    let s = powerful::upper_powerfully_central_series(&g).map_err(|e| e.to_string())?;
    println!(
        "{}",
        serde_json::to_string_pretty(&s).map_err(|e| e.to_string())?
    );
    Ok(ExitCode::SUCCESS)
}

fn reports_for(id: &str, pres: &PcPresentation, claims: &[ClaimId]) -> Vec<CheckReport> {
    match Harness::new(id, pres, HarnessConfig::default()) {
        Ok(h) => h.run_claims(claims),
        Err(e) => {
            let mut claims = claims.to_vec();
            claims.sort();
            claims.dedup();
            claims
                .into_iter()
                .map(|c| {
                    let mut t = Tally::new(c, id);
                    t.skip(e.to_string());
                    t.finish()
                })
                .collect()
        }
    }
}

fn verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let claims = if args.claims.is_empty() {
        ClaimId::ALL.to_vec()
    } else {
        args.claims.clone()
    };
    let reports: Vec<CheckReport> = match &args.file {
        Some(file) => {
            let pres = load(file)?;
            reports_for(&group_name(file), &pres, &claims)
        }
        None => corpus(&args.corpus_args)?
            .par_iter()
            .map(|entry| reports_for(&entry.id, &entry.presentation, &claims))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect(),
    };
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&reports).map_err(|e| e.to_string())?
        );
    } else {
        print_table(&reports);
    }
    Ok(if reports.iter().any(CheckReport::is_failure) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn print_table(reports: &[CheckReport]) {
    let width = reports
        .iter()
        .map(|r| r.group_id.len())
        .max()
        .unwrap_or(5)
        .max(5);
    println!(
        "{:<14} {:<width$} {:<8} {:>10} {:>10}",
        "claim", "group", "verdict", "checked", "filtered"
    );
    for r in reports {
        let verdict = match r.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Vacuous => "vacuous",
        };
        println!(
            "{:<14} {:<width$} {:<8} {:>10} {:>10}",
            r.claim_id.as_str(),
            r.group_id,
            verdict,
            r.instances_checked,
            r.hypothesis_filtered
        );
        if let Some(w) = &r.witness {
            println!(
                "  witness: {}",
                serde_json::to_string(w).unwrap_or_else(|_| w.description.clone())
            );
        }
    }
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    println!(
        "{} reports: {} pass, {} fail, {} vacuous",
        reports.len(),
        count(Verdict::Pass),
        count(Verdict::Fail),
        count(Verdict::Vacuous)
    );
}

fn oracle(file: &Path) -> Result<ExitCode, String> {
    let pres = load(file)?;
    let r = cross_validate(&pres).map_err(|e| e.to_string())?;
    println!(
        "subgroups={} comparisons={} mismatches={}",
        r.subgroups,
        r.comparisons,
        r.mismatches.len()
    );
    for m in &r.mismatches {
        println!("  {m}");
    }
    Ok(if r.agrees() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_falsify(args: FalsifyArgs) -> Result<ExitCode, String> {
    let entries = corpus(&args.corpus_args)?;
    match falsify(&entries, args.drop_hypothesis, HarnessConfig::default())
        .map_err(|e| e.to_string())?
    {
        Some(w) => {
            println!(
                "witness: {} has a subgroup of order {} that is not powerfully nilpotent",
                w.group_id, w.n_order
            );
            println!(
                "{}",
                serde_json::to_string_pretty(&w).map_err(|e| e.to_string())?
            );
            Ok(ExitCode::from(1))
        }
        None => {
            println!(
                "no witness in {} corpus groups with {} dropped",
                entries.len(),
                args.drop_hypothesis
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}
