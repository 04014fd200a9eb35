//! Command-line front end: `gen` emits cell collections (JSON or dotted
//! words), `convert` re-encodes a single cell, `verify` runs the harness
//! checks and prints one JSON report per check.
//!
//! Exit codes: 0 success, 1 check or internal failure, 2 bad flags or
//! out-of-range arguments, 3 size budget exceeded (`gen`/`convert`).
//! Results go to stdout, logs to stderr.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use amp2::cells::{parse_dotted, CellError};
use amp2::combinat::{decperm_of, le_of};
use amp2::explicit::enumerate_explicit;
use amp2::harness::{gen_budget, run_check, CheckKind, VerifyConfig, ZMode};
use amp2::recursion::{generate_collection, RecError, Variant};

#[derive(Parser)]
#[command(name = "amp2", version, about = "Exact cell collections for the m = 2 positive geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the (n, k) cell collection.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// recursive | explicit
        #[arg(long, default_value = "recursive")]
        method: String,
        /// twisted | plain (recursive method only)
        #[arg(long, default_value = "twisted")]
        variant: String,
        /// json | dotted
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Re-encode one cell given as a dotted word.
    Convert {
        #[arg(long)]
        cell: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// positroid | decperm | le
        #[arg(long)]
        to: String,
    },
    /// Run harness checks and print one JSON report per check.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Comma-separated: cardinality,identity,signs,k1,cyc,probe
        #[arg(long)]
        checks: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// vandermonde | elementary
        #[arg(long, default_value = "vandermonde")]
        zmode: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

const EXIT_FAIL: u8 = 1;
const EXIT_FLAGS: u8 = 2;
const EXIT_BUDGET: u8 = 3;

fn flag_error(msg: &str) -> ExitCode {
    eprintln!("error: {}", msg);
    ExitCode::from(EXIT_FLAGS)
}

fn budget_error(msg: &str) -> ExitCode {
    eprintln!("error: {}", msg);
    ExitCode::from(EXIT_BUDGET)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Gen { n, k, method, variant, format } => cmd_gen(n, k, &method, &variant, &format),
        Command::Convert { cell, n, k, to } => cmd_convert(&cell, n, k, &to),
        Command::Verify { n, k, checks, seed, samples, zmode, jobs } => {
            cmd_verify(n, k, &checks, seed, samples, &zmode, jobs)
        }
    }
}

fn cmd_gen(n: usize, k: usize, method: &str, variant: &str, format: &str) -> ExitCode {
    if k < 1 || k + 2 > n {
        return flag_error(&format!("need 1 <= k <= n-2, got n={}, k={}", n, k));
    }
    if n > gen_budget() {
        return budget_error(&format!("gen budget is n <= {}, got n = {}", gen_budget(), n));
    }
    let collection = match method {
        "recursive" => {
            let variant: Variant = match variant.parse() {
                Ok(v) => v,
                Err(e) => return flag_error(&e),
            };
            generate_collection(n, k, variant)
        }
        "explicit" => enumerate_explicit(n, k),
        other => return flag_error(&format!("unknown method {:?}", other)),
    };
    let collection = match collection {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(EXIT_FAIL);
        }
    };
    match format {
        "json" => {
            println!("{}", serde_json::to_string(&collection).expect("collection serializes"));
            ExitCode::SUCCESS
        }
        "dotted" => match collection.dotted_list() {
            Ok(lines) => {
                for line in lines {
                    println!("{}", line);
                }
                ExitCode::SUCCESS
            }
            Err(RecError::LookupBudget(m)) => budget_error(&format!(
                "dotted output recovers intervals by lookup (budget n <= 8, got n = {})",
                m
            )),
            Err(e) => {
                eprintln!("error: {}", e);
                ExitCode::from(EXIT_FAIL)
            }
        },
        other => flag_error(&format!("unknown format {:?}", other)),
    }
}

fn cmd_convert(cell_text: &str, n: usize, k: usize, to: &str) -> ExitCode {
    if n < 1 || k > n {
        return flag_error(&format!("need 0 <= k <= n, got n={}, k={}", n, k));
    }
    if to == "le" && n > 8 {
        return budget_error(&format!(
            "Le conversion recovers the dual interval by lookup (budget n <= 8, got n = {})",
            n
        ));
    }
    let cell = match parse_dotted(cell_text, n, k) {
        Ok(c) => c,
        Err(CellError::LookupBudget(m)) => {
            return budget_error(&format!(
                "this dotted word needs interval lookup (budget n <= 8, got n = {})",
                m
            ))
        }
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(EXIT_FLAGS);
        }
    };
    let result = match to {
        "positroid" => cell
            .positroid_of()
            .map(|p| serde_json::to_string(&p).expect("positroid serializes")),
        "decperm" => cell
            .positroid_of()
            .map_err(amp2::combinat::CombinatError::from)
            .and_then(|p| decperm_of(&p))
            .map(|dp| serde_json::to_string(&dp).expect("decperm serializes"))
            .map_err(|e| CellError::Lookup(e.to_string())),
        "le" => le_of(&cell)
            .map(|d| d.render())
            .map_err(|e| CellError::Lookup(e.to_string())),
        other => return flag_error(&format!("unknown target {:?}", other)),
    };
    match result {
        Ok(text) => {
            println!("{}", text);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(EXIT_FAIL)
        }
    }
}

fn cmd_verify(
    n: usize,
    k: usize,
    checks: &str,
    seed: u64,
    samples: usize,
    zmode: &str,
    jobs: usize,
) -> ExitCode {
    let zmode: ZMode = match zmode.parse() {
        Ok(m) => m,
        Err(e) => return flag_error(&e),
    };
    if samples == 0 || jobs == 0 {
        return flag_error("samples and jobs must be positive");
    }
    let mut kinds = Vec::new();
    for name in checks.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match CheckKind::parse(name) {
            Some(kind) => kinds.push(kind),
            None => return flag_error(&format!("unknown check {:?}", name)),
        }
    }
    if kinds.is_empty() {
        return flag_error("no checks requested");
    }
    if k < 1 || k + 2 > n {
        return flag_error(&format!("need 1 <= k <= n-2, got n={}, k={}", n, k));
    }
    for kind in &kinds {
        if *kind == CheckKind::K1 && k != 1 {
            return flag_error(&format!("check k1 requires --k 1, got {}", k));
        }
        if n > kind.budget() {
            return flag_error(&format!(
                "check {} budget is n <= {}, got n = {}",
                kind.name(),
                kind.budget(),
                n
            ));
        }
    }
    let cfg = VerifyConfig { seed, samples, zmode, jobs };
    let mut all_pass = true;
    for kind in kinds {
        eprintln!("running check {} for n={}, k={} (seed {})", kind.name(), n, k, seed);
        let report = run_check(kind, n, k, &cfg);
        all_pass &= report.pass;
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}
