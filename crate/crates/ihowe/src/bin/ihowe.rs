use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_rational::BigRational;

use ihowe::bases::Family;
use ihowe::cli::{exit_code, list_checks, run_batch, Options, Params, Status};

#[derive(Parser)]
#[command(name = "ihowe", about = "Exact checks for iHowe and iSchur dualities")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the registered checks.
    List,
    /// Run one or more checks.
    Run {
        /// Check id; repeat to run several in the worker pool.
        #[arg(long = "check", required = true)]
        checks: Vec<String>,
        #[arg(long)]
        family: Option<Family>,
        /// Rank m, or the gl rank M for checks indexed by M.
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        d: Option<u32>,
        /// Parameter s of the unequal-parameter check.
        #[arg(long)]
        s: Option<i64>,
        /// Evaluate at q = P/Q instead of generically.
        #[arg(long = "q-specialize", value_name = "P/Q")]
        q_specialize: Option<BigRational>,
        /// Write the reports here as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Largest basis to enumerate.
        #[arg(long)]
        cap: Option<u128>,
    },
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::List => {
            for (id, desc, anchor) in list_checks() {
                println!("{id:<18} {desc}  [{anchor}]");
            }
            ExitCode::SUCCESS
        }
        Cmd::Run { checks, family, m, n, d, s, q_specialize, json, cap } => {
            let params = Params { family, m, n, d, big_m: None, s, specialize: q_specialize };
            let mut opts = Options::default();
            if let Some(c) = cap {
                opts.cap = c;
            }
            let jobs: Vec<(String, Params)> = checks.iter().map(|c| (c.clone(), params.clone())).collect();
            let results = run_batch(&jobs, &opts);
            let mut out = Vec::new();
            for (id, r) in checks.iter().zip(&results) {
                match r {
                    Ok(rep) => {
                        let tag = match rep.status {
                            Status::Pass => "PASS",
                            Status::Fail => "FAIL",
                            Status::Error => "ERROR",
                        };
                        let msg = rep.message.as_deref().unwrap_or("");
                        println!("{tag} {id} checked={} {}ms {msg}", rep.checked, rep.elapsed_ms);
                        if let Some(w) = &rep.witness {
                            println!("  at {}: {} != {}", w.label, w.lhs, w.rhs);
                        }
                        out.push(rep.to_json());
                    }
                    Err(e) => {
                        println!("ERROR {id} {e}");
                        out.push(serde_json::json!({ "check_id": id, "error": e.to_string() }));
                    }
                }
            }
            if let Some(p) = json {
                let text = serde_json::to_string_pretty(&out).expect("reports serialize");
                if let Err(e) = std::fs::write(&p, text + "\n") {
                    eprintln!("cannot write {}: {e}", p.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(exit_code(&results) as u8)
        }
    }
}
