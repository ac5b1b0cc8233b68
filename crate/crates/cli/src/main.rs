use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{ArgGroup, Parser, Subcommand};
use serde_json::json;

use seqrec_core::analysis::{self, VerifyMode, VerifyOptions, DEFAULT_BUDGET, DEFAULT_FAILURE_CAP};
use seqrec_core::construction::{self, CodeInstance};
use seqrec_core::decoder::{self, ErasurePattern, PeelOutcome};
use seqrec_core::{formats, graph, Error};

#[derive(Parser)]
#[command(name = "seqrec", version, about = "Codes with locality and sequential recovery from erasures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a base graph (projective plane incidence or random girth-6).
    #[command(group(ArgGroup::new("kind").required(true).args(["pg", "random"])))]
    GenGraph {
        /// Incidence graph of PG(2, q), q prime.
        #[arg(long, value_name = "Q")]
        pg: Option<u64>,
        /// Random r-regular bipartite graph with L nodes per side.
        #[arg(long, requires_all = ["l", "r", "seed"])]
        random: bool,
        #[arg(long = "L", value_name = "L")]
        l: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        max_iters: usize,
        /// Output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a code from a base graph.
    Build {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(4..=5))]
        t: u8,
        #[arg(long)]
        out: PathBuf,
        /// Also write H in alist format.
        #[arg(long)]
        alist: Option<PathBuf>,
    },
    /// Peel one erasure pattern and print the schedule or the stuck residual.
    Decode {
        #[arg(long)]
        code: PathBuf,
        /// Space-separated 0-based symbol indices.
        #[arg(long, allow_hyphen_values = true)]
        pattern: String,
    },
    /// Check every erasure pattern of size t.
    Verify {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "peel")]
        mode: VerifyMode,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        workers: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_FAILURE_CAP)]
        failure_cap: usize,
        /// Write failing patterns in the labeled pattern format.
        #[arg(long)]
        failures_out: Option<PathBuf>,
    },
    /// Print the rate, the rate bound and whether they meet.
    Rate {
        #[arg(long)]
        code: PathBuf,
    },
    /// Print the counting audit of H as JSON.
    Audit {
        #[arg(long)]
        code: PathBuf,
    },
    /// Minimum distance if it is at most dmax.
    Mindist {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        dmax: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Monte Carlo decoding of random erasure patterns.
    Simulate {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        max_erasures: usize,
        #[arg(long)]
        seed: u64,
    },
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    Failures,
}

fn load_code(path: &Path) -> anyhow::Result<CodeInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(formats::read_code_json(&text)?)
}

fn print_json<T: serde::Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    match cli.command {
        Command::GenGraph {
            pg,
            random: _,
            l,
            r,
            seed,
            max_iters,
            out,
        } => {
            let g = match pg {
                Some(q) => graph::projective_plane_incidence(q)?,
                None => graph::random_girth6(l.unwrap(), r.unwrap(), seed.unwrap(), max_iters)?,
            };
            let report = g.validate();
            if !report.all_pass() {
                bail!(Error::InvalidGraph(format!("generated graph fails validation: {report:?}")));
            }
            let text = formats::write_graph(&g);
            match out {
                Some(p) => fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{text}"),
            }
            eprintln!("graph L={} r={} edges={} girth={}", g.l(), g.r(), g.edges().len(), report.girth);
        }
        Command::Build { graph, t, out, alist } => {
            let text = fs::read_to_string(&graph).with_context(|| format!("reading {}", graph.display()))?;
            let g = formats::read_graph(&text)?;
            let code = construction::build(&g, usize::from(t))?;
            fs::write(&out, formats::write_code_json(&code)?).with_context(|| format!("writing {}", out.display()))?;
            if let Some(p) = alist {
                fs::write(&p, formats::write_alist(&code.h)).with_context(|| format!("writing {}", p.display()))?;
            }
            eprintln!("code n={} k={} rows={} sha256={}", code.n, code.k_claimed, code.h.rows(), code.content_hash());
        }
        Command::Decode { code, pattern } => {
            let code = load_code(&code)?;
            let p = ErasurePattern::new(formats::parse_pattern(&pattern)?, code.n)?;
            let labels = code.index.labels();
            let outcome = decoder::peel(&code, &p)?;
            let value = match &outcome {
                PeelOutcome::Success(s) => json!({
                    "outcome": "success",
                    "steps": s.steps.iter().map(|st| json!({
                        "symbol": st.symbol,
                        "label": labels[st.symbol],
                        "row": st.row,
                    })).collect::<Vec<_>>(),
                }),
                PeelOutcome::Stuck { remaining } => json!({
                    "outcome": "stuck",
                    "remaining": remaining,
                    "labels": remaining.iter().map(|&c| &labels[c]).collect::<Vec<_>>(),
                }),
            };
            print_json(&value)?;
            if !outcome.is_success() {
                return Ok(Status::Failures);
            }
        }
        Command::Verify {
            code,
            t,
            mode,
            workers,
            budget,
            failure_cap,
            failures_out,
        } => {
            let code = load_code(&code)?;
            let opts = VerifyOptions::new(t, mode)
                .workers(usize::try_from(workers)?)
                .budget(budget)
                .failure_cap(failure_cap);
            let rep = analysis::verify_exhaustive(&code, &opts)?;
            print_json(&rep)?;
            eprintln!("{} patterns in {:.2?}", rep.patterns_total, rep.elapsed);
            if let Some(p) = failures_out {
                let labels = code.index.labels();
                let tag = |kind: &str, f: &[usize]| {
                    let names: Vec<&str> = f.iter().map(|&c| labels[c].as_str()).collect();
                    format!("{kind}: {}", names.join(" "))
                };
                let entries = rep
                    .peel_failures
                    .iter()
                    .map(|f| (tag("peel", f), f.as_slice()))
                    .chain(rep.ml_failures.iter().map(|f| (tag("ml", f), f.as_slice())));
                fs::write(&p, formats::write_labeled_patterns(entries))
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            if !rep.verified {
                return Ok(Status::Failures);
            }
        }
        Command::Rate { code } => {
            let code = load_code(&code)?;
            let rate = analysis::rate(&code);
            let bound = analysis::rate_bound(code.r as u64)?;
            let verdict = match analysis::optimality_check(&code) {
                Ok(true) => "OPTIMAL".to_string(),
                Ok(false) => "NOT OPTIMAL".to_string(),
                Err(Error::WrongT { actual, .. }) => format!("bound applies to t=4 only (code has t={actual})"),
                Err(e) => return Err(e.into()),
            };
            println!("rate {rate}, bound {bound}, {verdict}");
        }
        Command::Audit { code } => {
            let code = load_code(&code)?;
            print_json(&analysis::bound_audit_code(&code)?)?;
        }
        Command::Mindist { code, dmax, budget } => {
            let code = load_code(&code)?;
            let t0 = Instant::now();
            let d = analysis::min_distance_upto(&code, dmax, budget)?;
            print_json(&json!({ "dmax": dmax, "min_distance": d }))?;
            eprintln!("search took {:.2?}", t0.elapsed());
        }
        Command::Simulate {
            code,
            trials,
            max_erasures,
            seed,
        } => {
            let code = load_code(&code)?;
            let t0 = Instant::now();
            print_json(&decoder::simulate(&code, trials, max_erasures, seed)?)?;
            eprintln!("{trials} trials in {:.2?}", t0.elapsed());
        }
    }
    Ok(Status::Ok)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. }) => 3,
        Some(Error::InvalidGraph(_) | Error::RankDeficient { .. }) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failures) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
