use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gallerysheaf::cli::{run, sheaf_dot, Settings};

/// Galleries, congruences and moment-graph sheaves for Bott-Samelson words.
#[derive(Parser, Debug)]
#[command(version)]
struct Args {
    /// Flat key=value job file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Cartan type letter.
    #[arg(long = "type")]
    cartan_type: Option<String>,
    #[arg(long)]
    rank: Option<String>,
    /// Comma-separated 1-based simple reflection indices, e.g. 1,2,1.
    #[arg(long)]
    word: Option<String>,
    /// galleries, stats, sl2, gkm-check, fibre-basis, sheaf, purity, decompose or selftest.
    #[arg(long)]
    cmd: Option<String>,
    #[arg(long)]
    max_degree: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the Bruhat graph of the word's sheaf in graphviz format.
    #[arg(long)]
    dot: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(n) = std::env::var("GALLERYSHEAF_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Fails only if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let base = match &args.config {
        Some(path) => match std::fs::read_to_string(path).map_err(|e| e.to_string()).and_then(|t| Settings::parse(&t).map_err(|e| e.to_string())) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Settings::default(),
    };
    let flags = Settings {
        cartan_type: args.cartan_type,
        rank: args.rank,
        word: args.word,
        command: args.cmd,
        max_degree: args.max_degree,
        seed: args.seed,
    };
    let cfg = match base.overlay(flags).resolve() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = run(&cfg);
    if outcome.error {
        eprint!("{}", outcome.report);
        return ExitCode::from(outcome.status as u8);
    }
    if let Some(path) = &args.dot {
        match sheaf_dot(&cfg).map(|d| std::fs::write(path, d)) {
            Ok(Ok(())) => {}
            Ok(Err(e)) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(if e.is_config() { 2 } else { 1 });
            }
        }
    }
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.report) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.report),
    }
    ExitCode::from(outcome.status as u8)
}
