//! `boundaryk` computes the K-theory of the boundary crossed-product
//! algebra of a locally symmetric space from a small cohomological
//! description, compares two such algebras, and ships a corpus of worked
//! examples.
//!
//! Exit codes: 0 success, 1 file or parse error, 2 validation failure,
//! 3 hypothesis refusal.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use boundaryk_core::classify::{compare, CompareVerdict};
use boundaryk_core::corpus;

use report::{render_human, render_json, run_pipeline, ComputeOptions};

#[derive(Parser)]
#[command(name = "boundaryk", version, about = "K-theory of boundary crossed-product algebras from cohomological data")]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Run the pipeline on a space file and print the report
    Compute {
        /// Path to a space file
        file: PathBuf,
        /// Emit a JSON object instead of the human report
        #[arg(long)]
        json: bool,
        /// Append the case analysis and degree bookkeeping
        #[arg(long)]
        explain: bool,
        /// Skip the extension-oracle consistency check
        #[arg(long)]
        no_ahss_check: bool,
    },
    /// Decide isomorphism of the boundary algebras of two space files
    Compare {
        file_a: PathBuf,
        file_b: PathBuf,
    },
    /// List the bundled example spaces, or run one by name
    Corpus {
        /// Name of a bundled example (omit to list all)
        name: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        explain: bool,
        #[arg(long)]
        no_ahss_check: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Commands::Compute {
            file,
            json,
            explain,
            no_ahss_check,
        } => match read_file(&file) {
            Ok(text) => compute(&text, json, explain, no_ahss_check),
            Err(code) => code,
        },
        Commands::Compare { file_a, file_b } => {
            match (read_file(&file_a), read_file(&file_b)) {
                (Ok(a), Ok(b)) => run_compare(&a, &b),
                (Err(code), _) | (_, Err(code)) => code,
            }
        }
        Commands::Corpus {
            name,
            json,
            explain,
            no_ahss_check,
        } => match name {
            None => {
                for entry in corpus::ENTRIES {
                    println!("{} - {}", entry.name, entry.description);
                }
                0
            }
            Some(name) => match corpus::get(&name) {
                Some(entry) => compute(entry.text, json, explain, no_ahss_check),
                None => {
                    eprintln!(
                        "unknown corpus entry `{name}`; available: {}",
                        corpus::names().join(", ")
                    );
                    1
                }
            },
        },
    };
    ExitCode::from(code as u8)
}

fn read_file(path: &PathBuf) -> Result<String, i32> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("cannot read {}: {e}", path.display());
        1
    })
}

fn compute(text: &str, json: bool, explain: bool, no_ahss_check: bool) -> i32 {
    let opts = ComputeOptions {
        explain,
        ahss_check: !no_ahss_check,
    };
    match run_pipeline(text, opts) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&render_json(&out)).unwrap());
            } else {
                println!("{}", render_human(&out, opts));
            }
            0
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn run_compare(text_a: &str, text_b: &str) -> i32 {
    let opts = ComputeOptions {
        explain: false,
        ahss_check: false,
    };
    let (a, b) = match (run_pipeline(text_a, opts), run_pipeline(text_b, opts)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    println!(
        "A: {} (K0 = {}, K1 = {}, unit: {})",
        a.space.name,
        a.result.k0_string(),
        a.result.k1_string(),
        a.result.unit_string()
    );
    println!(
        "B: {} (K0 = {}, K1 = {}, unit: {})",
        b.space.name,
        b.result.k0_string(),
        b.result.k1_string(),
        b.result.unit_string()
    );
    match compare(&a.result, &b.result) {
        CompareVerdict::Isomorphic => println!("verdict: ISOMORPHIC"),
        CompareVerdict::NotIsomorphic { witness } => {
            println!("verdict: NOT_ISOMORPHIC ({witness})")
        }
        CompareVerdict::Undetermined { reason } => {
            println!("verdict: UNDETERMINED ({reason})")
        }
    }
    0
}
