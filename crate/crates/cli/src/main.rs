use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use idemsync::analysis::{analyze, reset_threshold, SearchBudget};
use idemsync::dot::export_dot;
use idemsync::generators::{
    cerny, chi_decode, chi_encode, flipflop, gusev_like, higgins_transform, ladder, random_dfa,
    random_idempotent,
};
use idemsync::harness::{run_harness, Claim};
use idemsync::idem2::{classify_strongly_connected_2idem, synchronize_sink_2idem};
use idemsync::saf::{parse_automaton, render_automaton};
use idemsync::{Dfa, Error};

/// Environment variable overriding the default subset budget.
const BUDGET_ENV: &str = "IDEMSYNC_MAX_SUBSETS";

#[derive(Parser)]
#[command(name = "idemsync", version, about = "Synchronizing automata with idempotent letters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generated automaton in SAF format
    #[command(subcommand)]
    Gen(Gen),
    /// Transform an automaton
    #[command(subcommand)]
    Transform(Transform),
    /// Structural and synchronization report
    Analyze {
        file: String,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Print the lexicographically least shortest reset word
    ShortestWord {
        file: String,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Run harness claims
    Verify {
        /// lemma1, thm2, cor3, prop5, ladder, gusev7, cerny, sync2,
        /// gusev-series, preserve or all
        claims: Vec<String>,
        #[arg(long)]
        budget: Option<usize>,
        /// Emit one JSON record per line instead of text
        #[arg(long)]
        json: bool,
    },
    /// Reset word for two idempotent letters with a unique sink
    Synchronize {
        #[arg(long, required = true)]
        idem2: bool,
        file: String,
    },
    /// Graphviz rendering
    ExportDot { file: String },
    /// Word encoding between A and its doubled automaton
    #[command(subcommand)]
    Chi(Chi),
}

#[derive(Subcommand)]
enum Gen {
    Cerny { n: usize },
    Ladder { n: usize },
    Gusev { n: usize },
    Flipflop,
    RandomIdem {
        n: usize,
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Random {
        n: usize,
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Transform {
    Higgins { file: String },
}

#[derive(Subcommand)]
enum Chi {
    /// Encode a word over the letters of the automaton in FILE
    Encode { file: String, word: Vec<String> },
    /// Decode a word over a1..ak b back to the letters of FILE
    Decode { file: String, word: Vec<String> },
}

enum Failure {
    Claim(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read_automaton(path: &str) -> Result<Dfa, Failure> {
    let text = if path == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?
    };
    parse_automaton(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn budget(flag: Option<usize>) -> Result<SearchBudget, Failure> {
    let from_env = match std::env::var(BUDGET_ENV) {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Usage(format!("{BUDGET_ENV}={v:?} is not a number")))?,
        ),
        Err(_) => None,
    };
    match flag.or(from_env) {
        Some(m) => Ok(SearchBudget::with_max_subsets(m)?),
        None => Ok(SearchBudget::default()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen(g) => {
            let dfa = match g {
                Gen::Cerny { n } => cerny(n)?,
                Gen::Ladder { n } => ladder(n)?,
                Gen::Gusev { n } => gusev_like(n)?,
                Gen::Flipflop => flipflop(),
                Gen::RandomIdem { n, k, seed } => random_idempotent(n, k, seed)?,
                Gen::Random { n, k, seed } => random_dfa(n, k, seed)?,
            };
            print!("{}", render_automaton(&dfa));
        }
        Command::Transform(Transform::Higgins { file }) => {
            let dfa = read_automaton(&file)?;
            print!("{}", render_automaton(&higgins_transform(&dfa).result));
        }
        Command::Analyze { file, budget: b, json } => {
            let dfa = read_automaton(&file)?;
            let report = analyze(&dfa, &budget(b)?);
            if json {
                println!("{}", report.to_json());
            } else {
                println!("states: {}", report.states);
                println!("letters: {}", report.letters.join(" "));
                println!("ranks: {:?}", report.ranks);
                println!("idempotent: {:?}", report.idempotent);
                println!("sinks: {:?}", report.sinks);
                println!("strongly connected: {}", report.strongly_connected);
                println!("synchronizing: {}", report.synchronizing);
                println!("proper: {}", report.proper);
                match (&report.reset_threshold, &report.witness) {
                    (Some(t), Some(w)) => {
                        println!("reset threshold: {t}");
                        println!("witness: {}", w.join(" "));
                    }
                    _ if report.search_skipped => println!("reset threshold: not searched (too many states)"),
                    _ if report.truncated => println!("reset threshold: unknown (budget exhausted)"),
                    _ => println!("reset threshold: none"),
                }
                println!("subsets explored: {}", report.subsets_explored);
            }
        }
        Command::ShortestWord { file, budget: b } => {
            let dfa = read_automaton(&file)?;
            let result = reset_threshold(&dfa, &budget(b)?)?;
            match result.witness {
                Some(w) => println!("{}", dfa.format_word(&w)),
                None if result.truncated => {
                    return Err(Failure::Claim("search budget exhausted".into()))
                }
                None => return Err(Failure::Claim("automaton is not synchronizing".into())),
            }
        }
        Command::Verify { claims, budget: b, json } => {
            let selected: Vec<Claim> = if claims.is_empty() || claims.iter().any(|c| c == "all") {
                Claim::ALL.to_vec()
            } else {
                claims
                    .iter()
                    .map(|c| c.parse::<Claim>())
                    .collect::<Result<_, _>>()?
            };
            let report = run_harness(&selected, &budget(b)?);
            if json {
                print!("{}", report.to_jsonl());
            } else {
                print!("{}", report.to_text());
            }
            if !report.passed() {
                return Err(Failure::Claim("some claims failed".into()));
            }
        }
        Command::Synchronize { idem2: _, file } => {
            let dfa = read_automaton(&file)?;
            match synchronize_sink_2idem(&dfa) {
                Ok(w) => println!("{}", dfa.format_word(&w)),
                Err(e) => {
                    let class = classify_strongly_connected_2idem(&dfa);
                    return Err(Failure::Usage(format!("{e} (strongly connected case: {class:?})")));
                }
            }
        }
        Command::ExportDot { file } => {
            let dfa = read_automaton(&file)?;
            print!("{}", export_dot(&dfa));
        }
        Command::Chi(Chi::Encode { file, word }) => {
            let dfa = read_automaton(&file)?;
            let image = higgins_transform(&dfa);
            let w = dfa.parse_word(&word.join(" "))?;
            println!("{}", image.result.format_word(&chi_encode(&image, &w)?));
        }
        Command::Chi(Chi::Decode { file, word }) => {
            let dfa = read_automaton(&file)?;
            let image = higgins_transform(&dfa);
            let w = image.result.parse_word(&word.join(" "))?;
            match chi_decode(&image, &w) {
                Ok(u) => println!("{}", dfa.format_word(&u)),
                Err(e) => {
                    return Err(Failure::Claim(format!(
                        "not in the image of the encoding (position {})",
                        e.position
                    )))
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claim(msg)) => {
            eprintln!("idemsync: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("idemsync: {msg}");
            ExitCode::from(2)
        }
    }
}
