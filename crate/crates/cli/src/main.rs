mod filter;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use palwords::generators::PRESETS;
use palwords::harness::{self, enumerate_words, ClaimVerdict, Dedupe};
use palwords::word::parse_word_list;
use palwords::{
    complete_first_returns, pal_set, reversal_closure_check, stabilized_pal_set, Alphabet,
    PrefixStream, Word,
};
use serde::Serialize;
use thiserror::Error;

use crate::filter::{Filter, FilterSet};

#[derive(Parser)]
#[command(name = "palwords", version, about = "Palindromic factors of words and generated infinite words")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Distinct palindromic factors of a word, a word list, or a generated word.
    Pal(PalArgs),
    /// Look for factors whose reversal does not occur in a generated word.
    Closure {
        #[arg(long = "gen", value_name = "PRESET|SPEC")]
        generator: String,
        /// Longest factor length to check.
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 4096)]
        horizon: usize,
    },
    /// Complete first returns to an anchor word.
    Returns {
        #[arg(long, conflicts_with = "generator", required_unless_present = "generator")]
        word: Option<Word>,
        #[arg(long = "gen", value_name = "PRESET|SPEC", requires = "horizon")]
        generator: Option<String>,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        anchor: Word,
    },
    /// Print a prefix of a generated word.
    Gen {
        #[arg(value_name = "PRESET|SPEC")]
        generator: String,
        #[arg(long, short = 'n', default_value_t = 64)]
        length: usize,
    },
    /// Run a built-in claim checker, or all of them.
    Verify {
        #[arg(value_name = "CLAIM|all")]
        claim: String,
        /// Worker threads for exhaustive scans.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// List words of one length, optionally filtered.
    Enumerate {
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        #[arg(long, short = 'n')]
        length: usize,
        #[arg(long, value_enum, default_value_t = DedupeArg::None)]
        dedupe: DedupeArg,
        /// pal=9, longest<=4, period!=6, rich, nonrich, full, has:WORD, avoids:WORD.
        /// Repeat to combine.
        #[arg(long)]
        filter: Vec<Filter>,
        /// Print only the number of matching words.
        #[arg(long)]
        count: bool,
    },
    /// List the built-in claims.
    Claims,
    /// List the named generators.
    Presets,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["word", "generator", "file"])))]
struct PalArgs {
    #[arg(long)]
    word: Option<Word>,
    #[arg(long = "gen", value_name = "PRESET|SPEC")]
    generator: Option<String>,
    /// File with one word per line; `#` starts a comment.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Scan exactly this prefix of a generated word instead of growing it
    /// until the palindrome set settles.
    #[arg(long)]
    horizon: Option<usize>,
    /// Longest prefix the stabilizer may scan.
    #[arg(long, default_value_t = harness::claims::STABILIZER_CAP)]
    cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DedupeArg {
    None,
    Iso,
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] palwords::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

struct Outcome {
    refuted: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome { refuted: false }) => ExitCode::SUCCESS,
        Ok(Outcome { refuted: true }) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Lib(palwords::Error::UnknownPreset(_)) = e {
                eprintln!("\nknown generators:\n{}", preset_listing());
                eprintln!("or a spec such as pow(abc), fix({{a->ab,b->ba}},a), rec(b,a), image({{a->ab,b->ba}},paperfolding)");
            }
            if let CliError::Lib(palwords::Error::UnknownClaim(_)) = e {
                eprintln!("\nrun `palwords claims` for the list of claims");
            }
            ExitCode::from(2)
        }
    }
}

fn preset_listing() -> String {
    let mut lines: Vec<String> = PRESETS
        .iter()
        .map(|(name, spec, description)| format!("  {name:<14} {description}\n  {:<14} = {spec}", ""))
        .collect();
    lines.push(format!("  {:<14} periodic word u^∞", "pow:<word>"));
    lines.join("\n")
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    let out = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialize"),
        Format::Text => text(),
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

const OK: Outcome = Outcome { refuted: false };

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Pal(args) => pal(format, args).map(|()| OK),
        Command::Closure { generator, k, horizon } => {
            let s = PrefixStream::resolve(generator)?;
            let report = reversal_closure_check(&s, *k, *horizon)?;
            emit(format, &report, || report.to_string());
            Ok(OK)
        }
        Command::Returns { word, generator, horizon, anchor } => {
            let w = match (word, generator, horizon) {
                (Some(w), _, _) => w.clone(),
                (None, Some(g), Some(n)) => PrefixStream::resolve(g)?.prefix(*n),
                _ => return Err(CliError::Usage("give --word, or --gen with --horizon".into())),
            };
            let returns = complete_first_returns(&w, anchor)?;
            emit(format, &returns, || {
                if !returns.anchor_found {
                    return format!("{anchor} does not occur");
                }
                let mut out = format!("complete first returns to {anchor}: {}", returns.returns.len());
                for r in &returns.returns {
                    out.push_str(&format!("\n  {r}"));
                }
                out
            });
            Ok(OK)
        }
        Command::Gen { generator, length } => {
            let s = PrefixStream::resolve(generator)?;
            let word = s.prefix(*length);
            #[derive(Serialize)]
            struct Prefix<'a> {
                generator: String,
                length: usize,
                word: &'a Word,
            }
            let out = Prefix { generator: s.spec().to_string(), length: *length, word: &word };
            emit(format, &out, || word.to_string());
            Ok(OK)
        }
        Command::Verify { claim, jobs } => verify(format, claim, *jobs),
        Command::Enumerate { alphabet, length, dedupe, filter, count } => {
            let alphabet = Alphabet::new(*alphabet)?;
            let dedupe = match dedupe {
                DedupeArg::None => Dedupe::None,
                DedupeArg::Iso => Dedupe::IsoClass,
            };
            let filters = FilterSet(filter.clone());
            let words: Vec<Word> = enumerate_words(alphabet, *length, dedupe)?
                .filter(|w| filters.accepts(w, alphabet))
                .collect();
            #[derive(Serialize)]
            struct Listing<'a> {
                alphabet: usize,
                length: usize,
                count: usize,
                #[serde(skip_serializing_if = "Option::is_none")]
                words: Option<&'a [Word]>,
            }
            let listing = Listing {
                alphabet: alphabet.size(),
                length: *length,
                count: words.len(),
                words: (!count).then_some(words.as_slice()),
            };
            emit(format, &listing, || {
                if *count {
                    words.len().to_string()
                } else {
                    words.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
                }
            });
            Ok(OK)
        }
        Command::Claims => {
            let manifest = harness::manifest();
            emit(format, &manifest, || {
                manifest
                    .iter()
                    .map(|c| format!("{:<34} {}", c.id, c.description))
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            Ok(OK)
        }
        Command::Presets => {
            #[derive(Serialize)]
            struct Preset {
                name: &'static str,
                spec: &'static str,
                description: &'static str,
            }
            let presets: Vec<Preset> = PRESETS
                .iter()
                .map(|&(name, spec, description)| Preset { name, spec, description })
                .collect();
            emit(format, &presets, preset_listing);
            Ok(OK)
        }
    }
}

fn pal(format: Format, args: &PalArgs) -> Result<(), CliError> {
    if let Some(w) = &args.word {
        let report = pal_set(w);
        emit(format, &report, || report.to_string());
    } else if let Some(path) = &args.file {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
        let words = parse_word_list(&text)?;
        let reports: Vec<_> = words.iter().map(pal_set).collect();
        emit(format, &reports, || {
            words
                .iter()
                .zip(&reports)
                .map(|(w, r)| format!("word: {w}\n{r}"))
                .collect::<Vec<_>>()
                .join("\n\n")
        });
    } else if let Some(g) = &args.generator {
        let s = PrefixStream::resolve(g)?;
        match args.horizon {
            Some(n) => {
                let report = palwords::pal::prefix_pal_set(&s, n);
                emit(format, &report, || format!("generator: {}\n{report}", s.spec()))
            }
            None => {
                let start = harness::claims::STABILIZER_START.min(args.cap / 2).max(1);
                let stable = stabilized_pal_set(&s, start, args.cap)?;
                emit(format, &stable, || stable.to_string())
            }
        }
    }
    Ok(())
}

fn verify(format: Format, claim: &str, jobs: usize) -> Result<Outcome, CliError> {
    let verdicts: Vec<ClaimVerdict> = if claim == "all" {
        harness::run_all(jobs)?
    } else {
        vec![harness::run_claim(claim, jobs)?]
    };
    let refuted = verdicts.iter().filter(|v| v.is_refuted()).count();
    if claim == "all" {
        emit(format, &verdicts, || {
            let mut out: Vec<String> = verdicts.iter().map(ToString::to_string).collect();
            out.push(format!("{} claims, {} refuted", verdicts.len(), refuted));
            out.join("\n\n")
        });
    } else {
        emit(format, &verdicts[0], || verdicts[0].to_string());
    }
    Ok(Outcome { refuted: refuted > 0 })
}
