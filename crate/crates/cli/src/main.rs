//! `pgsem`: type-check sentences, draw their reductions, compute meanings
//! and compare them.
//!
//! Exit status is 0 on success, 1 when a sentence is ungrammatical or a
//! comparison fails, and 2 on bad input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pgsem::demo::{run_demo, run_demo_with, DemoError, DemoReport, BUNDLED_BOOL_LEXICON};
use pgsem::lexicon::LexiconScalar;
use pgsem::{
    analyze, analyze_all, compute_meaning, load_lexicon, similarity, tokenize, Analysis, AnyLexicon, EngineError,
    Lexicon, LexiconError, PregroupType, SimilarityMode,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "pgsem", version, about = "Pregroup grammar and compositional tensor semantics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Type-check a sentence against the target type.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        sentence: String,
    },
    /// Draw the reduction diagram of a sentence.
    Diagram {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        /// Every analysis instead of the first.
        #[arg(long)]
        all: bool,
        sentence: String,
    },
    /// Print the meaning tensor of a sentence.
    Mean {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Every analysis instead of the first.
        #[arg(long)]
        all: bool,
        sentence: String,
    },
    /// Degree of similarity of two sentences.
    Sim {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Mode::Cosine)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        sentence: String,
        sentence2: String,
    },
    /// Recompute the worked examples on the bundled lexicons.
    Demo {
        /// Replaces the bundled real-valued lexicon.
        #[arg(long)]
        lexicon: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Shorthand for `--format json`.
        #[arg(long)]
        json: bool,
        /// Appends randomized checks drawn from this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Similarity mode of the printed comparisons; only raw is checked.
        #[arg(long, value_enum, default_value_t = Mode::Raw)]
        mode: Mode,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    lexicon: PathBuf,
    #[arg(long, default_value = "s")]
    target: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Ascii,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Raw,
    Cosine,
}

impl From<Mode> for SimilarityMode {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::Raw => SimilarityMode::Raw,
            Mode::Cosine => SimilarityMode::Cosine,
        }
    }
}

/// A failure together with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        let code = match e {
            EngineError::NoReduction { .. } | EngineError::ZeroVector => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<LexiconError> for Failure {
    fn from(e: LexiconError) -> Self {
        Failure::input(e)
    }
}

/// Output plus exit status for a command that ran to completion.
struct Report {
    stdout: String,
    code: u8,
}

impl Report {
    fn ok(stdout: String) -> Self {
        Report { stdout, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            print!("{}", report.stdout);
            ExitCode::from(report.code)
        }
        Err(f) => {
            eprintln!("pgsem: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_lexicon(path: &Path) -> Result<AnyLexicon, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    load_lexicon(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

macro_rules! with_lexicon {
    ($any:expr, $lex:ident => $body:expr) => {
        match $any {
            AnyLexicon::Real($lex) => $body,
            AnyLexicon::Boolean($lex) => $body,
            AnyLexicon::Natural($lex) => $body,
        }
    };
}

fn run(command: Command) -> Result<Report, Failure> {
    match command {
        Command::Check {
            common,
            format,
            sentence,
        } => {
            let any = read_lexicon(&common.lexicon)?;
            with_lexicon!(&any, lex => cmd_check(lex, &sentence, &common.target, format))
        }
        Command::Diagram {
            common,
            format,
            all,
            sentence,
        } => {
            let any = read_lexicon(&common.lexicon)?;
            with_lexicon!(&any, lex => cmd_diagram(lex, &sentence, &common.target, format, all))
        }
        Command::Mean {
            common,
            format,
            all,
            sentence,
        } => {
            let any = read_lexicon(&common.lexicon)?;
            with_lexicon!(&any, lex => cmd_mean(lex, &sentence, &common.target, format, all))
        }
        Command::Sim {
            common,
            mode,
            format,
            sentence,
            sentence2,
        } => {
            let any = read_lexicon(&common.lexicon)?;
            cmd_sim(&any, &sentence, &sentence2, &common.target, mode, format)
        }
        Command::Demo {
            lexicon,
            format,
            json,
            seed,
            mode,
        } => cmd_demo(lexicon.as_deref(), if json { Format::Json } else { format }, seed, mode),
    }
}

fn target_of<T: LexiconScalar>(lex: &Lexicon<T>, target: &str) -> Result<PregroupType, Failure> {
    Ok(lex.parse_type(target)?)
}

fn tokens_of(sentence: &str) -> Result<Vec<&str>, Failure> {
    let tokens = tokenize(sentence);
    if tokens.is_empty() {
        return Err(EngineError::EmptySentence.into());
    }
    Ok(tokens)
}

fn cmd_check<T: LexiconScalar>(lex: &Lexicon<T>, sentence: &str, target: &str, format: Format) -> Result<Report, Failure> {
    let target = target_of(lex, target)?;
    let tokens = tokens_of(sentence)?;
    let analysis = match analyze(&tokens, lex, &target) {
        Ok(a) => Some(a),
        Err(EngineError::NoReduction { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    // the chosen typings, or every typing when nothing reduces
    let typings: Vec<Vec<String>> = tokens
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let entries = lex.lookup(t).unwrap_or_default();
            match &analysis {
                Some(a) => vec![entries[a.chosen[k]].typing.to_string()],
                None => entries.iter().map(|e| e.typing.to_string()).collect(),
            }
        })
        .collect();
    let flat = match &analysis {
        Some(a) => a.flat_type().to_string(),
        None => typings.iter().map(|t| t[0].as_str()).collect::<Vec<_>>().join(" "),
    };
    let grammatical = analysis.is_some();
    let verdict = if grammatical { "GRAMMATICAL" } else { "UNGRAMMATICAL" };
    let stdout = match format {
        Format::Json => {
            let words: Vec<Value> = tokens
                .iter()
                .zip(&typings)
                .map(|(w, t)| json!({"word": w, "types": t}))
                .collect();
            let doc = json!({
                "sentence": tokens.join(" "),
                "target": target.to_string(),
                "words": words,
                "flat": flat,
                "grammatical": grammatical,
            });
            format!("{doc:#}\n")
        }
        _ => {
            let width = tokens.iter().map(|t| t.chars().count()).max().unwrap_or(0);
            let mut out = String::new();
            for (w, t) in tokens.iter().zip(&typings) {
                let _ = writeln!(out, "{w:<width$}  {}", t.join(" | "));
            }
            let _ = writeln!(out, "flat: {flat}");
            let _ = writeln!(out, "{verdict}");
            out
        }
    };
    Ok(Report {
        stdout,
        code: if grammatical { 0 } else { 1 },
    })
}

fn analyses<T: LexiconScalar>(lex: &Lexicon<T>, sentence: &str, target: &str, all: bool) -> Result<Vec<Analysis>, Failure> {
    let target = target_of(lex, target)?;
    let tokens = tokens_of(sentence)?;
    Ok(analyze_all(&tokens, lex, &target, if all { usize::MAX } else { 1 })?)
}

fn cmd_diagram<T: LexiconScalar>(
    lex: &Lexicon<T>,
    sentence: &str,
    target: &str,
    format: Format,
    all: bool,
) -> Result<Report, Failure> {
    let found = analyses(lex, sentence, target, all)?;
    let mut out = String::new();
    for (k, a) in found.iter().enumerate() {
        let rendered = match format {
            Format::Dot => a.diagram.render_dot(&a.flat_types),
            Format::Ascii | Format::Text => a.diagram.render_ascii(&a.flat_types).map(|s| s + "\n"),
            Format::Json => {
                return Err(Failure::input("diagram supports --format ascii or dot"));
            }
        }
        .map_err(Failure::input)?;
        if k > 0 && format != Format::Dot {
            out.push('\n');
        }
        out.push_str(&rendered);
    }
    Ok(Report::ok(out))
}

/// `|i⟩` for one survivor, `|i,j⟩` for several.
fn basis_label(index: &[usize]) -> String {
    let parts: Vec<String> = index.iter().map(usize::to_string).collect();
    format!("|{}⟩", parts.join(","))
}

fn cmd_mean<T: LexiconScalar>(
    lex: &Lexicon<T>,
    sentence: &str,
    target: &str,
    format: Format,
    all: bool,
) -> Result<Report, Failure> {
    let found = analyses(lex, sentence, target, all)?;
    let mut results = Vec::new();
    for a in &found {
        let meaning = compute_meaning(a, lex)?;
        let v = meaning.vector;
        let shape = v.shape().clone();
        let rows: Vec<(String, serde_json::Number)> = v
            .data()
            .iter()
            .enumerate()
            .map(|(k, &x)| (basis_label(&shape.unravel(k)), x.to_json()))
            .collect();
        results.push((a, v.dims().to_vec(), rows));
    }
    let stdout = match format {
        Format::Json => {
            let docs: Vec<Value> = results
                .iter()
                .map(|(a, dims, rows)| {
                    json!({
                        "sentence": a.tokens.join(" "),
                        "target": a.target.to_string(),
                        "semiring": lex.semiring().as_str(),
                        "shape": dims,
                        "labels": rows.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
                        "values": rows.iter().map(|r| Value::Number(r.1.clone())).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let doc = if all { Value::Array(docs) } else { docs.into_iter().next().unwrap_or(Value::Null) };
            format!("{doc:#}\n")
        }
        _ => {
            let mut out = String::new();
            for (k, (a, _, rows)) in results.iter().enumerate() {
                if all {
                    if k > 0 {
                        out.push('\n');
                    }
                    let _ = writeln!(out, "analysis {}: {}", k + 1, a.flat_type());
                }
                for (label, value) in rows {
                    let _ = writeln!(out, "{label}\t{value}");
                }
            }
            out
        }
    };
    Ok(Report::ok(stdout))
}

fn cmd_sim(any: &AnyLexicon, s1: &str, s2: &str, target: &str, mode: Mode, format: Format) -> Result<Report, Failure> {
    tokens_of(s1)?;
    tokens_of(s2)?;
    let value = similarity(any, s1, s2, target, mode.into())?;
    let stdout = match format {
        Format::Json => {
            let number = match value {
                pgsem::ScalarValue::Real(v) => v.to_json(),
                pgsem::ScalarValue::Boolean(b) => b.to_json(),
                pgsem::ScalarValue::Natural(n) => n.to_json(),
            };
            let doc = json!({
                "sentences": [s1, s2],
                "mode": SimilarityMode::from(mode).to_string(),
                "value": number,
            });
            format!("{doc:#}\n")
        }
        _ => match value {
            pgsem::ScalarValue::Real(v) => format!("{v:?}\n"),
            other => format!("{other}\n"),
        },
    };
    Ok(Report::ok(stdout))
}

fn demo_report(lexicon: Option<&Path>, seed: Option<u64>) -> Result<DemoReport, Failure> {
    let result = match lexicon {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            run_demo_with(&text, BUNDLED_BOOL_LEXICON, seed)
        }
        None => run_demo(seed),
    };
    result.map_err(|e: DemoError| Failure::input(e))
}

fn cmd_demo(lexicon: Option<&Path>, format: Format, seed: Option<u64>, mode: Mode) -> Result<Report, Failure> {
    let report = demo_report(lexicon, seed)?;
    let code = if report.all_passed { 0 } else { 1 };
    let stdout = match format {
        Format::Json => format!("{}\n", report.to_json()),
        _ => {
            let mut out = String::new();
            for c in &report.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "[{mark}] {}", c.name);
                let _ = writeln!(out, "       expected {:?}  computed {:?}", c.expected, c.computed);
            }
            let _ = writeln!(out, "{}/{} checks passed", report.passed, report.total);
            if mode == Mode::Cosine {
                out.push_str(&cosine_addendum(lexicon)?);
            }
            out
        }
    };
    Ok(Report { stdout, code })
}

/// Cosine values of the compared pairs, for reference only.
fn cosine_addendum(lexicon: Option<&Path>) -> Result<String, Failure> {
    let any = match lexicon {
        Some(path) => read_lexicon(path)?,
        None => load_lexicon(pgsem::demo::BUNDLED_LEXICON)?,
    };
    let pairs = [
        ("John loves Mary", "John likes Mary"),
        ("John hates Mary", "John likes Mary"),
        ("John loves Mary", "John hates Mary"),
        ("John does not love Mary", "John does not like Mary"),
        ("John does not like Mary", "John loves Mary"),
        ("John does not like Mary", "John hates Mary"),
        ("John does not like Mary", "John likes Mary"),
    ];
    let mut out = String::from("cosine similarities:\n");
    for (a, b) in pairs {
        let v = similarity(&any, a, b, "s", SimilarityMode::Cosine)?;
        let _ = writeln!(out, "  <{a} | {b}> = {v}");
    }
    Ok(out)
}
