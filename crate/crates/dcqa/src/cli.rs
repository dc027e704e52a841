//! Command-line surface: ingest documents into a store, ask questions
//! one-shot or in a REPL, inspect the network as tables, export it as a
//! Graphviz graph.
//!
//! Exit codes: 0 success, 1 I/O or corrupt store or bad configuration,
//! 2 ingestion that produced no knowledge units, 3 no answer.

use std::io::{BufRead, Write as _};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::{Config, ConfigError};
use crate::deep_case::{word_type_for_case, DeepCase};
use crate::ingest::{ingest_document, IngestReport};
use crate::network::{Network, WordId};
use crate::persistence::{self, StoreError};
use crate::qa_engine::{answer, Answer, QaError, DEFAULT_MAX_HOPS};

#[derive(Parser)]
#[command(
    name = "dcqa",
    version,
    about = "Document-grounded wh-question answering over an associative word network"
)]
struct Cli {
    /// Path to the network store (conventionally *.dcqa.json)
    #[arg(long, env = "DCQA_STORE", global = true)]
    store: Option<PathBuf>,

    /// Override the builtin POS lexicon (word<TAB>tag lines)
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,

    /// Override the builtin entity gazetteer (word<TAB>entity lines)
    #[arg(long, global = true)]
    gazetteer: Option<PathBuf>,

    /// Override the builtin stopword list (one word per line)
    #[arg(long, global = true)]
    stopwords: Option<PathBuf>,

    /// Override the interrogative-to-case table (word<TAB>cases lines)
    #[arg(long, global = true)]
    interrogatives: Option<PathBuf>,

    /// Longest chain of knowledge units the multi-hop search may follow
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_HOPS)]
    max_hops: usize,

    /// Print the derivation tables behind each answer
    #[arg(long, global = true)]
    trace: bool,

    /// Render results as human-readable text or as one JSON document
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Plain)]
    output: OutputMode,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Plain,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Learn from plain-text documents and save the grown store
    Ingest {
        /// UTF-8 text files, one document each
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Answer a single question against the store
    Ask { question: String },
    /// Answer questions interactively; :quit exits, :trace on|off toggles
    Repl,
    /// Print the store as word, knowledge, case, and link tables
    Inspect,
    /// Write the network as a Graphviz graph (stdout unless --out is given)
    ExportDot {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("--store is required (flag or DCQA_STORE environment variable)")]
    MissingStore,
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("nothing ingested: no knowledge units found in the input")]
    EmptyIngest,
    #[error("no answer ({stage}): {source}")]
    Qa {
        stage: &'static str,
        source: QaError,
    },
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::MissingStore | CliError::Config(_) | CliError::Store(_) | CliError::Io { .. } => 1,
            CliError::EmptyIngest => 2,
            CliError::Qa { .. } => 3,
        }
    }
}

fn qa_stage(error: &QaError) -> &'static str {
    match error {
        QaError::NoInterrogative | QaError::NoContentWords => "question analysis",
        QaError::UnknownWord(_) => "word resolution",
        QaError::NoCaseMatch => "case filter",
        QaError::NoPathFound => "multi-hop search",
    }
}

impl From<QaError> for CliError {
    fn from(source: QaError) -> CliError {
        CliError::Qa {
            stage: qa_stage(&source),
            source,
        }
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => 0,
        Err(error) => {
            eprintln!("error: {error}");
            error.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let store = cli.store.clone().ok_or(CliError::MissingStore)?;
    let config = Config::load(
        cli.lexicon.as_deref(),
        cli.gazetteer.as_deref(),
        cli.stopwords.as_deref(),
        cli.interrogatives.as_deref(),
    )?;
    match &cli.command {
        Command::Ingest { files } => cmd_ingest(&store, &config, files, cli.output),
        Command::Ask { question } => {
            let net = persistence::load(&store)?;
            cmd_ask(&net, &config, question, cli.max_hops, cli.trace, cli.output)
        }
        Command::Repl => {
            let net = persistence::load(&store)?;
            cmd_repl(&net, &config, cli.max_hops, cli.trace, cli.output)
        }
        Command::Inspect => {
            let net = persistence::load(&store)?;
            cmd_inspect(&net, cli.output)
        }
        Command::ExportDot { out } => {
            let net = persistence::load(&store)?;
            cmd_export_dot(&net, out.as_deref())
        }
    }
}

fn cmd_ingest(
    store: &Path,
    config: &Config,
    files: &[PathBuf],
    output: OutputMode,
) -> Result<(), CliError> {
    let mut net = if store.exists() {
        persistence::load(store)?
    } else {
        Network::new()
    };
    let mut total = IngestReport::default();
    for file in files {
        let text = std::fs::read_to_string(file).map_err(|source| CliError::Io {
            path: file.display().to_string(),
            source,
        })?;
        let report = ingest_document(&mut net, config, &file.display().to_string(), &text);
        for diagnostic in &report.diagnostics {
            eprintln!("{}: {diagnostic}", file.display());
        }
        total.sentences += report.sentences;
        total.units_seen += report.units_seen;
        total.units_added += report.units_added;
        total.words_added += report.words_added;
        total.links_added += report.links_added;
    }
    if total.units_seen == 0 {
        return Err(CliError::EmptyIngest);
    }
    persistence::save(&net, store)?;
    match output {
        OutputMode::Plain => println!(
            "{} words, {} knowledge units, {} links",
            total.words_added, total.units_added, total.links_added
        ),
        OutputMode::Structured => println!(
            "{}",
            serde_json::json!({
                "command": "ingest",
                "sentences": total.sentences,
                "units_seen": total.units_seen,
                "words_added": total.words_added,
                "knowledge_units_added": total.units_added,
                "links_added": total.links_added,
            })
        ),
    }
    Ok(())
}

fn cmd_ask(
    net: &Network,
    config: &Config,
    question: &str,
    max_hops: usize,
    trace: bool,
    output: OutputMode,
) -> Result<(), CliError> {
    let ans = answer(question, net, config, max_hops)?;
    print_answer(question, &ans, trace, output);
    Ok(())
}

fn print_answer(question: &str, ans: &Answer, trace: bool, output: OutputMode) {
    match output {
        OutputMode::Plain => {
            if trace {
                print!("{}", render_trace(ans));
            }
            println!("{}", ans.texts.join(" \u{21d0} "));
        }
        OutputMode::Structured => {
            println!(
                "{}",
                serde_json::json!({
                    "command": "ask",
                    "question": question,
                    "answer": ans.texts.join(" \u{21d0} "),
                    "answer_word": ans.answer_word,
                    "texts": ans.texts,
                    "hops": ans.hops,
                    "trace": ans.trace,
                })
            );
        }
    }
}

fn render_trace(ans: &Answer) -> String {
    let trace = &ans.trace;
    let mut out = String::new();
    out.push_str("question words:\n");
    out.push_str(&render_table(
        &["word", "kind"],
        &trace
            .question_words
            .iter()
            .map(|row| vec![row.surface.clone(), row.kind.clone()])
            .collect::<Vec<_>>(),
    ));
    out.push_str("resolved words:\n");
    out.push_str(&render_table(
        &["word", "id", "stored as"],
        &trace
            .resolved
            .iter()
            .map(|row| {
                vec![
                    row.surface.clone(),
                    row.word_id.map_or("-".to_string(), |id| id.to_string()),
                    row.canonical.clone().unwrap_or_else(|| "-".to_string()),
                ]
            })
            .collect::<Vec<_>>(),
    ));
    out.push_str("candidate pairs:\n");
    out.push_str(&render_table(
        &["first word", "second word", "knowledge"],
        &trace
            .pair_rows
            .iter()
            .map(|row| vec![row.first.clone(), row.second.clone(), row.knowledge.clone()])
            .collect::<Vec<_>>(),
    ));
    out.push_str("candidates:\n");
    out.push_str(&render_table(
        &["knowledge", "case match", "text"],
        &trace
            .candidates
            .iter()
            .map(|row| {
                vec![
                    row.knowledge.clone(),
                    row.case_match.clone().unwrap_or_else(|| "-".to_string()),
                    row.text.clone(),
                ]
            })
            .collect::<Vec<_>>(),
    ));
    out.push_str(&format!("strategy: {}\n", trace.strategy));
    out.push_str(&format!("chain: {}\n", trace.chain.join(" -> ")));
    out.push_str(&format!("decision: {}\n", trace.decision));
    out
}

fn cmd_repl(
    net: &Network,
    config: &Config,
    max_hops: usize,
    trace: bool,
    output: OutputMode,
) -> Result<(), CliError> {
    let mut trace_on = trace;
    let stdin = std::io::stdin();
    let mut lines = stdin.lock().lines();
    loop {
        eprint!("dcqa> ");
        let _ = std::io::stderr().flush();
        let Some(line) = lines.next() else { break };
        let line = line.map_err(|source| CliError::Io {
            path: "<stdin>".to_string(),
            source,
        })?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line == ":quit" {
            break;
        }
        if let Some(rest) = line.strip_prefix(":trace") {
            match rest.trim() {
                "on" => trace_on = true,
                "off" => trace_on = false,
                _ => eprintln!("usage: :trace on|off"),
            }
            continue;
        }
        match answer(line, net, config, max_hops) {
            Ok(ans) => print_answer(line, &ans, trace_on, output),
            Err(error) => eprintln!("error: {}", CliError::from(error)),
        }
    }
    Ok(())
}

/// Deep cases a word carries anywhere in the network, first-seen order.
fn cases_seen(net: &Network, word: WordId) -> Vec<DeepCase> {
    let mut seen = Vec::new();
    for unit in net.units_of_word(word) {
        let entry = net.knowledge_entry(unit).expect("index ids exist");
        if let Some(case) = entry.case_of(word) {
            if !seen.contains(&case) {
                seen.push(case);
            }
        }
    }
    seen
}

fn cmd_inspect(net: &Network, output: OutputMode) -> Result<(), CliError> {
    let word_rows: Vec<Vec<String>> = net
        .words()
        .iter()
        .map(|word| {
            let cases = cases_seen(net, word.id);
            let word_type = cases
                .first()
                .map(|&case| word_type_for_case(case, word.entity).name().to_string())
                .unwrap_or_else(|| "-".to_string());
            vec![
                word.id.to_string(),
                word.display_surface.clone(),
                word_type,
                cases
                    .iter()
                    .map(|c| c.name())
                    .collect::<Vec<_>>()
                    .join(", "),
            ]
        })
        .collect();
    let knowledge_rows: Vec<Vec<String>> = net
        .knowledge()
        .iter()
        .map(|entry| vec![entry.display_id(), entry.text.clone()])
        .collect();
    let case_rows: Vec<Vec<String>> = net
        .knowledge()
        .iter()
        .flat_map(|entry| {
            entry.word_ids.iter().zip(&entry.cases).map(|(&word, &case)| {
                vec![
                    entry.display_id(),
                    net.word(word).expect("member exists").display_surface.clone(),
                    case.name().to_string(),
                ]
            })
        })
        .collect();
    let link_rows: Vec<Vec<String>> = net
        .links()
        .into_iter()
        .flat_map(|link| {
            let first = net.word(link.a).expect("endpoint exists").display_surface.clone();
            let second = net.word(link.b).expect("endpoint exists").display_surface.clone();
            let weight = link.weight();
            link.knowledge_ids
                .iter()
                .map(move |k| {
                    vec![
                        first.clone(),
                        second.clone(),
                        format!("K{k}"),
                        weight.to_string(),
                    ]
                })
                .collect::<Vec<_>>()
        })
        .collect();

    match output {
        OutputMode::Plain => {
            println!("words:");
            print!(
                "{}",
                render_table(&["id", "word", "type", "cases seen"], &word_rows)
            );
            println!("knowledge units:");
            print!("{}", render_table(&["id", "text"], &knowledge_rows));
            println!("case assignments:");
            print!(
                "{}",
                render_table(&["knowledge", "word", "case"], &case_rows)
            );
            println!("links:");
            print!(
                "{}",
                render_table(
                    &["first word", "second word", "knowledge", "weight"],
                    &link_rows
                )
            );
        }
        OutputMode::Structured => {
            println!(
                "{}",
                serde_json::json!({
                    "command": "inspect",
                    "words": word_rows,
                    "knowledge": knowledge_rows,
                    "cases": case_rows,
                    "links": link_rows,
                })
            );
        }
    }
    Ok(())
}

fn escape_dot(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

fn render_dot(net: &Network) -> String {
    let mut dot = String::from("graph dcqa {\n");
    for word in net.words() {
        let cases = cases_seen(net, word.id);
        let label = if cases.is_empty() {
            word.display_surface.clone()
        } else {
            format!(
                "{} ({})",
                word.display_surface,
                cases.iter().map(|c| c.name()).collect::<Vec<_>>().join(", ")
            )
        };
        dot.push_str(&format!("  w{} [label=\"{}\"];\n", word.id, escape_dot(&label)));
    }
    for link in net.links() {
        let label = link
            .knowledge_ids
            .iter()
            .map(|k| format!("K{k}"))
            .collect::<Vec<_>>()
            .join(",");
        dot.push_str(&format!(
            "  w{} -- w{} [label=\"{}\"];\n",
            link.a, link.b, label
        ));
    }
    dot.push_str("}\n");
    dot
}

fn cmd_export_dot(net: &Network, out: Option<&Path>) -> Result<(), CliError> {
    let dot = render_dot(net);
    match out {
        Some(path) => std::fs::write(path, dot).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => print!("{dot}"),
    }
    Ok(())
}

fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut push_row = |cells: &[String]| {
        let mut line = String::from(" ");
        for (i, cell) in cells.iter().enumerate() {
            line.push(' ');
            line.push_str(cell);
            if i + 1 < cells.len() {
                for _ in cell.chars().count()..widths[i] + 1 {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    push_row(&headers.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    for row in rows {
        push_row(row);
    }
    out
}
