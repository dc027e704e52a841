//! End-to-end tests of the dcqa binary: exit codes, byte-exact output,
//! store handling, REPL behavior, and config overrides.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_dcqa")
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_with(dir: &Path, args: &[&str], env: &[(&str, &str)], stdin: Option<&str>) -> Run {
    let mut command = Command::new(binary());
    command
        .current_dir(dir)
        .env_remove("DCQA_STORE")
        .args(args)
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (key, value) in env {
        command.env(key, value);
    }
    command.stdin(if stdin.is_some() {
        Stdio::piped()
    } else {
        Stdio::null()
    });
    let mut child = command.spawn().unwrap();
    if let Some(input) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(input.as_bytes())
            .unwrap();
    }
    let output = child.wait_with_output().unwrap();
    Run {
        code: output.status.code().unwrap(),
        stdout: String::from_utf8(output.stdout).unwrap(),
        stderr: String::from_utf8(output.stderr).unwrap(),
    }
}

fn run(dir: &Path, args: &[&str]) -> Run {
    run_with(dir, args, &[], None)
}

const GANDHI: &str = "Gandhiji was born in Porbandar on 2nd October 1869.\n";
const RAHIM: &str = "Rahim is the brother of Karim. Karim lives in Porbandar.\n";

fn write_doc(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn gandhi_store(dir: &Path) -> String {
    write_doc(dir, "gandhi.txt", GANDHI);
    let ingest = run(dir, &["--store", "net.dcqa.json", "ingest", "gandhi.txt"]);
    assert_eq!(ingest.code, 0, "{}", ingest.stderr);
    "net.dcqa.json".to_string()
}

#[test]
fn ingest_reports_added_counts() {
    let dir = tempfile::tempdir().unwrap();
    write_doc(dir.path(), "gandhi.txt", GANDHI);
    let first = run(dir.path(), &["--store", "net.dcqa.json", "ingest", "gandhi.txt"]);
    assert_eq!(first.code, 0, "{}", first.stderr);
    assert_eq!(first.stdout, "4 words, 2 knowledge units, 5 links\n");

    let second = run(dir.path(), &["--store", "net.dcqa.json", "ingest", "gandhi.txt"]);
    assert_eq!(second.code, 0);
    assert_eq!(second.stdout, "0 words, 0 knowledge units, 0 links\n");
}

#[test]
fn ask_reproduces_the_documented_answers() {
    let dir = tempfile::tempdir().unwrap();
    let store = gandhi_store(dir.path());

    let wh = run(dir.path(), &["--store", &store, "ask", "Where was Gandhiji born?"]);
    assert_eq!(wh.code, 0, "{}", wh.stderr);
    assert_eq!(wh.stdout, "Gandhiji was born in Porbandar\n");

    let when = run(dir.path(), &["--store", &store, "ask", "When was Gandhiji born?"]);
    assert_eq!(when.code, 0);
    assert_eq!(when.stdout, "Gandhiji was born on 2-Oct-1869\n");
}

#[test]
fn multi_hop_answers_join_the_chain() {
    let dir = tempfile::tempdir().unwrap();
    write_doc(dir.path(), "rahim.txt", RAHIM);
    run(dir.path(), &["--store", "r.dcqa.json", "ingest", "rahim.txt"]);

    let ask = run(dir.path(), &["--store", "r.dcqa.json", "ask", "Where does Rahim live?"]);
    assert_eq!(ask.code, 0, "{}", ask.stderr);
    assert_eq!(
        ask.stdout,
        "Rahim is the brother of Karim \u{21d0} Karim lives in Porbandar\n"
    );

    let bounded = run(
        dir.path(),
        &["--store", "r.dcqa.json", "--max-hops", "1", "ask", "Where does Rahim live?"],
    );
    assert_eq!(bounded.code, 3);
    assert!(bounded.stderr.contains("multi-hop search"), "{}", bounded.stderr);
}

#[test]
fn store_can_come_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let store = gandhi_store(dir.path());
    let ask = run_with(
        dir.path(),
        &["ask", "Where was Gandhiji born?"],
        &[("DCQA_STORE", &store)],
        None,
    );
    assert_eq!(ask.code, 0, "{}", ask.stderr);
    assert_eq!(ask.stdout, "Gandhiji was born in Porbandar\n");
}

#[test]
fn missing_store_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let ask = run(dir.path(), &["ask", "Where was Gandhiji born?"]);
    assert_eq!(ask.code, 1);
    assert!(ask.stderr.contains("--store"), "{}", ask.stderr);

    let gone = run(dir.path(), &["--store", "gone.dcqa.json", "ask", "Where was Gandhiji born?"]);
    assert_eq!(gone.code, 1);
    assert!(gone.stderr.contains("failed to read store"), "{}", gone.stderr);
}

#[test]
fn corrupt_stores_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.dcqa.json"), "{ nope").unwrap();
    let ask = run(dir.path(), &["--store", "bad.dcqa.json", "ask", "Where was Gandhiji born?"]);
    assert_eq!(ask.code, 1);
    assert!(ask.stderr.contains("corrupt store"), "{}", ask.stderr);

    let store = gandhi_store(dir.path());
    let mut value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join(&store)).unwrap()).unwrap();
    value["knowledge"][0]["word_ids"] = serde_json::json!([1, 2, 99]);
    std::fs::write(
        dir.path().join(&store),
        serde_json::to_string_pretty(&value).unwrap(),
    )
    .unwrap();
    let ask = run(dir.path(), &["--store", &store, "ask", "Where was Gandhiji born?"]);
    assert_eq!(ask.code, 1);
    assert!(ask.stderr.contains("missing word id 99"), "{}", ask.stderr);
}

#[test]
fn ingest_without_units_exits_two_and_writes_no_store() {
    let dir = tempfile::tempdir().unwrap();
    write_doc(dir.path(), "empty.txt", "");
    let empty = run(dir.path(), &["--store", "net.dcqa.json", "ingest", "empty.txt"]);
    assert_eq!(empty.code, 2);
    assert!(!dir.path().join("net.dcqa.json").exists());

    write_doc(dir.path(), "verbless.txt", "The red apple.\n");
    let verbless = run(dir.path(), &["--store", "net.dcqa.json", "ingest", "verbless.txt"]);
    assert_eq!(verbless.code, 2);
    assert!(verbless.stderr.contains("no verb"), "{}", verbless.stderr);
    assert!(!dir.path().join("net.dcqa.json").exists());
}

#[test]
fn diagnostics_do_not_block_parsable_sentences() {
    let dir = tempfile::tempdir().unwrap();
    write_doc(dir.path(), "mixed.txt", "The red apple. Rahim ate rice.\n");
    let ingest = run(dir.path(), &["--store", "net.dcqa.json", "ingest", "mixed.txt"]);
    assert_eq!(ingest.code, 0);
    assert!(ingest.stderr.contains("no verb"), "{}", ingest.stderr);
    assert_eq!(ingest.stdout, "3 words, 1 knowledge units, 3 links\n");
}

#[test]
fn queries_never_rewrite_the_store() {
    let dir = tempfile::tempdir().unwrap();
    let store = gandhi_store(dir.path());
    let before = std::fs::read(dir.path().join(&store)).unwrap();
    run(dir.path(), &["--store", &store, "ask", "Where was Gandhiji born?"]);
    run(dir.path(), &["--store", &store, "inspect"]);
    run(dir.path(), &["--store", &store, "export-dot"]);
    let after = std::fs::read(dir.path().join(&store)).unwrap();
    assert_eq!(before, after);
}

#[test]
fn repl_answers_match_one_shot_answers() {
    let dir = tempfile::tempdir().unwrap();
    write_doc(dir.path(), "gandhi.txt", GANDHI);
    write_doc(dir.path(), "rahim.txt", RAHIM);
    let ingest = run(
        dir.path(),
        &["--store", "net.dcqa.json", "ingest", "gandhi.txt", "rahim.txt"],
    );
    assert_eq!(ingest.code, 0, "{}", ingest.stderr);

    let questions = [
        "Where was Gandhiji born?",
        "When was Gandhiji born?",
        "Where does Rahim live?",
        "Who was born in Porbandar?",
        "What did Rahim eat?",
        "Where was Einstein born?",
        "Hello there.",
        "Where?",
        "How was Gandhiji born?",
        "Who is Rahim?",
    ];
    let mut expected = String::new();
    for question in &questions {
        let one_shot = run(dir.path(), &["--store", "net.dcqa.json", "ask", question]);
        expected.push_str(&one_shot.stdout);
    }
    let expected = expected.repeat(10);

    let mut script = String::new();
    for _ in 0..10 {
        for question in &questions {
            script.push_str(question);
            script.push('\n');
        }
    }
    script.push_str(":quit\n");
    let repl = run_with(
        dir.path(),
        &["--store", "net.dcqa.json", "repl"],
        &[],
        Some(&script),
    );
    assert_eq!(repl.code, 0);
    assert_eq!(repl.stdout, expected);
    assert!(repl.stderr.contains("dcqa> "), "prompt must go to stderr");
}

#[test]
fn repl_trace_toggle_controls_the_tables() {
    let dir = tempfile::tempdir().unwrap();
    let store = gandhi_store(dir.path());
    let script = ":trace on\nWhere was Gandhiji born?\n:trace off\nWhere was Gandhiji born?\n:quit\n";
    let repl = run_with(dir.path(), &["--store", &store, "repl"], &[], Some(script));
    assert_eq!(repl.code, 0);
    assert_eq!(repl.stdout.matches("question words:").count(), 1);
    let answer_lines = repl
        .stdout
        .lines()
        .filter(|line| *line == "Gandhiji was born in Porbandar")
        .count();
    assert_eq!(answer_lines, 2);
}

#[test]
fn inspect_renders_the_four_tables() {
    let dir = tempfile::tempdir().unwrap();
    let store = gandhi_store(dir.path());
    let inspect = run(dir.path(), &["--store", &store, "inspect"]);
    assert_eq!(inspect.code, 0);
    let expected_words = "\
words:
  id  word        type   cases seen
  1   Gandhiji    Who    Agent
  2   born        What   Action
  3   Porbandar   Where  Location
  4   2-Oct-1869  When   Time
";
    assert!(inspect.stdout.starts_with(expected_words), "{}", inspect.stdout);
    for header in ["knowledge units:", "case assignments:", "links:"] {
        assert!(inspect.stdout.contains(header), "{}", inspect.stdout);
    }
    let links_section = inspect.stdout.split("links:\n").nth(1).unwrap();
    assert_eq!(links_section.trim_end().lines().count(), 1 + 6);

    dcqa::persistence::save(
        &dcqa::network::Network::new(),
        &dir.path().join("empty.dcqa.json"),
    )
    .unwrap();
    let empty = run(dir.path(), &["--store", "empty.dcqa.json", "inspect"]);
    assert_eq!(empty.code, 0);
    for header in ["words:", "knowledge units:", "case assignments:", "links:"] {
        assert!(empty.stdout.contains(header), "{}", empty.stdout);
    }
    assert!(!empty.stdout.contains("K1"));
}

#[test]
fn export_dot_round_trips_the_link_table() {
    let dir = tempfile::tempdir().unwrap();
    let store = gandhi_store(dir.path());

    let to_stdout = run(dir.path(), &["--store", &store, "export-dot"]);
    assert_eq!(to_stdout.code, 0);
    let to_file = run(dir.path(), &["--store", &store, "export-dot", "--out", "g.dot"]);
    assert_eq!(to_file.code, 0);
    let file_text = std::fs::read_to_string(dir.path().join("g.dot")).unwrap();
    assert_eq!(file_text, to_stdout.stdout);

    let node_count = file_text.lines().filter(|l| l.contains("[label=") && !l.contains(" -- ")).count();
    assert_eq!(node_count, 4);

    let mut edges: Vec<(u32, u32, String)> = file_text
        .lines()
        .filter(|line| line.contains(" -- "))
        .map(|line| {
            let line = line.trim();
            let (pair, rest) = line.split_once(" [label=\"").unwrap();
            let (a, b) = pair.split_once(" -- ").unwrap();
            (
                a.trim_start_matches('w').parse().unwrap(),
                b.trim_start_matches('w').parse().unwrap(),
                rest.trim_end_matches("\"];").to_string(),
            )
        })
        .collect();
    edges.sort();

    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join(&store)).unwrap()).unwrap();
    let mut expected: Vec<(u32, u32, String)> = value["links"]
        .as_array()
        .unwrap()
        .iter()
        .map(|link| {
            let ids: Vec<String> = link["knowledge_ids"]
                .as_array()
                .unwrap()
                .iter()
                .map(|k| format!("K{k}"))
                .collect();
            (
                link["a"].as_u64().unwrap() as u32,
                link["b"].as_u64().unwrap() as u32,
                ids.join(","),
            )
        })
        .collect();
    expected.sort();
    assert_eq!(edges, expected);
}

#[test]
fn structured_output_agrees_with_plain() {
    let dir = tempfile::tempdir().unwrap();
    let store = gandhi_store(dir.path());

    let plain = run(dir.path(), &["--store", &store, "ask", "Where was Gandhiji born?"]);
    let structured = run(
        dir.path(),
        &["--store", &store, "--output", "structured", "ask", "Where was Gandhiji born?"],
    );
    assert_eq!(structured.code, 0);
    let record: serde_json::Value = serde_json::from_str(&structured.stdout).unwrap();
    assert_eq!(record["command"], "ask");
    assert_eq!(record["answer"], plain.stdout.trim_end());
    assert_eq!(record["answer_word"], "Porbandar");
    assert_eq!(record["hops"], 1);
    assert_eq!(record["trace"]["strategy"], "direct");

    write_doc(dir.path(), "more.txt", RAHIM);
    let ingest = run(
        dir.path(),
        &["--store", &store, "--output", "structured", "ingest", "more.txt"],
    );
    assert_eq!(ingest.code, 0);
    let record: serde_json::Value = serde_json::from_str(&ingest.stdout).unwrap();
    assert_eq!(record["command"], "ingest");
    assert_eq!(record["units_seen"], 2);
    assert_eq!(record["knowledge_units_added"], 2);
}

#[test]
fn interrogative_table_is_overridable() {
    let dir = tempfile::tempdir().unwrap();
    let store = gandhi_store(dir.path());
    std::fs::write(dir.path().join("extra.tsv"), "whither\tLocation\n").unwrap();

    let without = run(dir.path(), &["--store", &store, "ask", "Whither was Gandhiji born?"]);
    assert_eq!(without.code, 3);
    assert!(without.stderr.contains("no supported interrogative"), "{}", without.stderr);

    let with = run(
        dir.path(),
        &[
            "--store",
            &store,
            "--interrogatives",
            "extra.tsv",
            "ask",
            "Whither was Gandhiji born?",
        ],
    );
    assert_eq!(with.code, 0, "{}", with.stderr);
    assert_eq!(with.stdout, "Gandhiji was born in Porbandar\n");
}

#[test]
fn lexicon_override_changes_parsing() {
    let dir = tempfile::tempdir().unwrap();
    write_doc(dir.path(), "gandhi.txt", GANDHI);
    std::fs::write(dir.path().join("empty-lexicon.tsv"), "# nothing\n").unwrap();
    let ingest = run(
        dir.path(),
        &[
            "--store",
            "net.dcqa.json",
            "--lexicon",
            "empty-lexicon.tsv",
            "ingest",
            "gandhi.txt",
        ],
    );
    assert_eq!(ingest.code, 2, "{}", ingest.stdout);
    assert!(ingest.stderr.contains("no verb"), "{}", ingest.stderr);
}

#[test]
fn unreadable_document_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let ingest = run(dir.path(), &["--store", "net.dcqa.json", "ingest", "missing.txt"]);
    assert_eq!(ingest.code, 1);
    assert!(ingest.stderr.contains("missing.txt"), "{}", ingest.stderr);
}
