//! Document ingestion: runs the full text pipeline over a document and
//! inserts the resulting knowledge units into a network.

use crate::config::Config;
use crate::deep_case::assign_deep_cases;
use crate::knowledge_extraction::{parse_clause, split_knowledge_units};
use crate::network::{Network, UnitWord};
use crate::text_analysis::{recognize_entities, split_sentences, tag_pos, tokenize};

/// What one ingestion run did. Added counts are network-level deltas, so
/// re-ingesting a document reports zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub sentences: usize,
    pub units_seen: usize,
    pub units_added: usize,
    pub words_added: usize,
    pub links_added: usize,
    /// One line per skipped sentence or unit.
    pub diagnostics: Vec<String>,
}

/// Ingests a document under a source label. Sentences the parser cannot
/// handle are reported in the diagnostics and skipped rather than failing
/// the whole document.
pub fn ingest_document(
    net: &mut Network,
    config: &Config,
    source: &str,
    text: &str,
) -> IngestReport {
    let before = net.stats();
    let mut report = IngestReport::default();

    let sentences = split_sentences(text);
    report.sentences = sentences.len();
    for sentence in &sentences {
        let mut tokens = tokenize(sentence);
        if tokens.is_empty() {
            report
                .diagnostics
                .push(format!("no words in sentence: {:?}", sentence.text));
            continue;
        }
        tag_pos(&mut tokens, &config.lexicon);
        let tokens = recognize_entities(tokens, &config.gazetteer);
        let parse = match parse_clause(tokens) {
            Ok(parse) => parse,
            Err(error) => {
                report.diagnostics.push(error.to_string());
                continue;
            }
        };
        for draft in split_knowledge_units(&parse) {
            report.units_seen += 1;
            let assignments = assign_deep_cases(&draft, &parse, &config.stopwords);
            if assignments.is_empty() {
                report
                    .diagnostics
                    .push(format!("no content words in unit: {:?}", draft.text));
                continue;
            }
            let words: Vec<UnitWord> = assignments
                .iter()
                .map(|assignment| {
                    let token = &parse.tokens[assignment.position];
                    UnitWord {
                        surface: assignment.surface.clone(),
                        pos: token.pos,
                        entity: token.entity,
                        case: assignment.case,
                    }
                })
                .collect();
            net.add_knowledge_unit(&draft.text, source, &words)
                .expect("unit with content words is never empty");
        }
    }

    let after = net.stats();
    report.units_added = after.knowledge_units - before.knowledge_units;
    report.words_added = after.words - before.words;
    report.links_added = after.links - before.links;
    report
}
