//! Question answering over the network: parse a wh-question, find knowledge
//! units connecting its content words, pick one whose deep cases satisfy the
//! interrogative, and fall back to bounded multi-hop chaining when no single
//! unit answers.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::config::Config;
use crate::deep_case::DeepCase;
use crate::network::{KnowledgeEntry, KnowledgeId, Network, WordId};
use crate::text_analysis::{recognize_entities, split_sentences, tag_pos, tokenize, EntityTag, PosTag};

pub const DEFAULT_MAX_HOPS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Question {
    pub raw: String,
    /// Lowercased interrogative word.
    pub interrogative: String,
    /// Content word surfaces in question order, dates normalized.
    pub content_words: Vec<String>,
    /// Deep cases an answer word may carry, in preference order.
    pub required_cases: Vec<DeepCase>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub knowledge_id: KnowledgeId,
    /// Resolved question word ids; every candidate unit contains them all.
    pub matched_word_ids: BTreeSet<WordId>,
    /// First unit word carrying a required case, by case preference order
    /// then unit word order.
    pub case_match: Option<(WordId, DeepCase)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Answer {
    /// Texts of the knowledge units backing the answer, chain order.
    pub texts: Vec<String>,
    /// Display surface of the case-matched answer word.
    pub answer_word: Option<String>,
    /// Number of knowledge units in the chain; 1 for direct answers.
    pub hops: usize,
    pub trace: Trace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub strategy: String,
    pub question_words: Vec<TraceQuestionWord>,
    pub required_cases: Vec<String>,
    pub resolved: Vec<TraceResolution>,
    /// One row per unordered word pair per candidate unit.
    pub pair_rows: Vec<TracePairRow>,
    pub candidates: Vec<TraceCandidate>,
    /// Knowledge ids of the answering chain, in order.
    pub chain: Vec<String>,
    pub decision: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceQuestionWord {
    pub surface: String,
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceResolution {
    pub surface: String,
    pub word_id: Option<WordId>,
    pub canonical: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TracePairRow {
    pub first: String,
    pub second: String,
    pub knowledge: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceCandidate {
    pub knowledge: String,
    pub text: String,
    pub case_match: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QaError {
    #[error("the question contains no supported interrogative")]
    NoInterrogative,
    #[error("the question has no content words")]
    NoContentWords,
    #[error("unknown word: {0}")]
    UnknownWord(String),
    #[error("no knowledge unit carries a case required by the interrogative")]
    NoCaseMatch,
    #[error("no chain of knowledge units connects the question words to an answer")]
    NoPathFound,
}

/// Runs the text pipeline over the first sentence of `text`, takes the first
/// supported interrogative as the question type, and keeps the remaining
/// content words (dates normalized) for the search.
pub fn analyze_question(config: &Config, text: &str) -> Result<Question, QaError> {
    let sentences = split_sentences(text);
    let Some(first) = sentences.first() else {
        return Err(QaError::NoInterrogative);
    };
    let mut tokens = tokenize(first);
    tag_pos(&mut tokens, &config.lexicon);
    let tokens = recognize_entities(tokens, &config.gazetteer);

    let interrogative_at = tokens
        .iter()
        .position(|t| config.interrogatives.contains_key(&t.surface.to_lowercase()))
        .ok_or(QaError::NoInterrogative)?;
    let interrogative = tokens[interrogative_at].surface.to_lowercase();
    let required_cases = config.interrogatives[&interrogative].clone();

    let content_words: Vec<String> = tokens
        .iter()
        .enumerate()
        .filter(|(i, token)| {
            *i != interrogative_at
                && !matches!(
                    token.pos,
                    PosTag::Auxiliary
                        | PosTag::Preposition
                        | PosTag::Determiner
                        | PosTag::Interrogative
                )
                && !config.stopwords.contains(&token.surface.to_lowercase())
        })
        .map(|(_, token)| token.surface.clone())
        .collect();
    if content_words.is_empty() {
        return Err(QaError::NoContentWords);
    }

    Ok(Question {
        raw: text.trim().to_string(),
        interrogative,
        content_words,
        required_cases,
    })
}

fn stripped_forms(word: &str) -> Vec<String> {
    let mut forms = Vec::new();
    if let Some(stem) = word.strip_suffix("ies") {
        if !stem.is_empty() {
            forms.push(format!("{stem}y"));
        }
    }
    if let Some(stem) = word.strip_suffix("es") {
        if stem.len() > 1 {
            forms.push(stem.to_string());
        }
    }
    if let Some(stem) = word.strip_suffix("ed") {
        if stem.len() > 1 {
            forms.push(stem.to_string());
            forms.push(format!("{stem}e"));
        }
    }
    if let Some(stem) = word.strip_suffix('s') {
        if !stem.ends_with('s') && stem.len() > 1 {
            forms.push(stem.to_string());
        }
    }
    forms
}

fn expanded_forms(word: &str) -> Vec<String> {
    let mut forms = vec![
        format!("{word}s"),
        format!("{word}es"),
        format!("{word}ed"),
    ];
    if word.ends_with('e') {
        forms.push(format!("{word}d"));
    }
    if let Some(stem) = word.strip_suffix('y') {
        forms.push(format!("{stem}ies"));
    }
    forms
}

/// Exact canonical lookup, then suffix stripping of the question word, then
/// inflected expansions of it (lowest matching id). Applied only at question
/// time; stored words are never stemmed.
pub fn resolve_question_word(net: &Network, surface: &str) -> Option<WordId> {
    let canonical = surface.to_lowercase();
    if let Some(id) = net.resolve(&canonical) {
        return Some(id);
    }
    for form in stripped_forms(&canonical) {
        if let Some(id) = net.resolve(&form) {
            return Some(id);
        }
    }
    expanded_forms(&canonical)
        .iter()
        .filter_map(|form| net.resolve(form))
        .min()
}

fn find_case_match(entry: &KnowledgeEntry, required: &[DeepCase]) -> Option<(WordId, DeepCase)> {
    for &case in required {
        for (i, &word) in entry.word_ids.iter().enumerate() {
            if entry.cases[i] == case {
                return Some((word, case));
            }
        }
    }
    None
}

/// Resolves every content word and lists the knowledge units containing all
/// of them, ascending by id, each annotated with its case match.
pub fn search_direct(question: &Question, net: &Network) -> Result<Vec<Candidate>, QaError> {
    let mut resolved: BTreeSet<WordId> = BTreeSet::new();
    for word in &question.content_words {
        match resolve_question_word(net, word) {
            Some(id) => {
                resolved.insert(id);
            }
            None => return Err(QaError::UnknownWord(word.clone())),
        }
    }
    Ok(net
        .knowledge_containing(&resolved)
        .into_iter()
        .map(|id| {
            let entry = net.knowledge_entry(id).expect("candidate id exists");
            Candidate {
                knowledge_id: id,
                matched_word_ids: resolved.clone(),
                case_match: find_case_match(entry, &question.required_cases),
            }
        })
        .collect())
}

/// Picks the best case-matched candidate: lowest required-case preference
/// index, then more matched question words, then lowest knowledge id.
pub fn select_answer(
    candidates: &[Candidate],
    question: &Question,
    net: &Network,
) -> Result<Answer, QaError> {
    let mut matched: Vec<&Candidate> = candidates
        .iter()
        .filter(|c| c.case_match.is_some())
        .collect();
    if matched.is_empty() {
        return Err(QaError::NoCaseMatch);
    }
    matched.sort_by_key(|c| {
        let (_, case) = c.case_match.expect("filtered on case_match");
        let preference = question
            .required_cases
            .iter()
            .position(|&r| r == case)
            .expect("case_match comes from required_cases");
        (
            preference,
            std::cmp::Reverse(c.matched_word_ids.len()),
            c.knowledge_id,
        )
    });
    let winner = matched[0];
    let entry = net
        .knowledge_entry(winner.knowledge_id)
        .expect("candidate id exists");
    let (answer_id, case) = winner.case_match.expect("filtered on case_match");
    let answer_surface = net
        .word(answer_id)
        .expect("answer word exists")
        .display_surface
        .clone();

    let trace = Trace {
        strategy: "direct".to_string(),
        question_words: question_word_rows(question, net),
        required_cases: case_names(&question.required_cases),
        resolved: resolution_rows(question, net),
        pair_rows: pair_rows_for(net, candidates.iter().map(|c| c.knowledge_id)),
        candidates: candidate_rows(net, candidates),
        chain: vec![entry.display_id()],
        decision: format!(
            "selected {}: {:?} carries {}, required by {:?}",
            entry.display_id(),
            answer_surface,
            case.name(),
            question.interrogative
        ),
    };
    Ok(Answer {
        texts: vec![entry.text.clone()],
        answer_word: Some(answer_surface),
        hops: 1,
        trace,
    })
}

/// Searches for the shortest chain of knowledge units, adjacent when they
/// share a word, that starts at a unit containing the first resolvable
/// question word, collectively covers all resolvable question words, and
/// ends in a unit carrying a required case. Equal-length chains are ranked
/// by required-case preference, then by the highest bottleneck link weight
/// along the word path into the answer, then by lowest id sequence.
pub fn answer_multi_hop(
    question: &Question,
    net: &Network,
    max_hops: usize,
) -> Result<Answer, QaError> {
    let mut resolved_in_order: Vec<WordId> = Vec::new();
    for word in &question.content_words {
        if let Some(id) = resolve_question_word(net, word) {
            if !resolved_in_order.contains(&id) {
                resolved_in_order.push(id);
            }
        }
    }
    let Some(&start_word) = resolved_in_order.first() else {
        return Err(QaError::UnknownWord(
            question
                .content_words
                .first()
                .cloned()
                .unwrap_or_default(),
        ));
    };
    let required_words: BTreeSet<WordId> = resolved_in_order.iter().copied().collect();
    let start_units = net.units_of_word(start_word);

    for length in 1..=max_hops.max(1) {
        let mut valid: Vec<RankedChain> = Vec::new();
        let mut chain: Vec<KnowledgeId> = Vec::new();
        for &start in &start_units {
            chain.push(start);
            extend_chains(net, question, &required_words, start_word, length, &mut chain, &mut valid);
            chain.pop();
        }
        if let Some(best) = valid.into_iter().min() {
            return Ok(build_chain_answer(question, net, &best.chain, best.answer_word, best.case));
        }
    }
    Err(QaError::NoPathFound)
}

/// Derived ordering ranks by case preference, then higher bottleneck
/// weight, then lexicographically smaller id sequence.
#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct RankedChain {
    preference: usize,
    bottleneck: std::cmp::Reverse<u64>,
    chain: Vec<KnowledgeId>,
    answer_word: WordId,
    case: DeepCase,
}

fn extend_chains(
    net: &Network,
    question: &Question,
    required_words: &BTreeSet<WordId>,
    start_word: WordId,
    length: usize,
    chain: &mut Vec<KnowledgeId>,
    valid: &mut Vec<RankedChain>,
) {
    if chain.len() == length {
        let last = net
            .knowledge_entry(*chain.last().expect("chain non-empty"))
            .expect("chain ids exist");
        let Some((answer_id, case)) = find_case_match(last, &question.required_cases) else {
            return;
        };
        let covered: BTreeSet<WordId> = chain
            .iter()
            .flat_map(|&id| {
                net.knowledge_entry(id)
                    .expect("chain ids exist")
                    .word_ids
                    .iter()
                    .copied()
            })
            .collect();
        if !required_words.is_subset(&covered) {
            return;
        }
        let preference = question
            .required_cases
            .iter()
            .position(|&r| r == case)
            .expect("case_match comes from required_cases");
        let bottleneck = chain_bottleneck(net, chain, start_word, answer_id);
        valid.push(RankedChain {
            preference,
            bottleneck: std::cmp::Reverse(bottleneck),
            chain: chain.clone(),
            answer_word: answer_id,
            case,
        });
        return;
    }
    let last = net
        .knowledge_entry(*chain.last().expect("chain non-empty"))
        .expect("chain ids exist");
    let mut neighbors: BTreeSet<KnowledgeId> = BTreeSet::new();
    for &word in &last.word_ids {
        neighbors.extend(net.units_of_word(word));
    }
    for next in neighbors {
        if chain.contains(&next) {
            continue;
        }
        chain.push(next);
        extend_chains(net, question, required_words, start_word, length, chain, valid);
        chain.pop();
    }
}

/// Best bottleneck link weight over word paths start → pivots → answer,
/// where consecutive path words must share the corresponding chain unit.
/// Staying on the same word between units costs nothing.
fn chain_bottleneck(
    net: &Network,
    chain: &[KnowledgeId],
    start_word: WordId,
    answer_word: WordId,
) -> u64 {
    let step = |from: WordId, to: WordId| -> u64 {
        if from == to {
            u64::MAX
        } else {
            net.link_weight(from, to) as u64
        }
    };
    let mut best: HashMap<WordId, u64> = HashMap::from([(start_word, u64::MAX)]);
    for window in chain.windows(2) {
        let current = net.knowledge_entry(window[0]).expect("chain ids exist");
        let next = net.knowledge_entry(window[1]).expect("chain ids exist");
        let mut advanced: HashMap<WordId, u64> = HashMap::new();
        for &shared in current
            .word_ids
            .iter()
            .filter(|w| next.word_ids.contains(w))
        {
            let reachable = best
                .iter()
                .map(|(&entry, &bound)| bound.min(step(entry, shared)))
                .max()
                .unwrap_or(0);
            if reachable > 0 {
                advanced.insert(shared, reachable);
            }
        }
        best = advanced;
    }
    best.iter()
        .map(|(&entry, &bound)| bound.min(step(entry, answer_word)))
        .max()
        .unwrap_or(0)
}

fn build_chain_answer(
    question: &Question,
    net: &Network,
    chain: &[KnowledgeId],
    answer_id: WordId,
    case: DeepCase,
) -> Answer {
    let entries: Vec<&KnowledgeEntry> = chain
        .iter()
        .map(|&id| net.knowledge_entry(id).expect("chain ids exist"))
        .collect();
    let answer_surface = net
        .word(answer_id)
        .expect("answer word exists")
        .display_surface
        .clone();
    let chain_candidates: Vec<Candidate> = entries
        .iter()
        .map(|entry| Candidate {
            knowledge_id: entry.id,
            matched_word_ids: BTreeSet::new(),
            case_match: find_case_match(entry, &question.required_cases),
        })
        .collect();
    let trace = Trace {
        strategy: "multi-hop".to_string(),
        question_words: question_word_rows(question, net),
        required_cases: case_names(&question.required_cases),
        resolved: resolution_rows(question, net),
        pair_rows: pair_rows_for(net, chain.iter().copied()),
        candidates: candidate_rows(net, &chain_candidates),
        chain: entries.iter().map(|e| e.display_id()).collect(),
        decision: format!(
            "chained {} knowledge units sharing words; {:?} in {} carries {}, required by {:?}",
            chain.len(),
            answer_surface,
            entries.last().expect("chain non-empty").display_id(),
            case.name(),
            question.interrogative
        ),
    };
    Answer {
        texts: entries.iter().map(|e| e.text.clone()).collect(),
        answer_word: Some(answer_surface),
        hops: chain.len(),
        trace,
    }
}

/// Full pipeline: analyze, direct search, selection; falls back to
/// multi-hop when no unit contains all question words or none carries a
/// required case. Unknown words and missing interrogatives are terminal.
pub fn answer(text: &str, net: &Network, config: &Config, max_hops: usize) -> Result<Answer, QaError> {
    let question = analyze_question(config, text)?;
    let candidates = search_direct(&question, net)?;
    if candidates.is_empty() {
        return answer_multi_hop(&question, net, max_hops);
    }
    match select_answer(&candidates, &question, net) {
        Err(QaError::NoCaseMatch) => answer_multi_hop(&question, net, max_hops),
        other => other,
    }
}

fn case_names(cases: &[DeepCase]) -> Vec<String> {
    cases.iter().map(|c| c.name().to_string()).collect()
}

fn word_kind(net: &Network, id: WordId) -> &'static str {
    let word = net.word(id).expect("resolved id exists");
    match word.entity {
        EntityTag::Person => "Who",
        EntityTag::Location => "Where",
        EntityTag::Date => "When",
        _ => match word.pos {
            PosTag::Verb => "Action",
            _ => "What",
        },
    }
}

fn question_word_rows(question: &Question, net: &Network) -> Vec<TraceQuestionWord> {
    let mut rows: Vec<TraceQuestionWord> = question
        .content_words
        .iter()
        .map(|surface| TraceQuestionWord {
            surface: surface.clone(),
            kind: match resolve_question_word(net, surface) {
                Some(id) => word_kind(net, id).to_string(),
                None => "?".to_string(),
            },
        })
        .collect();
    rows.push(TraceQuestionWord {
        surface: question.interrogative.clone(),
        kind: case_names(&question.required_cases).join("/"),
    });
    rows
}

fn resolution_rows(question: &Question, net: &Network) -> Vec<TraceResolution> {
    question
        .content_words
        .iter()
        .map(|surface| {
            let id = resolve_question_word(net, surface);
            TraceResolution {
                surface: surface.clone(),
                word_id: id,
                canonical: id.map(|i| net.word(i).expect("resolved id exists").surface_canonical.clone()),
            }
        })
        .collect()
}

fn pair_rows_for(net: &Network, ids: impl IntoIterator<Item = KnowledgeId>) -> Vec<TracePairRow> {
    let mut rows = Vec::new();
    for id in ids {
        let entry = net.knowledge_entry(id).expect("trace ids exist");
        for (i, &a) in entry.word_ids.iter().enumerate() {
            for &b in &entry.word_ids[i + 1..] {
                rows.push(TracePairRow {
                    first: net.word(a).expect("member exists").display_surface.clone(),
                    second: net.word(b).expect("member exists").display_surface.clone(),
                    knowledge: entry.display_id(),
                });
            }
        }
    }
    rows
}

fn candidate_rows(net: &Network, candidates: &[Candidate]) -> Vec<TraceCandidate> {
    candidates
        .iter()
        .map(|c| {
            let entry = net.knowledge_entry(c.knowledge_id).expect("candidate id exists");
            TraceCandidate {
                knowledge: entry.display_id(),
                text: entry.text.clone(),
                case_match: c.case_match.map(|(word, case)| {
                    format!(
                        "{} ({})",
                        net.word(word).expect("member exists").display_surface,
                        case.name()
                    )
                }),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::ingest_document;
    use crate::network::test_support::gandhi_network;

    fn config() -> Config {
        Config::builtin()
    }

    fn rahim_network() -> Network {
        let mut net = Network::new();
        ingest_document(
            &mut net,
            &config(),
            "rahim.txt",
            "Rahim is the brother of Karim. Karim lives in Porbandar.",
        );
        net
    }

    #[test]
    fn analyzes_the_where_question() {
        let q = analyze_question(&config(), "Where was Gandhiji born?").unwrap();
        assert_eq!(q.interrogative, "where");
        assert_eq!(q.content_words, vec!["Gandhiji", "born"]);
        assert_eq!(q.required_cases, vec![DeepCase::Location]);
    }

    #[test]
    fn question_dates_are_normalized() {
        let q = analyze_question(&config(), "Who was born on 2 October 1869?").unwrap();
        assert_eq!(q.content_words, vec!["born", "2-Oct-1869"]);
    }

    #[test]
    fn questions_without_supported_interrogatives_are_rejected() {
        for text in ["Gandhiji was born.", "Why was Gandhiji born?", ""] {
            assert_eq!(
                analyze_question(&config(), text).unwrap_err(),
                QaError::NoInterrogative,
                "{text:?}"
            );
        }
    }

    #[test]
    fn bare_interrogative_has_no_content() {
        assert_eq!(
            analyze_question(&config(), "Where?").unwrap_err(),
            QaError::NoContentWords
        );
    }

    #[test]
    fn resolution_falls_back_over_suffixes() {
        let net = rahim_network();
        let lives = net.resolve("lives").unwrap();
        assert_eq!(resolve_question_word(&net, "lives"), Some(lives));
        assert_eq!(resolve_question_word(&net, "live"), Some(lives));
        assert_eq!(resolve_question_word(&net, "Rahim"), net.resolve("rahim"));
        assert_eq!(resolve_question_word(&net, "walk"), None);

        let mut stored_base = Network::new();
        ingest_document(&mut stored_base, &config(), "doc", "Rahim will live in Delhi.");
        let live = stored_base.resolve("live").unwrap();
        assert_eq!(resolve_question_word(&stored_base, "lives"), Some(live));
        assert_eq!(resolve_question_word(&stored_base, "lived"), Some(live));
    }

    #[test]
    fn where_question_is_answered_by_the_location_unit() {
        let net = gandhi_network();
        let ans = answer("Where was Gandhiji born?", &net, &config(), DEFAULT_MAX_HOPS).unwrap();
        assert_eq!(ans.texts, vec!["Gandhiji was born in Porbandar"]);
        assert_eq!(ans.answer_word.as_deref(), Some("Porbandar"));
        assert_eq!(ans.hops, 1);
        assert_eq!(ans.trace.strategy, "direct");
        assert_eq!(ans.trace.chain, vec!["K1"]);
    }

    #[test]
    fn when_question_is_answered_by_the_time_unit() {
        let net = gandhi_network();
        let ans = answer("When was Gandhiji born?", &net, &config(), DEFAULT_MAX_HOPS).unwrap();
        assert_eq!(ans.texts, vec!["Gandhiji was born on 2-Oct-1869"]);
        assert_eq!(ans.answer_word.as_deref(), Some("2-Oct-1869"));
        assert_eq!(ans.hops, 1);
    }

    #[test]
    fn trace_lists_six_pair_rows_for_the_birth_questions() {
        let net = gandhi_network();
        let ans = answer("Where was Gandhiji born?", &net, &config(), DEFAULT_MAX_HOPS).unwrap();
        let rows: Vec<(String, String, String)> = ans
            .trace
            .pair_rows
            .iter()
            .map(|r| (r.first.clone(), r.second.clone(), r.knowledge.clone()))
            .collect();
        let k = |s: &str| s.to_string();
        assert_eq!(
            rows,
            vec![
                (k("Gandhiji"), k("born"), k("K1")),
                (k("Gandhiji"), k("Porbandar"), k("K1")),
                (k("born"), k("Porbandar"), k("K1")),
                (k("Gandhiji"), k("born"), k("K2")),
                (k("Gandhiji"), k("2-Oct-1869"), k("K2")),
                (k("born"), k("2-Oct-1869"), k("K2")),
            ]
        );
        assert_eq!(ans.trace.candidates.len(), 2);
        assert_eq!(
            ans.trace.candidates[0].case_match.as_deref(),
            Some("Porbandar (Location)")
        );
        assert_eq!(ans.trace.candidates[1].case_match, None);
    }

    #[test]
    fn unknown_words_fail_loudly() {
        let net = gandhi_network();
        let err = answer("Where was Einstein born?", &net, &config(), DEFAULT_MAX_HOPS).unwrap_err();
        assert_eq!(err, QaError::UnknownWord("Einstein".to_string()));
    }

    #[test]
    fn unanswerable_case_becomes_no_path() {
        let mut net = Network::new();
        ingest_document(&mut net, &config(), "doc", "Gandhiji was born in Porbandar.");
        let err = answer("When was Gandhiji born?", &net, &config(), DEFAULT_MAX_HOPS).unwrap_err();
        assert_eq!(err, QaError::NoPathFound);
    }

    #[test]
    fn rahim_question_chains_two_units() {
        let net = rahim_network();
        let ans = answer("Where does Rahim live?", &net, &config(), DEFAULT_MAX_HOPS).unwrap();
        assert_eq!(
            ans.texts,
            vec![
                "Rahim is the brother of Karim",
                "Karim lives in Porbandar",
            ]
        );
        assert_eq!(ans.answer_word.as_deref(), Some("Porbandar"));
        assert_eq!(ans.hops, 2);
        assert_eq!(ans.trace.strategy, "multi-hop");
        assert_eq!(ans.trace.chain, vec!["K1", "K2"]);
    }

    #[test]
    fn disjoint_content_words_route_to_multi_hop() {
        let mut net = Network::new();
        ingest_document(
            &mut net,
            &config(),
            "doc",
            "Rahim ate rice. Rice grows in India.",
        );
        let ans = answer("Where did Rahim grow?", &net, &config(), DEFAULT_MAX_HOPS).unwrap();
        assert_eq!(ans.hops, 2);
        assert_eq!(ans.answer_word.as_deref(), Some("India"));
        assert_eq!(ans.texts, vec!["Rahim ate rice", "Rice grows in India"]);
    }

    #[test]
    fn disconnected_corpora_find_no_path() {
        let mut net = Network::new();
        ingest_document(&mut net, &config(), "doc", "Rahim ate rice. Karim lives in Delhi.");
        let err = answer("Where did Rahim live?", &net, &config(), DEFAULT_MAX_HOPS).unwrap_err();
        assert_eq!(err, QaError::NoPathFound);
    }

    #[test]
    fn selection_prefers_earlier_required_cases() {
        let q = Question {
            raw: "what".to_string(),
            interrogative: "what".to_string(),
            content_words: vec!["x".to_string()],
            required_cases: vec![DeepCase::Patient, DeepCase::Action, DeepCase::State],
        };
        let mut net = Network::new();
        use crate::network::test_support::unit_word;
        net.add_knowledge_unit(
            "x runs",
            "doc",
            &[
                unit_word("x", PosTag::Noun, EntityTag::None, DeepCase::Agent),
                unit_word("runs", PosTag::Verb, EntityTag::None, DeepCase::Action),
            ],
        )
        .unwrap();
        net.add_knowledge_unit(
            "x holds y",
            "doc",
            &[
                unit_word("x", PosTag::Noun, EntityTag::None, DeepCase::Agent),
                unit_word("holds", PosTag::Verb, EntityTag::None, DeepCase::Action),
                unit_word("y", PosTag::Noun, EntityTag::None, DeepCase::Patient),
            ],
        )
        .unwrap();
        let candidates = search_direct(&q, &net).unwrap();
        let ans = select_answer(&candidates, &q, &net).unwrap();
        assert_eq!(ans.texts, vec!["x holds y"]);
        assert_eq!(ans.answer_word.as_deref(), Some("y"));
    }

    #[test]
    fn answers_are_deterministic() {
        let net = rahim_network();
        let first = answer("Where does Rahim live?", &net, &config(), DEFAULT_MAX_HOPS).unwrap();
        let second = answer("Where does Rahim live?", &net, &config(), DEFAULT_MAX_HOPS).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn multi_hop_respects_the_hop_bound() {
        let mut net = Network::new();
        ingest_document(
            &mut net,
            &config(),
            "doc",
            "Rahim is the brother of Karim. Karim is the friend of Salim. Salim lives in Delhi.",
        );
        let err = answer_multi_hop(
            &analyze_question(&config(), "Where does Rahim live?").unwrap(),
            &net,
            2,
        )
        .unwrap_err();
        assert_eq!(err, QaError::NoPathFound);
        let ans = answer_multi_hop(
            &analyze_question(&config(), "Where does Rahim live?").unwrap(),
            &net,
            3,
        )
        .unwrap();
        assert_eq!(ans.hops, 3);
        assert_eq!(ans.answer_word.as_deref(), Some("Delhi"));
    }
}
