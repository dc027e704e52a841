//! Parses a tagged sentence into a clause core plus adjuncts, splits the
//! clause into knowledge units (one per core+adjunct combination), and
//! selects the content words that become network nodes.

use std::collections::HashSet;
use std::ops::Range;

use crate::text_analysis::{EntityTag, PosTag, Token};

/// What an adjunct contributes to case assignment, decided from its
/// preposition and the entity of its head word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdjunctKind {
    Location,
    Time,
    Instrument,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjunct {
    pub preposition: String,
    /// Sentence index of the preposition token.
    pub prep_index: usize,
    pub phrase: Range<usize>,
    pub kind: AdjunctKind,
}

/// A flat clause reading of one sentence: subject span, verb group, optional
/// object span, and preposition-introduced adjuncts. Spans index into
/// `tokens`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseParse {
    pub tokens: Vec<Token>,
    pub subject: Option<Range<usize>>,
    pub verb_group: Range<usize>,
    pub object: Option<Range<usize>>,
    pub adjuncts: Vec<Adjunct>,
    /// True when the sentence had no verb of its own and the last auxiliary
    /// of the first auxiliary run was promoted to main verb ("Rahim is the
    /// brother of Karim").
    pub copular: bool,
}

impl ClauseParse {
    /// Sentence index of the main verb: the last token of the verb group.
    pub fn main_verb_index(&self) -> usize {
        self.verb_group.end - 1
    }

    pub fn subject_head(&self) -> Option<usize> {
        self.subject.as_ref().and_then(|r| head_of(&self.tokens, r))
    }

    pub fn object_head(&self) -> Option<usize> {
        self.object.as_ref().and_then(|r| head_of(&self.tokens, r))
    }

    pub fn adjunct_head(&self, adjunct_index: usize) -> Option<usize> {
        head_of(&self.tokens, &self.adjuncts[adjunct_index].phrase)
    }
}

/// One knowledge unit as carved from a clause: the clause core plus at most
/// one adjunct, with its text rebuilt from token surfaces in sentence order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnowledgeUnitDraft {
    pub text: String,
    pub member_tokens: Vec<Token>,
    pub source_sentence: String,
    /// Index into the parse's adjunct list for the adjunct this unit keeps.
    pub adjunct: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("no verb found in sentence: {0:?}")]
    NoVerbFound(String),
}

fn is_nounish(token: &Token) -> bool {
    matches!(
        token.pos,
        PosTag::Noun | PosTag::Pronoun | PosTag::Number | PosTag::Adjective | PosTag::Determiner
    )
}

fn head_of(tokens: &[Token], range: &Range<usize>) -> Option<usize> {
    range.clone().rev().find(|&i| {
        matches!(
            tokens[i].pos,
            PosTag::Noun | PosTag::Pronoun | PosTag::Number | PosTag::Adjective
        )
    })
}

fn adjunct_kind(preposition: &str, head: Option<&Token>) -> AdjunctKind {
    let head_entity = head.map_or(EntityTag::None, |t| t.entity);
    if head_entity == EntityTag::Date {
        return AdjunctKind::Time;
    }
    if head_entity == EntityTag::Location || matches!(preposition, "in" | "at" | "near") {
        return AdjunctKind::Location;
    }
    if preposition == "with" && head_entity != EntityTag::Person {
        return AdjunctKind::Instrument;
    }
    AdjunctKind::Other
}

/// Parses a tagged sentence. The subject is the first noun span before the
/// verb group, the verb group is a contiguous run of auxiliaries ending in
/// the main verb, the object is the first noun span after the verb group not
/// introduced by a preposition, and every preposition followed by a noun
/// span becomes an adjunct.
///
/// A sentence with auxiliaries but no verb is read as copular: the last
/// auxiliary of the first auxiliary run is promoted to main verb, so "X is
/// Y" facts still yield a unit with an action word.
pub fn parse_clause(tokens: Vec<Token>) -> Result<ClauseParse, ParseError> {
    let mut tokens = tokens;
    debug_assert!(
        tokens.iter().enumerate().all(|(i, t)| t.position == i),
        "token positions must be contiguous from 0"
    );

    let mut copular = false;
    if !tokens.iter().any(|t| t.pos == PosTag::Verb) {
        if let Some(first_aux) = tokens.iter().position(|t| t.pos == PosTag::Auxiliary) {
            let mut last = first_aux;
            while last + 1 < tokens.len() && tokens[last + 1].pos == PosTag::Auxiliary {
                last += 1;
            }
            tokens[last].pos = PosTag::Verb;
            copular = true;
        }
    }

    let Some(verb_idx) = tokens.iter().position(|t| t.pos == PosTag::Verb) else {
        let text: Vec<&str> = tokens.iter().map(|t| t.surface.as_str()).collect();
        return Err(ParseError::NoVerbFound(text.join(" ")));
    };
    let mut group_start = verb_idx;
    while group_start > 0 && tokens[group_start - 1].pos == PosTag::Auxiliary {
        group_start -= 1;
    }
    let verb_group = group_start..verb_idx + 1;

    let mut subject: Option<Range<usize>> = None;
    let mut object: Option<Range<usize>> = None;
    let mut adjuncts: Vec<Adjunct> = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        if i == verb_group.start {
            i = verb_group.end;
            continue;
        }
        if tokens[i].pos == PosTag::Preposition
            && i + 1 < tokens.len()
            && i + 1 != verb_group.start
            && is_nounish(&tokens[i + 1])
        {
            let start = i + 1;
            let mut end = start;
            while end < tokens.len() && end != verb_group.start && is_nounish(&tokens[end]) {
                end += 1;
            }
            let phrase = start..end;
            let preposition = tokens[i].surface.to_lowercase();
            let head = head_of(&tokens, &phrase).map(|h| &tokens[h]);
            let kind = adjunct_kind(&preposition, head);
            adjuncts.push(Adjunct {
                preposition,
                prep_index: i,
                phrase,
                kind,
            });
            i = end;
        } else if is_nounish(&tokens[i]) {
            let start = i;
            let mut end = start;
            while end < tokens.len() && end != verb_group.start && is_nounish(&tokens[end]) {
                end += 1;
            }
            if start < verb_group.start {
                if subject.is_none() {
                    subject = Some(start..end);
                }
            } else if object.is_none() {
                object = Some(start..end);
            }
            i = end;
        } else {
            i += 1;
        }
    }

    Ok(ClauseParse {
        tokens,
        subject,
        verb_group,
        object,
        adjuncts,
        copular,
    })
}

/// Splits a parse into knowledge units: the clause core (subject + verb
/// group + object) combined with each adjunct in turn, or the core alone
/// when there are no adjuncts. Unit text is the member surfaces joined with
/// single spaces in sentence order.
pub fn split_knowledge_units(parse: &ClauseParse) -> Vec<KnowledgeUnitDraft> {
    let mut core: Vec<usize> = Vec::new();
    if let Some(subject) = &parse.subject {
        core.extend(subject.clone());
    }
    core.extend(parse.verb_group.clone());
    if let Some(object) = &parse.object {
        core.extend(object.clone());
    }

    let source_sentence: String = {
        let surfaces: Vec<&str> = parse.tokens.iter().map(|t| t.surface.as_str()).collect();
        surfaces.join(" ")
    };

    let build = |indices: &mut Vec<usize>, adjunct: Option<usize>| {
        indices.sort_unstable();
        let member_tokens: Vec<Token> = indices.iter().map(|&i| parse.tokens[i].clone()).collect();
        let text: Vec<&str> = member_tokens.iter().map(|t| t.surface.as_str()).collect();
        KnowledgeUnitDraft {
            text: text.join(" "),
            member_tokens,
            source_sentence: source_sentence.clone(),
            adjunct,
        }
    };

    if parse.adjuncts.is_empty() {
        let mut indices = core.clone();
        return vec![build(&mut indices, None)];
    }
    parse
        .adjuncts
        .iter()
        .enumerate()
        .map(|(a, adjunct)| {
            let mut indices = core.clone();
            indices.push(adjunct.prep_index);
            indices.extend(adjunct.phrase.clone());
            build(&mut indices, Some(a))
        })
        .collect()
}

/// Content words of a unit: member tokens that are not auxiliaries,
/// prepositions, or determiners, and whose surface is not stopworded.
/// Order is preserved; the result may be empty.
pub fn content_words(unit: &KnowledgeUnitDraft, stopwords: &HashSet<String>) -> Vec<Token> {
    unit.member_tokens
        .iter()
        .filter(|t| {
            !matches!(
                t.pos,
                PosTag::Auxiliary | PosTag::Preposition | PosTag::Determiner
            ) && !stopwords.contains(&t.surface.to_lowercase())
        })
        .cloned()
        .collect()
}
