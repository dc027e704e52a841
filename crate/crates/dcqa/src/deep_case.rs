//! The seven deep cases, word types derived from them, case assignment for
//! knowledge units, and the interrogative-to-case mapping.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::knowledge_extraction::{content_words, AdjunctKind, ClauseParse, KnowledgeUnitDraft};
use crate::text_analysis::{EntityTag, PosTag};

/// Semantic role of a word occurrence inside one knowledge unit. "Place" and
/// "Date" are accepted as input aliases of `Location` and `Time` but are
/// never stored or printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DeepCase {
    Agent,
    Action,
    Location,
    Time,
    Instrument,
    Patient,
    State,
}

impl DeepCase {
    pub fn name(self) -> &'static str {
        match self {
            DeepCase::Agent => "Agent",
            DeepCase::Action => "Action",
            DeepCase::Location => "Location",
            DeepCase::Time => "Time",
            DeepCase::Instrument => "Instrument",
            DeepCase::Patient => "Patient",
            DeepCase::State => "State",
        }
    }
}

impl std::fmt::Display for DeepCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for DeepCase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Agent" => Ok(DeepCase::Agent),
            "Action" => Ok(DeepCase::Action),
            "Location" | "Place" => Ok(DeepCase::Location),
            "Time" | "Date" => Ok(DeepCase::Time),
            "Instrument" => Ok(DeepCase::Instrument),
            "Patient" => Ok(DeepCase::Patient),
            "State" => Ok(DeepCase::State),
            _ => Err(format!("unknown deep case: {s:?}")),
        }
    }
}

/// The interrogative class a word can answer, computed on demand from its
/// deep case and entity tag rather than stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WordType {
    Who,
    What,
    Where,
    When,
    HowWith,
}

impl WordType {
    pub fn name(self) -> &'static str {
        match self {
            WordType::Who => "Who",
            WordType::What => "What",
            WordType::Where => "Where",
            WordType::When => "When",
            WordType::HowWith => "HowWith",
        }
    }
}

impl std::fmt::Display for WordType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A deep case assigned to one content-word occurrence, keyed by the token's
/// sentence position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseAssignment {
    pub position: usize,
    pub surface: String,
    pub case: DeepCase,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeepCaseError {
    #[error("unknown interrogative: {0:?}")]
    UnknownInterrogative(String),
}

pub fn word_type_for_case(case: DeepCase, entity: EntityTag) -> WordType {
    match case {
        DeepCase::Agent | DeepCase::Patient => {
            if entity == EntityTag::Person {
                WordType::Who
            } else {
                WordType::What
            }
        }
        DeepCase::Action | DeepCase::State => WordType::What,
        DeepCase::Location => WordType::Where,
        DeepCase::Time => WordType::When,
        DeepCase::Instrument => WordType::HowWith,
    }
}

/// The built-in interrogative mapping. Order within each list is the
/// preference order used when selecting an answer; a config file may
/// override the whole table.
pub fn default_interrogative_cases() -> Vec<(&'static str, Vec<DeepCase>)> {
    vec![
        ("who", vec![DeepCase::Agent, DeepCase::Patient]),
        ("whom", vec![DeepCase::Agent, DeepCase::Patient]),
        (
            "what",
            vec![DeepCase::Patient, DeepCase::Action, DeepCase::State],
        ),
        ("where", vec![DeepCase::Location]),
        ("when", vec![DeepCase::Time]),
        ("how", vec![DeepCase::Instrument, DeepCase::State]),
    ]
}

/// Deep cases an answer to the given interrogative must carry, in preference
/// order. Only who/whom/what/where/when/how are supported.
pub fn cases_for_interrogative(word: &str) -> Result<Vec<DeepCase>, DeepCaseError> {
    let lower = word.to_lowercase();
    default_interrogative_cases()
        .into_iter()
        .find(|(w, _)| *w == lower)
        .map(|(_, cases)| cases)
        .ok_or(DeepCaseError::UnknownInterrogative(lower))
}

/// Assigns a deep case to every content word of a unit: subject head is
/// Agent, the main verb is Action, the object head is Patient (or State for
/// an adjective complement after a copula), an adjunct head follows its
/// adjunct kind, and everything left over defaults to Patient.
pub fn assign_deep_cases(
    unit: &KnowledgeUnitDraft,
    parse: &ClauseParse,
    stopwords: &HashSet<String>,
) -> Vec<CaseAssignment> {
    let main_verb = parse.main_verb_index();
    let subject_head = parse.subject_head();
    let object_head = parse.object_head();
    let adjunct = unit.adjunct.map(|a| (&parse.adjuncts[a], parse.adjunct_head(a)));

    content_words(unit, stopwords)
        .into_iter()
        .map(|token| {
            let case = if token.position == main_verb {
                DeepCase::Action
            } else if Some(token.position) == subject_head {
                DeepCase::Agent
            } else if Some(token.position) == object_head {
                if parse.copular && token.pos == PosTag::Adjective {
                    DeepCase::State
                } else {
                    DeepCase::Patient
                }
            } else if let Some((adj, Some(head))) = adjunct {
                if token.position == head {
                    match adj.kind {
                        AdjunctKind::Location => DeepCase::Location,
                        AdjunctKind::Time => DeepCase::Time,
                        AdjunctKind::Instrument => DeepCase::Instrument,
                        AdjunctKind::Other => DeepCase::Patient,
                    }
                } else {
                    DeepCase::Patient
                }
            } else {
                DeepCase::Patient
            };
            CaseAssignment {
                position: token.position,
                surface: token.surface,
                case,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::knowledge_extraction::{parse_clause, split_knowledge_units};
    use crate::text_analysis::{recognize_entities, split_sentences, tag_pos, tokenize};

    fn parse_and_split(text: &str) -> (ClauseParse, Vec<KnowledgeUnitDraft>) {
        let cfg = Config::builtin();
        let sentences = split_sentences(text);
        let mut tokens = tokenize(&sentences[0]);
        tag_pos(&mut tokens, &cfg.lexicon);
        let tokens = recognize_entities(tokens, &cfg.gazetteer);
        let parse = parse_clause(tokens).expect("fixture must parse");
        let units = split_knowledge_units(&parse);
        (parse, units)
    }

    fn cases_of(text: &str, unit_index: usize) -> Vec<(String, DeepCase)> {
        let cfg = Config::builtin();
        let (parse, units) = parse_and_split(text);
        assign_deep_cases(&units[unit_index], &parse, &cfg.stopwords)
            .into_iter()
            .map(|a| (a.surface, a.case))
            .collect()
    }

    #[test]
    fn assigns_gandhi_cases() {
        let text = "Gandhiji was born in Porbandar on 2nd October 1869.";
        assert_eq!(
            cases_of(text, 0),
            vec![
                ("Gandhiji".to_string(), DeepCase::Agent),
                ("born".to_string(), DeepCase::Action),
                ("Porbandar".to_string(), DeepCase::Location),
            ]
        );
        assert_eq!(
            cases_of(text, 1),
            vec![
                ("Gandhiji".to_string(), DeepCase::Agent),
                ("born".to_string(), DeepCase::Action),
                ("2-Oct-1869".to_string(), DeepCase::Time),
            ]
        );
    }

    #[test]
    fn assigns_object_as_patient() {
        assert_eq!(
            cases_of("Popeye eats spinach", 0),
            vec![
                ("Popeye".to_string(), DeepCase::Agent),
                ("eats".to_string(), DeepCase::Action),
                ("spinach".to_string(), DeepCase::Patient),
            ]
        );
    }

    #[test]
    fn adjective_complement_after_copula_is_state() {
        assert_eq!(
            cases_of("Gandhiji was famous", 0),
            vec![
                ("Gandhiji".to_string(), DeepCase::Agent),
                ("was".to_string(), DeepCase::Action),
                ("famous".to_string(), DeepCase::State),
            ]
        );
    }

    #[test]
    fn copular_relation_sentence_gets_one_action() {
        let got = cases_of("Rahim is the brother of Karim.", 0);
        assert_eq!(
            got,
            vec![
                ("Rahim".to_string(), DeepCase::Agent),
                ("is".to_string(), DeepCase::Action),
                ("brother".to_string(), DeepCase::Patient),
                ("Karim".to_string(), DeepCase::Patient),
            ]
        );
        let actions = got.iter().filter(|(_, c)| *c == DeepCase::Action).count();
        assert_eq!(actions, 1);
    }

    #[test]
    fn instrument_adjunct_head_gets_instrument() {
        let got = cases_of("Rahim cut the rope with a knife.", 0);
        assert!(got.contains(&("knife".to_string(), DeepCase::Instrument)));
    }

    #[test]
    fn every_fixture_unit_has_exactly_one_action_and_at_most_one_agent() {
        let fixtures = [
            "Gandhiji was born in Porbandar on 2nd October 1869.",
            "Popeye eats spinach",
            "Rahim is the brother of Karim.",
            "Karim lives in Porbandar.",
            "Rahim ate rice with Karim in Delhi on 15 August 1947.",
        ];
        let cfg = Config::builtin();
        for text in fixtures {
            let (parse, units) = parse_and_split(text);
            for (u, unit) in units.iter().enumerate() {
                let cases = assign_deep_cases(unit, &parse, &cfg.stopwords);
                let actions = cases.iter().filter(|a| a.case == DeepCase::Action).count();
                let agents = cases.iter().filter(|a| a.case == DeepCase::Agent).count();
                assert_eq!(actions, 1, "unit {u} of {text:?}");
                assert!(agents <= 1, "unit {u} of {text:?}");
            }
        }
    }

    #[test]
    fn word_types_follow_case_and_entity() {
        assert_eq!(
            word_type_for_case(DeepCase::Agent, EntityTag::Person),
            WordType::Who
        );
        assert_eq!(
            word_type_for_case(DeepCase::Agent, EntityTag::None),
            WordType::What
        );
        assert_eq!(
            word_type_for_case(DeepCase::Action, EntityTag::None),
            WordType::What
        );
        assert_eq!(
            word_type_for_case(DeepCase::Location, EntityTag::Location),
            WordType::Where
        );
        assert_eq!(
            word_type_for_case(DeepCase::Time, EntityTag::Date),
            WordType::When
        );
        assert_eq!(
            word_type_for_case(DeepCase::Instrument, EntityTag::None),
            WordType::HowWith
        );
        assert_eq!(
            word_type_for_case(DeepCase::Patient, EntityTag::Person),
            WordType::Who
        );
        assert_eq!(
            word_type_for_case(DeepCase::Patient, EntityTag::None),
            WordType::What
        );
        assert_eq!(
            word_type_for_case(DeepCase::State, EntityTag::None),
            WordType::What
        );
    }

    #[test]
    fn interrogative_mapping_matches_documented_table() {
        assert_eq!(
            cases_for_interrogative("where").unwrap(),
            vec![DeepCase::Location]
        );
        assert_eq!(
            cases_for_interrogative("when").unwrap(),
            vec![DeepCase::Time]
        );
        assert_eq!(
            cases_for_interrogative("Who").unwrap(),
            vec![DeepCase::Agent, DeepCase::Patient]
        );
        assert_eq!(
            cases_for_interrogative("what").unwrap(),
            vec![DeepCase::Patient, DeepCase::Action, DeepCase::State]
        );
        assert_eq!(
            cases_for_interrogative("how").unwrap(),
            vec![DeepCase::Instrument, DeepCase::State]
        );
    }

    #[test]
    fn unsupported_interrogatives_are_rejected() {
        let err = cases_for_interrogative("why").unwrap_err();
        assert_eq!(err, DeepCaseError::UnknownInterrogative("why".to_string()));
        assert!(cases_for_interrogative("which").is_err());
        assert!(cases_for_interrogative("whose").is_err());
    }

    #[test]
    fn case_aliases_parse_but_do_not_print() {
        assert_eq!("Place".parse::<DeepCase>().unwrap(), DeepCase::Location);
        assert_eq!("Date".parse::<DeepCase>().unwrap(), DeepCase::Time);
        assert_eq!(DeepCase::Location.to_string(), "Location");
        assert_eq!(DeepCase::Time.to_string(), "Time");
    }
}
