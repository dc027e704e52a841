//! Tagging and question-analysis configuration: POS lexicon, entity
//! gazetteer, stopword list, and interrogative mapping. Defaults are
//! compiled into the binary; each one can be replaced by a file given on the
//! command line.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use crate::deep_case::{default_interrogative_cases, DeepCase};
use crate::text_analysis::{EntityTag, PosTag};

const BUILTIN_LEXICON: &str = include_str!("../data/lexicon.tsv");
const BUILTIN_GAZETTEER: &str = include_str!("../data/gazetteer.tsv");
const BUILTIN_STOPWORDS: &str = include_str!("../data/stopwords.txt");

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}:{line}: {message}")]
    Parse {
        origin: String,
        line: usize,
        message: String,
    },
}

/// All tagging/QA configuration in loaded form. Lookup keys are lowercased
/// at load time; lookups must lowercase too.
#[derive(Debug, Clone)]
pub struct Config {
    pub lexicon: HashMap<String, PosTag>,
    pub gazetteer: HashMap<String, EntityTag>,
    pub stopwords: HashSet<String>,
    /// Interrogative word to the deep cases its answers must carry, in
    /// preference order.
    pub interrogatives: HashMap<String, Vec<DeepCase>>,
}

impl Config {
    /// The configuration shipped inside the binary.
    pub fn builtin() -> Config {
        Config {
            lexicon: parse_lexicon(BUILTIN_LEXICON, "builtin lexicon")
                .expect("builtin lexicon must parse"),
            gazetteer: parse_gazetteer(BUILTIN_GAZETTEER, "builtin gazetteer")
                .expect("builtin gazetteer must parse"),
            stopwords: parse_stopwords(BUILTIN_STOPWORDS, "builtin stopwords")
                .expect("builtin stopwords must parse"),
            interrogatives: default_interrogative_cases()
                .into_iter()
                .map(|(w, cases)| (w.to_string(), cases))
                .collect(),
        }
    }

    /// Builtin configuration with individual tables replaced from files.
    pub fn load(
        lexicon: Option<&Path>,
        gazetteer: Option<&Path>,
        stopwords: Option<&Path>,
        interrogatives: Option<&Path>,
    ) -> Result<Config, ConfigError> {
        let mut config = Config::builtin();
        if let Some(path) = lexicon {
            config.lexicon = parse_lexicon(&read(path)?, &path.display().to_string())?;
        }
        if let Some(path) = gazetteer {
            config.gazetteer = parse_gazetteer(&read(path)?, &path.display().to_string())?;
        }
        if let Some(path) = stopwords {
            config.stopwords = parse_stopwords(&read(path)?, &path.display().to_string())?;
        }
        if let Some(path) = interrogatives {
            config.interrogatives =
                parse_interrogatives(&read(path)?, &path.display().to_string())?;
        }
        Ok(config)
    }
}

fn read(path: &Path) -> Result<String, ConfigError> {
    std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Lines of the form `word<TAB>value`; blank lines and lines starting with
/// `#` are skipped. Words are lowercased; a repeated word keeps the last
/// entry.
fn parse_tabbed<'a>(
    text: &'a str,
    origin: &str,
) -> impl Iterator<Item = Result<(usize, String, &'a str), ConfigError>> {
    let origin = origin.to_string();
    text.lines().enumerate().filter_map(move |(i, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            return None;
        }
        let number = i + 1;
        match line.split_once('\t') {
            Some((word, value)) if !word.trim().is_empty() && !value.trim().is_empty() => Some(
                Ok((number, word.trim().to_lowercase(), value.trim())),
            ),
            _ => Some(Err(ConfigError::Parse {
                origin: origin.clone(),
                line: number,
                message: format!("expected `word<TAB>value`, got {line:?}"),
            })),
        }
    })
}

pub fn parse_lexicon(text: &str, origin: &str) -> Result<HashMap<String, PosTag>, ConfigError> {
    let mut map = HashMap::new();
    for entry in parse_tabbed(text, origin) {
        let (line, word, value) = entry?;
        let tag: PosTag = value.parse().map_err(|message| ConfigError::Parse {
            origin: origin.to_string(),
            line,
            message,
        })?;
        map.insert(word, tag);
    }
    Ok(map)
}

pub fn parse_gazetteer(
    text: &str,
    origin: &str,
) -> Result<HashMap<String, EntityTag>, ConfigError> {
    let mut map = HashMap::new();
    for entry in parse_tabbed(text, origin) {
        let (line, word, value) = entry?;
        let tag: EntityTag = value.parse().map_err(|message| ConfigError::Parse {
            origin: origin.to_string(),
            line,
            message,
        })?;
        map.insert(word, tag);
    }
    Ok(map)
}

/// One word per line, `#` comments, lowercased.
pub fn parse_stopwords(text: &str, origin: &str) -> Result<HashSet<String>, ConfigError> {
    let mut set = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.chars().any(char::is_whitespace) {
            return Err(ConfigError::Parse {
                origin: origin.to_string(),
                line: i + 1,
                message: format!("expected a single word per line, got {line:?}"),
            });
        }
        set.insert(line.to_lowercase());
    }
    Ok(set)
}

/// Lines of the form `word<TAB>Case1,Case2,...`, replacing the whole builtin
/// interrogative table.
pub fn parse_interrogatives(
    text: &str,
    origin: &str,
) -> Result<HashMap<String, Vec<DeepCase>>, ConfigError> {
    let mut map = HashMap::new();
    for entry in parse_tabbed(text, origin) {
        let (line, word, value) = entry?;
        let mut cases = Vec::new();
        for part in value.split(',') {
            let case: DeepCase =
                part.trim().parse().map_err(|message| ConfigError::Parse {
                    origin: origin.to_string(),
                    line,
                    message,
                })?;
            cases.push(case);
        }
        if cases.is_empty() {
            return Err(ConfigError::Parse {
                origin: origin.to_string(),
                line,
                message: "interrogative needs at least one case".to_string(),
            });
        }
        map.insert(word, cases);
    }
    Ok(map)
}
