//! Turns raw document text into tagged token sequences: sentence splitting,
//! tokenization, rule-based POS tagging, entity recognition, and date
//! normalization.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

/// Part-of-speech tag. Every token receives exactly one; words the tagger
/// cannot place default to `Noun`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PosTag {
    Noun,
    Verb,
    Adjective,
    Adverb,
    Preposition,
    Determiner,
    Pronoun,
    Auxiliary,
    Interrogative,
    Number,
    Other,
}

impl PosTag {
    pub fn name(self) -> &'static str {
        match self {
            PosTag::Noun => "Noun",
            PosTag::Verb => "Verb",
            PosTag::Adjective => "Adjective",
            PosTag::Adverb => "Adverb",
            PosTag::Preposition => "Preposition",
            PosTag::Determiner => "Determiner",
            PosTag::Pronoun => "Pronoun",
            PosTag::Auxiliary => "Auxiliary",
            PosTag::Interrogative => "Interrogative",
            PosTag::Number => "Number",
            PosTag::Other => "Other",
        }
    }
}

impl std::fmt::Display for PosTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for PosTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Noun" => Ok(PosTag::Noun),
            "Verb" => Ok(PosTag::Verb),
            "Adjective" => Ok(PosTag::Adjective),
            "Adverb" => Ok(PosTag::Adverb),
            "Preposition" => Ok(PosTag::Preposition),
            "Determiner" => Ok(PosTag::Determiner),
            "Pronoun" => Ok(PosTag::Pronoun),
            "Auxiliary" => Ok(PosTag::Auxiliary),
            "Interrogative" => Ok(PosTag::Interrogative),
            "Number" => Ok(PosTag::Number),
            "Other" => Ok(PosTag::Other),
            _ => Err(format!("unknown part-of-speech tag: {s:?}")),
        }
    }
}

/// Named-entity tag. `Date` tokens always carry a canonical surface in the
/// form produced by [`normalize_date`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EntityTag {
    Person,
    Location,
    Date,
    Organization,
    None,
}

impl EntityTag {
    pub fn name(self) -> &'static str {
        match self {
            EntityTag::Person => "Person",
            EntityTag::Location => "Location",
            EntityTag::Date => "Date",
            EntityTag::Organization => "Organization",
            EntityTag::None => "None",
        }
    }
}

impl std::fmt::Display for EntityTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for EntityTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Person" => Ok(EntityTag::Person),
            "Location" => Ok(EntityTag::Location),
            "Date" => Ok(EntityTag::Date),
            "Organization" => Ok(EntityTag::Organization),
            "None" => Ok(EntityTag::None),
            _ => Err(format!("unknown entity tag: {s:?}")),
        }
    }
}

/// One token of a sentence. `pos` and `entity` start out as the placeholder
/// values `Other`/`None` and are overwritten by [`tag_pos`] and
/// [`recognize_entities`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    /// 0-based index within the sentence; re-assigned after date merging so
    /// positions stay contiguous.
    pub position: usize,
    pub pos: PosTag,
    pub entity: EntityTag,
}

/// A sentence as carved out of a document, with the char offset of its first
/// non-whitespace character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSentence {
    pub text: String,
    pub document_offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DateError {
    #[error("unparseable date: {0:?}")]
    UnparseableDate(String),
}

/// Multi-letter abbreviations whose trailing period does not end a sentence.
/// Single letters are deliberately absent so that "A is B. C is D." splits.
const ABBREVIATIONS: &[&str] = &[
    "mr", "mrs", "ms", "dr", "prof", "st", "sr", "jr", "vs", "etc", "fig", "col", "gen", "rev",
    "hon", "capt", "lt", "mt", "inc", "ltd", "co",
];

const MONTHS: &[(&str, &str)] = &[
    ("january", "Jan"),
    ("jan", "Jan"),
    ("february", "Feb"),
    ("feb", "Feb"),
    ("march", "Mar"),
    ("mar", "Mar"),
    ("april", "Apr"),
    ("apr", "Apr"),
    ("may", "May"),
    ("june", "Jun"),
    ("jun", "Jun"),
    ("july", "Jul"),
    ("jul", "Jul"),
    ("august", "Aug"),
    ("aug", "Aug"),
    ("september", "Sep"),
    ("sept", "Sep"),
    ("sep", "Sep"),
    ("october", "Oct"),
    ("oct", "Oct"),
    ("november", "Nov"),
    ("nov", "Nov"),
    ("december", "Dec"),
    ("dec", "Dec"),
];

/// Splits a document into sentences at `.`, `!`, `?`, skipping periods that
/// belong to known abbreviations, ordinals like "2nd.", or decimal numbers.
pub fn split_sentences(document_text: &str) -> Vec<RawSentence> {
    let chars: Vec<char> = document_text.chars().collect();
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        let ends_here = match chars[i] {
            '!' | '?' => true,
            '.' => {
                !is_abbreviation_before(&chars, i)
                    && !is_ordinal_before(&chars, i)
                    && !is_decimal_point(&chars, i)
            }
            _ => false,
        };
        if ends_here {
            let mut end = i + 1;
            while end < chars.len() && matches!(chars[end], '.' | '!' | '?') {
                end += 1;
            }
            push_sentence(&chars, start, end, &mut sentences);
            start = end;
            i = end;
        } else {
            i += 1;
        }
    }
    push_sentence(&chars, start, chars.len(), &mut sentences);
    sentences
}

fn push_sentence(chars: &[char], start: usize, end: usize, out: &mut Vec<RawSentence>) {
    let mut s = start;
    while s < end && chars[s].is_whitespace() {
        s += 1;
    }
    let mut e = end;
    while e > s && chars[e - 1].is_whitespace() {
        e -= 1;
    }
    if s < e {
        out.push(RawSentence {
            text: chars[s..e].iter().collect(),
            document_offset: s,
        });
    }
}

fn word_before(chars: &[char], i: usize) -> String {
    let mut s = i;
    while s > 0 && (chars[s - 1].is_alphanumeric()) {
        s -= 1;
    }
    chars[s..i].iter().collect()
}

fn is_abbreviation_before(chars: &[char], i: usize) -> bool {
    let word = word_before(chars, i).to_lowercase();
    word.len() > 1 && ABBREVIATIONS.contains(&word.as_str())
}

fn is_ordinal_before(chars: &[char], i: usize) -> bool {
    let word = word_before(chars, i).to_lowercase();
    let Some(stripped) = word
        .strip_suffix("st")
        .or_else(|| word.strip_suffix("nd"))
        .or_else(|| word.strip_suffix("rd"))
        .or_else(|| word.strip_suffix("th"))
    else {
        return false;
    };
    !stripped.is_empty() && stripped.chars().all(|c| c.is_ascii_digit())
}

fn is_decimal_point(chars: &[char], i: usize) -> bool {
    i > 0
        && i + 1 < chars.len()
        && chars[i - 1].is_ascii_digit()
        && chars[i + 1].is_ascii_digit()
}

/// Splits a sentence into tokens. A token is a maximal run of alphanumeric
/// characters; hyphens and apostrophes are kept when they sit between two
/// alphanumerics, so "2-Oct-1869" and "don't" stay whole. All other
/// punctuation separates, which drops sentence-final punctuation.
pub fn tokenize(sentence: &RawSentence) -> Vec<Token> {
    let chars: Vec<char> = sentence.text.chars().collect();
    let mut tokens = Vec::new();
    let mut current = String::new();
    for (i, &c) in chars.iter().enumerate() {
        let keep = c.is_alphanumeric()
            || ((c == '-' || c == '\'' || c == '\u{2019}')
                && i > 0
                && i + 1 < chars.len()
                && chars[i - 1].is_alphanumeric()
                && chars[i + 1].is_alphanumeric());
        if keep {
            current.push(c);
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
        .into_iter()
        .enumerate()
        .map(|(position, surface)| Token {
            surface,
            position,
            pos: PosTag::Other,
            entity: EntityTag::None,
        })
        .collect()
}

/// Assigns a POS tag to every token: lexicon lookup first, then numeric
/// forms, then suffix rules for lowercase-initial words, then
/// capitalized-mid-sentence as `Noun`, defaulting to `Noun`.
pub fn tag_pos(tokens: &mut [Token], lexicon: &HashMap<String, PosTag>) {
    for token in tokens.iter_mut() {
        token.pos = tag_one(&token.surface, lexicon);
    }
}

fn tag_one(surface: &str, lexicon: &HashMap<String, PosTag>) -> PosTag {
    let lower = surface.to_lowercase();
    if let Some(&tag) = lexicon.get(&lower) {
        return tag;
    }
    if is_numeric_form(&lower) {
        return PosTag::Number;
    }
    let starts_lower = surface.chars().next().is_some_and(|c| c.is_lowercase());
    if starts_lower {
        if let Some(tag) = suffix_tag(&lower, lexicon) {
            return tag;
        }
    }
    // Capitalized words mid-sentence and anything still unplaced both land
    // on Noun, so no separate capitalization tier is needed.
    PosTag::Noun
}

fn is_numeric_form(lower: &str) -> bool {
    if lower.is_empty() {
        return false;
    }
    if lower.chars().all(|c| c.is_ascii_digit()) {
        return true;
    }
    is_ordinal_word(lower)
}

fn is_ordinal_word(lower: &str) -> bool {
    let Some(stripped) = lower
        .strip_suffix("st")
        .or_else(|| lower.strip_suffix("nd"))
        .or_else(|| lower.strip_suffix("rd"))
        .or_else(|| lower.strip_suffix("th"))
    else {
        return false;
    };
    !stripped.is_empty() && stripped.chars().all(|c| c.is_ascii_digit())
}

/// Inflection suffix rules: strip -ies/-ied/-ing/-es/-ed/-s, restoring a
/// final "e" or "y" where English spelling dropped it, and inherit the tag
/// of the stem when the lexicon knows it. "-ly" falls back to Adverb.
fn suffix_tag(lower: &str, lexicon: &HashMap<String, PosTag>) -> Option<PosTag> {
    let mut stems: Vec<String> = Vec::new();
    if lower.len() > 4 {
        if let Some(s) = lower.strip_suffix("ies") {
            stems.push(format!("{s}y"));
        }
        if let Some(s) = lower.strip_suffix("ied") {
            stems.push(format!("{s}y"));
        }
        if let Some(s) = lower.strip_suffix("ing") {
            stems.push(s.to_string());
            stems.push(format!("{s}e"));
        }
    }
    if lower.len() > 3 {
        if let Some(s) = lower.strip_suffix("es") {
            stems.push(s.to_string());
            stems.push(format!("{s}e"));
        }
        if let Some(s) = lower.strip_suffix("ed") {
            stems.push(s.to_string());
            stems.push(format!("{s}e"));
        }
    }
    if lower.len() > 2 && !lower.ends_with("ss") {
        if let Some(s) = lower.strip_suffix('s') {
            stems.push(s.to_string());
        }
    }
    for stem in &stems {
        if let Some(&tag) = lexicon.get(stem) {
            if matches!(tag, PosTag::Verb | PosTag::Noun | PosTag::Adjective) {
                return Some(tag);
            }
        }
    }
    if lower.len() >= 4 && lower.ends_with("ly") {
        return Some(PosTag::Adverb);
    }
    None
}

/// Entity pass: gazetteer lookup, date-expression merging, then two
/// heuristics — a capitalized noun right after "in"/"at" is a Location, and
/// a capitalized noun before the first verb or auxiliary is a Person.
/// Date expressions collapse into a single token with a canonical surface,
/// and positions are re-indexed afterwards.
pub fn recognize_entities(tokens: Vec<Token>, gazetteer: &HashMap<String, EntityTag>) -> Vec<Token> {
    let mut tokens = tokens;
    for token in tokens.iter_mut() {
        if let Some(&entity) = gazetteer.get(&token.surface.to_lowercase()) {
            token.entity = entity;
        }
    }
    let mut merged = merge_dates(tokens);
    for (i, token) in merged.iter_mut().enumerate() {
        token.position = i;
    }

    let verb_boundary = merged
        .iter()
        .position(|t| matches!(t.pos, PosTag::Verb | PosTag::Auxiliary))
        .unwrap_or(merged.len());
    for i in 0..merged.len() {
        if merged[i].entity != EntityTag::None || merged[i].pos != PosTag::Noun {
            continue;
        }
        let capitalized = merged[i]
            .surface
            .chars()
            .next()
            .is_some_and(|c| c.is_uppercase());
        if !capitalized {
            continue;
        }
        let after_locative_prep = i > 0
            && matches!(merged[i - 1].surface.to_lowercase().as_str(), "in" | "at");
        if after_locative_prep {
            merged[i].entity = EntityTag::Location;
        } else if i < verb_boundary {
            merged[i].entity = EntityTag::Person;
        }
    }
    merged
}

fn merge_dates(tokens: Vec<Token>) -> Vec<Token> {
    let mut out: Vec<Token> = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let day_ok = is_day_token(&tokens[i].surface);
        let mon_ok = month_abbrev(&tokens[i].surface).is_some();
        if day_ok
            && i + 2 < tokens.len()
            && month_abbrev(&tokens[i + 1].surface).is_some()
            && is_year_token(&tokens[i + 2].surface)
        {
            let parts = [
                tokens[i].surface.as_str(),
                tokens[i + 1].surface.as_str(),
                tokens[i + 2].surface.as_str(),
            ];
            if let Ok(canonical) = normalize_date(&parts) {
                out.push(date_token(canonical, tokens[i].position));
                i += 3;
                continue;
            }
        }
        if mon_ok && i + 1 < tokens.len() && is_year_token(&tokens[i + 1].surface) {
            let parts = [tokens[i].surface.as_str(), tokens[i + 1].surface.as_str()];
            if let Ok(canonical) = normalize_date(&parts) {
                out.push(date_token(canonical, tokens[i].position));
                i += 2;
                continue;
            }
        }
        if tokens[i].surface.contains('-') && looks_like_hyphen_date(&tokens[i].surface) {
            if let Ok(canonical) = normalize_date(&[tokens[i].surface.as_str()]) {
                out.push(date_token(canonical, tokens[i].position));
                i += 1;
                continue;
            }
        }
        out.push(tokens[i].clone());
        i += 1;
    }
    out
}

fn date_token(canonical: String, position: usize) -> Token {
    Token {
        surface: canonical,
        position,
        pos: PosTag::Number,
        entity: EntityTag::Date,
    }
}

fn looks_like_hyphen_date(surface: &str) -> bool {
    let parts: Vec<&str> = surface.split('-').collect();
    match parts.as_slice() {
        [d, m, y] => is_day_token(d) && month_abbrev(m).is_some() && is_year_token(y),
        [m, y] => month_abbrev(m).is_some() && is_year_token(y),
        _ => false,
    }
}

fn is_day_token(surface: &str) -> bool {
    parse_day(surface).is_some()
}

fn parse_day(surface: &str) -> Option<u32> {
    let lower = surface.to_lowercase();
    let digits = lower
        .strip_suffix("st")
        .or_else(|| lower.strip_suffix("nd"))
        .or_else(|| lower.strip_suffix("rd"))
        .or_else(|| lower.strip_suffix("th"))
        .unwrap_or(&lower);
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let day: u32 = digits.parse().ok()?;
    (1..=31).contains(&day).then_some(day)
}

fn is_year_token(surface: &str) -> bool {
    surface.len() == 4 && surface.chars().all(|c| c.is_ascii_digit())
}

fn month_abbrev(surface: &str) -> Option<&'static str> {
    let lower = surface.to_lowercase();
    MONTHS
        .iter()
        .find(|(name, _)| *name == lower)
        .map(|&(_, abbrev)| abbrev)
}

/// Normalizes a date expression to `D-Mon-YYYY` (unpadded day, 3-letter
/// capitalized month, 4-digit year), or `Mon-YYYY` when no day is present.
/// A single already-hyphenated token is split and re-normalized, which makes
/// the function idempotent.
pub fn normalize_date(parts: &[&str]) -> Result<String, DateError> {
    let joined = parts.join(" ");
    match parts {
        [single] if single.contains('-') => {
            let resplit: Vec<&str> = single.split('-').collect();
            normalize_date(&resplit)
        }
        [day, month, year] => {
            let d = parse_day(day).ok_or_else(|| DateError::UnparseableDate(joined.clone()))?;
            let m = month_abbrev(month).ok_or(DateError::UnparseableDate(joined.clone()))?;
            if !is_year_token(year) {
                return Err(DateError::UnparseableDate(joined));
            }
            Ok(format!("{d}-{m}-{year}"))
        }
        [month, year] => {
            let m = month_abbrev(month).ok_or(DateError::UnparseableDate(joined.clone()))?;
            if !is_year_token(year) {
                return Err(DateError::UnparseableDate(joined));
            }
            Ok(format!("{m}-{year}"))
        }
        _ => Err(DateError::UnparseableDate(joined)),
    }
}
