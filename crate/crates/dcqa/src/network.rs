//! The associative memory: interned word nodes, knowledge entries, and
//! unordered word-pair links labeled with the knowledge units that relate
//! the pair. Link weight is the co-occurrence count.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::deep_case::DeepCase;
use crate::text_analysis::{EntityTag, PosTag};

/// Dense word id, assigned in interning order starting at 1.
pub type WordId = u32;
/// Dense knowledge id starting at 1, displayed as "K1", "K2", ...
pub type KnowledgeId = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordNode {
    pub id: WordId,
    /// Case-folded dedup key; unique across the network.
    pub surface_canonical: String,
    /// The casing of the first occurrence, used for display.
    pub display_surface: String,
    pub pos: PosTag,
    pub entity: EntityTag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnowledgeEntry {
    pub id: KnowledgeId,
    pub text: String,
    pub source: String,
    /// Member words in unit order, deduplicated.
    pub word_ids: Vec<WordId>,
    /// Deep case per member word, parallel to `word_ids`.
    pub cases: Vec<DeepCase>,
}

impl KnowledgeEntry {
    pub fn display_id(&self) -> String {
        format!("K{}", self.id)
    }

    pub fn case_of(&self, word: WordId) -> Option<DeepCase> {
        self.word_ids
            .iter()
            .position(|&w| w == word)
            .map(|i| self.cases[i])
    }
}

/// An unordered word-pair edge; `a < b` always.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    pub a: WordId,
    pub b: WordId,
    pub knowledge_ids: Vec<KnowledgeId>,
}

impl Link {
    /// Co-occurrence count: how many knowledge units contain both words.
    pub fn weight(&self) -> usize {
        self.knowledge_ids.len()
    }
}

/// One content word of a unit as handed to [`Network::add_knowledge_unit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitWord {
    pub surface: String,
    pub pos: PosTag,
    pub entity: EntityTag,
    pub case: DeepCase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetworkStats {
    pub words: usize,
    pub knowledge_units: usize,
    pub links: usize,
    pub total_link_weight: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NetworkError {
    #[error("unknown word id: {0}")]
    UnknownWordId(WordId),
    #[error("knowledge unit has no content words")]
    EmptyUnit,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Network {
    words: Vec<WordNode>,
    word_index: HashMap<String, WordId>,
    knowledge: Vec<KnowledgeEntry>,
    /// (source, canonicalized text) to the unit that first carried it.
    knowledge_index: HashMap<(String, String), KnowledgeId>,
    links: BTreeMap<(WordId, WordId), BTreeSet<KnowledgeId>>,
    word_units: HashMap<WordId, BTreeSet<KnowledgeId>>,
}

fn pair(a: WordId, b: WordId) -> (WordId, WordId) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn canonical_text(text: &str) -> String {
    text.trim().to_lowercase()
}

impl Network {
    pub fn new() -> Network {
        Network::default()
    }

    pub fn words(&self) -> &[WordNode] {
        &self.words
    }

    pub fn knowledge(&self) -> &[KnowledgeEntry] {
        &self.knowledge
    }

    pub fn word(&self, id: WordId) -> Option<&WordNode> {
        if id == 0 {
            return None;
        }
        self.words.get(id as usize - 1)
    }

    pub fn knowledge_entry(&self, id: KnowledgeId) -> Option<&KnowledgeEntry> {
        if id == 0 {
            return None;
        }
        self.knowledge.get(id as usize - 1)
    }

    /// Case-insensitive surface lookup.
    pub fn resolve(&self, surface: &str) -> Option<WordId> {
        self.word_index.get(&surface.to_lowercase()).copied()
    }

    /// Knowledge units containing the word, ascending by id.
    pub fn units_of_word(&self, word: WordId) -> Vec<KnowledgeId> {
        self.word_units
            .get(&word)
            .map(|set| set.iter().copied().collect())
            .unwrap_or_default()
    }

    /// Weight of the link between two words; 0 when they never co-occur.
    pub fn link_weight(&self, a: WordId, b: WordId) -> usize {
        if a == b {
            return 0;
        }
        self.links.get(&pair(a, b)).map_or(0, BTreeSet::len)
    }

    /// Returns the id for the surface, interning a new node when the
    /// case-folded form is unseen. An existing node is upgraded from
    /// placeholder POS/entity info but never downgraded, and its display
    /// surface keeps the first-seen casing.
    pub fn intern_word(&mut self, surface: &str, pos: PosTag, entity: EntityTag) -> WordId {
        let canonical = surface.to_lowercase();
        if let Some(&id) = self.word_index.get(&canonical) {
            let node = &mut self.words[id as usize - 1];
            if node.entity == EntityTag::None && entity != EntityTag::None {
                node.entity = entity;
            }
            if node.pos == PosTag::Other && pos != PosTag::Other {
                node.pos = pos;
            }
            return id;
        }
        let id = self.words.len() as WordId + 1;
        self.words.push(WordNode {
            id,
            surface_canonical: canonical.clone(),
            display_surface: surface.to_string(),
            pos,
            entity,
        });
        self.word_index.insert(canonical, id);
        id
    }

    /// Stores one knowledge unit, interning its words and updating the link
    /// table with every unordered pair of distinct member ids. Re-adding a
    /// unit whose (source, canonicalized text) key is already present
    /// returns the existing id and leaves the network untouched.
    pub fn add_knowledge_unit(
        &mut self,
        text: &str,
        source: &str,
        words: &[UnitWord],
    ) -> Result<KnowledgeId, NetworkError> {
        if words.is_empty() {
            return Err(NetworkError::EmptyUnit);
        }
        let key = (source.to_string(), canonical_text(text));
        if let Some(&existing) = self.knowledge_index.get(&key) {
            return Ok(existing);
        }

        let mut word_ids: Vec<WordId> = Vec::new();
        let mut cases: Vec<DeepCase> = Vec::new();
        for word in words {
            let id = self.intern_word(&word.surface, word.pos, word.entity);
            if !word_ids.contains(&id) {
                word_ids.push(id);
                cases.push(word.case);
            }
        }

        let id = self.knowledge.len() as KnowledgeId + 1;
        for (i, &a) in word_ids.iter().enumerate() {
            for &b in &word_ids[i + 1..] {
                self.links.entry(pair(a, b)).or_default().insert(id);
            }
        }
        for &w in &word_ids {
            self.word_units.entry(w).or_default().insert(id);
        }
        self.knowledge.push(KnowledgeEntry {
            id,
            text: text.to_string(),
            source: source.to_string(),
            word_ids,
            cases,
        });
        self.knowledge_index.insert(key, id);
        Ok(id)
    }

    /// All knowledge ids whose word set is a superset of the query,
    /// ascending. The empty query matches every unit. Pairs with the first
    /// query word drive a link-table intersection, which equals the
    /// brute-force scan over all units.
    pub fn knowledge_containing(&self, word_ids: &BTreeSet<WordId>) -> Vec<KnowledgeId> {
        let mut iter = word_ids.iter();
        let Some(&first) = iter.next() else {
            return (1..=self.knowledge.len() as KnowledgeId).collect();
        };
        let Some(first_units) = self.word_units.get(&first) else {
            return Vec::new();
        };
        if word_ids.len() == 1 {
            return first_units.iter().copied().collect();
        }
        let mut acc: Option<BTreeSet<KnowledgeId>> = None;
        for &other in iter {
            let Some(shared) = self.links.get(&pair(first, other)) else {
                return Vec::new();
            };
            acc = Some(match acc {
                None => shared.clone(),
                Some(partial) => partial.intersection(shared).copied().collect(),
            });
        }
        acc.map(|set| set.into_iter().collect()).unwrap_or_default()
    }

    /// The whole link table, ascending by (a, b).
    pub fn links(&self) -> Vec<Link> {
        self.links
            .iter()
            .map(|(&(a, b), ids)| Link {
                a,
                b,
                knowledge_ids: ids.iter().copied().collect(),
            })
            .collect()
    }

    /// Links incident to a word, ascending by neighbor id.
    pub fn links_of(&self, word: WordId) -> Result<Vec<Link>, NetworkError> {
        if self.word(word).is_none() {
            return Err(NetworkError::UnknownWordId(word));
        }
        Ok(self
            .links
            .iter()
            .filter(|((a, b), _)| *a == word || *b == word)
            .map(|(&(a, b), ids)| Link {
                a,
                b,
                knowledge_ids: ids.iter().copied().collect(),
            })
            .collect())
    }

    pub fn stats(&self) -> NetworkStats {
        NetworkStats {
            words: self.words.len(),
            knowledge_units: self.knowledge.len(),
            links: self.links.len(),
            total_link_weight: self.links.values().map(BTreeSet::len).sum(),
        }
    }

    /// Rebuilds a network from stored words and knowledge entries,
    /// recomputing the link table and all indexes. Errors describe the first
    /// violated structural invariant.
    pub(crate) fn from_parts(
        words: Vec<WordNode>,
        knowledge: Vec<KnowledgeEntry>,
    ) -> Result<Network, String> {
        let mut word_index = HashMap::new();
        for (i, word) in words.iter().enumerate() {
            let expected = i as WordId + 1;
            if word.id != expected {
                return Err(format!(
                    "word ids must be dense and ascending: expected {expected}, found {}",
                    word.id
                ));
            }
            if word.surface_canonical.is_empty() {
                return Err(format!("word {} has an empty canonical surface", word.id));
            }
            if word_index
                .insert(word.surface_canonical.clone(), word.id)
                .is_some()
            {
                return Err(format!(
                    "duplicate canonical surface {:?}",
                    word.surface_canonical
                ));
            }
        }

        let mut net = Network {
            words,
            word_index,
            knowledge: Vec::new(),
            knowledge_index: HashMap::new(),
            links: BTreeMap::new(),
            word_units: HashMap::new(),
        };

        for (i, entry) in knowledge.iter().enumerate() {
            let expected = i as KnowledgeId + 1;
            if entry.id != expected {
                return Err(format!(
                    "knowledge ids must be dense and ascending: expected {expected}, found {}",
                    entry.id
                ));
            }
            if entry.word_ids.is_empty() {
                return Err(format!("knowledge K{} has no member words", entry.id));
            }
            if entry.cases.len() != entry.word_ids.len() {
                return Err(format!(
                    "knowledge K{} has {} cases for {} words",
                    entry.id,
                    entry.cases.len(),
                    entry.word_ids.len()
                ));
            }
            let mut seen = BTreeSet::new();
            for &w in &entry.word_ids {
                if net.word(w).is_none() {
                    return Err(format!(
                        "knowledge K{} references missing word id {w}",
                        entry.id
                    ));
                }
                if !seen.insert(w) {
                    return Err(format!(
                        "knowledge K{} lists word id {w} twice",
                        entry.id
                    ));
                }
            }
            let key = (entry.source.clone(), canonical_text(&entry.text));
            if net.knowledge_index.insert(key, entry.id).is_some() {
                return Err(format!(
                    "knowledge K{} duplicates the text of an earlier unit from the same source",
                    entry.id
                ));
            }
            for (j, &a) in entry.word_ids.iter().enumerate() {
                for &b in &entry.word_ids[j + 1..] {
                    net.links.entry(pair(a, b)).or_default().insert(entry.id);
                }
            }
            for &w in &entry.word_ids {
                net.word_units.entry(w).or_default().insert(entry.id);
            }
        }
        net.knowledge = knowledge;
        Ok(net)
    }
}
