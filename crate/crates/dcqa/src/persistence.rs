//! Saving and loading the network as pretty-printed JSON. The writer is
//! byte-deterministic for a given network, and the loader re-validates every
//! structural invariant instead of trusting the file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::deep_case::DeepCase;
use crate::network::{KnowledgeEntry, Network, WordNode};
use crate::text_analysis::{EntityTag, PosTag};

pub const MAGIC: &str = "DCQA";
pub const FORMAT_VERSION: u32 = 1;
/// Conventional file suffix for stores; any path is accepted.
pub const STORE_EXTENSION: &str = ".dcqa.json";

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("failed to {action} store {path}: {source}")]
    Io {
        action: &'static str,
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("corrupt store {path}: {message}")]
    Corrupt { path: PathBuf, message: String },
}

#[derive(Serialize, Deserialize)]
struct StoreFile {
    magic: String,
    format_version: u32,
    word_count: usize,
    knowledge_count: usize,
    link_count: usize,
    words: Vec<StoredWord>,
    knowledge: Vec<StoredKnowledge>,
    links: Vec<StoredLink>,
}

#[derive(Serialize, Deserialize)]
struct StoredWord {
    id: u32,
    display: String,
    canonical: String,
    pos: PosTag,
    entity: EntityTag,
}

#[derive(Serialize, Deserialize)]
struct StoredKnowledge {
    id: u32,
    text: String,
    source: String,
    word_ids: Vec<u32>,
    cases: Vec<DeepCase>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq)]
struct StoredLink {
    a: u32,
    b: u32,
    knowledge_ids: Vec<u32>,
}

fn render(net: &Network) -> String {
    let file = StoreFile {
        magic: MAGIC.to_string(),
        format_version: FORMAT_VERSION,
        word_count: net.words().len(),
        knowledge_count: net.knowledge().len(),
        link_count: net.links().len(),
        words: net
            .words()
            .iter()
            .map(|w| StoredWord {
                id: w.id,
                display: w.display_surface.clone(),
                canonical: w.surface_canonical.clone(),
                pos: w.pos,
                entity: w.entity,
            })
            .collect(),
        knowledge: net
            .knowledge()
            .iter()
            .map(|k| StoredKnowledge {
                id: k.id,
                text: k.text.clone(),
                source: k.source.clone(),
                word_ids: k.word_ids.clone(),
                cases: k.cases.clone(),
            })
            .collect(),
        links: net
            .links()
            .into_iter()
            .map(|l| StoredLink {
                a: l.a,
                b: l.b,
                knowledge_ids: l.knowledge_ids,
            })
            .collect(),
    };
    let mut json = serde_json::to_string_pretty(&file).expect("network serializes to JSON");
    json.push('\n');
    json
}

pub fn save(net: &Network, path: &Path) -> Result<(), StoreError> {
    std::fs::write(path, render(net)).map_err(|source| StoreError::Io {
        action: "write",
        path: path.to_path_buf(),
        source,
    })
}

pub fn load(path: &Path) -> Result<Network, StoreError> {
    let corrupt = |message: String| StoreError::Corrupt {
        path: path.to_path_buf(),
        message,
    };

    let raw = std::fs::read_to_string(path).map_err(|source| StoreError::Io {
        action: "read",
        path: path.to_path_buf(),
        source,
    })?;
    let file: StoreFile =
        serde_json::from_str(&raw).map_err(|e| corrupt(format!("invalid JSON: {e}")))?;

    if file.magic != MAGIC {
        return Err(corrupt(format!(
            "bad magic {:?} (expected {MAGIC:?})",
            file.magic
        )));
    }
    if file.format_version != FORMAT_VERSION {
        return Err(corrupt(format!(
            "unsupported format version {} (expected {FORMAT_VERSION})",
            file.format_version
        )));
    }
    if file.word_count != file.words.len() {
        return Err(corrupt(format!(
            "word count {} does not match {} stored words",
            file.word_count,
            file.words.len()
        )));
    }
    if file.knowledge_count != file.knowledge.len() {
        return Err(corrupt(format!(
            "knowledge count {} does not match {} stored units",
            file.knowledge_count,
            file.knowledge.len()
        )));
    }
    if file.link_count != file.links.len() {
        return Err(corrupt(format!(
            "link count {} does not match {} stored links",
            file.link_count,
            file.links.len()
        )));
    }

    let mut words = Vec::with_capacity(file.words.len());
    for w in file.words {
        if w.canonical != w.display.to_lowercase() {
            return Err(corrupt(format!(
                "word {} canonical {:?} is not the lowercase of display {:?}",
                w.id, w.canonical, w.display
            )));
        }
        words.push(WordNode {
            id: w.id,
            surface_canonical: w.canonical,
            display_surface: w.display,
            pos: w.pos,
            entity: w.entity,
        });
    }
    let knowledge: Vec<KnowledgeEntry> = file
        .knowledge
        .into_iter()
        .map(|k| KnowledgeEntry {
            id: k.id,
            text: k.text,
            source: k.source,
            word_ids: k.word_ids,
            cases: k.cases,
        })
        .collect();

    let net = Network::from_parts(words, knowledge).map_err(corrupt)?;

    let recomputed: Vec<StoredLink> = net
        .links()
        .into_iter()
        .map(|l| StoredLink {
            a: l.a,
            b: l.b,
            knowledge_ids: l.knowledge_ids,
        })
        .collect();
    if recomputed != file.links {
        return Err(corrupt(
            "stored link table disagrees with the links recomputed from the knowledge units"
                .to_string(),
        ));
    }
    Ok(net)
}
