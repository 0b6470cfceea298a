//! Sentiment lexicons and marker lists.
//!
//! A [`Lexicon`] maps lemma sequences to signed weights on the canonical
//! `[-5, +5]` scale. Lexicons are only ever built through cleaning
//! ([`clean_lexicon`]) or voting ([`vote_combine`]), so every instance
//! satisfies the same invariants: one entry per key, no neutral or
//! Latin-script keys, folded lemmas, and weights with `0 < |w| <= 5`.

mod clean;
mod combine;
mod markers;

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::text::Pos;

pub use clean::{clean_lexicon, CleaningReport, RawEntry};
pub use combine::{lexicon_stats, render_stats_tsv, vote_combine, LexiconStats};
pub use markers::{parse_marker_set, parse_modifiers, MarkerError, MarkerLists};

/// Upper bound of the canonical weight scale.
pub const MAX_WEIGHT: f64 = 5.0;

#[derive(Debug, thiserror::Error)]
pub enum LexiconError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("vote threshold must be at least 1")]
    ZeroThreshold,
    #[error("lexicon name {0:?} appears more than once among the combined lexicons")]
    DuplicateName(String),
}

/// Lexicon part-of-speech restriction, written `N`, `ADJ`, `V` or `ADV` in
/// lexicon files.
pub fn parse_entry_pos(tag: &str) -> Option<Pos> {
    match tag.trim().to_ascii_uppercase().as_str() {
        "N" | "NOUN" => Some(Pos::Noun),
        "ADJ" | "A" => Some(Pos::Adj),
        "V" | "VERB" => Some(Pos::Verb),
        "ADV" => Some(Pos::Adv),
        _ => None,
    }
}

fn entry_pos_tag(pos: Pos) -> &'static str {
    match pos {
        Pos::Noun => "N",
        Pos::Adj => "ADJ",
        Pos::Verb => "V",
        Pos::Adv => "ADV",
        Pos::Other => "",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LexiconEntry {
    pub key: Vec<String>,
    pub weight: f64,
    pub pos: Option<Pos>,
    pub sources: BTreeSet<String>,
}

impl LexiconEntry {
    pub fn is_phrase(&self) -> bool {
        self.key.len() > 1
    }

    pub fn is_positive(&self) -> bool {
        self.weight > 0.0
    }

    /// Lemmas joined with single spaces.
    pub fn key_text(&self) -> String {
        self.key.join(" ")
    }
}

#[derive(Debug, Default, Clone)]
struct TrieNode {
    children: HashMap<String, usize>,
    entry: Option<usize>,
}

/// Prefix tree over lemma sequences for longest-match lookup.
#[derive(Debug, Clone)]
struct PhraseIndex {
    nodes: Vec<TrieNode>,
}

impl PhraseIndex {
    fn build<'a>(keys: impl Iterator<Item = &'a [String]>) -> PhraseIndex {
        let mut nodes = vec![TrieNode::default()];
        for (entry, key) in keys.enumerate() {
            let mut at = 0;
            for lemma in key {
                at = match nodes[at].children.get(lemma) {
                    Some(&next) => next,
                    None => {
                        nodes.push(TrieNode::default());
                        let next = nodes.len() - 1;
                        nodes[at].children.insert(lemma.clone(), next);
                        next
                    }
                };
            }
            nodes[at].entry = Some(entry);
        }
        PhraseIndex { nodes }
    }
}

/// A cleaned sentiment lexicon.
#[derive(Debug, Clone)]
pub struct Lexicon {
    name: String,
    entries: Vec<LexiconEntry>,
    index: PhraseIndex,
}

impl PartialEq for Lexicon {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.entries == other.entries
    }
}

impl Lexicon {
    /// `entries` must already satisfy the lexicon invariants.
    fn from_clean_entries(name: String, mut entries: Vec<LexiconEntry>) -> Lexicon {
        entries.sort_by(|a, b| a.key.cmp(&b.key));
        let index = PhraseIndex::build(entries.iter().map(|e| e.key.as_slice()));
        Lexicon {
            name,
            entries,
            index,
        }
    }

    /// Builds a lexicon from `(key, weight)` pairs by running them through
    /// [`clean_lexicon`]. Entries the cleaner rejects are silently dropped.
    pub fn build<'a>(name: &str, pairs: impl IntoIterator<Item = (&'a str, f64)>) -> Lexicon {
        let raw = pairs
            .into_iter()
            .map(|(k, w)| RawEntry::new(k, w, None))
            .collect::<Vec<_>>();
        clean_lexicon(&raw, name).0
    }

    pub fn empty(name: &str) -> Lexicon {
        Lexicon::from_clean_entries(name.to_string(), Vec::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in key order.
    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn get(&self, key: &[String]) -> Option<&LexiconEntry> {
        let mut at = 0;
        for lemma in key {
            at = *self.index.nodes[at].children.get(lemma)?;
        }
        self.index.nodes[at].entry.map(|i| &self.entries[i])
    }

    pub fn keys(&self) -> impl Iterator<Item = &[String]> {
        self.entries.iter().map(|e| e.key.as_slice())
    }

    /// Longest entry whose key matches the lemma sequence starting at the
    /// head of `lemmas`, with its length in tokens.
    pub fn longest_match<S: AsRef<str>>(&self, lemmas: &[S]) -> Option<(usize, &LexiconEntry)> {
        let mut at = 0;
        let mut best = None;
        for (depth, lemma) in lemmas.iter().enumerate() {
            match self.index.nodes[at].children.get(lemma.as_ref()) {
                Some(&next) => {
                    at = next;
                    if let Some(e) = self.index.nodes[at].entry {
                        best = Some((depth + 1, &self.entries[e]));
                    }
                }
                None => break,
            }
        }
        best
    }

    /// Same keys with every weight negated.
    pub fn mirrored(&self) -> Lexicon {
        let entries = self
            .entries
            .iter()
            .map(|e| LexiconEntry {
                weight: -e.weight,
                ..e.clone()
            })
            .collect();
        Lexicon::from_clean_entries(self.name.clone(), entries)
    }

    /// Lexicon file rendering: `KEY \t WEIGHT [\t POS]`, key order.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let _ = write!(out, "{}\t{}", e.key_text(), e.weight);
            if let Some(p) = e.pos {
                let _ = write!(out, "\t{}", entry_pos_tag(p));
            }
            out.push('\n');
        }
        out
    }
}

/// Parses a lexicon file into raw entries, applying the `#scale` factor.
///
/// Lines starting with `#` other than `#scale` are comments. The scale may
/// appear anywhere before the entries it applies to.
pub fn parse_lexicon_file(input: &str) -> Result<Vec<RawEntry>, LexiconError> {
    let mut scale = 1.0;
    let mut out = Vec::new();
    for (idx, raw_line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(value) = rest.trim_start().strip_prefix("scale") {
                scale = value
                    .trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|s| s.is_finite() && *s > 0.0)
                    .ok_or_else(|| LexiconError::Format {
                        line: line_no,
                        message: format!("invalid scale {:?}", value.trim()),
                    })?;
            }
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if !(2..=3).contains(&cols.len()) {
            return Err(LexiconError::Format {
                line: line_no,
                message: format!(
                    "expected 2 or 3 tab-separated columns, found {}",
                    cols.len()
                ),
            });
        }
        let weight: f64 = cols[1].trim().parse().map_err(|_| LexiconError::Format {
            line: line_no,
            message: format!("invalid weight {:?}", cols[1]),
        })?;
        let pos = match cols.get(2).map(|s| s.trim()) {
            None | Some("") => None,
            Some(tag) => Some(parse_entry_pos(tag).ok_or_else(|| LexiconError::Format {
                line: line_no,
                message: format!("unknown POS {tag:?} (expected N, ADJ, V or ADV)"),
            })?),
        };
        out.push(RawEntry::new(cols[0], weight * scale, pos));
    }
    Ok(out)
}
