use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use super::{Lexicon, LexiconEntry, MAX_WEIGHT};
use crate::text::{fold_lemma, Pos};

/// A lexicon line before cleaning. The weight is already on the canonical
/// scale.
#[derive(Debug, Clone, PartialEq)]
pub struct RawEntry {
    pub key: String,
    pub weight: f64,
    pub pos: Option<Pos>,
}

impl RawEntry {
    pub fn new(key: &str, weight: f64, pos: Option<Pos>) -> RawEntry {
        RawEntry {
            key: key.to_string(),
            weight,
            pos,
        }
    }
}

/// Removal counts per category. Each raw entry lands in at most one
/// category; conflicts are counted per key, duplicates per extra
/// occurrence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CleaningReport {
    pub lexicon: String,
    pub input: usize,
    pub kept: usize,
    pub neutral: usize,
    pub out_of_range: usize,
    pub latin: usize,
    pub empty_key: usize,
    pub conflicts: usize,
    pub duplicates: usize,
}

impl fmt::Display for CleaningReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lexicon\t{}", self.lexicon)?;
        writeln!(f, "input\t{}", self.input)?;
        writeln!(f, "kept\t{}", self.kept)?;
        writeln!(f, "neutral\t{}", self.neutral)?;
        writeln!(f, "out_of_range\t{}", self.out_of_range)?;
        writeln!(f, "latin\t{}", self.latin)?;
        writeln!(f, "empty_key\t{}", self.empty_key)?;
        writeln!(f, "conflicts\t{}", self.conflicts)?;
        writeln!(f, "duplicates\t{}", self.duplicates)
    }
}

/// Latin script letters, including accented and fullwidth forms.
fn is_latin_letter(c: char) -> bool {
    c.is_ascii_alphabetic()
        || (c.is_alphabetic()
            && matches!(c as u32,
                0x00C0..=0x024F | 0x1E00..=0x1EFF | 0xFF21..=0xFF3A | 0xFF41..=0xFF5A))
}

/// Cleans raw entries into a lexicon.
///
/// Drops neutral (zero-weight) entries, weights outside `[-5, 5]`, keys
/// with any Latin letter, and keys that fold to nothing. Keys are split on
/// whitespace and every lemma is folded. A key seen with both polarities is
/// removed entirely; otherwise the first occurrence wins.
pub fn clean_lexicon(raw: &[RawEntry], name: &str) -> (Lexicon, CleaningReport) {
    let mut report = CleaningReport {
        lexicon: name.to_string(),
        input: raw.len(),
        ..CleaningReport::default()
    };

    struct Slot {
        first: LexiconEntry,
        occurrences: usize,
        positive: bool,
        negative: bool,
    }
    let mut order: Vec<Vec<String>> = Vec::new();
    let mut slots: HashMap<Vec<String>, Slot> = HashMap::new();

    for entry in raw {
        if entry.weight == 0.0 {
            report.neutral += 1;
            continue;
        }
        if !entry.weight.is_finite() || entry.weight.abs() > MAX_WEIGHT {
            report.out_of_range += 1;
            continue;
        }
        if entry.key.chars().any(is_latin_letter) {
            report.latin += 1;
            continue;
        }
        let key: Vec<String> = entry.key.split_whitespace().map(fold_lemma).collect();
        if key.is_empty() {
            report.empty_key += 1;
            continue;
        }
        let positive = entry.weight > 0.0;
        match slots.get_mut(&key) {
            Some(slot) => {
                slot.occurrences += 1;
                slot.positive |= positive;
                slot.negative |= !positive;
            }
            None => {
                order.push(key.clone());
                slots.insert(
                    key.clone(),
                    Slot {
                        first: LexiconEntry {
                            key,
                            weight: entry.weight,
                            pos: entry.pos,
                            sources: BTreeSet::from([name.to_string()]),
                        },
                        occurrences: 1,
                        positive,
                        negative: !positive,
                    },
                );
            }
        }
    }

    let mut entries = Vec::with_capacity(order.len());
    for key in order {
        let slot = slots.remove(&key).expect("every ordered key has a slot");
        if slot.positive && slot.negative {
            report.conflicts += 1;
            continue;
        }
        report.duplicates += slot.occurrences - 1;
        entries.push(slot.first);
    }
    report.kept = entries.len();

    (
        Lexicon::from_clean_entries(name.to_string(), entries),
        report,
    )
}
