use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use super::{Lexicon, LexiconEntry, LexiconError};

/// Builds `LexN`: every key that at least `n` of the input lexicons contain
/// with the same polarity.
///
/// Keys whose polarity differs between lexicons are left out of every
/// `LexN`. The combined weight is the mean of the source weights, summed in
/// source-name order so that the result does not depend on input order. The
/// POS restriction survives only when every source states the same one.
/// With `n` above the number of inputs the result is empty.
pub fn vote_combine(lexicons: &[Lexicon], n: usize) -> Result<Lexicon, LexiconError> {
    if n == 0 {
        return Err(LexiconError::ZeroThreshold);
    }
    let mut names = BTreeSet::new();
    for lex in lexicons {
        if !names.insert(lex.name()) {
            return Err(LexiconError::DuplicateName(lex.name().to_string()));
        }
    }

    let mut ordered: Vec<&Lexicon> = lexicons.iter().collect();
    ordered.sort_by(|a, b| a.name().cmp(b.name()));
    let mut by_key: HashMap<&[String], Vec<(&str, &LexiconEntry)>> = HashMap::new();
    for lex in ordered {
        for entry in lex.entries() {
            by_key
                .entry(entry.key.as_slice())
                .or_default()
                .push((lex.name(), entry));
        }
    }

    let mut entries = Vec::new();
    for (key, sources) in by_key {
        if sources.len() < n {
            continue;
        }
        let positive = sources.iter().filter(|(_, e)| e.is_positive()).count();
        if positive != 0 && positive != sources.len() {
            continue;
        }
        let sum: f64 = sources.iter().map(|(_, e)| e.weight).sum();
        let first_pos = sources[0].1.pos;
        let pos = first_pos.filter(|p| sources.iter().all(|(_, e)| e.pos == Some(*p)));
        entries.push(LexiconEntry {
            key: key.to_vec(),
            weight: sum / sources.len() as f64,
            pos,
            sources: sources.iter().map(|(s, _)| s.to_string()).collect(),
        });
    }
    Ok(Lexicon::from_clean_entries(format!("Lex{n}"), entries))
}

/// One row of a lexicon characteristics table. Percentages are rounded to
/// one decimal and absent for an empty lexicon.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LexiconStats {
    pub lexicon: String,
    pub total: usize,
    pub positive: usize,
    pub positive_pct: Option<f64>,
    pub negative: usize,
    pub negative_pct: Option<f64>,
}

fn pct(part: usize, total: usize) -> Option<f64> {
    (total > 0).then(|| (part as f64 * 1000.0 / total as f64).round() / 10.0)
}

pub fn lexicon_stats(lexicon: &Lexicon) -> LexiconStats {
    let positive = lexicon.entries().iter().filter(|e| e.is_positive()).count();
    let total = lexicon.len();
    let negative = total - positive;
    LexiconStats {
        lexicon: lexicon.name().to_string(),
        total,
        positive,
        positive_pct: pct(positive, total),
        negative,
        negative_pct: pct(negative, total),
    }
}

fn pct_cell(p: Option<f64>) -> String {
    match p {
        Some(v) => format!("{v:.1}%"),
        None => "—".to_string(),
    }
}

/// Table with columns `Lexicon, Total, Positive #, Positive %, Negative #,
/// Negative %`.
pub fn render_stats_tsv(rows: &[LexiconStats]) -> String {
    let mut out = String::from("Lexicon\tTotal\tPositive #\tPositive %\tNegative #\tNegative %\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.lexicon,
            r.total,
            r.positive,
            pct_cell(r.positive_pct),
            r.negative,
            pct_cell(r.negative_pct)
        );
    }
    out
}
