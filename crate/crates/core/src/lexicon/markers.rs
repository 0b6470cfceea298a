use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::text::fold_lemma;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MarkerError {
    #[error("{list} list, line {line}: {message}")]
    Format {
        list: &'static str,
        line: usize,
        message: String,
    },
    #[error("marker {lemma:?} appears in both the {first} and {second} lists")]
    Overlap {
        lemma: String,
        first: &'static str,
        second: &'static str,
    },
    #[error("modifier {lemma:?} has delta {delta}; deltas must be greater than -1")]
    Annihilating { lemma: String, delta: f64 },
}

/// Modifiers with their percentage deltas, negations and irrealis markers.
/// The three key sets are disjoint.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct MarkerLists {
    modifiers: BTreeMap<String, f64>,
    negations: BTreeSet<String>,
    irrealis: BTreeSet<String>,
}

fn first_common<'a>(
    a: impl Iterator<Item = &'a String>,
    b: &dyn Fn(&str) -> bool,
) -> Option<&'a String> {
    a.into_iter().find(|l| b(l))
}

impl MarkerLists {
    /// Lemmas are folded; repeated lemmas collapse with the first delta
    /// kept.
    pub fn new<M, N, I>(modifiers: M, negations: N, irrealis: I) -> Result<MarkerLists, MarkerError>
    where
        M: IntoIterator<Item = (String, f64)>,
        N: IntoIterator<Item = String>,
        I: IntoIterator<Item = String>,
    {
        let mut mods = BTreeMap::new();
        for (lemma, delta) in modifiers {
            let lemma = fold_lemma(lemma.trim());
            if !(delta.is_finite() && delta > -1.0) {
                return Err(MarkerError::Annihilating { lemma, delta });
            }
            mods.entry(lemma).or_insert(delta);
        }
        let negations: BTreeSet<String> = negations
            .into_iter()
            .map(|l| fold_lemma(l.trim()))
            .collect();
        let irrealis: BTreeSet<String> =
            irrealis.into_iter().map(|l| fold_lemma(l.trim())).collect();

        let overlap = |lemma: &String, first, second| MarkerError::Overlap {
            lemma: lemma.clone(),
            first,
            second,
        };
        if let Some(l) = first_common(mods.keys(), &|l| negations.contains(l)) {
            return Err(overlap(l, "modifier", "negation"));
        }
        if let Some(l) = first_common(mods.keys(), &|l| irrealis.contains(l)) {
            return Err(overlap(l, "modifier", "irrealis"));
        }
        if let Some(l) = first_common(negations.iter(), &|l| irrealis.contains(l)) {
            return Err(overlap(l, "negation", "irrealis"));
        }
        Ok(MarkerLists {
            modifiers: mods,
            negations,
            irrealis,
        })
    }

    /// Parses the three marker files and validates them together.
    pub fn from_texts(
        modifiers: &str,
        negations: &str,
        irrealis: &str,
    ) -> Result<MarkerLists, MarkerError> {
        MarkerLists::new(
            parse_modifiers(modifiers)?,
            parse_marker_set(negations, "negation")?,
            parse_marker_set(irrealis, "irrealis")?,
        )
    }

    pub fn modifier(&self, lemma: &str) -> Option<f64> {
        self.modifiers.get(lemma).copied()
    }

    pub fn is_negation(&self, lemma: &str) -> bool {
        self.negations.contains(lemma)
    }

    pub fn is_irrealis(&self, lemma: &str) -> bool {
        self.irrealis.contains(lemma)
    }

    pub fn is_marker(&self, lemma: &str) -> bool {
        self.modifiers.contains_key(lemma) || self.is_negation(lemma) || self.is_irrealis(lemma)
    }

    pub fn modifiers(&self) -> &BTreeMap<String, f64> {
        &self.modifiers
    }

    pub fn negations(&self) -> &BTreeSet<String> {
        &self.negations
    }

    pub fn irrealis(&self) -> &BTreeSet<String> {
        &self.irrealis
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// `LEMMA \t DELTA` lines.
pub fn parse_modifiers(text: &str) -> Result<Vec<(String, f64)>, MarkerError> {
    content_lines(text)
        .map(|(line, l)| {
            let err = |message: String| MarkerError::Format {
                list: "modifier",
                line,
                message,
            };
            let cols: Vec<&str> = l.split('\t').map(str::trim).collect();
            if cols.len() != 2 || cols[0].is_empty() || cols[0].contains(char::is_whitespace) {
                return Err(err("expected `LEMMA<TAB>DELTA`".to_string()));
            }
            let delta = cols[1]
                .parse::<f64>()
                .map_err(|_| err(format!("invalid delta {:?}", cols[1])))?;
            Ok((cols[0].to_string(), delta))
        })
        .collect()
}

/// One lemma per line.
pub fn parse_marker_set(text: &str, list: &'static str) -> Result<Vec<String>, MarkerError> {
    content_lines(text)
        .map(|(line, l)| {
            if l.contains(char::is_whitespace) {
                Err(MarkerError::Format {
                    list,
                    line,
                    message: format!("expected a single lemma, found {l:?}"),
                })
            } else {
                Ok(l.to_string())
            }
        })
        .collect()
}
